//! Finite coefficient vectors over a Muntz exponent prefix.
//!
//! A polynomial here is `p(t) = sum a_i t^{lambda_i}` with the convention
//! `0^0 = 1` so the constant term behaves at `t = 0`. Evaluation is only
//! defined on `[0, 1]`.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sequence::MuntzSequence;

/// `t^lambda` with an integer fast path; `powi` is several times cheaper
/// than `powf` and the stored exponents are very often small integers.
#[inline]
pub(crate) fn power(t: f64, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return 1.0; // 0^0 = 1 by convention
    }
    let rounded = lambda.round();
    if rounded == lambda && rounded.abs() <= 64.0 {
        t.powi(rounded as i32)
    } else {
        t.powf(lambda)
    }
}

/// A Muntz polynomial: coefficients aligned with the leading exponents of a
/// sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct MuntzPolynomial {
    sequence: MuntzSequence,
    coefficients: Vec<f64>,
}

impl MuntzPolynomial {
    pub fn new(sequence: MuntzSequence, coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.len() > sequence.len() {
            return Err(Error::TooManyCoefficients {
                coeffs: coefficients.len(),
                exponents: sequence.len(),
            });
        }
        if let Some(&bad) = coefficients.iter().find(|a| !a.is_finite()) {
            return Err(Error::Precondition(format!(
                "coefficient {bad} is not finite"
            )));
        }
        Ok(Self {
            sequence,
            coefficients,
        })
    }

    /// The monomial `t^{lambda_k}` (unit coefficient on exponent index `k`).
    pub fn monomial(sequence: MuntzSequence, k: usize) -> Result<Self> {
        if k >= sequence.len() {
            return Err(Error::Precondition(format!(
                "monomial index {k} out of range for sequence of length {}",
                sequence.len()
            )));
        }
        let mut coefficients = vec![0.0; k + 1];
        coefficients[k] = 1.0;
        Ok(Self {
            sequence,
            coefficients,
        })
    }

    pub fn sequence(&self) -> &MuntzSequence {
        &self.sequence
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Exponents actually carrying a coefficient.
    pub fn exponents(&self) -> &[f64] {
        &self.sequence.exponents()[..self.coefficients.len()]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&a| a == 0.0)
    }

    /// Evaluates `p(t)` for `t` in `[0, 1]`.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::OutOfDomain(t));
        }
        Ok(self.evaluate_unchecked(t))
    }

    /// Evaluation without the domain check, for hot loops over grids that
    /// are known to lie in `[0, 1]`.
    #[inline]
    pub(crate) fn evaluate_unchecked(&self, t: f64) -> f64 {
        let exps = self.sequence.exponents();
        let mut acc = 0.0;
        for (i, &a) in self.coefficients.iter().enumerate() {
            if a != 0.0 {
                acc += a * power(t, exps[i]);
            } else if exps[i] == 0.0 {
                // keep the 0 * 0^0 term exact
                continue;
            }
        }
        acc
    }

    /// Uniform continuity modulus on `[0, 1]`:
    /// `omega(h) = sum_{0 < lambda < 1} |a_i| h^lambda + h * sum_{lambda >= 1} |a_i| lambda`.
    ///
    /// Valid because `|t^l - s^l| <= |t-s|^l` for `l` in `(0,1)` and
    /// `|t^l - s^l| <= l |t-s|` for `l >= 1` on `[0, 1]`.
    pub fn continuity_modulus(&self, h: f64) -> Result<f64> {
        if !(h > 0.0) {
            return Err(Error::InvalidTolerance(h));
        }
        let exps = self.sequence.exponents();
        let mut omega = 0.0;
        for (i, &a) in self.coefficients.iter().enumerate() {
            let l = exps[i];
            if l == 0.0 {
                continue;
            }
            omega += if l < 1.0 {
                a.abs() * h.powf(l)
            } else {
                h * a.abs() * l
            };
        }
        Ok(omega)
    }

    /// Termwise derivative: coefficients `a_i -> a_i lambda_i`, exponents
    /// `lambda_i -> lambda_i - 1`, constant term dropped.
    pub fn derivative(&self) -> Derivative {
        let exps = self.sequence.exponents();
        let mut terms = Vec::new();
        let mut bounded_at_zero = true;
        for (i, &a) in self.coefficients.iter().enumerate() {
            let l = exps[i];
            if l == 0.0 {
                continue;
            }
            if l < 1.0 && a != 0.0 {
                bounded_at_zero = false;
            }
            terms.push(DerivativeTerm {
                coefficient: a * l,
                exponent: l - 1.0,
            });
        }
        Derivative {
            terms,
            bounded_at_zero,
        }
    }

    /// Splits at index `N`: head keeps coefficients with index <= N, tail
    /// the rest, both over the original sequence. Coefficient-wise
    /// `head + tail = p` exactly.
    pub fn split_head_tail(&self, n: usize) -> Result<(MuntzPolynomial, MuntzPolynomial)> {
        if n > self.coefficients.len() {
            return Err(Error::Precondition(format!(
                "split index {n} exceeds coefficient count {}",
                self.coefficients.len()
            )));
        }
        let cut = (n + 1).min(self.coefficients.len());
        let head = MuntzPolynomial {
            sequence: self.sequence.clone(),
            coefficients: self.coefficients[..cut].to_vec(),
        };
        let mut tail_coeffs = vec![0.0; self.coefficients.len()];
        tail_coeffs[cut..].copy_from_slice(&self.coefficients[cut..]);
        let tail = MuntzPolynomial {
            sequence: self.sequence.clone(),
            coefficients: tail_coeffs,
        };
        Ok((head, tail))
    }

    /// Coefficient-wise sum. Panics if the sequences differ; callers combine
    /// polynomials built over one shared sequence.
    pub fn add(&self, rhs: &MuntzPolynomial) -> MuntzPolynomial {
        assert_eq!(
            self.sequence, rhs.sequence,
            "cannot add polynomials over different sequences"
        );
        let len = self.coefficients.len().max(rhs.coefficients.len());
        let mut coefficients = vec![0.0; len];
        for (i, c) in coefficients.iter_mut().enumerate() {
            let a = self.coefficients.get(i).copied().unwrap_or(0.0);
            let b = rhs.coefficients.get(i).copied().unwrap_or(0.0);
            *c = a + b;
        }
        MuntzPolynomial {
            sequence: self.sequence.clone(),
            coefficients,
        }
    }

    pub fn sub(&self, rhs: &MuntzPolynomial) -> MuntzPolynomial {
        self.add(&rhs.scale(-1.0))
    }

    pub fn scale(&self, factor: f64) -> MuntzPolynomial {
        MuntzPolynomial {
            sequence: self.sequence.clone(),
            coefficients: self.coefficients.iter().map(|a| a * factor).collect(),
        }
    }
}

// Same shape as a sequence literal plus "coefficients", aligned index by
// index with "exponents".
impl Serialize for MuntzPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        self.sequence.serialize_fields(&mut map)?;
        map.serialize_entry("coefficients", &self.coefficients)?;
        map.end()
    }
}

/// One term of a differentiated polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeTerm {
    pub coefficient: f64,
    pub exponent: f64,
}

/// Termwise derivative of a Muntz polynomial.
///
/// Exponents are shifted down by one, so they may be negative or fractional;
/// when an original exponent lies in `(0, 1)` the derivative is unbounded at
/// `t = 0` and `bounded_at_zero` is false.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivative {
    pub terms: Vec<DerivativeTerm>,
    pub bounded_at_zero: bool,
}

impl Derivative {
    /// Evaluates the derivative; `t = 0` is rejected when unbounded there.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::OutOfDomain(t));
        }
        if t == 0.0 && !self.bounded_at_zero {
            return Err(Error::Precondition(
                "derivative is unbounded at 0 for exponents in (0,1)".into(),
            ));
        }
        let mut acc = 0.0;
        for term in &self.terms {
            if term.coefficient != 0.0 {
                acc += term.coefficient * power(t, term.exponent);
            }
        }
        Ok(acc)
    }

    /// Re-expresses the derivative as a polynomial over the shifted
    /// exponents. Requires every term exponent to be non-negative, which
    /// holds exactly when all positive exponents of the source were >= 1.
    pub fn as_polynomial(&self) -> Result<MuntzPolynomial> {
        let mut exps = Vec::with_capacity(self.terms.len());
        let mut coeffs = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            if term.exponent < 0.0 {
                return Err(Error::FractionalExponent(term.exponent + 1.0));
            }
            exps.push(term.exponent);
            coeffs.push(term.coefficient);
        }
        if exps.is_empty() {
            // derivative of a constant: the zero polynomial over {0}
            let seq = MuntzSequence::explicit(&[0.0])?;
            return MuntzPolynomial::new(seq, vec![0.0]);
        }
        let seq = MuntzSequence::explicit(&exps)?;
        MuntzPolynomial::new(seq, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::MuntzSequence;
    use proptest::prelude::*;

    fn seq012() -> MuntzSequence {
        MuntzSequence::explicit(&[0.0, 1.0, 2.0]).unwrap()
    }

    fn cheb2() -> MuntzPolynomial {
        // 8t^2 - 8t + 1
        MuntzPolynomial::new(seq012(), vec![1.0, -8.0, 8.0]).unwrap()
    }

    #[test]
    fn evaluates_identity_at_half() {
        let p = MuntzPolynomial::new(seq012(), vec![0.0, 1.0]).unwrap();
        assert_eq!(p.evaluate(0.5).unwrap(), 0.5);
    }

    #[test]
    fn constant_term_survives_at_zero() {
        assert_eq!(cheb2().evaluate(0.0).unwrap(), 1.0);
    }

    #[test]
    fn zero_polynomial_evaluates_to_zero() {
        let p = MuntzPolynomial::new(seq012(), vec![0.0, 0.0, 0.0]).unwrap();
        for t in [0.0, 0.3, 1.0] {
            assert_eq!(p.evaluate(t).unwrap(), 0.0);
        }
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(matches!(
            cheb2().evaluate(1.5),
            Err(Error::OutOfDomain(_))
        ));
        assert!(cheb2().evaluate(-0.1).is_err());
    }

    #[test]
    fn rejects_excess_coefficients() {
        let err = MuntzPolynomial::new(seq012(), vec![1.0; 4]).unwrap_err();
        assert!(matches!(err, Error::TooManyCoefficients { .. }));
    }

    #[test]
    fn derivative_of_t_squared() {
        let seq = MuntzSequence::explicit(&[2.0]).unwrap();
        let p = MuntzPolynomial::new(seq, vec![1.0]).unwrap();
        let d = p.derivative();
        assert!(d.bounded_at_zero);
        assert_eq!(d.terms, vec![DerivativeTerm { coefficient: 2.0, exponent: 1.0 }]);
        assert_eq!(d.evaluate(0.25).unwrap(), 0.5);
    }

    #[test]
    fn derivative_drops_constant() {
        let seq = MuntzSequence::explicit(&[0.0, 1.0]).unwrap();
        let p = MuntzPolynomial::new(seq, vec![3.0, 1.0]).unwrap();
        let d = p.derivative();
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.evaluate(0.7).unwrap(), 1.0);
    }

    #[test]
    fn fractional_exponent_is_flagged_unbounded() {
        let seq = MuntzSequence::explicit(&[0.5]).unwrap();
        let p = MuntzPolynomial::new(seq, vec![1.0]).unwrap();
        let d = p.derivative();
        assert!(!d.bounded_at_zero);
        // 0.5 * t^{-0.5} at t = 0.25 is 1.0
        assert!((d.evaluate(0.25).unwrap() - 1.0).abs() < 1e-15);
        assert!(d.evaluate(0.0).is_err());
        assert!(d.as_polynomial().is_err());
    }

    #[test]
    fn modulus_examples() {
        let seq = MuntzSequence::explicit(&[1.0]).unwrap();
        let p = MuntzPolynomial::new(seq, vec![1.0]).unwrap();
        assert!((p.continuity_modulus(0.01).unwrap() - 0.01).abs() < 1e-18);

        let seq = MuntzSequence::explicit(&[1.0, 2.0]).unwrap();
        let p = MuntzPolynomial::new(seq, vec![2.0, 1.0]).unwrap();
        assert!((p.continuity_modulus(0.1).unwrap() - 0.4).abs() < 1e-15);

        let seq = MuntzSequence::explicit(&[0.5]).unwrap();
        let p = MuntzPolynomial::new(seq, vec![1.0]).unwrap();
        assert!((p.continuity_modulus(0.01).unwrap() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn split_at_zero_peels_constant() {
        let p = MuntzPolynomial::new(seq012(), vec![1.0, 1.0, 1.0]).unwrap();
        let (head, tail) = p.split_head_tail(0).unwrap();
        assert_eq!(head.coefficients(), &[1.0]);
        assert_eq!(tail.coefficients(), &[0.0, 1.0, 1.0]);
    }

    #[test]
    fn split_at_length_gives_zero_tail() {
        let p = MuntzPolynomial::new(seq012(), vec![1.0, 2.0, 3.0]).unwrap();
        let (head, tail) = p.split_head_tail(3).unwrap();
        assert_eq!(head.coefficients(), p.coefficients());
        assert!(tail.is_zero());
    }

    proptest! {
        #[test]
        fn split_reassembles_exactly(
            coeffs in proptest::collection::vec(-10.0f64..10.0, 1..=3),
            n in 0usize..=3,
            ts in proptest::collection::vec(0.0f64..=1.0, 20)
        ) {
            let n = n.min(coeffs.len());
            let p = MuntzPolynomial::new(seq012(), coeffs).unwrap();
            let (head, tail) = p.split_head_tail(n).unwrap();
            // coefficient-wise exact reassembly
            for (i, &a) in p.coefficients().iter().enumerate() {
                let h = head.coefficients().get(i).copied().unwrap_or(0.0);
                let t = tail.coefficients().get(i).copied().unwrap_or(0.0);
                prop_assert_eq!(h + t, a);
                prop_assert!(h == 0.0 || t == 0.0);
            }
            // pointwise within 1e-12 relative
            for t in ts {
                let whole = p.evaluate(t).unwrap();
                let parts = head.evaluate(t).unwrap() + tail.evaluate(t).unwrap();
                let scale = whole.abs().max(1.0);
                prop_assert!((whole - parts).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn evaluation_at_one_is_coefficient_sum(
            coeffs in proptest::collection::vec(-10.0f64..10.0, 1..=3)
        ) {
            let p = MuntzPolynomial::new(seq012(), coeffs.clone()).unwrap();
            let sum: f64 = coeffs.iter().sum();
            let val = p.evaluate(1.0).unwrap();
            let scale = sum.abs().max(1.0);
            prop_assert!((val - sum).abs() <= 1e-12 * scale);
        }
    }
}
