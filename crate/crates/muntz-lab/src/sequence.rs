//! Exponent sequences for Muntz polynomial systems.
//!
//! A sequence is a finite, strictly increasing list of non-negative real
//! exponents together with a family tag describing how further terms would
//! extend it. The family tag is what lets us classify convergence of
//! `sum 1/lambda_i` even though only a prefix is stored.

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Relative tolerance when checking stored exponents against a family rule.
const FAMILY_CHECK_RTOL: f64 = 1e-9;

/// How a stored exponent prefix would extend to an infinite sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyKind {
    /// No extension rule; the stored exponents are all we know.
    Explicit,
    /// `lambda_i = i^s` (offset by one when the constant exponent 0 is absent).
    Power(f64),
    /// `lambda_i = r^i` with `r > 1` (offset likewise).
    Geometric(f64),
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Explicit => "explicit",
            FamilyKind::Power(_) => "power",
            FamilyKind::Geometric(_) => "geometric",
        }
    }
}

/// A validated finite prefix of a Muntz exponent sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct MuntzSequence {
    exponents: Vec<f64>,
    family: FamilyKind,
    includes_constant: bool,
}

/// Convergence classification of `sum 1/lambda_i` over positive exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Convergent,
    Divergent,
    Inconclusive,
}

/// Partial sum of reciprocals plus the family-rule verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub partial_sum: f64,
    pub verdict: Verdict,
    pub rationale: String,
}

/// Checks monotonicity, sign, and the family rule, producing a sequence.
///
/// The family rule is checked modulo the presence of the constant exponent:
/// a leading zero shifts the family index by one, so `(0, 1, 4, 9)` and
/// `(1, 4, 9)` are both valid `power(2)` prefixes.
pub fn validate_sequence(raw_exponents: &[f64], family: FamilyKind) -> Result<MuntzSequence> {
    match family {
        FamilyKind::Power(s) if !(s > 0.0 && s.is_finite()) => {
            return Err(Error::InvalidFamily(format!(
                "power exponent must be positive, got {s}"
            )));
        }
        FamilyKind::Geometric(r) if !(r > 1.0 && r.is_finite()) => {
            return Err(Error::InvalidFamily(format!(
                "geometric ratio must exceed 1, got {r}"
            )));
        }
        _ => {}
    }
    if raw_exponents.is_empty() {
        return Err(Error::EmptySequence);
    }
    for (index, &value) in raw_exponents.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::NegativeExponent { index, value });
        }
        if index > 0 && value <= raw_exponents[index - 1] {
            return Err(Error::NotIncreasing { index, value });
        }
    }

    let includes_constant = raw_exponents[0] == 0.0;
    let start = usize::from(includes_constant);
    for (index, &value) in raw_exponents.iter().enumerate().skip(start) {
        // Index within the infinite family: power families are 1-based after
        // dropping any adjoined constant.
        let k = (index - start + 1) as f64;
        let expected = match family {
            FamilyKind::Explicit => continue,
            FamilyKind::Power(s) => k.powf(s),
            FamilyKind::Geometric(r) => {
                if index == 0 && includes_constant {
                    // r^i is never zero; a leading constant is simply adjoined.
                    continue;
                }
                let j = if includes_constant { index - 1 } else { index };
                r.powi(j as i32)
            }
        };
        let scale = expected.abs().max(1.0);
        if (value - expected).abs() > FAMILY_CHECK_RTOL * scale {
            return Err(Error::FamilyMismatch {
                index,
                value,
                expected,
                family: family.name().to_string(),
            });
        }
    }

    Ok(MuntzSequence {
        exponents: raw_exponents.to_vec(),
        family,
        includes_constant,
    })
}

impl MuntzSequence {
    /// Convenience constructor for explicit exponent lists.
    pub fn explicit(exponents: &[f64]) -> Result<Self> {
        validate_sequence(exponents, FamilyKind::Explicit)
    }

    /// Generates the first `n` exponents of a parametric family.
    pub fn generate(family: FamilyKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySequence);
        }
        let exps: Vec<f64> = match family {
            FamilyKind::Explicit => {
                return Err(Error::InvalidFamily(
                    "explicit family cannot be generated; pass the exponents".into(),
                ))
            }
            FamilyKind::Power(s) => (1..=n).map(|i| (i as f64).powf(s)).collect(),
            FamilyKind::Geometric(r) => (0..n).map(|i| r.powi(i as i32)).collect(),
        };
        validate_sequence(&exps, family)
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn family(&self) -> FamilyKind {
        self.family
    }

    pub fn includes_constant(&self) -> bool {
        self.includes_constant
    }

    /// Smallest stored exponent that is >= 1, if any.
    pub fn first_geq_one(&self) -> Option<f64> {
        self.exponents.iter().copied().find(|&l| l >= 1.0)
    }

    /// The sub-sequence of strictly positive exponents (drops the constant).
    pub fn constant_free(&self) -> Result<MuntzSequence> {
        let positive: Vec<f64> = self
            .exponents
            .iter()
            .copied()
            .filter(|&l| l > 0.0)
            .collect();
        if positive.is_empty() {
            return Err(Error::Precondition(
                "sequence has no positive exponents".into(),
            ));
        }
        validate_sequence(&positive, self.family)
    }

    /// True when every positive exponent is at least 1.
    pub fn positive_exponents_geq_one(&self) -> bool {
        self.exponents.iter().all(|&l| l == 0.0 || l >= 1.0)
    }

    pub(crate) fn serialize_fields<M: SerializeMap>(
        &self,
        map: &mut M,
    ) -> std::result::Result<(), M::Error> {
        map.serialize_entry("exponents", &self.exponents)?;
        map.serialize_entry("family", self.family.name())?;
        match self.family {
            FamilyKind::Explicit => {}
            FamilyKind::Power(s) => map.serialize_entry("exponent", &s)?,
            FamilyKind::Geometric(r) => map.serialize_entry("ratio", &r)?,
        }
        map.serialize_entry("includes_constant", &self.includes_constant)
    }
}

// Documented JSON shape, e.g. {"exponents": [1,2,4], "family": "geometric",
// "ratio": 2, "includes_constant": false}; the parameter key is present only
// for parametric families.
impl Serialize for MuntzSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let extra = usize::from(!matches!(self.family, FamilyKind::Explicit));
        let mut map = serializer.serialize_map(Some(3 + extra))?;
        self.serialize_fields(&mut map)?;
        map.end()
    }
}

/// Classifies `sum 1/lambda_i` using the family rule.
///
/// The partial sum runs over the stored positive exponents only. Explicit
/// prefixes carry no information about the tail, so they report
/// `Inconclusive` together with the partial sum.
pub fn check_muntz_condition(seq: &MuntzSequence) -> ConvergenceReport {
    let partial_sum: f64 = seq
        .exponents
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| 1.0 / l)
        .sum();
    let (verdict, rationale) = match seq.family {
        FamilyKind::Geometric(r) => (
            Verdict::Convergent,
            format!("geometric ratio {r} > 1: reciprocals form a convergent geometric series"),
        ),
        FamilyKind::Power(s) if s > 1.0 => (
            Verdict::Convergent,
            format!("p-series with exponent {s} > 1 converges"),
        ),
        FamilyKind::Power(s) => (
            Verdict::Divergent,
            format!("p-series with exponent {s} <= 1 diverges"),
        ),
        FamilyKind::Explicit => (
            Verdict::Inconclusive,
            "explicit prefix carries no tail information".to_string(),
        ),
    };
    ConvergenceReport {
        partial_sum,
        verdict,
        rationale,
    }
}
