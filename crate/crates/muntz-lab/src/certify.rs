//! Two-sided sup-norm certification by adaptive interval subdivision.
//!
//! Each subinterval is charged a slack that bounds how far |p| can rise
//! above the value at its midpoint, via either the global continuity
//! modulus restricted to the leaf or a local Taylor bound. A leaf retires
//! once midpoint value + slack cannot beat the best point seen by more
//! than `tol`; the certificate's upper bound is the largest retired leaf
//! bound, so the true supremum is sandwiched.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{power, MuntzPolynomial};

/// Evaluation budget per certification call.
const MAX_EVALS: usize = 10_000_000;

/// Multiplicative head-room on slack terms covering powf rounding.
const SLACK_INFLATION: f64 = 1.0 + 1e-12;

/// Two-sided enclosure of `sup |p|` over a subinterval of `[0, 1]`.
///
/// `lower` is attained: `|p(witness_t)| = lower` exactly as evaluated.
/// `grid_step` is the width of the finest retired leaf and `modulus_bound`
/// the slack charged to the leaf that determines `upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormCertificate {
    pub interval: [f64; 2],
    pub lower: f64,
    pub upper: f64,
    pub witness_t: f64,
    pub grid_step: f64,
    pub modulus_bound: f64,
}

/// Per-leaf bound on `sup_{t in [u,v]} |p(t)| - |p(m)|`, `m` the midpoint.
///
/// First order: per-term mean-value or Hölder increments over half-width
/// `h`. Second order: `|p'(m)| h + B2 h^2 / 2` with `B2` a curvature bound,
/// valid only when every term's second derivative is bounded on the leaf.
fn leaf_slack(p: &MuntzPolynomial, u: f64, v: f64, m: f64, h: f64) -> f64 {
    if h <= 0.0 {
        return 0.0;
    }
    let exps = p.sequence().exponents();

    let mut first_order = 0.0;
    let mut dpm = 0.0;
    let mut curvature = 0.0;
    let mut second_ok = true;
    for (i, &a) in p.coefficients().iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let l = exps[i];
        if l == 0.0 {
            continue;
        }
        let mag = a.abs();

        first_order += if l >= 1.0 {
            mag * l * power(v, l - 1.0) * h
        } else if u > 0.0 {
            // t^{l-1} decreases, so the left endpoint bounds the derivative.
            (mag * h.powf(l)).min(mag * l * u.powf(l - 1.0) * h)
        } else {
            mag * h.powf(l)
        };

        if second_ok {
            if l == 1.0 {
                dpm += a;
            } else if l >= 2.0 {
                dpm += a * l * power(m, l - 1.0);
                curvature += mag * l * (l - 1.0) * power(v, l - 2.0);
            } else if u > 0.0 {
                dpm += a * l * m.powf(l - 1.0);
                curvature += mag * (l * (l - 1.0)).abs() * u.powf(l - 2.0);
            } else {
                // second derivative unbounded at 0 for this term
                second_ok = false;
            }
        }
    }

    let mut slack = first_order;
    if second_ok {
        let second_order = dpm.abs() * h + 0.5 * curvature * h * h;
        if second_order.is_finite() && second_order < slack {
            slack = second_order;
        }
    }
    slack * SLACK_INFLATION
}

struct Search<'a> {
    p: &'a MuntzPolynomial,
    evals: usize,
    lower: f64,
    witness_t: f64,
}

impl<'a> Search<'a> {
    fn eval(&mut self, t: f64) -> f64 {
        self.evals += 1;
        let value = self.p.evaluate_unchecked(t).abs();
        if value > self.lower {
            self.lower = value;
            self.witness_t = t;
        }
        value
    }
}

/// Certifies `sup_{t in [lo, hi]} |p(t)|` to within `tol`.
///
/// Returns an enclosure with `upper - lower <= tol`, or an error when the
/// gap cannot be closed within the evaluation budget or at binary64
/// resolution.
pub fn sup_norm_certified(
    p: &MuntzPolynomial,
    interval: [f64; 2],
    tol: f64,
) -> Result<NormCertificate> {
    let [lo, hi] = interval;
    if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi && hi <= 1.0) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }

    let mut search = Search {
        p,
        evals: 0,
        lower: 0.0,
        witness_t: lo,
    };
    // Endpoints are never midpoints of a subdivision; seeding them keeps
    // boundary extrema from forcing deep refinement chains.
    let at_lo = search.eval(lo);
    if at_lo == search.lower {
        search.witness_t = lo;
    }
    search.eval(hi);

    let mut stack: Vec<[f64; 2]> = vec![[lo, hi]];
    let mut upper = f64::NEG_INFINITY;
    let mut upper_slack = 0.0;
    let mut finest_width = hi - lo;

    while let Some([u, v]) = stack.pop() {
        let m = 0.5 * (u + v);
        let pm = search.eval(m);
        let mut h = 0.5 * (v - u);
        if h == 0.0 && v > u {
            h = v - u;
        }
        let slack = leaf_slack(p, u, v, m, h);
        // next_up keeps the enclosure sound against the rounding of this
        // sum; zero slack means the leaf value is exact.
        let bound = if slack > 0.0 { (pm + slack).next_up() } else { pm };

        let stalled = m <= u || m >= v;
        let budget_spent = search.evals >= MAX_EVALS;
        if bound <= search.lower + tol || stalled || budget_spent {
            if bound > upper {
                upper = bound;
                upper_slack = slack;
            }
            let width = v - u;
            if width < finest_width {
                finest_width = width;
            }
            continue;
        }
        stack.push([m, v]);
        stack.push([u, m]);
    }

    let lower = search.lower;
    let upper = upper.max(lower);
    if !(upper - lower <= tol) {
        return Err(Error::CertificationBudget {
            gap: upper - lower,
            tol,
            evals: search.evals,
        });
    }
    Ok(NormCertificate {
        interval,
        lower,
        upper,
        witness_t: search.witness_t,
        grid_step: finest_width,
        modulus_bound: upper_slack,
    })
}

/// Maximum of `|p|` over `points` uniform samples of `[lo, hi]`, endpoints
/// included. Ties keep the smallest index, so the result is independent of
/// any parallel evaluation order.
pub fn dense_grid_max(p: &MuntzPolynomial, interval: [f64; 2], points: usize) -> (f64, f64) {
    let [lo, hi] = interval;
    assert!(points >= 2, "need at least the two endpoints");
    let step = (hi - lo) / (points - 1) as f64;
    let mut best = f64::NEG_INFINITY;
    let mut best_t = lo;
    for i in 0..points {
        let t = if i + 1 == points { hi } else { lo + i as f64 * step };
        let value = p.evaluate_unchecked(t).abs();
        if value > best {
            best = value;
            best_t = t;
        }
    }
    (best, best_t)
}
