//! Geometric probes on the unit ball: the small-ball half-norm bound, the
//! almost-square defect threshold with an empirical falsification run, and
//! an exploratory octahedrality probe.
//!
//! All randomized probes sample the constant-free span, so every sampled f
//! satisfies f(0) = 0 and restriction bounds of the form
//! |f(t)| <= c t ||f|| apply directly.

use rayon::prelude::*;
use serde::Serialize;

use crate::bernstein::{bernstein_constant, BernsteinConfig};
use crate::certify::sup_norm_certified;
use crate::embedding::DEFAULT_SAFETY;
use crate::error::{Error, Result};
use crate::poly::MuntzPolynomial;
use crate::sample::{derive_seed, random_unit_polynomial};
use crate::sequence::MuntzSequence;

const SCORE_TOL: f64 = 1e-9;
const HALF_BALL_SLACK: f64 = 1e-6;
const LASQ_SLACK: f64 = 1e-4;
const REFINE_ITERS: usize = 200;
const REFINE_MIN_STEP: f64 = 1e-7;

/// Which probe produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DefectKind {
    HalfBall,
    Lasq,
    OhProbe,
}

impl DefectKind {
    pub fn name(&self) -> &'static str {
        match self {
            DefectKind::HalfBall => "half_ball",
            DefectKind::Lasq => "lasq",
            DefectKind::OhProbe => "oh_probe",
        }
    }
}

/// Outcome of one probe run.
///
/// `extremal_value` is the probe's certified extremum: the largest restricted
/// norm (half_ball), the smallest symmetric enlargement (lasq), or the
/// largest isolation score (oh_probe, recorded but never asserted).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefectReport {
    pub kind: DefectKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_g: Option<MuntzPolynomial>,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    pub a: f64,
    pub threshold_epsilon_star: f64,
    pub trials: usize,
    pub extremal_value: f64,
    pub violations: usize,
    pub seed: u64,
}

/// a = min(1/(2c), x).
pub fn small_ball_radius_from(c_used: f64, x: f64) -> f64 {
    (0.5 / c_used).min(x)
}

/// Radius of the interval on which the whole unit ball stays within 1/2,
/// together with the safety-factored derivative-growth constant behind it.
pub fn small_ball_radius(seq: &MuntzSequence, n: usize, x: f64) -> Result<(f64, f64)> {
    small_ball_radius_with(seq, n, x, DEFAULT_SAFETY, &BernsteinConfig::default())
}

pub fn small_ball_radius_with(
    seq: &MuntzSequence,
    n: usize,
    x: f64,
    safety: f64,
    config: &BernsteinConfig,
) -> Result<(f64, f64)> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Precondition(format!("x {x} must lie in (0,1)")));
    }
    if !seq.positive_exponents_geq_one() {
        return Err(Error::Precondition(
            "small-ball bounds need every positive exponent >= 1".into(),
        ));
    }
    if !(safety >= 1.0) {
        return Err(Error::Precondition(format!(
            "safety factor {safety} must be at least 1"
        )));
    }
    let estimate = bernstein_constant(seq, n, x, config)?;
    let c_used = estimate.upper_heuristic * safety;
    Ok((small_ball_radius_from(c_used, x), c_used))
}

/// The constant-free span actually sampled by the probes, with the
/// coefficient count mapped onto it.
fn sampled_span(seq: &MuntzSequence, n: usize) -> Result<(MuntzSequence, usize)> {
    if n == 0 || n > seq.len() {
        return Err(Error::Precondition(format!(
            "coefficient count {n} must be in 1..={}",
            seq.len()
        )));
    }
    if !seq.positive_exponents_geq_one() {
        return Err(Error::Precondition(
            "geometric probes need every positive exponent >= 1".into(),
        ));
    }
    let span = seq.constant_free()?;
    let n_span = n - usize::from(seq.includes_constant());
    if n_span == 0 {
        return Err(Error::Precondition(
            "no positive exponents among the first n".into(),
        ));
    }
    Ok((span, n_span))
}

/// Samples the constant-free unit ball and certifies that every draw keeps
/// `||f||_[0,a] <= 1/2 + 1e-6` (recorded as violations otherwise).
pub fn half_ball_check(
    seq: &MuntzSequence,
    n: usize,
    a: f64,
    trials: usize,
    seed: u64,
) -> Result<DefectReport> {
    if trials == 0 {
        return Err(Error::Precondition("need at least one trial".into()));
    }
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::Precondition(format!("radius {a} must lie in [0,1]")));
    }
    let (span, n_span) = sampled_span(seq, n)?;

    let uppers: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let f = random_unit_polynomial(&span, n_span, derive_seed(seed, i))?;
            let cert = sup_norm_certified(&f, [0.0, a], SCORE_TOL)?;
            Ok(cert.upper)
        })
        .collect::<Result<_>>()?;

    let extremal_value = uppers.iter().fold(0.0f64, |acc, &u| acc.max(u));
    let violations = uppers
        .iter()
        .filter(|&&u| u > 0.5 + HALF_BALL_SLACK)
        .count();
    Ok(DefectReport {
        kind: DefectKind::HalfBall,
        witness_g: None,
        n,
        x: None,
        a,
        threshold_epsilon_star: 0.0,
        trials,
        extremal_value,
        violations,
        seed,
    })
}

/// epsilon* = a^lambda / 2.
fn defect_threshold(a: f64, lambda_first: f64) -> f64 {
    a.powf(lambda_first) / 2.0
}

/// Almost-square defect threshold for the constant-free span: below
/// epsilon* no unit h can keep both g + h and g - h inside (1 + eps) B.
/// Returns (epsilon*, witness g = t^{lambda_first}, radius a).
pub fn lasq_threshold(
    seq: &MuntzSequence,
    n: usize,
    x: f64,
) -> Result<(f64, MuntzPolynomial, f64)> {
    lasq_threshold_with(seq, n, x, DEFAULT_SAFETY, &BernsteinConfig::default())
}

pub fn lasq_threshold_with(
    seq: &MuntzSequence,
    n: usize,
    x: f64,
    safety: f64,
    config: &BernsteinConfig,
) -> Result<(f64, MuntzPolynomial, f64)> {
    let (span, _) = sampled_span(seq, n)?;
    let (a, _c_used) = small_ball_radius_with(seq, n, x, safety, config)?;
    let lambda_first = span.exponents()[0];
    let epsilon_star = defect_threshold(a, lambda_first);
    let g = MuntzPolynomial::monomial(span, 0)?;
    Ok((epsilon_star, g, a))
}

/// max(||g + h||, ||g - h||) via certified lower bounds.
fn lasq_score(g: &MuntzPolynomial, h: &MuntzPolynomial) -> Result<f64> {
    let plus = sup_norm_certified(&g.add(h), [0.0, 1.0], SCORE_TOL)?;
    let minus = sup_norm_certified(&g.sub(h), [0.0, 1.0], SCORE_TOL)?;
    Ok(plus.lower.max(minus.lower))
}

/// Axis and two-coordinate diagonal perturbations; diagonals let the descent
/// slide along scale ridges where no single coordinate move helps.
fn perturbation_directions(n: usize) -> Vec<Vec<f64>> {
    let mut dirs = Vec::new();
    for i in 0..n {
        for s in [1.0, -1.0] {
            let mut d = vec![0.0; n];
            d[i] = s;
            dirs.push(d);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for si in [1.0, -1.0] {
                for sj in [1.0, -1.0] {
                    let mut d = vec![0.0; n];
                    d[i] = si;
                    d[j] = sj;
                    dirs.push(d);
                }
            }
        }
    }
    dirs
}

/// Step-halving descent over unit-sphere candidates, minimizing the score.
fn refine_candidate(
    g: &MuntzPolynomial,
    span: &MuntzSequence,
    start: MuntzPolynomial,
    start_score: f64,
) -> Result<(MuntzPolynomial, f64)> {
    let dirs = perturbation_directions(start.coefficients().len());
    let mut best = start;
    let mut best_score = start_score;
    let mut step = 0.25;
    for _ in 0..REFINE_ITERS {
        if step < REFINE_MIN_STEP {
            break;
        }
        let mut improved = false;
        for d in &dirs {
            let coeffs: Vec<f64> = best
                .coefficients()
                .iter()
                .zip(d)
                .map(|(c, di)| c + step * di)
                .collect();
            let cand = MuntzPolynomial::new(span.clone(), coeffs)?;
            let norm = sup_norm_certified(&cand, [0.0, 1.0], SCORE_TOL)?;
            if norm.lower < 1e-6 {
                continue;
            }
            let unit = cand.scale(1.0 / norm.lower);
            let score = lasq_score(g, &unit)?;
            if score < best_score {
                best_score = score;
                best = unit;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok((best, best_score))
}

/// Tries to find a unit h with max(||g + h||, ||g - h||) < 1 + epsilon*:
/// random search plus descent refinement around the best candidate. The
/// threshold argument guarantees failure, so a passing run has
/// `extremal_value >= 1 + epsilon* - 1e-4` and zero violations.
pub fn lasq_empirical_defect(
    seq: &MuntzSequence,
    n: usize,
    x: f64,
    trials: usize,
    seed: u64,
) -> Result<DefectReport> {
    lasq_empirical_defect_with(seq, n, x, trials, seed, DEFAULT_SAFETY, &BernsteinConfig::default())
}

pub fn lasq_empirical_defect_with(
    seq: &MuntzSequence,
    n: usize,
    x: f64,
    trials: usize,
    seed: u64,
    safety: f64,
    config: &BernsteinConfig,
) -> Result<DefectReport> {
    if trials == 0 {
        return Err(Error::Precondition("need at least one trial".into()));
    }
    let (span, n_span) = sampled_span(seq, n)?;
    let (epsilon_star, g, a) = lasq_threshold_with(seq, n, x, safety, config)?;
    let bar = 1.0 + epsilon_star - LASQ_SLACK;

    let scores: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let h = random_unit_polynomial(&span, n_span, derive_seed(seed, i))?;
            lasq_score(&g, &h)
        })
        .collect::<Result<_>>()?;

    let mut violations = scores.iter().filter(|&&s| s < bar).count();
    let (best_idx, &best_random) = scores
        .iter()
        .enumerate()
        .min_by(|(_, p), (_, q)| p.total_cmp(q))
        .expect("trials >= 1");
    let start = random_unit_polynomial(&span, n_span, derive_seed(seed, best_idx as u64))?;
    let (_, refined) = refine_candidate(&g, &span, start, best_random)?;
    if refined < bar {
        violations += 1;
    }

    Ok(DefectReport {
        kind: DefectKind::Lasq,
        witness_g: Some(g),
        n,
        x: Some(x),
        a,
        threshold_epsilon_star: epsilon_star,
        trials,
        extremal_value: refined.min(best_random),
        violations,
        seed,
    })
}

/// min over x and signs of ||x +- y||, the isolation of y from the landmark
/// set; values near 2 for every y would witness octahedral behavior.
fn oh_score(x_points: &[MuntzPolynomial], y: &MuntzPolynomial) -> Result<f64> {
    let mut best = f64::INFINITY;
    for x in x_points {
        let plus = sup_norm_certified(&x.add(y), [0.0, 1.0], SCORE_TOL)?;
        let minus = sup_norm_certified(&x.sub(y), [0.0, 1.0], SCORE_TOL)?;
        best = best.min(plus.lower).min(minus.lower);
    }
    Ok(best)
}

/// Samples unit y and records sup over y of the isolation score. Purely
/// exploratory: violations is always zero and nothing is asserted.
pub fn oh_defect_probe(
    x_points: &[MuntzPolynomial],
    seq: &MuntzSequence,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<DefectReport> {
    if x_points.is_empty() {
        return Err(Error::Precondition("need at least one landmark".into()));
    }
    if trials == 0 {
        return Err(Error::Precondition("need at least one trial".into()));
    }
    if n == 0 || n > seq.len() {
        return Err(Error::Precondition(format!(
            "coefficient count {n} must be in 1..={}",
            seq.len()
        )));
    }
    for x in x_points {
        if x.sequence() != seq {
            return Err(Error::Precondition(
                "landmarks must live over the probed sequence".into(),
            ));
        }
        let cert = sup_norm_certified(x, [0.0, 1.0], SCORE_TOL)?;
        if (cert.lower - 1.0).abs() > 1e-6 {
            return Err(Error::Precondition(format!(
                "landmark norm {} is not 1",
                cert.lower
            )));
        }
    }

    let scores: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let y = random_unit_polynomial(seq, n, derive_seed(seed, i))?;
            oh_score(x_points, &y)
        })
        .collect::<Result<_>>()?;

    let (best_idx, &extremal_value) = scores
        .iter()
        .enumerate()
        .max_by(|(_, p), (_, q)| p.total_cmp(q))
        .expect("trials >= 1");
    let witness = random_unit_polynomial(seq, n, derive_seed(seed, best_idx as u64))?;

    Ok(DefectReport {
        kind: DefectKind::OhProbe,
        witness_g: Some(witness),
        n,
        x: None,
        a: 0.0,
        threshold_epsilon_star: 0.0,
        trials,
        extremal_value,
        violations: 0,
        seed,
    })
}
