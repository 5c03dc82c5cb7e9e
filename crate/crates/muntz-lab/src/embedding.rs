//! Sampling grids that almost-isometrically embed polynomials into their
//! coordinate sequences.
//!
//! A grid covers [0, a_m] with bands [a_i, a_{i+1}] whose uniform spacing
//! is at most epsilon / K_{i+1}; when each K_{i+1} dominates the true
//! derivative-growth constant on [0, a_{i+1}], point evaluations plus the
//! limit coordinate f(1) capture the sup-norm up to a (1 - epsilon) factor.

use rayon::prelude::*;
use serde::Serialize;

use crate::bernstein::{k_sequence, BernsteinConfig};
use crate::certify::sup_norm_certified;
use crate::error::{Error, Result};
use crate::poly::MuntzPolynomial;
use crate::sample::{derive_seed, random_unit_polynomial};
use crate::sequence::MuntzSequence;

/// Default number of anchors; bands then cover [0, 1 - 2^-8].
pub const DEFAULT_ANCHOR_COUNT: usize = 8;

/// Default multiplier hedging the heuristic derivative-growth estimates.
pub const DEFAULT_SAFETY: f64 = 1.25;

/// Finite evaluation grid for the coordinate embedding.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplingGrid {
    pub epsilon: f64,
    /// Band boundaries (a_0 = 0, a_1, ..., a_m).
    pub anchors: Vec<f64>,
    /// Spacing constants K_1..K_m, one per band, non-decreasing.
    pub constants: Vec<f64>,
    /// Strictly increasing points from 0 to a_m; every anchor is a point.
    pub points: Vec<f64>,
    /// Whether evaluation appends f(1) as a final distinguished coordinate.
    pub includes_limit_point: bool,
}

/// Empirical two-sided norm comparison over random unit polynomials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingReport {
    pub trials: usize,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub epsilon: f64,
    pub violations: usize,
}

/// Anchors a_i = 1 - 2^-i for i = 1..m.
pub fn default_anchors(m: usize) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::Precondition("need at least one anchor".into()));
    }
    Ok((1..=m).map(|i| 1.0 - 0.5f64.powi(i as i32)).collect())
}

/// Builds the banded grid: each band [a_i, a_{i+1}] is split uniformly into
/// ceil(width * K_{i+1} / epsilon) subintervals, so the step never exceeds
/// epsilon / K_{i+1}.
pub fn build_grid(
    seq: &MuntzSequence,
    n: usize,
    epsilon: f64,
    anchors: &[f64],
    constants: &[f64],
) -> Result<SamplingGrid> {
    if n == 0 || n > seq.len() {
        return Err(Error::Precondition(format!(
            "coefficient count {n} must be in 1..={}",
            seq.len()
        )));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Precondition(format!(
            "epsilon {epsilon} must lie in (0,1)"
        )));
    }
    if anchors.is_empty() || anchors.len() != constants.len() {
        return Err(Error::Precondition(format!(
            "{} anchors need exactly as many constants, got {}",
            anchors.len(),
            constants.len()
        )));
    }
    for (i, &a) in anchors.iter().enumerate() {
        if !(a > 0.0 && a < 1.0) || (i > 0 && a <= anchors[i - 1]) {
            return Err(Error::Precondition(format!(
                "anchors must increase strictly inside (0,1); offending index {i}"
            )));
        }
    }
    for (i, &k) in constants.iter().enumerate() {
        if !(k > 0.0) || (i > 0 && k < constants[i - 1]) {
            return Err(Error::Precondition(format!(
                "constants must be positive and non-decreasing; offending index {i}"
            )));
        }
    }

    let mut full_anchors = Vec::with_capacity(anchors.len() + 1);
    full_anchors.push(0.0);
    full_anchors.extend_from_slice(anchors);

    let mut points = vec![0.0];
    for band in 0..constants.len() {
        let lo = full_anchors[band];
        let hi = full_anchors[band + 1];
        let width = hi - lo;
        let subintervals = (width * constants[band] / epsilon).ceil().max(1.0) as usize;
        let step = width / subintervals as f64;
        for j in 1..subintervals {
            points.push(lo + j as f64 * step);
        }
        points.push(hi);
    }

    Ok(SamplingGrid {
        epsilon,
        anchors: full_anchors,
        constants: constants.to_vec(),
        points,
        includes_limit_point: true,
    })
}

impl SamplingGrid {
    /// Re-checks the spacing rule by direct scan: consecutive points inside
    /// band i must differ by at most epsilon / K_{i+1}, and all anchors must
    /// appear among the points.
    pub fn validate_spacing(&self) -> Result<()> {
        if self.points.first() != Some(&0.0) || self.points.last() != self.anchors.last() {
            return Err(Error::Precondition(
                "grid must run from 0 to the last anchor".into(),
            ));
        }
        for a in &self.anchors {
            if !self.points.contains(a) {
                return Err(Error::Precondition(format!(
                    "anchor {a} missing from the grid"
                )));
            }
        }
        let mut band = 0;
        for pair in self.points.windows(2) {
            let (s, t) = (pair[0], pair[1]);
            if t <= s {
                return Err(Error::Precondition(format!(
                    "points not strictly increasing at {s}"
                )));
            }
            while t > self.anchors[band + 1] {
                band += 1;
            }
            let allowed = self.epsilon / self.constants[band];
            // one ulp of head-room for the uniform-subdivision arithmetic
            if t - s > allowed * (1.0 + 1e-12) {
                return Err(Error::Precondition(format!(
                    "step {} between {s} and {t} exceeds {allowed}",
                    t - s
                )));
            }
        }
        Ok(())
    }
}

/// Evaluates f on the grid, appending the limit coordinate f(1).
pub fn apply_embedding(f: &MuntzPolynomial, grid: &SamplingGrid) -> Vec<f64> {
    let mut coords: Vec<f64> = grid
        .points
        .iter()
        .map(|&s| f.evaluate_unchecked(s))
        .collect();
    if grid.includes_limit_point {
        coords.push(f.evaluate_unchecked(1.0));
    }
    coords
}

/// Builds the default grid for (seq, n, epsilon): estimator constants over
/// `m` dyadic anchors, inflated by `safety`.
pub fn default_grid(
    seq: &MuntzSequence,
    n: usize,
    epsilon: f64,
    m: usize,
    safety: f64,
    config: &BernsteinConfig,
) -> Result<SamplingGrid> {
    let anchors = default_anchors(m)?;
    let constants = k_sequence(seq, n, &anchors, safety, config)?;
    build_grid(seq, n, epsilon, &anchors, &constants)
}

/// Draws `trials` random unit polynomials and compares the largest embedded
/// coordinate against the certified norm. A trial violates the sandwich
/// when ratio < (1 - epsilon) - 1e-6.
pub fn verify_sandwich(
    seq: &MuntzSequence,
    n: usize,
    epsilon: f64,
    trials: usize,
    seed: u64,
) -> Result<EmbeddingReport> {
    verify_sandwich_with(
        seq,
        n,
        epsilon,
        trials,
        seed,
        DEFAULT_ANCHOR_COUNT,
        DEFAULT_SAFETY,
        &BernsteinConfig::default(),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn verify_sandwich_with(
    seq: &MuntzSequence,
    n: usize,
    epsilon: f64,
    trials: usize,
    seed: u64,
    m: usize,
    safety: f64,
    config: &BernsteinConfig,
) -> Result<EmbeddingReport> {
    if trials == 0 {
        return Err(Error::Precondition("need at least one trial".into()));
    }
    if !seq.positive_exponents_geq_one() {
        return Err(Error::Precondition(
            "the sandwich argument needs every positive exponent >= 1".into(),
        ));
    }
    let grid = default_grid(seq, n, epsilon, m, safety, config)?;

    let ratios: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let f = random_unit_polynomial(seq, n, derive_seed(seed, i))?;
            let coords = apply_embedding(&f, &grid);
            let peak = coords.iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
            let cert = sup_norm_certified(&f, [0.0, 1.0], 1e-10)?;
            Ok(peak / cert.lower)
        })
        .collect::<Result<_>>()?;

    let mut min_ratio = f64::INFINITY;
    let mut max_ratio = f64::NEG_INFINITY;
    let mut violations = 0;
    for &r in &ratios {
        min_ratio = min_ratio.min(r);
        max_ratio = max_ratio.max(r);
        if r < (1.0 - epsilon) - 1e-6 {
            violations += 1;
        }
    }
    Ok(EmbeddingReport {
        trials,
        min_ratio,
        max_ratio,
        epsilon,
        violations,
    })
}
