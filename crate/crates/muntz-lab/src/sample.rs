//! Seeded sampling of unit-norm polynomials.
//!
//! Coefficients are independent uniform draws on [-1, 1]; the draw is then
//! rescaled by its certified sup-norm so the sample lies on the unit sphere
//! of the function space, not of the coefficient space. Everything is a
//! pure function of (sequence, N, seed).

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::certify::{dense_grid_max, sup_norm_certified};
use crate::error::{Error, Result};
use crate::poly::MuntzPolynomial;
use crate::sequence::MuntzSequence;

/// Draws whose sup-norm falls below this are redrawn: normalizing them
/// would blow coefficients up past the point where evaluation roundoff
/// stays under the 1e-9 norm guarantee.
const MIN_RAW_NORM: f64 = 1e-3;

/// SplitMix64 output function (reference constants).
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Per-trial seed for batch runs: a golden-ratio stride decorrelates
/// consecutive indices before mixing.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E3779B97F4A7C15)))
}

/// Draws a random polynomial over the first `n` exponents of `seq` with
/// certified sup-norm on `[0, 1]` in `[1, 1 + 1e-9]`.
///
/// Normalization divides by the certificate's attained lower bound, in two
/// passes (coarse then 2e-10), so a single-term draw normalizes to exactly
/// plus or minus one coefficient.
pub fn random_unit_polynomial(
    seq: &MuntzSequence,
    n: usize,
    seed: u64,
) -> Result<MuntzPolynomial> {
    if n == 0 || n > seq.len() {
        return Err(Error::Precondition(format!(
            "coefficient count {n} must be in 1..={}",
            seq.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..64 {
        let coeffs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        if coeffs.iter().all(|&a| a == 0.0) {
            continue;
        }
        let raw = MuntzPolynomial::new(seq.clone(), coeffs)?;
        let (coarse_max, _) = dense_grid_max(&raw, [0.0, 1.0], 129);
        if coarse_max <= MIN_RAW_NORM {
            continue;
        }

        let rough = sup_norm_certified(&raw, [0.0, 1.0], 1e-3 * coarse_max)?;
        let near_unit = raw.scale(1.0 / rough.lower);
        let fine = sup_norm_certified(&near_unit, [0.0, 1.0], 2e-10)?;
        return Ok(near_unit.scale(1.0 / fine.lower));
    }
    Err(Error::Precondition(
        "could not draw a well-conditioned coefficient vector".into(),
    ))
}
