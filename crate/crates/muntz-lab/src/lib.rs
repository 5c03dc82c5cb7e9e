//! Numerical laboratory for Muntz polynomial systems on `[0, 1]`.
//!
//! The crate is organised around a pipeline: validate an exponent sequence,
//! build polynomials over it, certify sup-norms with two-sided bounds, feed
//! those certificates into a derivative-growth estimator, and use the
//! resulting constants to construct sampling grids and geometric probes.

pub mod bernstein;
pub mod certify;
pub mod cli;
pub mod embedding;
pub mod error;
pub mod geometry;
pub mod poly;
pub mod sample;
pub mod sequence;
pub mod simplex;

pub use bernstein::{
    bernstein_constant, bernstein_lp_step, k_sequence, trivial_derivative_bound,
    BernsteinConfig, BernsteinEstimate, LpStep,
};
pub use certify::{dense_grid_max, sup_norm_certified, NormCertificate};
pub use embedding::{
    apply_embedding, build_grid, default_anchors, default_grid, verify_sandwich,
    verify_sandwich_with, EmbeddingReport, SamplingGrid,
};
pub use error::{Error, Result};
pub use geometry::{
    half_ball_check, lasq_empirical_defect, lasq_threshold, oh_defect_probe, small_ball_radius,
    small_ball_radius_from, DefectKind, DefectReport,
};
pub use sample::{derive_seed, random_unit_polynomial, splitmix64};
pub use poly::{Derivative, DerivativeTerm, MuntzPolynomial};
pub use sequence::{
    check_muntz_condition, validate_sequence, ConvergenceReport, FamilyKind, MuntzSequence,
    Verdict,
};
