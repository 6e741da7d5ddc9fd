//! Exact multivariate polynomial algebra, the bounding-polynomial
//! constructions, certified root isolation and threshold recomputation.

pub mod build;
pub mod poly;
pub mod roots;
pub mod thresholds;

pub use build::{b_threshold_poly, binom_poly, build_g_a, build_g_b, choose_w, tilde_transform};
pub use poly::{MultiPoly, UniPoly};
pub use roots::{cauchy_bound, certify_positive_beyond, highest_root, RootInterval, RootIsolation};
pub use thresholds::{
    compute_n, n_paper, threshold_is_valid, DegreeConfig, StatementId, StatementRoot, N_PAPER,
};
