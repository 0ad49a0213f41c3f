//! Invariant sampling, residuals, eigenvalue clustering and subspace matching.

mod clusters;
mod covariance;
mod matching;
mod pipeline;

pub use clusters::{eigen_clusters, Cluster, ClusterSet, DEFAULT_CLUSTER_TOL};
pub use covariance::{coloring_alpha, dct_fold_cov, residual_delta, sample_invariant_cov};
pub use matching::{
    circle_check, multiplicity_free_probe, separated_circulant, subspace_match,
    subspace_match_columns, MatchReport,
};
pub use pipeline::{CaseReport, VerifyCase, VERIFY_MATCH_TOL};
