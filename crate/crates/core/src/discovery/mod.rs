//! Data-driven search for the permutation symmetries of a covariance.

mod basis;
mod complete;
mod gevp;
mod library;
mod search;

pub use basis::{BasisKind, CandidateBasis};
pub use gevp::{
    build_gevp, dc_gevp_step, dc_gevp_step_in, double_commutator, phase_normalize,
    round_to_permutation, DeflationSpace, GevpStep,
};
pub use library::{match_library, LibraryEntry, LibraryRanking, LIBRARY_ORDER_CAP, SCORE_QUANTUM};
pub use search::{
    discover_sequential, discover_with_basis, DiscoveryConfig, DiscoveryResult, StopReason,
    LAMBDA_FLOOR,
};
