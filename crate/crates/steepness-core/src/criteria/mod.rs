//! Explicit steepness criteria.

pub mod bounds;
mod classify;
mod eliminate;
mod jet1d;
mod scan;

pub use bounds::{bound2, codim_bound, codimension2, index_bounds, nekhoroshev_choice};
pub use classify::{
    classify_subspace, require_orthogonal, restricted_hessian, LambdaClass, SubspaceClass,
    NULL_EIGEN_TOL,
};
pub use eliminate::{eliminate_curve_params, h_matrix, ElimSolver, Elimination, Leftover};
pub use jet1d::{check_3jet, check_jet_1d, Jet1dReport, SphereOutcome, ThreeJetReport};
pub use scan::{nonsteep_witness_scan, ScanConfig, ScanEntry, ScanReport, WitnessCandidate};
