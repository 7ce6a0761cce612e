//! Steepness analysis for polynomial jets.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod adapted;
pub mod criteria;
pub mod error;
pub mod frame;
pub mod grassmann;
pub mod io;
pub mod multiindex;
pub mod optim;
pub mod poly;
pub mod rng;
pub mod series;
pub mod thalweg;
pub mod vanishing;

pub use adapted::{
    adapt_truncation, pullback_jet, quadratic_invariants, CurveTruncation, ShearMap,
};
pub use criteria::{
    check_3jet, check_jet_1d, classify_subspace, eliminate_curve_params, nonsteep_witness_scan,
    LambdaClass, SubspaceClass,
};
pub use error::{Error, Result};
pub use frame::{gram_schmidt, AnisotropicBasis, Frame};
pub use grassmann::{
    chart_to_frame, codim_scan, degeneracy_det, discriminant_locus, DiagonalForm, GrassChart,
};
pub use multiindex::{enumerate_multiindices, MultiIndex};
pub use poly::{Jet, Poly};
pub use thalweg::{
    fit_index, maxmin_profile, probe_point, sphere_min, IndexFit, ProbeConfig, SteepnessEstimate,
    ThalwegSample,
};
pub use vanishing::{
    is_s_vanishing, residual_closed_form, residual_series_oracle, VanishingResidual,
};
