//! Averaged-variational-principle bounds: test functions, upper bounds on
//! eigenvalue averages, lower bounds on Riesz means and heat traces,
//! individual-eigenvalue sandwiches and the refined Kröger–Laptev inequality.

pub mod bounds;
pub mod profile;
pub mod refinement;

pub use bounds::*;
pub use profile::{
    inscribed_ball_norms, inscribed_ball_profile, mollified_indicator_profile, mollifier_sup_bounds, NormProvenance, Norms,
    ProfileKind, SampledExtremes, TestFunctionProfile, MAX_NORM_ERROR, MIN_GRID_RES,
};
pub use refinement::*;
