//! Sharp quantitative isoperimetry for symmetric log-concave measures on the
//! line: profiles, perimeters, asymmetry, deficit bounds, explicit minimizers,
//! a perimeter-lowering reduction to canonical sets, and randomized checkers.

pub mod bounds;
pub mod error;
pub mod interval;
pub mod measure;
mod quad;
pub mod reducer;
mod special;
pub mod verify;

pub use error::{Error, Result};
pub use measure::{
    check_profile_concavity, ConcavityReport, MeasureConfig, MeasureModel, MeasureParams,
    ProfileSpec, DEFAULT_PROB_TOL, DEFAULT_QUANTILE_EPS,
};
