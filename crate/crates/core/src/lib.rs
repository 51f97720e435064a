//! Two-qubit separability, Stratonovich-Weyl kernels and Wigner positivity.
//!
//! The modules build on one another:
//!
//! * [`hermitian`], [`linalg`]: fixed-size complex Hermitian algebra;
//! * [`xstate`], [`separability`]: X-states, the PPT test and its closed form;
//! * [`kernel`]: quatrit and qubit-pair kernels and their moduli spaces;
//! * [`wigner`]: Wigner values, spectral bounds, the positivity polytope and
//!   orbit minimization;
//! * [`ensemble`]: random states, classification, Monte Carlo fractions,
//!   ball radii and figure rasters.

pub mod ensemble;
pub mod error;
pub mod hermitian;
pub mod kernel;
pub mod linalg;
pub mod rng;
pub mod separability;
pub mod tolerance;
pub mod wigner;
pub mod xstate;

pub use ensemble::{
    assess, classify, estimate_ball_radius, estimate_fractions, figure_grids, sample_hs_state,
    sample_x_state, Assessment, CPlusPredicate, Classification, ClassifyConfig, Ensemble,
    EnsembleReport, Figure, RadiusEstimate, RadiusOptions, RadiusProperty, Raster,
};
pub use error::{Error, Result};
pub use hermitian::{
    hs_distance, tensor_product, Herm2, Herm4, Hermitian, Order, Spectrum4, Subsystem,
};
pub use kernel::{KernelKind, KernelSpec, PairModuli, QuatritModuli, SwKernel};
pub use separability::SeparabilityVerdict;
pub use tolerance::Tolerances;
pub use wigner::{
    min_over_orbit, polytope_contains, polytope_vertices, wf_bounds, wigner_value, Group,
    OrbitMinimum, OrbitOptions, PhasePoint, PhasePointFull, PhasePointLU, PositivityPolytope,
    WignerBounds,
};
pub use xstate::{XParams, XState};

/// Crate version, recorded in output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
