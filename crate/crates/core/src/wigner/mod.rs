//! Wigner functions of two-qubit states: pointwise evaluation, spectral
//! bounds, the positivity polytope and orbit minimization.
//!
//! The Wigner function at a phase-space point `z` realized by a unitary `U`
//! is `W(z) = tr(ρ U Δ U†)`. Over the full unitary orbit it ranges exactly
//! over `[r↓·π↑, r↓·π↓]` (rearrangement), where `↓`/`↑` denote descending and
//! ascending order.
//!
//! The positivity polytope is the set of state spectra whose lower bound is
//! nonnegative, i.e. the fundamental simplex cut by `r↓·π↑ ≥ 0`.

mod orbit;
mod phase;
mod polytope;

pub use orbit::{min_over_orbit, min_over_orbit_with, Group, OrbitMinimum, OrbitOptions};
pub use phase::{
    euler_from_u2, su2_from_euler, PhasePoint, PhasePointFull, PhasePointLU, FULL_PLANES,
};
pub use polytope::{fundamental_simplex, polytope_vertices, PositivityPolytope};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermitian::{Herm4, Spectrum4};
use crate::kernel::{KernelKind, SwKernel};
use crate::linalg;
use crate::tolerance;

/// Wigner function of `rho` at `point`.
///
/// Local-unitary points are only meaningful for pair kernels; full-orbit
/// points are accepted for either kind.
pub fn wigner_value(rho: &Herm4, kernel: &SwKernel, point: &PhasePoint) -> Result<f64> {
    if let (PhasePoint::Lu(_), KernelKind::Quatrit) = (point, kernel.kind) {
        return Err(Error::KindMismatch(
            "local-unitary phase points require a pair kernel".into(),
        ));
    }
    Ok(wigner_at_unitary(rho, &kernel.matrix, &point.unitary()))
}

/// `tr(ρ U Δ U†)` for an explicit unitary.
pub(crate) fn wigner_at_unitary(rho: &Herm4, delta: &Herm4, u: &linalg::Mat<4>) -> f64 {
    let m = linalg::conjugate_by(u, delta.entries());
    let w = linalg::trace_of_product(rho.entries(), &m);
    debug_assert!(w.im.abs() <= 1e-10, "imaginary Wigner residue {}", w.im);
    w.re
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WignerBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Range of the Wigner function over the full unitary orbit:
/// `lower = r↓·π↑`, `upper = r↓·π↓`.
pub fn wf_bounds(r: &Spectrum4, pi: &Spectrum4) -> WignerBounds {
    let r = r.sorted_descending();
    WignerBounds {
        lower: r.dot(&pi.sorted_ascending()),
        upper: r.dot(&pi.sorted_descending()),
    }
}

/// Membership of the state spectrum `r` in the positivity polytope of `pi`.
pub fn polytope_contains(r: &Spectrum4, pi: &Spectrum4) -> bool {
    polytope_contains_with(r, pi, tolerance::BOUNDARY)
}

pub fn polytope_contains_with(r: &Spectrum4, pi: &Spectrum4, tol: f64) -> bool {
    wf_bounds(r, pi).lower >= -tol
}
