//! Separability of X-states: the matrix-level PPT test and the closed-form
//! inequalities on block spectra and mixing angles, plus absolute
//! separability (separable for every choice of the angles).
//!
//! For two qubits a positive partial transpose is necessary and sufficient
//! for separability, so both routes decide the same set.

use serde::Serialize;

use crate::error::Result;
use crate::hermitian::{Herm4, Spectrum4, Subsystem};
use crate::tolerance;
use crate::xstate::XParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparabilityVerdict {
    pub separable: bool,
    /// Signed slack of the tightest condition. Nonnegative (up to
    /// [`tolerance::BOUNDARY`]) exactly when `separable`.
    pub margin: f64,
}

impl SeparabilityVerdict {
    fn from_margin(margin: f64) -> Self {
        Self {
            separable: margin >= -tolerance::BOUNDARY,
            margin,
        }
    }
}

/// PPT test. The margin is the smallest eigenvalue of the partial transpose.
pub fn ppt_separable(m: &Herm4) -> Result<SeparabilityVerdict> {
    m.validate_density()?;
    Ok(SeparabilityVerdict::from_margin(
        m.partial_transpose(Subsystem::B).min_eigenvalue(),
    ))
}

/// The two closed-form conditions
///
/// ```text
/// (r1 − r2)² cos²φ1 + (r3 − r4)² sin²φ2 ≤ (r1 + r2)²
/// (r3 − r4)² cos²φ2 + (r1 − r2)² sin²φ1 ≤ (r3 + r4)²
/// ```
///
/// The margin is the smaller of the two slacks (right minus left side).
pub fn x_separable_inequalities(p: &XParams) -> SeparabilityVerdict {
    let [slack_outer, slack_inner] = inequality_slacks(p);
    SeparabilityVerdict::from_margin(slack_outer.min(slack_inner))
}

/// Slacks of the outer-block and inner-block conditions, in that order.
pub fn inequality_slacks(p: &XParams) -> [f64; 2] {
    let [r1, r2, r3, r4] = p.r;
    let d12 = (r1 - r2).powi(2);
    let d34 = (r3 - r4).powi(2);
    let (c1, s1) = (p.phi1.cos().powi(2), p.phi1.sin().powi(2));
    let (c2, s2) = (p.phi2.cos().powi(2), p.phi2.sin().powi(2));
    [
        (r1 + r2).powi(2) - (d12 * c1 + d34 * s2),
        (r3 + r4).powi(2) - (d34 * c2 + d12 * s1),
    ]
}

/// Slacks of `(r1 − r2)² ≤ 4 r3 r4` and `(r3 − r4)² ≤ 4 r1 r2` on a
/// block-paired spectrum.
pub fn absolute_separability_slacks(r: [f64; 4]) -> [f64; 2] {
    let [r1, r2, r3, r4] = r;
    [
        4.0 * r3 * r4 - (r1 - r2).powi(2),
        4.0 * r1 * r2 - (r3 - r4).powi(2),
    ]
}

/// Absolute separability of a block-paired spectrum: `(r1, r2)` from the
/// outer block and `(r3, r4)` from the inner block, pairs sorted
/// internally. Such an X-state is separable for every pair of mixing angles.
pub fn absolutely_separable(r: [f64; 4]) -> bool {
    absolute_separability_slacks(r)
        .iter()
        .all(|s| *s >= -tolerance::BOUNDARY)
}

/// The same inequalities evaluated after sorting the whole spectrum into
/// `r1 ≥ r2 ≥ r3 ≥ r4` (the fundamental simplex).
///
/// This is a statement about the sorted pairing only. It does not imply
/// separability of an X-state whose blocks carry a different pairing, e.g.
/// spectrum `(1/2, 1/2, 0, 0)` split as `(1/2, 0) | (1/2, 0)` is entangled
/// for generic angles.
pub fn absolutely_separable_sorted(spectrum: &Spectrum4) -> bool {
    absolutely_separable(spectrum.sorted_descending().values())
}
