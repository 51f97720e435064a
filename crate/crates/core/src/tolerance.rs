//! Numerical tolerances shared by every module.

use serde::{Deserialize, Serialize};

/// Hermiticity of matrix entries, `|m[i][j] - conj(m[j][i])|`.
pub const HERMITICITY: f64 = 1e-12;
/// Eigendecomposition reconstruction and unitarity residuals.
pub const RECONSTRUCTION: f64 = 1e-10;
/// Slack at which a closed inequality still counts as satisfied.
pub const BOUNDARY: f64 = 1e-12;
/// Unit-trace and nonnegativity of probability vectors and density matrices.
pub const SIMPLEX: f64 = 1e-12;
/// Residuals of the kernel master equations.
pub const KERNEL_RESIDUAL: f64 = 1e-10;
/// Quatrit discriminant accepted as zero.
pub const DISCRIMINANT: f64 = 1e-12;
/// Vertex deduplication distance for clipped polytopes.
pub const VERTEX_DEDUP: f64 = 1e-10;
/// Orbit minima above `-ORBIT` count as nonnegative.
pub const ORBIT: f64 = 1e-6;

/// Runtime-adjustable copy of the tolerances that decide classification
/// outcomes. Construction-time validation always uses the constants above.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub boundary: f64,
    pub simplex: f64,
    pub orbit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            boundary: BOUNDARY,
            simplex: SIMPLEX,
            orbit: ORBIT,
        }
    }
}

impl Tolerances {
    /// Applies a `name = value` override. Returns `false` for unknown names.
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        match name {
            "boundary" => self.boundary = value,
            "simplex" => self.simplex = value,
            "orbit" => self.orbit = value,
            _ => return false,
        }
        true
    }
}
