//! Concrete charts for the local-unitary and full-unitary orbits.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermitian::wrap_angle;
use crate::linalg::{self, Mat, C64, ZERO};

/// `Rz(α) Ry(β) Rz(γ)` with `Rz(θ) = diag(e^{−iθ/2}, e^{iθ/2})` and
/// `Ry(β) = [[cos β/2, −sin β/2], [sin β/2, cos β/2]]`.
pub fn su2_from_euler(alpha: f64, beta: f64, gamma: f64) -> Mat<2> {
    let (c, s) = ((0.5 * beta).cos(), (0.5 * beta).sin());
    let sum = 0.5 * (alpha + gamma);
    let diff = 0.5 * (alpha - gamma);
    [
        [C64::from_polar(c, -sum), -C64::from_polar(s, -diff)],
        [C64::from_polar(s, diff), C64::from_polar(c, sum)],
    ]
}

/// Euler angles of a 2×2 unitary, up to global phase, with
/// `β ∈ [0, π]` and `α, γ ∈ [0, 2π)`. When `β` is 0 or π, `γ = 0`.
pub fn euler_from_u2(u: &Mat<2>) -> (f64, f64, f64) {
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    let root = det.sqrt();
    let a = u[0][0] / root;
    let b = u[1][0] / root;
    let beta = 2.0 * b.norm().atan2(a.norm());
    let (alpha, gamma) = if b.norm() < 1e-14 {
        (-2.0 * a.arg(), 0.0)
    } else if a.norm() < 1e-14 {
        (2.0 * b.arg(), 0.0)
    } else {
        (b.arg() - a.arg(), -a.arg() - b.arg())
    };
    (wrap_angle(alpha), beta.clamp(0.0, PI), wrap_angle(gamma))
}

/// A point of the local-unitary orbit: ZYZ Euler angles of the two qubit
/// rotations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePointLU {
    pub alpha1: f64,
    pub beta1: f64,
    pub gamma1: f64,
    pub alpha2: f64,
    pub beta2: f64,
    pub gamma2: f64,
}

impl PhasePointLU {
    pub fn new(angles: [f64; 6]) -> Result<Self> {
        let p = Self::from_array(angles);
        for (name, beta) in [("beta1", p.beta1), ("beta2", p.beta2)] {
            if !(0.0..=PI).contains(&beta) {
                return Err(Error::OutOfRange(format!("{name} = {beta} not in [0, pi]")));
            }
        }
        for (name, x) in [
            ("alpha1", p.alpha1),
            ("gamma1", p.gamma1),
            ("alpha2", p.alpha2),
            ("gamma2", p.gamma2),
        ] {
            if !(0.0..TAU).contains(&x) {
                return Err(Error::OutOfRange(format!("{name} = {x} not in [0, 2pi)")));
            }
        }
        Ok(p)
    }

    pub fn identity() -> Self {
        Self::from_array([0.0; 6])
    }

    fn from_array(a: [f64; 6]) -> Self {
        Self {
            alpha1: a[0],
            beta1: a[1],
            gamma1: a[2],
            alpha2: a[3],
            beta2: a[4],
            gamma2: a[5],
        }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [
            self.alpha1,
            self.beta1,
            self.gamma1,
            self.alpha2,
            self.beta2,
            self.gamma2,
        ]
    }

    /// Maps a point of the unit cube onto the chart (used for low-discrepancy starts).
    pub fn from_unit_cube(u: &[f64]) -> Self {
        Self::from_array([
            TAU * u[0],
            (1.0 - 2.0 * u[1]).acos(),
            TAU * u[2],
            TAU * u[3],
            (1.0 - 2.0 * u[4]).acos(),
            TAU * u[5],
        ])
    }

    /// Haar-distributed pair of rotations: `α, γ` uniform, `cos β` uniform on `[−1, 1]`.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u: [f64; 6] = std::array::from_fn(|_| rng.random::<f64>());
        Self::from_unit_cube(&u)
    }

    pub fn factors(&self) -> (Mat<2>, Mat<2>) {
        (
            su2_from_euler(self.alpha1, self.beta1, self.gamma1),
            su2_from_euler(self.alpha2, self.beta2, self.gamma2),
        )
    }

    pub fn from_factors(a: &Mat<2>, b: &Mat<2>) -> Self {
        let (alpha1, beta1, gamma1) = euler_from_u2(a);
        let (alpha2, beta2, gamma2) = euler_from_u2(b);
        Self {
            alpha1,
            beta1,
            gamma1,
            alpha2,
            beta2,
            gamma2,
        }
    }

    pub fn unitary(&self) -> Mat<4> {
        let (a, b) = self.factors();
        linalg::kron2(&a, &b)
    }
}

/// Planes of the six two-level rotations, applied left to right.
pub const FULL_PLANES: [(usize, usize); 6] = [(2, 3), (1, 2), (0, 1), (2, 3), (1, 2), (2, 3)];
/// Column nulled by each rotation when decomposing a unitary.
const FULL_COLUMNS: [usize; 6] = [0, 0, 0, 1, 1, 2];

/// A point of the full unitary orbit in a Hurwitz-type chart:
/// `U = G1 ⋯ G6 · diag(e^{iχ1}, e^{iχ2}, e^{iχ3}, 1)` where `Gk` rotates the
/// plane `FULL_PLANES[k]` by `θk ∈ [0, π/2]` with phase `φk ∈ [0, 2π)`.
///
/// Fifteen parameters cover every unitary up to a global phase, which
/// conjugation ignores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePointFull {
    pub thetas: [f64; 6],
    pub phis: [f64; 6],
    pub chis: [f64; 3],
}

/// `[[c, −s e^{−iφ}], [s e^{iφ}, c]]` embedded in the `(p, q)` plane.
fn plane_rotation(p: usize, q: usize, theta: f64, phi: f64) -> Mat<4> {
    let mut g = linalg::identity::<4>();
    let (c, s) = (theta.cos(), theta.sin());
    g[p][p] = C64::new(c, 0.0);
    g[q][q] = C64::new(c, 0.0);
    g[p][q] = -C64::from_polar(s, -phi);
    g[q][p] = C64::from_polar(s, phi);
    g
}

impl PhasePointFull {
    pub fn new(thetas: [f64; 6], phis: [f64; 6], chis: [f64; 3]) -> Result<Self> {
        if let Some(t) = thetas.iter().find(|t| !(0.0..=FRAC_PI_2).contains(*t)) {
            return Err(Error::OutOfRange(format!(
                "rotation angle {t} not in [0, pi/2]"
            )));
        }
        if let Some(x) = phis
            .iter()
            .chain(chis.iter())
            .find(|x| !(0.0..TAU).contains(*x))
        {
            return Err(Error::OutOfRange(format!("phase {x} not in [0, 2pi)")));
        }
        Ok(Self { thetas, phis, chis })
    }

    pub fn identity() -> Self {
        Self {
            thetas: [0.0; 6],
            phis: [0.0; 6],
            chis: [0.0; 3],
        }
    }

    pub fn to_array(&self) -> [f64; 15] {
        let mut out = [0.0; 15];
        out[..6].copy_from_slice(&self.thetas);
        out[6..12].copy_from_slice(&self.phis);
        out[12..].copy_from_slice(&self.chis);
        out
    }

    /// Maps a point of the unit cube onto the chart. `sin²θ` is taken
    /// uniform, which spreads the starts more evenly than uniform `θ`.
    pub fn from_unit_cube(u: &[f64]) -> Self {
        Self {
            thetas: std::array::from_fn(|k| u[k].sqrt().asin()),
            phis: std::array::from_fn(|k| TAU * u[6 + k]),
            chis: std::array::from_fn(|k| TAU * u[12 + k]),
        }
    }

    pub fn unitary(&self) -> Mat<4> {
        let mut u = linalg::identity::<4>();
        for (k, &(p, q)) in FULL_PLANES.iter().enumerate() {
            u = linalg::matmul(&u, &plane_rotation(p, q, self.thetas[k], self.phis[k]));
        }
        let mut d = linalg::identity::<4>();
        for k in 0..3 {
            d[k][k] = C64::from_polar(1.0, self.chis[k]);
        }
        linalg::matmul(&u, &d)
    }

    /// Chart coordinates of a unitary, up to global phase.
    pub fn from_unitary(u: &Mat<4>) -> Self {
        let mut w = *u;
        let mut thetas = [0.0; 6];
        let mut phis = [0.0; 6];
        for k in 0..6 {
            let (p, q) = FULL_PLANES[k];
            let j = FULL_COLUMNS[k];
            let (a, b) = (w[p][j], w[q][j]);
            let theta = b.norm().atan2(a.norm());
            let phi = if b.norm() < 1e-300 {
                0.0
            } else if a.norm() < 1e-300 {
                b.arg()
            } else {
                b.arg() - a.arg()
            };
            thetas[k] = theta;
            phis[k] = wrap_angle(phi);
            let g = plane_rotation(p, q, theta, phis[k]);
            w = linalg::matmul(&linalg::adjoint(&g), &w);
            w[q][j] = ZERO;
        }
        let last = w[3][3].arg();
        let chis = std::array::from_fn(|k| wrap_angle(w[k][k].arg() - last));
        Self { thetas, phis, chis }
    }
}

/// Point of either orbit chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "group", rename_all = "lowercase")]
pub enum PhasePoint {
    Lu(PhasePointLU),
    Full(PhasePointFull),
}

impl PhasePoint {
    pub fn unitary(&self) -> Mat<4> {
        match self {
            PhasePoint::Lu(p) => p.unitary(),
            PhasePoint::Full(p) => p.unitary(),
        }
    }
}

/// `k`-th element of the van der Corput sequence in `base`.
pub(crate) fn radical_inverse(mut k: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    while k > 0 {
        out += (k % base) as f64 * inv;
        k /= base;
        inv /= base as f64;
    }
    out
}

const PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Point `k` of the Halton sequence in `dim ≤ 15` dimensions.
pub(crate) fn halton(k: u64, dim: usize) -> Vec<f64> {
    PRIMES[..dim]
        .iter()
        .map(|&b| radical_inverse(k, b))
        .collect()
}
