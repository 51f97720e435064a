//! X-shaped two-qubit states in matrix coordinates and in block
//! spectrum/angle coordinates.
//!
//! An X-state is block diagonal after the permutation `(0, 3 | 1, 2)`. The
//! outer block `{0, 3}` carries the eigenvalue pair `(r1, r2)` and the inner
//! block `{1, 2}` carries `(r3, r4)`. Each block is written as
//! `R(φ, ψ) diag(r_hi, r_lo) R(φ, ψ)†`, see [`block_eig_2x2`], so that
//!
//! ```text
//! ρ11 = (r1 + r2)/2 + (r1 − r2)/2 cos φ1      ρ14 = (r1 − r2)/2 sin φ1 e^{iψ1}
//! ρ44 = (r1 + r2)/2 − (r1 − r2)/2 cos φ1
//! ρ22 = (r3 + r4)/2 + (r3 − r4)/2 cos φ2      ρ23 = (r3 − r4)/2 sin φ2 e^{iψ2}
//! ρ33 = (r3 + r4)/2 − (r3 − r4)/2 cos φ2
//! ```
//!
//! Pairs are sorted inside each block; no order across blocks is imposed.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{block_eig_2x2, Herm4, Spectrum4};
use crate::linalg::{self, C64};
use crate::tolerance;

/// Matrix coordinates of an X-state. Serializes to the state-file schema,
/// with complex entries as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XState {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    pub rho14: Complex64,
    pub rho23: Complex64,
}

impl XState {
    pub fn new(
        rho11: f64,
        rho22: f64,
        rho33: f64,
        rho44: f64,
        rho14: Complex64,
        rho23: Complex64,
    ) -> Result<Self> {
        let s = Self {
            rho11,
            rho22,
            rho33,
            rho44,
            rho14,
            rho23,
        };
        s.validate()?;
        Ok(s)
    }

    /// Checks unit trace and positive semidefiniteness of both blocks.
    pub fn validate(&self) -> Result<()> {
        let diag = [self.rho11, self.rho22, self.rho33, self.rho44];
        if diag.iter().any(|x| !x.is_finite())
            || [self.rho14, self.rho23]
                .iter()
                .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidDensity("non-finite entry".into()));
        }
        let trace: f64 = diag.iter().sum();
        if (trace - 1.0).abs() > tolerance::SIMPLEX {
            return Err(Error::InvalidDensity(format!(
                "trace is {trace} (residual {:e})",
                trace - 1.0
            )));
        }
        if let Some((i, x)) = diag
            .iter()
            .enumerate()
            .find(|(_, x)| **x < -tolerance::SIMPLEX)
        {
            return Err(Error::InvalidDensity(format!(
                "diagonal entry rho{0}{0} = {x} is negative",
                i + 1
            )));
        }
        if self.rho11 * self.rho44 < self.rho14.norm_sqr() - tolerance::SIMPLEX {
            return Err(Error::InvalidDensity(
                "outer block fails rho11*rho44 >= |rho14|^2".into(),
            ));
        }
        if self.rho22 * self.rho33 < self.rho23.norm_sqr() - tolerance::SIMPLEX {
            return Err(Error::InvalidDensity(
                "inner block fails rho22*rho33 >= |rho23|^2".into(),
            ));
        }
        Ok(())
    }

    pub fn maximally_mixed() -> Self {
        Self {
            rho11: 0.25,
            rho22: 0.25,
            rho33: 0.25,
            rho44: 0.25,
            rho14: linalg::ZERO,
            rho23: linalg::ZERO,
        }
    }

    /// `(|00⟩ + |11⟩)(⟨00| + ⟨11|)/2`.
    pub fn bell() -> Self {
        Self {
            rho11: 0.5,
            rho22: 0.0,
            rho33: 0.0,
            rho44: 0.5,
            rho14: C64::new(0.5, 0.0),
            rho23: linalg::ZERO,
        }
    }

    /// `p · Bell + (1 − p) · I/4`.
    pub fn werner(p: f64) -> Self {
        let q = (1.0 - p) / 4.0;
        Self {
            rho11: p / 2.0 + q,
            rho22: q,
            rho33: q,
            rho44: p / 2.0 + q,
            rho14: C64::new(p / 2.0, 0.0),
            rho23: linalg::ZERO,
        }
    }

    pub fn to_matrix(&self) -> Herm4 {
        let mut m = linalg::zeros::<4>();
        m[0][0] = C64::new(self.rho11, 0.0);
        m[1][1] = C64::new(self.rho22, 0.0);
        m[2][2] = C64::new(self.rho33, 0.0);
        m[3][3] = C64::new(self.rho44, 0.0);
        m[0][3] = self.rho14;
        m[3][0] = self.rho14.conj();
        m[1][2] = self.rho23;
        m[2][1] = self.rho23.conj();
        Herm4::symmetrize(m)
    }

    /// Reads the X entries of `m`, provided the other entries are within `tol` of zero.
    pub fn from_matrix(m: &Herm4, tol: f64) -> Option<Self> {
        is_x_shape(m, tol).then(|| Self {
            rho11: m.get(0, 0).re,
            rho22: m.get(1, 1).re,
            rho33: m.get(2, 2).re,
            rho44: m.get(3, 3).re,
            rho14: m.get(0, 3),
            rho23: m.get(1, 2),
        })
    }

    pub fn to_params(&self) -> XParams {
        x_to_params(self)
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            (self.rho11 - other.rho11).abs(),
            (self.rho22 - other.rho22).abs(),
            (self.rho33 - other.rho33).abs(),
            (self.rho44 - other.rho44).abs(),
            (self.rho14 - other.rho14).norm(),
            (self.rho23 - other.rho23).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Block spectrum and Euler angles of an X-state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XParams {
    /// `(r1, r2)` from the outer block, `(r3, r4)` from the inner block,
    /// each pair in descending order.
    pub r: [f64; 4],
    pub phi1: f64,
    pub phi2: f64,
    pub psi1: f64,
    pub psi2: f64,
}

impl XParams {
    pub fn new(r: [f64; 4], phi1: f64, phi2: f64, psi1: f64, psi2: f64) -> Result<Self> {
        let p = Self {
            r,
            phi1,
            phi2,
            psi1,
            psi2,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSimplex("non-finite eigenvalue".into()));
        }
        if let Some(x) = self.r.iter().find(|x| **x < -tolerance::SIMPLEX) {
            return Err(Error::InvalidSimplex(format!("eigenvalue {x} is negative")));
        }
        let sum: f64 = self.r.iter().sum();
        if (sum - 1.0).abs() > tolerance::SIMPLEX {
            return Err(Error::InvalidSimplex(format!("eigenvalues sum to {sum}")));
        }
        if self.r[0] < self.r[1] - tolerance::SIMPLEX || self.r[2] < self.r[3] - tolerance::SIMPLEX
        {
            return Err(Error::InvalidSimplex(format!(
                "block pairs must be descending, got {:?}",
                self.r
            )));
        }
        for (name, phi) in [("phi1", self.phi1), ("phi2", self.phi2)] {
            if !(0.0..=PI).contains(&phi) {
                return Err(Error::OutOfRange(format!("{name} = {phi} not in [0, pi]")));
            }
        }
        for (name, psi) in [("psi1", self.psi1), ("psi2", self.psi2)] {
            if !(0.0..TAU).contains(&psi) {
                return Err(Error::OutOfRange(format!("{name} = {psi} not in [0, 2pi)")));
            }
        }
        Ok(())
    }

    pub fn spectrum(&self) -> Spectrum4 {
        Spectrum4::unsorted(self.r)
    }

    pub fn to_state(&self) -> XState {
        x_from_params(self)
    }
}

fn block_entries(hi: f64, lo: f64, phi: f64, psi: f64) -> (f64, f64, Complex64) {
    let mean = 0.5 * (hi + lo);
    let half = 0.5 * (hi - lo);
    (
        mean + half * phi.cos(),
        mean - half * phi.cos(),
        Complex64::from_polar(half * phi.sin(), psi),
    )
}

/// Assembles the X-state with the given block spectra and angles.
pub fn x_from_params(p: &XParams) -> XState {
    let (rho11, rho44, rho14) = block_entries(p.r[0], p.r[1], p.phi1, p.psi1);
    let (rho22, rho33, rho23) = block_entries(p.r[2], p.r[3], p.phi2, p.psi2);
    XState {
        rho11,
        rho22,
        rho33,
        rho44,
        rho14,
        rho23,
    }
}

/// Inverse of [`x_from_params`], one closed-form block eigensystem per block.
pub fn x_to_params(s: &XState) -> XParams {
    let outer = block_eig_2x2(s.rho11, s.rho44, s.rho14);
    let inner = block_eig_2x2(s.rho22, s.rho33, s.rho23);
    XParams {
        r: [outer.plus, outer.minus, inner.plus, inner.minus],
        phi1: outer.mixing_angle,
        phi2: inner.mixing_angle,
        psi1: outer.phase,
        psi2: inner.phase,
    }
}

/// True when the eight entries outside the X pattern are at most `tol` in magnitude.
pub fn is_x_shape(m: &Herm4, tol: f64) -> bool {
    const OFF_PATTERN: [(usize, usize); 4] = [(0, 1), (0, 2), (1, 3), (2, 3)];
    OFF_PATTERN
        .iter()
        .all(|&(i, j)| m.get(i, j).norm() <= tol && m.get(j, i).norm() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_params(rng: &mut impl Rng) -> XParams {
        let e: [f64; 4] = std::array::from_fn(|_| -(1.0 - rng.random::<f64>()).ln());
        let total: f64 = e.iter().sum();
        let mut r = e.map(|x| x / total);
        if r[0] < r[1] {
            r.swap(0, 1);
        }
        if r[2] < r[3] {
            r.swap(2, 3);
        }
        XParams {
            r,
            phi1: rng.random_range(0.0..PI),
            phi2: rng.random_range(0.0..PI),
            psi1: rng.random_range(0.0..TAU),
            psi2: rng.random_range(0.0..TAU),
        }
    }

    #[test]
    fn bell_from_params() {
        let p = XParams::new([1.0, 0.0, 0.0, 0.0], PI / 2.0, 0.0, 0.0, 0.0).unwrap();
        let s = x_from_params(&p);
        assert!(s.max_abs_diff(&XState::bell()) < 1e-15, "{s:?}");
        let spec = s.to_matrix().spectrum().values();
        assert!((spec[0] - 1.0).abs() < 1e-14 && spec[1..].iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn uniform_spectrum_gives_maximally_mixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let mut p = random_params(&mut rng);
            p.r = [0.25; 4];
            assert!(x_from_params(&p).max_abs_diff(&XState::maximally_mixed()) < 1e-16);
        }
    }

    #[test]
    fn werner_from_params() {
        let prob = 0.5;
        let q = (1.0 - prob) / 4.0;
        for phi2 in [0.0, 0.7, PI] {
            let p = XParams::new(
                [(1.0 + 3.0 * prob) / 4.0, q, q, q],
                PI / 2.0,
                phi2,
                0.0,
                1.0,
            )
            .unwrap();
            let s = x_from_params(&p);
            // p · Bell + (1 − p) · I/4 assembled entrywise.
            let direct = XState::bell()
                .to_matrix()
                .scaled(prob)
                .plus(&Herm4::maximally_mixed().scaled(1.0 - prob));
            assert!(crate::hermitian::hs_distance(&s.to_matrix(), &direct) < 1e-15);
            assert!((s.rho11 - 0.375).abs() < 1e-15 && (s.rho44 - 0.375).abs() < 1e-15);
            assert!((s.rho14 - C64::new(0.25, 0.0)).norm() < 1e-15);
            assert!((s.rho22 - 0.125).abs() < 1e-15 && (s.rho33 - 0.125).abs() < 1e-15);
        }
    }

    #[test]
    fn to_params_examples() {
        let p = x_to_params(&XState::maximally_mixed());
        assert_eq!(p.r, [0.25; 4]);
        assert_eq!((p.phi1, p.phi2), (0.0, 0.0));

        let p = x_to_params(&XState::bell());
        assert!((p.r[0] - 1.0).abs() < 1e-15 && p.r[1].abs() < 1e-15);
        assert!((p.phi1 - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn round_trip_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let s = x_from_params(&random_params(&mut rng));
            s.validate().unwrap();
            let back = x_from_params(&x_to_params(&s));
            assert!(back.max_abs_diff(&s) <= 1e-10);
        }
    }

    #[test]
    fn spectrum_is_angle_independent() {
        let r = [0.5, 0.2, 0.25, 0.05];
        for i in 0..=12 {
            for j in 0..=12 {
                let phi1 = PI * i as f64 / 12.0;
                let phi2 = PI * j as f64 / 12.0;
                let p = XParams::new(r, phi1, phi2, 1.3, 4.0).unwrap();
                let m = x_from_params(&p).to_matrix();
                m.validate_density().unwrap();
                let got = m.spectrum().values();
                let want = Spectrum4::descending(r).values();
                for (a, b) in got.iter().zip(want.iter()) {
                    assert!((a - b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn x_shape_detection() {
        assert!(is_x_shape(&XState::bell().to_matrix(), 0.0));
        assert!(is_x_shape(&Herm4::maximally_mixed(), 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let mut m = linalg::zeros::<4>();
            for i in 0..4 {
                for j in i..4 {
                    let z = C64::new(
                        rng.random_range(-1.0..1.0),
                        if i == j {
                            0.0
                        } else {
                            rng.random_range(-1.0..1.0)
                        },
                    );
                    m[i][j] = z;
                    m[j][i] = z.conj();
                }
            }
            assert!(!is_x_shape(&Herm4::new(m).unwrap(), 1e-12));
        }
    }

    #[test]
    fn validation_errors() {
        assert!(XState::new(0.3, 0.3, 0.2, 0.1, linalg::ZERO, linalg::ZERO).is_err());
        assert!(XState::new(0.5, 0.0, 0.0, 0.5, C64::new(0.6, 0.0), linalg::ZERO).is_err());
        assert!(XParams::new([0.2, 0.3, 0.3, 0.2], 0.0, 0.0, 0.0, 0.0).is_err());
        assert!(XParams::new([0.5, 0.3, 0.2, 0.1], 0.0, 0.0, 0.0, 0.0).is_err());
        assert!(XParams::new([0.4, 0.3, 0.2, 0.1], 4.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn json_schema() {
        let s: XState = serde_json::from_str(
            r#"{"rho11":0.5,"rho22":0,"rho33":0,"rho44":0.5,"rho14":[0.5,0],"rho23":[0,0]}"#,
        )
        .unwrap();
        assert_eq!(s, XState::bell());
        assert!(serde_json::from_str::<XState>(r#"{"rho11":1}"#).is_err());
    }
}
