//! Stratonovich-Weyl kernels of X shape for a four-level system.
//!
//! Every kernel spectrum satisfies `Σπ = 1` and `Σπ² = 4`. Two families are
//! built here:
//!
//! * **quatrit** kernels, parameterized by two free eigenvalues `(π1, π2)`;
//!   the remaining pair solves the master equations and exists while the
//!   discriminant `7 + 2(π1 + π2 − π1π2) − 3(π1² + π2²)` is nonnegative;
//! * **qubit-pair** kernels, which additionally have reduced kernels
//!   `tr_B Δ`, `tr_A Δ` of purity 2. They are parameterized by the moduli
//!   `(|Δ14|, |Δ23|)` with `δ² = |Δ14|² + |Δ23|² < 9/8`.
//!
//! The pair family maps into the quatrit family by reading off the two
//! largest eigenvalues ([`embed_pair_in_quatrit`]).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{Herm4, Spectrum4, Subsystem};
use crate::linalg::{self, C64};
use crate::tolerance;

/// Upper bound of `|Δ14|`, `3 / (2√2)`.
pub fn d14_bound() -> f64 {
    3.0 / (2.0 * 2f64.sqrt())
}

/// Upper bound of `|Δ23|` at the given `|Δ14|`, `√(9 − 8 d14²) / (2√2)`.
/// `NaN` when `d14` exceeds [`d14_bound`].
pub fn d23_bound(d14: f64) -> f64 {
    (9.0 - 8.0 * d14 * d14).sqrt() / (2.0 * 2f64.sqrt())
}

pub fn quatrit_discriminant(pi1: f64, pi2: f64) -> f64 {
    7.0 + 2.0 * (pi1 + pi2 - pi1 * pi2) - 3.0 * (pi1 * pi1 + pi2 * pi2)
}

/// Range of either free eigenvalue over the quatrit moduli space,
/// `(1 ∓ 3√5) / 4`.
pub fn quatrit_eigenvalue_range() -> (f64, f64) {
    let r = 3.0 * 5f64.sqrt();
    ((1.0 - r) / 4.0, (1.0 + r) / 4.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuatritModuli {
    pub pi1: f64,
    pub pi2: f64,
}

impl QuatritModuli {
    pub fn new(pi1: f64, pi2: f64) -> Result<Self> {
        let disc = quatrit_discriminant(pi1, pi2);
        if !(disc >= -tolerance::DISCRIMINANT) {
            return Err(Error::OutsideQuatritModuli { disc });
        }
        Ok(Self { pi1, pi2 })
    }

    pub fn discriminant(&self) -> f64 {
        quatrit_discriminant(self.pi1, self.pi2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuatritSpectrum {
    /// `(π1, π2, π3, π4)` with `π3` the plus root and `π4` the minus root.
    pub spectrum: Spectrum4,
    pub plus_root: f64,
    pub minus_root: f64,
    /// Discriminant after clamping tolerated negatives to zero.
    pub disc: f64,
}

/// Solves the master equations for the remaining two eigenvalues,
/// `π3,4 = (1 − π1 − π2)/2 ± √Disc / 2`.
pub fn quatrit_spectrum(m: &QuatritModuli) -> QuatritSpectrum {
    let disc = m.discriminant().max(0.0);
    let centre = 0.5 * (1.0 - m.pi1 - m.pi2);
    let half = 0.5 * disc.sqrt();
    let (plus_root, minus_root) = (centre + half, centre - half);
    QuatritSpectrum {
        spectrum: Spectrum4::unsorted([m.pi1, m.pi2, plus_root, minus_root]),
        plus_root,
        minus_root,
        disc,
    }
}

/// Moduli `(|Δ14|, |Δ23|)` of a qubit-pair kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairModuli {
    pub d14: f64,
    pub d23: f64,
}

impl PairModuli {
    /// Accepts the open region `d14 < 3/(2√2)`, `d23 < √(9 − 8 d14²)/(2√2)`
    /// and its boundary within [`tolerance::BOUNDARY`].
    pub fn new(d14: f64, d23: f64) -> Result<Self> {
        if !d14.is_finite() || !d23.is_finite() || d14 < 0.0 || d23 < 0.0 {
            return Err(Error::OutsidePairModuli(format!(
                "moduli must be finite and nonnegative, got ({d14}, {d23})"
            )));
        }
        let bound14 = d14_bound();
        if d14 > bound14 + tolerance::BOUNDARY {
            return Err(Error::OutsidePairModuli(format!(
                "|D14| = {d14} violates |D14| < 3/(2*sqrt 2) = {bound14}; \
                 the |D23| limit sqrt(9 - 8 |D14|^2)/(2*sqrt 2) is undefined there"
            )));
        }
        let limit = d23_bound(d14.min(bound14));
        if d23 > limit + tolerance::BOUNDARY {
            return Err(Error::OutsidePairModuli(format!(
                "|D23| = {d23} violates |D23| < sqrt(9 - 8 |D14|^2)/(2*sqrt 2) = {limit} at |D14| = {d14}"
            )));
        }
        Ok(Self { d14, d23 })
    }

    pub fn delta(&self) -> f64 {
        self.d14.hypot(self.d23)
    }

    /// `q = √(9 − 8δ²)`, clamped at the boundary.
    pub fn q(&self) -> f64 {
        (9.0 - 8.0 * (self.d14 * self.d14 + self.d23 * self.d23))
            .max(0.0)
            .sqrt()
    }

    /// On the closure but not in the open moduli region.
    pub fn is_boundary(&self) -> bool {
        self.d14 >= d14_bound() - tolerance::BOUNDARY
            || self.d23 >= d23_bound(self.d14.min(d14_bound())) - tolerance::BOUNDARY
    }
}

/// Kernel eigenvalues in the labelling
///
/// ```text
/// π1,3 = 1/4 ± d14 + q/4
/// π2,4 = (1 ± 2√(3 + 4 d23²) − q) / 4
/// ```
///
/// The labels are not always descending (at `d14 = 0`, `π1 = π3`); use
/// [`Spectrum4::sorted_descending`] for the ordered view.
pub fn pair_spectrum(m: &PairModuli) -> Spectrum4 {
    let q = m.q();
    let w = (3.0 + 4.0 * m.d23 * m.d23).sqrt();
    Spectrum4::unsorted([
        0.25 + m.d14 + 0.25 * q,
        0.25 * (1.0 + 2.0 * w - q),
        0.25 - m.d14 + 0.25 * q,
        0.25 * (1.0 - 2.0 * w - q),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Quatrit,
    Pair,
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelKind::Quatrit => "quatrit",
            KernelKind::Pair => "pair",
        })
    }
}

/// A Stratonovich-Weyl kernel matrix with its descending spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwKernel {
    pub kind: KernelKind,
    pub matrix: Herm4,
    pub spectrum: Spectrum4,
}

impl SwKernel {
    /// Wraps an arbitrary matrix; the spectrum comes from the eigensolver.
    /// Use [`validate_kernel`] to check the master equations.
    pub fn from_matrix(kind: KernelKind, matrix: Herm4) -> Self {
        Self {
            kind,
            matrix,
            spectrum: matrix.spectrum(),
        }
    }

    /// Ascending spectrum, the ordering paired with descending state spectra
    /// in the Wigner lower bound.
    pub fn ascending(&self) -> Spectrum4 {
        self.spectrum.sorted_ascending()
    }
}

/// Canonical X-shaped pair kernel with real nonnegative off-diagonals:
///
/// ```text
/// Δ11 = Δ44 = (1 + q)/4,  Δ22 = (1 + 2√3 − q)/4,  Δ33 = (1 − 2√3 − q)/4,
/// Δ14 = d14,  Δ23 = d23,  q = √(9 − 8δ²).
/// ```
///
/// This is the branch `Δ1 + Δ2 = (1 + √3)/2`, `Δ1 + Δ3 = (1 − √3)/2` of the
/// reduced-purity equations.
pub fn build_pair_kernel(m: &PairModuli) -> SwKernel {
    let q = m.q();
    let s3 = 3f64.sqrt();
    let mut e = linalg::zeros::<4>();
    e[0][0] = C64::new((1.0 + q) / 4.0, 0.0);
    e[3][3] = e[0][0];
    e[1][1] = C64::new((1.0 + 2.0 * s3 - q) / 4.0, 0.0);
    e[2][2] = C64::new((1.0 - 2.0 * s3 - q) / 4.0, 0.0);
    e[0][3] = C64::new(m.d14, 0.0);
    e[3][0] = e[0][3];
    e[1][2] = C64::new(m.d23, 0.0);
    e[2][1] = e[1][2];
    let matrix = Herm4::symmetrize(e);
    SwKernel {
        kind: KernelKind::Pair,
        matrix,
        spectrum: pair_spectrum(m).sorted_descending(),
    }
}

/// Diagonal quatrit kernel `diag(π1, π2, π3, π4)`.
pub fn build_quatrit_kernel(m: &QuatritModuli) -> SwKernel {
    let s = quatrit_spectrum(m).spectrum;
    SwKernel {
        kind: KernelKind::Quatrit,
        matrix: Herm4::from_real_diagonal(s.values()),
        spectrum: s.sorted_descending(),
    }
}

/// Residuals of the master equations, computed from the kernel matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelResiduals {
    /// `|Σπ − 1|`.
    pub trace: f64,
    /// `|Σπ² − 4|`.
    pub purity: f64,
    /// `|tr (tr_B Δ)² − 2|`.
    pub reduced_a: f64,
    /// `|tr (tr_A Δ)² − 2|`.
    pub reduced_b: f64,
    /// Whether the reduced-kernel conditions count towards `passes`.
    pub composite: bool,
    pub passes: bool,
}

pub fn validate_kernel(k: &SwKernel) -> KernelResiduals {
    let eig = k.matrix.eigenvalues();
    let trace = (eig.iter().sum::<f64>() - 1.0).abs();
    let purity = (eig.iter().map(|x| x * x).sum::<f64>() - 4.0).abs();
    let reduced_purity = |s: Subsystem| {
        let r = k.matrix.partial_trace(s);
        r.trace_product(&r)
    };
    let reduced_a = (reduced_purity(Subsystem::A) - 2.0).abs();
    let reduced_b = (reduced_purity(Subsystem::B) - 2.0).abs();
    let composite = k.kind == KernelKind::Pair;
    let tol = tolerance::KERNEL_RESIDUAL;
    let passes =
        trace <= tol && purity <= tol && (!composite || (reduced_a <= tol && reduced_b <= tol));
    KernelResiduals {
        trace,
        purity,
        reduced_a,
        reduced_b,
        composite,
        passes,
    }
}

/// The two largest eigenvalues of the pair kernel as quatrit moduli.
pub fn embed_pair_in_quatrit(m: &PairModuli) -> QuatritModuli {
    let s = pair_spectrum(m).sorted_descending().values();
    QuatritModuli {
        pi1: s[0],
        pi2: s[1],
    }
}

/// Inverts [`pair_spectrum`] up to ordering: returns moduli whose kernel has
/// the given spectrum, if any.
///
/// A spectrum is a pair spectrum when it splits into an outer pair `{x, y}`
/// and an inner pair `{u ≥ v}` with `u − v ≥ √3` and `x + y ≥ u + v`; then
/// `d14 = |x − y|/2` and `d23 = √((u − v)² − 3)/2`.
pub fn pair_moduli_for_spectrum(spectrum: &Spectrum4, tol: f64) -> Option<PairModuli> {
    let v = spectrum.values();
    const SPLITS: [([usize; 2], [usize; 2]); 6] = [
        ([0, 1], [2, 3]),
        ([2, 3], [0, 1]),
        ([0, 2], [1, 3]),
        ([1, 3], [0, 2]),
        ([0, 3], [1, 2]),
        ([1, 2], [0, 3]),
    ];
    SPLITS.iter().find_map(|&([i, j], [k, l])| {
        let (x, y) = (v[i], v[j]);
        let (u, w) = if v[k] >= v[l] {
            (v[k], v[l])
        } else {
            (v[l], v[k])
        };
        let gap = u - w;
        if gap < 3f64.sqrt() - tol || (x + y) - (u + w) < -tol {
            return None;
        }
        let d14 = (0.5 * (x - y).abs()).min(d14_bound());
        // Near δ² = 9/8 the spectrum depends on the moduli through √q, so
        // rounding moves it by ~1e-8; the rebuild check tolerates that.
        let d23 = (0.5 * (gap * gap - 3.0).max(0.0).sqrt()).min(d23_bound(d14));
        let m = PairModuli::new(d14, d23).ok()?;
        let rebuilt = pair_spectrum(&m).sorted_descending().values();
        let target = spectrum.sorted_descending().values();
        rebuilt
            .iter()
            .zip(target.iter())
            .all(|(a, b)| (a - b).abs() <= tol.max(1e-6))
            .then_some(m)
    })
}

/// Whether the quatrit moduli point is the image of some pair moduli under
/// [`embed_pair_in_quatrit`]: inside the quatrit domain, `π1 ≥ π2` are the two
/// largest eigenvalues, and the full spectrum is a pair spectrum.
pub fn in_pair_image(pi1: f64, pi2: f64, tol: f64) -> bool {
    let Ok(m) = QuatritModuli::new(pi1, pi2) else {
        return false;
    };
    let qs = quatrit_spectrum(&m);
    if pi1 < pi2 - tol || pi2 < qs.plus_root - tol {
        return false;
    }
    pair_moduli_for_spectrum(&qs.spectrum, tol).is_some()
}

/// `n × n` grid over the closed pair-moduli region: `d14` uniform on
/// `[0, 3/(2√2)]`, and at each `d14` a uniform `d23` on `[0, limit(d14)]`.
pub fn pair_moduli_grid(n: usize) -> Vec<PairModuli> {
    assert!(n >= 2, "grid resolution must be at least 2");
    let top = d14_bound();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let d14 = top * i as f64 / (n - 1) as f64;
        let limit = d23_bound(d14).max(0.0);
        let limit = if limit.is_nan() { 0.0 } else { limit };
        for j in 0..n {
            let d23 = limit * j as f64 / (n - 1) as f64;
            out.push(PairModuli::new(d14, d23).expect("grid points lie in the closed region"));
        }
    }
    out
}

/// Uniform `n × n` grid of `(π1, π2)` over the bounding box of the quatrit
/// domain, keeping the points with nonnegative discriminant.
pub fn quatrit_moduli_grid(n: usize) -> Vec<QuatritModuli> {
    assert!(n >= 2, "grid resolution must be at least 2");
    let (lo, hi) = quatrit_eigenvalue_range();
    let at = |k: usize| lo + (hi - lo) * k as f64 / (n - 1) as f64;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (at(i), at(j))))
        .filter_map(|(a, b)| QuatritModuli::new(a, b).ok())
        .collect()
}

/// One row of a pair-moduli scan raster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModuliScanRow {
    pub d14: f64,
    pub d23: f64,
    pub pi1: f64,
    pub pi2: f64,
    pub disc: f64,
    pub in_p4: bool,
}

pub fn pair_moduli_scan(n: usize) -> Vec<ModuliScanRow> {
    pair_moduli_grid(n)
        .into_iter()
        .map(|m| {
            let q = embed_pair_in_quatrit(&m);
            let disc = q.discriminant();
            ModuliScanRow {
                d14: m.d14,
                d23: m.d23,
                pi1: q.pi1,
                pi2: q.pi2,
                disc,
                in_p4: disc >= -tolerance::RECONSTRUCTION,
            }
        })
        .collect()
}

/// Kernel selector: `{"kind": "pair", "moduli": [d14, d23]}` in JSON and
/// `pair:<d14>,<d23>` / `quatrit:<pi1>,<pi2>` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub moduli: [f64; 2],
}

impl KernelSpec {
    pub fn pair(d14: f64, d23: f64) -> Self {
        Self {
            kind: KernelKind::Pair,
            moduli: [d14, d23],
        }
    }

    pub fn quatrit(pi1: f64, pi2: f64) -> Self {
        Self {
            kind: KernelKind::Quatrit,
            moduli: [pi1, pi2],
        }
    }

    pub fn build(&self) -> Result<SwKernel> {
        let [a, b] = self.moduli;
        match self.kind {
            KernelKind::Pair => Ok(build_pair_kernel(&PairModuli::new(a, b)?)),
            KernelKind::Quatrit => Ok(build_quatrit_kernel(&QuatritModuli::new(a, b)?)),
        }
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{}", self.kind, self.moduli[0], self.moduli[1])
    }
}

impl FromStr for KernelSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| {
            format!("expected `pair:<d14>,<d23>` or `quatrit:<pi1>,<pi2>`, got `{s}`")
        })?;
        let kind = match kind.trim() {
            "pair" => KernelKind::Pair,
            "quatrit" => KernelKind::Quatrit,
            other => return Err(format!("unknown kernel kind `{other}`")),
        };
        let (a, b) = rest
            .split_once(',')
            .ok_or_else(|| format!("expected two comma-separated moduli, got `{rest}`"))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad modulus `{x}`: {e}"))
        };
        Ok(Self {
            kind,
            moduli: [parse(a)?, parse(b)?],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn quatrit_examples() {
        let s = quatrit_spectrum(&QuatritModuli::new(1.0, 1.0).unwrap());
        assert!(close(s.disc, 3.0, 1e-15));
        assert!(close(s.plus_root, (3f64.sqrt() - 1.0) / 2.0, 1e-15));
        assert!(close(s.minus_root, -(1.0 + 3f64.sqrt()) / 2.0, 1e-15));
        assert!(
            close(s.spectrum.sum(), 1.0, 1e-12) && close(s.spectrum.sum_of_squares(), 4.0, 1e-12)
        );

        match QuatritModuli::new(2.0, 0.0) {
            Err(Error::OutsideQuatritModuli { disc }) => assert_eq!(disc, -1.0),
            other => panic!("{other:?}"),
        }

        let s = quatrit_spectrum(&QuatritModuli::new(-1.0, 1.0).unwrap());
        assert!(close(s.disc, 3.0, 1e-15));
        assert!(close(s.plus_root, 0.5 + 3f64.sqrt() / 2.0, 1e-15));
        assert!(close(s.minus_root, 0.5 - 3f64.sqrt() / 2.0, 1e-15));
        assert!(
            close(s.spectrum.sum(), 1.0, 1e-12) && close(s.spectrum.sum_of_squares(), 4.0, 1e-12)
        );
    }

    #[test]
    fn pair_spectrum_examples() {
        let m = PairModuli::new(0.0, 0.0).unwrap();
        let raw = pair_spectrum(&m).values();
        let s3 = 3f64.sqrt();
        let expected = [1.0, (s3 - 1.0) / 2.0, 1.0, -(1.0 + s3) / 2.0];
        for (a, b) in raw.iter().zip(expected) {
            assert!(close(*a, b, 1e-15));
        }
        let sorted = pair_spectrum(&m).sorted_descending().values();
        assert!(close(sorted[2], 0.36603, 1e-5) && close(sorted[3], -1.36603, 1e-5));

        let m = PairModuli::new(0.5, 0.0).unwrap();
        let raw = pair_spectrum(&m).values();
        let s7 = 7f64.sqrt();
        let expected = [
            0.75 + s7 / 4.0,
            (1.0 + 2.0 * s3 - s7) / 4.0,
            -0.25 + s7 / 4.0,
            (1.0 - 2.0 * s3 - s7) / 4.0,
        ];
        for (a, b) in raw.iter().zip(expected) {
            assert!(close(*a, b, 1e-15));
        }
        let s = pair_spectrum(&m);
        assert!(close(s.sum(), 1.0, 1e-12) && close(s.sum_of_squares(), 4.0, 1e-12));

        assert!(PairModuli::new(d14_bound(), 0.2).is_err());
    }

    #[test]
    fn pair_moduli_bounds() {
        let edge = PairModuli::new(d14_bound(), 0.0).unwrap();
        assert!(edge.is_boundary());
        assert!(!PairModuli::new(0.3, 0.3).unwrap().is_boundary());
        let err = PairModuli::new(1.2, 0.5).unwrap_err().to_string();
        assert!(err.contains("|D14| = 1.2"), "{err}");
        let limit = d23_bound(1.0);
        let err = PairModuli::new(1.0, 0.6).unwrap_err().to_string();
        assert!(err.contains(&limit.to_string()), "{err}");
        assert!(PairModuli::new(-0.1, 0.0).is_err());
    }

    #[test]
    fn build_pair_kernel_examples() {
        let s3 = 3f64.sqrt();
        let k = build_pair_kernel(&PairModuli::new(0.0, 0.0).unwrap());
        let diag = k.matrix.diagonal();
        let expected = [1.0, (s3 - 1.0) / 2.0, -(1.0 + s3) / 2.0, 1.0];
        for (a, b) in diag.iter().zip(expected) {
            assert!(close(*a, b, 1e-15));
        }

        let m = PairModuli::new(0.5, 0.5).unwrap();
        assert!(close(m.q(), 5f64.sqrt(), 1e-15));
        let d = build_pair_kernel(&m).matrix.diagonal();
        assert!(close(d.iter().sum(), 1.0, 1e-12));
        assert!(close(d.iter().map(|x| x * x).sum(), 3.0, 1e-12));
        assert!(close(
            (d[0] + d[1]).powi(2) + (d[2] + d[3]).powi(2),
            2.0,
            1e-12
        ));
        assert!(close(
            (d[0] + d[2]).powi(2) + (d[1] + d[3]).powi(2),
            2.0,
            1e-12
        ));
    }

    #[test]
    fn kernel_matrix_spectrum_matches_closed_form() {
        for m in pair_moduli_grid(24) {
            let k = build_pair_kernel(&m);
            let numeric = k.matrix.spectrum().values();
            let closed = pair_spectrum(&m).sorted_descending().values();
            for (a, b) in numeric.iter().zip(closed.iter()) {
                assert!(close(*a, *b, 1e-12), "{m:?}: {numeric:?} vs {closed:?}");
            }
        }
    }

    #[test]
    fn validate_kernel_examples() {
        let r = validate_kernel(&build_pair_kernel(&PairModuli::new(0.0, 0.0).unwrap()));
        assert!(
            r.passes
                && r.trace <= 1e-12
                && r.purity <= 1e-12
                && r.reduced_a <= 1e-12
                && r.reduced_b <= 1e-12
        );

        let q = build_quatrit_kernel(&QuatritModuli::new(1.0, 1.0).unwrap());
        let r = validate_kernel(&q);
        assert!(r.passes && !r.composite);
        // tr_B diag(1, 1, 0.366, -1.366) = diag(2, -1): purity 5.
        assert!(close(r.reduced_a, 3.0, 1e-12));
        // tr_A happens to pair (1, 0.366) with (1, -1.366): purity exactly 2.
        assert!(r.reduced_b < 1e-12);

        let mut e = *q.matrix.entries();
        e[0][0].re += 0.01;
        let perturbed = SwKernel::from_matrix(KernelKind::Quatrit, Herm4::new(e).unwrap());
        let r = validate_kernel(&perturbed);
        assert!(close(r.trace, 0.01, 1e-12) && !r.passes);
    }

    #[test]
    fn embedding_examples() {
        let q = embed_pair_in_quatrit(&PairModuli::new(0.0, 0.0).unwrap());
        assert!(close(q.pi1, 1.0, 1e-15) && close(q.pi2, 1.0, 1e-15));
        assert!(close(q.discriminant(), 3.0, 1e-12));

        let m = PairModuli::new(0.0, d23_bound(0.0)).unwrap();
        assert!(m.is_boundary() && m.q() < 1e-7);
        assert!(embed_pair_in_quatrit(&m).discriminant() >= -1e-10);
    }

    #[test]
    fn every_pair_point_embeds_in_quatrit_domain() {
        for m in pair_moduli_grid(100) {
            let q = embed_pair_in_quatrit(&m);
            assert!(q.discriminant() >= -1e-10, "{m:?}");
            assert!(in_pair_image(q.pi1, q.pi2, 1e-9), "{m:?} -> {q:?}");
        }
    }

    #[test]
    fn pair_image_excludes_generic_quatrit_points() {
        // Quatrit spectra are a 2-sphere; pair spectra need an eigenvalue gap of √3.
        assert!(!in_pair_image(2.0, 0.0, 1e-9));
        assert!(!in_pair_image(0.5, 0.5, 1e-9));
        assert!(in_pair_image(1.0, 1.0, 1e-9));
    }

    #[test]
    fn sorted_labels_are_descending() {
        for m in pair_moduli_grid(40) {
            let raw = pair_spectrum(&m).values();
            let sorted = pair_spectrum(&m).sorted_descending().values();
            assert!(sorted.windows(2).all(|w| w[0] >= w[1]));
            if m.d14 > 0.0 && raw.windows(2).all(|w| w[0] >= w[1]) {
                assert_eq!(raw, sorted);
            }
        }
    }

    #[test]
    fn kernel_spec_syntax() {
        assert_eq!(
            "pair:0,0".parse::<KernelSpec>().unwrap(),
            KernelSpec::pair(0.0, 0.0)
        );
        assert_eq!(
            "quatrit: 1.5, -0.25".parse::<KernelSpec>().unwrap(),
            KernelSpec::quatrit(1.5, -0.25)
        );
        assert!("pair:0".parse::<KernelSpec>().is_err());
        assert!("qutrit:0,0".parse::<KernelSpec>().is_err());
        let json: KernelSpec =
            serde_json::from_str(r#"{"kind":"pair","moduli":[0.5,0.25]}"#).unwrap();
        assert_eq!(json, KernelSpec::pair(0.5, 0.25));
        assert_eq!(
            KernelSpec::pair(0.5, 0.25)
                .to_string()
                .parse::<KernelSpec>()
                .unwrap(),
            json
        );
        assert!(KernelSpec::quatrit(2.0, 0.0).build().is_err());
    }
}
