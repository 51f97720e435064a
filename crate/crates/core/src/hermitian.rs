//! Fixed-size Hermitian matrices (dimension 2 and 4) with a cyclic complex
//! Jacobi eigensolver, closed-form 2×2 block eigensystems, and the
//! tensor/partial operations of a two-qubit system.
//!
//! Basis ordering is `|ab⟩ ↦ 2a + b`, subsystem `A` being the first qubit.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, C64, ZERO};
use crate::tolerance;

/// A complex Hermitian `N × N` matrix with finite entries.
///
/// The constructor checks hermiticity to [`tolerance::HERMITICITY`] and then
/// stores the exactly Hermitian part, so downstream code can rely on
/// `m[i][j] == conj(m[j][i])` bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hermitian<const N: usize> {
    m: Mat<N>,
}

pub type Herm2 = Hermitian<2>;
pub type Herm4 = Hermitian<4>;

/// One of the two qubits of a `Herm4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Subsystem {
    A,
    B,
}

impl<const N: usize> Hermitian<N> {
    pub fn new(entries: Mat<N>) -> Result<Self> {
        for (i, row) in entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.re.is_finite() || !x.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        for i in 0..N {
            for j in i..N {
                let residual = (entries[i][j] - entries[j][i].conj()).norm();
                if residual > tolerance::HERMITICITY {
                    return Err(Error::NotHermitian {
                        row: i,
                        col: j,
                        residual,
                    });
                }
            }
        }
        Ok(Self::symmetrize(entries))
    }

    /// Builds from entries known to be Hermitian up to rounding; keeps the
    /// Hermitian part.
    pub(crate) fn symmetrize(entries: Mat<N>) -> Self {
        let mut m = entries;
        for i in 0..N {
            m[i][i] = C64::new(entries[i][i].re, 0.0);
            for j in i + 1..N {
                let h = (entries[i][j] + entries[j][i].conj()) * 0.5;
                m[i][j] = h;
                m[j][i] = h.conj();
            }
        }
        Self { m }
    }

    pub fn from_real_diagonal(diag: [f64; N]) -> Self {
        let mut m = linalg::zeros();
        for (i, d) in diag.iter().enumerate() {
            m[i][i] = C64::new(*d, 0.0);
        }
        Self { m }
    }

    pub fn identity() -> Self {
        Self {
            m: linalg::identity(),
        }
    }

    /// `I / N`.
    pub fn maximally_mixed() -> Self {
        Self::from_real_diagonal([1.0 / N as f64; N])
    }

    pub fn entries(&self) -> &Mat<N> {
        &self.m
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.m[row][col]
    }

    pub fn diagonal(&self) -> [f64; N] {
        std::array::from_fn(|i| self.m[i][i].re)
    }

    pub fn trace(&self) -> f64 {
        (0..N).map(|i| self.m[i][i].re).sum()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            m: linalg::scale(&self.m, C64::new(s, 0.0)),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            m: linalg::add(&self.m, &other.m),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        Self {
            m: linalg::sub(&self.m, &other.m),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        linalg::frobenius(&self.m)
    }

    /// `Re tr(self · other)`; the trace of a product of Hermitian matrices is real.
    pub fn trace_product(&self, other: &Self) -> f64 {
        linalg::trace_of_product(&self.m, &other.m).re
    }

    /// `u · self · u†` for a unitary `u`.
    pub fn conjugated_by(&self, u: &Mat<N>) -> Self {
        Self::symmetrize(linalg::conjugate_by(u, &self.m))
    }

    /// Eigenvalues in descending order and the unitary whose columns are the
    /// matching eigenvectors.
    ///
    /// Cyclic Jacobi sweeps: each rotation first removes the phase of the
    /// pivot `a[p][q]` and then applies a real plane rotation that zeroes it.
    /// Every eigenvector is rephased so that its first component above
    /// `1e-12` in magnitude is real and positive.
    pub fn eigh(&self) -> ([f64; N], Mat<N>) {
        let mut a = self.m;
        let mut v = linalg::identity::<N>();
        let scale = linalg::frobenius(&a).max(f64::MIN_POSITIVE);

        for _sweep in 0..64 {
            let off: f64 = (0..N)
                .flat_map(|p| (p + 1..N).map(move |q| (p, q)))
                .map(|(p, q)| a[p][q].norm_sqr())
                .sum();
            if off.sqrt() <= 1e-15 * scale {
                break;
            }
            for p in 0..N {
                for q in p + 1..N {
                    let apq = a[p][q];
                    let b = apq.norm();
                    if b <= 1e-300 {
                        continue;
                    }
                    // a[p][q] = b e^{-iθ}; rotating column q by e^{iθ} makes it real.
                    let phase = apq.conj() / b;
                    let app = a[p][p].re;
                    let aqq = a[q][q].re;
                    let theta = (aqq - app) / (2.0 * b);
                    let t = if theta == 0.0 {
                        1.0
                    } else {
                        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    // G = [[c, s], [-s e^{iθ}, c e^{iθ}]] acting on (p, q).
                    let g_pp = C64::new(c, 0.0);
                    let g_pq = C64::new(s, 0.0);
                    let g_qp = -phase * s;
                    let g_qq = phase * c;

                    for row in a.iter_mut() {
                        let (xp, xq) = (row[p], row[q]);
                        row[p] = xp * g_pp + xq * g_qp;
                        row[q] = xp * g_pq + xq * g_qq;
                    }
                    for k in 0..N {
                        let (xp, xq) = (a[p][k], a[q][k]);
                        a[p][k] = g_pp.conj() * xp + g_qp.conj() * xq;
                        a[q][k] = g_pq.conj() * xp + g_qq.conj() * xq;
                    }
                    a[p][q] = ZERO;
                    a[q][p] = ZERO;
                    a[p][p].im = 0.0;
                    a[q][q].im = 0.0;
                    for row in v.iter_mut() {
                        let (xp, xq) = (row[p], row[q]);
                        row[p] = xp * g_pp + xq * g_qp;
                        row[q] = xp * g_pq + xq * g_qq;
                    }
                }
            }
        }

        let mut order: [usize; N] = std::array::from_fn(|i| i);
        order.sort_by(|&i, &j| a[j][j].re.total_cmp(&a[i][i].re));
        let values = std::array::from_fn(|k| a[order[k]][order[k]].re);
        let mut vectors = linalg::zeros::<N>();
        for (col, &src) in order.iter().enumerate() {
            let lead = (0..N).map(|i| v[i][src]).find(|x| x.norm() > 1e-12);
            let rephase = lead.map_or(linalg::ONE, |x| x.conj() / x.norm());
            for row in 0..N {
                vectors[row][col] = v[row][src] * rephase;
            }
        }
        (values, vectors)
    }

    pub fn eigenvalues(&self) -> [f64; N] {
        self.eigh().0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[N - 1]
    }
}

impl Herm2 {
    pub fn pauli_x() -> Self {
        Self::symmetrize([[ZERO, linalg::ONE], [linalg::ONE, ZERO]])
    }

    pub fn pauli_y() -> Self {
        Self::symmetrize([[ZERO, -linalg::I], [linalg::I, ZERO]])
    }

    pub fn pauli_z() -> Self {
        Self::from_real_diagonal([1.0, -1.0])
    }
}

impl Herm4 {
    /// Spectrum in descending order together with the eigenvector unitary.
    pub fn eigh_4(&self) -> (Spectrum4, Mat<4>) {
        let (values, vectors) = self.eigh();
        (Spectrum4::descending_unchecked(values), vectors)
    }

    pub fn spectrum(&self) -> Spectrum4 {
        self.eigh_4().0
    }

    /// Partial transpose on the given qubit. Only permutes and conjugates
    /// entries, so it is an exact involution.
    pub fn partial_transpose(&self, on: Subsystem) -> Self {
        let mut m = linalg::zeros::<4>();
        for a in 0..2 {
            for b in 0..2 {
                for a2 in 0..2 {
                    for b2 in 0..2 {
                        let (r, c) = match on {
                            Subsystem::B => (2 * a + b2, 2 * a2 + b),
                            Subsystem::A => (2 * a2 + b, 2 * a + b2),
                        };
                        m[2 * a + b][2 * a2 + b2] = self.m[r][c];
                    }
                }
            }
        }
        Self { m }
    }

    /// Reduced matrix of the kept qubit.
    pub fn partial_trace(&self, keep: Subsystem) -> Herm2 {
        let mut m = linalg::zeros::<2>();
        for x in 0..2 {
            for y in 0..2 {
                m[x][y] = (0..2)
                    .map(|k| match keep {
                        Subsystem::A => self.m[2 * x + k][2 * y + k],
                        Subsystem::B => self.m[2 * k + x][2 * k + y],
                    })
                    .sum();
            }
        }
        Herm2::symmetrize(m)
    }

    /// Entry residual of the ordinary density-matrix conditions: unit trace
    /// and positive semidefiniteness.
    pub fn validate_density(&self) -> Result<()> {
        let trace = self.trace();
        if (trace - 1.0).abs() > tolerance::SIMPLEX {
            return Err(Error::InvalidDensity(format!(
                "trace is {trace} (residual {:e})",
                trace - 1.0
            )));
        }
        let min = self.min_eigenvalue();
        if min < -tolerance::SIMPLEX {
            return Err(Error::InvalidDensity(format!(
                "minimum eigenvalue {min:e} is negative"
            )));
        }
        Ok(())
    }
}

pub fn tensor_product(x: &Herm2, y: &Herm2) -> Herm4 {
    Herm4::symmetrize(linalg::kron2(x.entries(), y.entries()))
}

/// Hilbert-Schmidt (Frobenius) distance `‖x − y‖_F`.
pub fn hs_distance<const N: usize>(x: &Hermitian<N>, y: &Hermitian<N>) -> f64 {
    x.minus(y).frobenius_norm()
}

impl<const N: usize> Serialize for Hermitian<N> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut rows = serializer.serialize_seq(Some(N))?;
        for row in &self.m {
            rows.serialize_element(&row.to_vec())?;
        }
        rows.end()
    }
}

/// Ordering tag of a [`Spectrum4`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Descending,
    Ascending,
    Unsorted,
}

/// Four real eigenvalues with their ordering.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Spectrum4 {
    values: [f64; 4],
    order: Order,
}

impl Spectrum4 {
    pub fn unsorted(values: [f64; 4]) -> Self {
        Self {
            values,
            order: Order::Unsorted,
        }
    }

    pub fn descending(mut values: [f64; 4]) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self {
            values,
            order: Order::Descending,
        }
    }

    fn descending_unchecked(values: [f64; 4]) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] >= w[1]));
        Self {
            values,
            order: Order::Descending,
        }
    }

    pub fn values(&self) -> [f64; 4] {
        self.values
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn sorted_descending(&self) -> Self {
        Self::descending(self.values)
    }

    pub fn sorted_ascending(&self) -> Self {
        let mut values = self.values;
        values.sort_by(f64::total_cmp);
        Self {
            values,
            order: Order::Ascending,
        }
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// Closed-form eigensystem of `[[a, c], [conj(c), d]]`.
///
/// The block equals `R diag(plus, minus) R†` with
/// `a = m + h cos θ`, `d = m − h cos θ`, `c = h sin θ e^{iψ}`, where
/// `m = (plus + minus)/2`, `h = (plus − minus)/2`, `θ = mixing_angle ∈ [0, π]`
/// and `ψ = phase ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BlockEigen {
    pub plus: f64,
    pub minus: f64,
    pub mixing_angle: f64,
    pub phase: f64,
}

pub fn block_eig_2x2(a: f64, d: f64, c: Complex64) -> BlockEigen {
    if c.norm() == 0.0 {
        // Already diagonal: return the entries themselves, exactly.
        let (plus, minus, mixing_angle) = if a >= d { (a, d, 0.0) } else { (d, a, PI) };
        return BlockEigen {
            plus,
            minus,
            mixing_angle,
            phase: 0.0,
        };
    }
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + c.norm_sqr()).sqrt();
    let mixing_angle = (2.0 * c.norm()).atan2(a - d);
    let phase = wrap_angle(c.arg());
    BlockEigen {
        plus: mean + half_gap,
        minus: mean - half_gap,
        mixing_angle,
        phase,
    }
}

/// Maps an angle into `[0, 2π)`.
pub(crate) fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y >= TAU {
        0.0
    } else {
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bell() -> Herm4 {
        let h = C64::new(0.5, 0.0);
        let mut m = linalg::zeros::<4>();
        m[0][0] = h;
        m[0][3] = h;
        m[3][0] = h;
        m[3][3] = h;
        Herm4::new(m).unwrap()
    }

    fn random_hermitian(rng: &mut impl Rng) -> Herm4 {
        let mut m = linalg::zeros::<4>();
        for i in 0..4 {
            m[i][i] = C64::new(rng.random_range(-1.0..1.0), 0.0);
            for j in i + 1..4 {
                let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                m[i][j] = z;
                m[j][i] = z.conj();
            }
        }
        Herm4::new(m).unwrap()
    }

    fn reconstruction_residual(m: &Herm4) -> (f64, f64) {
        let (spec, v) = m.eigh_4();
        let d = Herm4::from_real_diagonal(spec.values());
        let rebuilt = linalg::conjugate_by(&v, d.entries());
        (
            linalg::frobenius(&linalg::sub(&rebuilt, m.entries())),
            linalg::unitarity_residual(&v),
        )
    }

    #[test]
    fn rejects_non_hermitian_naming_the_pair() {
        let mut m = linalg::zeros::<4>();
        m[1][2] = C64::new(0.3, 0.0);
        m[2][1] = C64::new(0.2, 0.0);
        match Herm4::new(m) {
            Err(Error::NotHermitian { row: 1, col: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let mut m = linalg::zeros::<2>();
        m[0][0] = C64::new(0.0, 1.0);
        assert!(matches!(
            Herm2::new(m),
            Err(Error::NotHermitian { row: 0, col: 0, .. })
        ));
        m[0][0] = C64::new(f64::NAN, 0.0);
        assert!(matches!(Herm2::new(m), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn eigh_of_diagonal_is_identity() {
        let m = Herm4::from_real_diagonal([1.0, 0.0, 0.0, 0.0]);
        let (spec, v) = m.eigh_4();
        assert_eq!(spec.values(), [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(v, linalg::identity::<4>());
    }

    #[test]
    fn eigh_of_bell_projector() {
        let b = bell();
        assert!((b.trace() - 1.0).abs() < 1e-15);
        let sq = linalg::matmul(b.entries(), b.entries());
        assert!(linalg::frobenius(&linalg::sub(&sq, b.entries())) < 1e-15);
        let spec = b.spectrum().values();
        for (x, y) in spec.iter().zip([1.0, 0.0, 0.0, 0.0]) {
            assert!((x - y).abs() < 1e-14, "{spec:?}");
        }
    }

    #[test]
    fn eigh_reconstructs_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let m = random_hermitian(&mut rng);
            let (rec, uni) = reconstruction_residual(&m);
            assert!(rec <= tolerance::RECONSTRUCTION, "reconstruction {rec}");
            assert!(uni <= tolerance::RECONSTRUCTION, "unitarity {uni}");
            let spec = m.spectrum().values();
            assert!(spec.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn eigh_handles_degenerate_spectra() {
        // Rotate diag(0.5, 0.5, 0, 0) by a random unitary.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_hermitian(&mut rng);
        let (_, u) = x.eigh_4();
        let m = Herm4::from_real_diagonal([0.5, 0.5, 0.0, 0.0]).conjugated_by(&u);
        let (rec, uni) = reconstruction_residual(&m);
        assert!(rec < 1e-12 && uni < 1e-12);
        let spec = m.spectrum().values();
        assert!((spec[0] - 0.5).abs() < 1e-13 && (spec[3]).abs() < 1e-13);
        // Deterministic output on identical input.
        assert_eq!(m.eigh_4(), m.eigh_4());
    }

    #[test]
    fn eigenvectors_have_positive_leading_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_hermitian(&mut rng);
        let (_, v) = m.eigh_4();
        for col in 0..4 {
            let lead = (0..4)
                .map(|i| v[i][col])
                .find(|x| x.norm() > 1e-12)
                .unwrap();
            assert!(lead.im.abs() < 1e-15 && lead.re > 0.0);
        }
    }

    #[test]
    fn block_eig_examples() {
        let e = block_eig_2x2(0.5, 0.5, C64::new(0.5, 0.0));
        assert!((e.plus - 1.0).abs() < 1e-15 && e.minus.abs() < 1e-15);
        assert!((e.mixing_angle - PI / 2.0).abs() < 1e-15);

        let e = block_eig_2x2(0.7, 0.3, ZERO);
        assert_eq!((e.plus, e.minus, e.mixing_angle), (0.7, 0.3, 0.0));

        let e = block_eig_2x2(0.25, 0.25, C64::new(0.0, 0.1));
        assert!((e.plus - 0.35).abs() < 1e-15 && (e.minus - 0.15).abs() < 1e-15);
        assert!((e.mixing_angle - PI / 2.0).abs() < 1e-15);
        assert!((e.phase - PI / 2.0).abs() < 1e-15);

        let e = block_eig_2x2(0.4, 0.4, ZERO);
        assert_eq!(e.mixing_angle, 0.0);
    }

    #[test]
    fn block_eig_agrees_with_eigh_on_embedded_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2_000 {
            let a: f64 = rng.random_range(-1.0..1.0);
            let d: f64 = rng.random_range(-1.0..1.0);
            let c = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let e = block_eig_2x2(a, d, c);
            let mut m = linalg::zeros::<4>();
            m[0][0] = C64::new(a, 0.0);
            m[3][3] = C64::new(d, 0.0);
            m[0][3] = c;
            m[3][0] = c.conj();
            // Push the empty block far below so the first two eigenvalues are the block's.
            m[1][1] = C64::new(-10.0, 0.0);
            m[2][2] = C64::new(-10.0, 0.0);
            let spec = Herm4::new(m).unwrap().spectrum().values();
            assert!((spec[0] - e.plus).abs() < 1e-12);
            assert!((spec[1] - e.minus).abs() < 1e-12);
            // The angle parameterization reproduces the block.
            let mean = 0.5 * (e.plus + e.minus);
            let h = 0.5 * (e.plus - e.minus);
            assert!((mean + h * e.mixing_angle.cos() - a).abs() < 1e-12);
            let c2 = Complex64::from_polar(h * e.mixing_angle.sin(), e.phase);
            assert!((c2 - c).norm() < 1e-12);
        }
    }

    #[test]
    fn partial_transpose_examples() {
        let pt = bell().partial_transpose(Subsystem::B);
        let spec = pt.spectrum().values();
        for (x, y) in spec.iter().zip([0.5, 0.5, 0.5, -0.5]) {
            assert!((x - y).abs() < 1e-14);
        }
        let mm = Herm4::maximally_mixed();
        assert_eq!(mm.partial_transpose(Subsystem::A), mm);
        assert_eq!(mm.partial_transpose(Subsystem::B), mm);
    }

    #[test]
    fn partial_transpose_of_products_keeps_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let x = random_hermitian(&mut rng).partial_trace(Subsystem::A);
            let y = random_hermitian(&mut rng).partial_trace(Subsystem::B);
            let p = tensor_product(&x, &y);
            let before = p.spectrum().values();
            let after = p.partial_transpose(Subsystem::B).spectrum().values();
            for (a, b) in before.iter().zip(after.iter()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn partial_trace_examples() {
        assert_eq!(
            Herm4::identity().partial_trace(Subsystem::A),
            Herm2::from_real_diagonal([2.0, 2.0])
        );
        let r = bell().partial_trace(Subsystem::A);
        assert_eq!(r, Herm2::from_real_diagonal([0.5, 0.5]));
        assert!((r.trace() - 1.0).abs() < 1e-15);

        let s = 1.0 / 2f64.sqrt();
        let x = Herm2::from_real_diagonal([s, -s]);
        let y = Herm2::from_real_diagonal([2.0 * s, 0.5]);
        let p = tensor_product(&x, &y);
        assert!(hs_distance(&p.partial_trace(Subsystem::A), &x.scaled(y.trace())) < 1e-12);
        assert!(hs_distance(&p.partial_trace(Subsystem::B), &y.scaled(x.trace())) < 1e-12);
    }

    #[test]
    fn tensor_product_examples() {
        assert_eq!(
            tensor_product(&Herm2::identity(), &Herm2::identity()),
            Herm4::identity()
        );
        let e0 = Herm2::from_real_diagonal([1.0, 0.0]);
        assert_eq!(
            tensor_product(&e0, &e0),
            Herm4::from_real_diagonal([1.0, 0.0, 0.0, 0.0])
        );

        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let x = random_hermitian(&mut rng).partial_trace(Subsystem::A);
        let y = random_hermitian(&mut rng).partial_trace(Subsystem::B);
        let (ex, ey) = (x.eigenvalues(), y.eigenvalues());
        let mut expected: Vec<f64> = ex
            .iter()
            .flat_map(|a| ey.iter().map(move |b| a * b))
            .collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        let got = tensor_product(&x, &y).spectrum().values();
        for (a, b) in got.iter().zip(expected.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn hs_distance_examples() {
        let mm = Herm4::maximally_mixed();
        assert_eq!(hs_distance(&mm, &mm), 0.0);
        let pure = Herm4::from_real_diagonal([1.0, 0.0, 0.0, 0.0]);
        let brute = (0.75f64.powi(2) + 3.0 * 0.25f64.powi(2)).sqrt();
        assert!((hs_distance(&pure, &mm) - brute).abs() < 1e-15);
        assert!((brute - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let half = Herm4::from_real_diagonal([0.5, 0.5, 0.0, 0.0]);
        assert!((hs_distance(&half, &mm) - 0.5).abs() < 1e-15);
        assert_eq!(hs_distance(&half, &mm), hs_distance(&mm, &half));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_herm4() -> impl Strategy<Value = Herm4> {
            proptest::collection::vec(-1.0f64..1.0, 16).prop_map(|v| {
                let mut m = linalg::zeros::<4>();
                let mut k = 0;
                for i in 0..4 {
                    m[i][i] = C64::new(v[k], 0.0);
                    k += 1;
                    for j in i + 1..4 {
                        m[i][j] = C64::new(v[k], v[k + 1]);
                        m[j][i] = m[i][j].conj();
                        k += 2;
                    }
                }
                Herm4::new(m).unwrap()
            })
        }

        proptest! {
            #[test]
            fn partial_transpose_is_exact_involution(m in arb_herm4()) {
                for s in [Subsystem::A, Subsystem::B] {
                    let pt = m.partial_transpose(s);
                    prop_assert_eq!(pt.partial_transpose(s), m);
                    prop_assert_eq!(pt.trace(), m.trace());
                    let magnitudes = |h: &Herm4| {
                        let mut v: Vec<f64> = h.entries().iter().flatten().map(|z| z.norm()).collect();
                        v.sort_by(f64::total_cmp);
                        v
                    };
                    prop_assert_eq!(magnitudes(&pt), magnitudes(&m));
                }
            }

            #[test]
            fn partial_trace_preserves_trace(m in arb_herm4()) {
                for s in [Subsystem::A, Subsystem::B] {
                    prop_assert!((m.partial_trace(s).trace() - m.trace()).abs() < 1e-14);
                }
            }
        }
    }
}
