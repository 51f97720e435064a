//! Fixed-size complex matrix helpers used by the Hermitian and unitary code.

use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat<const N: usize> = [[C64; N]; N];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn zeros<const N: usize>() -> Mat<N> {
    [[ZERO; N]; N]
}

pub fn identity<const N: usize>() -> Mat<N> {
    let mut m = zeros();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

pub fn matmul<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut c = zeros();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..N {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

pub fn adjoint<const N: usize>(a: &Mat<N>) -> Mat<N> {
    let mut c = zeros();
    for i in 0..N {
        for j in 0..N {
            c[i][j] = a[j][i].conj();
        }
    }
    c
}

pub fn add<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut c = *a;
    for i in 0..N {
        for j in 0..N {
            c[i][j] += b[i][j];
        }
    }
    c
}

pub fn sub<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut c = *a;
    for i in 0..N {
        for j in 0..N {
            c[i][j] -= b[i][j];
        }
    }
    c
}

pub fn scale<const N: usize>(a: &Mat<N>, s: C64) -> Mat<N> {
    let mut c = *a;
    for row in c.iter_mut() {
        for x in row.iter_mut() {
            *x *= s;
        }
    }
    c
}

pub fn trace<const N: usize>(a: &Mat<N>) -> C64 {
    (0..N).map(|i| a[i][i]).sum()
}

/// `tr(a b)` without forming the product.
pub fn trace_of_product<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> C64 {
    let mut s = ZERO;
    for i in 0..N {
        for k in 0..N {
            s += a[i][k] * b[k][i];
        }
    }
    s
}

pub fn commutator<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    sub(&matmul(a, b), &matmul(b, a))
}

pub fn frobenius<const N: usize>(a: &Mat<N>) -> f64 {
    a.iter()
        .flat_map(|row| row.iter())
        .map(|x| x.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `u a u†`.
pub fn conjugate_by<const N: usize>(u: &Mat<N>, a: &Mat<N>) -> Mat<N> {
    matmul(&matmul(u, a), &adjoint(u))
}

/// Kronecker product of two 2×2 matrices in the `|ab⟩ = 2a + b` ordering.
pub fn kron2(x: &Mat<2>, y: &Mat<2>) -> Mat<4> {
    let mut m = zeros();
    for a in 0..2 {
        for a2 in 0..2 {
            for b in 0..2 {
                for b2 in 0..2 {
                    m[2 * a + b][2 * a2 + b2] = x[a][a2] * y[b][b2];
                }
            }
        }
    }
    m
}

/// `‖u u† − 1‖_F`.
pub fn unitarity_residual<const N: usize>(u: &Mat<N>) -> f64 {
    frobenius(&sub(&matmul(u, &adjoint(u)), &identity()))
}

/// Solves `a x = b` column by column with partial pivoting. Returns `None`
/// when a pivot vanishes.
pub fn solve<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Option<Mat<N>> {
    let mut a = *a;
    let mut x = *b;
    for col in 0..N {
        let pivot = (col..N).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[pivot][col].norm() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        x.swap(col, pivot);
        let inv = ONE / a[col][col];
        for row in col + 1..N {
            let f = a[row][col] * inv;
            if f == ZERO {
                continue;
            }
            for k in col..N {
                let t = a[col][k];
                a[row][k] -= f * t;
            }
            for k in 0..N {
                let t = x[col][k];
                x[row][k] -= f * t;
            }
        }
    }
    for col in (0..N).rev() {
        let inv = ONE / a[col][col];
        for k in 0..N {
            let mut s = x[col][k];
            for j in col + 1..N {
                s -= a[col][j] * x[j][k];
            }
            x[col][k] = s * inv;
        }
    }
    Some(x)
}

/// Cayley retraction `(1 − X/2)⁻¹ (1 + X/2)`, unitary for anti-Hermitian `X`.
pub fn cayley<const N: usize>(x: &Mat<N>) -> Mat<N> {
    let half = scale(x, C64::new(0.5, 0.0));
    let id = identity::<N>();
    solve(&sub(&id, &half), &add(&id, &half)).expect("1 - X/2 is invertible for anti-Hermitian X")
}

/// Gram-Schmidt on the columns; restores unitarity lost to rounding.
pub fn reorthonormalize<const N: usize>(u: &mut Mat<N>) {
    for j in 0..N {
        for k in 0..j {
            let mut dot = ZERO;
            for i in 0..N {
                dot += u[i][k].conj() * u[i][j];
            }
            for i in 0..N {
                let t = u[i][k];
                u[i][j] -= dot * t;
            }
        }
        let norm = (0..N).map(|i| u[i][j].norm_sqr()).sum::<f64>().sqrt();
        for row in u.iter_mut() {
            row[j] /= norm;
        }
    }
}
