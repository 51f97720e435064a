//! Multistart Riemannian gradient descent of `tr(ρ U Δ U†)` over a unitary
//! orbit.
//!
//! For a generator `X` (anti-Hermitian) the directional derivative at `U` is
//! `d/dt tr(ρ e^{tX} M e^{−tX}) = tr(X [M, ρ])` with `M = U Δ U†`. The gradient
//! is expanded in an orthonormal generator basis, steps are retracted with the
//! Cayley transform and accepted under an Armijo condition.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::phase::{halton, PhasePoint, PhasePointFull, PhasePointLU};
use crate::error::{Error, Result};
use crate::hermitian::Herm4;
use crate::kernel::{KernelKind, SwKernel};
use crate::linalg::{self, Mat, C64, I, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    /// `SU(2) ⊗ SU(2)`, the phase space of a qubit pair.
    Lu,
    /// `SU(4)`.
    Full,
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Group::Lu => "lu",
            Group::Full => "full",
        })
    }
}

impl std::str::FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lu" => Ok(Group::Lu),
            "full" => Ok(Group::Full),
            other => Err(Error::OutOfRange(format!(
                "unknown group `{other}` (expected lu or full)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitOptions {
    pub group: Group,
    pub restarts: usize,
    /// Iteration budget per restart.
    pub budget: usize,
    /// Stop once the gradient norm falls below this.
    pub grad_tol: f64,
    /// Offset into the low-discrepancy start sequence.
    pub start_offset: u64,
}

impl OrbitOptions {
    pub fn new(group: Group, restarts: usize, budget: usize) -> Self {
        Self {
            group,
            restarts,
            budget,
            grad_tol: 1e-7,
            start_offset: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitMinimum {
    pub min_value: f64,
    /// Whether the winning restart reached the gradient tolerance.
    pub converged: bool,
    pub restarts_used: usize,
    pub gradient_norm: f64,
    /// Iterations spent by the winning restart.
    pub iterations: usize,
    pub argmin: PhasePoint,
}

/// Shorthand for [`min_over_orbit_with`] with default tolerances.
pub fn min_over_orbit(
    rho: &Herm4,
    kernel: &SwKernel,
    group: Group,
    restarts: usize,
    budget: usize,
) -> Result<OrbitMinimum> {
    min_over_orbit_with(rho, kernel, &OrbitOptions::new(group, restarts, budget))
}

pub fn min_over_orbit_with(
    rho: &Herm4,
    kernel: &SwKernel,
    opts: &OrbitOptions,
) -> Result<OrbitMinimum> {
    if opts.restarts == 0 {
        return Err(Error::OutOfRange("restarts must be at least 1".into()));
    }
    if opts.group == Group::Lu && kernel.kind == KernelKind::Quatrit {
        return Err(Error::KindMismatch(
            "the local-unitary orbit requires a pair kernel".into(),
        ));
    }
    let runs: Vec<Run> = (0..opts.restarts)
        .into_par_iter()
        .map(|k| descend(rho, &kernel.matrix, opts, k as u64 + 1 + opts.start_offset))
        .collect();
    // Lowest value wins; ties go to the earliest restart.
    let best = runs
        .into_iter()
        .reduce(|a, b| if b.value < a.value { b } else { a })
        .expect("at least one restart");
    let argmin = match best.state {
        Frame::Lu(a, b) => PhasePoint::Lu(PhasePointLU::from_factors(&a, &b)),
        Frame::Full(u) => PhasePoint::Full(PhasePointFull::from_unitary(&u)),
    };
    Ok(OrbitMinimum {
        min_value: best.value,
        converged: best.converged,
        restarts_used: opts.restarts,
        gradient_norm: best.gradient_norm,
        iterations: best.iterations,
        argmin,
    })
}

#[derive(Clone, Copy)]
enum Frame {
    Lu(Mat<2>, Mat<2>),
    Full(Mat<4>),
}

impl Frame {
    fn unitary(&self) -> Mat<4> {
        match self {
            Frame::Lu(a, b) => linalg::kron2(a, b),
            Frame::Full(u) => *u,
        }
    }

    /// Moves along `−Σ g_k X_k` for step `t`.
    fn step(&self, g: &[f64], t: f64) -> Frame {
        match self {
            Frame::Lu(a, b) => {
                let pa = su2_generator(&g[..3], -t);
                let pb = su2_generator(&g[3..], -t);
                Frame::Lu(
                    linalg::matmul(&linalg::cayley(&pa), a),
                    linalg::matmul(&linalg::cayley(&pb), b),
                )
            }
            Frame::Full(u) => {
                let mut x = linalg::zeros::<4>();
                for (gk, xk) in g.iter().zip(full_basis()) {
                    x = linalg::add(&x, &linalg::scale(xk, C64::new(-t * gk, 0.0)));
                }
                Frame::Full(linalg::matmul(&linalg::cayley(&x), u))
            }
        }
    }

    fn reorthonormalize(&mut self) {
        match self {
            Frame::Lu(a, b) => {
                linalg::reorthonormalize(a);
                linalg::reorthonormalize(b);
            }
            Frame::Full(u) => linalg::reorthonormalize(u),
        }
    }
}

fn pauli() -> [Mat<2>; 3] {
    [
        [[ZERO, ONE], [ONE, ZERO]],
        [[ZERO, -I], [I, ZERO]],
        [[ONE, ZERO], [ZERO, -ONE]],
    ]
}

/// `s Σ_j c_j iσ_j / 2`, the 2×2 factor of `s Σ_j c_j (iσ_j ⊗ I)/2`.
fn su2_generator(c: &[f64], s: f64) -> Mat<2> {
    let mut x = linalg::zeros::<2>();
    for (cj, sj) in c.iter().zip(pauli()) {
        x = linalg::add(&x, &linalg::scale(&sj, C64::new(0.0, 0.5 * s * cj)));
    }
    x
}

/// Orthonormal basis `iσ_j ⊗ I / 2`, `I ⊗ iσ_j / 2` of the local algebra.
fn lu_basis() -> &'static [Mat<4>; 6] {
    static BASIS: OnceLock<[Mat<4>; 6]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let id = linalg::identity::<2>();
        let half_i = C64::new(0.0, 0.5);
        let p = pauli();
        std::array::from_fn(|k| {
            let m = if k < 3 {
                linalg::kron2(&p[k], &id)
            } else {
                linalg::kron2(&id, &p[k - 3])
            };
            linalg::scale(&m, half_i)
        })
    })
}

/// Orthonormal basis `iλ_k / √2` of `su(4)` from the generalized Gell-Mann
/// matrices.
fn full_basis() -> &'static [Mat<4>; 15] {
    static BASIS: OnceLock<[Mat<4>; 15]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let mut out = Vec::with_capacity(15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for j in 0..4 {
            for k in j + 1..4 {
                let mut sym = linalg::zeros::<4>();
                sym[j][k] = C64::new(0.0, s);
                sym[k][j] = C64::new(0.0, s);
                out.push(sym);
                let mut anti = linalg::zeros::<4>();
                anti[j][k] = C64::new(s, 0.0);
                anti[k][j] = C64::new(-s, 0.0);
                out.push(anti);
            }
        }
        for l in 1..4 {
            let norm = (2.0 / (l * (l + 1)) as f64).sqrt() * s;
            let mut d = linalg::zeros::<4>();
            for (j, row) in d.iter_mut().enumerate().take(l) {
                row[j] = C64::new(0.0, norm);
            }
            d[l][l] = C64::new(0.0, -(l as f64) * norm);
            out.push(d);
        }
        out.try_into().expect("fifteen generators")
    })
}

struct Run {
    value: f64,
    converged: bool,
    gradient_norm: f64,
    iterations: usize,
    state: Frame,
}

struct Objective<'a> {
    rho: &'a Mat<4>,
    delta: &'a Mat<4>,
}

impl Objective<'_> {
    fn value(&self, frame: &Frame) -> (f64, Mat<4>) {
        let m = linalg::conjugate_by(&frame.unitary(), self.delta);
        (linalg::trace_of_product(self.rho, &m).re, m)
    }

    /// Components `tr(X_k [M, ρ])` in the group's generator basis.
    fn gradient(&self, m: &Mat<4>, group: Group) -> Vec<f64> {
        let c = linalg::commutator(m, self.rho);
        let basis: &[Mat<4>] = match group {
            Group::Lu => lu_basis(),
            Group::Full => full_basis(),
        };
        basis
            .iter()
            .map(|x| linalg::trace_of_product(x, &c).re)
            .collect()
    }
}

const ARMIJO: f64 = 1e-4;
const MAX_STEP: f64 = 8.0;
const MIN_STEP: f64 = 1e-14;

fn start_frame(group: Group, index: u64) -> Frame {
    match group {
        Group::Lu => {
            let (a, b) = PhasePointLU::from_unit_cube(&halton(index, 6)).factors();
            Frame::Lu(a, b)
        }
        Group::Full => Frame::Full(PhasePointFull::from_unit_cube(&halton(index, 15)).unitary()),
    }
}

fn descend(rho: &Herm4, delta: &Herm4, opts: &OrbitOptions, start: u64) -> Run {
    let obj = Objective {
        rho: rho.entries(),
        delta: delta.entries(),
    };
    let mut frame = start_frame(opts.group, start);
    let (mut value, mut m) = obj.value(&frame);
    let mut step: f64 = 1.0;
    let mut gradient_norm = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < opts.budget {
        let g = obj.gradient(&m, opts.group);
        let g2: f64 = g.iter().map(|x| x * x).sum();
        gradient_norm = g2.sqrt();
        if gradient_norm <= opts.grad_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let mut t = (2.0 * step).min(MAX_STEP);
        let accepted = loop {
            let trial = frame.step(&g, t);
            let (v, mt) = obj.value(&trial);
            if v <= value - ARMIJO * t * g2 {
                break Some((trial, v, mt));
            }
            t *= 0.5;
            if t < MIN_STEP {
                break None;
            }
        };
        match accepted {
            Some((trial, v, mt)) => {
                frame = trial;
                value = v;
                m = mt;
                step = t;
            }
            // No representable decrease left: the value is as good as
            // rounding allows.
            None => {
                converged = gradient_norm <= opts.grad_tol;
                break;
            }
        }
        if iterations % 64 == 0 {
            frame.reorthonormalize();
            (value, m) = obj.value(&frame);
        }
    }
    Run {
        value,
        converged,
        gradient_norm,
        iterations,
        state: frame,
    }
}
