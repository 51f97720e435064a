//! Random states, joint classification and Monte Carlo estimates.

mod figures;
mod radius;

pub use figures::{figure_grids, Cell, Figure, Raster, REFERENCE_KERNEL};
pub use radius::{estimate_ball_radius, RadiusEstimate, RadiusOptions, RadiusProperty, Scaling};

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::Herm4;
use crate::kernel::{KernelKind, SwKernel};
use crate::linalg::{self, C64};
use crate::rng::{self, StreamRng};
use crate::separability::{absolutely_separable_sorted, ppt_separable};
use crate::tolerance::Tolerances;
use crate::wigner::{self, Group, OrbitMinimum, OrbitOptions, WignerBounds};
use crate::xstate::XParams;

/// Hilbert-Schmidt random state `G G† / tr(G G†)` from a complex Ginibre
/// matrix `G`.
pub fn hs_state<R: Rng + ?Sized>(rng: &mut R) -> Herm4 {
    let g: linalg::Mat<4> =
        std::array::from_fn(|_| std::array::from_fn(|_| rng::complex_normal(rng)));
    let m = linalg::matmul(&g, &linalg::adjoint(&g));
    let t = linalg::trace(&m).re;
    Herm4::new(linalg::scale(&m, C64::new(1.0 / t, 0.0))).expect("G G† is Hermitian")
}

pub fn sample_hs_state(seed: u64) -> Herm4 {
    hs_state(&mut rng::stream(seed, 0))
}

/// Random X-state parameters: spectrum uniform on the simplex
/// (normalized exponential spacings), each block pair sorted, `cos φ`
/// uniform on `[−1, 1]` and `ψ` uniform on `[0, 2π)`.
pub fn x_params<R: Rng + ?Sized>(rng: &mut R) -> XParams {
    let e: [f64; 4] = std::array::from_fn(|_| rng::exponential(rng));
    let s: f64 = e.iter().sum();
    let mut r = e.map(|x| x / s);
    if r[0] < r[1] {
        r.swap(0, 1);
    }
    if r[2] < r[3] {
        r.swap(2, 3);
    }
    let phi1 = (1.0 - 2.0 * rng.random::<f64>()).acos();
    let phi2 = (1.0 - 2.0 * rng.random::<f64>()).acos();
    let psi1 = TAU * rng.random::<f64>();
    let psi2 = TAU * rng.random::<f64>();
    XParams {
        r,
        phi1,
        phi2,
        psi1,
        psi2,
    }
}

pub fn sample_x_state(seed: u64) -> XParams {
    x_params(&mut rng::stream(seed, 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    Hs,
    Xstate,
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ensemble::Hs => "hs",
            Ensemble::Xstate => "xstate",
        })
    }
}

impl FromStr for Ensemble {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "hs" => Ok(Ensemble::Hs),
            "xstate" | "x" => Ok(Ensemble::Xstate),
            other => Err(format!(
                "unknown ensemble `{other}` (expected hs or xstate)"
            )),
        }
    }
}

impl Ensemble {
    pub fn draw<R: Rng + ?Sized>(self, rng: &mut R) -> Herm4 {
        match self {
            Ensemble::Hs => hs_state(rng),
            Ensemble::Xstate => x_params(rng).to_state().to_matrix(),
        }
    }
}

/// Which test decides Wigner positivity in `doubly_classical`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CPlusPredicate {
    /// Spectral polytope (full-orbit minimum).
    Polytope,
    /// Numerical minimum over the local-unitary orbit.
    LuOrbit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyConfig {
    pub orbit_check: bool,
    pub orbit_restarts: usize,
    pub orbit_budget: usize,
    pub c_plus: CPlusPredicate,
    pub tolerances: Tolerances,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            orbit_check: false,
            orbit_restarts: 8,
            orbit_budget: 2000,
            c_plus: CPlusPredicate::Polytope,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub separable: bool,
    /// The block inequalities evaluated on the sorted spectrum; see
    /// [`absolutely_separable_sorted`] for why this does not imply `separable`.
    pub absolutely_separable: bool,
    pub polytope_positive: bool,
    /// `None` when the orbit check is off or the kernel is not a pair kernel.
    pub lu_orbit_positive: Option<bool>,
    pub doubly_classical: bool,
}

/// A classification together with the numbers that decided it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Assessment {
    pub classification: Classification,
    pub ppt_margin: f64,
    pub wigner_bounds: WignerBounds,
    pub lu_orbit: Option<OrbitMinimum>,
}

pub fn assess(rho: &Herm4, kernel: &SwKernel, config: &ClassifyConfig) -> Result<Assessment> {
    let tol = &config.tolerances;
    let ppt = ppt_separable(rho)?;
    let separable = ppt.margin >= -tol.boundary;
    let spectrum = rho.spectrum();
    let absolutely_separable = absolutely_separable_sorted(&spectrum);
    let wigner_bounds = wigner::wf_bounds(&spectrum, &kernel.spectrum);
    let polytope_positive = wigner_bounds.lower >= -tol.boundary;

    let wants_orbit = config.orbit_check || config.c_plus == CPlusPredicate::LuOrbit;
    let lu_orbit = match (wants_orbit, kernel.kind) {
        (true, KernelKind::Pair) => {
            let mut opts = OrbitOptions::new(Group::Lu, config.orbit_restarts, config.orbit_budget);
            opts.grad_tol = 1e-7;
            Some(wigner::min_over_orbit_with(rho, kernel, &opts)?)
        }
        (true, KernelKind::Quatrit) if config.c_plus == CPlusPredicate::LuOrbit => {
            return Err(Error::KindMismatch(
                "the local-unitary predicate requires a pair kernel".into(),
            ))
        }
        _ => None,
    };
    let lu_orbit_positive = lu_orbit.map(|m| m.min_value >= -tol.orbit);
    let positive = match config.c_plus {
        CPlusPredicate::Polytope => polytope_positive,
        CPlusPredicate::LuOrbit => lu_orbit_positive.unwrap_or(false),
    };
    Ok(Assessment {
        classification: Classification {
            separable,
            absolutely_separable,
            polytope_positive,
            lu_orbit_positive,
            doubly_classical: separable && positive,
        },
        ppt_margin: ppt.margin,
        wigner_bounds,
        lu_orbit,
    })
}

pub fn classify(rho: &Herm4, kernel: &SwKernel, config: &ClassifyConfig) -> Result<Classification> {
    Ok(assess(rho, kernel, config)?.classification)
}

pub fn classify_x(
    p: &XParams,
    kernel: &SwKernel,
    config: &ClassifyConfig,
) -> Result<Classification> {
    p.validate()?;
    classify(&p.to_state().to_matrix(), kernel, config)
}

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// Count with its Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlagEstimate {
    pub count: u64,
    pub fraction: f64,
    pub lower: f64,
    pub upper: f64,
    pub halfwidth: f64,
}

impl FlagEstimate {
    pub fn wilson(count: u64, n: u64) -> Self {
        let nf = n as f64;
        let p = count as f64 / nf;
        let z2 = Z95 * Z95;
        let denom = 1.0 + z2 / nf;
        let center = (p + z2 / (2.0 * nf)) / denom;
        let halfwidth = Z95 / denom * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
        Self {
            count,
            fraction: p,
            // At p = 0 or 1 the interval edge equals p up to rounding.
            lower: (center - halfwidth).clamp(0.0, p),
            upper: (center + halfwidth).clamp(p, 1.0),
            halfwidth,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fractions {
    pub separable: FlagEstimate,
    pub absolutely_separable: FlagEstimate,
    pub polytope_positive: FlagEstimate,
    pub lu_orbit_positive: Option<FlagEstimate>,
    pub doubly_classical: FlagEstimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub n_samples: u64,
    pub ensemble: Ensemble,
    pub seed: u64,
    pub fractions: Fractions,
    /// Largest Wilson half-width over the reported flags.
    pub wilson_halfwidth: f64,
}

/// Samples per RNG stream. Fixed, so the sample sequence is independent of
/// the number of worker threads.
pub const BATCH: u64 = 256;

#[derive(Default, Clone, Copy)]
struct Counts {
    flags: [u64; 4],
    lu: u64,
    lu_evaluated: u64,
}

impl Counts {
    fn add(mut self, c: &Classification) -> Self {
        for (slot, flag) in self.flags.iter_mut().zip([
            c.separable,
            c.absolutely_separable,
            c.polytope_positive,
            c.doubly_classical,
        ]) {
            *slot += flag as u64;
        }
        if let Some(lu) = c.lu_orbit_positive {
            self.lu += lu as u64;
            self.lu_evaluated += 1;
        }
        self
    }

    fn merge(mut self, o: Self) -> Self {
        for (a, b) in self.flags.iter_mut().zip(o.flags) {
            *a += b;
        }
        self.lu += o.lu;
        self.lu_evaluated += o.lu_evaluated;
        self
    }
}

/// Classifies `n` samples. Sample `i` is drawn from stream `i / BATCH` of
/// `seed`; batches run in parallel on the current rayon pool and are folded
/// in batch order.
pub fn estimate_fractions(
    n: u64,
    ensemble: Ensemble,
    kernel: &SwKernel,
    seed: u64,
    config: &ClassifyConfig,
) -> Result<EnsembleReport> {
    if n == 0 {
        return Err(Error::OutOfRange("sample count must be at least 1".into()));
    }
    let batches = n.div_ceil(BATCH);
    let per_batch: Vec<Counts> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng: StreamRng = rng::stream(seed, b);
            let size = BATCH.min(n - b * BATCH);
            (0..size).try_fold(Counts::default(), |acc, _| {
                let rho = ensemble.draw(&mut rng);
                Ok(acc.add(&classify(&rho, kernel, config)?))
            })
        })
        .collect::<Result<_>>()?;
    let total = per_batch.into_iter().fold(Counts::default(), Counts::merge);

    let est = |c| FlagEstimate::wilson(c, n);
    let fractions = Fractions {
        separable: est(total.flags[0]),
        absolutely_separable: est(total.flags[1]),
        polytope_positive: est(total.flags[2]),
        lu_orbit_positive: (total.lu_evaluated > 0).then(|| est(total.lu)),
        doubly_classical: est(total.flags[3]),
    };
    let wilson_halfwidth = [
        Some(fractions.separable),
        Some(fractions.absolutely_separable),
        Some(fractions.polytope_positive),
        fractions.lu_orbit_positive,
        Some(fractions.doubly_classical),
    ]
    .into_iter()
    .flatten()
    .map(|f| f.halfwidth)
    .fold(0.0, f64::max);
    Ok(EnsembleReport {
        n_samples: n,
        ensemble,
        seed,
        fractions,
        wilson_halfwidth,
    })
}
