use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{Herm4, Subsystem};
use crate::kernel::{
    build_pair_kernel, build_quatrit_kernel, pair_moduli_grid, quatrit_moduli_grid, KernelKind,
};
use crate::linalg::{self, C64};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusProperty {
    Separability,
    /// Positivity of the Wigner function for every unitary orbit point and
    /// every scanned kernel.
    AbsoluteClassicality,
}

impl fmt::Display for RadiusProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RadiusProperty::Separability => "separability",
            RadiusProperty::AbsoluteClassicality => "absolute_classicality",
        })
    }
}

impl FromStr for RadiusProperty {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "separability" => Ok(RadiusProperty::Separability),
            "absolute_classicality" | "absolute-classicality" => {
                Ok(RadiusProperty::AbsoluteClassicality)
            }
            other => Err(format!(
                "unknown property `{other}` (expected separability or absolute_classicality)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadiusOptions {
    pub property: RadiusProperty,
    pub n_directions: usize,
    pub bisection_tol: f64,
    pub kernel_scan_resolution: usize,
    pub kernel_family: KernelKind,
    /// Random-perturbation steps applied to the worst direction found.
    pub refine_steps: usize,
    pub seed: u64,
}

impl Default for RadiusOptions {
    fn default() -> Self {
        Self {
            property: RadiusProperty::Separability,
            n_directions: 200,
            bisection_tol: 1e-6,
            kernel_scan_resolution: 64,
            kernel_family: KernelKind::Quatrit,
            refine_steps: 400,
            seed: 0,
        }
    }
}

/// A radius under a named normalization: `value = radius_hs · factor`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scaling {
    pub convention: &'static str,
    pub factor: f64,
    pub value: f64,
    /// Closed-form radius of the largest ball under this normalization.
    pub closed_form: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusEstimate {
    pub property: RadiusProperty,
    /// Hilbert-Schmidt distance from `I/4`.
    pub radius_hs: f64,
    pub directions_tested: usize,
    pub refine_steps: usize,
    pub bisection_tol: f64,
    /// Kernel family and number of kernels scanned (absolute classicality only).
    pub kernel_family: Option<KernelKind>,
    pub kernels_scanned: usize,
    pub scalings: Vec<Scaling>,
    /// Unit traceless direction attaining the estimate.
    pub worst_direction: Herm4,
}

/// Uniformly random unit-norm traceless Hermitian matrix.
fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> linalg::Mat<4> {
    let g: linalg::Mat<4> =
        std::array::from_fn(|_| std::array::from_fn(|_| rng::complex_normal(rng)));
    let h = linalg::scale(&linalg::add(&g, &linalg::adjoint(&g)), C64::new(0.5, 0.0));
    normalize_traceless(&h)
}

fn normalize_traceless(h: &linalg::Mat<4>) -> linalg::Mat<4> {
    let shift = linalg::trace(h) / 4.0;
    let mut d = *h;
    for (i, row) in d.iter_mut().enumerate() {
        row[i] -= shift;
    }
    let n = linalg::frobenius(&d);
    linalg::scale(&d, C64::new(1.0 / n, 0.0))
}

struct Problem {
    property: RadiusProperty,
    /// Ascending kernel spectra.
    kernels: Vec<[f64; 4]>,
    tol: f64,
}

impl Problem {
    fn holds(&self, d: &Herm4, t: f64) -> bool {
        match self.property {
            RadiusProperty::Separability => {
                let rho = Herm4::maximally_mixed().plus(&d.scaled(t));
                rho.partial_transpose(Subsystem::B).min_eigenvalue() >= 0.0
            }
            RadiusProperty::AbsoluteClassicality => {
                let mut r = d.eigenvalues().map(|x| 0.25 + t * x);
                r.sort_by(|a, b| b.total_cmp(a));
                self.kernels
                    .iter()
                    .all(|asc| r.iter().zip(asc).map(|(x, y)| x * y).sum::<f64>() >= 0.0)
            }
        }
    }

    /// Largest `t` (to `tol`) along `d` with `I/4 + t d` a state having the
    /// property.
    fn boundary(&self, d: &Herm4) -> f64 {
        // I/4 + t d stays positive up to t = 1 / (4 |λ_min(d)|).
        let t_max = 0.25 / (-d.min_eigenvalue());
        if self.holds(d, t_max) {
            return t_max;
        }
        let (mut lo, mut hi) = (0.0, t_max);
        while hi - lo > self.tol {
            let mid = 0.5 * (lo + hi);
            if self.holds(d, mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// Radius of the largest Hilbert-Schmidt ball around `I/4` inside the set of
/// states with `property`, estimated as the smallest boundary distance over
/// random directions followed by a random-perturbation descent on the worst
/// direction.
pub fn estimate_ball_radius(opts: &RadiusOptions) -> Result<RadiusEstimate> {
    if opts.n_directions == 0 {
        return Err(Error::OutOfRange(
            "at least one direction is required".into(),
        ));
    }
    if !(opts.bisection_tol > 0.0) {
        return Err(Error::OutOfRange(
            "bisection tolerance must be positive".into(),
        ));
    }
    let kernels: Vec<[f64; 4]> = match opts.property {
        RadiusProperty::Separability => Vec::new(),
        RadiusProperty::AbsoluteClassicality => {
            if opts.kernel_scan_resolution < 2 {
                return Err(Error::OutOfRange(
                    "kernel scan resolution must be at least 2".into(),
                ));
            }
            let n = opts.kernel_scan_resolution;
            match opts.kernel_family {
                KernelKind::Quatrit => quatrit_moduli_grid(n)
                    .iter()
                    .map(|m| build_quatrit_kernel(m).ascending().values())
                    .collect(),
                KernelKind::Pair => pair_moduli_grid(n)
                    .iter()
                    .map(|m| build_pair_kernel(m).ascending().values())
                    .collect(),
            }
        }
    };
    let problem = Problem {
        property: opts.property,
        kernels,
        tol: opts.bisection_tol,
    };

    let mut rng = rng::stream(opts.seed, 0);
    let directions: Vec<Herm4> = (0..opts.n_directions)
        .map(|_| Herm4::new(random_direction(&mut rng)).expect("Hermitian by construction"))
        .collect();
    let radii: Vec<f64> = directions.par_iter().map(|d| problem.boundary(d)).collect();
    let (mut best_i, mut best_t) = (0, f64::INFINITY);
    for (i, t) in radii.iter().enumerate() {
        if *t < best_t {
            best_i = i;
            best_t = *t;
        }
    }
    let mut best_d = directions[best_i];

    let mut rng = rng::stream(opts.seed, 1);
    let mut eps = 0.5;
    let mut misses = 0;
    for _ in 0..opts.refine_steps {
        let g = random_direction(&mut rng);
        let trial = linalg::add(best_d.entries(), &linalg::scale(&g, C64::new(eps, 0.0)));
        let trial = Herm4::new(normalize_traceless(&trial)).expect("Hermitian by construction");
        let t = problem.boundary(&trial);
        if t < best_t {
            best_t = t;
            best_d = trial;
            misses = 0;
        } else {
            misses += 1;
            if misses == 8 {
                eps *= 0.5;
                misses = 0;
            }
        }
    }

    let (hs_closed, bloch_closed) = match opts.property {
        RadiusProperty::Separability => (1.0 / (2.0 * 3f64.sqrt()), 1.0 / 3.0),
        RadiusProperty::AbsoluteClassicality => (1.0 / (2.0 * 15f64.sqrt()), 5f64.sqrt() / 15.0),
    };
    // Bloch normalization rescales by √(N/(N−1)) for N = 4.
    let bloch = 2.0 / 3f64.sqrt();
    Ok(RadiusEstimate {
        property: opts.property,
        radius_hs: best_t,
        directions_tested: opts.n_directions,
        refine_steps: opts.refine_steps,
        bisection_tol: opts.bisection_tol,
        kernel_family: (opts.property == RadiusProperty::AbsoluteClassicality)
            .then_some(opts.kernel_family),
        kernels_scanned: problem.kernels.len(),
        scalings: vec![
            Scaling {
                convention: "hilbert_schmidt",
                factor: 1.0,
                value: best_t,
                closed_form: hs_closed,
            },
            Scaling {
                convention: "bloch",
                factor: bloch,
                value: best_t * bloch,
                closed_form: bloch_closed,
            },
        ],
        worst_direction: best_d,
    })
}
