use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermitian::Spectrum4;
use crate::kernel::{in_pair_image, pair_moduli_scan, quatrit_discriminant};
use crate::separability::absolutely_separable_sorted;
use crate::tolerance;
use crate::wigner::{fundamental_simplex, polytope_vertices};

/// Kernel spectrum quoted to two decimals for the typical clipped polytope.
/// Rounding leaves `Σπ² ≈ 3.91` instead of 4.
pub const REFERENCE_KERNEL: [f64; 4] = [0.94, 0.93, 0.51, -1.38];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Figure {
    /// Absolute separability over the fundamental simplex.
    Fig1Right,
    /// Quatrit moduli box with discriminant and pair-image membership.
    Fig2Left,
    /// Positivity polytope vertices.
    Fig2Right,
    /// Pair-moduli grid and its quatrit image.
    ModuliScan,
}

impl Figure {
    pub const ALL: [Figure; 4] = [
        Figure::Fig1Right,
        Figure::Fig2Left,
        Figure::Fig2Right,
        Figure::ModuliScan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1Right => "fig1_right",
            Figure::Fig2Left => "fig2_left",
            Figure::Fig2Right => "fig2_right",
            Figure::ModuliScan => "moduli_scan",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Bool(bool),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // Shortest representation that parses back to the same value.
            Cell::Num(x) => write!(f, "{x:?}"),
            Cell::Bool(b) => write!(f, "{b}"),
        }
    }
}

/// Table with a header row, written as CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Raster {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{c}").expect("writing to a String");
            }
            out.push('\n');
        }
        out
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }
}

/// Box of `(π1, π2)` values covered by the quatrit raster.
pub const FIG2_LEFT_RANGE: (f64, f64) = (-1.5, 2.0);

/// Data behind each figure.
///
/// * `fig1_right`: lattice of step `1/resolution` in barycentric coordinates
///   of the fundamental simplex, with the sorted absolute separability flag;
/// * `fig2_left`: `resolution²` grid over `FIG2_LEFT_RANGE²`;
/// * `fig2_right`: polytope vertices of `kernel` (default [`REFERENCE_KERNEL`]);
/// * `moduli_scan`: `resolution²` pair-moduli grid with its quatrit image.
pub fn figure_grids(which: Figure, resolution: usize, kernel: Option<Spectrum4>) -> Result<Raster> {
    if resolution < 2 && which != Figure::Fig2Right {
        return Err(Error::OutOfRange("resolution must be at least 2".into()));
    }
    Ok(match which {
        Figure::Fig1Right => fig1_right(resolution),
        Figure::Fig2Left => fig2_left(resolution),
        Figure::Fig2Right => {
            let pi = kernel.unwrap_or(Spectrum4::unsorted(REFERENCE_KERNEL));
            Raster {
                header: vec!["r1", "r2", "r3", "r4"],
                rows: polytope_vertices(&pi)
                    .vertices
                    .iter()
                    .map(|v| v.iter().map(|x| Cell::Num(*x)).collect())
                    .collect(),
            }
        }
        Figure::ModuliScan => Raster {
            header: vec!["d14", "d23", "pi1", "pi2", "disc", "in_p4"],
            rows: pair_moduli_scan(resolution)
                .into_iter()
                .map(|r| {
                    vec![
                        Cell::Num(r.d14),
                        Cell::Num(r.d23),
                        Cell::Num(r.pi1),
                        Cell::Num(r.pi2),
                        Cell::Num(r.disc),
                        Cell::Bool(r.in_p4),
                    ]
                })
                .collect(),
        },
    })
}

fn fig1_right(n: usize) -> Raster {
    let corners = fundamental_simplex();
    let mut rows = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                let w = [a, b, c, n - a - b - c].map(|k| k as f64 / n as f64);
                let r: [f64; 4] =
                    std::array::from_fn(|i| (0..4).map(|k| w[k] * corners[k][i]).sum());
                let inside = absolutely_separable_sorted(&Spectrum4::unsorted(r));
                let mut row: Vec<Cell> = r.iter().map(|x| Cell::Num(*x)).collect();
                row.push(Cell::Bool(inside));
                rows.push(row);
            }
        }
    }
    Raster {
        header: vec!["r1", "r2", "r3", "r4", "absolutely_separable"],
        rows,
    }
}

fn fig2_left(n: usize) -> Raster {
    let (lo, hi) = FIG2_LEFT_RANGE;
    let at = |k: usize| lo + (hi - lo) * k as f64 / (n - 1) as f64;
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (pi1, pi2) = (at(i), at(j));
            let disc = quatrit_discriminant(pi1, pi2);
            let in_p4 = disc >= -tolerance::DISCRIMINANT;
            let in_p2x2 = in_p4 && in_pair_image(pi1, pi2, 1e-9);
            rows.push(vec![
                Cell::Num(pi1),
                Cell::Num(pi2),
                Cell::Num(disc),
                Cell::Bool(in_p4),
                Cell::Bool(in_p2x2),
            ]);
        }
    }
    Raster {
        header: vec!["pi1", "pi2", "disc", "in_p4", "in_p2x2"],
        rows,
    }
}
