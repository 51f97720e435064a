use serde::Serialize;

use crate::hermitian::Spectrum4;
use crate::tolerance;

/// Vertices of the ordered simplex `r1 ≥ r2 ≥ r3 ≥ r4 ≥ 0`, `Σr = 1`.
pub fn fundamental_simplex() -> [[f64; 4]; 4] {
    let third = 1.0 / 3.0;
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.5, 0.5, 0.0, 0.0],
        [third, third, third, 0.0],
        [0.25, 0.25, 0.25, 0.25],
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityPolytope {
    pub vertices: Vec<[f64; 4]>,
    pub kernel_spectrum: Spectrum4,
}

fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Clips the fundamental simplex by `r·π↑ ≥ 0`.
///
/// Kept corners come first (in simplex order), followed by edge crossings in
/// lexicographic edge order. Points closer than
/// [`tolerance::VERTEX_DEDUP`] are merged.
pub fn polytope_vertices(pi: &Spectrum4) -> PositivityPolytope {
    let asc = pi.sorted_ascending().values();
    let corners = fundamental_simplex();
    let h: Vec<f64> = corners.iter().map(|v| dot(v, &asc)).collect();
    let tol = tolerance::BOUNDARY;

    let mut vertices: Vec<[f64; 4]> = Vec::new();
    let mut push = |p: [f64; 4]| {
        let dup = vertices.iter().any(|q| {
            q.iter()
                .zip(&p)
                .all(|(a, b)| (a - b).abs() <= tolerance::VERTEX_DEDUP)
        });
        if !dup {
            vertices.push(p);
        }
    };

    for (v, hv) in corners.iter().zip(&h) {
        if *hv >= -tol {
            push(*v);
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let (hi, hj) = (h[i], h[j]);
            if (hi > tol && hj < -tol) || (hi < -tol && hj > tol) {
                let t = hi / (hi - hj);
                push(std::array::from_fn(|k| {
                    corners[i][k] + t * (corners[j][k] - corners[i][k])
                }));
            }
        }
    }
    PositivityPolytope {
        vertices,
        kernel_spectrum: pi.sorted_descending(),
    }
}
