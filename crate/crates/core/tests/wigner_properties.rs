use proptest::prelude::*;
use qclass_core::ensemble::hs_state;
use qclass_core::kernel::{
    build_pair_kernel, build_quatrit_kernel, d14_bound, d23_bound, quatrit_moduli_grid, PairModuli,
};
use qclass_core::rng;
use qclass_core::wigner::{
    min_over_orbit, polytope_contains, polytope_vertices, wf_bounds, wigner_value, Group,
    PhasePoint, PhasePointLU,
};
use qclass_core::{Herm4, Spectrum4, SwKernel};
use rand::Rng;

fn random_pair_kernel(rng: &mut impl Rng) -> SwKernel {
    let d14 = rng.random::<f64>() * d14_bound();
    let d23 = rng.random::<f64>() * d23_bound(d14);
    build_pair_kernel(&PairModuli::new(d14, d23).unwrap())
}

#[test]
fn full_orbit_attains_rearrangement_bound() {
    let mut rng = rng::stream(2024, 0);
    let quatrits = quatrit_moduli_grid(16);
    for case in 0..100 {
        let rho = hs_state(&mut rng);
        let kernel = if case % 4 == 3 {
            build_quatrit_kernel(&quatrits[rng.random_range(0..quatrits.len())])
        } else {
            random_pair_kernel(&mut rng)
        };
        let bound = wf_bounds(&rho.spectrum(), &kernel.spectrum).lower;
        let full = min_over_orbit(&rho, &kernel, Group::Full, 20, 20_000).unwrap();
        assert!(
            (full.min_value - bound).abs() <= 1e-6,
            "case {case}: {} vs {bound}",
            full.min_value
        );
        assert!(full.min_value >= bound - 1e-9);
        if kernel.kind == qclass_core::KernelKind::Pair {
            let lu = min_over_orbit(&rho, &kernel, Group::Lu, 4, 2_000).unwrap();
            assert!(lu.min_value >= full.min_value - 1e-9);
        }
    }
}

#[test]
fn minimum_never_exceeds_start_values() {
    // The first Halton start of the LU chart, evaluated directly.
    let mut rng = rng::stream(7, 0);
    for _ in 0..20 {
        let rho = hs_state(&mut rng);
        let k = random_pair_kernel(&mut rng);
        let r = min_over_orbit(&rho, &k, Group::Lu, 1, 500).unwrap();
        let start = PhasePointLU::new([
            0.5 * std::f64::consts::TAU,
            (1.0f64 - 2.0 / 3.0).acos(),
            0.2 * std::f64::consts::TAU,
            std::f64::consts::TAU / 7.0,
            (1.0f64 - 2.0 / 11.0).acos(),
            std::f64::consts::TAU / 13.0,
        ])
        .unwrap();
        let w0 = wigner_value(&rho, &k, &PhasePoint::Lu(start)).unwrap();
        assert!(r.min_value <= w0 + 1e-12);
    }
}

#[test]
fn polytope_members_have_nonnegative_orbit_minimum() {
    let mut rng = rng::stream(99, 0);
    let mut checked = 0;
    while checked < 30 {
        // Mix towards I/4 so that a fair share lands inside the polytope.
        let t: f64 = rng.random();
        let rho = hs_state(&mut rng)
            .scaled(t)
            .plus(&Herm4::maximally_mixed().scaled(1.0 - t));
        let k = random_pair_kernel(&mut rng);
        if !polytope_contains(&rho.spectrum(), &k.spectrum) {
            continue;
        }
        checked += 1;
        let full = min_over_orbit(&rho, &k, Group::Full, 8, 20_000).unwrap();
        assert!(full.min_value >= -1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn polytope_vertices_are_feasible(a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        let d14 = a * d14_bound();
        let pi = build_pair_kernel(&PairModuli::new(d14, b * d23_bound(d14)).unwrap()).spectrum;
        let asc = pi.sorted_ascending().values();
        prop_assert!(asc[0] < 0.0);
        for v in polytope_vertices(&pi).vertices {
            prop_assert!((v.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            prop_assert!(v.windows(2).all(|w| w[0] >= w[1] - 1e-10) && v[3] >= -1e-10);
            prop_assert!(v.iter().zip(asc.iter()).map(|(x, y)| x * y).sum::<f64>() >= -1e-10);
        }
    }

    #[test]
    fn bounds_are_ordered(w in prop::array::uniform4(0.0..1.0f64), a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        let s: f64 = w.iter().sum::<f64>() + 1e-12;
        let r = Spectrum4::unsorted(w.map(|x| x / s));
        let d14 = a * d14_bound();
        let pi = build_pair_kernel(&PairModuli::new(d14, b * d23_bound(d14)).unwrap()).spectrum;
        let bounds = wf_bounds(&r, &pi);
        prop_assert!(bounds.lower <= bounds.upper + 1e-15);
    }
}
