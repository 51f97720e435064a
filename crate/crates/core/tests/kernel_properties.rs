use proptest::prelude::*;
use qclass_core::kernel::{
    build_pair_kernel, d14_bound, d23_bound, embed_pair_in_quatrit, pair_moduli_grid,
    pair_spectrum, validate_kernel, PairModuli,
};

prop_compose! {
    fn pair_moduli()(a in 0.0..=1.0f64, b in 0.0..=1.0f64) -> PairModuli {
        let d14 = a * d14_bound();
        PairModuli::new(d14, b * d23_bound(d14)).unwrap()
    }
}

#[test]
fn master_equations_on_grid() {
    for m in pair_moduli_grid(64) {
        let s = pair_spectrum(&m);
        assert!((s.sum() - 1.0).abs() <= 1e-12);
        assert!((s.sum_of_squares() - 4.0).abs() <= 1e-12);

        let k = build_pair_kernel(&m);
        let [d1, d2, d3, d4] = k.matrix.diagonal();
        assert!(((d1 + d2).powi(2) + (d3 + d4).powi(2) - 2.0).abs() <= 1e-12);
        assert!(((d1 + d3).powi(2) + (d2 + d4).powi(2) - 2.0).abs() <= 1e-12);
        let r = validate_kernel(&k);
        assert!(r.passes, "{m:?}: {r:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn pair_kernels_are_valid(m in pair_moduli()) {
        let r = validate_kernel(&build_pair_kernel(&m));
        prop_assert!(r.reduced_a <= 1e-10 && r.reduced_b <= 1e-10 && r.passes);
    }

    #[test]
    fn embedding_lands_in_quatrit_domain(m in pair_moduli()) {
        prop_assert!(embed_pair_in_quatrit(&m).discriminant() >= -1e-10);
    }

    #[test]
    fn sorted_view_is_descending(m in pair_moduli()) {
        let s = pair_spectrum(&m).sorted_descending().values();
        prop_assert!(s.windows(2).all(|w| w[0] >= w[1]));
        // Kernel matrix spectrum matches the closed form.
        let e = build_pair_kernel(&m).matrix.eigenvalues();
        for (a, b) in e.iter().zip(s.iter()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }
}
