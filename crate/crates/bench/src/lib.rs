//! Fixed inputs shared by the benchmarks.

use qclass_core::{sample_hs_state, ClassifyConfig, Herm4, KernelSpec, SwKernel};

pub fn states(n: u64) -> Vec<Herm4> {
    (0..n).map(sample_hs_state).collect()
}

pub fn pair_kernel() -> SwKernel {
    KernelSpec::pair(0.3, 0.2).build().expect("interior moduli")
}

pub fn quatrit_kernel() -> SwKernel {
    KernelSpec::quatrit(1.0, 0.8)
        .build()
        .expect("interior moduli")
}

pub fn config() -> ClassifyConfig {
    ClassifyConfig::default()
}
