//! Shared fixtures for the criterion benchmarks.

use semitoric_core::{Couplings, SystemParams};

/// `(R₁, R₂) = (1, 2)`, `t = (1/4, 1/4, 1/2, 0)`.
pub fn reference_params() -> SystemParams {
    SystemParams::new(1.0, 2.0, Couplings::new(0.25, 0.25, 0.5, 0.0)).expect("valid radii")
}

/// An `n × n` set of parameter points spread over the unit weight square.
pub fn weight_grid(n: usize) -> Vec<SystemParams> {
    let step = 1.0 / (n - 1) as f64;
    (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            semitoric_core::atlas::s_params(1.0, 2.0, i as f64 * step, j as f64 * step)
                .expect("weights lie in the unit square")
        })
        .collect()
}
