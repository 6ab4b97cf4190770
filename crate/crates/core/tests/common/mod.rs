#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use semitoric_core::{ChartPoint, Sign, SystemParams};

pub const FD_STEP: f64 = 1e-5;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_sign(rng: &mut StdRng) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// `R₁ ∈ [0.5, 1.5]`, `R₂ − R₁ ∈ [0.1, 2]`, couplings in `[−1, 1]`.
pub fn random_params(rng: &mut StdRng) -> SystemParams {
    let r1 = rng.random_range(0.5..1.5);
    let r2 = r1 + rng.random_range(0.1..2.0);
    let mut t = || rng.random_range(-1.0..1.0);
    SystemParams::from_reals(r1, r2, t(), t(), t(), t()).unwrap()
}

/// A point of the disk of radius `√max_r2`.
pub fn random_disk(rng: &mut StdRng, max_r2: f64) -> (f64, f64) {
    let r = rng.random_range(0.0..max_r2).sqrt();
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    (r * phi.cos(), r * phi.sin())
}

pub fn random_chart_point(rng: &mut StdRng, max_r2: f64) -> ChartPoint {
    let e1 = random_sign(rng);
    let e2 = random_sign(rng);
    let (x1, y1) = random_disk(rng, max_r2);
    let (x2, y2) = random_disk(rng, max_r2);
    ChartPoint::new(e1, e2, x1, y1, x2, y2).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
