//! Cartography of the weight square `[0,1]²` and of the momentum image.

mod ffmap;
mod gamma;
mod image;
mod polygon;

pub use ffmap::{ff_count_map, FfCountMap, Transition};
pub use gamma::{degenerate_on_diagonal, gamma_curves, CurveKind, ImplicitCurve};
pub use image::{h_envelope, momentum_image, EnvelopeRow, MomentumImage, Rank0Marker, Rank1Value};
pub use polygon::{semitoric_polygon, PolygonSketch};

use crate::error::Result;
use crate::geometry::Sign;
use crate::spectral::{discriminant, discriminant_factors};
use crate::system::{SWeights, SystemParams};

pub const DEFAULT_GAMMA_GRID: usize = 512;
pub const DEFAULT_REFINE_TOL: f64 = 1e-10;
pub const DEFAULT_FF_GRID: usize = 101;
pub const DEFAULT_C_GRID: usize = 201;
pub const DEFAULT_ZETA_GRID: usize = 1001;

pub const MIN_GAMMA_GRID: usize = 64;
pub const MIN_FF_GRID: usize = 16;

/// The member of the family at weights `(s₁,s₂)`.
pub fn s_params(r1: f64, r2: f64, s1: f64, s2: f64) -> Result<SystemParams> {
    SystemParams::from_weights(r1, r2, SWeights::new(s1, s2)?)
}

/// `Δ` at weights `(s₁,s₂)` and pole signs `(e₁,e₂)`.
pub fn s_discriminant(r1: f64, r2: f64, s1: f64, s2: f64, e1: Sign, e2: Sign) -> Result<f64> {
    Ok(discriminant(&s_params(r1, r2, s1, s2)?, e1, e2))
}

/// The sign-carrying factor `d` of `Δ = d·τ²` at weights `(s₁,s₂)`.
pub(crate) fn s_sign_field(params_r: (f64, f64), s1: f64, s2: f64, e1: Sign, e2: Sign) -> f64 {
    let (r1, r2) = params_r;
    let p = s_params(r1, r2, s1, s2).expect("weights and radii validated by caller");
    discriminant_factors(&p, e1, e2).1
}

/// Node `i` of an `n`-point grid on `[0,1]`; the last node is exactly 1.
pub(crate) fn unit_node(i: usize, n: usize) -> f64 {
    if i + 1 == n {
        1.0
    } else {
        i as f64 / (n - 1) as f64
    }
}
