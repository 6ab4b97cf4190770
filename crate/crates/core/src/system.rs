//! The integrable family `F = (J, H)` on S²×S²:
//!
//! ```text
//! J = R₁z₁ + R₂z₂
//! H = t₁z₁ + t₂z₂ + t₃(x₁x₂ + y₁y₂) + t₄z₁z₂
//! ```
//!
//! together with the two-weight slice `(s₁,s₂) ∈ [0,1]²` interpolating
//! between four toric-type systems.

use nalgebra::Vector4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{omega_chart, ChartPoint, ProductPoint};

/// The four couplings `(t₁,t₂,t₃,t₄)` of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Couplings {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
}

impl Couplings {
    pub fn new(t1: f64, t2: f64, t3: f64, t4: f64) -> Self {
        Self { t1, t2, t3, t4 }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.t1, self.t2, self.t3, self.t4]
    }
}

/// Radii and couplings of one member of the family. Requires `0 < R₁ < R₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    r1: f64,
    r2: f64,
    t: Couplings,
}

impl SystemParams {
    pub fn new(r1: f64, r2: f64, t: Couplings) -> Result<Self> {
        if !(r1.is_finite() && r2.is_finite()) || !(0.0 < r1 && r1 < r2) {
            return Err(Error::InvalidParams(format!(
                "radii must satisfy 0 < R1 < R2 (got R1 = {r1}, R2 = {r2})"
            )));
        }
        if t.as_array().iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("couplings must be finite".into()));
        }
        Ok(Self { r1, r2, t })
    }

    /// Convenience constructor from six reals `(R₁,R₂,t₁,t₂,t₃,t₄)`.
    pub fn from_reals(r1: f64, r2: f64, t1: f64, t2: f64, t3: f64, t4: f64) -> Result<Self> {
        Self::new(r1, r2, Couplings::new(t1, t2, t3, t4))
    }

    /// The member of the family selected by the weights `s`.
    pub fn from_weights(r1: f64, r2: f64, s: SWeights) -> Result<Self> {
        Self::new(r1, r2, s_to_t(s))
    }

    /// `(1, 2, 1/4, 1/4, 1/2, 0)`: two elliptic-elliptic and two focus-focus points.
    pub fn reference() -> Self {
        Self {
            r1: 1.0,
            r2: 2.0,
            t: Couplings::new(0.25, 0.25, 0.5, 0.0),
        }
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }
    pub fn r2(&self) -> f64 {
        self.r2
    }
    pub fn couplings(&self) -> Couplings {
        self.t
    }
    pub fn t1(&self) -> f64 {
        self.t.t1
    }
    pub fn t2(&self) -> f64 {
        self.t.t2
    }
    pub fn t3(&self) -> f64 {
        self.t.t3
    }
    pub fn t4(&self) -> f64 {
        self.t.t4
    }

    /// Whether the reduction by `J` (which needs `t₃ ≠ 0`) is available.
    pub fn reduction_valid(&self) -> bool {
        self.t.t3 != 0.0
    }

    /// `R₁ + R₂`, the maximum of `J`.
    pub fn j_max(&self) -> f64 {
        self.r1 + self.r2
    }
}

/// Interpolation weights `(s₁,s₂) ∈ [0,1]²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SWeights {
    s1: f64,
    s2: f64,
}

impl SWeights {
    pub fn new(s1: f64, s2: f64) -> Result<Self> {
        if !((0.0..=1.0).contains(&s1) && (0.0..=1.0).contains(&s2)) {
            return Err(Error::InvalidParams(format!(
                "weights must lie in [0,1] (got s1 = {s1}, s2 = {s2})"
            )));
        }
        Ok(Self { s1, s2 })
    }

    pub fn s1(&self) -> f64 {
        self.s1
    }
    pub fn s2(&self) -> f64 {
        self.s2
    }
}

pub fn s_to_t(s: SWeights) -> Couplings {
    let (s1, s2) = (s.s1, s.s2);
    Couplings {
        t1: (1.0 - s1) * (1.0 - s2),
        t2: s1 * s2,
        t3: s1 + s2 - 2.0 * s1 * s2,
        t4: s1 - s2,
    }
}

/// Value of the momentum map `(J, H)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumValue {
    pub j: f64,
    pub h: f64,
}

pub fn momentum_map(p: &ProductPoint, params: &SystemParams) -> MomentumValue {
    let [x1, y1, z1, x2, y2, z2] = p.coords();
    let t = params.t;
    MomentumValue {
        j: params.r1 * z1 + params.r2 * z2,
        h: t.t1 * z1 + t.t2 * z2 + t.t3 * (x1 * x2 + y1 * y2) + t.t4 * z1 * z2,
    }
}

/// `(J, H)` pulled back to the chart, evaluated without building a [`ProductPoint`].
pub fn momentum_map_chart(p: &ChartPoint, params: &SystemParams) -> MomentumValue {
    let [x1, y1, x2, y2] = p.coords;
    let (z1, z2) = (p.z1(), p.z2());
    let t = params.t;
    MomentumValue {
        j: params.r1 * z1 + params.r2 * z2,
        h: t.t1 * z1 + t.t2 * z2 + t.t3 * (x1 * x2 + y1 * y2) + t.t4 * z1 * z2,
    }
}

/// Hamiltonian vector fields `(X^J, X^H)` in chart coordinates `(x₁,y₁,x₂,y₂)`.
///
/// Uses `X^f = ω⁻¹ ∇f` with `∂_{x_i} z_i = −x_i/z_i`, `∂_{y_i} z_i = −y_i/z_i`,
/// written out in closed form. Both fields vanish at the chart origin.
pub fn ham_vector_fields(p: &ChartPoint, params: &SystemParams) -> (Vector4<f64>, Vector4<f64>) {
    let [x1, y1, x2, y2] = p.coords;
    let (z1, z2) = (p.z1(), p.z2());
    let (r1, r2) = (params.r1, params.r2);
    let t = params.t;

    // z_i ∂z_i = −x_i or −y_i, so X^J is the unit-rate rotation of each disk.
    let xj = Vector4::new(-y1, x1, -y2, x2);

    let dx1z1 = -x1 / z1;
    let dy1z1 = -y1 / z1;
    let dx2z2 = -x2 / z2;
    let dy2z2 = -y2 / z2;
    let xh = Vector4::new(
        (t.t1 * dy1z1 + t.t3 * y2 + t.t4 * z2 * dy1z1) * z1 / r1,
        -(t.t1 * dx1z1 + t.t3 * x2 + t.t4 * z2 * dx1z1) * z1 / r1,
        (t.t2 * dy2z2 + t.t3 * y1 + t.t4 * z1 * dy2z2) * z2 / r2,
        -(t.t2 * dx2z2 + t.t3 * x1 + t.t4 * z1 * dx2z2) * z2 / r2,
    );
    (xj, xh)
}

/// `{J, H}` evaluated as `ω(X^J, X^H)`. Vanishes identically; this exists to check that.
pub fn poisson_bracket_jh(p: &ChartPoint, params: &SystemParams) -> f64 {
    let (xj, xh) = ham_vector_fields(p, params);
    let omega = omega_chart(p, params.r1, params.r2);
    xj.dot(&(omega * xh))
}
