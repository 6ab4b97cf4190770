//! Coordinate representations of S²×S² and the symplectic matrices of the
//! two-radii form `ω = −(R₁ω_S² ⊕ R₂ω_S²)` in hemisphere charts.
//!
//! Three coordinate systems are used throughout the crate:
//!
//! * [`ProductPoint`]: ambient Cartesian coordinates `(x₁,y₁,z₁,x₂,y₂,z₂)`.
//! * [`ChartPoint`]: the double-hemisphere chart `φ_{e₁e₂}` which writes each
//!   factor as a graph `z_i = e_i √(1 − x_i² − y_i²)` over the open unit disk.
//!   The four fixed points of the system are the origins of the four charts.
//! * [`CylPoint`]: cylindrical coordinates `(θ_i, z_i)`, valid away from the poles.

use std::f64::consts::TAU;
use std::fmt;

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `x²+y²+z² = 1` for each sphere factor.
pub const SPHERE_TOL: f64 = 1e-12;

/// Inputs further than this from the sphere are rejected instead of renormalized.
const RENORMALIZE_LIMIT: f64 = 1e-6;

/// Hemisphere selector `e ∈ {+1, −1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// Sign of a nonzero real. Returns `None` for zero and NaN.
    pub fn of(x: f64) -> Option<Sign> {
        if x > 0.0 {
            Some(Sign::Plus)
        } else if x < 0.0 {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

fn normalize_factor(v: [f64; 3], which: usize) -> Result<[f64; 3]> {
    let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    if !n2.is_finite() || (n2 - 1.0).abs() > RENORMALIZE_LIMIT {
        return Err(Error::Domain(format!(
            "sphere factor {which} has |v|² = {n2}, not on the unit sphere"
        )));
    }
    let n = n2.sqrt();
    Ok([v[0] / n, v[1] / n, v[2] / n])
}

/// A point of S²×S² in ambient coordinates.
///
/// Construction renormalizes each factor onto the unit sphere; inputs that
/// are grossly off the sphere are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductPoint {
    first: [f64; 3],
    second: [f64; 3],
}

impl ProductPoint {
    pub fn new(x1: f64, y1: f64, z1: f64, x2: f64, y2: f64, z2: f64) -> Result<Self> {
        Ok(Self {
            first: normalize_factor([x1, y1, z1], 1)?,
            second: normalize_factor([x2, y2, z2], 2)?,
        })
    }

    /// Product of two poles, `e_i = +1` for north.
    pub fn pole(e1: Sign, e2: Sign) -> Self {
        Self {
            first: [0.0, 0.0, e1.value()],
            second: [0.0, 0.0, e2.value()],
        }
    }

    pub fn first(&self) -> [f64; 3] {
        self.first
    }

    pub fn second(&self) -> [f64; 3] {
        self.second
    }

    pub fn x1(&self) -> f64 {
        self.first[0]
    }
    pub fn y1(&self) -> f64 {
        self.first[1]
    }
    pub fn z1(&self) -> f64 {
        self.first[2]
    }
    pub fn x2(&self) -> f64 {
        self.second[0]
    }
    pub fn y2(&self) -> f64 {
        self.second[1]
    }
    pub fn z2(&self) -> f64 {
        self.second[2]
    }

    /// All six coordinates in the order `(x₁,y₁,z₁,x₂,y₂,z₂)`.
    pub fn coords(&self) -> [f64; 6] {
        let [x1, y1, z1] = self.first;
        let [x2, y2, z2] = self.second;
        [x1, y1, z1, x2, y2, z2]
    }

    /// Largest deviation of `|v_i|² − 1` over the two factors.
    pub fn sphere_residual(&self) -> f64 {
        let r = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] - 1.0).abs();
        r(self.first).max(r(self.second))
    }
}

/// A point in the chart `φ_{e₁e₂}`: `(x₁,y₁,x₂,y₂)` in the open bidisk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub(crate) e1: Sign,
    pub(crate) e2: Sign,
    pub(crate) coords: [f64; 4],
}

impl ChartPoint {
    pub fn new(e1: Sign, e2: Sign, x1: f64, y1: f64, x2: f64, y2: f64) -> Result<Self> {
        let r1 = x1 * x1 + y1 * y1;
        let r2 = x2 * x2 + y2 * y2;
        if !(r1 < 1.0) || !(r2 < 1.0) {
            return Err(Error::Domain(format!(
                "chart coordinates must satisfy x²+y² < 1 (got {r1}, {r2})"
            )));
        }
        Ok(Self {
            e1,
            e2,
            coords: [x1, y1, x2, y2],
        })
    }

    /// Origin of the chart, i.e. the pole pair `(e₁,e₂)`.
    pub fn origin(e1: Sign, e2: Sign) -> Self {
        Self {
            e1,
            e2,
            coords: [0.0; 4],
        }
    }

    pub fn e1(&self) -> Sign {
        self.e1
    }
    pub fn e2(&self) -> Sign {
        self.e2
    }
    /// `(x₁,y₁,x₂,y₂)`.
    pub fn coords(&self) -> [f64; 4] {
        self.coords
    }

    /// Height `z₁ = e₁√(1−x₁²−y₁²)`.
    pub fn z1(&self) -> f64 {
        let [x1, y1, _, _] = self.coords;
        self.e1.value() * (1.0 - x1 * x1 - y1 * y1).sqrt()
    }

    /// Height `z₂ = e₂√(1−x₂²−y₂²)`.
    pub fn z2(&self) -> f64 {
        let [_, _, x2, y2] = self.coords;
        self.e2.value() * (1.0 - x2 * x2 - y2 * y2).sqrt()
    }

    /// Same chart, new coordinates. Used by finite-difference stencils.
    pub fn with_coords(&self, coords: [f64; 4]) -> Result<Self> {
        Self::new(self.e1, self.e2, coords[0], coords[1], coords[2], coords[3])
    }
}

/// Cylindrical coordinates `(θ₁,z₁,θ₂,z₂)`; angles are stored in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylPoint {
    theta1: f64,
    z1: f64,
    theta2: f64,
    z2: f64,
}

/// Reduce an angle into `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let w = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    d.min(TAU - d)
}

impl CylPoint {
    pub fn new(theta1: f64, z1: f64, theta2: f64, z2: f64) -> Result<Self> {
        if !(z1.abs() < 1.0) || !(z2.abs() < 1.0) {
            return Err(Error::Domain(format!(
                "cylindrical heights must satisfy |z| < 1 (got {z1}, {z2})"
            )));
        }
        if !theta1.is_finite() || !theta2.is_finite() {
            return Err(Error::Domain("angles must be finite".into()));
        }
        Ok(Self {
            theta1: wrap_angle(theta1),
            z1,
            theta2: wrap_angle(theta2),
            z2,
        })
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }
    pub fn z1(&self) -> f64 {
        self.z1
    }
    pub fn theta2(&self) -> f64 {
        self.theta2
    }
    pub fn z2(&self) -> f64 {
        self.z2
    }
}

/// Open interval `(lo, hi)` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Domain(format!("empty interval ({lo}, {hi})")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }
    pub fn hi(&self) -> f64 {
        self.hi
    }
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
    pub fn contains_open(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
    pub fn contains_closed(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

pub fn chart_to_ambient(p: &ChartPoint) -> ProductPoint {
    let [x1, y1, x2, y2] = p.coords;
    ProductPoint {
        first: [x1, y1, p.z1()],
        second: [x2, y2, p.z2()],
    }
}

/// Inverse of the chart map; the hemisphere signs are read off `z_i`.
pub fn ambient_to_chart(p: &ProductPoint) -> Result<ChartPoint> {
    let e1 = Sign::of(p.z1())
        .ok_or_else(|| Error::Domain("first factor lies on the equator z₁ = 0".into()))?;
    let e2 = Sign::of(p.z2())
        .ok_or_else(|| Error::Domain("second factor lies on the equator z₂ = 0".into()))?;
    ChartPoint::new(e1, e2, p.x1(), p.y1(), p.x2(), p.y2())
}

pub fn cyl_to_ambient(p: &CylPoint) -> ProductPoint {
    let factor = |theta: f64, z: f64| {
        let r = (1.0 - z * z).sqrt();
        [r * theta.cos(), r * theta.sin(), z]
    };
    ProductPoint {
        first: factor(p.theta1, p.z1),
        second: factor(p.theta2, p.z2),
    }
}

/// Inverse of [`cyl_to_ambient`]; undefined at the poles of either factor.
pub fn ambient_to_cyl(p: &ProductPoint) -> Result<CylPoint> {
    let angle = |v: [f64; 3], which: usize| {
        if v[0] == 0.0 && v[1] == 0.0 {
            Err(Error::Domain(format!(
                "factor {which} is at a pole; the angle is undefined"
            )))
        } else {
            Ok(v[1].atan2(v[0]))
        }
    };
    let theta1 = angle(p.first, 1)?;
    let theta2 = angle(p.second, 2)?;
    CylPoint::new(theta1, p.z1(), theta2, p.z2())
}

/// Matrix of `ω` in chart coordinates `(x₁,y₁,x₂,y₂)`.
pub fn omega_chart(p: &ChartPoint, r1: f64, r2: f64) -> Matrix4<f64> {
    let a = -r1 / p.z1();
    let b = -r2 / p.z2();
    let mut m = Matrix4::zeros();
    m[(0, 1)] = a;
    m[(1, 0)] = -a;
    m[(2, 3)] = b;
    m[(3, 2)] = -b;
    m
}

/// Matrix of `ω⁻¹` in chart coordinates, entries `±z_i/R_i`.
pub fn omega_inverse_chart(p: &ChartPoint, r1: f64, r2: f64) -> Matrix4<f64> {
    let a = p.z1() / r1;
    let b = p.z2() / r2;
    let mut m = Matrix4::zeros();
    m[(0, 1)] = a;
    m[(1, 0)] = -a;
    m[(2, 3)] = b;
    m[(3, 2)] = -b;
    m
}

/// Admissible range of `ζ = z₁` on the level set `J = c`.
///
/// Both `|z₁| < 1` and `|z₂| = |(c − R₁ζ)/R₂| < 1` must hold.
pub fn reduced_bounds(c: f64, r1: f64, r2: f64) -> Result<Interval> {
    if !(r1 > 0.0 && r2 > 0.0) {
        return Err(Error::InvalidParams(format!(
            "radii must be positive (got {r1}, {r2})"
        )));
    }
    if !(c.abs() < r1 + r2) {
        return Err(Error::Domain(format!(
            "c = {c} is not a regular value of J (|c| must be < {})",
            r1 + r2
        )));
    }
    let lo = ((c - r2) / r1).max(-1.0);
    let hi = ((c + r2) / r1).min(1.0);
    Interval::new(lo, hi)
}
