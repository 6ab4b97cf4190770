//! Linearization at the fixed points.
//!
//! At each pole pair the operators `A_J = ω⁻¹d²J` and `A_H = ω⁻¹d²H` are
//! 4×4 infinitesimally symplectic matrices. `A_H` has characteristic
//! polynomial `X⁴ + bX² + c`, so its spectrum follows from a quadratic in
//! `Y = X²` and the sign of `Δ = b² − 4c` separates focus-focus points from
//! the rest. When `Δ` is numerically zero, nondegeneracy is decided by
//! searching the pencil `αA_J + βA_H` for an element with four distinct
//! eigenvalues.

use std::fmt;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::geometry::Sign;
use crate::system::SystemParams;

/// Pairwise separation below which two eigenvalues are treated as equal.
pub const DISTINCT_TOL: f64 = 1e-9;

/// Relative width of the band in which `Δ` is reported as zero.
pub const ZERO_BAND_REL: f64 = 1e-12;

/// Directions on the unit circle tried after `(0,1)` and `(1,0)`.
pub const SCAN_DIRECTIONS: usize = 32;

/// `A_J` and `A_H` at the origin of the chart `φ_{e₁e₂}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HessianPair {
    pub aj: Matrix4<f64>,
    pub ah: Matrix4<f64>,
    pub e1: Sign,
    pub e2: Sign,
    pub params: SystemParams,
}

/// Coefficients of `χ(X) = X⁴ + bX² + c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticCoeffs {
    pub b: f64,
    pub c: f64,
}

impl QuarticCoeffs {
    pub fn discriminant(&self) -> f64 {
        self.b * self.b - 4.0 * self.c
    }

    /// Reads `(b, c)` off the numerically computed characteristic polynomial
    /// of `m`. Meaningful when the odd coefficients vanish.
    pub fn from_matrix(m: &Matrix4<f64>) -> Self {
        let [_, b, _, c] = charpoly_coefficients(m);
        Self { b, c }
    }
}

/// Williamson-type classification of a regular element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockType {
    EllipticElliptic,
    FocusFocus,
    EllipticHyperbolic,
    HyperbolicHyperbolic,
    Indeterminate,
}

impl BlockType {
    pub fn short(self) -> &'static str {
        match self {
            BlockType::EllipticElliptic => "EE",
            BlockType::FocusFocus => "FF",
            BlockType::EllipticHyperbolic => "EH",
            BlockType::HyperbolicHyperbolic => "HH",
            BlockType::Indeterminate => "IND",
        }
    }
}

impl fmt::Display for BlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

/// Sign of `Δ` after applying the zero band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaSign {
    Negative,
    Zero,
    Positive,
}

/// Whether `x` lies in the band `|x| ≤ 1e-12·max(1, b²)`.
pub fn in_zero_band(x: f64, b: f64) -> bool {
    x.abs() <= ZERO_BAND_REL * (b * b).max(1.0)
}

pub fn delta_sign(delta: f64, b: f64) -> DeltaSign {
    if in_zero_band(delta, b) {
        DeltaSign::Zero
    } else if delta < 0.0 {
        DeltaSign::Negative
    } else {
        DeltaSign::Positive
    }
}

/// `A_J` and `A_H` at the pole pair `(e₁,e₂)`, from the closed-form entries.
pub fn hessian_operators(e1: Sign, e2: Sign, params: &SystemParams) -> HessianPair {
    let (r1, r2) = (params.r1(), params.r2());
    let t = params.couplings();
    let (s1, s2) = (e1.value(), e2.value());

    #[rustfmt::skip]
    let aj = Matrix4::new(
        0.0, -1.0, 0.0,  0.0,
        1.0,  0.0, 0.0,  0.0,
        0.0,  0.0, 0.0, -1.0,
        0.0,  0.0, 1.0,  0.0,
    );

    let p = (t.t1 + s2 * t.t4) / r1;
    let q = (t.t2 + s1 * t.t4) / r2;
    let u = s1 * t.t3 / r1;
    let v = s2 * t.t3 / r2;
    #[rustfmt::skip]
    let ah = Matrix4::new(
        0.0, -p,  0.0,  u,
        p,   0.0, -u,   0.0,
        0.0,  v,  0.0, -q,
        -v,  0.0,  q,   0.0,
    );

    HessianPair {
        aj,
        ah,
        e1,
        e2,
        params: *params,
    }
}

/// Closed-form `(b, c)` of the characteristic polynomial of `A_H`.
pub fn char_poly_coeffs(pair: &HessianPair) -> QuarticCoeffs {
    closed_form_coeffs(&pair.params, pair.e1, pair.e2)
}

fn closed_form_coeffs(params: &SystemParams, e1: Sign, e2: Sign) -> QuarticCoeffs {
    let (r1, r2) = (params.r1(), params.r2());
    let t = params.couplings();
    let e12 = e1.value() * e2.value();
    let p = t.t2 + e1.value() * t.t4;
    let q = t.t1 + e2.value() * t.t4;
    let t3sq = t.t3 * t.t3;
    let denom = r1 * r1 * r2 * r2;
    let b = (r1 * r1 * p * p + 2.0 * e12 * r1 * r2 * t3sq + r2 * r2 * q * q) / denom;
    let c = (p * p * q * q - 2.0 * e12 * p * q * t3sq + t3sq * t3sq) / denom;
    QuarticCoeffs { b, c }
}

/// `Δ = b² − 4c` for the pole pair `(e₁,e₂)`.
pub fn discriminant(params: &SystemParams, e1: Sign, e2: Sign) -> f64 {
    closed_form_coeffs(params, e1, e2).discriminant()
}

/// Factors `(τ, d)` with `Δ = d·τ²`.
///
/// `A_H` is the Kronecker product of the 2×2 block
/// `P = [[(t₁+e₂t₄)/R₁, −e₁t₃/R₁], [−e₂t₃/R₂, (t₂+e₁t₄)/R₂]]` with a unit
/// rotation; `τ = tr P` and `d = (tr P)² − 4 det P`. A sign change of `Δ`
/// is a sign change of `d`, which is free of the double zero along `τ = 0`.
pub fn discriminant_factors(params: &SystemParams, e1: Sign, e2: Sign) -> (f64, f64) {
    let (r1, r2) = (params.r1(), params.r2());
    let t = params.couplings();
    let a = (t.t1 + e2.value() * t.t4) / r1;
    let d = (t.t2 + e1.value() * t.t4) / r2;
    let off = e1.value() * e2.value() * t.t3 * t.t3 / (r1 * r2);
    let diff = a - d;
    (a + d, diff * diff + 4.0 * off)
}

/// Coefficients `[a₃, a₂, a₁, a₀]` of `det(XI − m) = X⁴ + a₃X³ + a₂X² + a₁X + a₀`
/// by the Faddeev–LeVerrier recursion.
pub fn charpoly_coefficients(m: &Matrix4<f64>) -> [f64; 4] {
    let id = Matrix4::<f64>::identity();
    let mut coeffs = [0.0; 4];
    let mut mk = Matrix4::<f64>::zeros();
    let mut ck = 1.0;
    for (k, slot) in coeffs.iter_mut().enumerate() {
        mk = m * mk + id * ck;
        ck = -(m * mk).trace() / (k + 1) as f64;
        *slot = ck;
    }
    coeffs
}

/// The four roots of `X⁴ + bX² + c`, ordered `[√Y₁, −√Y₁, √Y₂, −√Y₂]` with
/// `Y₁,Y₂` the roots of `Y² + bY + c` and principal complex square roots.
pub fn quartic_eigenvalues(q: &QuarticCoeffs) -> [Complex64; 4] {
    let (b, c) = (q.b, q.c);
    let delta = b * b - 4.0 * c;
    let (y1, y2) = if delta >= 0.0 {
        // real roots; take the larger-magnitude one first to avoid cancellation
        let sq = delta.sqrt();
        let big = -0.5 * (b + sq.copysign(b));
        if big == 0.0 {
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (Complex64::new(big, 0.0), Complex64::new(c / big, 0.0))
        }
    } else {
        let im = 0.5 * (-delta).sqrt();
        (Complex64::new(-0.5 * b, im), Complex64::new(-0.5 * b, -im))
    };
    let r1 = y1.sqrt();
    let r2 = y2.sqrt();
    [r1, -r1, r2, -r2]
}

/// Classifies four eigenvalues of an infinitesimally symplectic 4×4 matrix.
///
/// Returns [`BlockType::Indeterminate`] if any two eigenvalues coincide
/// within [`DISTINCT_TOL`] or the spectrum fits none of the four patterns.
pub fn classify_block_structure(eigs: &[Complex64; 4]) -> BlockType {
    for i in 0..4 {
        for j in (i + 1)..4 {
            if (eigs[i] - eigs[j]).norm() <= DISTINCT_TOL {
                return BlockType::Indeterminate;
            }
        }
    }
    let (mut real, mut imag, mut complex) = (0, 0, 0);
    for z in eigs {
        let scale = z.norm().max(1.0) * DISTINCT_TOL;
        let on_real_axis = z.im.abs() <= scale;
        let on_imag_axis = z.re.abs() <= scale;
        match (on_real_axis, on_imag_axis) {
            (true, false) => real += 1,
            (false, true) => imag += 1,
            (false, false) => complex += 1,
            (true, true) => return BlockType::Indeterminate,
        }
    }
    match (real, imag, complex) {
        (0, 4, 0) => BlockType::EllipticElliptic,
        (0, 0, 4) => BlockType::FocusFocus,
        (2, 2, 0) => BlockType::EllipticHyperbolic,
        (4, 0, 0) => BlockType::HyperbolicHyperbolic,
        _ => BlockType::Indeterminate,
    }
}

/// A regular element `αA_J + βA_H` of the pencil and its spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularCombination {
    pub alpha: f64,
    pub beta: f64,
    pub eigenvalues: [Complex64; 4],
    pub block_type: BlockType,
}

/// Candidate coefficients in scan order: `(0,1)`, `(1,0)`, then
/// [`SCAN_DIRECTIONS`] equally spaced directions on the unit circle.
pub fn combination_candidates() -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 1.0), (1.0, 0.0)];
    for k in 0..SCAN_DIRECTIONS {
        let phi = std::f64::consts::TAU * (k as f64 + 0.5) / SCAN_DIRECTIONS as f64;
        out.push((phi.cos(), phi.sin()));
    }
    out
}

/// Whether `m` (with even characteristic polynomial) has four distinct eigenvalues.
///
/// Tested on the coefficients: the roots `±√Y₁, ±√Y₂` are distinct iff
/// `Y₁ ≠ Y₂` (`Δ ≠ 0`) and neither `Y` is zero (`c ≠ 0`). Both comparisons
/// use the same zero band as the fixed-point classification.
fn is_regular(q: &QuarticCoeffs) -> bool {
    !in_zero_band(q.discriminant(), q.b) && !in_zero_band(q.c, q.b)
}

/// Searches the pencil spanned by `A_J`, `A_H` for a regular element.
pub fn find_regular_combination(pair: &HessianPair) -> Option<RegularCombination> {
    combination_candidates()
        .into_iter()
        .find_map(|(alpha, beta)| {
            let m = pair.aj * alpha + pair.ah * beta;
            let q = QuarticCoeffs::from_matrix(&m);
            if !is_regular(&q) {
                return None;
            }
            let eigenvalues = quartic_eigenvalues(&q);
            let block_type = classify_block_structure(&eigenvalues);
            (block_type != BlockType::Indeterminate).then_some(RegularCombination {
                alpha,
                beta,
                eigenvalues,
                block_type,
            })
        })
}
