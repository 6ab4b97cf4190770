//! Rank-1 points via symplectic reduction by `J`.
//!
//! On a regular level `J = c` the quotient by the `J`-action has coordinates
//! `ζ = z₁`, `ϑ = θ₁ − θ₂`, reduced form `R₁ dζ∧dϑ` and reduced Hamiltonian
//!
//! ```text
//! H(ζ,ϑ) = t₂c/R₂ + ((t₁R₂ − t₂R₁ + t₄c)/R₂) ζ − (t₄R₁/R₂) ζ² + t₃ cos ϑ √A(ζ)
//! A(ζ)   = (1 − ζ²)(1 − ((c − R₁ζ)/R₂)²)
//! ```
//!
//! Critical points sit at `ϑ ∈ {0, π}` and are elliptic- or hyperbolic-regular
//! according to how `(2t₄R₁/(t₃R₂)) cos ϑ` compares with
//! `B(ζ) = (2A''A − A'²)/(4A^{3/2})`.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{reduced_bounds, Interval};
use crate::roots::scan_roots_with_residual;
use crate::system::SystemParams;

pub const DEFAULT_SCAN_N: usize = 4096;
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
/// Width of the excluded collar at each end of the ζ-interval, where `A → 0`.
pub const ENDPOINT_COLLAR: f64 = 1e-9;
/// Largest accepted `|g(ζ)|` for a point handed to [`classify_rank1`].
pub const RESIDUAL_GATE: f64 = 1e-8;
/// Bisection continues past `tol` until `|g|` falls below this (or the
/// bracket stops shrinking), which matters where `g` is steep near the ends.
const ROOT_RESIDUAL_TARGET: f64 = 1e-2 * RESIDUAL_GATE;
/// Relative band in which the rank-1 inequality is reported as an equality.
pub const DEGENERACY_REL: f64 = 1e-9;

/// `A(ζ)` and its first two ζ-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AValues {
    pub a: f64,
    pub da: f64,
    pub dda: f64,
}

pub fn a_eval(zeta: f64, c: f64, r1: f64, r2: f64) -> AValues {
    let f = 1.0 - zeta * zeta;
    let df = -2.0 * zeta;
    let ddf = -2.0;
    let u = (c - r1 * zeta) / r2;
    let du = -r1 / r2;
    let g = 1.0 - u * u;
    let dg = -2.0 * u * du;
    let ddg = -2.0 * du * du;
    AValues {
        a: f * g,
        da: df * g + f * dg,
        dda: ddf * g + 2.0 * df * dg + f * ddg,
    }
}

/// `B(ζ) = (2A''A − A'²)/(4A^{3/2})`; `−∞` where `A ≤ 0`.
pub fn b_value(zeta: f64, c: f64, r1: f64, r2: f64) -> f64 {
    let AValues { a, da, dda } = a_eval(zeta, c, r1, r2);
    if a <= 0.0 {
        return f64::NEG_INFINITY;
    }
    (2.0 * dda * a - da * da) / (4.0 * a * a.sqrt())
}

/// Branch of the critical set, `ϑ = 0` or `ϑ = π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Zero,
    Pi,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Zero, Branch::Pi];

    pub fn angle(self) -> f64 {
        match self {
            Branch::Zero => 0.0,
            Branch::Pi => PI,
        }
    }

    pub fn cos(self) -> f64 {
        match self {
            Branch::Zero => 1.0,
            Branch::Pi => -1.0,
        }
    }
}

/// A regular level `J = c` of a system with `t₃ ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedContext {
    params: SystemParams,
    c: f64,
    bounds: Interval,
}

impl ReducedContext {
    pub fn new(params: SystemParams, c: f64) -> Result<Self> {
        if !params.reduction_valid() {
            return Err(Error::Precondition(
                "reduction by J requires t3 != 0".into(),
            ));
        }
        let bounds = reduced_bounds(c, params.r1(), params.r2())?;
        Ok(Self { params, c, bounds })
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn zeta_bounds(&self) -> Interval {
        self.bounds
    }

    pub fn a(&self, zeta: f64) -> AValues {
        a_eval(zeta, self.c, self.params.r1(), self.params.r2())
    }

    /// Reduced Hamiltonian on the closed interval, with `√A` clamped at zero.
    pub(crate) fn h_closed(&self, zeta: f64, cos_theta: f64) -> f64 {
        let p = &self.params;
        let (r1, r2, c) = (p.r1(), p.r2(), self.c);
        let lin = (p.t1() * r2 - p.t2() * r1 + p.t4() * c) / r2;
        let root = self.a(zeta).a.max(0.0).sqrt();
        p.t2() * c / r2 + lin * zeta - p.t4() * r1 / r2 * zeta * zeta + p.t3() * cos_theta * root
    }

    /// `g(ζ) = t₁R₂ − t₂R₁ + t₄c − 2t₄R₁ζ + t₃R₂ cos ϑ · A'/(2√A)`; `R₂·∂_ζH`.
    pub fn critical_residual(&self, zeta: f64, branch: Branch) -> f64 {
        let p = &self.params;
        let (r1, r2, c) = (p.r1(), p.r2(), self.c);
        let AValues { a, da, .. } = self.a(zeta);
        p.t1() * r2 - p.t2() * r1 + p.t4() * c - 2.0 * p.t4() * r1 * zeta
            + p.t3() * r2 * branch.cos() * da / (2.0 * a.sqrt())
    }

    /// Left-hand side `(2t₄R₁/(t₃R₂)) cos ϑ` of the rank-1 inequality.
    pub fn criterion_lhs(&self, branch: Branch) -> f64 {
        let p = &self.params;
        2.0 * p.t4() * p.r1() / (p.t3() * p.r2()) * branch.cos()
    }
}

pub fn reduced_h(zeta: f64, vartheta: f64, ctx: &ReducedContext) -> Result<f64> {
    if !ctx.bounds.contains_open(zeta) {
        return Err(Error::Domain(format!(
            "zeta = {zeta} outside ({}, {})",
            ctx.bounds.lo(),
            ctx.bounds.hi()
        )));
    }
    Ok(ctx.h_closed(zeta, vartheta.cos()))
}

/// Scan resolution and tolerances for [`critical_zeta`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub scan_n: usize,
    pub tol: f64,
    pub collar: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            scan_n: DEFAULT_SCAN_N,
            tol: DEFAULT_ROOT_TOL,
            collar: ENDPOINT_COLLAR,
        }
    }
}

/// Roots of the critical equation on one branch, ascending, strictly inside the bounds.
pub fn critical_zeta(ctx: &ReducedContext, branch: Branch, opts: ScanOptions) -> Vec<f64> {
    let lo = ctx.bounds.lo() + opts.collar;
    let hi = ctx.bounds.hi() - opts.collar;
    if !(lo < hi) {
        return Vec::new();
    }
    scan_roots_with_residual(
        |z| ctx.critical_residual(z, branch),
        lo,
        hi,
        opts.scan_n,
        opts.tol,
        ROOT_RESIDUAL_TARGET,
    )
    .into_iter()
    .filter(|z| ctx.bounds.contains_open(*z))
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rank1Kind {
    EllipticRegular,
    HyperbolicRegular,
    Degenerate,
}

impl fmt::Display for Rank1Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rank1Kind::EllipticRegular => "ER",
            Rank1Kind::HyperbolicRegular => "HR",
            Rank1Kind::Degenerate => "DEG",
        })
    }
}

/// A classified critical point of the reduced Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rank1Point {
    pub zeta: f64,
    pub vartheta: f64,
    pub c: f64,
    pub h_value: f64,
    pub kind: Rank1Kind,
}

pub fn classify_rank1(zeta: f64, branch: Branch, ctx: &ReducedContext) -> Result<Rank1Point> {
    let h_value = reduced_h(zeta, branch.angle(), ctx)?;
    let residual = ctx.critical_residual(zeta, branch).abs();
    if !(residual <= RESIDUAL_GATE) {
        return Err(Error::Residual {
            residual,
            gate: RESIDUAL_GATE,
        });
    }
    let lhs = ctx.criterion_lhs(branch);
    let b = b_value(zeta, ctx.c, ctx.params.r1(), ctx.params.r2());
    let kind = if (lhs - b).abs() <= DEGENERACY_REL * b.abs().max(1.0) {
        Rank1Kind::Degenerate
    } else if lhs > b {
        Rank1Kind::EllipticRegular
    } else {
        Rank1Kind::HyperbolicRegular
    };
    Ok(Rank1Point {
        zeta,
        vartheta: branch.angle(),
        c: ctx.c,
        h_value,
        kind,
    })
}

/// All classified rank-1 points on the level `c`, branch `ϑ = 0` first.
pub fn rank1_points(ctx: &ReducedContext, opts: ScanOptions) -> Result<Vec<Rank1Point>> {
    let mut out = Vec::new();
    for branch in Branch::BOTH {
        for zeta in critical_zeta(ctx, branch, opts) {
            out.push(classify_rank1(zeta, branch, ctx)?);
        }
    }
    Ok(out)
}

/// Grid maximum of `B` with its location.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BMax {
    pub value: f64,
    pub zeta: f64,
    pub c: f64,
}

/// Maximum of `B(ζ, c)` over an interior `grid_n × grid_n` grid of the
/// admissible region. Grid `k` uses the points `lo + (hi−lo)(i+1)/(grid_n+1)`,
/// so the grid for `2·grid_n + 1` contains the grid for `grid_n`.
pub fn b_max_over_domain(r1: f64, r2: f64, grid_n: usize) -> Result<BMax> {
    if grid_n < 100 {
        return Err(Error::Precondition(format!(
            "grid_n must be at least 100 (got {grid_n})"
        )));
    }
    if !(0.0 < r1 && r1 < r2) {
        return Err(Error::InvalidParams(format!(
            "radii must satisfy 0 < R1 < R2 (got {r1}, {r2})"
        )));
    }
    let jmax = r1 + r2;
    let frac = |i: usize| (i + 1) as f64 / (grid_n + 1) as f64;
    let best = (0..grid_n)
        .into_par_iter()
        .map(|i| {
            let c = -jmax + 2.0 * jmax * frac(i);
            let lo = ((c - r2) / r1).max(-1.0);
            let hi = ((c + r2) / r1).min(1.0);
            let mut best = BMax {
                value: f64::NEG_INFINITY,
                zeta: f64::NAN,
                c,
            };
            for j in 0..grid_n {
                let zeta = lo + (hi - lo) * frac(j);
                let b = b_value(zeta, c, r1, r2);
                if b > best.value {
                    best.value = b;
                    best.zeta = zeta;
                }
            }
            best
        })
        .reduce_with(|a, b| if b.value > a.value { b } else { a })
        .expect("grid is nonempty");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_ctx(c: f64) -> ReducedContext {
        ReducedContext::new(SystemParams::reference(), c).unwrap()
    }

    #[test]
    fn a_examples() {
        assert_eq!(a_eval(0.0, 0.0, 1.0, 2.0).a, 1.0);
        for c in [-2.5, -0.3, 0.0, 1.7] {
            assert_eq!(a_eval(1.0, c, 1.0, 2.0).a, 0.0);
        }
    }

    #[test]
    fn b_at_origin() {
        let av = a_eval(0.0, 0.0, 1.0, 2.0);
        assert_eq!(av.da, 0.0);
        assert_eq!(av.dda, -2.5);
        assert_eq!(b_value(0.0, 0.0, 1.0, 2.0), -1.25);
    }

    #[test]
    fn reduced_h_examples() {
        let ctx = reference_ctx(0.0);
        let h = reduced_h(0.0, PI / 2.0, &ctx).unwrap();
        assert!(h.abs() < 1e-16);
        let ctx = reference_ctx(0.4);
        let a = reduced_h(0.3, 0.0, &ctx).unwrap();
        let b = reduced_h(0.3, std::f64::consts::TAU, &ctx).unwrap();
        assert!((a - b).abs() < 1e-15);
        assert!(reduced_h(1.0, 0.0, &ctx).is_err());
    }

    #[test]
    fn toric_corner_has_no_reduction() {
        let p = SystemParams::from_reals(1.0, 2.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            ReducedContext::new(p, 0.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn symmetric_root_at_zero() {
        // t4 = 0, t1R2 = t2R1, c = 0: g(ζ) = t3R2·A'/(2√A) with A'(0) = 0
        let p = SystemParams::from_reals(1.0, 2.0, 0.25, 0.5, 0.7, 0.0).unwrap();
        let ctx = ReducedContext::new(p, 0.0).unwrap();
        let roots = critical_zeta(&ctx, Branch::Zero, ScanOptions::default());
        assert!(roots.iter().any(|z| z.abs() < 1e-12), "{roots:?}");
    }

    #[test]
    fn reference_level_zero_root() {
        // Dense mpmath scan (20000 cells + root polish) of 1/4 + A'/(2√A) on (−1,1).
        let ctx = reference_ctx(0.0);
        let roots = critical_zeta(&ctx, Branch::Zero, ScanOptions::default());
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 0.198_181_774_167_787_68).abs() < 1e-11);
        let pt = classify_rank1(roots[0], Branch::Zero, &ctx).unwrap();
        assert_eq!(pt.kind, Rank1Kind::EllipticRegular);
        assert!((pt.h_value - 0.512_443_366_734_156_9).abs() < 1e-11);

        let roots = critical_zeta(&ctx, Branch::Pi, ScanOptions::default());
        assert_eq!(roots.len(), 1);
        assert!((roots[0] + 0.198_181_774_167_787_68).abs() < 1e-11);
    }

    #[test]
    fn non_critical_point_is_rejected() {
        let ctx = reference_ctx(0.0);
        assert!(matches!(
            classify_rank1(0.5, Branch::Zero, &ctx),
            Err(Error::Residual { .. })
        ));
    }

    #[test]
    fn b_max_rejects_coarse_grid() {
        assert!(b_max_over_domain(1.0, 2.0, 50).is_err());
    }
}
