//! Data behind a picture of the momentum image `F(S²×S²) ⊂ ℝ²`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{reduced_bounds, Sign};
use crate::rank0::{classify_fixed_points, PoleLabel};
use crate::rank1::{rank1_points, Branch, Rank1Kind, ReducedContext, ScanOptions};
use crate::spectral::BlockType;
use crate::system::SystemParams;

/// `[h_min, h_max]`, the image of the level `J = c` under `H`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeRow {
    pub c: f64,
    pub h_min: f64,
    pub h_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rank0Marker {
    pub label: PoleLabel,
    pub j: f64,
    pub h: f64,
    pub block_type: BlockType,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rank1Value {
    pub c: f64,
    pub h: f64,
    pub kind: Rank1Kind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumImage {
    /// One row per `c`, ascending, endpoints `±(R₁+R₂)` included.
    pub envelope: Vec<EnvelopeRow>,
    pub markers: [Rank0Marker; 4],
    /// Critical values of the reduced Hamiltonian, grouped by ascending `c`.
    pub rank1: Vec<Rank1Value>,
}

impl MomentumImage {
    pub fn c_values(&self) -> Vec<f64> {
        self.envelope.iter().map(|r| r.c).collect()
    }
}

/// `min` and `max` of `H` on `J = c`.
///
/// For `t₃ ≠ 0` the extremes sit on `ϑ ∈ {0, π}`; they are taken over
/// `zeta_grid_n` samples of the closed `ζ`-interval together with every
/// critical point found there. For `t₃ = 0` the reduced Hamiltonian is a
/// quadratic in `ζ` and the extremes are exact.
pub fn h_envelope(params: &SystemParams, c: f64, zeta_grid_n: usize) -> Result<(f64, f64)> {
    let jmax = params.j_max();
    if c.abs() > jmax {
        return Err(Error::Domain(format!("c = {c} outside [-{jmax}, {jmax}]")));
    }
    if c.abs() == jmax {
        let e = if c > 0.0 { Sign::Plus } else { Sign::Minus };
        let h = crate::system::momentum_map(&PoleLabel::from_signs(e, e).point(), params).h;
        return Ok((h, h));
    }
    let bounds = reduced_bounds(c, params.r1(), params.r2())?;
    if !params.reduction_valid() {
        return Ok(toric_extremes(params, c, bounds.lo(), bounds.hi()));
    }
    let ctx = ReducedContext::new(*params, c)?;
    let (lo, hi) = (bounds.lo(), bounds.hi());
    let mut h_min = f64::INFINITY;
    let mut h_max = f64::NEG_INFINITY;
    let mut take = |h: f64| {
        h_min = h_min.min(h);
        h_max = h_max.max(h);
    };
    let m = zeta_grid_n.max(2);
    for k in 0..m {
        let zeta = if k + 1 == m {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (m - 1) as f64
        };
        for branch in Branch::BOTH {
            take(ctx.h_closed(zeta, branch.cos()));
        }
    }
    for branch in Branch::BOTH {
        for zeta in crate::rank1::critical_zeta(&ctx, branch, ScanOptions::default()) {
            take(ctx.h_closed(zeta, branch.cos()));
        }
    }
    Ok((h_min, h_max))
}

fn toric_extremes(params: &SystemParams, c: f64, lo: f64, hi: f64) -> (f64, f64) {
    let (r1, r2) = (params.r1(), params.r2());
    let a0 = params.t2() * c / r2;
    let a1 = (params.t1() * r2 - params.t2() * r1 + params.t4() * c) / r2;
    let a2 = -params.t4() * r1 / r2;
    let h = |z: f64| a0 + a1 * z + a2 * z * z;
    let mut vals = vec![h(lo), h(hi)];
    if a2 != 0.0 {
        let v = -a1 / (2.0 * a2);
        if lo < v && v < hi {
            vals.push(h(v));
        }
    }
    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (min, max)
}

/// Envelope on `c_grid_n` equally spaced values of `J` (endpoints included),
/// the four fixed-point markers, and the rank-1 critical values on each
/// interior level. Systems with `t₃ = 0` carry no rank-1 values.
pub fn momentum_image(
    params: &SystemParams,
    c_grid_n: usize,
    zeta_grid_n: usize,
) -> Result<MomentumImage> {
    if c_grid_n < 2 || zeta_grid_n < 2 {
        return Err(Error::Precondition("grid sizes must be at least 2".into()));
    }
    let jmax = params.j_max();
    let c_at = |k: usize| {
        if k + 1 == c_grid_n {
            jmax
        } else {
            -jmax + 2.0 * jmax * k as f64 / (c_grid_n - 1) as f64
        }
    };
    let per_c = (0..c_grid_n)
        .into_par_iter()
        .map(|k| {
            let c = c_at(k);
            let (h_min, h_max) = h_envelope(params, c, zeta_grid_n)?;
            let mut values = Vec::new();
            if params.reduction_valid() && c.abs() < jmax {
                let ctx = ReducedContext::new(*params, c)?;
                for p in rank1_points(&ctx, ScanOptions::default())? {
                    values.push(Rank1Value {
                        c,
                        h: p.h_value,
                        kind: p.kind,
                    });
                }
            }
            Ok((EnvelopeRow { c, h_min, h_max }, values))
        })
        .collect::<Result<Vec<_>>>()?;

    let markers = classify_fixed_points(params).map(|r| Rank0Marker {
        label: r.label,
        j: r.j_value,
        h: r.h_value,
        block_type: r.block_type,
    });
    let mut envelope = Vec::with_capacity(c_grid_n);
    let mut rank1 = Vec::new();
    for (row, values) in per_c {
        envelope.push(row);
        rank1.extend(values);
    }
    Ok(MomentumImage {
        envelope,
        markers,
        rank1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_markers() {
        let img = momentum_image(&SystemParams::reference(), 21, 101).unwrap();
        let jh: Vec<(f64, f64)> = img.markers.iter().map(|m| (m.j, m.h)).collect();
        assert_eq!(jh, [(3.0, 0.5), (-1.0, 0.0), (1.0, 0.0), (-3.0, -0.5)]);
        let first = img.envelope.first().unwrap();
        let last = img.envelope.last().unwrap();
        assert_eq!((first.c, first.h_min, first.h_max), (-3.0, -0.5, -0.5));
        assert_eq!((last.c, last.h_min, last.h_max), (3.0, 0.5, 0.5));
    }

    #[test]
    fn focus_focus_values_are_interior() {
        let p = SystemParams::reference();
        for c in [-1.0, 1.0] {
            let (lo, hi) = h_envelope(&p, c, 1001).unwrap();
            assert!(lo < -1e-3 && hi > 1e-3, "c = {c}: [{lo}, {hi}]");
        }
    }

    #[test]
    fn toric_envelope_is_exact() {
        // H = z₁ at the (0,0) corner; on J = 0 the range of z₁ is [−1, 1]
        let p = SystemParams::from_reals(1.0, 2.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(h_envelope(&p, 0.0, 2).unwrap(), (-1.0, 1.0));
        let img = momentum_image(&p, 11, 11).unwrap();
        assert!(img.rank1.is_empty());
    }
}
