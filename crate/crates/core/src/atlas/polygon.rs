//! Vertices of the four representative semitoric polygons.
//!
//! Each polygon is the region between a lower and an upper piecewise-linear
//! chain over `[−R₁−R₂, R₁+R₂]` with breaks at `±R₁±R₂`. With both cuts
//! pointing up the lower chain is flat and the upper one rises with slope 1,
//! is flat above the two focus-focus values and falls with slope −1. Turning
//! a cut downwards adds 1 to the slope of both chains to the right of it,
//! which leaves the vertical widths (and so the area) unchanged. A common
//! shear then brings all slopes back into `[−1, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::Sign;
use crate::system::SystemParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonSketch {
    /// Cut directions at `R₁−R₂` and `R₂−R₁`; `Plus` points up.
    pub cuts: (Sign, Sign),
    /// Counterclockwise, starting from the lowest-then-leftmost vertex.
    pub vertices: Vec<(f64, f64)>,
}

impl PolygonSketch {
    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        0.5 * (0..n)
            .map(|k| {
                let (a, b) = (v[k], v[(k + 1) % n]);
                a.0 * b.1 - b.0 * a.1
            })
            .sum::<f64>()
    }

    pub fn edge_slopes(&self) -> Vec<f64> {
        let v = &self.vertices;
        let n = v.len();
        (0..n)
            .filter_map(|k| {
                let (a, b) = (v[k], v[(k + 1) % n]);
                (a.0 != b.0).then(|| (b.1 - a.1) / (b.0 - a.0))
            })
            .collect()
    }
}

/// The polygons for cut signs `(+,+)`, `(+,−)`, `(−,+)`, `(−,−)`, in that order.
pub fn semitoric_polygon(r1: f64, r2: f64) -> Result<Vec<PolygonSketch>> {
    SystemParams::from_reals(r1, r2, 0.0, 0.0, 0.0, 0.0)?;
    let xs = [-r1 - r2, r1 - r2, r2 - r1, r1 + r2];
    let mut out = Vec::with_capacity(4);
    for cuts in [
        (Sign::Plus, Sign::Plus),
        (Sign::Plus, Sign::Minus),
        (Sign::Minus, Sign::Plus),
        (Sign::Minus, Sign::Minus),
    ] {
        let mut lower = [0i32, 0, 0];
        let mut upper = [1i32, 0, -1];
        for (cut_at, sign) in [(1usize, cuts.0), (2, cuts.1)] {
            if sign == Sign::Minus {
                for seg in cut_at..3 {
                    lower[seg] += 1;
                    upper[seg] += 1;
                }
            }
        }
        let shear = pick_shear(&lower, &upper);
        let lower = lower.map(|m| m - shear);
        let upper = upper.map(|m| m - shear);

        let lo_pts = chain(&xs, &lower);
        let up_pts = chain(&xs, &upper);
        let y_min = lo_pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);

        // lower chain left to right, then upper chain right to left
        let mut ring: Vec<(f64, f64)> = lo_pts.clone();
        ring.extend(up_pts.iter().rev().skip(1).take(up_pts.len() - 2));
        let ring: Vec<(f64, f64)> = ring.into_iter().map(|(x, y)| (x, y - y_min)).collect();
        out.push(PolygonSketch {
            cuts,
            vertices: start_lowest(drop_collinear(ring)),
        });
    }
    Ok(out)
}

// Smallest |k| keeping every slope minus k inside [−1, 1]; ties go to the smaller k.
fn pick_shear(lower: &[i32; 3], upper: &[i32; 3]) -> i32 {
    let all = lower.iter().chain(upper.iter());
    let lo = all.clone().max().unwrap() - 1;
    let hi = all.min().unwrap() + 1;
    (lo..=hi)
        .min_by_key(|k| (k.abs(), *k))
        .expect("slopes of both chains differ by at most two")
}

fn chain(xs: &[f64; 4], slopes: &[i32; 3]) -> Vec<(f64, f64)> {
    let mut pts = vec![(xs[0], 0.0)];
    for k in 0..3 {
        let (x, y) = pts[k];
        pts.push((xs[k + 1], y + slopes[k] as f64 * (xs[k + 1] - x)));
    }
    pts
}

fn drop_collinear(ring: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let n = ring.len();
    (0..n)
        .filter(|&k| {
            let (a, b, c) = (ring[(k + n - 1) % n], ring[k], ring[(k + 1) % n]);
            let cross = (b.0 - a.0) * (c.1 - b.1) - (b.1 - a.1) * (c.0 - b.0);
            cross.abs() > 1e-12 * (1.0 + b.0.abs() + b.1.abs())
        })
        .map(|k| ring[k])
        .collect()
}

fn start_lowest(mut v: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let k = (0..v.len())
        .min_by(|&a, &b| v[a].1.total_cmp(&v[b].1).then(v[a].0.total_cmp(&v[b].0)))
        .unwrap_or(0);
    v.rotate_left(k);
    v
}
