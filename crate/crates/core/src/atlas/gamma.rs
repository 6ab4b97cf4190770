//! Zero sets of the `(N,S)` and `(S,N)` discriminants over the weight square.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{s_sign_field, unit_node, MIN_GAMMA_GRID};
use crate::error::{Error, Result};
use crate::geometry::Sign;
use crate::roots::{bisect, scan_roots};
use crate::system::SystemParams;

const DIAGONAL_SCAN_N: usize = 4096;
const DIAGONAL_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveKind {
    GammaNS,
    GammaSN,
}

impl CurveKind {
    pub const BOTH: [CurveKind; 2] = [CurveKind::GammaNS, CurveKind::GammaSN];

    pub fn signs(self) -> (Sign, Sign) {
        match self {
            CurveKind::GammaNS => (Sign::Plus, Sign::Minus),
            CurveKind::GammaSN => (Sign::Minus, Sign::Plus),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::GammaNS => "NS",
            CurveKind::GammaSN => "SN",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A traced polyline in the `(s₁,s₂)` square. Closed loops repeat their first point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImplicitCurve {
    pub which: CurveKind,
    pub points: Vec<(f64, f64)>,
}

impl ImplicitCurve {
    /// Parameters `s` where the polyline meets the diagonal `s₁ = s₂`.
    pub fn diagonal_crossings(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let n = self.points.len();
        for (k, &(a1, a2)) in self.points.iter().enumerate() {
            let da = a1 - a2;
            let closing_repeat = k + 1 == n && n > 1 && self.points[0] == self.points[n - 1];
            if da == 0.0 && !closing_repeat {
                out.push(a1);
            }
            if let Some(&(b1, b2)) = self.points.get(k + 1) {
                let db = b1 - b2;
                if da * db < 0.0 {
                    let t = da / (da - db);
                    out.push(a1 + t * (b1 - a1));
                }
            }
        }
        out
    }

    /// Whether any vertex or segment of the polyline touches the closed box.
    pub fn meets_box(&self, lo: (f64, f64), hi: (f64, f64)) -> bool {
        let inside = |p: (f64, f64)| lo.0 <= p.0 && p.0 <= hi.0 && lo.1 <= p.1 && p.1 <= hi.1;
        if self.points.iter().any(|&p| inside(p)) {
            return true;
        }
        self.points
            .windows(2)
            .any(|w| segment_meets_box(w[0], w[1], lo, hi))
    }
}

// Liang–Barsky clip of a segment against an axis-aligned box.
fn segment_meets_box(a: (f64, f64), b: (f64, f64), lo: (f64, f64), hi: (f64, f64)) -> bool {
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    let d = (b.0 - a.0, b.1 - a.1);
    for (p, q) in [
        (-d.0, a.0 - lo.0),
        (d.0, hi.0 - a.0),
        (-d.1, a.1 - lo.1),
        (d.1, hi.1 - a.1),
    ] {
        if p == 0.0 {
            if q < 0.0 {
                return false;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
            if t0 > t1 {
                return false;
            }
        }
    }
    true
}

// Horizontal edges join (i,j)-(i+1,j); vertical edges join (i,j)-(i,j+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

fn validate(r1: f64, r2: f64) -> Result<()> {
    SystemParams::from_reals(r1, r2, 0.0, 0.0, 0.0, 0.0).map(|_| ())
}

/// Traces `Δ_{(s,e)} = 0` for `e = (+,−)` and `e = (−,+)` by marching squares
/// on a `grid_n × grid_n` node grid.
///
/// The sign field is the factor `d` of `Δ = d·τ²`, so only genuine sign
/// changes of `Δ` are traced. Edge crossings are refined by bisection to
/// `refine_tol`, saddle cells are resolved by the sign at the cell center,
/// and each place a polyline meets the diagonal gets an exact vertex.
/// Curves are ordered `NS` first, then by their first edge on the grid.
pub fn gamma_curves(
    r1: f64,
    r2: f64,
    grid_n: usize,
    refine_tol: f64,
) -> Result<Vec<ImplicitCurve>> {
    validate(r1, r2)?;
    if grid_n < MIN_GAMMA_GRID {
        return Err(Error::Precondition(format!(
            "grid_n must be at least {MIN_GAMMA_GRID} (got {grid_n})"
        )));
    }
    if !(refine_tol > 0.0) {
        return Err(Error::Precondition("refine_tol must be positive".into()));
    }
    let mut out = Vec::new();
    for which in CurveKind::BOTH {
        out.extend(trace(r1, r2, grid_n, refine_tol, which));
    }
    Ok(out)
}

fn trace(r1: f64, r2: f64, n: usize, tol: f64, which: CurveKind) -> Vec<ImplicitCurve> {
    let (e1, e2) = which.signs();
    let field = |s1: f64, s2: f64| s_sign_field((r1, r2), s1, s2, e1, e2);
    let node = |i: usize| unit_node(i, n);

    let values: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| field(node(i), node(j))).collect())
        .collect();
    let pos = |i: usize, j: usize| values[i][j] >= 0.0;

    let crosses = |e: Edge| match e {
        Edge::H(i, j) => pos(i, j) != pos(i + 1, j),
        Edge::V(i, j) => pos(i, j) != pos(i, j + 1),
    };

    let mut segments: Vec<(Edge, Edge)> = Vec::new();
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let bottom = Edge::H(i, j);
            let right = Edge::V(i + 1, j);
            let top = Edge::H(i, j + 1);
            let left = Edge::V(i, j);
            let hit: Vec<Edge> = [bottom, right, top, left]
                .into_iter()
                .filter(|&e| crosses(e))
                .collect();
            match hit.len() {
                2 => segments.push((hit[0], hit[1])),
                4 => {
                    let center =
                        field(0.5 * (node(i) + node(i + 1)), 0.5 * (node(j) + node(j + 1)));
                    if (center >= 0.0) == pos(i, j) {
                        segments.push((bottom, right));
                        segments.push((top, left));
                    } else {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    }
                }
                _ => {}
            }
        }
    }

    let edges: BTreeSet<Edge> = segments.iter().flat_map(|&(a, b)| [a, b]).collect();
    let edges: Vec<Edge> = edges.into_iter().collect();
    let located: BTreeMap<Edge, (f64, f64)> = edges
        .par_iter()
        .map(|&e| {
            let p = match e {
                Edge::H(i, j) => {
                    let s2 = node(j);
                    (bisect(|x| field(x, s2), node(i), node(i + 1), tol), s2)
                }
                Edge::V(i, j) => {
                    let s1 = node(i);
                    (s1, bisect(|y| field(s1, y), node(j), node(j + 1), tol))
                }
            };
            (e, p)
        })
        .collect();

    let mut adj: BTreeMap<Edge, Vec<Edge>> = BTreeMap::new();
    for &(a, b) in &segments {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }

    let mut visited: BTreeSet<Edge> = BTreeSet::new();
    let mut chains: Vec<Vec<Edge>> = Vec::new();
    let starts: Vec<Edge> = adj
        .iter()
        .filter(|(_, v)| v.len() == 1)
        .map(|(k, _)| *k)
        .chain(adj.keys().copied())
        .collect();
    for start in starts {
        if visited.contains(&start) {
            continue;
        }
        let mut chain = vec![start];
        visited.insert(start);
        let mut cur = start;
        while let Some(&next) = adj[&cur].iter().find(|e| !visited.contains(e)) {
            visited.insert(next);
            chain.push(next);
            cur = next;
        }
        if chain.len() > 2 && adj[&cur].contains(&start) {
            chain.push(start);
        }
        chains.push(chain);
    }

    let cell = 1.0 / (n - 1) as f64;
    chains
        .into_iter()
        .map(|chain| {
            let raw: Vec<(f64, f64)> = chain.iter().map(|e| located[e]).collect();
            let points = insert_diagonal_vertices(&raw, cell, tol, |s| field(s, s));
            ImplicitCurve { which, points }
        })
        .collect()
}

fn insert_diagonal_vertices<F: Fn(f64) -> f64>(
    raw: &[(f64, f64)],
    cell: f64,
    tol: f64,
    diag: F,
) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(raw.len() + 2);
    for (k, &a) in raw.iter().enumerate() {
        out.push(a);
        let Some(&b) = raw.get(k + 1) else { break };
        let (da, db) = (a.0 - a.1, b.0 - b.1);
        if da * db >= 0.0 {
            continue;
        }
        let t = da / (da - db);
        let guess = a.0 + t * (b.0 - a.0);
        let lo = (guess - cell).max(0.0);
        let hi = (guess + cell).min(1.0);
        let (flo, fhi) = (diag(lo), diag(hi));
        if flo != 0.0 && fhi != 0.0 && flo.signum() != fhi.signum() {
            let s = bisect(&diag, lo, hi, tol);
            out.push((s, s));
        }
    }
    out
}

/// Zeros of `s ↦ Δ_{(s,s),(−,+)}` in `(0,1)`, ascending.
///
/// Located as sign changes of the factor `d` on a uniform scan and refined
/// by bisection well below `1e-10`.
pub fn degenerate_on_diagonal(r1: f64, r2: f64) -> Result<Vec<f64>> {
    validate(r1, r2)?;
    let f = |s: f64| s_sign_field((r1, r2), s, s, Sign::Minus, Sign::Plus);
    Ok(scan_roots(f, 0.0, 1.0, DIAGONAL_SCAN_N, DIAGONAL_TOL)
        .into_iter()
        .filter(|&s| 0.0 < s && s < 1.0)
        .collect())
}
