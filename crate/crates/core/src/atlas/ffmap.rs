//! Focus-focus counts over the weight square.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{s_params, unit_node, ImplicitCurve, MIN_FF_GRID};
use crate::error::{Error, Result};
use crate::rank0::{ff_count, FfCount};
use crate::system::SystemParams;

/// `grid_n × grid_n` samples at the nodes `(i/(n−1), j/(n−1))`, stored
/// row-major with `s₁` as the slow index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FfCountMap {
    pub grid_n: usize,
    pub cells: Vec<FfCount>,
}

/// Two horizontally or vertically adjacent cells with different counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub from: (usize, usize),
    pub to: (usize, usize),
}

impl FfCountMap {
    pub fn node(&self, i: usize) -> f64 {
        unit_node(i, self.grid_n)
    }

    pub fn get(&self, i: usize, j: usize) -> FfCount {
        self.cells[i * self.grid_n + j]
    }

    /// Cell index containing `(s₁,s₂)`.
    pub fn cell_of(&self, s1: f64, s2: f64) -> (usize, usize) {
        let h = (self.grid_n - 1) as f64;
        let idx = |s: f64| ((s * h).round() as usize).min(self.grid_n - 1);
        (idx(s1), idx(s2))
    }

    pub fn transitions(&self) -> Vec<Transition> {
        let n = self.grid_n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let here = self.get(i, j).count;
                if i + 1 < n && self.get(i + 1, j).count != here {
                    out.push(Transition {
                        from: (i, j),
                        to: (i + 1, j),
                    });
                }
                if j + 1 < n && self.get(i, j + 1).count != here {
                    out.push(Transition {
                        from: (i, j),
                        to: (i, j + 1),
                    });
                }
            }
        }
        out
    }

    /// Transitions whose pair of cells is met by none of `curves`.
    ///
    /// A cell is the square of side `1/(n−1)` centered on its node.
    pub fn unexplained_transitions(&self, curves: &[ImplicitCurve]) -> Vec<Transition> {
        let half = 0.5 / (self.grid_n - 1) as f64;
        self.transitions()
            .into_iter()
            .filter(|t| {
                let (a, b) = (t.from, t.to);
                let lo = (
                    self.node(a.0.min(b.0)) - half,
                    self.node(a.1.min(b.1)) - half,
                );
                let hi = (
                    self.node(a.0.max(b.0)) + half,
                    self.node(a.1.max(b.1)) + half,
                );
                !curves.iter().any(|c| c.meets_box(lo, hi))
            })
            .collect()
    }
}

pub fn ff_count_map(r1: f64, r2: f64, grid_n: usize) -> Result<FfCountMap> {
    SystemParams::from_reals(r1, r2, 0.0, 0.0, 0.0, 0.0)?;
    if grid_n < MIN_FF_GRID {
        return Err(Error::Precondition(format!(
            "grid_n must be at least {MIN_FF_GRID} (got {grid_n})"
        )));
    }
    let cells = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / grid_n, k % grid_n);
            let p = s_params(r1, r2, unit_node(i, grid_n), unit_node(j, grid_n))?;
            Ok(ff_count(&p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FfCountMap { grid_n, cells })
}
