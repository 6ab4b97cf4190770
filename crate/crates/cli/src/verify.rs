//! Built-in numerical checks behind `semitoric verify`.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use semitoric_core::atlas::{degenerate_on_diagonal, ff_count_map, gamma_curves, s_params};
use semitoric_core::geometry::omega_inverse_chart;
use semitoric_core::rank1::rank1_points;
use semitoric_core::spectral::{charpoly_coefficients, delta_sign, DeltaSign};
use semitoric_core::system::{ham_vector_fields, momentum_map_chart, poisson_bracket_jh};
use semitoric_core::{
    b_max_over_domain, char_poly_coeffs, classify_fixed_points, hessian_operators, BlockType,
    ChartPoint, PoleLabel, Rank1Kind, ReducedContext, ScanOptions, Sign, SystemParams,
};

use crate::config::{CommandKind, CommonArgs, Fault};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Pass when `value ≤ limit`.
    AtMost,
    /// Pass when `value < limit`.
    Below,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
    pub bound: Bound,
}

impl Check {
    fn new(name: &'static str, value: f64, bound: Bound, limit: f64) -> Self {
        Self {
            name,
            value,
            limit,
            bound,
        }
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.value <= self.limit,
            Bound::Below => self.value < self.limit,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let op = match self.bound {
            Bound::AtMost => "<=",
            Bound::Below => "<",
        };
        write!(
            f,
            "{status} {:<22} {:>12.4e}  (need {op} {:.4e})",
            self.name, self.value, self.limit
        )
    }
}

/// Sample sizes for one run.
#[derive(Debug, Clone, Copy)]
struct Sizes {
    bracket_params: usize,
    bracket_points: usize,
    charpoly_cases: usize,
    b_grid: usize,
    s_grid: usize,
    c_values: usize,
    gamma_grid: usize,
    ff_grid: usize,
    fd_points: usize,
    sweep_grid: usize,
}

const FULL: Sizes = Sizes {
    bracket_params: 20,
    bracket_points: 1000,
    charpoly_cases: 1000,
    b_grid: 2000,
    s_grid: 21,
    c_values: 51,
    gamma_grid: 512,
    ff_grid: 101,
    fd_points: 200,
    sweep_grid: 101,
};

const QUICK: Sizes = Sizes {
    bracket_params: 4,
    bracket_points: 250,
    charpoly_cases: 200,
    b_grid: 400,
    s_grid: 6,
    c_values: 11,
    gamma_grid: 128,
    ff_grid: 33,
    fd_points: 50,
    sweep_grid: 33,
};

fn random_params(rng: &mut StdRng) -> SystemParams {
    let r1 = rng.random_range(0.5..1.5);
    let r2 = r1 + rng.random_range(0.1..2.0);
    let mut t = || rng.random_range(-1.0..1.0);
    SystemParams::from_reals(r1, r2, t(), t(), t(), t()).expect("sampled radii are ordered")
}

fn random_sign(rng: &mut StdRng) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn random_chart_point(rng: &mut StdRng, max_r2: f64) -> ChartPoint {
    let mut disk = || {
        let r = rng.random_range(0.0..max_r2).sqrt();
        let phi = rng.random_range(0.0..std::f64::consts::TAU);
        (r * phi.cos(), r * phi.sin())
    };
    let ((x1, y1), (x2, y2)) = (disk(), disk());
    let (e1, e2) = (random_sign(rng), random_sign(rng));
    ChartPoint::new(e1, e2, x1, y1, x2, y2).expect("sampled inside the disk")
}

fn reference_types(fault: Option<Fault>) -> f64 {
    let params = SystemParams::reference();
    let expected = [
        BlockType::EllipticElliptic,
        BlockType::FocusFocus,
        BlockType::FocusFocus,
        BlockType::EllipticElliptic,
    ];
    let reports = classify_fixed_points(&params);
    let mut mismatches = 0;
    for (r, want) in reports.iter().zip(expected) {
        let b = char_poly_coeffs(&hessian_operators(
            r.label.signs().0,
            r.label.signs().1,
            &params,
        ))
        .b;
        let delta = match fault {
            Some(Fault::DeltaSign) => -r.discriminant,
            None => r.discriminant,
        };
        let predicts_ff = delta_sign(delta, b) == DeltaSign::Negative;
        if predicts_ff != (want == BlockType::FocusFocus) || r.block_type != want || r.degenerate {
            mismatches += 1;
        }
    }
    mismatches as f64
}

fn reference_eigenvalues() -> (f64, f64) {
    let reports = classify_fixed_points(&SystemParams::reference());
    let r33 = 33f64.sqrt();
    let want = [
        ((21.0 - 3.0 * r33) / 2.0).sqrt() / 8.0,
        ((21.0 + 3.0 * r33) / 2.0).sqrt() / 8.0,
    ];
    let nn = &reports[0];
    let mut got: Vec<f64> = nn.eigenvalues.iter().map(|z| z.im.abs()).collect();
    got.sort_by(f64::total_cmp);
    let mut err = nn
        .eigenvalues
        .iter()
        .map(|z| z.re.abs())
        .fold(0.0, f64::max);
    for (k, g) in got.iter().enumerate() {
        err = err.max((g - want[k / 2]).abs());
    }
    let modulus = (5.0f64 / 32.0).sqrt();
    let ns = reports
        .iter()
        .find(|r| r.label == PoleLabel::NS)
        .expect("four labels");
    let ff_err = ns
        .eigenvalues
        .iter()
        .map(|z| (z.norm() - modulus).abs())
        .fold(0.0, f64::max);
    (err, ff_err)
}

fn bracket(sizes: Sizes, rng: &mut StdRng) -> f64 {
    let mut worst: f64 = 0.0;
    for _ in 0..sizes.bracket_params {
        let params = random_params(rng);
        for _ in 0..sizes.bracket_points {
            let p = random_chart_point(rng, 0.9);
            worst = worst.max(poisson_bracket_jh(&p, &params).abs());
        }
    }
    worst
}

fn charpoly(sizes: Sizes, rng: &mut StdRng) -> f64 {
    let mut worst: f64 = 0.0;
    for _ in 0..sizes.charpoly_cases {
        let params = random_params(rng);
        let pair = hessian_operators(random_sign(rng), random_sign(rng), &params);
        let q = char_poly_coeffs(&pair);
        let [a3, a2, a1, a0] = charpoly_coefficients(&pair.ah);
        worst = worst
            .max(a3.abs())
            .max(a1.abs())
            .max((a2 - q.b).abs())
            .max((a0 - q.c).abs());
    }
    worst
}

fn diagonal_roots() -> f64 {
    let r5 = 5f64.sqrt();
    let want = [
        (-8.0 * r5 + 14.0 + (82.0 + 24.0 * r5).sqrt()) / 31.0,
        (8.0 * r5 + 14.0 - (82.0 - 24.0 * r5).sqrt()) / 31.0,
    ];
    match degenerate_on_diagonal(1.0, 2.0) {
        Ok(roots) if roots.len() == 2 => roots
            .iter()
            .zip(want)
            .map(|(r, w)| (r - w).abs())
            .fold(0.0, f64::max),
        _ => f64::INFINITY,
    }
}

fn s_family_non_elliptic(sizes: Sizes) -> f64 {
    let n = sizes.s_grid;
    let mut bad = 0usize;
    for i in 0..n {
        for j in 0..n {
            let (s1, s2) = (i as f64 / (n - 1) as f64, j as f64 / (n - 1) as f64);
            let params = match s_params(1.0, 2.0, s1, s2) {
                Ok(p) if p.reduction_valid() => p,
                Ok(_) => continue,
                Err(_) => return f64::INFINITY,
            };
            let jmax = params.j_max();
            for k in 0..sizes.c_values {
                let c = -jmax + 2.0 * jmax * (k + 1) as f64 / (sizes.c_values + 1) as f64;
                let points = ReducedContext::new(params, c)
                    .and_then(|ctx| rank1_points(&ctx, ScanOptions::default()));
                match points {
                    Ok(points) => {
                        bad += points
                            .iter()
                            .filter(|p| p.kind != Rank1Kind::EllipticRegular)
                            .count()
                    }
                    Err(_) => bad += 1,
                }
            }
        }
    }
    bad as f64
}

fn gamma_consistency(sizes: Sizes) -> f64 {
    let (Ok(map), Ok(curves)) = (
        ff_count_map(1.0, 2.0, sizes.ff_grid),
        gamma_curves(1.0, 2.0, sizes.gamma_grid, 1e-10),
    ) else {
        return f64::INFINITY;
    };
    let last = map.grid_n - 1;
    let corners = [(0, 0), (0, last), (last, 0), (last, last)]
        .iter()
        .filter(|&&(i, j)| map.get(i, j).count != 0)
        .count();
    let (ci, cj) = map.cell_of(0.5, 0.5);
    let center = usize::from(map.get(ci, cj).count != 2);
    (map.unexplained_transitions(&curves).len() + corners + center) as f64
}

fn vector_fields(sizes: Sizes, rng: &mut StdRng) -> f64 {
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for _ in 0..sizes.fd_points {
        let params = random_params(rng);
        let p = random_chart_point(rng, 0.8);
        let (xj, xh) = ham_vector_fields(&p, &params);
        let winv = omega_inverse_chart(&p, params.r1(), params.r2());
        let x = p.coords();
        let grad = |which: usize| {
            let mut g = [0.0; 4];
            for (i, gi) in g.iter_mut().enumerate() {
                let (mut up, mut down) = (x, x);
                up[i] += h;
                down[i] -= h;
                let f = |c: [f64; 4]| {
                    let v = momentum_map_chart(
                        &p.with_coords(c).expect("step stays in the disk"),
                        &params,
                    );
                    if which == 0 {
                        v.j
                    } else {
                        v.h
                    }
                };
                *gi = (f(up) - f(down)) / (2.0 * h);
            }
            g
        };
        for (which, field) in [(0, xj), (1, xh)] {
            let g = grad(which);
            for i in 0..4 {
                let oracle: f64 = (0..4).map(|k| winv[(i, k)] * g[k]).sum();
                worst = worst.max((oracle - field[i]).abs());
            }
        }
    }
    worst
}

fn sweep_determinism(sizes: Sizes) -> f64 {
    let args = CommonArgs {
        grid: Some(sizes.sweep_grid),
        ..Default::default()
    };
    let render = || -> anyhow::Result<Vec<u8>> {
        let cfg = crate::config::resolve(CommandKind::Sweep, &args)?;
        crate::output::render(&crate::commands::cmd_sweep(&cfg)?, &cfg)
    };
    match (render(), render()) {
        (Ok(a), Ok(b)) if a == b => 0.0,
        _ => 1.0,
    }
}

/// Runs every check in a fixed order.
pub fn run_checks(quick: bool, fault: Option<Fault>) -> Vec<Check> {
    let sizes = if quick { QUICK } else { FULL };
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (eig, ff) = reference_eigenvalues();
    let b_max = b_max_over_domain(1.0, 2.0, sizes.b_grid).map_or(f64::INFINITY, |b| b.value);
    vec![
        Check::new(
            "reference-types",
            reference_types(fault),
            Bound::AtMost,
            0.0,
        ),
        Check::new("nn-eigenvalues", eig, Bound::AtMost, 1e-10),
        Check::new("ns-ff-modulus", ff, Bound::AtMost, 1e-10),
        Check::new(
            "bracket-vanishes",
            bracket(sizes, &mut rng),
            Bound::Below,
            1e-10,
        ),
        Check::new(
            "charpoly-formula",
            charpoly(sizes, &mut rng),
            Bound::AtMost,
            1e-10,
        ),
        Check::new("diagonal-roots", diagonal_roots(), Bound::AtMost, 1e-9),
        Check::new("rank1-b-bound", b_max, Bound::AtMost, -1.06),
        Check::new(
            "s-family-elliptic",
            s_family_non_elliptic(sizes),
            Bound::AtMost,
            0.0,
        ),
        Check::new(
            "gamma-transitions",
            gamma_consistency(sizes),
            Bound::AtMost,
            0.0,
        ),
        Check::new(
            "fd-vector-fields",
            vector_fields(sizes, &mut rng),
            Bound::AtMost,
            1e-6,
        ),
        Check::new(
            "sweep-deterministic",
            sweep_determinism(sizes),
            Bound::AtMost,
            0.0,
        ),
    ]
}
