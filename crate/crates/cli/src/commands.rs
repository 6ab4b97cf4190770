//! One function per data-producing subcommand; each returns the finished table.

use anyhow::Result;
use semitoric_core::atlas::{ff_count_map, gamma_curves, momentum_image, semitoric_polygon};
use semitoric_core::{classify_fixed_points, Sign};

use crate::config::RunConfig;
use crate::output::{Cell, Table};

fn sign_cell(s: Sign) -> Cell {
    Cell::Int(if s == Sign::Plus { 1 } else { -1 })
}

/// The table and whether any fixed point was degenerate.
pub fn cmd_classify(cfg: &RunConfig) -> Result<(Table, bool)> {
    let params = cfg.params()?;
    let reports = classify_fixed_points(&params);
    let mut table = Table::new(vec![
        "label",
        "e1",
        "e2",
        "j",
        "h",
        "delta",
        "eig_re1",
        "eig_im1",
        "eig_re2",
        "eig_im2",
        "eig_re3",
        "eig_im3",
        "eig_re4",
        "eig_im4",
        "type",
        "degenerate",
    ]);
    for r in &reports {
        let (e1, e2) = r.label.signs();
        let mut row = vec![
            Cell::from(r.label.as_str()),
            sign_cell(e1),
            sign_cell(e2),
            r.j_value.into(),
            r.h_value.into(),
            r.discriminant.into(),
        ];
        for z in r.eigenvalues {
            row.push(z.re.into());
            row.push(z.im.into());
        }
        row.push(r.block_type.short().into());
        row.push(r.degenerate.into());
        table.push(row);
    }
    Ok((table, reports.iter().any(|r| r.degenerate)))
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<Table> {
    let map = ff_count_map(cfg.r1, cfg.r2, cfg.grid())?;
    let mut table = Table::new(vec!["s1", "s2", "count", "degenerate"]);
    for i in 0..map.grid_n {
        for j in 0..map.grid_n {
            let cell = map.get(i, j);
            table.push(vec![
                map.node(i).into(),
                map.node(j).into(),
                Cell::Int(cell.count.into()),
                cell.degenerate.into(),
            ]);
        }
    }
    Ok(table)
}

pub fn cmd_gamma(cfg: &RunConfig) -> Result<Table> {
    let curves = gamma_curves(cfg.r1, cfg.r2, cfg.grid(), cfg.tol)?;
    let mut table = Table::new(vec!["curve_id", "which", "s1", "s2"]);
    for (id, curve) in curves.iter().enumerate() {
        for &(s1, s2) in &curve.points {
            table.push(vec![
                id.into(),
                curve.which.as_str().into(),
                s1.into(),
                s2.into(),
            ]);
        }
    }
    Ok(table)
}

/// Envelope rows, then the four markers, then rank-1 critical values.
pub fn cmd_image(cfg: &RunConfig) -> Result<Table> {
    let params = cfg.params()?;
    let zeta_grid = cfg.zeta_grid.expect("zeta grid is set for image");
    let img = momentum_image(&params, cfg.grid(), zeta_grid)?;
    let mut table = Table::new(vec![
        "record", "c", "h_min", "h_max", "kind", "j", "h", "type",
    ]);
    let e = || Cell::Empty;
    for row in &img.envelope {
        table.push(vec![
            "envelope".into(),
            row.c.into(),
            row.h_min.into(),
            row.h_max.into(),
            e(),
            e(),
            e(),
            e(),
        ]);
    }
    for m in &img.markers {
        table.push(vec![
            "marker".into(),
            e(),
            e(),
            e(),
            m.label.as_str().into(),
            m.j.into(),
            m.h.into(),
            m.block_type.short().into(),
        ]);
    }
    for r in &img.rank1 {
        table.push(vec![
            "rank1".into(),
            r.c.into(),
            e(),
            e(),
            e(),
            r.c.into(),
            r.h.into(),
            r.kind.to_string().into(),
        ]);
    }
    Ok(table)
}

pub fn cmd_polygon(cfg: &RunConfig) -> Result<Table> {
    let polys = semitoric_polygon(cfg.r1, cfg.r2)?;
    let mut table = Table::new(vec!["polygon_id", "vx", "vy"]);
    for (id, p) in polys.iter().enumerate() {
        for &(x, y) in &p.vertices {
            table.push(vec![id.into(), x.into(), y.into()]);
        }
    }
    Ok(table)
}
