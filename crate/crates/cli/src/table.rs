//! Tabulation over grids. Points are evaluated in parallel; rows are kept in
//! grid order.

use airy_shift::greens::{greens_closed, scaled_vars, time_integral, GreensParams};
use airy_shift::sampling::disk_points;
use airy_shift::{Rotation, Route, ShiftedProducts};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::CliError;
use crate::eval::{self, Function, Point};
use crate::output::{Cell, Table};
use crate::run_config::RunConfig;

pub const DEFAULT_COUNT: usize = 50;

/// Where the `z` points of a product table come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZGrid {
    /// Evenly spaced real `z` from `lo` to `hi` inclusive.
    Line { lo: f64, hi: f64 },
    /// Seeded uniform sample of the disk `|z| <= z_max`.
    Disk,
}

pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("{s:?} is not of the form LO:HI"))?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
    if lo.is_finite() && hi.is_finite() && lo <= hi {
        Ok((lo, hi))
    } else {
        Err(format!("{s:?} must have finite LO <= HI"))
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// First failure in grid order, so the reported error does not depend on
/// scheduling.
fn in_order<T>(results: Vec<Result<T, CliError>>) -> Result<Vec<T>, CliError> {
    results.into_iter().collect()
}

pub fn products(
    cfg: &RunConfig,
    r1: Rotation,
    r2: Rotation,
    z0: Complex64,
    grid: ZGrid,
    route: Route,
) -> Result<Table, CliError> {
    let n = cfg.count.unwrap_or(DEFAULT_COUNT);
    let zs: Vec<Complex64> = match grid {
        ZGrid::Line { lo, hi } => linspace(lo, hi, n)
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect(),
        ZGrid::Disk => disk_points(n, cfg.seed, cfg.z_max),
    };
    let p = ShiftedProducts::new(cfg.contour.clone());
    let f = Function::Product(r1, r2);
    let rows: Vec<Result<Vec<Cell>, CliError>> = zs
        .par_iter()
        .map(|&z| {
            let at = Point { z, z0 };
            let v = eval::evaluate(&p, f, at, route)?;
            eval::record(f, at, &v)
        })
        .collect();
    let mut columns = vec!["index"];
    columns.extend(eval::COLUMNS);
    let mut t = Table::new(&columns);
    for (i, row) in in_order(rows)?.into_iter().enumerate() {
        let mut r = vec![Cell::from(i)];
        r.extend(row);
        t.push(r);
    }
    Ok(t)
}

/// Closed-form Green's function along `eta` at fixed `xi` and field strength.
/// The error column is the distance to the independently computed time
/// integral.
pub fn greens(cfg: &RunConfig, xi: f64) -> Result<Table, CliError> {
    let n = cfg.count.unwrap_or(DEFAULT_COUNT);
    let etas = linspace(cfg.eta_min, cfg.eta_max, n);
    let rows: Vec<Result<Vec<Cell>, CliError>> = etas
        .par_iter()
        .map(|&eta| {
            let p = GreensParams::from_scaled(xi, eta, cfg.greens_field)?;
            let v = scaled_vars(&p)?;
            let g = greens_closed(&p)?;
            let t = time_integral(&p, cfg.greens_quad_tol)?;
            Ok(vec![
                v.xi.into(),
                v.eta.into(),
                p.energy.into(),
                p.field_strength().into(),
                p.separation().into(),
                g.re.into(),
                g.im.into(),
                (g - t.value).norm().into(),
            ])
        })
        .collect();
    let mut t = Table::new(&[
        "index",
        "xi",
        "eta",
        "energy",
        "field",
        "separation",
        "value_re",
        "value_im",
        "abs_err_est",
    ]);
    for (i, row) in in_order(rows)?.into_iter().enumerate() {
        let mut r = vec![Cell::from(i)];
        r.extend(row);
        t.push(r);
    }
    Ok(t)
}
