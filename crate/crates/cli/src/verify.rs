//! Verification suites: one row per checked quantity, pass/fail against the
//! run tolerances.

use std::f64::consts::FRAC_PI_3;

use airy_shift::contour::{contour_integral, ContourKind};
use airy_shift::greens::{greens_closed, time_integral, GreensParams};
use airy_shift::sampling::{shifted_grid, uniform_reals};
use airy_shift::{ode_residual, Rotation, Route, ShiftedArgs, ShiftedProducts, Sign};
use clap::ValueEnum;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::eval::sector_name;
use crate::output::{Cell, Table};
use crate::run_config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ode,
    Routes,
    Identities,
    ContourRelation,
    Greens,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Ode => "ode",
            Suite::Routes => "routes",
            Suite::Identities => "identities",
            Suite::ContourRelation => "contour-relation",
            Suite::Greens => "greens",
        }
    }

    fn default_count(self) -> usize {
        match self {
            Suite::Ode | Suite::Identities => 500,
            Suite::Routes | Suite::ContourRelation => 200,
            Suite::Greens => 100,
        }
    }
}

/// One checked quantity. `residual` is `None` when evaluation failed.
struct Check {
    label: &'static str,
    residual: Option<f64>,
}

impl Check {
    fn new(label: &'static str, r: Option<f64>) -> Self {
        Check { label, residual: r }
    }
}

pub struct Report {
    pub table: Table,
    pub cases: usize,
    pub failed: usize,
    pub worst: f64,
    pub tolerance: f64,
}

const GRID_COLUMNS: [&str; 8] = [
    "suite", "index", "check", "sector", "z_re", "z_im", "z0_re", "z0_im",
];
const GREENS_COLUMNS: [&str; 6] = ["suite", "index", "check", "xi", "eta", "field"];

fn cis(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

fn rel_to_unit(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn ode_checks(a: &ShiftedArgs) -> Vec<Check> {
    let mut worst = Some(0.0f64);
    for r1 in Rotation::ALL {
        for r2 in Rotation::ALL {
            worst = match (worst, ode_residual(r1, r2, a)) {
                (Some(w), Ok(r)) => Some(w.max(r)),
                _ => None,
            };
        }
    }
    vec![Check::new("nine products", worst)]
}

fn route_checks(p: &ShiftedProducts, a: &ShiftedArgs) -> Vec<Check> {
    let pair = |d: airy_shift::Result<_>, c: airy_shift::Result<_>| -> Option<f64> {
        let (d, c): (airy_shift::ProductValue, airy_shift::ProductValue) = (d.ok()?, c.ok()?);
        Some(rel_to_unit(c.value, d.value))
    };
    let (dr, cr) = (Route::Direct, Route::Contour);
    let mut out = Vec::new();
    for (s, u, w, diff) in [
        (Sign::Plus, "u+", "w+", "diff+"),
        (Sign::Minus, "u-", "w-", "diff-"),
    ] {
        out.push(Check::new(u, pair(p.u_pm(s, a, dr), p.u_pm(s, a, cr))));
        out.push(Check::new(w, pair(p.w_pm(s, a, dr), p.w_pm(s, a, cr))));
        out.push(Check::new(
            diff,
            pair(
                p.difference_identity(s, a, dr),
                p.difference_identity(s, a, cr),
            ),
        ));
    }
    out
}

/// Linear relations among direct-route values, each residual scaled by the
/// magnitude of the terms it cancels.
fn identity_checks(p: &ShiftedProducts, a: &ShiftedArgs) -> Vec<Check> {
    let eval = || -> airy_shift::Result<Vec<(&'static str, f64)>> {
        let d = Route::Direct;
        let up = p.u_pm(Sign::Plus, a, d)?.value;
        let um = p.u_pm(Sign::Minus, a, d)?.value;
        let wp = p.w_pm(Sign::Plus, a, d)?.value;
        let wm = p.w_pm(Sign::Minus, a, d)?.value;
        let b = a.swapped()?;
        let wp_sw = p.w_pm(Sign::Plus, &b, d)?.value;
        let wm_sw = p.w_pm(Sign::Minus, &b, d)?.value;
        let prod = |r1, r2| p.product(r1, r2, a, d).map(|v| v.value);
        let dp = p.difference_identity(Sign::Plus, a, d)?.value;
        let dm = p.difference_identity(Sign::Minus, a, d)?.value;
        let scale = up.norm() + um.norm() + wp.norm() + wm.norm() + wp_sw.norm() + wm_sw.norm();
        let r =
            |lhs: Complex64, rhs: Complex64| (lhs - rhs).norm() / scale.max(lhs.norm()).max(1e-300);
        use Rotation::{Minus, Plus, Zero};
        Ok(vec![
            (
                "(0,0)",
                r(
                    prod(Zero, Zero)?,
                    cis(-FRAC_PI_3) * wp + cis(FRAC_PI_3) * wm,
                ),
            ),
            (
                "(+,0)",
                r(prod(Plus, Zero)?, um + cis(-FRAC_PI_3) * (up - wm)),
            ),
            (
                "(-,0)",
                r(prod(Minus, Zero)?, up + cis(FRAC_PI_3) * (um - wp)),
            ),
            (
                "(+,-)",
                r(
                    prod(Plus, Minus)?,
                    cis(-FRAC_PI_3) * um + cis(FRAC_PI_3) * wm,
                ),
            ),
            (
                "(-,+)",
                r(
                    prod(Minus, Plus)?,
                    cis(FRAC_PI_3) * up + cis(-FRAC_PI_3) * wp,
                ),
            ),
            ("w+ swap", r(wp, um + cis(-FRAC_PI_3) * (up - wm_sw))),
            ("w- swap", r(wm, up + cis(FRAC_PI_3) * (um - wp_sw))),
            ("diff+", r(dp, um + cis(-FRAC_PI_3) * (up - wm) - wp)),
            ("diff-", r(dm, up + cis(FRAC_PI_3) * (um - wp) - wm)),
        ])
    };
    match eval() {
        Ok(v) => v.into_iter().map(|(l, r)| Check::new(l, Some(r))).collect(),
        Err(_) => vec![Check::new("evaluation", None)],
    }
}

/// `I_O = I_R- + I_L- - I_L+ - I_R+`, relative to the largest integral.
fn relation_check(cfg: &RunConfig, a: &ShiftedArgs) -> Vec<Check> {
    let q = ContourKind::ALL.map(|k| contour_integral(k, a, &cfg.contour).ok());
    let r = match q {
        [Some(lp), Some(lm), Some(rp), Some(rm), Some(o)] => {
            let gap = o.value - (rm.value + lm.value - lp.value - rp.value);
            let scale = [lp, lm, rp, rm, o]
                .iter()
                .map(|x| x.value.norm())
                .fold(1.0, f64::max);
            Some(gap.norm() / scale)
        }
        _ => None,
    };
    vec![Check::new("five contours", r)]
}

pub fn run(suite: Suite, cfg: &RunConfig) -> Report {
    let n = cfg.count.unwrap_or(suite.default_count());
    let tolerance = match suite {
        Suite::Ode | Suite::Identities => cfg.identity_tol,
        Suite::Routes | Suite::ContourRelation => cfg.route_tol,
        Suite::Greens => cfg.greens_tol,
    };
    let mut columns = if suite == Suite::Greens {
        GREENS_COLUMNS.to_vec()
    } else {
        GRID_COLUMNS.to_vec()
    };
    columns.extend(["residual", "tolerance", "pass"]);
    let mut rows: Vec<(Vec<Cell>, Check)> = Vec::new();

    if suite == Suite::Greens {
        let xi = uniform_reals(n, cfg.seed, -5.0, 5.0);
        let eta = uniform_reals(n, cfg.seed.wrapping_add(1), cfg.eta_min, cfg.eta_max);
        let field = uniform_reals(n, cfg.seed.wrapping_add(2), 0.01, 1.0);
        let checks: Vec<Check> = (0..n)
            .into_par_iter()
            .map(|i| {
                let r = GreensParams::from_scaled(xi[i], eta[i], field[i])
                    .ok()
                    .and_then(|p| {
                        let c = greens_closed(&p).ok()?;
                        let t = time_integral(&p, cfg.greens_quad_tol).ok()?;
                        Some((c - t.value).norm() / c.norm())
                    });
                Check::new("closed vs time integral", r)
            })
            .collect();
        for (i, c) in checks.into_iter().enumerate() {
            let head = vec![
                suite.name().into(),
                i.into(),
                c.label.into(),
                xi[i].into(),
                eta[i].into(),
                field[i].into(),
            ];
            rows.push((head, c));
        }
    } else {
        let grid = shifted_grid(n, cfg.seed, cfg.z_max, cfg.z0_max);
        let p = ShiftedProducts::new(cfg.contour.clone());
        let checks: Vec<Vec<Check>> = grid
            .par_iter()
            .map(|a| match suite {
                Suite::Ode => ode_checks(a),
                Suite::Routes => route_checks(&p, a),
                Suite::Identities => identity_checks(&p, a),
                Suite::ContourRelation => relation_check(cfg, a),
                Suite::Greens => unreachable!(),
            })
            .collect();
        for (i, (a, cs)) in grid.iter().zip(checks).enumerate() {
            for c in cs {
                let head = vec![
                    suite.name().into(),
                    i.into(),
                    c.label.into(),
                    sector_name(a.z0_sector).into(),
                    a.z.re.into(),
                    a.z.im.into(),
                    a.z0.re.into(),
                    a.z0.im.into(),
                ];
                rows.push((head, c));
            }
        }
    }

    let mut table = Table::new(&columns);
    let mut failed = 0;
    let mut worst = 0.0f64;
    let cases = rows.len();
    for (mut head, c) in rows {
        let r = c.residual.unwrap_or(f64::INFINITY);
        let pass = r <= tolerance;
        if !pass {
            failed += 1;
        }
        worst = worst.max(r);
        head.extend([r.into(), tolerance.into(), pass.into()]);
        table.push(head);
    }
    Report {
        table,
        cases,
        failed,
        worst,
        tolerance,
    }
}
