//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test --test acceptance`.

use std::f64::consts::{FRAC_PI_3, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use airy_shift::airy::{airy, AI_PRIME_ZERO, AI_ZERO};
use airy_shift::contour::{contour_integral, ContourKind, Sector, ShiftedArgs};
use airy_shift::greens::{
    greens_closed, greens_free, scaled_vars, schrodinger_residual, time_integral, GreensParams,
};
use airy_shift::products::{ode_residual, reduced_ode_residual};
use airy_shift::sampling::{
    disk_points, sector_samples, shifted_grid, uniform_reals, DEFAULT_SEED,
};
use airy_shift::{ContourConfig, Rotation, Route, ShiftedProducts, Sign};
use num_complex::Complex64;
use rayon::prelude::*;

const SECTORS: [Sector; 4] = [Sector::Inner, Sector::Boundary, Sector::Outer, Sector::Zero];

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: usize, title: &str, elapsed: Duration, limit: Option<Duration>, o: Outcome) -> bool {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let pass = o.pass && in_time;
    let budget = match limit {
        Some(l) => format!("{:.1}s of {:.0}s", elapsed.as_secs_f64(), l.as_secs_f64()),
        None => format!("{:.1}s", elapsed.as_secs_f64()),
    };
    println!(
        "criterion {n} [{}] {title}: {} ({budget})",
        if pass { "PASS" } else { "FAIL" },
        o.detail
    );
    pass
}

fn rel_to_unit(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn ode_suite() -> Outcome {
    let grid = shifted_grid(500, DEFAULT_SEED, 4.0, 3.0);
    let worst = grid
        .par_iter()
        .map(|a| {
            let mut m = 0.0f64;
            for r1 in Rotation::ALL {
                for r2 in Rotation::ALL {
                    m = m.max(ode_residual(r1, r2, a).unwrap());
                }
            }
            m
        })
        .reduce(|| 0.0, f64::max);
    let zero_z = disk_points(100, DEFAULT_SEED + 1, 4.0);
    let mut worst_reduced = 0.0f64;
    for z in &zero_z {
        let a = ShiftedArgs::new(*z, Complex64::new(0.0, 0.0)).unwrap();
        for r1 in Rotation::ALL {
            for r2 in Rotation::ALL {
                worst_reduced = worst_reduced
                    .max(ode_residual(r1, r2, &a).unwrap())
                    .max(reduced_ode_residual(r1, r2, *z).unwrap());
            }
        }
    }
    Outcome {
        pass: worst < 1e-10 && worst_reduced < 1e-10,
        detail: format!(
            "max fourth-order residual {worst:.2e} over 500x9, max residual at z0=0 {worst_reduced:.2e}"
        ),
    }
}

fn representation_suite() -> Outcome {
    let p = ShiftedProducts::default();
    let grid = shifted_grid(2000, DEFAULT_SEED, 4.0, 3.0);
    let results: Vec<Result<[f64; 4], String>> = grid
        .par_iter()
        .map(|a| {
            let mut out = [0.0; 4];
            for (i, s) in [Sign::Plus, Sign::Minus].into_iter().enumerate() {
                let d = p.u_pm(s, a, Route::Direct).map_err(|e| e.to_string())?;
                let c = p.u_pm(s, a, Route::Contour).map_err(|e| e.to_string())?;
                out[i] = rel_to_unit(c.value, d.value);
                let d = p.w_pm(s, a, Route::Direct).map_err(|e| e.to_string())?;
                let c = p.w_pm(s, a, Route::Contour).map_err(|e| e.to_string())?;
                out[2 + i] = rel_to_unit(c.value, d.value);
            }
            Ok(out)
        })
        .collect();
    let mut failures = 0;
    let mut worst_u = 0.0f64;
    let mut worst_w_inner = 0.0f64;
    let mut worst_w_outer = 0.0f64;
    for (a, r) in grid.iter().zip(&results) {
        match r {
            Ok(v) => {
                worst_u = worst_u.max(v[0]).max(v[1]);
                let w = v[2].max(v[3]);
                if a.z0_sector == Sector::Outer {
                    worst_w_outer = worst_w_outer.max(w);
                } else {
                    worst_w_inner = worst_w_inner.max(w);
                }
            }
            Err(_) => failures += 1,
        }
    }
    Outcome {
        pass: failures == 0 && worst_u <= 1e-7 && worst_w_inner <= 1e-7 && worst_w_outer <= 1e-7,
        detail: format!(
            "2000 points: U± {worst_u:.2e}, W± inner/zero/boundary {worst_w_inner:.2e}, \
             W± outer {worst_w_outer:.2e}, evaluation errors {failures}"
        ),
    }
}

fn contour_relation() -> Outcome {
    let cfg = ContourConfig::default();
    let mut worst_ratio = 0.0f64;
    let mut failures = 0;
    for (i, sector) in SECTORS.into_iter().enumerate() {
        let samples = sector_samples(sector, 50, DEFAULT_SEED + 10 + i as u64, 4.0, 3.0);
        let ratios: Vec<Option<f64>> = samples
            .par_iter()
            .map(|a| {
                let q = ContourKind::ALL.map(|k| contour_integral(k, a, &cfg).ok());
                let [Some(lp), Some(lm), Some(rp), Some(rm), Some(o)] = q else {
                    return None;
                };
                let gap = (o.value - (rm.value + lm.value - lp.value - rp.value)).norm();
                let combined = lp.abs_err_est
                    + lm.abs_err_est
                    + rp.abs_err_est
                    + rm.abs_err_est
                    + o.abs_err_est;
                Some(gap / combined)
            })
            .collect();
        for r in ratios {
            match r {
                Some(v) => worst_ratio = worst_ratio.max(v),
                None => failures += 1,
            }
        }
    }
    let mut worst_loop = 0.0f64;
    for z in disk_points(20, DEFAULT_SEED + 20, 4.0) {
        let a = ShiftedArgs::new(z, Complex64::new(0.0, 0.0)).unwrap();
        match contour_integral(ContourKind::O, &a, &cfg) {
            Ok(q) => worst_loop = worst_loop.max(q.value.norm()),
            Err(_) => failures += 1,
        }
    }
    Outcome {
        pass: failures == 0 && worst_ratio <= 1.0 && worst_loop <= 1e-10,
        detail: format!(
            "4x50 samples: max |gap| / combined error estimate {worst_ratio:.2e}; \
             max |I_O(z;0)| {worst_loop:.2e} over 20 z; evaluation errors {failures}"
        ),
    }
}

fn real_axis_suite() -> Outcome {
    let p = ShiftedProducts::default();
    let xs: Vec<f64> = (0..=20).map(|i| -5.0 + 0.5 * i as f64).collect();
    let shifts: Vec<f64> = (0..=16).map(|i| -4.0 + 0.5 * i as f64).collect();
    let pairs: Vec<(f64, f64)> = xs
        .iter()
        .flat_map(|&x| shifts.iter().map(move |&x0| (x, x0)))
        .collect();
    let rows: Vec<(f64, Option<f64>)> = pairs
        .par_iter()
        .map(|&(x, x0)| {
            let a = ShiftedArgs::new(Complex64::new(x, 0.0), Complex64::new(x0, 0.0)).unwrap();
            let d = p
                .product(Rotation::Zero, Rotation::Zero, &a, Route::Direct)
                .unwrap();
            let cos_form = p.aiai_real(x, x0).map(|v| rel_to_unit(v.value, d.value));
            let half_line = if x0 >= 0.0 {
                let mut m = 0.0f64;
                for s in [Sign::Plus, Sign::Minus] {
                    let d = p.w_pm(s, &a, Route::Direct).unwrap();
                    match p.w_pm_real(s, x, x0) {
                        Ok(v) => m = m.max(rel_to_unit(v.value, d.value)),
                        Err(_) => m = f64::INFINITY,
                    }
                }
                Some(m)
            } else {
                None
            };
            (cos_form.unwrap_or(f64::INFINITY), half_line)
        })
        .collect();
    let worst_cos = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let worst_cos_negative = rows
        .iter()
        .zip(&pairs)
        .filter(|(_, (_, x0))| *x0 < 0.0)
        .map(|(r, _)| r.0)
        .fold(0.0, f64::max);
    let worst_half = rows.iter().filter_map(|r| r.1).fold(0.0, f64::max);
    Outcome {
        pass: worst_half <= 1e-8 && worst_cos <= 1e-8,
        detail: format!(
            "W± half-line on x in [-5,5], x0 in [0,4]: {worst_half:.2e}; \
             Ai(x+x0)Ai(x) cosine form on x0 in [-4,4]: {worst_cos:.2e} (x0 < 0: {worst_cos_negative:.2e})"
        ),
    }
}

fn difference_suite() -> Outcome {
    let p = ShiftedProducts::default();
    let mut worst = [0.0f64; 4];
    let mut failures = 0;
    for (i, sector) in SECTORS.into_iter().enumerate() {
        let samples = sector_samples(sector, 50, DEFAULT_SEED + 30 + i as u64, 4.0, 3.0);
        let errs: Vec<Option<f64>> = samples
            .par_iter()
            .map(|a| {
                let mut m = 0.0f64;
                for s in [Sign::Plus, Sign::Minus] {
                    let d = p.difference_identity(s, a, Route::Direct).ok()?;
                    let c = p.difference_identity(s, a, Route::Contour).ok()?;
                    m = m.max(rel_to_unit(c.value, d.value));
                }
                Some(m)
            })
            .collect();
        for e in errs {
            match e {
                Some(v) => worst[i] = worst[i].max(v),
                None => failures += 1,
            }
        }
    }
    let max = worst.iter().cloned().fold(0.0, f64::max);
    Outcome {
        pass: failures == 0 && max <= 1e-8,
        detail: format!(
            "50 samples per sector, inner {:.2e} boundary {:.2e} outer {:.2e} zero {:.2e}, evaluation errors {failures}",
            worst[0], worst[1], worst[2], worst[3]
        ),
    }
}

fn greens_samples() -> Vec<GreensParams> {
    let n = 100;
    let energies = uniform_reals(n, DEFAULT_SEED + 40, -1.0, 1.0);
    let fields = uniform_reals(n, DEFAULT_SEED + 41, 0.01, 1.0);
    let etas = uniform_reals(n, DEFAULT_SEED + 42, 0.1, 5.0);
    let dirs = disk_points(2 * n, DEFAULT_SEED + 43, 1.0);
    (0..n)
        .map(|i| {
            let f = fields[i];
            // Field along a tilted axis, separation fixed by the target eta.
            let fhat = {
                let v = [dirs[i].re, dirs[i].im, 1.0];
                let m = (v[0] * v[0] + v[1] * v[1] + 1.0).sqrt();
                [v[0] / m, v[1] / m, v[2] / m]
            };
            let d = etas[i] * 2f64.powf(2.0 / 3.0) / f.cbrt();
            let u = dirs[n + i];
            let theta = u.arg();
            let sep = [d * theta.cos() * 0.6, d * theta.sin() * 0.6, d * 0.8];
            let r_prime = [0.2 * u.re, -0.3 * u.im, 0.1];
            GreensParams {
                energy: energies[i],
                field: fhat.map(|c| c * f),
                r: [
                    r_prime[0] + sep[0],
                    r_prime[1] + sep[1],
                    r_prime[2] + sep[2],
                ],
                r_prime,
            }
        })
        .collect()
}

fn greens_suite() -> Outcome {
    let samples = greens_samples();
    let rels: Vec<Option<f64>> = samples
        .par_iter()
        .map(|p| {
            let c = greens_closed(p).ok()?;
            let t = time_integral(p, 1e-10).ok()?;
            Some((c - t.value).norm() / c.norm())
        })
        .collect();
    let failures = rels.iter().filter(|r| r.is_none()).count();
    let worst = rels.iter().flatten().cloned().fold(0.0, f64::max);
    let eta_range = samples
        .iter()
        .map(|p| scaled_vars(p).unwrap().eta)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), e| {
            (lo.min(e), hi.max(e))
        });

    let mut worst_weak = 0.0f64;
    for (i, sep) in [
        [1.0, 0.0, 0.0],
        [0.0, 2.0, 0.0],
        [0.5, 0.5, 0.5],
        [0.0, 0.0, 1.5],
    ]
    .into_iter()
    .enumerate()
    {
        let p = GreensParams {
            energy: 0.5,
            field: [0.0, 0.0, 1e-4],
            r: sep,
            r_prime: [0.0, 0.0, -0.1 * i as f64],
        };
        let c = greens_closed(&p).unwrap();
        let f = greens_free(&p).unwrap();
        worst_weak = worst_weak.max((c - f).norm() / f.norm());
    }

    let pts = disk_points(40, DEFAULT_SEED + 44, 1.0);
    let mut worst_defect = 0.0f64;
    for i in 0..20 {
        let a = pts[2 * i];
        let b = pts[2 * i + 1];
        let p = GreensParams {
            energy: 0.8 * a.re,
            field: [0.1 * b.re, 0.1 * b.im, 0.2 + 0.3 * a.im.abs()],
            r: [1.0 + a.re, 0.5 + b.re, 0.8 + a.im],
            r_prime: [0.0, 0.0, -0.5 - b.im.abs()],
        };
        assert!(p.separation() > 1.0);
        worst_defect = worst_defect.max(schrodinger_residual(&p, 1e-3).unwrap());
    }
    Outcome {
        pass: failures == 0 && worst < 1e-6 && worst_weak < 1e-3 && worst_defect < 1e-4,
        detail: format!(
            "closed vs time integral {worst:.2e} over 100 samples (eta {:.2}..{:.2}, errors {failures}); \
             F=1e-4 vs free {worst_weak:.2e}; defect residual {worst_defect:.2e} at 20 points",
            eta_range.0, eta_range.1
        ),
    }
}

fn oracle_suite() -> Outcome {
    let e1 = Complex64::from_polar(1.0, -FRAC_PI_3);
    let e2 = Complex64::from_polar(1.0, FRAC_PI_3);
    let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let mut worst = 0.0f64;
    for z in disk_points(200, DEFAULT_SEED + 50, 10.0) {
        let a = airy(z).unwrap().ai;
        let b = airy(w * z).unwrap().ai;
        let c = airy(w.conj() * z).unwrap().ai;
        let gap = (e1 * b + e2 * c - a).norm();
        let scale = a.norm() + b.norm() + c.norm();
        worst = worst.max(gap / scale);
    }
    let o = airy(Complex64::new(0.0, 0.0)).unwrap();
    let origin = (o.ai.re - AI_ZERO)
        .abs()
        .max((o.ai_prime.re - AI_PRIME_ZERO).abs());
    let reference = (o.ai.re - 0.355_028_053_887_817_2)
        .abs()
        .max((o.ai_prime.re + 0.258_819_403_792_806_8).abs());
    Outcome {
        pass: worst <= 1e-11 && origin <= 1e-14 && reference <= 1e-14,
        detail: format!(
            "connection residual {worst:.2e} over 200 points, Ai(0)/Ai'(0) deviation {:.1e}",
            origin.max(reference)
        ),
    }
}

fn main() -> ExitCode {
    type Suite = (usize, &'static str, Option<u64>, fn() -> Outcome);
    let suites: [Suite; 7] = [
        (
            1,
            "fourth-order ODE for all nine products",
            Some(10),
            ode_suite,
        ),
        (
            2,
            "contour vs oracle for U± and W±",
            Some(300),
            representation_suite,
        ),
        (
            3,
            "linear relation among the five contours",
            None,
            contour_relation,
        ),
        (4, "real-axis half-line formulas", None, real_axis_suite),
        (
            5,
            "difference identities with sector signs",
            None,
            difference_suite,
        ),
        (6, "static-field Green's function", Some(120), greens_suite),
        (7, "oracle self-tests", None, oracle_suite),
    ];
    let mut all = true;
    for (n, title, limit, run) in suites {
        let start = Instant::now();
        let outcome = run();
        all &= report(
            n,
            title,
            start.elapsed(),
            limit.map(Duration::from_secs),
            outcome,
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
