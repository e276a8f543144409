//! Integration contours for the Laplace integral
//!
//! ```text
//! I_C(z; z0) = int_C exp[i(z + z0/2)k - i z0^2/(4k) + i k^3/12] dk / k^{1/2}
//! ```
//!
//! and its adaptive evaluation.
//!
//! Every path is one of two shapes: valley to valley (`L+`, `L-`), or
//! origin to valley / origin to origin (`R+`, `R-`, `O`). In both cases it is
//! a radial piece, a circular arc, and another radial piece. Legs that touch
//! `k = 0` use `k = rho e^{i theta} e^{-s}`, which turns the essential factor
//! `e^{-i z0^2/(4k)}` into a double-exponentially small tail in `s`.
//!
//! The argument of `k` is carried along each leg as an unwrapped real number,
//! so `k^{1/2}` is always the continuation from `arg k = 0` on the positive
//! real axis. Directions below `-pi` (the `-7pi/6` valley) are therefore
//! represented as such, never folded back into `(-pi, pi]`.

// `!(a < b)` forms are kept where they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod path;
pub mod quad;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

use num_complex::Complex64;

use crate::config::ContourConfig;
use crate::error::{Error, Result};
pub use path::{Integrand, Leg};

/// `|arg z0| = pi/2` is treated as the boundary within this distance.
pub const BOUNDARY_TOL: f64 = 1e-12;
/// `|z0|` below this is the zero shift.
pub const ZERO_SHIFT: f64 = 1e-300;

/// Valley bisectors used by the unbounded legs.
const VALLEY_LOWER_LEFT: f64 = -7.0 * PI / 6.0;
const VALLEY_BOTTOM: f64 = -FRAC_PI_2;
const VALLEY_RIGHT: f64 = FRAC_PI_6;

const ARC_RADII: [f64; 12] = [0.25, 0.4, 0.6, 0.8, 1.0, 1.25, 1.6, 2.0, 2.5, 3.2, 4.0, 5.0];
const ORIGIN_CAP: f64 = 200.0;
const SCORE_SAMPLES: usize = 48;
/// How much higher (in ln |integrand|) the saddle-hint arc may run than the best
/// scanned arc and still be used.
const HINT_SLACK: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    Inner,
    Boundary,
    Outer,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContourKind {
    LPlus,
    LMinus,
    RPlus,
    RMinus,
    O,
}

impl ContourKind {
    pub const ALL: [ContourKind; 5] = [
        ContourKind::LPlus,
        ContourKind::LMinus,
        ContourKind::RPlus,
        ContourKind::RMinus,
        ContourKind::O,
    ];
}

pub fn classify_sector(z0: Complex64) -> Result<Sector> {
    if !z0.re.is_finite() || !z0.im.is_finite() {
        return Err(Error::NonFinite("z0"));
    }
    if z0.norm() < ZERO_SHIFT {
        return Ok(Sector::Zero);
    }
    let d = z0.arg().abs() - FRAC_PI_2;
    Ok(if d.abs() <= BOUNDARY_TOL {
        Sector::Boundary
    } else if d < 0.0 {
        Sector::Inner
    } else {
        Sector::Outer
    })
}

/// The pair `(z, z0)` with its sector fixed at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedArgs {
    pub z: Complex64,
    pub z0: Complex64,
    pub z0_sector: Sector,
}

impl ShiftedArgs {
    pub fn new(z: Complex64, z0: Complex64) -> Result<Self> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite("z"));
        }
        Ok(Self {
            z,
            z0,
            z0_sector: classify_sector(z0)?,
        })
    }

    /// `(z + z0, -z0)`, the same product seen from the other point.
    pub fn swapped(&self) -> Result<Self> {
        Self::new(self.z + self.z0, -self.z0)
    }

    /// The angle that orients the internal valleys: `arg z0`, or `arg(-z0)`
    /// when `|arg z0| > pi/2`, so it always lies in `[-pi/2, pi/2]`.
    pub fn orientation(&self) -> f64 {
        match self.z0_sector {
            Sector::Zero => 0.0,
            Sector::Inner | Sector::Boundary => self.z0.arg(),
            Sector::Outer => (-self.z0).arg(),
        }
    }

    pub fn cut_angle(&self) -> f64 {
        FRAC_PI_2 + self.orientation()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_err_est: f64,
    pub nodes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Terminal {
    Origin(f64),
    Infinity(f64),
}

impl Terminal {
    fn angle(self) -> f64 {
        match self {
            Terminal::Origin(a) | Terminal::Infinity(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Plan {
    from: Terminal,
    to: Terminal,
    radius: f64,
}

/// An immutable path for one `(kind, args)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourPath {
    pub kind: ContourKind,
    pub cut_angle: f64,
    pub legs: Vec<Leg>,
    pub truncation_radius: f64,
    /// Radius at which origin legs meet the arc.
    pub endpoint_scale: f64,
    z: Complex64,
    z0: Complex64,
    plan: Plan,
    config: ContourConfig,
}

/// A leading-order saddle of the exponent, with its unwrapped argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleHint {
    pub point: Complex64,
    pub arg: f64,
}

pub fn saddle_hint(kind: ContourKind, args: &ShiftedArgs) -> Option<SaddleHint> {
    let r = args.z.norm();
    if !(r >= 1.0) {
        return None;
    }
    let (modulus, arg) = match kind {
        ContourKind::LPlus => (2.0 * r.sqrt(), -FRAC_PI_2 - FRAC_PI_3),
        ContourKind::LMinus => (2.0 * r.sqrt(), -FRAC_PI_2 + FRAC_PI_3),
        ContourKind::RPlus if args.z0_sector != Sector::Zero => (
            0.5 * args.z0.norm() / r.sqrt(),
            -FRAC_PI_2 - PI + args.z0.arg(),
        ),
        ContourKind::RMinus if args.z0_sector != Sector::Zero => (
            0.5 * args.z0.norm() / r.sqrt(),
            -FRAC_PI_2 + PI + args.z0.arg(),
        ),
        _ => return None,
    };
    Some(SaddleHint {
        point: Complex64::from_polar(modulus, arg),
        arg,
    })
}

fn terminals(kind: ContourKind, args: &ShiftedArgs) -> (Terminal, Terminal) {
    let twice = 2.0 * args.orientation();
    match kind {
        ContourKind::LPlus => (
            Terminal::Infinity(VALLEY_LOWER_LEFT),
            Terminal::Infinity(VALLEY_BOTTOM),
        ),
        ContourKind::LMinus => (
            Terminal::Infinity(VALLEY_RIGHT),
            Terminal::Infinity(VALLEY_BOTTOM),
        ),
        ContourKind::RPlus => (
            Terminal::Origin(twice - 5.0 * FRAC_PI_4),
            Terminal::Infinity(VALLEY_LOWER_LEFT),
        ),
        ContourKind::RMinus => (
            Terminal::Origin(twice + FRAC_PI_4),
            Terminal::Infinity(VALLEY_RIGHT),
        ),
        ContourKind::O => (
            Terminal::Origin(twice + FRAC_PI_4),
            Terminal::Origin(twice - 5.0 * FRAC_PI_4),
        ),
    }
}

/// Smallest `R` with `(R^3/12) sin(3 theta) >= -ln(tail_tol) + |z + z0/2| R + |z0^2/4| / R`.
pub fn truncation_radius(
    theta: f64,
    lin: f64,
    inv: f64,
    tail_tol: f64,
    lower: f64,
    ceiling: f64,
) -> Result<f64> {
    let decay = (3.0 * theta).sin();
    if decay < 0.05 {
        return Err(Error::DegenerateGeometry(format!(
            "arg k = {theta:.6} is not inside an asymptotic valley"
        )));
    }
    let need = -tail_tol.ln();
    let ok = |r: f64| r * r * r / 12.0 * decay >= need + lin * r + inv / r;
    if ok(lower) {
        return Ok(lower);
    }
    if !ok(ceiling) {
        return Err(Error::DegenerateGeometry(format!(
            "truncation radius would exceed the ceiling {ceiling}"
        )));
    }
    let (mut lo, mut hi) = (lower, ceiling);
    while hi - lo > 1e-6 * hi {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn realize(
    plan: &Plan,
    f: &Integrand,
    args: &ShiftedArgs,
    config: &ContourConfig,
) -> Result<(Vec<Leg>, f64)> {
    let rho = plan.radius;
    let ln_floor = config.tail_tol.ln();
    let lin = (args.z + args.z0 * 0.5).norm();
    let inv = (args.z0 * args.z0).norm() * 0.25;
    let mut truncation = rho;
    let mut legs = Vec::with_capacity(3);
    // The first terminal is left from: an origin leg runs outward, a valley
    // ray runs inward. The second terminal is the reverse.
    let end_leg = |t: Terminal, first: bool, truncation: &mut f64| -> Result<Leg> {
        Ok(match t {
            Terminal::Origin(angle) => Leg::Origin {
                angle,
                radius: rho,
                s_max: path::origin_cutoff(f, angle, rho, first, ln_floor, ORIGIN_CAP),
                outward: first,
            },
            Terminal::Infinity(angle) => {
                let r = truncation_radius(
                    angle,
                    lin,
                    inv,
                    config.tail_tol,
                    2.0 * rho,
                    config.radius_ceiling,
                )?;
                *truncation = truncation.max(r);
                Leg::Ray {
                    start: Complex64::from_polar(rho, angle),
                    start_arg: angle,
                    angle,
                    length: r - rho,
                    outward: !first,
                }
            }
        })
    };
    legs.push(end_leg(plan.from, true, &mut truncation)?);
    legs.push(Leg::Arc {
        radius: rho,
        from: plan.from.angle(),
        to: plan.to.angle(),
    });
    legs.push(end_leg(plan.to, false, &mut truncation)?);
    Ok((legs, truncation))
}

fn score(legs: &[Leg], f: &Integrand) -> f64 {
    legs.iter()
        .map(|leg| leg.log_peak(f, SCORE_SAMPLES))
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn build_contour(
    kind: ContourKind,
    args: &ShiftedArgs,
    config: &ContourConfig,
) -> Result<ContourPath> {
    config.validate()?;
    let f = Integrand::laplace(args.z, args.z0);
    let (from, to) = terminals(kind, args);
    let hint = if config.saddle_hint {
        saddle_hint(kind, args)
            .map(|h| h.point.norm())
            .filter(|r| r.is_finite() && *r > 1e-3)
    } else {
        None
    };
    let mut best: Option<(f64, Plan, Vec<Leg>, f64)> = None;
    let mut hinted: Option<(f64, Plan, Vec<Leg>, f64)> = None;
    let mut last_err = None;
    for (radius, is_hint) in ARC_RADII
        .iter()
        .map(|&r| (r, false))
        .chain(hint.map(|r| (r, true)))
    {
        let plan = Plan { from, to, radius };
        match realize(&plan, &f, args, config) {
            Ok((legs, truncation)) => {
                let s = score(&legs, &f);
                if is_hint {
                    hinted = Some((s, plan, legs.clone(), truncation));
                }
                if best.as_ref().is_none_or(|b| s < b.0) {
                    best = Some((s, plan, legs, truncation));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    // The leading-order saddle is only trusted when the arc through it is
    // nearly as low as the best scanned radius.
    if let (Some(h), Some(b)) = (&hinted, &best) {
        if h.0 <= b.0 + HINT_SLACK {
            best = hinted;
        }
    }
    let (_, plan, legs, truncation) = best.ok_or_else(|| {
        last_err.unwrap_or_else(|| Error::DegenerateGeometry("no admissible arc radius".into()))
    })?;
    Ok(ContourPath {
        kind,
        cut_angle: args.cut_angle(),
        legs,
        truncation_radius: truncation,
        endpoint_scale: plan.radius,
        z: args.z,
        z0: args.z0,
        plan,
        config: config.clone(),
    })
}

impl ContourPath {
    /// The same path with the arc radius scaled by `radius_factor` and every
    /// direction turned by `angle_shift`. Used to check path independence.
    pub fn perturbed(&self, radius_factor: f64, angle_shift: f64) -> Result<ContourPath> {
        let shift = |t: Terminal| match t {
            Terminal::Origin(a) => Terminal::Origin(a + angle_shift),
            Terminal::Infinity(a) => Terminal::Infinity(a + angle_shift),
        };
        let plan = Plan {
            from: shift(self.plan.from),
            to: shift(self.plan.to),
            radius: self.plan.radius * radius_factor,
        };
        let args = ShiftedArgs::new(self.z, self.z0)?;
        let f = Integrand::laplace(self.z, self.z0);
        let (legs, truncation) = realize(&plan, &f, &args, &self.config)?;
        Ok(ContourPath {
            legs,
            truncation_radius: truncation,
            endpoint_scale: plan.radius,
            plan,
            ..self.clone()
        })
    }

    /// Directions of the two ends of the path, `(from, to)`.
    pub fn end_angles(&self) -> (f64, f64) {
        (self.plan.from.angle(), self.plan.to.angle())
    }
}

/// Largest `|f jac|` allowed at the inner end of an origin leg before the
/// leg is declared unregularized.
const ENDPOINT_SLACK: f64 = 1e-6;

pub fn laplace_integral(path: &ContourPath, args: &ShiftedArgs, tol: f64) -> Result<QuadResult> {
    if !(1e-14..=1e-4).contains(&tol) {
        return Err(Error::InvalidParameter(format!(
            "quadrature tolerance {tol} outside [1e-14, 1e-4]"
        )));
    }
    if path.z != args.z || path.z0 != args.z0 {
        return Err(Error::InvalidParameter(
            "contour was built for different arguments".into(),
        ));
    }
    let f = Integrand::laplace(args.z, args.z0);
    for leg in &path.legs {
        if let Leg::Origin { angle, s_max, .. } = *leg {
            let peak = leg.log_peak(&f, 64);
            let inner = leg.log_weight(&f, s_max);
            if !(inner < peak.max(0.0) + ENDPOINT_SLACK.ln()) {
                return Err(Error::EndpointSingularity { angle });
            }
        }
    }
    quad::integrate(&path.legs, &f, tol, 1.0, path.config.node_ceiling)
}

/// Build and integrate in one step.
pub fn contour_integral(
    kind: ContourKind,
    args: &ShiftedArgs,
    config: &ContourConfig,
) -> Result<QuadResult> {
    let path = build_contour(kind, args, config)?;
    laplace_integral(&path, args, config.quad_tol)
}
