//! Outgoing-wave Green's function of `-Δ/2 + F·r - E` (atomic units).
//!
//! With `ξ = (F·(r + r') - 2E)/(2F)^{2/3}`, `η = F^{1/3}|r - r'|/2^{2/3}` and
//! `ω = e^{2iπ/3}`,
//!
//! ```text
//! G = -e^{iπ/6}/|r - r'| · d/dη [Ai(ξ + η) Ai(ω(ξ - η))]
//! ```
//!
//! The time integral
//!
//! ```text
//! G = e^{-iπ/4}/(2π)^{3/2} ∫_0^∞ exp[iEt + i(r - r')²/(2t) - (i/2)F·(r + r')t - (i/24)F²t³] dt/t^{3/2}
//! ```
//!
//! is evaluated independently as a check. In the scaled time `τ = t/λ`,
//! `λ = 2^{1/3} F^{-2/3}`, its exponent is `i(-ξτ + η²/τ - τ³/12)`, and the
//! path is routed through the saddles of that phase.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

use num_complex::Complex64;

use crate::airy::airy_within;
use crate::contour::path::{origin_cutoff, tail_length, Integrand, Leg};
use crate::contour::{quad, QuadResult};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Oracle envelope for the closed form. Weak fields push `ξ` far out on the
/// negative axis, where the large-argument branch is still accurate.
pub const CLOSED_ENVELOPE: f64 = 1000.0;

/// Path pieces and tails are cut where the integrand falls this far (in
/// natural log) below its value at the saddles.
const RELATIVE_FLOOR: f64 = -41.0;
const TAIL_CEILING: f64 = 1e4;
const NODE_CEILING: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreensParams {
    /// Energy in hartree.
    pub energy: f64,
    /// Field vector in atomic units.
    pub field: [f64; 3],
    pub r: [f64; 3],
    pub r_prime: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledVars {
    pub xi: f64,
    pub eta: f64,
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl GreensParams {
    /// A configuration with the given scaled variables: field of strength
    /// `field` along z, `r' = 0` and `r - r'` along x, so that `F·(r + r') = 0`
    /// and the energy alone sets `ξ`.
    pub fn from_scaled(xi: f64, eta: f64, field: f64) -> Result<Self> {
        if !(xi.is_finite() && eta.is_finite() && field.is_finite()) {
            return Err(Error::NonFinite("scaled variables"));
        }
        if field <= 0.0 {
            return Err(Error::ZeroField);
        }
        if eta <= 0.0 {
            return Err(Error::CoincidentPoints);
        }
        Ok(Self {
            energy: -0.5 * xi * (2.0 * field).powf(2.0 / 3.0),
            field: [0.0, 0.0, field],
            r: [eta * 2f64.powf(2.0 / 3.0) / field.cbrt(), 0.0, 0.0],
            r_prime: [0.0; 3],
        })
    }

    fn check_finite(&self) -> Result<()> {
        let all = [self.energy]
            .into_iter()
            .chain(self.field)
            .chain(self.r)
            .chain(self.r_prime);
        for v in all {
            if !v.is_finite() {
                return Err(Error::NonFinite("Green's function parameter"));
            }
        }
        Ok(())
    }

    pub fn field_strength(&self) -> f64 {
        dot(self.field, self.field).sqrt()
    }

    pub fn separation(&self) -> f64 {
        let d = [
            self.r[0] - self.r_prime[0],
            self.r[1] - self.r_prime[1],
            self.r[2] - self.r_prime[2],
        ];
        dot(d, d).sqrt()
    }

    /// `F·(r + r')`.
    fn field_sum(&self) -> f64 {
        let s = [
            self.r[0] + self.r_prime[0],
            self.r[1] + self.r_prime[1],
            self.r[2] + self.r_prime[2],
        ];
        dot(self.field, s)
    }

    fn separation_checked(&self) -> Result<f64> {
        self.check_finite()?;
        let d = self.separation();
        if d == 0.0 {
            return Err(Error::CoincidentPoints);
        }
        Ok(d)
    }
}

pub fn scaled_vars(p: &GreensParams) -> Result<ScaledVars> {
    let d = p.separation_checked()?;
    let f = p.field_strength();
    if f == 0.0 {
        return Err(Error::ZeroField);
    }
    Ok(ScaledVars {
        xi: (p.field_sum() - 2.0 * p.energy) / (2.0 * f).powf(2.0 / 3.0),
        eta: f.cbrt() * d / 2f64.powf(2.0 / 3.0),
    })
}

/// Closed form, with the η-derivative taken by the product rule.
pub fn greens_closed(p: &GreensParams) -> Result<Complex64> {
    let ScaledVars { xi, eta } = scaled_vars(p)?;
    let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let a = airy_within(Complex64::new(xi + eta, 0.0), CLOSED_ENVELOPE)?;
    let b = airy_within(omega * (xi - eta), CLOSED_ENVELOPE)?;
    let derivative = a.ai_prime * b.ai - omega * a.ai * b.ai_prime;
    Ok(-Complex64::from_polar(1.0, PI / 6.0) / p.separation() * derivative)
}

/// Free-electron limit `e^{ik|r - r'|}/(2π|r - r'|)`, `k = sqrt(2E)`, with
/// `k = i sqrt(2|E|)` below zero energy.
pub fn greens_free(p: &GreensParams) -> Result<Complex64> {
    let d = p.separation_checked()?;
    let k = if p.energy >= 0.0 {
        Complex64::new((2.0 * p.energy).sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-2.0 * p.energy).sqrt())
    };
    Ok((I * k * d).exp() / (2.0 * PI * d))
}

/// Closed form for nonzero field, free form otherwise.
pub fn greens(p: &GreensParams) -> Result<Complex64> {
    p.check_finite()?;
    if p.field_strength() == 0.0 {
        greens_free(p)
    } else {
        greens_closed(p)
    }
}

/// The time integral, including its prefactor.
pub fn greens_time_integral(p: &GreensParams, tol: f64) -> Result<Complex64> {
    time_integral(p, tol).map(|q| q.value)
}

/// [`greens_time_integral`] with the quadrature error estimate and node count.
pub fn time_integral(p: &GreensParams, tol: f64) -> Result<QuadResult> {
    if !(1e-10..=1e-4).contains(&tol) {
        return Err(Error::InvalidParameter(format!(
            "time-integral tolerance {tol} outside [1e-10, 1e-4]"
        )));
    }
    let d = p.separation_checked()?;
    let pref = Complex64::from_polar((2.0 * PI).powf(-1.5), -FRAC_PI_4);
    let f_strength = p.field_strength();
    let (f, legs, scale) = if f_strength == 0.0 {
        let f = Integrand {
            lin: I * p.energy,
            inv: I * d * d * 0.5,
            cubic: Complex64::new(0.0, 0.0),
            power: 1.5,
        };
        (f, free_path(&f, p.energy, d)?, 1.0)
    } else {
        let ScaledVars { xi, eta } = scaled_vars(p)?;
        let f = Integrand {
            lin: -I * xi,
            inv: I * eta * eta,
            cubic: -I / 12.0,
            power: 1.5,
        };
        let lambda = 2f64.cbrt() * f_strength.powf(-2.0 / 3.0);
        (f, tau_path(&f, xi, eta)?, lambda.powf(-0.5))
    };
    let q = quad::integrate(&legs, &f, tol, 1e-300, NODE_CEILING)?;
    let factor = pref * scale;
    Ok(QuadResult {
        value: q.value * factor,
        abs_err_est: q.abs_err_est * factor.norm(),
        nodes: q.nodes,
    })
}

fn log_abs(f: &Integrand, k: Complex64, arg: f64) -> f64 {
    f.log_at(k, arg).re
}

fn origin_leg(f: &Integrand, angle: f64, radius: f64, floor: f64) -> Leg {
    Leg::Origin {
        angle,
        radius,
        s_max: origin_cutoff(f, angle, radius, true, floor, 200.0),
        outward: true,
    }
}

fn tail(f: &Integrand, start: Complex64, start_arg: f64, angle: f64, floor: f64) -> Result<Leg> {
    Ok(Leg::Ray {
        start,
        start_arg,
        angle,
        length: tail_length(f, start, start_arg, angle, floor, TAIL_CEILING)?,
        outward: true,
    })
}

/// Path in `τ` through the saddles of `-ξτ + η²/τ - τ³/12`, which solve
/// `τ⁴/4 + ξτ² + η² = 0`.
fn tau_path(f: &Integrand, xi: f64, eta: f64) -> Result<Vec<Leg>> {
    let mut legs = Vec::with_capacity(4);
    if xi <= -eta {
        // Two saddles on the positive real axis.
        let d = (xi * xi - eta * eta).max(0.0).sqrt();
        let ta = (2.0 * (-xi - d)).sqrt();
        let tb = (2.0 * (-xi + d)).sqrt();
        let floor =
            log_abs(f, Complex64::new(ta, 0.0), 0.0).max(log_abs(f, Complex64::new(tb, 0.0), 0.0))
                + RELATIVE_FLOOR;
        let rho = eta / (-xi).sqrt();
        let corner = Complex64::from_polar(rho, -FRAC_PI_4);
        legs.push(origin_leg(f, -FRAC_PI_4, rho, floor));
        legs.push(Leg::Segment {
            start: corner,
            start_arg: -FRAC_PI_4,
            end: Complex64::new(ta, 0.0),
        });
        if tb - ta > 1e-12 * tb {
            legs.push(Leg::Segment {
                start: Complex64::new(ta, 0.0),
                start_arg: 0.0,
                end: Complex64::new(tb, 0.0),
            });
        }
        legs.push(tail(f, Complex64::new(tb, 0.0), 0.0, -FRAC_PI_4, floor)?);
    } else if xi < eta {
        // One relevant saddle in the fourth quadrant.
        let ts = (2.0 * Complex64::new(-xi, -(eta * eta - xi * xi).sqrt())).sqrt();
        let arg = ts.arg();
        let floor = log_abs(f, ts, arg) + RELATIVE_FLOOR;
        legs.push(origin_leg(f, arg, ts.norm(), floor));
        legs.push(tail(f, ts, arg, -FRAC_PI_4, floor)?);
    } else {
        // Two saddles on the negative imaginary axis.
        let d = (xi * xi - eta * eta).max(0.0).sqrt();
        let u1 = (2.0 * (xi - d)).sqrt();
        let u2 = (2.0 * (xi + d)).sqrt();
        let p1 = Complex64::new(0.0, -u1);
        let p2 = Complex64::new(0.0, -u2);
        let floor = log_abs(f, p1, -FRAC_PI_2).max(log_abs(f, p2, -FRAC_PI_2)) + RELATIVE_FLOOR;
        legs.push(origin_leg(f, -FRAC_PI_2, u1, floor));
        if u2 - u1 > 1e-12 * u2 {
            legs.push(Leg::Segment {
                start: p1,
                start_arg: -FRAC_PI_2,
                end: p2,
            });
        }
        legs.push(tail(f, p2, -FRAC_PI_2, -FRAC_PI_6, floor)?);
    }
    Ok(legs)
}

/// Path in `t` for zero field: the exponent is `iEt + i d²/(2t)`.
fn free_path(f: &Integrand, energy: f64, d: f64) -> Result<Vec<Leg>> {
    let mut legs = Vec::with_capacity(3);
    if energy > 0.0 {
        let ts = d / (2.0 * energy).sqrt();
        let floor = log_abs(f, Complex64::new(ts, 0.0), 0.0) + RELATIVE_FLOOR;
        let rho = 0.7 * ts;
        legs.push(origin_leg(f, -FRAC_PI_4, rho, floor));
        legs.push(Leg::Segment {
            start: Complex64::from_polar(rho, -FRAC_PI_4),
            start_arg: -FRAC_PI_4,
            end: Complex64::new(ts, 0.0),
        });
        legs.push(tail(f, Complex64::new(ts, 0.0), 0.0, FRAC_PI_4, floor)?);
    } else if energy < 0.0 {
        let ts = d / (-2.0 * energy).sqrt();
        let p = Complex64::new(0.0, -ts);
        let floor = log_abs(f, p, -FRAC_PI_2) + RELATIVE_FLOOR;
        legs.push(origin_leg(f, -FRAC_PI_2, ts, floor));
        legs.push(tail(f, p, -FRAC_PI_2, -FRAC_PI_2, floor)?);
    } else {
        // Only a power-law tail: t^{-3/2} e^{i d²/(2t)}.
        let rho = d * d;
        let start = Complex64::from_polar(rho, -FRAC_PI_4);
        let floor = log_abs(f, start, -FRAC_PI_4) + RELATIVE_FLOOR;
        legs.push(origin_leg(f, -FRAC_PI_4, rho, floor));
        let probe = |s_max: f64| Leg::Stretched {
            start,
            start_arg: -FRAC_PI_4,
            angle: -FRAC_PI_4,
            scale: rho,
            s_max,
        };
        let mut s_max = 1.0;
        while s_max < 400.0 && probe(s_max).log_weight(f, s_max) > floor + rho.ln() {
            s_max += 1.0;
        }
        legs.push(probe(s_max));
    }
    Ok(legs)
}

/// `|(-Δ/2 + F·r - E) G| / (|G| / |r - r'|²)` at `r`, with the Laplacian
/// from the 7-point stencil of step `h`. Only meaningful away from `r'`.
pub fn schrodinger_residual(p: &GreensParams, h: f64) -> Result<f64> {
    let centre = greens(p)?;
    let mut lap = -6.0 * centre;
    for axis in 0..3 {
        for sign in [1.0, -1.0] {
            let mut q = *p;
            q.r[axis] += sign * h;
            lap += greens(&q)?;
        }
    }
    lap /= h * h;
    let residual = -0.5 * lap + (dot(p.field, p.r) - p.energy) * centre;
    let d = p.separation();
    Ok(residual.norm() / (centre.norm() / (d * d)))
}
