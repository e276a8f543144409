//! Parametric legs and the exponential-power integrands evaluated on them.

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `exp(lin k + inv / k + cubic k^3) k^{-power}`, with the power taken on the
/// branch selected by an explicitly tracked `arg k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrand {
    pub lin: Complex64,
    pub inv: Complex64,
    pub cubic: Complex64,
    pub power: f64,
}

impl Integrand {
    /// The kernel of I_C(z; z0): `exp[i(z + z0/2)k - i z0^2/(4k) + i k^3/12] / k^{1/2}`.
    pub fn laplace(z: Complex64, z0: Complex64) -> Self {
        Self {
            lin: I * (z + z0 * 0.5),
            inv: -I * z0 * z0 * 0.25,
            cubic: I / 12.0,
            power: 0.5,
        }
    }

    /// Logarithm of the integrand at `k`, where `arg` is the continuous
    /// argument of `k` along the path.
    pub fn log_at(&self, k: Complex64, arg: f64) -> Complex64 {
        self.lin * k + self.inv * recip(k) + self.cubic * k * k * k
            - self.power * Complex64::new(k.norm().ln(), arg)
    }

    /// d/dk of [`Integrand::log_at`].
    pub fn log_slope(&self, k: Complex64) -> Complex64 {
        let r = recip(k);
        self.lin - self.inv * r * r + 3.0 * self.cubic * k * k - self.power * r
    }
}

/// `1/k` without squaring `|k|`, which underflows for the tiny `k` reached at
/// the inner end of origin legs.
fn recip(k: Complex64) -> Complex64 {
    let r = k.norm();
    k.conj() / r / r
}

/// One piece of a path. Every leg is parametrised by `s` in `[0, domain()]`
/// and the integral over the leg is `int f(k(s)) jac(s) ds`.
#[derive(Debug, Clone, PartialEq)]
pub enum Leg {
    /// Radial leg touching `k = 0`, mapped by `k = radius e^{i angle} e^{-s}`.
    /// `outward` runs from the origin to `radius e^{i angle}`.
    Origin {
        angle: f64,
        radius: f64,
        s_max: f64,
        outward: bool,
    },
    /// Circular arc at fixed radius, `arg k` moving linearly from `from` to `to`.
    Arc { radius: f64, from: f64, to: f64 },
    /// Straight segment. `start_arg` anchors the continuous argument.
    Segment {
        start: Complex64,
        start_arg: f64,
        end: Complex64,
    },
    /// Straight ray piece of finite `length` in direction `angle`. An inward
    /// ray is traversed from its far end back to `start`.
    Ray {
        start: Complex64,
        start_arg: f64,
        angle: f64,
        length: f64,
        outward: bool,
    },
    /// Outward ray with geometric spacing, `k = start + e^{i angle} scale (e^s - 1)`,
    /// for tails that only decay like a power.
    Stretched {
        start: Complex64,
        start_arg: f64,
        angle: f64,
        scale: f64,
        s_max: f64,
    },
}

/// A point on a leg: position, continuous argument, and `dk/ds`.
#[derive(Debug, Clone, Copy)]
pub struct LegPoint {
    pub k: Complex64,
    pub arg: f64,
    pub jac: Complex64,
}

impl Leg {
    pub fn domain(&self) -> f64 {
        match *self {
            Leg::Origin { s_max, .. } => s_max,
            Leg::Arc { from, to, .. } => (to - from).abs(),
            Leg::Segment { .. } => 1.0,
            Leg::Ray { length, .. } => length,
            Leg::Stretched { s_max, .. } => s_max,
        }
    }

    pub fn at(&self, s: f64) -> LegPoint {
        match *self {
            Leg::Origin {
                angle,
                radius,
                outward,
                ..
            } => {
                let k = Complex64::from_polar(radius * (-s).exp(), angle);
                LegPoint {
                    k,
                    arg: angle,
                    jac: if outward { k } else { -k },
                }
            }
            Leg::Arc { radius, from, to } => {
                let sign = if to >= from { 1.0 } else { -1.0 };
                let theta = from + sign * s;
                let k = Complex64::from_polar(radius, theta);
                LegPoint {
                    k,
                    arg: theta,
                    jac: I * k * sign,
                }
            }
            Leg::Segment {
                start,
                start_arg,
                end,
            } => {
                let k = start + (end - start) * s;
                LegPoint {
                    k,
                    arg: start_arg + (k * start.conj()).arg(),
                    jac: end - start,
                }
            }
            Leg::Ray {
                start,
                start_arg,
                angle,
                length,
                outward,
            } => {
                let d = Complex64::from_polar(1.0, angle);
                let (k, jac) = if outward {
                    (start + d * s, d)
                } else {
                    (start + d * (length - s), -d)
                };
                LegPoint {
                    k,
                    arg: start_arg + (k * start.conj()).arg(),
                    jac,
                }
            }
            Leg::Stretched {
                start,
                start_arg,
                angle,
                scale,
                ..
            } => {
                let d = Complex64::from_polar(1.0, angle);
                let grow = s.exp();
                let k = start + d * scale * (grow - 1.0);
                LegPoint {
                    k,
                    arg: start_arg + (k * start.conj()).arg(),
                    jac: d * scale * grow,
                }
            }
        }
    }

    /// Position and argument where the leg begins, in traversal order.
    /// Origin legs report `k = 0` at their origin end.
    pub fn first(&self) -> (Complex64, f64) {
        match *self {
            Leg::Origin {
                angle,
                outward: true,
                ..
            } => (Complex64::new(0.0, 0.0), angle),
            _ => {
                let p = self.at(0.0);
                (p.k, p.arg)
            }
        }
    }

    /// Position and argument where the leg ends, in traversal order.
    pub fn last(&self) -> (Complex64, f64) {
        match *self {
            Leg::Origin {
                angle,
                outward: false,
                ..
            } => (Complex64::new(0.0, 0.0), angle),
            Leg::Origin {
                angle,
                radius,
                outward: true,
                ..
            } => (Complex64::from_polar(radius, angle), angle),
            Leg::Ray {
                start,
                start_arg,
                outward: false,
                ..
            } => (start, start_arg),
            _ => {
                let p = self.at(self.domain());
                (p.k, p.arg)
            }
        }
    }

    /// `ln |f(k(s)) jac(s)|`.
    pub fn log_weight(&self, f: &Integrand, s: f64) -> f64 {
        let p = self.at(s);
        f.log_at(p.k, p.arg).re + p.jac.norm().ln()
    }

    /// Largest `ln |f jac|` over `samples` evenly spaced points.
    pub fn log_peak(&self, f: &Integrand, samples: usize) -> f64 {
        let t = self.domain();
        (0..=samples)
            .map(|j| self.log_weight(f, t * j as f64 / samples as f64))
            .filter(|v| !v.is_nan())
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Smallest `s` at which the integrand on the inner part of an origin leg has
/// dropped below `ln_floor` for good, scanning in steps of 1/2 up to `cap`.
pub fn origin_cutoff(
    f: &Integrand,
    angle: f64,
    radius: f64,
    outward: bool,
    ln_floor: f64,
    cap: f64,
) -> f64 {
    let probe = Leg::Origin {
        angle,
        radius,
        s_max: cap,
        outward,
    };
    let mut s = 0.0;
    let mut below = 0;
    while s < cap {
        s += 0.5;
        if probe.log_weight(f, s) < ln_floor {
            below += 1;
            if below == 4 {
                return s;
            }
        } else {
            below = 0;
        }
    }
    cap
}

/// Length of an outward tail from `start` in direction `angle` after which
/// `|f|` stays below `ln_floor`. Scans by doubling, then requires the next
/// two doublings to stay below as well.
pub fn tail_length(
    f: &Integrand,
    start: Complex64,
    start_arg: f64,
    angle: f64,
    ln_floor: f64,
    ceiling: f64,
) -> Result<f64> {
    let probe = |u: f64| {
        Leg::Ray {
            start,
            start_arg,
            angle,
            length: u,
            outward: true,
        }
        .log_weight(f, u)
    };
    let mut u = 0.25;
    while u <= ceiling {
        if probe(u) < ln_floor && probe(1.5 * u) < ln_floor && probe(2.0 * u) < ln_floor {
            return Ok(u);
        }
        u *= 1.25;
    }
    Err(Error::DegenerateGeometry(format!(
        "integrand does not decay along arg k = {angle:.6} within radius {ceiling}"
    )))
}
