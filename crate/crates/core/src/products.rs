//! The four basis products
//!
//! ```text
//! U±(z; z0) = Ai(ω^±(z + z0)) Ai(ω^± z)
//! W±(z; z0) = Ai(z + z0) Ai(ω^± z),        ω^± = e^{±2iπ/3}
//! ```
//!
//! and the five remaining products of Ai at rotated, shifted arguments,
//! each available straight from the oracle or through contour integrals.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_8, PI};

use num_complex::Complex64;

use crate::airy::airy;
use crate::config::ContourConfig;
use crate::contour::path::{origin_cutoff, tail_length, Integrand, Leg};
use crate::contour::{contour_integral, quad, ContourKind, QuadResult, Sector, ShiftedArgs};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Which of Ai(t), Ai(ω^+ t), Ai(ω^- t) a factor is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rotation {
    Zero,
    Plus,
    Minus,
}

impl Rotation {
    pub const ALL: [Rotation; 3] = [Rotation::Zero, Rotation::Plus, Rotation::Minus];

    /// `e^{2iπ r/3}`.
    pub fn factor(self) -> Complex64 {
        match self {
            Rotation::Zero => Complex64::new(1.0, 0.0),
            Rotation::Plus => Complex64::from_polar(1.0, 2.0 * FRAC_PI_3),
            Rotation::Minus => Complex64::from_polar(1.0, -2.0 * FRAC_PI_3),
        }
    }
}

impl From<Sign> for Rotation {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => Rotation::Plus,
            Sign::Minus => Rotation::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Direct,
    Contour,
    RealAxis,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductValue {
    pub value: Complex64,
    pub route: Route,
    pub abs_err_est: f64,
}

impl ProductValue {
    fn scaled(q: QuadResult, factor: Complex64, route: Route) -> Self {
        Self {
            value: q.value * factor,
            route,
            abs_err_est: q.abs_err_est * factor.norm(),
        }
    }
}

fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// `e^{iπ/4 + iσπ/3} / (4π^{3/2})`.
fn prefactor(sigma: f64) -> Complex64 {
    cis(FRAC_PI_4 + sigma * FRAC_PI_3) / (4.0 * PI.powf(1.5))
}

/// Linear combination of product values, errors adding in magnitude.
fn combine(terms: &[(Complex64, ProductValue)], route: Route) -> ProductValue {
    terms.iter().fold(
        ProductValue {
            value: Complex64::new(0.0, 0.0),
            route,
            abs_err_est: 0.0,
        },
        |acc, (c, p)| ProductValue {
            value: acc.value + c * p.value,
            route,
            abs_err_est: acc.abs_err_est + c.norm() * p.abs_err_est,
        },
    )
}

/// Oracle product `Ai(r1 (z + z0)) Ai(r2 z)`.
fn direct(r1: Rotation, r2: Rotation, args: &ShiftedArgs) -> Result<ProductValue> {
    let t1 = r1.factor() * (args.z + args.z0);
    let t2 = r2.factor() * args.z;
    let a = airy(t1)?;
    let b = airy(t2)?;
    Ok(ProductValue {
        value: a.ai * b.ai,
        route: Route::Direct,
        abs_err_est: a.ai.norm() * b.abs_err(t2) + b.ai.norm() * a.abs_err(t1),
    })
}

/// Stateless evaluator; the configuration only affects contour routes.
#[derive(Debug, Clone, Default)]
pub struct ShiftedProducts {
    pub config: ContourConfig,
}

impl ShiftedProducts {
    pub fn new(config: ContourConfig) -> Self {
        Self { config }
    }

    fn integral(&self, kind: ContourKind, args: &ShiftedArgs) -> Result<QuadResult> {
        contour_integral(kind, args, &self.config)
    }

    pub fn u_pm(&self, sign: Sign, args: &ShiftedArgs, route: Route) -> Result<ProductValue> {
        match route {
            Route::Direct => direct(sign.into(), sign.into(), args),
            Route::Contour => {
                let kind = match sign {
                    Sign::Plus => ContourKind::LPlus,
                    Sign::Minus => ContourKind::LMinus,
                };
                let q = self.integral(kind, args)?;
                Ok(ProductValue::scaled(
                    q,
                    prefactor(-sign.value()),
                    Route::Contour,
                ))
            }
            Route::RealAxis => Err(Error::InvalidParameter(
                "U± has no real-axis representation".into(),
            )),
        }
    }

    pub fn w_pm(&self, sign: Sign, args: &ShiftedArgs, route: Route) -> Result<ProductValue> {
        match route {
            Route::Direct => direct(Rotation::Zero, sign.into(), args),
            Route::Contour => {
                let kind = match sign {
                    Sign::Plus => ContourKind::RPlus,
                    Sign::Minus => ContourKind::RMinus,
                };
                let pref = prefactor(sign.value());
                let r = self.integral(kind, args)?;
                match args.z0_sector {
                    Sector::Inner | Sector::Zero | Sector::Boundary => {
                        Ok(ProductValue::scaled(r, pref, Route::Contour))
                    }
                    Sector::Outer => {
                        let o = self.integral(ContourKind::O, args)?;
                        let sum = QuadResult {
                            value: r.value + sign.value() * o.value,
                            abs_err_est: r.abs_err_est + o.abs_err_est,
                            nodes: r.nodes + o.nodes,
                        };
                        Ok(ProductValue::scaled(sum, pref, Route::Contour))
                    }
                }
            }
            Route::RealAxis => {
                let (x, x0) = real_pair(args)?;
                self.w_pm_real(sign, x, x0)
            }
        }
    }

    /// `Ai(r1 (z + z0)) Ai(r2 z)` for any pair of rotations.
    pub fn product(
        &self,
        r1: Rotation,
        r2: Rotation,
        args: &ShiftedArgs,
        route: Route,
    ) -> Result<ProductValue> {
        use Rotation::*;
        match route {
            Route::Direct => direct(r1, r2, args),
            Route::RealAxis => match (r1, r2) {
                (Zero, Zero) => {
                    let (x, x0) = real_pair(args)?;
                    self.aiai_real(x, x0)
                }
                (Zero, Plus) => self.w_pm(Sign::Plus, args, route),
                (Zero, Minus) => self.w_pm(Sign::Minus, args, route),
                _ => Err(Error::InvalidParameter(format!(
                    "product ({r1:?}, {r2:?}) has no real-axis representation"
                ))),
            },
            Route::Contour => {
                let c = Route::Contour;
                match (r1, r2) {
                    (Zero, Zero) => {
                        let wp = self.w_pm(Sign::Plus, args, c)?;
                        let wm = self.w_pm(Sign::Minus, args, c)?;
                        Ok(combine(&[(cis(-FRAC_PI_3), wp), (cis(FRAC_PI_3), wm)], c))
                    }
                    (Plus, Plus) => self.u_pm(Sign::Plus, args, c),
                    (Minus, Minus) => self.u_pm(Sign::Minus, args, c),
                    (Zero, Plus) => self.w_pm(Sign::Plus, args, c),
                    (Zero, Minus) => self.w_pm(Sign::Minus, args, c),
                    (Plus, Zero) | (Minus, Zero) => {
                        let s = if r1 == Plus { Sign::Plus } else { Sign::Minus };
                        let sv = s.value();
                        let same = self.u_pm(s, args, c)?;
                        let other = self.u_pm(s.flip(), args, c)?;
                        let w = self.w_pm(s.flip(), args, c)?;
                        let ph = cis(-sv * FRAC_PI_3);
                        Ok(combine(
                            &[(Complex64::new(1.0, 0.0), other), (ph, same), (-ph, w)],
                            c,
                        ))
                    }
                    (Plus, Minus) | (Minus, Plus) => {
                        let s = if r1 == Plus { Sign::Plus } else { Sign::Minus };
                        let sv = s.value();
                        let u = self.u_pm(s.flip(), args, c)?;
                        let w = self.w_pm(s.flip(), args, c)?;
                        Ok(combine(
                            &[(cis(-sv * FRAC_PI_3), u), (cis(sv * FRAC_PI_3), w)],
                            c,
                        ))
                    }
                }
            }
        }
    }

    /// `Ai(ω^±(z + z0)) Ai(z) - Ai(z + z0) Ai(ω^± z)`. The contour route uses
    /// the closed loop around the cut, with the sign fixed by the sector.
    pub fn difference_identity(
        &self,
        sign: Sign,
        args: &ShiftedArgs,
        route: Route,
    ) -> Result<ProductValue> {
        match route {
            Route::Direct => {
                let a = direct(sign.into(), Rotation::Zero, args)?;
                let b = direct(Rotation::Zero, sign.into(), args)?;
                let one = Complex64::new(1.0, 0.0);
                Ok(combine(&[(one, a), (-one, b)], Route::Direct))
            }
            Route::Contour => {
                let o = self.integral(ContourKind::O, args)?;
                let orient = match args.z0_sector {
                    Sector::Outer => -1.0,
                    _ => 1.0,
                };
                let factor = prefactor(sign.value()) * (orient * sign.value());
                Ok(ProductValue::scaled(o, factor, Route::Contour))
            }
            Route::RealAxis => Err(Error::InvalidParameter(
                "the difference identity has no real-axis form".into(),
            )),
        }
    }

    /// W±(x; x0) for real `x` and `x0 >= 0` from the half-line integral
    ///
    /// ```text
    /// e^{±iπ/12}/(4π^{3/2}) ∫_0^∞ exp[∓ik(x + x0/2) ± i x0²/(4k) ∓ ik³/12] dk/k^{1/2}
    /// ```
    ///
    /// rotated by `∓π/8` off the real axis.
    pub fn w_pm_real(&self, sign: Sign, x: f64, x0: f64) -> Result<ProductValue> {
        if !x.is_finite() || !x0.is_finite() {
            return Err(Error::NonFinite("real-axis argument"));
        }
        if x0 < 0.0 {
            return Err(Error::NegativeShift(x0));
        }
        let sigma = sign.value();
        let a = x + 0.5 * x0;
        let b = 0.25 * x0 * x0;
        let f = Integrand {
            lin: -I * sigma * a,
            inv: I * sigma * b,
            cubic: -I * sigma / 12.0,
            power: 0.5,
        };
        let q = self.half_line(&f, -sigma * FRAC_PI_8)?;
        let pref = cis(sigma * PI / 12.0) / (4.0 * PI.powf(1.5));
        Ok(ProductValue::scaled(q, pref, Route::RealAxis))
    }

    /// Ai(x + x0) Ai(x) for any real `x`, `x0` from
    ///
    /// ```text
    /// 1/(2π^{3/2}) ∫_0^∞ cos[k(x + x0/2) - x0²/(4k) + k³/12 + π/4] dk/k^{1/2}
    /// ```
    ///
    /// taken as the real part of the exponential integral rotated by `+π/8`.
    pub fn aiai_real(&self, x: f64, x0: f64) -> Result<ProductValue> {
        if !x.is_finite() || !x0.is_finite() {
            return Err(Error::NonFinite("real-axis argument"));
        }
        let f = Integrand {
            lin: I * (x + 0.5 * x0),
            inv: -I * 0.25 * x0 * x0,
            cubic: I / 12.0,
            power: 0.5,
        };
        let q = self.half_line(&f, FRAC_PI_8)?;
        let scale = 1.0 / (2.0 * PI.powf(1.5));
        Ok(ProductValue {
            value: Complex64::new((cis(FRAC_PI_4) * q.value).re * scale, 0.0),
            route: Route::RealAxis,
            abs_err_est: q.abs_err_est * scale,
        })
    }

    /// `∫_0^∞ f(k) dk` along the ray `arg k = angle`.
    fn half_line(&self, f: &Integrand, angle: f64) -> Result<QuadResult> {
        let cfg = &self.config;
        let ln_floor = cfg.tail_tol.ln();
        let rho = 1.0;
        let start = Complex64::from_polar(rho, angle);
        let length = tail_length(f, start, angle, angle, ln_floor, cfg.radius_ceiling)?;
        let legs = [
            Leg::Origin {
                angle,
                radius: rho,
                s_max: origin_cutoff(f, angle, rho, true, ln_floor, 200.0),
                outward: true,
            },
            Leg::Ray {
                start,
                start_arg: angle,
                angle,
                length,
                outward: true,
            },
        ];
        quad::integrate(&legs, f, cfg.quad_tol, 1.0, cfg.node_ceiling)
    }
}

fn real_pair(args: &ShiftedArgs) -> Result<(f64, f64)> {
    if args.z.im != 0.0 || args.z0.im != 0.0 {
        return Err(Error::InvalidParameter(
            "real-axis route needs real z and z0".into(),
        ));
    }
    Ok((args.z.re, args.z0.re))
}

/// Values of `v = Ai(ω^r t)` and its first four derivatives at `t`, from
/// `v'' = t v`.
fn derivatives(r: Rotation, t: Complex64) -> Result<[Complex64; 5]> {
    let w = r.factor();
    let a = airy(w * t)?;
    let v = a.ai;
    let dv = w * a.ai_prime;
    Ok([v, dv, t * v, v + t * dv, 2.0 * dv + t * t * v])
}

fn product_derivatives(r1: Rotation, r2: Rotation, args: &ShiftedArgs) -> Result<[Complex64; 5]> {
    const BINOM: [[f64; 5]; 5] = [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0, 0.0],
        [1.0, 3.0, 3.0, 1.0, 0.0],
        [1.0, 4.0, 6.0, 4.0, 1.0],
    ];
    let a = derivatives(r1, args.z + args.z0)?;
    let b = derivatives(r2, args.z)?;
    let mut w = [Complex64::new(0.0, 0.0); 5];
    for n in 0..5 {
        for j in 0..=n {
            w[n] += BINOM[n][j] * a[j] * b[n - j];
        }
    }
    Ok(w)
}

fn normalized(terms: &[Complex64]) -> f64 {
    let sum: Complex64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|t| t.norm()).sum();
    if scale == 0.0 {
        0.0
    } else {
        sum.norm() / scale
    }
}

/// Normalized residual of
/// `w'''' - (4z + 2z0) w'' - 6 w' + z0² w = 0` for `w = Ai(r1 (z + z0)) Ai(r2 z)`.
pub fn ode_residual(r1: Rotation, r2: Rotation, args: &ShiftedArgs) -> Result<f64> {
    let w = product_derivatives(r1, r2, args)?;
    let (z, z0) = (args.z, args.z0);
    Ok(normalized(&[
        w[4],
        -(4.0 * z + 2.0 * z0) * w[2],
        -6.0 * w[1],
        z0 * z0 * w[0],
    ]))
}

/// [`ode_residual`] for `Ai(z + z0) Ai(z)`.
pub fn ode_residual_w(args: &ShiftedArgs) -> Result<f64> {
    ode_residual(Rotation::Zero, Rotation::Zero, args)
}

/// Normalized residual of `w''' - 4z w' - 2w = 0` for the unshifted product
/// `Ai(r1 z) Ai(r2 z)`.
pub fn reduced_ode_residual(r1: Rotation, r2: Rotation, z: Complex64) -> Result<f64> {
    let args = ShiftedArgs::new(z, Complex64::new(0.0, 0.0))?;
    let w = product_derivatives(r1, r2, &args)?;
    Ok(normalized(&[w[3], -4.0 * z * w[1], -2.0 * w[0]]))
}
