//! Reference evaluator for Ai(z) and Ai'(z) at complex argument.
//!
//! Three regimes, all hidden behind [`airy`]:
//!
//! * `|z| <= 2`: Taylor expansion about the origin.
//! * `|z| >= 10`: the large-argument expansion in powers of 1/zeta,
//!   zeta = (2/3) z^{3/2}, applied directly for `|arg z| <= 2pi/3` and through
//!   the connection formula `Ai(z) = e^{i pi/3} Ai(z e^{-2i pi/3}) + e^{-i pi/3} Ai(z e^{2i pi/3})`
//!   beyond that.
//! * In between, the Airy equation is integrated by Taylor steps along the ray
//!   through `z`. Inside `|arg z| <= pi/3` Ai is recessive at infinity, so the
//!   march starts at radius 10 and goes inward; elsewhere it starts at radius 2
//!   and goes outward. Both directions follow the growth of Ai and are stable.
//!
//! Arguments with negative imaginary part are evaluated through the
//! reflection `Ai(conj z) = conj Ai(z)`, which therefore holds bit-for-bit.

#![allow(clippy::excessive_precision)]

use std::f64::consts::{FRAC_PI_3, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest |z| accepted by [`airy`].
pub const ENVELOPE: f64 = 50.0;

/// Ai(0) = 3^{-2/3} / Gamma(2/3).
pub const AI_ZERO: f64 = 0.355_028_053_887_817_239_260_063_186_004;
/// Ai'(0) = -3^{-1/3} / Gamma(1/3).
pub const AI_PRIME_ZERO: f64 = -0.258_819_403_792_806_798_405_183_560_189;

const SERIES_RADIUS: f64 = 2.0;
const ASYMPTOTIC_RADIUS: f64 = 10.0;
const MAX_STEP: f64 = 0.5;
const MAX_TERMS: usize = 400;

/// Ai and Ai' at one point, with an a-priori error bound.
///
/// `est_rel_err` is measured against `max(|Ai(z)|, M(z))`, where `M(z)` is
/// the local modulus of the Airy solutions (the size of the exponentials in
/// the large-argument form). Near a zero of Ai a pure relative error is
/// meaningless, so the modulus takes over there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValue {
    pub ai: Complex64,
    pub ai_prime: Complex64,
    pub est_rel_err: f64,
}

impl AiryValue {
    /// Absolute error bound on `ai`.
    pub fn abs_err(&self, z: Complex64) -> f64 {
        self.est_rel_err * self.ai.norm().max(modulus(z))
    }
}

/// Ai(z) and Ai'(z) for `|z| <= 50`.
pub fn airy(z: Complex64) -> Result<AiryValue> {
    airy_within(z, ENVELOPE)
}

/// Same as [`airy`] with a caller-chosen envelope. The large-argument branch
/// stays accurate far beyond 50; the limit only guards against overflow of
/// the exponential factors, which is reported as `NonFinite`.
pub fn airy_within(z: Complex64, limit: f64) -> Result<AiryValue> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite("airy argument"));
    }
    let r = z.norm();
    if r > limit {
        return Err(Error::EnvelopeExceeded { modulus: r, limit });
    }
    if z.im < 0.0 {
        let v = evaluate(z.conj())?;
        return Ok(AiryValue {
            ai: v.ai.conj(),
            ai_prime: v.ai_prime.conj(),
            est_rel_err: v.est_rel_err,
        });
    }
    let mut v = evaluate(z)?;
    if z.im == 0.0 {
        v.ai.im = 0.0;
        v.ai_prime.im = 0.0;
    }
    Ok(v)
}

/// `|Ai''(z) - z Ai(z)| / max(1, |Ai(z)|)` with Ai'' from a centered second
/// difference of step `h` along the real direction.
pub fn airy_ode_residual(z: Complex64, h: f64) -> Result<f64> {
    if !(1e-4..=1e-1).contains(&h) {
        return Err(Error::InvalidParameter(format!(
            "finite-difference step {h} outside [1e-4, 1e-1]"
        )));
    }
    let centre = airy(z)?.ai;
    let plus = airy(z + h)?.ai;
    let minus = airy(z - h)?.ai;
    let second = (plus - 2.0 * centre + minus) / (h * h);
    Ok((second - z * centre).norm() / centre.norm().max(1.0))
}

/// Size of the Airy solutions near `z`: the larger of the two exponentials
/// `exp(-+zeta) / (2 sqrt(pi) z^{1/4})` that are present at this argument.
pub(crate) fn modulus(z: Complex64) -> f64 {
    let r = z.norm();
    if r < 1.0 {
        return 0.25;
    }
    let zeta = zeta_of(z);
    let recessive = (-zeta.re).exp();
    let m = if z.arg().abs() > FRAC_PI_3 {
        recessive.max(zeta.re.exp())
    } else {
        recessive
    };
    m / (2.0 * PI.sqrt() * r.powf(0.25))
}

fn zeta_of(z: Complex64) -> Complex64 {
    2.0 / 3.0 * z * z.sqrt()
}

#[derive(Debug, Clone, Copy)]
struct Partial {
    ai: Complex64,
    aip: Complex64,
    /// error relative to max(|ai|, modulus)
    rel: f64,
}

fn evaluate(z: Complex64) -> Result<AiryValue> {
    let r = z.norm();
    let p = if r <= SERIES_RADIUS {
        from_origin(z)
    } else if r >= ASYMPTOTIC_RADIUS {
        large_argument(z)?
    } else if z.arg().abs() <= FRAC_PI_3 {
        let start = z * (ASYMPTOTIC_RADIUS / r);
        march(start, large_argument(start)?, z)
    } else {
        let start = z * (SERIES_RADIUS / r);
        march(start, from_origin(start), z)
    };
    if !(p.ai.re.is_finite() && p.ai.im.is_finite() && p.aip.re.is_finite() && p.aip.im.is_finite())
    {
        return Err(Error::NonFinite("airy value overflow"));
    }
    Ok(AiryValue {
        ai: p.ai,
        ai_prime: p.aip,
        est_rel_err: p.rel,
    })
}

fn from_origin(z: Complex64) -> Partial {
    let (ai, aip, abs_sum) = taylor_step(
        Complex64::new(0.0, 0.0),
        Complex64::new(AI_ZERO, 0.0),
        Complex64::new(AI_PRIME_ZERO, 0.0),
        z,
    );
    let scale = ai.norm().max(modulus(z));
    Partial {
        ai,
        aip,
        rel: 4.0 * f64::EPSILON * (1.0 + abs_sum / scale),
    }
}

/// One Taylor step of `y'' = t y` from `t = a` to `t = a + h`.
///
/// Coefficients follow `c_{n+2} = (a c_n + c_{n-1}) / ((n+2)(n+1))`. Returns
/// `y(a+h)`, `y'(a+h)` and the sum of term magnitudes of `y`, which bounds the
/// rounding error of the sum.
fn taylor_step(
    a: Complex64,
    y: Complex64,
    yp: Complex64,
    h: Complex64,
) -> (Complex64, Complex64, f64) {
    let mut c_prev = Complex64::new(0.0, 0.0); // c_{n-1}
    let mut c_n = y; // c_n
    let mut c_next = yp; // c_{n+1}
    let mut h_pow = Complex64::new(1.0, 0.0); // h^n
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let term = c_n * h_pow;
        value += term;
        abs_sum += term.norm();
        // d/dh of c_{n+1} h^{n+1}
        deriv += c_next * h_pow * (n as f64 + 1.0);

        let small = term.norm() <= f64::EPSILON * 1e-2 * value.norm()
            && (c_next * h_pow * (n as f64 + 1.0)).norm() <= f64::EPSILON * 1e-2 * deriv.norm();
        quiet = if small { quiet + 1 } else { 0 };
        if quiet >= 3 {
            break;
        }

        let nf = n as f64;
        let c_after = (a * c_n + c_prev) / ((nf + 2.0) * (nf + 1.0));
        c_prev = c_n;
        c_n = c_next;
        c_next = c_after;
        h_pow *= h;
    }
    (value, deriv, abs_sum)
}

fn march(start: Complex64, initial: Partial, end: Complex64) -> Partial {
    let span = end - start;
    let steps = (span.norm() / MAX_STEP).ceil().max(1.0) as usize;
    let h = span / steps as f64;
    let mut a = start;
    let mut y = initial.ai;
    let mut yp = initial.aip;
    let mut rel = initial.rel;
    for _ in 0..steps {
        let (ny, nyp, abs_sum) = taylor_step(a, y, yp, h);
        a += h;
        y = ny;
        yp = nyp;
        rel += 4.0 * f64::EPSILON * (1.0 + abs_sum / y.norm().max(modulus(a)));
    }
    Partial {
        ai: y,
        aip: yp,
        rel,
    }
}

fn large_argument(z: Complex64) -> Result<Partial> {
    if z.arg().abs() <= 2.0 * FRAC_PI_3 {
        return Ok(principal_expansion(z));
    }
    let down = Complex64::from_polar(1.0, -2.0 * FRAC_PI_3);
    let up = Complex64::from_polar(1.0, 2.0 * FRAC_PI_3);
    let a = principal_expansion(z * down);
    let b = principal_expansion(z * up);
    let p3 = Complex64::from_polar(1.0, FRAC_PI_3);
    let m3 = p3.conj();
    let ai = p3 * a.ai + m3 * b.ai;
    let aip = m3 * a.aip + p3 * b.aip;
    let scale = ai.norm().max(modulus(z));
    let abs_err =
        a.rel * a.ai.norm().max(modulus(z * down)) + b.rel * b.ai.norm().max(modulus(z * up));
    Ok(Partial {
        ai,
        aip,
        rel: abs_err / scale + 2.0 * f64::EPSILON,
    })
}

/// Large-|z| expansion valid for `|arg z| <= 2pi/3`.
fn principal_expansion(z: Complex64) -> Partial {
    let zeta = zeta_of(z);
    let inv = 1.0 / zeta;
    let quarter = z.sqrt().sqrt();
    let mut u = 1.0_f64;
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum_u = Complex64::new(1.0, 0.0);
    let mut sum_v = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    let mut truncation = 0.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        power *= -inv;
        let tu = power * u;
        let tv = power * v;
        let size = tu.norm().max(tv.norm());
        if size > last {
            // past the smallest term: the series has started to diverge
            truncation = last;
            break;
        }
        sum_u += tu;
        sum_v += tv;
        last = size;
        if size <= f64::EPSILON * 1e-2 {
            truncation = size;
            break;
        }
    }
    let front = (-zeta).exp() / (2.0 * PI.sqrt());
    let ai = front / quarter * sum_u;
    let aip = -front * quarter * sum_v;
    let scale = ai.norm().max(modulus(z));
    let rel =
        (truncation + 4.0 * f64::EPSILON * (2.0 + zeta.norm())) * (ai.norm() / scale).max(1e-300);
    Partial {
        ai,
        aip,
        rel: rel.max(4.0 * f64::EPSILON),
    }
}
