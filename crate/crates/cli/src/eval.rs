//! Single-point evaluation.

use std::str::FromStr;

use airy_shift::{
    classify_sector, ProductValue, Rotation, Route, Sector, ShiftedArgs, ShiftedProducts, Sign,
};
use num_complex::Complex64;

use crate::error::CliError;
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    U(Sign),
    W(Sign),
    Product(Rotation, Rotation),
    Diff(Sign),
    AiAiReal,
    WReal(Sign),
}

fn sign(s: &str) -> Option<Sign> {
    match s {
        "+" => Some(Sign::Plus),
        "-" | "\u{2212}" => Some(Sign::Minus),
        _ => None,
    }
}

pub fn rotation(s: &str) -> Option<Rotation> {
    match s.trim() {
        "0" => Some(Rotation::Zero),
        t => sign(t).map(Rotation::from),
    }
}

impl FromStr for Function {
    type Err = String;

    /// `u+`, `w-`, `diff+`, `aiai-real`, `w-real+`, `product` or
    /// `product(r1,r2)` with each rotation one of `0`, `+`, `-`.
    fn from_str(s: &str) -> Result<Self, String> {
        let err = || format!("unknown function {s:?}");
        if s == "aiai-real" {
            return Ok(Function::AiAiReal);
        }
        if s == "product" {
            return Ok(Function::Product(Rotation::Zero, Rotation::Zero));
        }
        if let Some(inner) = s.strip_prefix("product(").and_then(|t| t.strip_suffix(')')) {
            let (a, b) = inner.split_once(',').ok_or_else(err)?;
            return Ok(Function::Product(
                rotation(a).ok_or_else(err)?,
                rotation(b).ok_or_else(err)?,
            ));
        }
        // Everything else ends in its sign.
        let last = s.chars().last().ok_or_else(err)?;
        let head = &s[..s.len() - last.len_utf8()];
        let sg = sign(&last.to_string()).ok_or_else(err)?;
        match head {
            "u" => Ok(Function::U(sg)),
            "w" => Ok(Function::W(sg)),
            "diff" => Ok(Function::Diff(sg)),
            "w-real" => Ok(Function::WReal(sg)),
            _ => Err(err()),
        }
    }
}

pub fn rotation_symbol(r: Rotation) -> &'static str {
    match r {
        Rotation::Zero => "0",
        Rotation::Plus => "+",
        Rotation::Minus => "-",
    }
}

fn sign_symbol(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

impl Function {
    /// Canonical spelling, accepted back by `from_str`.
    pub fn name(self) -> String {
        match self {
            Function::U(s) => format!("u{}", sign_symbol(s)),
            Function::W(s) => format!("w{}", sign_symbol(s)),
            Function::Diff(s) => format!("diff{}", sign_symbol(s)),
            Function::WReal(s) => format!("w-real{}", sign_symbol(s)),
            Function::AiAiReal => "aiai-real".into(),
            Function::Product(a, b) => {
                format!("product({},{})", rotation_symbol(a), rotation_symbol(b))
            }
        }
    }

    pub fn is_real_axis(self) -> bool {
        matches!(self, Function::AiAiReal | Function::WReal(_))
    }
}

pub fn route_name(r: Route) -> &'static str {
    match r {
        Route::Direct => "direct",
        Route::Contour => "contour",
        Route::RealAxis => "real-axis",
    }
}

pub fn sector_name(s: Sector) -> &'static str {
    match s {
        Sector::Inner => "inner",
        Sector::Outer => "outer",
        Sector::Boundary => "boundary",
        Sector::Zero => "zero",
    }
}

pub fn parse_route(s: &str) -> Result<Route, String> {
    match s {
        "direct" => Ok(Route::Direct),
        "contour" => Ok(Route::Contour),
        "real-axis" | "real" => Ok(Route::RealAxis),
        _ => Err(format!(
            "unknown route {s:?}; expected direct, contour or real-axis"
        )),
    }
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let v =
        Complex64::from_str(s.trim()).map_err(|_| format!("{s:?} is not of the form RE+IMi"))?;
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

/// Evaluation inputs; the real-axis functions take `x`, `x0`.
#[derive(Debug, Clone, Copy)]
pub struct Point {
    pub z: Complex64,
    pub z0: Complex64,
}

pub const COLUMNS: [&str; 10] = [
    "function",
    "z_re",
    "z_im",
    "z0_re",
    "z0_im",
    "value_re",
    "value_im",
    "abs_err_est",
    "route",
    "sector",
];

pub fn evaluate(
    p: &ShiftedProducts,
    f: Function,
    at: Point,
    route: Route,
) -> Result<ProductValue, CliError> {
    let real = |v: Complex64, name: &str| {
        if v.im == 0.0 {
            Ok(v.re)
        } else {
            Err(CliError::Config(format!(
                "{name} must be real for this function"
            )))
        }
    };
    let v = match f {
        Function::AiAiReal => p.aiai_real(real(at.z, "x")?, real(at.z0, "x0")?)?,
        Function::WReal(s) => p.w_pm_real(s, real(at.z, "x")?, real(at.z0, "x0")?)?,
        _ => {
            let args = ShiftedArgs::new(at.z, at.z0)?;
            match f {
                Function::U(s) => p.u_pm(s, &args, route)?,
                Function::W(s) => p.w_pm(s, &args, route)?,
                Function::Product(a, b) => p.product(a, b, &args, route)?,
                Function::Diff(s) => p.difference_identity(s, &args, route)?,
                Function::AiAiReal | Function::WReal(_) => unreachable!(),
            }
        }
    };
    Ok(v)
}

pub fn record(f: Function, at: Point, v: &ProductValue) -> Result<Vec<Cell>, CliError> {
    let sector = classify_sector(at.z0)?;
    Ok(vec![
        f.name().into(),
        at.z.re.into(),
        at.z.im.into(),
        at.z0.re.into(),
        at.z0.im.into(),
        v.value.re.into(),
        v.value.im.into(),
        v.abs_err_est.into(),
        route_name(v.route).into(),
        sector_name(sector).into(),
    ])
}

pub fn run(p: &ShiftedProducts, f: Function, at: Point, route: Route) -> Result<Table, CliError> {
    let v = evaluate(p, f, at, route)?;
    let mut t = Table::new(&COLUMNS);
    t.push(record(f, at, &v)?);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_names() {
        assert_eq!("u+".parse(), Ok(Function::U(Sign::Plus)));
        assert_eq!("w\u{2212}".parse(), Ok(Function::W(Sign::Minus)));
        assert_eq!("diff-".parse(), Ok(Function::Diff(Sign::Minus)));
        assert_eq!("w-real+".parse(), Ok(Function::WReal(Sign::Plus)));
        assert_eq!("aiai-real".parse(), Ok(Function::AiAiReal));
        assert_eq!(
            "product(+,0)".parse(),
            Ok(Function::Product(Rotation::Plus, Rotation::Zero))
        );
        assert!("v+".parse::<Function>().is_err());
        for name in ["u-", "w+", "diff-", "w-real-", "aiai-real", "product(-,+)"] {
            assert_eq!(name.parse::<Function>().unwrap().name(), name);
        }
        assert!("product(+,2)".parse::<Function>().is_err());
    }

    #[test]
    fn complex_literals() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("0"), Ok(c(0.0, 0.0)));
        assert_eq!(parse_complex("-1"), Ok(c(-1.0, 0.0)));
        assert_eq!(parse_complex("1.5-2i"), Ok(c(1.5, -2.0)));
        assert_eq!(parse_complex("-0.25+3.5i"), Ok(c(-0.25, 3.5)));
        assert_eq!(parse_complex("2i"), Ok(c(0.0, 2.0)));
        assert_eq!(parse_complex("1e-3+2e-4i"), Ok(c(1e-3, 2e-4)));
        assert!(parse_complex("(1,2)").is_err());
        assert!(parse_complex("nan").is_err());
    }
}
