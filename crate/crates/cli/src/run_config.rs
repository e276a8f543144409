//! Run settings: defaults, then the config file, then command-line flags.

use std::path::Path;

use airy_shift::config::{parse_key_values, parse_real};
use airy_shift::sampling::DEFAULT_SEED;
use airy_shift::ContourConfig;

use crate::error::CliError;
use crate::output::Format;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub contour: ContourConfig,
    /// Contour route against direct route.
    pub route_tol: f64,
    /// Residuals built from oracle values only (ODE, linear identities).
    pub identity_tol: f64,
    /// Closed-form Green's function against its time integral.
    pub greens_tol: f64,
    /// Quadrature tolerance for the Green's time integral.
    pub greens_quad_tol: f64,
    /// Grid size; `None` leaves each command its own default.
    pub count: Option<usize>,
    pub z_max: f64,
    pub z0_max: f64,
    pub eta_min: f64,
    pub eta_max: f64,
    pub greens_xi: f64,
    pub greens_field: f64,
    pub seed: u64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            contour: ContourConfig::default(),
            route_tol: 1e-7,
            identity_tol: 1e-10,
            greens_tol: 1e-6,
            greens_quad_tol: 1e-10,
            count: None,
            z_max: 4.0,
            z0_max: 3.0,
            eta_min: 0.1,
            eta_max: 5.0,
            greens_xi: -1.0,
            greens_field: 0.1,
            seed: DEFAULT_SEED,
            format: Format::Csv,
        }
    }
}

fn bad(key: &str, value: &str) -> CliError {
    CliError::Config(format!("{key} = {value:?} is not valid"))
}

fn tolerance(key: &str, v: f64, lo: f64, hi: f64) -> Result<(), CliError> {
    if (lo..=hi).contains(&v) {
        Ok(())
    } else {
        Err(CliError::Config(format!(
            "{key} = {v} outside [{lo:e}, {hi:e}]"
        )))
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        let entries = parse_key_values(text)?;
        self.contour.apply(&entries)?;
        for (key, value) in &entries {
            let r = || parse_real(key, value).map_err(CliError::from);
            match key.as_str() {
                "quad_tol" | "tail_tol" | "node_ceiling" | "saddle_hint" | "radius_ceiling" => {}
                "route_tol" => self.route_tol = r()?,
                "identity_tol" => self.identity_tol = r()?,
                "greens_tol" => self.greens_tol = r()?,
                "greens_quad_tol" => self.greens_quad_tol = r()?,
                "count" => self.count = Some(value.parse().map_err(|_| bad(key, value))?),
                "z_max" => self.z_max = r()?,
                "z0_max" => self.z0_max = r()?,
                "eta_min" => self.eta_min = r()?,
                "eta_max" => self.eta_max = r()?,
                "greens_xi" => self.greens_xi = r()?,
                "greens_field" => self.greens_field = r()?,
                "seed" => self.seed = value.parse().map_err(|_| bad(key, value))?,
                "format" => self.format = Format::parse(value).ok_or_else(|| bad(key, value))?,
                _ => return Err(CliError::Config(format!("unknown key {key:?}"))),
            }
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.contour.validate()?;
        tolerance("route_tol", self.route_tol, 1e-14, 1e-2)?;
        tolerance("identity_tol", self.identity_tol, 1e-15, 1e-2)?;
        tolerance("greens_tol", self.greens_tol, 1e-14, 1e-2)?;
        tolerance("greens_quad_tol", self.greens_quad_tol, 1e-10, 1e-4)?;
        if self.count == Some(0) {
            return Err(CliError::Config("count must be at least 1".into()));
        }
        for (key, v) in [("z_max", self.z_max), ("z0_max", self.z0_max)] {
            if !(v > 0.0 && v <= 10.0) {
                return Err(CliError::Config(format!("{key} = {v} outside (0, 10]")));
            }
        }
        if !(self.eta_min > 0.0 && self.eta_max > self.eta_min && self.eta_max.is_finite()) {
            return Err(CliError::Config(format!(
                "eta range [{}, {}] must satisfy 0 < eta_min < eta_max",
                self.eta_min, self.eta_max
            )));
        }
        if !self.greens_xi.is_finite() {
            return Err(CliError::Config("greens_xi must be finite".into()));
        }
        if !(self.greens_field > 0.0 && self.greens_field.is_finite()) {
            return Err(CliError::Config("greens_field must be positive".into()));
        }
        Ok(())
    }
}
