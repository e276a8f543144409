//! Numerical settings shared by the contour engine and the CLI.
//!
//! The on-disk form is plain text, one `key = value` per line; `#` starts a
//! comment. Unknown keys are an error so that typos do not silently fall back
//! to defaults.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ContourConfig {
    /// Target for `abs_err_est <= quad_tol * max(1, |value|)`.
    pub quad_tol: f64,
    /// Bound on the integrand magnitude where tails and origin legs are cut.
    pub tail_tol: f64,
    /// Maximum number of integrand evaluations per integral.
    pub node_ceiling: usize,
    /// Route arcs through the leading-order saddle when one is known.
    pub saddle_hint: bool,
    /// Largest admissible truncation radius.
    pub radius_ceiling: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self {
            quad_tol: 1e-11,
            tail_tol: 1e-15,
            node_ceiling: 2_000_000,
            saddle_hint: false,
            radius_ceiling: 200.0,
        }
    }
}

impl ContourConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1e-14..=1e-4).contains(&self.quad_tol) {
            return Err(Error::InvalidParameter(format!(
                "quad_tol = {} outside [1e-14, 1e-4]",
                self.quad_tol
            )));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol < 1e-3) {
            return Err(Error::InvalidParameter(format!(
                "tail_tol = {} outside (0, 1e-3)",
                self.tail_tol
            )));
        }
        if self.node_ceiling < 1000 {
            return Err(Error::InvalidParameter(format!(
                "node_ceiling = {} is below 1000",
                self.node_ceiling
            )));
        }
        if !(self.radius_ceiling.is_finite() && self.radius_ceiling > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "radius_ceiling = {} must be finite and > 1",
                self.radius_ceiling
            )));
        }
        Ok(())
    }

    /// Apply the contour-related keys of a parsed key-value map, leaving other
    /// keys for the caller.
    pub fn apply(&mut self, entries: &BTreeMap<String, String>) -> Result<()> {
        for (key, value) in entries {
            match key.as_str() {
                "quad_tol" => self.quad_tol = parse_real(key, value)?,
                "tail_tol" => self.tail_tol = parse_real(key, value)?,
                "node_ceiling" => {
                    self.node_ceiling = value.parse().map_err(|_| bad_value(key, value))?
                }
                "saddle_hint" => self.saddle_hint = parse_bool(key, value)?,
                "radius_ceiling" => self.radius_ceiling = parse_real(key, value)?,
                _ => {}
            }
        }
        self.validate()
    }
}

/// Parse `key = value` lines into an ordered map.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidParameter(format!(
                "config line {}: expected `key = value`",
                lineno + 1
            ))
        })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "config line {}: empty key",
                lineno + 1
            )));
        }
        if out
            .insert(key.to_string(), value.trim().to_string())
            .is_some()
        {
            return Err(Error::InvalidParameter(format!(
                "config line {}: duplicate key `{key}`",
                lineno + 1
            )));
        }
    }
    Ok(out)
}

pub fn parse_real(key: &str, value: &str) -> Result<f64> {
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(bad_value(key, value)),
    }
}

pub fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(bad_value(key, value)),
    }
}

fn bad_value(key: &str, value: &str) -> Error {
    Error::InvalidParameter(format!("bad value `{value}` for `{key}`"))
}
