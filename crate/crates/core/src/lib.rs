//! Products of shifted Airy functions through Laplace contour integrals, and
//! the outgoing-wave Green's function of an electron in a static field.

pub mod airy;
pub mod config;
pub mod contour;
pub mod error;
pub mod greens;
pub mod products;
pub mod sampling;

pub use airy::{airy, AiryValue};
pub use config::ContourConfig;
pub use contour::{classify_sector, ContourKind, ContourPath, QuadResult, Sector, ShiftedArgs};
pub use error::{Error, Result};
pub use greens::{
    greens, greens_closed, greens_free, greens_time_integral, scaled_vars, GreensParams, ScaledVars,
};
pub use products::{
    ode_residual, ode_residual_w, ProductValue, Rotation, Route, ShiftedProducts, Sign,
};
