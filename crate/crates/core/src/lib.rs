//! Heat engine pumped by classical or entangled two-photon light.
//!
//! The crate covers the six-level master equation, the reduction of the
//! coherent pump to an effective thermal bath, the closed-form power and
//! efficiency expressions of the resulting three-level engine, the
//! two-photon spectroscopic signals and the SPDC source model.

pub mod bath;
pub mod engine;
pub mod error;
pub mod lindblad;
pub mod optimize;
pub mod oracle;
pub mod output;
pub mod params;
pub mod presets;
pub mod spdc;
pub mod special;
pub mod spectro;
pub mod units;

pub use error::{Error, Result};
