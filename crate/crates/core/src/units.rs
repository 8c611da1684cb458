//! Unit conversions. Everything internal is in eV with hbar = k_B = 1, so rates
//! and temperatures are energies and times are inverse energies.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const EV_PER_INVERSE_CM: f64 = 1.239841984e-4;
/// hbar in eV·ps, i.e. the energy of a 1 ps^-1 rate.
pub const EV_PER_INVERSE_PS: f64 = 6.582119569e-4;
pub const BOLTZMANN_EV_PER_K: f64 = 8.617333262e-5;
const EV_PER_INVERSE_FS: f64 = EV_PER_INVERSE_PS * 1.0e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Unit {
    #[serde(rename = "eV")]
    ElectronVolt,
    #[serde(rename = "cm^-1")]
    InverseCm,
    #[serde(rename = "ps^-1")]
    InversePs,
    #[serde(rename = "K")]
    Kelvin,
}

impl Unit {
    pub fn factor(self) -> f64 {
        match self {
            Unit::ElectronVolt => 1.0,
            Unit::InverseCm => EV_PER_INVERSE_CM,
            Unit::InversePs => EV_PER_INVERSE_PS,
            Unit::Kelvin => BOLTZMANN_EV_PER_K,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Unit::ElectronVolt => "eV",
            Unit::InverseCm => "cm^-1",
            Unit::InversePs => "ps^-1",
            Unit::Kelvin => "K",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "eV" | "ev" => Ok(Unit::ElectronVolt),
            "cm^-1" | "cm-1" | "1/cm" => Ok(Unit::InverseCm),
            "ps^-1" | "ps-1" | "1/ps" => Ok(Unit::InversePs),
            "K" => Ok(Unit::Kelvin),
            other => Err(Error::UnknownUnit(other.to_string())),
        }
    }
}

/// Converts a value carrying one of the supported units into eV.
pub fn to_internal_units(value: f64, unit: Unit) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::Domain {
            quantity: "value",
            value,
            reason: "must be finite",
        });
    }
    Ok(value * unit.factor())
}

/// Same as [`to_internal_units`] but takes the unit as a string tag.
pub fn convert_tagged(value: f64, tag: &str) -> Result<f64> {
    to_internal_units(value, tag.parse()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TimeUnit {
    #[serde(rename = "ps")]
    Picosecond,
    #[serde(rename = "fs")]
    Femtosecond,
    #[serde(rename = "eV^-1")]
    InverseEv,
}

impl FromStr for TimeUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ps" => Ok(TimeUnit::Picosecond),
            "fs" => Ok(TimeUnit::Femtosecond),
            "eV^-1" | "1/eV" => Ok(TimeUnit::InverseEv),
            other => Err(Error::UnknownUnit(other.to_string())),
        }
    }
}

/// Converts a duration into inverse eV.
pub fn time_to_internal(value: f64, unit: TimeUnit) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::Domain {
            quantity: "time",
            value,
            reason: "must be finite",
        });
    }
    Ok(match unit {
        TimeUnit::Picosecond => value / EV_PER_INVERSE_PS,
        TimeUnit::Femtosecond => value / EV_PER_INVERSE_FS,
        TimeUnit::InverseEv => value,
    })
}

/// Inverse of [`time_to_internal`] for picoseconds.
pub fn internal_time_to_ps(t: f64) -> f64 {
    t * EV_PER_INVERSE_PS
}

/// Bose-Einstein occupation at frequency `omega` and temperature `temperature`
/// (both in eV).
pub fn bose_occupation(omega: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    1.0 / (omega / temperature).exp_m1()
}

/// Temperature at which a mode of frequency `omega` has occupation `n`.
pub fn bose_temperature(omega: f64, n: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    omega / (1.0 / n).ln_1p()
}
