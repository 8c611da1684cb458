//! TOML run configuration. Physical quantities are `{ value, unit }` tables;
//! dimensionless numbers are plain.

use std::path::Path;

use serde::{Deserialize, Serialize};
use tpqhe_core::bath::FitMode;
use tpqhe_core::engine::EfficiencyForm;
use tpqhe_core::params::{Detunings, DimensionlessSet, PumpSpec, SystemParams};
use tpqhe_core::special::{linspace, logspace};
use tpqhe_core::spdc::{JointAmplitude, JsaWindow};
use tpqhe_core::units::{convert_tagged, time_to_internal, TimeUnit};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Populations,
    BathFit,
    EngineSweep,
    Bounds,
    Spectro,
    Spdc,
    OracleCheck,
}

impl Scenario {
    pub fn label(self) -> &'static str {
        match self {
            Scenario::Populations => "populations",
            Scenario::BathFit => "bath-fit",
            Scenario::EngineSweep => "engine-sweep",
            Scenario::Bounds => "bounds",
            Scenario::Spectro => "spectro",
            Scenario::Spdc => "spdc",
            Scenario::OracleCheck => "oracle-check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Quantity {
    pub value: f64,
    pub unit: String,
}

impl Quantity {
    /// Energy, rate or temperature in eV.
    pub fn energy(&self, field: &str) -> Result<f64, CliError> {
        convert_tagged(self.value, &self.unit).map_err(|e| CliError::Config(format!("{field}: {e}")))
    }

    /// Duration in inverse eV.
    pub fn time(&self, field: &str) -> Result<f64, CliError> {
        let unit: TimeUnit = self
            .unit
            .parse()
            .map_err(|e| CliError::Config(format!("{field}: {e}")))?;
        time_to_internal(self.value, unit).map_err(|e| CliError::Config(format!("{field}: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Occupations {
    /// n_2 and n_c as given.
    #[default]
    Given,
    /// n_2 and n_c from the bath temperatures.
    Bose,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetuningBlock {
    pub pump_1: Quantity,
    pub pump_2: Quantity,
    pub probe: Quantity,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemBlock {
    pub omega_g: Quantity,
    pub omega_0: Quantity,
    pub omega_e: Quantity,
    pub omega_ep: Quantity,
    pub omega_1: Quantity,
    pub omega_2: Quantity,
    pub gamma_2: Quantity,
    pub gamma_c: Quantity,
    pub gamma_e: Quantity,
    #[serde(default)]
    pub occupations: Occupations,
    pub n_2: Option<f64>,
    pub n_c: Option<f64>,
    pub n_e: f64,
    #[serde(rename = "T_2")]
    pub t_2: Quantity,
    #[serde(rename = "T_c")]
    pub t_c: Quantity,
    pub detunings: Option<DetuningBlock>,
}

impl SystemBlock {
    pub fn resolve(&self) -> Result<SystemParams, CliError> {
        let p = self.resolve_unchecked()?;
        p.validate()?;
        Ok(p)
    }

    /// Unit conversion only; the physical validation is left to the caller.
    pub fn resolve_unchecked(&self) -> Result<SystemParams, CliError> {
        let detunings = match &self.detunings {
            Some(d) => Detunings {
                pump_1: d.pump_1.energy("detunings.pump_1")?,
                pump_2: d.pump_2.energy("detunings.pump_2")?,
                probe: d.probe.energy("detunings.probe")?,
            },
            None => Detunings::default(),
        };
        let (n_2, n_c) = match (self.occupations, self.n_2, self.n_c) {
            (Occupations::Given, Some(a), Some(b)) => (a, b),
            (Occupations::Given, _, _) => {
                return Err(CliError::Config(
                    "system: n_2 and n_c are required unless occupations = \"bose\"".into(),
                ))
            }
            (Occupations::Bose, None, None) => (0.0, 0.0),
            (Occupations::Bose, _, _) => {
                return Err(CliError::Config(
                    "system: n_2/n_c must be omitted when occupations = \"bose\"".into(),
                ))
            }
        };
        let p = SystemParams {
            omega_g: self.omega_g.energy("system.omega_g")?,
            omega_0: self.omega_0.energy("system.omega_0")?,
            omega_e: self.omega_e.energy("system.omega_e")?,
            omega_ep: self.omega_ep.energy("system.omega_ep")?,
            omega_1: self.omega_1.energy("system.omega_1")?,
            omega_2: self.omega_2.energy("system.omega_2")?,
            gamma_2: self.gamma_2.energy("system.gamma_2")?,
            gamma_c: self.gamma_c.energy("system.gamma_c")?,
            gamma_e: self.gamma_e.energy("system.gamma_e")?,
            n_2,
            n_c,
            n_e: self.n_e,
            t_2: self.t_2.energy("system.T_2")?,
            t_c: self.t_c.energy("system.T_c")?,
            detunings,
        };
        Ok(match self.occupations {
            Occupations::Given => p,
            Occupations::Bose => p.with_bose_occupations(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PumpKindTag {
    Classical,
    Entangled,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpBlock {
    pub kind: PumpKindTag,
    pub omega_p: Quantity,
    pub sigma_p: Quantity,
    pub lambda: Quantity,
    pub sigma_pr: Quantity,
    pub rabi: Option<Quantity>,
    pub rabi_1: Option<Quantity>,
    pub rabi_2: Option<Quantity>,
    pub entanglement_time: Option<Quantity>,
}

impl PumpBlock {
    pub fn resolve(&self) -> Result<PumpSpec, CliError> {
        let omega_p = self.omega_p.energy("pump.omega_p")?;
        let sigma_p = self.sigma_p.energy("pump.sigma_p")?;
        let lambda = self.lambda.energy("pump.lambda")?;
        let sigma_pr = self.sigma_pr.energy("pump.sigma_pr")?;
        let spec = match self.kind {
            PumpKindTag::Classical => {
                if self.rabi_1.is_some() || self.rabi_2.is_some() || self.entanglement_time.is_some() {
                    return Err(CliError::Config(
                        "pump: classical pump takes `rabi` only".into(),
                    ));
                }
                let rabi = self
                    .rabi
                    .as_ref()
                    .ok_or_else(|| CliError::Config("pump.rabi is required".into()))?;
                PumpSpec::classical(omega_p, rabi.energy("pump.rabi")?, sigma_p, lambda, sigma_pr)
            }
            PumpKindTag::Entangled => {
                let (Some(r1), Some(r2), Some(t)) = (&self.rabi_1, &self.rabi_2, &self.entanglement_time)
                else {
                    return Err(CliError::Config(
                        "pump: entangled pump needs rabi_1, rabi_2 and entanglement_time".into(),
                    ));
                };
                if self.rabi.is_some() {
                    return Err(CliError::Config("pump: entangled pump takes rabi_1/rabi_2".into()));
                }
                PumpSpec::entangled(
                    omega_p,
                    r1.energy("pump.rabi_1")?,
                    r2.energy("pump.rabi_2")?,
                    t.time("pump.entanglement_time")?,
                    sigma_p,
                    lambda,
                    sigma_pr,
                )
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub parameter: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl RangeSpec {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        let bad = |why: &str| CliError::Config(format!("sweep `{}`: {why}", self.parameter));
        if self.count == 0 {
            return Err(bad("count must be >= 1"));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(bad("min and max must be finite"));
        }
        if self.count > 1 && !(self.min < self.max) {
            return Err(bad("min must be < max"));
        }
        if self.count == 1 && self.min > self.max {
            return Err(bad("min must be <= max"));
        }
        Ok(match self.spacing {
            Spacing::Linear => linspace(self.min, self.max, self.count),
            Spacing::Log => {
                if !(self.min > 0.0) {
                    return Err(bad("log spacing needs min > 0"));
                }
                logspace(self.min, self.max, self.count)
            }
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeRange {
    pub min: Quantity,
    pub max: Quantity,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl TimeRange {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        RangeSpec {
            parameter: "times".into(),
            min: self.min.time("times.min")?,
            max: self.max.time("times.max")?,
            count: self.count,
            spacing: self.spacing,
        }
        .values()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpdcBlock {
    pub a0: f64,
    pub normalization: f64,
    pub omega_p: Quantity,
    pub sigma: Quantity,
    pub t_ent: Quantity,
    pub half_width: Quantity,
    pub n: usize,
    pub center_i: Option<Quantity>,
    pub center_s: Option<Quantity>,
}

impl SpdcBlock {
    pub fn resolve(&self) -> Result<(JointAmplitude, JsaWindow), CliError> {
        let ja = JointAmplitude::new(
            self.a0,
            self.omega_p.energy("spdc.omega_p")?,
            self.sigma.energy("spdc.sigma")?,
            self.t_ent.time("spdc.t_ent")?,
            self.normalization,
        )?;
        let mut w = JsaWindow::centered(&ja, self.half_width.energy("spdc.half_width")?);
        w.n = self.n;
        if let Some(c) = &self.center_i {
            w.center_i = c.energy("spdc.center_i")?;
        }
        if let Some(c) = &self.center_s {
            w.center_s = c.energy("spdc.center_s")?;
        }
        w.validate()?;
        Ok((ja, w))
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub fit_mode: FitMode,
    #[serde(default)]
    pub efficiency_form: EfficiencyForm,
    /// Extra symbol of the printed classical maximum.
    pub m: Option<f64>,
    /// Probe bandwidth for reduced-only spectroscopic runs.
    pub sigma_pr: Option<Quantity>,
    /// Subset of oracle checks to run, by name.
    pub checks: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: Option<Scenario>,
    pub provenance: Option<String>,
    pub format: Option<Format>,
    pub system: Option<SystemBlock>,
    pub pump: Option<PumpBlock>,
    pub reduced: Option<DimensionlessSet>,
    #[serde(default)]
    pub sweep: Vec<RangeSpec>,
    pub times: Option<TimeRange>,
    pub spdc: Option<SpdcBlock>,
    #[serde(default)]
    pub options: Options,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<(Self, String), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Ok((Self::parse(&text)?, text))
    }

    pub fn system(&self) -> Result<SystemParams, CliError> {
        self.system
            .as_ref()
            .ok_or_else(|| CliError::Config("missing [system] block".into()))?
            .resolve()
    }

    pub fn pump(&self) -> Result<PumpSpec, CliError> {
        self.pump
            .as_ref()
            .ok_or_else(|| CliError::Config("missing [pump] block".into()))?
            .resolve()
    }

    pub fn physical(&self) -> Result<Option<(SystemParams, PumpSpec)>, CliError> {
        match (&self.system, &self.pump) {
            (Some(_), Some(_)) => Ok(Some((self.system()?, self.pump()?))),
            (None, None) => Ok(None),
            _ => Err(CliError::Config("[system] and [pump] must be given together".into())),
        }
    }

    pub fn m(&self) -> f64 {
        self.options.m.unwrap_or(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_rules() {
        let r = |min, max, count| RangeSpec {
            parameter: "tau".into(),
            min,
            max,
            count,
            spacing: Spacing::Linear,
        };
        assert_eq!(r(0.2, 0.2, 1).values().unwrap(), vec![0.2]);
        assert!(r(0.2, 0.1, 3).values().is_err());
        assert!(r(0.1, 0.2, 0).values().is_err());
        assert_eq!(r(0.0, 1.0, 3).values().unwrap(), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn unit_tags_required() {
        let bad = "[pump]\nkind = \"classical\"\nomega_p = 1.3\n";
        assert!(RunConfig::parse(bad).is_err());
        let q: Quantity = toml::from_str("value = 300.0\nunit = \"furlong\"").unwrap();
        assert!(q.energy("x").is_err());
    }
}
