//! Physical parameter containers and the reduction to dimensionless variables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special;
use crate::units::bose_occupation;

/// Rotating-frame detunings of the two pump fields and the probe, in eV.
/// Zero means exact resonance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Detunings {
    pub pump_1: f64,
    pub pump_2: f64,
    pub probe: f64,
}

/// Level energies, relaxation rates and bath occupations of the six-level
/// molecule {g, 0, e, e', 1, 2}. All energies and rates in eV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub omega_g: f64,
    pub omega_0: f64,
    pub omega_e: f64,
    pub omega_ep: f64,
    pub omega_1: f64,
    pub omega_2: f64,
    pub gamma_2: f64,
    pub gamma_c: f64,
    pub gamma_e: f64,
    pub n_2: f64,
    pub n_c: f64,
    pub n_e: f64,
    /// Phonon bath temperature of the 1-2 transition.
    pub t_2: f64,
    /// Cold bath temperature.
    pub t_c: f64,
    #[serde(default)]
    pub detunings: Detunings,
}

impl SystemParams {
    pub fn omega_21(&self) -> f64 {
        self.omega_2 - self.omega_1
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_0 - self.omega_g
    }

    pub fn omega_h(&self) -> f64 {
        self.omega_1 - self.omega_g
    }

    pub fn omega_2g(&self) -> f64 {
        self.omega_2 - self.omega_g
    }

    pub fn omega_2ep(&self) -> f64 {
        self.omega_2 - self.omega_ep
    }

    pub fn omega_epg(&self) -> f64 {
        self.omega_ep - self.omega_g
    }

    /// Splitting of the intermediate manifold, ω_2e − ω_2e'.
    pub fn delta(&self) -> f64 {
        self.omega_ep - self.omega_e
    }

    /// ω_2e' − ω_e'g; zero for a harmonic ladder.
    pub fn anharmonicity(&self) -> f64 {
        self.omega_2ep() - self.omega_epg()
    }

    /// δ̃ = δ + 2ω_2e' − 2ω_e'g.
    pub fn delta_tilde(&self) -> f64 {
        self.delta() + 2.0 * self.anharmonicity()
    }

    /// Replaces n_2 and n_c by Bose occupations at the bath temperatures.
    pub fn with_bose_occupations(mut self) -> Self {
        self.n_2 = bose_occupation(self.omega_21(), self.t_2);
        self.n_c = bose_occupation(self.omega_c(), self.t_c);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let values = [
            ("omega_g", self.omega_g),
            ("omega_0", self.omega_0),
            ("omega_e", self.omega_e),
            ("omega_ep", self.omega_ep),
            ("omega_1", self.omega_1),
            ("omega_2", self.omega_2),
            ("gamma_2", self.gamma_2),
            ("gamma_c", self.gamma_c),
            ("gamma_e", self.gamma_e),
            ("n_2", self.n_2),
            ("n_c", self.n_c),
            ("n_e", self.n_e),
            ("t_2", self.t_2),
            ("t_c", self.t_c),
        ];
        for (name, v) in values {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        for (name, v) in &values[6..] {
            if *v < 0.0 {
                return Err(Error::invalid(name, format!("must be >= 0, got {v}")));
            }
        }
        let ladder = [
            ("omega_g", self.omega_g),
            ("omega_0", self.omega_0),
            ("omega_e", self.omega_e),
            ("omega_ep", self.omega_ep),
            ("omega_1", self.omega_1),
            ("omega_2", self.omega_2),
        ];
        for w in ladder.windows(2) {
            if w[1].1 < w[0].1 {
                return Err(Error::invalid(
                    w[1].0,
                    format!("level ordering violated: {} < {} ({})", w[1].1, w[0].1, w[0].0),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PumpKind {
    ClassicalTwoPhoton,
    EntangledTwoPhoton,
}

impl PumpKind {
    pub fn label(self) -> &'static str {
        match self {
            PumpKind::ClassicalTwoPhoton => "classical",
            PumpKind::EntangledTwoPhoton => "entangled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PumpField {
    Classical {
        rabi: f64,
    },
    Entangled {
        rabi_1: f64,
        rabi_2: f64,
        entanglement_time: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpSpec {
    /// Pump center frequency.
    pub omega_p: f64,
    pub field: PumpField,
    pub sigma_p: f64,
    /// Probe Rabi frequency.
    pub lambda: f64,
    pub sigma_pr: f64,
}

impl PumpSpec {
    pub fn classical(omega_p: f64, rabi: f64, sigma_p: f64, lambda: f64, sigma_pr: f64) -> Self {
        PumpSpec {
            omega_p,
            field: PumpField::Classical { rabi },
            sigma_p,
            lambda,
            sigma_pr,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn entangled(
        omega_p: f64,
        rabi_1: f64,
        rabi_2: f64,
        entanglement_time: f64,
        sigma_p: f64,
        lambda: f64,
        sigma_pr: f64,
    ) -> Self {
        PumpSpec {
            omega_p,
            field: PumpField::Entangled {
                rabi_1,
                rabi_2,
                entanglement_time,
            },
            sigma_p,
            lambda,
            sigma_pr,
        }
    }

    pub fn kind(&self) -> PumpKind {
        match self.field {
            PumpField::Classical { .. } => PumpKind::ClassicalTwoPhoton,
            PumpField::Entangled { .. } => PumpKind::EntangledTwoPhoton,
        }
    }

    /// Rabi frequencies driving g-e and e-2.
    pub fn rabi_pair(&self) -> (f64, f64) {
        match self.field {
            PumpField::Classical { rabi } => (rabi, rabi),
            PumpField::Entangled { rabi_1, rabi_2, .. } => (rabi_1, rabi_2),
        }
    }

    /// Geometric mean of the two Rabi frequencies; equals Ω_p for a
    /// classical pump.
    pub fn rabi_amplitude(&self) -> f64 {
        let (a, b) = self.rabi_pair();
        (a * b).sqrt()
    }

    pub fn entanglement_time(&self) -> f64 {
        match self.field {
            PumpField::Classical { .. } => 0.0,
            PumpField::Entangled {
                entanglement_time, ..
            } => entanglement_time,
        }
    }

    /// Returns a copy with both Rabi frequencies multiplied by `factor`.
    pub fn scaled_rabi(mut self, factor: f64) -> Self {
        self.field = match self.field {
            PumpField::Classical { rabi } => PumpField::Classical {
                rabi: rabi * factor,
            },
            PumpField::Entangled {
                rabi_1,
                rabi_2,
                entanglement_time,
            } => PumpField::Entangled {
                rabi_1: rabi_1 * factor,
                rabi_2: rabi_2 * factor,
                entanglement_time,
            },
        };
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (r1, r2) = self.rabi_pair();
        let checks = [
            ("omega_p", self.omega_p),
            ("sigma_p", self.sigma_p),
            ("lambda", self.lambda),
            ("sigma_pr", self.sigma_pr),
            ("rabi", r1),
            ("rabi", r2),
            ("entanglement_time", self.entanglement_time()),
        ];
        for (name, v) in checks {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        if self.sigma_p <= 0.0 {
            return Err(Error::invalid("sigma_p", "must be > 0"));
        }
        if self.lambda < 0.0 {
            return Err(Error::invalid("lambda", "must be >= 0"));
        }
        if self.sigma_pr < 0.0 {
            return Err(Error::invalid("sigma_pr", "must be >= 0"));
        }
        if r1 < 0.0 || r2 < 0.0 {
            return Err(Error::invalid("rabi", "must be >= 0"));
        }
        if self.entanglement_time() < 0.0 {
            return Err(Error::invalid("entanglement_time", "must be >= 0"));
        }
        Ok(())
    }
}

/// The reduced variables in which the power and efficiency formulas are written.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessSet {
    pub tau: f64,
    pub c_p: f64,
    pub c_21: f64,
    pub lambda_prime: f64,
    pub sigma_p_prime: f64,
    pub u: f64,
    pub v: f64,
    pub alpha: f64,
    pub theta: f64,
}

impl DimensionlessSet {
    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_c_p(mut self, c_p: f64) -> Self {
        self.c_p = c_p;
        self
    }

    pub fn with_c21(mut self, c_21: f64) -> Self {
        self.c_21 = c_21;
        self
    }

    pub fn with_sigma(mut self, sigma_p_prime: f64) -> Self {
        self.sigma_p_prime = sigma_p_prime;
        self
    }

    /// Carnot efficiency 1 − τ.
    pub fn eta_carnot(&self) -> f64 {
        1.0 - self.tau
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("tau", self.tau),
            ("c_p", self.c_p),
            ("c_21", self.c_21),
            ("lambda_prime", self.lambda_prime),
            ("sigma_p_prime", self.sigma_p_prime),
            ("u", self.u),
            ("v", self.v),
            ("alpha", self.alpha),
            ("theta", self.theta),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        if self.tau <= 0.0 {
            return Err(Error::invalid("tau", "must be > 0"));
        }
        if self.c_p < 1.0 {
            return Err(Error::invalid("c_p", "must be >= 1"));
        }
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(Error::invalid("theta", "must lie in [0, 1]"));
        }
        for (name, v) in [("u", self.u), ("v", self.v), ("alpha", self.alpha)] {
            if v <= 0.0 {
                return Err(Error::invalid(name, "must be > 0"));
            }
        }
        if self.lambda_prime < 0.0 || self.sigma_p_prime < 0.0 || self.c_21 < 0.0 {
            return Err(Error::invalid(
                "lambda_prime/sigma_p_prime/c_21",
                "must be >= 0",
            ));
        }
        Ok(())
    }
}

/// T_h = (Ω_p Γ₂² / 2δ)^{1/2}. For an entangled pump Ω_p is the geometric
/// mean of the two Rabi frequencies.
pub fn effective_hot_temperature(params: &SystemParams, pump: &PumpSpec) -> Result<f64> {
    let delta = params.delta();
    if delta <= 0.0 {
        return Err(Error::Singular(format!(
            "hot temperature needs delta > 0, got {delta}"
        )));
    }
    let omega = pump.rabi_amplitude();
    Ok((omega * params.gamma_2 * params.gamma_2 / (2.0 * delta)).sqrt())
}

/// Classical bandwidth scale σ'_p = (σ_p² − δ²/4)^{1/2} Γ₂ / (δ T_c).
pub fn classical_bandwidth_scale(params: &SystemParams, sigma_p: f64) -> Result<f64> {
    let delta = params.delta();
    if delta <= 0.0 {
        return Err(Error::Singular(format!(
            "classical bandwidth scale needs delta > 0, got {delta}"
        )));
    }
    let radicand = sigma_p * sigma_p - delta * delta / 4.0;
    if radicand <= 0.0 {
        return Err(Error::Domain {
            quantity: "sigma_p",
            value: sigma_p,
            reason: "classical pump requires sigma_p > delta/2",
        });
    }
    Ok(radicand.sqrt() * params.gamma_2 / (delta * params.t_c))
}

/// Entangled bandwidth scale σ'_p = (σ_p² − Δ²)^{1/2} Γ₂ / (|Δ| T_c) with
/// Δ = ω_2g − ω_p.
pub fn entangled_bandwidth_scale(params: &SystemParams, pump: &PumpSpec) -> Result<f64> {
    let big_delta = params.omega_2g() - pump.omega_p;
    if big_delta == 0.0 {
        return Err(Error::Singular(
            "entangled bandwidth scale needs a nonzero detuning Delta".into(),
        ));
    }
    let radicand = pump.sigma_p * pump.sigma_p - big_delta * big_delta;
    if radicand <= 0.0 {
        return Err(Error::Domain {
            quantity: "sigma_p",
            value: pump.sigma_p,
            reason: "entangled pump requires sigma_p > |Delta|",
        });
    }
    Ok(radicand.sqrt() * params.gamma_2 / (big_delta.abs() * params.t_c))
}

pub fn reduce(params: &SystemParams, pump: &PumpSpec) -> Result<DimensionlessSet> {
    params.validate()?;
    pump.validate()?;
    let t_h = effective_hot_temperature(params, pump)?;
    if t_h <= 0.0 {
        return Err(Error::Singular("zero pump gives T_h = 0 and tau = inf".into()));
    }
    let omega_c = params.omega_c();
    if omega_c <= 0.0 {
        return Err(Error::invalid("omega_0", "cold transition omega_c must be > 0"));
    }
    if params.t_c <= 0.0 || params.gamma_c <= 0.0 || params.gamma_2 <= 0.0 {
        return Err(Error::invalid(
            "t_c/gamma_c/gamma_2",
            "reduction needs positive cold temperature and rates",
        ));
    }
    let (sigma_p_prime, theta) = match pump.kind() {
        PumpKind::ClassicalTwoPhoton => (classical_bandwidth_scale(params, pump.sigma_p)?, 1.0),
        PumpKind::EntangledTwoPhoton => (
            entangled_bandwidth_scale(params, pump)?,
            special::theta(pump.entanglement_time(), params.anharmonicity()),
        ),
    };
    let d = DimensionlessSet {
        tau: params.t_c / t_h,
        c_p: pump.omega_p / omega_c,
        c_21: params.omega_21() / omega_c,
        lambda_prime: pump.lambda / (params.gamma_2 * params.t_c).sqrt(),
        sigma_p_prime,
        u: params.gamma_2 * omega_c / (params.gamma_c * params.t_c),
        v: params.gamma_c / omega_c,
        alpha: params.t_2 / omega_c,
        theta,
    };
    d.validate()?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn unit_hot_temperature() {
        let mut p = presets::fig7_system();
        p.gamma_2 = 0.5;
        let delta = p.delta();
        let rabi = 2.0 * delta / (p.gamma_2 * p.gamma_2);
        let pump = PumpSpec::classical(1.3, rabi, 0.02, 0.1, 0.02);
        let th = effective_hot_temperature(&p, &pump).unwrap();
        assert!((th - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_pump_zero_temperature() {
        let p = presets::fig7_system();
        let pump = presets::fig7_classical_pump().scaled_rabi(0.0);
        assert_eq!(effective_hot_temperature(&p, &pump).unwrap(), 0.0);
        assert!(matches!(reduce(&p, &pump), Err(Error::Singular(_))));
    }

    #[test]
    fn fig7_hot_temperature_two_ways() {
        let p = presets::fig7_system();
        let pump = presets::fig7_classical_pump();
        let th = effective_hot_temperature(&p, &pump).unwrap();
        // written out again from the raw caption numbers
        let g2: f64 = 0.71 * 6.582119569e-4;
        let alt = (0.023_f64 * g2.powi(2) / (2.0 * 3e-5)).sqrt();
        assert!((th - alt).abs() < 1e-12 * alt, "{th} vs {alt}");
        assert!((th - 9.1499e-3).abs() < 1e-6, "{th}");
    }

    #[test]
    fn singular_without_splitting() {
        let mut p = presets::fig7_system();
        p.omega_e = p.omega_ep;
        let pump = presets::fig7_classical_pump();
        assert!(matches!(
            effective_hot_temperature(&p, &pump),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn classical_theta_is_one_and_entangled_zero_time_too() {
        let p = presets::fig7_system();
        let c = reduce(&p, &presets::fig7_classical_pump()).unwrap();
        assert_eq!(c.theta, 1.0);
        let q = reduce(&p, &presets::fig7_entangled_pump(0.0)).unwrap();
        assert_eq!(q.theta, 1.0);
        // harmonic ladder: any entanglement time leaves theta at 1
        let q = reduce(&p, &presets::fig7_entangled_pump(1.0e4)).unwrap();
        assert_eq!(q.theta, 1.0);
    }

    #[test]
    fn fig7_fixture() {
        let d = reduce(&presets::fig7_system(), &presets::fig7_classical_pump()).unwrap();
        let close = |a: f64, b: f64, tol: f64| (a - b).abs() <= tol * b.abs();
        assert!(close(d.c_p, 108.333_333_333_333_33, 1e-12), "{}", d.c_p);
        assert!(close(d.alpha, 2.154_333_299, 1e-8), "{}", d.alpha);
        assert!(close(d.u, 13.182_732_59, 1e-8), "{}", d.u);
        assert!(close(d.v, 1.371_274_9e-3, 1e-6), "{}", d.v);
        assert!(close(d.lambda_prime, 28.770_1, 1e-4), "{}", d.lambda_prime);
        assert!(close(d.sigma_p_prime, 14.941_9, 1e-4), "{}", d.sigma_p_prime);
        assert!(close(d.tau, 2.825_3, 1e-3), "{}", d.tau);
    }

    #[test]
    fn bandwidth_invariant_rejected() {
        let p = presets::fig7_system();
        let mut pump = presets::fig7_classical_pump();
        pump.sigma_p = 1e-6;
        assert!(matches!(
            reduce(&p, &pump),
            Err(Error::Domain {
                quantity: "sigma_p",
                ..
            })
        ));
    }

    #[test]
    fn ordering_enforced() {
        let mut p = presets::fig7_system();
        p.omega_1 = p.omega_2 + 0.1;
        assert!(p.validate().is_err());
        let mut p = presets::fig7_system();
        p.gamma_2 = -1.0;
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParams {
                field: "gamma_2",
                ..
            })
        ));
    }
}
