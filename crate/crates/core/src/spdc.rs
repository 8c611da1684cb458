//! Twin-photon source: pump envelope, phase matching, joint spectral
//! amplitude and the two-point correlation that replaces Ω₁Ω₂ for an
//! entangled pump.
//!
//! Quantization volume and ε₀ are absorbed into the amplitude scale A₀, so
//! only ratios and θ reach the engine.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::special::{self, sinc};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointAmplitude {
    pub a0: f64,
    pub omega_p: f64,
    pub sigma: f64,
    pub t_ent: f64,
    pub normalization: f64,
}

impl JointAmplitude {
    pub fn new(a0: f64, omega_p: f64, sigma: f64, t_ent: f64, normalization: f64) -> Result<Self> {
        let ja = JointAmplitude {
            a0,
            omega_p,
            sigma,
            t_ent,
            normalization,
        };
        ja.validate()?;
        Ok(ja)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("a0", self.a0),
            ("omega_p", self.omega_p),
            ("sigma", self.sigma),
            ("t_ent", self.t_ent),
            ("normalization", self.normalization),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        if !(self.sigma > 0.0) {
            return Err(Error::invalid("sigma", "must be > 0"));
        }
        Ok(())
    }
}

/// 𝒜(ω) = A₀/(ω − ω_p + iσ).
pub fn pump_envelope(omega: f64, ja: &JointAmplitude) -> Complex64 {
    Complex64::new(ja.a0, 0.0) / Complex64::new(omega - ja.omega_p, ja.sigma)
}

/// Φ = sinc[(ω_s − ω_i)T/2].
pub fn phase_matching(omega_s: f64, omega_i: f64, ja: &JointAmplitude) -> f64 {
    sinc((omega_s - omega_i) * ja.t_ent / 2.0)
}

/// φ(ω_i, ω_s) = 𝒜(ω_i + ω_s)Φ(ω_i, ω_s).
pub fn joint_amplitude(omega_i: f64, omega_s: f64, ja: &JointAmplitude) -> Complex64 {
    pump_envelope(omega_i + omega_s, ja) * phase_matching(omega_s, omega_i, ja)
}

/// Transition dipoles of the two pumped steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dipoles {
    pub mu_eg: f64,
    pub mu_2e: f64,
}

impl Default for Dipoles {
    fn default() -> Self {
        Dipoles {
            mu_eg: 1.0,
            mu_2e: 1.0,
        }
    }
}

/// Ω₁Ω₂ = μ_eg μ_2e 𝒩A₀ √(ω₁ω₂)/(ω₁ + ω₂ − ω_p + iσ) · sinc[(ω₂ − ω₁)T/2].
pub fn two_photon_correlation(
    omega_1: f64,
    omega_2: f64,
    ja: &JointAmplitude,
    dipoles: &Dipoles,
) -> Result<Complex64> {
    if !(omega_1 > 0.0 && omega_2 > 0.0) {
        return Err(Error::Domain {
            quantity: "omega_1/omega_2",
            value: omega_1.min(omega_2),
            reason: "frequencies must be positive",
        });
    }
    let scale = dipoles.mu_eg * dipoles.mu_2e * ja.normalization * (omega_1 * omega_2).sqrt();
    Ok(joint_amplitude(omega_1, omega_2, ja) * scale)
}

/// Modulus of the correlation at the molecular transitions ω_e'g and ω_2e',
/// used as Ω_1'Ω_2' of the entangled pump. Linear in A₀.
pub fn rabi_product(params: &SystemParams, ja: &JointAmplitude, dipoles: &Dipoles) -> Result<f64> {
    Ok(two_photon_correlation(params.omega_epg(), params.omega_2ep(), ja, dipoles)?.norm())
}

/// θ = Φ(ω_2e', ω_ge')², the phase-matching weight at the molecular
/// transitions. ω_ge' enters through its magnitude.
pub fn theta_from_source(params: &SystemParams, ja: &JointAmplitude) -> f64 {
    let phi = phase_matching(params.omega_2ep(), params.omega_epg(), ja);
    phi * phi
}

/// Collinear crystal with a quadratic dispersion k(ω) = k₀ + (ω − ω₀)/v + β(ω − ω₀)²/2
/// for each of the pump, signal and idler.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crystal {
    pub length: f64,
    pub v_p: f64,
    pub v_s: f64,
    pub v_i: f64,
    /// Group-velocity dispersion of the signal and idler.
    pub beta_s: f64,
    pub beta_i: f64,
}

impl Crystal {
    /// Phase mismatch Δk = k_p(ω_s + ω_i) − k_s(ω_s) − k_i(ω_i) about a
    /// phase-matched center (ω_p0/2, ω_p0/2).
    pub fn delta_k(&self, omega_s: f64, omega_i: f64, omega_p0: f64) -> f64 {
        let c = omega_p0 / 2.0;
        let (ds, di) = (omega_s - c, omega_i - c);
        let kp = (ds + di) / self.v_p;
        let ks = ds / self.v_s + 0.5 * self.beta_s * ds * ds;
        let ki = di / self.v_i + 0.5 * self.beta_i * di * di;
        kp - ks - ki
    }

    /// sinc(ΔkL/2).
    pub fn phase_matching_exact(&self, omega_s: f64, omega_i: f64, omega_p0: f64) -> f64 {
        sinc(self.delta_k(omega_s, omega_i, omega_p0) * self.length / 2.0)
    }

    /// T with sinc(ΔkL/2) = sinc[(ω_s − ω_i)T/2] on the energy-conserving
    /// line ω_s + ω_i = ω_p0 at first order: T = L(1/v_s − 1/v_i)/2.
    pub fn entanglement_time(&self) -> f64 {
        self.length * (1.0 / self.v_s - 1.0 / self.v_i) / 2.0
    }

    /// L(1/v_s − 1/v_i), the delay without the factor 1/2.
    pub fn group_delay(&self) -> f64 {
        2.0 * self.entanglement_time()
    }
}

/// Square frequency window for joint spectral maps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JsaWindow {
    pub center_i: f64,
    pub center_s: f64,
    pub half_width: f64,
    pub n: usize,
}

impl JsaWindow {
    /// Centered at (ω_p/2, ω_p/2), 512×512.
    pub fn centered(ja: &JointAmplitude, half_width: f64) -> Self {
        JsaWindow {
            center_i: ja.omega_p / 2.0,
            center_s: ja.omega_p / 2.0,
            half_width,
            n: 512,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("n", "must be >= 1"));
        }
        if !(self.half_width >= 0.0 && self.half_width.is_finite()) {
            return Err(Error::invalid("half_width", "must be finite and >= 0"));
        }
        Ok(())
    }

    pub fn idler_axis(&self) -> Vec<f64> {
        special::linspace(self.center_i - self.half_width, self.center_i + self.half_width, self.n)
    }

    pub fn signal_axis(&self) -> Vec<f64> {
        special::linspace(self.center_s - self.half_width, self.center_s + self.half_width, self.n)
    }
}

/// One row of |φ|² at fixed ω_i, as (ω_i, ω_s, |φ|²) triplets.
pub fn jsa_row(omega_i: f64, signal: &[f64], ja: &JointAmplitude) -> Vec<[f64; 3]> {
    signal
        .iter()
        .map(|&s| [omega_i, s, joint_amplitude(omega_i, s, ja).norm_sqr()])
        .collect()
}

/// Full map, row-major in ω_i.
pub fn jsa_grid(window: &JsaWindow, ja: &JointAmplitude) -> Result<Vec<[f64; 3]>> {
    window.validate()?;
    ja.validate()?;
    let signal = window.signal_axis();
    Ok(window
        .idler_axis()
        .into_iter()
        .flat_map(|i| jsa_row(i, &signal, ja))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn ja() -> JointAmplitude {
        JointAmplitude::new(2.0, 1.3, 0.01, 300.0, 1.0).unwrap()
    }

    #[test]
    fn envelope_peak_and_half_width() {
        let j = ja();
        let peak = pump_envelope(j.omega_p, &j);
        assert!((peak - Complex64::new(0.0, -j.a0 / j.sigma)).norm() < 1e-12);
        for s in [-1.0, 1.0] {
            let half = pump_envelope(j.omega_p + s * j.sigma, &j).norm_sqr();
            assert!((half / peak.norm_sqr() - 0.5).abs() < 1e-14);
        }
        assert!(pump_envelope(1e9, &j).norm() < 1e-8);
    }

    #[test]
    fn phase_matching_values() {
        let j = ja();
        assert_eq!(phase_matching(0.7, 0.7, &j), 1.0);
        let w = 2.0 * std::f64::consts::PI / j.t_ent;
        assert!(phase_matching(0.6 + w, 0.6, &j).abs() < 1e-12);
    }

    #[test]
    fn correlation_peaks_on_energy_conservation() {
        let j = ja();
        let d = Dipoles::default();
        let diff = 0.001;
        let at = |sum: f64| {
            two_photon_correlation((sum - diff) / 2.0, (sum + diff) / 2.0, &j, &d)
                .unwrap()
                .norm()
        };
        let peak = at(j.omega_p);
        assert!(peak > at(j.omega_p + 0.1 * j.sigma));
        assert!(peak > at(j.omega_p - 0.1 * j.sigma));
        assert!(two_photon_correlation(-1.0, 1.0, &j, &d).is_err());
    }

    #[test]
    fn rabi_product_linear_in_amplitude() {
        let p = presets::fig7_system();
        let d = Dipoles::default();
        let a = rabi_product(&p, &ja(), &d).unwrap();
        let mut j3 = ja();
        j3.a0 *= 3.0;
        let b = rabi_product(&p, &j3, &d).unwrap();
        assert!((b / a - 3.0).abs() < 1e-14);
    }

    #[test]
    fn theta_linkage() {
        let mut p = presets::fig7_system();
        p.omega_2 += 2e-3;
        let j = ja();
        let here = theta_from_source(&p, &j);
        let there = special::theta(j.t_ent, p.anharmonicity());
        assert!((here - there).abs() <= 1e-12);
        assert!(here < 1.0);
    }

    #[test]
    fn crystal_linearization() {
        let c = Crystal {
            length: 1.0e4,
            v_p: 0.5,
            v_s: 0.6,
            v_i: 0.55,
            beta_s: 0.0,
            beta_i: 0.0,
        };
        let wp = 1.3;
        let ja = JointAmplitude::new(1.0, wp, 0.01, c.entanglement_time(), 1.0).unwrap();
        for nu in [-3e-3, -1e-4, 0.0, 2e-4, 5e-3] {
            let (s, i) = (wp / 2.0 + nu, wp / 2.0 - nu);
            assert!((c.phase_matching_exact(s, i, wp) - phase_matching(s, i, &ja)).abs() < 1e-12);
        }
        let wrong = JointAmplitude::new(1.0, wp, 0.01, c.group_delay(), 1.0).unwrap();
        let (s, i) = (wp / 2.0 + 5e-4, wp / 2.0 - 5e-4);
        assert!((c.phase_matching_exact(s, i, wp) - phase_matching(s, i, &wrong)).abs() > 1e-3);
    }

    #[test]
    fn dispersion_breaks_linearization_slowly() {
        let c = Crystal {
            length: 1.0e4,
            v_p: 0.5,
            v_s: 0.6,
            v_i: 0.55,
            beta_s: 1e-2,
            beta_i: 1e-2,
        };
        let wp = 1.3;
        let ja = JointAmplitude::new(1.0, wp, 0.01, c.entanglement_time(), 1.0).unwrap();
        let err = |nu: f64| {
            (c.phase_matching_exact(wp / 2.0 + nu, wp / 2.0 - nu, wp)
                - phase_matching(wp / 2.0 + nu, wp / 2.0 - nu, &ja))
            .abs()
        };
        assert!(err(1e-5) < 1e-9);
        assert!(err(1e-5) < err(1e-3));
    }

    #[test]
    fn grid_shape() {
        let j = ja();
        let mut w = JsaWindow::centered(&j, 0.02);
        w.n = 7;
        let g = jsa_grid(&w, &j).unwrap();
        assert_eq!(g.len(), 49);
        assert_eq!(g[0][0], g[6][0]);
        assert!(g[24][2] >= g.iter().map(|r| r[2]).fold(0.0, f64::max) - 1e-12);
    }
}
