//! Reference parameter sets used by the tests and the shipped configs.
//!
//! Both sets share one harmonic level ladder with ω_g = 0, ω_2g = 1.30003 eV,
//! a 3e-5 eV splitting of the intermediate manifold and ω_c = 0.012 eV.
//! The fig3 set keeps that splitting since its own caption does not give one.

use crate::params::{Detunings, PumpSpec, SystemParams};
use crate::units::{to_internal_units, Unit};

const DELTA: f64 = 3e-5;
const OMEGA_2: f64 = 1.300_03;
const OMEGA_C: f64 = 0.012;
/// Default 1-2 spacing; c_21 is swept anyway in the engine analysis.
pub const OMEGA_21: f64 = 0.036;

fn conv(v: f64, u: Unit) -> f64 {
    to_internal_units(v, u).expect("finite constant")
}

fn ladder() -> SystemParams {
    let omega_ep = OMEGA_2 / 2.0;
    SystemParams {
        omega_g: 0.0,
        omega_0: OMEGA_C,
        omega_e: omega_ep - DELTA,
        omega_ep,
        omega_1: OMEGA_2 - OMEGA_21,
        omega_2: OMEGA_2,
        gamma_2: 0.0,
        gamma_c: 0.0,
        gamma_e: 0.0,
        n_2: 0.0,
        n_c: 0.0,
        n_e: 0.0,
        t_2: conv(300.0, Unit::Kelvin),
        t_c: conv(300.0, Unit::Kelvin),
        detunings: Detunings::default(),
    }
}

/// n₂ = n_c = 100, Γ₂ = Γ_c = 0.002 ps⁻¹.
pub fn fig3_system() -> SystemParams {
    SystemParams {
        gamma_2: conv(0.002, Unit::InversePs),
        gamma_c: conv(0.002, Unit::InversePs),
        n_2: 100.0,
        n_c: 100.0,
        ..ladder()
    }
}

/// Ω_p = 0.0078 eV, σ_p = 30.34 cm⁻¹.
pub fn fig3_pump() -> PumpSpec {
    let sigma = conv(30.34, Unit::InverseCm);
    PumpSpec::classical(1.3, 0.0078, sigma, 0.1, sigma)
}

/// T₂ = T_c = 300 K, Γ₂ = 0.71 ps⁻¹, Γ_c = 0.025 ps⁻¹, Bose occupations.
pub fn fig7_system() -> SystemParams {
    SystemParams {
        gamma_2: conv(0.71, Unit::InversePs),
        gamma_c: conv(0.025, Unit::InversePs),
        ..ladder()
    }
    .with_bose_occupations()
}

/// ω_p = 1.3 eV, Ω_p = 0.023 eV, λ = 0.1 eV, σ_p = 200 cm⁻¹. The probe
/// bandwidth is not given and is set equal to σ_p.
pub fn fig7_classical_pump() -> PumpSpec {
    let sigma = conv(200.0, Unit::InverseCm);
    PumpSpec::classical(1.3, 0.023, sigma, 0.1, sigma)
}

/// Entangled counterpart with Ω_1' = Ω_2' = Ω_p so the two pumps share a
/// normalization. `entanglement_time` in inverse eV.
pub fn fig7_entangled_pump(entanglement_time: f64) -> PumpSpec {
    let sigma = conv(200.0, Unit::InverseCm);
    PumpSpec::entangled(1.3, 0.023, 0.023, entanglement_time, sigma, 0.1, sigma)
}
