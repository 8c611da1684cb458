//! Weak-pump (perturbative) regime: steady probe coherence and the
//! spectroscopic power for both pumps.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lindblad::{steady_state, EomOptions, Level};
use crate::optimize::{interior_slope, maximize};
use crate::params::{DimensionlessSet, PumpKind, PumpSpec, SystemParams};
use crate::special;

fn rate_factor(params: &SystemParams, sigma_pr: f64) -> Result<f64> {
    let a = params.gamma_c * params.n_c + params.gamma_2 * params.n_2;
    let b = 5.0 * params.gamma_2 * params.n_2 + params.gamma_c * params.n_c;
    let den = sigma_pr * a * b;
    if !(den > 0.0) {
        return Err(Error::Singular(
            "degenerate rates: sigma_pr (Γ_c n_c + Γ₂n₂)(5Γ₂n₂ + Γ_c n_c) vanishes".into(),
        ));
    }
    Ok(den)
}

/// ρ₀₁ = −32iΓ₂λn₂δ⁴Ω_p⁴ / [(δ² + 4σ_p²)⁴ σ_pr (Γ_c n_c + Γ₂n₂)(5Γ₂n₂ + Γ_c n_c)].
pub fn coherence_classical(params: &SystemParams, pump: &PumpSpec) -> Result<Complex64> {
    if pump.kind() != PumpKind::ClassicalTwoPhoton {
        return Err(Error::invalid("pump.kind", "expected a classical pump"));
    }
    let den = rate_factor(params, pump.sigma_pr)?;
    let d2 = params.delta().powi(2);
    let num = 32.0 * params.gamma_2 * pump.lambda * params.n_2 * d2 * d2 * pump.rabi_amplitude().powi(4);
    let w = (d2 + 4.0 * pump.sigma_p.powi(2)).powi(4);
    Ok(Complex64::new(0.0, -num / (w * den)))
}

/// ρ₀₁ = −2iΓ₂λn₂δ⁴Ω_1'²Ω_2'²θ / [(Δ² + σ_p²)⁴ σ_pr (Γ_c n_c + Γ₂n₂)(5Γ₂n₂ + Γ_c n_c)].
///
/// The numerator keeps the intermediate splitting δ while the denominator
/// uses the pump detuning Δ = ω_2g − ω_p.
pub fn coherence_entangled(params: &SystemParams, pump: &PumpSpec) -> Result<Complex64> {
    if pump.kind() != PumpKind::EntangledTwoPhoton {
        return Err(Error::invalid("pump.kind", "expected an entangled pump"));
    }
    let den = rate_factor(params, pump.sigma_pr)?;
    let d2 = params.delta().powi(2);
    let (r1, r2) = pump.rabi_pair();
    let theta = special::theta(pump.entanglement_time(), params.anharmonicity());
    let num = 2.0 * params.gamma_2 * pump.lambda * params.n_2 * d2 * d2 * (r1 * r2).powi(2) * theta;
    let big_delta2 = (params.omega_2g() - pump.omega_p).powi(2);
    let w = (big_delta2 + pump.sigma_p.powi(2)).powi(4);
    Ok(Complex64::new(0.0, -num / (w * den)))
}

pub fn coherence(params: &SystemParams, pump: &PumpSpec) -> Result<Complex64> {
    match pump.kind() {
        PumpKind::ClassicalTwoPhoton => coherence_classical(params, pump),
        PumpKind::EntangledTwoPhoton => coherence_entangled(params, pump),
    }
}

/// Classical 𝒫_C = 4αc₂₁u²(c_p − c₂₁ − 1)λ' / [τ⁸σ_pr(c₂₁ + αu)(c₂₁ + 5αu)σ'_p⁸];
/// entangled 𝒫_Q = αc₂₁u²(c_p − c₂₁ − 1)λ'θ / [2τ²σ_pr(c₂₁ + αu)(c₂₁ + 5αu)σ'_p²].
pub fn spectro_power(kind: PumpKind, d: &DimensionlessSet, sigma_pr: f64) -> Result<f64> {
    let c = d.c_21;
    if !(c > 0.0 && c < d.c_p - 1.0) {
        return Err(Error::Domain {
            quantity: "c_21",
            value: c,
            reason: "spectroscopic power needs 0 < c_21 < c_p - 1",
        });
    }
    if !(sigma_pr > 0.0) {
        return Err(Error::invalid("sigma_pr", "must be > 0"));
    }
    let au = d.alpha * d.u;
    let profile = c * (d.c_p - c - 1.0) / ((c + au) * (c + 5.0 * au));
    let x = d.tau * d.sigma_p_prime;
    Ok(match kind {
        PumpKind::ClassicalTwoPhoton => {
            4.0 * d.alpha * d.u * d.u * d.lambda_prime * profile / (x.powi(8) * sigma_pr)
        }
        PumpKind::EntangledTwoPhoton => {
            d.alpha * d.u * d.u * d.lambda_prime * d.theta * profile / (2.0 * x.powi(2) * sigma_pr)
        }
    })
}

/// c₂₁* = αu(𝒞 − 5αu)/(c_p − 1 + 6αu) with 𝒞 = √(5(c_p + αu − 1)(c_p + 5αu − 1)),
/// the maximizer shared by both spectroscopic powers.
pub fn spectro_c21_star(d: &DimensionlessSet) -> f64 {
    let a = d.alpha * d.u;
    let cp = d.c_p - 1.0;
    a * (big_c(d) - 5.0 * a) / (cp + 6.0 * a)
}

fn big_c(d: &DimensionlessSet) -> f64 {
    let a = d.alpha * d.u;
    (5.0 * (d.c_p + a - 1.0) * (d.c_p + 5.0 * a - 1.0)).sqrt()
}

/// 𝒫_C^max = uλ'(3c_p + 5αu − 3 − 𝒞) / (2τ⁸σ_pr σ'_p⁸).
pub fn spectro_max_classical_closed_form(d: &DimensionlessSet, sigma_pr: f64) -> f64 {
    let x = d.tau * d.sigma_p_prime;
    d.u * d.lambda_prime * (3.0 * d.c_p + 5.0 * d.alpha * d.u - 3.0 - big_c(d))
        / (2.0 * x.powi(8) * sigma_pr)
}

/// Printed entangled "maximum"
/// 4αc₂₁u²(c_p − c₂₁ − 1)λ'θ / [τ⁴σ_pr(c₂₁ + αu)(c₂₁ + 5αu)σ'_p⁴],
/// still a function of c₂₁.
pub fn spectro_max_entangled_printed(d: &DimensionlessSet, sigma_pr: f64) -> f64 {
    let c = d.c_21;
    let au = d.alpha * d.u;
    let x = d.tau * d.sigma_p_prime;
    4.0 * d.alpha * c * d.u * d.u * (d.c_p - c - 1.0) * d.lambda_prime * d.theta
        / (x.powi(4) * sigma_pr * (c + au) * (c + 5.0 * au))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectroMax {
    /// Numeric maximum of the spectroscopic power over c₂₁.
    pub p_max: f64,
    pub c21_star: f64,
    pub slope: f64,
    /// Classical: the closed form. Entangled: the printed form at c21_star.
    pub printed: f64,
    pub rel_diff: f64,
    pub flagged: bool,
}

pub fn spectro_max_power(kind: PumpKind, d: &DimensionlessSet, sigma_pr: f64) -> Result<SpectroMax> {
    d.with_c21(0.0).validate()?;
    let hi = d.c_p - 1.0;
    if !(hi > 0.0) {
        return Err(Error::Regime(format!("c_p = {} leaves no room for c_21", d.c_p)));
    }
    let f = |c: f64| spectro_power(kind, &d.with_c21(c), sigma_pr).unwrap_or(f64::NAN);
    let best = maximize(f, 0.0, hi)?;
    let slope = interior_slope(f, best.x, 0.0, hi, crate::engine::STATIONARITY_STEP);
    let printed = match kind {
        PumpKind::ClassicalTwoPhoton => spectro_max_classical_closed_form(d, sigma_pr),
        PumpKind::EntangledTwoPhoton => spectro_max_entangled_printed(&d.with_c21(best.x), sigma_pr),
    };
    let rel_diff = ((printed - best.value) / best.value).abs();
    Ok(SpectroMax {
        p_max: best.value,
        c21_star: best.x,
        slope,
        printed,
        rel_diff,
        flagged: !(rel_diff <= crate::engine::CLOSED_FORM_TOL),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectroRatio {
    /// τ⁴σ'_p⁴θ.
    pub closed_form: f64,
    /// Printed entangled form at c₂₁* over the classical closed-form maximum.
    pub printed_maxima: f64,
    /// Ratio of the numeric maxima of the two spectroscopic powers.
    pub numeric_maxima: f64,
}

pub fn spectro_ratio(d: &DimensionlessSet, sigma_pr: f64) -> Result<SpectroRatio> {
    let c = spectro_max_power(PumpKind::ClassicalTwoPhoton, d, sigma_pr)?;
    let q = spectro_max_power(PumpKind::EntangledTwoPhoton, d, sigma_pr)?;
    Ok(SpectroRatio {
        closed_form: (d.tau * d.sigma_p_prime).powi(4) * d.theta,
        printed_maxima: q.printed / c.printed,
        numeric_maxima: q.p_max / c.p_max,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCoherence {
    /// Largest pump scale ε; the others are ε/2 and ε/4.
    pub scale: f64,
    /// Im ρ₀₁ of the six-level steady state at ε, ε/2, ε/4.
    pub im_rho01: [f64; 3],
    /// Local power of ε in the pump-induced part, log₂ of the ratio of
    /// successive differences; 4 in the perturbative regime.
    pub exponent: f64,
    /// Pump-induced Im ρ₀₁ per ε⁴ from the two smaller scales.
    pub coefficient: f64,
    /// Im ρ₀₁ of the closed form at ε = 1.
    pub closed_form: f64,
    pub ratio: f64,
}

/// Compares the pump-induced steady-state ρ₀₁ of the full molecule, with the
/// pump Rabi frequencies scaled by ε, against the closed-form coherence.
/// Differences between scales remove the pump-independent part the probe
/// leaves on the thermal 0-1 pair. The e' relaxation pair is switched on (at
/// the 1-2 rates if none is given) so the steady state is unique.
pub fn oracle_coherence(params: &SystemParams, pump: &PumpSpec, scale: f64) -> Result<OracleCoherence> {
    let mut p = *params;
    if p.gamma_e == 0.0 {
        p.gamma_e = p.gamma_2;
        p.n_e = p.n_2;
    }
    let opts = EomOptions {
        e_prime_channel: true,
        ..EomOptions::default()
    };
    let closed = coherence(params, pump)?.im;
    let mut im = [0.0; 3];
    for (k, v) in im.iter_mut().enumerate() {
        let eps = scale / f64::powi(2.0, k as i32);
        let ss = steady_state(&p, &pump.scaled_rabi(eps), &opts)?;
        *v = ss.rho.get(Level::Zero.idx(), Level::One.idx()).im;
    }
    let exponent = ((im[0] - im[1]) / (im[1] - im[2])).log2();
    let (e1, e2) = (scale / 2.0, scale / 4.0);
    let coefficient = (im[1] - im[2]) / (e1.powi(4) - e2.powi(4));
    Ok(OracleCoherence {
        scale,
        im_rho01: im,
        exponent,
        coefficient,
        closed_form: closed,
        ratio: coefficient / closed,
    })
}
