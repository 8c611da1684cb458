//! Three-level engine driven by the effective hot bath: steady-state
//! observables, the dimensionless power surfaces, their maxima over c₂₁,
//! efficiency at maximum power and the efficiency-bound tables.

use serde::{Deserialize, Serialize};

use crate::bath::EffectiveBath;
use crate::error::{Error, Result};
use crate::lindblad::{maser_equation, steady_state_of, MaserLevel};
use crate::optimize::{interior_slope, maximize};
use crate::params::{DimensionlessSet, PumpKind, PumpSpec, SystemParams};
use crate::units::bose_temperature;

/// Relative tolerance between a printed closed form and the numeric maximum.
pub const CLOSED_FORM_TOL: f64 = 1e-6;
/// Difference step for the stationarity check, relative to the distance
/// from the maximizer to the nearer end of the c₂₁ range.
pub const STATIONARITY_STEP: f64 = 1e-3;
/// Absolute tolerance for placing an efficiency on a region boundary.
pub const REGION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// n_h > n_c with ω_h > ω_c: work is delivered to the probe.
    Engine,
    /// Work flows the other way.
    Dissipative,
    /// n_c > n_h with ω_c > ω_h: work is delivered, but the heat comes from
    /// the c bath, so the two baths have swapped roles.
    Reversed,
    /// No net flow (n_h = n_c or ω_h = ω_c).
    Idle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    I,
    IToII,
    II,
    IIToIII,
    III,
    IIIToIV,
    IV,
    BoundaryIV,
    /// Below zero or above the Carnot value.
    Outside,
}

impl Region {
    pub fn label(self) -> &'static str {
        match self {
            Region::I => "I",
            Region::IToII => "I/II",
            Region::II => "II",
            Region::IIToIII => "II/III",
            Region::III => "III",
            Region::IIIToIV => "III/IV",
            Region::IV => "IV",
            Region::BoundaryIV => "boundary-IV",
            Region::Outside => "outside",
        }
    }
}

/// Rows of the bound tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bound {
    I,
    IToII,
    IIToIII,
    IIIToIV,
    IV,
}

impl Bound {
    pub const ALL: [Bound; 5] = [
        Bound::I,
        Bound::IToII,
        Bound::IIToIII,
        Bound::IIIToIV,
        Bound::IV,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Bound::I => "I",
            Bound::IToII => "I/II",
            Bound::IIToIII => "II/III",
            Bound::IIIToIV => "III/IV",
            Bound::IV => "IV",
        }
    }

    /// The efficiency the row is meant to realize: 0, η_C/2, η_CA,
    /// η_C/(2−η_C) or η_C.
    pub fn target_efficiency(self, eta_c: f64) -> f64 {
        match self {
            Bound::I => 0.0,
            Bound::IToII => eta_c / 2.0,
            Bound::IIToIII => 1.0 - (1.0 - eta_c).sqrt(),
            Bound::IIIToIV => eta_c / (2.0 - eta_c),
            Bound::IV => eta_c,
        }
    }

    /// Tabulated pump scale c_p.
    pub fn c_p(self, eta_c: f64) -> f64 {
        match self {
            Bound::I => 1.0,
            Bound::IToII => 2.0 / (2.0 - eta_c),
            Bound::IIToIII => 1.0 / (1.0 - eta_c).sqrt(),
            Bound::IIIToIV => (2.0 - eta_c) / (2.0 * (1.0 - eta_c)),
            Bound::IV => 2.0 / (1.0 - eta_c),
        }
    }

    /// K/(uv/λ') where the bandwidth radicand reads u² − K.
    fn radicand_coefficient(self, eta_c: f64) -> f64 {
        match self {
            Bound::I => 4.0,
            Bound::IToII => 2.0 * (2.0 - eta_c),
            Bound::IIToIII => 4.0 * (1.0 - eta_c).sqrt(),
            Bound::IIIToIV => 8.0 * (1.0 - eta_c) / (2.0 - eta_c),
            Bound::IV => 4.0 * (1.0 - eta_c),
        }
    }
}

/// Places η on the bound ladder 0 < η_C/2 < η_CA < η_C/(2−η_C) < η_C.
pub fn classify(eta: f64, eta_c: f64) -> Region {
    if !eta.is_finite() || !eta_c.is_finite() || eta < -REGION_TOL || eta > eta_c + REGION_TOL {
        return Region::Outside;
    }
    let marks = [
        (Bound::IToII.target_efficiency(eta_c), Region::IToII, Region::I),
        (Bound::IIToIII.target_efficiency(eta_c), Region::IIToIII, Region::II),
        (Bound::IIIToIV.target_efficiency(eta_c), Region::IIIToIV, Region::III),
        (eta_c, Region::BoundaryIV, Region::IV),
    ];
    for (mark, on, below) in marks {
        if (eta - mark).abs() <= REGION_TOL {
            return on;
        }
        if eta < mark {
            return below;
        }
    }
    Region::BoundaryIV
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineResult {
    /// |P| from the steady-state closed form.
    pub power: f64,
    /// Heat drawn from the hot bath, signed so that η = P/Q̇_h in the engine regime.
    pub heat_flux_h: f64,
    /// 1 − ω_c/ω_h.
    pub efficiency: f64,
    /// ω_21/ω_c of the parameter set.
    pub c21_star: f64,
    /// 1 − T_c/T_h with both temperatures read off the occupations.
    pub eta_carnot: f64,
    pub region: Region,
    pub regime: Regime,
}

/// Signed steady-state power
/// P = (2/3) λ²Γ_hΓ_c(n_c − n_h)(ω_c − ω_h) / [(Γ_h n_h + Γ_c n_c)(λ² + Γ_hΓ_c n_c n_h)].
pub fn engine_power(bath: &EffectiveBath, params: &SystemParams, lambda: f64) -> f64 {
    let (gh, gc, nh, nc) = (bath.gamma_h, params.gamma_c, bath.n_h, params.n_c);
    let l2 = lambda * lambda;
    2.0 / 3.0 * l2 * gh * gc * (nc - nh) * (params.omega_c() - params.omega_h())
        / ((gh * nh + gc * nc) * (l2 + gh * gc * nc * nh))
}

pub fn engine_observables(
    bath: &EffectiveBath,
    params: &SystemParams,
    pump: &PumpSpec,
) -> Result<EngineResult> {
    let lambda = pump.lambda;
    if !(lambda > 0.0) {
        return Err(Error::invalid("lambda", "engine needs a probe coupling > 0"));
    }
    let (wc, wh) = (params.omega_c(), params.omega_h());
    if !(wh > 0.0) || !(wc > 0.0) {
        return Err(Error::invalid("omega", "omega_c and omega_h must be > 0"));
    }
    let (gh, gc, nh, nc) = (bath.gamma_h, params.gamma_c, bath.n_h, params.n_c);
    let denom = (gh * nh + gc * nc) * (lambda * lambda + gh * gc * nc * nh);
    if !(denom > 0.0) {
        return Err(Error::Singular(
            "engine power denominator vanishes (no thermal excitation)".into(),
        ));
    }
    let signed = engine_power(bath, params, lambda);
    let heat = 2.0 / 3.0 * lambda * lambda * gh * gc * (nh - nc) * wh / denom;
    let efficiency = 1.0 - wc / wh;
    let regime = if signed > 0.0 && heat > 0.0 {
        Regime::Engine
    } else if signed > 0.0 {
        Regime::Reversed
    } else if signed < 0.0 {
        Regime::Dissipative
    } else {
        Regime::Idle
    };
    let t_h = bose_temperature(wh, nh);
    let t_c = bose_temperature(wc, nc);
    let eta_carnot = if t_h > 0.0 { 1.0 - t_c / t_h } else { f64::NEG_INFINITY };
    Ok(EngineResult {
        power: signed.abs(),
        heat_flux_h: heat,
        efficiency,
        c21_star: params.omega_21() / wc,
        eta_carnot,
        region: classify(efficiency, eta_carnot),
        regime,
    })
}

/// P = iλ(ω_c − ω_h)(ρ₀₁ − ρ₁₀) on the steady state of the three-level
/// engine; same sign convention as [`engine_power`].
pub fn steady_state_power(bath: &EffectiveBath, params: &SystemParams, lambda: f64) -> Result<f64> {
    let ss = steady_state_of(&maser_equation(bath, params, lambda, 0.0))?;
    let rho_01 = ss.rho.get(MaserLevel::Zero.idx(), MaserLevel::One.idx());
    Ok(-2.0 * lambda * (params.omega_c() - params.omega_h()) * rho_01.im)
}

/// Values of c₂₁ where the classical power has a pole.
pub fn classical_poles(d: &DimensionlessSet) -> Vec<f64> {
    let s = (d.tau * d.sigma_p_prime).powi(8);
    let mut out = Vec::new();
    // (c s + u(α − c)) and (c λ' s + v(α − c)) are linear in c
    for (slope, offset) in [(s - d.u, d.u * d.alpha), (d.lambda_prime * s - d.v, d.v * d.alpha)] {
        if slope != 0.0 {
            out.push(-offset / slope);
        }
    }
    out
}

fn check_c21(d: &DimensionlessSet) -> Result<()> {
    if !d.c_21.is_finite() || d.c_21 < 0.0 {
        return Err(Error::Domain {
            quantity: "c_21",
            value: d.c_21,
            reason: "must be >= 0",
        });
    }
    Ok(())
}

/// Classical power
/// P_C = 4c₂₁s u v c̃_p λ'(c̃₂₁ − s(c̃₂₁ − c₂₁)) / [3(c₂₁s + u c̃₂₁)(c₂₁λ's + v c̃₂₁)]
/// with s = (τσ'_p)⁸, c̃_p = c_p − c₂₁ − 1 and c̃₂₁ = α − c₂₁; in units of T_cω_c.
pub fn power_classical(d: &DimensionlessSet) -> Result<f64> {
    check_c21(d)?;
    let c = d.c_21;
    let s = (d.tau * d.sigma_p_prime).powi(8);
    let ct = d.alpha - c;
    let den = 3.0 * (c * s + d.u * ct) * (c * d.lambda_prime * s + d.v * ct);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Singular(format!("classical power has a pole at c_21 = {c}")));
    }
    let num = 4.0 * c * s * d.u * d.v * (d.c_p - c - 1.0) * d.lambda_prime * (ct - s * (ct - c));
    Ok(num / den)
}

/// Entangled power
/// P_Q = 2u v c₂₁ c̃_p λ' t(2θc̃₂₁ − t(2c̃₂₁ − c₂₁)) / [3(u c̃₂₁θ + c₂₁t)(v c̃₂₁θ + c₂₁λ't)]
/// with t = (τσ'_p)⁴ and c̃₂₁ = α + c₂₁.
pub fn power_entangled(d: &DimensionlessSet) -> Result<f64> {
    check_c21(d)?;
    let c = d.c_21;
    let t = (d.tau * d.sigma_p_prime).powi(4);
    let ct = d.alpha + c;
    let den = 3.0 * (d.u * ct * d.theta + c * t) * (d.v * ct * d.theta + c * d.lambda_prime * t);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Singular(format!("entangled power has a pole at c_21 = {c}")));
    }
    let num = 2.0 * d.u * d.v * c * (d.c_p - c - 1.0) * d.lambda_prime * t
        * (2.0 * d.theta * ct - t * (2.0 * ct - c));
    Ok(num / den)
}

pub fn power_dimensionless(kind: PumpKind, d: &DimensionlessSet) -> Result<f64> {
    match kind {
        PumpKind::ClassicalTwoPhoton => power_classical(d),
        PumpKind::EntangledTwoPhoton => power_entangled(d),
    }
}

/// Printed classical maximum
/// 4uvλ'τ̃(2𝒜 + 2αuv + s c'_p(m u + v)) / [3s(v − uλ')²],
/// 𝒜 = √(uv(s c'_p + αu)(s c'_p λ' + αv)), τ̃ = 1 − s, c'_p = c_p − 1.
/// `m` is an unexplained symbol of the printed form, normally 1.
pub fn max_power_classical_closed_form(d: &DimensionlessSet, m: f64) -> f64 {
    let s = (d.tau * d.sigma_p_prime).powi(8);
    let (u, v, a, l) = (d.u, d.v, d.alpha, d.lambda_prime);
    let cp = d.c_p - 1.0;
    let big_a = (u * v * (s * cp + a * u) * (s * cp * l + a * v)).sqrt();
    4.0 * u * v * l * (1.0 - s) * (2.0 * big_a + 2.0 * a * u * v + s * cp * (m * u + v))
        / (3.0 * s * (v - u * l).powi(2))
}

/// Printed entangled maximum
/// 4uvλ'𝒲t c'_p²(θ − t) / [3θ(𝒳 + t v c'_p)(𝒳 + t u c'_p λ')],
/// 𝒳 = 𝒲 + ℰ, ℰ = αuvθ, 𝒲 = √(uv(t c'_p + ℰ/v)(t c'_p λ' + ℰ/u)).
pub fn max_power_entangled_closed_form(d: &DimensionlessSet) -> f64 {
    let (t, cp, w, x) = quantum_aux(d);
    let (u, v, l) = (d.u, d.v, d.lambda_prime);
    4.0 * u * v * l * w * t * cp * cp * (d.theta - t)
        / (3.0 * d.theta * (x + t * v * cp) * (x + t * u * cp * l))
}

/// (t, c'_p, 𝒲, 𝒳) of the entangled closed forms.
fn quantum_aux(d: &DimensionlessSet) -> (f64, f64, f64, f64) {
    let t = (d.tau * d.sigma_p_prime).powi(4);
    let cp = d.c_p - 1.0;
    let e = d.alpha * d.u * d.v * d.theta;
    let w = (d.u * d.v * (t * cp + e / d.v) * (t * cp * d.lambda_prime + e / d.u)).sqrt();
    (t, cp, w, w + e)
}

pub fn max_power_closed_form(kind: PumpKind, d: &DimensionlessSet, m: f64) -> f64 {
    match kind {
        PumpKind::ClassicalTwoPhoton => max_power_classical_closed_form(d, m),
        PumpKind::EntangledTwoPhoton => max_power_entangled_closed_form(d),
    }
}

/// Small-τσ'_p forms: τ⁸c'_p²λ'σ'⁸/(3α) and τ⁴c'_p²λ'σ'⁴/(3αθ).
pub fn max_power_small_tau(kind: PumpKind, d: &DimensionlessSet) -> f64 {
    let cp = d.c_p - 1.0;
    let x = d.tau * d.sigma_p_prime;
    match kind {
        PumpKind::ClassicalTwoPhoton => x.powi(8) * cp * cp * d.lambda_prime / (3.0 * d.alpha),
        PumpKind::EntangledTwoPhoton => {
            x.powi(4) * cp * cp * d.lambda_prime / (3.0 * d.alpha * d.theta)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxPower {
    /// Numeric maximum over c₂₁ ∈ (0, c_p − 1).
    pub p_max: f64,
    pub c21_star: f64,
    /// Central-difference slope at c21_star.
    pub slope: f64,
    /// The printed closed form at the same parameters.
    pub closed_form: f64,
    pub rel_diff: f64,
    /// Set when the closed form and the numeric maximum disagree beyond
    /// [`CLOSED_FORM_TOL`]. Both values are kept.
    pub flagged: bool,
}

impl MaxPower {
    /// |dP/dc₂₁| ≤ 1e-6·|P_max|.
    pub fn is_stationary(&self) -> bool {
        self.slope.abs() <= 1e-6 * self.p_max.abs()
    }
}

/// Maximizes the dimensionless power over c₂₁ and compares with the printed
/// closed form (`m` as in [`max_power_classical_closed_form`]).
pub fn maximize_power(kind: PumpKind, d: &DimensionlessSet, m: f64) -> Result<MaxPower> {
    d.with_c21(0.0).validate()?;
    let hi = d.c_p - 1.0;
    if !(hi > 0.0) {
        return Err(Error::Regime(format!(
            "c_p = {} leaves no room for c_21 in (0, c_p - 1)",
            d.c_p
        )));
    }
    if kind == PumpKind::ClassicalTwoPhoton {
        if let Some(p) = classical_poles(d).into_iter().find(|p| *p > 0.0 && *p < hi) {
            return Err(Error::Singular(format!(
                "classical power has a pole at c_21 = {p:.6} inside (0, {hi})"
            )));
        }
    }
    let f = |c: f64| power_dimensionless(kind, &d.with_c21(c)).unwrap_or(f64::NAN);
    let best = maximize(f, 0.0, hi)?;
    if !(best.value > 0.0) {
        return Err(Error::Regime(format!(
            "power is not positive anywhere on (0, {hi}); not an engine"
        )));
    }
    let slope = interior_slope(f, best.x, 0.0, hi, STATIONARITY_STEP);
    let closed_form = max_power_closed_form(kind, d, m);
    let rel_diff = ((closed_form - best.value) / best.value).abs();
    Ok(MaxPower {
        p_max: best.value,
        c21_star: best.x,
        slope,
        closed_form,
        rel_diff,
        flagged: !(rel_diff <= CLOSED_FORM_TOL),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EfficiencyForm {
    Full,
    /// ω_c ≫ Γ_c limit; the form the bound tables are built on.
    #[default]
    WeakDissipation,
}

/// η* = 1 − 1/(c_p + X) for the selected pump and form.
///
/// Classical full: X = [τ̃√(uv(c'_p s + αu)(sλ'c'_p + αv)) + uvτ̃α²] / [τ̃ s(αv + λ'(c'_p s + αu))].
/// Classical weak: X = α²uv / [s(s c'_p λ' + αuλ')].
/// Entangled full: X = −c'_p ℰ/(𝒲 + ℰ).
/// Entangled weak: X = uvα²θ² / [tλ'(αuθ + c'_p t)].
pub fn efficiency_at_max_power(kind: PumpKind, d: &DimensionlessSet, form: EfficiencyForm) -> f64 {
    let cp = d.c_p - 1.0;
    let (u, v, a, l) = (d.u, d.v, d.alpha, d.lambda_prime);
    let x = match (kind, form) {
        (PumpKind::ClassicalTwoPhoton, EfficiencyForm::Full) => {
            let s = (d.tau * d.sigma_p_prime).powi(8);
            let tt = 1.0 - s;
            (tt * (u * v * (cp * s + a * u) * (s * l * cp + a * v)).sqrt() + u * v * tt * a * a)
                / (tt * s * (a * v + l * (cp * s + a * u)))
        }
        (PumpKind::ClassicalTwoPhoton, EfficiencyForm::WeakDissipation) => {
            let s = (d.tau * d.sigma_p_prime).powi(8);
            a * a * u * v / (s * (s * cp * l + a * u * l))
        }
        (PumpKind::EntangledTwoPhoton, EfficiencyForm::Full) => {
            let (_, _, w, _) = quantum_aux(d);
            let e = a * u * v * d.theta;
            -cp * e / (w + e)
        }
        (PumpKind::EntangledTwoPhoton, EfficiencyForm::WeakDissipation) => {
            let t = (d.tau * d.sigma_p_prime).powi(4);
            u * v * a * a * d.theta * d.theta / (t * l * (a * u * d.theta + cp * t))
        }
    };
    1.0 - 1.0 / (d.c_p + x)
}

/// Tabulated pump bandwidth σ'_p realizing a bound:
/// classical [ξ(u − √(u² − K))]^{1/8} with ξ = α/(2τ⁸),
/// entangled [Ξ(u − √(u² − K))]^{1/4} with Ξ = αθ/(2τ⁴),
/// where K = k·uv/λ' and k depends on the row. `d.sigma_p_prime` and
/// `d.c_p` are ignored.
pub fn bound_bandwidth(kind: PumpKind, bound: Bound, d: &DimensionlessSet) -> Result<f64> {
    let eta_c = d.eta_carnot();
    if !(d.tau > 0.0 && d.tau < 1.0) {
        return Err(Error::Domain {
            quantity: "tau",
            value: d.tau,
            reason: "bound tables need 0 < tau < 1",
        });
    }
    if !(d.lambda_prime > 0.0) {
        return Err(Error::invalid("lambda_prime", "bound tables need lambda' > 0"));
    }
    let k = bound.radicand_coefficient(eta_c);
    let radicand = d.u * d.u - k * d.u * d.v / d.lambda_prime;
    if radicand < 0.0 {
        return Err(Error::UnreachableBound {
            bound: bound.label(),
            min_lambda_prime: k * d.v / d.u,
        });
    }
    let inner = d.u - radicand.sqrt();
    Ok(match kind {
        PumpKind::ClassicalTwoPhoton => (d.alpha / (2.0 * d.tau.powi(8)) * inner).powf(1.0 / 8.0),
        PumpKind::EntangledTwoPhoton => {
            (d.alpha * d.theta / (2.0 * d.tau.powi(4)) * inner).powf(0.25)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QheRatio {
    /// τ⁻⁴σ'_p⁻⁴θ⁻¹; infinite when θ = 0.
    pub asymptotic: f64,
    /// Ratio of the printed closed-form maxima.
    pub closed_form: f64,
    /// Ratio of numeric maxima when both exist.
    pub numeric: Option<f64>,
}

pub fn max_power_ratio_qhe(d: &DimensionlessSet, m: f64) -> QheRatio {
    let x = d.tau * d.sigma_p_prime;
    let asymptotic = if d.theta == 0.0 {
        f64::INFINITY
    } else {
        1.0 / (x.powi(4) * d.theta)
    };
    let closed_form = max_power_entangled_closed_form(d) / max_power_classical_closed_form(d, m);
    let numeric = match (
        maximize_power(PumpKind::EntangledTwoPhoton, d, m),
        maximize_power(PumpKind::ClassicalTwoPhoton, d, m),
    ) {
        (Ok(q), Ok(c)) => Some(q.p_max / c.p_max),
        _ => None,
    };
    QheRatio {
        asymptotic,
        closed_form,
        numeric,
    }
}
