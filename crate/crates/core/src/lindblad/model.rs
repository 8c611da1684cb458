use crate::bath::EffectiveBath;
use crate::params::{PumpSpec, SystemParams};

use super::{DensityMatrix, MasterEquation, PopulationTerm};

/// Basis of the six-level molecule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    G = 0,
    Zero = 1,
    E = 2,
    EPrime = 3,
    One = 4,
    Two = 5,
}

impl Level {
    pub const COUNT: usize = 6;

    pub fn idx(self) -> usize {
        self as usize
    }
}

/// Basis of the reduced engine {g, 0, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaserLevel {
    G = 0,
    Zero = 1,
    One = 2,
}

impl MaserLevel {
    pub fn idx(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DissipatorMode {
    /// Thermal channels as Lindblad dissipators: 2↔1 and 0↔g rate pairs.
    #[default]
    Consistent,
    /// Same, but the ρ̇₁₁ line reads −Γ₂(n₂+1)ρ₀₀ + Γ_c n_c ρ_gg instead of
    /// the 2↔1 exchange, as in the printed rate table. Not trace preserving.
    Verbatim,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EomOptions {
    pub dissipator: DissipatorMode,
    /// Adds the e'↔e relaxation pair (Γ_e, n_e).
    pub e_prime_channel: bool,
    pub pump: bool,
    pub probe: bool,
}

impl Default for EomOptions {
    fn default() -> Self {
        EomOptions {
            dissipator: DissipatorMode::Consistent,
            e_prime_channel: false,
            pump: true,
            probe: true,
        }
    }
}

/// Six-level equation of motion in the frame rotating with the pump and
/// probe fields. Pump couplings Ω₁ (g-e) and Ω₂ (e-2), probe λ (1-0).
pub fn molecular_equation(
    params: &SystemParams,
    pump: &PumpSpec,
    opts: &EomOptions,
) -> MasterEquation {
    use Level::*;
    let det = params.detunings;
    let mut eq = MasterEquation::new(Level::COUNT);
    eq.energies[E.idx()] = det.pump_1;
    eq.energies[EPrime.idx()] = det.pump_1 + params.delta();
    eq.energies[Two.idx()] = det.pump_1 + det.pump_2;
    eq.energies[One.idx()] = det.probe;
    if opts.pump {
        let (r1, r2) = pump.rabi_pair();
        eq.add_coupling(G.idx(), E.idx(), r1);
        eq.add_coupling(E.idx(), Two.idx(), r2);
    }
    if opts.probe {
        eq.add_coupling(One.idx(), Zero.idx(), pump.lambda);
    }
    eq.add_thermal_channel(One.idx(), Two.idx(), params.gamma_2, params.n_2);
    eq.add_thermal_channel(G.idx(), Zero.idx(), params.gamma_c, params.n_c);
    if opts.e_prime_channel {
        eq.add_thermal_channel(E.idx(), EPrime.idx(), params.gamma_e, params.n_e);
    }
    if opts.dissipator == DissipatorMode::Verbatim {
        let (g2, n2) = (params.gamma_2, params.n_2);
        let one = One.idx();
        for (source, coefficient) in [
            (Two.idx(), -g2 * (n2 + 1.0)),
            (one, g2 * n2),
            (Zero.idx(), -g2 * (n2 + 1.0)),
            (G.idx(), params.gamma_c * params.n_c),
        ] {
            eq.extra.push(PopulationTerm {
                target: one,
                source,
                coefficient,
            });
        }
    }
    eq
}

/// dρ/dt of the six-level molecule. The generator is time independent in
/// the rotating frame, so `t` does not enter.
pub fn eom_rhs(
    rho: &DensityMatrix,
    _t: f64,
    params: &SystemParams,
    pump: &PumpSpec,
    opts: &EomOptions,
) -> DensityMatrix {
    molecular_equation(params, pump, opts).rhs(rho)
}

/// Three-level engine: g↔1 through the effective hot bath, g↔0 through the
/// cold bath, and the probe coupling (λ/2)(|1⟩⟨0| + h.c.).
///
/// The half-amplitude convention together with P = iλ(ω_c − ω_h)(ρ₀₁ − ρ₁₀)
/// reproduces the sign and scale of the closed-form engine power in the
/// high-temperature limit.
pub fn maser_equation(
    bath: &EffectiveBath,
    params: &SystemParams,
    lambda: f64,
    probe_detuning: f64,
) -> MasterEquation {
    use MaserLevel::*;
    let mut eq = MasterEquation::new(3);
    eq.energies[One.idx()] = probe_detuning;
    eq.add_coupling(One.idx(), Zero.idx(), -0.5 * lambda);
    eq.add_thermal_channel(G.idx(), One.idx(), bath.gamma_h, bath.n_h);
    eq.add_thermal_channel(G.idx(), Zero.idx(), params.gamma_c, params.n_c);
    eq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn quiet() -> (SystemParams, PumpSpec) {
        let mut p = presets::fig3_system();
        p.n_c = 0.0;
        let pump = presets::fig3_pump().scaled_rabi(0.0);
        let mut pump = pump;
        pump.lambda = 0.0;
        (p, pump)
    }

    #[test]
    fn dark_ground_state_is_stationary() {
        let (p, pump) = quiet();
        let rho = DensityMatrix::pure(6, Level::G.idx());
        let d = eom_rhs(&rho, 0.0, &p, &pump, &EomOptions::default());
        assert!(d.matrix().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn cold_decay_read_off() {
        let (p, pump) = quiet();
        let rho = DensityMatrix::pure(6, Level::Zero.idx());
        let d = eom_rhs(&rho, 0.0, &p, &pump, &EomOptions::default());
        let rate = p.gamma_c * (p.n_c + 1.0);
        assert!((d.population(Level::Zero.idx()) + rate).abs() < 1e-18);
        assert!((d.population(Level::G.idx()) - rate).abs() < 1e-18);
    }

    #[test]
    fn printed_coherence_lines_reproduced() {
        // ρ̇₁₀ = iλ(ρ₁₁ − ρ₀₀) − {Γ₂n₂/2 + Γ_c(n_c+1)/2 + iω}ρ₁₀
        let p = presets::fig3_system();
        let pump = presets::fig3_pump();
        let opts = EomOptions::default();
        let mut rho = DensityMatrix::diagonal(&[0.5, 0.2, 0.0, 0.0, 0.3, 0.0]);
        let mut m = rho.matrix().clone();
        let c = num_complex::Complex64::new(0.01, 0.02);
        m[(4, 1)] = c;
        m[(1, 4)] = c.conj();
        rho = DensityMatrix::from_matrix(m);
        let d = eom_rhs(&rho, 0.0, &p, &pump, &opts);
        let i = num_complex::Complex64::i();
        let expected = i * pump.lambda * (0.3 - 0.2)
            - c * (p.gamma_2 * p.n_2 / 2.0 + p.gamma_c * (p.n_c + 1.0) / 2.0);
        assert!((d.get(4, 1) - expected).norm() < 1e-15);
        // ρ̇_gg = iΩ₁(ρ_ge − ρ_eg) + Γ_c(n_c+1)ρ₀₀ − Γ_c n_c ρ_gg
        let expected_gg = p.gamma_c * (p.n_c + 1.0) * 0.2 - p.gamma_c * p.n_c * 0.5;
        assert!((d.population(0) - expected_gg).abs() < 1e-15);
    }

    #[test]
    fn verbatim_line_breaks_trace() {
        let p = presets::fig3_system();
        let pump = presets::fig3_pump();
        let opts = EomOptions {
            dissipator: DissipatorMode::Verbatim,
            ..EomOptions::default()
        };
        let rho = DensityMatrix::diagonal(&[0.5, 0.2, 0.0, 0.0, 0.2, 0.1]);
        let d = eom_rhs(&rho, 0.0, &p, &pump, &opts);
        let expected_11 = -p.gamma_2 * (p.n_2 + 1.0) * 0.2 + p.gamma_c * p.n_c * 0.5;
        assert!((d.population(4) - expected_11).abs() < 1e-15);
        assert!(d.trace().norm() > 1e-8);
    }
}
