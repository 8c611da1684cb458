//! Named cross-module checks shared by the acceptance tests and the
//! `oracle-check` subcommand. Each check reports a measured residual next to
//! its threshold.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bath::{
    coherent_population, default_time_grid, excitation, fit_bath, population_mismatch,
    thermal_population, EffectiveBath, FitMode,
};
use crate::engine::{
    bound_bandwidth, efficiency_at_max_power, engine_observables, max_power_ratio_qhe,
    maximize_power, Bound, EfficiencyForm, Regime,
};
use crate::error::{Error, Result};
use crate::lindblad::{
    integrate, integrate_at, molecular_equation, population_green_function, steady_state,
    DensityMatrix, DissipatorMode, EomOptions, GreenPair, IntegratorOptions, Level,
    TransportMatrix,
};
use crate::optimize::first_root;
use crate::params::{reduce, DimensionlessSet, PumpKind, PumpSpec, SystemParams};
use crate::special::{logspace, sinc, theta};
use crate::spdc::{rabi_product, theta_from_source, Dipoles, JointAmplitude};
use crate::spectro::spectro_ratio;
use crate::presets;

/// Seed of every randomized check.
pub const SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Report only; never fails the suite.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: f64,
    pub threshold: f64,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, residual: f64, threshold: f64, detail: String) -> Self {
        Check {
            name: name.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            residual,
            threshold,
            detail,
        }
    }

    fn info(name: &str, residual: f64, detail: String) -> Self {
        Check {
            name: name.into(),
            status: Status::Info,
            residual,
            threshold: f64::NAN,
            detail,
        }
    }

    fn errored(name: &str, err: &Error) -> Self {
        Check::new(name, false, f64::NAN, f64::NAN, err.to_string())
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// `PASS name residual=… threshold=… detail`.
    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        };
        format!(
            "{tag} {} residual={:.3e} threshold={:.3e} {}",
            self.name, self.residual, self.threshold, self.detail
        )
    }
}

fn guard(name: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::errored(name, &e))
}

/// Bath asymptote identity on one parameter set.
pub fn bath_asymptote(params: &SystemParams, pump: &PumpSpec) -> Check {
    let name = "bath-asymptote";
    guard(name, || {
        params.validate()?;
        let bath = fit_bath(params, pump, FitMode::Consistency)?;
        let coherent = coherent_population(f64::INFINITY, params, pump)?.0;
        let thermal = thermal_population(f64::INFINITY, &bath).0;
        let mismatch =
            population_mismatch(params, pump, FitMode::Consistency, &default_time_grid(&bath))?;
        let diff = (coherent - thermal).abs();
        let ok = diff <= 1e-10 && mismatch.max_abs_diff.is_finite();
        Ok(Check::new(
            name,
            ok,
            diff,
            1e-10,
            format!(
                "rho11(inf)={coherent:.6e} n_h={:.6e} max_transient={:.6e}",
                bath.n_h, mismatch.max_abs_diff
            ),
        ))
    })
}

/// Same identity with the printed (n_h, Γ_h); the transient is reported.
pub fn bath_printed_transient(params: &SystemParams, pump: &PumpSpec) -> Check {
    let name = "bath-printed-transient";
    guard(name, || {
        let consistent = fit_bath(params, pump, FitMode::Consistency)?;
        let m = population_mismatch(params, pump, FitMode::Printed, &default_time_grid(&consistent))?;
        Ok(Check::info(
            name,
            m.max_abs_diff,
            format!(
                "printed gamma_h/consistent gamma_h = {:.6e}",
                m.bath.gamma_h / consistent.gamma_h
            ),
        ))
    })
}

/// Six-level equation (probe off, consistent dissipator) started from the
/// two-photon transfer ρ(0) = (1 − P)|g⟩⟨g| + P|2⟩⟨2| against the closed-form
/// ρ₁₁(t) at 20 log-spaced times.
pub fn ode_vs_closed_form(params: &SystemParams, pump: &PumpSpec) -> Check {
    let name = "ode-vs-closed-form";
    guard(name, || {
        params.validate()?;
        let p = excitation(params, pump);
        let mut pops = [0.0; Level::COUNT];
        pops[Level::G.idx()] = 1.0 - p;
        pops[Level::Two.idx()] = p;
        let opts = EomOptions {
            dissipator: DissipatorMode::Consistent,
            pump: false,
            probe: false,
            e_prime_channel: false,
        };
        let eq = molecular_equation(params, pump, &opts);
        let rate = params.gamma_2 * (2.0 * params.n_2 + 1.0);
        let times = logspace(1e-3 / rate, 10.0 / rate, 20);
        let integ = IntegratorOptions {
            atol: 1e-24,
            ..IntegratorOptions::default()
        };
        let traj = integrate_at(&eq, &DensityMatrix::diagonal(&pops), &times, times[0] / 10.0, &integ)?;
        let mut worst = 0.0_f64;
        for (t, rho) in times.iter().zip(&traj.states) {
            let closed = coherent_population(*t, params, pump)?.0;
            let ode = rho.population(Level::One.idx());
            worst = worst.max(((ode - closed) / closed).abs());
        }
        Ok(Check::new(
            name,
            worst <= 0.02,
            worst,
            0.02,
            format!("P_exc={p:.6e} steps={}", traj.steps),
        ))
    })
}

/// Fixed reduced set used for the bound tables.
pub fn table_set(tau: f64) -> DimensionlessSet {
    DimensionlessSet {
        tau,
        c_p: 1.0,
        c_21: 0.0,
        lambda_prime: 10.0,
        sigma_p_prime: 1.0,
        u: 8.0,
        v: 0.05,
        alpha: 12.0,
        theta: 1.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub kind: PumpKind,
    pub tau: f64,
    pub bound: Bound,
    pub c_p: f64,
    pub sigma_p_prime: f64,
    pub eta: f64,
    pub target: f64,
}

/// Substitutes each tabulated (c_p, σ'_p) into the weak-dissipation
/// efficiency at maximum power.
pub fn table_rows(kind: PumpKind, d: &DimensionlessSet) -> Result<Vec<TableRow>> {
    let eta_c = d.eta_carnot();
    Bound::ALL
        .iter()
        .map(|&bound| {
            let sigma = bound_bandwidth(kind, bound, d)?;
            let c_p = bound.c_p(eta_c);
            let row = d.with_sigma(sigma).with_c_p(c_p);
            Ok(TableRow {
                kind,
                tau: d.tau,
                bound,
                c_p,
                sigma_p_prime: sigma,
                eta: efficiency_at_max_power(kind, &row, EfficiencyForm::WeakDissipation),
                target: bound.target_efficiency(eta_c),
            })
        })
        .collect()
}

pub const TABLE_TAUS: [f64; 4] = [0.1, 0.25, 0.5, 0.75];

pub fn table_closure() -> Check {
    let name = "table-closure";
    guard(name, || {
        let mut worst = 0.0_f64;
        let mut failing = Vec::new();
        for kind in [PumpKind::ClassicalTwoPhoton, PumpKind::EntangledTwoPhoton] {
            for tau in TABLE_TAUS {
                for row in table_rows(kind, &table_set(tau))? {
                    let err = (row.eta - row.target).abs();
                    worst = worst.max(err);
                    if !(err <= 1e-8) {
                        failing.push(format!(
                            "{}:tau={}:{}:eta={:.6e}",
                            kind.label(),
                            tau,
                            row.bound.label(),
                            row.eta
                        ));
                    }
                }
            }
        }
        let detail = if failing.is_empty() {
            "all rows close".to_string()
        } else {
            format!("{} rows off: {}", failing.len(), failing.join(" "))
        };
        Ok(Check::new(name, failing.is_empty(), worst, 1e-8, detail))
    })
}

fn sample_set(rng: &mut ChaCha8Rng) -> DimensionlessSet {
    let log = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| (rng.gen_range(lo.ln()..hi.ln())).exp();
    DimensionlessSet {
        tau: rng.gen_range(0.05..0.95),
        c_p: log(rng, 2.0, 50.0),
        c_21: 0.0,
        lambda_prime: log(rng, 0.1, 100.0),
        sigma_p_prime: log(rng, 0.2, 5.0),
        u: log(rng, 0.1, 50.0),
        v: log(rng, 0.01, 1.0),
        alpha: log(rng, 0.5, 50.0),
        theta: rng.gen_range(0.1..=1.0),
    }
}

/// Stationarity of the numeric maxima over random admissible sets, with the
/// closed-form comparison. Sets whose maximum is not interior, or whose
/// classical power has a pole in the domain, are redrawn.
pub fn maxima_stationarity(count: usize, seed: u64) -> Check {
    let name = "maxima-stationarity";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    let mut flagged = [0usize; 2];
    let mut redrawn = 0usize;
    for (k, kind) in [PumpKind::ClassicalTwoPhoton, PumpKind::EntangledTwoPhoton]
        .into_iter()
        .enumerate()
    {
        let mut accepted = 0;
        while accepted < count {
            let d = sample_set(&mut rng);
            match maximize_power(kind, &d, 1.0) {
                Ok(m) => {
                    accepted += 1;
                    worst = worst.max(m.slope.abs() / m.p_max.abs());
                    if m.flagged {
                        flagged[k] += 1;
                    }
                }
                Err(_) => redrawn += 1,
            }
            if redrawn > 100 * count {
                return Check::new(
                    name,
                    false,
                    f64::NAN,
                    1e-6,
                    "too few admissible sets drawn".into(),
                );
            }
        }
    }
    Check::new(
        name,
        worst <= 1e-6,
        worst,
        1e-6,
        format!(
            "n={count} per pump; closed form flagged classical={} entangled={} (printed-formula caveat); redrawn={redrawn}",
            flagged[0], flagged[1]
        ),
    )
}

/// Reduced Fig. 7 set with θ = 1.
pub fn fig7_set() -> Result<DimensionlessSet> {
    let mut d = reduce(&presets::fig7_system(), &presets::fig7_classical_pump())?;
    d.theta = 1.0;
    Ok(d)
}

/// τ where `ratio(τ) = 1`, searched on a log grid in ln τ.
fn crossover(ratio: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Option<f64> {
    first_root(|x: f64| ratio(x.exp()).ln(), lo.ln(), hi.ln(), 400).map(f64::exp)
}

pub const QHE_TARGET: f64 = 0.0048;
pub const SPECTRO_TARGET: f64 = 0.07;

/// Crossover of the printed closed-form maxima of the two engines.
pub fn qhe_crossover() -> Check {
    let name = "qhe-crossover";
    guard(name, || {
        let d = fig7_set()?;
        let closed = crossover(|t| max_power_ratio_qhe(&d.with_tau(t), 1.0).closed_form, 1e-4, 0.9);
        let asym = crossover(|t| max_power_ratio_qhe(&d.with_tau(t), 1.0).asymptotic, 1e-4, 0.9);
        let numeric = max_power_ratio_qhe(&d.with_tau(QHE_TARGET), 1.0).numeric;
        let tau = closed.unwrap_or(f64::NAN);
        let rel = (tau - QHE_TARGET).abs() / QHE_TARGET;
        Ok(Check::new(
            name,
            rel <= 0.2,
            rel,
            0.2,
            format!(
                "tau*={tau:.6e} (closed-form maxima); small-tau limit {:.6e}; numeric ratio at target {}",
                asym.unwrap_or(f64::NAN),
                numeric.map_or("undefined (classical pole or no interior maximum)".into(), |r| format!("{r:.6e}"))
            ),
        ))
    })
}

/// Crossover of the spectroscopic maxima, plus the sign of (ratio − 1)
/// on either side of τσ'_p = 1.
pub fn spectro_crossover() -> Check {
    let name = "spectro-crossover";
    guard(name, || {
        let d = fig7_set()?;
        let sigma_pr = presets::fig7_classical_pump().sigma_pr;
        let ratio = |t: f64| {
            spectro_ratio(&d.with_tau(t), sigma_pr)
                .map(|r| r.printed_maxima)
                .unwrap_or(f64::NAN)
        };
        let tau = crossover(ratio, 1e-3, 0.9).unwrap_or(f64::NAN);
        let numeric = crossover(
            |t| {
                spectro_ratio(&d.with_tau(t), sigma_pr)
                    .map(|r| r.numeric_maxima)
                    .unwrap_or(f64::NAN)
            },
            1e-3,
            0.9,
        );
        let edge = 1.0 / d.sigma_p_prime;
        let below = ratio(0.5 * edge) - 1.0;
        let above = ratio(2.0 * edge) - 1.0;
        let rel = (tau - SPECTRO_TARGET).abs() / SPECTRO_TARGET;
        let flips = below < 0.0 && above > 0.0;
        Ok(Check::new(
            name,
            rel <= 0.2 && flips,
            rel,
            0.2,
            format!(
                "tau*={tau:.6e}; 1/sigma'={edge:.6e}; ratio-1 at tau*sigma'=0.5: {below:.3e}, at 2: {above:.3e}; both-numeric-maxima route tau*={:.6e}",
                numeric.unwrap_or(f64::NAN)
            ),
        ))
    })
}

fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// (classical, entangled) log-log slopes of ρ₁₁(∞) against the common
/// amplitude A₀ over two decades. The classical field is Ω_p = A₀; the
/// entangled Rabi product comes from the twin-photon correlation, linear in A₀.
pub fn intensity_slopes() -> Result<(f64, f64)> {
    let params = presets::fig7_system();
    let amps = logspace(1e-6, 1e-4, 9);
    let classical = presets::fig7_classical_pump();
    let entangled = presets::fig7_entangled_pump(0.0);
    let dipoles = Dipoles::default();
    let mut rc = Vec::new();
    let mut rq = Vec::new();
    for &a0 in &amps {
        let pc = PumpSpec::classical(classical.omega_p, a0, classical.sigma_p, classical.lambda, classical.sigma_pr);
        rc.push(coherent_population(f64::INFINITY, &params, &pc)?.0);
        let ja = JointAmplitude::new(a0, entangled.omega_p, entangled.sigma_p, 0.0, 1.0)?;
        let r = rabi_product(&params, &ja, &dipoles)?.sqrt();
        let pq = PumpSpec::entangled(entangled.omega_p, r, r, 0.0, entangled.sigma_p, entangled.lambda, entangled.sigma_pr);
        rq.push(coherent_population(f64::INFINITY, &params, &pq)?.0);
    }
    Ok((loglog_slope(&amps, &rc), loglog_slope(&amps, &rq)))
}

pub fn intensity_scaling() -> Check {
    let name = "intensity-scaling";
    guard(name, || {
        let (c, q) = intensity_slopes()?;
        let err = (c - 4.0).abs().max((q - 2.0).abs());
        Ok(Check::new(
            name,
            err <= 0.02,
            err,
            0.02,
            format!("classical slope={c:.6} entangled slope={q:.6}"),
        ))
    })
}

fn random_params(rng: &mut ChaCha8Rng) -> SystemParams {
    let mut p = presets::fig7_system();
    p.gamma_2 = rng.gen_range(1e-6..1e-2);
    p.gamma_c = rng.gen_range(1e-6..1e-2);
    p.gamma_e = rng.gen_range(1e-6..1e-2);
    p.n_2 = rng.gen_range(0.0..200.0);
    p.n_c = rng.gen_range(0.0..200.0);
    p.n_e = rng.gen_range(0.0..200.0);
    p
}

/// Trace drift and Hermiticity of a driven six-level trajectory.
pub fn trace_and_hermiticity(params: &SystemParams, pump: &PumpSpec) -> Check {
    let name = "trace-hermiticity";
    guard(name, || {
        params.validate()?;
        let eq = molecular_equation(params, pump, &EomOptions::default());
        let rate = params.gamma_2 * (2.0 * params.n_2 + 1.0) + params.gamma_c * (2.0 * params.n_c + 1.0);
        let t_end = 5.0 / rate;
        let dt = (t_end / 200.0).min(0.05 / pump.rabi_amplitude().max(pump.lambda).max(1e-300));
        let traj = integrate(&eq, &DensityMatrix::pure(Level::COUNT, Level::G.idx()), t_end, dt, &IntegratorOptions::default())?;
        let herm = traj.states.iter().map(|r| r.hermiticity_error()).fold(0.0, f64::max);
        let drift = traj.max_trace_drift;
        Ok(Check::new(
            name,
            drift <= 1e-9 && herm <= 1e-12,
            drift.max(herm),
            1e-9,
            format!("trace drift={drift:.3e} hermiticity={herm:.3e} steps={}", traj.steps),
        ))
    })
}

/// Column sums of κ and the Green functions, eigen route against closed form.
pub fn transport_checks(samples: usize, seed: u64) -> Check {
    let name = "transport-green";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut col = 0.0_f64;
    let mut green = 0.0_f64;
    for _ in 0..samples {
        let p = random_params(&mut rng);
        let tm = TransportMatrix::from_params(&p);
        col = col.max(tm.max_column_sum() / tm.kappa().amax());
        let slowest = [
            p.gamma_2 * (2.0 * p.n_2 + 1.0),
            p.gamma_c * (2.0 * p.n_c + 1.0),
            p.gamma_e * (2.0 * p.n_e + 1.0),
        ]
        .into_iter()
        .fold(f64::INFINITY, f64::min);
        let t = rng.gen_range(0.0..5.0) / slowest;
        match tm.green(t) {
            Ok(g) => {
                for pair in GreenPair::ALL {
                    let (i, j) = pair.indices();
                    green = green.max((g[(i, j)] - population_green_function(pair, t, &p)).abs());
                }
            }
            Err(e) => return Check::errored(name, &e),
        }
    }
    Check::new(
        name,
        col <= 1e-12 && green <= 1e-10,
        green,
        1e-10,
        format!("max relative column sum={col:.3e}"),
    )
}

/// θ from the phase-matching factor, from the shared helper and from the
/// reduction must agree.
pub fn theta_single_source(samples: usize, seed: u64) -> Check {
    let name = "theta-single-source";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..samples {
        let mut p = presets::fig7_system();
        p.omega_2 += rng.gen_range(0.0..5e-3);
        let t_ent = rng.gen_range(0.0..5e3);
        let pump = presets::fig7_entangled_pump(t_ent);
        let ja = match JointAmplitude::new(1.0, pump.omega_p, pump.sigma_p, t_ent, 1.0) {
            Ok(j) => j,
            Err(e) => return Check::errored(name, &e),
        };
        let a = theta_from_source(&p, &ja);
        let b = theta(t_ent, p.anharmonicity());
        let c = match reduce(&p, &pump) {
            Ok(d) => d.theta,
            Err(e) => return Check::errored(name, &e),
        };
        worst = worst.max((a - b).abs()).max((a - c).abs());
    }
    Check::new(name, worst <= 1e-12, worst, 1e-12, format!("samples={samples}"))
}

/// Efficiency never exceeds the Carnot value whenever the engine delivers work.
pub fn carnot_ceiling(samples: usize, seed: u64) -> Check {
    let name = "carnot-ceiling";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    let mut engines = 0usize;
    for _ in 0..samples {
        let mut p = presets::fig7_system();
        p.gamma_c = rng.gen_range(1e-6..1e-2);
        p.n_c = (rng.gen_range(-6.0_f64..6.0)).exp();
        p.omega_0 = rng.gen_range(1e-3..0.1);
        p.omega_1 = p.omega_0 * rng.gen_range(0.5..20.0);
        let bath = EffectiveBath::from_occupation(
            (rng.gen_range(-6.0_f64..6.0)).exp(),
            rng.gen_range(1e-6..1e-2),
            p.omega_h(),
        );
        let pump = PumpSpec::classical(1.3, 0.0, 1e-3, rng.gen_range(1e-4..1e-1), 1e-3);
        let r = match engine_observables(&bath, &p, &pump) {
            Ok(r) => r,
            Err(e) => return Check::errored(name, &e),
        };
        if r.regime == Regime::Engine {
            engines += 1;
            worst = worst.max(r.efficiency - r.eta_carnot);
        }
    }
    Check::new(
        name,
        worst <= 1e-12,
        worst,
        1e-12,
        format!("samples={samples} engines={engines}"),
    )
}

pub fn sinc_properties(samples: usize, seed: u64) -> Check {
    let name = "sinc-even-bounded";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut odd = 0.0_f64;
    let mut over = 0.0_f64;
    for _ in 0..samples {
        let x = rng.gen_range(-1e3..1e3) * rng.gen_range(0.0..1.0_f64).powi(4);
        odd = odd.max((sinc(x) - sinc(-x)).abs());
        over = over.max(sinc(x).abs() - 1.0);
    }
    Check::new(
        name,
        odd == 0.0 && over <= 0.0,
        odd.max(over.max(0.0)),
        0.0,
        format!("samples={samples}"),
    )
}

/// Steady states of the verbatim and consistent dissipators.
pub fn verbatim_divergence(params: &SystemParams, pump: &PumpSpec) -> Check {
    let name = "verbatim-vs-consistent";
    guard(name, || {
        let mut p = *params;
        if p.gamma_e == 0.0 {
            p.gamma_e = p.gamma_2;
            p.n_e = p.n_2;
        }
        let consistent = EomOptions {
            e_prime_channel: true,
            ..EomOptions::default()
        };
        let verbatim = EomOptions {
            dissipator: DissipatorMode::Verbatim,
            ..consistent
        };
        let a = steady_state(&p, pump, &consistent)?;
        let detail = match steady_state(&p, pump, &verbatim) {
            Ok(b) => format!(
                "max |rho_verbatim - rho_consistent| = {:.3e}; verbatim trace = {:.6e}",
                a.rho.max_abs_diff(&b.rho),
                b.rho.trace().re
            ),
            Err(e) => format!("verbatim steady state unavailable: {e}"),
        };
        Ok(Check::info(name, a.residual, detail))
    })
}

/// Checks tied to one user-supplied parameter set.
pub fn parameter_suite(params: &SystemParams, pump: &PumpSpec) -> Vec<Check> {
    let valid = match params.validate().and_then(|_| pump.validate()) {
        Ok(()) => Check::new("params-valid", true, 0.0, 0.0, "ok".into()),
        Err(e) => Check::errored("params-valid", &e),
    };
    if !valid.passed() {
        return vec![valid];
    }
    vec![
        valid,
        bath_asymptote(params, pump),
        ode_vs_closed_form(params, pump),
        trace_and_hermiticity(params, pump),
        verbatim_divergence(params, pump),
    ]
}

/// Property floor: trace, Hermiticity, transport, θ, Carnot and sinc.
pub fn property_suite() -> Vec<Check> {
    vec![
        trace_and_hermiticity(&presets::fig3_system(), &presets::fig3_pump()),
        transport_checks(200, SEED),
        theta_single_source(1000, SEED + 1),
        carnot_ceiling(10_000, SEED + 2),
        sinc_properties(10_000, SEED + 3),
    ]
}

/// The default suite on the Fig. 3 and Fig. 7 sets.
pub fn standard_suite() -> Vec<Check> {
    let (p3, q3) = (presets::fig3_system(), presets::fig3_pump());
    let mut out = vec![
        bath_asymptote(&p3, &q3),
        bath_printed_transient(&p3, &q3),
        ode_vs_closed_form(&p3, &q3),
        table_closure(),
        maxima_stationarity(100, SEED),
        qhe_crossover(),
        spectro_crossover(),
        intensity_scaling(),
        verbatim_divergence(&p3, &q3),
    ];
    out.extend(property_suite());
    out
}

