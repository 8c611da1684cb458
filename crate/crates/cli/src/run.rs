//! Scenario drivers. Each returns the artifacts it wrote and the resolved
//! inputs for the manifest.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use rayon::ThreadPool;
use serde_json::{json, Value};
use tpqhe_core::bath::{
    coherent_population, default_time_grid, excitation, fit_bath, population_mismatch,
    thermal_population, EffectiveBath, FitMode,
};
use tpqhe_core::engine::{classify, efficiency_at_max_power, maximize_power, bound_bandwidth, Bound};
use tpqhe_core::oracle::{parameter_suite, standard_suite, Check, Status};
use tpqhe_core::params::{reduce, DimensionlessSet, PumpKind, PumpSpec, SystemParams};
use tpqhe_core::spdc::jsa_row;
use tpqhe_core::spectro::spectro_max_power;
use tpqhe_core::units::{internal_time_to_ps, BOLTZMANN_EV_PER_K};

use crate::config::{Format, RangeSpec, RunConfig, Scenario, Spacing};
use crate::error::CliError;
use crate::table::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum KindArg {
    Classical,
    Entangled,
}

impl KindArg {
    fn kind(self) -> PumpKind {
        match self {
            KindArg::Classical => PumpKind::ClassicalTwoPhoton,
            KindArg::Entangled => PumpKind::EntangledTwoPhoton,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Span {
    pub min: f64,
    pub max: f64,
}

fn parse_span(s: &str) -> Result<Span, String> {
    let (a, b) = s.split_once(':').ok_or("expected MIN:MAX")?;
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x}: {e}"));
    Ok(Span { min: num(a)?, max: num(b)? })
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or("expected NxM")?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x}: {e}"));
    Ok((num(a)?, num(b)?))
}

/// Overrides for the τ × c_p sweeps of `engine-sweep` and `spectro`.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct SweepArgs {
    /// Restrict to one pump kind (default: both).
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    /// τ range as MIN:MAX.
    #[arg(long, value_parser = parse_span)]
    pub tau_range: Option<Span>,
    /// c_p range as MIN:MAX.
    #[arg(long, value_parser = parse_span)]
    pub cp_range: Option<Span>,
    /// Points along τ and c_p as NxM.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<(usize, usize)>,
}

pub struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub out: &'a Path,
    pub format: Format,
    pub pool: &'a ThreadPool,
    pub sweep: &'a SweepArgs,
}

pub struct Outcome {
    pub artifacts: Vec<String>,
    pub resolved: Value,
    /// Lines for standard output.
    pub lines: Vec<String>,
    /// Raised after the manifest is written.
    pub failure: Option<CliError>,
}

impl Outcome {
    fn new(resolved: Value) -> Self {
        Outcome {
            artifacts: Vec::new(),
            resolved,
            lines: Vec::new(),
            failure: None,
        }
    }
}

pub fn run(scenario: Scenario, ctx: &Ctx) -> Result<Outcome, CliError> {
    match scenario {
        Scenario::Populations => populations(ctx),
        Scenario::BathFit => bath_fit(ctx),
        Scenario::EngineSweep => engine_sweep(ctx),
        Scenario::Bounds => bounds(ctx),
        Scenario::Spectro => spectro(ctx),
        Scenario::Spdc => spdc(ctx),
        Scenario::OracleCheck => oracle_check(ctx),
    }
}

fn par_map<T: Sync, R: Send>(pool: &ThreadPool, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    // ordered collect: output order never depends on scheduling
    pool.install(|| items.par_iter().map(f).collect())
}

fn write_json(dir: &Path, name: &str, v: &Value) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    fs::write(dir.join(name), s)?;
    Ok(name.to_string())
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn all_failed(ok: usize, total: usize, what: &str) -> Result<(), CliError> {
    if total > 0 && ok == 0 {
        return Err(CliError::Numeric(format!("{what}: every row failed")));
    }
    Ok(())
}

fn bath_json(bath: &EffectiveBath) -> Value {
    json!({
        "n_h": bath.n_h,
        "gamma_h": bath.gamma_h,
        "T_h": bath.t_h,
        "T_h_K": bath.t_h / BOLTZMANN_EV_PER_K,
        "relaxation_rate": bath.relaxation_rate(),
    })
}

fn times(ctx: &Ctx, bath: &EffectiveBath) -> Result<Vec<f64>, CliError> {
    match &ctx.cfg.times {
        Some(t) => t.values(),
        None => Ok(default_time_grid(bath)),
    }
}

fn populations(ctx: &Ctx) -> Result<Outcome, CliError> {
    let (p, q) = (ctx.cfg.system()?, ctx.cfg.pump()?);
    let mode = ctx.cfg.options.fit_mode;
    let bath = fit_bath(&p, &q, mode)?;
    let t = times(ctx, &bath)?;
    let m = population_mismatch(&p, &q, mode, &t)?;

    let coherent = par_map(ctx.pool, &t, |&t| coherent_population(t, &p, &q));
    let mut tc = Table::new(&["t", "t_ps", "rho_gg", "rho_11"]);
    let mut th = Table::new(&["t", "t_ps", "rho_gg", "rho_11"]);
    for (&ti, c) in t.iter().zip(coherent) {
        let (c1, cg) = c?;
        let (h1, hg) = thermal_population(ti, &bath);
        tc.push(vec![ti.into(), internal_time_to_ps(ti).into(), cg.into(), c1.into()]);
        th.push(vec![ti.into(), internal_time_to_ps(ti).into(), hg.into(), h1.into()]);
    }

    let mut out = Outcome::new(json!({
        "system": to_value(&p),
        "pump": to_value(&q),
        "fit_mode": to_value(&mode),
        "times": { "count": t.len(), "min": t[0], "max": t[t.len() - 1] },
    }));
    out.artifacts.push(tc.write(ctx.out, "populations_coherent", ctx.format)?);
    out.artifacts.push(th.write(ctx.out, "populations_thermal", ctx.format)?);
    let mut summary = bath_json(&bath);
    summary["fit_mode"] = to_value(&mode);
    summary["max_mismatch"] = json!(m.max_abs_diff);
    summary["points"] = json!(t.len());
    out.artifacts.push(write_json(ctx.out, "populations_mismatch.json", &summary)?);
    out.lines.push(format!("max_mismatch={:.6e}", m.max_abs_diff));
    Ok(out)
}

fn bath_fit(ctx: &Ctx) -> Result<Outcome, CliError> {
    let (p, q) = (ctx.cfg.system()?, ctx.cfg.pump()?);
    let mode = ctx.cfg.options.fit_mode;
    let m = population_mismatch(&p, &q, mode, &times(ctx, &fit_bath(&p, &q, mode)?)?)?;
    let bath = m.bath;

    let mut summary = bath_json(&bath);
    summary["fit_mode"] = to_value(&mode);
    summary["max_mismatch"] = json!(m.max_abs_diff);
    summary["excitation"] = json!(excitation(&p, &q));
    let other = match mode {
        FitMode::Consistency => FitMode::Printed,
        FitMode::Printed => FitMode::Consistency,
    };
    summary["alternate"] = match fit_bath(&p, &q, other) {
        Ok(b) => {
            let mut v = bath_json(&b);
            v["fit_mode"] = to_value(&other);
            v
        }
        Err(e) => json!({ "fit_mode": to_value(&other), "error": e.to_string() }),
    };

    let coherent = par_map(ctx.pool, &m.times, |&t| coherent_population(t, &p, &q));
    let mut curves = Table::new(&[
        "t",
        "t_ps",
        "coherent_gg",
        "coherent_11",
        "thermal_gg",
        "thermal_11",
    ]);
    for (&t, c) in m.times.iter().zip(coherent) {
        let (c1, cg) = c?;
        let (h1, hg) = thermal_population(t, &bath);
        curves.push(vec![
            t.into(),
            internal_time_to_ps(t).into(),
            cg.into(),
            c1.into(),
            hg.into(),
            h1.into(),
        ]);
    }

    let mut out = Outcome::new(json!({
        "system": to_value(&p),
        "pump": to_value(&q),
        "fit_mode": to_value(&mode),
        "times": { "count": m.times.len(), "min": m.times[0], "max": m.times[m.times.len() - 1] },
    }));
    out.artifacts.push(write_json(ctx.out, "bath_fit.json", &summary)?);
    out.artifacts.push(curves.write(ctx.out, "bath_fit_curves", ctx.format)?);
    out.lines.push(format!(
        "n_h={:.6e} gamma_h={:.6e} T_h={:.6e} max_mismatch={:.6e}",
        bath.n_h, bath.gamma_h, bath.t_h, m.max_abs_diff
    ));
    Ok(out)
}

/// Reduced set from `[reduced]`, else from the physical blocks.
fn base_set(cfg: &RunConfig) -> Result<(DimensionlessSet, Option<(SystemParams, PumpSpec)>), CliError> {
    let physical = cfg.physical()?;
    let d = match (&cfg.reduced, &physical) {
        (Some(d), _) => *d,
        (None, Some((p, q))) => reduce(p, q)?,
        (None, None) => {
            return Err(CliError::Config(
                "needs a [reduced] block or [system] and [pump]".into(),
            ))
        }
    };
    d.with_c21(0.0).validate()?;
    Ok((d, physical))
}

fn single(parameter: &str, value: f64) -> RangeSpec {
    RangeSpec {
        parameter: parameter.into(),
        min: value,
        max: value,
        count: 1,
        spacing: Spacing::Linear,
    }
}

/// τ and c_p axes from the config sweep, then the command-line overrides.
fn tau_cp_axes(ctx: &Ctx, d: &DimensionlessSet) -> Result<[RangeSpec; 2], CliError> {
    let mut axes = [single("tau", d.tau), single("c_p", d.c_p)];
    let mut seen = [false; 2];
    for r in &ctx.cfg.sweep {
        let i = match r.parameter.as_str() {
            "tau" => 0,
            "c_p" => 1,
            other => {
                return Err(CliError::Config(format!(
                    "sweep `{other}`: only tau and c_p can be swept here"
                )))
            }
        };
        if seen[i] {
            return Err(CliError::Config(format!("sweep `{}` given twice", r.parameter)));
        }
        seen[i] = true;
        axes[i] = r.clone();
    }
    for (axis, span) in axes.iter_mut().zip([ctx.sweep.tau_range, ctx.sweep.cp_range]) {
        if let Some(s) = span {
            axis.min = s.min;
            axis.max = s.max;
        }
    }
    if let Some((n, m)) = ctx.sweep.grid {
        axes[0].count = n;
        axes[1].count = m;
    }
    for a in &axes {
        a.values()?;
    }
    Ok(axes)
}

fn grid(axes: &[RangeSpec; 2]) -> Result<Vec<(f64, f64)>, CliError> {
    let (ts, cs) = (axes[0].values()?, axes[1].values()?);
    Ok(ts.iter().flat_map(|&t| cs.iter().map(move |&c| (t, c))).collect())
}

fn kinds(sweep: &SweepArgs) -> Vec<PumpKind> {
    match sweep.kind {
        Some(k) => vec![k.kind()],
        None => vec![PumpKind::ClassicalTwoPhoton, PumpKind::EntangledTwoPhoton],
    }
}

fn status(e: impl std::fmt::Display) -> Cell {
    Cell::S(format!("error: {e}"))
}

fn engine_sweep(ctx: &Ctx) -> Result<Outcome, CliError> {
    let (base, physical) = base_set(ctx.cfg)?;
    let axes = tau_cp_axes(ctx, &base)?;
    let points = grid(&axes)?;
    let (m, form) = (ctx.cfg.m(), ctx.cfg.options.efficiency_form);

    let mut out = Outcome::new(json!({
        "reduced": to_value(&base),
        "physical": physical.map(|(p, q)| json!({ "system": to_value(&p), "pump": to_value(&q) })),
        "axes": to_value(&axes),
        "kinds": kinds(ctx.sweep).iter().map(|k| k.label()).collect::<Vec<_>>(),
        "m": m,
        "efficiency_form": to_value(&form),
    }));
    for kind in kinds(ctx.sweep) {
        let rows = par_map(ctx.pool, &points, |&(tau, c_p)| {
            let d = base.with_tau(tau).with_c_p(c_p);
            let eta = efficiency_at_max_power(kind, &d, form);
            let region = classify(eta, d.eta_carnot()).label();
            let head: Vec<Cell> = vec![
                tau.into(),
                c_p.into(),
                eta.into(),
                region.into(),
                d.sigma_p_prime.into(),
            ];
            match maximize_power(kind, &d, m) {
                Ok(r) => {
                    let tail: Vec<Cell> = vec![
                        r.p_max.into(),
                        r.c21_star.into(),
                        r.slope.into(),
                        r.closed_form.into(),
                        r.rel_diff.into(),
                        r.flagged.into(),
                        "ok".into(),
                    ];
                    (true, [head, tail].concat())
                }
                Err(e) => {
                    let nan = Cell::F(f64::NAN);
                    let tail = vec![
                        nan.clone(),
                        nan.clone(),
                        nan.clone(),
                        nan.clone(),
                        nan,
                        false.into(),
                        status(e),
                    ];
                    (false, [head, tail].concat())
                }
            }
        });
        let ok = rows.iter().filter(|r| r.0).count();
        all_failed(ok, rows.len(), "engine-sweep")?;
        let mut t = Table::new(&[
            "tau",
            "c_p",
            "eta_star",
            "region",
            "sigma_p_prime",
            "P_max",
            "c21_star",
            "slope",
            "closed_form",
            "rel_diff",
            "flagged",
            "status",
        ]);
        for (_, r) in rows {
            t.push(r);
        }
        let stem = format!("engine_sweep_{}", kind.label());
        out.artifacts.push(t.write(ctx.out, &stem, ctx.format)?);
        out.lines.push(format!("{}: {ok}/{} points maximized", kind.label(), points.len()));
    }
    Ok(out)
}

fn bounds(ctx: &Ctx) -> Result<Outcome, CliError> {
    let (base, _) = base_set(ctx.cfg)?;
    let taus = match ctx.cfg.sweep.as_slice() {
        [] => vec![base.tau],
        [r] if r.parameter == "tau" => r.values()?,
        _ => return Err(CliError::Config("bounds: only a single tau sweep is allowed".into())),
    };
    let mut out = Outcome::new(json!({
        "reduced": to_value(&base),
        "taus": taus,
    }));
    for kind in kinds(ctx.sweep) {
        let mut t = Table::new(&["tau", "bound", "c_p", "sigma_p_prime", "eta", "target", "status"]);
        let mut ok = 0;
        for &tau in &taus {
            let d = base.with_tau(tau);
            let eta_c = d.eta_carnot();
            for bound in Bound::ALL {
                let c_p = bound.c_p(eta_c);
                let (sigma, eta, st) = match bound_bandwidth(kind, bound, &d) {
                    Ok(s) => {
                        ok += 1;
                        let row = d.with_sigma(s).with_c_p(c_p);
                        let eta = efficiency_at_max_power(kind, &row, tpqhe_core::engine::EfficiencyForm::WeakDissipation);
                        (s, eta, Cell::from("ok"))
                    }
                    Err(e) => (f64::NAN, f64::NAN, status(e)),
                };
                out.lines.push(format!(
                    "{} tau={tau} {:<6} sigma_p_prime={}",
                    kind.label(),
                    bound.label(),
                    tpqhe_core::output::fmt_float(sigma)
                ));
                t.push(vec![
                    tau.into(),
                    bound.label().into(),
                    c_p.into(),
                    sigma.into(),
                    eta.into(),
                    bound.target_efficiency(eta_c).into(),
                    st,
                ]);
            }
        }
        all_failed(ok, t.rows.len(), "bounds")?;
        let stem = format!("bounds_{}", kind.label());
        out.artifacts.push(t.write(ctx.out, &stem, ctx.format)?);
    }
    Ok(out)
}

fn spectro(ctx: &Ctx) -> Result<Outcome, CliError> {
    let (base, physical) = base_set(ctx.cfg)?;
    let sigma_pr = match (&ctx.cfg.options.sigma_pr, &physical) {
        (Some(s), _) => s.energy("options.sigma_pr")?,
        (None, Some((_, q))) => q.sigma_pr,
        (None, None) => {
            return Err(CliError::Config(
                "spectro needs options.sigma_pr or a [pump] block".into(),
            ))
        }
    };
    if !(sigma_pr > 0.0) {
        return Err(CliError::Config("sigma_pr must be positive".into()));
    }
    let axes = tau_cp_axes(ctx, &base)?;
    let points = grid(&axes)?;
    let rows = par_map(ctx.pool, &points, |&(tau, c_p)| {
        let d = base.with_tau(tau).with_c_p(c_p);
        let c = spectro_max_power(PumpKind::ClassicalTwoPhoton, &d, sigma_pr);
        let q = spectro_max_power(PumpKind::EntangledTwoPhoton, &d, sigma_pr);
        let closed = (tau * d.sigma_p_prime).powi(4) * d.theta;
        match (c, q) {
            (Ok(c), Ok(q)) => {
                let ratio = q.p_max / c.p_max;
                let row: Vec<Cell> = vec![
                    tau.into(),
                    c_p.into(),
                    c.p_max.into(),
                    q.p_max.into(),
                    ratio.into(),
                    (ratio > 1.0).into(),
                    closed.into(),
                    (q.printed / c.printed).into(),
                    c.c21_star.into(),
                    q.c21_star.into(),
                    "ok".into(),
                ];
                (true, row)
            }
            (Err(e), _) | (_, Err(e)) => {
                let nan = || Cell::F(f64::NAN);
                let row = vec![
                    tau.into(),
                    c_p.into(),
                    nan(),
                    nan(),
                    nan(),
                    false.into(),
                    closed.into(),
                    nan(),
                    nan(),
                    nan(),
                    status(e),
                ];
                (false, row)
            }
        }
    });
    let ok = rows.iter().filter(|r| r.0).count();
    all_failed(ok, rows.len(), "spectro")?;
    let mut t = Table::new(&[
        "tau",
        "c_p",
        "P_max_C",
        "P_max_Q",
        "ratio",
        "crossover_flag",
        "ratio_closed_form",
        "ratio_printed",
        "c21_star_C",
        "c21_star_Q",
        "status",
    ]);
    for (_, r) in rows {
        t.push(r);
    }
    let mut out = Outcome::new(json!({
        "reduced": to_value(&base),
        "physical": physical.map(|(p, q)| json!({ "system": to_value(&p), "pump": to_value(&q) })),
        "sigma_pr": sigma_pr,
        "axes": to_value(&axes),
    }));
    out.artifacts.push(t.write(ctx.out, "spectro", ctx.format)?);
    out.lines.push(format!("{ok}/{} points", points.len()));
    Ok(out)
}

fn spdc(ctx: &Ctx) -> Result<Outcome, CliError> {
    let block = ctx
        .cfg
        .spdc
        .as_ref()
        .ok_or_else(|| CliError::Config("missing [spdc] block".into()))?;
    let (ja, window) = block.resolve()?;
    let signal = window.signal_axis();
    let idler = window.idler_axis();
    let rows = par_map(ctx.pool, &idler, |&wi| jsa_row(wi, &signal, &ja));
    let mut t = Table::new(&["omega_i", "omega_s", "magnitude2"]);
    for r in rows.into_iter().flatten() {
        t.push(r.iter().map(|&x| Cell::F(x)).collect());
    }
    let mut out = Outcome::new(json!({
        "joint_amplitude": to_value(&ja),
        "window": to_value(&window),
    }));
    out.artifacts.push(t.write(ctx.out, "spdc_jsa", ctx.format)?);
    out.lines.push(format!("{}x{} grid", window.n, window.n));
    Ok(out)
}

fn oracle_check(ctx: &Ctx) -> Result<Outcome, CliError> {
    // validation failures are reported as a failed check, not a config error
    let physical = match (&ctx.cfg.system, &ctx.cfg.pump) {
        (Some(s), Some(_)) => Some((s.resolve_unchecked()?, ctx.cfg.pump()?)),
        (None, None) => None,
        _ => return Err(CliError::Config("[system] and [pump] must be given together".into())),
    };
    let mut checks: Vec<Check> = match &ctx.cfg.options.checks {
        Some(names) if names.is_empty() => Vec::new(),
        Some(names) => {
            let all = standard_suite();
            for n in names {
                if !all.iter().any(|c| &c.name == n) {
                    let known: Vec<&str> = all.iter().map(|c| c.name.as_str()).collect();
                    return Err(CliError::Config(format!(
                        "unknown check `{n}`; known: {}",
                        known.join(", ")
                    )));
                }
            }
            all.into_iter().filter(|c| names.contains(&c.name)).collect()
        }
        None => standard_suite(),
    };
    if let Some((p, q)) = &physical {
        checks.extend(parameter_suite(p, q));
    }

    let mut t = Table::new(&["name", "status", "residual", "threshold", "detail"]);
    let mut out = Outcome::new(json!({
        "physical": physical.map(|(p, q)| json!({ "system": to_value(&p), "pump": to_value(&q) })),
        "checks": checks.iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
    }));
    for c in &checks {
        let tag = match c.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        };
        t.push(vec![
            c.name.clone().into(),
            tag.into(),
            c.residual.into(),
            c.threshold.into(),
            c.detail.clone().into(),
        ]);
        out.lines.push(c.line());
    }
    out.artifacts.push(t.write(ctx.out, "oracle_report", ctx.format)?);
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.as_str())
        .collect();
    if !failed.is_empty() {
        out.failure = Some(CliError::Oracle(format!("failed checks: {}", failed.join(", "))));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_and_grid_parsing() {
        assert_eq!(parse_span("0.1:0.9").unwrap(), Span { min: 0.1, max: 0.9 });
        assert!(parse_span("0.1").is_err());
        assert_eq!(parse_grid("50x40").unwrap(), (50, 40));
        assert!(parse_grid("50").is_err());
    }
}
