use std::io::{self, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{DensityMatrix, Level, MasterEquation};
use crate::error::{Error, Result};
use crate::output::fmt_float;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    pub atol: f64,
    pub rtol: f64,
    /// Smallest step (relative to the initial one) before giving up.
    pub min_step_ratio: f64,
    pub max_steps: usize,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions {
            atol: 1e-14,
            rtol: 1e-10,
            min_step_ratio: 1e-12,
            max_steps: 5_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    /// max |tr ρ − 1| seen at any accepted step.
    pub max_trace_drift: f64,
    pub steps: usize,
}

impl Trajectory {
    pub fn population(&self, level: usize) -> Vec<f64> {
        self.states.iter().map(|r| r.population(level)).collect()
    }

    /// Six-level export, one row per sample.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        use Level::*;
        writeln!(
            w,
            "t,rho_gg,rho_00,rho_11,rho_22,re_rho_01,im_rho_01,rho_ee,rho_epep,re_rho_2g,im_rho_2g,trace"
        )?;
        for (t, r) in self.times.iter().zip(&self.states) {
            let c01 = r.get(Zero.idx(), One.idx());
            let c2g = r.get(Two.idx(), G.idx());
            let row = [
                *t,
                r.population(G.idx()),
                r.population(Zero.idx()),
                r.population(One.idx()),
                r.population(Two.idx()),
                c01.re,
                c01.im,
                r.population(E.idx()),
                r.population(EPrime.idx()),
                c2g.re,
                c2g.im,
                r.trace().re,
            ];
            let line: Vec<String> = row.iter().map(|x| fmt_float(*x)).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }
}

fn rk4(
    eq: &MasterEquation,
    h: &DMatrix<Complex64>,
    rho: &DMatrix<Complex64>,
    dt: f64,
) -> DMatrix<Complex64> {
    let half = Complex64::new(dt / 2.0, 0.0);
    let full = Complex64::new(dt, 0.0);
    let k1 = eq.apply(h, rho);
    let k2 = eq.apply(h, &(rho + &k1 * half));
    let k3 = eq.apply(h, &(rho + &k2 * half));
    let k4 = eq.apply(h, &(rho + &k3 * full));
    rho + (k1 + (k2 + k3) * Complex64::new(2.0, 0.0) + k4) * Complex64::new(dt / 6.0, 0.0)
}

fn scaled_error(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, opts: &IntegratorOptions) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm() / (opts.atol + opts.rtol * y.norm()))
        .fold(0.0, f64::max)
}

/// Integrates from t = 0 and records the state at each requested time
/// (ascending, nonnegative). `dt` is the initial step.
///
/// Each step compares one RK4 step against two half steps; the half-step
/// result is kept when the difference is within tolerance, otherwise the
/// step is halved.
pub fn integrate_at(
    eq: &MasterEquation,
    rho0: &DensityMatrix,
    times: &[f64],
    dt: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory> {
    if !(dt > 0.0) {
        return Err(Error::Integration {
            t: 0.0,
            dt,
            reason: "initial step must be positive".into(),
        });
    }
    if times.windows(2).any(|w| w[1] < w[0]) || times.first().is_some_and(|t| *t < 0.0) {
        return Err(Error::Integration {
            t: 0.0,
            dt,
            reason: "sample times must be ascending and nonnegative".into(),
        });
    }
    let h = eq.hamiltonian();
    let mut rho = rho0.matrix().clone();
    let mut t = 0.0_f64;
    let mut step = dt;
    let min_step = dt * opts.min_step_ratio;
    let mut steps = 0usize;
    let mut drift = (rho.trace().re - 1.0).abs();
    let mut out = Trajectory {
        times: Vec::with_capacity(times.len()),
        states: Vec::with_capacity(times.len()),
        max_trace_drift: 0.0,
        steps: 0,
    };
    for &target in times {
        while target - t > 1e-15 * target.abs().max(1.0) {
            let nominal = step;
            let mut h_try = nominal.min(target - t);
            let mut clipped = h_try < nominal;
            loop {
                let full = rk4(eq, &h, &rho, h_try);
                let mid = rk4(eq, &h, &rho, h_try / 2.0);
                let two = rk4(eq, &h, &mid, h_try / 2.0);
                let err = scaled_error(&full, &two, opts);
                if err <= 1.0 {
                    rho = two;
                    t += h_try;
                    let hermit = rho.adjoint();
                    rho = (&rho + hermit) * Complex64::new(0.5, 0.0);
                    if eq.is_trace_preserving() {
                        drift = drift.max((rho.trace().re - 1.0).abs());
                    }
                    let factor = if err == 0.0 {
                        2.0
                    } else {
                        (0.9 * err.powf(-0.2)).clamp(0.2, 2.0)
                    };
                    // a step clipped to land on a sample says nothing about the nominal size
                    step = if clipped && factor >= 1.0 {
                        nominal
                    } else {
                        h_try * factor
                    };
                    break;
                }
                h_try /= 2.0;
                clipped = false;
                if h_try < min_step {
                    return Err(Error::Integration {
                        t,
                        dt: h_try,
                        reason: format!("step size underflow, scaled error {err:.3e}"),
                    });
                }
            }
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::Integration {
                    t,
                    dt: step,
                    reason: "step budget exhausted".into(),
                });
            }
        }
        out.times.push(target);
        out.states.push(DensityMatrix::from_matrix(rho.clone()));
    }
    out.max_trace_drift = drift;
    out.steps = steps;
    Ok(out)
}

/// Integrates to `t_end` recording every `dt` (plus t = 0 and `t_end`).
pub fn integrate(
    eq: &MasterEquation,
    rho0: &DensityMatrix,
    t_end: f64,
    dt: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory> {
    if !(t_end > 0.0) || !(dt > 0.0) {
        return Err(Error::Integration {
            t: 0.0,
            dt,
            reason: "t_end and dt must be positive".into(),
        });
    }
    let n = (t_end / dt).floor() as usize;
    let mut times: Vec<f64> = (0..=n).map(|k| k as f64 * dt).collect();
    if t_end - times[n] > 1e-12 * t_end {
        times.push(t_end);
    }
    integrate_at(eq, rho0, &times, dt, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_generator_is_identity() {
        let eq = MasterEquation::new(6);
        let rho0 = DensityMatrix::diagonal(&[0.4, 0.1, 0.1, 0.1, 0.2, 0.1]);
        let tr = integrate(&eq, &rho0, 10.0, 1.0, &IntegratorOptions::default()).unwrap();
        for s in &tr.states {
            assert_eq!(s, &rho0);
        }
    }

    #[test]
    fn two_level_relaxes_to_detailed_balance() {
        let mut eq = MasterEquation::new(2);
        let (gamma, n) = (0.3, 2.0);
        eq.add_thermal_channel(0, 1, gamma, n);
        let rho0 = DensityMatrix::diagonal(&[0.25, 0.75]);
        let k = gamma * (2.0 * n + 1.0);
        let times = [0.1 / k, 1.0 / k, 40.0 / k];
        let opts = IntegratorOptions {
            rtol: 1e-12,
            ..IntegratorOptions::default()
        };
        let tr = integrate_at(&eq, &rho0, &times, 0.01 / k, &opts).unwrap();
        for (t, s) in times.iter().zip(&tr.states) {
            let inf = n / (2.0 * n + 1.0);
            let exact = inf + (0.75 - inf) * (-k * t).exp();
            assert!((s.population(1) - exact).abs() < 1e-11, "{t} {} {exact}", s.population(1));
        }
        assert!(tr.max_trace_drift < 1e-13);
    }

    #[test]
    fn bad_step_rejected() {
        let eq = MasterEquation::new(2);
        let rho0 = DensityMatrix::pure(2, 0);
        assert!(integrate(&eq, &rho0, 1.0, 0.0, &IntegratorOptions::default()).is_err());
        assert!(integrate(&eq, &rho0, -1.0, 0.1, &IntegratorOptions::default()).is_err());
    }

    #[test]
    fn underflow_reported() {
        let mut eq = MasterEquation::new(2);
        eq.add_coupling(0, 1, 1e6);
        let opts = IntegratorOptions {
            min_step_ratio: 1e-3,
            ..IntegratorOptions::default()
        };
        let err = integrate(&eq, &DensityMatrix::pure(2, 0), 1.0, 1.0, &opts).unwrap_err();
        assert!(matches!(err, Error::Integration { .. }));
    }
}
