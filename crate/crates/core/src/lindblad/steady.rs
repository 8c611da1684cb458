use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{molecular_equation, DensityMatrix, EomOptions, MasterEquation};
use crate::error::{Error, Result};
use crate::params::{PumpSpec, SystemParams};

#[derive(Debug, Clone)]
pub struct SteadyState {
    pub rho: DensityMatrix,
    /// max |(Lρ)_k| of the returned state.
    pub residual: f64,
}

/// Relative singular-value threshold below which a direction counts as null.
const NULL_TOL: f64 = 1e-11;

/// Null vector of the vectorized generator, normalized to unit trace.
pub fn steady_state_of(eq: &MasterEquation) -> Result<SteadyState> {
    let n = eq.dim();
    let l = eq.liouvillian();
    let svd = l.clone().svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested right vectors");
    let sv = &svd.singular_values;
    let smax = sv.max();
    if smax == 0.0 {
        return Err(Error::NonUniqueSteadyState { nullity: n * n });
    }
    let null: Vec<usize> = (0..sv.len()).filter(|&k| sv[k] <= NULL_TOL * smax).collect();
    let k = match null.as_slice() {
        [k] => *k,
        [] => {
            // numerically full rank: take the smallest direction anyway
            (0..sv.len())
                .min_by(|&a, &b| sv[a].total_cmp(&sv[b]))
                .expect("nonempty")
        }
        many => return Err(Error::NonUniqueSteadyState { nullity: many.len() }),
    };
    let x: DVector<Complex64> = v_t.row(k).adjoint();
    let mut m = DMatrix::from_column_slice(n, n, x.as_slice());
    let tr = m.trace();
    if tr.norm() < 1e-300 {
        return Err(Error::Singular("steady-state null vector is traceless".into()));
    }
    m /= tr;
    let mut rho = DensityMatrix::from_matrix(m);
    rho.hermitize();
    let lv = &l * DVector::from_column_slice(rho.matrix().as_slice());
    let residual = lv.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(SteadyState { rho, residual })
}

/// Steady state of the six-level molecule.
pub fn steady_state(
    params: &SystemParams,
    pump: &PumpSpec,
    opts: &EomOptions,
) -> Result<SteadyState> {
    steady_state_of(&molecular_equation(params, pump, opts))
}
