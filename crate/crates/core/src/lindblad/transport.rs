use nalgebra::DMatrix;

use super::{Level, MasterEquation};
use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Population transport matrix κ of the Pauli equation ρ̇ = −κρ.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportMatrix {
    kappa: DMatrix<f64>,
}

impl TransportMatrix {
    /// Checks the structural sign and conservation rules.
    pub fn new(kappa: DMatrix<f64>) -> Result<Self> {
        let t = TransportMatrix { kappa };
        if !t.kappa.is_square() {
            return Err(Error::invalid("kappa", "must be square"));
        }
        let scale = t.kappa.amax().max(f64::MIN_POSITIVE);
        if t.max_column_sum() > 1e-12 * scale {
            return Err(Error::invalid("kappa", "columns must sum to zero"));
        }
        let n = t.kappa.nrows();
        for i in 0..n {
            for j in 0..n {
                let k = t.kappa[(i, j)];
                if (i == j && k < 0.0) || (i != j && k > 0.0) {
                    return Err(Error::invalid(
                        "kappa",
                        format!("sign rule violated at ({i}, {j})"),
                    ));
                }
            }
        }
        Ok(t)
    }

    /// Population part of a master equation's jump operators.
    pub fn from_equation(eq: &MasterEquation) -> Self {
        let n = eq.dim();
        let mut kappa = DMatrix::<f64>::zeros(n, n);
        for j in &eq.jumps {
            kappa[(j.from, j.from)] += j.rate;
            kappa[(j.to, j.from)] -= j.rate;
        }
        TransportMatrix { kappa }
    }

    /// The three relaxation pairs of the molecule over {g, 0, e, e', 1, 2}.
    pub fn from_params(params: &SystemParams) -> Self {
        use Level::*;
        let mut eq = MasterEquation::new(Level::COUNT);
        eq.add_thermal_channel(One.idx(), Two.idx(), params.gamma_2, params.n_2);
        eq.add_thermal_channel(G.idx(), Zero.idx(), params.gamma_c, params.n_c);
        eq.add_thermal_channel(E.idx(), EPrime.idx(), params.gamma_e, params.n_e);
        Self::from_equation(&eq)
    }

    /// 2×2 matrix over (upper, lower) for one thermal pair.
    pub fn two_level(gamma: f64, n: f64) -> Self {
        let mut eq = MasterEquation::new(2);
        eq.add_thermal_channel(1, 0, gamma, n);
        Self::from_equation(&eq)
    }

    pub fn kappa(&self) -> &DMatrix<f64> {
        &self.kappa
    }

    pub fn max_column_sum(&self) -> f64 {
        self.kappa
            .column_iter()
            .map(|c| c.sum().abs())
            .fold(0.0, f64::max)
    }

    /// Propagator G(t) = exp(−κt) assembled from the spectral projectors of κ,
    /// G_jj,ii(t) = Σ_n ξ^R_jn D⁻¹_nn e^{−λ_n t} ξ^L_ni. Repeated eigenvalues
    /// are handled as blocks.
    pub fn green(&self, t: f64) -> Result<DMatrix<f64>> {
        let spectrum = self.spectrum()?;
        let n = self.kappa.nrows();
        let mut g = DMatrix::<f64>::zeros(n, n);
        for (lambda, p) in &spectrum {
            g += p * (-lambda * t).exp();
        }
        Ok(g)
    }

    /// Eigenvalue groups with their projectors.
    pub fn spectrum(&self) -> Result<Vec<(f64, DMatrix<f64>)>> {
        let n = self.kappa.nrows();
        let scale = self.kappa.amax().max(f64::MIN_POSITIVE);
        let eig = self
            .kappa
            .clone()
            .schur()
            .eigenvalues()
            .ok_or_else(|| Error::Singular("transport matrix has complex eigenvalues".into()))?;
        let mut vals: Vec<f64> = eig.iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        let tol = 1e-9 * scale;
        let mut groups: Vec<(f64, usize)> = Vec::new();
        for v in vals {
            match groups.last_mut() {
                Some((mean, count)) if (v - *mean).abs() <= tol => {
                    *mean = (*mean * *count as f64 + v) / (*count as f64 + 1.0);
                    *count += 1;
                }
                _ => groups.push((v, 1)),
            }
        }
        let mut out = Vec::with_capacity(groups.len());
        let mut total = DMatrix::<f64>::zeros(n, n);
        for (lambda, m) in groups {
            let shifted = &self.kappa - DMatrix::<f64>::identity(n, n) * lambda;
            let svd = shifted.svd(true, true);
            let u = svd.u.as_ref().expect("left vectors");
            let v_t = svd.v_t.as_ref().expect("right vectors");
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
            let idx = &order[..m];
            let right = DMatrix::from_fn(n, m, |i, k| v_t[(idx[k], i)]);
            let left = DMatrix::from_fn(n, m, |i, k| u[(i, idx[k])]);
            let d = left.transpose() * &right;
            let d_inv = d
                .try_inverse()
                .ok_or_else(|| Error::Singular("transport matrix is defective".into()))?;
            let p = &right * d_inv * left.transpose();
            total += &p;
            out.push((lambda, p));
        }
        let completeness = (total - DMatrix::<f64>::identity(n, n)).amax();
        if completeness > 1e-8 {
            return Err(Error::Singular(format!(
                "spectral projectors incomplete (error {completeness:.2e})"
            )));
        }
        Ok(out)
    }
}

/// Target/source pairs of the closed-form population Green functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenPair {
    /// G_00,gg: start in g, end in 0.
    ZeroFromGround,
    /// G_ee,e'e': start in e', end in e.
    EFromEPrime,
    /// G_e'e',ee: start in e, end in e'.
    EPrimeFromE,
    /// G_11,22: start in 2, end in 1.
    OneFromTwo,
}

impl GreenPair {
    pub const ALL: [GreenPair; 4] = [
        GreenPair::ZeroFromGround,
        GreenPair::EFromEPrime,
        GreenPair::EPrimeFromE,
        GreenPair::OneFromTwo,
    ];

    /// (target, source) in the six-level basis.
    pub fn indices(self) -> (usize, usize) {
        use Level::*;
        match self {
            GreenPair::ZeroFromGround => (Zero.idx(), G.idx()),
            GreenPair::EFromEPrime => (E.idx(), EPrime.idx()),
            GreenPair::EPrimeFromE => (EPrime.idx(), E.idx()),
            GreenPair::OneFromTwo => (One.idx(), Two.idx()),
        }
    }

    /// (Γ, n) of the channel the pair belongs to.
    pub fn channel(self, params: &SystemParams) -> (f64, f64) {
        match self {
            GreenPair::ZeroFromGround => (params.gamma_c, params.n_c),
            GreenPair::EFromEPrime | GreenPair::EPrimeFromE => (params.gamma_e, params.n_e),
            GreenPair::OneFromTwo => (params.gamma_2, params.n_2),
        }
    }

    /// True when the transfer runs downhill (decay at Γ(n+1)).
    fn downhill(self) -> bool {
        matches!(self, GreenPair::EFromEPrime | GreenPair::OneFromTwo)
    }
}

/// Closed-form transfer probability, e.g.
/// G_11,22(t) = (1+n₂)(1 − e^{−t(1+2n₂)Γ₂})/(1+2n₂).
pub fn population_green_function(pair: GreenPair, t: f64, params: &SystemParams) -> f64 {
    let (gamma, n) = pair.channel(params);
    let weight = if pair.downhill() { n + 1.0 } else { n };
    weight * (-(-t * (1.0 + 2.0 * n) * gamma).exp_m1()) / (1.0 + 2.0 * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn closed_form_limits() {
        let p = presets::fig3_system();
        assert_eq!(population_green_function(GreenPair::OneFromTwo, 0.0, &p), 0.0);
        let inf = population_green_function(GreenPair::OneFromTwo, f64::INFINITY, &p);
        assert!((inf - 101.0 / 201.0).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_eigen_path() {
        let (gamma, n) = (0.7, 3.0);
        let tm = TransportMatrix::two_level(gamma, n);
        let mut p = presets::fig3_system();
        p.gamma_2 = gamma;
        p.n_2 = n;
        for k in 0..50 {
            let t = k as f64 * 10.0 / (gamma * 49.0);
            let g = tm.green(t).unwrap();
            let closed = population_green_function(GreenPair::OneFromTwo, t, &p);
            // index 1 = lower (1), 0 = upper (2)
            assert!((g[(1, 0)] - closed).abs() < 1e-10);
        }
    }

    #[test]
    fn sign_rules_checked() {
        let bad = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, -1.0, -1.0]);
        assert!(TransportMatrix::new(bad).is_err());
        let ok = TransportMatrix::two_level(1.0, 0.5).kappa().clone();
        assert!(TransportMatrix::new(ok).is_ok());
    }
}
