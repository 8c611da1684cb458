use nalgebra::DMatrix;
use num_complex::Complex64;

use super::DensityMatrix;

/// Incoherent transfer `from` → `to` with jump operator |to⟩⟨from|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub from: usize,
    pub to: usize,
    pub rate: f64,
}

/// Real coherent coupling `strength`·(|a⟩⟨b| + |b⟩⟨a|).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub a: usize,
    pub b: usize,
    pub strength: f64,
}

/// Extra linear population term dρ_tt/dt += coefficient·ρ_ss, used to
/// reproduce rate lines that do not come from a Lindblad dissipator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationTerm {
    pub target: usize,
    pub source: usize,
    pub coefficient: f64,
}

/// Time-independent generator dρ/dt = −i[H, ρ] + Σ D[L]ρ (+ extra terms).
#[derive(Debug, Clone, PartialEq)]
pub struct MasterEquation {
    pub energies: Vec<f64>,
    pub couplings: Vec<Coupling>,
    pub jumps: Vec<Jump>,
    pub extra: Vec<PopulationTerm>,
}

impl MasterEquation {
    pub fn new(dim: usize) -> Self {
        MasterEquation {
            energies: vec![0.0; dim],
            couplings: Vec::new(),
            jumps: Vec::new(),
            extra: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Adds a thermal channel between `lower` and `upper`: decay at Γ(n+1),
    /// excitation at Γn. Zero-rate jumps are dropped.
    pub fn add_thermal_channel(&mut self, lower: usize, upper: usize, gamma: f64, n: f64) {
        for (from, to, rate) in [(upper, lower, gamma * (n + 1.0)), (lower, upper, gamma * n)] {
            if rate != 0.0 {
                self.jumps.push(Jump { from, to, rate });
            }
        }
    }

    pub fn add_coupling(&mut self, a: usize, b: usize, strength: f64) {
        if strength != 0.0 {
            self.couplings.push(Coupling { a, b, strength });
        }
    }

    pub fn hamiltonian(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut h = DMatrix::<Complex64>::zeros(n, n);
        for (i, e) in self.energies.iter().enumerate() {
            h[(i, i)] = Complex64::new(*e, 0.0);
        }
        for c in &self.couplings {
            h[(c.a, c.b)] += Complex64::new(c.strength, 0.0);
            h[(c.b, c.a)] += Complex64::new(c.strength, 0.0);
        }
        h
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.extra.is_empty()
    }

    /// dρ/dt for a raw matrix.
    pub fn apply(&self, h: &DMatrix<Complex64>, rho: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let mi = Complex64::new(0.0, -1.0);
        let mut out = (h * rho - rho * h) * mi;
        let n = self.dim();
        for j in &self.jumps {
            let a = j.from;
            out[(j.to, j.to)] += rho[(a, a)] * j.rate;
            let half = 0.5 * j.rate;
            for k in 0..n {
                out[(a, k)] -= rho[(a, k)] * half;
                out[(k, a)] -= rho[(k, a)] * half;
            }
        }
        for t in &self.extra {
            out[(t.target, t.target)] += rho[(t.source, t.source)] * t.coefficient;
        }
        out
    }

    pub fn rhs(&self, rho: &DensityMatrix) -> DensityMatrix {
        DensityMatrix::from_matrix(self.apply(&self.hamiltonian(), rho.matrix()))
    }

    /// Vectorized generator acting on column-stacked vec(ρ).
    pub fn liouvillian(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let h = self.hamiltonian();
        let mut l = DMatrix::<Complex64>::zeros(n * n, n * n);
        let mut basis = DMatrix::<Complex64>::zeros(n, n);
        for col in 0..n {
            for row in 0..n {
                basis[(row, col)] = Complex64::new(1.0, 0.0);
                let image = self.apply(&h, &basis);
                basis[(row, col)] = Complex64::new(0.0, 0.0);
                let k = row + col * n;
                for (idx, v) in image.iter().enumerate() {
                    l[(idx, k)] = *v;
                }
            }
        }
        l
    }
}
