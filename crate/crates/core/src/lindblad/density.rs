use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn from_matrix(m: DMatrix<Complex64>) -> Self {
        assert!(m.is_square(), "density matrix must be square");
        DensityMatrix { m }
    }

    pub fn zeros(dim: usize) -> Self {
        DensityMatrix {
            m: DMatrix::zeros(dim, dim),
        }
    }

    /// |i⟩⟨i|.
    pub fn pure(dim: usize, i: usize) -> Self {
        let mut rho = Self::zeros(dim);
        rho.m[(i, i)] = Complex64::new(1.0, 0.0);
        rho
    }

    /// Diagonal state with the given populations.
    pub fn diagonal(populations: &[f64]) -> Self {
        let n = populations.len();
        let mut rho = Self::zeros(n);
        for (i, p) in populations.iter().enumerate() {
            rho.m[(i, i)] = Complex64::new(*p, 0.0);
        }
        rho
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn population(&self, i: usize) -> f64 {
        self.m[(i, i)].re
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.population(i)).collect()
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    /// Replaces ρ by (ρ + ρ†)/2.
    pub fn hermitize(&mut self) {
        let adj = self.m.adjoint();
        self.m = (&self.m + adj) * Complex64::new(0.5, 0.0);
    }

    /// Largest |ρ_ij − conj(ρ_ji)|.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.m[(i, j)] - self.m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
