//! Master-equation oracle: density-matrix dynamics on the six-level molecule,
//! steady states, and population Green functions of the Pauli rate equations.

mod density;
mod generator;
mod integrate;
mod model;
mod steady;
mod transport;

pub use density::DensityMatrix;
pub use generator::{Coupling, Jump, MasterEquation, PopulationTerm};
pub use integrate::{integrate, integrate_at, IntegratorOptions, Trajectory};
pub use model::{
    eom_rhs, maser_equation, molecular_equation, DissipatorMode, EomOptions, Level, MaserLevel,
};
pub use steady::{steady_state, steady_state_of, SteadyState};
pub use transport::{population_green_function, GreenPair, TransportMatrix};
