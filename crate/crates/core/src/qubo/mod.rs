//! Quadratic unconstrained binary models, their Ising form, and the
//! reductions from constrained problems.

mod ising;
mod model;
mod reduce;

pub use ising::{bits_to_spins, qubo_to_ising, IsingModel};
pub use model::{ModelFile, Penalty, QuboBuilder, QuboModel};
pub use reduce::{blop_to_qubo, kp_qubo, slack_bits, tsp_qubo, Lambda};
