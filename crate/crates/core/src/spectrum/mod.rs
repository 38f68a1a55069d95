//! Instantaneous spectrum of the annealing Hamiltonian
//! `H(s) = -A(s) Σ σx_i + B(s) H_P`, where `H_P` is diagonal with the Ising
//! energies of the spin configurations (`s_i = ±1/2`, offset included).
//!
//! Basis state `k` has bit `i` equal to bit `i` of `k`, spin `x_i - 1/2`.
//! Everything is dense and real symmetric, so sizes are capped.

mod hamiltonian;
mod scaling;
mod schedule;

pub use hamiltonian::{
    adiabatic_bound, build_annealing_hamiltonian, gap_scan, problem_diagonal, AdiabaticBound, GapScan,
    ADIABATIC_MAX_SPINS, DEGENERACY_TOLERANCE, SPECTRUM_MAX_SPINS,
};
pub use scaling::{fit_power_law, gap_scaling_study, kp_gap_family, GapScaling, PowerLawFit};
pub use schedule::Schedule;

/// Default number of points on the `s` grid.
pub const DEFAULT_GRID_POINTS: usize = 201;
