//! Problem instances: generic binary linear problems, knapsack and TSP.

mod blop;
mod file;
mod knapsack;
mod tsp;

pub use blop::{BitSolution, BlopInstance, Sense};
pub use file::InstanceFile;
pub use knapsack::{kp_toy, kp_toy_optimum, KpInstance};
pub use tsp::{tsp_toy, validate_tour, Tour, TourEncoding, TspInstance};
