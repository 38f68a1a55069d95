use std::io::Write;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::qubo::IsingModel;
use crate::spectrum::Schedule;

/// Largest spin count for spectra and gap scans.
pub const SPECTRUM_MAX_SPINS: usize = 12;
/// Largest spin count for [`adiabatic_bound`], which needs eigenvectors.
pub const ADIABATIC_MAX_SPINS: usize = 10;
/// Eigenvalues closer than this belong to the same level.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

fn check_size(m: &IsingModel, cap: usize) -> Result<()> {
    if m.num_spins() > cap {
        return Err(Error::BudgetRefused(format!(
            "dense spectra are capped at {cap} spins, model has {}",
            m.num_spins()
        )));
    }
    Ok(())
}

fn grid(points: usize) -> Result<Vec<f64>> {
    if points < 3 {
        return invalid(format!("the s grid needs at least 3 points, got {points}"));
    }
    Ok((0..points).map(|k| k as f64 / (points - 1) as f64).collect())
}

/// Ising energy of every basis state.
pub fn problem_diagonal(m: &IsingModel) -> Vec<f64> {
    let n = m.num_spins();
    (0..1usize << n)
        .map(|k| {
            let spins: Vec<f64> = (0..n).map(|i| if (k >> i) & 1 == 1 { 0.5 } else { -0.5 }).collect();
            m.energy(&spins)
        })
        .collect()
}

fn assemble(n: usize, diagonal: &[f64], a: f64, b: f64) -> DMatrix<f64> {
    let dim = diagonal.len();
    let mut h = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        h[(k, k)] = b * diagonal[k];
        for i in 0..n {
            h[(k ^ (1 << i), k)] = -a;
        }
    }
    h
}

/// Dense `H(s)` for `m` under `sched`.
pub fn build_annealing_hamiltonian(m: &IsingModel, sched: &Schedule, s: f64) -> Result<DMatrix<f64>> {
    check_size(m, SPECTRUM_MAX_SPINS)?;
    if !(0.0..=1.0).contains(&s) {
        return invalid(format!("s must lie in [0, 1], got {s}"));
    }
    let (a, b) = sched.at(s);
    Ok(assemble(m.num_spins(), &problem_diagonal(m), a, b))
}

/// Ground energy and distance to the first distinct level (0 if the whole
/// spectrum is one level), from eigenvalues in any order.
fn ground_and_gap(eigenvalues: &DVector<f64>) -> (f64, f64) {
    let e0 = eigenvalues.min();
    let e1 = eigenvalues
        .iter()
        .copied()
        .filter(|&e| e > e0 + DEGENERACY_TOLERANCE)
        .fold(f64::INFINITY, f64::min);
    (e0, if e1.is_finite() { e1 - e0 } else { 0.0 })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapScan {
    pub s_values: Vec<f64>,
    pub gap: Vec<f64>,
    /// Ground energy at each grid point.
    pub ground: Vec<f64>,
    pub min_gap: f64,
    pub argmin_s: f64,
    pub matrix_dim: usize,
}

impl GapScan {
    /// Columns `s, gap`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["s", "gap"])?;
        for (s, g) in self.s_values.iter().zip(&self.gap) {
            out.write_record([s.to_string(), g.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Gap between the ground level and the first distinct level on a uniform
/// grid of `grid_points` values of `s` in `[0, 1]`. The first grid point
/// attaining the minimum is reported.
pub fn gap_scan(m: &IsingModel, sched: &Schedule, grid_points: usize) -> Result<GapScan> {
    check_size(m, SPECTRUM_MAX_SPINS)?;
    let s_values = grid(grid_points)?;
    let diagonal = problem_diagonal(m);
    let mut gap = Vec::with_capacity(grid_points);
    let mut ground = Vec::with_capacity(grid_points);
    for &s in &s_values {
        let (a, b) = sched.at(s);
        let eig = assemble(m.num_spins(), &diagonal, a, b).symmetric_eigenvalues();
        if eig.iter().any(|e| !e.is_finite()) {
            return Err(Error::Numerical(format!("non-finite eigenvalue at s = {s}")));
        }
        let (e0, d) = ground_and_gap(&eig);
        ground.push(e0);
        gap.push(d);
    }
    let (k, &min_gap) = gap
        .iter()
        .enumerate()
        .fold((0, &f64::INFINITY), |acc, (k, g)| if *g < *acc.1 { (k, g) } else { acc });
    Ok(GapScan {
        argmin_s: s_values[k],
        s_values,
        gap,
        ground,
        min_gap,
        matrix_dim: diagonal.len(),
    })
}

/// Result of [`adiabatic_bound`]: the largest ratio and where it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdiabaticBound {
    pub value: f64,
    pub argmax_s: f64,
}

/// Eigenvectors spanning the level starting at sorted position `start`, with
/// the phase of each fixed so its largest-magnitude component is positive.
fn level(eig: &SymmetricEigen<f64, nalgebra::Dyn>, order: &[usize], start: usize) -> (Vec<DVector<f64>>, usize) {
    let e = eig.eigenvalues[order[start]];
    let mut vectors = Vec::new();
    let mut k = start;
    while k < order.len() && eig.eigenvalues[order[k]] <= e + DEGENERACY_TOLERANCE {
        let mut v = eig.eigenvectors.column(order[k]).into_owned();
        let pivot = v.iter().copied().fold(0.0f64, |p, x| if x.abs() > p.abs() { x } else { p });
        if pivot < 0.0 {
            v = -v;
        }
        vectors.push(v);
        k += 1;
    }
    (vectors, k)
}

/// `max_s |<ε0(s)| ∂s H |ε1(s)>| / Δ(s)²` over a uniform grid.
///
/// `∂s H = -A'(s) Σ σx + B'(s) H_P` with finite-difference derivatives of the
/// schedule using the grid spacing as step. When a level is degenerate the
/// matrix element is the norm of `∂s H` restricted between the two level
/// subspaces, which is independent of the chosen eigenbasis.
pub fn adiabatic_bound(m: &IsingModel, sched: &Schedule, grid_points: usize) -> Result<AdiabaticBound> {
    check_size(m, ADIABATIC_MAX_SPINS)?;
    let s_values = grid(grid_points)?;
    let step = 1.0 / (grid_points - 1) as f64;
    let n = m.num_spins();
    let diagonal = problem_diagonal(m);
    let driver = assemble(n, &vec![0.0; diagonal.len()], 1.0, 0.0);
    let problem = DMatrix::from_diagonal(&DVector::from_vec(diagonal.clone()));
    let mut best = AdiabaticBound {
        value: 0.0,
        argmax_s: 0.0,
    };
    for &s in &s_values {
        let (a, b) = sched.at(s);
        let eig = SymmetricEigen::new(assemble(n, &diagonal, a, b));
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let (ground, next) = level(&eig, &order, 0);
        if next == order.len() {
            return Err(Error::Unbounded {
                what: "adiabatic bound (no excited level)".into(),
                s,
            });
        }
        let (excited, _) = level(&eig, &order, next);
        let gap = eig.eigenvalues[order[next]] - eig.eigenvalues[order[0]];
        if gap <= DEGENERACY_TOLERANCE {
            return Err(Error::Unbounded {
                what: "adiabatic bound (vanishing gap)".into(),
                s,
            });
        }
        let (da, db) = sched.derivative(s, step);
        let dh = &driver * da + &problem * db;
        let mut squared = 0.0;
        for u in &ground {
            let du = &dh * u;
            for v in &excited {
                squared += du.dot(v).powi(2);
            }
        }
        let ratio = squared.sqrt() / (gap * gap);
        if ratio > best.value {
            best = AdiabaticBound { value: ratio, argmax_s: s };
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::kp_toy;
    use crate::qubo::{kp_qubo, qubo_to_ising, Lambda};

    fn single(h: f64) -> IsingModel {
        IsingModel::new(vec![h], vec![], 0.0).unwrap()
    }

    #[test]
    fn endpoint_is_problem_diagonal() {
        let m = IsingModel::new(vec![0.3, -1.0, 0.5], vec![(0, 1, 0.7), (1, 2, -0.2)], 0.1).unwrap();
        let h = build_annealing_hamiltonian(&m, &Schedule::linear(), 1.0).unwrap();
        let mut diag: Vec<f64> = (0..8).map(|k| h[(k, k)]).collect();
        let mut want: Vec<f64> = (0..8u8)
            .map(|k| m.eval_bits(&[k & 1, (k >> 1) & 1, (k >> 2) & 1]).unwrap())
            .collect();
        diag.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        for (a, b) in diag.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
        let off_diagonal = (0..8).flat_map(|i| (0..8).map(move |j| (i, j))).filter(|(i, j)| i != j);
        assert!(off_diagonal.map(|(i, j)| h[(i, j)]).all(|x| x == 0.0));
    }

    #[test]
    fn matrix_is_symmetric() {
        let m = IsingModel::new(vec![0.3, -1.0, 0.5, 0.2], vec![(0, 3, 0.7), (1, 2, -0.2)], 0.0).unwrap();
        let h = build_annealing_hamiltonian(&m, &Schedule::linear(), 0.37).unwrap();
        assert!((h.clone() - h.transpose()).abs().max() <= 1e-12);
    }

    #[test]
    fn single_spin_endpoints() {
        let h = build_annealing_hamiltonian(&single(1.0), &Schedule::linear(), 1.0).unwrap();
        assert_eq!(h, DMatrix::from_row_slice(2, 2, &[-0.5, 0.0, 0.0, 0.5]));
        let scan = gap_scan(&single(1.0), &Schedule::linear(), 3).unwrap();
        assert!((scan.gap[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn coupling_only_spectrum() {
        let m = IsingModel::new(vec![0.0, 0.0], vec![(0, 1, 2.0)], 0.25).unwrap();
        let eig = build_annealing_hamiltonian(&m, &Schedule::linear(), 1.0).unwrap().symmetric_eigenvalues();
        let mut e: Vec<f64> = eig.iter().copied().collect();
        e.sort_by(f64::total_cmp);
        assert_eq!(e, vec![-0.25, -0.25, 0.75, 0.75]);
    }

    #[test]
    fn single_spin_gap_closed_form() {
        let scan = gap_scan(&single(1.0), &Schedule::linear(), 201).unwrap();
        for (s, g) in scan.s_values.iter().zip(&scan.gap) {
            let want = 2.0 * ((1.0 - s).powi(2) + (s / 2.0).powi(2)).sqrt();
            assert!((g - want).abs() < 1e-9, "s={s}");
        }
        assert!((scan.min_gap - 0.8944271909999159).abs() < 1e-6);
        assert!((scan.argmin_s - 0.8).abs() <= 0.005);
    }

    #[test]
    fn free_spin_gap_is_transverse() {
        let scan = gap_scan(&single(0.0), &Schedule::linear(), 11).unwrap();
        for (s, g) in scan.s_values.iter().zip(&scan.gap) {
            if *s < 1.0 {
                assert!((g - 2.0 * (1.0 - s)).abs() < 1e-12);
            }
        }
        assert_eq!(*scan.gap.last().unwrap(), 0.0);
    }

    #[test]
    fn knapsack_gap_is_positive() {
        let m = qubo_to_ising(&kp_qubo(&kp_toy(3, 3).unwrap(), Lambda::Auto).unwrap());
        let scan = gap_scan(&m, &Schedule::linear(), 51).unwrap();
        assert_eq!(scan.matrix_dim, 32);
        assert!(scan.min_gap > 0.0 && scan.min_gap.is_finite());
        assert!(scan.gap[..50].iter().all(|&g| g > 0.0));
    }

    #[test]
    fn ground_energy_steps_shrink_with_refinement() {
        let m = IsingModel::new(vec![0.4, -0.7, 0.2], vec![(0, 1, 1.0), (1, 2, -0.6)], 0.0).unwrap();
        let jump = |points| {
            let scan = gap_scan(&m, &Schedule::linear(), points).unwrap();
            scan.ground.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max)
        };
        let ratio = jump(101) / jump(201);
        assert!((ratio - 2.0).abs() < 0.1, "ratio {ratio}");
    }

    #[test]
    fn single_spin_adiabatic_bound_matches_two_level_formula() {
        let bound = adiabatic_bound(&single(1.0), &Schedule::linear(), 201).unwrap();
        let analytic = (0..201)
            .map(|k| {
                let s = k as f64 / 200.0;
                let norm = ((1.0 - s).powi(2) + (s / 2.0).powi(2)).sqrt();
                1.0 / (8.0 * norm.powi(3))
            })
            .fold(0.0, f64::max);
        assert!((bound.value - analytic).abs() / analytic < 1e-9);
        assert!((bound.argmax_s - 0.8).abs() < 1e-12);
    }

    #[test]
    fn constant_schedule_has_zero_bound() {
        let sched = Schedule::constant(1.0, 1.0).unwrap();
        assert_eq!(adiabatic_bound(&single(1.0), &sched, 21).unwrap().value, 0.0);
    }

    #[test]
    fn vanishing_gap_is_unbounded() {
        let err = adiabatic_bound(&single(0.0), &Schedule::linear(), 11).unwrap_err();
        assert!(matches!(err, Error::Unbounded { s, .. } if s == 1.0));
    }

    #[test]
    fn size_caps_and_grid_checks() {
        let big = IsingModel::new(vec![0.0; 13], vec![], 0.0).unwrap();
        assert!(matches!(gap_scan(&big, &Schedule::linear(), 3), Err(Error::BudgetRefused(_))));
        let mid = IsingModel::new(vec![0.0; 11], vec![], 0.0).unwrap();
        assert!(matches!(adiabatic_bound(&mid, &Schedule::linear(), 3), Err(Error::BudgetRefused(_))));
        assert!(gap_scan(&single(1.0), &Schedule::linear(), 2).is_err());
        assert!(build_annealing_hamiltonian(&single(1.0), &Schedule::linear(), 1.5).is_err());
    }
}
