use crate::error::{Error, Result};
use crate::qubo::QuboModel;
use crate::samplers::{Sample, SampleSet};
use crate::Bits;

/// Enumeration cap for [`sample_exact`].
pub const EXACT_MAX_BITS: usize = 24;
/// Size cap for [`sample_exact_bb`].
pub const EXACT_BB_MAX_BITS: usize = 128;

// Candidates within this window of the running minimum are kept and
// re-evaluated exactly at the end; the final tie window is `TOLERANCE`.
const WINDOW: f64 = 1e-6;

/// Every global minimizer of `q` by exhaustive Gray-code enumeration.
pub fn sample_exact(q: &QuboModel) -> Result<SampleSet> {
    let m = q.num_bits();
    if m > EXACT_MAX_BITS {
        return Err(Error::BudgetRefused(format!(
            "exact enumeration is capped at {EXACT_MAX_BITS} bits, model has {m}"
        )));
    }
    let coupling = q.dense_couplings();
    let mut field: Vec<f64> = q.linear().to_vec();
    let mut state: u64 = 0;
    let mut energy = q.offset();
    let mut best = energy;
    let mut candidates: Vec<(u64, f64)> = vec![(0, energy)];
    for step in 1u64..(1u64 << m) {
        let i = step.trailing_zeros() as usize;
        let up = state & (1 << i) == 0;
        let sign = if up { 1.0 } else { -1.0 };
        energy += sign * field[i];
        state ^= 1 << i;
        let row = &coupling[i * m..(i + 1) * m];
        for (f, c) in field.iter_mut().zip(row) {
            *f += sign * c;
        }
        if energy < best {
            best = energy;
            candidates.retain(|&(_, e)| e <= best + WINDOW);
        }
        if energy <= best + WINDOW {
            candidates.push((state, energy));
        }
    }
    let reads = candidates
        .into_iter()
        .map(|(s, _)| (0..m).map(|i| ((s >> i) & 1) as u8).collect())
        .collect();
    Ok(minimizers(q, reads, "exact"))
}

/// Keeps the exact minimizers among `reads`, one entry each.
fn minimizers(q: &QuboModel, reads: Vec<Bits>, id: &str) -> SampleSet {
    let scored: Vec<(Bits, f64)> = reads
        .into_iter()
        .map(|b| {
            let e = q.energy(&b);
            (b, e)
        })
        .collect();
    let min = scored.iter().map(|(_, e)| *e).fold(f64::INFINITY, f64::min);
    let entries: Vec<Sample> = scored
        .into_iter()
        .filter(|(_, e)| *e <= min + crate::TOLERANCE)
        .map(|(bits, energy)| Sample {
            bits,
            energy,
            occurrences: 1,
        })
        .collect();
    let total = entries.len() as u64;
    SampleSet::from_entries(entries, total, id, 0)
}

/// Every global minimizer of `q` by depth-first branch-and-bound.
///
/// The model is split into its recorded penalties and the remaining
/// objective part. A partial assignment is bounded below by the objective
/// energy of the fixed bits, plus every negative field and negative coupling
/// among the free bits, plus for each penalty the squared distance from its
/// target to the interval of sums the free bits can still reach. Without
/// recorded penalties this degrades to a plain quadratic bound.
pub fn sample_exact_bb(q: &QuboModel) -> Result<SampleSet> {
    let m = q.num_bits();
    if m > EXACT_BB_MAX_BITS {
        return Err(Error::BudgetRefused(format!(
            "exact branch-and-bound is capped at {EXACT_BB_MAX_BITS} bits, model has {m}"
        )));
    }
    let reads = PenaltySearch::new(q).run();
    Ok(minimizers(q, reads, "exact-bb"))
}

struct PenaltyTerms {
    weight: f64,
    target: f64,
    coeff: Vec<f64>,
    fixed_sum: f64,
    free_pos: f64,
    free_neg: f64,
}

impl PenaltyTerms {
    fn lower_bound(&self) -> f64 {
        let r = self.target - self.fixed_sum;
        let d = if r < self.free_neg {
            self.free_neg - r
        } else if r > self.free_pos {
            r - self.free_pos
        } else {
            0.0
        };
        self.weight * d * d
    }
}

struct PenaltySearch<'a> {
    q: &'a QuboModel,
    order: Vec<usize>,
    flat: Vec<f64>,
    obj: Vec<f64>,
    obj_field: Vec<f64>,
    flat_field: Vec<f64>,
    obj_fixed: f64,
    neg_pair_suffix: Vec<f64>,
    penalties: Vec<PenaltyTerms>,
    free: Vec<bool>,
    bits: Bits,
    best: f64,
    candidates: Vec<Bits>,
}

impl<'a> PenaltySearch<'a> {
    fn new(q: &'a QuboModel) -> Self {
        let m = q.num_bits();
        let flat = q.dense_couplings();
        let mut obj = flat.clone();
        let mut obj_lin = q.linear().to_vec();
        let mut obj_offset = q.offset();
        let mut penalties = Vec::with_capacity(q.penalties().len());
        for p in q.penalties() {
            let mut coeff = vec![0.0; m];
            for &(i, a) in &p.terms {
                coeff[i] += a;
            }
            obj_offset -= p.weight * p.target * p.target;
            for i in 0..m {
                if coeff[i] == 0.0 {
                    continue;
                }
                obj_lin[i] -= p.weight * (coeff[i] * coeff[i] - 2.0 * p.target * coeff[i]);
                for j in 0..m {
                    if j != i {
                        obj[i * m + j] -= p.weight * 2.0 * coeff[i] * coeff[j];
                    }
                }
            }
            penalties.push(PenaltyTerms {
                weight: p.weight,
                target: p.target,
                free_pos: coeff.iter().filter(|a| **a > 0.0).sum(),
                free_neg: coeff.iter().filter(|a| **a < 0.0).sum(),
                coeff,
                fixed_sum: 0.0,
            });
        }
        // Most influential objective variables first.
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| obj_lin[b].abs().total_cmp(&obj_lin[a].abs()).then(a.cmp(&b)));
        let mut neg_pair_suffix = vec![0.0; m + 1];
        for d in (0..m).rev() {
            let i = order[d];
            let pairs: f64 = order[d + 1..].iter().map(|&j| obj[i * m + j].min(0.0)).sum();
            neg_pair_suffix[d] = neg_pair_suffix[d + 1] + pairs;
        }
        Self {
            q,
            order,
            obj_field: obj_lin,
            flat_field: q.linear().to_vec(),
            flat,
            obj,
            obj_fixed: obj_offset,
            neg_pair_suffix,
            penalties,
            free: vec![true; m],
            bits: vec![0; m],
            best: f64::INFINITY,
            candidates: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<Bits> {
        self.visit(0);
        self.candidates
    }

    fn bound(&self, depth: usize) -> f64 {
        let free_fields: f64 = self.order[depth..].iter().map(|&i| self.obj_field[i].min(0.0)).sum();
        let penalty: f64 = self.penalties.iter().map(PenaltyTerms::lower_bound).sum();
        self.obj_fixed + free_fields + self.neg_pair_suffix[depth] + penalty
    }

    fn visit(&mut self, depth: usize) {
        if self.bound(depth) > self.best + WINDOW {
            return;
        }
        let m = self.bits.len();
        if depth == m {
            let e = self.q.energy(&self.bits);
            if e < self.best {
                self.best = e;
                let best = self.best;
                let q = self.q;
                self.candidates.retain(|b| q.energy(b) <= best + WINDOW);
            }
            if e <= self.best + WINDOW {
                self.candidates.push(self.bits.clone());
            }
            return;
        }
        let var = self.order[depth];
        let first = if self.flat_field[var] < 0.0 { 1 } else { 0 };
        for value in [first, 1 - first] {
            self.fix(var, value);
            self.visit(depth + 1);
            self.unfix(var, value);
        }
    }

    fn fix(&mut self, var: usize, value: u8) {
        let m = self.bits.len();
        self.free[var] = false;
        self.bits[var] = value;
        for p in &mut self.penalties {
            let a = p.coeff[var];
            if a > 0.0 {
                p.free_pos -= a;
            } else {
                p.free_neg -= a;
            }
            if value == 1 {
                p.fixed_sum += a;
            }
        }
        if value == 1 {
            self.obj_fixed += self.obj_field[var];
            for j in 0..m {
                self.obj_field[j] += self.obj[var * m + j];
                self.flat_field[j] += self.flat[var * m + j];
            }
        }
    }

    fn unfix(&mut self, var: usize, value: u8) {
        let m = self.bits.len();
        if value == 1 {
            for j in 0..m {
                self.obj_field[j] -= self.obj[var * m + j];
                self.flat_field[j] -= self.flat[var * m + j];
            }
            self.obj_fixed -= self.obj_field[var];
        }
        for p in &mut self.penalties {
            let a = p.coeff[var];
            if a > 0.0 {
                p.free_pos += a;
            } else {
                p.free_neg += a;
            }
            if value == 1 {
                p.fixed_sum -= a;
            }
        }
        self.bits[var] = 0;
        self.free[var] = true;
    }
}
