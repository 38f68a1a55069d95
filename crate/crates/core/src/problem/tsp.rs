use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::problem::blop::{BlopInstance, Sense};
use crate::Bits;

/// Directed TSP over cities `0..n`, city 0 being the depot.
/// `cost[i][j]` is the cost of traveling from `i` to `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    cost: Vec<Vec<f64>>,
}

impl TspInstance {
    pub fn new(cost: Vec<Vec<f64>>) -> Result<Self> {
        let n = cost.len();
        if n < 3 {
            return invalid(format!("TSP needs at least 3 cities, got {n}"));
        }
        for (i, row) in cost.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension {
                    what: "cost matrix row",
                    expected: n,
                    got: row.len(),
                });
            }
            for (j, &c) in row.iter().enumerate() {
                if i == j && c != 0.0 {
                    return invalid(format!("cost[{i}][{i}] must be 0, got {c}"));
                }
                if !(c.is_finite() && c >= 0.0) {
                    return invalid(format!("cost[{i}][{j}] must be finite and >= 0, got {c}"));
                }
            }
        }
        Ok(Self { cost })
    }

    pub fn num_cities(&self) -> usize {
        self.cost.len()
    }

    pub fn cost(&self, from: usize, to: usize) -> f64 {
        self.cost[from][to]
    }

    pub fn cost_matrix(&self) -> &[Vec<f64>] {
        &self.cost
    }

    pub fn max_cost(&self) -> f64 {
        self.cost.iter().flatten().copied().fold(0.0, f64::max)
    }

    /// Total cost of the closed cycle described by `tour`.
    pub fn tour_cost(&self, tour: &Tour) -> Result<f64> {
        if tour.len() != self.num_cities() {
            return Err(Error::Dimension {
                what: "tour",
                expected: self.num_cities(),
                got: tour.len(),
            });
        }
        Ok(tour.edges().map(|(u, v)| self.cost[u][v]).sum())
    }

    /// Degree-constrained assignment form over edge variables `x[i*n + j]`
    /// with objective `Σ C_ij x_ij`. Subtour elimination is not expressed
    /// as rows; use [`validate_tour`] for the single-cycle condition.
    pub fn assignment_blop(&self) -> BlopInstance {
        let n = self.num_cities();
        let c: Vec<f64> = self.cost.iter().flatten().copied().collect();
        let mut rows = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut out = vec![0.0; n * n];
            let mut inw = vec![0.0; n * n];
            for j in 0..n {
                if i != j {
                    out[i * n + j] = 1.0;
                    inw[j * n + i] = 1.0;
                }
            }
            rows.push(out);
            rows.push(inw);
        }
        let len = rows.len();
        BlopInstance::new(c, rows, vec![1.0; len], vec![Sense::Eq; len])
            .expect("assignment rows are consistent by construction")
    }
}

/// Cyclic family: traveling from `u` to `v` costs `(v - u) mod n`, so the
/// tour visiting cities in label order is optimal with cost `n`.
pub fn tsp_toy(n: usize) -> Result<TspInstance> {
    if n < 3 {
        return invalid(format!("toy TSP needs n >= 3, got {n}"));
    }
    let cost = (0..n)
        .map(|u| (0..n).map(|v| ((v + n - u) % n) as f64).collect())
        .collect();
    TspInstance::new(cost)
}

/// A permutation of the cities starting at the depot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Tour(Vec<usize>);

impl Tour {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &c in &order {
            if c >= n || seen[c] {
                return invalid(format!("tour {order:?} is not a permutation of 0..{n}"));
            }
            seen[c] = true;
        }
        if order.first() != Some(&0) {
            return invalid(format!("tour {order:?} must start at the depot 0"));
        }
        Ok(Self(order))
    }

    /// Ascending label order `0, 1, ..., n-1`.
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Directed edges of the closed cycle, including the return to the depot.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.0.len();
        (0..n).map(move |k| (self.0[k], self.0[(k + 1) % n]))
    }

    /// Edge encoding: `x[i*n + j] = 1` iff the tour travels `i -> j`.
    pub fn edge_bits(&self) -> Bits {
        let n = self.len();
        let mut bits = vec![0; n * n];
        for (u, v) in self.edges() {
            bits[u * n + v] = 1;
        }
        bits
    }

    /// Position encoding: `x[i*n + k] = 1` iff city `i` is visited at step `k`.
    pub fn position_bits(&self) -> Bits {
        let n = self.len();
        let mut bits = vec![0; n * n];
        for (k, &city) in self.0.iter().enumerate() {
            bits[city * n + k] = 1;
        }
        bits
    }

    /// Decodes a position-encoded `n*n` bit vector, rotating so the depot
    /// comes first. `None` unless every city and every step is used once.
    pub fn from_position_bits(bits: &[u8], n: usize) -> Option<Self> {
        if bits.len() != n * n || n == 0 {
            return None;
        }
        let mut at_step = vec![usize::MAX; n];
        for city in 0..n {
            let row = &bits[city * n..(city + 1) * n];
            let mut ones = row.iter().enumerate().filter(|(_, &b)| b == 1);
            let (step, _) = ones.next()?;
            if ones.next().is_some() || at_step[step] != usize::MAX {
                return None;
            }
            at_step[step] = city;
        }
        let start = at_step.iter().position(|&c| c == 0)?;
        let order = (0..n).map(|k| at_step[(start + k) % n]).collect();
        Some(Self(order))
    }

    /// Decodes an edge-encoded `n*n` bit vector. `None` unless the edges form
    /// a single Hamiltonian cycle.
    pub fn from_edge_bits(bits: &[u8], n: usize) -> Option<Self> {
        if bits.len() != n * n || n == 0 {
            return None;
        }
        let mut next = vec![usize::MAX; n];
        let mut indegree = vec![0usize; n];
        for i in 0..n {
            let row = &bits[i * n..(i + 1) * n];
            let mut ones = row.iter().enumerate().filter(|(_, &b)| b == 1);
            let (j, _) = ones.next()?;
            if ones.next().is_some() || j == i {
                return None;
            }
            next[i] = j;
            indegree[j] += 1;
        }
        if indegree.iter().any(|&d| d != 1) {
            return None;
        }
        let mut order = Vec::with_capacity(n);
        let mut city = 0;
        loop {
            order.push(city);
            city = next[city];
            if city == 0 {
                break;
            }
            if order.len() > n {
                return None;
            }
        }
        (order.len() == n).then_some(Self(order))
    }
}

impl TryFrom<Vec<usize>> for Tour {
    type Error = Error;

    fn try_from(order: Vec<usize>) -> Result<Self> {
        Self::new(order)
    }
}

impl From<Tour> for Vec<usize> {
    fn from(t: Tour) -> Self {
        t.0
    }
}

/// How an `n×n` binary assignment matrix encodes a tour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TourEncoding {
    /// `x[i][j] = 1` iff the tour travels `i -> j`.
    Edge,
    /// `x[i][k] = 1` iff city `i` is visited at step `k`.
    Position,
}

/// True iff every row and column of `assignment` sums to one and the
/// assignment describes a single Hamiltonian cycle over `inst`'s cities.
pub fn validate_tour(inst: &TspInstance, assignment: &[Vec<u8>], encoding: TourEncoding) -> bool {
    let n = inst.num_cities();
    if assignment.len() != n || assignment.iter().any(|r| r.len() != n) {
        return false;
    }
    let bits: Bits = assignment.iter().flatten().copied().collect();
    match encoding {
        TourEncoding::Edge => Tour::from_edge_bits(&bits, n).is_some(),
        TourEncoding::Position => Tour::from_position_bits(&bits, n).is_some(),
    }
}
