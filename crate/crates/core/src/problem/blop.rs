use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::{check_bits, Bits, TOLERANCE};

/// Constraint row sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=", alias = "le")]
    Le,
    #[serde(rename = "=", alias = "eq")]
    Eq,
}

/// Minimize `c·x` subject to `A x (<= | =) b`, `x ∈ {0,1}^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlopInstance {
    c: Vec<f64>,
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    sense: Vec<Sense>,
}

impl BlopInstance {
    pub fn new(c: Vec<f64>, a: Vec<Vec<f64>>, b: Vec<f64>, sense: Vec<Sense>) -> Result<Self> {
        let n = c.len();
        if n == 0 {
            return invalid("a binary linear problem needs at least one variable");
        }
        if a.len() != b.len() {
            return Err(Error::Dimension {
                what: "right-hand side b",
                expected: a.len(),
                got: b.len(),
            });
        }
        if sense.len() != a.len() {
            return Err(Error::Dimension {
                what: "constraint senses",
                expected: a.len(),
                got: sense.len(),
            });
        }
        for row in &a {
            if row.len() != n {
                return Err(Error::Dimension {
                    what: "constraint row",
                    expected: n,
                    got: row.len(),
                });
            }
        }
        let finite = c.iter().chain(b.iter()).chain(a.iter().flatten()).all(|v| v.is_finite());
        if !finite {
            return invalid("coefficients must be finite");
        }
        Ok(Self { c, a, b, sense })
    }

    /// All rows are `<=` constraints.
    pub fn with_le(c: Vec<f64>, a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self> {
        let sense = vec![Sense::Le; a.len()];
        Self::new(c, a, b, sense)
    }

    pub fn num_vars(&self) -> usize {
        self.c.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.a.len()
    }

    pub fn costs(&self) -> &[f64] {
        &self.c
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.a
    }

    pub fn rhs(&self) -> &[f64] {
        &self.b
    }

    pub fn senses(&self) -> &[Sense] {
        &self.sense
    }

    pub fn objective(&self, bits: &[u8]) -> Result<f64> {
        check_bits(bits, self.num_vars())?;
        Ok(dot(&self.c, bits))
    }

    pub fn is_feasible(&self, bits: &[u8]) -> Result<bool> {
        check_bits(bits, self.num_vars())?;
        Ok(self.rows_hold(bits))
    }

    /// Objective value and feasibility of `bits`.
    pub fn evaluate(&self, bits: &[u8]) -> Result<(f64, bool)> {
        check_bits(bits, self.num_vars())?;
        Ok((dot(&self.c, bits), self.rows_hold(bits)))
    }

    pub fn solution(&self, bits: Bits) -> Result<BitSolution> {
        let (objective, feasible) = self.evaluate(&bits)?;
        Ok(BitSolution {
            bits,
            objective,
            feasible,
        })
    }

    fn rows_hold(&self, bits: &[u8]) -> bool {
        self.a
            .iter()
            .zip(&self.b)
            .zip(&self.sense)
            .all(|((row, &rhs), sense)| {
                let lhs = dot(row, bits);
                match sense {
                    Sense::Le => lhs <= rhs + TOLERANCE,
                    Sense::Eq => (lhs - rhs).abs() <= TOLERANCE,
                }
            })
    }
}

pub(crate) fn dot(coeffs: &[f64], bits: &[u8]) -> f64 {
    coeffs
        .iter()
        .zip(bits)
        .filter(|(_, &b)| b == 1)
        .map(|(c, _)| c)
        .sum()
}

/// A bit assignment together with its objective value and feasibility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BitSolution {
    pub bits: Bits,
    pub objective: f64,
    pub feasible: bool,
}
