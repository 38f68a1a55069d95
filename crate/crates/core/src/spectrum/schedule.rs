use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Tabulated annealing schedule `(s, A(s), B(s))`, linearly interpolated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    points: Vec<(f64, f64, f64)>,
}

impl Default for Schedule {
    fn default() -> Self {
        Self::linear()
    }
}

impl Schedule {
    /// `A(s) = 1 - s`, `B(s) = s`.
    pub fn linear() -> Self {
        Self {
            points: vec![(0.0, 1.0, 0.0), (1.0, 0.0, 1.0)],
        }
    }

    /// Time-independent `A`, `B`.
    pub fn constant(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![(0.0, a, b), (1.0, a, b)])
    }

    pub fn new(points: Vec<(f64, f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return invalid("a schedule needs at least two points");
        }
        if points.first().unwrap().0 != 0.0 || points.last().unwrap().0 != 1.0 {
            return invalid("schedule must start at s = 0 and end at s = 1");
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return invalid("schedule s values must be strictly increasing");
        }
        if points.iter().any(|&(s, a, b)| !(s.is_finite() && a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite())) {
            return invalid("schedule values must be finite with A, B >= 0");
        }
        if points[0].1 <= 0.0 {
            return invalid("the transverse field A(0) must be positive");
        }
        Ok(Self { points })
    }

    /// Parses a numeric table, one point per line, whitespace or comma
    /// separated; `#` starts a comment. Three columns are `s A B`; two
    /// columns `s f` describe `A = 1 - f`, `B = f`.
    pub fn from_table(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        let mut width = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<f64> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| crate::Error::InvalidInput(format!("schedule line {}: {e}", lineno + 1)))?;
            if *width.get_or_insert(cols.len()) != cols.len() {
                return invalid(format!("schedule line {}: inconsistent column count", lineno + 1));
            }
            match cols[..] {
                [s, a, b] => points.push((s, a, b)),
                [s, f] => points.push((s, 1.0 - f, f)),
                _ => return invalid(format!("schedule line {}: expected 2 or 3 columns", lineno + 1)),
            }
        }
        Self::new(points)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_table(&std::fs::read_to_string(path)?)
    }

    pub fn points(&self) -> &[(f64, f64, f64)] {
        &self.points
    }

    /// `(A(s), B(s))`; `s` is clamped to `[0, 1]`.
    pub fn at(&self, s: f64) -> (f64, f64) {
        let s = s.clamp(0.0, 1.0);
        let k = self.points.partition_point(|p| p.0 <= s).clamp(1, self.points.len() - 1);
        let (s0, a0, b0) = self.points[k - 1];
        let (s1, a1, b1) = self.points[k];
        let t = (s - s0) / (s1 - s0);
        (a0 + t * (a1 - a0), b0 + t * (b1 - b0))
    }

    /// Finite-difference `(A'(s), B'(s))` with step `h`, central inside the
    /// interval and one-sided where `s ± h` leaves it.
    pub fn derivative(&self, s: f64, h: f64) -> (f64, f64) {
        let lo = (s - h).max(0.0);
        let hi = (s + h).min(1.0);
        let (a0, b0) = self.at(lo);
        let (a1, b1) = self.at(hi);
        ((a1 - a0) / (hi - lo), (b1 - b0) / (hi - lo))
    }
}
