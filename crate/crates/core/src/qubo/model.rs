use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::qubo::IsingModel;
use crate::check_bits;

/// A squared equality penalty `weight * (target - Σ coeff_i x_i)^2` that was
/// folded into a model. Kept alongside the flattened coefficients so exact
/// solvers can bound each penalty from below by zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Penalty {
    pub weight: f64,
    pub target: f64,
    pub terms: Vec<(usize, f64)>,
}

impl Penalty {
    pub fn value(&self, bits: &[u8]) -> f64 {
        let lhs: f64 = self.terms.iter().filter(|(i, _)| bits[*i] == 1).map(|(_, a)| a).sum();
        self.weight * (self.target - lhs).powi(2)
    }
}

/// `Q(x) = offset + Σ linear_i x_i + Σ_{i<j} quadratic_ij x_i x_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboModel {
    linear: Vec<f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
    var_names: Vec<String>,
    penalties: Vec<Penalty>,
}

impl QuboModel {
    /// Builds a model from explicit coefficients. Quadratic keys must have
    /// `i < j` and appear at most once.
    pub fn new(linear: Vec<f64>, quadratic: Vec<(usize, usize, f64)>, offset: f64) -> Result<Self> {
        let n = linear.len();
        let mut map = BTreeMap::new();
        for (i, j, v) in quadratic {
            if i >= j {
                return invalid(format!("quadratic term ({i},{j}) must satisfy i < j"));
            }
            if j >= n {
                return invalid(format!("quadratic term ({i},{j}) exceeds {n} bits"));
            }
            if map.insert((i, j), v).is_some() {
                return invalid(format!("duplicate quadratic term ({i},{j})"));
            }
        }
        let model = Self {
            linear,
            quadratic: map,
            offset,
            var_names: (0..n).map(|i| format!("x{i}")).collect(),
            penalties: Vec::new(),
        };
        model.check_finite()?;
        Ok(model)
    }

    /// A model with no terms, only a constant.
    pub fn constant(num_bits: usize, offset: f64) -> Self {
        QuboBuilder::new(num_bits).offset(offset).build()
    }

    fn check_finite(&self) -> Result<()> {
        let ok = self.offset.is_finite()
            && self.linear.iter().all(|v| v.is_finite())
            && self.quadratic.values().all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            invalid("model coefficients must be finite")
        }
    }

    pub fn num_bits(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn penalties(&self) -> &[Penalty] {
        &self.penalties
    }

    pub fn with_var_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.num_bits() {
            return Err(Error::Dimension {
                what: "variable names",
                expected: self.num_bits(),
                got: names.len(),
            });
        }
        self.var_names = names;
        Ok(self)
    }

    pub fn eval(&self, bits: &[u8]) -> Result<f64> {
        check_bits(bits, self.num_bits())?;
        Ok(self.energy(bits))
    }

    /// Evaluation without length or value checks.
    pub(crate) fn energy(&self, bits: &[u8]) -> f64 {
        let mut e = self.offset;
        for (i, &b) in bits.iter().enumerate() {
            if b == 1 {
                e += self.linear[i];
            }
        }
        for (&(i, j), &v) in &self.quadratic {
            if bits[i] == 1 && bits[j] == 1 {
                e += v;
            }
        }
        e
    }

    /// Symmetric dense coupling matrix, row-major, zero diagonal.
    pub(crate) fn dense_couplings(&self) -> Vec<f64> {
        let n = self.num_bits();
        let mut m = vec![0.0; n * n];
        for (&(i, j), &v) in &self.quadratic {
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
        m
    }

    pub fn to_ising(&self) -> IsingModel {
        crate::qubo::qubo_to_ising(self)
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile::Qubo {
            num_bits: self.num_bits(),
            linear: self.linear.clone(),
            quadratic: self.quadratic.iter().map(|(&(i, j), &v)| (i, j, v)).collect(),
            offset: self.offset,
            var_names: self.var_names.clone(),
            penalties: self.penalties.clone(),
        }
    }
}

/// Accumulating constructor used by the reductions.
#[derive(Debug, Clone)]
pub struct QuboBuilder {
    linear: Vec<f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
    var_names: Vec<String>,
    penalties: Vec<Penalty>,
}

impl QuboBuilder {
    pub fn new(num_bits: usize) -> Self {
        Self {
            linear: vec![0.0; num_bits],
            quadratic: BTreeMap::new(),
            offset: 0.0,
            var_names: (0..num_bits).map(|i| format!("x{i}")).collect(),
            penalties: Vec::new(),
        }
    }

    pub fn offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }

    pub fn name(&mut self, i: usize, name: impl Into<String>) {
        self.var_names[i] = name.into();
    }

    pub fn add_constant(&mut self, v: f64) {
        self.offset += v;
    }

    pub fn add_linear(&mut self, i: usize, v: f64) {
        self.linear[i] += v;
    }

    /// Adds `v x_i x_j`; `i == j` folds into the linear term since `x^2 = x`.
    pub fn add_quadratic(&mut self, i: usize, j: usize, v: f64) {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => self.linear[i] += v,
            std::cmp::Ordering::Less => *self.quadratic.entry((i, j)).or_insert(0.0) += v,
            std::cmp::Ordering::Greater => *self.quadratic.entry((j, i)).or_insert(0.0) += v,
        }
    }

    /// Adds `weight * (target - Σ a_i x_i)^2`, expanded with `x_i^2 = x_i`.
    pub fn add_penalty(&mut self, weight: f64, target: f64, terms: Vec<(usize, f64)>) {
        self.offset += weight * target * target;
        for (k, &(i, a)) in terms.iter().enumerate() {
            self.linear[i] += weight * (a * a - 2.0 * target * a);
            for &(j, b) in &terms[k + 1..] {
                self.add_quadratic(i, j, 2.0 * weight * a * b);
            }
        }
        self.penalties.push(Penalty { weight, target, terms });
    }

    pub fn build(mut self) -> QuboModel {
        self.quadratic.retain(|_, v| *v != 0.0);
        QuboModel {
            linear: self.linear,
            quadratic: self.quadratic,
            offset: self.offset,
            var_names: self.var_names,
            penalties: self.penalties,
        }
    }
}

/// Structured text form of QUBO and Ising models, tagged by `"type"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelFile {
    Qubo {
        num_bits: usize,
        linear: Vec<f64>,
        quadratic: Vec<(usize, usize, f64)>,
        offset: f64,
        #[serde(default)]
        var_names: Vec<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        penalties: Vec<Penalty>,
    },
    Ising {
        num_spins: usize,
        h: Vec<f64>,
        #[serde(rename = "J")]
        j: Vec<(usize, usize, f64)>,
        offset: f64,
    },
}

impl ModelFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn to_qubo(&self) -> Result<QuboModel> {
        match self {
            ModelFile::Qubo {
                num_bits,
                linear,
                quadratic,
                offset,
                var_names,
                penalties,
            } => {
                if linear.len() != *num_bits {
                    return Err(Error::Dimension {
                        what: "linear coefficients",
                        expected: *num_bits,
                        got: linear.len(),
                    });
                }
                let mut model = QuboModel::new(linear.clone(), quadratic.clone(), *offset)?;
                if !var_names.is_empty() {
                    model = model.with_var_names(var_names.clone())?;
                }
                for p in penalties {
                    if p.terms.iter().any(|(i, _)| *i >= *num_bits) {
                        return invalid("penalty term index out of range");
                    }
                }
                model.penalties = penalties.clone();
                Ok(model)
            }
            ModelFile::Ising { .. } => invalid("expected a document with \"type\":\"qubo\""),
        }
    }

    pub fn to_ising(&self) -> Result<IsingModel> {
        match self {
            ModelFile::Ising { num_spins, h, j, offset } => {
                if h.len() != *num_spins {
                    return Err(Error::Dimension {
                        what: "ising fields",
                        expected: *num_spins,
                        got: h.len(),
                    });
                }
                IsingModel::new(h.clone(), j.clone(), *offset)
            }
            ModelFile::Qubo { .. } => invalid("expected a document with \"type\":\"ising\""),
        }
    }
}
