use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::problem::{BlopInstance, KpInstance, Sense, TspInstance};

/// On-disk instance document, tagged by `"type"`.
///
/// ```json
/// {"type":"kp","values":[1,2],"weights":[1,1],"capacity":1}
/// {"type":"tsp","n":3,"cost":[[0,1,2],[2,0,1],[1,2,0]]}
/// {"type":"blop","c":[-1],"A":[[1]],"b":[1],"sense":["<="]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum InstanceFile {
    Kp {
        values: Vec<f64>,
        weights: Vec<f64>,
        capacity: f64,
    },
    Tsp {
        n: usize,
        cost: Vec<Vec<f64>>,
    },
    Blop {
        c: Vec<f64>,
        #[serde(rename = "A")]
        a: Vec<Vec<f64>>,
        b: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sense: Option<Vec<Sense>>,
    },
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance documents always serialize")
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InstanceFile::Kp { .. } => "kp",
            InstanceFile::Tsp { .. } => "tsp",
            InstanceFile::Blop { .. } => "blop",
        }
    }

    pub fn to_kp(&self) -> Result<KpInstance> {
        match self {
            InstanceFile::Kp {
                values,
                weights,
                capacity,
            } => KpInstance::new(values.clone(), weights.clone(), *capacity),
            other => wrong_kind("kp", other),
        }
    }

    pub fn to_tsp(&self) -> Result<TspInstance> {
        match self {
            InstanceFile::Tsp { n, cost } => {
                if cost.len() != *n {
                    return crate::error::invalid(format!(
                        "field \"n\" is {n} but \"cost\" has {} rows",
                        cost.len()
                    ));
                }
                TspInstance::new(cost.clone())
            }
            other => wrong_kind("tsp", other),
        }
    }

    pub fn to_blop(&self) -> Result<BlopInstance> {
        match self {
            InstanceFile::Blop { c, a, b, sense } => {
                let sense = sense.clone().unwrap_or_else(|| vec![Sense::Le; a.len()]);
                BlopInstance::new(c.clone(), a.clone(), b.clone(), sense)
            }
            other => wrong_kind("blop", other),
        }
    }
}

fn wrong_kind<T>(want: &str, got: &InstanceFile) -> Result<T> {
    crate::error::invalid(format!(
        "expected an instance with \"type\":\"{want}\", found \"{}\"",
        got.kind()
    ))
}

impl From<&KpInstance> for InstanceFile {
    fn from(k: &KpInstance) -> Self {
        InstanceFile::Kp {
            values: k.values().to_vec(),
            weights: k.weights().to_vec(),
            capacity: k.capacity(),
        }
    }
}

impl From<&TspInstance> for InstanceFile {
    fn from(t: &TspInstance) -> Self {
        InstanceFile::Tsp {
            n: t.num_cities(),
            cost: t.cost_matrix().to_vec(),
        }
    }
}

impl From<&BlopInstance> for InstanceFile {
    fn from(b: &BlopInstance) -> Self {
        InstanceFile::Blop {
            c: b.costs().to_vec(),
            a: b.rows().to_vec(),
            b: b.rhs().to_vec(),
            sense: Some(b.senses().to_vec()),
        }
    }
}

impl From<KpInstance> for InstanceFile {
    fn from(k: KpInstance) -> Self {
        (&k).into()
    }
}

impl From<TspInstance> for InstanceFile {
    fn from(t: TspInstance) -> Self {
        (&t).into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{kp_toy, tsp_toy};

    #[test]
    fn parses_each_kind() {
        let kp = InstanceFile::from_json(r#"{"type":"kp","values":[1,2],"weights":[1,1],"capacity":1}"#)
            .unwrap()
            .to_kp()
            .unwrap();
        assert_eq!(kp.values(), &[1.0, 2.0]);

        let tsp = InstanceFile::from_json(r#"{"type":"tsp","n":3,"cost":[[0,1,2],[2,0,1],[1,2,0]]}"#)
            .unwrap()
            .to_tsp()
            .unwrap();
        assert_eq!(tsp.cost(0, 2), 2.0);

        let blop = InstanceFile::from_json(r#"{"type":"blop","c":[-1,-2],"A":[[1,1]],"b":[1],"sense":["<="]}"#)
            .unwrap()
            .to_blop()
            .unwrap();
        assert_eq!(blop.senses(), &[Sense::Le]);
        let no_sense = InstanceFile::from_json(r#"{"type":"blop","c":[1],"A":[[1]],"b":[1]}"#).unwrap();
        assert_eq!(no_sense.to_blop().unwrap().senses(), &[Sense::Le]);
    }

    #[test]
    fn rejects_unknown_type_with_descriptive_error() {
        let err = InstanceFile::from_json(r#"{"type":"maxcut","edges":[]}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("maxcut"), "{msg}");
    }

    #[test]
    fn missing_field_is_named() {
        let err = InstanceFile::from_json(r#"{"type":"kp","values":[1],"weights":[1]}"#).unwrap_err();
        assert!(err.to_string().contains("capacity"));
    }

    #[test]
    fn round_trips_through_json() {
        let docs = [
            InstanceFile::from(&kp_toy(5, 2).unwrap()),
            InstanceFile::from(&tsp_toy(4).unwrap()),
            InstanceFile::from(&kp_toy(3, 1).unwrap().to_blop()),
        ];
        for doc in docs {
            assert_eq!(InstanceFile::from_json(&doc.to_json()).unwrap(), doc);
        }
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let doc = InstanceFile::from(&tsp_toy(3).unwrap());
        assert!(doc.to_kp().is_err());
        let bad = InstanceFile::from_json(r#"{"type":"tsp","n":4,"cost":[[0,1,2],[2,0,1],[1,2,0]]}"#).unwrap();
        assert!(bad.to_tsp().is_err());
    }
}
