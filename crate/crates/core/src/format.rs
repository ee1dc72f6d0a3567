//! JSON input files: a quiver, named representations, optional tubes and
//! named sequences.
//!
//! ```json
//! {
//!   "quiver": {"vertices": ["1", "2"], "arrows": [{"id": "a", "tail": "1", "head": "2"}]},
//!   "representations": {"S1": {"dim": {"1": 1, "2": 0}, "matrices": {}}},
//!   "tubes": [{"period": 1, "simples": ["S1"]}],
//!   "sequences": {"main": ["S1"]}
//! }
//! ```
//!
//! Matrices are row-major lists of rational strings and map `V(tail)` to
//! `V(head)`. Arrows whose matrix has no entries (a zero dimension at either
//! end) may be omitted and are omitted on output.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::linalg::{format_rational, parse_rational, Matrix};
use crate::quiver::{DimensionVector, Quiver, QuiverError};
use crate::rep::RepError;
use crate::synthesis::{TubeCatalog, TubeError};
use crate::{Rational, Representation};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("JSON syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("representation {name:?}: {message}")]
    Representation { name: String, message: String },
    #[error("representation {name:?}: {source}")]
    Shape { name: String, source: RepError },
    #[error("unknown representation {0:?}")]
    UnknownRepresentation(String),
    #[error("duplicate representation name {0:?}")]
    DuplicateName(String),
    #[error("tube {index}: {message}")]
    Tube { index: usize, message: String },
    #[error(transparent)]
    TubeCatalog(#[from] TubeError),
    #[error("sequence {name:?} references unknown representation {member:?}")]
    Sequence { name: String, member: String },
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ArrowJson {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
}

impl QuiverJson {
    pub fn build(&self) -> Result<Quiver, QuiverError> {
        Quiver::new(
            self.vertices.iter().cloned(),
            self.arrows
                .iter()
                .map(|a| (a.id.clone(), a.tail.clone(), a.head.clone())),
        )
    }

    pub fn from_quiver(q: &Quiver) -> Self {
        Self {
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowJson {
                    id: a.id.clone(),
                    tail: q.vertices()[a.tail].clone(),
                    head: q.vertices()[a.head].clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RepresentationJson {
    pub dim: Map<String, Value>,
    #[serde(default)]
    pub matrices: Map<String, Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TubeJson {
    pub period: usize,
    pub simples: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InputJson {
    pub quiver: QuiverJson,
    #[serde(default)]
    pub representations: Map<String, Value>,
    #[serde(default)]
    pub tubes: Vec<TubeJson>,
    #[serde(default)]
    pub sequences: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

/// A parsed and validated input file.
#[derive(Clone, Debug)]
pub struct InputFile {
    pub quiver: Arc<Quiver>,
    pub representations: Vec<(String, Representation)>,
    pub tubes: Option<TubeCatalog>,
    pub sequences: Vec<(String, Vec<String>)>,
    pub notes: Option<String>,
}

impl InputFile {
    pub fn representation(&self, name: &str) -> Result<&Representation, FormatError> {
        self.representations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r)
            .ok_or_else(|| FormatError::UnknownRepresentation(name.to_string()))
    }

    pub fn sequence(&self, name: &str) -> Option<&[String]> {
        self.sequences
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s.as_slice())
    }

    pub fn representation_names(&self) -> Vec<&str> {
        self.representations
            .iter()
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

pub fn parse_quiver(text: &str) -> Result<Quiver, FormatError> {
    let q: QuiverJson = serde_json::from_str(text)?;
    Ok(q.build()?)
}

pub fn parse_input(text: &str) -> Result<InputFile, FormatError> {
    let raw: InputJson = serde_json::from_str(text)?;
    build_input(&raw)
}

pub fn build_input(raw: &InputJson) -> Result<InputFile, FormatError> {
    let quiver = Arc::new(raw.quiver.build()?);
    let mut representations: Vec<(String, Representation)> = Vec::new();
    for (name, value) in &raw.representations {
        let rj: RepresentationJson =
            serde_json::from_value(value.clone()).map_err(|e| FormatError::Representation {
                name: name.clone(),
                message: e.to_string(),
            })?;
        let rep = representation_from_json(&quiver, name, &rj)?;
        representations.push((name.clone(), rep));
    }
    let lookup = |n: &str| {
        representations
            .iter()
            .find(|(k, _)| k == n)
            .map(|(_, r)| r.clone())
    };
    let tubes = if raw.tubes.is_empty() {
        None
    } else {
        let mut tubes = Vec::new();
        for (index, t) in raw.tubes.iter().enumerate() {
            if t.period != t.simples.len() {
                return Err(FormatError::Tube {
                    index,
                    message: format!("period {} but {} simples listed", t.period, t.simples.len()),
                });
            }
            let mut simples = Vec::new();
            for s in &t.simples {
                let rep = lookup(s).ok_or_else(|| FormatError::Tube {
                    index,
                    message: format!("unknown representation {s:?}"),
                })?;
                simples.push((s.clone(), rep));
            }
            tubes.push(simples);
        }
        Some(TubeCatalog::new(quiver.clone(), tubes)?)
    };
    let mut sequences = Vec::new();
    for (name, value) in &raw.sequences {
        let members: Vec<String> =
            serde_json::from_value(value.clone()).map_err(|e| FormatError::Representation {
                name: name.clone(),
                message: format!("sequence must be a list of names: {e}"),
            })?;
        for m in &members {
            if lookup(m).is_none() {
                return Err(FormatError::Sequence {
                    name: name.clone(),
                    member: m.clone(),
                });
            }
        }
        sequences.push((name.clone(), members));
    }
    Ok(InputFile {
        quiver,
        representations,
        tubes,
        sequences,
        notes: raw.notes.clone(),
    })
}

pub fn representation_from_json(
    quiver: &Arc<Quiver>,
    name: &str,
    rj: &RepresentationJson,
) -> Result<Representation, FormatError> {
    let err = |message: String| FormatError::Representation {
        name: name.to_string(),
        message,
    };
    let mut dims = vec![0i64; quiver.vertex_count()];
    for (v, d) in &rj.dim {
        let x = quiver
            .vertex_index(v)
            .ok_or_else(|| err(format!("unknown vertex {v:?} in dim")))?;
        dims[x] = d
            .as_i64()
            .filter(|d| *d >= 0)
            .ok_or_else(|| err(format!("dimension at {v:?} must be a nonnegative integer")))?;
    }
    for key in rj.matrices.keys() {
        if quiver.arrow_index(key).is_none() {
            return Err(err(format!("unknown arrow {key:?}")));
        }
    }
    let dim = DimensionVector::new(dims).map_err(|e| err(e.to_string()))?;
    let mut matrices = Vec::new();
    for a in quiver.arrows() {
        let (rows, cols) = (dim.get(a.head) as usize, dim.get(a.tail) as usize);
        let m = match rj.matrices.get(&a.id) {
            None if rows * cols == 0 => Matrix::zeros(rows, cols),
            None => return Err(err(format!("missing matrix for arrow {:?}", a.id))),
            Some(value) => {
                let grid: Vec<Vec<String>> = serde_json::from_value(value.clone())
                    .map_err(|e| err(format!("arrow {:?}: {e}", a.id)))?;
                let parsed = grid
                    .iter()
                    .map(|row| row.iter().map(|s| parse_rational(s)).collect())
                    .collect::<Result<Vec<Vec<Rational>>, _>>()
                    .map_err(|e| err(format!("arrow {:?}: {e}", a.id)))?;
                Matrix::from_rows(parsed, cols)
                    .map_err(|e| err(format!("arrow {:?}: {e}", a.id)))?
            }
        };
        matrices.push(m);
    }
    Representation::new(quiver.clone(), dim, matrices).map_err(|source| FormatError::Shape {
        name: name.to_string(),
        source,
    })
}

/// Canonical JSON form: every vertex in `dim`, matrices only for arrows
/// with entries.
pub fn representation_to_json(v: &Representation) -> Value {
    let q = v.quiver();
    let mut dim = Map::new();
    for (x, name) in q.vertices().iter().enumerate() {
        dim.insert(name.clone(), Value::from(v.dim().get(x)));
    }
    let mut matrices = Map::new();
    for (a, m) in q.arrows().iter().zip(v.matrices()) {
        if m.rows() * m.cols() == 0 {
            continue;
        }
        let rows: Vec<Value> = m
            .to_rows()
            .iter()
            .map(|r| Value::from(r.iter().map(format_rational).collect::<Vec<_>>()))
            .collect();
        matrices.insert(a.id.clone(), Value::Array(rows));
    }
    let mut obj = Map::new();
    obj.insert("dim".into(), Value::Object(dim));
    obj.insert("matrices".into(), Value::Object(matrices));
    Value::Object(obj)
}

/// Serialises a whole input file back to JSON.
pub fn input_to_json(input: &InputFile) -> Value {
    let mut reps = Map::new();
    for (n, r) in &input.representations {
        reps.insert(n.clone(), representation_to_json(r));
    }
    let tubes: Vec<TubeJson> = input
        .tubes
        .as_ref()
        .map(|c| {
            c.tubes()
                .iter()
                .map(|t| TubeJson {
                    period: t.period(),
                    simples: t.names().to_vec(),
                })
                .collect()
        })
        .unwrap_or_default();
    let mut seqs = Map::new();
    for (n, s) in &input.sequences {
        seqs.insert(n.clone(), Value::from(s.clone()));
    }
    let raw = InputJson {
        quiver: QuiverJson::from_quiver(&input.quiver),
        representations: reps,
        tubes,
        sequences: seqs,
        notes: input.notes.clone(),
    };
    serde_json::to_value(raw).expect("serialisable")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "quiver": {"vertices": ["1", "2"], "arrows": [{"id": "a", "tail": "1", "head": "2"}]},
        "representations": {
            "P1": {"dim": {"1": 1, "2": 1}, "matrices": {"a": [["1"]]}},
            "S2": {"dim": {"1": 0, "2": 1}, "matrices": {}},
            "H": {"dim": {"1": 1, "2": 2}, "matrices": {"a": [["1/2"], ["-3"]]}}
        },
        "sequences": {"s": ["P1", "S2"]}
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let input = parse_input(SMALL).unwrap();
        assert_eq!(input.representation_names(), vec!["P1", "S2", "H"]);
        let h = input.representation("H").unwrap();
        assert_eq!(*h.matrix(0).get(0, 0), Rational::new(1.into(), 2.into()));
        let raw: InputJson = serde_json::from_str(SMALL).unwrap();
        for (name, value) in &raw.representations {
            let rep = input.representation(name).unwrap();
            assert_eq!(&representation_to_json(rep), value, "{name}");
        }
        let again = build_input(&serde_json::from_value(input_to_json(&input)).unwrap()).unwrap();
        assert_eq!(again.representations, input.representations);
        assert_eq!(again.sequence("s").unwrap(), ["P1", "S2"]);
    }

    #[test]
    fn reports_positions_and_bad_data() {
        let e = parse_input("{\n  \"quiver\": [,\n}").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 2, .. }), "{e}");

        let bad_shape = SMALL.replace(r#"[["1/2"], ["-3"]]"#, r#"[["1/2", "1"]]"#);
        assert!(parse_input(&bad_shape).is_err());

        let missing = SMALL.replace(r#""matrices": {"a": [["1"]]}"#, r#""matrices": {}"#);
        let e = parse_input(&missing).unwrap_err();
        assert!(e.to_string().contains("missing matrix"), "{e}");

        let bad_lit = SMALL.replace("1/2", "1/0");
        assert!(parse_input(&bad_lit).is_err());

        let bad_seq = SMALL.replace(r#"["P1", "S2"]"#, r#"["P1", "Q"]"#);
        assert!(matches!(
            parse_input(&bad_seq).unwrap_err(),
            FormatError::Sequence { .. }
        ));
    }
}
