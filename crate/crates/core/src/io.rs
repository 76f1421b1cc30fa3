//! JSON and text formats shared by the command-line tool.
//!
//! Rationals are written as strings (`"3"`, `"-5/7"`). A loop matrix entry
//! is an object mapping degree to coefficient, with keys in increasing
//! numeric order, e.g. `{"-1": "2", "0": "1/3"}`. Network vertices are
//! 0-based.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::network::{Edge, NetworkError};
use crate::scalar::{format_rational, parse_rational};
use crate::tncheck::MinorWitness;
use crate::{CoreError, CylNetwork, DenseMatrix, LaurentPoly, LoopMatrix, RatPoly, Rational};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("bad degree key {0:?}")]
    Degree(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Laurent polynomial as a degree → coefficient map.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(transparent)]
pub struct EntryJson(pub BTreeMap<String, String>);

impl EntryJson {
    fn from_laurent(p: &LaurentPoly) -> Self {
        Self(p.terms().map(|(d, c)| (d.to_string(), format_rational(c))).collect())
    }

    fn to_laurent(&self) -> Result<LaurentPoly, IoError> {
        let mut terms = Vec::with_capacity(self.0.len());
        for (d, c) in &self.0 {
            let deg: i64 = d.trim().parse().map_err(|_| IoError::Degree(d.clone()))?;
            terms.push((deg, parse_rational(c)?));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl Serialize for EntryJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut keys: Vec<(i64, &String, &String)> =
            self.0.iter().map(|(k, v)| (k.trim().parse().unwrap_or(i64::MAX), k, v)).collect();
        keys.sort();
        let mut map = s.serialize_map(Some(keys.len()))?;
        for (_, k, v) in keys {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopMatrixJson {
    pub n: usize,
    pub m: usize,
    pub entries: Vec<Vec<EntryJson>>,
}

impl LoopMatrixJson {
    pub fn from_matrix(m: &LoopMatrix) -> Self {
        let entries = m.to_rows().iter().map(|r| r.iter().map(EntryJson::from_laurent).collect()).collect();
        Self { n: m.n(), m: m.m(), entries }
    }

    pub fn to_matrix(&self) -> Result<LoopMatrix, IoError> {
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.m) {
            return Err(IoError::Shape(format!("entries do not form a {} x {} array", self.n, self.m)));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(EntryJson::to_laurent).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LoopMatrix::new(self.n, self.m, rows)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl DenseMatrixJson {
    pub fn from_matrix(m: &DenseMatrix) -> Self {
        let entries = m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect();
        Self { rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn to_matrix(&self) -> Result<DenseMatrix, IoError> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(IoError::Shape(format!("entries do not form a {} x {} array", self.rows, self.cols)));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DenseMatrix::from_rows(rows)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub tail: usize,
    pub head: usize,
    pub weight: String,
    #[serde(default)]
    pub hcross: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkJson {
    pub vertices: usize,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub edges: Vec<EdgeJson>,
}

impl NetworkJson {
    pub fn from_network(net: &CylNetwork) -> Self {
        Self {
            vertices: net.vertex_count(),
            sources: net.sources().to_vec(),
            sinks: net.sinks().to_vec(),
            edges: net
                .edges()
                .iter()
                .map(|e| EdgeJson { tail: e.tail, head: e.head, weight: format_rational(&e.weight), hcross: e.hcross })
                .collect(),
        }
    }

    pub fn to_network(&self) -> Result<CylNetwork, IoError> {
        let edges = self
            .edges
            .iter()
            .map(|e| Ok(Edge { tail: e.tail, head: e.head, weight: parse_rational(&e.weight)?, hcross: e.hcross }))
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(CylNetwork::new(self.vertices, edges, self.sources.clone(), self.sinks.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
    pub value: String,
}

impl From<&MinorWitness<Rational>> for WitnessJson {
    fn from(w: &MinorWitness<Rational>) -> Self {
        Self { rows: w.rows.clone(), cols: w.cols.clone(), value: format_rational(&w.value) }
    }
}

pub fn read_loop_matrix(text: &str) -> Result<LoopMatrix, IoError> {
    serde_json::from_str::<LoopMatrixJson>(text)?.to_matrix()
}

pub fn write_loop_matrix(m: &LoopMatrix) -> String {
    serde_json::to_string_pretty(&LoopMatrixJson::from_matrix(m)).expect("serializable")
}

pub fn read_dense_matrix(text: &str) -> Result<DenseMatrix, IoError> {
    serde_json::from_str::<DenseMatrixJson>(text)?.to_matrix()
}

pub fn read_network(text: &str) -> Result<CylNetwork, IoError> {
    serde_json::from_str::<NetworkJson>(text)?.to_network()
}

pub fn write_network(net: &CylNetwork) -> String {
    serde_json::to_string_pretty(&NetworkJson::from_network(net)).expect("serializable")
}

/// Comma-separated coefficients, lowest degree first: `"1, 2/3, 0, 4"`.
pub fn parse_poly_csv(text: &str) -> Result<RatPoly, IoError> {
    if text.trim().is_empty() {
        return Ok(RatPoly::zero());
    }
    let coeffs = text.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    Ok(RatPoly::new(coeffs))
}
