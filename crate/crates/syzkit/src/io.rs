//! JSON input formats.
//!
//! * CY3 datum: `{"label", "rank", "cubic": [{"i","j","k","value"}], "c2"}`,
//!   0-based indices, symmetrized on load.
//! * K3 model: `{"label", "gram": [[int]]}`.
//! * Matrices: `{"rows", "cols", "entries": [["p/q"]]}`, or an array of them.

use std::path::Path;

use serde::Deserialize;
use syzkit_core::cy3::CY3Datum;
use syzkit_core::k3::K3LatticeModel;
use syzkit_core::rational::{self, Q};
use syzkit_core::RationalMatrix;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] syzkit_core::Error),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubicEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CY3File {
    pub label: String,
    pub rank: usize,
    pub cubic: Vec<CubicEntry>,
    pub c2: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct K3File {
    pub label: String,
    pub gram: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MatrixOrList {
    One(MatrixFile),
    Many(Vec<MatrixFile>),
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, InputError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Read { path: shown.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| InputError::Json { path: shown, source })
}

impl CY3File {
    pub fn into_datum(self) -> Result<CY3Datum, InputError> {
        let entries: Vec<_> = self.cubic.iter().map(|e| (e.i, e.j, e.k, e.value)).collect();
        Ok(CY3Datum::from_entries(self.label, self.rank, &entries, self.c2)?)
    }
}

impl MatrixFile {
    pub fn into_matrix(self) -> Result<RationalMatrix, InputError> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(InputError::Invalid(format!("matrix entries do not match declared shape {}x{}", self.rows, self.cols)));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| rational::parse(s)).collect::<Result<Vec<Q>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if self.rows == 0 {
            return Ok(RationalMatrix::zeros(0, self.cols));
        }
        Ok(RationalMatrix::from_rows(rows)?)
    }
}

pub fn load_cy3(path: &Path) -> Result<CY3Datum, InputError> {
    read_json::<CY3File>(path)?.into_datum()
}

pub fn load_k3(path: &Path) -> Result<K3LatticeModel, InputError> {
    let f: K3File = read_json(path)?;
    Ok(K3LatticeModel::new(f.label, f.gram)?)
}

pub fn load_matrices(path: &Path) -> Result<Vec<RationalMatrix>, InputError> {
    let files = match read_json::<MatrixOrList>(path)? {
        MatrixOrList::One(m) => vec![m],
        MatrixOrList::Many(ms) => ms,
    };
    files.into_iter().map(MatrixFile::into_matrix).collect()
}

/// `"1,-2,3/4"` as exact rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<Q>, InputError> {
    split_list(text).map(|s| rational::parse(s).map_err(InputError::from)).collect()
}

/// `"0.5,-1,2e-3"` as floats.
pub fn parse_float_list(text: &str) -> Result<Vec<f64>, InputError> {
    split_list(text)
        .map(|s| s.parse::<f64>().map_err(|e| InputError::Invalid(format!("bad number {s:?}: {e}"))))
        .collect()
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}
