//! JSON file formats for matrices and morphism witnesses.
//!
//! A matrix file is `{"entries": [[1, 6, 2], [6, 1, "inf"], ...]}`; each
//! entry is a positive integer or the string `"inf"`. A morphism file holds
//! `F`, `G`, `f2`, `g2` as row lists together with the slot orders of the
//! source and target algebras.

use std::fs;
use std::path::{Path, PathBuf};

use evenartin_core::brute::FieldIsoWitness;
use evenartin_core::linalg::IntMatrix;
use evenartin_core::{CoxeterMatrix, Entry, IsoWitness, LieAlgebra, MatrixError, MorphismWitness};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing or malformed field {0:?}")]
    Field(&'static str),
    #[error("entry ({row},{col}): {reason}")]
    Entry {
        row: usize,
        col: usize,
        reason: String,
    },
    #[error("invalid Coxeter matrix: {0}")]
    Matrix(#[from] MatrixError),
    #[error("slot list {which} is {found:?}, algebra expects {expected:?}")]
    SlotOrder {
        which: &'static str,
        expected: Vec<[usize; 2]>,
        found: Vec<[usize; 2]>,
    },
    #[error("{0}")]
    Core(#[from] evenartin_core::Error),
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Read {
        path: path.to_owned(),
        source,
    })
}

fn parse_entry(v: &Value, row: usize, col: usize) -> Result<Entry, FormatError> {
    let bad = |reason: &str| FormatError::Entry {
        row,
        col,
        reason: reason.to_owned(),
    };
    match v {
        Value::String(s) if s == "inf" => Ok(Entry::Infinity),
        Value::Number(n) => match n.as_u64() {
            Some(0) | None => Err(bad("expected an integer >= 1 or \"inf\"")),
            Some(x) => Ok(Entry::Finite(x)),
        },
        _ => Err(bad("expected an integer >= 1 or \"inf\"")),
    }
}

/// Parses and validates a matrix document.
pub fn parse_matrix(text: &str) -> Result<CoxeterMatrix, FormatError> {
    let doc: Value = serde_json::from_str(text)?;
    let rows = doc
        .get("entries")
        .and_then(Value::as_array)
        .ok_or(FormatError::Field("entries"))?;
    let mut entries = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or(FormatError::Entry {
            row: i,
            col: 0,
            reason: "row is not an array".into(),
        })?;
        entries.push(
            row.iter()
                .enumerate()
                .map(|(j, v)| parse_entry(v, i, j))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(CoxeterMatrix::new(entries)?)
}

pub fn read_matrix(path: &Path) -> Result<CoxeterMatrix, FormatError> {
    parse_matrix(&read(path)?)
}

pub fn entry_json(e: Entry) -> Value {
    match e {
        Entry::Finite(x) => json!(x),
        Entry::Infinity => json!("inf"),
    }
}

pub fn matrix_json(m: &CoxeterMatrix) -> Value {
    let rows: Vec<Vec<Value>> = m
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(entry_json).collect())
        .collect();
    json!({ "entries": rows })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFile {
    #[serde(rename = "F")]
    pub f: Vec<Vec<i64>>,
    #[serde(rename = "G")]
    pub g: Vec<Vec<i64>>,
    pub f2: Vec<Vec<i64>>,
    pub g2: Vec<Vec<i64>>,
    pub src_slots: Vec<[usize; 2]>,
    pub dst_slots: Vec<[usize; 2]>,
}

fn slot_list(l: &LieAlgebra) -> Vec<[usize; 2]> {
    l.slots().iter().map(|slot| [slot.s, slot.t]).collect()
}

impl MorphismFile {
    pub fn from_witness(w: &MorphismWitness, src: &LieAlgebra, dst: &LieAlgebra) -> Self {
        MorphismFile {
            f: w.f1.to_rows(),
            g: w.g1.to_rows(),
            f2: w.f2.to_rows(),
            g2: w.g2.to_rows(),
            src_slots: slot_list(src),
            dst_slots: slot_list(dst),
        }
    }

    /// Converts to a witness after checking that the slot lists match the
    /// algebras. Matrix shapes are taken from the algebras, so an empty row
    /// list is read as a matrix with zero rows.
    pub fn to_witness(
        &self,
        src: &LieAlgebra,
        dst: &LieAlgebra,
    ) -> Result<MorphismWitness, FormatError> {
        for (which, expected, found) in [
            ("src_slots", slot_list(src), &self.src_slots),
            ("dst_slots", slot_list(dst), &self.dst_slots),
        ] {
            if &expected != found {
                return Err(FormatError::SlotOrder {
                    which,
                    expected,
                    found: found.clone(),
                });
            }
        }
        let (n, m) = (src.rank(), dst.rank());
        let (a, b) = (src.slots().len(), dst.slots().len());
        let build = |rows: &[Vec<i64>], cols: usize| -> Result<IntMatrix, FormatError> {
            let cols = rows.first().map_or(cols, Vec::len);
            Ok(IntMatrix::from_rows(rows, cols)?)
        };
        Ok(MorphismWitness {
            f1: build(&self.f, n)?,
            g1: build(&self.g, m)?,
            f2: build(&self.f2, a)?,
            g2: build(&self.g2, b)?,
        })
    }
}

pub fn parse_morphism(
    text: &str,
    src: &LieAlgebra,
    dst: &LieAlgebra,
) -> Result<MorphismWitness, FormatError> {
    let file: MorphismFile = serde_json::from_str(text)?;
    file.to_witness(src, dst)
}

pub fn read_morphism(
    path: &Path,
    src: &LieAlgebra,
    dst: &LieAlgebra,
) -> Result<MorphismWitness, FormatError> {
    parse_morphism(&read(path)?, src, dst)
}

pub fn permutation_json(w: &IsoWitness) -> Value {
    json!({ "permutation": w.permutation })
}

pub fn parse_permutation(v: &Value) -> Result<IsoWitness, FormatError> {
    let permutation = v
        .get("permutation")
        .and_then(Value::as_array)
        .and_then(|a| {
            a.iter()
                .map(|x| x.as_u64().map(|x| x as usize))
                .collect::<Option<Vec<_>>>()
        })
        .ok_or(FormatError::Field("permutation"))?;
    Ok(IsoWitness { permutation })
}

pub fn field_witness_json(w: &FieldIsoWitness) -> Value {
    json!({ "p": w.f1.p, "F1": w.f1.rows, "F2": w.f2.rows })
}
