//! The JSON file formats and the machine-readable report structure.
//!
//! Matroids travel as `cyclic-flats-v1` documents and exact matrices as
//! `exact-matrix-v1` documents; sets are serialized as label lists in
//! ground-set order so output is canonical and diffable.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::kernel::{CyclicFlatPresentation, ElementSet, GroundSet, Matroid};
use crate::linear::{ExactMatrix, FieldSpec};

pub const MATROID_FORMAT: &str = "cyclic-flats-v1";
pub const MATRIX_FORMAT: &str = "exact-matrix-v1";

/// On-disk form of a cyclic-flat presentation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatroidFile {
    pub format: String,
    pub ground_set: Vec<String>,
    pub cyclic_flats: Vec<FlatEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlatEntry {
    pub set: Vec<String>,
    pub rank: u32,
}

impl MatroidFile {
    pub fn from_matroid(m: &Matroid) -> Self {
        Self::from_presentation(m.presentation())
    }

    pub fn from_presentation(p: &CyclicFlatPresentation) -> Self {
        MatroidFile {
            format: MATROID_FORMAT.to_string(),
            ground_set: p.ground().labels().to_vec(),
            cyclic_flats: p
                .iter()
                .map(|(set, rank)| FlatEntry { set: set.label_vec(), rank })
                .collect(),
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        let file: MatroidFile = serde_json::from_str(json)?;
        if file.format != MATROID_FORMAT {
            return Err(Error::Format {
                what: "matroid",
                detail: format!("format is `{}`, expected `{MATROID_FORMAT}`", file.format),
            });
        }
        Ok(file)
    }

    /// Syntactic conversion: resolves labels but does not validate the
    /// axioms, so the axiom checker can report on arbitrary input.
    pub fn to_parts(&self) -> Result<(Arc<GroundSet>, Vec<(ElementSet, u32)>)> {
        let ground = GroundSet::new(self.ground_set.iter().cloned())?;
        let mut entries = Vec::with_capacity(self.cyclic_flats.len());
        for entry in &self.cyclic_flats {
            entries.push((ElementSet::from_labels(&ground, &entry.set)?, entry.rank));
        }
        Ok((ground, entries))
    }

    pub fn to_presentation(&self) -> Result<CyclicFlatPresentation> {
        let (ground, entries) = self.to_parts()?;
        CyclicFlatPresentation::new(ground, entries)
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        Matroid::from_presentation(self.to_presentation()?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("matroid files always serialize")
    }
}

/// On-disk form of an exact matrix. Entries are strings ("2", "-1",
/// "1/3") so no precision is lost to JSON numbers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub format: String,
    pub field: String,
    pub columns: Vec<ColumnEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColumnEntry {
    pub label: String,
    pub entries: Vec<String>,
}

impl MatrixFile {
    pub fn from_exact_matrix(a: &ExactMatrix) -> Self {
        MatrixFile {
            format: MATRIX_FORMAT.to_string(),
            field: a.field().to_string(),
            columns: (0..a.cols())
                .map(|i| ColumnEntry {
                    label: a.labels()[i].clone(),
                    entries: a.entry_strings(i),
                })
                .collect(),
            groups: a.groups().clone(),
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(json)?;
        if file.format != MATRIX_FORMAT {
            return Err(Error::Format {
                what: "matrix",
                detail: format!("format is `{}`, expected `{MATRIX_FORMAT}`", file.format),
            });
        }
        Ok(file)
    }

    pub fn to_exact_matrix(&self) -> Result<ExactMatrix> {
        let field = FieldSpec::parse(&self.field)?;
        let labels: Vec<String> = self.columns.iter().map(|c| c.label.clone()).collect();
        let matrix = match field {
            FieldSpec::Rational => {
                let cols = self
                    .columns
                    .iter()
                    .map(|c| c.entries.iter().map(|e| crate::linear::parse_rational(e)).collect())
                    .collect::<Result<Vec<_>>>()?;
                ExactMatrix::rational(labels, cols)?
            }
            FieldSpec::Prime(p) => {
                let cols = self
                    .columns
                    .iter()
                    .map(|c| {
                        c.entries
                            .iter()
                            .map(|e| {
                                let v: i128 = e.trim().parse().map_err(|_| Error::Format {
                                    what: "matrix",
                                    detail: format!("bad GF({p}) entry `{e}`"),
                                })?;
                                Ok(v.rem_euclid(p as i128) as u64)
                            })
                            .collect()
                    })
                    .collect::<Result<Vec<Vec<u64>>>>()?;
                ExactMatrix::prime_field(p, labels, cols)?
            }
        };
        matrix.with_groups(self.groups.clone())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix files always serialize")
    }
}

/// Outcome of one verification or CLI command: a named list of checks
/// with expected/actual values, and optional witness data.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub ok: bool,
}

impl Check {
    /// A check that passes exactly when `expected == actual`.
    pub fn compare(name: impl Into<String>, expected: impl Into<Value>, actual: impl Into<Value>) -> Self {
        let (expected, actual) = (expected.into(), actual.into());
        let ok = expected == actual;
        Check { name: name.into(), expected, actual, ok }
    }
}

impl Report {
    pub fn new(command: impl Into<String>, checks: Vec<Check>) -> Self {
        let status = if checks.iter().all(|c| c.ok) { Status::Pass } else { Status::Fail };
        Report { command: command.into(), status, checks, witnesses: None }
    }

    pub fn with_witnesses(mut self, witnesses: Value) -> Self {
        self.witnesses = Some(witnesses);
        self
    }

    pub fn error(command: impl Into<String>, message: impl std::fmt::Display) -> Self {
        Report {
            command: command.into(),
            status: Status::Error,
            checks: Vec::new(),
            witnesses: Some(serde_json::json!({ "error": message.to_string() })),
        }
    }

    /// 0 on pass, 1 on fail, 2 on error — the CLI exit-code contract.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Plain-text rendering for `--text`.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        writeln!(out, "{}: {status}", self.command).unwrap();
        for c in &self.checks {
            writeln!(
                out,
                "  [{}] {}: expected {}, got {}",
                if c.ok { "ok" } else { "FAIL" },
                c.name,
                c.expected,
                c.actual
            )
            .unwrap();
        }
        if let Some(w) = &self.witnesses {
            writeln!(out, "  witnesses: {w}").unwrap();
        }
        out
    }
}

/// Element sets as JSON: label lists in ground order.
pub fn set_to_value(s: &ElementSet) -> Value {
    Value::Array(s.label_vec().into_iter().map(Value::String).collect())
}

pub fn sets_to_value<'a, I: IntoIterator<Item = &'a ElementSet>>(sets: I) -> Value {
    Value::Array(sets.into_iter().map(set_to_value).collect())
}
