//! JSON scenario files:
//!
//! ```json
//! { "observables": ["X1", "X2"],
//!   "contexts": [["X1", "X2"]],
//!   "model": [ { "context": 0, "rows": { "++": "1/2", "--": "1/2" } } ] }
//! ```
//!
//! Probabilities are rational strings. Rows left out have probability 0.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{
    assignment_key, assignment_of, index_of_assignment, parse_assignment_key, EmpiricalModel,
    MeasurementCover, ScenarioError,
};
use crate::exactkernel::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub observables: Vec<String>,
    pub contexts: Vec<Vec<String>>,
    pub model: Vec<ContextTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextTable {
    pub context: usize,
    pub rows: BTreeMap<String, String>,
}

fn format_error(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Format(msg.into())
}

/// Parses and validates a scenario document. Syntax errors carry the
/// line and column reported by the JSON reader.
pub fn model_from_json(text: &str) -> Result<EmpiricalModel, ScenarioError> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let msg = msg.rfind(" at line ").map_or(msg.as_str(), |i| &msg[..i]);
        format_error(format!("line {}, column {}: {msg}", e.line(), e.column()))
    })?;
    file.into_model()
}

impl ScenarioFile {
    pub fn into_model(self) -> Result<EmpiricalModel, ScenarioError> {
        let contexts = self
            .contexts
            .iter()
            .map(|ctx| {
                ctx.iter()
                    .map(|name| {
                        self.observables
                            .iter()
                            .position(|o| o == name)
                            .ok_or_else(|| ScenarioError::UnknownObservable(name.clone()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cover = MeasurementCover::new(self.observables, contexts)?;
        let mut tables: Vec<Option<Vec<Rational>>> = vec![None; cover.contexts().len()];
        for entry in self.model {
            let Some(ctx) = cover.contexts().get(entry.context) else {
                return Err(format_error(format!(
                    "model refers to missing context {}",
                    entry.context
                )));
            };
            if tables[entry.context].is_some() {
                return Err(format_error(format!(
                    "context {} has two tables",
                    entry.context
                )));
            }
            let mut table = vec![Rational::zero(); 1 << ctx.len()];
            let mut seen = vec![false; table.len()];
            for (key, value) in &entry.rows {
                let values = parse_assignment_key(key)
                    .filter(|v| v.len() == ctx.len())
                    .ok_or_else(|| {
                        format_error(format!("context {}: bad row key {key:?}", entry.context))
                    })?;
                let k = index_of_assignment(&values);
                if seen[k] {
                    return Err(format_error(format!(
                        "context {}: row {key:?} given twice",
                        entry.context
                    )));
                }
                seen[k] = true;
                table[k] = parse_rational(value).map_err(|e| {
                    format_error(format!("context {}, row {key:?}: {e}", entry.context))
                })?;
            }
            tables[entry.context] = Some(table);
        }
        let tables = tables
            .into_iter()
            .enumerate()
            .map(|(c, t)| t.ok_or_else(|| format_error(format!("context {c} has no table"))))
            .collect::<Result<Vec<_>, _>>()?;
        EmpiricalModel::new(cover, tables)
    }

    pub fn from_model(e: &EmpiricalModel) -> Self {
        let cover = e.cover();
        ScenarioFile {
            observables: cover.observables().to_vec(),
            contexts: (0..cover.contexts().len())
                .map(|c| {
                    cover
                        .context_names(c)
                        .into_iter()
                        .map(String::from)
                        .collect()
                })
                .collect(),
            model: e
                .tables()
                .iter()
                .enumerate()
                .map(|(c, t)| ContextTable {
                    context: c,
                    rows: t
                        .iter()
                        .enumerate()
                        .map(|(k, p)| {
                            (
                                assignment_key(&assignment_of(k, cover.context(c).len())),
                                format_rational(p),
                            )
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Pretty-printed document with every row written out; `+` sorts before
/// `-`, so rows appear in table order.
pub fn model_to_json(e: &EmpiricalModel) -> String {
    let mut s = serde_json::to_string_pretty(&ScenarioFile::from_model(e)).expect("plain data");
    s.push('\n');
    s
}
