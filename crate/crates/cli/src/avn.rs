use anyhow::{anyhow, bail, Result};
use clap::ValueEnum;
use contextus::builtin::ghz_state;
use contextus::hilbert::common_stabilised_state;
use contextus::parity::{avn_system, ValuationReport};
use contextus::pauli::{commutes, is_avn_triple, parse_pauli, subgroup_generate, PauliOp};
use contextus::scenario::avn_check;
use serde_json::json;

use crate::report::{Report, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateChoice {
    /// (|000⟩ + |111⟩)/√2
    Ghz,
    /// The joint +1 eigenvector of the generators.
    Stabilised,
}

/// Splits on `;` and reports parse failures with their offset in the whole
/// argument.
pub fn parse_generators(text: &str) -> Result<Vec<PauliOp>> {
    let mut ops = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        let op = parse_pauli(part).map_err(|e| {
            anyhow!(
                "generator {:?}: {} at offset {}",
                part.trim(),
                e.kind,
                offset + e.position
            )
        })?;
        ops.push(op);
        offset += part.len() + 1;
    }
    let n = ops[0].qubits();
    if let Some(bad) = ops.iter().find(|p| p.qubits() != n) {
        bail!("{bad} acts on {} qubits, expected {n}", bad.qubits());
    }
    Ok(ops)
}

fn parity_lines(decision: &ValuationReport) -> Vec<String> {
    match decision {
        ValuationReport::Inconsistent {
            certificate,
            derivation,
        } => derivation
            .iter()
            .skip(certificate.rows.len())
            .cloned()
            .collect(),
        ValuationReport::Consistent { dimension, .. } => {
            vec![format!("solution space dimension {dimension}")]
        }
    }
}

pub fn run(generators: &str, state: Option<StateChoice>) -> Result<Report> {
    let gens = parse_generators(generators)?;
    for (i, a) in gens.iter().enumerate() {
        if !a.is_hermitian() {
            bail!("precondition: {a} is not Hermitian");
        }
        for b in &gens[..i] {
            if !commutes(a, b)? {
                bail!("precondition: {b} and {a} do not commute");
            }
        }
    }
    let labels: Vec<String> = gens.iter().map(ToString::to_string).collect();
    let mut report = Report::new(format!("All-versus-nothing check for {}", labels.join(";")));

    let triple = match gens.as_slice() {
        [e, f, g] if gens.iter().all(PauliOp::is_phase_free) => Some(is_avn_triple(*e, *f, *g)?),
        _ => None,
    };
    let triple_line = match &triple {
        Some(v) if v.holds => format!("AvN triple: yes ({})", v.reason()),
        Some(v) => format!("AvN triple: no ({})", v.reason()),
        None => "AvN triple: not applicable (needs three phase-free generators)".to_string(),
    };
    let predicted = triple.as_ref().is_some_and(|v| v.holds);

    let Some(choice) = state else {
        let group = subgroup_generate(&gens)?;
        let system = avn_system(&group)?;
        let decision = system.decide();
        let mut lines = vec![triple_line, format!("subgroup order: {}", group.len())];
        lines.push(format!(
            "members: {}",
            group
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        ));
        report.section("generators", lines);
        let mut rows: Vec<String> = system
            .equations()
            .iter()
            .map(|e| format!("[{}] {e}", e.origin))
            .collect();
        rows.extend(parity_lines(&decision));
        rows.push(format!("system {}", decision.verdict()));
        report.section("parity system", rows);
        report.verdict = if decision.is_consistent() {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        };
        report.exit_code = if predicted && decision.is_consistent() {
            1
        } else {
            0
        };
        report.summary = json!({
            "command": "avn",
            "avn_triple": triple.as_ref().map(|v| v.holds),
            "subgroup_order": group.len(),
            "system": decision.verdict(),
        });
        return Ok(report);
    };

    let psi = match choice {
        StateChoice::Ghz => ghz_state(),
        StateChoice::Stabilised => common_stabilised_state(&gens)?
            .ok_or_else(|| anyhow!("precondition: the generators have no common +1 eigenvector"))?,
    };
    let r = avn_check(&gens, &psi).map_err(|e| anyhow!("precondition: {e}"))?;
    let eigen: Vec<String> = gens
        .iter()
        .zip(&r.eigenvalues)
        .map(|(g, &l)| format!("{g}: {}", if l < 0 { "-1" } else { "+1" }))
        .collect();
    report.section(
        "generators",
        vec![
            triple_line,
            format!("eigenvalues on the state: {}", eigen.join(", ")),
            format!("subgroup order: {}", r.group.len()),
        ],
    );
    let mut rows: Vec<String> = r
        .system
        .equations()
        .iter()
        .map(|e| format!("[{}] {e}", e.origin))
        .collect();
    rows.extend(parity_lines(&r.parity));
    rows.push(format!("system {}", r.parity.verdict()));
    report.section("parity system", rows);
    let contexts: Vec<String> = (0..r.model.cover().contexts().len())
        .map(|c| format!("{{{}}}", r.model.cover().context_names(c).join(",")))
        .collect();
    report.section(
        "empirical model on local contexts",
        vec![
            contexts.join(" "),
            format!("model {}", r.class.level.verdict()),
        ],
    );
    report.verdict = Verdict::from_level(r.class.level);
    report.exit_code = if predicted && !r.is_all_versus_nothing() {
        1
    } else {
        0
    };
    report.summary = json!({
        "command": "avn",
        "avn_triple": triple.as_ref().map(|v| v.holds),
        "eigenvalues": r.eigenvalues,
        "subgroup_order": r.group.len(),
        "system": r.parity.verdict(),
        "model": r.class.level.verdict(),
    });
    Ok(report)
}
