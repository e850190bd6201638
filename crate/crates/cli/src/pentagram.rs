use anyhow::Result;
use contextus::builtin::{ghz_contexts, ghz_state, pentagram_contexts, pentagram_observables};
use contextus::hilbert::generated_algebra_dimension;
use contextus::parity::{mermin_system, state_dependent_system, ValuationReport, ValuationSystem};
use contextus::presheaf::{
    coordinate_rings, global_sections, pspec_functor_points, spectral_presheaf,
    support_subpresheaf, ContextPoset, FinitePresheaf,
};
use serde_json::{json, Map, Value};

use crate::report::{Report, Verdict};

#[derive(Debug, Clone, Copy, Default)]
pub struct Faces {
    pub state_dependent: bool,
    pub presheaf: bool,
    pub pspec: bool,
    pub algebra: bool,
}

fn system_lines(system: &ValuationSystem, decision: &ValuationReport) -> Vec<String> {
    let mut lines: Vec<String> = system
        .equations()
        .iter()
        .enumerate()
        .map(|(i, eq)| format!("{}. [{}] {}", i + 1, eq.origin, eq))
        .collect();
    match decision {
        ValuationReport::Inconsistent {
            certificate,
            derivation,
        } => {
            let rows: Vec<String> = certificate
                .rows
                .iter()
                .map(|r| (r + 1).to_string())
                .collect();
            lines.push(format!("certificate: rows {}", rows.join(", ")));
            lines.extend(derivation.iter().skip(certificate.rows.len()).cloned());
        }
        ValuationReport::Consistent {
            dimension,
            valuations,
        } => {
            lines.push(format!("solution space dimension {dimension}"));
            if let Some(v) = valuations {
                lines.push(format!("{} valuations", v.len()));
            }
        }
    }
    lines.push(decision.verdict().to_string());
    lines
}

fn certificate_rows(decision: &ValuationReport) -> Value {
    match decision {
        ValuationReport::Inconsistent { certificate, .. } => certificate
            .rows
            .iter()
            .map(|r| r + 1)
            .collect::<Vec<_>>()
            .into(),
        ValuationReport::Consistent { .. } => Value::Null,
    }
}

fn section_names(p: &FinitePresheaf, family: &[usize]) -> String {
    family
        .iter()
        .enumerate()
        .filter(|(a, _)| p.poset().maximal().contains(a))
        .map(|(a, &s)| {
            let values: String = p.stalk(a)[s]
                .iter()
                .map(|&v| if v < 0 { '-' } else { '+' })
                .collect();
            format!("{}={values}", p.poset().name(a))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(faces: Faces) -> Result<Report> {
    let mut report = Report::new("Pentagram");
    let mut matched = true;
    let mut summary = Map::new();
    summary.insert("command".into(), json!("pentagram"));

    let system = mermin_system();
    let decision = system.decide();
    matched &= !decision.is_consistent();
    report.verdict = if decision.is_consistent() {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    report.section(
        "state-independent parity system",
        system_lines(&system, &decision),
    );
    summary.insert(
        "parity".into(),
        json!({ "verdict": decision.verdict(), "certificate_rows": certificate_rows(&decision) }),
    );

    if faces.state_dependent {
        let system = state_dependent_system(&ghz_state(), &ghz_contexts())?;
        let decision = system.decide();
        matched &= !decision.is_consistent();
        let rhs: Vec<u8> = system
            .system()
            .rows()
            .iter()
            .map(|(_, b)| *b as u8)
            .collect();
        let mut lines = vec![format!(
            "right-hand sides from GHZ eigenvalues: ({})",
            rhs.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
        )];
        lines.extend(system_lines(&system, &decision));
        report.section("state-dependent system on the GHZ state", lines);
        summary.insert(
            "state_dependent".into(),
            json!({ "verdict": decision.verdict(), "rhs": rhs, "certificate_rows": certificate_rows(&decision) }),
        );
    }

    if faces.presheaf {
        let cp = ContextPoset::from_contexts(&pentagram_contexts())?;
        let spectral = spectral_presheaf(&cp)?;
        let sections = global_sections(&spectral);
        matched &= sections.is_empty();
        let mut lines = vec![
            format!(
                "context poset: {} elements, {} covering relations",
                cp.len(),
                cp.poset().hasse_edges().len()
            ),
            format!(
                "global sections of the spectral presheaf: {}",
                sections.len()
            ),
        ];

        let ghz = ghz_contexts();
        let full = ContextPoset::from_contexts(&ghz)?;
        let with_all = global_sections(&support_subpresheaf(&full, &ghz_state())?);
        matched &= with_all.is_empty();
        lines.push(format!(
            "GHZ support presheaf, all four contexts: {} global sections",
            with_all.len()
        ));
        let rest = ContextPoset::from_contexts(&ghz[1..])?;
        let rest_sheaf = support_subpresheaf(&rest, &ghz_state())?;
        let rest_sections = global_sections(&rest_sheaf);
        lines.push(format!(
            "GHZ support presheaf without C1: {} global sections",
            rest_sections.len()
        ));
        for family in &rest_sections {
            lines.push(format!("  {}", section_names(&rest_sheaf, family)));
        }
        report.section("presheaf global sections", lines);
        summary.insert(
            "presheaf".into(),
            json!({
                "pentagram_sections": sections.len(),
                "ghz_sections": with_all.len(),
                "ghz_sections_without_c1": rest_sections.len(),
            }),
        );
    }

    if faces.pspec {
        let cp = ContextPoset::from_contexts(&ghz_contexts())?;
        let rings = coordinate_rings(&cp, Some(&ghz_state()))?;
        let points = pspec_functor_points(&rings, cp.poset())?;
        matched &= points.is_empty();
        let mut lines: Vec<String> = rings
            .iter()
            .take(ghz_contexts().len())
            .enumerate()
            .map(|(i, r)| format!("A{} = {r}", i + 1))
            .collect();
        lines.push(if points.is_empty() {
            "functor has no points".to_string()
        } else {
            format!("functor has {} points", points.len())
        });
        report.section("prime-spectrum functor", lines);
        summary.insert("pspec".into(), json!({ "points": points.len() }));
    }

    if faces.algebra {
        let dim = generated_algebra_dimension(&pentagram_observables())?;
        matched &= dim == 64;
        let line = if dim == 64 {
            format!("generated algebra dimension {dim} ≅ M₈(ℂ)")
        } else {
            format!("generated algebra dimension {dim}")
        };
        report.section("operator algebra", vec![line]);
        summary.insert("algebra".into(), json!({ "dimension": dim }));
    }

    report.exit_code = if matched { 0 } else { 1 };
    report.summary = Value::Object(summary);
    Ok(report)
}
