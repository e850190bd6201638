use std::path::PathBuf;

use anyhow::{Context, Result};
use contextus::builtin::pentagram_contexts;
use contextus::roots::{
    colouring_search, coxeter_graph, orthogonal_bases, rays_from_contexts, reflection_closure,
    ColouringOutcome,
};
use serde_json::{json, Map, Value};

use crate::report::{Report, Verdict};

#[derive(Debug, Clone, Default)]
pub struct Steps {
    pub complete: bool,
    pub identify: bool,
    pub colouring: bool,
    pub export: Option<PathBuf>,
}

pub fn run(mut steps: Steps) -> Result<Report> {
    if !steps.complete && !steps.identify && !steps.colouring && steps.export.is_none() {
        steps.complete = true;
        steps.identify = true;
    }
    let mut report = Report::new("Pentagram rays and roots");
    let mut summary = Map::new();
    summary.insert("command".into(), json!("roots"));
    let rays = rays_from_contexts(&pentagram_contexts())?;
    let mut matched = rays.len() == 40;
    summary.insert("rays".into(), json!(rays.len()));

    if steps.complete || steps.identify || steps.export.is_some() {
        let system = reflection_closure(&rays)?;
        matched &= system.len() == 240;
        summary.insert("roots".into(), json!(system.len()));
        let mut lines = Vec::new();
        let mut headline = format!("{} rays → {} roots", rays.len(), system.len());
        if let Some(pairs) = system.antipodal_pairs() {
            lines.push(format!("{pairs} antipodal pairs"));
        }
        if steps.identify {
            let graph = coxeter_graph(&system)?;
            matched &= graph.classification == "E8";
            headline.push_str(&format!("; diagram: {}", graph.classification));
            lines.push(format!("functional base t = {}", graph.functional));
            for (i, r) in graph.simple_roots.iter().enumerate() {
                lines.push(format!("α{} = ({r})", i + 1));
            }
            let edges: Vec<String> = graph
                .edges()
                .iter()
                .map(|&(i, j, m)| {
                    if m == 3 {
                        format!("{}-{}", i + 1, j + 1)
                    } else {
                        format!("{}-{}[{m}]", i + 1, j + 1)
                    }
                })
                .collect();
            lines.push(format!("edges: {}", edges.join(" ")));
            summary.insert("diagram".into(), json!(graph.classification));
        }
        lines.insert(0, headline);
        if let Some(path) = &steps.export {
            std::fs::write(path, system.export())
                .with_context(|| format!("cannot write {}", path.display()))?;
            lines.push(format!(
                "wrote {} roots to {}",
                system.len(),
                path.display()
            ));
        }
        report.section("reflection closure", lines);
    }

    report.verdict = Verdict::Ok;
    if steps.colouring {
        let bases = orthogonal_bases(&rays)?;
        let outcome = colouring_search(rays.len(), &bases);
        let mut lines = vec![format!("orthogonal bases among the rays: {}", bases.len())];
        match &outcome {
            ColouringOutcome::Infeasible { nodes, conflict } => {
                lines.push(format!(
                    "no colouring exists: exhausted after {nodes} nodes"
                ));
                let rays: Vec<String> = conflict.iter().map(|r| (r + 1).to_string()).collect();
                lines.push(format!("last conflict: basis of rays {}", rays.join(", ")));
                report.verdict = Verdict::Infeasible;
            }
            ColouringOutcome::Feasible { colouring, nodes } => {
                let chosen: Vec<String> = colouring
                    .assignment
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c == 1)
                    .map(|(r, _)| (r + 1).to_string())
                    .collect();
                lines.push(format!(
                    "colouring found after {nodes} nodes: rays {}",
                    chosen.join(", ")
                ));
                report.verdict = Verdict::Feasible;
                matched = false;
            }
        }
        report.section("colouring", lines);
        summary.insert(
            "colouring".into(),
            json!({ "bases": bases.len(), "feasible": outcome.is_feasible(), "nodes": outcome.nodes() }),
        );
    }
    report.exit_code = if matched { 0 } else { 1 };
    report.summary = Value::Object(summary);
    Ok(report)
}
