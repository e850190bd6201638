use std::path::Path;

use anyhow::{Context, Result};
use contextus::exactkernel::format_rational;
use contextus::scenario::{
    assignment_key, check_no_signalling, classify, model_from_json, EmpiricalModel, Witness,
};
use serde_json::json;

use crate::report::{Report, Verdict};

fn context_label(e: &EmpiricalModel, c: usize) -> String {
    format!("C{} {{{}}}", c + 1, e.cover().context_names(c).join(","))
}

pub fn run(path: &Path) -> Result<Report> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let model = model_from_json(&text).with_context(|| format!("{}", path.display()))?;
    let mut report = Report::new(format!("Scenario {}", path.display()));
    let cover = model.cover();
    let mut lines = vec![format!("observables: {}", cover.observables().join(", "))];
    lines.extend((0..cover.contexts().len()).map(|c| context_label(&model, c)));
    report.section("measurement cover", lines);

    if let Err(violations) = check_no_signalling(&model) {
        let lines = violations
            .iter()
            .map(|v| {
                let shared: Vec<&str> = v
                    .shared
                    .iter()
                    .map(|&o| cover.observables()[o].as_str())
                    .collect();
                format!(
                    "C{} and C{} disagree on {{{}}} = {}: {} vs {}",
                    v.left + 1,
                    v.right + 1,
                    shared.join(","),
                    assignment_key(&v.assignment),
                    format_rational(&v.marginals.0),
                    format_rational(&v.marginals.1)
                )
            })
            .collect();
        report.section("no-signalling", lines);
        report.verdict = Verdict::Violation;
        report.exit_code = 2;
        report.summary = json!({ "command": "scenario", "no_signalling": false, "violations": violations.len() });
        return Ok(report);
    }

    let class = classify(&model)?;
    let names = |g: &[i8]| -> String {
        cover
            .observables()
            .iter()
            .zip(g)
            .map(|(o, &v)| format!("{o}{}", if v < 0 { '-' } else { '+' }))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let witness_lines = match &class.witness {
        Witness::GlobalDistribution(weights) => weights
            .iter()
            .map(|(g, w)| format!("{}  weight {}", names(g), format_rational(w)))
            .collect(),
        Witness::NoGlobalDistribution { residual } => vec![format!(
            "no global distribution reproduces the tables (least residual {})",
            format_rational(residual)
        )],
        Witness::NonExtendable { context, section } => vec![format!(
            "supported section {} of {} extends to no supported global assignment",
            assignment_key(section),
            context_label(&model, *context)
        )],
        Witness::EmptySupport {
            globals_checked,
            near_misses,
        } => {
            let mut lines = vec![format!(
                "no global assignment is supported in every context ({globals_checked} checked)"
            )];
            lines.extend(near_misses.iter().map(|m| {
                format!(
                    "{}  eliminated by C{}",
                    names(&m.assignment),
                    m.killed_by + 1
                )
            }));
            lines
        }
    };
    report.section("no-signalling", vec!["holds".into()]);
    report.section(
        format!("classification: {}", class.level.verdict()),
        witness_lines,
    );
    report.verdict = Verdict::from_level(class.level);
    report.summary = json!({
        "command": "scenario",
        "no_signalling": true,
        "level": class.level.verdict(),
    });
    Ok(report)
}
