use std::fmt::Write;

use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Feasible,
    Infeasible,
    Noncontextual,
    Probabilistic,
    Possibilistic,
    Strong,
    Ok,
    Violation,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Consistent => "CONSISTENT",
            Verdict::Inconsistent => "INCONSISTENT",
            Verdict::Feasible => "FEASIBLE",
            Verdict::Infeasible => "INFEASIBLE",
            Verdict::Noncontextual => "NONCONTEXTUAL",
            Verdict::Probabilistic => "PROBABILISTIC",
            Verdict::Possibilistic => "POSSIBILISTIC",
            Verdict::Strong => "STRONG",
            Verdict::Ok => "OK",
            Verdict::Violation => "VIOLATION",
        }
    }

    pub fn from_level(level: contextus::scenario::Level) -> Self {
        use contextus::scenario::Level;
        match level {
            Level::Noncontextual => Verdict::Noncontextual,
            Level::Probabilistic => Verdict::Probabilistic,
            Level::Possibilistic => Verdict::Possibilistic,
            Level::Strong => Verdict::Strong,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Section {
    pub heading: String,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub title: String,
    pub sections: Vec<Section>,
    pub verdict: Verdict,
    /// 0 when the verdict is the predicted one, 1 when it differs, 2 for
    /// rejected input.
    pub exit_code: i32,
    pub summary: Value,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            sections: Vec::new(),
            verdict: Verdict::Ok,
            exit_code: 0,
            summary: Value::Null,
        }
    }

    pub fn section(&mut self, heading: impl Into<String>, lines: Vec<String>) {
        self.sections.push(Section {
            heading: heading.into(),
            lines,
        });
    }

    pub fn render(&self, color: bool) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        writeln!(out, "{}", "=".repeat(self.title.chars().count())).unwrap();
        for s in &self.sections {
            writeln!(out).unwrap();
            writeln!(out, "{}", s.heading).unwrap();
            for line in &s.lines {
                writeln!(out, "  {line}").unwrap();
            }
        }
        writeln!(out).unwrap();
        let word = self.verdict.as_str();
        if color {
            let code = if self.exit_code == 0 { "32" } else { "31" };
            writeln!(out, "verdict: \x1b[1;{code}m{word}\x1b[0m").unwrap();
        } else {
            writeln!(out, "verdict: {word}").unwrap();
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut summary = match &self.summary {
            Value::Object(map) => map.clone(),
            _ => serde_json::Map::new(),
        };
        summary.insert("verdict".into(), Value::from(self.verdict.as_str()));
        summary.insert("exit_code".into(), Value::from(self.exit_code));
        let mut text =
            serde_json::to_string_pretty(&Value::Object(summary)).expect("plain JSON values");
        text.push('\n');
        text
    }
}
