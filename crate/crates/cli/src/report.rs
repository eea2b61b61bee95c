use std::fmt::Write as _;

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Partial,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Partial => "partial",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Fail => 1,
            Verdict::Pass | Verdict::Partial => 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub findings: Vec<Value>,
    pub mode: String,
}

impl Report {
    pub fn new(command: &str, mode: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            verdict: Verdict::Pass,
            findings: Vec::new(),
            mode: mode.into(),
        }
    }

    /// Adds `{"finding": name, ..fields}`.
    pub fn add(&mut self, name: &str, fields: Value) {
        let mut m = Map::new();
        m.insert("finding".into(), Value::from(name));
        if let Value::Object(f) = fields {
            m.extend(f);
        }
        self.findings.push(Value::Object(m));
    }

    /// Marks the report failed with `witness` as the evidence.
    pub fn fail(&mut self, name: &str, witness: Value) {
        self.verdict = Verdict::Fail;
        self.add(name, witness);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "verdict": self.verdict.as_str(),
            "findings": self.findings,
            "mode": self.mode,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {} [{}]\n", self.command, self.verdict.as_str(), self.mode);
        for f in &self.findings {
            let name = f["finding"].as_str().unwrap_or("finding");
            if name == "matrix" {
                out.push_str(&matrix_table(&f["grades"]));
                continue;
            }
            let _ = writeln!(out, "- {name}");
            if let Value::Object(m) = f {
                let width = m.keys().map(String::len).max().unwrap_or(0);
                for (k, v) in m.iter().filter(|(k, _)| *k != "finding") {
                    let _ = writeln!(out, "    {k:<width$}  {}", scalar(v));
                }
            }
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Rows are source frames, columns target frames.
fn matrix_table(grades: &Value) -> String {
    let cells: Vec<(&str, &str, &str)> = grades
        .as_array()
        .map(|a| {
            a.iter()
                .filter_map(|g| Some((g["from"].as_str()?, g["to"].as_str()?, g["grade"].as_str()?)))
                .collect()
        })
        .unwrap_or_default();
    let mut frames: Vec<&str> = cells.iter().map(|c| c.0).collect();
    frames.dedup();
    let width = cells
        .iter()
        .map(|c| c.2.len())
        .chain(frames.iter().map(|f| f.len()))
        .max()
        .unwrap_or(0);
    let mut out = String::from("- matrix (row sees column)\n");
    let _ = write!(out, "    {:<width$}", "");
    for f in &frames {
        let _ = write!(out, "  {f:<width$}");
    }
    out.push('\n');
    for l in &frames {
        let _ = write!(out, "    {l:<width$}");
        for m in &frames {
            let g = cells.iter().find(|c| c.0 == *l && c.1 == *m).map_or("?", |c| c.2);
            let _ = write!(out, "  {g:<width$}");
        }
        out.push('\n');
    }
    out
}
