use serde::Serialize;
use serde_json::Value;
use symcoset::VariableLegend;

#[derive(Debug, Clone, Serialize)]
pub struct LegendEntry {
    pub name: String,
    pub members: Vec<String>,
}

/// A command result with the header every report carries.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub legend: Vec<LegendEntry>,
    pub result: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
    #[serde(skip)]
    pub failed: Option<String>,
}

impl Report {
    pub fn new(command: &str, seed: u64, legend: &VariableLegend) -> Self {
        let legend = legend
            .names()
            .iter()
            .enumerate()
            .map(|(i, name)| LegendEntry {
                name: name.clone(),
                members: legend.members(i).to_vec(),
            })
            .collect();
        Report {
            command: command.to_string(),
            seed,
            legend,
            result: Value::Null,
            lines: Vec::new(),
            failed: None,
        }
    }

    pub fn result(mut self, value: impl Serialize) -> Self {
        self.result = serde_json::to_value(value).expect("reports serialize");
        self
    }

    pub fn line(mut self, line: impl Into<String>) -> Self {
        self.lines.push(line.into());
        self
    }

    pub fn lines(mut self, lines: impl IntoIterator<Item = String>) -> Self {
        self.lines.extend(lines);
        self
    }

    /// Marks the report as a verification failure.
    pub fn fail_if(mut self, failed: bool, reason: &str) -> Self {
        if failed {
            self.failed = Some(reason.to_string());
        }
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# symcoset {}\n# seed: {}\n", self.command, self.seed);
        if !self.legend.is_empty() {
            out.push_str("# legend:\n");
            for entry in &self.legend {
                if entry.members.is_empty() {
                    out.push_str(&format!("#   {}\n", entry.name));
                } else {
                    out.push_str(&format!("#   {} = {{{}}}\n", entry.name, entry.members.join(", ")));
                }
            }
        }
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}
