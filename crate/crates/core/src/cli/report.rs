use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::check::{Check, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Exhausted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Exhausted => "exhausted",
        }
    }

    /// 0 pass, 1 fail, 2 exhausted.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Exhausted => 2,
        }
    }
}

/// One law that was checked, with its number of cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub property: String,
    pub checked: u64,
    pub holds: bool,
}

/// Outcome of a task. `witnesses` is non-empty exactly when the verdict is
/// `fail`; `findings` records witnesses that are expected to exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub task: String,
    pub verdict: Verdict,
    pub counts: IndexMap<String, u64>,
    pub checks: Vec<CheckLine>,
    pub witnesses: Vec<Witness>,
    pub findings: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(task: impl Into<String>) -> Self {
        Report {
            task: task.into(),
            verdict: Verdict::Pass,
            counts: IndexMap::new(),
            checks: Vec::new(),
            witnesses: Vec::new(),
            findings: Vec::new(),
            message: None,
            timing_ms: None,
        }
    }

    pub fn exhausted(task: impl Into<String>, message: impl Into<String>) -> Self {
        let mut r = Report::new(task);
        r.verdict = Verdict::Exhausted;
        r.message = Some(message.into());
        r
    }

    pub fn count(&mut self, name: &str, value: impl TryInto<u64>) -> &mut Self {
        self.counts.insert(name.to_string(), value.try_into().unwrap_or(u64::MAX));
        self
    }

    /// Records a law that must hold; a failure turns the verdict to `fail`.
    pub fn check(&mut self, check: Check) -> &mut Self {
        self.checks.push(CheckLine {
            property: check.property.clone(),
            checked: check.checked,
            holds: check.holds(),
        });
        if let Some(w) = check.witness {
            self.verdict = Verdict::Fail;
            self.witnesses.push(w);
        }
        self
    }

    pub fn finding(&mut self, witness: Option<Witness>) -> &mut Self {
        self.findings.extend(witness);
        self
    }

    /// A required condition that is not itself a law check.
    pub fn require(&mut self, property: &str, holds: bool, expected: impl Into<String>, found: impl Into<String>) -> &mut Self {
        let mut c = Check::new(property);
        c.tick();
        if !holds {
            c = c.fail(vec![], expected, found);
        }
        self.check(c)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut s = super::json::pretty(&serde_json::to_value(self).expect("reports serialize"));
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.verdict.as_str(), self.task);
        for (k, v) in &self.counts {
            let _ = writeln!(s, "  count {k}: {v}");
        }
        for c in &self.checks {
            let status = if c.holds { "holds" } else { "FAILS" };
            let _ = writeln!(s, "  check {}: {status} ({} cases)", c.property, c.checked);
        }
        for (label, list) in [("witness", &self.witnesses), ("finding", &self.findings)] {
            for w in list {
                let _ = writeln!(
                    s,
                    "  {label} {}: at [{}] expected {}, found {}",
                    w.property,
                    w.location.join(", "),
                    w.expected,
                    w.found
                );
            }
        }
        if let Some(m) = &self.message {
            let _ = writeln!(s, "  message: {m}");
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(s, "  timing: {t} ms");
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_line_comes_first() {
        let mut r = Report::new("demo");
        r.count("forms", 16u64);
        assert!(r.render(Format::Text).starts_with("pass demo\n"));
    }

    #[test]
    fn failing_check_carries_its_witness() {
        let mut r = Report::new("demo");
        r.check(Check::new("law").fail(vec!["a".into()], "x", "y"));
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witnesses.len(), 1);
        let text = r.render(Format::Text);
        assert!(text.starts_with("fail demo\n"));
        assert!(text.contains("witness law: at [a] expected x, found y"));
    }

    #[test]
    fn machine_format_round_trips() {
        let mut r = Report::new("demo");
        r.count("n", 3u64).check(Check::new("law")).finding(Some(Witness::new("p", vec![], "e", "f")));
        r.timing_ms = Some(5);
        let back: Report = serde_json::from_str(&r.render(Format::Machine)).unwrap();
        assert_eq!(back, r);
    }
}
