//! Check records and report rendering.
//!
//! A report is a flat list of records — one per certified claim — plus
//! the seed and tool version. Rendering (text, JSON, markdown) is
//! deterministic: fields serialize in declaration order and every
//! collection is emitted in insertion order, so identical inputs and
//! seed produce identical bytes.

use std::fmt::Display;

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// One check: a stable id, the claim label it certifies, the inputs it
/// consumed, key/value details, and the verdict. Built incrementally;
/// any failed requirement flips the verdict to `Fail` for good.
#[derive(Serialize)]
pub struct Record {
    pub id: &'static str,
    pub claim: &'static str,
    pub title: &'static str,
    pub inputs: Vec<String>,
    pub details: Vec<(String, String)>,
    pub verdict: Verdict,
}

impl Record {
    pub fn new(id: &'static str, claim: &'static str, title: &'static str) -> Self {
        Record {
            id,
            claim,
            title,
            inputs: Vec::new(),
            details: Vec::new(),
            verdict: Verdict::Pass,
        }
    }

    pub fn input(mut self, name: impl Into<String>) -> Self {
        self.inputs.push(name.into());
        self
    }

    pub fn detail(mut self, key: impl Into<String>, value: impl Display) -> Self {
        self.details.push((key.into(), value.to_string()));
        self
    }

    /// Marks the record failed unless `ok` holds.
    pub fn require(mut self, ok: bool) -> Self {
        if !ok {
            self.verdict = Verdict::Fail;
        }
        self
    }

    /// Records an unexpected error and fails the record.
    pub fn error(self, e: &impl Display) -> Self {
        self.detail("error", e).require(false)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub records: Vec<Record>,
    pub passed: usize,
    pub failed: usize,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(seed: u64) -> Self {
        Report {
            tool: "leibniz",
            version: env!("CARGO_PKG_VERSION"),
            seed,
            records: Vec::new(),
            passed: 0,
            failed: 0,
            verdict: Verdict::Pass,
        }
    }

    pub fn push(&mut self, record: Record) {
        if record.passed() {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.verdict = Verdict::Fail;
        }
        self.records.push(record);
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializing report");
        s.push('\n');
        s
    }

    /// One line per record, details expanded for failures, then a
    /// summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} {} — seed {}\n",
            self.tool, self.version, self.seed
        ));
        for r in &self.records {
            out.push_str(&format!(
                "{:<4} {:<4} {:<16} {}\n",
                r.id, r.verdict, r.claim, r.title
            ));
            if !r.passed() {
                for (k, v) in &r.details {
                    out.push_str(&format!("       {k}: {v}\n"));
                }
            }
        }
        out.push_str(&format!(
            "{} passed, {} failed — {}\n",
            self.passed, self.failed, self.verdict
        ));
        out
    }

    /// Full report with the record → claim traceability table and a
    /// section per record.
    pub fn render_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# leibniz verification report\n\n");
        out.push_str(&format!("- tool: {} {}\n", self.tool, self.version));
        out.push_str(&format!("- seed: {}\n", self.seed));
        out.push_str(&format!(
            "- verdict: **{}** ({} passed, {} failed)\n\n",
            self.verdict, self.passed, self.failed
        ));
        out.push_str("## Traceability\n\n");
        out.push_str("| record | claim | verdict | check |\n");
        out.push_str("|--------|-------|---------|-------|\n");
        for r in &self.records {
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                r.id, r.claim, r.verdict, r.title
            ));
        }
        out.push('\n');
        out.push_str("## Records\n");
        for r in &self.records {
            out.push_str(&format!("\n### {} — {} ({})\n\n", r.id, r.title, r.claim));
            out.push_str(&format!("- verdict: {}\n", r.verdict));
            if !r.inputs.is_empty() {
                out.push_str(&format!("- inputs: {}\n", r.inputs.join(", ")));
            }
            for (k, v) in &r.details {
                out.push_str(&format!("- {k}: {v}\n"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_accounting_and_rendering() {
        let mut report = Report::new(7);
        report.push(Record::new("A1", "plumbing", "first").require(true));
        report.push(
            Record::new("A2", "plumbing", "second")
                .detail("why", "broken")
                .require(false),
        );
        assert_eq!(report.passed, 1);
        assert_eq!(report.failed, 1);
        assert!(!report.all_passed());
        let text = report.render_text();
        assert!(text.contains("A1   pass"));
        assert!(text.contains("A2   fail"));
        assert!(text.contains("why: broken"));
        let md = report.render_markdown();
        assert!(md.contains("| A2 | plumbing | fail | second |"));
        assert!(md.contains("seed: 7"));
    }

    #[test]
    fn json_is_stable_and_complete() {
        let mut report = Report::new(1);
        report.push(Record::new("B1", "thm-0.0", "only").detail("k", "v"));
        let one = report.to_json();
        let two = report.to_json();
        assert_eq!(one, two);
        assert!(one.contains("\"claim\": \"thm-0.0\""));
        assert!(one.contains("\"verdict\": \"pass\""));
    }
}
