//! Law-check reports shared by the library checks and the CLI.
//!
//! A report is a flat list of entries, each identifying one law instance by
//! a stable id, the mathematical statement it checks, the concrete instance
//! description, and pass/fail with a witness on failure. Serialization field
//! order is fixed so a report is byte-identical for a fixed (input, seed).

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ReportEntry {
    pub id: String,
    pub anchor: String,
    pub instance: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub entries: Vec<ReportEntry>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(suite: impl Into<String>, seed: u64) -> Report {
        Report {
            suite: suite.into(),
            seed,
            entries: Vec::new(),
            passed: 0,
            failed: 0,
        }
    }

    pub fn record(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        instance: impl Into<String>,
        pass: bool,
        witness: Option<String>,
    ) {
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.entries.push(ReportEntry {
            id: id.into(),
            anchor: anchor.into(),
            instance: instance.into(),
            pass,
            witness: if pass { None } else { witness },
        });
    }

    pub fn pass(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        instance: impl Into<String>,
    ) {
        self.record(id, anchor, instance, true, None);
    }

    pub fn fail(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        instance: impl Into<String>,
        witness: impl Into<String>,
    ) {
        self.record(id, anchor, instance, false, Some(witness.into()));
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Append another report's entries, keeping the counters consistent.
    pub fn absorb(&mut self, other: Report) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.entries.extend(other.entries);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per entry plus a summary, for terminal output.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let mark = if e.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("[{mark}] {}  {}  ({})\n", e.id, e.anchor, e.instance));
            if let Some(w) = &e.witness {
                out.push_str(&format!("       witness: {w}\n"));
            }
        }
        out.push_str(&format!(
            "{}: {} passed, {} failed (seed {})\n",
            self.suite, self.passed, self.failed, self.seed
        ));
        out
    }
}
