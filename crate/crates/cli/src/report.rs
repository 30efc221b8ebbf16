//! Reports: one line per verdict, witnesses with replay tokens, and the
//! exit status derived from them.

use std::fmt::Write as _;

use conj_core::algebra::Outcome;
use conj_core::{Elem, EnumerationPlan, Law, Verdict};
use serde::{Deserialize, Serialize};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_LAW_FAILURE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Whether a row is expected to hold or to fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expect {
    Holds,
    Fails,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Row {
    /// What part of the theory the law belongs to, e.g. `axioms` or `schreier`.
    pub topic: String,
    pub verdict: Verdict,
    pub expect: Expect,
}

impl Row {
    pub fn ok(&self) -> bool {
        match self.expect {
            Expect::Holds => !self.verdict.fails(),
            Expect::Fails => self.verdict.fails(),
        }
    }

    pub fn status(&self) -> &'static str {
        match (self.expect, self.ok()) {
            (Expect::Fails, true) => "expected-fail confirmed",
            (Expect::Fails, false) => "UNEXPECTED PASS",
            (Expect::Holds, _) => match self.verdict.status() {
                "FAIL" => "FAIL",
                "INCONCLUSIVE" => "inconclusive",
                "VACUOUS" => "pass (vacuous)",
                _ => "pass",
            },
        }
    }
}

/// A witness in a form that can be passed back with `--replay`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayToken {
    pub law: String,
    pub elems: Vec<Elem>,
}

impl ReplayToken {
    pub fn encode(&self) -> String {
        serde_json::to_string(self).expect("tokens serialize")
    }

    pub fn decode(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Default, Serialize)]
pub struct Report {
    pub command: String,
    pub plan: Option<EnumerationPlan>,
    pub structures: Vec<String>,
    pub notes: Vec<String>,
    pub rows: Vec<Row>,
    /// Laws behind the rows, by name, for `--replay`.
    #[serde(skip)]
    pub laws: Vec<Law>,
}

impl Report {
    pub fn new(command: impl Into<String>, plan: Option<EnumerationPlan>) -> Self {
        Report { command: command.into(), plan, ..Default::default() }
    }

    pub fn structure(&mut self, summary: impl Into<String>) {
        self.structures.push(summary.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn push(&mut self, topic: &str, verdict: Verdict) {
        self.rows.push(Row { topic: topic.into(), verdict, expect: Expect::Holds });
    }

    pub fn push_expect_fail(&mut self, topic: &str, verdict: Verdict) {
        self.rows.push(Row { topic: topic.into(), verdict, expect: Expect::Fails });
    }

    pub fn extend(&mut self, topic: &str, verdicts: impl IntoIterator<Item = Verdict>) {
        for v in verdicts {
            self.push(topic, v);
        }
    }

    pub fn add_laws(&mut self, laws: impl IntoIterator<Item = Law>) {
        self.laws.extend(laws);
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(Row::ok)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() { EXIT_PASS } else { EXIT_LAW_FAILURE }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(plan) = &self.plan {
            let _ = writeln!(out, "plan: {plan}");
        }
        for s in &self.structures {
            let _ = writeln!(out, "structure: {s}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let width = self.rows.iter().map(|r| r.verdict.law.chars().count()).max().unwrap_or(0);
        let topic_width = (self.rows.iter().map(|r| r.topic.chars().count()).max().unwrap_or(0) + 1).max(14);
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{:<24} {:<topic_width$} {:<width$}  {}",
                row.status(),
                row.topic,
                row.verdict.law,
                evidence(&row.verdict),
            );
            if let Some(w) = row.verdict.witness() {
                let _ = writeln!(out, "    witness {}: {w}", w.law);
                let token = ReplayToken { law: w.law.clone(), elems: w.elems.clone() };
                let _ = writeln!(out, "    replay: --replay '{}'", token.encode());
            }
        }
        let failed = self.rows.iter().filter(|r| !r.ok()).count();
        let _ = writeln!(out, "result: {} ({} rows, {} failing)", if failed == 0 { "pass" } else { "FAIL" }, self.rows.len(), failed);
        out
    }
}

/// How a verdict was reached, e.g. `exhaustive, 13824 tuples`.
pub fn evidence(v: &Verdict) -> String {
    match &v.outcome {
        Outcome::HoldsExhaustive => format!("exhaustive, {} tuples", v.checked),
        Outcome::HoldsBounded { window } => format!("window {window}, {} tuples", v.checked),
        Outcome::HoldsSampled { count, seed } => format!("sampled {count} (seed {seed}), {} tuples", v.checked),
        Outcome::Fails(_) if v.checked == 0 => "failed during construction".into(),
        Outcome::Fails(_) => format!("failed after {} tuples", v.checked),
        Outcome::Inconclusive(_) => format!("no witness found in {} tuples", v.checked),
    }
}
