use std::fmt;

use serde::{Deserialize, Serialize};

use crate::carriers::Elem;

/// A concrete tuple on which a law was evaluated and found violated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub law: String,
    pub vars: Vec<String>,
    pub elems: Vec<Elem>,
    /// Elements rendered by their own carriers, aligned with `elems`.
    pub shown: Vec<String>,
    pub detail: String,
}

impl Witness {
    pub fn bindings(&self) -> String {
        self.vars
            .iter()
            .zip(&self.shown)
            .map(|(v, s)| format!("{v}={s}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            write!(f, "{}", self.detail)
        } else {
            write!(f, "{}: {}", self.bindings(), self.detail)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    HoldsExhaustive,
    HoldsBounded { window: usize },
    HoldsSampled { count: usize, seed: u64 },
    Fails(Witness),
    /// An existential search found nothing; not a disproof.
    Inconclusive(Witness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub law: String,
    /// Number of tuples evaluated.
    pub checked: u64,
    pub outcome: Outcome,
}

impl Verdict {
    pub fn new(law: impl Into<String>, checked: u64, outcome: Outcome) -> Self {
        Verdict { law: law.into(), checked, outcome }
    }

    pub fn failure(law: impl Into<String>, checked: u64, witness: Witness) -> Self {
        Verdict::new(law, checked, Outcome::Fails(witness))
    }

    pub fn holds(&self) -> bool {
        matches!(
            self.outcome,
            Outcome::HoldsExhaustive | Outcome::HoldsBounded { .. } | Outcome::HoldsSampled { .. }
        )
    }

    pub fn fails(&self) -> bool {
        matches!(self.outcome, Outcome::Fails(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.outcome, Outcome::Inconclusive(_))
    }

    /// A pass over an empty tuple space.
    pub fn is_vacuous(&self) -> bool {
        self.holds() && self.checked == 0
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Fails(w) | Outcome::Inconclusive(w) => Some(w),
            _ => None,
        }
    }

    pub fn renamed(mut self, law: impl Into<String>) -> Self {
        self.law = law.into();
        self
    }

    /// Conjunction of several verdicts: the first non-passing one decides,
    /// otherwise the weakest form of evidence is reported.
    pub fn all(law: impl Into<String>, verdicts: &[Verdict]) -> Verdict {
        let checked = verdicts.iter().map(|v| v.checked).sum();
        if let Some(bad) = verdicts.iter().find(|v| v.fails()).or_else(|| verdicts.iter().find(|v| !v.holds())) {
            return Verdict::new(law, checked, bad.outcome.clone());
        }
        let outcome = verdicts
            .iter()
            .map(|v| &v.outcome)
            .find(|o| matches!(o, Outcome::HoldsSampled { .. }))
            .or_else(|| verdicts.iter().map(|v| &v.outcome).find(|o| matches!(o, Outcome::HoldsBounded { .. })))
            .cloned()
            .unwrap_or(Outcome::HoldsExhaustive);
        Verdict::new(law, checked, outcome)
    }

    /// One-word status used in reports.
    pub fn status(&self) -> &'static str {
        match (&self.outcome, self.checked) {
            (Outcome::Fails(_), _) => "FAIL",
            (Outcome::Inconclusive(_), _) => "INCONCLUSIVE",
            (_, 0) => "VACUOUS",
            _ => "PASS",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::HoldsExhaustive if self.checked == 0 => write!(f, "holds vacuously (no tuples)"),
            Outcome::HoldsExhaustive => write!(f, "holds (exhaustive, {} tuples)", self.checked),
            Outcome::HoldsBounded { window } => {
                write!(f, "holds (bounded window {window}, {} tuples)", self.checked)
            }
            Outcome::HoldsSampled { count, seed } => write!(f, "holds (sampled {count}, seed {seed})"),
            Outcome::Fails(w) => write!(f, "fails at {w}"),
            Outcome::Inconclusive(w) => write!(f, "inconclusive: {w}"),
        }
    }
}
