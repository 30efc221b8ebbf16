//! Universally quantified laws and the engine that instantiates them under
//! an [`EnumerationPlan`].

use std::fmt;
use std::sync::Arc;

use super::structure::ConjStructure;
use super::verdict::{Outcome, Verdict, Witness};
use crate::carriers::plan::tuple_rng;
use crate::carriers::{Elem, EnumerationPlan, PlanError};

pub type Pred = dyn Fn(&[Elem]) -> Result<(), String> + Send + Sync;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("law `{law}` takes {expected} elements, got {got}")]
    Arity { law: String, expected: usize, got: usize },
    #[error("element {elem} is not in the carrier `{structure}` of variable `{var}`")]
    NotMember { var: String, structure: String, elem: Elem },
}

/// `∀ vars. pred(vars)`, where each variable ranges over a structure.
#[derive(Clone)]
pub struct Law {
    name: String,
    vars: Vec<(String, ConjStructure)>,
    pred: Arc<Pred>,
}

impl Law {
    pub fn new(
        name: impl Into<String>,
        vars: &[(&str, &ConjStructure)],
        pred: impl Fn(&[Elem]) -> Result<(), String> + Send + Sync + 'static,
    ) -> Self {
        Law {
            name: name.into(),
            vars: vars.iter().map(|(v, s)| (v.to_string(), (*s).clone())).collect(),
            pred: Arc::new(pred),
        }
    }

    /// `lhs(vars) = rhs(vars)` with both sides valued in `target`.
    pub fn equation(
        name: impl Into<String>,
        vars: &[(&str, &ConjStructure)],
        target: &ConjStructure,
        lhs: impl Fn(&[Elem]) -> Elem + Send + Sync + 'static,
        rhs: impl Fn(&[Elem]) -> Elem + Send + Sync + 'static,
    ) -> Self {
        let target = target.clone();
        Law::new(name, vars, move |e| {
            let (l, r) = (lhs(e), rhs(e));
            if l == r {
                Ok(())
            } else {
                Err(format!("lhs = {} but rhs = {}", target.show(&l), target.show(&r)))
            }
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[(String, ConjStructure)] {
        &self.vars
    }

    fn witness(&self, elems: &[Elem], detail: String) -> Witness {
        Witness {
            law: self.name.clone(),
            vars: self.vars.iter().map(|(v, _)| v.clone()).collect(),
            elems: elems.to_vec(),
            shown: self.vars.iter().zip(elems).map(|((_, s), e)| s.show(e)).collect(),
            detail,
        }
    }

    /// Evaluates the law on one tuple; `Some` when it is violated.
    pub fn replay(&self, elems: &[Elem]) -> Result<Option<Witness>, ReplayError> {
        if elems.len() != self.vars.len() {
            return Err(ReplayError::Arity { law: self.name.clone(), expected: self.vars.len(), got: elems.len() });
        }
        for ((var, s), e) in self.vars.iter().zip(elems) {
            if !s.contains(e) {
                return Err(ReplayError::NotMember {
                    var: var.clone(),
                    structure: s.name().to_string(),
                    elem: e.clone(),
                });
            }
        }
        Ok((self.pred)(elems).err().map(|d| self.witness(elems, d)))
    }

    /// Instantiates the law under `plan`. Enumerated plans visit tuples in
    /// lexicographic order of the carriers' canonical orders, so the first
    /// failure is the smallest witness. Sampled plans visit the product of
    /// the carriers' canonical elements first, then seeded random tuples.
    pub fn check(&self, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
        match *plan {
            EnumerationPlan::Exhaustive => {
                let domains = self
                    .vars
                    .iter()
                    .map(|(_, s)| s.elements().map(|e| e.to_vec()).ok_or_else(|| PlanError::ExhaustiveOnInfinite(s.name().to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(self.enumerate(&domains, Outcome::HoldsExhaustive))
            }
            EnumerationPlan::BoundedWindow { size } => {
                let domains = self
                    .vars
                    .iter()
                    .map(|(_, s)| s.window(size).ok_or_else(|| PlanError::NotEnumerable(s.name().to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                let all_finite = self.vars.iter().all(|(_, s)| s.is_finite());
                let outcome = if all_finite { Outcome::HoldsExhaustive } else { Outcome::HoldsBounded { window: size } };
                Ok(self.enumerate(&domains, outcome))
            }
            EnumerationPlan::Sampled { count, seed } => Ok(self.sample(count, seed)),
        }
    }

    fn enumerate(&self, domains: &[Vec<Elem>], pass: Outcome) -> Verdict {
        let mut checked = 0u64;
        if domains.iter().any(|d| d.is_empty()) {
            return Verdict::new(&self.name, 0, pass);
        }
        let mut digits = vec![0usize; domains.len()];
        let mut tuple: Vec<Elem> = domains.iter().map(|d| d[0].clone()).collect();
        loop {
            checked += 1;
            if let Err(detail) = (self.pred)(&tuple) {
                return Verdict::failure(&self.name, checked, self.witness(&tuple, detail));
            }
            // Advance the mixed-radix counter, last variable fastest.
            let mut pos = digits.len();
            loop {
                if pos == 0 {
                    return Verdict::new(&self.name, checked, pass);
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < domains[pos].len() {
                    tuple[pos] = domains[pos][digits[pos]].clone();
                    break;
                }
                digits[pos] = 0;
                tuple[pos] = domains[pos][0].clone();
            }
        }
    }

    fn sample(&self, count: usize, seed: u64) -> Verdict {
        if self.vars.iter().any(|(_, s)| s.size() == Some(0)) {
            return Verdict::new(&self.name, 0, Outcome::HoldsSampled { count, seed });
        }
        let grid: Vec<Vec<Elem>> = self.vars.iter().map(|(_, s)| s.canonical()).collect();
        let grid_size = if grid.iter().any(|g| g.is_empty()) {
            0
        } else {
            grid.iter().try_fold(1usize, |acc, g| acc.checked_mul(g.len())).unwrap_or(usize::MAX)
        };
        for index in 0..count {
            let tuple: Vec<Elem> = if index < grid_size {
                let mut rest = index;
                let mut t = vec![Elem::Nat(0); grid.len()];
                for (slot, g) in t.iter_mut().zip(&grid).rev() {
                    *slot = g[rest % g.len()].clone();
                    rest /= g.len();
                }
                t
            } else {
                let mut rng = tuple_rng(seed, index as u64);
                self.vars.iter().map(|(_, s)| s.sample(&mut rng)).collect()
            };
            if let Err(detail) = (self.pred)(&tuple) {
                return Verdict::failure(&self.name, index as u64 + 1, self.witness(&tuple, detail));
            }
        }
        Verdict::new(&self.name, count as u64, Outcome::HoldsSampled { count, seed })
    }
}

impl fmt::Debug for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.vars.iter().map(|(v, s)| format!("{v} ∈ {}", s.name())).collect();
        write!(f, "Law({}: ∀ {})", self.name, vars.join(", "))
    }
}

/// Runs each law under `plan`, in order.
pub fn check_all(laws: &[Law], plan: &EnumerationPlan) -> Result<Vec<Verdict>, PlanError> {
    laws.iter().map(|l| l.check(plan)).collect()
}
