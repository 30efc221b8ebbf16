//! Enumerable infinite carriers: the naturals and free semigroups.

use rand::{Rng, RngCore};

use crate::algebra::{ConjStructure, InverseLookup, Kind, Parametric};
use crate::carriers::Elem;

/// Largest natural drawn by the sampler.
const NAT_SAMPLE_MAX: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NatOp {
    Add,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NatConj {
    /// `x̄ = 0`
    Zero,
    /// `x̄ = x`
    Identity,
    /// `x̄ = x + 1`, which is not a conjugation.
    Successor,
}

struct Naturals {
    op: NatOp,
    conj: NatConj,
}

fn nat(x: &Elem) -> u64 {
    x.as_nat().unwrap_or_else(|| panic!("natural-number carrier applied to {x}"))
}

impl Parametric for Naturals {
    fn describe(&self) -> String {
        let op = match self.op {
            NatOp::Add => "addition",
            NatOp::Max => "max",
        };
        let conj = match self.conj {
            NatConj::Zero => "x̄=0",
            NatConj::Identity => "x̄=x",
            NatConj::Successor => "x̄=x+1",
        };
        format!("naturals under {op}, {conj}")
    }

    fn op(&self, x: &Elem, y: &Elem) -> Elem {
        Elem::Nat(match self.op {
            NatOp::Add => nat(x) + nat(y),
            NatOp::Max => nat(x).max(nat(y)),
        })
    }

    fn conj(&self, x: &Elem) -> Elem {
        Elem::Nat(match self.conj {
            NatConj::Zero => 0,
            NatConj::Identity => nat(x),
            NatConj::Successor => nat(x) + 1,
        })
    }

    fn identity(&self) -> Option<Elem> {
        Some(Elem::Nat(0))
    }

    fn contains(&self, x: &Elem) -> bool {
        x.as_nat().is_some()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Elem {
        Elem::Nat(rng.gen_range(0..=NAT_SAMPLE_MAX))
    }

    fn canonical(&self) -> Vec<Elem> {
        (0..3).map(Elem::Nat).collect()
    }

    fn window(&self, size: usize) -> Option<Vec<Elem>> {
        Some((0..size as u64).map(Elem::Nat).collect())
    }

    fn solve_right(&self, target: &Elem, by: &Elem) -> Option<Vec<Elem>> {
        let (t, b) = (nat(target), nat(by));
        Some(match self.op {
            NatOp::Add => t.checked_sub(b).map(Elem::Nat).into_iter().collect(),
            NatOp::Max if t > b => vec![Elem::Nat(t)],
            NatOp::Max if t == b => (0..=t).map(Elem::Nat).collect(),
            NatOp::Max => Vec::new(),
        })
    }

    fn inverse(&self, x: &Elem) -> InverseLookup {
        if nat(x) == 0 {
            InverseLookup::Found(Elem::Nat(0))
        } else {
            InverseLookup::Missing
        }
    }
}

/// `(ℕ, +)` or `(ℕ, max)` with the chosen unary operation. Bounded windows
/// enumerate `0..size`.
pub fn naturals(op: NatOp, conj: NatConj) -> ConjStructure {
    let name = match (op, conj) {
        (NatOp::Add, NatConj::Zero) => "N",
        (NatOp::Add, NatConj::Identity) => "N[conj=id]",
        (NatOp::Add, NatConj::Successor) => "N[conj=succ]",
        (NatOp::Max, NatConj::Zero) => "Nmax[conj=0]",
        (NatOp::Max, NatConj::Identity) => "Nmax",
        (NatOp::Max, NatConj::Successor) => "Nmax[conj=succ]",
    };
    ConjStructure::parametric(name, Kind::Monoid, Naturals { op, conj }).expect("naturals")
}

struct FreeSemigroup {
    alphabet: Vec<char>,
}

impl FreeSemigroup {
    fn word<'a>(&self, x: &'a Elem) -> &'a str {
        x.as_word().unwrap_or_else(|| panic!("free semigroup applied to {x}"))
    }
}

impl Parametric for FreeSemigroup {
    fn describe(&self) -> String {
        let letters: String = self.alphabet.iter().collect();
        format!("free semigroup on {{{letters}}}, conjugation reverses words")
    }

    fn op(&self, x: &Elem, y: &Elem) -> Elem {
        Elem::Word(format!("{}{}", self.word(x), self.word(y)))
    }

    fn conj(&self, x: &Elem) -> Elem {
        Elem::Word(self.word(x).chars().rev().collect())
    }

    fn identity(&self) -> Option<Elem> {
        None
    }

    fn contains(&self, x: &Elem) -> bool {
        matches!(x, Elem::Word(w) if !w.is_empty() && w.chars().all(|c| self.alphabet.contains(&c)))
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Elem {
        let len = rng.gen_range(1..=4);
        Elem::Word((0..len).map(|_| self.alphabet[rng.gen_range(0..self.alphabet.len())]).collect())
    }

    fn canonical(&self) -> Vec<Elem> {
        self.alphabet.iter().map(|c| Elem::Word(c.to_string())).collect()
    }

    /// Words in shortlex order.
    fn window(&self, size: usize) -> Option<Vec<Elem>> {
        let mut out = Vec::new();
        let mut layer: Vec<String> = vec![String::new()];
        while out.len() < size {
            let next: Vec<String> = layer
                .iter()
                .flat_map(|w| self.alphabet.iter().map(move |c| format!("{w}{c}")))
                .collect();
            out.extend(next.iter().take(size - out.len()).cloned().map(Elem::Word));
            layer = next;
        }
        Some(out)
    }

    fn solve_right(&self, target: &Elem, by: &Elem) -> Option<Vec<Elem>> {
        let (t, b) = (self.word(target), self.word(by));
        Some(match t.strip_suffix(b) {
            Some(x) if !x.is_empty() => vec![Elem::Word(x.to_string())],
            _ => Vec::new(),
        })
    }

    fn show(&self, x: &Elem) -> String {
        self.word(x).to_string()
    }
}

/// The free semigroup on `alphabet` with word reversal. Not a conjugation
/// semigroup; used as a control case.
pub fn free_semigroup(alphabet: &str) -> ConjStructure {
    let alphabet: Vec<char> = alphabet.chars().collect();
    assert!(!alphabet.is_empty(), "empty alphabet");
    let name = format!("Free{{{}}}", alphabet.iter().collect::<String>());
    ConjStructure::parametric(name, Kind::Semigroup, FreeSemigroup { alphabet }).expect("free semigroup")
}
