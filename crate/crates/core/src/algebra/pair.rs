//! Carriers built from other structures: pairs (direct, semidirect, or
//! cut down by a membership predicate) and finite substructures.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, RngCore};

use super::structure::{ConjStructure, InverseLookup, Kind, Parametric, StructureError};
use crate::carriers::Elem;

pub type ActFn = Arc<dyn Fn(&Elem, &Elem) -> Elem + Send + Sync>;
pub type PredFn = Arc<dyn Fn(&Elem) -> bool + Send + Sync>;
pub type SamplerFn = Arc<dyn Fn(&mut dyn RngCore) -> Elem + Send + Sync>;

/// Tries before rejection sampling of a predicate-restricted pair carrier
/// gives up.
const REJECTION_TRIES: usize = 10_000;

/// Pairs `(l, r)` with either the componentwise structure or, when an
/// action `r·l` is supplied, the semidirect structure
/// `(x₁,b₁)+(x₂,b₂) = (x₁ + b₁·x₂, b₁+b₂)`, `conj(x,b) = (b̄·x̄, b̄)`.
#[derive(Clone)]
pub struct PairCarrier {
    left: ConjStructure,
    right: ConjStructure,
    action: Option<ActFn>,
    member: Option<PredFn>,
    sampler: Option<SamplerFn>,
    canonical: Option<Arc<dyn Fn() -> Vec<Elem> + Send + Sync>>,
}

impl PairCarrier {
    pub fn direct(left: &ConjStructure, right: &ConjStructure) -> Self {
        PairCarrier {
            left: left.clone(),
            right: right.clone(),
            action: None,
            member: None,
            sampler: None,
            canonical: None,
        }
    }

    /// `act(b, x)` is `b·x`, with `b` from `right` acting on `x` from `left`.
    pub fn semidirect(
        left: &ConjStructure,
        right: &ConjStructure,
        act: impl Fn(&Elem, &Elem) -> Elem + Send + Sync + 'static,
    ) -> Self {
        PairCarrier { action: Some(Arc::new(act)), ..PairCarrier::direct(left, right) }
    }

    /// Restricts the carrier to pairs satisfying `pred`. The structure is
    /// only well defined when the predicate is closed under the operations.
    pub fn with_member(mut self, pred: impl Fn(&Elem) -> bool + Send + Sync + 'static) -> Self {
        self.member = Some(Arc::new(pred));
        self
    }

    pub fn with_sampler(mut self, sampler: impl Fn(&mut dyn RngCore) -> Elem + Send + Sync + 'static) -> Self {
        self.sampler = Some(Arc::new(sampler));
        self
    }

    pub fn with_canonical(mut self, canonical: impl Fn() -> Vec<Elem> + Send + Sync + 'static) -> Self {
        self.canonical = Some(Arc::new(canonical));
        self
    }

    pub fn into_structure(self, name: impl Into<String>) -> Result<ConjStructure, StructureError> {
        let kind = if self.left.is_monoid() && self.right.is_monoid() { Kind::Monoid } else { Kind::Semigroup };
        ConjStructure::parametric(name, kind, self)
    }

    fn act(&self, b: &Elem, x: &Elem) -> Elem {
        match &self.action {
            Some(act) => act(b, x),
            None => x.clone(),
        }
    }

    fn admits(&self, p: &Elem) -> bool {
        self.member.as_ref().map_or(true, |m| m(p))
    }

    fn product(&self, ls: &[Elem], rs: &[Elem]) -> Vec<Elem> {
        let mut out = Vec::new();
        for l in ls {
            for r in rs {
                let p = Elem::pair(l.clone(), r.clone());
                if self.admits(&p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

impl Parametric for PairCarrier {
    fn describe(&self) -> String {
        let shape = if self.action.is_some() { "semidirect" } else { "direct" };
        let restricted = if self.member.is_some() { ", restricted" } else { "" };
        format!("{shape} pairs over {} and {}{restricted}", self.left.name(), self.right.name())
    }

    fn op(&self, p: &Elem, q: &Elem) -> Elem {
        let (x1, b1) = (p.fst(), p.snd());
        let (x2, b2) = (q.fst(), q.snd());
        Elem::pair(self.left.op(x1, &self.act(b1, x2)), self.right.op(b1, b2))
    }

    fn conj(&self, p: &Elem) -> Elem {
        let bc = self.right.conj(p.snd());
        Elem::pair(self.act(&bc, &self.left.conj(p.fst())), bc)
    }

    fn identity(&self) -> Option<Elem> {
        Some(Elem::pair(self.left.identity()?, self.right.identity()?))
    }

    fn contains(&self, p: &Elem) -> bool {
        match p.as_pair() {
            Some((l, r)) => self.left.contains(l) && self.right.contains(r) && self.admits(p),
            None => false,
        }
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Elem {
        if let Some(s) = &self.sampler {
            return s(rng);
        }
        if let Some(els) = self.elements() {
            return els[rng.gen_range(0..els.len())].clone();
        }
        for _ in 0..REJECTION_TRIES {
            let p = Elem::pair(self.left.sample(rng), self.right.sample(rng));
            if self.admits(&p) {
                return p;
            }
        }
        panic!("no admissible pair after {REJECTION_TRIES} draws; supply a sampler")
    }

    fn canonical(&self) -> Vec<Elem> {
        match &self.canonical {
            Some(c) => c(),
            None => self.product(&self.left.canonical(), &self.right.canonical()),
        }
    }

    fn elements(&self) -> Option<Vec<Elem>> {
        Some(self.product(&self.left.elements()?, &self.right.elements()?))
    }

    fn window(&self, size: usize) -> Option<Vec<Elem>> {
        Some(self.product(&self.left.window(size)?, &self.right.window(size)?))
    }

    fn solve_right(&self, target: &Elem, by: &Elem) -> Option<Vec<Elem>> {
        // (x,b) + (u,v) = (t,w)  ⇔  b + v = w  and  x + b·u = t
        let mut out = Vec::new();
        for b in self.right.solve_right(target.snd(), by.snd())? {
            let bu = self.act(&b, by.fst());
            for x in self.left.solve_right(target.fst(), &bu)? {
                let p = Elem::pair(x, b.clone());
                if self.admits(&p) {
                    out.push(p);
                }
            }
        }
        Some(out)
    }

    fn inverse(&self, p: &Elem) -> InverseLookup {
        let zero = match self.identity() {
            Some(z) => z,
            None => return InverseLookup::Missing,
        };
        let b_inv = match self.right.inverse(p.snd()) {
            InverseLookup::Found(b) => b,
            other => return other,
        };
        let x_inv = match self.left.inverse(p.fst()) {
            InverseLookup::Found(x) => self.act(&b_inv, &x),
            other => return other,
        };
        let q = Elem::pair(x_inv, b_inv);
        if self.admits(&q) && self.op(p, &q) == zero && self.op(&q, p) == zero {
            InverseLookup::Found(q)
        } else {
            InverseLookup::Unknown
        }
    }

    fn show(&self, p: &Elem) -> String {
        match p.as_pair() {
            Some((l, r)) => format!("({}, {})", self.left.show(l), self.right.show(r)),
            None => p.to_string(),
        }
    }
}

/// A finite subset of a structure closed under the operation and
/// conjugation, e.g. a kernel `f⁻¹(0)`.
pub struct SubCarrier {
    parent: ConjStructure,
    members: Vec<Elem>,
    set: HashSet<Elem>,
}

impl SubCarrier {
    pub fn new(parent: &ConjStructure, members: Vec<Elem>) -> Result<Self, StructureError> {
        let set: HashSet<Elem> = members.iter().cloned().collect();
        for x in &members {
            let c = parent.conj(x);
            if !set.contains(&c) {
                return Err(StructureError::NotClosed {
                    parent: parent.name().to_string(),
                    detail: format!("conj({}) = {}", parent.show(x), parent.show(&c)),
                });
            }
            for y in &members {
                let s = parent.op(x, y);
                if !set.contains(&s) {
                    return Err(StructureError::NotClosed {
                        parent: parent.name().to_string(),
                        detail: format!("{} + {} = {}", parent.show(x), parent.show(y), parent.show(&s)),
                    });
                }
            }
        }
        Ok(SubCarrier { parent: parent.clone(), members, set })
    }

    pub fn into_structure(self, name: impl Into<String>) -> Result<ConjStructure, StructureError> {
        let kind = match self.parent.identity() {
            Some(z) if self.parent.is_monoid() && self.set.contains(&z) => Kind::Monoid,
            _ => Kind::Semigroup,
        };
        ConjStructure::parametric(name, kind, self)
    }
}

impl Parametric for SubCarrier {
    fn describe(&self) -> String {
        format!("substructure of {}", self.parent.name())
    }

    fn op(&self, x: &Elem, y: &Elem) -> Elem {
        self.parent.op(x, y)
    }

    fn conj(&self, x: &Elem) -> Elem {
        self.parent.conj(x)
    }

    fn identity(&self) -> Option<Elem> {
        self.parent.identity().filter(|z| self.set.contains(z))
    }

    fn contains(&self, x: &Elem) -> bool {
        self.set.contains(x)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Elem {
        self.members[rng.gen_range(0..self.members.len())].clone()
    }

    fn elements(&self) -> Option<Vec<Elem>> {
        Some(self.members.clone())
    }

    fn show(&self, x: &Elem) -> String {
        self.parent.show(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::structure::FiniteTable;

    fn cyclic(n: usize) -> ConjStructure {
        let names = (0..n).map(|i| i.to_string()).collect();
        let t = FiniteTable::from_fn(names, |i, j| (i + j) % n, |i| (n - i) % n, Some(0)).unwrap();
        ConjStructure::from_table(format!("Z{n}"), Kind::Monoid, t).unwrap()
    }

    #[test]
    fn direct_product_is_componentwise() {
        let (z3, z2) = (cyclic(3), cyclic(2));
        let p = PairCarrier::direct(&z3, &z2).into_structure("Z3xZ2").unwrap();
        assert_eq!(p.size(), Some(6));
        let a = Elem::pair(Elem::Idx(2), Elem::Idx(1));
        assert_eq!(p.op(&a, &a), Elem::pair(Elem::Idx(1), Elem::Idx(0)));
        assert_eq!(p.conj(&a), Elem::pair(Elem::Idx(1), Elem::Idx(1)));
        assert_eq!(p.show(&a), "(2, 1)");
        assert_eq!(p.parse("(2, 1)"), Some(a));
    }

    #[test]
    fn semidirect_with_inversion_is_nonabelian() {
        let (z3, z2) = (cyclic(3), cyclic(2));
        let act = |b: &Elem, x: &Elem| {
            if b.as_idx() == Some(1) {
                Elem::Idx((3 - x.as_idx().unwrap()) % 3)
            } else {
                x.clone()
            }
        };
        let s = PairCarrier::semidirect(&z3, &z2, act).into_structure("Z3:Z2").unwrap();
        let x = Elem::pair(Elem::Idx(1), Elem::Idx(0));
        let b = Elem::pair(Elem::Idx(0), Elem::Idx(1));
        assert_ne!(s.op(&x, &b), s.op(&b, &x));
        assert!(s.tabulate().unwrap().is_latin_square());
        for p in s.elements().unwrap().iter() {
            match s.inverse(p) {
                InverseLookup::Found(q) => assert_eq!(s.op(p, &q), s.zero()),
                other => panic!("no inverse for {p}: {other:?}"),
            }
        }
    }

    #[test]
    fn restricted_pairs_and_substructures() {
        let z4 = cyclic(4);
        let diag = PairCarrier::direct(&z4, &z4)
            .with_member(|p| p.fst() == p.snd())
            .into_structure("diag")
            .unwrap();
        assert_eq!(diag.size(), Some(4));
        let even = SubCarrier::new(&z4, vec![Elem::Idx(0), Elem::Idx(2)]).unwrap().into_structure("2Z4").unwrap();
        assert!(even.is_monoid());
        assert!(SubCarrier::new(&z4, vec![Elem::Idx(0), Elem::Idx(1)]).is_err());
    }
}
