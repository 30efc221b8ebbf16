use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, RngCore};

use crate::carriers::Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Kind {
    Semigroup,
    Monoid,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("operation table must be {n}x{n}, row {row} has {len} entries")]
    NotSquare { n: usize, row: usize, len: usize },
    #[error("table entry {value} out of range 0..{n}")]
    OutOfRange { value: usize, n: usize },
    #[error("conjugation table has {len} entries, expected {n}")]
    ConjLength { len: usize, n: usize },
    #[error("element name `{0}` is used twice")]
    DuplicateName(String),
    #[error("monoid `{0}` needs an identity element")]
    MissingIdentity(String),
    #[error("identity `{name}` of `{structure}` is not two-sided neutral")]
    IdentityNotNeutral { structure: String, name: String },
    #[error("subset of `{parent}` is not closed: {detail}")]
    NotClosed { parent: String, detail: String },
}

/// Result of asking a carrier for a two-sided additive inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseLookup {
    Found(Elem),
    /// The carrier knows the element has no inverse.
    Missing,
    /// The carrier cannot decide; callers fall back to search.
    Unknown,
}

/// A finite conjugation semigroup given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTable {
    names: Vec<String>,
    table: Vec<usize>,
    conj: Vec<usize>,
    identity: Option<usize>,
}

impl FiniteTable {
    pub fn new(
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        conj: Vec<usize>,
        identity: Option<usize>,
    ) -> Result<Self, StructureError> {
        let n = names.len();
        let mut seen = HashMap::new();
        for name in &names {
            if seen.insert(name.clone(), ()).is_some() {
                return Err(StructureError::DuplicateName(name.clone()));
            }
        }
        if table.len() != n {
            return Err(StructureError::NotSquare { n, row: table.len(), len: table.len() });
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(StructureError::NotSquare { n, row, len: entries.len() });
            }
        }
        if conj.len() != n {
            return Err(StructureError::ConjLength { len: conj.len(), n });
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        for &v in flat.iter().chain(conj.iter()).chain(identity.iter()) {
            if v >= n {
                return Err(StructureError::OutOfRange { value: v, n });
            }
        }
        Ok(FiniteTable { names, table: flat, conj, identity })
    }

    /// Tabulates closures over `0..names.len()`.
    pub fn from_fn(
        names: Vec<String>,
        op: impl Fn(usize, usize) -> usize,
        conj: impl Fn(usize) -> usize,
        identity: Option<usize>,
    ) -> Result<Self, StructureError> {
        let n = names.len();
        let table = (0..n).map(|i| (0..n).map(|j| op(i, j)).collect()).collect();
        let conj = (0..n).map(conj).collect();
        FiniteTable::new(names, table, conj, identity)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.len() + j]
    }

    pub fn conj(&self, i: usize) -> usize {
        self.conj[i]
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn row(&self, i: usize) -> &[usize] {
        let n = self.len();
        &self.table[i * n..(i + 1) * n]
    }

    /// True when every row and every column is a permutation of the
    /// carrier, i.e. the table is a Latin square.
    pub fn is_latin_square(&self) -> bool {
        let n = self.len();
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                seen[self.op(i, j)] = true;
            }
            if seen.iter().any(|s| !s) {
                return false;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                seen[self.op(j, i)] = true;
            }
            if seen.iter().any(|s| !s) {
                return false;
            }
        }
        true
    }
}

/// An infinite (or lazily enumerated) carrier given by effective maps.
pub trait Parametric: Send + Sync {
    fn describe(&self) -> String;
    fn op(&self, x: &Elem, y: &Elem) -> Elem;
    fn conj(&self, x: &Elem) -> Elem;
    fn identity(&self) -> Option<Elem>;
    fn contains(&self, x: &Elem) -> bool;
    fn sample(&self, rng: &mut dyn RngCore) -> Elem;

    /// Hand-picked elements that sampled runs visit before random draws.
    fn canonical(&self) -> Vec<Elem> {
        Vec::new()
    }

    /// The full carrier, when it is finite.
    fn elements(&self) -> Option<Vec<Elem>> {
        None
    }

    /// The first `size` elements of an enumerable infinite carrier.
    fn window(&self, _size: usize) -> Option<Vec<Elem>> {
        None
    }

    /// All `x` with `x + by = target`, when the carrier can solve this
    /// analytically.
    fn solve_right(&self, _target: &Elem, _by: &Elem) -> Option<Vec<Elem>> {
        None
    }

    fn inverse(&self, _x: &Elem) -> InverseLookup {
        InverseLookup::Unknown
    }

    fn show(&self, x: &Elem) -> String {
        x.to_string()
    }
}

pub enum Carrier {
    Table(FiniteTable),
    Parametric(Box<dyn Parametric>),
}

struct Inner {
    name: String,
    kind: Kind,
    carrier: Carrier,
    elements: OnceLock<Option<Arc<[Elem]>>>,
    index: OnceLock<Option<HashMap<Elem, usize>>>,
}

/// A conjugation semigroup or monoid `(S, +, ‾)`.
///
/// Cheap to clone; all clones share the same carrier.
#[derive(Clone)]
pub struct ConjStructure(Arc<Inner>);

impl ConjStructure {
    pub fn from_table(
        name: impl Into<String>,
        kind: Kind,
        table: FiniteTable,
    ) -> Result<Self, StructureError> {
        let name = name.into();
        if kind == Kind::Monoid {
            let e = table.identity().ok_or_else(|| StructureError::MissingIdentity(name.clone()))?;
            for i in 0..table.len() {
                if table.op(e, i) != i || table.op(i, e) != i {
                    return Err(StructureError::IdentityNotNeutral {
                        structure: name,
                        name: table.name(e).to_string(),
                    });
                }
            }
        }
        Ok(Self::wrap(name, kind, Carrier::Table(table)))
    }

    pub fn parametric(
        name: impl Into<String>,
        kind: Kind,
        carrier: impl Parametric + 'static,
    ) -> Result<Self, StructureError> {
        let name = name.into();
        if kind == Kind::Monoid && carrier.identity().is_none() {
            return Err(StructureError::MissingIdentity(name));
        }
        Ok(Self::wrap(name, kind, Carrier::Parametric(Box::new(carrier))))
    }

    fn wrap(name: String, kind: Kind, carrier: Carrier) -> Self {
        ConjStructure(Arc::new(Inner {
            name,
            kind,
            carrier,
            elements: OnceLock::new(),
            index: OnceLock::new(),
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn kind(&self) -> Kind {
        self.0.kind
    }

    pub fn is_monoid(&self) -> bool {
        self.0.kind == Kind::Monoid
    }

    pub fn carrier(&self) -> &Carrier {
        &self.0.carrier
    }

    pub fn table(&self) -> Option<&FiniteTable> {
        match &self.0.carrier {
            Carrier::Table(t) => Some(t),
            Carrier::Parametric(_) => None,
        }
    }

    /// Whether two handles refer to the same structure.
    pub fn same(&self, other: &ConjStructure) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn op(&self, x: &Elem, y: &Elem) -> Elem {
        match &self.0.carrier {
            Carrier::Table(t) => Elem::Idx(t.op(idx(x), idx(y))),
            Carrier::Parametric(p) => p.op(x, y),
        }
    }

    pub fn conj(&self, x: &Elem) -> Elem {
        match &self.0.carrier {
            Carrier::Table(t) => Elem::Idx(t.conj(idx(x))),
            Carrier::Parametric(p) => p.conj(x),
        }
    }

    /// Left-to-right sum of a non-empty sequence.
    pub fn sum(&self, terms: &[&Elem]) -> Elem {
        let (first, rest) = terms.split_first().expect("sum of no terms");
        rest.iter().fold((*first).clone(), |acc, t| self.op(&acc, t))
    }

    pub fn identity(&self) -> Option<Elem> {
        match &self.0.carrier {
            Carrier::Table(t) => t.identity().map(Elem::Idx),
            Carrier::Parametric(p) => p.identity(),
        }
    }

    /// The identity of a monoid. Panics on semigroups.
    pub fn zero(&self) -> Elem {
        self.identity().unwrap_or_else(|| panic!("`{}` has no identity", self.name()))
    }

    pub fn contains(&self, x: &Elem) -> bool {
        match &self.0.carrier {
            Carrier::Table(t) => matches!(x, Elem::Idx(i) if *i < t.len()),
            Carrier::Parametric(p) => p.contains(x),
        }
    }

    /// All elements in canonical order, for finite carriers.
    pub fn elements(&self) -> Option<Arc<[Elem]>> {
        self.0
            .elements
            .get_or_init(|| match &self.0.carrier {
                Carrier::Table(t) => Some((0..t.len()).map(Elem::Idx).collect()),
                Carrier::Parametric(p) => p.elements().map(Arc::from),
            })
            .clone()
    }

    pub fn is_finite(&self) -> bool {
        self.elements().is_some()
    }

    pub fn size(&self) -> Option<usize> {
        self.elements().map(|e| e.len())
    }

    /// Position of `x` in the canonical order of a finite carrier.
    pub fn index_of(&self, x: &Elem) -> Option<usize> {
        self.0
            .index
            .get_or_init(|| {
                self.elements()
                    .map(|els| els.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect())
            })
            .as_ref()
            .and_then(|m| m.get(x).copied())
    }

    /// Elements visited by a bounded window: the whole carrier when finite,
    /// otherwise the first `size` elements of its enumeration.
    pub fn window(&self, size: usize) -> Option<Vec<Elem>> {
        if let Some(els) = self.elements() {
            return Some(els.to_vec());
        }
        match &self.0.carrier {
            Carrier::Table(_) => unreachable!("tables are finite"),
            Carrier::Parametric(p) => p.window(size),
        }
    }

    pub fn sample(&self, rng: &mut dyn RngCore) -> Elem {
        match &self.0.carrier {
            Carrier::Table(t) => Elem::Idx(rng.gen_range(0..t.len().max(1))),
            Carrier::Parametric(p) => match p.elements() {
                Some(_) => {
                    let els = self.elements().expect("finite");
                    els[rng.gen_range(0..els.len())].clone()
                }
                None => p.sample(rng),
            },
        }
    }

    pub fn canonical(&self) -> Vec<Elem> {
        match &self.0.carrier {
            Carrier::Table(_) => Vec::new(),
            Carrier::Parametric(p) => p.canonical(),
        }
    }

    /// All `x` with `x + by = target`: by scan on finite carriers, by the
    /// carrier's own solver otherwise. `None` when neither is available.
    pub fn solve_right(&self, target: &Elem, by: &Elem) -> Option<Vec<Elem>> {
        if let Carrier::Parametric(p) = &self.0.carrier {
            if let Some(sols) = p.solve_right(target, by) {
                return Some(sols);
            }
        }
        let els = self.elements()?;
        Some(els.iter().filter(|x| &self.op(x, by) == target).cloned().collect())
    }

    /// Two-sided inverse of `x` with respect to the identity.
    pub fn inverse(&self, x: &Elem) -> InverseLookup {
        let Some(zero) = self.identity() else {
            return InverseLookup::Missing;
        };
        if let Carrier::Parametric(p) = &self.0.carrier {
            match p.inverse(x) {
                InverseLookup::Unknown => {}
                known => return known,
            }
        }
        match self.elements() {
            Some(els) => els
                .iter()
                .find(|y| self.op(x, y) == zero && self.op(y, x) == zero)
                .map(|y| InverseLookup::Found(y.clone()))
                .unwrap_or(InverseLookup::Missing),
            None => InverseLookup::Unknown,
        }
    }

    pub fn show(&self, x: &Elem) -> String {
        match &self.0.carrier {
            Carrier::Table(t) => match x {
                Elem::Idx(i) if *i < t.len() => t.name(*i).to_string(),
                other => other.to_string(),
            },
            Carrier::Parametric(p) => p.show(x),
        }
    }

    /// Looks up a finite element by its displayed name.
    pub fn parse(&self, text: &str) -> Option<Elem> {
        let text = text.trim();
        let els = self.elements()?;
        els.iter().find(|e| self.show(e) == text).cloned()
    }

    /// The Cayley table of a finite carrier in canonical order.
    pub fn tabulate(&self) -> Option<FiniteTable> {
        if let Some(t) = self.table() {
            return Some(t.clone());
        }
        let els = self.elements()?;
        let names: Vec<String> = els.iter().map(|e| self.show(e)).collect();
        let pos = |e: &Elem| self.index_of(e).expect("closed operation");
        let identity = self.identity().map(|e| pos(&e));
        // Displayed names can collide for exotic carriers; fall back to indices.
        let unique: std::collections::HashSet<&String> = names.iter().collect();
        let names = if unique.len() == names.len() {
            names
        } else {
            (0..els.len()).map(|i| format!("#{i}")).collect()
        };
        FiniteTable::from_fn(
            names,
            |i, j| pos(&self.op(&els[i], &els[j])),
            |i| pos(&self.conj(&els[i])),
            identity,
        )
        .ok()
    }

    pub fn summary(&self) -> String {
        let kind = match self.kind() {
            Kind::Semigroup => "semigroup",
            Kind::Monoid => "monoid",
        };
        match (&self.0.carrier, self.size()) {
            (Carrier::Table(_), Some(n)) => format!("{}: finite table, {n} elements, {kind}", self.name()),
            (Carrier::Parametric(p), Some(n)) => {
                format!("{}: {}, {n} elements, {kind}", self.name(), p.describe())
            }
            (Carrier::Parametric(p), None) => format!("{}: {}, infinite, {kind}", self.name(), p.describe()),
            (Carrier::Table(_), None) => unreachable!("tables are finite"),
        }
    }
}

fn idx(x: &Elem) -> usize {
    x.as_idx().unwrap_or_else(|| panic!("table structure applied to non-index element {x}"))
}

impl fmt::Debug for ConjStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}
