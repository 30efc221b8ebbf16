use std::fmt;
use std::sync::{Arc, OnceLock};

use super::law::Law;
use super::structure::ConjStructure;
use super::verdict::Verdict;
use crate::carriers::{Elem, EnumerationPlan, PlanError};

pub type MapFn = Arc<dyn Fn(&Elem) -> Elem + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error("monoid homomorphism `{name}` requested between `{source_name}` and `{target}`, which are not both monoids")]
    SourceTargetKindMismatch { name: String, source_name: String, target: String },
    #[error("table for `{name}` has {got} images, source has {expected} elements")]
    TableSize { name: String, expected: usize, got: usize },
    #[error("`{name}` needs a finite source to be given by a table")]
    InfiniteSource { name: String },
    #[error("cannot compose `{outer}` after `{inner}`: target `{mid}` is not the source of `{outer}`")]
    NotComposable { outer: String, inner: String, mid: String },
    #[error(transparent)]
    Plan(#[from] PlanError),
}

struct HomInner {
    name: String,
    source: ConjStructure,
    target: ConjStructure,
    map: MapFn,
    monoid: bool,
    verified: OnceLock<(EnumerationPlan, Verdict)>,
}

/// A map between conjugation structures, expected to preserve the
/// operation, conjugation and (between monoids) the identity.
#[derive(Clone)]
pub struct Hom(Arc<HomInner>);

impl Hom {
    /// A map that is checked as a monoid homomorphism exactly when both
    /// ends are monoids.
    pub fn new(
        name: impl Into<String>,
        source: &ConjStructure,
        target: &ConjStructure,
        map: impl Fn(&Elem) -> Elem + Send + Sync + 'static,
    ) -> Hom {
        let monoid = source.is_monoid() && target.is_monoid();
        Hom::build(name.into(), source, target, Arc::new(map), monoid)
    }

    pub fn monoid_hom(
        name: impl Into<String>,
        source: &ConjStructure,
        target: &ConjStructure,
        map: impl Fn(&Elem) -> Elem + Send + Sync + 'static,
    ) -> Result<Hom, HomError> {
        let name = name.into();
        if !(source.is_monoid() && target.is_monoid()) {
            return Err(HomError::SourceTargetKindMismatch {
                name,
                source_name: source.name().to_string(),
                target: target.name().to_string(),
            });
        }
        Ok(Hom::build(name, source, target, Arc::new(map), true))
    }

    fn build(name: String, source: &ConjStructure, target: &ConjStructure, map: MapFn, monoid: bool) -> Hom {
        Hom(Arc::new(HomInner {
            name,
            source: source.clone(),
            target: target.clone(),
            map,
            monoid,
            verified: OnceLock::new(),
        }))
    }

    /// `images[i]` is the image of the `i`-th element of the finite source.
    pub fn from_table(
        name: impl Into<String>,
        source: &ConjStructure,
        target: &ConjStructure,
        images: Vec<Elem>,
    ) -> Result<Hom, HomError> {
        let name = name.into();
        let expected = source.size().ok_or_else(|| HomError::InfiniteSource { name: name.clone() })?;
        if images.len() != expected {
            return Err(HomError::TableSize { name, expected, got: images.len() });
        }
        let src = source.clone();
        Ok(Hom::new(name, source, target, move |x| {
            let i = src.index_of(x).unwrap_or_else(|| panic!("{x} is not in `{}`", src.name()));
            images[i].clone()
        }))
    }

    pub fn identity(s: &ConjStructure) -> Hom {
        Hom::new(format!("id_{}", s.name()), s, s, |x| x.clone())
    }

    /// The constant map onto the identity of a monoid.
    pub fn zero(source: &ConjStructure, target: &ConjStructure) -> Hom {
        let z = target.zero();
        Hom::new(format!("0:{}->{}", source.name(), target.name()), source, target, move |_| z.clone())
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &Hom, inner: &Hom) -> Result<Hom, HomError> {
        if !inner.target().same(outer.source()) {
            return Err(HomError::NotComposable {
                outer: outer.name().to_string(),
                inner: inner.name().to_string(),
                mid: inner.target().name().to_string(),
            });
        }
        let (o, i) = (outer.clone(), inner.clone());
        Ok(Hom::new(
            format!("{}∘{}", outer.name(), inner.name()),
            inner.source(),
            outer.target(),
            move |x| o.apply(&i.apply(x)),
        ))
    }

    pub fn renamed(&self, name: impl Into<String>) -> Hom {
        Hom::build(name.into(), &self.0.source, &self.0.target, self.0.map.clone(), self.0.monoid)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn source(&self) -> &ConjStructure {
        &self.0.source
    }

    pub fn target(&self) -> &ConjStructure {
        &self.0.target
    }

    pub fn is_monoid_hom(&self) -> bool {
        self.0.monoid
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        (self.0.map)(x)
    }

    /// Images of the source elements in canonical order.
    pub fn images(&self) -> Option<Vec<Elem>> {
        Some(self.source().elements()?.iter().map(|x| self.apply(x)).collect())
    }

    /// Well-definedness, additivity, conjugation preservation and, for
    /// monoid homs, preservation of the identity.
    pub fn laws(&self) -> Vec<Law> {
        let (s, t) = (self.source().clone(), self.target().clone());
        let name = self.name().to_string();
        let mut laws = Vec::new();
        let h = self.clone();
        let tt = t.clone();
        laws.push(Law::new(format!("{name}: lands in target"), &[("x", &s)], move |e| {
            let y = h.apply(&e[0]);
            if tt.contains(&y) { Ok(()) } else { Err(format!("image {y} is outside `{}`", tt.name())) }
        }));
        let (h1, h2, s1, t1) = (self.clone(), self.clone(), s.clone(), t.clone());
        laws.push(Law::equation(
            format!("{name}: additive"),
            &[("x", &s), ("y", &s)],
            &t,
            move |e| h1.apply(&s1.op(&e[0], &e[1])),
            move |e| t1.op(&h2.apply(&e[0]), &h2.apply(&e[1])),
        ));
        let (h1, h2, s1, t1) = (self.clone(), self.clone(), s.clone(), t.clone());
        laws.push(Law::equation(
            format!("{name}: preserves conjugation"),
            &[("x", &s)],
            &t,
            move |e| h1.apply(&s1.conj(&e[0])),
            move |e| t1.conj(&h2.apply(&e[0])),
        ));
        if self.is_monoid_hom() {
            let (h1, s1, t1) = (self.clone(), s.clone(), t.clone());
            laws.push(Law::equation(
                format!("{name}: preserves identity"),
                &[],
                &t,
                move |_| h1.apply(&s1.zero()),
                move |_| t1.zero(),
            ));
        }
        laws
    }

    /// The verdict cached by the first call to [`verify_hom`], if any.
    pub fn cached_verdict(&self) -> Option<&(EnumerationPlan, Verdict)> {
        self.0.verified.get()
    }
}

/// Checks that `h` is a homomorphism under `plan`. The first result is
/// cached on the hom; later calls with the same plan reuse it.
pub fn verify_hom(h: &Hom, plan: &EnumerationPlan) -> Result<Verdict, HomError> {
    if h.is_monoid_hom() && !(h.source().is_monoid() && h.target().is_monoid()) {
        return Err(HomError::SourceTargetKindMismatch {
            name: h.name().to_string(),
            source_name: h.source().name().to_string(),
            target: h.target().name().to_string(),
        });
    }
    if let Some((p, v)) = h.cached_verdict() {
        if p == plan {
            return Ok(v.clone());
        }
    }
    let verdicts = h.laws().iter().map(|l| l.check(plan)).collect::<Result<Vec<_>, _>>()?;
    let v = Verdict::all(format!("{}: homomorphism", h.name()), &verdicts);
    let _ = h.0.verified.set((*plan, v.clone()));
    Ok(v)
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom({}: {} -> {})", self.name(), self.source().name(), self.target().name())
    }
}
