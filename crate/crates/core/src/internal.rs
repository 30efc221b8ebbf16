//! Reflexive graphs, internal categories and internal groupoids induced by
//! a Schreier extension together with a morphism `h: X → B`.

use std::fmt;

use crate::algebra::{
    check_all, extend_from_forced, find_inverse, verify_hom, ConjStructure, ExtendError, Extension, Hom, HomError,
    InverseLookup, Law, Outcome, PairCarrier, StructureError, Verdict, Witness, DEFAULT_EXTENSION_BOUND,
};
use crate::carriers::{Elem, EnumerationPlan, PlanError};
use crate::schreier::{action_from_extension, ExternalAction, SchreierError, SchreierExtension};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InternalError {
    #[error("malformed crossed data: {0}")]
    Malformed(String),
    #[error("h is not equivariant: {0}")]
    EquivarianceFailed(Witness),
    #[error("Peiffer identity fails: {0}")]
    PeifferFailed(Witness),
    #[error("kernel is not a group: {0}")]
    KernelNotGroup(Witness),
    #[error("induced map is not a homomorphism: {0}")]
    NotHom(Witness),
    #[error(transparent)]
    Schreier(#[from] SchreierError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Extend(#[from] ExtendError),
}

/// A Schreier extension `X → A ⇄ B`, a morphism `h: X → B` and the action
/// of `B` on `X` read off the extension.
#[derive(Clone)]
pub struct CrossedData {
    pub e: SchreierExtension,
    pub h: Hom,
    pub phi: ExternalAction,
}

impl fmt::Debug for CrossedData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CrossedData({:?}, h = {})", self.e, self.h.name())
    }
}

fn matches(a: &ConjStructure, b: &ConjStructure) -> bool {
    a.same(b) || a.name() == b.name()
}

impl CrossedData {
    pub fn new(e: SchreierExtension, h: Hom) -> Result<Self, InternalError> {
        if !matches(h.source(), &e.x) || !matches(h.target(), &e.b) {
            return Err(InternalError::Malformed(format!(
                "h: {} -> {} does not go from the kernel `{}` to the base `{}`",
                h.source().name(),
                h.target().name(),
                e.x.name(),
                e.b.name()
            )));
        }
        let phi = action_from_extension(&e)?;
        Ok(CrossedData { e, h, phi })
    }

    pub fn plan(&self) -> EnumerationPlan {
        *self.e.plan()
    }

    /// `h̃(a) = h(q(a)) + f(a)`.
    pub fn h_tilde(&self, a: &Elem) -> Elem {
        self.e.b.op(&self.h.apply(&self.e.q(a)), &self.e.f.apply(a))
    }
}

fn witness(law: &str, vars: &[&str], elems: Vec<Elem>, shown: Vec<String>, detail: impl Into<String>) -> Witness {
    Witness {
        law: law.into(),
        vars: vars.iter().map(|v| v.to_string()).collect(),
        elems,
        shown,
        detail: detail.into(),
    }
}

/// `h(b·x) + b = b + h(x)`.
pub fn equivariance_law(d: &CrossedData) -> Law {
    let (p, q) = (d.clone(), d.clone());
    Law::equation(
        "equivariance",
        &[("b", &d.e.b), ("x", &d.e.x)],
        &d.e.b,
        move |v| p.e.b.op(&p.h.apply(&p.phi.act(&v[0], &v[1])), &v[0]),
        move |v| q.e.b.op(&v[0], &q.h.apply(&v[1])),
    )
}

/// `h(y)·x + y = y + x`.
pub fn peiffer_law(d: &CrossedData) -> Law {
    let (p, q) = (d.clone(), d.clone());
    Law::equation(
        "peiffer",
        &[("x", &d.e.x), ("y", &d.e.x)],
        &d.e.x,
        move |v| p.e.x.op(&p.phi.act(&p.h.apply(&v[1]), &v[0]), &v[1]),
        move |v| q.e.x.op(&v[1], &v[0]),
    )
}

/// Every `x` has a two-sided inverse and `−x̄ = conj(−x)`. Inverses come
/// from the carrier when it can decide them, otherwise from a search over
/// the plan's elements.
pub fn kernel_group_law(d: &CrossedData, plan: &EnumerationPlan) -> Result<Law, PlanError> {
    let x = d.e.x.clone();
    let space = crate::algebra::axioms::ore_search_space(&x, plan)?;
    let s = x.clone();
    Ok(Law::new("kernel-group", &[("x", &x)], move |v| {
        let inv = |y: &Elem| match s.inverse(y) {
            InverseLookup::Found(z) => Some(z),
            InverseLookup::Missing => None,
            InverseLookup::Unknown => find_inverse(&s, y, &space),
        };
        let Some(neg) = inv(&v[0]) else {
            return Err(format!("{} has no inverse in `{}`", s.show(&v[0]), s.name()));
        };
        let c = s.conj(&v[0]);
        let Some(neg_conj) = inv(&c) else {
            return Err(format!("conj {} has no inverse", s.show(&v[0])));
        };
        let conj_neg = s.conj(&neg);
        if neg_conj == conj_neg {
            Ok(())
        } else {
            Err(format!("−x̄ = {} but conj(−x) = {}", s.show(&neg_conj), s.show(&conj_neg)))
        }
    }))
}

pub fn check_equivariance(d: &CrossedData, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
    equivariance_law(d).check(plan)
}

pub fn check_peiffer(d: &CrossedData, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
    peiffer_law(d).check(plan)
}

pub fn check_kernel_group(d: &CrossedData, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
    kernel_group_law(d, plan)?.check(plan)
}

fn require(v: &Verdict, err: fn(Witness) -> InternalError) -> Result<(), InternalError> {
    match &v.outcome {
        Outcome::Fails(w) => Err(err(w.clone())),
        _ => Ok(()),
    }
}

/// `A ⇉ B` with domain `f`, codomain `h̃` and common section `r`.
#[derive(Clone)]
pub struct ReflexiveGraph {
    pub data: CrossedData,
    pub dom: Hom,
    pub cod: Hom,
    pub unit: Hom,
    pub verdicts: Vec<Verdict>,
    pub laws: Vec<Law>,
}

impl fmt::Debug for ReflexiveGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReflexiveGraph({} => {})", self.data.e.a.name(), self.data.e.b.name())
    }
}

/// Builds `h̃` and checks that it is a morphism with `h̃∘k = h`,
/// `h̃∘r = 1` and `f∘r = 1`. Requires the equivariance law.
pub fn build_reflexive_graph(d: &CrossedData, plan: &EnumerationPlan) -> Result<ReflexiveGraph, InternalError> {
    require(&check_equivariance(d, plan)?, InternalError::EquivarianceFailed)?;
    let e = &d.e;
    let c = d.clone();
    let cod = Hom::new("h~", &e.a, &e.b, move |a| c.h_tilde(a));
    let hom = verify_hom(&cod, plan)?;
    require(&hom, InternalError::NotHom)?;
    let eq = |name: &str, src: &ConjStructure, l: Hom, r: Hom| {
        let target = l.target().clone();
        Law::equation(name, &[("v", src)], &target, move |v| l.apply(&v[0]), move |v| r.apply(&v[0]))
    };
    let laws = vec![
        eq("codomain-on-kernel", &e.x, Hom::compose(&cod, &e.k)?, d.h.clone()),
        eq("codomain-of-unit", &e.b, Hom::compose(&cod, &e.r)?, Hom::identity(&e.b)),
        eq("domain-of-unit", &e.b, Hom::compose(&e.f, &e.r)?, Hom::identity(&e.b)),
    ];
    let mut verdicts = vec![hom];
    verdicts.extend(check_all(&laws, plan)?);
    Ok(ReflexiveGraph { data: d.clone(), dom: e.f.clone(), cod, unit: e.r.clone(), verdicts, laws })
}

/// Whether `h̃` is the only morphism with `h̃∘k = h` and `h̃∘r = 1`, by
/// closure search on a finite `A`.
pub fn verify_codomain_forced(g: &ReflexiveGraph) -> Result<Verdict, InternalError> {
    let e = &g.data.e;
    let mut prescribed: Vec<(Elem, Elem)> = Vec::new();
    for x in e.x.elements().ok_or_else(|| ExtendError::InfiniteDomain(e.x.name().into()))?.iter() {
        prescribed.push((e.k.apply(x), g.data.h.apply(x)));
    }
    for b in e.b.elements().ok_or_else(|| ExtendError::InfiniteDomain(e.b.name().into()))?.iter() {
        prescribed.push((e.r.apply(b), b.clone()));
    }
    forced_verdict("codomain-forced", &e.a, &e.b, &prescribed, &g.cod)
}

fn forced_verdict(
    law: &str,
    domain: &ConjStructure,
    target: &ConjStructure,
    prescribed: &[(Elem, Elem)],
    expected: &Hom,
) -> Result<Verdict, InternalError> {
    let els = domain.elements().ok_or_else(|| ExtendError::InfiniteDomain(domain.name().into()))?;
    let n = els.len() as u64;
    let fail = |el: &Elem, detail: String| {
        Verdict::failure(law, n, witness(law, &["v"], vec![el.clone()], vec![domain.show(el)], detail))
    };
    Ok(match extend_from_forced(domain, target, prescribed, DEFAULT_EXTENSION_BOUND)? {
        Extension::Unique(images) => {
            match els.iter().zip(&images).find(|(v, img)| expected.apply(v) != **img) {
                Some((v, img)) => fail(v, format!("the forced value {} differs from the formula", target.show(img))),
                None => Verdict::new(law, n, Outcome::HoldsExhaustive),
            }
        }
        Extension::Conflict { at, first, second } => fail(
            &at,
            format!("no morphism: forced values {} and {} collide", target.show(&first), target.show(&second)),
        ),
        Extension::NotGenerated { missing, .. } => {
            fail(&missing, "not reached from the prescribed values, so not determined by them".into())
        }
    })
}

/// The graph with composition `m(a, a′) = k(q(a)) + a′` on pairs with
/// `f(a) = h̃(a′)`.
#[derive(Clone)]
pub struct InternalCategory {
    pub graph: ReflexiveGraph,
    /// `{(a, a′) : f(a) = h̃(a′)}`
    pub pairs: ConjStructure,
    /// `{(a, (a′, a″)) : f(a) = h̃(a′), f(a′) = h̃(a″)}`
    pub triples: ConjStructure,
    pub m: Hom,
    pub verdicts: Vec<Verdict>,
    pub laws: Vec<Law>,
}

impl fmt::Debug for InternalCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InternalCategory({})", self.pairs.name())
    }
}

impl InternalCategory {
    pub fn verdict(&self) -> Verdict {
        Verdict::all("internal category", &self.verdicts)
    }
}

fn composable_pairs(d: &CrossedData) -> Result<ConjStructure, StructureError> {
    let e = &d.e;
    let (c1, c2, c3) = (d.clone(), d.clone(), d.clone());
    PairCarrier::direct(&e.a, &e.a)
        .with_member(move |p| c1.e.f.apply(p.fst()) == c1.h_tilde(p.snd()))
        .with_sampler(move |rng| {
            let a2 = c2.e.a.sample(rng);
            let x = c2.e.x.sample(rng);
            let a1 = c2.e.a.op(&c2.e.k.apply(&x), &c2.e.r.apply(&c2.h_tilde(&a2)));
            Elem::pair(a1, a2)
        })
        .with_canonical(move || {
            let e = &c3.e;
            let mut out = Vec::new();
            for a2 in e.a.canonical() {
                let base = e.r.apply(&c3.h_tilde(&a2));
                for x in e.x.canonical() {
                    out.push(Elem::pair(e.a.op(&e.k.apply(&x), &base), a2.clone()));
                }
            }
            out
        })
        .into_structure(format!("{} x_{} {}", e.a.name(), e.b.name(), e.a.name()))
}

fn composable_triples(d: &CrossedData, pairs: &ConjStructure) -> Result<ConjStructure, StructureError> {
    let e = &d.e;
    let (c1, c2, c3) = (d.clone(), d.clone(), d.clone());
    let p3 = pairs.clone();
    PairCarrier::direct(&e.a, pairs)
        .with_member(move |t| c1.e.f.apply(t.fst()) == c1.h_tilde(t.snd().fst()))
        .with_sampler(move |rng| {
            let p = p3.sample(rng);
            let x = c2.e.x.sample(rng);
            let a = c2.e.a.op(&c2.e.k.apply(&x), &c2.e.r.apply(&c2.h_tilde(p.fst())));
            Elem::pair(a, p)
        })
        .with_canonical(move || {
            let e = &c3.e;
            let mut out = Vec::new();
            for a3 in e.a.canonical().into_iter().take(4) {
                for x2 in e.x.canonical().into_iter().take(3) {
                    let a2 = e.a.op(&e.k.apply(&x2), &e.r.apply(&c3.h_tilde(&a3)));
                    for x1 in e.x.canonical().into_iter().take(3) {
                        let a1 = e.a.op(&e.k.apply(&x1), &e.r.apply(&c3.h_tilde(&a2)));
                        out.push(Elem::pair(a1, Elem::pair(a2.clone(), a3.clone())));
                    }
                }
            }
            out
        })
        .into_structure(format!("{} triples", e.a.name()))
}

/// `k(h̃(a)·x) + a = a + k(x)`.
pub fn kernel_exchange_law(g: &ReflexiveGraph) -> Law {
    let (p, q) = (g.data.clone(), g.data.clone());
    Law::equation(
        "kernel-exchange",
        &[("a", &g.data.e.a), ("x", &g.data.e.x)],
        &g.data.e.a,
        move |v| p.e.a.op(&p.e.k.apply(&p.phi.act(&p.h_tilde(&v[0]), &v[1])), &v[0]),
        move |v| q.e.a.op(&v[0], &q.e.k.apply(&v[1])),
    )
}

pub fn check_kernel_exchange(g: &ReflexiveGraph, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
    kernel_exchange_law(g).check(plan)
}

/// Builds the composition and checks that it is a morphism, the unit laws,
/// the endpoints of composites, associativity on composable triples and
/// the kernel-exchange condition. Requires equivariance and the Peiffer
/// identity.
pub fn build_internal_category(d: &CrossedData, plan: &EnumerationPlan) -> Result<InternalCategory, InternalError> {
    let graph = build_reflexive_graph(d, plan)?;
    require(&check_peiffer(d, plan)?, InternalError::PeifferFailed)?;
    let pairs = composable_pairs(d)?;
    let triples = composable_triples(d, &pairs)?;
    let e = &d.e;
    let c = d.clone();
    let m = Hom::new("m", &pairs, &e.a, move |p| c.e.a.op(&c.e.k.apply(&c.e.q(p.fst())), p.snd()));
    let mut verdicts = vec![verify_hom(&m, plan)?];
    let mut laws = Vec::new();
    let (c, m1) = (d.clone(), m.clone());
    laws.push(Law::equation(
        "right-unit",
        &[("a", &e.a)],
        &e.a,
        move |v| m1.apply(&Elem::pair(v[0].clone(), c.e.r.apply(&c.e.f.apply(&v[0])))),
        |v| v[0].clone(),
    ));
    let (c, m1) = (d.clone(), m.clone());
    laws.push(Law::equation(
        "left-unit",
        &[("a'", &e.a)],
        &e.a,
        move |v| m1.apply(&Elem::pair(c.e.r.apply(&c.h_tilde(&v[0])), v[0].clone())),
        |v| v[0].clone(),
    ));
    let (c, m1) = (d.clone(), m.clone());
    laws.push(Law::equation(
        "composite-domain",
        &[("p", &pairs)],
        &e.b,
        move |v| c.e.f.apply(&m1.apply(&v[0])),
        {
            let c = d.clone();
            move |v| c.e.f.apply(v[0].snd())
        },
    ));
    let (c, m1) = (d.clone(), m.clone());
    laws.push(Law::equation(
        "composite-codomain",
        &[("p", &pairs)],
        &e.b,
        move |v| c.h_tilde(&m1.apply(&v[0])),
        {
            let c = d.clone();
            move |v| c.h_tilde(v[0].fst())
        },
    ));
    let (m1, m2) = (m.clone(), m.clone());
    laws.push(Law::equation(
        "associativity",
        &[("t", &triples)],
        &e.a,
        move |v| {
            let (a, a1, a2) = (v[0].fst(), v[0].snd().fst(), v[0].snd().snd());
            m1.apply(&Elem::pair(m1.apply(&Elem::pair(a.clone(), a1.clone())), a2.clone()))
        },
        move |v| {
            let (a, a1, a2) = (v[0].fst(), v[0].snd().fst(), v[0].snd().snd());
            m2.apply(&Elem::pair(a.clone(), m2.apply(&Elem::pair(a1.clone(), a2.clone()))))
        },
    ));
    laws.push(kernel_exchange_law(&graph));
    verdicts.extend(check_all(&laws, plan)?);
    Ok(InternalCategory { graph, pairs, triples, m, verdicts, laws })
}

/// Whether `m` is the only morphism on composable pairs satisfying the two
/// unit laws, by closure search on a finite carrier.
pub fn verify_composition_forced(cat: &InternalCategory) -> Result<Verdict, InternalError> {
    let e = &cat.graph.data.e;
    let d = &cat.graph.data;
    let els = e.a.elements().ok_or_else(|| ExtendError::InfiniteDomain(e.a.name().into()))?;
    let mut prescribed = Vec::new();
    for a in els.iter() {
        prescribed.push((Elem::pair(a.clone(), e.r.apply(&e.f.apply(a))), a.clone()));
        prescribed.push((Elem::pair(e.r.apply(&d.h_tilde(a)), a.clone()), a.clone()));
    }
    forced_verdict("composition-forced", &cat.pairs, &e.a, &prescribed, &cat.m)
}

/// The category with inverse map `t(a) = −k(q(a)) + r(h̃(a))`.
#[derive(Clone)]
pub struct InternalGroupoid {
    pub category: InternalCategory,
    pub t: Hom,
    pub verdicts: Vec<Verdict>,
    pub laws: Vec<Law>,
}

impl fmt::Debug for InternalGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InternalGroupoid({})", self.category.pairs.name())
    }
}

impl InternalGroupoid {
    pub fn verdict(&self) -> Verdict {
        Verdict::all("internal groupoid", &self.verdicts)
    }
}

/// Builds the inverse map and checks that it is a morphism, both inverse
/// laws, the swap of endpoints, `t∘t = 1` and `t∘r = r`. Requires all
/// three conditions.
pub fn build_groupoid(d: &CrossedData, plan: &EnumerationPlan) -> Result<InternalGroupoid, InternalError> {
    let category = build_internal_category(d, plan)?;
    require(&check_kernel_group(d, plan)?, InternalError::KernelNotGroup)?;
    let e = &d.e;
    let space = crate::algebra::axioms::ore_search_space(&e.x, plan)?;
    let c = d.clone();
    let t = Hom::new("t", &e.a, &e.a, move |a| {
        let x = c.e.q(a);
        let neg = find_inverse(&c.e.x, &x, &space).unwrap_or_else(|| panic!("{x} has no inverse"));
        c.e.a.op(&c.e.k.apply(&neg), &c.e.r.apply(&c.h_tilde(a)))
    });
    let mut verdicts = vec![verify_hom(&t, plan)?];
    let m = category.m.clone();
    let compose = move |d: &CrossedData, a: &Elem, b: &Elem| -> Result<Elem, String> {
        if d.e.f.apply(a) != d.h_tilde(b) {
            return Err(format!("({}, {}) is not composable", d.e.a.show(a), d.e.a.show(b)));
        }
        Ok(m.apply(&Elem::pair(a.clone(), b.clone())))
    };
    let mut laws = Vec::new();
    let (c, t1, comp) = (d.clone(), t.clone(), compose.clone());
    laws.push(Law::new("right-inverse", &[("a", &e.a)], move |v| {
        let got = comp(&c, &v[0], &t1.apply(&v[0]))?;
        let want = c.e.r.apply(&c.h_tilde(&v[0]));
        if got == want { Ok(()) } else { Err(format!("m(a, t(a)) = {}", c.e.a.show(&got))) }
    }));
    let (c, t1, comp) = (d.clone(), t.clone(), compose);
    laws.push(Law::new("left-inverse", &[("a", &e.a)], move |v| {
        let got = comp(&c, &t1.apply(&v[0]), &v[0])?;
        let want = c.e.r.apply(&c.e.f.apply(&v[0]));
        if got == want { Ok(()) } else { Err(format!("m(t(a), a) = {}", c.e.a.show(&got))) }
    }));
    let (c, t1) = (d.clone(), t.clone());
    laws.push(Law::new("inverse-swaps-ends", &[("a", &e.a)], move |v| {
        let ta = t1.apply(&v[0]);
        if c.e.f.apply(&ta) == c.h_tilde(&v[0]) && c.h_tilde(&ta) == c.e.f.apply(&v[0]) {
            Ok(())
        } else {
            Err("domain and codomain are not swapped".into())
        }
    }));
    let t1 = t.clone();
    laws.push(Law::equation("inverse-involutive", &[("a", &e.a)], &e.a, move |v| t1.apply(&t1.apply(&v[0])), |v| v[0].clone()));
    let (c, t1) = (d.clone(), t.clone());
    let c2 = d.clone();
    laws.push(Law::equation(
        "inverse-fixes-units",
        &[("b", &e.b)],
        &e.a,
        move |v| t1.apply(&c.e.r.apply(&v[0])),
        move |v| c2.e.r.apply(&v[0]),
    ));
    verdicts.extend(check_all(&laws, plan)?);
    Ok(InternalGroupoid { category, t, verdicts, laws })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Classification {
    Unstructured,
    PrecrossedSemimodule,
    CrossedSemimodule,
    CrossedModule,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Unstructured => "none",
            Classification::PrecrossedSemimodule => "precrossed semimodule",
            Classification::CrossedSemimodule => "crossed semimodule",
            Classification::CrossedModule => "crossed module",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub label: Classification,
    pub equivariance: Verdict,
    pub peiffer: Verdict,
    pub kernel_group: Verdict,
}

impl ClassificationReport {
    pub fn verdicts(&self) -> [&Verdict; 3] {
        [&self.equivariance, &self.peiffer, &self.kernel_group]
    }
}

/// The strongest structure whose conditions all hold. All three conditions
/// are evaluated regardless, for diagnostics.
pub fn classify(d: &CrossedData, plan: &EnumerationPlan) -> Result<ClassificationReport, PlanError> {
    let equivariance = check_equivariance(d, plan)?;
    let peiffer = check_peiffer(d, plan)?;
    let kernel_group = check_kernel_group(d, plan)?;
    let label = if !equivariance.holds() {
        Classification::Unstructured
    } else if !peiffer.holds() {
        Classification::PrecrossedSemimodule
    } else if !kernel_group.holds() {
        Classification::CrossedSemimodule
    } else {
        Classification::CrossedModule
    };
    Ok(ClassificationReport { label, equivariance, peiffer, kernel_group })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, quaternion_group, trivial};
    use crate::schreier::{semidirect, ExternalAction};

    fn crossed(x: &ConjStructure, b: &ConjStructure, h: impl Fn(&Elem) -> Elem + Send + Sync + 'static) -> CrossedData {
        let plan = EnumerationPlan::Exhaustive;
        let e = semidirect(&ExternalAction::trivial(b, x), &plan).unwrap();
        let h = Hom::new("h", &e.x, &e.b, h);
        CrossedData::new(e, h).unwrap()
    }

    #[test]
    fn identity_on_z3_is_a_crossed_module() {
        let z3 = cyclic(3);
        let d = crossed(&z3, &z3, |x| x.clone());
        let plan = EnumerationPlan::Exhaustive;
        let report = classify(&d, &plan).unwrap();
        assert_eq!(report.label, Classification::CrossedModule);
        let g = build_groupoid(&d, &plan).unwrap();
        assert_eq!(d.e.a.size(), Some(9));
        assert_eq!(g.category.pairs.size(), Some(27));
        assert!(g.verdict().holds(), "{:?}", g.verdicts);
        assert!(g.category.verdict().holds());
        assert!(verify_composition_forced(&g.category).unwrap().holds());
        assert!(verify_codomain_forced(&g.category.graph).unwrap().holds());
        // t(x, b) = (−x, x + b)
        let a = Elem::pair(Elem::Idx(1), Elem::Idx(1));
        assert_eq!(g.t.apply(&a), Elem::pair(Elem::Idx(2), Elem::Idx(2)));
    }

    #[test]
    fn q8_over_zero_is_only_precrossed() {
        let q8 = quaternion_group();
        let zero = trivial();
        let d = crossed(&q8, &zero, |_| Elem::Idx(0));
        let plan = EnumerationPlan::Exhaustive;
        let report = classify(&d, &plan).unwrap();
        assert_eq!(report.label, Classification::PrecrossedSemimodule);
        let w = report.peiffer.witness().unwrap();
        assert_eq!(w.shown, ["i", "j"]);
        assert!(report.kernel_group.holds());
        let graph = build_reflexive_graph(&d, &plan).unwrap();
        assert!(check_kernel_exchange(&graph, &plan).unwrap().fails());
        assert!(matches!(build_internal_category(&d, &plan), Err(InternalError::PeifferFailed(_))));
    }

    #[test]
    fn zero_map_codomain_is_domain() {
        let z2 = cyclic(2);
        let d = crossed(&z2, &z2, |_| Elem::Idx(0));
        let graph = build_reflexive_graph(&d, &EnumerationPlan::Exhaustive).unwrap();
        for a in d.e.a.elements().unwrap().iter() {
            assert_eq!(graph.cod.apply(a), graph.dom.apply(a));
        }
    }
}
