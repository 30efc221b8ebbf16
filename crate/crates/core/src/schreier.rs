//! Schreier split extensions `X —k→ A ⇄ B` with retraction `q`, external
//! actions, semidirect products and equivalence relations on an object.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{
    check_all, verify_cancellation, verify_conjugation_axioms, Hom, HomError, Law, Outcome, PairCarrier,
    StructureError, SubCarrier, Verdict, Witness,
};
use crate::carriers::{Elem, EnumerationPlan, PlanError};
use crate::ConjStructure;

pub type MapFn = Arc<dyn Fn(&Elem) -> Elem + Send + Sync>;
pub type ActFn = Arc<dyn Fn(&Elem, &Elem) -> Elem + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchreierError {
    #[error("`{0}`, `{1}` and `{2}` must all be monoids")]
    NotMonoid(String, String, String),
    #[error("section is not split: {0}")]
    NotSplit(Witness),
    #[error("not a kernel inclusion: {0}")]
    NotKernel(String),
    #[error("not Schreier at a = {element}: {} decompositions a = k(x) + r(f(a)){}", decompositions.len(), list(decompositions))]
    NotSchreier { element: String, decompositions: Vec<String> },
    #[error("Schreier law fails: {0}")]
    LawFailed(Witness),
    #[error("retraction for `{0}` cannot be found by search: the kernel is infinite; supply a candidate")]
    InfiniteKernel(String),
    #[error("action law fails: {0}")]
    ActionLawFailed(Witness),
    #[error("action is not compatible with conjugation: {0}")]
    Incompatible(Witness),
    #[error("semidirect product is not cancellative: {0}")]
    CancellationFailure(Witness),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!(" ({})", items.join("; "))
    }
}

fn first_failure(verdicts: &[Verdict]) -> Option<Witness> {
    verdicts.iter().find_map(|v| match &v.outcome {
        Outcome::Fails(w) => Some(w.clone()),
        _ => None,
    })
}

/// A split epimorphism `(f, r)` with kernel `k` and its Schreier retraction
/// `q`, satisfying `a = k(q(a)) + r(f(a))` and `q(k(x) + r(b)) = x`.
#[derive(Clone)]
pub struct SchreierExtension {
    pub x: ConjStructure,
    pub a: ConjStructure,
    pub b: ConjStructure,
    pub k: Hom,
    pub f: Hom,
    pub r: Hom,
    q: MapFn,
    q_table: Option<Vec<(Elem, Elem)>>,
    plan: EnumerationPlan,
    verdicts: Vec<Verdict>,
}

impl SchreierExtension {
    pub fn q(&self, a: &Elem) -> Elem {
        (self.q)(a)
    }

    /// `q` as `(a, q(a))` pairs, when `A` is finite.
    pub fn q_table(&self) -> Option<&[(Elem, Elem)]> {
        self.q_table.as_deref()
    }

    /// The induced action `b·x = q(r(b) + k(x))`.
    pub fn act(&self, b: &Elem, x: &Elem) -> Elem {
        self.q(&self.a.op(&self.r.apply(b), &self.k.apply(x)))
    }

    pub fn plan(&self) -> &EnumerationPlan {
        &self.plan
    }

    /// Verdicts of the retraction laws computed at construction.
    pub fn verdicts(&self) -> &[Verdict] {
        &self.verdicts
    }

    pub fn q_map(&self) -> MapFn {
        self.q.clone()
    }
}

impl fmt::Debug for SchreierExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Schreier({} -> {} <-> {})", self.x.name(), self.a.name(), self.b.name())
    }
}

fn check_monoids(x: &ConjStructure, a: &ConjStructure, b: &ConjStructure) -> Result<(), SchreierError> {
    if x.is_monoid() && a.is_monoid() && b.is_monoid() {
        Ok(())
    } else {
        Err(SchreierError::NotMonoid(x.name().into(), a.name().into(), b.name().into()))
    }
}

fn split_law(f: &Hom, r: &Hom) -> Law {
    let (f1, r1) = (f.clone(), r.clone());
    Law::equation("split", &[("b", f.target())], f.target(), move |e| f1.apply(&r1.apply(&e[0])), |e| e[0].clone())
}

fn kernel_laws(k: &Hom, f: &Hom) -> Vec<Law> {
    let (k1, f1, z) = (k.clone(), f.clone(), f.target().zero());
    let lands = Law::equation("kernel-maps-to-zero", &[("x", k.source())], f.target(), move |e| f1.apply(&k1.apply(&e[0])), move |_| z.clone());
    let (k2, xs) = (k.clone(), k.source().clone());
    let injective = Law::new("kernel-injective", &[("x", k.source()), ("y", k.source())], move |e| {
        if e[0] != e[1] && k2.apply(&e[0]) == k2.apply(&e[1]) {
            Err(format!("k({}) = k({})", xs.show(&e[0]), xs.show(&e[1])))
        } else {
            Ok(())
        }
    });
    vec![lands, injective]
}

/// Preconditions shared by both constructors: monoids, `f∘r = 1`, and `k`
/// an injective map into `f⁻¹(0)` hitting all of it on finite carriers.
fn check_split_kernel(k: &Hom, f: &Hom, r: &Hom, plan: &EnumerationPlan) -> Result<(), SchreierError> {
    check_monoids(k.source(), f.source(), f.target())?;
    if let Some(w) = first_failure(&[split_law(f, r).check(plan)?]) {
        return Err(SchreierError::NotSplit(w));
    }
    let verdicts = check_all(&kernel_laws(k, f), plan)?;
    if let Some(w) = first_failure(&verdicts) {
        return Err(SchreierError::NotKernel(w.to_string()));
    }
    if let (Some(xs), Some(as_)) = (k.source().elements(), f.source().elements()) {
        let image: std::collections::HashSet<Elem> = xs.iter().map(|x| k.apply(x)).collect();
        let zero = f.target().zero();
        if let Some(a) = as_.iter().find(|a| f.apply(a) == zero && !image.contains(*a)) {
            return Err(SchreierError::NotKernel(format!(
                "{} lies in f⁻¹(0) but not in the image of k",
                f.source().show(a)
            )));
        }
    }
    Ok(())
}

/// All `x` with `a = k(x) + r(f(a))`, by scanning the finite kernel.
fn decompositions(k: &Hom, f: &Hom, r: &Hom, xs: &[Elem], a: &Elem) -> Vec<Elem> {
    let rf = r.apply(&f.apply(a));
    xs.iter().filter(|x| k.target().op(&k.apply(x), &rf) == *a).cloned().collect()
}

/// Finds the Schreier retraction of `(f, r)` with kernel `k` by searching
/// the (finite) kernel for the unique decomposition of each `a`.
///
/// On finite `A` the retraction is tabulated; on infinite `A` it is a
/// search per call. Either way the retraction laws are checked under
/// `plan` and stored on the result.
pub fn find_schreier_retraction(
    k: &Hom,
    f: &Hom,
    r: &Hom,
    plan: &EnumerationPlan,
) -> Result<SchreierExtension, SchreierError> {
    check_split_kernel(k, f, r, plan)?;
    let xs: Vec<Elem> = k.source().elements().ok_or_else(|| SchreierError::InfiniteKernel(f.name().into()))?.to_vec();
    let a = f.source();
    let (q, q_table): (MapFn, _) = match a.elements() {
        Some(as_) => {
            let mut table = Vec::with_capacity(as_.len());
            for el in as_.iter() {
                let ds = decompositions(k, f, r, &xs, el);
                if ds.len() != 1 {
                    return Err(not_schreier(k, a, el, &ds));
                }
                table.push((el.clone(), ds[0].clone()));
            }
            let map: HashMap<Elem, Elem> = table.iter().cloned().collect();
            (Arc::new(move |e: &Elem| map[e].clone()), Some(table))
        }
        None => {
            let (k1, f1, r1) = (k.clone(), f.clone(), r.clone());
            let q: MapFn = Arc::new(move |e: &Elem| {
                let ds = decompositions(&k1, &f1, &r1, &xs, e);
                ds.into_iter().next().unwrap_or_else(|| panic!("no decomposition of {e}"))
            });
            // Uniqueness over the plan scope is the decomposition-count law.
            let count = decomposition_count_law(k, f, r);
            if let Some(w) = first_failure(&[count.check(plan)?]) {
                return Err(SchreierError::LawFailed(w));
            }
            (q, None)
        }
    };
    package(k, f, r, q, q_table, plan)
}

fn not_schreier(k: &Hom, a: &ConjStructure, el: &Elem, ds: &[Elem]) -> SchreierError {
    SchreierError::NotSchreier {
        element: a.show(el),
        decompositions: ds.iter().map(|x| format!("x = {}", k.source().show(x))).collect(),
    }
}

fn decomposition_count_law(k: &Hom, f: &Hom, r: &Hom) -> Law {
    let (k1, f1, r1) = (k.clone(), f.clone(), r.clone());
    let xs: Vec<Elem> = k.source().elements().map(|e| e.to_vec()).unwrap_or_default();
    Law::new("unique-decomposition", &[("a", f.source())], move |e| {
        let n = decompositions(&k1, &f1, &r1, &xs, &e[0]).len();
        if n == 1 { Ok(()) } else { Err(format!("{n} decompositions")) }
    })
}

/// Packages a supplied retraction `q` after checking the Schreier laws
/// under `plan`. This is the route for infinite kernels, where `q` cannot
/// be found by search.
pub fn schreier_from_candidate(
    k: &Hom,
    f: &Hom,
    r: &Hom,
    q: impl Fn(&Elem) -> Elem + Send + Sync + 'static,
    plan: &EnumerationPlan,
) -> Result<SchreierExtension, SchreierError> {
    check_split_kernel(k, f, r, plan)?;
    let q: MapFn = Arc::new(q);
    let q_table = f.source().elements().map(|as_| as_.iter().map(|a| (a.clone(), q(a))).collect());
    package(k, f, r, q, q_table, plan)
}

fn package(
    k: &Hom,
    f: &Hom,
    r: &Hom,
    q: MapFn,
    q_table: Option<Vec<(Elem, Elem)>>,
    plan: &EnumerationPlan,
) -> Result<SchreierExtension, SchreierError> {
    let mut e = SchreierExtension {
        x: k.source().clone(),
        a: f.source().clone(),
        b: f.target().clone(),
        k: k.clone(),
        f: f.clone(),
        r: r.clone(),
        q,
        q_table,
        plan: *plan,
        verdicts: Vec::new(),
    };
    let defining = check_all(&defining_laws(&e), plan)?;
    if let Some(w) = first_failure(&defining) {
        return Err(SchreierError::LawFailed(w));
    }
    let mut verdicts = defining;
    verdicts.extend(retraction_verdicts(&e, plan)?);
    e.verdicts = verdicts;
    Ok(e)
}

/// `a = k(q(a)) + r(f(a))` and `q(k(x) + r(b)) = x`.
pub fn defining_laws(e: &SchreierExtension) -> Vec<Law> {
    let e1 = e.clone();
    let e2 = e.clone();
    vec![
        Law::equation(
            "decomposition",
            &[("a", &e.a)],
            &e.a,
            |v| v[0].clone(),
            move |v| e1.a.op(&e1.k.apply(&e1.q(&v[0])), &e1.r.apply(&e1.f.apply(&v[0]))),
        ),
        Law::equation(
            "retraction-unique",
            &[("x", &e.x), ("b", &e.b)],
            &e.x,
            move |v| e2.q(&e2.a.op(&e2.k.apply(&v[0]), &e2.r.apply(&v[1]))),
            |v| v[0].clone(),
        ),
    ]
}

/// The consequences of the Schreier condition: `q∘k = 1`, `q∘r = 0`,
/// `q(0) = 0`, `k(q(r(b)+k(x))) + r(b) = r(b) + k(x)` and
/// `q(a+a′) = q(a) + q(r(f(a)) + k(q(a′)))`.
pub fn retraction_laws(e: &SchreierExtension) -> Vec<Law> {
    let mut laws = Vec::new();
    let c = e.clone();
    laws.push(Law::equation("q-retracts-kernel", &[("x", &e.x)], &e.x, move |v| c.q(&c.k.apply(&v[0])), |v| v[0].clone()));
    let c = e.clone();
    let zx = e.x.zero();
    laws.push(Law::equation("q-kills-section", &[("b", &e.b)], &e.x, move |v| c.q(&c.r.apply(&v[0])), move |_| zx.clone()));
    let c = e.clone();
    let zx = e.x.zero();
    laws.push(Law::equation("q-preserves-zero", &[], &e.x, move |_| c.q(&c.a.zero()), move |_| zx.clone()));
    let c = e.clone();
    laws.push(Law::equation(
        "kernel-section-exchange",
        &[("b", &e.b), ("x", &e.x)],
        &e.a,
        {
            let c = c.clone();
            move |v| {
                let (rb, kx) = (c.r.apply(&v[0]), c.k.apply(&v[1]));
                c.a.op(&c.k.apply(&c.q(&c.a.op(&rb, &kx))), &rb)
            }
        },
        move |v| c.a.op(&c.r.apply(&v[0]), &c.k.apply(&v[1])),
    ));
    let c = e.clone();
    laws.push(Law::equation(
        "q-cocycle",
        &[("a", &e.a), ("a'", &e.a)],
        &e.x,
        {
            let c = c.clone();
            move |v| c.q(&c.a.op(&v[0], &v[1]))
        },
        move |v| {
            let inner = c.a.op(&c.r.apply(&c.f.apply(&v[0])), &c.k.apply(&c.q(&v[1])));
            c.x.op(&c.q(&v[0]), &c.q(&inner))
        },
    ));
    laws
}

fn retraction_verdicts(e: &SchreierExtension, plan: &EnumerationPlan) -> Result<Vec<Verdict>, PlanError> {
    let mut v = check_all(&retraction_laws(e), plan)?;
    v.push(verify_exactness(e, plan)?);
    Ok(v)
}

/// Every retraction law under `plan`, combined. Reuses the verdicts stored
/// at construction when the plan matches.
pub fn verify_retraction_laws(e: &SchreierExtension, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
    let verdicts = if plan == &e.plan {
        e.verdicts.clone()
    } else {
        let mut v = check_all(&defining_laws(e), plan)?;
        v.extend(retraction_verdicts(e, plan)?);
        v
    };
    Ok(Verdict::all("retraction laws", &verdicts))
}

/// `k = ker f` and `f = coker k`. On finite `A` the congruence generated
/// by `k(x) ~ 0` is computed by closure and compared with the kernel pair
/// of `f`; otherwise every `a` is checked to be congruent to `r(f(a))`
/// through its decomposition, which is the same statement tuple by tuple.
pub fn verify_exactness(e: &SchreierExtension, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
    let kernel = check_all(&kernel_laws(&e.k, &e.f), plan)?;
    if let Some(bad) = kernel.iter().find(|v| !v.holds()) {
        return Ok(bad.clone().renamed("exactness"));
    }
    let Some(els) = e.a.elements() else {
        let c = e.clone();
        let law = Law::new("exactness", &[("a", &e.a)], move |v| {
            let x = c.q(&v[0]);
            let back = c.a.op(&c.k.apply(&x), &c.r.apply(&c.f.apply(&v[0])));
            if back == v[0] && c.f.apply(&c.k.apply(&x)) == c.b.zero() {
                Ok(())
            } else {
                Err(format!("{} is not identified with r(f(a)) through the kernel", c.a.show(&v[0])))
            }
        });
        return law.check(plan);
    };
    let n = els.len();
    let idx = |x: &Elem| e.a.index_of(x).expect("closed");
    let mut uf = UnionFind::new(n);
    let zero = idx(&e.a.zero());
    for x in e.x.elements().expect("finite kernel of a finite carrier").iter() {
        uf.union(idx(&e.k.apply(x)), zero);
    }
    // Close under translations on both sides and under conjugation.
    loop {
        let mut changed = false;
        for i in 0..n {
            let ri = uf.find(i);
            if ri == i {
                continue;
            }
            let (u, v) = (&els[i], &els[ri]);
            changed |= uf.union(idx(&e.a.conj(u)), idx(&e.a.conj(v)));
            for w in els.iter() {
                changed |= uf.union(idx(&e.a.op(w, u)), idx(&e.a.op(w, v)));
                changed |= uf.union(idx(&e.a.op(u, w)), idx(&e.a.op(v, w)));
            }
        }
        if !changed {
            break;
        }
    }
    let mut checked = 0u64;
    for i in 0..n {
        for j in 0..n {
            checked += 1;
            let same_class = uf.find(i) == uf.find(j);
            let same_image = e.f.apply(&els[i]) == e.f.apply(&els[j]);
            if same_class != same_image {
                let detail = if same_image {
                    "equal images under f but not identified by the congruence generated by the kernel"
                } else {
                    "identified by the kernel congruence but with different images under f"
                };
                let w = Witness {
                    law: "exactness".into(),
                    vars: vec!["a".into(), "a'".into()],
                    elems: vec![els[i].clone(), els[j].clone()],
                    shown: vec![e.a.show(&els[i]), e.a.show(&els[j])],
                    detail: detail.into(),
                };
                return Ok(Verdict::failure("exactness", checked, w));
            }
        }
    }
    Ok(Verdict::new("exactness", checked, Outcome::HoldsExhaustive))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// `q(ā) = f(ā)·conj(q(a))` with `b·x = q(r(b) + k(x))`.
pub fn conjugate_retraction_law(e: &SchreierExtension) -> Law {
    let (c1, c2) = (e.clone(), e.clone());
    Law::equation(
        "conjugate-retraction",
        &[("a", &e.a)],
        &e.x,
        move |v| c1.q(&c1.a.conj(&v[0])),
        move |v| c2.act(&c2.f.apply(&c2.a.conj(&v[0])), &c2.x.conj(&c2.q(&v[0]))),
    )
}

pub fn verify_conjugate_retraction(e: &SchreierExtension, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
    conjugate_retraction_law(e).check(plan)
}

/// A monoid action `b·x` of `B` on `X` by endomorphisms.
#[derive(Clone)]
pub struct ExternalAction {
    pub b: ConjStructure,
    pub x: ConjStructure,
    act: ActFn,
}

impl ExternalAction {
    pub fn new(
        b: &ConjStructure,
        x: &ConjStructure,
        act: impl Fn(&Elem, &Elem) -> Elem + Send + Sync + 'static,
    ) -> Self {
        ExternalAction { b: b.clone(), x: x.clone(), act: Arc::new(act) }
    }

    /// `b·x = x`.
    pub fn trivial(b: &ConjStructure, x: &ConjStructure) -> Self {
        ExternalAction::new(b, x, |_, x| x.clone())
    }

    pub fn act(&self, b: &Elem, x: &Elem) -> Elem {
        (self.act)(b, x)
    }

    pub fn act_fn(&self) -> ActFn {
        self.act.clone()
    }
}

impl fmt::Debug for ExternalAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Action({} on {})", self.b.name(), self.x.name())
    }
}

/// `b·x ∈ X`, `0·x = x`, `(b+b′)·x = b·(b′·x)`, `b·(x+y) = b·x + b·y`,
/// `b·0 = 0`.
pub fn action_laws(phi: &ExternalAction) -> Vec<Law> {
    let (b, x) = (&phi.b, &phi.x);
    let mut laws = Vec::new();
    let p = phi.clone();
    laws.push(Law::new("action-lands-in-X", &[("b", b), ("x", x)], move |v| {
        let y = p.act(&v[0], &v[1]);
        if p.x.contains(&y) { Ok(()) } else { Err(format!("b·x = {y} is outside `{}`", p.x.name())) }
    }));
    let p = phi.clone();
    laws.push(Law::equation("action-unit", &[("x", x)], x, move |v| p.act(&p.b.zero(), &v[0]), |v| v[0].clone()));
    let (p, q) = (phi.clone(), phi.clone());
    laws.push(Law::equation(
        "action-composes",
        &[("b", b), ("b'", b), ("x", x)],
        x,
        move |v| p.act(&p.b.op(&v[0], &v[1]), &v[2]),
        move |v| q.act(&v[0], &q.act(&v[1], &v[2])),
    ));
    let (p, q) = (phi.clone(), phi.clone());
    laws.push(Law::equation(
        "action-additive",
        &[("b", b), ("x", x), ("y", x)],
        x,
        move |v| p.act(&v[0], &p.x.op(&v[1], &v[2])),
        move |v| q.x.op(&q.act(&v[0], &v[1]), &q.act(&v[0], &v[2])),
    ));
    let p = phi.clone();
    let z = x.zero();
    laws.push(Law::equation("action-fixes-zero", &[("b", b)], x, move |v| p.act(&v[0], &p.x.zero()), move |_| z.clone()));
    laws
}

pub fn verify_action_laws(phi: &ExternalAction, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
    Ok(Verdict::all("action laws", &check_all(&action_laws(phi), plan)?))
}

/// The action `b·x = q(r(b) + k(x))` of an extension, after checking the
/// action laws under the extension's plan.
pub fn action_from_extension(e: &SchreierExtension) -> Result<ExternalAction, SchreierError> {
    let c = e.clone();
    let phi = ExternalAction::new(&e.b, &e.x, move |b, x| c.act(b, x));
    let v = verify_action_laws(&phi, &e.plan)?;
    match v.outcome {
        Outcome::Fails(w) => Err(SchreierError::ActionLawFailed(w)),
        _ => Ok(phi),
    }
}

/// Verdicts for the conditions under which `X ⋊ B` with
/// `conj(x,b) = (b̄·x̄, b̄)` is a conjugation monoid.
#[derive(Debug, Clone)]
pub struct CompatibilityReport {
    /// The axioms on `X` and `B` themselves.
    pub factors: Verdict,
    /// `b̄·(x̄+x) = x + (b+b̄)·x̄`
    pub conj_commutes: Verdict,
    /// `x₁ + (b₁+b̄₁)·(x̄₁+x₂) = x₂ + (b₂+b̄₁)·(x̄₁+x₁)`, as stated.
    pub norm_central: Verdict,
    /// The same with `b₁+b̄₁` on the right-hand side.
    pub norm_central_same_index: Verdict,
    /// `x₁ + (b₁+b̄₂)·(x̄₂+x₂) = x₂ + (b₂+b̄₂)·(x̄₂+x₁)`, obtained by
    /// expanding `p + p̄₂ + p₂ = p₂ + p̄₂ + p` in `X ⋊ B` directly.
    pub norm_central_expanded: Verdict,
    /// `(b̄₂+b̄₁)·conj(b₁·x₂) = b̄₂·x̄₂`
    pub antihom: Verdict,
}

impl CompatibilityReport {
    /// The conditions required before building the semidirect product.
    pub fn gate(&self) -> Verdict {
        Verdict::all(
            "action compatibility",
            &[self.factors.clone(), self.conj_commutes.clone(), self.norm_central.clone(), self.antihom.clone()],
        )
    }

    pub fn all(&self) -> Vec<&Verdict> {
        vec![
            &self.factors,
            &self.conj_commutes,
            &self.norm_central,
            &self.norm_central_same_index,
            &self.norm_central_expanded,
            &self.antihom,
        ]
    }
}

pub fn compatibility_laws(phi: &ExternalAction) -> [Law; 5] {
    let (b, x) = (&phi.b, &phi.x);
    let p = phi.clone();
    let q = phi.clone();
    let conj_commutes = Law::equation(
        "action-conj-commutes",
        &[("x", x), ("b", b)],
        x,
        move |v| {
            let (xv, bv) = (&v[0], &v[1]);
            p.act(&p.b.conj(bv), &p.x.op(&p.x.conj(xv), xv))
        },
        move |v| {
            let (xv, bv) = (&v[0], &v[1]);
            let bb = q.b.op(bv, &q.b.conj(bv));
            q.x.op(xv, &q.act(&bb, &q.x.conj(xv)))
        },
    );
    let vars = [("x1", x), ("x2", x), ("b1", b), ("b2", b)];
    let norm = |name: &str, rhs_b: fn(&ExternalAction, &[Elem]) -> Elem| {
        let (p, q) = (phi.clone(), phi.clone());
        Law::equation(
            name,
            &vars,
            x,
            move |v| {
                let (x1, x2, b1) = (&v[0], &v[1], &v[2]);
                let bb = p.b.op(b1, &p.b.conj(b1));
                p.x.op(x1, &p.act(&bb, &p.x.op(&p.x.conj(x1), x2)))
            },
            move |v| {
                let (x1, x2) = (&v[0], &v[1]);
                q.x.op(x2, &q.act(&rhs_b(&q, v), &q.x.op(&q.x.conj(x1), x1)))
            },
        )
    };
    let norm_central = norm("action-norm-central", |p, v| p.b.op(&v[3], &p.b.conj(&v[2])));
    let same_index = norm("action-norm-central-same-index", |p, v| p.b.op(&v[2], &p.b.conj(&v[2])));
    let (p, q) = (phi.clone(), phi.clone());
    let expanded = Law::equation(
        "action-norm-central-expanded",
        &vars,
        x,
        move |v| {
            let (x1, x2, b1, b2) = (&v[0], &v[1], &v[2], &v[3]);
            let bb = p.b.op(b1, &p.b.conj(b2));
            p.x.op(x1, &p.act(&bb, &p.x.op(&p.x.conj(x2), x2)))
        },
        move |v| {
            let (x1, x2, b2) = (&v[0], &v[1], &v[3]);
            let bb = q.b.op(b2, &q.b.conj(b2));
            q.x.op(x2, &q.act(&bb, &q.x.op(&q.x.conj(x2), x1)))
        },
    );
    let (p, q) = (phi.clone(), phi.clone());
    let antihom = Law::equation(
        "action-conj-antihom",
        &[("x2", x), ("b1", b), ("b2", b)],
        x,
        move |v| {
            let (x2, b1, b2) = (&v[0], &v[1], &v[2]);
            let bb = p.b.op(&p.b.conj(b2), &p.b.conj(b1));
            p.act(&bb, &p.x.conj(&p.act(b1, x2)))
        },
        move |v| {
            let (x2, b2) = (&v[0], &v[2]);
            q.act(&q.b.conj(b2), &q.x.conj(x2))
        },
    );
    [conj_commutes, norm_central, same_index, expanded, antihom]
}

pub fn verify_action_compatibility(phi: &ExternalAction, plan: &EnumerationPlan) -> Result<CompatibilityReport, PlanError> {
    let factors = Verdict::all(
        "factor axioms",
        &[verify_conjugation_axioms(&phi.x, plan)?, verify_conjugation_axioms(&phi.b, plan)?],
    );
    let [c, n, s, x, a] = compatibility_laws(phi);
    Ok(CompatibilityReport {
        factors,
        conj_commutes: c.check(plan)?,
        norm_central: n.check(plan)?,
        norm_central_same_index: s.check(plan)?,
        norm_central_expanded: x.check(plan)?,
        antihom: a.check(plan)?,
    })
}

/// `X ⋊ B` with `(x₁,b₁)+(x₂,b₂) = (x₁ + b₁·x₂, b₁+b₂)` and
/// `conj(x,b) = (b̄·x̄, b̄)`, packaged as the extension with `k = (−,0)`,
/// `f = π₂`, `r = (0,−)`, `q = π₁`. The action laws, compatibility and
/// cancellation are checked under `plan` first.
pub fn semidirect(phi: &ExternalAction, plan: &EnumerationPlan) -> Result<SchreierExtension, SchreierError> {
    if let Outcome::Fails(w) = verify_action_laws(phi, plan)?.outcome {
        return Err(SchreierError::ActionLawFailed(w));
    }
    let report = verify_action_compatibility(phi, plan)?;
    if let Outcome::Fails(w) = report.gate().outcome {
        return Err(SchreierError::Incompatible(w));
    }
    let act = phi.act_fn();
    let name = format!("{}x|{}", phi.x.name(), phi.b.name());
    let a = PairCarrier::semidirect(&phi.x, &phi.b, move |b, x| act(b, x)).into_structure(name)?;
    if let Outcome::Fails(w) = verify_cancellation(&a, plan)?.outcome {
        return Err(SchreierError::CancellationFailure(w));
    }
    let (x, b) = (&phi.x, &phi.b);
    let (zb, zx) = (b.zero(), x.zero());
    let k = Hom::new("k", x, &a, move |v| Elem::pair(v.clone(), zb.clone()));
    let f = Hom::new("f", &a, b, |p| p.snd().clone());
    let r = Hom::new("r", b, &a, move |v| Elem::pair(zx.clone(), v.clone()));
    schreier_from_candidate(&k, &f, &r, |p| p.fst().clone(), plan)
}

/// Result of comparing an extension with the semidirect product of its
/// own action.
#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub semidirect: SchreierExtension,
    pub alpha: Hom,
    pub beta: Hom,
    pub verdicts: Vec<Verdict>,
    pub laws: Vec<Law>,
}

impl RoundTrip {
    pub fn verdict(&self) -> Verdict {
        Verdict::all("round trip", &self.verdicts)
    }
}

/// extension → action → semidirect product, and the maps
/// `α(a) = (q(a), f(a))`, `β(x,b) = k(x) + r(b)` between `A` and `X ⋊ B`:
/// both homomorphisms, mutually inverse, and commuting with `k`, `f`, `r`.
/// The semidirect product is built under the extension's own plan; the
/// comparison runs under `plan`.
pub fn roundtrip_iso(e: &SchreierExtension, plan: &EnumerationPlan) -> Result<RoundTrip, SchreierError> {
    let plan = *plan;
    let phi = action_from_extension(e)?;
    let s = semidirect(&phi, &e.plan)?;
    let (a, ap) = (&e.a, &s.a);
    let c = e.clone();
    let alpha = Hom::new("alpha", a, ap, move |v| Elem::pair(c.q(v), c.f.apply(v)));
    let c = e.clone();
    let beta = Hom::new("beta", ap, a, move |p| c.a.op(&c.k.apply(p.fst()), &c.r.apply(p.snd())));
    let mut verdicts = Vec::new();
    for h in [&alpha, &beta] {
        verdicts.push(crate::algebra::verify_hom(h, &plan)?);
    }
    let eq = |name: &str, src: &ConjStructure, tgt: &ConjStructure, l: Hom, r: Hom| {
        Law::equation(name, &[("v", src)], tgt, move |v| l.apply(&v[0]), move |v| r.apply(&v[0]))
    };
    let mut laws = vec![
        eq("beta-after-alpha", a, a, Hom::compose(&beta, &alpha)?, Hom::identity(a)),
        eq("alpha-after-beta", ap, ap, Hom::compose(&alpha, &beta)?, Hom::identity(ap)),
        eq("alpha-kernel", &e.x, ap, Hom::compose(&alpha, &e.k)?, s.k.clone()),
        eq("alpha-base", a, &e.b, Hom::compose(&s.f, &alpha)?, e.f.clone()),
        eq("alpha-section", &e.b, ap, Hom::compose(&alpha, &e.r)?, s.r.clone()),
        eq("beta-kernel", &e.x, a, Hom::compose(&beta, &s.k)?, e.k.clone()),
        eq("beta-base", ap, &e.b, Hom::compose(&e.f, &beta)?, s.f.clone()),
        eq("beta-section", &e.b, a, Hom::compose(&beta, &s.r)?, e.r.clone()),
    ];
    verdicts.extend(check_all(&laws, &plan)?);
    let (p, s2) = (phi.clone(), s.clone());
    let same_action = Law::equation(
        "action-recovered",
        &[("b", &e.b), ("x", &e.x)],
        &e.x,
        move |v| p.act(&v[0], &v[1]),
        move |v| s2.act(&v[0], &v[1]),
    );
    verdicts.push(same_action.check(&plan)?);
    laws.push(same_action);
    Ok(RoundTrip { semidirect: s, alpha, beta, verdicts, laws })
}

/// `f⁻¹(0)` of a finite carrier, with its inclusion.
pub fn kernel(f: &Hom) -> Result<(ConjStructure, Hom), SchreierError> {
    let a = f.source();
    let els = a.elements().ok_or_else(|| SchreierError::InfiniteKernel(f.name().into()))?;
    let zero = f.target().zero();
    let members: Vec<Elem> = els.iter().filter(|x| f.apply(x) == zero).cloned().collect();
    let ker = SubCarrier::new(a, members)?.into_structure(format!("ker {}", f.name()))?;
    let k = Hom::new(format!("ker {} incl", f.name()), &ker, a, |x| x.clone());
    Ok((ker, k))
}

/// An equivalence relation `R ⊆ X × X` as a subobject, with projections
/// `r1`, `r2` and diagonal `i`.
#[derive(Clone)]
pub struct EquivalenceRelation {
    pub name: String,
    pub x: ConjStructure,
    pub r: ConjStructure,
    pub r1: Hom,
    pub r2: Hom,
    pub i: Hom,
    /// Reflexivity, symmetry and transitivity.
    pub laws: Vec<Verdict>,
    /// `(r1, i)` as a Schreier split epimorphism, if it is one.
    pub first_leg: Result<SchreierExtension, SchreierError>,
    /// `(r2, i)` likewise.
    pub second_leg: Result<SchreierExtension, SchreierError>,
}

impl EquivalenceRelation {
    pub fn is_equivalence(&self) -> bool {
        self.laws.iter().all(|v| v.holds())
    }
}

impl fmt::Debug for EquivalenceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({} on {})", self.name, self.x.name())
    }
}

/// The relation `{(x, y) : related(x, y)}` on a finite structure.
pub fn equivalence_relation(
    name: &str,
    x: &ConjStructure,
    related: impl Fn(&Elem, &Elem) -> bool + Send + Sync + 'static,
) -> Result<EquivalenceRelation, SchreierError> {
    let plan = EnumerationPlan::Exhaustive;
    let related = Arc::new(related);
    let rel = related.clone();
    let r = PairCarrier::direct(x, x).with_member(move |p| rel(p.fst(), p.snd())).into_structure(name)?;
    let members: Vec<Elem> = r.elements().ok_or_else(|| SchreierError::InfiniteKernel(name.into()))?.to_vec();
    // Closure of the carrier under the componentwise structure.
    SubCarrier::new(&PairCarrier::direct(x, x).into_structure(format!("{}^2", x.name()))?, members)?;
    let r1 = Hom::new("r1", &r, x, |p| p.fst().clone());
    let r2 = Hom::new("r2", &r, x, |p| p.snd().clone());
    let i = Hom::new("i", x, &r, |v| Elem::pair(v.clone(), v.clone()));
    let mut laws = Vec::new();
    let rel = related.clone();
    laws.push(Law::new("reflexive", &[("x", x)], move |v| {
        if rel(&v[0], &v[0]) { Ok(()) } else { Err("not related to itself".into()) }
    }));
    let rel = related.clone();
    laws.push(Law::new("symmetric", &[("x", x), ("y", x)], move |v| {
        if !rel(&v[0], &v[1]) || rel(&v[1], &v[0]) { Ok(()) } else { Err("x ~ y but not y ~ x".into()) }
    }));
    let rel = related.clone();
    laws.push(Law::new("transitive", &[("x", x), ("y", x), ("z", x)], move |v| {
        if !(rel(&v[0], &v[1]) && rel(&v[1], &v[2])) || rel(&v[0], &v[2]) {
            Ok(())
        } else {
            Err("x ~ y ~ z but not x ~ z".into())
        }
    }));
    let laws = check_all(&laws, &plan)?;
    let leg = |p: &Hom| kernel(p).and_then(|(_, k)| find_schreier_retraction(&k, p, &i, &plan));
    let (first_leg, second_leg) = (leg(&r1), leg(&r2));
    Ok(EquivalenceRelation { name: name.to_string(), x: x.clone(), r, r1, r2, i, laws, first_leg, second_leg })
}

/// The congruence `x ~ y ⇔ −x + y ∈ N` of a normal subgroup `N` of a
/// finite group.
pub fn congruence_of_normal_subgroup(
    name: &str,
    x: &ConjStructure,
    normal: &[Elem],
) -> Result<EquivalenceRelation, SchreierError> {
    let set: std::collections::HashSet<Elem> = normal.iter().cloned().collect();
    let g = x.clone();
    equivalence_relation(name, x, move |a, b| match g.inverse(a) {
        crate::algebra::InverseLookup::Found(na) => set.contains(&g.op(&na, b)),
        _ => false,
    })
}

/// The normal subgroups of a finite group, each listed in element order,
/// found among the subgroups generated by at most two elements.
pub fn normal_subgroups(g: &ConjStructure) -> Option<Vec<Vec<Elem>>> {
    let els = g.elements()?;
    let z = g.identity()?;
    let mut found: Vec<Vec<Elem>> = Vec::new();
    for x in els.iter() {
        for y in els.iter() {
            let mut sub: std::collections::HashSet<Elem> = [z.clone(), x.clone(), y.clone()].into_iter().collect();
            loop {
                let next: Vec<Elem> =
                    sub.iter().flat_map(|u| sub.iter().map(move |v| (u, v))).map(|(u, v)| g.op(u, v)).collect();
                let before = sub.len();
                sub.extend(next);
                if sub.len() == before {
                    break;
                }
            }
            let normal = els.iter().all(|a| {
                let crate::algebra::InverseLookup::Found(na) = g.inverse(a) else { return false };
                sub.iter().all(|n| sub.contains(&g.op(&g.op(a, n), &na)))
            });
            let listed: Vec<Elem> = els.iter().filter(|e| sub.contains(*e)).cloned().collect();
            if normal && !found.contains(&listed) {
                found.push(listed);
            }
        }
    }
    found.sort_by_key(|n| n.len());
    Some(found)
}

/// The congruences of the normal subgroups of a finite group, named
/// `{group}/N{size}` and numbered when sizes repeat.
pub fn normal_congruences(g: &ConjStructure) -> Result<Vec<EquivalenceRelation>, SchreierError> {
    let subs = normal_subgroups(g).ok_or_else(|| SchreierError::InfiniteKernel(g.name().into()))?;
    let mut out = Vec::new();
    for (i, n) in subs.iter().enumerate() {
        let twins = subs.iter().filter(|m| m.len() == n.len()).count();
        let name = if twins > 1 {
            format!("{}/N{}.{}", g.name(), n.len(), i)
        } else {
            format!("{}/N{}", g.name(), n.len())
        };
        out.push(congruence_of_normal_subgroup(&name, g, n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, direct_product, max_chain, naturals, quaternion_group, NatConj, NatOp};

    fn direct_extension(x: &ConjStructure, b: &ConjStructure) -> (Hom, Hom, Hom, ConjStructure) {
        let a = PairCarrier::direct(x, b).into_structure(format!("{}x{}", x.name(), b.name())).unwrap();
        let (zb, zx) = (b.zero(), x.zero());
        let k = Hom::new("k", x, &a, move |v| Elem::pair(v.clone(), zb.clone()));
        let f = Hom::new("f", &a, b, |p| p.snd().clone());
        let r = Hom::new("r", b, &a, move |v| Elem::pair(zx.clone(), v.clone()));
        (k, f, r, a)
    }

    #[test]
    fn direct_product_retraction_is_first_projection() {
        let (k, f, r, a) = direct_extension(&cyclic(3), &cyclic(2));
        let e = find_schreier_retraction(&k, &f, &r, &EnumerationPlan::Exhaustive).unwrap();
        for el in a.elements().unwrap().iter() {
            assert_eq!(&e.q(el), el.fst());
        }
        assert_eq!(e.q_table().unwrap().len(), 6);
        assert!(verify_retraction_laws(&e, &EnumerationPlan::Exhaustive).unwrap().holds());
        assert!(verify_conjugate_retraction(&e, &EnumerationPlan::Exhaustive).unwrap().holds());
    }

    #[test]
    fn naturals_over_themselves_have_zero_retraction() {
        let n = naturals(NatOp::Add, NatConj::Zero);
        let zero = crate::catalog::trivial();
        let k = Hom::new("k", &zero, &n, |_| Elem::Nat(0));
        let id = Hom::identity(&n);
        let plan = EnumerationPlan::bounded(12).unwrap();
        let e = find_schreier_retraction(&k, &id, &id, &plan).unwrap();
        assert_eq!(e.q(&Elem::Nat(7)), Elem::Idx(0));
    }

    #[test]
    fn corrupted_retraction_is_caught() {
        let (k, f, r, a) = direct_extension(&cyclic(3), &cyclic(2));
        let e = find_schreier_retraction(&k, &f, &r, &EnumerationPlan::Exhaustive).unwrap();
        let (p, q) = (Elem::pair(Elem::Idx(1), Elem::Idx(0)), Elem::pair(Elem::Idx(2), Elem::Idx(0)));
        let good = e.q_map();
        let (p2, q2) = (p.clone(), q.clone());
        let bad = move |v: &Elem| {
            if v == &p2 {
                good(&q2)
            } else if v == &q2 {
                good(&p2)
            } else {
                good(v)
            }
        };
        let err = schreier_from_candidate(&k, &f, &r, bad, &EnumerationPlan::Exhaustive).unwrap_err();
        assert!(matches!(err, SchreierError::LawFailed(_)), "{err}");
        assert!(a.contains(&p));
    }

    #[test]
    fn max_chain_split_is_not_schreier() {
        let a = max_chain(3);
        let b = max_chain(2);
        let f = Hom::from_table("f", &a, &b, vec![Elem::Idx(0), Elem::Idx(0), Elem::Idx(1)]).unwrap();
        let r = Hom::from_table("r", &b, &a, vec![Elem::Idx(0), Elem::Idx(2)]).unwrap();
        let (_, k) = kernel(&f).unwrap();
        let err = find_schreier_retraction(&k, &f, &r, &EnumerationPlan::Exhaustive).unwrap_err();
        match err {
            SchreierError::NotSchreier { element, decompositions } => {
                assert_eq!(element, "2");
                assert_eq!(decompositions.len(), 2);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn semidirect_by_inversion_round_trips() {
        let (z3, z2) = (cyclic(3), cyclic(2));
        let phi = ExternalAction::new(&z2, &z3, |b, x| {
            if b.as_idx() == Some(1) { Elem::Idx((3 - x.as_idx().unwrap()) % 3) } else { x.clone() }
        });
        let plan = EnumerationPlan::Exhaustive;
        assert!(verify_action_laws(&phi, &plan).unwrap().holds());
        let report = verify_action_compatibility(&phi, &plan).unwrap();
        assert!(report.all().iter().all(|v| v.holds()));
        let e = semidirect(&phi, &plan).unwrap();
        assert!(e.verdicts().iter().all(|v| v.holds()));
        let rt = roundtrip_iso(&e, &plan).unwrap();
        assert!(rt.verdict().holds(), "{:?}", rt.verdicts);
    }

    #[test]
    fn identity_conjugation_on_q8_is_incompatible() {
        let bad = crate::catalog::quaternion_group_identity_conj();
        let phi = ExternalAction::trivial(&cyclic(2), &bad);
        let report = verify_action_compatibility(&phi, &EnumerationPlan::Exhaustive).unwrap();
        let w = report.gate();
        assert!(w.fails());
        assert_eq!(w.witness().unwrap().law, "conj-antihom");
        assert!(matches!(semidirect(&phi, &EnumerationPlan::Exhaustive), Err(SchreierError::Incompatible(_))));
        let good = ExternalAction::trivial(&cyclic(2), &quaternion_group());
        assert!(verify_action_compatibility(&good, &EnumerationPlan::Exhaustive).unwrap().gate().holds());
    }

    #[test]
    fn congruences_of_z4() {
        let z4 = cyclic(4);
        let sub = [Elem::Idx(0), Elem::Idx(2)];
        let rel = congruence_of_normal_subgroup("R", &z4, &sub).unwrap();
        assert_eq!(rel.r.size(), Some(8));
        assert!(rel.laws.iter().all(|v| v.holds()));
        assert!(rel.first_leg.is_ok() && rel.second_leg.is_ok());
        let total = direct_product(&z4, &z4);
        assert_eq!(total.size(), Some(16));
    }

    #[test]
    fn normal_subgroup_counts() {
        use crate::catalog::{klein, symmetric3};
        let count = |g: &ConjStructure| normal_subgroups(g).unwrap().len();
        assert_eq!(count(&cyclic(4)), 3);
        assert_eq!(count(&klein()), 5);
        assert_eq!(count(&symmetric3()), 3);
        assert_eq!(count(&quaternion_group()), 6);
        let rels = normal_congruences(&klein()).unwrap();
        assert!(rels.iter().all(|r| r.is_equivalence() && r.first_leg.is_ok() && r.second_leg.is_ok()));
    }
}
