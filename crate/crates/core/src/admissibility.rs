//! Admissibility of diagrams over pullbacks of split epimorphisms: the
//! solvability/additivity criterion, a closure-search oracle, Huq
//! commutation and the comparison with Smith commutation of equivalence
//! relations.

use std::fmt;

use crate::algebra::{
    all_homs, check_all, extend_from_forced, verify_hom, ConjStructure, ExtendError, Extension, Hom, HomError, Law,
    Outcome, PairCarrier, StructureError, Verdict, Witness, DEFAULT_EXTENSION_BOUND,
};
use crate::carriers::{Elem, EnumerationPlan, PlanError};
use crate::catalog::{cyclic, klein, quaternion_group, symmetric3, trivial};
use crate::schreier::{EquivalenceRelation, ExternalAction, SchreierError, SchreierExtension};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdmissibilityError {
    #[error("not an admissibility diagram: {0}")]
    Invalid(Witness),
    #[error("kernel images do not commute: {0}")]
    HuqFailed(Witness),
    #[error("relation `{0}` does not have the required Schreier leg: {1}")]
    NotSchreierRelation(String, String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Extend(#[from] ExtendError),
}

/// Split epimorphisms `(f, r): A ⇄ B` and `(g, s): C ⇄ B` with maps
/// `α: A → D`, `β: B → D`, `γ: C → D` such that `α∘r = β = γ∘s`.
#[derive(Clone)]
pub struct AdmissibilityDiagram {
    pub name: String,
    pub a: ConjStructure,
    pub b: ConjStructure,
    pub c: ConjStructure,
    pub d: ConjStructure,
    pub f: Hom,
    pub r: Hom,
    pub g: Hom,
    pub s: Hom,
    pub alpha: Hom,
    pub beta: Hom,
    pub gamma: Hom,
}

impl fmt::Debug for AdmissibilityDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Diagram({}: {} -> {} <- {} into {})",
            self.name,
            self.a.name(),
            self.b.name(),
            self.c.name(),
            self.d.name()
        )
    }
}

impl AdmissibilityDiagram {
    #[allow(clippy::too_many_arguments)]
    pub fn new(name: impl Into<String>, f: &Hom, r: &Hom, g: &Hom, s: &Hom, alpha: &Hom, beta: &Hom, gamma: &Hom) -> Self {
        AdmissibilityDiagram {
            name: name.into(),
            a: f.source().clone(),
            b: f.target().clone(),
            c: g.source().clone(),
            d: alpha.target().clone(),
            f: f.clone(),
            r: r.clone(),
            g: g.clone(),
            s: s.clone(),
            alpha: alpha.clone(),
            beta: beta.clone(),
            gamma: gamma.clone(),
        }
    }

    /// The homomorphism laws of all seven maps and the equations
    /// `f∘r = 1 = g∘s`, `α∘r = β = γ∘s`.
    pub fn invariant_verdicts(&self, plan: &EnumerationPlan) -> Result<Vec<Verdict>, AdmissibilityError> {
        let mut out = Vec::new();
        for h in [&self.f, &self.r, &self.g, &self.s, &self.alpha, &self.beta, &self.gamma] {
            out.push(verify_hom(h, plan)?);
        }
        let eq = |name: &str, l: (Hom, Hom), r: Option<Hom>, target: &ConjStructure| {
            let (outer, inner) = l;
            Law::equation(
                name,
                &[("b", &self.b)],
                target,
                move |v| outer.apply(&inner.apply(&v[0])),
                move |v| r.as_ref().map_or_else(|| v[0].clone(), |h| h.apply(&v[0])),
            )
        };
        let laws = vec![
            eq("first-split", (self.f.clone(), self.r.clone()), None, &self.b),
            eq("second-split", (self.g.clone(), self.s.clone()), None, &self.b),
            eq("first-base", (self.alpha.clone(), self.r.clone()), Some(self.beta.clone()), &self.d),
            eq("second-base", (self.gamma.clone(), self.s.clone()), Some(self.beta.clone()), &self.d),
        ];
        out.extend(check_all(&laws, plan)?);
        Ok(out)
    }

    pub fn validate(&self, plan: &EnumerationPlan) -> Result<(), AdmissibilityError> {
        for v in self.invariant_verdicts(plan)? {
            if let Outcome::Fails(w) = v.outcome {
                return Err(AdmissibilityError::Invalid(w));
            }
        }
        Ok(())
    }
}

/// `A ×_B C` with its projections and the sections
/// `e₁ = ⟨1, s∘f⟩`, `e₂ = ⟨r∘g, 1⟩`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub p: ConjStructure,
    pub p1: Hom,
    pub p2: Hom,
    pub e1: Hom,
    pub e2: Hom,
}

/// The pullback of `f` and `g`. When Schreier structures on both legs are
/// supplied, random elements are drawn as `(k(x) + r(b), l(y) + s(b))`
/// instead of by rejection.
pub fn build_pullback(
    d: &AdmissibilityDiagram,
    legs: Option<(&SchreierExtension, &SchreierExtension)>,
) -> Result<Pullback, AdmissibilityError> {
    let (f, g) = (d.f.clone(), d.g.clone());
    let mut carrier = PairCarrier::direct(&d.a, &d.c).with_member(move |p| f.apply(p.fst()) == g.apply(p.snd()));
    if let Some((ef, eg)) = legs {
        let (ef1, eg1) = (ef.clone(), eg.clone());
        let b = d.b.clone();
        let draw = move |x: &Elem, y: &Elem, bb: &Elem| {
            Elem::pair(
                ef1.a.op(&ef1.k.apply(x), &ef1.r.apply(bb)),
                eg1.a.op(&eg1.k.apply(y), &eg1.r.apply(bb)),
            )
        };
        let draw2 = draw.clone();
        let (ef2, eg2, b2) = (ef.clone(), eg.clone(), b.clone());
        let (ef3, eg3) = (ef.clone(), eg.clone());
        carrier = carrier
            .with_sampler(move |rng| {
                let (x, y, bb) = (ef2.x.sample(rng), eg2.x.sample(rng), b2.sample(rng));
                draw(&x, &y, &bb)
            })
            .with_canonical(move || {
                let mut out = Vec::new();
                for bb in b.canonical() {
                    for x in ef3.x.canonical().into_iter().take(3) {
                        for y in eg3.x.canonical().into_iter().take(3) {
                            out.push(draw2(&x, &y, &bb));
                        }
                    }
                }
                out
            });
    }
    let p = carrier.into_structure(format!("{} x_{} {}", d.a.name(), d.b.name(), d.c.name()))?;
    let p1 = Hom::new("p1", &p, &d.a, |x| x.fst().clone());
    let p2 = Hom::new("p2", &p, &d.c, |x| x.snd().clone());
    let (f, s) = (d.f.clone(), d.s.clone());
    let e1 = Hom::new("e1", &d.a, &p, move |a| Elem::pair(a.clone(), s.apply(&f.apply(a))));
    let (g, r) = (d.g.clone(), d.r.clone());
    let e2 = Hom::new("e2", &d.c, &p, move |c| Elem::pair(r.apply(&g.apply(c)), c.clone()));
    Ok(Pullback { p, p1, p2, e1, e2 })
}

/// Both sections are homomorphisms into the pullback and `e₁∘r = e₂∘s`.
pub fn pullback_verdicts(d: &AdmissibilityDiagram, pb: &Pullback, plan: &EnumerationPlan) -> Result<Vec<Verdict>, AdmissibilityError> {
    let mut out = vec![verify_hom(&pb.e1, plan)?, verify_hom(&pb.e2, plan)?];
    let (e1, e2, r, s) = (pb.e1.clone(), pb.e2.clone(), d.r.clone(), d.s.clone());
    let law = Law::equation(
        "sections-agree-on-base",
        &[("b", &d.b)],
        &pb.p,
        move |v| e1.apply(&r.apply(&v[0])),
        move |v| e2.apply(&s.apply(&v[0])),
    );
    out.push(law.check(plan)?);
    Ok(out)
}

/// Whether the images of `e₁` and `e₂` generate the pullback under the
/// operation and conjugation.
pub fn verify_jointly_generated(d: &AdmissibilityDiagram, pb: &Pullback) -> Result<Verdict, AdmissibilityError> {
    let mut prescribed = Vec::new();
    for a in d.a.elements().ok_or_else(|| ExtendError::InfiniteDomain(d.a.name().into()))?.iter() {
        let p = pb.e1.apply(a);
        prescribed.push((p.clone(), p));
    }
    for c in d.c.elements().ok_or_else(|| ExtendError::InfiniteDomain(d.c.name().into()))?.iter() {
        let p = pb.e2.apply(c);
        prescribed.push((p.clone(), p));
    }
    let n = pb.p.size().unwrap_or(0) as u64;
    Ok(match extend_from_forced(&pb.p, &pb.p, &prescribed, DEFAULT_EXTENSION_BOUND)? {
        Extension::NotGenerated { missing, .. } => {
            let w = Witness {
                law: "jointly-generated".into(),
                vars: vec!["p".into()],
                shown: vec![pb.p.show(&missing)],
                elems: vec![missing],
                detail: "not generated by the images of e1 and e2".into(),
            };
            Verdict::failure("jointly-generated", n, w)
        }
        _ => Verdict::new("jointly-generated", n, Outcome::HoldsExhaustive),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Images of the unique `φ` in the pullback's element order.
    Admissible(Vec<Elem>),
    NotAdmissible { at: Elem, reason: String },
}

impl OracleOutcome {
    pub fn is_admissible(&self) -> bool {
        matches!(self, OracleOutcome::Admissible(_))
    }

    pub fn verdict(&self, pb: &Pullback) -> Verdict {
        let n = pb.p.size().unwrap_or(0) as u64;
        match self {
            OracleOutcome::Admissible(_) => Verdict::new("admissible", n, Outcome::HoldsExhaustive),
            OracleOutcome::NotAdmissible { at, reason } => Verdict::failure(
                "admissible",
                n,
                Witness {
                    law: "admissible".into(),
                    vars: vec!["p".into()],
                    elems: vec![at.clone()],
                    shown: vec![pb.p.show(at)],
                    detail: reason.clone(),
                },
            ),
        }
    }
}

/// Decides admissibility by closing the forced values `φ(e₁(a)) = α(a)`,
/// `φ(e₂(c)) = γ(c)` under the operation and conjugation. A collision
/// means no `φ` exists; an element left unreached means `φ` is not
/// determined, which is reported as a failure of uniqueness.
pub fn check_admissible_oracle(
    d: &AdmissibilityDiagram,
    pb: &Pullback,
    bound: usize,
) -> Result<OracleOutcome, AdmissibilityError> {
    let mut prescribed = Vec::new();
    for a in d.a.elements().ok_or_else(|| ExtendError::InfiniteDomain(d.a.name().into()))?.iter() {
        prescribed.push((pb.e1.apply(a), d.alpha.apply(a)));
    }
    for c in d.c.elements().ok_or_else(|| ExtendError::InfiniteDomain(d.c.name().into()))?.iter() {
        prescribed.push((pb.e2.apply(c), d.gamma.apply(c)));
    }
    Ok(match extend_from_forced(&pb.p, &d.d, &prescribed, bound)? {
        Extension::Unique(images) => OracleOutcome::Admissible(images),
        Extension::Conflict { at, first, second } => OracleOutcome::NotAdmissible {
            reason: format!("φ would take both values {} and {}", d.d.show(&first), d.d.show(&second)),
            at,
        },
        Extension::NotGenerated { missing, .. } => OracleOutcome::NotAdmissible {
            at: missing,
            reason: "not generated by e1 and e2, so φ is not unique".into(),
        },
    })
}

/// Solutions `x` of `x + β̄(b) + β(b) = α(a) + β̄(b) + γ(c)` for
/// `b = f(a) = g(c)`; `None` when `D` can neither solve nor be scanned.
pub fn criterion_solutions(d: &AdmissibilityDiagram, p: &Elem) -> Option<Vec<Elem>> {
    let (a, c) = (p.fst(), p.snd());
    let bb = d.beta.apply(&d.f.apply(a));
    let bc = d.d.conj(&bb);
    let by = d.d.op(&bc, &bb);
    let rhs = d.d.sum(&[&d.alpha.apply(a), &bc, &d.gamma.apply(c)]);
    d.d.solve_right(&rhs, &by)
}

/// `α(a) + β̄(b) + γ(c)`
fn criterion_term(d: &AdmissibilityDiagram, p: &Elem) -> Elem {
    let bb = d.beta.apply(&d.f.apply(p.fst()));
    d.d.sum(&[&d.alpha.apply(p.fst()), &d.d.conj(&bb), &d.gamma.apply(p.snd())])
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    /// Each equation has exactly one solution.
    pub solvable: Verdict,
    /// `α(a₁+a₂) + conj β(b₁+b₂) + γ(c₁+c₂)` equals the sum of the two
    /// single terms.
    pub additive: Verdict,
    /// The map sending `(a, c)` to the solution, when both hold.
    pub phi: Option<Hom>,
    /// For that map: homomorphism laws, `φ∘e₁ = α`, `φ∘e₂ = γ` and
    /// `φ(0,0) = 0`.
    pub phi_verdicts: Vec<Verdict>,
}

impl CriterionReport {
    pub fn holds(&self) -> bool {
        self.solvable.holds() && self.additive.holds()
    }

    pub fn verdict(&self) -> Verdict {
        Verdict::all("admissibility criterion", &[self.solvable.clone(), self.additive.clone()])
    }
}

pub fn check_criterion(
    d: &AdmissibilityDiagram,
    pb: &Pullback,
    plan: &EnumerationPlan,
) -> Result<CriterionReport, AdmissibilityError> {
    let dd = d.clone();
    let solvable = Law::new("criterion-solvable", &[("p", &pb.p)], move |v| match criterion_solutions(&dd, &v[0]) {
        None => Err(format!("`{}` cannot solve the equation", dd.d.name())),
        Some(s) if s.len() == 1 => Ok(()),
        Some(s) if s.is_empty() => Err("no solution".into()),
        Some(s) => Err(format!("{} solutions", s.len())),
    })
    .check(plan)?;
    let (d1, d2) = (d.clone(), d.clone());
    let additive = Law::equation(
        "criterion-additive",
        &[("p", &pb.p), ("p'", &pb.p)],
        &d.d,
        move |v| criterion_term(&d1, &pb_sum(&d1, &v[0], &v[1])),
        move |v| d2.d.op(&criterion_term(&d2, &v[0]), &criterion_term(&d2, &v[1])),
    )
    .check(plan)?;
    let mut phi = None;
    let mut phi_verdicts = Vec::new();
    if solvable.holds() && additive.holds() {
        let dd = d.clone();
        let h = Hom::new("phi", &pb.p, &d.d, move |p| {
            criterion_solutions(&dd, p).and_then(|s| s.into_iter().next()).expect("solvable")
        });
        phi_verdicts = phi_restriction_verdicts(d, pb, &h, plan)?;
        phi = Some(h);
    }
    Ok(CriterionReport { solvable, additive, phi, phi_verdicts })
}

fn pb_sum(d: &AdmissibilityDiagram, p: &Elem, q: &Elem) -> Elem {
    Elem::pair(d.a.op(p.fst(), q.fst()), d.c.op(p.snd(), q.snd()))
}

/// Homomorphism laws of `φ`, `φ∘e₁ = α`, `φ∘e₂ = γ` and, for monoids,
/// `φ(0,0) = 0`.
pub fn phi_restriction_verdicts(
    d: &AdmissibilityDiagram,
    pb: &Pullback,
    phi: &Hom,
    plan: &EnumerationPlan,
) -> Result<Vec<Verdict>, AdmissibilityError> {
    let mut out = vec![verify_hom(phi, plan)?];
    let (p1, e1, al) = (phi.clone(), pb.e1.clone(), d.alpha.clone());
    let (p2, e2, ga) = (phi.clone(), pb.e2.clone(), d.gamma.clone());
    let mut laws = vec![
        Law::equation("restricts-to-first", &[("a", &d.a)], &d.d, move |v| p1.apply(&e1.apply(&v[0])), move |v| al.apply(&v[0])),
        Law::equation("restricts-to-second", &[("c", &d.c)], &d.d, move |v| p2.apply(&e2.apply(&v[0])), move |v| ga.apply(&v[0])),
    ];
    if pb.p.is_monoid() && d.d.is_monoid() {
        let (p3, zp, zd) = (phi.clone(), pb.p.zero(), d.d.zero());
        laws.push(Law::equation("pointed", &[], &d.d, move |_| p3.apply(&zp), move |_| zd.clone()));
    }
    out.extend(check_all(&laws, plan)?);
    Ok(out)
}

/// `k₁(x) + k₂(y) = k₂(y) + k₁(x)` for maps into a common target.
pub fn check_huq_commute(k1: &Hom, k2: &Hom, plan: &EnumerationPlan) -> Result<Verdict, AdmissibilityError> {
    if !(k1.target().same(k2.target()) || k1.target().name() == k2.target().name()) {
        return Err(AdmissibilityError::Mismatch(format!(
            "`{}` and `{}` have different targets",
            k1.name(),
            k2.name()
        )));
    }
    let t = k1.target().clone();
    let (a1, a2, b1, b2) = (k1.clone(), k1.clone(), k2.clone(), k2.clone());
    let (t1, t2) = (t.clone(), t.clone());
    Ok(Law::equation(
        "huq-commute",
        &[("x", k1.source()), ("y", k2.source())],
        &t,
        move |v| t1.op(&a1.apply(&v[0]), &b1.apply(&v[1])),
        move |v| t2.op(&b2.apply(&v[1]), &a2.apply(&v[0])),
    )
    .check(plan)?)
}

#[derive(Debug, Clone)]
pub struct HuqAdmissibility {
    pub commute: Verdict,
    /// `φ(a, c) = α(k(q(a))) + γ(c)`
    pub phi: Hom,
    pub verdicts: Vec<Verdict>,
}

/// When `α∘k` and `γ∘l` commute, `φ(a, c) = α(k(q(a))) + γ(c)` is a
/// morphism with `φ∘e₁ = α` and `φ∘e₂ = γ`.
pub fn huq_admissibility(
    d: &AdmissibilityDiagram,
    pb: &Pullback,
    ef: &SchreierExtension,
    eg: &SchreierExtension,
    plan: &EnumerationPlan,
) -> Result<HuqAdmissibility, AdmissibilityError> {
    let (al, ka) = (d.alpha.clone(), ef.k.clone());
    let ak = Hom::new("alpha k", &ef.x, &d.d, move |x| al.apply(&ka.apply(x)));
    let (ga, kc) = (d.gamma.clone(), eg.k.clone());
    let gl = Hom::new("gamma l", &eg.x, &d.d, move |y| ga.apply(&kc.apply(y)));
    let commute = check_huq_commute(&ak, &gl, plan)?;
    if let Outcome::Fails(w) = &commute.outcome {
        return Err(AdmissibilityError::HuqFailed(w.clone()));
    }
    let (dd, e) = (d.clone(), ef.clone());
    let phi = Hom::new("phi", &pb.p, &d.d, move |p| {
        dd.d.op(&dd.alpha.apply(&e.k.apply(&e.q(p.fst()))), &dd.gamma.apply(p.snd()))
    });
    let verdicts = phi_restriction_verdicts(d, pb, &phi, plan)?;
    Ok(HuqAdmissibility { commute, phi, verdicts })
}

/// Admissibility by the oracle on finite pullbacks within `bound`, and by
/// the criterion otherwise.
pub fn admissibility_verdict(
    d: &AdmissibilityDiagram,
    pb: &Pullback,
    plan: &EnumerationPlan,
) -> Result<Verdict, AdmissibilityError> {
    if pb.p.size().is_some_and(|n| n <= DEFAULT_EXTENSION_BOUND) {
        return Ok(check_admissible_oracle(d, pb, DEFAULT_EXTENSION_BOUND)?.verdict(pb));
    }
    Ok(check_criterion(d, pb, plan)?.verdict().renamed("admissible"))
}

#[derive(Debug, Clone)]
pub struct OneSidedReport {
    /// A morphism `φ` with `φ∘e₁ = α`, `φ∘e₂ = γ` exists.
    pub admissible: Verdict,
    /// A morphism `φ` with `φ∘⟨k, 0⟩ = α∘k`, `φ∘e₂ = γ` exists.
    pub kernel_admissible: Verdict,
    /// `α(k(g(c)·x)) + γ(c) = γ(c) + α(k(x))`
    pub identity: Verdict,
}

impl OneSidedReport {
    pub fn agree(&self) -> bool {
        let s = self.admissible.holds();
        self.kernel_admissible.holds() == s && self.identity.holds() == s
    }
}

/// The three equivalent conditions for a diagram whose first leg is
/// Schreier. On finite carriers existence is decided by closure search;
/// otherwise the criterion and the candidate `α(k(q(a))) + γ(c)` are
/// checked under `plan`.
pub fn one_sided_admissibility(
    d: &AdmissibilityDiagram,
    pb: &Pullback,
    ef: &SchreierExtension,
    plan: &EnumerationPlan,
) -> Result<OneSidedReport, AdmissibilityError> {
    let admissible = admissibility_verdict(d, pb, plan)?;
    let finite = pb.p.size().is_some_and(|n| n <= DEFAULT_EXTENSION_BOUND);
    let kernel_admissible = if finite {
        let mut prescribed = Vec::new();
        let zc = d.c.zero();
        for x in ef.x.elements().ok_or_else(|| ExtendError::InfiniteDomain(ef.x.name().into()))?.iter() {
            prescribed.push((Elem::pair(ef.k.apply(x), zc.clone()), d.alpha.apply(&ef.k.apply(x))));
        }
        for c in d.c.elements().expect("finite").iter() {
            prescribed.push((pb.e2.apply(c), d.gamma.apply(c)));
        }
        let n = pb.p.size().unwrap_or(0) as u64;
        match extend_from_forced(&pb.p, &d.d, &prescribed, DEFAULT_EXTENSION_BOUND)? {
            Extension::Unique(_) => Verdict::new("kernel-admissible", n, Outcome::HoldsExhaustive),
            Extension::Conflict { at, first, second } => Verdict::failure(
                "kernel-admissible",
                n,
                Witness {
                    law: "kernel-admissible".into(),
                    vars: vec!["p".into()],
                    shown: vec![pb.p.show(&at)],
                    elems: vec![at],
                    detail: format!("φ would take both {} and {}", d.d.show(&first), d.d.show(&second)),
                },
            ),
            Extension::NotGenerated { missing, .. } => Verdict::failure(
                "kernel-admissible",
                n,
                Witness {
                    law: "kernel-admissible".into(),
                    vars: vec!["p".into()],
                    shown: vec![pb.p.show(&missing)],
                    elems: vec![missing],
                    detail: "not generated by ⟨k,0⟩ and e2".into(),
                },
            ),
        }
    } else {
        let (dd, e) = (d.clone(), ef.clone());
        let phi = Hom::new("phi", &pb.p, &d.d, move |p| {
            dd.d.op(&dd.alpha.apply(&e.k.apply(&e.q(p.fst()))), &dd.gamma.apply(p.snd()))
        });
        let mut vs = vec![verify_hom(&phi, plan)?];
        let (p1, k1, al, zc) = (phi.clone(), ef.k.clone(), d.alpha.clone(), d.c.zero());
        let k2 = ef.k.clone();
        let (p2, e2, ga) = (phi.clone(), pb.e2.clone(), d.gamma.clone());
        let laws = [
            Law::equation(
                "restricts-to-kernel",
                &[("x", &ef.x)],
                &d.d,
                move |v| p1.apply(&Elem::pair(k1.apply(&v[0]), zc.clone())),
                move |v| al.apply(&k2.apply(&v[0])),
            ),
            Law::equation("restricts-to-second", &[("c", &d.c)], &d.d, move |v| p2.apply(&e2.apply(&v[0])), move |v| ga.apply(&v[0])),
        ];
        vs.extend(check_all(&laws, plan)?);
        Verdict::all("kernel-admissible", &vs)
    };
    let (dd, e) = (d.clone(), ef.clone());
    let (dd2, e2) = (d.clone(), ef.clone());
    let identity = Law::equation(
        "kernel-action-commutes",
        &[("c", &d.c), ("x", &ef.x)],
        &d.d,
        move |v| {
            let acted = e.act(&dd.g.apply(&v[0]), &v[1]);
            dd.d.op(&dd.alpha.apply(&e.k.apply(&acted)), &dd.gamma.apply(&v[0]))
        },
        move |v| dd2.d.op(&dd2.gamma.apply(&v[0]), &dd2.alpha.apply(&e2.k.apply(&v[1]))),
    )
    .check(plan)?;
    Ok(OneSidedReport { admissible, kernel_admissible, identity })
}

#[derive(Debug, Clone)]
pub struct ReflexiveReport {
    pub admissible: Verdict,
    /// `α(k(h(y)·x)) + γ(k(y)) = γ(k(y)) + α(k(x))` with `h = g∘k`.
    pub identity: Verdict,
}

impl ReflexiveReport {
    pub fn agree(&self) -> bool {
        self.admissible.holds() == self.identity.holds()
    }
}

/// Admissibility of a diagram with `C = A` and `s = r` over a Schreier
/// leg, compared with the twisted commutation identity on the kernel.
pub fn reflexive_admissibility(
    d: &AdmissibilityDiagram,
    pb: &Pullback,
    ef: &SchreierExtension,
    plan: &EnumerationPlan,
) -> Result<ReflexiveReport, AdmissibilityError> {
    if !(d.a.same(&d.c) || d.a.name() == d.c.name()) {
        return Err(AdmissibilityError::Mismatch(format!("`{}` and `{}` differ", d.a.name(), d.c.name())));
    }
    let admissible = admissibility_verdict(d, pb, plan)?;
    let (dd, e) = (d.clone(), ef.clone());
    let (dd2, e2) = (d.clone(), ef.clone());
    let identity = Law::equation(
        "twisted-commute",
        &[("x", &ef.x), ("y", &ef.x)],
        &d.d,
        move |v| {
            let (x, y) = (&v[0], &v[1]);
            let hy = dd.g.apply(&e.k.apply(y));
            let acted = e.act(&hy, x);
            dd.d.op(&dd.alpha.apply(&e.k.apply(&acted)), &dd.gamma.apply(&e.k.apply(y)))
        },
        move |v| {
            let (x, y) = (&v[0], &v[1]);
            dd2.d.op(&dd2.gamma.apply(&e2.k.apply(y)), &dd2.alpha.apply(&e2.k.apply(x)))
        },
    )
    .check(plan)?;
    Ok(ReflexiveReport { admissible, identity })
}

/// The diagram whose admissibility says that `R` and `S` commute:
/// `(r₂, i_R)` and `(s₁, i_S)` over `X`, with `α = r₁`, `β = 1`, `γ = s₂`.
pub fn relation_diagram(rel_r: &EquivalenceRelation, rel_s: &EquivalenceRelation) -> AdmissibilityDiagram {
    AdmissibilityDiagram::new(
        format!("{} vs {}", rel_r.name, rel_s.name),
        &rel_r.r2,
        &rel_r.i,
        &rel_s.r1,
        &rel_s.i,
        &rel_r.r1,
        &Hom::identity(&rel_r.x),
        &rel_s.r2,
    )
}

#[derive(Debug, Clone)]
pub struct SmithHuqReport {
    /// Admissibility of the relation diagram.
    pub smith: Verdict,
    /// Commutation of `r₁∘ker(r₂)` and `s₂∘ker(s₁)`.
    pub huq: Verdict,
}

impl SmithHuqReport {
    pub fn agree(&self) -> bool {
        self.smith.holds() == self.huq.holds()
    }
}

/// Compares the two commutation notions for a pair of relations whose
/// legs `(r₂, i_R)` and `(s₁, i_S)` are Schreier.
pub fn smith_is_huq(
    rel_r: &EquivalenceRelation,
    rel_s: &EquivalenceRelation,
    plan: &EnumerationPlan,
) -> Result<SmithHuqReport, AdmissibilityError> {
    let leg = |rel: &EquivalenceRelation, l: &Result<SchreierExtension, SchreierError>| match l {
        Ok(e) => Ok(e.clone()),
        Err(err) => Err(AdmissibilityError::NotSchreierRelation(rel.name.clone(), err.to_string())),
    };
    let er = leg(rel_r, &rel_r.second_leg)?;
    let es = leg(rel_s, &rel_s.first_leg)?;
    let d = relation_diagram(rel_r, rel_s);
    let pb = build_pullback(&d, Some((&er, &es)))?;
    let smith = admissibility_verdict(&d, &pb, plan)?.renamed("smith-commute");
    let (r1, k) = (rel_r.r1.clone(), er.k.clone());
    let n_r = Hom::new(format!("{} normalization", rel_r.name), &er.x, &rel_r.x, move |x| r1.apply(&k.apply(x)));
    let (s2, l) = (rel_s.r2.clone(), es.k.clone());
    let n_s = Hom::new(format!("{} normalization", rel_s.name), &es.x, &rel_s.x, move |y| s2.apply(&l.apply(y)));
    let huq = check_huq_commute(&n_r, &n_s, plan)?;
    Ok(SmithHuqReport { smith, huq })
}

/// A split epimorphism `(f, r): A ⇄ B`.
#[derive(Clone, Debug)]
pub struct SplitLeg {
    pub f: Hom,
    pub r: Hom,
}

fn projection_leg(k: &ConjStructure, b: &ConjStructure, act: Option<ExternalAction>) -> SplitLeg {
    let name = format!("{}x{}", k.name(), b.name());
    let a = match act {
        Some(phi) => {
            let f = phi.act_fn();
            PairCarrier::semidirect(k, b, move |bb, x| f(bb, x)).into_structure(format!("{}x|{}", k.name(), b.name()))
        }
        None => PairCarrier::direct(k, b).into_structure(name),
    }
    .expect("pair carrier");
    let zk = k.zero();
    SplitLeg {
        f: Hom::new("f", &a, b, |p| p.snd().clone()),
        r: Hom::new("r", b, &a, move |x| Elem::pair(zk.clone(), x.clone())),
    }
}

/// Split epimorphisms onto `b` with domains of at most six elements, for
/// `b` trivial, `ℤ₂` or `ℤ₃`.
pub fn split_legs(b: &ConjStructure) -> Vec<SplitLeg> {
    let id = SplitLeg { f: Hom::identity(b), r: Hom::identity(b) };
    match b.size() {
        Some(1) => [trivial(), cyclic(2), cyclic(3), cyclic(4), klein(), symmetric3(), cyclic(5), cyclic(6)]
            .iter()
            .map(|a| SplitLeg { f: Hom::zero(a, b), r: Hom::zero(b, a) })
            .collect(),
        Some(2) => {
            let z3 = cyclic(3);
            let inversion = ExternalAction::new(b, &z3, |bb, x| {
                if bb.as_idx() == Some(1) { Elem::Idx((3 - x.as_idx().expect("Z3")) % 3) } else { x.clone() }
            });
            let s3 = symmetric3();
            let sign = [0, 1, 1, 1, 0, 0].iter().map(|&i| Elem::Idx(i)).collect();
            let transposition = vec![Elem::Idx(0), Elem::Idx(1)];
            vec![
                id,
                projection_leg(&cyclic(2), b, None),
                projection_leg(&z3, b, None),
                projection_leg(&z3, b, Some(inversion)),
                SplitLeg {
                    f: Hom::from_table("sign", &s3, b, sign).expect("sign"),
                    r: Hom::from_table("r", b, &s3, transposition).expect("section"),
                },
            ]
        }
        _ => vec![id, projection_leg(&cyclic(2), b, None)],
    }
}

/// Diagrams kept per shape (legs and target) in [`diagram_family`].
const PER_SHAPE: usize = 3;

/// A deterministic family of finite admissibility diagrams: bases trivial,
/// `ℤ₂`, `ℤ₃`; legs from [`split_legs`]; targets `ℤ₂`, `ℤ₃`, `ℤ₄`, `S₃`,
/// `Q8`; for each shape up to [`PER_SHAPE`] choices of `(α, β, γ)` spread
/// over all homomorphisms satisfying `α∘r = β = γ∘s`.
pub fn diagram_family() -> Vec<AdmissibilityDiagram> {
    let targets = [cyclic(2), cyclic(3), cyclic(4), symmetric3(), quaternion_group()];
    let mut out = Vec::new();
    for b in [trivial(), cyclic(2), cyclic(3)] {
        let legs = split_legs(&b);
        let bs = b.elements().expect("finite");
        for (i, l1) in legs.iter().enumerate() {
            for l2 in &legs[i..] {
                for d in &targets {
                    let homs_a = all_homs(l1.f.source(), d, "alpha").expect("finite");
                    let homs_c = all_homs(l2.f.source(), d, "gamma").expect("finite");
                    let mut combos = Vec::new();
                    for beta in all_homs(&b, d, "beta").expect("finite") {
                        let over = |h: &Hom, r: &Hom| bs.iter().all(|x| h.apply(&r.apply(x)) == beta.apply(x));
                        let alphas: Vec<&Hom> = homs_a.iter().filter(|h| over(h, &l1.r)).collect();
                        let gammas: Vec<&Hom> = homs_c.iter().filter(|h| over(h, &l2.r)).collect();
                        for al in &alphas {
                            for ga in &gammas {
                                combos.push((beta.clone(), (*al).clone(), (*ga).clone()));
                            }
                        }
                    }
                    let n = combos.len();
                    let picks: Vec<usize> = if n <= PER_SHAPE {
                        (0..n).collect()
                    } else {
                        let mut p: Vec<usize> = (0..PER_SHAPE).map(|k| k * (n - 1) / (PER_SHAPE - 1)).collect();
                        p.dedup();
                        p
                    };
                    for k in picks {
                        let (beta, al, ga) = &combos[k];
                        let name = format!(
                            "{} -> {} <- {} into {} #{k}",
                            l1.f.source().name(),
                            b.name(),
                            l2.f.source().name(),
                            d.name()
                        );
                        out.push(AdmissibilityDiagram::new(
                            name,
                            &l1.f,
                            &l1.r,
                            &l2.f,
                            &l2.r,
                            &al.renamed("alpha"),
                            &beta.renamed("beta"),
                            &ga.renamed("gamma"),
                        ));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schreier::{congruence_of_normal_subgroup, find_schreier_retraction, kernel};

    fn plan() -> EnumerationPlan {
        EnumerationPlan::Exhaustive
    }

    fn over_trivial(a: &ConjStructure, c: &ConjStructure, d: &ConjStructure, al: Vec<Elem>, ga: Vec<Elem>) -> AdmissibilityDiagram {
        let b = trivial();
        AdmissibilityDiagram::new(
            "test",
            &Hom::zero(a, &b),
            &Hom::zero(&b, a),
            &Hom::zero(c, &b),
            &Hom::zero(&b, c),
            &Hom::from_table("alpha", a, d, al).unwrap(),
            &Hom::zero(&b, d),
            &Hom::from_table("gamma", c, d, ga).unwrap(),
        )
    }

    #[test]
    fn pullback_of_klein_projections_has_eight_elements() {
        let legs = split_legs(&cyclic(2));
        let l = &legs[1];
        let z2 = cyclic(2);
        let d = AdmissibilityDiagram::new("k", &l.f, &l.r, &l.f, &l.r, &Hom::zero(l.f.source(), &z2), &Hom::zero(&z2, &z2), &Hom::zero(l.f.source(), &z2));
        d.validate(&plan()).unwrap();
        let pb = build_pullback(&d, None).unwrap();
        assert_eq!(pb.p.size(), Some(8));
        assert!(pullback_verdicts(&d, &pb, &plan()).unwrap().iter().all(|v| v.holds()));
        assert!(verify_jointly_generated(&d, &pb).unwrap().holds());
        match check_admissible_oracle(&d, &pb, 100).unwrap() {
            OracleOutcome::Admissible(images) => assert!(images.iter().all(|x| *x == Elem::Idx(0))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn noncommuting_transpositions_are_not_admissible() {
        let (z2, s3) = (cyclic(2), symmetric3());
        let (e, t12, t13) = (Elem::Idx(0), s3.parse("(12)").unwrap(), s3.parse("(13)").unwrap());
        let d = over_trivial(&z2, &z2, &s3, vec![e.clone(), t12], vec![e, t13]);
        d.validate(&plan()).unwrap();
        let pb = build_pullback(&d, None).unwrap();
        assert!(!check_admissible_oracle(&d, &pb, 100).unwrap().is_admissible());
        assert!(!check_criterion(&d, &pb, &plan()).unwrap().holds());
    }

    #[test]
    fn abelian_formula_matches_oracle() {
        // φ(a, c) = α(a) − β(f(a)) + γ(c) in ℤ₄ over ℤ₂.
        let z2 = cyclic(2);
        let z4 = cyclic(4);
        let legs = split_legs(&z2);
        let l = &legs[1];
        let a = l.f.source().clone();
        let alpha = Hom::new("alpha", &a, &z4, |p| Elem::Idx((p.fst().as_idx().unwrap() * 2 + p.snd().as_idx().unwrap() * 2) % 4));
        let beta = Hom::new("beta", &z2, &z4, |x| Elem::Idx(x.as_idx().unwrap() * 2));
        let gamma = Hom::new("gamma", &a, &z4, |p| Elem::Idx(p.snd().as_idx().unwrap() * 2));
        let d = AdmissibilityDiagram::new("ab", &l.f, &l.r, &l.f, &l.r, &alpha, &beta, &gamma);
        d.validate(&plan()).unwrap();
        let pb = build_pullback(&d, None).unwrap();
        let OracleOutcome::Admissible(images) = check_admissible_oracle(&d, &pb, 100).unwrap() else { panic!() };
        let report = check_criterion(&d, &pb, &plan()).unwrap();
        assert!(report.holds());
        assert!(report.phi_verdicts.iter().all(|v| v.holds()));
        let phi = report.phi.unwrap();
        for (p, img) in pb.p.elements().unwrap().iter().zip(&images) {
            let (a, c) = (p.fst(), p.snd());
            let formula = (alpha.apply(a).as_idx().unwrap() + 4 - beta.apply(&d.f.apply(a)).as_idx().unwrap()
                + gamma.apply(c).as_idx().unwrap())
                % 4;
            assert_eq!(*img, Elem::Idx(formula));
            assert_eq!(phi.apply(p), *img);
        }
    }

    #[test]
    fn huq_commute_in_q8() {
        let (z2, q8) = (cyclic(2), quaternion_group());
        let i = q8.parse("i").unwrap();
        let j = q8.parse("j").unwrap();
        let ki = Hom::new("x->i", &z2, &q8, move |x| if x.as_idx() == Some(1) { i.clone() } else { Elem::Idx(0) });
        let kj = Hom::new("y->j", &z2, &q8, move |x| if x.as_idx() == Some(1) { j.clone() } else { Elem::Idx(0) });
        assert!(check_huq_commute(&ki, &kj, &plan()).unwrap().fails());
        let zero = Hom::zero(&z2, &q8);
        assert!(check_huq_commute(&ki, &zero, &plan()).unwrap().holds());
    }

    #[test]
    fn family_criterion_agrees_with_oracle() {
        let family = diagram_family();
        assert!(family.len() >= 50, "{}", family.len());
        let mut kinds = [0usize; 2];
        for d in &family {
            d.validate(&plan()).unwrap();
            let pb = build_pullback(d, None).unwrap();
            let oracle = check_admissible_oracle(d, &pb, DEFAULT_EXTENSION_BOUND).unwrap();
            let report = check_criterion(d, &pb, &plan()).unwrap();
            assert_eq!(oracle.is_admissible(), report.holds(), "{}", d.name);
            kinds[oracle.is_admissible() as usize] += 1;
            if let (OracleOutcome::Admissible(images), Some(phi)) = (&oracle, &report.phi) {
                assert_eq!(&phi.images().unwrap(), images, "{}", d.name);
                assert!(report.phi_verdicts.iter().all(|v| v.holds()), "{}", d.name);
            }
        }
        assert!(kinds[0] > 0 && kinds[1] > 0, "{kinds:?}");
    }

    #[test]
    fn one_sided_conditions_agree_on_family() {
        for d in diagram_family().iter().step_by(7) {
            let (_, k) = kernel(&d.f).unwrap();
            let ef = find_schreier_retraction(&k, &d.f, &d.r, &plan()).unwrap();
            let pb = build_pullback(d, None).unwrap();
            let report = one_sided_admissibility(d, &pb, &ef, &plan()).unwrap();
            assert!(report.agree(), "{}: {report:?}", d.name);
        }
    }

    #[test]
    fn q8_reflexive_diagram_fails_both_ways() {
        let q8 = quaternion_group();
        let id = Hom::identity(&q8);
        let d = over_trivial(&q8, &q8, &q8, id.images().unwrap(), id.images().unwrap());
        let d = AdmissibilityDiagram { c: d.a.clone(), ..d };
        let (_, k) = kernel(&d.f).unwrap();
        let ef = find_schreier_retraction(&k, &d.f, &d.r, &plan()).unwrap();
        let pb = build_pullback(&d, None).unwrap();
        let report = reflexive_admissibility(&d, &pb, &ef, &plan()).unwrap();
        assert!(report.admissible.fails() && report.identity.fails());
        assert_eq!(report.identity.witness().unwrap().shown, ["i", "j"]);
    }

    #[test]
    fn smith_is_huq_on_z4() {
        let z4 = cyclic(4);
        let subgroups: [&[usize]; 3] = [&[0], &[0, 2], &[0, 1, 2, 3]];
        let rels: Vec<_> = subgroups
            .iter()
            .map(|n| {
                let els: Vec<Elem> = n.iter().map(|&i| Elem::Idx(i)).collect();
                congruence_of_normal_subgroup(&format!("N{}", n.len()), &z4, &els).unwrap()
            })
            .collect();
        for r in &rels {
            for s in &rels {
                let rep = smith_is_huq(r, s, &plan()).unwrap();
                assert!(rep.agree());
                assert!(rep.smith.holds(), "{} {}", r.name, s.name);
            }
        }
    }
}
