//! The `verify`, `schreier`, `classify` and `admissible` commands, plan
//! resolution and witness replay.

use conj_core::admissibility::{
    build_pullback, check_admissible_oracle, check_criterion, diagram_family, pullback_verdicts,
    AdmissibilityDiagram, AdmissibilityError, OracleOutcome,
};
use conj_core::algebra::axioms::{
    cancellation_laws, conjugation_axiom_laws, derived_identity_laws, ore_law, ore_search_space, verify_ore,
};
use conj_core::algebra::{Outcome, Witness, DEFAULT_EXTENSION_BOUND};
use conj_core::builders::{
    circle_arcs, cyclic_identity, direct_legs, inversion_action, max_chain_split, naturals_identity, q8_over_zero,
    quaternion_disk,
};
use conj_core::internal::{
    build_groupoid, build_internal_category, build_reflexive_graph, check_kernel_exchange, classify,
    equivariance_law, kernel_exchange_law, kernel_group_law, peiffer_law, verify_composition_forced, Classification,
    CrossedData, InternalError,
};
use conj_core::schreier::{
    conjugate_retraction_law, defining_laws, find_schreier_retraction, kernel, retraction_laws, roundtrip_iso,
    semidirect, verify_exactness, SchreierError, SchreierExtension,
};
use conj_core::{ConjStructure, EnumerationPlan, Hom, Law, PlanError, Verdict};

use crate::format::{param_usize, structure_from_doc, FormatError, StructureDoc, System, SystemDoc};
use crate::report::{Report, ReplayToken, EXIT_INPUT_ERROR, EXIT_LAW_FAILURE, EXIT_PASS};

/// Sample count when no plan is given and a carrier is infinite.
pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("{0}")]
    Input(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl From<SchreierError> for CliError {
    fn from(e: SchreierError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<InternalError> for CliError {
    fn from(e: InternalError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<AdmissibilityError> for CliError {
    fn from(e: AdmissibilityError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// The `--plan` and `--seed` flags.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlanFlags {
    pub plan: Option<EnumerationPlan>,
    pub seed: Option<u64>,
}

impl PlanFlags {
    /// Exhaustive on finite inputs, otherwise `sampled=1000`; an explicit
    /// plan wins, and `--seed` replaces the seed of a sampled plan.
    pub fn resolve(&self, finite: bool) -> EnumerationPlan {
        let seed = self.seed.unwrap_or(DEFAULT_SEED);
        match self.plan {
            Some(p) => p.with_seed(seed),
            None if finite => EnumerationPlan::Exhaustive,
            None => EnumerationPlan::Sampled { count: DEFAULT_SAMPLES, seed },
        }
    }
}

fn check_laws(report: &mut Report, topic: &str, laws: Vec<Law>, plan: &EnumerationPlan) -> Result<(), CliError> {
    for law in &laws {
        report.push(topic, law.check(plan)?);
    }
    report.add_laws(laws);
    Ok(())
}

fn failure_row(report: &mut Report, topic: &str, w: Witness) {
    report.push(topic, Verdict::failure(w.law.clone(), 0, w));
}

pub fn verify(doc: &StructureDoc, flags: &PlanFlags) -> Result<Report, CliError> {
    let s = structure_from_doc(doc)?;
    let plan = flags.resolve(s.is_finite());
    let mut report = Report::new(format!("verify {}", s.name()), Some(plan));
    report.structure(s.summary());
    check_laws(&mut report, "axioms", conjugation_axiom_laws(&s), &plan)?;
    check_laws(&mut report, "cancellation", cancellation_laws(&s), &plan)?;
    check_laws(&mut report, "derived", derived_identity_laws(&s), &plan)?;
    report.push("ore", verify_ore(&s, &plan)?.renamed("ore"));
    report.add_laws([ore_law(&s, ore_search_space(&s, &plan)?)]);
    Ok(report)
}

/// What a system description resolves to before any law is checked.
enum Resolved {
    Split { k: Hom, f: Hom, r: Hom, h: Option<Hom> },
    Extension(SchreierExtension),
    Crossed(CrossedData),
}

/// Builders of extensions and crossed data, with whether their carriers are
/// finite.
pub const SYSTEM_BUILDERS: &[(&str, bool)] = &[
    ("direct-product", true),
    ("inversion", true),
    ("max-chain-split", true),
    ("q8-over-zero", true),
    ("cyclic-identity", true),
    ("quaternion-disk", false),
    ("circle-arcs", false),
    ("naturals-identity", false),
];

fn nested_structure(builder: &str, params: &toml::Table, key: &str) -> Result<ConjStructure, FormatError> {
    let value = params
        .get(key)
        .ok_or_else(|| FormatError::BadParam { builder: builder.into(), problem: format!("missing structure `{key}`") })?;
    let doc: StructureDoc = value
        .clone()
        .try_into()
        .map_err(|e| FormatError::BadParam { builder: builder.into(), problem: format!("`{key}`: {e}") })?;
    structure_from_doc(&doc)
}

fn system_is_finite(doc: &SystemDoc) -> Result<bool, CliError> {
    Ok(match doc {
        SystemDoc::Finite { .. } => true,
        SystemDoc::Builder { builder, params } => match builder.as_str() {
            "direct-product" => {
                nested_structure(builder, params, "x")?.is_finite() && nested_structure(builder, params, "b")?.is_finite()
            }
            "family" => true,
            name => SYSTEM_BUILDERS
                .iter()
                .find(|(b, _)| *b == name)
                .map(|(_, finite)| *finite)
                .ok_or_else(|| FormatError::UnknownBuilder(name.into()))?,
        },
    })
}

fn resolve_system(doc: &SystemDoc, plan: &EnumerationPlan) -> Result<Resolved, CliError> {
    match doc {
        SystemDoc::Finite { structures, maps } => {
            let sys = System::from_docs(structures, maps)?;
            let (f, r) = (sys.map("f")?.clone(), sys.map("r")?.clone());
            let k = match sys.map("k") {
                Ok(k) => k.clone(),
                Err(_) => kernel(&f)?.1,
            };
            let h = sys.map("h").ok().cloned();
            Ok(Resolved::Split { k, f, r, h })
        }
        SystemDoc::Builder { builder, params } => Ok(match builder.as_str() {
            "direct-product" => {
                let (x, b) = (nested_structure(builder, params, "x")?, nested_structure(builder, params, "b")?);
                let (k, f, r) = direct_legs(&x, &b);
                Resolved::Split { k, f, r, h: None }
            }
            "inversion" => Resolved::Extension(semidirect(&inversion_action(), plan)?),
            "max-chain-split" => {
                let (k, f, r) = max_chain_split();
                Resolved::Split { k, f, r, h: None }
            }
            "q8-over-zero" => Resolved::Crossed(q8_over_zero(plan)?),
            "cyclic-identity" => Resolved::Crossed(cyclic_identity(param_usize(builder, params, "n")?, plan)?),
            "quaternion-disk" => Resolved::Crossed(quaternion_disk(plan)?),
            "circle-arcs" => Resolved::Crossed(circle_arcs(plan)?),
            "naturals-identity" => Resolved::Crossed(naturals_identity(plan)?),
            other => return Err(FormatError::UnknownBuilder(other.into()).into()),
        }),
    }
}

/// The extension of a resolved system, or the failure that prevents it,
/// recorded as a row.
fn extension_or_row(
    resolved: Resolved,
    plan: &EnumerationPlan,
    report: &mut Report,
) -> Result<Option<(SchreierExtension, Option<Hom>)>, CliError> {
    let (k, f, r, h) = match resolved {
        Resolved::Extension(e) => return Ok(Some((e, None))),
        Resolved::Crossed(d) => return Ok(Some((d.e, Some(d.h)))),
        Resolved::Split { k, f, r, h } => (k, f, r, h),
    };
    match find_schreier_retraction(&k, &f, &r, plan) {
        Ok(e) => Ok(Some((e, h))),
        Err(SchreierError::NotSchreier { element, decompositions }) => {
            let a = f.source();
            let elem = a.parse(&element).ok_or_else(|| CliError::Input(format!("cannot read back `{element}`")))?;
            report.note(format!("a = {element} decomposes as k(x) + r(f(a)) in {} ways:", decompositions.len()));
            for d in &decompositions {
                report.note(format!("  {d}"));
            }
            let w = Witness {
                law: "unique-decomposition".into(),
                vars: vec!["a".into()],
                elems: vec![elem],
                shown: vec![element],
                detail: format!("{} decompositions ({})", decompositions.len(), decompositions.join("; ")),
            };
            failure_row(report, "schreier", w);
            Ok(None)
        }
        Err(
            SchreierError::NotSplit(w)
            | SchreierError::LawFailed(w)
            | SchreierError::ActionLawFailed(w)
            | SchreierError::Incompatible(w)
            | SchreierError::CancellationFailure(w),
        ) => {
            failure_row(report, "schreier", w);
            Ok(None)
        }
        Err(other) => Err(other.into()),
    }
}

pub fn schreier(doc: &SystemDoc, flags: &PlanFlags) -> Result<Report, CliError> {
    let plan = flags.resolve(system_is_finite(doc)?);
    let resolved = resolve_system(doc, &plan)?;
    let mut report = Report::new("schreier", Some(plan));
    let Some((e, _)) = extension_or_row(resolved, &plan, &mut report)? else {
        return Ok(report);
    };
    report.command = format!("schreier {} -> {} <- {}", e.x.name(), e.a.name(), e.b.name());
    for s in [&e.x, &e.a, &e.b] {
        report.structure(s.summary());
    }
    report.extend("schreier", e.verdicts().iter().cloned());
    report.add_laws(defining_laws(&e));
    check_laws(&mut report, "retraction", retraction_laws(&e), &plan)?;
    check_laws(&mut report, "conjugate", vec![conjugate_retraction_law(&e)], &plan)?;
    report.push("exactness", verify_exactness(&e, &plan)?);
    let rt = roundtrip_iso(&e, &plan)?;
    report.extend("round-trip", rt.verdicts.iter().cloned());
    report.add_laws(rt.laws.iter().cloned());
    report.add_laws(rt.alpha.laws());
    report.add_laws(rt.beta.laws());
    if let Some(table) = e.q_table() {
        for (a, x) in table {
            report.note(format!("q({}) = {}", e.a.show(a), e.x.show(x)));
        }
    }
    Ok(report)
}

pub fn classify_cmd(doc: &SystemDoc, flags: &PlanFlags) -> Result<Report, CliError> {
    let plan = flags.resolve(system_is_finite(doc)?);
    let resolved = resolve_system(doc, &plan)?;
    let mut report = Report::new("classify", Some(plan));
    let d = match resolved {
        Resolved::Crossed(d) => d,
        Resolved::Split { .. } => {
            let Some((e, h)) = extension_or_row(resolved, &plan, &mut report)? else {
                return Ok(report);
            };
            let h = h.ok_or_else(|| CliError::Input("classify needs a map `h`".into()))?;
            CrossedData::new(e, h)?
        }
        Resolved::Extension(_) => return Err(CliError::Input("classify needs a map `h`; this builder gives none".into())),
    };
    let e = &d.e;
    report.command = format!("classify {} -> {} <- {} with h = {}", e.x.name(), e.a.name(), e.b.name(), d.h.name());
    for s in [&e.x, &e.a, &e.b] {
        report.structure(s.summary());
    }
    report.extend("schreier", e.verdicts().iter().cloned());
    report.add_laws(defining_laws(e));
    let c = classify(&d, &plan)?;
    report.push("equivariance", c.equivariance.clone());
    report.push("peiffer", c.peiffer.clone());
    report.push("kernel-group", c.kernel_group.clone());
    report.add_laws([equivariance_law(&d), peiffer_law(&d), kernel_group_law(&d, &plan)?]);
    report.note(format!("classification: {}", c.label));
    if c.label >= Classification::PrecrossedSemimodule {
        let graph = build_reflexive_graph(&d, &plan)?;
        report.extend("graph", graph.verdicts.iter().cloned());
        report.add_laws(graph.laws.iter().cloned());
        report.add_laws(graph.cod.laws());
        let exchange = check_kernel_exchange(&graph, &plan)?;
        let agree = if exchange.status() == c.peiffer.status() { "agree" } else { "DISAGREE" };
        report.note(format!("kernel-exchange {} and peiffer {}: {agree}", exchange.status(), c.peiffer.status()));
        report.add_laws([kernel_exchange_law(&graph)]);
        if c.peiffer.fails() {
            report.note("no internal category: the Peiffer identity fails");
        }
    }
    if c.label >= Classification::CrossedSemimodule {
        let cat = build_internal_category(&d, &plan)?;
        report.extend("category", cat.verdicts.iter().cloned());
        report.add_laws(cat.laws.iter().cloned());
        report.add_laws(cat.m.laws());
        if cat.graph.data.e.a.is_finite() {
            report.push("category", verify_composition_forced(&cat)?);
        }
        if c.label == Classification::CrossedModule {
            let g = build_groupoid(&d, &plan)?;
            report.extend("groupoid", g.verdicts.iter().cloned());
            report.add_laws(g.laws.iter().cloned());
            report.add_laws(g.t.laws());
        } else if let Some(w) = c.kernel_group.witness() {
            report.note(format!("no groupoid: {} = {} has no inverse", w.vars.join(","), w.shown.join(",")));
        }
    }
    Ok(report)
}

fn diagram_from_doc(doc: &SystemDoc) -> Result<AdmissibilityDiagram, CliError> {
    match doc {
        SystemDoc::Finite { structures, maps } => {
            let sys = System::from_docs(structures, maps)?;
            let m = |n: &str| sys.map(n).cloned();
            let (f, r, g, s) = (m("f")?, m("r")?, m("g")?, m("s")?);
            let (alpha, beta, gamma) = (m("alpha")?, m("beta")?, m("gamma")?);
            let name = format!(
                "{} -> {} <- {} into {}",
                f.source().name(),
                f.target().name(),
                g.source().name(),
                alpha.target().name()
            );
            Ok(AdmissibilityDiagram::new(name, &f, &r, &g, &s, &alpha, &beta, &gamma))
        }
        SystemDoc::Builder { builder, params } if builder == "family" => {
            let index = match params.get("index") {
                Some(toml::Value::Integer(i)) if *i >= 0 => *i as usize,
                _ => {
                    return Err(FormatError::BadParam {
                        builder: builder.clone(),
                        problem: "`index` must be a non-negative integer".into(),
                    }
                    .into())
                }
            };
            let family = diagram_family();
            let n = family.len();
            family.into_iter().nth(index).ok_or_else(|| {
                FormatError::BadParam { builder: builder.clone(), problem: format!("index {index} out of range (family has {n})") }
                    .into()
            })
        }
        SystemDoc::Builder { builder, .. } => Err(FormatError::UnknownBuilder(builder.clone()).into()),
    }
}

pub fn admissible(doc: &SystemDoc, flags: &PlanFlags) -> Result<Report, CliError> {
    let d = diagram_from_doc(doc)?;
    let finite = [&d.a, &d.b, &d.c, &d.d].iter().all(|s| s.is_finite());
    let plan = flags.resolve(finite);
    let mut report = Report::new(format!("admissible {}", d.name), Some(plan));
    for s in [&d.a, &d.b, &d.c, &d.d] {
        report.structure(s.summary());
    }
    let invariants = d.invariant_verdicts(&plan)?;
    let valid = invariants.iter().all(|v| !v.fails());
    report.extend("diagram", invariants);
    if !valid {
        return Ok(report);
    }
    let pb = build_pullback(&d, None)?;
    report.structure(pb.p.summary());
    report.extend("pullback", pullback_verdicts(&d, &pb, &plan)?);
    let criterion = check_criterion(&d, &pb, &plan)?;
    report.push("criterion", criterion.solvable.clone());
    report.push("criterion", criterion.additive.clone());
    report.extend("criterion", criterion.phi_verdicts.iter().cloned());
    if let Some(phi) = &criterion.phi {
        report.add_laws(phi.laws());
    }
    let small = pb.p.size().is_some_and(|n| n <= DEFAULT_EXTENSION_BOUND) && d.a.is_finite() && d.c.is_finite();
    if !small {
        report.note("oracle skipped: the pullback is infinite or too large");
        report.note(format!("criterion: {}", if criterion.holds() { "admissible" } else { "not admissible" }));
        return Ok(report);
    }
    let oracle = check_admissible_oracle(&d, &pb, DEFAULT_EXTENSION_BOUND)?;
    report.push("oracle", oracle.verdict(&pb));
    let agree = oracle.is_admissible() == criterion.holds()
        && match (&oracle, &criterion.phi) {
            (OracleOutcome::Admissible(images), Some(phi)) => phi.images().as_ref() == Some(images),
            _ => true,
        };
    let n = pb.p.size().unwrap_or(0) as u64;
    let agreement = if agree {
        Verdict::new("criterion-matches-oracle", n, Outcome::HoldsExhaustive)
    } else {
        Verdict::failure(
            "criterion-matches-oracle",
            n,
            Witness {
                law: "criterion-matches-oracle".into(),
                vars: vec![],
                elems: vec![],
                shown: vec![],
                detail: format!("criterion {} but oracle {}", criterion.holds(), oracle.is_admissible()),
            },
        )
    };
    report.push("agreement", agreement);
    report.note(format!(
        "{} (criterion and oracle {})",
        if oracle.is_admissible() { "admissible" } else { "not admissible" },
        if agree { "agree" } else { "disagree" }
    ));
    if let OracleOutcome::Admissible(images) = &oracle {
        let zero = d.d.zero();
        if images.iter().all(|y| *y == zero) {
            report.note(format!("phi = 0 on all {} elements", images.len()));
        } else if let Some(els) = pb.p.elements() {
            for (p, y) in els.iter().zip(images) {
                report.note(format!("phi({}) = {}", pb.p.show(p), d.d.show(y)));
            }
        }
    }
    Ok(report)
}

/// Outcome of `--replay`.
pub struct Replay {
    pub text: String,
    pub exit: i32,
}

/// Evaluates `token` against the law of the same name in `report`; when the
/// law is not exposed, compares with the witnesses the run produced.
pub fn replay(report: &Report, token: &ReplayToken) -> Replay {
    let mut arity_error = None;
    for law in report.laws.iter().filter(|l| l.name() == token.law) {
        match law.replay(&token.elems) {
            Ok(Some(w)) => return Replay { text: format!("replay {}: reproduced: {w}", token.law), exit: EXIT_LAW_FAILURE },
            Ok(None) => {
                return Replay { text: format!("replay {}: holds on this tuple", token.law), exit: EXIT_PASS };
            }
            Err(e) => arity_error = Some(e.to_string()),
        }
    }
    let seen = report.rows.iter().filter_map(|r| r.verdict.witness()).find(|w| w.law == token.law && w.elems == token.elems);
    if let Some(w) = seen {
        return Replay { text: format!("replay {}: reproduced by rerun: {w}", token.law), exit: EXIT_LAW_FAILURE };
    }
    let text = match arity_error {
        Some(e) => format!("replay {}: {e}", token.law),
        None if report.rows.iter().any(|r| r.verdict.law == token.law) => {
            format!("replay {}: the rerun did not fail on this tuple", token.law)
        }
        None => format!("replay: no law named `{}` in this run", token.law),
    };
    let exit = if text.contains("did not fail") { EXIT_PASS } else { EXIT_INPUT_ERROR };
    Replay { text, exit }
}
