//! The built-in suite: one row per structure or construction, in a fixed
//! order. Rows that demonstrate a counterexample are declared here as
//! expected failures, so a regression that makes them pass fails the run.

use conj_core::admissibility::{
    build_pullback, check_admissible_oracle, check_criterion, diagram_family, smith_is_huq,
};
use conj_core::algebra::axioms::{cancellation_laws, conjugation_axiom_laws, derived_identity_laws};
use conj_core::algebra::{check_all, Outcome, Witness, DEFAULT_EXTENSION_BOUND};
use conj_core::builders::{cyclic_identity, naturals_identity, q8_over_zero, quaternion_disk};
use conj_core::carriers::{ke_structure, KeVariant};
use conj_core::catalog::{cyclic, gaussian_ball, hurwitz_group, klein, quaternion_ball, rational_ball, symmetric3};
use conj_core::internal::{
    build_groupoid, build_internal_category, check_equivariance, check_kernel_group, check_peiffer,
};
use conj_core::schreier::{normal_congruences, retraction_laws, roundtrip_iso, conjugate_retraction_law};
use conj_core::{ConjStructure, EnumerationPlan, Verdict};

use crate::commands::{CliError, PlanFlags, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::report::{Expect, Report};

/// Window used for the rows over `ℕ`.
const NATURALS_WINDOW: usize = 5;

/// Axioms and derived identities, plus cancellation when `cancellative`.
fn structure_row(s: &ConjStructure, plan: &EnumerationPlan, cancellative: bool) -> Result<Verdict, CliError> {
    let mut laws = conjugation_axiom_laws(s);
    let mut what = "axioms, derived";
    if cancellative {
        laws.extend(cancellation_laws(s));
        what = "axioms, cancellation, derived";
    }
    laws.extend(derived_identity_laws(s));
    Ok(Verdict::all(format!("{}: {what}", s.name()), &check_all(&laws, plan)?))
}

fn agreement(law: &str, checked: u64, disagreements: Vec<String>) -> Verdict {
    match disagreements.first() {
        None => Verdict::new(law, checked, Outcome::HoldsExhaustive),
        Some(first) => Verdict::failure(
            law,
            checked,
            Witness { law: law.into(), vars: vec![], elems: vec![], shown: vec![], detail: first.clone() },
        ),
    }
}

/// The plan for rows over infinite carriers. Finite rows are always
/// exhaustive, so `--plan exhaustive` leaves the sampled rows at their
/// default.
fn sampled_plan(flags: &PlanFlags) -> Result<EnumerationPlan, CliError> {
    let seed = flags.seed.unwrap_or(DEFAULT_SEED);
    match flags.plan {
        None | Some(EnumerationPlan::Exhaustive) => Ok(EnumerationPlan::sampled(DEFAULT_SAMPLES, seed)?),
        Some(EnumerationPlan::Sampled { count, .. }) => Ok(EnumerationPlan::sampled(count, seed)?),
        Some(EnumerationPlan::BoundedWindow { .. }) => {
            Err(CliError::Input("gallery takes --plan exhaustive or sampled=N".into()))
        }
    }
}

type Rows = Vec<(&'static str, Verdict, Expect)>;

fn structures(sampled: &EnumerationPlan) -> Result<Rows, CliError> {
    let mut rows = Vec::new();
    for s in [rational_ball(), gaussian_ball(), quaternion_ball()] {
        rows.push(("normed ball", structure_row(&s, sampled, true)?, Expect::Holds));
    }
    // Zero lies in the semigroup variant, so only the monoid variant cancels.
    for dim in [0, 1, 3] {
        for (variant, cancellative) in [(KeVariant::Semigroup, false), (KeVariant::Monoid, true)] {
            let s = ke_structure(dim, variant).map_err(|e| CliError::Input(e.to_string()))?;
            rows.push(("K x E", structure_row(&s, sampled, cancellative)?, Expect::Holds));
        }
    }
    rows.push(("hurwitz", structure_row(&hurwitz_group(), &EnumerationPlan::Exhaustive, true)?, Expect::Holds));
    Ok(rows)
}

fn quaternion_disk_rows(sampled: &EnumerationPlan) -> Result<Rows, CliError> {
    let disk = quaternion_disk(sampled)?;
    let e = &disk.e;
    let mut schreier = e.verdicts().to_vec();
    schreier.extend(check_all(&retraction_laws(e), sampled)?);
    schreier.push(conjugate_retraction_law(e).check(sampled)?);
    let topic = "quaternion disk";
    Ok(vec![
        (topic, Verdict::all("disk: schreier retraction", &schreier), Expect::Holds),
        (topic, roundtrip_iso(e, sampled)?.verdict().renamed("disk: round trip"), Expect::Holds),
        (topic, check_equivariance(&disk, sampled)?.renamed("disk: equivariance"), Expect::Holds),
        (topic, check_peiffer(&disk, sampled)?.renamed("disk: peiffer"), Expect::Holds),
        (topic, check_kernel_group(&disk, sampled)?.renamed("disk: kernel-group"), Expect::Fails),
        (topic, build_internal_category(&disk, sampled)?.verdict().renamed("disk: internal category"), Expect::Holds),
    ])
}

fn small_crossed_rows() -> Result<Rows, CliError> {
    let exhaustive = EnumerationPlan::Exhaustive;
    let window = EnumerationPlan::bounded(NATURALS_WINDOW)?;
    let q8 = q8_over_zero(&exhaustive)?;
    let z3 = cyclic_identity(3, &exhaustive)?;
    let nat = naturals_identity(&window)?;
    Ok(vec![
        ("Q8 over 0", check_equivariance(&q8, &exhaustive)?.renamed("Q8: equivariance"), Expect::Holds),
        ("Q8 over 0", check_peiffer(&q8, &exhaustive)?.renamed("Q8: peiffer"), Expect::Fails),
        ("Z3 identity", build_groupoid(&z3, &exhaustive)?.verdict().renamed("Z3: internal groupoid"), Expect::Holds),
        ("N x N", build_internal_category(&nat, &window)?.verdict().renamed("N: internal category"), Expect::Holds),
    ])
}

fn commutator_rows() -> Result<Rows, CliError> {
    let exhaustive = EnumerationPlan::Exhaustive;
    let mut rows = Vec::new();
    for g in [cyclic(4), klein(), symmetric3()] {
        let rels = normal_congruences(&g)?;
        let mut disagreements = Vec::new();
        let mut pairs = 0;
        for r in &rels {
            for s in &rels {
                if !smith_is_huq(r, s, &exhaustive)?.agree() {
                    disagreements.push(format!("{} / {}", r.name, s.name));
                }
                pairs += 1;
            }
        }
        rows.push(("smith-huq", agreement(&format!("{}: smith equals huq", g.name()), pairs, disagreements), Expect::Holds));
    }
    Ok(rows)
}

fn admissibility_rows() -> Result<Rows, CliError> {
    let family = diagram_family();
    let mut disagreements = Vec::new();
    for d in &family {
        let pb = build_pullback(d, None)?;
        let oracle = check_admissible_oracle(d, &pb, DEFAULT_EXTENSION_BOUND)?;
        let criterion = check_criterion(d, &pb, &EnumerationPlan::Exhaustive)?;
        if oracle.is_admissible() != criterion.holds() {
            disagreements.push(d.name.clone());
        }
    }
    let v = agreement("criterion equals oracle", family.len() as u64, disagreements);
    Ok(vec![("admissibility", v, Expect::Holds)])
}

/// Sections run on separate threads; rows are reported in section order.
pub fn gallery(flags: &PlanFlags) -> Result<Report, CliError> {
    let sampled = sampled_plan(flags)?;
    let sections: Vec<Box<dyn FnOnce() -> Result<Rows, CliError> + Send>> = vec![
        Box::new(move || structures(&sampled)),
        Box::new(move || quaternion_disk_rows(&sampled)),
        Box::new(small_crossed_rows),
        Box::new(commutator_rows),
        Box::new(admissibility_rows),
    ];
    let results: Vec<Result<Rows, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sections.into_iter().map(|f| scope.spawn(f)).collect();
        handles.into_iter().map(|h| h.join().expect("gallery section panicked")).collect()
    });
    let mut report = Report::new("gallery", Some(sampled));
    report.note("rows over finite carriers are exhaustive");
    for rows in results {
        for (topic, verdict, expect) in rows? {
            match expect {
                Expect::Holds => report.push(topic, verdict),
                Expect::Fails => report.push_expect_fail(topic, verdict),
            }
        }
    }
    Ok(report)
}
