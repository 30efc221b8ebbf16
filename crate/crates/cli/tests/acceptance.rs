//! Acceptance criteria 1 to 9, run in order with one line each. Runs with
//! its own harness so the criteria do not compete for cores and each
//! timing is its own.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use conj_cli::arcs::{validate, ArcFile};
use conj_core::admissibility::{
    build_pullback, check_admissible_oracle, check_criterion, diagram_family, smith_is_huq, OracleOutcome,
};
use conj_core::algebra::all_homs;
use conj_core::algebra::axioms::{cancellation_laws, conjugation_axiom_laws, derived_identity_laws};
use conj_core::algebra::{check_all, DEFAULT_EXTENSION_BOUND};
use conj_core::builders::{circle_arcs, cyclic_identity, finite_extensions, naturals_identity, q8_over_zero, quaternion_disk};
use conj_core::carriers::{GaussianRational, Rational};
use conj_core::catalog::{cyclic, hurwitz_group, klein, quaternion_group, symmetric3, trivial};
use conj_core::internal::{
    build_groupoid, build_internal_category, build_reflexive_graph, check_kernel_exchange, classify, Classification,
    CrossedData,
};
use conj_core::schreier::{
    normal_congruences, retraction_laws, roundtrip_iso, semidirect, ExternalAction, SchreierExtension,
};
use conj_core::{Elem, EnumerationPlan, Verdict};

const BUDGET: Duration = Duration::from_secs(60);
const SEED: u64 = 2024;
/// Sample count for the laws on infinite carriers.
const SAMPLES: usize = 10_000;
/// Sample count for the checks made while constructing those carriers.
const BUILD_SAMPLES: usize = 300;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn all_hold(what: &str, verdicts: &[Verdict]) -> Result<(), String> {
    match verdicts.iter().find(|v| !v.holds()) {
        None => Ok(()),
        Some(v) => Err(format!("{what}: {} {}", v.law, v)),
    }
}

fn exhaustive_everywhere(what: &str, verdicts: &[Verdict]) -> Result<(), String> {
    all_hold(what, verdicts)?;
    let sampled = verdicts.iter().find(|v| !matches!(v.outcome, conj_core::Outcome::HoldsExhaustive));
    ensure(sampled.is_none(), || format!("{what}: {} was not exhaustive", sampled.unwrap().law))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conjcheck"))
}

fn desc(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("descriptions").join(name)
}

fn disk_sampled() -> (EnumerationPlan, CrossedData) {
    let build = EnumerationPlan::sampled(BUILD_SAMPLES, SEED).unwrap();
    (EnumerationPlan::sampled(SAMPLES, SEED).unwrap(), quaternion_disk(&build).unwrap())
}

fn finite_cases() -> Vec<SchreierExtension> {
    finite_extensions(&EnumerationPlan::Exhaustive).unwrap()
}

fn axiom_suite() -> Check {
    let g = hurwitz_group();
    ensure(g.size() == Some(24), || format!("{} elements", g.size().unwrap_or(0)))?;
    let els = g.elements().unwrap();
    for x in els.iter() {
        ensure(g.op(x, &g.conj(x)) == g.zero(), || format!("conj {} is not its inverse", g.show(x)))?;
    }
    let mut laws = conjugation_axiom_laws(&g);
    laws.extend(cancellation_laws(&g));
    laws.extend(derived_identity_laws(&g));
    let verdicts = check_all(&laws, &EnumerationPlan::Exhaustive).map_err(|e| e.to_string())?;
    exhaustive_everywhere("Hurwitz", &verdicts)?;
    let out = bin().arg("verify").arg(desc("hurwitz.toml")).output().unwrap();
    ensure(out.status.code() == Some(0), || "conjcheck verify did not exit 0".into())?;
    Ok(format!("{} laws exhaustive on 24 units, q̄ = q⁻¹ on all", verdicts.len()))
}

fn schreier_laws() -> Check {
    let plan = EnumerationPlan::Exhaustive;
    let cases = finite_cases();
    ensure(cases.len() >= 5, || format!("only {} finite extensions", cases.len()))?;
    for e in &cases {
        let name = e.a.name();
        let table = e.q_table().ok_or_else(|| format!("{name}: q not tabulated"))?;
        ensure(table.len() == e.a.size().unwrap(), || format!("{name}: q is partial"))?;
        exhaustive_everywhere(name, &check_all(&retraction_laws(e), &plan).map_err(|e| e.to_string())?)?;
    }
    let (sampled, disk) = disk_sampled();
    let verdicts = check_all(&retraction_laws(&disk.e), &sampled).map_err(|e| e.to_string())?;
    all_hold("disk", &verdicts)?;
    ensure(verdicts.iter().all(|v| v.checked >= SAMPLES as u64), || "disk: fewer samples than asked".into())?;
    Ok(format!("{} finite extensions exhaustive; disk {} laws x {SAMPLES} samples", cases.len(), verdicts.len()))
}

fn round_trip() -> Check {
    let plan = EnumerationPlan::Exhaustive;
    let cases = finite_cases();
    for e in &cases {
        exhaustive_everywhere(e.a.name(), &roundtrip_iso(e, &plan).map_err(|e| e.to_string())?.verdicts)?;
    }
    let (sampled, disk) = disk_sampled();
    let rt = roundtrip_iso(&disk.e, &sampled).map_err(|e| e.to_string())?;
    all_hold("disk round trip", &rt.verdicts)?;
    Ok(format!("{} finite cases exhaustive; disk {} checks at {SAMPLES} samples", cases.len(), rt.verdicts.len()))
}

fn classification_matrix() -> Check {
    let plan = EnumerationPlan::Exhaustive;
    let build = EnumerationPlan::sampled(BUILD_SAMPLES, SEED).unwrap();
    let disk = quaternion_disk(&build).unwrap();
    let r = classify(&disk, &build).map_err(|e| e.to_string())?;
    ensure(r.label == Classification::CrossedSemimodule, || format!("disk classified as {}", r.label))?;
    let w = r.kernel_group.witness().ok_or("disk: kernel-group has no witness")?;
    let norm = w.elems[0].as_quat().and_then(|q| q.norm_exact());
    ensure(norm == Some(Rational::new(1, 2)), || format!("disk witness {w} does not have norm 1/2"))?;

    let q8 = q8_over_zero(&plan).unwrap();
    let r = classify(&q8, &plan).map_err(|e| e.to_string())?;
    ensure(r.label == Classification::PrecrossedSemimodule, || format!("Q8 classified as {}", r.label))?;
    let shown = &r.peiffer.witness().ok_or("Q8: peiffer has no witness")?.shown;
    ensure(shown == &["i", "j"], || format!("Q8 witness {shown:?}"))?;

    let z3 = cyclic_identity(3, &plan).unwrap();
    let r = classify(&z3, &plan).map_err(|e| e.to_string())?;
    ensure(r.label == Classification::CrossedModule, || format!("Z3 classified as {}", r.label))?;
    let g = build_groupoid(&z3, &plan).map_err(|e| e.to_string())?;
    exhaustive_everywhere("Z3 groupoid", &g.verdicts)?;
    exhaustive_everywhere("Z3 category", &g.category.verdicts)?;
    Ok("disk: crossed semimodule at |x| = 1/2; Q8: precrossed at (i, j); Z3: crossed module".into())
}

/// `X` with trivial action of `B` and every `h: X → B`.
fn trivial_action_instances() -> Vec<CrossedData> {
    let plan = EnumerationPlan::Exhaustive;
    let mut out = Vec::new();
    for x in [cyclic(2), cyclic(3), klein(), quaternion_group()] {
        for b in [trivial(), cyclic(2), klein()] {
            let e = semidirect(&ExternalAction::trivial(&b, &x), &plan).unwrap();
            for h in all_homs(&e.x, &e.b, "h").unwrap() {
                out.push(CrossedData::new(e.clone(), h).unwrap());
            }
        }
    }
    out
}

fn internal_category() -> Check {
    let exhaustive = EnumerationPlan::Exhaustive;
    let build = EnumerationPlan::sampled(BUILD_SAMPLES, SEED).unwrap();
    let sampled = EnumerationPlan::sampled(SAMPLES, SEED).unwrap();
    let mut cases: Vec<(CrossedData, EnumerationPlan)> =
        (1..=4).map(|n| (cyclic_identity(n, &exhaustive).unwrap(), exhaustive)).collect();
    cases.push((q8_over_zero(&exhaustive).unwrap(), exhaustive));
    cases.extend(trivial_action_instances().into_iter().map(|d| (d, exhaustive)));
    cases.push((naturals_identity(&build).unwrap(), sampled));
    cases.push((quaternion_disk(&build).unwrap(), sampled));
    // Arcs get their 10^4 samples in the arc criterion.
    cases.push((circle_arcs(&build).unwrap(), build));
    let (mut categories, mut compared) = (0, 0);
    for (d, plan) in &cases {
        let name = d.e.a.name().to_string();
        let r = classify(d, plan).map_err(|e| e.to_string())?;
        if r.label >= Classification::PrecrossedSemimodule {
            let graph = build_reflexive_graph(d, plan).map_err(|e| e.to_string())?;
            let exchange = check_kernel_exchange(&graph, plan).map_err(|e| e.to_string())?;
            ensure(exchange.status() == r.peiffer.status(), || {
                format!("{name}: kernel-exchange {} but peiffer {}", exchange.status(), r.peiffer.status())
            })?;
            compared += 1;
        }
        if r.label >= Classification::CrossedSemimodule {
            let cat = build_internal_category(d, plan).map_err(|e| e.to_string())?;
            if plan.is_exhaustive() {
                exhaustive_everywhere(&name, &cat.verdicts)?;
            } else {
                all_hold(&name, &cat.verdicts)?;
                let wanted = if *plan == build { BUILD_SAMPLES } else { SAMPLES };
                ensure(cat.verdicts.iter().all(|v| v.checked >= wanted as u64), || format!("{name}: too few samples"))?;
            }
            categories += 1;
        }
    }
    Ok(format!("{categories} categories verified; exchange equals peiffer on {compared} graphs"))
}

fn oracle_equivalence() -> Check {
    let plan = EnumerationPlan::Exhaustive;
    let family = diagram_family();
    ensure(family.len() >= 50, || format!("family has {}", family.len()))?;
    let mut admissible = 0;
    for d in &family {
        for s in [&d.a, &d.c] {
            ensure(s.size().is_some_and(|n| n <= 6), || format!("{}: carrier {} too large", d.name, s.name()))?;
        }
        let pb = build_pullback(d, None).map_err(|e| e.to_string())?;
        let oracle = check_admissible_oracle(d, &pb, DEFAULT_EXTENSION_BOUND).map_err(|e| e.to_string())?;
        let criterion = check_criterion(d, &pb, &plan).map_err(|e| e.to_string())?;
        ensure(oracle.is_admissible() == criterion.holds(), || format!("{}: criterion and oracle disagree", d.name))?;
        if let OracleOutcome::Admissible(images) = oracle {
            let phi = criterion.phi.as_ref().and_then(|p| p.images());
            ensure(phi.as_ref() == Some(&images), || format!("{}: φ differs from the oracle", d.name))?;
            admissible += 1;
        }
    }
    Ok(format!("{} diagrams agree ({admissible} admissible, φ equal pointwise)", family.len()))
}

fn smith_huq() -> Check {
    let plan = EnumerationPlan::Exhaustive;
    let mut pairs = 0;
    for g in [cyclic(4), klein(), symmetric3()] {
        let rels = normal_congruences(&g).map_err(|e| e.to_string())?;
        for r in &rels {
            for s in &rels {
                let rep = smith_is_huq(r, s, &plan).map_err(|e| e.to_string())?;
                ensure(rep.agree(), || format!("{} / {}: smith {} huq {}", r.name, s.name, rep.smith, rep.huq))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} relation pairs over Z4, Z2xZ2, S3 agree"))
}

fn arc_witness() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("arcs.json");
    let out = bin()
        .args(["demo-arcs", "--count", "1000", "--seed", "8", "--out"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || String::from_utf8_lossy(&out.stdout).into_owned())?;
    let file: ArcFile = serde_json::from_str(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(file.pairs.len() >= 1000, || format!("{} pairs", file.pairs.len()))?;
    let violations = validate(&file);
    ensure(violations.is_empty(), || violations.join("; "))?;
    for p in &file.pairs {
        ensure(p.composite.x == &p.second.x * &p.first.x && p.composite.b == p.first.b, || {
            format!("composite of ({}, {}) after ({}, {}) is not (x'x, b)", p.second.x, p.second.b, p.first.x, p.first.b)
        })?;
    }
    let c = &file.inverse_check;
    let minus_2i = GaussianRational::from_ints(0, -2);
    ensure(c.arrow.x == GaussianRational::new(Rational::zero(), Rational::new(1, 2)), || "wrong arrow".into())?;
    ensure(c.candidate_x == minus_2i && c.candidate_b == GaussianRational::i(), || "wrong inverse candidate".into())?;
    let disk = conj_core::catalog::scaled_unit_gaussians();
    ensure(!c.in_carrier && !disk.contains(&Elem::Gauss(minus_2i)), || "(-2i, i) not flagged".into())?;
    Ok(format!("{} exact composable pairs compose to (x'x, b); (-2i, i) out of carrier", file.pairs.len()))
}

fn determinism() -> Check {
    let run = || bin().args(["gallery", "--seed", "7"]).output().map_err(|e| e.to_string());
    let (a, b) = (run()?, run()?);
    ensure(a.status.code() == Some(0), || String::from_utf8_lossy(&a.stdout).into_owned())?;
    ensure(a.stdout == b.stdout, || "gallery output differs between runs".into())?;
    Ok(format!("two gallery runs, {} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("axiom suite", axiom_suite),
        ("schreier laws", schreier_laws),
        ("round trip", round_trip),
        ("classification matrix", classification_matrix),
        ("internal-category laws", internal_category),
        ("admissibility oracle equivalence", oracle_equivalence),
        ("smith-is-huq", smith_huq),
        ("arc witness", arc_witness),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match result {
            Ok(detail) if took > BUDGET => Err(format!("{detail}, but took longer than {}s", BUDGET.as_secs())),
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} ({:.1}s): {detail}", i + 1, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({:.1}s): {why}", i + 1, took.as_secs_f64());
            }
        }
    }
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
