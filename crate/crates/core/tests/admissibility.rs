use std::sync::OnceLock;

use conj_core::admissibility::{
    build_pullback, check_admissible_oracle, check_criterion, check_huq_commute, diagram_family, huq_admissibility,
    one_sided_admissibility, pullback_verdicts, smith_is_huq, AdmissibilityDiagram, OracleOutcome,
};
use conj_core::algebra::DEFAULT_EXTENSION_BOUND;
use conj_core::catalog::{cyclic, klein, symmetric3};
use conj_core::schreier::{find_schreier_retraction, kernel, normal_congruences};
use conj_core::{EnumerationPlan, Hom};
use proptest::prelude::*;

fn family() -> &'static [AdmissibilityDiagram] {
    static FAMILY: OnceLock<Vec<AdmissibilityDiagram>> = OnceLock::new();
    FAMILY.get_or_init(diagram_family)
}

#[test]
fn family_is_large_and_mixed() {
    let fam = family();
    assert!(fam.len() >= 50);
    for d in fam {
        for s in [&d.a, &d.c] {
            assert!(s.size().unwrap() <= 6, "{}", d.name);
        }
    }
    let admissible = fam
        .iter()
        .filter(|d| {
            let pb = build_pullback(d, None).unwrap();
            check_admissible_oracle(d, &pb, DEFAULT_EXTENSION_BOUND).unwrap().is_admissible()
        })
        .count();
    assert!(admissible > 0 && admissible < fam.len());
}

#[test]
fn criterion_matches_oracle_on_every_family_member() {
    let plan = EnumerationPlan::Exhaustive;
    for d in family() {
        let pb = build_pullback(d, None).unwrap();
        assert!(pullback_verdicts(d, &pb, &plan).unwrap().iter().all(|v| v.holds()), "{}", d.name);
        let oracle = check_admissible_oracle(d, &pb, DEFAULT_EXTENSION_BOUND).unwrap();
        let report = check_criterion(d, &pb, &plan).unwrap();
        assert_eq!(oracle.is_admissible(), report.holds(), "{}", d.name);
        if let OracleOutcome::Admissible(images) = oracle {
            assert_eq!(report.phi.unwrap().images().unwrap(), images, "{}", d.name);
        }
    }
}

#[test]
fn smith_and_huq_agree_on_normal_congruences() {
    let plan = EnumerationPlan::Exhaustive;
    let mut pairs = 0;
    for g in [cyclic(4), klein(), symmetric3()] {
        let rels = normal_congruences(&g).unwrap();
        for r in &rels {
            for s in &rels {
                let report = smith_is_huq(r, s, &plan).unwrap();
                assert!(report.agree(), "{} / {}: {report:?}", r.name, s.name);
                pairs += 1;
            }
        }
    }
    assert_eq!(pairs, 9 + 25 + 9);
}

#[test]
fn s3_congruences_commute_unless_the_commutator_is_a3() {
    // [S3, S3] = [S3, A3] = A3, and every other commutator of normal subgroups is trivial.
    let plan = EnumerationPlan::Exhaustive;
    let rels = normal_congruences(&symmetric3()).unwrap();
    for r in &rels {
        for s in &rels {
            let report = smith_is_huq(r, s, &plan).unwrap();
            let both_total = r.name.ends_with("N6") && s.name.ends_with("N6");
            let mixed = (r.name.ends_with("N6") && s.name.ends_with("N3")) || (r.name.ends_with("N3") && s.name.ends_with("N6"));
            assert_eq!(report.smith.holds(), !(both_total || mixed), "{} / {}", r.name, s.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn schreier_conditions_agree(index in 0usize..10_000) {
        let fam = family();
        let d = &fam[index % fam.len()];
        let plan = EnumerationPlan::Exhaustive;
        let pb = build_pullback(d, None).unwrap();
        let (_, k) = kernel(&d.f).unwrap();
        let ef = find_schreier_retraction(&k, &d.f, &d.r, &plan).unwrap();
        let report = one_sided_admissibility(d, &pb, &ef, &plan).unwrap();
        prop_assert!(report.agree(), "{}: {:?}", d.name, report);
    }

    #[test]
    fn huq_commutation_gives_the_explicit_morphism(index in 0usize..10_000) {
        let fam = family();
        let d = &fam[index % fam.len()];
        let plan = EnumerationPlan::Exhaustive;
        let pb = build_pullback(d, None).unwrap();
        let (_, k) = kernel(&d.f).unwrap();
        let (_, l) = kernel(&d.g).unwrap();
        let ef = find_schreier_retraction(&k, &d.f, &d.r, &plan).unwrap();
        let eg = find_schreier_retraction(&l, &d.g, &d.s, &plan).unwrap();
        let (al, ga, kk, ll) = (d.alpha.clone(), d.gamma.clone(), ef.k.clone(), eg.k.clone());
        let ak = Hom::new("ak", &ef.x, &d.d, move |x| al.apply(&kk.apply(x)));
        let gl = Hom::new("gl", &eg.x, &d.d, move |y| ga.apply(&ll.apply(y)));
        let commute = check_huq_commute(&ak, &gl, &plan).unwrap();
        let oracle = check_admissible_oracle(d, &pb, DEFAULT_EXTENSION_BOUND).unwrap();
        match huq_admissibility(d, &pb, &ef, &eg, &plan) {
            Ok(h) => {
                prop_assert!(commute.holds());
                if h.verdicts.iter().all(|v| v.holds()) {
                    let OracleOutcome::Admissible(images) = oracle else {
                        return Err(TestCaseError::fail(format!("{}: φ verifies but oracle disagrees", d.name)));
                    };
                    prop_assert_eq!(h.phi.images().unwrap(), images);
                }
            }
            Err(_) => prop_assert!(commute.fails()),
        }
    }
}
