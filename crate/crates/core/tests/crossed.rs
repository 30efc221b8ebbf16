use conj_core::algebra::all_homs;
use conj_core::builders::{circle_arcs, cyclic_identity, naturals_identity, q8_over_zero, quaternion_disk};
use conj_core::catalog::{cyclic, klein, quaternion_group, symmetric3, trivial};
use conj_core::internal::{
    build_groupoid, build_internal_category, build_reflexive_graph, check_kernel_exchange, classify,
    verify_composition_forced, Classification, CrossedData, InternalError,
};
use conj_core::schreier::{semidirect, ExternalAction};
use conj_core::{ConjStructure, EnumerationPlan};
use proptest::prelude::*;

fn exchange_matches_peiffer(d: &CrossedData, plan: &EnumerationPlan) {
    let report = classify(d, plan).unwrap();
    let graph = build_reflexive_graph(d, plan).unwrap();
    let exchange = check_kernel_exchange(&graph, plan).unwrap();
    assert_eq!(exchange.status(), report.peiffer.status(), "{d:?}");
}

#[test]
fn classification_matrix() {
    let plan = EnumerationPlan::Exhaustive;
    let z3 = cyclic_identity(3, &plan).unwrap();
    assert_eq!(classify(&z3, &plan).unwrap().label, Classification::CrossedModule);
    let g = build_groupoid(&z3, &plan).unwrap();
    assert!(g.verdict().holds());
    assert!(g.category.verdict().holds());

    let q8 = q8_over_zero(&plan).unwrap();
    let report = classify(&q8, &plan).unwrap();
    assert_eq!(report.label, Classification::PrecrossedSemimodule);
    assert_eq!(report.peiffer.witness().unwrap().shown, ["i", "j"]);
    assert!(matches!(build_internal_category(&q8, &plan), Err(InternalError::PeifferFailed(_))));

    let sampled = EnumerationPlan::sampled(300, 5).unwrap();
    let disk = quaternion_disk(&sampled).unwrap();
    let report = classify(&disk, &sampled).unwrap();
    assert_eq!(report.label, Classification::CrossedSemimodule);
    let w = report.kernel_group.witness().unwrap();
    assert_eq!(w.shown, ["1/2"]);
    assert!(matches!(build_groupoid(&disk, &sampled), Err(InternalError::KernelNotGroup(_))));
}

#[test]
fn kernel_exchange_agrees_with_peiffer_on_showcase_instances() {
    let plan = EnumerationPlan::Exhaustive;
    exchange_matches_peiffer(&cyclic_identity(3, &plan).unwrap(), &plan);
    exchange_matches_peiffer(&q8_over_zero(&plan).unwrap(), &plan);
    let window = EnumerationPlan::bounded(5).unwrap();
    exchange_matches_peiffer(&naturals_identity(&window).unwrap(), &window);
    let sampled = EnumerationPlan::sampled(300, 9).unwrap();
    exchange_matches_peiffer(&quaternion_disk(&sampled).unwrap(), &sampled);
    exchange_matches_peiffer(&circle_arcs(&sampled).unwrap(), &sampled);
}

#[test]
fn composition_is_forced_on_finite_categories() {
    let plan = EnumerationPlan::Exhaustive;
    for n in [1, 2, 3, 4] {
        let d = cyclic_identity(n, &plan).unwrap();
        let cat = build_internal_category(&d, &plan).unwrap();
        assert!(cat.verdict().holds());
        assert!(verify_composition_forced(&cat).unwrap().holds());
    }
}

#[test]
fn naturals_category_is_not_a_groupoid() {
    let plan = EnumerationPlan::bounded(5).unwrap();
    let d = naturals_identity(&plan).unwrap();
    let report = classify(&d, &plan).unwrap();
    assert_eq!(report.label, Classification::CrossedSemimodule);
    assert!(build_internal_category(&d, &plan).unwrap().verdict().holds());
    assert!(build_groupoid(&d, &plan).is_err());
}

fn trivial_action_data(x: &ConjStructure, b: &ConjStructure, pick: usize) -> CrossedData {
    let plan = EnumerationPlan::Exhaustive;
    let e = semidirect(&ExternalAction::trivial(b, x), &plan).unwrap();
    let homs = all_homs(&e.x, &e.b, "h").unwrap();
    let h = homs[pick % homs.len()].clone();
    CrossedData::new(e, h).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn finite_trivial_actions_classify_consistently(xi in 0usize..5, bi in 0usize..4, pick in 0usize..64) {
        let xs = [cyclic(2), cyclic(3), klein(), symmetric3(), quaternion_group()];
        let bs = [trivial(), cyclic(2), cyclic(3), klein()];
        let plan = EnumerationPlan::Exhaustive;
        let d = trivial_action_data(&xs[xi], &bs[bi], pick);
        let report = classify(&d, &plan).unwrap();
        exchange_matches_peiffer(&d, &plan);
        // Finite kernels are groups, so the ladder stops at precrossed or crossed module.
        prop_assert!(report.kernel_group.holds());
        match report.label {
            Classification::CrossedModule => {
                let g = build_groupoid(&d, &plan).unwrap();
                prop_assert!(g.verdict().holds());
                prop_assert!(verify_composition_forced(&g.category).unwrap().holds());
            }
            Classification::PrecrossedSemimodule => {
                prop_assert!(report.peiffer.fails());
                prop_assert!(build_internal_category(&d, &plan).is_err());
            }
            other => prop_assert!(false, "unexpected {other:?}"),
        }
    }
}
