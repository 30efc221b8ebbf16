use conj_core::builders::{direct_extension, finite_extensions, inversion_action, max_chain_split};
use conj_core::catalog::{cyclic, klein, quaternion_group, symmetric3};
use conj_core::schreier::{
    action_from_extension, find_schreier_retraction, kernel, normal_congruences, roundtrip_iso, semidirect,
    verify_action_compatibility, verify_action_laws, verify_conjugate_retraction, verify_exactness,
    verify_retraction_laws, ExternalAction, SchreierError,
};
use conj_core::{Elem, EnumerationPlan};
use proptest::prelude::*;

#[test]
fn finite_extensions_pass_retraction_and_round_trip() {
    let plan = EnumerationPlan::Exhaustive;
    for e in finite_extensions(&plan).unwrap() {
        assert!(verify_retraction_laws(&e, &plan).unwrap().holds(), "{e:?}");
        assert!(verify_conjugate_retraction(&e, &plan).unwrap().holds(), "{e:?}");
        assert!(verify_exactness(&e, &plan).unwrap().holds(), "{e:?}");
        let rt = roundtrip_iso(&e, &plan).unwrap();
        assert!(rt.verdict().holds(), "{e:?}: {:?}", rt.verdicts);
    }
}

#[test]
fn recovered_action_of_semidirect_is_the_original() {
    let plan = EnumerationPlan::Exhaustive;
    let phi = inversion_action();
    let e = semidirect(&phi, &plan).unwrap();
    let back = action_from_extension(&e).unwrap();
    for b in phi.b.elements().unwrap().iter() {
        for x in phi.x.elements().unwrap().iter() {
            assert_eq!(back.act(b, x), phi.act(b, x));
        }
    }
}

#[test]
fn non_schreier_split_reports_both_decompositions() {
    let (k, f, r) = max_chain_split();
    match find_schreier_retraction(&k, &f, &r, &EnumerationPlan::Exhaustive) {
        Err(SchreierError::NotSchreier { element, decompositions }) => {
            assert_eq!(element, "2");
            assert_eq!(decompositions.len(), 2);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn split_over_nonnormal_section_of_s3() {
    // Sign with section (12): kernel A3, retraction x ↦ x − r(f(x)).
    let s3 = symmetric3();
    let z2 = cyclic(2);
    let sign = [0, 1, 1, 1, 0, 0].iter().map(|&i| Elem::Idx(i)).collect();
    let f = conj_core::Hom::from_table("sign", &s3, &z2, sign).unwrap();
    let r = conj_core::Hom::from_table("r", &z2, &s3, vec![Elem::Idx(0), Elem::Idx(1)]).unwrap();
    let (ker, k) = kernel(&f).unwrap();
    assert_eq!(ker.size(), Some(3));
    let plan = EnumerationPlan::Exhaustive;
    let e = find_schreier_retraction(&k, &f, &r, &plan).unwrap();
    assert!(verify_retraction_laws(&e, &plan).unwrap().holds());
    let phi = action_from_extension(&e).unwrap();
    assert!(verify_action_laws(&phi, &plan).unwrap().holds());
    assert!(roundtrip_iso(&e, &plan).unwrap().verdict().holds());
}

#[test]
fn trivial_action_on_q8_is_compatible_but_inversion_on_z3_of_z4_is_not_an_action() {
    let plan = EnumerationPlan::Exhaustive;
    let ok = ExternalAction::trivial(&cyclic(3), &quaternion_group());
    assert!(verify_action_compatibility(&ok, &plan).unwrap().all().iter().all(|v| v.holds()));
    // Negation by the generator of Z3 does not compose to the identity.
    let bad = ExternalAction::new(&cyclic(3), &cyclic(4), |b, x| {
        if b.as_idx() == Some(0) { x.clone() } else { Elem::Idx((4 - x.as_idx().unwrap()) % 4) }
    });
    assert!(verify_action_laws(&bad, &plan).unwrap().fails());
    assert!(matches!(semidirect(&bad, &plan), Err(SchreierError::ActionLawFailed(_))));
}

#[test]
fn congruence_legs_are_schreier() {
    for g in [cyclic(4), klein(), symmetric3()] {
        for rel in normal_congruences(&g).unwrap() {
            assert!(rel.is_equivalence(), "{}", rel.name);
            assert!(rel.first_leg.is_ok() && rel.second_leg.is_ok(), "{}", rel.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn direct_products_of_cyclic_groups_round_trip(m in 1usize..5, n in 1usize..5) {
        let plan = EnumerationPlan::Exhaustive;
        let e = direct_extension(&cyclic(m), &cyclic(n), &plan).unwrap();
        prop_assert_eq!(e.a.size(), Some(m * n));
        prop_assert!(verify_retraction_laws(&e, &plan).unwrap().holds());
        prop_assert!(roundtrip_iso(&e, &plan).unwrap().verdict().holds());
        for a in e.a.elements().unwrap().iter() {
            prop_assert_eq!(&e.q(a), a.fst());
        }
    }

    #[test]
    fn automorphism_actions_of_z2_on_cyclic_groups(n in 1usize..8, negate in any::<bool>()) {
        let plan = EnumerationPlan::Exhaustive;
        let phi = ExternalAction::new(&cyclic(2), &cyclic(n), move |b, x| {
            let x = x.as_idx().unwrap();
            if negate && b.as_idx() == Some(1) { Elem::Idx((n - x) % n) } else { Elem::Idx(x) }
        });
        let e = semidirect(&phi, &plan).unwrap();
        prop_assert_eq!(e.a.size(), Some(2 * n));
        prop_assert!(roundtrip_iso(&e, &plan).unwrap().verdict().holds());
    }
}
