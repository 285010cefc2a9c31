use restrix::algebra::{find_isomorphism, FiniteMonoid, FiniteSemilattice, PartialBijection};
use restrix::expansions::{
    bounded_enumerate, build_partial_product, cg_reconstruct, eta_tilde, lift_homomorphism, lift_prefix,
    prefix_expand_group, prefix_size_formula, ClosedModel, Enumeration, PresentedExpansion, RelationTag,
};
use restrix::premorph::FinitePremorphism;
use restrix::Error;

fn closed(m: &FiniteMonoid, tag: RelationTag, inverse: bool) -> ClosedModel {
    let mut p = PresentedExpansion::new(m.clone(), tag);
    if inverse {
        p = p.inverse();
    }
    bounded_enumerate(&p).unwrap().into_closed().unwrap()
}

#[test]
fn prefix_sizes_match_the_formula() {
    for n in 1..=6 {
        let g = FiniteMonoid::cyclic(n);
        assert_eq!(prefix_expand_group(&g).unwrap().algebra.size(), prefix_size_formula(n));
    }
    let s3 = prefix_expand_group(&FiniteMonoid::symmetric_group(3)).unwrap();
    assert_eq!(s3.algebra.size(), 112);
}

#[test]
fn fr_s_of_a_group_is_its_prefix_expansion() {
    for g in [FiniteMonoid::cyclic(2), FiniteMonoid::cyclic(3), FiniteMonoid::cyclic(4)] {
        let fr = closed(&g, RelationTag::S, false);
        let p = prefix_expand_group(&g).unwrap();
        assert!(find_isomorphism(&fr.algebra, &p.algebra).unwrap().is_some());
    }
}

#[test]
fn relation_tags_order_the_sizes() {
    // FR_pm ↠ FR_ls ↠ FR_s ↠ FR_hom on Z2.
    let z2 = FiniteMonoid::cyclic(2);
    let sizes: Vec<usize> = [RelationTag::Pm, RelationTag::Ls, RelationTag::S, RelationTag::Hom]
        .iter()
        .map(|&t| closed(&z2, t, false).algebra.size())
        .collect();
    assert_eq!(sizes, vec![6, 3, 3, 2]);
    assert_eq!(closed(&z2, RelationTag::Pm, true).algebra.size(), 7);
}

#[test]
fn eta_on_premorphism_relations_for_z2() {
    let z2 = FiniteMonoid::cyclic(2);
    let out = eta_tilde(&z2, &closed(&z2, RelationTag::Pm, false), &closed(&z2, RelationTag::Pm, true)).unwrap();
    assert_eq!(out.product.algebra.size(), 6);
    assert!(out.psi_injective);
}

#[test]
fn exceeded_is_reported_not_an_error() {
    let p = PresentedExpansion::new(FiniteMonoid::cyclic(3), RelationTag::Pm).with_bound(2);
    match bounded_enumerate(&p).unwrap() {
        Enumeration::Exceeded { partial, .. } => assert!(partial > 0),
        Enumeration::Closed(c) => panic!("closed with {} elements", c.algebra.size()),
    }
}

#[test]
fn product_preconditions_name_the_axiom() {
    let g = FiniteMonoid::cyclic(2);
    let y = FiniteSemilattice::chain(2);
    let id = PartialBijection::identity_on(0..2);
    // Swapping the top and bottom of a chain is not order preserving.
    let swap = PartialBijection::from_pairs(&[(0, 1), (1, 0)]).unwrap();
    let phi = FinitePremorphism::new(g, y, vec![id, swap]).unwrap();
    match build_partial_product(&phi) {
        Err(Error::Precondition { axiom, .. }) => assert!(axiom == "B" || axiom == "PM2", "{axiom}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn reconstruction_of_fr_models() {
    for m in FiniteMonoid::all_of_order(3) {
        for tag in [RelationTag::S, RelationTag::Hom, RelationTag::Ls] {
            let fr = closed(&m, tag, false);
            let r = cg_reconstruct(&fr.algebra).unwrap();
            assert_eq!(r.product.algebra.size(), fr.algebra.size());
        }
    }
}

#[test]
fn lifts_commute_with_projections() {
    let z4 = FiniteMonoid::cyclic(4);
    let z2 = FiniteMonoid::cyclic(2);
    let alpha: Vec<usize> = (0..4).map(|k| k % 2).collect();
    for tag in [RelationTag::S, RelationTag::Hom] {
        let e1 = bounded_enumerate(&PresentedExpansion::new(z4.clone(), tag)).unwrap();
        let e2 = bounded_enumerate(&PresentedExpansion::new(z2.clone(), tag)).unwrap();
        let lift = lift_homomorphism(&alpha, &z4, &z2, &e1, &e2).unwrap();
        assert_eq!(lift.map.len(), e1.closed().unwrap().algebra.size());
    }
    let p4 = prefix_expand_group(&z4).unwrap();
    let p2 = prefix_expand_group(&z2).unwrap();
    lift_prefix(&alpha, &z4, &z2, &p4, &p2).unwrap();
}

#[test]
fn lift_needs_closed_models() {
    let z3 = FiniteMonoid::cyclic(3);
    let open = bounded_enumerate(&PresentedExpansion::new(z3.clone(), RelationTag::Pm).with_bound(2)).unwrap();
    let fine = bounded_enumerate(&PresentedExpansion::new(z3.clone(), RelationTag::S)).unwrap();
    let id = vec![0, 1, 2];
    assert!(matches!(lift_homomorphism(&id, &z3, &z3, &open, &fine), Err(Error::Unsupported(_))));
}
