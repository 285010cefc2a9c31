//! The expansions of `M = {1, a}` with `a² = a` under the homomorphism
//! relations: `FR(M)` has three elements `1, e = ⌊a⌋*, ⌊a⌋` and `FI(M)` is
//! `M` itself.

use restrix::algebra::{extend_homomorphism, FiniteMonoid, Side};
use restrix::expansions::{bounded_enumerate, ClosedModel, PresentedExpansion, RelationTag};
use restrix::premorph::{classify, tau_of};
use restrix::verify::{verify_ample, verify_cg, verify_embedding, verify_main, Status};

fn model(inverse: bool) -> ClosedModel {
    let mut p = PresentedExpansion::new(FiniteMonoid::idempotent_pair(), RelationTag::Hom);
    if inverse {
        p = p.inverse();
    }
    bounded_enumerate(&p).unwrap().into_closed().unwrap()
}

#[test]
fn sizes_and_unaries() {
    let fr = model(false);
    let s = &fr.algebra;
    let a = fr.generators[1];
    assert_eq!(s.size(), 3);
    assert_eq!(s.star(a), s.plus(a));
    assert_ne!(s.star(a), a);
    assert_eq!(s.mul(a, a), a);
    assert_eq!(model(true).algebra.size(), 2);
}

#[test]
fn natural_order() {
    let fr = model(false);
    let s = &fr.algebra;
    let a = fr.generators[1];
    let e = s.star(a);
    assert!(s.leq(e, s.one()));
    assert!(!s.leq(e, a));
    assert!(!s.leq(a, s.one()));
    assert!(!s.leq(s.one(), a));
}

#[test]
fn sigma_and_structure() {
    let fr = model(false);
    let s = &fr.algebra;
    let a = fr.generators[1];
    let e = s.star(a);
    let sigma = s.sigma().unwrap();
    assert_eq!(sigma.class_count(), 2);
    assert!(sigma.same(s.one(), e));
    assert!(!sigma.same(s.one(), a));
    assert!(s.is_proper().unwrap());
    assert!(s.is_f_restriction().unwrap());
    assert!(!s.is_ample(Side::Both).unwrap());
    let data = tau_of(s).unwrap();
    assert_eq!(data.tau[sigma.class_of(a)], a);
    assert_eq!(data.tau[sigma.class_of(e)], s.one());
}

#[test]
fn psi_identifies_a_with_its_star() {
    let fr = model(false);
    let fi = model(true);
    let psi = extend_homomorphism(&fr.algebra, &fr.generators, &fi.algebra, &fi.generators).unwrap();
    let a = fr.generators[1];
    assert_eq!(psi[a], psi[fr.algebra.star(a)]);
    let r = verify_embedding("{1,a}", &FiniteMonoid::idempotent_pair(), RelationTag::Hom, 6);
    assert_eq!(r.status, Status::Pass);
}

#[test]
fn harnesses_pass() {
    let m = FiniteMonoid::idempotent_pair();
    assert_eq!(verify_main("{1,a}", &m, RelationTag::Hom, 6).status, Status::Pass);
    assert_eq!(verify_cg("FR", &model(false).algebra).status, Status::Pass);
    let r = verify_ample("{1,a}", &m, RelationTag::Hom, 6);
    assert_eq!(r.status, Status::Pass);
    assert!(r.detail.unwrap().contains("[false, false, false], ample = [false, false, false]"));
}

#[test]
fn underlying_premorphism_is_a_premorphism() {
    let u = restrix::expansions::underlying_premorphism(&model(false).algebra).unwrap();
    assert!(classify(&u.premorphism).is_premorphism);
}
