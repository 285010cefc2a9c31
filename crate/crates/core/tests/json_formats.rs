use proptest::prelude::*;

use restrix::algebra::{FiniteBiunary, FiniteMonoid, PartialBijection, FiniteSemilattice};
use restrix::expansions::{build_partial_product, Enumeration, PresentedExpansion, RelationTag};
use restrix::freerestr::{compute_d, FRPair};
use restrix::munn::{tree_of_word, MunnTree, Word};
use restrix::premorph::FinitePremorphism;
use restrix::verify::{Status, VerificationReport};

#[test]
fn biunary_interchange_format() {
    let text = r#"{"size": 2, "one": 0, "mul": [[0, 1], [1, 1]], "star": [0, 1], "plus": [0, 1]}"#;
    let s: FiniteBiunary = serde_json::from_str(text).unwrap();
    assert!(s.is_restriction_monoid());
    let back: FiniteBiunary = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
}

#[test]
fn monoid_omits_unaries() {
    let m: FiniteMonoid = serde_json::from_str(r#"{"size": 2, "one": 0, "mul": [[0, 1], [1, 0]]}"#).unwrap();
    assert!(m.is_group());
    let j = serde_json::to_string(&m).unwrap();
    assert!(!j.contains("star"));
}

#[test]
fn malformed_tables_are_rejected() {
    for text in [
        r#"{"size": 2, "one": 0, "mul": [[0, 1]], "star": [0, 1], "plus": [0, 1]}"#,
        r#"{"size": 2, "one": 0, "mul": [[0, 1], [1, 2]], "star": [0, 1], "plus": [0, 1]}"#,
        r#"{"size": 2, "one": 1, "mul": [[0, 1], [1, 1]], "star": [0, 1], "plus": [0, 1]}"#,
    ] {
        assert!(serde_json::from_str::<FiniteBiunary>(text).is_err(), "{text}");
    }
}

#[test]
fn munn_tree_format() {
    let t = tree_of_word(&Word::parse("a b b'").unwrap());
    assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"vertices":["","a","ab"],"end":"a"}"#);
    let back: MunnTree = serde_json::from_str(r#"{"vertices":["","a","ab"],"end":"a"}"#).unwrap();
    assert_eq!(back, t);
    assert!(serde_json::from_str::<MunnTree>(r#"{"vertices":["","ab"],"end":""}"#).is_err());
}

#[test]
fn fr_pair_format() {
    let d = compute_d(&Word::parse("a").unwrap());
    let j = serde_json::to_string(&d).unwrap();
    assert!(j.starts_with(r#"{"E":"#), "{j}");
    let back: FRPair = serde_json::from_str(&j).unwrap();
    assert_eq!(back, d);
}

#[test]
fn presented_expansion_defaults() {
    let p: PresentedExpansion = serde_json::from_str(
        r#"{"monoid": {"size": 2, "one": 0, "mul": [[0, 1], [1, 1]]}, "relations": "hom"}"#,
    )
    .unwrap();
    assert_eq!(p.relations, RelationTag::Hom);
    assert_eq!(p.bound, 6);
    let e = restrix::expansions::bounded_enumerate(&p).unwrap();
    let j = serde_json::to_string(&e).unwrap();
    assert!(j.starts_with(r#"{"status":"closed""#));
    assert_eq!(serde_json::from_str::<Enumeration>(&j).unwrap(), e);
}

#[test]
fn premorphism_bundle_to_product() {
    let text = r#"{
        "source": {"size": 2, "one": 0, "mul": [[0, 1], [1, 0]]},
        "Y": {"size": 2, "top": 0, "meet": [[0, 1], [1, 1]]},
        "map": [{"dom": [0, 1], "val": [0, 1]}, {"dom": [0, 1], "val": [0, 1]}]
    }"#;
    let phi: FinitePremorphism = serde_json::from_str(text).unwrap();
    let p = build_partial_product(&phi).unwrap();
    assert_eq!(p.algebra.size(), 4);
    assert_eq!(p.elements, vec![(0, 0), (1, 0), (0, 1), (1, 1)]);
}

#[test]
fn report_round_trip() {
    let r = VerificationReport::fail("main-isomorphism", "Z2, R = s", "witness");
    let j = serde_json::to_string(&r).unwrap();
    let back: VerificationReport = serde_json::from_str(&j).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.status, Status::Fail);
    let skipped = VerificationReport::skipped("reconstruction", "I2", "not proper");
    assert!(!serde_json::to_string(&skipped).unwrap().contains("witness"));
}

fn small_bijection() -> impl Strategy<Value = PartialBijection> {
    proptest::sample::subsequence((0..5usize).collect::<Vec<_>>(), 0..=5).prop_flat_map(|dom| {
        let n = dom.len();
        proptest::sample::subsequence((0..5usize).collect::<Vec<_>>(), n).prop_shuffle().prop_map(move |val| {
            let pairs: Vec<(usize, usize)> = dom.iter().copied().zip(val).collect();
            PartialBijection::from_pairs(&pairs).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn partial_bijection_round_trip(p in small_bijection()) {
        let j = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<PartialBijection>(&j).unwrap(), p);
    }

    #[test]
    fn chain_semilattice_round_trip(n in 1usize..6) {
        let y = FiniteSemilattice::chain(n);
        let j = serde_json::to_string(&y).unwrap();
        prop_assert_eq!(serde_json::from_str::<FiniteSemilattice>(&j).unwrap(), y);
    }
}
