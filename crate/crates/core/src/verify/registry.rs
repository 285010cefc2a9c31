use crate::algebra::{
    find_isomorphism, inverse_as_restriction, munn_monoid, symmetric_inverse_monoid, FiniteBiunary,
    FiniteInverseMonoid, FiniteMonoid, FiniteSemilattice,
};
use crate::expansions::{
    bounded_enumerate, build_partial_product, conjugation_premorphism, prefix_expand_group,
    underlying_premorphism, ClosedModel, PrefixPair, PresentedExpansion, RelationTag,
};
use crate::premorph::munn_representation;

use super::harness::ConstructedMap;

#[derive(Clone, Debug)]
pub struct NamedMonoid {
    pub name: String,
    pub monoid: FiniteMonoid,
}

#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    pub name: String,
    pub algebra: FiniteBiunary,
}

fn named(name: &str, monoid: FiniteMonoid) -> NamedMonoid {
    NamedMonoid {
        name: name.to_string(),
        monoid,
    }
}

fn z2xz2() -> FiniteMonoid {
    FiniteMonoid::cyclic(2).direct_product(&FiniteMonoid::cyclic(2))
}

fn i2() -> FiniteBiunary {
    symmetric_inverse_monoid(2).expect("I2 tabulates").0
}

fn same(a: &FiniteMonoid, b: &FiniteMonoid) -> bool {
    a.size() == b.size()
        && matches!(
            find_isomorphism(&FiniteBiunary::reduced(a), &FiniteBiunary::reduced(b)),
            Ok(Some(_))
        )
}

/// All monoids of order at most 3 up to isomorphism, then `Z2×Z2`, `S3`,
/// the diamond semilattice and the symmetric inverse monoid on 2 points.
/// Small members that have a usual name get it.
pub fn monoid_registry() -> Vec<NamedMonoid> {
    let known = [
        ("Z2", FiniteMonoid::cyclic(2)),
        ("Z3", FiniteMonoid::cyclic(3)),
        ("{1,a}: a^2=a", FiniteMonoid::idempotent_pair()),
    ];
    let mut out = Vec::new();
    for n in 1..=3 {
        for (i, m) in FiniteMonoid::all_of_order(n).into_iter().enumerate() {
            let name = if n == 1 {
                "trivial".to_string()
            } else {
                known
                    .iter()
                    .find(|(_, k)| same(k, &m))
                    .map(|(s, _)| s.to_string())
                    .unwrap_or_else(|| format!("order{n}/{i}"))
            };
            out.push(NamedMonoid { name, monoid: m });
        }
    }
    out.push(named("Z2xZ2", z2xz2()));
    out.push(named("S3", FiniteMonoid::symmetric_group(3)));
    out.push(named("diamond", FiniteSemilattice::boolean(2).as_monoid()));
    out.push(named("I2", i2().monoid()));
    out
}

fn closed(m: &FiniteMonoid, tag: RelationTag) -> Option<ClosedModel> {
    bounded_enumerate(&PresentedExpansion::new(m.clone(), tag))
        .ok()
        .and_then(|e| e.into_closed())
}

/// `M(S, E(S))` for an inverse monoid `S`, via the conjugation action.
fn action_product(s: &FiniteBiunary) -> Option<FiniteBiunary> {
    let model = ClosedModel {
        algebra: s.clone(),
        generators: s.elements().collect(),
    };
    let (phi, _) = conjugation_premorphism(&s.monoid(), &model).ok()?;
    Some(build_partial_product(&phi).ok()?.algebra)
}

/// Restriction monoids for the reconstruction and agreement harnesses:
/// reduced registry monoids, two semilattices, `I2` itself, the model
/// `FR_hom` of `{1,a}: a^2=a`, prefix expansions, `M(I2, E(I2))`, and the
/// closed `FR_s`, `FR_hom` models of the monoids of order at most 3.
pub fn restriction_registry() -> Vec<NamedAlgebra> {
    let mut out = Vec::new();
    let reg = monoid_registry();
    for m in &reg {
        out.push(NamedAlgebra {
            name: format!("reduced {}", m.name),
            algebra: FiniteBiunary::reduced(&m.monoid),
        });
    }
    for (name, y) in [("chain2", FiniteSemilattice::chain(2)), ("diamond", FiniteSemilattice::boolean(2))] {
        out.push(NamedAlgebra {
            name: format!("semilattice {name}"),
            algebra: FiniteBiunary::from_semilattice(&y),
        });
    }
    out.push(NamedAlgebra {
        name: "I2".into(),
        algebra: i2(),
    });
    for (name, g) in [("Z2", FiniteMonoid::cyclic(2)), ("Z3", FiniteMonoid::cyclic(3)), ("Z2xZ2", z2xz2()), ("S3", FiniteMonoid::symmetric_group(3))] {
        let p = prefix_expand_group(&g).expect("small groups expand");
        out.push(NamedAlgebra {
            name: format!("prefix {name}"),
            algebra: p.algebra,
        });
    }
    if let Some(p) = action_product(&i2()) {
        out.push(NamedAlgebra {
            name: "M(I2, E(I2))".into(),
            algebra: p,
        });
    }
    for m in reg.iter().filter(|m| m.monoid.size() <= 3) {
        for tag in [RelationTag::S, RelationTag::Hom] {
            if let Some(model) = closed(&m.monoid, tag) {
                out.push(NamedAlgebra {
                    name: format!("FR_{tag} {}", m.name),
                    algebra: model.algebra,
                });
            }
        }
    }
    out
}

fn group_as_inverse(g: &FiniteMonoid) -> FiniteBiunary {
    inverse_as_restriction(&FiniteInverseMonoid::from_monoid(g.clone()).expect("groups are inverse"))
        .expect("groups are inverse")
}

/// Finite inverse monoids: groups, semilattices, `I2`, prefix expansions
/// and the two-element model `FI_hom` of `{1,a}: a^2=a`.
pub fn inverse_registry() -> Vec<NamedAlgebra> {
    let mut out = Vec::new();
    let groups = [
        ("Z2", FiniteMonoid::cyclic(2)),
        ("Z3", FiniteMonoid::cyclic(3)),
        ("Z2xZ2", z2xz2()),
        ("S3", FiniteMonoid::symmetric_group(3)),
    ];
    for (name, g) in &groups {
        out.push(NamedAlgebra {
            name: name.to_string(),
            algebra: group_as_inverse(g),
        });
    }
    for (name, y) in [("chain2", FiniteSemilattice::chain(2)), ("diamond", FiniteSemilattice::boolean(2))] {
        out.push(NamedAlgebra {
            name: name.to_string(),
            algebra: FiniteBiunary::from_semilattice(&y),
        });
    }
    out.push(NamedAlgebra {
        name: "I2".into(),
        algebra: i2(),
    });
    for (name, g) in groups.iter().take(3) {
        out.push(NamedAlgebra {
            name: format!("prefix {name}"),
            algebra: prefix_expand_group(g).expect("small groups expand").algebra,
        });
    }
    let m = FiniteMonoid::idempotent_pair();
    if let Some(fi) = bounded_enumerate(&PresentedExpansion::new(m, RelationTag::Hom).inverse())
        .ok()
        .and_then(|e| e.into_closed())
    {
        out.push(NamedAlgebra {
            name: "FI_hom {1,a}: a^2=a".into(),
            algebra: fi.algebra,
        });
    }
    out
}

fn munn_image(s: &FiniteBiunary) -> Option<(FiniteBiunary, Vec<usize>)> {
    let (y, _) = s.projections().ok()?;
    let t = munn_monoid(&y).ok()?;
    let proj = s.projection_set();
    let map = s
        .elements()
        .map(|x| t.index_of(&munn_representation(s, &proj, x)))
        .collect::<Option<Vec<_>>>()?;
    Some((t.algebra, map))
}

/// Premorphisms between registry inverse monoids: identities, Munn
/// representations, `g ↦ ({1,g}, g)` into prefix expansions, the
/// projections `(A, g) ↦ g`, underlying premorphisms of prefix expansions,
/// skewed maps `g ↦ ({1, g, c}, g)`, constant maps to `1` and maps sending
/// every non-identity element to a zero.
pub fn constructed_premorphisms() -> Vec<ConstructedMap> {
    let inv = inverse_registry();
    let mut out = Vec::new();
    let push = |out: &mut Vec<ConstructedMap>, name: String, src: &FiniteBiunary, dst: &FiniteBiunary, map: Vec<usize>| {
        out.push(ConstructedMap {
            name,
            source: src.clone(),
            target: dst.clone(),
            map,
        })
    };
    for s in &inv {
        push(&mut out, format!("id {}", s.name), &s.algebra, &s.algebra, s.algebra.elements().collect());
        if let Some((t, map)) = munn_image(&s.algebra) {
            push(&mut out, format!("Munn representation of {}", s.name), &s.algebra, &t, map);
        }
    }
    let groups = [
        ("Z2", FiniteMonoid::cyclic(2)),
        ("Z3", FiniteMonoid::cyclic(3)),
        ("Z2xZ2", z2xz2()),
    ];
    for (name, g) in &groups {
        let src = group_as_inverse(g);
        let p = prefix_expand_group(g).expect("small groups expand");
        let embed = g.elements().map(|x| p.embed(g, x)).collect();
        push(&mut out, format!("{name} into prefix {name}"), &src, &p.algebra, embed);
        let proj = p.pairs.iter().map(|q| q.g).collect();
        push(&mut out, format!("prefix {name} onto {name}"), &p.algebra, &src, proj);
        push(&mut out, format!("{name} to 1 in prefix {name}"), &src, &p.algebra, vec![p.algebra.one(); g.size()]);
        if let Ok(u) = underlying_premorphism(&p.algebra) {
            if let Ok(t) = munn_monoid(u.premorphism.y()) {
                let map: Option<Vec<usize>> = u.premorphism.map().iter().map(|q| t.index_of(q)).collect();
                let in_group_order = u.premorphism.source() == g;
                if let (Some(map), true) = (map, in_group_order) {
                    push(&mut out, format!("underlying premorphism of prefix {name}"), &src, &t.algebra, map);
                }
            }
        }
    }
    let s3 = ("S3", FiniteMonoid::symmetric_group(3));
    for (name, g) in groups.iter().skip(1).chain([s3.clone()].iter()) {
        // g ↦ ({1, g, c}, g) is a premorphism that is not strong.
        let src = group_as_inverse(g);
        let p = prefix_expand_group(g).expect("small groups expand");
        let c = (0..g.size()).find(|&c| c != g.one()).expect("nontrivial group");
        let map = g
            .elements()
            .map(|x| {
                let set = if x == g.one() { 1 << x } else { 1 << g.one() | 1 << x | 1 << c };
                p.index_of(&PrefixPair { set, g: x }).expect("pair")
            })
            .collect();
        push(&mut out, format!("{name} skewed by {c} into prefix {name}"), &src, &p.algebra, map);
    }
    for (gname, g) in groups.iter().chain([s3].iter()) {
        let src = group_as_inverse(g);
        for (yname, y) in [("chain2", FiniteSemilattice::chain(2)), ("diamond", FiniteSemilattice::boolean(2))] {
            let dst = FiniteBiunary::from_semilattice(&y);
            let zero = (0..y.size()).find(|&z| (0..y.size()).all(|e| y.leq(z, e))).expect("finite semilattices have a zero");
            let map = g.elements().map(|x| if x == g.one() { dst.one() } else { zero }).collect();
            push(&mut out, format!("{gname} to zero of {yname}"), &src, &dst, map);
        }
    }
    out
}
