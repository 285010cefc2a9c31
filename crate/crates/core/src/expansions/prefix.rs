use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteBiunary, FiniteMonoid};
use crate::error::{Error, Result};

/// Groups above this order would give expansions far beyond any table we
/// can verify.
pub const MAX_PREFIX_GROUP: usize = 12;

/// A pair `(A, g)` with `1, g ∈ A ⊆ G`; `A` is a bitmask over the group's
/// element indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrefixPair {
    pub set: u64,
    pub g: usize,
}

impl PrefixPair {
    pub fn contains(&self, x: usize) -> bool {
        self.set >> x & 1 == 1
    }

    pub fn members(&self) -> Vec<usize> {
        (0..64).filter(|&x| self.contains(x)).collect()
    }

    /// `{0,1}|1`.
    pub fn label(&self) -> String {
        let m: Vec<String> = self.members().iter().map(usize::to_string).collect();
        format!("{{{}}}|{}", m.join(","), self.g)
    }
}

/// `G̃^R` as a finite inverse monoid, with its pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixExpansion {
    pub algebra: FiniteBiunary,
    pub pairs: Vec<PrefixPair>,
}

impl PrefixExpansion {
    pub fn index_of(&self, p: &PrefixPair) -> Option<usize> {
        self.pairs.binary_search_by(|q| order_key(q).cmp(&order_key(p))).ok()
    }

    /// `({1, g}, g)`, the image of `g` under the canonical premorphism.
    pub fn embed(&self, group: &FiniteMonoid, g: usize) -> usize {
        let p = PrefixPair {
            set: 1 << group.one() | 1 << g,
            g,
        };
        self.index_of(&p).expect("every ({1,g}, g) is a pair")
    }
}

fn order_key(p: &PrefixPair) -> (usize, u32, u64) {
    (p.g, p.set.count_ones(), p.set)
}

fn translate(group: &FiniteMonoid, g: usize, set: u64) -> u64 {
    (0..group.size())
        .filter(|&x| set >> x & 1 == 1)
        .fold(0, |acc, x| acc | 1 << group.mul(g, x))
}

/// `Σ_g 2^(|G| − |{1, g}|)`, the number of pairs.
pub fn prefix_size_formula(order: usize) -> usize {
    if order == 0 {
        return 0;
    }
    (1usize << (order - 1)) + (order - 1) * (1usize << (order.saturating_sub(2)))
}

/// The prefix expansion of a finite group: pairs `(A, g)` with
/// `(A, g)(B, h) = (A ∪ gB, gh)`, `(A, g)⁻¹ = (g⁻¹A, g⁻¹)`,
/// `(A, g)* = (g⁻¹A, 1)` and `(A, g)⁺ = (A, 1)`.
///
/// Elements are ordered by `g`, then by `|A|`, then by the bitmask, so
/// `({1}, 1)` comes first.
pub fn prefix_expand_group(group: &FiniteMonoid) -> Result<PrefixExpansion> {
    if !group.is_group() {
        return Err(Error::invalid("prefix expansion needs a group"));
    }
    let n = group.size();
    if n > MAX_PREFIX_GROUP {
        return Err(Error::SizeLimit {
            size: n,
            limit: MAX_PREFIX_GROUP,
        });
    }
    let one = group.one();
    let mut pairs = Vec::new();
    for g in 0..n {
        let required = 1u64 << one | 1u64 << g;
        for set in 0..(1u64 << n) {
            if set & required == required {
                pairs.push(PrefixPair { set, g });
            }
        }
    }
    pairs.sort_by_key(order_key);
    let index: HashMap<PrefixPair, usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let at = |p: PrefixPair| index[&p];
    let inv_g: Vec<usize> = (0..n)
        .map(|g| group.unit_inverse(g).expect("groups have inverses"))
        .collect();
    let size = pairs.len();
    let mut mul = Vec::with_capacity(size * size);
    for a in &pairs {
        for b in &pairs {
            mul.push(at(PrefixPair {
                set: a.set | translate(group, a.g, b.set),
                g: group.mul(a.g, b.g),
            }));
        }
    }
    let inv: Vec<usize> = pairs
        .iter()
        .map(|p| {
            at(PrefixPair {
                set: translate(group, inv_g[p.g], p.set),
                g: inv_g[p.g],
            })
        })
        .collect();
    let star: Vec<usize> = pairs
        .iter()
        .map(|p| {
            at(PrefixPair {
                set: translate(group, inv_g[p.g], p.set),
                g: one,
            })
        })
        .collect();
    let plus: Vec<usize> = pairs.iter().map(|p| at(PrefixPair { set: p.set, g: one })).collect();
    let algebra = FiniteBiunary::from_flat(size, at(PrefixPair { set: 1 << one, g: one }), mul, star, plus)?
        .with_inverse(inv)?
        .with_labels(pairs.iter().map(PrefixPair::label).collect())?;
    Ok(PrefixExpansion { algebra, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(prefix_expand_group(&FiniteMonoid::trivial()).unwrap().pairs.len(), 1);
        let z2 = prefix_expand_group(&FiniteMonoid::cyclic(2)).unwrap();
        let labels: Vec<&str> = z2.algebra.labels().unwrap().iter().map(String::as_str).collect();
        assert_eq!(labels, ["{0}|0", "{0,1}|0", "{0,1}|1"]);
        assert_eq!(prefix_expand_group(&FiniteMonoid::cyclic(3)).unwrap().pairs.len(), 8);
        assert_eq!(prefix_expand_group(&FiniteMonoid::symmetric_group(3)).unwrap().pairs.len(), 112);
        for n in 1..=6 {
            assert_eq!(prefix_size_formula(n), prefix_expand_group(&FiniteMonoid::cyclic(n)).unwrap().pairs.len());
        }
    }

    #[test]
    fn structure_of_small_cases() {
        for g in [FiniteMonoid::cyclic(2), FiniteMonoid::cyclic(3), FiniteMonoid::cyclic(2).direct_product(&FiniteMonoid::cyclic(2))] {
            let p = prefix_expand_group(&g).unwrap();
            let s = &p.algebra;
            assert!(s.is_restriction_monoid());
            assert!(s.is_proper().unwrap());
            let maxima = s.f_restriction_maxima().unwrap().unwrap();
            let sigma = s.sigma().unwrap();
            for x in g.elements() {
                let top = p.embed(&g, x);
                assert_eq!(maxima[sigma.class_of(top)], top);
            }
            assert_eq!(sigma.class_count(), g.size());
        }
    }

    #[test]
    fn z2_order_is_reverse_inclusion() {
        let p = prefix_expand_group(&FiniteMonoid::cyclic(2)).unwrap();
        let order = p.algebra.natural_order().unwrap();
        for (i, a) in p.pairs.iter().enumerate() {
            for (j, b) in p.pairs.iter().enumerate() {
                let expect = a.g == b.g && a.set & b.set == b.set;
                assert_eq!(order.leq(i, j), expect);
            }
        }
    }

    #[test]
    fn rejects_non_groups() {
        assert!(matches!(
            prefix_expand_group(&FiniteMonoid::idempotent_pair()),
            Err(Error::Invalid(_))
        ));
    }
}
