use serde::{Deserialize, Serialize};

use crate::algebra::{Congruence, FiniteBiunary, PartialBijection};
use crate::error::{Error, Result};
use crate::premorph::FinitePremorphism;

/// `M(T, Y)`: pairs `(x, s)` with `x ∈ ran φ(s)`, ordered by `s` then `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialProduct {
    pub algebra: FiniteBiunary,
    pub elements: Vec<(usize, usize)>,
}

impl PartialProduct {
    pub fn index_of(&self, x: usize, s: usize) -> Option<usize> {
        self.elements.binary_search_by_key(&(s, x), |&(x, s)| (s, x)).ok()
    }
}

/// Builds the partial action product of a premorphism satisfying (PM1),
/// (PM2), (A), (B) and (C). The result is checked to be a proper
/// restriction monoid with projections `Y` and `σ`-quotient `T`.
pub fn build_partial_product(phi: &FinitePremorphism) -> Result<PartialProduct> {
    phi.validate()?;
    let t = phi.source();
    let y = phi.y();
    let mut elements: Vec<(usize, usize)> = t
        .elements()
        .flat_map(|s| phi.at(s).ran().into_iter().map(move |x| (x, s)))
        .collect();
    elements.sort_by_key(|&(x, s)| (s, x));
    let n = elements.len();
    let idx = |x: usize, s: usize| -> Result<usize> {
        elements
            .binary_search_by_key(&(s, x), |&(x, s)| (s, x))
            .map_err(|_| Error::violation("partial action product", format!("({x}, {s}) is not an element")))
    };
    let inv: Vec<PartialBijection> = t.elements().map(|s| phi.at(s).inverse()).collect();
    let mut mul = Vec::with_capacity(n * n);
    for &(x, s) in &elements {
        let back = inv[s].apply(x).expect("x lies in the range of phi(s)");
        for &(z, u) in &elements {
            let w = phi.at(s).apply(y.meet(back, z)).expect("ideal domain");
            mul.push(idx(w, t.mul(s, u))?);
        }
    }
    let one = t.one();
    let star = elements
        .iter()
        .map(|&(x, s)| idx(inv[s].apply(x).expect("range"), one))
        .collect::<Result<Vec<_>>>()?;
    let plus = elements.iter().map(|&(x, _)| idx(x, one)).collect::<Result<Vec<_>>>()?;
    let labels = elements.iter().map(|(x, s)| format!("({x},{s})")).collect();
    let algebra = FiniteBiunary::from_flat(n, idx(y.top(), one)?, mul, star, plus)
        .map_err(|e| Error::violation("partial action product", e.to_string()))?
        .with_labels(labels)?;
    check_product(&algebra, &elements, phi)?;
    Ok(PartialProduct { algebra, elements })
}

fn check_product(p: &FiniteBiunary, elements: &[(usize, usize)], phi: &FinitePremorphism) -> Result<()> {
    let bad = |d: String| Error::violation("partial action product", d);
    p.require_restriction().map_err(|e| bad(e.to_string()))?;
    let proj = p.projection_set();
    if proj.len() != phi.y().size() || proj.iter().any(|&e| elements[e].1 != phi.source().one()) {
        return Err(bad("projections are not {(x, 1)}".into()));
    }
    let sigma = p.sigma()?;
    let by_second = Congruence::from_labels(&elements.iter().map(|&(_, s)| s).collect::<Vec<_>>());
    if !sigma.refines(&by_second) || !by_second.refines(&sigma) {
        return Err(bad("sigma does not identify exactly the pairs with equal second coordinate".into()));
    }
    if !p.is_proper()? {
        return Err(bad("product is not proper".into()));
    }
    Ok(())
}

/// The premorphism `φ: S/σ → T_{P(S)}` of a proper restriction monoid:
/// `dom φ(t) = {e : a* ≥ e for some a ∈ t}` and `φ(t)(e) = (ae)⁺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnderlyingPremorphism {
    pub premorphism: FinitePremorphism,
    pub sigma: Congruence,
    /// `P(S)` as element indices of `S`, in semilattice order.
    pub projections: Vec<usize>,
}

///
/// Also defined for F-restriction monoids; fails with [`Error::Invalid`]
/// when `(ae)⁺` depends on the choice of `a`.
pub fn underlying_premorphism(s: &FiniteBiunary) -> Result<UnderlyingPremorphism> {
    let sigma = s.sigma()?;
    let (y, projections) = s.projections()?;
    let quotient = s.quotient(&sigma)?.monoid();
    let pos = |e: usize| projections.iter().position(|&p| p == e).expect("projection");
    let mut map = Vec::with_capacity(sigma.class_count());
    for class in sigma.classes() {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (i, &e) in projections.iter().enumerate() {
            let images: Vec<usize> = class
                .iter()
                .filter(|&&a| s.leq(e, s.star(a)))
                .map(|&a| pos(s.plus(s.mul(a, e))))
                .collect();
            if let Some(&first) = images.first() {
                if images.iter().any(|&v| v != first) {
                    return Err(Error::invalid("(ae)+ depends on the choice of a; S is neither proper nor F-restriction"));
                }
                pairs.push((i, first));
            }
        }
        let p = PartialBijection::from_pairs(&pairs)
            .map_err(|_| Error::invalid("(ae)+ is not injective in e; S is neither proper nor F-restriction"))?;
        map.push(p);
    }
    let premorphism = FinitePremorphism::new(quotient, y, map)?;
    Ok(UnderlyingPremorphism {
        premorphism,
        sigma,
        projections,
    })
}

/// A proper restriction monoid rebuilt as the partial action product of
/// its underlying premorphism, with the isomorphism `a ↦ (a⁺, [a]σ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgReconstruction {
    pub underlying: UnderlyingPremorphism,
    pub product: PartialProduct,
    pub iso: Vec<usize>,
}

pub fn cg_reconstruct(s: &FiniteBiunary) -> Result<CgReconstruction> {
    if !s.is_proper()? {
        return Err(Error::invalid("reconstruction needs a proper restriction monoid"));
    }
    let underlying = underlying_premorphism(s)?;
    let product = build_partial_product(&underlying.premorphism).map_err(|e| match e {
        Error::Precondition { axiom, witness } => Error::violation(
            "underlying premorphism satisfies the product axioms",
            format!("{axiom}: {witness}"),
        ),
        other => other,
    })?;
    let pos = |e: usize| underlying.projections.iter().position(|&p| p == e).expect("projection");
    let iso = s
        .elements()
        .map(|a| {
            product
                .index_of(pos(s.plus(a)), underlying.sigma.class_of(a))
                .ok_or_else(|| Error::violation("reconstruction", format!("no pair for element {a}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut seen = vec![false; product.algebra.size()];
    for &v in &iso {
        seen[v] = true;
    }
    if iso.len() != product.algebra.size() || seen.iter().any(|b| !b) {
        return Err(Error::violation("reconstruction", "a ↦ (a+, [a]) is not a bijection"));
    }
    if !s.is_homomorphism_to(&product.algebra, &iso) {
        return Err(Error::violation("reconstruction", "a ↦ (a+, [a]) is not a homomorphism"));
    }
    Ok(CgReconstruction {
        underlying,
        product,
        iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteMonoid, FiniteSemilattice};
    use crate::expansions::prefix_expand_group;

    #[test]
    fn group_acting_trivially_on_a_chain() {
        let g = FiniteMonoid::cyclic(2);
        let y = FiniteSemilattice::chain(3);
        let id = PartialBijection::identity_on(0..3);
        let phi = FinitePremorphism::new(g, y, vec![id.clone(), id]).unwrap();
        let p = build_partial_product(&phi).unwrap();
        assert_eq!(p.algebra.size(), 6);
        assert_eq!(p.algebra.projection_set().len(), 3);
    }

    #[test]
    fn prefix_expansions_are_rebuilt() {
        for n in 1..=4 {
            let e = prefix_expand_group(&FiniteMonoid::cyclic(n)).unwrap();
            let r = cg_reconstruct(&e.algebra).unwrap();
            assert_eq!(r.product.algebra.size(), e.algebra.size());
            assert_eq!(r.underlying.premorphism.source().size(), n);
        }
    }

    #[test]
    fn non_proper_is_rejected() {
        let s = crate::algebra::symmetric_inverse_monoid(2).unwrap().0;
        assert!(matches!(underlying_premorphism(&s), Err(Error::Invalid(_))));
    }
}
