use serde::{Deserialize, Serialize};

use crate::algebra::{extend_homomorphism, FiniteMonoid};
use crate::error::{Error, Result};
use crate::expansions::enumerate::{ClosedModel, Enumeration};
use crate::expansions::prefix::{PrefixExpansion, PrefixPair};

/// A lifted homomorphism between expansions, as a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lift {
    pub map: Vec<usize>,
}

fn closed<'a>(e: &'a Enumeration, which: &str) -> Result<&'a ClosedModel> {
    e.closed()
        .ok_or_else(|| Error::Unsupported(format!("{which} expansion did not close within the bound")))
}

/// `p: FR_R(M) → M`, read off from the σ-class of each generator.
pub fn projection_to_monoid(model: &ClosedModel, m: &FiniteMonoid) -> Result<Vec<usize>> {
    let sigma = model.algebra.sigma()?;
    let mut class_to_m = vec![None; sigma.class_count()];
    for (k, &g) in model.generators.iter().enumerate() {
        let c = sigma.class_of(g);
        match class_to_m[c] {
            Some(j) if j != k && m.size() == model.generators.len() => {
                return Err(Error::violation(
                    "expansion quotient is M",
                    format!("generators {j} and {k} share a σ-class"),
                ))
            }
            Some(_) => {}
            None => class_to_m[c] = Some(k),
        }
    }
    model
        .algebra
        .elements()
        .map(|x| {
            class_to_m[sigma.class_of(x)].ok_or_else(|| {
                Error::violation("expansion quotient is M", format!("σ-class of {x} holds no generator"))
            })
        })
        .collect()
}

/// Lifts `α: M₁ → M₂` to the expansions by `⌊m⌋ ↦ ⌊α(m)⌋` and checks the
/// square `p₂ ∘ α̃ = α ∘ p₁`.
pub fn lift_homomorphism(
    alpha: &[usize],
    m1: &FiniteMonoid,
    m2: &FiniteMonoid,
    e1: &Enumeration,
    e2: &Enumeration,
) -> Result<Lift> {
    if alpha.len() != m1.size() || alpha.iter().any(|&v| v >= m2.size()) {
        return Err(Error::input("alpha has the wrong shape"));
    }
    if !m1.is_homomorphism_to(m2, alpha) {
        return Err(Error::invalid("alpha is not a monoid homomorphism"));
    }
    let (x1, x2) = (closed(e1, "source")?, closed(e2, "target")?);
    let images: Vec<usize> = alpha.iter().map(|&a| x2.generators[a]).collect();
    let map = extend_homomorphism(&x1.algebra, &x1.generators, &x2.algebra, &images)
        .map_err(|e| Error::invalid(format!("alpha does not lift: {e}")))?;
    let p1 = projection_to_monoid(x1, m1)?;
    let p2 = projection_to_monoid(x2, m2)?;
    check_square(&map, &p1, &p2, alpha)?;
    Ok(Lift { map })
}

fn check_square(map: &[usize], p1: &[usize], p2: &[usize], alpha: &[usize]) -> Result<()> {
    for (x, &y) in map.iter().enumerate() {
        if p2[y] != alpha[p1[x]] {
            return Err(Error::violation("lift commutes with the projections", format!("square fails at {x}")));
        }
    }
    Ok(())
}

/// `(A, g) ↦ (α(A), α(g))` between prefix expansions of groups.
pub fn lift_prefix(
    alpha: &[usize],
    g1: &FiniteMonoid,
    g2: &FiniteMonoid,
    p1: &PrefixExpansion,
    p2: &PrefixExpansion,
) -> Result<Lift> {
    if alpha.len() != g1.size() || alpha.iter().any(|&v| v >= g2.size()) {
        return Err(Error::input("alpha has the wrong shape"));
    }
    if !g1.is_homomorphism_to(g2, alpha) {
        return Err(Error::invalid("alpha is not a group homomorphism"));
    }
    let map = p1
        .pairs
        .iter()
        .map(|p| {
            let set = p.members().iter().fold(0u64, |acc, &x| acc | 1 << alpha[x]);
            p2.index_of(&PrefixPair { set, g: alpha[p.g] })
                .ok_or_else(|| Error::violation("prefix lift", "image is not a pair"))
        })
        .collect::<Result<Vec<_>>>()?;
    if !p1.algebra.is_homomorphism_to(&p2.algebra, &map) {
        return Err(Error::violation("prefix lift is a homomorphism", "table check failed"));
    }
    let proj1: Vec<usize> = p1.pairs.iter().map(|p| p.g).collect();
    let proj2: Vec<usize> = p2.pairs.iter().map(|p| p.g).collect();
    check_square(&map, &proj1, &proj2, alpha)?;
    Ok(Lift { map })
}
