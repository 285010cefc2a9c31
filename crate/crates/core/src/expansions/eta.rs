use serde::{Deserialize, Serialize};

use crate::algebra::{extend_homomorphism, FiniteBiunary, FiniteMonoid, PartialBijection};
use crate::error::{Error, Result};
use crate::expansions::enumerate::ClosedModel;
use crate::expansions::product::{build_partial_product, PartialProduct};
use crate::premorph::FinitePremorphism;

/// `η̃: FR_R(M) → M(M, E(FI_R(M)))` together with the projection part of
/// `FR_R(M) → FI_R(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaOutcome {
    pub product: PartialProduct,
    /// Image of each element of `FR_R(M)` in the product.
    pub eta: Vec<usize>,
    /// Image of each element of `FR_R(M)` in `FI_R(M)`.
    pub psi: Vec<usize>,
    /// Whether `ψ` is injective on the whole of `FR_R(M)`.
    pub psi_injective: bool,
}

/// The action of `M` on `E(FI)`: `φ(m)` sends `e ≤ [m]⁻¹[m]` to
/// `[m] e [m]⁻¹`.
pub fn conjugation_premorphism(m: &FiniteMonoid, fi: &ClosedModel) -> Result<(FinitePremorphism, Vec<usize>)> {
    let s = &fi.algebra;
    let inv = s
        .inv()
        .ok_or_else(|| Error::invalid("FI model carries no inversion table"))?;
    if fi.generators.len() != m.size() {
        return Err(Error::input("FI model does not have one generator per element of M"));
    }
    let (y, proj) = s.projections()?;
    let pos = |e: usize| proj.iter().position(|&p| p == e).expect("idempotent");
    let map = m
        .elements()
        .map(|k| {
            let g = fi.generators[k];
            let pairs: Vec<(usize, usize)> = proj
                .iter()
                .filter(|&&e| s.leq(e, s.mul(inv[g], g)))
                .map(|&e| (pos(e), pos(s.mul(s.mul(g, e), inv[g]))))
                .collect();
            PartialBijection::from_pairs(&pairs)
                .map_err(|e| Error::violation("conjugation action", e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((FinitePremorphism::new(m.clone(), y, map)?, proj))
}

/// Builds `η̃` from `⌊m⌋ ↦ ([m]⁺, m)` and checks that it is an isomorphism
/// and that `FR_R(M) → FI_R(M)` is bijective on projections.
pub fn eta_tilde(m: &FiniteMonoid, fr: &ClosedModel, fi: &ClosedModel) -> Result<EtaOutcome> {
    if fr.generators.len() != m.size() {
        return Err(Error::input("FR model does not have one generator per element of M"));
    }
    let (phi, proj) = conjugation_premorphism(m, fi)?;
    let product = build_partial_product(&phi).map_err(|e| match e {
        Error::Precondition { axiom, witness } => {
            Error::violation("conjugation action is a premorphism", format!("{axiom}: {witness}"))
        }
        other => other,
    })?;
    let s = &fi.algebra;
    let pos = |e: usize| proj.iter().position(|&p| p == e).expect("idempotent");
    let images = m
        .elements()
        .map(|k| {
            product
                .index_of(pos(s.plus(fi.generators[k])), k)
                .ok_or_else(|| Error::violation("eta", format!("([{k}]+, {k}) is not in the product")))
        })
        .collect::<Result<Vec<_>>>()?;
    let eta = extend_homomorphism(&fr.algebra, &fr.generators, &product.algebra, &images)
        .map_err(|e| Error::violation("eta extends to a homomorphism", e.to_string()))?;
    if !is_bijection(&eta, product.algebra.size()) {
        return Err(Error::violation(
            "eta is an isomorphism",
            format!("{} elements map onto {} distinct of {}", eta.len(), distinct(&eta), product.algebra.size()),
        ));
    }
    let psi = extend_homomorphism(&fr.algebra, &fr.generators, s, &fi.generators)
        .map_err(|e| Error::violation("FR to FI extends", e.to_string()))?;
    check_projection_bijection(&fr.algebra, s, &psi)?;
    let psi_injective = distinct(&psi) == psi.len();
    Ok(EtaOutcome {
        product,
        eta,
        psi,
        psi_injective,
    })
}

fn distinct(map: &[usize]) -> usize {
    let mut v = map.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn is_bijection(map: &[usize], target: usize) -> bool {
    map.len() == target && distinct(map) == target
}

fn check_projection_bijection(fr: &FiniteBiunary, fi: &FiniteBiunary, psi: &[usize]) -> Result<()> {
    let p = fr.projection_set();
    let e = fi.projection_set();
    let mut img: Vec<usize> = p.iter().map(|&x| psi[x]).collect();
    img.sort_unstable();
    img.dedup();
    if img.len() != p.len() || img != e {
        return Err(Error::violation(
            "projections of FR correspond to idempotents of FI",
            format!("{} projections map onto {} of {} idempotents", p.len(), img.len(), e.len()),
        ));
    }
    Ok(())
}
