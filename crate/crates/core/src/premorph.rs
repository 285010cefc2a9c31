//! Premorphisms `φ: M → S` (`φ(1) = 1`, `φ(m)φ(n) ≤ φ(mn)`), their
//! classification, the F-restriction section `τ`, and the strongness
//! criterion for premorphisms between inverse monoids.

use serde::{Deserialize, Serialize};

use crate::algebra::{Congruence, FiniteBiunary, FiniteMonoid, FiniteSemilattice, PartialBijection, RestrictionOps, SymmetricInverse, Term};
use crate::error::{Error, Result};
use crate::expansions::enumerate::InverseAware;

/// A map from a finite monoid into the partial bijections of a finite
/// semilattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPremorphism", into = "RawPremorphism")]
pub struct FinitePremorphism {
    source: FiniteMonoid,
    y: FiniteSemilattice,
    map: Vec<PartialBijection>,
}

#[derive(Serialize, Deserialize)]
struct RawPremorphism {
    source: FiniteMonoid,
    #[serde(rename = "Y")]
    y: FiniteSemilattice,
    map: Vec<PartialBijection>,
}

impl TryFrom<RawPremorphism> for FinitePremorphism {
    type Error = Error;

    fn try_from(raw: RawPremorphism) -> Result<Self> {
        FinitePremorphism::new(raw.source, raw.y, raw.map)
    }
}

impl From<FinitePremorphism> for RawPremorphism {
    fn from(p: FinitePremorphism) -> Self {
        RawPremorphism {
            source: p.source,
            y: p.y,
            map: p.map,
        }
    }
}

impl FinitePremorphism {
    /// Checks shapes only; see [`classify`] and [`FinitePremorphism::validate`]
    /// for the axioms.
    pub fn new(source: FiniteMonoid, y: FiniteSemilattice, map: Vec<PartialBijection>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::input("map must have one entry per source element"));
        }
        for (t, p) in map.iter().enumerate() {
            if p.dom().iter().chain(p.val()).any(|&v| v >= y.size()) {
                return Err(Error::input(format!("map[{t}] leaves the semilattice")));
            }
        }
        Ok(FinitePremorphism { source, y, map })
    }

    pub fn source(&self) -> &FiniteMonoid {
        &self.source
    }

    pub fn y(&self) -> &FiniteSemilattice {
        &self.y
    }

    pub fn map(&self) -> &[PartialBijection] {
        &self.map
    }

    pub fn at(&self, t: usize) -> &PartialBijection {
        &self.map[t]
    }

    fn ops(&self) -> SymmetricInverse {
        SymmetricInverse { n: self.y.size() }
    }

    /// (PM1), (PM2), and conditions (A), (B), (C); the first failure is
    /// returned as a precondition error naming the axiom.
    pub fn validate(&self) -> Result<()> {
        let ops = self.ops();
        if self.map[self.source.one()] != ops.one() {
            return Err(Error::precondition("PM1", "phi(1) is not the identity of Y"));
        }
        for m in self.source.elements() {
            for n in self.source.elements() {
                let lhs = ops.mul(&self.map[m], &self.map[n]);
                if !ops.leq(&lhs, &self.map[self.source.mul(m, n)]) {
                    return Err(Error::precondition("PM2", format!("phi({m})phi({n}) is not below phi({m}{n})", m = m, n = n)));
                }
            }
        }
        if let Some((t, what)) = abc_failure(&self.y, &self.map) {
            return Err(Error::precondition(what, format!("fails for phi({t})")));
        }
        Ok(())
    }
}

fn abc_failure(y: &FiniteSemilattice, map: &[PartialBijection]) -> Option<(usize, &'static str)> {
    for (t, p) in map.iter().enumerate() {
        if !y.is_order_ideal(p.dom()) || !y.is_order_ideal(&p.ran()) {
            return Some((t, "A"));
        }
        let iso = p.pairs().all(|(a, fa)| {
            p.pairs().all(|(b, fb)| y.leq(a, b) == y.leq(fa, fb))
        });
        if !iso {
            return Some((t, "B"));
        }
        if p.is_empty() {
            return Some((t, "C"));
        }
    }
    None
}

/// Flags decided by exhaustive scans over pairs of source elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PremorphismClass {
    pub is_premorphism: bool,
    pub is_left_strong: bool,
    pub is_right_strong: bool,
    pub is_strong: bool,
    pub is_homomorphism: bool,
    /// Only meaningful for maps into partial bijections of a semilattice.
    pub satisfies_abc: bool,
    /// (PM2) as an inequality and in its two equational forms agree.
    pub pm2_forms_agree: bool,
}

/// Classifies any map `M → S`. Never fails: a broken map just gets false
/// flags.
pub fn classify_map<O: RestrictionOps>(m: &FiniteMonoid, ops: &O, phi: &[O::Elem]) -> PremorphismClass {
    let pm1 = phi[m.one()] == ops.one();
    let (mut pm2, mut pm2a, mut pm2b) = (true, true, true);
    let (mut ls, mut rs, mut hom) = (true, true, true);
    for a in m.elements() {
        for b in m.elements() {
            let prod = ops.mul(&phi[a], &phi[b]);
            let ab = &phi[m.mul(a, b)];
            pm2 &= ops.leq(&prod, ab);
            pm2a &= prod == ops.mul(ab, &ops.star(&prod));
            pm2b &= prod == ops.mul(&ops.plus(&prod), ab);
            ls &= prod == ops.mul(&ops.plus(&phi[a]), ab);
            rs &= prod == ops.mul(ab, &ops.star(&phi[b]));
            hom &= prod == *ab;
        }
    }
    PremorphismClass {
        is_premorphism: pm1 && pm2,
        is_left_strong: pm1 && ls,
        is_right_strong: pm1 && rs,
        is_strong: pm1 && ls && rs,
        is_homomorphism: pm1 && hom,
        satisfies_abc: false,
        pm2_forms_agree: pm2 == pm2a && pm2 == pm2b,
    }
}

pub fn classify(phi: &FinitePremorphism) -> PremorphismClass {
    let mut c = classify_map(&phi.source, &phi.ops(), &phi.map);
    c.satisfies_abc = abc_failure(&phi.y, &phi.map).is_none();
    c
}

/// The F-restriction data of `S`: `σ`, the monoid `S/σ`, and `τ`, the
/// maximum of each class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FRestriction {
    pub sigma: Congruence,
    pub quotient: FiniteMonoid,
    pub tau: Vec<usize>,
}

pub fn tau_of(s: &FiniteBiunary) -> Result<FRestriction> {
    let tau = s
        .f_restriction_maxima()?
        .ok_or_else(|| Error::invalid("not an F-restriction monoid"))?;
    let sigma = s.sigma()?;
    let quotient = s.quotient(&sigma)?.monoid();
    for a in quotient.elements() {
        for b in quotient.elements() {
            let lhs = s.mul(tau[a], tau[b]);
            if !s.leq(lhs, tau[quotient.mul(a, b)]) {
                return Err(Error::violation(
                    "tau is a premorphism",
                    format!("tau({a})tau({b}) is not below tau({a}{b})", a = a, b = b),
                ));
            }
        }
    }
    if tau[sigma.class_of(s.one())] != s.one() {
        return Err(Error::violation("tau is a premorphism", "tau(1) != 1"));
    }
    Ok(FRestriction { sigma, quotient, tau })
}

/// The Munn representation `α(s)`: domain `(s*)↓`, `e ↦ (se)⁺`, on the
/// projection indices given by `proj` (sorted element indices of `P(S)`).
pub fn munn_representation(s: &FiniteBiunary, proj: &[usize], x: usize) -> PartialBijection {
    let idx = |e: usize| proj.binary_search(&e).expect("projection");
    let pairs: Vec<(usize, usize)> = proj
        .iter()
        .filter(|&&e| s.leq(e, s.star(x)))
        .map(|&e| (idx(e), idx(s.plus(s.mul(x, e)))))
        .collect();
    PartialBijection::from_pairs(&pairs).expect("the Munn representation is injective")
}

/// Evaluates ground relations `⌊m⌋e = ⌊m⌋f` under `φ = α∘τ` in
/// `T_{P(S)}` and under `τ` in `S`, with `α∘τ` tabulated once.
pub struct Agreement<'a> {
    s: &'a FiniteBiunary,
    data: FRestriction,
    ops: SymmetricInverse,
    phi: Vec<PartialBijection>,
}

impl<'a> Agreement<'a> {
    pub fn new(s: &'a FiniteBiunary) -> Result<Self> {
        let data = tau_of(s)?;
        let proj = s.projection_set();
        let phi = data.tau.iter().map(|&t| munn_representation(s, &proj, t)).collect();
        Ok(Agreement {
            s,
            data,
            ops: SymmetricInverse { n: proj.len() },
            phi,
        })
    }

    pub fn data(&self) -> &FRestriction {
        &self.data
    }

    /// `α(τ(t))` for each class `t`.
    pub fn phi(&self) -> &[PartialBijection] {
        &self.phi
    }

    /// `(φ obeys, τ obeys)`. Terms use `[k]` for the σ-class `k`.
    pub fn check(&self, m: usize, e: &Term, f: &Term) -> Result<(bool, bool)> {
        if !e.is_projection_term() || !f.is_projection_term() {
            return Err(Error::input("relation must read [m]e = [m]f with projection terms e, f"));
        }
        let q = self.data.quotient.size();
        let mut gens = vec![m];
        e.generators(&mut gens);
        f.generators(&mut gens);
        if gens.iter().any(|&g| g >= q) {
            return Err(Error::input("generator outside S/σ"));
        }
        let (lhs, rhs) = (Term::mul(Term::gen(m), e.clone()), Term::mul(Term::gen(m), f.clone()));
        let phi = |k: usize| Ok(self.phi[k].clone());
        let phi_obeys = lhs.eval(&self.ops, &phi)? == rhs.eval(&self.ops, &phi)?;
        let tau = |k: usize| Ok(self.data.tau[k]);
        let tau_obeys = lhs.eval(self.s, &tau)? == rhs.eval(self.s, &tau)?;
        Ok((phi_obeys, tau_obeys))
    }
}

/// One-shot form of [`Agreement::check`].
pub fn check_agreement(s: &FiniteBiunary, m: usize, e: &Term, f: &Term) -> Result<(bool, bool)> {
    Agreement::new(s)?.check(m, e, f)
}

/// Checks, on an F-restriction monoid, that the underlying premorphism
/// equals `α∘τ`, has domains `(τ(t)*)↓`, and lands in the Munn monoid.
pub fn check_alpha_tau(s: &FiniteBiunary) -> Result<()> {
    let agreement = Agreement::new(s)?;
    let under = crate::expansions::underlying_premorphism(s)?;
    let proj = s.projection_set();
    if under.projections != proj {
        return Err(Error::violation("phi = alpha tau", "projection orders differ"));
    }
    let bad = |t: usize, what: &str| Error::violation("phi = alpha tau", format!("{what} at class {t}"));
    let y = under.premorphism.y();
    for (t, p) in under.premorphism.map().iter().enumerate() {
        if *p != agreement.phi[t] {
            return Err(bad(t, "phi(t) differs from alpha(tau(t))"));
        }
        let top = proj.binary_search(&s.star(agreement.data.tau[t])).expect("projection");
        if p.dom() != y.down(top).as_slice() {
            return Err(bad(t, "dom phi(t) is not the ideal below tau(t)*"));
        }
        let mut ran = p.ran();
        ran.sort_unstable();
        let isomorphic = p.pairs().all(|(a, fa)| p.pairs().all(|(b, fb)| y.leq(a, b) == y.leq(fa, fb)));
        let principal = (0..y.size()).any(|f| y.down(f) == ran);
        if !isomorphic || !principal {
            return Err(bad(t, "phi(t) is not in the Munn monoid"));
        }
    }
    Ok(())
}

/// Projection terms over generators `0..q`: `1`, `[k]*`, `[k]+`, and the
/// stars and pluses of products of two generators, closed once under
/// pairwise products.
pub fn projection_terms(q: usize) -> Vec<Term> {
    let g = Term::gen;
    let mut base = vec![Term::One];
    for k in 0..q {
        base.push(g(k).star());
        base.push(g(k).plus());
    }
    for a in 0..q {
        for b in 0..q {
            base.push(Term::mul(g(a), g(b)).star());
            base.push(Term::mul(g(a), g(b)).plus());
        }
    }
    let singles = base.len();
    for i in 1..singles {
        for j in (i + 1)..(2 * q + 1).min(singles) {
            base.push(Term::mul(base[i].clone(), base[j].clone()));
        }
    }
    base
}

/// Outcome of the strongness criterion on one map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop79Outcome {
    pub strong: bool,
    pub conditions: bool,
    pub witness: Option<String>,
}

impl Prop79Outcome {
    pub fn agree(&self) -> bool {
        self.strong == self.conditions
    }
}

/// For a premorphism `φ` between finite inverse monoids, decides
/// strongness directly and through `φ(s⁻¹) = φ(s)⁻¹` plus order
/// preservation.
pub fn prop79_check(src: &FiniteBiunary, dst: &FiniteBiunary, phi: &[usize]) -> Result<Prop79Outcome> {
    let (Some(si), Some(di)) = (src.inv(), dst.inv()) else {
        return Err(Error::invalid("both algebras must carry an inversion table"));
    };
    if phi.len() != src.size() || phi.iter().any(|&v| v >= dst.size()) {
        return Err(Error::input("map has the wrong shape"));
    }
    let m = src.monoid();
    let ops = InverseAware(dst);
    let class = classify_map(&m, &ops, phi);
    if !class.is_premorphism {
        return Err(Error::invalid("map is not a premorphism"));
    }
    let mut witness = None;
    if !class.is_strong {
        'outer: for a in m.elements() {
            for b in m.elements() {
                let prod = dst.mul(phi[a], phi[b]);
                let ab = phi[m.mul(a, b)];
                if prod != dst.mul(dst.plus(phi[a]), ab) || prod != dst.mul(ab, dst.star(phi[b])) {
                    witness = Some(format!("strongness fails at ({a}, {b})"));
                    break 'outer;
                }
            }
        }
    }
    let mut conditions = true;
    for x in m.elements() {
        if phi[si[x]] != di[phi[x]] {
            conditions = false;
            witness.get_or_insert_with(|| format!("phi(s^-1) != phi(s)^-1 at s = {x}"));
            break;
        }
    }
    if conditions {
        'ord: for a in m.elements() {
            for b in m.elements() {
                if src.leq(a, b) && !dst.leq(phi[a], phi[b]) {
                    conditions = false;
                    witness.get_or_insert_with(|| format!("order not preserved at ({a}, {b})"));
                    break 'ord;
                }
            }
        }
    }
    Ok(Prop79Outcome {
        strong: class.is_strong,
        conditions,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteMonoid;

    #[test]
    fn identity_on_trivial_monoid() {
        let m = FiniteMonoid::trivial();
        let y = FiniteSemilattice::chain(1);
        let phi = FinitePremorphism::new(m, y, vec![PartialBijection::identity_on([0])]).unwrap();
        let c = classify(&phi);
        assert!(c.is_premorphism && c.is_strong && c.is_homomorphism && c.satisfies_abc && c.pm2_forms_agree);
        assert!(phi.validate().is_ok());
    }

    #[test]
    fn identity_on_a_group_is_strong() {
        let g = crate::algebra::inverse_as_restriction(
            &crate::algebra::FiniteInverseMonoid::from_monoid(FiniteMonoid::symmetric_group(3)).unwrap(),
        )
        .unwrap();
        let id: Vec<usize> = g.elements().collect();
        let out = prop79_check(&g, &g, &id).unwrap();
        assert!(out.strong && out.conditions && out.witness.is_none());
    }

    #[test]
    fn validation_names_the_axiom() {
        let m = FiniteMonoid::cyclic(2);
        let y = FiniteSemilattice::chain(2);
        let one = PartialBijection::identity_on([0, 1]);
        let phi = FinitePremorphism::new(m.clone(), y.clone(), vec![one.clone(), PartialBijection::empty()]).unwrap();
        assert!(matches!(phi.validate(), Err(Error::Precondition { axiom, .. }) if axiom == "C"));
        let top_only = PartialBijection::identity_on([0]);
        let phi = FinitePremorphism::new(m.clone(), y.clone(), vec![one.clone(), top_only]).unwrap();
        assert!(matches!(phi.validate(), Err(Error::Precondition { axiom, .. }) if axiom == "A"));
        let phi = FinitePremorphism::new(m, y, vec![PartialBijection::identity_on([1]), one]).unwrap();
        assert!(matches!(phi.validate(), Err(Error::Precondition { axiom, .. }) if axiom == "PM1"));
    }

    #[test]
    fn json_format() {
        let m = FiniteMonoid::trivial();
        let y = FiniteSemilattice::chain(1);
        let phi = FinitePremorphism::new(m, y, vec![PartialBijection::identity_on([0])]).unwrap();
        let j = serde_json::to_string(&phi).unwrap();
        assert!(j.contains(r#""map":[{"dom":[0],"val":[0]}]"#), "{j}");
        assert!(j.contains(r#""Y":"#));
        assert_eq!(serde_json::from_str::<FinitePremorphism>(&j).unwrap(), phi);
    }

    fn example_model() -> crate::expansions::ClosedModel {
        use crate::expansions::{bounded_enumerate, PresentedExpansion, RelationTag};
        let m = FiniteMonoid::idempotent_pair();
        bounded_enumerate(&PresentedExpansion::new(m, RelationTag::Hom))
            .unwrap()
            .into_closed()
            .unwrap()
    }

    #[test]
    fn tau_of_reduced_is_identity() {
        let s = FiniteBiunary::reduced(&FiniteMonoid::symmetric_group(3));
        let data = tau_of(&s).unwrap();
        for t in 0..6 {
            assert_eq!(s.monoid().mul(data.tau[t], 0), data.tau[t]);
            assert_eq!(data.sigma.class_of(data.tau[t]), t);
        }
        assert_eq!(data.quotient.size(), 6);
    }

    #[test]
    fn tau_on_the_idempotent_pair_model() {
        let model = example_model();
        let s = &model.algebra;
        let data = tau_of(s).unwrap();
        let a = model.generators[1];
        assert_eq!(data.tau[data.sigma.class_of(s.one())], s.one());
        assert_eq!(data.tau[data.sigma.class_of(a)], a);
    }

    #[test]
    fn tau_on_prefix_z2() {
        let g = FiniteMonoid::cyclic(2);
        let p = crate::expansions::prefix_expand_group(&g).unwrap();
        let data = tau_of(&p.algebra).unwrap();
        for x in g.elements() {
            let e = p.embed(&g, x);
            assert_eq!(data.tau[data.sigma.class_of(e)], e);
        }
    }

    #[test]
    fn agreement_examples() {
        let s = FiniteBiunary::reduced(&FiniteMonoid::trivial());
        assert_eq!(check_agreement(&s, 0, &Term::One, &Term::One).unwrap(), (true, true));

        let model = example_model();
        let ag = Agreement::new(&model.algebra).unwrap();
        let a = ag.data().sigma.class_of(model.generators[1]);
        let (x, y) = ag.check(a, &Term::gen(a).star(), &Term::One).unwrap();
        assert_eq!(x, y);

        let g = FiniteMonoid::cyclic(3);
        let p = crate::expansions::prefix_expand_group(&g).unwrap();
        let ag = Agreement::new(&p.algebra).unwrap();
        let cls = |x: usize| ag.data().sigma.class_of(p.embed(&g, x));
        let (m, n) = (cls(1), cls(2));
        let mn = cls(g.mul(1, 2));
        let e = Term::mul(Term::gen(m), Term::gen(n)).star();
        assert_eq!(ag.check(mn, &e, &Term::gen(n).star()).unwrap(), (true, true));
        assert!(matches!(ag.check(0, &Term::gen(1), &Term::One), Err(Error::Input(_))));
    }

    #[test]
    fn alpha_tau_on_f_restriction_instances() {
        check_alpha_tau(&example_model().algebra).unwrap();
        for n in 1..=3 {
            let p = crate::expansions::prefix_expand_group(&FiniteMonoid::cyclic(n)).unwrap();
            check_alpha_tau(&p.algebra).unwrap();
        }
    }

    #[test]
    fn underlying_premorphisms_classified() {
        let p = crate::expansions::prefix_expand_group(&FiniteMonoid::cyclic(2)).unwrap();
        let u = crate::expansions::underlying_premorphism(&p.algebra).unwrap();
        let c = classify(&u.premorphism);
        assert!(c.is_strong && c.is_premorphism && c.satisfies_abc && c.pm2_forms_agree);

        let u = crate::expansions::underlying_premorphism(&example_model().algebra).unwrap();
        let c = classify(&u.premorphism);
        assert!(c.is_premorphism && c.pm2_forms_agree);
    }

    #[test]
    fn inclusion_into_prefix_expansion_is_strong() {
        let g = FiniteMonoid::cyclic(2);
        let p = crate::expansions::prefix_expand_group(&g).unwrap();
        let src = crate::algebra::inverse_as_restriction(&crate::algebra::FiniteInverseMonoid::from_monoid(g.clone()).unwrap()).unwrap();
        let phi: Vec<usize> = g.elements().map(|x| p.embed(&g, x)).collect();
        let out = prop79_check(&src, &p.algebra, &phi).unwrap();
        assert!(out.strong && out.conditions);
    }

    #[test]
    fn non_strong_map_gets_a_witness() {
        let g = FiniteMonoid::cyclic(3);
        let p = crate::expansions::prefix_expand_group(&g).unwrap();
        let src = crate::algebra::inverse_as_restriction(&crate::algebra::FiniteInverseMonoid::from_monoid(g.clone()).unwrap()).unwrap();
        let at = |set: u64, g: usize| p.index_of(&crate::expansions::PrefixPair { set, g }).unwrap();
        let phi = vec![p.algebra.one(), at(0b011, 1), at(0b111, 2)];
        let out = prop79_check(&src, &p.algebra, &phi).unwrap();
        assert!(!out.strong && !out.conditions && out.witness.is_some());
    }
}
