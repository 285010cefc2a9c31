use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{extend_homomorphism, find_isomorphism, FiniteBiunary, FiniteMonoid, Side};
use crate::error::Error;
use crate::expansions::{
    bounded_enumerate, cg_reconstruct, eta_tilde, prefix_expand_group, ClosedModel, Enumeration,
    PresentedExpansion, RelationTag,
};
use crate::freerestr::{psi, random_pair, LemmaSuite};
use crate::premorph::{check_alpha_tau, classify_map, projection_terms, prop79_check, Agreement};
use crate::expansions::enumerate::InverseAware;

use super::{timed, VerificationReport};

fn report_error(theorem: &str, instance: &str, e: Error) -> VerificationReport {
    match e {
        Error::TheoremViolation { theorem: t, detail } => {
            VerificationReport::fail(theorem, instance, format!("{t}: {detail}"))
        }
        Error::SizeLimit { .. } | Error::Unsupported(_) => {
            VerificationReport::inconclusive(theorem, instance, e.to_string())
        }
        other => VerificationReport::fail(theorem, instance, other.to_string()),
    }
}

/// Rebuilds a proper restriction monoid as the partial action product of
/// its underlying premorphism.
pub fn verify_cg(name: &str, s: &FiniteBiunary) -> VerificationReport {
    const T: &str = "reconstruction";
    timed(|| {
        match s.is_proper() {
            Ok(true) => {}
            Ok(false) => return VerificationReport::skipped(T, name, "not proper"),
            Err(e) => return VerificationReport::skipped(T, name, e.to_string()),
        }
        match cg_reconstruct(s) {
            Ok(r) => VerificationReport::pass(T, name).with_detail(format!(
                "|S| = {}, |S/σ| = {}, |P(S)| = {}",
                s.size(),
                r.underlying.premorphism.source().size(),
                r.underlying.projections.len()
            )),
            Err(e) => report_error(T, name, e),
        }
    })
}

fn enumerate_pair(m: &FiniteMonoid, tag: RelationTag, bound: usize) -> Result<(ClosedModel, ClosedModel), String> {
    let run = |p: PresentedExpansion, which: &str| -> Result<ClosedModel, String> {
        match bounded_enumerate(&p).map_err(|e| e.to_string())? {
            Enumeration::Closed(c) => Ok(c),
            Enumeration::Exceeded { partial, reason } => {
                Err(format!("{which} exceeded at bound {bound} ({partial} classes, {reason})"))
            }
        }
    };
    let fr = run(PresentedExpansion::new(m.clone(), tag).with_bound(bound), "FR")?;
    let fi = run(PresentedExpansion::new(m.clone(), tag).with_bound(bound).inverse(), "FI")?;
    Ok((fr, fi))
}

/// `η̃_R` is an isomorphism and projections of `FR_R(M)` correspond to
/// idempotents of `FI_R(M)`.
pub fn verify_main(name: &str, m: &FiniteMonoid, tag: RelationTag, bound: usize) -> VerificationReport {
    const T: &str = "main-isomorphism";
    let instance = format!("{name}, R = {tag}");
    timed(|| {
        let (fr, fi) = match enumerate_pair(m, tag, bound) {
            Ok(p) => p,
            Err(reason) => return VerificationReport::inconclusive(T, &instance, reason),
        };
        match eta_tilde(m, &fr, &fi) {
            Ok(out) => VerificationReport::pass(T, &instance).with_detail(format!(
                "|FR| = {}, |FI| = {}, |P(FR)| = {}, |M(M, E(FI))| = {}",
                fr.algebra.size(),
                fi.algebra.size(),
                fr.algebra.projection_set().len(),
                out.product.algebra.size()
            )),
            Err(e) => report_error(T, &instance, e),
        }
    })
}

/// Left/right cancellativity of `M` against left/right ampleness of the
/// product model `M(M, E(FI_R(M)))`.
pub fn verify_ample(name: &str, m: &FiniteMonoid, tag: RelationTag, bound: usize) -> VerificationReport {
    const T: &str = "ample";
    let instance = format!("{name}, R = {tag}");
    timed(|| {
        let (fr, fi) = match enumerate_pair(m, tag, bound) {
            Ok(p) => p,
            Err(reason) => return VerificationReport::inconclusive(T, &instance, reason),
        };
        let model = match eta_tilde(m, &fr, &fi) {
            Ok(out) => out.product.algebra,
            Err(e) => return report_error(T, &instance, e),
        };
        let canc = [m.is_left_cancellative(), m.is_right_cancellative(), m.is_cancellative()];
        let ample = [Side::Left, Side::Right, Side::Both].map(|side| model.is_ample(side));
        let ample = match ample {
            [Ok(l), Ok(r), Ok(b)] => [l, r, b],
            _ => return VerificationReport::fail(T, &instance, "product model is not a restriction monoid"),
        };
        let detail = format!("cancellative (left, right, both) = {canc:?}, ample = {ample:?}");
        if canc == ample {
            VerificationReport::pass(T, &instance).with_detail(detail)
        } else {
            VerificationReport::fail(T, &instance, detail)
        }
    })
}

/// `ψ_R: FR_R(M) → FI_R(M)` is injective exactly when `M` embeds in a
/// group, which for finite `M` means `M` is a group.
pub fn verify_embedding(name: &str, m: &FiniteMonoid, tag: RelationTag, bound: usize) -> VerificationReport {
    const T: &str = "embedding";
    let instance = format!("{name}, R = {tag}");
    timed(|| {
        let (fr, fi) = match enumerate_pair(m, tag, bound) {
            Ok(p) => p,
            Err(reason) => return VerificationReport::inconclusive(T, &instance, reason),
        };
        let psi = match extend_homomorphism(&fr.algebra, &fr.generators, &fi.algebra, &fi.generators) {
            Ok(p) => p,
            Err(e) => return VerificationReport::fail(T, &instance, format!("ψ does not extend: {e}")),
        };
        let collision = collision(&fr, &psi);
        let group = m.is_group();
        match (group, collision) {
            (true, None) => VerificationReport::pass(T, &instance).with_detail("ψ injective; M is a group"),
            (false, Some((x, y))) => VerificationReport::pass(T, &instance).with_detail(format!(
                "ψ identifies {} ≠ {}; M is not a group",
                fr.algebra.label(x),
                fr.algebra.label(y)
            )),
            (true, Some((x, y))) => VerificationReport::fail(T, &instance, format!("group but ψ({x}) = ψ({y})")),
            (false, None) => VerificationReport::fail(T, &instance, "ψ injective although M is not a group"),
        }
    })
}

/// Two distinct elements with the same image, preferring a pair that
/// involves a generator `⌊m⌋`.
fn collision(fr: &ClosedModel, psi: &[usize]) -> Option<(usize, usize)> {
    let mut by_image: HashMap<usize, Vec<usize>> = HashMap::new();
    for (x, &v) in psi.iter().enumerate() {
        by_image.entry(v).or_default().push(x);
    }
    let mut pairs: Vec<(usize, usize)> = by_image
        .values()
        .filter(|xs| xs.len() > 1)
        .flat_map(|xs| {
            xs.iter()
                .flat_map(move |&x| xs.iter().filter(move |&&y| y != x).map(move |&y| (x, y)))
        })
        .collect();
    pairs.sort_unstable();
    pairs
        .iter()
        .copied()
        .find(|(x, _)| fr.generators.contains(x))
        .or_else(|| pairs.first().copied())
}

/// `ψ` is injective on a seeded sample of `FR(A*)` for the free monoid on
/// `letters` letters.
pub fn verify_embedding_free(letters: usize, samples: usize, seed: u64) -> VerificationReport {
    const T: &str = "embedding";
    let instance = format!("free monoid on {letters} letters, {samples} samples");
    timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = HashMap::new();
        for _ in 0..samples {
            let x = random_pair(&mut rng, letters, 6);
            let image = psi(&x);
            if let Some(prev) = seen.insert(image.clone(), x.clone()) {
                if prev != x {
                    return VerificationReport::fail(T, &instance, format!("ψ({prev:?}) = ψ({x:?})"));
                }
            }
        }
        VerificationReport::pass(T, &instance).with_detail(format!("{} distinct pairs, distinct images", seen.len()))
    })
}

/// `FI_s(G)` presented and enumerated against the prefix expansion.
pub fn verify_prefix_presentation(name: &str, g: &FiniteMonoid, bound: usize) -> VerificationReport {
    const T: &str = "prefix-presentation";
    timed(|| {
        let p = match prefix_expand_group(g) {
            Ok(p) => p,
            Err(e) => return VerificationReport::skipped(T, name, e.to_string()),
        };
        let fi = match bounded_enumerate(&PresentedExpansion::new(g.clone(), RelationTag::S).with_bound(bound).inverse()) {
            Ok(Enumeration::Closed(c)) => c,
            Ok(Enumeration::Exceeded { partial, reason }) => {
                return VerificationReport::inconclusive(T, name, format!("{partial} classes, {reason}"))
            }
            Err(e) => return report_error(T, name, e),
        };
        match find_isomorphism(&fi.algebra, &p.algebra) {
            Ok(Some(_)) => VerificationReport::pass(T, name).with_detail(format!("|FI_s| = |prefix| = {}", p.algebra.size())),
            Ok(None) => VerificationReport::fail(
                T,
                name,
                format!("|FI_s| = {}, |prefix| = {}, not isomorphic", fi.algebra.size(), p.algebra.size()),
            ),
            Err(e) => report_error(T, name, e),
        }
    })
}

/// The five identities of the projection map `u ↦ D_u` on seeded random
/// words.
pub fn verify_d_lemmas(letters: usize, max_len: usize, samples: usize, seed: u64) -> VerificationReport {
    const T: &str = "d-lemmas";
    let instance = format!("{letters} letters, length ≤ {max_len}, {samples} samples, seed {seed}");
    timed(|| {
        let suite = LemmaSuite {
            letters,
            max_len,
            samples,
            seed,
        };
        let outcomes = suite.run();
        let cases: usize = outcomes.iter().map(|o| o.cases).sum();
        match outcomes.iter().find(|o| o.counterexamples > 0) {
            None => VerificationReport::pass(T, &instance).with_detail(format!("{cases} cases, no counterexample")),
            Some(o) => VerificationReport::fail(
                T,
                &instance,
                format!("{}: {}", o.lemma, o.witness.clone().unwrap_or_default()),
            ),
        }
    })
}

/// The same suite with star and plus swapped in the recursion must find a
/// counterexample.
pub fn verify_d_lemmas_sensitivity(letters: usize, max_len: usize, samples: usize, seed: u64) -> VerificationReport {
    const T: &str = "d-lemmas-sensitivity";
    let instance = format!("mutated recursion, {letters} letters, length ≤ {max_len}, seed {seed}");
    timed(|| {
        let suite = LemmaSuite {
            letters,
            max_len,
            samples,
            seed,
        };
        let found: usize = suite.run_mutated().iter().map(|o| o.counterexamples).sum();
        if found > 0 {
            VerificationReport::pass(T, &instance).with_detail(format!("{found} counterexamples detected"))
        } else {
            VerificationReport::fail(T, &instance, "the mutated recursion passed every lemma")
        }
    })
}

/// A map between finite inverse monoids, by element index.
#[derive(Clone, Debug)]
pub struct ConstructedMap {
    pub name: String,
    pub source: FiniteBiunary,
    pub target: FiniteBiunary,
    pub map: Vec<usize>,
}

/// Strongness decided directly and through inverse and order
/// preservation; pass iff the two agree.
pub fn verify_strongness(c: &ConstructedMap) -> VerificationReport {
    const T: &str = "strongness";
    timed(|| match prop79_check(&c.source, &c.target, &c.map) {
        Ok(out) if out.agree() => VerificationReport::pass(T, &c.name)
            .with_detail(format!("strong = conditions = {}", out.strong)),
        Ok(out) => VerificationReport::fail(
            T,
            &c.name,
            format!(
                "strong = {}, conditions = {}: {}",
                out.strong,
                out.conditions,
                out.witness.unwrap_or_default()
            ),
        ),
        Err(e) => VerificationReport::skipped(T, &c.name, e.to_string()),
    })
}

/// Corrupts one or two values of the given premorphisms at random and
/// keeps the results that are still premorphisms; pass iff at least
/// `want` were kept and every one of them agrees.
pub fn verify_strongness_fuzz(maps: &[ConstructedMap], want: usize, seed: u64) -> VerificationReport {
    const T: &str = "strongness-fuzz";
    let instance = format!("{} base maps, seed {seed}", maps.len());
    timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut kept, mut strong, mut attempts) = (0usize, 0usize, 0usize);
        let target = want.max(1) * 2;
        let max_attempts = target * 200;
        let usable: Vec<&ConstructedMap> = maps.iter().filter(|c| c.source.size() > 1).collect();
        if usable.is_empty() {
            return VerificationReport::skipped(T, &instance, "no map with a non-identity element");
        }
        while kept < target && attempts < max_attempts {
            attempts += 1;
            let c = usable[rng.gen_range(0..usable.len())];
            let mut map = c.map.clone();
            for _ in 0..rng.gen_range(1..=2) {
                let s = rng.gen_range(0..c.source.size());
                if s != c.source.one() {
                    map[s] = rng.gen_range(0..c.target.size());
                }
            }
            if map == c.map {
                continue;
            }
            let class = classify_map(&c.source.monoid(), &InverseAware(&c.target), &map);
            if !class.is_premorphism {
                continue;
            }
            match prop79_check(&c.source, &c.target, &map) {
                Ok(out) if out.agree() => {
                    kept += 1;
                    strong += out.strong as usize;
                }
                Ok(out) => {
                    return VerificationReport::fail(
                        T,
                        &instance,
                        format!("{} corrupted to {map:?}: {}", c.name, out.witness.unwrap_or_default()),
                    )
                }
                Err(e) => return report_error(T, &instance, e),
            }
        }
        let detail = format!("{kept} corrupted premorphisms ({strong} strong) from {attempts} attempts");
        if kept >= want {
            VerificationReport::pass(T, &instance).with_detail(detail)
        } else {
            VerificationReport::fail(T, &instance, format!("only {detail}"))
        }
    })
}

/// `φ` and `τ` obey the same ground relations `⌊m⌋e = ⌊m⌋f`, over all
/// `m` and all `e, f` from the generated projection terms.
pub fn verify_agreement(name: &str, s: &FiniteBiunary) -> VerificationReport {
    const T: &str = "agreement";
    timed(|| {
        match s.is_f_restriction() {
            Ok(true) => {}
            Ok(false) => return VerificationReport::skipped(T, name, "not F-restriction"),
            Err(e) => return VerificationReport::skipped(T, name, e.to_string()),
        }
        let ag = match Agreement::new(s) {
            Ok(a) => a,
            Err(e) => return report_error(T, name, e),
        };
        let q = ag.data().quotient.size();
        let terms = projection_terms(q);
        let (mut count, mut obeyed) = (0usize, 0usize);
        for m in 0..q {
            for e in &terms {
                for f in &terms {
                    match ag.check(m, e, f) {
                        Ok((a, b)) if a == b => {
                            count += 1;
                            obeyed += a as usize;
                        }
                        Ok((a, b)) => {
                            return VerificationReport::fail(
                                T,
                                name,
                                format!("[{m}]({e}) = [{m}]({f}): φ obeys = {a}, τ obeys = {b}"),
                            )
                        }
                        Err(err) => return report_error(T, name, err),
                    }
                }
            }
        }
        VerificationReport::pass(T, name).with_detail(format!("{count} instances agree, {obeyed} obeyed by both"))
    })
}

/// The underlying premorphism of an F-restriction monoid is `α∘τ`.
pub fn verify_alpha_tau(name: &str, s: &FiniteBiunary) -> VerificationReport {
    const T: &str = "alpha-tau";
    timed(|| {
        match s.is_f_restriction() {
            Ok(true) => {}
            Ok(false) => return VerificationReport::skipped(T, name, "not F-restriction"),
            Err(e) => return VerificationReport::skipped(T, name, e.to_string()),
        }
        match check_alpha_tau(s) {
            Ok(()) => VerificationReport::pass(T, name),
            Err(e) => report_error(T, name, e),
        }
    })
}
