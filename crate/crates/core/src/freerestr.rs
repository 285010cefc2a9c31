//! The free restriction monoid `FR(A)` as pairs `(E, m)`: an idempotent
//! Munn tree `E` and a positive word `m` whose path lies inside `E`. The
//! pair stands for `e⌊m⌋`, and its image in `FI(A)` is the tree `E`
//! birooted at `ε` and `m`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::RestrictionOps;
use crate::error::{Error, Result};
use crate::munn::{fi_mul, fi_plus, fi_star, idempotent_meet, is_inverse, random_word, tree_of_word, MunnTree, Sym, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct FRPair {
    e: MunnTree,
    m: Word,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    #[serde(rename = "E")]
    e: MunnTree,
    m: String,
}

impl TryFrom<RawPair> for FRPair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        let m = Word::parse(&raw.m)?;
        let pair = fr_canonicalize(&raw.e, &m)?;
        if pair.e != raw.e {
            return Err(Error::input("E must contain the path of m"));
        }
        Ok(pair)
    }
}

impl From<FRPair> for RawPair {
    fn from(p: FRPair) -> Self {
        RawPair {
            e: p.e,
            m: p.m.to_string(),
        }
    }
}

impl fmt::Display for FRPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = if self.m.is_empty() { "ε".to_string() } else { self.m.to_string() };
        write!(f, "({}, {m})", self.e)
    }
}

impl FRPair {
    pub fn one() -> Self {
        FRPair {
            e: MunnTree::identity(),
            m: Word::empty(),
        }
    }

    /// `⌊m⌋ = ([m]⁺, m)` for a positive word `m`.
    pub fn generator(m: &Word) -> Result<Self> {
        if !m.is_positive() {
            return Err(Error::input("generators are positive words"));
        }
        Ok(FRPair {
            e: fi_plus(&tree_of_word(m)),
            m: m.clone(),
        })
    }

    pub fn letter(index: usize) -> Self {
        FRPair::generator(&Word::from_letters(&[index])).expect("letters are positive")
    }

    /// The projection `(E, ε)`.
    pub fn projection(e: &MunnTree) -> Result<Self> {
        fr_canonicalize(e, &Word::empty())
    }

    pub fn tree(&self) -> &MunnTree {
        &self.e
    }

    pub fn word(&self) -> &Word {
        &self.m
    }

    pub fn is_projection(&self) -> bool {
        self.m.is_empty()
    }
}

/// `(E ∧ [m]⁺, m)`: the canonical pair for `e⌊m⌋`.
pub fn fr_canonicalize(e: &MunnTree, m: &Word) -> Result<FRPair> {
    if !e.is_idempotent() {
        return Err(Error::invalid("E must be an idempotent Munn tree"));
    }
    if !m.is_positive() {
        return Err(Error::input("m must be a positive word"));
    }
    Ok(FRPair {
        e: idempotent_meet(e, &fi_plus(&tree_of_word(m)))?,
        m: m.clone(),
    })
}

/// `(e, m)(f, n) = (e([m]f)⁺, mn)`.
pub fn fr_mul(x: &FRPair, y: &FRPair) -> FRPair {
    FRPair {
        e: fi_plus(&fi_mul(&fi_mul(&x.e, &tree_of_word(&x.m)), &y.e)),
        m: x.m.concat(&y.m),
    }
}

/// `(e, m)* = ((e[m])^⊛, ε)`.
pub fn fr_star(x: &FRPair) -> FRPair {
    FRPair {
        e: fi_star(&psi(x)),
        m: Word::empty(),
    }
}

pub fn fr_plus(x: &FRPair) -> FRPair {
    FRPair {
        e: x.e.clone(),
        m: Word::empty(),
    }
}

/// The image `e[m]` in the free inverse monoid.
pub fn psi(x: &FRPair) -> MunnTree {
    fi_mul(&x.e, &tree_of_word(&x.m))
}

/// Inverse of [`psi`] on its image: trees whose end root is positive.
pub fn from_psi(t: &MunnTree) -> Option<FRPair> {
    if !t.end().is_positive() {
        return None;
    }
    fr_canonicalize(&fi_plus(t), t.end()).ok()
}

/// `Ψ(e, m) = D_e⌊m⌋`, with `D_e` the projection `(e, ε)`.
pub fn capital_psi(e: &MunnTree, m: &Word) -> Result<FRPair> {
    Ok(fr_mul(&FRPair::projection(e)?, &FRPair::generator(m)?))
}

/// The free restriction monoid as symbolic operations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FreeRestriction;

impl RestrictionOps for FreeRestriction {
    type Elem = FRPair;

    fn one(&self) -> FRPair {
        FRPair::one()
    }

    fn mul(&self, a: &FRPair, b: &FRPair) -> FRPair {
        fr_mul(a, b)
    }

    fn star(&self, a: &FRPair) -> FRPair {
        fr_star(a)
    }

    fn plus(&self, a: &FRPair) -> FRPair {
        fr_plus(a)
    }
}

/// `D_u`: `D_ε = 1`, `D_{v[a]} = (D_v⌊a⌋)*`, `D_{v[a]⁻¹} = (⌊a⌋D_v)⁺`.
pub fn compute_d(u: &Word) -> FRPair {
    d_fold(u, false)
}

/// [`compute_d`] with `*` and `⁺` exchanged. Wrong on purpose; used to
/// show that the lemma suite detects a broken recursion.
pub fn compute_d_mutated(u: &Word) -> FRPair {
    d_fold(u, true)
}

fn d_fold(u: &Word, swap: bool) -> FRPair {
    u.syms().iter().fold(FRPair::one(), |d, &s: &Sym| {
        let a = FRPair::letter((s / 2) as usize);
        let (after_letter, after_inverse): (fn(&FRPair) -> FRPair, fn(&FRPair) -> FRPair) =
            if swap { (fr_plus, fr_star) } else { (fr_star, fr_plus) };
        if is_inverse(s) {
            after_inverse(&fr_mul(&a, &d))
        } else {
            after_letter(&fr_mul(&d, &a))
        }
    })
}

/// Outcome of one lemma of the `D_u` suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaOutcome {
    pub lemma: String,
    pub cases: usize,
    pub counterexamples: usize,
    pub witness: Option<String>,
}

impl LemmaOutcome {
    fn new(lemma: &str) -> Self {
        LemmaOutcome {
            lemma: lemma.to_string(),
            cases: 0,
            counterexamples: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.counterexamples += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }
}

/// Parameters of the `D_u` lemma suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSuite {
    pub letters: usize,
    pub max_len: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for LemmaSuite {
    fn default() -> Self {
        LemmaSuite {
            letters: 2,
            max_len: 8,
            samples: 500,
            seed: 0,
        }
    }
}

impl LemmaSuite {
    /// Runs the five lemmas with `d` as the `D_u` engine.
    pub fn run_with(&self, d: &dyn Fn(&Word) -> FRPair) -> Vec<LemmaOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let k = self.letters.max(1);
        let n = self.max_len;
        let word = |rng: &mut ChaCha8Rng, max: usize| {
            let len = rng.gen_range(0..=max);
            random_word(rng, k, len)
        };
        let mut rho = LemmaOutcome::new("u rho v implies D_u = D_v");
        let mut star = LemmaOutcome::new("d_u = u^star");
        let mut uinvu = LemmaOutcome::new("D_u = D_{u^-1 u}");
        let mut ef = LemmaOutcome::new("D_{ef} = D_e D_f");
        let mut prefix = LemmaOutcome::new("D_u = D_v implies D_{uw} = D_{vw}");
        for _ in 0..self.samples {
            // rho: a generating relation inside a context, total length ≤ n
            let p = word(&mut rng, n / 4);
            let q = word(&mut rng, n / 4);
            let x = word(&mut rng, (n / 4).max(if n > 0 { 1 } else { 0 }));
            let (lhs, rhs) = if rng.gen_bool(0.5) {
                (p.concat(&x).concat(&x.inverse()).concat(&x).concat(&q), p.concat(&x).concat(&q))
            } else {
                let y = word(&mut rng, n / 8);
                let e = x.concat(&x.inverse());
                let f = y.concat(&y.inverse());
                (p.concat(&e).concat(&f).concat(&q), p.concat(&f).concat(&e).concat(&q))
            };
            rho.record(d(&lhs) == d(&rhs), || format!("{} vs {}", lhs.spaced(), rhs.spaced()));

            let u = word(&mut rng, n);
            let du = d(&u);
            star.record(du.tree() == &fi_star(&tree_of_word(&u)) && du.is_projection(), || {
                format!("u = {}: D_u = {du}", u.spaced())
            });
            let uu = u.inverse().concat(&u);
            uinvu.record(du == d(&uu), || format!("u = {}", u.spaced()));

            let a = word(&mut rng, n / 2);
            let b = word(&mut rng, n / 2);
            let e = a.inverse().concat(&a);
            let f = b.inverse().concat(&b);
            ef.record(d(&e.concat(&f)) == fr_mul(&d(&e), &d(&f)), || {
                format!("e = {}, f = {}", e.spaced(), f.spaced())
            });

            // a second word with the same D: a different word for u⁻¹u in FI(A)
            let v = fi_star(&tree_of_word(&u)).walk_word();
            let w = word(&mut rng, n);
            if du == d(&v) {
                prefix.record(d(&u.concat(&w)) == d(&v.concat(&w)), || {
                    format!("u = {}, v = {}, w = {}", u.spaced(), v.spaced(), w.spaced())
                });
            }
        }
        vec![rho, star, uinvu, ef, prefix]
    }

    pub fn run(&self) -> Vec<LemmaOutcome> {
        self.run_with(&compute_d)
    }

    pub fn run_mutated(&self) -> Vec<LemmaOutcome> {
        self.run_with(&compute_d_mutated)
    }
}

/// Uniform-ish random canonical pair: a positive word of length at most
/// `max_len` and an idempotent built from a random signed word.
pub fn random_pair<R: Rng>(rng: &mut R, letters: usize, max_len: usize) -> FRPair {
    let mlen = rng.gen_range(0..=max_len);
    let m = Word((0..mlen).map(|_| 2 * rng.gen_range(0..letters) as Sym).collect());
    let wlen = rng.gen_range(0..=max_len);
    let e = fi_plus(&tree_of_word(&random_word(rng, letters, wlen)));
    fr_canonicalize(&e, &m).expect("idempotent and positive")
}
