//! The free inverse monoid `FI(A)` as birooted Munn trees.
//!
//! Letters are lowercase ASCII, letter `c` having index `c - 'a'`. A signed
//! symbol is `2·index + sign` with sign 1 for an inverse letter, so that
//! inverting a symbol flips its low bit. In text an inverse letter carries a
//! trailing `'`: `a b a'`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Sym = u8;

pub const MAX_LETTERS: usize = 26;

#[inline]
pub fn letter(index: usize) -> Sym {
    (2 * index) as Sym
}

#[inline]
pub fn inverse_sym(s: Sym) -> Sym {
    s ^ 1
}

#[inline]
pub fn is_inverse(s: Sym) -> bool {
    s & 1 == 1
}

fn sym_name(s: Sym) -> String {
    let c = (b'a' + s / 2) as char;
    if is_inverse(s) {
        format!("{c}'")
    } else {
        c.to_string()
    }
}

/// A word over `A ∪ A⁻¹`, not necessarily reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Sym>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(indices: &[usize]) -> Self {
        Word(indices.iter().map(|&i| letter(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syms(&self) -> &[Sym] {
        &self.0
    }

    /// Appends with free reduction against the last symbol.
    pub fn push_reduced(&mut self, s: Sym) {
        if self.0.last() == Some(&inverse_sym(s)) {
            self.0.pop();
        } else {
            self.0.push(s);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.0.extend_from_slice(&other.0);
        w
    }

    /// Free-group product of two reduced words.
    pub fn mul_reduced(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &s in &other.0 {
            w.push_reduced(s);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&s| inverse_sym(s)).collect())
    }

    pub fn reduced(&self) -> Word {
        Word::empty().mul_reduced(self)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != inverse_sym(w[0]))
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&s| !is_inverse(s))
    }

    /// Largest letter index used, plus one.
    pub fn letter_bound(&self) -> usize {
        self.0.iter().map(|&s| (s / 2) as usize + 1).max().unwrap_or(0)
    }

    /// Parses `a b a'` or `aba'`; whitespace is ignored.
    pub fn parse(text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for c in text.chars().filter(|c| !c.is_whitespace()) {
            match c {
                'a'..='z' => out.push(letter(c as usize - 'a' as usize)),
                '\'' => match out.last_mut() {
                    Some(s) if !is_inverse(*s) => *s = inverse_sym(*s),
                    _ => return Err(Error::input("stray ' in word")),
                },
                _ => return Err(Error::input(format!("'{c}' is not a letter"))),
            }
        }
        Ok(Word(out))
    }

    /// Space-separated form, `a b a'`.
    pub fn spaced(&self) -> String {
        self.0.iter().map(|&s| sym_name(s)).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(&sym_name(s))?;
        }
        Ok(())
    }
}

/// Shortlex.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A declared set of letters; words are validated against it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    /// The first `k` lowercase letters.
    pub fn first(k: usize) -> Result<Self> {
        if k > MAX_LETTERS {
            return Err(Error::input(format!("at most {MAX_LETTERS} letters")));
        }
        Ok(Alphabet {
            letters: (0..k).map(|i| (b'a' + i as u8) as char).collect(),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut letters: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
        if let Some(c) = letters.iter().find(|c| !c.is_ascii_lowercase()) {
            return Err(Error::input(format!("'{c}' is not a lowercase letter")));
        }
        letters.sort_unstable();
        letters.dedup();
        Ok(Alphabet { letters })
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn contains_sym(&self, s: Sym) -> bool {
        self.letters.contains(&((b'a' + s / 2) as char))
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&s| !self.contains_sym(s)) {
            Some(&s) => Err(Error::input(format!(
                "letter {} is outside the alphabet {{{}}}",
                sym_name(s),
                self.letters.iter().collect::<String>()
            ))),
            None => Ok(()),
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let w = Word::parse(text)?;
        self.check(&w)?;
        Ok(w)
    }
}

/// A birooted Munn tree: a finite prefix-closed set of reduced words
/// containing `ε`, and an end root among them. The start root is `ε`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTree", into = "RawTree")]
pub struct MunnTree {
    vertices: BTreeSet<Word>,
    end: Word,
}

#[derive(Serialize, Deserialize)]
struct RawTree {
    vertices: Vec<String>,
    end: String,
}

impl TryFrom<RawTree> for MunnTree {
    type Error = Error;

    fn try_from(raw: RawTree) -> Result<Self> {
        let vertices = raw
            .vertices
            .iter()
            .map(|v| Word::parse(v))
            .collect::<Result<BTreeSet<_>>>()?;
        MunnTree::new(vertices, Word::parse(&raw.end)?)
    }
}

impl From<MunnTree> for RawTree {
    fn from(t: MunnTree) -> Self {
        RawTree {
            vertices: t.vertices.iter().map(Word::to_string).collect(),
            end: t.end.to_string(),
        }
    }
}

impl MunnTree {
    /// Validates the tree invariants.
    pub fn new(vertices: BTreeSet<Word>, end: Word) -> Result<Self> {
        if !vertices.contains(&Word::empty()) {
            return Err(Error::input("Munn tree must contain the empty word"));
        }
        for v in &vertices {
            if !v.is_reduced() {
                return Err(Error::input(format!("vertex {v} is not reduced")));
            }
            if !v.is_empty() && !vertices.contains(&Word(v.0[..v.len() - 1].to_vec())) {
                return Err(Error::input(format!("vertex {v} has no parent in the tree")));
            }
        }
        if !vertices.contains(&end) {
            return Err(Error::input(format!("end root {end} is not a vertex")));
        }
        Ok(MunnTree { vertices, end })
    }

    /// `({ε}, ε)`, the identity.
    pub fn identity() -> Self {
        MunnTree {
            vertices: BTreeSet::from([Word::empty()]),
            end: Word::empty(),
        }
    }

    pub fn vertices(&self) -> &BTreeSet<Word> {
        &self.vertices
    }

    pub fn end(&self) -> &Word {
        &self.end
    }

    pub fn is_idempotent(&self) -> bool {
        self.end.is_empty()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Letter indices used on some edge, plus one.
    pub fn letter_bound(&self) -> usize {
        self.vertices.iter().map(Word::letter_bound).max().unwrap_or(0)
    }

    fn translate(&self, by: &Word) -> BTreeSet<Word> {
        self.vertices.iter().map(|v| by.mul_reduced(v)).collect()
    }

    /// A closed walk through every edge followed by the reduced path to the
    /// end root; its tree is `self`.
    pub fn walk_word(&self) -> Word {
        let mut out = Vec::new();
        let mut stack = vec![(Word::empty(), 0usize)];
        // iterative DFS: children of v are reduced words v·s in the tree
        let children = |v: &Word| -> Vec<Sym> {
            (0..2 * MAX_LETTERS as u8)
                .filter(|&s| {
                    v.0.last() != Some(&inverse_sym(s)) && {
                        let mut c = v.clone();
                        c.0.push(s);
                        self.vertices.contains(&c)
                    }
                })
                .collect()
        };
        let mut kids = vec![children(&Word::empty())];
        while let Some((v, i)) = stack.pop() {
            let list = kids.last().expect("parallel stacks");
            if i < list.len() {
                let s = list[i];
                stack.push((v.clone(), i + 1));
                out.push(s);
                let mut c = v.clone();
                c.0.push(s);
                kids.push(children(&c));
                stack.push((c, 0));
            } else {
                kids.pop();
                if let Some(&s) = v.0.last() {
                    out.push(inverse_sym(s));
                }
            }
        }
        out.extend_from_slice(&self.end.0);
        Word(out)
    }
}

impl fmt::Display for MunnTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .vertices
            .iter()
            .map(|v| if v.is_empty() { "ε".to_string() } else { v.to_string() })
            .collect();
        let end = if self.end.is_empty() { "ε".to_string() } else { self.end.to_string() };
        write!(f, "({{{}}}, {end})", vs.join(","))
    }
}

/// The Munn tree of a word: every reduced prefix of the walk it reads.
pub fn tree_of_word(w: &Word) -> MunnTree {
    let mut vertices = BTreeSet::from([Word::empty()]);
    let mut at = Word::empty();
    for &s in &w.0 {
        at.push_reduced(s);
        vertices.insert(at.clone());
    }
    MunnTree { vertices, end: at }
}

/// Like [`tree_of_word`], validating letters against `alphabet`.
pub fn tree_of_word_in(alphabet: &Alphabet, w: &Word) -> Result<MunnTree> {
    alphabet.check(w)?;
    Ok(tree_of_word(w))
}

pub fn fi_mul(t1: &MunnTree, t2: &MunnTree) -> MunnTree {
    let mut vertices = t1.vertices.clone();
    vertices.extend(t2.translate(&t1.end));
    MunnTree {
        vertices,
        end: t1.end.mul_reduced(&t2.end),
    }
}

pub fn fi_inv(t: &MunnTree) -> MunnTree {
    let back = t.end.inverse();
    MunnTree {
        vertices: t.translate(&back),
        end: back,
    }
}

/// `t⁻¹t`: the tree re-rooted at its end, as an idempotent.
pub fn fi_star(t: &MunnTree) -> MunnTree {
    MunnTree {
        vertices: t.translate(&t.end.inverse()),
        end: Word::empty(),
    }
}

/// `tt⁻¹`.
pub fn fi_plus(t: &MunnTree) -> MunnTree {
    MunnTree {
        vertices: t.vertices.clone(),
        end: Word::empty(),
    }
}

/// The natural order: same end root and a larger vertex set.
pub fn fi_leq(t1: &MunnTree, t2: &MunnTree) -> bool {
    t1.end == t2.end && t1.vertices.is_superset(&t2.vertices)
}

pub fn idempotent_meet(e1: &MunnTree, e2: &MunnTree) -> Result<MunnTree> {
    if !e1.is_idempotent() || !e2.is_idempotent() {
        return Err(Error::invalid("meet of non-idempotent Munn trees"));
    }
    let mut vertices = e1.vertices.clone();
    vertices.extend(e2.vertices.iter().cloned());
    Ok(MunnTree {
        vertices,
        end: Word::empty(),
    })
}

/// Uniform random word of exactly `len` symbols over the first `letters`
/// letters and their inverses (not necessarily reduced).
pub fn random_word<R: rand::Rng>(rng: &mut R, letters: usize, len: usize) -> Word {
    Word((0..len).map(|_| rng.gen_range(0..2 * letters) as Sym).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> MunnTree {
        tree_of_word(&Word::parse(s).unwrap())
    }

    fn vs(tree: &MunnTree) -> Vec<String> {
        tree.vertices().iter().map(Word::to_string).collect()
    }

    #[test]
    fn words_of_the_examples() {
        assert_eq!(t(""), MunnTree::identity());
        assert_eq!(t("a a' a"), t("a"));
        let x = t("a b a'");
        assert_eq!(vs(&x), ["", "a", "ab", "aba'"]);
        assert_eq!(x.end().to_string(), "aba'");
    }

    #[test]
    fn products_of_the_examples() {
        let x = t("a b");
        assert_eq!(fi_mul(&x, &MunnTree::identity()), x);
        let (e, f) = (t("a a'"), t("b b'"));
        assert_eq!(fi_mul(&e, &f), fi_mul(&f, &e));
        assert_eq!(vs(&fi_mul(&e, &f)), ["", "a", "b"]);
        assert_eq!(fi_mul(&t("a"), &t("a'")), fi_plus(&t("a")));
        assert_eq!(vs(&fi_plus(&t("a"))), ["", "a"]);
    }

    #[test]
    fn unary_examples() {
        assert_eq!(fi_inv(&MunnTree::identity()), MunnTree::identity());
        let s = fi_star(&t("a"));
        assert_eq!(vs(&s), ["", "a'"]);
        assert!(s.is_idempotent());
    }

    #[test]
    fn order_examples() {
        assert!(fi_leq(&t("a a' b"), &t("b")));
        assert!(!fi_leq(&t("a"), &t("b")));
        let e = t("a a'");
        assert_eq!(idempotent_meet(&e, &e).unwrap(), e);
        assert_eq!(vs(&idempotent_meet(&e, &t("b b'")).unwrap()), ["", "a", "b"]);
        assert_eq!(idempotent_meet(&e, &MunnTree::identity()).unwrap(), e);
        assert!(matches!(idempotent_meet(&t("a"), &e), Err(Error::Invalid(_))));
    }

    #[test]
    fn alphabet_rejects_foreign_letters() {
        let ab = Alphabet::parse("ab").unwrap();
        assert!(ab.parse_word("a b' a").is_ok());
        assert!(matches!(ab.parse_word("a c"), Err(Error::Input(_))));
        assert!(Word::parse("a''").is_err());
        assert!(Word::parse("'a").is_err());
    }

    #[test]
    fn json_format() {
        let x = t("a b");
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"vertices":["","a","ab"],"end":"ab"}"#);
        assert_eq!(serde_json::from_str::<MunnTree>(&j).unwrap(), x);
        let bad = r#"{"vertices":["","ab"],"end":"ab"}"#;
        assert!(serde_json::from_str::<MunnTree>(bad).is_err());
    }

    /// All words of length at most `n` over two letters and inverses.
    fn all_words(n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &layer {
                for s in 0..4u8 {
                    let mut v = w.clone();
                    v.0.push(s);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn concatenation_matches_product_exhaustively() {
        let words = all_words(4);
        for u in &words {
            let tu = tree_of_word(u);
            assert_eq!(fi_inv(&tu), tree_of_word(&u.inverse()));
            for v in words.iter().filter(|v| v.len() + u.len() <= 6) {
                assert_eq!(fi_mul(&tu, &tree_of_word(v)), tree_of_word(&u.concat(v)));
            }
        }
    }

    #[test]
    fn order_agrees_with_definition() {
        let trees: BTreeSet<MunnTree> = all_words(3).iter().map(tree_of_word).collect();
        let idem: BTreeSet<MunnTree> = trees.iter().flat_map(|t| [fi_plus(t), fi_star(t)]).collect();
        for a in &trees {
            for b in &trees {
                let def = idem.iter().any(|e| fi_mul(e, b) == *a);
                assert_eq!(fi_leq(a, b), def, "{a} vs {b}");
            }
        }
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(0u8..4, 0..=max).prop_map(Word)
    }

    proptest! {
        #[test]
        fn concatenation_matches_product(u in arb_word(5), v in arb_word(5)) {
            prop_assert_eq!(fi_mul(&tree_of_word(&u), &tree_of_word(&v)), tree_of_word(&u.concat(&v)));
        }

        #[test]
        fn rho_relations_in_context(p in arb_word(4), q in arb_word(4), x in arb_word(3), y in arb_word(3)) {
            // x x⁻¹ x ρ x
            let lhs = p.concat(&x).concat(&x.inverse()).concat(&x).concat(&q);
            let rhs = p.concat(&x).concat(&q);
            prop_assert_eq!(tree_of_word(&lhs), tree_of_word(&rhs));
            // x x⁻¹ y y⁻¹ ρ y y⁻¹ x x⁻¹
            let e = x.concat(&x.inverse());
            let f = y.concat(&y.inverse());
            let lhs = p.concat(&e).concat(&f).concat(&q);
            let rhs = p.concat(&f).concat(&e).concat(&q);
            prop_assert_eq!(tree_of_word(&lhs), tree_of_word(&rhs));
        }

        #[test]
        fn involutions_and_walks(w in arb_word(10)) {
            let x = tree_of_word(&w);
            prop_assert_eq!(fi_inv(&fi_inv(&x)), x.clone());
            prop_assert_eq!(fi_star(&x), fi_mul(&fi_inv(&x), &x));
            prop_assert_eq!(fi_plus(&x), fi_mul(&x, &fi_inv(&x)));
            prop_assert_eq!(tree_of_word(&x.walk_word()), x);
        }

        #[test]
        fn idempotents_commute(u in arb_word(6), v in arb_word(6)) {
            let e = fi_plus(&tree_of_word(&u));
            let f = fi_star(&tree_of_word(&v));
            prop_assert_eq!(fi_mul(&e, &f), fi_mul(&f, &e));
            prop_assert_eq!(idempotent_meet(&e, &f).unwrap(), fi_mul(&e, &f));
        }
    }
}
