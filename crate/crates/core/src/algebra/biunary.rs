use serde::{Deserialize, Serialize};

use super::monoid::{check_monoid_table, flatten_table};
use super::{FiniteMonoid, FiniteSemilattice, RestrictionOps};
use crate::error::{Error, Result};

/// A finite algebra `(S; ·, *, +, 1)` of type (2,1,1,0).
///
/// The multiplication is validated to be associative with identity `one`;
/// the unary tables are arbitrary until [`check_restriction_axioms`] says
/// otherwise. Inverse monoids carry their inversion table in `inv`, and
/// constructions with meaningful element names may attach `labels`.
///
/// [`check_restriction_axioms`]: FiniteBiunary::check_restriction_axioms
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBiunary", into = "RawBiunary")]
pub struct FiniteBiunary {
    size: usize,
    one: usize,
    mul: Vec<usize>,
    star: Vec<usize>,
    plus: Vec<usize>,
    inv: Option<Vec<usize>>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct RawBiunary {
    size: usize,
    one: usize,
    mul: Vec<Vec<usize>>,
    star: Vec<usize>,
    plus: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inv: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<RawBiunary> for FiniteBiunary {
    type Error = Error;

    fn try_from(raw: RawBiunary) -> Result<Self> {
        let mul = flatten_table(raw.size, &raw.mul, "multiplication")?;
        let mut s = FiniteBiunary::from_flat(raw.size, raw.one, mul, raw.star, raw.plus)?;
        if let Some(inv) = raw.inv {
            s = s.with_inverse(inv)?;
        }
        if let Some(labels) = raw.labels {
            s = s.with_labels(labels)?;
        }
        Ok(s)
    }
}

impl From<FiniteBiunary> for RawBiunary {
    fn from(s: FiniteBiunary) -> Self {
        RawBiunary {
            size: s.size,
            one: s.one,
            mul: s.mul.chunks(s.size).map(|r| r.to_vec()).collect(),
            star: s.star,
            plus: s.plus,
            inv: s.inv,
            labels: s.labels,
        }
    }
}

/// One violated identity, with the first failing assignment and the number
/// of failing assignments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub identity: String,
    pub witness: Vec<usize>,
    pub count: usize,
}

/// Result of checking the restriction monoid axioms; empty iff all hold.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    fn scan1(&mut self, name: &str, n: usize, holds: impl Fn(usize) -> bool) {
        let mut first = None;
        let mut count = 0;
        for x in 0..n {
            if !holds(x) {
                first.get_or_insert(vec![x]);
                count += 1;
            }
        }
        self.push(name, first, count);
    }

    fn scan2(&mut self, name: &str, n: usize, holds: impl Fn(usize, usize) -> bool) {
        let mut first = None;
        let mut count = 0;
        for x in 0..n {
            for y in 0..n {
                if !holds(x, y) {
                    first.get_or_insert(vec![x, y]);
                    count += 1;
                }
            }
        }
        self.push(name, first, count);
    }

    fn push(&mut self, name: &str, first: Option<Vec<usize>>, count: usize) {
        if let Some(witness) = first {
            self.violations.push(AxiomViolation {
                identity: name.to_string(),
                witness,
                count,
            });
        }
    }
}

/// Left, right or two-sided version of the ample condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Both,
}

impl FiniteBiunary {
    pub fn from_flat(
        size: usize,
        one: usize,
        mul: Vec<usize>,
        star: Vec<usize>,
        plus: Vec<usize>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::input("size must be positive; monoids are nonempty"));
        }
        if mul.len() != size * size || mul.iter().any(|&v| v >= size) {
            return Err(Error::input("malformed multiplication table"));
        }
        for (name, t) in [("star", &star), ("plus", &plus)] {
            if t.len() != size || t.iter().any(|&v| v >= size) {
                return Err(Error::input(format!("malformed {name} table")));
            }
        }
        check_monoid_table(size, one, &mul)?;
        Ok(FiniteBiunary {
            size,
            one,
            mul,
            star,
            plus,
            inv: None,
            labels: None,
        })
    }

    pub fn from_rows(
        size: usize,
        one: usize,
        rows: &[Vec<usize>],
        star: Vec<usize>,
        plus: Vec<usize>,
    ) -> Result<Self> {
        let mul = flatten_table(size, rows, "multiplication")?;
        Self::from_flat(size, one, mul, star, plus)
    }

    pub(crate) fn from_parts_unchecked(
        size: usize,
        one: usize,
        mul: Vec<usize>,
        star: Vec<usize>,
        plus: Vec<usize>,
    ) -> Self {
        FiniteBiunary {
            size,
            one,
            mul,
            star,
            plus,
            inv: None,
            labels: None,
        }
    }

    /// A monoid as a reduced restriction monoid: `x* = x⁺ = 1`.
    pub fn reduced(m: &FiniteMonoid) -> Self {
        FiniteBiunary::from_parts_unchecked(
            m.size(),
            m.one(),
            m.table().to_vec(),
            vec![m.one(); m.size()],
            vec![m.one(); m.size()],
        )
    }

    /// A semilattice as a restriction monoid with `x* = x⁺ = x`.
    pub fn from_semilattice(y: &FiniteSemilattice) -> Self {
        let n = y.size();
        let mul = (0..n * n).map(|k| y.meet(k / n, k % n)).collect();
        let id: Vec<usize> = (0..n).collect();
        let mut s = FiniteBiunary::from_parts_unchecked(n, y.top(), mul, id.clone(), id.clone());
        s.inv = Some(id);
        s
    }

    /// Attaches an inversion table; it must satisfy the inverse monoid
    /// axioms and agree with `x* = x⁻¹x`, `x⁺ = xx⁻¹`.
    pub fn with_inverse(mut self, inv: Vec<usize>) -> Result<Self> {
        if inv.len() != self.size || inv.iter().any(|&v| v >= self.size) {
            return Err(Error::input("malformed inv table"));
        }
        super::inverse::check_inverse_table(self.size, &self.mul, &inv)?;
        for x in 0..self.size {
            if self.star[x] != self.mul(inv[x], x) || self.plus[x] != self.mul(x, inv[x]) {
                return Err(Error::input(format!(
                    "star/plus disagree with x⁻¹x / xx⁻¹ at {x}"
                )));
            }
        }
        self.inv = Some(inv);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::input("labels must name every element"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    #[inline]
    pub fn star(&self, a: usize) -> usize {
        self.star[a]
    }

    #[inline]
    pub fn plus(&self, a: usize) -> usize {
        self.plus[a]
    }

    pub fn inv(&self) -> Option<&[usize]> {
        self.inv.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn star_table(&self) -> &[usize] {
        &self.star
    }

    pub fn plus_table(&self) -> &[usize] {
        &self.plus
    }

    /// The underlying monoid, forgetting the unary operations.
    pub fn monoid(&self) -> FiniteMonoid {
        FiniteMonoid::from_flat_unchecked(self.size, self.one, self.mul.clone())
    }

    /// Evaluates every instance of the restriction monoid identities.
    ///
    /// When they all hold, the derived identities `(xy)* = (x*y)*` and
    /// `(xy)⁺ = (xy⁺)⁺` are cross-checked too; a failure there can only be
    /// a bug, and is reported as [`Error::TheoremViolation`].
    pub fn check_restriction_axioms(&self) -> Result<AxiomReport> {
        let n = self.size;
        let (m, s, p) = (
            |a, b| self.mul(a, b),
            |a| self.star(a),
            |a| self.plus(a),
        );
        let mut r = AxiomReport::default();
        r.scan1("xx* = x", n, |x| m(x, s(x)) == x);
        r.scan2("x*y* = y*x*", n, |x, y| m(s(x), s(y)) == m(s(y), s(x)));
        r.scan2("(xy*)* = x*y*", n, |x, y| s(m(x, s(y))) == m(s(x), s(y)));
        r.scan2("x*y = y(xy)*", n, |x, y| m(s(x), y) == m(y, s(m(x, y))));
        r.scan1("x+x = x", n, |x| m(p(x), x) == x);
        r.scan2("x+y+ = y+x+", n, |x, y| m(p(x), p(y)) == m(p(y), p(x)));
        r.scan2("(x+y)+ = x+y+", n, |x, y| p(m(p(x), y)) == m(p(x), p(y)));
        r.scan2("xy+ = (xy)+x", n, |x, y| m(x, p(y)) == m(p(m(x, y)), x));
        r.scan1("(x+)* = x+", n, |x| s(p(x)) == p(x));
        r.scan1("(x*)+ = x*", n, |x| p(s(x)) == s(x));
        let one = self.one;
        r.scan1("1* = 1+ = 1", 1, |_| s(one) == one && p(one) == one);
        if r.is_empty() {
            for x in 0..n {
                for y in 0..n {
                    if s(m(x, y)) != s(m(s(x), y)) || p(m(x, y)) != p(m(x, p(y))) {
                        return Err(Error::violation(
                            "derived identities (xy)* = (x*y)*, (xy)+ = (xy+)+",
                            format!("fail at ({x}, {y}) although the axioms hold"),
                        ));
                    }
                }
            }
        }
        Ok(r)
    }

    pub fn is_restriction_monoid(&self) -> bool {
        matches!(self.check_restriction_axioms(), Ok(r) if r.is_empty())
    }

    pub(crate) fn require_restriction(&self) -> Result<()> {
        let report = self.check_restriction_axioms()?;
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::invalid(format!(
                "not a restriction monoid: {} fails at {:?}",
                v.identity, v.witness
            ))),
        }
    }

    pub fn is_projection(&self, x: usize) -> bool {
        self.star(x) == x
    }

    /// `P(S)` in ascending index order. Assumes the axioms hold.
    pub fn projection_set(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.star(x) == x).collect()
    }

    /// The semilattice of projections, together with the embedding of its
    /// elements into `S`. Projection `k` of the semilattice is `embedding[k]`.
    pub fn projections(&self) -> Result<(FiniteSemilattice, Vec<usize>)> {
        self.require_restriction()?;
        let mut stars: Vec<usize> = self.star.clone();
        stars.sort_unstable();
        stars.dedup();
        let mut pluses: Vec<usize> = self.plus.clone();
        pluses.sort_unstable();
        pluses.dedup();
        if stars != pluses {
            return Err(Error::violation(
                "{x*} = {x+}",
                format!("{stars:?} vs {pluses:?}"),
            ));
        }
        let index = |x: usize| stars.binary_search(&x).expect("projections are closed");
        let k = stars.len();
        let mut meet = vec![0; k * k];
        for (i, &e) in stars.iter().enumerate() {
            for (j, &f) in stars.iter().enumerate() {
                meet[i * k + j] = index(self.mul(e, f));
            }
        }
        let y = FiniteSemilattice::from_flat(k, index(self.one), meet)?;
        Ok((y, stars))
    }

    /// `a ≤ b` in the natural partial order: `a = a⁺b`.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.mul(self.plus(a), b) == a
    }

    /// The natural partial order computed from its definition (`a = eb` for
    /// some projection `e`) and cross-checked against `a = ba*` and
    /// `a = a⁺b`.
    pub fn natural_order(&self) -> Result<PartialOrderRel> {
        self.require_restriction()?;
        let n = self.size;
        let proj = self.projection_set();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                let def = proj.iter().any(|&e| self.mul(e, b) == a);
                let right = proj.iter().any(|&f| self.mul(b, f) == a);
                let via_star = self.mul(b, self.star(a)) == a;
                let via_plus = self.mul(self.plus(a), b) == a;
                if def != right || def != via_star || def != via_plus {
                    return Err(Error::violation(
                        "characterizations of the natural order",
                        format!("disagree at ({a}, {b})"),
                    ));
                }
                leq[a * n + b] = def;
            }
        }
        Ok(PartialOrderRel { size: n, leq })
    }

    /// Exhaustive check that both halves of properness hold against the
    /// congruence `sigma`.
    pub fn is_proper(&self) -> Result<bool> {
        let sigma = self.sigma()?;
        let n = self.size;
        for a in 0..n {
            for b in (a + 1)..n {
                if sigma.same(a, b)
                    && (self.star(a) == self.star(b) || self.plus(a) == self.plus(b))
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// For F-restriction monoids, the maximum element of each σ-class,
    /// indexed by class id of [`FiniteBiunary::sigma`]; `None` otherwise.
    pub fn f_restriction_maxima(&self) -> Result<Option<Vec<usize>>> {
        let sigma = self.sigma()?;
        let mut maxima = Vec::with_capacity(sigma.class_count());
        for class in sigma.classes() {
            let max = class
                .iter()
                .copied()
                .find(|&m| class.iter().all(|&x| self.leq(x, m)));
            match max {
                Some(m) => maxima.push(m),
                None => return Ok(None),
            }
        }
        Ok(Some(maxima))
    }

    pub fn is_f_restriction(&self) -> Result<bool> {
        Ok(self.f_restriction_maxima()?.is_some())
    }

    /// Right ample: `ac = bc ⇒ ac⁺ = bc⁺`. Left ample: `ca = cb ⇒ c*a = c*b`.
    pub fn is_ample(&self, side: Side) -> Result<bool> {
        self.require_restriction()?;
        let n = self.size;
        let right = || {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n).all(|c| {
                        self.mul(a, c) != self.mul(b, c)
                            || self.mul(a, self.plus(c)) == self.mul(b, self.plus(c))
                    })
                })
            })
        };
        let left = || {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n).all(|c| {
                        self.mul(c, a) != self.mul(c, b)
                            || self.mul(self.star(c), a) == self.mul(self.star(c), b)
                    })
                })
            })
        };
        Ok(match side {
            Side::Left => left(),
            Side::Right => right(),
            Side::Both => left() && right(),
        })
    }

    /// Whether `f` preserves `·`, `*`, `+` and `1` from `self` to `target`.
    pub fn is_homomorphism_to(&self, target: &FiniteBiunary, f: &[usize]) -> bool {
        f.len() == self.size
            && f.iter().all(|&v| v < target.size)
            && f[self.one] == target.one
            && self.elements().all(|x| {
                f[self.star(x)] == target.star(f[x])
                    && f[self.plus(x)] == target.plus(f[x])
                    && self
                        .elements()
                        .all(|y| f[self.mul(x, y)] == target.mul(f[x], f[y]))
            })
    }
}

impl RestrictionOps for FiniteBiunary {
    type Elem = usize;

    fn one(&self) -> usize {
        self.one
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteBiunary::mul(self, *a, *b)
    }

    fn star(&self, a: &usize) -> usize {
        self.star[*a]
    }

    fn plus(&self, a: &usize) -> usize {
        self.plus[*a]
    }
}

/// A partial order on `0..size`, stored as a dense relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOrderRel {
    size: usize,
    leq: Vec<bool>,
}

impl PartialOrderRel {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    /// All related pairs `(a, b)` with `a ≤ b`, lexicographically.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        (0..n * n)
            .filter(|&k| self.leq[k])
            .map(|k| (k / n, k % n))
            .collect()
    }

    /// Pairs `a < b` with nothing strictly between them.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        self.pairs()
            .into_iter()
            .filter(|&(a, b)| {
                a != b && !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
            })
            .collect()
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.size;
        (0..n).all(|a| self.leq(a, a))
            && (0..n).all(|a| (0..n).all(|b| a == b || !(self.leq(a, b) && self.leq(b, a))))
            && (0..n).all(|a| {
                (0..n).all(|b| !self.leq(a, b) || (0..n).all(|c| !self.leq(b, c) || self.leq(a, c)))
            })
    }
}
