use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::monoid::{check_monoid_table, flatten_table};
use super::{FiniteBiunary, FiniteMonoid, FiniteSemilattice, RestrictionOps};
use crate::error::{Error, Result};

/// Checks `xx⁻¹x = x`, `(x⁻¹)⁻¹ = x` and that idempotents commute, which
/// together make `mul` an inverse monoid with inversion `inv`.
pub fn check_inverse_table(size: usize, mul: &[usize], inv: &[usize]) -> Result<()> {
    let m = |a: usize, b: usize| mul[a * size + b];
    for x in 0..size {
        if inv[inv[x]] != x {
            return Err(Error::invalid(format!("(x⁻¹)⁻¹ = x fails at {x}")));
        }
        if m(m(x, inv[x]), x) != x {
            return Err(Error::invalid(format!("xx⁻¹x = x fails at {x}")));
        }
    }
    let idem: Vec<usize> = (0..size).filter(|&e| m(e, e) == e).collect();
    for &e in &idem {
        for &f in &idem {
            if m(e, f) != m(f, e) {
                return Err(Error::invalid(format!(
                    "idempotents {e} and {f} do not commute"
                )));
            }
        }
    }
    Ok(())
}

/// A finite inverse monoid `(S; ·, ⁻¹, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInverse", into = "RawInverse")]
pub struct FiniteInverseMonoid {
    monoid: FiniteMonoid,
    inv: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawInverse {
    size: usize,
    one: usize,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl TryFrom<RawInverse> for FiniteInverseMonoid {
    type Error = Error;

    fn try_from(raw: RawInverse) -> Result<Self> {
        let mul = flatten_table(raw.size, &raw.mul, "multiplication")?;
        FiniteInverseMonoid::new(FiniteMonoid::from_flat(raw.size, raw.one, mul)?, raw.inv)
    }
}

impl From<FiniteInverseMonoid> for RawInverse {
    fn from(s: FiniteInverseMonoid) -> Self {
        RawInverse {
            size: s.monoid.size(),
            one: s.monoid.one(),
            mul: s.monoid.rows(),
            inv: s.inv,
        }
    }
}

impl FiniteInverseMonoid {
    pub fn new(monoid: FiniteMonoid, inv: Vec<usize>) -> Result<Self> {
        if inv.len() != monoid.size() || inv.iter().any(|&v| v >= monoid.size()) {
            return Err(Error::input("malformed inv table"));
        }
        check_inverse_table(monoid.size(), monoid.table(), &inv)?;
        Ok(FiniteInverseMonoid { monoid, inv })
    }

    /// Recovers the inversion of a monoid that happens to be inverse.
    pub fn from_monoid(monoid: FiniteMonoid) -> Result<Self> {
        let n = monoid.size();
        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            let y = (0..n).find(|&y| {
                monoid.mul(monoid.mul(x, y), x) == x && monoid.mul(monoid.mul(y, x), y) == y
            });
            match y {
                Some(y) => inv.push(y),
                None => return Err(Error::invalid(format!("{x} has no inverse"))),
            }
        }
        FiniteInverseMonoid::new(monoid, inv)
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn inv(&self) -> &[usize] {
        &self.inv
    }
}

/// An inverse monoid as a restriction monoid: `a* = a⁻¹a`, `a⁺ = aa⁻¹`.
pub fn inverse_as_restriction(s: &FiniteInverseMonoid) -> Result<FiniteBiunary> {
    let m = &s.monoid;
    let star = (0..m.size()).map(|x| m.mul(s.inv[x], x)).collect();
    let plus = (0..m.size()).map(|x| m.mul(x, s.inv[x])).collect();
    let out = FiniteBiunary::from_flat(m.size(), m.one(), m.table().to_vec(), star, plus)?
        .with_inverse(s.inv.clone())?;
    out.require_restriction().map_err(|e| {
        Error::violation("inverse monoids are restriction monoids", e.to_string())
    })?;
    Ok(out)
}

/// A partial injection of a finite set of points, stored as its graph
/// sorted by domain point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawBijection", into = "RawBijection")]
pub struct PartialBijection {
    dom: Vec<usize>,
    val: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawBijection {
    dom: Vec<usize>,
    val: Vec<usize>,
}

impl TryFrom<RawBijection> for PartialBijection {
    type Error = Error;

    fn try_from(raw: RawBijection) -> Result<Self> {
        if raw.dom.len() != raw.val.len() {
            return Err(Error::input("dom and val differ in length"));
        }
        let pairs: Vec<(usize, usize)> = raw.dom.into_iter().zip(raw.val).collect();
        PartialBijection::from_pairs(&pairs)
    }
}

impl From<PartialBijection> for RawBijection {
    fn from(p: PartialBijection) -> Self {
        RawBijection {
            dom: p.dom,
            val: p.val,
        }
    }
}

impl PartialBijection {
    pub fn empty() -> Self {
        PartialBijection::default()
    }

    pub fn identity_on(points: impl IntoIterator<Item = usize>) -> Self {
        let mut dom: Vec<usize> = points.into_iter().collect();
        dom.sort_unstable();
        dom.dedup();
        PartialBijection {
            val: dom.clone(),
            dom,
        }
    }

    /// Builds the map from `(x, image)` pairs; rejects non-functional or
    /// non-injective graphs.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let mut pairs = pairs.to_vec();
        pairs.sort_unstable();
        let mut seen_vals: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        seen_vals.sort_unstable();
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) || seen_vals.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("not a partial bijection"));
        }
        Ok(PartialBijection {
            dom: pairs.iter().map(|p| p.0).collect(),
            val: pairs.iter().map(|p| p.1).collect(),
        })
    }

    pub fn dom(&self) -> &[usize] {
        &self.dom
    }

    pub fn val(&self) -> &[usize] {
        &self.val
    }

    pub fn len(&self) -> usize {
        self.dom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dom.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.dom.iter().copied().zip(self.val.iter().copied())
    }

    /// The range, sorted.
    pub fn ran(&self) -> Vec<usize> {
        let mut r = self.val.clone();
        r.sort_unstable();
        r
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.dom.binary_search(&x).ok().map(|i| self.val[i])
    }

    pub fn in_dom(&self, x: usize) -> bool {
        self.dom.binary_search(&x).is_ok()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PartialBijection) -> PartialBijection {
        let pairs: Vec<(usize, usize)> = other
            .pairs()
            .filter_map(|(x, y)| self.apply(y).map(|z| (x, z)))
            .collect();
        PartialBijection {
            dom: pairs.iter().map(|p| p.0).collect(),
            val: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn inverse(&self) -> PartialBijection {
        let mut pairs: Vec<(usize, usize)> = self.pairs().map(|(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        PartialBijection {
            dom: pairs.iter().map(|p| p.0).collect(),
            val: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn restrict_to(&self, set: &[usize]) -> PartialBijection {
        let pairs: Vec<(usize, usize)> = self.pairs().filter(|(x, _)| set.contains(x)).collect();
        PartialBijection {
            dom: pairs.iter().map(|p| p.0).collect(),
            val: pairs.iter().map(|p| p.1).collect(),
        }
    }

    /// Graph inclusion: `self` is a restriction of `other`.
    pub fn is_restriction_of(&self, other: &PartialBijection) -> bool {
        self.pairs().all(|(x, y)| other.apply(x) == Some(y))
    }

    pub fn label(&self) -> String {
        let body: Vec<String> = self.pairs().map(|(x, y)| format!("{x}:{y}")).collect();
        format!("[{}]", body.join(","))
    }
}

/// The inverse monoid of all partial bijections of `{0, …, n-1}`, as
/// symbolic operations (no table).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricInverse {
    pub n: usize,
}

impl RestrictionOps for SymmetricInverse {
    type Elem = PartialBijection;

    fn one(&self) -> PartialBijection {
        PartialBijection::identity_on(0..self.n)
    }

    fn mul(&self, a: &PartialBijection, b: &PartialBijection) -> PartialBijection {
        a.compose(b)
    }

    fn star(&self, a: &PartialBijection) -> PartialBijection {
        PartialBijection::identity_on(a.dom.iter().copied())
    }

    fn plus(&self, a: &PartialBijection) -> PartialBijection {
        PartialBijection::identity_on(a.val.iter().copied())
    }

    fn inv(&self, a: &PartialBijection) -> Option<PartialBijection> {
        Some(a.inverse())
    }

    fn leq(&self, a: &PartialBijection, b: &PartialBijection) -> bool {
        a.is_restriction_of(b)
    }
}

/// Tabulates a set of partial bijections closed under composition and
/// inversion and containing the identity on `0..n`.
pub(crate) fn tabulate_bijections(n: usize, elems: &[PartialBijection]) -> Result<FiniteBiunary> {
    let index: HashMap<&PartialBijection, usize> =
        elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let ops = SymmetricInverse { n };
    let look = |p: &PartialBijection| {
        index
            .get(p)
            .copied()
            .ok_or_else(|| Error::invalid(format!("set not closed: {} missing", p.label())))
    };
    let size = elems.len();
    let one = look(&ops.one())?;
    let mut mul = Vec::with_capacity(size * size);
    for a in elems {
        for b in elems {
            mul.push(look(&a.compose(b))?);
        }
    }
    let mut star = Vec::with_capacity(size);
    let mut plus = Vec::with_capacity(size);
    let mut inv = Vec::with_capacity(size);
    for a in elems {
        star.push(look(&ops.star(a))?);
        plus.push(look(&ops.plus(a))?);
        inv.push(look(&a.inverse())?);
    }
    check_monoid_table(size, one, &mul)?;
    FiniteBiunary::from_parts_unchecked(size, one, mul, star, plus)
        .with_inverse(inv)?
        .with_labels(elems.iter().map(PartialBijection::label).collect())
}

/// The symmetric inverse monoid on `n` points, elements in sorted order.
pub fn symmetric_inverse_monoid(n: usize) -> Result<(FiniteBiunary, Vec<PartialBijection>)> {
    let mut elems = Vec::new();
    // choose an image (or none) for each point, injectively
    fn go(n: usize, x: usize, used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<PartialBijection>) {
        if x == n {
            out.push(PartialBijection::from_pairs(cur).expect("injective by construction"));
            return;
        }
        go(n, x + 1, used, cur, out);
        for y in 0..n {
            if !used[y] {
                used[y] = true;
                cur.push((x, y));
                go(n, x + 1, used, cur, out);
                cur.pop();
                used[y] = false;
            }
        }
    }
    go(n, 0, &mut vec![false; n], &mut Vec::new(), &mut elems);
    elems.sort();
    let s = tabulate_bijections(n, &elems)?;
    Ok((s, elems))
}

/// The Munn monoid `T_Y` together with its elements as partial bijections
/// of `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MunnMonoid {
    pub algebra: FiniteBiunary,
    pub elements: Vec<PartialBijection>,
}

impl MunnMonoid {
    pub fn index_of(&self, p: &PartialBijection) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }
}

/// All order-isomorphisms between principal ideals of `y`, under
/// composition of partial maps.
pub fn munn_monoid(y: &FiniteSemilattice) -> Result<MunnMonoid> {
    let n = y.size();
    let ideals: Vec<Vec<usize>> = (0..n).map(|e| y.down(e)).collect();
    let mut elems = Vec::new();
    for e in 0..n {
        for f in 0..n {
            if ideals[e].len() != ideals[f].len() {
                continue;
            }
            order_isos(y, &ideals[e], &ideals[f], &mut elems);
        }
    }
    elems.sort();
    elems.dedup();
    let algebra = tabulate_bijections(n, &elems)?;
    Ok(MunnMonoid {
        algebra,
        elements: elems,
    })
}

fn order_isos(y: &FiniteSemilattice, src: &[usize], dst: &[usize], out: &mut Vec<PartialBijection>) {
    fn go(
        y: &FiniteSemilattice,
        src: &[usize],
        dst: &[usize],
        k: usize,
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<PartialBijection>,
    ) {
        if k == src.len() {
            let pairs: Vec<(usize, usize)> = src.iter().copied().zip(img.iter().copied()).collect();
            out.push(PartialBijection::from_pairs(&pairs).expect("bijective"));
            return;
        }
        for (j, &d) in dst.iter().enumerate() {
            if used[j] {
                continue;
            }
            let ok = (0..k).all(|i| {
                y.leq(src[i], src[k]) == y.leq(img[i], d) && y.leq(src[k], src[i]) == y.leq(d, img[i])
            });
            if ok {
                used[j] = true;
                img.push(d);
                go(y, src, dst, k + 1, img, used, out);
                img.pop();
                used[j] = false;
            }
        }
    }
    go(y, src, dst, 0, &mut Vec::new(), &mut vec![false; dst.len()], out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_inverse_on_two_points() {
        let (s, elems) = symmetric_inverse_monoid(2).unwrap();
        assert_eq!(s.size(), 7);
        assert_eq!(elems.len(), 7);
        assert!(s.is_restriction_monoid());
        assert_eq!(s.projection_set().len(), 4);
    }

    #[test]
    fn munn_monoid_small_cases() {
        let t = munn_monoid(&FiniteSemilattice::chain(1)).unwrap();
        assert_eq!(t.algebra.size(), 1);
        // id on {1,e} and id on {e}
        let t = munn_monoid(&FiniteSemilattice::chain(2)).unwrap();
        assert_eq!(t.algebra.size(), 2);
        // three ideals of size 1.. : {⊥}; two atoms' ideals of size 2; top ideal
        // size 1 maps: 1; size-2 ideals: 2x2 = 4; top: id and the swap = 2
        let t = munn_monoid(&FiniteSemilattice::boolean(2)).unwrap();
        assert_eq!(t.algebra.size(), 7);
        let swaps = (0..7)
            .filter(|&x| t.algebra.mul(x, x) != x && t.elements[x].len() == 4)
            .count();
        assert_eq!(swaps, 1);
        assert!(t.algebra.is_restriction_monoid());
    }

    #[test]
    fn inverse_from_group() {
        let g = FiniteInverseMonoid::from_monoid(FiniteMonoid::symmetric_group(3)).unwrap();
        let s = inverse_as_restriction(&g).unwrap();
        assert_eq!(s.projection_set(), vec![s.one()]);
    }

    #[test]
    fn non_inverse_monoid_is_rejected() {
        // full transformation monoid on two points has non-commuting idempotents
        let maps = [[0, 1], [1, 0], [0, 0], [1, 1]];
        let idx = |f: [usize; 2]| maps.iter().position(|&g| g == f).unwrap();
        let rows: Vec<Vec<usize>> = maps
            .iter()
            .map(|a| maps.iter().map(|b| idx([a[b[0]], a[b[1]]])).collect())
            .collect();
        let m = FiniteMonoid::from_rows(4, 0, &rows).unwrap();
        assert!(FiniteInverseMonoid::from_monoid(m).is_err());
    }

    #[test]
    fn bijection_json() {
        let p = PartialBijection::from_pairs(&[(2, 0), (1, 1)]).unwrap();
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"dom":[1,2],"val":[1,0]}"#);
        let q: PartialBijection = serde_json::from_str(&j).unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<PartialBijection>(r#"{"dom":[0,1],"val":[1,1]}"#).is_err());
    }
}
