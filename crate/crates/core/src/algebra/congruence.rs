use serde::{Deserialize, Serialize};

use super::FiniteBiunary;
use crate::error::{Error, Result};

/// Disjoint-set forest with path halving. The root of a class is always its
/// smallest member, which keeps class numbering deterministic.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        id
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Read-only lookup without compression.
    pub fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; true if they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// An equivalence on `0..size`, meant to be compatible with the operations
/// of some algebra. Classes are numbered by their smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Congruence {
    class_of: Vec<usize>,
    count: usize,
}

impl TryFrom<Vec<Vec<usize>>> for Congruence {
    type Error = Error;

    fn try_from(classes: Vec<Vec<usize>>) -> Result<Self> {
        let size: usize = classes.iter().map(Vec::len).sum();
        let mut uf = UnionFind::new(size);
        let mut seen = vec![false; size];
        for class in &classes {
            if class.is_empty() {
                return Err(Error::input("empty congruence class"));
            }
            for &x in class {
                if x >= size || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::input("classes must partition 0..size"));
                }
                uf.union(class[0], x);
            }
        }
        Ok(Congruence::from_union_find(&mut uf))
    }
}

impl From<Congruence> for Vec<Vec<usize>> {
    fn from(c: Congruence) -> Self {
        c.classes()
    }
}

impl Congruence {
    pub fn discrete(n: usize) -> Self {
        Congruence {
            class_of: (0..n).collect(),
            count: n,
        }
    }

    pub fn from_union_find(uf: &mut UnionFind) -> Self {
        let n = uf.len();
        let mut id_of_root = vec![usize::MAX; n];
        let mut class_of = vec![0; n];
        let mut count = 0;
        for x in 0..n {
            let r = uf.find(x);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = count;
                count += 1;
            }
            class_of[x] = id_of_root[r];
        }
        Congruence { class_of, count }
    }

    /// Builds the partition whose class labels are `labels` (any values).
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut first = std::collections::HashMap::new();
        let mut uf = UnionFind::new(labels.len());
        for (x, l) in labels.iter().enumerate() {
            let rep = *first.entry(l).or_insert(x);
            uf.union(rep, x);
        }
        Congruence::from_union_find(&mut uf)
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.count
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| !self.same(a, b) || other.same(a, b)))
    }

    /// Whether the class of every operation result depends only on the
    /// classes of the arguments.
    pub fn is_compatible_with(&self, s: &FiniteBiunary) -> bool {
        let n = s.size();
        if n != self.size() {
            return false;
        }
        let reps: Vec<usize> = self.classes().iter().map(|c| c[0]).collect();
        (0..n).all(|x| {
            let r = reps[self.class_of[x]];
            self.same(s.star(x), s.star(r))
                && self.same(s.plus(x), s.plus(r))
                && (0..n).all(|c| {
                    self.same(s.mul(c, x), s.mul(c, r)) && self.same(s.mul(x, c), s.mul(r, c))
                })
        })
    }
}

/// Closes `uf` to the least congruence of `s` containing it.
fn close(s: &FiniteBiunary, uf: &mut UnionFind) {
    let n = s.size();
    loop {
        let mut changed = false;
        for x in 0..n {
            let r = uf.find(x);
            if r == x {
                continue;
            }
            changed |= uf.union(s.star(x), s.star(r));
            changed |= uf.union(s.plus(x), s.plus(r));
            for c in 0..n {
                changed |= uf.union(s.mul(c, x), s.mul(c, r));
                changed |= uf.union(s.mul(x, c), s.mul(r, c));
            }
        }
        if !changed {
            break;
        }
    }
}

impl FiniteBiunary {
    /// The least congruence containing the given pairs.
    pub fn congruence_generated_by(&self, pairs: &[(usize, usize)]) -> Result<Congruence> {
        let mut uf = UnionFind::new(self.size());
        for &(a, b) in pairs {
            if a >= self.size() || b >= self.size() {
                return Err(Error::input(format!("pair ({a}, {b}) out of range")));
            }
            uf.union(a, b);
        }
        close(self, &mut uf);
        Ok(Congruence::from_union_find(&mut uf))
    }

    /// The least congruence identifying all projections.
    ///
    /// Computed by closure from `P(S) × P(S)` and cross-checked against
    /// both one-sided characterizations (`ea = eb`, `ae = be` for some
    /// projection `e`).
    pub fn sigma(&self) -> Result<Congruence> {
        self.require_restriction()?;
        let proj = self.projection_set();
        let seeds: Vec<(usize, usize)> = proj.iter().map(|&e| (self.one(), e)).collect();
        let sigma = self.congruence_generated_by(&seeds)?;
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                let left = proj.iter().any(|&e| self.mul(e, a) == self.mul(e, b));
                let right = proj.iter().any(|&e| self.mul(a, e) == self.mul(b, e));
                if left != sigma.same(a, b) || right != sigma.same(a, b) {
                    return Err(Error::violation(
                        "characterizations of sigma",
                        format!("disagree at ({a}, {b})"),
                    ));
                }
            }
        }
        Ok(sigma)
    }

    /// The quotient algebra; element `k` is class `k` of `c`.
    pub fn quotient(&self, c: &Congruence) -> Result<FiniteBiunary> {
        if !c.is_compatible_with(self) {
            return Err(Error::invalid("partition is not a congruence of the algebra"));
        }
        let k = c.class_count();
        let reps: Vec<usize> = c.classes().iter().map(|cl| cl[0]).collect();
        let mut mul = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                mul[i * k + j] = c.class_of(self.mul(reps[i], reps[j]));
            }
        }
        let star = reps.iter().map(|&r| c.class_of(self.star(r))).collect();
        let plus = reps.iter().map(|&r| c.class_of(self.plus(r))).collect();
        FiniteBiunary::from_flat(k, c.class_of(self.one()), mul, star, plus)
    }

    /// Every congruence of the algebra, by enumerating set partitions.
    /// Exponential; meant for instances of size at most 8 or so.
    pub fn all_congruences(&self) -> Vec<Congruence> {
        let n = self.size();
        let mut out = Vec::new();
        let mut labels = vec![0usize; n];
        fn go(s: &FiniteBiunary, k: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Congruence>) {
            if k == labels.len() {
                let c = Congruence::from_labels(labels);
                if c.is_compatible_with(s) {
                    out.push(c);
                }
                return;
            }
            for l in 0..=max {
                labels[k] = l;
                go(s, k + 1, max.max(l + 1), labels, out);
            }
        }
        if n > 0 {
            labels[0] = 0;
            go(self, 1, 1, &mut labels, &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteMonoid;

    #[test]
    fn union_find_keeps_smallest_root() {
        let mut uf = UnionFind::new(5);
        uf.union(4, 2);
        uf.union(2, 3);
        assert_eq!(uf.find(4), 2);
        uf.union(3, 0);
        assert_eq!(uf.find(4), 0);
        let c = Congruence::from_union_find(&mut uf);
        assert_eq!(c.classes(), vec![vec![0, 2, 3, 4], vec![1]]);
    }

    #[test]
    fn quotient_by_discrete_is_a_copy() {
        let s = FiniteBiunary::reduced(&FiniteMonoid::cyclic(3));
        let q = s.quotient(&Congruence::discrete(3)).unwrap();
        assert_eq!(q, s);
    }

    #[test]
    fn quotient_rejects_non_congruence() {
        let s = FiniteBiunary::reduced(&FiniteMonoid::cyclic(3));
        let c: Congruence = vec![vec![0, 1], vec![2]].try_into().unwrap();
        assert!(matches!(s.quotient(&c), Err(Error::Invalid(_))));
    }

    #[test]
    fn congruences_of_z4() {
        // subgroups of Z4: trivial, {0,2}, whole
        let s = FiniteBiunary::reduced(&FiniteMonoid::cyclic(4));
        assert_eq!(s.all_congruences().len(), 3);
    }
}
