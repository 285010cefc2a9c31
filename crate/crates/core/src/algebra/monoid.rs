use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite monoid given by its multiplication table.
///
/// Elements are the indices `0..size`. The table is validated on
/// construction: every entry is in range, the product is associative and
/// `one` is a two-sided identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMonoid", into = "RawMonoid")]
pub struct FiniteMonoid {
    size: usize,
    one: usize,
    mul: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawMonoid {
    size: usize,
    one: usize,
    mul: Vec<Vec<usize>>,
}

impl TryFrom<RawMonoid> for FiniteMonoid {
    type Error = Error;

    fn try_from(raw: RawMonoid) -> Result<Self> {
        FiniteMonoid::from_rows(raw.size, raw.one, &raw.mul)
    }
}

impl From<FiniteMonoid> for RawMonoid {
    fn from(m: FiniteMonoid) -> Self {
        RawMonoid {
            size: m.size,
            one: m.one,
            mul: m.rows(),
        }
    }
}

pub(crate) fn flatten_table(size: usize, rows: &[Vec<usize>], what: &str) -> Result<Vec<usize>> {
    if size == 0 {
        return Err(Error::input("size must be positive; monoids are nonempty"));
    }
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(Error::input(format!("{what} table must be {size}x{size}")));
    }
    let flat: Vec<usize> = rows.iter().flatten().copied().collect();
    if let Some(bad) = flat.iter().find(|&&v| v >= size) {
        return Err(Error::input(format!("{what} table entry {bad} out of range")));
    }
    Ok(flat)
}

/// Checks associativity and the identity law of a flat `size × size` table.
pub(crate) fn check_monoid_table(size: usize, one: usize, mul: &[usize]) -> Result<()> {
    if one >= size {
        return Err(Error::input(format!("identity index {one} out of range")));
    }
    for x in 0..size {
        if mul[one * size + x] != x || mul[x * size + one] != x {
            return Err(Error::input(format!(
                "element {one} is not an identity (fails at {x})"
            )));
        }
    }
    for x in 0..size {
        for y in 0..size {
            let xy = mul[x * size + y];
            for z in 0..size {
                if mul[xy * size + z] != mul[x * size + mul[y * size + z]] {
                    return Err(Error::input(format!(
                        "multiplication is not associative at ({x}, {y}, {z})"
                    )));
                }
            }
        }
    }
    Ok(())
}

impl FiniteMonoid {
    pub fn from_rows(size: usize, one: usize, rows: &[Vec<usize>]) -> Result<Self> {
        let mul = flatten_table(size, rows, "multiplication")?;
        check_monoid_table(size, one, &mul)?;
        Ok(FiniteMonoid { size, one, mul })
    }

    pub(crate) fn from_flat_unchecked(size: usize, one: usize, mul: Vec<usize>) -> Self {
        debug_assert_eq!(mul.len(), size * size);
        FiniteMonoid { size, one, mul }
    }

    pub fn from_flat(size: usize, one: usize, mul: Vec<usize>) -> Result<Self> {
        if size == 0 || mul.len() != size * size || mul.iter().any(|&v| v >= size) {
            return Err(Error::input("malformed multiplication table"));
        }
        check_monoid_table(size, one, &mul)?;
        Ok(FiniteMonoid { size, one, mul })
    }

    pub fn trivial() -> Self {
        FiniteMonoid::from_flat_unchecked(1, 0, vec![0])
    }

    /// The cyclic group `Z_n` with `0` as identity and `i·j = i+j mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteMonoid::from_flat_unchecked(n, 0, mul)
    }

    /// The monoid `{1, a}` with `a² = a`.
    pub fn idempotent_pair() -> Self {
        FiniteMonoid::from_flat_unchecked(2, 0, vec![0, 1, 1, 1])
    }

    /// The symmetric group on `n` points; element 0 is the identity and
    /// permutations are listed in lexicographic order. `(στ)(i) = σ(τ(i))`.
    pub fn symmetric_group(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let size = perms.len();
        let mut mul = vec![0; size * size];
        for (i, s) in perms.iter().enumerate() {
            for (j, t) in perms.iter().enumerate() {
                let st: Vec<usize> = (0..n).map(|k| s[t[k]]).collect();
                mul[i * size + j] = index(&st);
            }
        }
        FiniteMonoid::from_flat_unchecked(size, 0, mul)
    }

    /// Direct product; the pair `(a, b)` has index `a * other.size + b`.
    pub fn direct_product(&self, other: &FiniteMonoid) -> FiniteMonoid {
        let size = self.size * other.size;
        let mut mul = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                let (a1, b1) = (x / other.size, x % other.size);
                let (a2, b2) = (y / other.size, y % other.size);
                mul[x * size + y] = self.mul(a1, a2) * other.size + other.mul(b1, b2);
            }
        }
        FiniteMonoid::from_flat_unchecked(size, self.one * other.size + other.one, mul)
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

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// The two-sided inverse of `x`, if it has one.
    pub fn unit_inverse(&self, x: usize) -> Option<usize> {
        self.elements()
            .find(|&y| self.mul(x, y) == self.one && self.mul(y, x) == self.one)
    }

    pub fn is_group(&self) -> bool {
        self.elements().all(|x| self.unit_inverse(x).is_some())
    }

    /// `pm = pn ⇒ m = n`.
    pub fn is_left_cancellative(&self) -> bool {
        self.elements().all(|p| {
            let mut seen = vec![false; self.size];
            self.elements().all(|m| !std::mem::replace(&mut seen[self.mul(p, m)], true))
        })
    }

    /// `mp = np ⇒ m = n`.
    pub fn is_right_cancellative(&self) -> bool {
        self.elements().all(|p| {
            let mut seen = vec![false; self.size];
            self.elements().all(|m| !std::mem::replace(&mut seen[self.mul(m, p)], true))
        })
    }

    pub fn is_cancellative(&self) -> bool {
        self.is_left_cancellative() && self.is_right_cancellative()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Whether `f` is a monoid homomorphism from `self` to `target`.
    pub fn is_homomorphism_to(&self, target: &FiniteMonoid, f: &[usize]) -> bool {
        f.len() == self.size
            && f.iter().all(|&v| v < target.size)
            && f[self.one] == target.one
            && self.elements().all(|x| {
                self.elements()
                    .all(|y| f[self.mul(x, y)] == target.mul(f[x], f[y]))
            })
    }

    /// All monoids with `n` elements up to isomorphism, identity at index 0.
    /// Practical for `n ≤ 4`.
    pub fn all_of_order(n: usize) -> Vec<FiniteMonoid> {
        assert!(n >= 1);
        if n == 1 {
            return vec![FiniteMonoid::trivial()];
        }
        let free = (n - 1) * (n - 1);
        let mut found: Vec<FiniteMonoid> = Vec::new();
        let mut cells = vec![0usize; free];
        'outer: loop {
            let mut mul = vec![0; n * n];
            for x in 0..n {
                mul[x] = x;
                mul[x * n] = x;
            }
            for (k, &v) in cells.iter().enumerate() {
                let (x, y) = (k / (n - 1) + 1, k % (n - 1) + 1);
                mul[x * n + y] = v;
            }
            if check_monoid_table(n, 0, &mul).is_ok() {
                let m = FiniteMonoid::from_flat_unchecked(n, 0, mul);
                if !found.iter().any(|f| monoids_isomorphic(f, &m)) {
                    found.push(m);
                }
            }
            for c in cells.iter_mut() {
                *c += 1;
                if *c < n {
                    continue 'outer;
                }
                *c = 0;
            }
            break;
        }
        found
    }
}

fn monoids_isomorphic(a: &FiniteMonoid, b: &FiniteMonoid) -> bool {
    if a.size != b.size {
        return false;
    }
    let n = a.size;
    permutations(n).into_iter().any(|p| {
        p[a.one] == b.one
            && (0..n).all(|x| (0..n).all(|y| p[a.mul(x, y)] == b.mul(p[x], p[y])))
    })
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
