use serde::{Deserialize, Serialize};

use super::monoid::flatten_table;
use crate::error::{Error, Result};

/// A finite meet-semilattice with a top element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSemilattice", into = "RawSemilattice")]
pub struct FiniteSemilattice {
    size: usize,
    top: usize,
    meet: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawSemilattice {
    size: usize,
    meet: Vec<Vec<usize>>,
    top: usize,
}

impl TryFrom<RawSemilattice> for FiniteSemilattice {
    type Error = Error;

    fn try_from(raw: RawSemilattice) -> Result<Self> {
        let meet = flatten_table(raw.size, &raw.meet, "meet")?;
        FiniteSemilattice::from_flat(raw.size, raw.top, meet)
    }
}

impl From<FiniteSemilattice> for RawSemilattice {
    fn from(s: FiniteSemilattice) -> Self {
        RawSemilattice {
            size: s.size,
            meet: s.meet.chunks(s.size).map(|r| r.to_vec()).collect(),
            top: s.top,
        }
    }
}

impl FiniteSemilattice {
    pub fn from_flat(size: usize, top: usize, meet: Vec<usize>) -> Result<Self> {
        if size == 0 || meet.len() != size * size || meet.iter().any(|&v| v >= size) {
            return Err(Error::input("malformed meet table"));
        }
        if top >= size {
            return Err(Error::input("top index out of range"));
        }
        let m = |a: usize, b: usize| meet[a * size + b];
        for x in 0..size {
            if m(x, x) != x {
                return Err(Error::input(format!("meet is not idempotent at {x}")));
            }
            if m(top, x) != x {
                return Err(Error::input(format!("{top} is not a top element (fails at {x})")));
            }
            for y in 0..size {
                if m(x, y) != m(y, x) {
                    return Err(Error::input(format!("meet is not commutative at ({x}, {y})")));
                }
                for z in 0..size {
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return Err(Error::input(format!(
                            "meet is not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteSemilattice { size, top, meet })
    }

    /// The chain `0 > 1 > … > n-1` with top 0.
    pub fn chain(n: usize) -> Self {
        let meet = (0..n * n).map(|k| (k / n).max(k % n)).collect();
        FiniteSemilattice { size: n, top: 0, meet }
    }

    /// Subsets of an `n`-set under intersection; element `k` is the bitmask
    /// `full ^ k`, so index 0 is the top (the full set).
    pub fn boolean(n: usize) -> Self {
        let size = 1usize << n;
        let full = size - 1;
        let mut meet = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                meet[a * size + b] = full ^ ((full ^ a) & (full ^ b));
            }
        }
        FiniteSemilattice { size, top: 0, meet }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    /// The principal ideal `e↓`, ascending by index.
    pub fn down(&self, e: usize) -> Vec<usize> {
        (0..self.size).filter(|&x| self.leq(x, e)).collect()
    }

    pub fn is_order_ideal(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.size];
        for &x in set {
            member[x] = true;
        }
        set.iter()
            .all(|&x| (0..self.size).all(|y| !self.leq(y, x) || member[y]))
    }

    /// As a monoid under meet, with the top as identity.
    pub fn as_monoid(&self) -> super::FiniteMonoid {
        super::FiniteMonoid::from_flat_unchecked(self.size, self.top, self.meet.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_are_semilattices() {
        let c = FiniteSemilattice::chain(3);
        assert!(c.leq(2, 0) && !c.leq(0, 2));
        let d = FiniteSemilattice::boolean(2);
        assert_eq!(d.size(), 4);
        assert_eq!(d.meet(1, 2), 3);
        assert_eq!(d.down(0).len(), 4);
        assert!(d.is_order_ideal(&[1, 3]));
        assert!(!d.is_order_ideal(&[1]));
        let again = FiniteSemilattice::from_flat(4, 0, d.meet.clone()).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn rejects_non_semilattice() {
        // {0,1} with 0∧1 = 1 but 1∧0 = 0
        assert!(FiniteSemilattice::from_flat(2, 0, vec![0, 1, 0, 1]).is_err());
        assert!(FiniteSemilattice::from_flat(2, 1, vec![0, 1, 1, 1]).is_err());
    }
}
