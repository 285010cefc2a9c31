use std::collections::VecDeque;

use super::FiniteBiunary;
use crate::error::{Error, Result};

/// Default bound on the size of algebras handed to [`find_isomorphism`].
pub const DEFAULT_ISO_LIMIT: usize = 512;

/// The isomorphism-search bound: `RESTRIX_MAX_SIZE` if set and valid,
/// otherwise [`DEFAULT_ISO_LIMIT`].
pub fn default_iso_limit() -> usize {
    std::env::var("RESTRIX_MAX_SIZE")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &usize| v > 0)
        .unwrap_or(DEFAULT_ISO_LIMIT)
}

/// Isomorphism-invariant data attached to each element, used to prune
/// candidate images.
fn profiles(s: &FiniteBiunary) -> Vec<[usize; 8]> {
    let n = s.size();
    let mut above = vec![0; n];
    let mut below = vec![0; n];
    for a in 0..n {
        for b in 0..n {
            if s.leq(a, b) {
                below[b] += 1;
                above[a] += 1;
            }
        }
    }
    let mut star_fibre = vec![0; n];
    let mut plus_fibre = vec![0; n];
    for x in 0..n {
        star_fibre[s.star(x)] += 1;
        plus_fibre[s.plus(x)] += 1;
    }
    (0..n)
        .map(|x| {
            // index and period of the cyclic submonoid
            let mut seen = vec![usize::MAX; n];
            let (mut p, mut k) = (x, 0);
            while seen[p] == usize::MAX {
                seen[p] = k;
                p = s.mul(p, x);
                k += 1;
            }
            let left_fixers = (0..n).filter(|&y| s.mul(y, x) == x).count();
            [
                usize::from(s.star(x) == x),
                usize::from(x == s.one()),
                above[x],
                below[x],
                star_fibre[x] * n + plus_fibre[x],
                seen[p] * n + (k - seen[p]),
                left_fixers,
                usize::from(s.plus(x) == s.star(x)),
            ]
        })
        .collect()
}

/// A small generating set of `s` as a (2,1,1,0)-algebra. Elements high in
/// the natural order are tried first, since the rest lie below them.
pub fn generating_set(s: &FiniteBiunary) -> Vec<usize> {
    let n = s.size();
    let mut order: Vec<usize> = (0..n).collect();
    let above: Vec<usize> = (0..n).map(|a| (0..n).filter(|&b| s.leq(a, b)).count()).collect();
    order.sort_by_key(|&x| (above[x], x));
    let mut gens = Vec::new();
    let mut covered = vec![false; n];
    covered[s.one()] = true;
    for x in order {
        if covered[x] {
            continue;
        }
        gens.push(x);
        covered = closure(s, &gens);
    }
    gens
}

fn closure(s: &FiniteBiunary, gens: &[usize]) -> Vec<bool> {
    let n = s.size();
    let mut seen = vec![false; n];
    let mut list = Vec::new();
    let mut queue = VecDeque::new();
    let push = |x: usize, seen: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
        if !seen[x] {
            seen[x] = true;
            queue.push_back(x);
        }
    };
    push(s.one(), &mut seen, &mut queue);
    for &g in gens {
        push(g, &mut seen, &mut queue);
    }
    while let Some(x) = queue.pop_front() {
        list.push(x);
        push(s.star(x), &mut seen, &mut queue);
        push(s.plus(x), &mut seen, &mut queue);
        for i in 0..list.len() {
            let y = list[i];
            push(s.mul(x, y), &mut seen, &mut queue);
            push(s.mul(y, x), &mut seen, &mut queue);
        }
    }
    seen
}

/// Extends a partial assignment to the subalgebra generated by its domain.
/// Returns false on a conflict, or (when `injective`) on two elements
/// sharing an image.
fn extend_partial(
    src: &FiniteBiunary,
    dst: &FiniteBiunary,
    map: &mut [Option<usize>],
    used: &mut [bool],
    fresh: &[usize],
    injective: bool,
) -> bool {
    let mut queue: VecDeque<usize> = fresh.iter().copied().collect();
    let mut known: Vec<usize> = (0..src.size()).filter(|&x| map[x].is_some()).collect();
    let set = |x: usize, v: usize, map: &mut [Option<usize>], used: &mut [bool], queue: &mut VecDeque<usize>, known: &mut Vec<usize>| -> bool {
        match map[x] {
            Some(w) => w == v,
            None => {
                if injective && used[v] {
                    return false;
                }
                map[x] = Some(v);
                used[v] = true;
                queue.push_back(x);
                known.push(x);
                true
            }
        }
    };
    while let Some(x) = queue.pop_front() {
        let fx = map[x].expect("queued elements are mapped");
        if !set(src.star(x), dst.star(fx), map, used, &mut queue, &mut known)
            || !set(src.plus(x), dst.plus(fx), map, used, &mut queue, &mut known)
        {
            return false;
        }
        if let (Some(si), Some(di)) = (src.inv(), dst.inv()) {
            if !set(si[x], di[fx], map, used, &mut queue, &mut known) {
                return false;
            }
        }
        let mut i = 0;
        while i < known.len() {
            let y = known[i];
            let fy = map[y].expect("known elements are mapped");
            if !set(src.mul(x, y), dst.mul(fx, fy), map, used, &mut queue, &mut known)
                || !set(src.mul(y, x), dst.mul(fy, fx), map, used, &mut queue, &mut known)
            {
                return false;
            }
            i += 1;
        }
    }
    true
}

/// The unique homomorphism sending `gens[i]` to `images[i]`, if it exists.
///
/// Fails with [`Error::Invalid`] when `gens` does not generate `src` or the
/// assignment is inconsistent.
pub fn extend_homomorphism(
    src: &FiniteBiunary,
    gens: &[usize],
    dst: &FiniteBiunary,
    images: &[usize],
) -> Result<Vec<usize>> {
    if gens.len() != images.len() {
        return Err(Error::input("generator and image lists differ in length"));
    }
    let mut map = vec![None; src.size()];
    let mut used = vec![false; dst.size()];
    map[src.one()] = Some(dst.one());
    let mut fresh = vec![src.one()];
    for (&g, &h) in gens.iter().zip(images) {
        if g >= src.size() || h >= dst.size() {
            return Err(Error::input("generator index out of range"));
        }
        match map[g] {
            Some(v) if v != h => {
                return Err(Error::invalid(format!("generator {g} assigned twice")))
            }
            Some(_) => {}
            None => {
                map[g] = Some(h);
                fresh.push(g);
            }
        }
    }
    if !extend_partial(src, dst, &mut map, &mut used, &fresh, false) {
        return Err(Error::invalid("assignment does not extend to a homomorphism"));
    }
    let map: Option<Vec<usize>> = map.into_iter().collect();
    let map = map.ok_or_else(|| Error::invalid("generators do not generate the source"))?;
    if !src.is_homomorphism_to(dst, &map) {
        return Err(Error::violation("homomorphism extension", "closure produced a non-homomorphism"));
    }
    Ok(map)
}

/// An isomorphism `s1 → s2` of (2,1,1,0)-algebras, or `None`, searching
/// within [`default_iso_limit`].
pub fn find_isomorphism(s1: &FiniteBiunary, s2: &FiniteBiunary) -> Result<Option<Vec<usize>>> {
    find_isomorphism_bounded(s1, s2, default_iso_limit())
}

pub fn find_isomorphism_bounded(
    s1: &FiniteBiunary,
    s2: &FiniteBiunary,
    limit: usize,
) -> Result<Option<Vec<usize>>> {
    for s in [s1, s2] {
        if s.size() > limit {
            return Err(Error::SizeLimit {
                size: s.size(),
                limit,
            });
        }
    }
    if s1.size() != s2.size() {
        return Ok(None);
    }
    let (p1, p2) = (profiles(s1), profiles(s2));
    let (mut sorted1, mut sorted2) = (p1.clone(), p2.clone());
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 || p1[s1.one()] != p2[s2.one()] {
        return Ok(None);
    }
    let gens = generating_set(s1);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..s2.size()).filter(|&h| p2[h] == p1[g]).collect())
        .collect();
    let mut map = vec![None; s1.size()];
    let mut used = vec![false; s2.size()];
    map[s1.one()] = Some(s2.one());
    used[s2.one()] = true;
    if !extend_partial(s1, s2, &mut map, &mut used, &[s1.one()], true) {
        return Ok(None);
    }
    if search(s1, s2, &p1, &p2, &gens, &candidates, 0, &mut map, &mut used) {
        let f: Vec<usize> = map.into_iter().map(|v| v.expect("complete")).collect();
        if !s1.is_homomorphism_to(s2, &f) {
            return Err(Error::violation("isomorphism search", "accepted a non-homomorphism"));
        }
        return Ok(Some(f));
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn search(
    s1: &FiniteBiunary,
    s2: &FiniteBiunary,
    p1: &[[usize; 8]],
    p2: &[[usize; 8]],
    gens: &[usize],
    candidates: &[Vec<usize>],
    k: usize,
    map: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if k == gens.len() {
        return map.iter().all(Option::is_some);
    }
    let g = gens[k];
    if map[g].is_some() {
        return search(s1, s2, p1, p2, gens, candidates, k + 1, map, used);
    }
    for &h in &candidates[k] {
        if used[h] {
            continue;
        }
        let (saved_map, saved_used) = (map.clone(), used.clone());
        map[g] = Some(h);
        used[h] = true;
        let ok = extend_partial(s1, s2, map, used, &[g], true)
            && map
                .iter()
                .enumerate()
                .all(|(x, v)| v.is_none_or(|v| p1[x] == p2[v]));
        if ok && search(s1, s2, p1, p2, gens, candidates, k + 1, map, used) {
            return true;
        }
        *map = saved_map;
        *used = saved_used;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteMonoid, FiniteSemilattice};

    fn example_62() -> FiniteBiunary {
        // 0 = 1, 1 = a, 2 = e
        FiniteBiunary::from_rows(
            3,
            0,
            &[vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]],
            vec![0, 2, 2],
            vec![0, 2, 2],
        )
        .unwrap()
    }

    #[test]
    fn self_isomorphism() {
        let s = example_62();
        let f = find_isomorphism(&s, &s).unwrap().unwrap();
        assert_eq!(f, vec![0, 1, 2]);
    }

    #[test]
    fn example_is_not_a_chain() {
        let chain = FiniteBiunary::from_semilattice(&FiniteSemilattice::chain(3));
        assert_eq!(find_isomorphism(&example_62(), &chain).unwrap(), None);
    }

    #[test]
    fn relabelled_group_is_found() {
        let g = FiniteBiunary::reduced(&FiniteMonoid::symmetric_group(3));
        let perm = [0, 3, 5, 1, 4, 2];
        let n = 6;
        let mut inv = [0; 6];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let mul = (0..n * n)
            .map(|k| perm[g.mul(inv[k / n], inv[k % n])])
            .collect();
        let h = FiniteBiunary::from_flat(n, 0, mul, vec![0; n], vec![0; n]).unwrap();
        let f = find_isomorphism(&g, &h).unwrap().unwrap();
        assert!(g.is_homomorphism_to(&h, &f));
    }

    #[test]
    fn size_limit_is_reported() {
        let g = FiniteBiunary::reduced(&FiniteMonoid::cyclic(4));
        assert!(matches!(
            find_isomorphism_bounded(&g, &g, 3),
            Err(Error::SizeLimit { size: 4, limit: 3 })
        ));
    }

    #[test]
    fn extension_rejects_non_generators() {
        let g = FiniteBiunary::reduced(&FiniteMonoid::cyclic(4));
        assert!(extend_homomorphism(&g, &[2], &g, &[2]).is_err());
        let f = extend_homomorphism(&g, &[1], &g, &[3]).unwrap();
        assert_eq!(f, vec![0, 3, 2, 1]);
    }
}
