//! Bounded enumeration of `FR_R(M)` and `FI_R(M)` from their presentations.
//!
//! The enumerator keeps a partial algebra of classes of terms. It defines
//! missing table entries breadth-first (up to a term-depth bound), and
//! between rounds it applies every identity of the variety at every tuple
//! of classes, together with the ground relations of the presentation,
//! merging classes that must coincide and filling entries whose value is
//! forced. Once the tables are complete and no identity instance changes
//! anything, the partial algebra is an algebra of the variety satisfying
//! the relations in which every identification was derived, so it is
//! exactly the presented object.

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteBiunary, FiniteMonoid, Term};
use crate::error::{Error, Result};

/// Built-in sets of admissible relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationTag {
    Pm,
    Ls,
    Rs,
    S,
    Hom,
}

impl RelationTag {
    pub const ALL: [RelationTag; 5] = [
        RelationTag::Pm,
        RelationTag::Ls,
        RelationTag::Rs,
        RelationTag::S,
        RelationTag::Hom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationTag::Pm => "pm",
            RelationTag::Ls => "ls",
            RelationTag::Rs => "rs",
            RelationTag::S => "s",
            RelationTag::Hom => "hom",
        }
    }

    /// Whether every relation of `self` holds in the expansion for `other`;
    /// `pm ≤ ls, rs ≤ s ≤ hom`.
    pub fn implied_by(self, other: RelationTag) -> bool {
        use RelationTag::*;
        matches!(
            (self, other),
            (Pm, _) | (Ls, Ls | S | Hom) | (Rs, Rs | S | Hom) | (S, S | Hom) | (Hom, Hom)
        )
    }
}

impl std::str::FromStr for RelationTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::input(format!("unknown relation set '{s}' (pm|ls|rs|s|hom)")))
    }
}

impl std::fmt::Display for RelationTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// `⌊m⌋e = ⌊m⌋f` with `e`, `f` projection terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraRelation {
    pub m: usize,
    pub e: Term,
    pub f: Term,
}

impl ExtraRelation {
    pub fn validate(&self, monoid: &FiniteMonoid) -> Result<()> {
        let mut gens = Vec::new();
        self.e.generators(&mut gens);
        self.f.generators(&mut gens);
        gens.push(self.m);
        if let Some(g) = gens.iter().find(|&&g| g >= monoid.size()) {
            return Err(Error::input(format!("generator [{g}] is not an element of M")));
        }
        for t in [&self.e, &self.f] {
            if !t.is_projection_term() {
                return Err(Error::input(format!(
                    "'{t}' is not a projection term; extra relations must read [m]e = [m]f \
                     with e, f built from 1, products and * or + applied to terms"
                )));
            }
        }
        Ok(())
    }

    pub fn sides(&self) -> (Term, Term) {
        (
            Term::mul(Term::gen(self.m), self.e.clone()),
            Term::mul(Term::gen(self.m), self.f.clone()),
        )
    }
}

/// Which algebra is presented: `FR_R(M)` or `FI_R(M)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Signature {
    #[default]
    Restriction,
    Inverse,
}

pub const DEFAULT_BOUND: usize = 6;
pub const DEFAULT_MAX_ELEMENTS: usize = 2000;

fn default_bound() -> usize {
    DEFAULT_BOUND
}

fn default_max_elements() -> usize {
    DEFAULT_MAX_ELEMENTS
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedExpansion {
    pub monoid: FiniteMonoid,
    pub relations: RelationTag,
    #[serde(default)]
    pub extra: Vec<ExtraRelation>,
    #[serde(default = "default_bound")]
    pub bound: usize,
    #[serde(default)]
    pub signature: Signature,
    /// Cap on the number of live classes during enumeration.
    #[serde(default = "default_max_elements")]
    pub max_elements: usize,
}

impl PresentedExpansion {
    pub fn new(monoid: FiniteMonoid, relations: RelationTag) -> Self {
        PresentedExpansion {
            monoid,
            relations,
            extra: Vec::new(),
            bound: DEFAULT_BOUND,
            signature: Signature::Restriction,
            max_elements: DEFAULT_MAX_ELEMENTS,
        }
    }

    pub fn inverse(mut self) -> Self {
        self.signature = Signature::Inverse;
        self
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }

    /// The ground relation instances, in the restriction signature.
    pub fn relation_instances(&self) -> Result<Vec<(Term, Term)>> {
        let m = &self.monoid;
        let g = Term::gen;
        let mut out = vec![(g(m.one()), Term::One)];
        for a in m.elements() {
            for b in m.elements() {
                let ab = Term::mul(g(a), g(b));
                let c = m.mul(a, b);
                out.push((ab.clone(), Term::mul(ab.clone().plus(), g(c))));
                let ls = (ab.clone(), Term::mul(g(a).plus(), g(c)));
                let rs = (ab.clone(), Term::mul(g(c), g(b).star()));
                match self.relations {
                    RelationTag::Pm => {}
                    RelationTag::Ls => out.push(ls),
                    RelationTag::Rs => out.push(rs),
                    RelationTag::S => out.extend([ls, rs]),
                    RelationTag::Hom => out.push((ab, g(c))),
                }
            }
        }
        for x in &self.extra {
            x.validate(m)?;
            out.push(x.sides());
        }
        Ok(out)
    }
}

/// A closed enumeration: the algebra and the image of each `⌊m⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedModel {
    pub algebra: FiniteBiunary,
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Enumeration {
    Closed(ClosedModel),
    /// Live classes when the bound or the element cap stopped the search.
    Exceeded { partial: usize, reason: String },
}

impl Enumeration {
    pub fn closed(&self) -> Option<&ClosedModel> {
        match self {
            Enumeration::Closed(c) => Some(c),
            Enumeration::Exceeded { .. } => None,
        }
    }

    pub fn into_closed(self) -> Option<ClosedModel> {
        match self {
            Enumeration::Closed(c) => Some(c),
            Enumeration::Exceeded { .. } => None,
        }
    }
}

const NONE: u32 = u32::MAX;

/// Identity patterns over variables and `1`. `U1` is `*` in the
/// restriction signature and `⁻¹` in the inverse one; `U2` is `⁺`.
#[derive(Clone, Debug)]
enum Pat {
    X(usize),
    One,
    Mul(Box<Pat>, Box<Pat>),
    U1(Box<Pat>),
    U2(Box<Pat>),
}

fn x(i: usize) -> Pat {
    Pat::X(i)
}
fn mul(a: Pat, b: Pat) -> Pat {
    Pat::Mul(Box::new(a), Box::new(b))
}
fn u1(a: Pat) -> Pat {
    Pat::U1(Box::new(a))
}
fn u2(a: Pat) -> Pat {
    Pat::U2(Box::new(a))
}

struct Identity {
    vars: usize,
    lhs: Pat,
    rhs: Pat,
}

fn id(vars: usize, lhs: Pat, rhs: Pat) -> Identity {
    Identity { vars, lhs, rhs }
}

fn restriction_identities() -> Vec<Identity> {
    let (s, p) = (u1, u2);
    vec![
        id(1, mul(x(0), s(x(0))), x(0)),
        id(1, mul(p(x(0)), x(0)), x(0)),
        id(1, s(p(x(0))), p(x(0))),
        id(1, p(s(x(0))), s(x(0))),
        id(1, s(s(x(0))), s(x(0))),
        id(1, p(p(x(0))), p(x(0))),
        id(1, mul(s(x(0)), s(x(0))), s(x(0))),
        id(1, mul(p(x(0)), p(x(0))), p(x(0))),
        id(1, mul(x(0), Pat::One), x(0)),
        id(1, mul(Pat::One, x(0)), x(0)),
        id(2, mul(s(x(0)), s(x(1))), mul(s(x(1)), s(x(0)))),
        id(2, mul(p(x(0)), p(x(1))), mul(p(x(1)), p(x(0)))),
        id(2, s(mul(x(0), s(x(1)))), mul(s(x(0)), s(x(1)))),
        id(2, p(mul(p(x(0)), x(1))), mul(p(x(0)), p(x(1)))),
        id(2, mul(s(x(0)), x(1)), mul(x(1), s(mul(x(0), x(1))))),
        id(2, mul(x(0), p(x(1))), mul(p(mul(x(0), x(1))), x(0))),
        id(2, s(mul(x(0), x(1))), s(mul(s(x(0)), x(1)))),
        id(2, p(mul(x(0), x(1))), p(mul(x(0), p(x(1))))),
    ]
}

fn inverse_identities() -> Vec<Identity> {
    let i = u1;
    vec![
        id(1, mul(mul(x(0), i(x(0))), x(0)), x(0)),
        id(1, i(i(x(0))), x(0)),
        id(1, mul(mul(x(0), i(x(0))), mul(x(0), i(x(0)))), mul(x(0), i(x(0)))),
        id(1, mul(x(0), Pat::One), x(0)),
        id(1, mul(Pat::One, x(0)), x(0)),
        id(2, i(mul(x(0), x(1))), mul(i(x(1)), i(x(0)))),
        id(
            2,
            mul(mul(x(0), i(x(0))), mul(x(1), i(x(1)))),
            mul(mul(x(1), i(x(1))), mul(x(0), i(x(0)))),
        ),
    ]
}

enum Root {
    Val(u32),
    Mul(u32, u32),
    U1(u32),
    U2(u32),
    Unknown,
}

struct Enumerator {
    sig: Signature,
    cap: usize,
    bound: usize,
    parent: Vec<u32>,
    depth: Vec<u32>,
    alive: Vec<bool>,
    mul: Vec<u32>,
    un1: Vec<u32>,
    un2: Vec<u32>,
    pending: Vec<(u32, u32)>,
    changed: bool,
    overflow: bool,
    one: u32,
}

impl Enumerator {
    fn new(sig: Signature, cap: usize, bound: usize) -> Self {
        let mut e = Enumerator {
            sig,
            cap,
            bound,
            parent: Vec::new(),
            depth: Vec::new(),
            alive: Vec::new(),
            mul: vec![NONE; cap * cap],
            un1: Vec::new(),
            un2: Vec::new(),
            pending: Vec::new(),
            changed: false,
            overflow: false,
            one: 0,
        };
        let one = e.fresh(0).expect("cap is positive");
        e.one = one;
        e.set_u1(one, one);
        if sig == Signature::Restriction {
            e.set_u2(one, one);
        }
        e
    }

    fn n(&self) -> usize {
        self.parent.len()
    }

    fn live(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    fn fresh(&mut self, depth: u32) -> Option<u32> {
        if self.n() >= self.cap {
            self.overflow = true;
            return None;
        }
        let c = self.n() as u32;
        self.parent.push(c);
        self.depth.push(depth);
        self.alive.push(true);
        self.un1.push(NONE);
        self.un2.push(NONE);
        self.changed = true;
        Some(c)
    }

    fn find(&mut self, mut a: u32) -> u32 {
        while self.parent[a as usize] != a {
            let gp = self.parent[self.parent[a as usize] as usize];
            self.parent[a as usize] = gp;
            a = gp;
        }
        a
    }

    fn get_mul(&mut self, a: u32, b: u32) -> Option<u32> {
        let (a, b) = (self.find(a), self.find(b));
        let v = self.mul[a as usize * self.cap + b as usize];
        (v != NONE).then(|| self.find(v))
    }

    fn get_u1(&mut self, a: u32) -> Option<u32> {
        let a = self.find(a);
        let v = self.un1[a as usize];
        (v != NONE).then(|| self.find(v))
    }

    fn get_u2(&mut self, a: u32) -> Option<u32> {
        let a = self.find(a);
        let v = self.un2[a as usize];
        (v != NONE).then(|| self.find(v))
    }

    fn set_mul(&mut self, a: u32, b: u32, v: u32) {
        let (a, b, v) = (self.find(a), self.find(b), self.find(v));
        let k = a as usize * self.cap + b as usize;
        let old = self.mul[k];
        if old == NONE {
            self.mul[k] = v;
            self.changed = true;
        } else {
            self.pending.push((old, v));
        }
    }

    fn set_u1(&mut self, a: u32, v: u32) {
        let (a, v) = (self.find(a), self.find(v));
        let old = self.un1[a as usize];
        if old == NONE {
            self.un1[a as usize] = v;
            self.changed = true;
        } else {
            self.pending.push((old, v));
        }
    }

    fn set_u2(&mut self, a: u32, v: u32) {
        let (a, v) = (self.find(a), self.find(v));
        let old = self.un2[a as usize];
        if old == NONE {
            self.un2[a as usize] = v;
            self.changed = true;
        } else {
            self.pending.push((old, v));
        }
    }

    /// Coincidence processing: merge the larger root into the smaller and
    /// move its table entries over, queueing any conflicts.
    fn process(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi as usize] = lo;
            self.alive[hi as usize] = false;
            self.depth[lo as usize] = self.depth[lo as usize].min(self.depth[hi as usize]);
            self.changed = true;
            let cap = self.cap;
            let h = hi as usize;
            for j in 0..self.n() {
                if !self.alive[j] && j != h {
                    continue;
                }
                let row = self.mul[h * cap + j];
                if row != NONE {
                    self.mul[h * cap + j] = NONE;
                    self.set_mul(lo, j as u32, row);
                }
                let col = self.mul[j * cap + h];
                if col != NONE {
                    self.mul[j * cap + h] = NONE;
                    self.set_mul(j as u32, lo, col);
                }
            }
            let u = std::mem::replace(&mut self.un1[h], NONE);
            if u != NONE {
                self.set_u1(lo, u);
            }
            let u = std::mem::replace(&mut self.un2[h], NONE);
            if u != NONE {
                self.set_u2(lo, u);
            }
        }
    }

    fn eval(&mut self, p: &Pat, env: &[u32]) -> Option<u32> {
        match self.eval_root(p, env) {
            Root::Val(v) => Some(v),
            _ => None,
        }
    }

    fn eval_root(&mut self, p: &Pat, env: &[u32]) -> Root {
        match p {
            Pat::X(i) => Root::Val(self.find(env[*i])),
            Pat::One => Root::Val(self.find(self.one)),
            Pat::Mul(a, b) => {
                let (Some(a), Some(b)) = (self.eval(a, env), self.eval(b, env)) else {
                    return Root::Unknown;
                };
                match self.get_mul(a, b) {
                    Some(v) => Root::Val(v),
                    None => Root::Mul(a, b),
                }
            }
            Pat::U1(a) => {
                let Some(a) = self.eval(a, env) else {
                    return Root::Unknown;
                };
                match self.get_u1(a) {
                    Some(v) => Root::Val(v),
                    None => Root::U1(a),
                }
            }
            Pat::U2(a) => {
                let Some(a) = self.eval(a, env) else {
                    return Root::Unknown;
                };
                match self.get_u2(a) {
                    Some(v) => Root::Val(v),
                    None => Root::U2(a),
                }
            }
        }
    }

    fn fill(&mut self, r: Root, v: u32) {
        match r {
            Root::Mul(a, b) => self.set_mul(a, b, v),
            Root::U1(a) => self.set_u1(a, v),
            Root::U2(a) => self.set_u2(a, v),
            Root::Val(w) => {
                if self.find(w) != self.find(v) {
                    self.pending.push((w, v));
                }
            }
            Root::Unknown => {}
        }
        self.process();
    }

    fn apply(&mut self, lhs: &Pat, rhs: &Pat, env: &[u32]) {
        let l = self.eval_root(lhs, env);
        let r = self.eval_root(rhs, env);
        match (l, r) {
            (Root::Val(a), r) => self.fill(r, a),
            (l, Root::Val(b)) => self.fill(l, b),
            _ => {}
        }
    }

    fn live_list(&self) -> Vec<u32> {
        (0..self.n() as u32).filter(|&c| self.alive[c as usize]).collect()
    }

    /// Generators, and the images of the unary operation(s), of which every
    /// element is a product.
    fn atoms(&mut self, gens: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = gens.iter().map(|&g| self.find(g)).collect();
        let live = self.live_list();
        for c in live {
            match self.sig {
                Signature::Restriction => {
                    for v in [self.get_u1(c), self.get_u2(c)].into_iter().flatten() {
                        out.push(v);
                    }
                }
                Signature::Inverse => {}
            }
        }
        if self.sig == Signature::Inverse {
            let inv: Vec<u32> = gens.iter().filter_map(|&g| self.get_u1(g)).collect();
            out.extend(inv);
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// One sweep of all identity instances, relations and associativity
    /// against atoms.
    fn sweep(&mut self, ids: &[Identity], rels: &[(Pat, Pat)], gens: &[u32]) {
        for (l, r) in rels {
            self.apply(l, r, gens);
        }
        let live = self.live_list();
        for idn in ids {
            match idn.vars {
                1 => {
                    for &a in &live {
                        if self.alive[a as usize] {
                            self.apply(&idn.lhs, &idn.rhs, &[a]);
                        }
                    }
                }
                _ => {
                    for &a in &live {
                        for &b in &live {
                            if self.alive[a as usize] && self.alive[b as usize] {
                                self.apply(&idn.lhs, &idn.rhs, &[a, b]);
                            }
                        }
                    }
                }
            }
        }
        let atoms = self.atoms(gens);
        let left = mul(mul(x(0), x(1)), x(2));
        let right = mul(x(0), mul(x(1), x(2)));
        let live = self.live_list();
        for &a in &live {
            for &b in &live {
                for &z in &atoms {
                    if self.alive[a as usize] && self.alive[b as usize] {
                        self.apply(&left, &right, &[a, b, z]);
                        self.apply(&left, &right, &[z, a, b]);
                    }
                }
            }
        }
    }

    fn deduce(&mut self, ids: &[Identity], rels: &[(Pat, Pat)], gens: &[u32]) {
        loop {
            self.changed = false;
            self.sweep(ids, rels, gens);
            if !self.changed {
                break;
            }
        }
    }

    /// Defines up to `budget` missing entries, breadth-first. Returns the
    /// number defined and whether some entry was blocked by the bound.
    fn define(&mut self, budget: usize) -> (usize, bool) {
        let live = self.live_list();
        let mut defined = 0;
        let mut blocked = false;
        for (pos, &i) in live.iter().enumerate() {
            let entries = {
                let mut e: Vec<Root> = Vec::new();
                if self.get_u1(i).is_none() {
                    e.push(Root::U1(i));
                }
                if self.sig == Signature::Restriction && self.get_u2(i).is_none() {
                    e.push(Root::U2(i));
                }
                for &j in &live[..=pos] {
                    if self.get_mul(i, j).is_none() {
                        e.push(Root::Mul(i, j));
                    }
                    if j != i && self.get_mul(j, i).is_none() {
                        e.push(Root::Mul(j, i));
                    }
                }
                e
            };
            for r in entries {
                let d = match r {
                    Root::Mul(a, b) => {
                        let (a, b) = (self.find(a), self.find(b));
                        if self.get_mul(a, b).is_some() {
                            continue;
                        }
                        1 + self.depth[a as usize].max(self.depth[b as usize])
                    }
                    Root::U1(a) => {
                        if self.get_u1(a).is_some() {
                            continue;
                        }
                        let a = self.find(a);
                        1 + self.depth[a as usize]
                    }
                    Root::U2(a) => {
                        if self.get_u2(a).is_some() {
                            continue;
                        }
                        let a = self.find(a);
                        1 + self.depth[a as usize]
                    }
                    _ => continue,
                };
                if d as usize > self.bound {
                    blocked = true;
                    continue;
                }
                let Some(c) = self.fresh(d) else {
                    return (defined, blocked);
                };
                self.fill(r, c);
                defined += 1;
                if defined >= budget {
                    return (defined, blocked);
                }
            }
        }
        (defined, blocked)
    }
}

fn to_pat(t: &Term, sig: Signature) -> Result<Pat> {
    use crate::algebra::term::Unary;
    Ok(match t {
        Term::One => Pat::One,
        Term::Gen(k) => Pat::X(*k),
        Term::Mul(a, b) => mul(to_pat(a, sig)?, to_pat(b, sig)?),
        Term::Un(Unary::Star, a) if sig == Signature::Restriction => u1(to_pat(a, sig)?),
        Term::Un(Unary::Plus, a) if sig == Signature::Restriction => u2(to_pat(a, sig)?),
        Term::Un(Unary::Inv, a) if sig == Signature::Inverse => u1(to_pat(a, sig)?),
        _ => return Err(Error::input(format!("term '{t}' does not fit the signature"))),
    })
}

/// Enumerates the presented expansion up to its bound.
pub fn bounded_enumerate(p: &PresentedExpansion) -> Result<Enumeration> {
    if p.bound == 0 {
        return Err(Error::input("enumeration bound must be at least 1"));
    }
    if p.max_elements == 0 {
        return Err(Error::input("max_elements must be positive"));
    }
    let sig = p.signature;
    let terms = p.relation_instances()?;
    let rels: Vec<(Pat, Pat)> = terms
        .iter()
        .map(|(l, r)| match sig {
            Signature::Restriction => Ok((to_pat(l, sig)?, to_pat(r, sig)?)),
            Signature::Inverse => Ok((
                to_pat(&l.to_inverse_signature(), sig)?,
                to_pat(&r.to_inverse_signature(), sig)?,
            )),
        })
        .collect::<Result<_>>()?;
    let ids = match sig {
        Signature::Restriction => restriction_identities(),
        Signature::Inverse => inverse_identities(),
    };
    let cap = p.max_elements.max(p.monoid.size() + 1);
    let mut en = Enumerator::new(sig, cap, p.bound);
    let mut gens = Vec::with_capacity(p.monoid.size());
    for _ in p.monoid.elements() {
        match en.fresh(0) {
            Some(g) => gens.push(g),
            None => return Ok(exceeded(&en, "element cap")),
        }
    }
    loop {
        en.deduce(&ids, &rels, &gens);
        let budget = en.live().max(8);
        let (defined, blocked) = en.define(budget);
        if en.overflow {
            return Ok(exceeded(&en, "element cap"));
        }
        if defined == 0 {
            en.deduce(&ids, &rels, &gens);
            let (again, blocked) = en.define(usize::MAX);
            if again > 0 {
                continue;
            }
            if blocked {
                return Ok(exceeded(&en, "depth bound"));
            }
            return finish(&mut en, p, &terms, &gens).map(Enumeration::Closed);
        }
        let _ = blocked;
    }
}

fn exceeded(en: &Enumerator, reason: &str) -> Enumeration {
    Enumeration::Exceeded {
        partial: en.live(),
        reason: reason.to_string(),
    }
}

fn finish(
    en: &mut Enumerator,
    p: &PresentedExpansion,
    terms: &[(Term, Term)],
    gens: &[u32],
) -> Result<ClosedModel> {
    let live = en.live_list();
    let size = live.len();
    let mut index = vec![usize::MAX; en.n()];
    for (k, &c) in live.iter().enumerate() {
        index[c as usize] = k;
    }
    let missing = || Error::violation("bounded enumeration", "closed table has a hole");
    let mut mul = Vec::with_capacity(size * size);
    for &a in &live {
        for &b in &live {
            mul.push(index[en.get_mul(a, b).ok_or_else(missing)? as usize]);
        }
    }
    let one = index[en.find(en.one) as usize];
    let unary = |en: &mut Enumerator, second: bool| -> Result<Vec<usize>> {
        live.iter()
            .map(|&a| {
                let v = if second { en.get_u2(a) } else { en.get_u1(a) };
                v.map(|v| index[v as usize]).ok_or_else(missing)
            })
            .collect()
    };
    let algebra = match p.signature {
        Signature::Restriction => {
            let star = unary(en, false)?;
            let plus = unary(en, true)?;
            FiniteBiunary::from_flat(size, one, mul, star, plus)
        }
        Signature::Inverse => {
            let inv = unary(en, false)?;
            let star = (0..size).map(|x| mul[inv[x] * size + x]).collect();
            let plus = (0..size).map(|x| mul[x * size + inv[x]]).collect();
            FiniteBiunary::from_flat(size, one, mul, star, plus).and_then(|s| s.with_inverse(inv))
        }
    }
    .map_err(|e| Error::violation("bounded enumeration", format!("closed table is not valid: {e}")))?;
    algebra.require_restriction().map_err(|e| {
        Error::violation("bounded enumeration", format!("closed table fails an axiom: {e}"))
    })?;
    let generators: Vec<usize> = gens.iter().map(|&g| index[en.find(g) as usize]).collect();
    let ops = InverseAware(&algebra);
    for (l, r) in terms {
        let gen = |k: usize| Ok(generators[k]);
        if l.eval(&ops, &gen)? != r.eval(&ops, &gen)? {
            return Err(Error::violation(
                "bounded enumeration",
                format!("closed table violates the relation {l} = {r}"),
            ));
        }
    }
    Ok(ClosedModel { algebra, generators })
}

/// Finite algebra operations that also answer `inv` when a table exists.
pub(crate) struct InverseAware<'a>(pub &'a FiniteBiunary);

impl crate::algebra::RestrictionOps for InverseAware<'_> {
    type Elem = usize;

    fn one(&self) -> usize {
        self.0.one()
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.0.mul(*a, *b)
    }

    fn star(&self, a: &usize) -> usize {
        self.0.star(*a)
    }

    fn plus(&self, a: &usize) -> usize {
        self.0.plus(*a)
    }

    fn inv(&self, a: &usize) -> Option<usize> {
        self.0.inv().map(|t| t[*a])
    }
}
