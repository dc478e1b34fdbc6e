//! Finite posets and bounded lattices with precomputed meet/join tables.
//!
//! Elements are opaque string ids mapped to dense indices `0..n`; every
//! operation works on indices. Orders may be given as cover pairs or as any
//! generating set of `≤` pairs; the reflexive-transitive closure is taken
//! either way.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::set::{ElemSet, PairSet, MAX_ELEMENTS};

/// A finite partial order. `down[x]` is `{y | y ≤ x}` and `up[x]` is
/// `{y | x ≤ y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    down: Vec<ElemSet>,
    up: Vec<ElemSet>,
}

impl Poset {
    /// Builds the order generated by `pairs` (each `(a, b)` meaning `a ≤ b`).
    pub fn from_pairs<S: AsRef<str>>(ids: Vec<String>, pairs: &[(S, S)]) -> Result<Self> {
        let index = index_ids(&ids)?;
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            idx_pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_index_pairs(ids, &idx_pairs)
    }

    pub fn from_index_pairs(ids: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = ids.len();
        let index = index_ids(&ids)?;
        let mut down: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        for &(a, b) in pairs {
            if a >= n {
                return Err(Error::IndexOutOfRange(a, n));
            }
            if b >= n {
                return Err(Error::IndexOutOfRange(b, n));
            }
            down[b].insert(a);
        }
        // Warshall on rows: if k ≤ x then everything below k is below x.
        for k in 0..n {
            for x in 0..n {
                if down[x].contains(k) {
                    let dk = down[k];
                    down[x] |= dk;
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if down[a].contains(b) && down[b].contains(a) {
                    return Err(Error::CyclicOrder(ids[a].clone(), ids[b].clone()));
                }
            }
        }
        let up = transpose_rows(&down, n);
        Ok(Poset {
            ids,
            index,
            down,
            up,
        })
    }

    /// Builds a poset from an order predicate; the predicate must already be
    /// a partial order.
    pub fn from_fn(ids: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = ids.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| leq(a, b))
            .collect();
        Self::from_index_pairs(ids, &pairs)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    #[inline]
    pub fn down(&self, x: usize) -> ElemSet {
        self.down[x]
    }

    #[inline]
    pub fn up(&self, x: usize) -> ElemSet {
        self.up[x]
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// Cover pairs `(a, b)`, `a ⋖ b`, in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for b in 0..n {
            let strict = self.down[b] - ElemSet::singleton(b);
            for a in strict {
                let between = (self.up[a] & strict) - ElemSet::singleton(a);
                if between.is_empty() {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Greatest element of `set` that lies below every element of it, if any.
    fn greatest_in(&self, set: ElemSet) -> Option<usize> {
        set.iter().find(|&g| set.is_subset(self.down[g]))
    }

    fn least_in(&self, set: ElemSet) -> Option<usize> {
        set.iter().find(|&l| set.is_subset(self.up[l]))
    }

    /// Greatest lower bound of `set` (top of the whole poset when empty).
    pub fn glb(&self, set: ElemSet) -> Option<usize> {
        let lower = set.iter().fold(self.all(), |acc, x| acc & self.down[x]);
        self.greatest_in(lower)
    }

    pub fn lub(&self, set: ElemSet) -> Option<usize> {
        let upper = set.iter().fold(self.all(), |acc, x| acc & self.up[x]);
        self.least_in(upper)
    }

    /// Smallest down-set containing `set`.
    pub fn down_closure(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(ElemSet::EMPTY, |acc, x| acc | self.down[x])
    }

    pub fn up_closure(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(ElemSet::EMPTY, |acc, x| acc | self.up[x])
    }

    pub fn is_down_set(&self, set: ElemSet) -> bool {
        self.down_closure(set) == set
    }

    pub fn is_up_set(&self, set: ElemSet) -> bool {
        self.up_closure(set) == set
    }
}

fn index_ids(ids: &[String]) -> Result<BTreeMap<String, usize>> {
    if ids.len() > MAX_ELEMENTS {
        return Err(Error::TooLarge(ids.len()));
    }
    let mut index = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        if index.insert(id.clone(), i).is_some() {
            return Err(Error::DuplicateElement(id.clone()));
        }
    }
    Ok(index)
}

fn transpose_rows(rows: &[ElemSet], n: usize) -> Vec<ElemSet> {
    let mut t = vec![ElemSet::EMPTY; n];
    for (x, r) in rows.iter().enumerate() {
        for y in r.iter() {
            t[y].insert(x);
        }
    }
    t
}

/// A finite bounded lattice with total meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Checks that every pair has a glb and a lub and tabulates them.
    pub fn from_poset(poset: Poset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let pair = ElemSet::from_indices([a, b]);
                let m = poset.glb(pair).ok_or_else(|| {
                    Error::NotALattice(poset.id(a).into(), poset.id(b).into(), "meet")
                })?;
                let j = poset.lub(pair).ok_or_else(|| {
                    Error::NotALattice(poset.id(a).into(), poset.id(b).into(), "join")
                })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        // With all binary bounds in a finite nonempty poset, the empty bounds exist.
        let bottom = poset.glb(poset.all()).expect("finite lattice has a bottom");
        let top = poset.lub(poset.all()).expect("finite lattice has a top");
        Ok(Lattice {
            poset,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// The lattice whose Hasse diagram has the given cover pairs `(lower, upper)`.
    pub fn from_covers<S: AsRef<str>>(ids: Vec<String>, covers: &[(S, S)]) -> Result<Self> {
        Self::from_poset(Poset::from_pairs(ids, covers)?)
    }

    /// Same as [`Lattice::from_covers`]; any generating set of `≤` pairs works.
    pub fn from_leq<S: AsRef<str>>(ids: Vec<String>, pairs: &[(S, S)]) -> Result<Self> {
        Self::from_poset(Poset::from_pairs(ids, pairs)?)
    }

    pub fn from_fn(ids: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::from_poset(Poset::from_fn(ids, leq)?)
    }

    /// The chain `0 < .. < 1` with `n` elements. The middle element of the
    /// 3-chain is `c`; longer chains use `a`, `b`, `c`, ...
    pub fn chain(n: usize) -> Result<Self> {
        let ids = chain_ids(n);
        Self::from_fn(ids, |a, b| a <= b)
    }

    /// The Boolean lattice of subsets of `atoms` points.
    pub fn boolean(atoms: usize) -> Result<Self> {
        if atoms > 6 {
            return Err(Error::TooLarge(1 << atoms.min(16)));
        }
        let n = 1usize << atoms;
        let ids = (0..n)
            .map(|s| {
                if s == 0 {
                    "0".to_string()
                } else if s == n - 1 {
                    "1".to_string()
                } else {
                    (0..atoms)
                        .filter(|i| s >> i & 1 == 1)
                        .map(|i| (b'a' + i as u8) as char)
                        .collect()
                }
            })
            .collect();
        Self::from_fn(ids, |a, b| a & !b == 0)
    }

    /// A family of subsets of a point set (bitmasks) ordered by inclusion.
    pub fn from_sets(ids: Vec<String>, sets: &[u64]) -> Result<Self> {
        if ids.len() != sets.len() {
            return Err(Error::DomainMismatch {
                expected: ids.len(),
                got: sets.len(),
            });
        }
        Self::from_fn(ids, |a, b| sets[a] & !sets[b] == 0)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn ids(&self) -> &[String] {
        self.poset.ids()
    }

    pub fn id(&self, x: usize) -> &str {
        self.poset.id(x)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.poset.index_of(id)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn all(&self) -> ElemSet {
        self.poset.all()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn down(&self, x: usize) -> ElemSet {
        self.poset.down(x)
    }

    #[inline]
    pub fn up(&self, x: usize) -> ElemSet {
        self.poset.up(x)
    }

    /// Join of a set of elements (bottom for the empty set).
    pub fn join_all(&self, set: ElemSet) -> usize {
        set.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a set of elements (top for the empty set).
    pub fn meet_all(&self, set: ElemSet) -> usize {
        set.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// First triple `(a, b, c)` with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// `a → b = ⋁{c | a ∧ c ≤ b}`. Only a relative pseudocomplement when the
    /// lattice is distributive.
    pub fn heyting_implication(&self, a: usize, b: usize) -> usize {
        let witnesses: ElemSet = (0..self.len())
            .filter(|&c| self.leq(self.meet(a, c), b))
            .collect();
        self.join_all(witnesses)
    }

    /// `a* = a → 0`.
    pub fn pseudocomplement(&self, a: usize) -> usize {
        self.heyting_implication(a, self.bottom)
    }

    /// Cover pairs of the order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.poset.covers()
    }

    /// Sub-order on `members` with ids inherited. Returns the induced
    /// lattice and the embedding (sub index → index here).
    pub fn restrict(&self, members: ElemSet) -> Result<(Lattice, Vec<usize>)> {
        let embed: Vec<usize> = members.iter().collect();
        let ids = embed.iter().map(|&x| self.id(x).to_string()).collect();
        let lat = Lattice::from_fn(ids, |a, b| self.leq(embed[a], embed[b]))?;
        Ok((lat, embed))
    }
}

pub(crate) fn chain_ids(n: usize) -> Vec<String> {
    match n {
        0 => Vec::new(),
        1 => vec!["1".to_string()],
        3 => vec!["0".into(), "c".into(), "1".into()],
        _ => {
            let mut ids = vec!["0".to_string()];
            for i in 0..n - 2 {
                ids.push(letter_name(i));
            }
            ids.push("1".into());
            ids
        }
    }
}

fn letter_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

/// A down-closed subset of a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DownSet<'a> {
    lattice: &'a Lattice,
    members: ElemSet,
}

impl<'a> DownSet<'a> {
    pub fn new(lattice: &'a Lattice, members: ElemSet) -> Option<Self> {
        lattice
            .poset()
            .is_down_set(members)
            .then_some(DownSet { lattice, members })
    }

    /// Smallest down-set containing `generators`.
    pub fn generated_by(lattice: &'a Lattice, generators: ElemSet) -> Self {
        DownSet {
            lattice,
            members: lattice.poset().down_closure(generators),
        }
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lattice
    }
}

/// The product order `left × right`, with sets of pairs stored as
/// [`PairSet`]s (rows indexed by the left component).
#[derive(Clone, Copy, Debug)]
pub struct ProductOrder<'a> {
    pub left: &'a Lattice,
    pub right: &'a Lattice,
}

impl<'a> ProductOrder<'a> {
    pub fn new(left: &'a Lattice, right: &'a Lattice) -> Self {
        ProductOrder { left, right }
    }

    pub fn empty(&self) -> PairSet {
        PairSet::empty(self.left.len(), self.right.len())
    }

    pub fn size(&self) -> usize {
        self.left.len() * self.right.len()
    }

    pub fn leq(&self, p: (usize, usize), q: (usize, usize)) -> bool {
        self.left.leq(p.0, q.0) && self.right.leq(p.1, q.1)
    }

    pub fn join(&self, p: (usize, usize), q: (usize, usize)) -> (usize, usize) {
        (self.left.join(p.0, q.0), self.right.join(p.1, q.1))
    }

    /// Smallest lower set of the product containing `set`.
    pub fn down_closure(&self, set: &PairSet) -> PairSet {
        let mut out = self.empty();
        for x in 0..self.left.len() {
            let row = set.row(x);
            if row.is_empty() {
                continue;
            }
            let below = self.right.poset().down_closure(row);
            for y in self.left.down(x) {
                let r = out.row(y) | below;
                out.set_row(y, r);
            }
        }
        out
    }

    /// Smallest upper set of the product containing `set`.
    pub fn up_closure(&self, set: &PairSet) -> PairSet {
        let mut out = self.empty();
        for x in 0..self.left.len() {
            let row = set.row(x);
            if row.is_empty() {
                continue;
            }
            let above = self.right.poset().up_closure(row);
            for y in self.left.up(x) {
                let r = out.row(y) | above;
                out.set_row(y, r);
            }
        }
        out
    }

    pub fn is_down_set(&self, set: &PairSet) -> bool {
        self.down_closure(set) == *set
    }

    pub fn is_up_set(&self, set: &PairSet) -> bool {
        self.up_closure(set) == *set
    }

    /// One application of the directed-join operator: `set` together with
    /// the join of each of its nonempty directed subsets.
    ///
    /// A nonempty finite directed set has a greatest element, so the directed
    /// subsets of `set` are grouped by that element `m`; the largest of them
    /// is `{p ∈ set | p ≤ m}` and every one of them has join `m`.
    pub fn directed_join_step(&self, set: &PairSet) -> PairSet {
        let mut out = set.clone();
        for m in set.iter() {
            let group = set
                .iter()
                .filter(|&p| self.leq(p, m))
                .fold((self.left.bottom(), self.right.bottom()), |acc, p| {
                    self.join(acc, p)
                });
            out.insert(group.0, group.1);
        }
        out
    }

    /// Scott closure: [`Self::directed_join_step`] iterated to a fixpoint.
    /// Returns the closure and the number of steps that added something.
    pub fn scott_closure_with_steps(&self, set: &PairSet) -> (PairSet, usize) {
        let mut cur = set.clone();
        let mut steps = 0;
        loop {
            let next = self.directed_join_step(&cur);
            if next == cur {
                break;
            }
            cur = next;
            steps += 1;
            assert!(
                steps <= self.size(),
                "directed-join iteration did not stabilise within the carrier size"
            );
        }
        (cur, steps)
    }

    pub fn scott_closure(&self, set: &PairSet) -> PairSet {
        self.scott_closure_with_steps(set).0
    }
}
