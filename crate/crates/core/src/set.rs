//! Bitset types over dense element indices.
//!
//! Every carrier in this crate has at most [`MAX_ELEMENTS`] elements, so a
//! subset fits in one `u64` and a binary relation is one `u64` row per left
//! element.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

/// Largest carrier size supported by the bitset representation.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `0..64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_ELEMENTS);
        ElemSet(1u64 << i)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for i in it {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> ElemSetIter {
        ElemSetIter(self.0)
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct ElemSetIter(u64);

impl Iterator for ElemSetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ElemSetIter {}

impl IntoIterator for ElemSet {
    type Item = usize;
    type IntoIter = ElemSetIter;
    fn into_iter(self) -> ElemSetIter {
        self.iter()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElemSet::from_indices(iter)
    }
}

impl BitOr for ElemSet {
    type Output = ElemSet;
    fn bitor(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for ElemSet {
    fn bitor_assign(&mut self, rhs: ElemSet) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for ElemSet {
    type Output = ElemSet;
    fn bitand(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 & rhs.0)
    }
}

impl BitAndAssign for ElemSet {
    fn bitand_assign(&mut self, rhs: ElemSet) {
        self.0 &= rhs.0;
    }
}

impl Sub for ElemSet {
    type Output = ElemSet;
    fn sub(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 & !rhs.0)
    }
}

impl Not for ElemSet {
    type Output = ElemSet;
    fn not(self) -> ElemSet {
        ElemSet(!self.0)
    }
}

/// A binary relation `R ⊆ X × Y` stored as one [`ElemSet`] row per `x ∈ X`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairSet {
    rows: Vec<ElemSet>,
    cols: usize,
}

impl PairSet {
    pub fn empty(rows: usize, cols: usize) -> Self {
        PairSet {
            rows: vec![ElemSet::EMPTY; rows],
            cols,
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        PairSet {
            rows: vec![ElemSet::full(cols); rows],
            cols,
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(
        rows: usize,
        cols: usize,
        pairs: I,
    ) -> Self {
        let mut s = PairSet::empty(rows, cols);
        for (x, y) in pairs {
            s.insert(x, y);
        }
        s
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut s = PairSet::empty(rows, cols);
        for x in 0..rows {
            for y in 0..cols {
                if f(x, y) {
                    s.insert(x, y);
                }
            }
        }
        s
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    /// Returns true when the pair was not already present.
    #[inline]
    pub fn insert(&mut self, x: usize, y: usize) -> bool {
        let fresh = !self.rows[x].contains(y);
        self.rows[x].insert(y);
        fresh
    }

    #[inline]
    pub fn row(&self, x: usize) -> ElemSet {
        self.rows[x]
    }

    pub fn set_row(&mut self, x: usize, row: ElemSet) {
        self.rows[x] = row;
    }

    /// `{x | (x, y) ∈ R}`.
    pub fn column(&self, y: usize) -> ElemSet {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.contains(y))
            .map(|(x, _)| x)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a.is_subset(*b))
    }

    /// Pairs in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, r)| r.iter().map(move |y| (x, y)))
    }

    /// `{(y, x) | (x, y) ∈ R}`.
    pub fn transpose(&self) -> PairSet {
        let mut t = PairSet::empty(self.cols, self.rows.len());
        for (x, y) in self.iter() {
            t.insert(y, x);
        }
        t
    }

    /// `{(f(x), g(y)) | (x, y) ∈ R}` into a `rows × cols` carrier.
    pub fn map(
        &self,
        rows: usize,
        cols: usize,
        f: impl Fn(usize) -> usize,
        g: impl Fn(usize) -> usize,
    ) -> PairSet {
        PairSet::from_pairs(rows, cols, self.iter().map(|(x, y)| (f(x), g(y))))
    }
}

impl fmt::Debug for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Square boolean matrix without the 64-element bound, for orders on
/// collections of structures such as `dS(L)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        BitMatrix { n, words, bits }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.contains(i, j))
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.contains(i, j))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = (0..self.n).flat_map(|i| self.row(i).map(move |j| (i, j)));
        f.debug_set().entries(pairs).finish()
    }
}
