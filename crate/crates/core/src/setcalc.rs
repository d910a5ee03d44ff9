//! Subsets of `[n]` as machine words, the inversion count, lattice
//! intervals and simplicial complexes.
//!
//! Every enumeration is in colexicographic order, which for bitmasks is
//! plain numeric order of the underlying word.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient size an [`IndexSet`] can hold.
pub const MAX_N: usize = 64;

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Inversion count on raw masks: `|{(r, s) : r in g, s in f, r > s}|`.
#[inline]
pub fn sigma_bits(g: u64, f: u64) -> u32 {
    let mut count = 0;
    let mut rest = f;
    while rest != 0 {
        let b = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if b >= 63 { 0 } else { !0u64 << (b + 1) };
        count += (g & above).count_ones();
    }
    count
}

/// Iterate the submasks of `mask` in increasing numeric (colex) order.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
        Some(cur)
    })
}

/// A subset of `{1, ..., n}`.
///
/// Element `i` is stored in bit `i - 1`. Ordering is colex within a fixed
/// `n`; binary operations panic when the ambient sizes differ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSet {
    bits: u64,
    n: u8,
}

impl IndexSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_N, "ambient size {n} exceeds {MAX_N}");
        IndexSet { bits: 0, n: n as u8 }
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_N, "ambient size {n} exceeds {MAX_N}");
        IndexSet { bits: full_mask(n), n: n as u8 }
    }

    /// Builds a set from a raw mask; bits beyond `n` are rejected.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::AmbientTooLarge(n, MAX_N));
        }
        if bits & !full_mask(n) != 0 {
            return Err(Error::IndexOutOfRange { index: 64 - bits.leading_zeros() as usize, n });
        }
        Ok(IndexSet { bits, n: n as u8 })
    }

    /// Builds a set from 1-based indices. Duplicates are ignored.
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::AmbientTooLarge(n, MAX_N));
        }
        let mut bits = 0u64;
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            bits |= 1 << (i - 1);
        }
        Ok(IndexSet { bits, n: n as u8 })
    }

    #[inline]
    pub(crate) fn raw(n: usize, bits: u64) -> Self {
        debug_assert!(bits & !full_mask(n) == 0);
        IndexSet { bits, n: n as u8 }
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= self.n() && self.bits & (1 << (i - 1)) != 0
    }

    #[inline]
    fn check(self, other: IndexSet) {
        assert_eq!(self.n, other.n, "ambient size mismatch");
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.check(other);
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(self, other: IndexSet) -> bool {
        self.check(other);
        self.bits & other.bits == 0
    }

    pub fn union(self, other: IndexSet) -> IndexSet {
        self.check(other);
        IndexSet { bits: self.bits | other.bits, n: self.n }
    }

    pub fn intersection(self, other: IndexSet) -> IndexSet {
        self.check(other);
        IndexSet { bits: self.bits & other.bits, n: self.n }
    }

    pub fn difference(self, other: IndexSet) -> IndexSet {
        self.check(other);
        IndexSet { bits: self.bits & !other.bits, n: self.n }
    }

    pub fn complement(self) -> IndexSet {
        IndexSet { bits: !self.bits & full_mask(self.n()), n: self.n }
    }

    /// 1-based members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(b + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Number of pairs `(r, s)` with `r` in `g`, `s` in `f` and `r > s`.
///
/// The sets need not be disjoint.
pub fn sigma(g: IndexSet, f: IndexSet) -> u32 {
    g.check(f);
    sigma_bits(g.bits, f.bits)
}

/// The lattice interval `{H : bottom ⊆ H ⊆ top}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Interval {
    pub bottom: IndexSet,
    pub top: IndexSet,
}

impl Interval {
    pub fn new(bottom: IndexSet, top: IndexSet) -> Result<Self> {
        if bottom.n() != top.n() {
            return Err(Error::AmbientMismatch(bottom.n(), top.n()));
        }
        if !bottom.is_subset(top) {
            return Err(Error::InvalidDecomposition(format!("{bottom} is not contained in {top}")));
        }
        Ok(Interval { bottom, top })
    }

    pub fn contains(&self, h: IndexSet) -> bool {
        self.bottom.is_subset(h) && h.is_subset(self.top)
    }

    /// `2^(|top| - |bottom|)`
    pub fn size(&self) -> u64 {
        1u64 << (self.top.len() - self.bottom.len())
    }

    pub fn members(&self) -> Vec<IndexSet> {
        interval_members(*self)
    }
}

/// All sets in the interval, colex order.
pub fn interval_members(iv: Interval) -> Vec<IndexSet> {
    let n = iv.bottom.n();
    let free = iv.top.bits & !iv.bottom.bits;
    submasks(free).map(|s| IndexSet::raw(n, iv.bottom.bits | s)).collect()
}

/// A simplicial complex on `[n]` stored by its facets.
///
/// The void complex (no faces at all) has an empty facet list; the
/// complex `{∅}` has the single facet `∅`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<IndexSet>,
}

impl SimplicialComplex {
    /// Keeps the inclusion-maximal sets among `sets`.
    pub fn from_facets(n: usize, sets: &[IndexSet]) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::AmbientTooLarge(n, MAX_N));
        }
        for s in sets {
            if s.n() != n {
                return Err(Error::AmbientMismatch(n, s.n()));
            }
        }
        let bits: Vec<u64> = sets.iter().map(|s| s.bits).collect();
        Ok(Self::from_raw_facets(n, &bits))
    }

    pub(crate) fn from_raw_facets(n: usize, sets: &[u64]) -> Self {
        let facets = maximal_elements(sets).into_iter().map(|b| IndexSet::raw(n, b)).collect();
        SimplicialComplex { n, facets }
    }

    /// Complex with no faces.
    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: Vec::new() }
    }

    /// The full simplex on `[n]`.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![IndexSet::full(n)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[IndexSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_face(&self, f: IndexSet) -> bool {
        self.facets.iter().any(|g| f.is_subset(*g))
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Krull dimension of the face ring, i.e. largest facet size.
    pub fn krull_dim(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len()).max()
    }

    pub fn faces(&self) -> Vec<IndexSet> {
        faces(self)
    }

    /// Inclusion-minimal sets that are not faces.
    pub fn minimal_nonfaces(&self) -> Vec<IndexSet> {
        if self.is_void() {
            return vec![IndexSet::empty(self.n)];
        }
        let mut out = BTreeSet::new();
        for f in self.faces() {
            for j in 0..self.n {
                let bit = 1u64 << j;
                if f.bits & bit != 0 {
                    continue;
                }
                let cand = IndexSet::raw(self.n, f.bits | bit);
                if self.is_face(cand) {
                    continue;
                }
                let minimal = cand.iter().all(|i| {
                    self.is_face(IndexSet::raw(self.n, cand.bits & !(1 << (i - 1))))
                });
                if minimal {
                    out.insert(cand);
                }
            }
        }
        out.into_iter().collect()
    }
}

/// Inclusion-maximal elements, deduplicated, colex order.
pub(crate) fn maximal_elements(sets: &[u64]) -> Vec<u64> {
    let mut v: Vec<u64> = sets.to_vec();
    v.sort_unstable();
    v.dedup();
    let keep: Vec<u64> = v
        .iter()
        .copied()
        .filter(|&a| !v.iter().any(|&b| b != a && a & !b == 0))
        .collect();
    keep
}

/// Inclusion-minimal elements, deduplicated, colex order.
pub(crate) fn minimal_elements(sets: &[u64]) -> Vec<u64> {
    let mut v: Vec<u64> = sets.to_vec();
    v.sort_unstable();
    v.dedup();
    v.iter()
        .copied()
        .filter(|&a| !v.iter().any(|&b| b != a && b & !a == 0))
        .collect()
}

/// Every face of `delta`, colex order.
pub fn faces(delta: &SimplicialComplex) -> Vec<IndexSet> {
    let mut all = BTreeSet::new();
    for f in &delta.facets {
        for s in submasks(f.bits) {
            all.insert(s);
        }
    }
    all.into_iter().map(|b| IndexSet::raw(delta.n, b)).collect()
}

/// `Δ^∨ = {F : [n] \ F ∉ Δ}`; its facets are the complements of the
/// minimal non-faces of `Δ`.
pub fn alexander_dual(delta: &SimplicialComplex) -> SimplicialComplex {
    let n = delta.n;
    let comps: Vec<u64> =
        delta.minimal_nonfaces().into_iter().map(|f| f.complement().bits).collect();
    SimplicialComplex::from_raw_facets(n, &comps)
}
