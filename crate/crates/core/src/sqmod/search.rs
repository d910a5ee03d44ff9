//! Exact-cover search over interval partitions of a support family.
//!
//! The search always branches on the colex-smallest uncovered element
//! `e`. Every interval containing `e` whose other members are still
//! uncovered must have `e` as its bottom (anything below `e` is smaller
//! in colex order and therefore already covered), so a branch is just a
//! choice of top. Callers supply the admissible tops.

use std::collections::HashSet;

use super::{SqQuotient, StanleyDecomposition};
use crate::error::{Error, Result};
use crate::setcalc::submasks;

/// Failed states are memoised up to this many entries.
const MEMO_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct CoverStats {
    pub nodes: u64,
}

struct Cover<'a, C> {
    support: &'a [u64],
    covered: Vec<u64>,
    chosen: Vec<(u64, u64)>,
    failed: HashSet<Vec<u64>>,
    candidates: C,
    stats: CoverStats,
}

impl<C> Cover<'_, C>
where
    C: FnMut(u64, usize) -> Vec<u64>,
{
    fn is_covered(&self, i: usize) -> bool {
        self.covered[i / 64] >> (i % 64) & 1 == 1
    }

    fn toggle(&mut self, i: usize) {
        self.covered[i / 64] ^= 1 << (i % 64);
    }

    /// Indices of `[bottom, top]` if the interval lies in the uncovered support.
    fn interval_indices(&self, bottom: u64, top: u64) -> Option<Vec<usize>> {
        if bottom & !top != 0 {
            return None;
        }
        let mut out = Vec::with_capacity(1 << (top & !bottom).count_ones());
        for sub in submasks(top & !bottom) {
            let i = self.support.binary_search(&(bottom | sub)).ok()?;
            if self.is_covered(i) {
                return None;
            }
            out.push(i);
        }
        Some(out)
    }

    fn dfs(&mut self, start: usize) -> bool {
        self.stats.nodes += 1;
        let Some(i) = (start..self.support.len()).find(|&i| !self.is_covered(i)) else {
            return true;
        };
        if self.failed.contains(&self.covered) {
            return false;
        }
        let e = self.support[i];
        for top in (self.candidates)(e, i) {
            let Some(idx) = self.interval_indices(e, top) else { continue };
            for &k in &idx {
                self.toggle(k);
            }
            self.chosen.push((e, top));
            if self.dfs(i + 1) {
                return true;
            }
            self.chosen.pop();
            for &k in &idx {
                self.toggle(k);
            }
        }
        if self.failed.len() < MEMO_CAP {
            self.failed.insert(self.covered.clone());
        }
        false
    }
}

/// Finds the first interval partition of `support` (sorted, colex) in
/// search order. `candidates(e, index_of_e)` lists admissible tops for
/// the interval with bottom `e`, in the order they should be tried.
pub(crate) fn exact_cover<C>(support: &[u64], candidates: C) -> (Option<Vec<(u64, u64)>>, CoverStats)
where
    C: FnMut(u64, usize) -> Vec<u64>,
{
    debug_assert!(support.windows(2).all(|w| w[0] < w[1]));
    let mut cover = Cover {
        support,
        covered: vec![0; support.len().div_ceil(64).max(1)],
        chosen: Vec::new(),
        failed: HashSet::new(),
        candidates,
        stats: CoverStats::default(),
    };
    let found = cover.dfs(0);
    let stats = cover.stats;
    (found.then_some(cover.chosen), stats)
}

/// Partition with every top of size `>= k`, if one exists.
///
/// Intervals may be normalised so that either the interval is `[e, e]`
/// with `|e| >= k` or its top has size exactly `k`: any `[F, G]` with
/// `|F| < k < |G|` splits as `[F, G \ j] ∪ [F ∪ j, G]`.
fn sdepth_cover(n: usize, support: &[u64], k: usize) -> Option<StanleyDecomposition> {
    let (found, _) = exact_cover(support, |e, i| {
        if e.count_ones() as usize >= k {
            vec![e]
        } else {
            support[i + 1..]
                .iter()
                .copied()
                .filter(|&g| g & e == e && g.count_ones() as usize == k)
                .collect()
        }
    });
    found.map(|pairs| StanleyDecomposition::from_raw(n, &pairs))
}

/// Partition with every bottom of size `<= h`, if one exists.
///
/// Dual normalisation: bottoms of size `< h` carry singleton intervals,
/// bottoms of size exactly `h` may reach any top.
fn hreg_cover(n: usize, support: &[u64], h: usize) -> Option<StanleyDecomposition> {
    let (found, _) = exact_cover(support, |e, i| {
        let size = e.count_ones() as usize;
        if size > h {
            Vec::new()
        } else if size < h {
            vec![e]
        } else {
            support[i..].iter().copied().filter(|&g| g & e == e).collect()
        }
    });
    found.map(|pairs| StanleyDecomposition::from_raw(n, &pairs))
}

fn searchable(m: &SqQuotient) -> Result<()> {
    if !m.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(())
}

/// A decomposition with `sdepth >= k`, or `None`.
pub fn sdepth_at_least(m: &SqQuotient, k: usize) -> Result<Option<StanleyDecomposition>> {
    searchable(m)?;
    Ok(sdepth_cover(m.n(), &m.support_bits(), k))
}

/// A decomposition with `hreg <= h`, or `None`.
pub fn hreg_at_most(m: &SqQuotient, h: usize) -> Result<Option<StanleyDecomposition>> {
    searchable(m)?;
    Ok(hreg_cover(m.n(), &m.support_bits(), h))
}

/// Stanley depth of a nonzero squarefree `M` with a witness decomposition.
///
/// Only interval (squarefree) decompositions are searched; for squarefree
/// modules the optimum is attained by one of them.
pub fn sdepth(m: &SqQuotient) -> Result<(usize, StanleyDecomposition)> {
    searchable(m)?;
    let n = m.n();
    let support = m.support_bits();
    let mut lo = 0;
    let mut hi = super::apel_bound(m)?;
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if sdepth_cover(n, &support, mid).is_some() {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let witness = sdepth_cover(n, &support, lo).expect("feasible at the optimum");
    Ok((lo, witness))
}

/// Minimum h-regularity over interval decompositions, with a witness.
pub fn hreg_min(m: &SqQuotient) -> Result<(usize, StanleyDecomposition)> {
    searchable(m)?;
    let n = m.n();
    let support = m.support_bits();
    // every minimal element is forced to be a bottom
    let mut lo = m.generator_degrees().iter().map(|g| g.len()).max().unwrap_or(0);
    let mut hi = m.dim().unwrap_or(0);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if hreg_cover(n, &support, mid).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let witness = hreg_cover(n, &support, lo).expect("feasible at the optimum");
    Ok((lo, witness))
}
