//! Squarefree quotients `M = J/I` and their Stanley decompositions.
//!
//! A squarefree module is determined by its values on subsets of `[n]`,
//! so `J/I` is carried as its support family `{F : x_F ∈ J \ I}`, an
//! order-convex subset of the Boolean lattice. Squarefree Stanley spaces
//! `x_F K[x_j : j ∈ G]` are the lattice intervals `[F, G]` inside it.

mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{tilde_total, Monomial, MonomialIdeal, SqIdeal};
use crate::setcalc::{full_mask, maximal_elements, minimal_elements, submasks, IndexSet};

pub use search::{hreg_at_most, hreg_min, sdepth, sdepth_at_least};
pub(crate) use search::exact_cover;

/// Support families are materialised by scanning all `2^n` squarefree
/// degrees, so the ambient size is capped here.
pub const SUPPORT_MAX_N: usize = 20;

/// Outcome of the squarefreeness test on `J/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SquarefreeCertificate {
    Squarefree,
    /// A minimal generator of `J/I` that is not squarefree.
    NonSquarefreeGenerator(Monomial),
    /// `witness ∈ J \ I` with `supp(generator) ⊆ supp(witness)` for some
    /// `generator ∈ G(I)`.
    SupportContainment { witness: Monomial, generator: Monomial },
}

impl SquarefreeCertificate {
    pub fn is_squarefree(&self) -> bool {
        matches!(self, SquarefreeCertificate::Squarefree)
    }

    pub fn witness(&self) -> Option<&Monomial> {
        match self {
            SquarefreeCertificate::Squarefree => None,
            SquarefreeCertificate::NonSquarefreeGenerator(m) => Some(m),
            SquarefreeCertificate::SupportContainment { witness, .. } => Some(witness),
        }
    }
}

/// Decides whether `J/I` is a squarefree module, with a witness when not.
///
/// (a) every generator of `J` outside `I` must be squarefree; (b) no
/// `u ∈ G(I)` may have `supp(u) ⊆ supp(m)` for a monomial `m ∈ J \ I`.
/// For (b) it suffices to look at `m = lcm(g, x_T)` for `g ∈ G(J)` with
/// `supp(g) ⊆ T`: any `m ∈ J \ I` with support `T` is a multiple of one.
pub fn is_squarefree_quotient(
    inner: &MonomialIdeal,
    outer: &MonomialIdeal,
) -> Result<SquarefreeCertificate> {
    if inner.n() != outer.n() {
        return Err(Error::AmbientMismatch(inner.n(), outer.n()));
    }
    if !inner.is_contained_in(outer) {
        return Err(Error::NotContained);
    }
    let n = outer.n();
    for g in outer.generators() {
        if !inner.contains(g) && !g.is_squarefree() {
            return Ok(SquarefreeCertificate::NonSquarefreeGenerator(g.clone()));
        }
    }
    if n > SUPPORT_MAX_N {
        return Err(Error::AmbientTooLarge(n, SUPPORT_MAX_N));
    }
    for t in 0..=full_mask(n) {
        let ts = IndexSet::raw(n, t);
        let Some(u) = inner.generators().iter().find(|u| u.support().is_subset(ts)) else {
            continue;
        };
        let xt = Monomial::from_set(ts);
        let reach = outer
            .generators()
            .iter()
            .filter(|g| g.support().is_subset(ts))
            .map(|g| g.lcm(&xt))
            .find(|m| !inner.contains(m));
        if let Some(m) = reach {
            return Ok(SquarefreeCertificate::SupportContainment { witness: m, generator: u.clone() });
        }
    }
    Ok(SquarefreeCertificate::Squarefree)
}

/// The quotient `J/I` of monomial ideals `I ⊆ J`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SqQuotient {
    n: usize,
    inner: MonomialIdeal,
    outer: MonomialIdeal,
    support: Vec<IndexSet>,
    squarefree: bool,
}

/// Builds `J/I` and its support family `{F : x_F ∈ J \ I}`.
pub fn build_quotient(inner: &MonomialIdeal, outer: &MonomialIdeal) -> Result<SqQuotient> {
    SqQuotient::new(inner.clone(), outer.clone())
}

impl SqQuotient {
    pub fn new(inner: MonomialIdeal, outer: MonomialIdeal) -> Result<Self> {
        let cert = is_squarefree_quotient(&inner, &outer)?;
        let n = outer.n();
        let support = (0..=full_mask(n))
            .map(|f| IndexSet::raw(n, f))
            .filter(|&f| outer.contains_set(f) && !inner.contains_set(f))
            .collect();
        Ok(SqQuotient { n, inner, outer, support, squarefree: cert.is_squarefree() })
    }

    pub fn from_sq_ideals(inner: &SqIdeal, outer: &SqIdeal) -> Result<Self> {
        Self::new(inner.to_monomial_ideal(), outer.to_monomial_ideal())
    }

    /// `S/I`
    pub fn cyclic(ideal: &MonomialIdeal) -> Result<Self> {
        Self::new(ideal.clone(), MonomialIdeal::unit(ideal.n()))
    }

    /// The ideal `I` as a module, `I/0`.
    pub fn ideal_module(ideal: &MonomialIdeal) -> Result<Self> {
        Self::new(MonomialIdeal::zero(ideal.n()), ideal.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inner(&self) -> &MonomialIdeal {
        &self.inner
    }

    pub fn outer(&self) -> &MonomialIdeal {
        &self.outer
    }

    /// Support family in colex order.
    pub fn support(&self) -> &[IndexSet] {
        &self.support
    }

    pub(crate) fn support_bits(&self) -> Vec<u64> {
        self.support.iter().map(|f| f.bits()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree
    }

    pub fn has_squarefree_ideals(&self) -> bool {
        self.inner.is_squarefree() && self.outer.is_squarefree()
    }

    pub fn contains_degree(&self, f: IndexSet) -> bool {
        self.support.binary_search(&f).is_ok()
    }

    /// Maximal elements of the support family.
    pub fn support_facets(&self) -> Vec<IndexSet> {
        maximal_elements(&self.support_bits()).into_iter().map(|b| IndexSet::raw(self.n, b)).collect()
    }

    /// Degrees of the minimal generators of `M`.
    pub fn generator_degrees(&self) -> Vec<IndexSet> {
        minimal_elements(&self.support_bits()).into_iter().map(|b| IndexSet::raw(self.n, b)).collect()
    }

    /// Largest support element size; the Krull dimension of `M`.
    pub fn dim(&self) -> Option<usize> {
        self.support.iter().map(|f| f.len()).max()
    }

    fn require_squarefree(&self) -> Result<()> {
        if self.squarefree {
            Ok(())
        } else {
            Err(Error::NotSquarefree)
        }
    }
}

/// Associated primes of a squarefree `M`, each `P_F` given by `F`.
///
/// The annihilator of the basis element in degree `F` is `P_{[n] \ F}`
/// exactly when `F` is maximal in the support; ordered by that facet.
pub fn associated_primes(m: &SqQuotient) -> Result<Vec<IndexSet>> {
    m.require_squarefree()?;
    Ok(m.support_facets().into_iter().map(IndexSet::complement).collect())
}

/// Upper bound `min{dim S/P : P ∈ Ass(M)}` on the Stanley depth.
pub fn apel_bound(m: &SqQuotient) -> Result<usize> {
    m.support_facets().iter().map(|g| g.len()).min().ok_or(Error::ZeroModule)
}

/// The squarefree Stanley space `x_F K[x_j : j ∈ G]` as the interval `[F, G]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct StanleySpace {
    pub bottom: IndexSet,
    pub top: IndexSet,
}

impl StanleySpace {
    pub fn new(bottom: IndexSet, top: IndexSet) -> Result<Self> {
        if bottom.n() != top.n() {
            return Err(Error::AmbientMismatch(bottom.n(), top.n()));
        }
        if !bottom.is_subset(top) {
            return Err(Error::InvalidDecomposition(format!(
                "generator degree {bottom} is not contained in {top}"
            )));
        }
        Ok(StanleySpace { bottom, top })
    }

    pub fn dimension(&self) -> usize {
        self.top.len()
    }

    pub fn generator(&self) -> Monomial {
        Monomial::from_set(self.bottom)
    }
}

impl fmt::Display for StanleySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.bottom, self.top)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StanleyDecomposition {
    n: usize,
    spaces: Vec<StanleySpace>,
}

impl StanleyDecomposition {
    pub fn new(n: usize, spaces: Vec<StanleySpace>) -> Result<Self> {
        for s in &spaces {
            if s.bottom.n() != n {
                return Err(Error::AmbientMismatch(n, s.bottom.n()));
            }
        }
        Ok(StanleyDecomposition { n, spaces })
    }

    pub(crate) fn from_raw(n: usize, pairs: &[(u64, u64)]) -> Self {
        let spaces = pairs
            .iter()
            .map(|&(b, t)| StanleySpace { bottom: IndexSet::raw(n, b), top: IndexSet::raw(n, t) })
            .collect();
        StanleyDecomposition { n, spaces }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spaces(&self) -> &[StanleySpace] {
        &self.spaces
    }

    /// `min |top|`; `None` for the empty decomposition.
    pub fn sdepth(&self) -> Option<usize> {
        self.spaces.iter().map(|s| s.top.len()).min()
    }

    /// `max |bottom|`; `None` for the empty decomposition.
    pub fn hreg(&self) -> Option<usize> {
        self.spaces.iter().map(|s| s.bottom.len()).max()
    }

    /// How many spaces reach the largest dimension present.
    pub fn count_max_dimension(&self) -> usize {
        let Some(d) = self.spaces.iter().map(|s| s.top.len()).max() else { return 0 };
        self.spaces.iter().filter(|s| s.top.len() == d).count()
    }
}

impl fmt::Display for StanleyDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.spaces.iter().enumerate() {
            if k > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// True iff the intervals of `d` are disjoint, lie inside the support of
/// `m` and cover it.
pub fn validate_decomposition(m: &SqQuotient, d: &StanleyDecomposition) -> bool {
    validate_partition_of(m.n, &m.support_bits(), d)
}

pub(crate) fn validate_partition_of(n: usize, support: &[u64], d: &StanleyDecomposition) -> bool {
    if d.n != n {
        return false;
    }
    let mut seen = vec![false; support.len()];
    for s in &d.spaces {
        if !s.bottom.is_subset(s.top) {
            return false;
        }
        let free = s.top.bits() & !s.bottom.bits();
        for sub in submasks(free) {
            match support.binary_search(&(s.bottom.bits() | sub)) {
                Ok(i) if !seen[i] => seen[i] = true,
                _ => return false,
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// `(J/I)^∨ = Ĩ / J̃`, computed from the dual ideals and cross-checked
/// against complementation of the support.
pub fn dualize_quotient(m: &SqQuotient) -> Result<SqQuotient> {
    if !m.has_squarefree_ideals() {
        return Err(Error::NotSquarefree);
    }
    let i = m.inner.to_sq()?;
    let j = m.outer.to_sq()?;
    let dual = SqQuotient::from_sq_ideals(&tilde_total(&j), &tilde_total(&i))?;
    let mut comp: Vec<IndexSet> = m.support.iter().map(|f| f.complement()).collect();
    comp.sort();
    if comp != dual.support {
        return Err(Error::Internal(format!(
            "dual support via ideals {:?} disagrees with complementation {:?}",
            dual.support, comp
        )));
    }
    Ok(dual)
}

/// Maps each `[F, G]` to `[G^c, F^c]`.
pub fn dualize_decomposition(d: &StanleyDecomposition) -> StanleyDecomposition {
    StanleyDecomposition {
        n: d.n,
        spaces: d
            .spaces
            .iter()
            .map(|s| StanleySpace { bottom: s.top.complement(), top: s.bottom.complement() })
            .collect(),
    }
}

#[cfg(test)]
mod tests;
