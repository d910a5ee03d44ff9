//! Multigraded Betti numbers of squarefree modules from the Koszul complex,
//! and the invariants read off them.
//!
//! For a squarefree `M` every Betti number sits in a squarefree degree
//! `σ`, and `β_{i,σ}(M)` is the `i`-th homology of
//!
//! ```text
//!   ⊕_{T ⊆ σ, |T| = i} e_T ⊗ M_{σ \ T}
//! ```
//!
//! with `d(e_T ⊗ m) = Σ_{j ∈ T} (-1)^{σ({j}, T \ j)} e_{T \ j} ⊗ x_j m`.
//! Each `M_{σ \ T}` is zero or spanned by `x_{σ \ T}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{rank, Field};
use crate::ideals::{sr_ideal, SqIdeal};
use crate::setcalc::{alexander_dual, full_mask, sigma_bits, submasks, IndexSet, SimplicialComplex};
use crate::sqmod::{dualize_quotient, SqQuotient};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub degree: IndexSet,
    pub rank: usize,
}

/// Nonzero `β_{i,σ}`, sorted by `i` then colex on `σ`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BettiTable {
    pub n: usize,
    pub characteristic: u64,
    pub entries: Vec<BettiEntry>,
}

impl BettiTable {
    pub fn get(&self, i: usize, degree: IndexSet) -> usize {
        self.entries.iter().find(|e| e.i == i && e.degree == degree).map_or(0, |e| e.rank)
    }

    /// `β_{i,j}`, summed over `|σ| = j`.
    pub fn graded(&self, i: usize, j: usize) -> usize {
        self.entries.iter().filter(|e| e.i == i && e.degree.len() == j).map(|e| e.rank).sum()
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|e| e.i == i).map(|e| e.rank).sum()
    }

    pub fn projdim(&self) -> usize {
        self.entries.iter().map(|e| e.i).max().unwrap_or(0)
    }

    /// `max{|σ| - i}`
    pub fn reg(&self) -> usize {
        self.entries.iter().map(|e| e.degree.len() - e.i).max().unwrap_or(0)
    }

    /// All entries satisfy `|σ| - i = d` for one `d`.
    pub fn is_linear(&self) -> bool {
        let mut shifts = self.entries.iter().map(|e| e.degree.len() - e.i);
        match shifts.next() {
            Some(d) => shifts.all(|s| s == d),
            None => true,
        }
    }
}

/// Betti numbers in one squarefree degree, indexed by homological degree.
fn koszul_betti<F: Field>(support: &[u64], sigma: u64) -> Vec<usize> {
    let k = sigma.count_ones() as usize;
    // chain basis by homological degree: the sets T
    let mut basis: Vec<Vec<u64>> = vec![Vec::new(); k + 1];
    for t in submasks(sigma) {
        if support.binary_search(&(sigma & !t)).is_ok() {
            basis[t.count_ones() as usize].push(t);
        }
    }
    // ranks[i] = rank of d_i : C_i -> C_{i-1}
    let mut ranks = vec![0usize; k + 2];
    for i in 1..=k {
        if basis[i].is_empty() || basis[i - 1].is_empty() {
            continue;
        }
        let target = &basis[i - 1];
        let rows: Vec<Vec<F>> = basis[i]
            .iter()
            .map(|&t| {
                let mut row = vec![F::zero(); target.len()];
                let mut rest = t;
                while rest != 0 {
                    let j = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    if let Ok(col) = target.binary_search(&(t & !j)) {
                        row[col] = F::sign(sigma_bits(j, t & !j));
                    }
                }
                row
            })
            .collect();
        ranks[i] = rank(rows);
    }
    (0..=k).map(|i| basis[i].len() - ranks[i] - ranks[i + 1]).collect()
}

/// Multigraded Betti numbers of a nonzero squarefree `M` over `F`.
pub fn betti<F: Field>(m: &SqQuotient) -> Result<BettiTable> {
    if !m.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let n = m.n();
    let support = m.support_bits();
    let per_degree: Vec<Vec<usize>> =
        (0..=full_mask(n)).into_par_iter().map(|s| koszul_betti::<F>(&support, s)).collect();
    let mut entries = Vec::new();
    for (s, betti) in per_degree.iter().enumerate() {
        for (i, &r) in betti.iter().enumerate() {
            if r > 0 {
                entries.push(BettiEntry { i, degree: IndexSet::raw(n, s as u64), rank: r });
            }
        }
    }
    entries.sort_by_key(|e| (e.i, e.degree));
    Ok(BettiTable { n, characteristic: F::characteristic(), entries })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InvariantReport {
    pub characteristic: u64,
    pub reg: usize,
    pub projdim: usize,
    pub depth: usize,
    pub dim: usize,
    pub is_cm: bool,
    pub has_linear_res: bool,
}

impl InvariantReport {
    pub fn from_betti(m: &SqQuotient, table: &BettiTable) -> Self {
        let projdim = table.projdim();
        let depth = m.n() - projdim;
        let dim = m.dim().unwrap_or(0);
        InvariantReport {
            characteristic: table.characteristic,
            reg: table.reg(),
            projdim,
            depth,
            dim,
            is_cm: depth == dim,
            has_linear_res: table.is_linear(),
        }
    }
}

pub fn invariants<F: Field>(m: &SqQuotient) -> Result<InvariantReport> {
    Ok(InvariantReport::from_betti(m, &betti::<F>(m)?))
}

/// `projdim(M) = reg(M^∨)`, each side from its own Betti computation.
pub fn terai_check<F: Field>(m: &SqQuotient) -> Result<bool> {
    let projdim = betti::<F>(m)?.projdim();
    let dual = dualize_quotient(m)?;
    Ok(projdim == betti::<F>(&dual)?.reg())
}

/// Both sides of the Cohen–Macaulay / linear-resolution equivalence.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EagonReiner {
    /// `S/I_Δ` is Cohen–Macaulay.
    pub cohen_macaulay: bool,
    /// `I_{Δ^∨}` has a linear resolution.
    pub dual_linear: bool,
}

impl EagonReiner {
    pub fn agrees(&self) -> bool {
        self.cohen_macaulay == self.dual_linear
    }
}

/// `S/I_Δ` as a quotient.
pub fn face_ring(delta: &SimplicialComplex) -> Result<SqQuotient> {
    SqQuotient::from_sq_ideals(&sr_ideal(delta), &SqIdeal::unit(delta.n()))
}

pub fn eagon_reiner_check<F: Field>(delta: &SimplicialComplex) -> Result<EagonReiner> {
    if delta.is_void() {
        return Err(Error::ZeroModule);
    }
    let cohen_macaulay = invariants::<F>(&face_ring(delta)?)?.is_cm;
    let dual_ideal = sr_ideal(&alexander_dual(delta));
    let module = SqQuotient::from_sq_ideals(&SqIdeal::zero(delta.n()), &dual_ideal)?;
    let dual_linear = betti::<F>(&module)?.is_linear();
    Ok(EagonReiner { cohen_macaulay, dual_linear })
}
