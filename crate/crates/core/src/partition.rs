//! Partitions `Δ = [F_1, G_1] ∪ ... ∪ [F_t, G_t]` of a simplicial complex
//! into disjoint face intervals whose tops are exactly the facets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{face_ring, invariants};
use crate::ideals::{sr_ideal, SqIdeal};
use crate::setcalc::{alexander_dual, IndexSet, Interval, SimplicialComplex};
use crate::sqmod::{
    dualize_decomposition, exact_cover, validate_decomposition, SqQuotient, StanleyDecomposition, StanleySpace,
};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ComplexPartition {
    pub complex: SimplicialComplex,
    pub intervals: Vec<Interval>,
}

/// The first partition in search order, or `None` if `Δ` is not
/// partitionable.
///
/// The smallest uncovered face is always the bottom of the next interval
/// and its top ranges over the facets containing it, in colex order. Every
/// facet is then a top automatically, since only a facet can cover it.
pub fn find_partition(delta: &SimplicialComplex) -> Result<Option<ComplexPartition>> {
    if delta.is_void() {
        return Err(Error::ZeroModule);
    }
    let faces: Vec<u64> = delta.faces().iter().map(|f| f.bits()).collect();
    let facets: Vec<u64> = delta.facets().iter().map(|f| f.bits()).collect();
    let (found, _) = exact_cover(&faces, |e, _| facets.iter().copied().filter(|&g| g & e == e).collect());
    Ok(found.map(|pairs| ComplexPartition {
        complex: delta.clone(),
        intervals: pairs
            .into_iter()
            .map(|(b, t)| Interval::new(IndexSet::raw(delta.n(), b), IndexSet::raw(delta.n(), t)).expect("bottom below top"))
            .collect(),
    }))
}

fn as_decomposition(p: &ComplexPartition) -> StanleyDecomposition {
    let spaces = p.intervals.iter().map(|iv| StanleySpace { bottom: iv.bottom, top: iv.top }).collect();
    StanleyDecomposition::new(p.complex.n(), spaces).expect("same ambient size")
}

/// Disjoint intervals covering the faces, every top a facet.
pub fn validate_partition(p: &ComplexPartition) -> bool {
    let Ok(m) = face_ring(&p.complex) else { return false };
    p.intervals.iter().all(|iv| p.complex.facets().contains(&iv.top))
        && validate_decomposition(&m, &as_decomposition(p))
}

/// `S/I_Δ = ⊕ x_{F_i} K[x_j : j ∈ G_i]`.
pub fn partition_to_decomposition(p: &ComplexPartition) -> Result<StanleyDecomposition> {
    if !validate_partition(p) {
        return Err(Error::InvalidPartition("not a partition of the complex".into()));
    }
    Ok(as_decomposition(p))
}

/// Both sides of the equivalence between partitions of `Δ` and
/// decompositions of `I_{Δ^∨}` whose bottoms are minimal generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PartitionDualityReport {
    pub cohen_macaulay: bool,
    pub partitionable: bool,
    /// A decomposition of `I_{Δ^∨}` with every bottom in `G(I_{Δ^∨})`
    /// exists, found by its own search.
    pub generator_bottoms: bool,
    /// The dual of the found partition has all bottoms in `G(I_{Δ^∨})`.
    pub transform_ok: Option<bool>,
}

impl PartitionDualityReport {
    pub fn equivalence_holds(&self) -> bool {
        self.partitionable == self.generator_bottoms && self.transform_ok != Some(false)
    }
}

/// `I_{Δ^∨}` as the module `I/0`.
pub fn dual_ideal_module(delta: &SimplicialComplex) -> Result<SqQuotient> {
    SqQuotient::from_sq_ideals(&SqIdeal::zero(delta.n()), &sr_ideal(&alexander_dual(delta)))
}

/// A decomposition of `m` whose bottoms are all minimal elements of its
/// support.
pub fn generator_bottom_decomposition(m: &SqQuotient) -> Result<Option<StanleyDecomposition>> {
    if !m.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let support = m.support_bits();
    let gens: Vec<u64> = m.generator_degrees().iter().map(|g| g.bits()).collect();
    let (found, _) = exact_cover(&support, |e, i| {
        if gens.contains(&e) {
            support[i..].iter().copied().filter(|&g| g & e == e).collect()
        } else {
            Vec::new()
        }
    });
    Ok(found.map(|pairs| {
        let spaces = pairs
            .into_iter()
            .map(|(b, t)| StanleySpace { bottom: IndexSet::raw(m.n(), b), top: IndexSet::raw(m.n(), t) })
            .collect();
        StanleyDecomposition::new(m.n(), spaces).expect("same ambient size")
    }))
}

pub fn partition_duality_check<F: Field>(delta: &SimplicialComplex) -> Result<PartitionDualityReport> {
    let cohen_macaulay = invariants::<F>(&face_ring(delta)?)?.is_cm;
    let partition = find_partition(delta)?;
    let dual = dual_ideal_module(delta)?;
    let gens = dual.generator_degrees();
    let transform_ok = match &partition {
        Some(p) => {
            let d = dualize_decomposition(&partition_to_decomposition(p)?);
            Some(validate_decomposition(&dual, &d) && d.spaces().iter().all(|s| gens.contains(&s.bottom)))
        }
        None => None,
    };
    let generator_bottoms = generator_bottom_decomposition(&dual)?.is_some();
    Ok(PartitionDualityReport { cohen_macaulay, partitionable: partition.is_some(), generator_bottoms, transform_ok })
}
