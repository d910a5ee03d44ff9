//! Monomial ideals, the Stanley–Reisner correspondence and the
//! Alexander dual ideal `Ĩ = I_{Δ^∨}`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setcalc::{
    alexander_dual, full_mask, minimal_elements, IndexSet, SimplicialComplex, MAX_N,
};

/// A monomial `x^a`, stored by its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Result<Self> {
        if exps.len() > MAX_N {
            return Err(Error::AmbientTooLarge(exps.len(), MAX_N));
        }
        Ok(Monomial { exps })
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The squarefree monomial `x_F`.
    pub fn from_set(f: IndexSet) -> Self {
        let mut exps = vec![0; f.n()];
        for i in f.iter() {
            exps[i - 1] = 1;
        }
        Monomial { exps }
    }

    /// The variable `x_i`, 1-based.
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn support(&self) -> IndexSet {
        let bits = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        IndexSet::raw(self.n(), bits)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect() }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div_exact(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect() }
    }

    /// `self / gcd(self, m)`
    pub fn quotient_by_gcd(&self, m: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&m.exps).map(|(a, b)| a.saturating_sub(*b)).collect(),
        }
    }

    fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.support()
            .bits()
            .cmp(&other.support().bits())
            .then(self.degree().cmp(&other.degree()))
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A monomial ideal held by its minimal generators in canonical order
/// (colex on support, then degree).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// Keeps exactly the divisibility-minimal monomials of `gens`.
pub fn minimalize(n: usize, gens: &[Monomial]) -> Result<MonomialIdeal> {
    for g in gens {
        if g.n() != n {
            return Err(Error::ExponentLength { got: g.n(), expected: n });
        }
    }
    let mut v = gens.to_vec();
    v.sort();
    v.dedup();
    let keep = v
        .iter()
        .filter(|a| !v.iter().any(|b| b != *a && b.divides(a)))
        .cloned()
        .collect();
    Ok(MonomialIdeal { n, gens: keep })
}

impl MonomialIdeal {
    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![Monomial::one(n)] }
    }

    /// The monomial prime `P_F = (x_i : i ∈ F)`.
    pub fn prime(f: IndexSet) -> Self {
        let n = f.n();
        MonomialIdeal { n, gens: f.iter().map(|i| Monomial::var(n, i)).collect() }
    }

    pub fn from_generators(n: usize, gens: &[Monomial]) -> Result<Self> {
        minimalize(n, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// True iff some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Squarefree membership test for `x_F`.
    pub fn contains_set(&self, f: IndexSet) -> bool {
        self.contains(&Monomial::from_set(f))
    }

    /// `self ⊆ other`
    pub fn is_contained_in(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut all = self.gens.clone();
        all.extend(other.gens.iter().cloned());
        minimalize(self.n, &all).expect("same ambient size")
    }

    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        colon_by_monomial(self, m)
    }

    /// True iff the ideal is generated by variables (the zero ideal counts).
    pub fn is_variable_generated(&self) -> bool {
        self.gens.iter().all(|g| g.degree() == 1)
    }

    pub fn to_sq(&self) -> Result<SqIdeal> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(SqIdeal {
            n: self.n,
            gens: self.gens.iter().map(Monomial::support).collect::<Vec<_>>(),
        }
        .canonical())
    }
}

/// Minimal generators of `{f : f·m ∈ I}`.
pub fn colon_by_monomial(ideal: &MonomialIdeal, m: &Monomial) -> MonomialIdeal {
    let q: Vec<Monomial> = ideal.gens.iter().map(|u| u.quotient_by_gcd(m)).collect();
    minimalize(ideal.n, &q).expect("same ambient size")
}

/// A squarefree monomial ideal given by the supports of its minimal
/// generators. The unit ideal is the single generator `∅`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SqIdeal {
    n: usize,
    gens: Vec<IndexSet>,
}

impl SqIdeal {
    pub fn new(n: usize, gens: &[IndexSet]) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::AmbientTooLarge(n, MAX_N));
        }
        for g in gens {
            if g.n() != n {
                return Err(Error::AmbientMismatch(n, g.n()));
            }
        }
        Ok(SqIdeal { n, gens: gens.to_vec() }.canonical())
    }

    pub(crate) fn from_raw(n: usize, gens: &[u64]) -> Self {
        SqIdeal { n, gens: gens.iter().map(|&b| IndexSet::raw(n, b)).collect() }.canonical()
    }

    fn canonical(self) -> Self {
        let bits: Vec<u64> = self.gens.iter().map(|g| g.bits()).collect();
        let n = self.n;
        SqIdeal { n, gens: minimal_elements(&bits).into_iter().map(|b| IndexSet::raw(n, b)).collect() }
    }

    pub fn zero(n: usize) -> Self {
        SqIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        SqIdeal { n, gens: vec![IndexSet::empty(n)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[IndexSet] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_empty())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// `x_F ∈ I`
    pub fn contains_set(&self, f: IndexSet) -> bool {
        self.gens.iter().any(|g| g.is_subset(f))
    }

    pub fn is_contained_in(&self, other: &SqIdeal) -> bool {
        self.gens.iter().all(|g| other.contains_set(*g))
    }

    pub fn to_monomial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal { n: self.n, gens: self.gens.iter().map(|g| Monomial::from_set(*g)).collect() }
    }
}

/// `Δ` with faces `{F : x_F ∉ I}`. Rejects the unit ideal.
pub fn sr_complex(ideal: &SqIdeal) -> Result<SimplicialComplex> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = ideal.n;
    // facets are complements of the minimal transversals of the generators
    let facets: Vec<u64> = minimal_transversals(ideal)
        .into_iter()
        .map(|t| !t & full_mask(n))
        .collect();
    Ok(SimplicialComplex::from_raw_facets(n, &facets))
}

/// The Stanley–Reisner ideal `I_Δ`, generated by the minimal non-faces.
/// The void complex gives the unit ideal.
pub fn sr_ideal(delta: &SimplicialComplex) -> SqIdeal {
    let n = delta.n();
    SqIdeal { n, gens: delta.minimal_nonfaces() }.canonical()
}

/// Minimal sets meeting every generator.
fn minimal_transversals(ideal: &SqIdeal) -> Vec<u64> {
    let mut current: Vec<u64> = vec![0];
    for g in &ideal.gens {
        let g = g.bits();
        let mut next = Vec::new();
        for &t in &current {
            if t & g != 0 {
                next.push(t);
            } else {
                let mut rest = g;
                while rest != 0 {
                    let b = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    next.push(t | b);
                }
            }
        }
        current = minimal_elements(&next);
    }
    current
}

/// The Alexander dual ideal `Ĩ = I_{Δ^∨}` where `I = I_Δ`.
///
/// Generated by `x_{[n] \ F}` for the facets `F` of `Δ`. Rejects the
/// unit ideal; the zero ideal maps to the unit ideal.
pub fn tilde(ideal: &SqIdeal) -> Result<SqIdeal> {
    let delta = sr_complex(ideal)?;
    let n = ideal.n;
    let comps: Vec<u64> = delta.facets().iter().map(|f| f.complement().bits()).collect();
    Ok(SqIdeal::from_raw(n, &comps))
}

/// [`tilde`] on a general monomial ideal; rejects non-squarefree input.
pub fn tilde_monomial(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    Ok(tilde(&ideal.to_sq()?)?.to_monomial_ideal())
}

/// `tilde` extended by unit ↔ zero, which is what duality of quotients
/// `J/I` with `J = S` needs.
pub(crate) fn tilde_total(ideal: &SqIdeal) -> SqIdeal {
    if ideal.is_unit() {
        SqIdeal::zero(ideal.n)
    } else {
        tilde(ideal).expect("proper squarefree ideal")
    }
}

/// Second route to [`tilde`], through the complex and its dual.
pub fn tilde_via_complexes(ideal: &SqIdeal) -> Result<SqIdeal> {
    Ok(sr_ideal(&alexander_dual(&sr_complex(ideal)?)))
}
