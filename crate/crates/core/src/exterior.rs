//! Exterior algebra `E = K<e_1, ..., e_n>` with exact signs, the squarefree
//! E-module attached to a monomial quotient, the transfer map `θ`, and the
//! dual `N^* = Hom_K(N, K)` with Stanley decompositions on both sides.
//!
//! The E-module `N` attached to `J/I` has basis `e_F` for `F` in the
//! support of `J/I`; right multiplication by `e_L` sends `e_F` to
//! `e_F ∧ e_L` when `F ∪ L` stays in the support and to zero otherwise.
//! Basis functionals of `N^*` are written `e_F^*` and sit in degree
//! `[n] \ F`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::setcalc::{full_mask, minimal_elements, sigma_bits, submasks, IndexSet};
use crate::sqmod::{SqQuotient, StanleyDecomposition, StanleySpace};

/// A linear combination of basis monomials `e_F`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtElement<F> {
    n: usize,
    terms: BTreeMap<u64, F>,
}

impl<F: Field> ExtElement<F> {
    pub fn zero(n: usize) -> Self {
        ExtElement { n, terms: BTreeMap::new() }
    }

    /// `e_F`
    pub fn basis(f: IndexSet) -> Self {
        Self::monomial(F::one(), f)
    }

    /// `c · e_F`
    pub fn monomial(c: F, f: IndexSet) -> Self {
        let mut out = Self::zero(f.n());
        out.add_term(f.bits(), c);
        out
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (IndexSet, F)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (f, c) in terms {
            if f.n() != n {
                return Err(Error::AmbientMismatch(f.n(), n));
            }
            out.add_term(f.bits(), c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, f: IndexSet) -> F {
        self.terms.get(&f.bits()).cloned().unwrap_or_else(F::zero)
    }

    /// Nonzero terms in colex order of the degree.
    pub fn terms(&self) -> impl Iterator<Item = (IndexSet, &F)> + '_ {
        self.terms.iter().map(|(&b, c)| (IndexSet::raw(self.n, b), c))
    }

    fn add_term(&mut self, f: u64, c: F) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(f).or_insert_with(F::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&f);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (&f, c) in &other.terms {
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.n);
        for (&f, v) in &self.terms {
            out.add_term(f, v.clone() * c.clone());
        }
        out
    }

    /// `e_F ∧ e_G = (-1)^{σ(F,G)} e_{F ∪ G}` for disjoint `F, G`, else 0.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (&f, a) in &self.terms {
            for (&g, b) in &other.terms {
                if f & g == 0 {
                    out.add_term(f | g, F::sign(sigma_bits(f, g)) * a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    /// Drops every term whose degree fails `keep`.
    fn retain(mut self, mut keep: impl FnMut(u64) -> bool) -> Self {
        self.terms.retain(|&f, _| keep(f));
        self
    }
}

impl<F: Field> fmt::Debug for ExtElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for ExtElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (deg, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*e{deg}")?;
        }
        Ok(())
    }
}

/// The squarefree E-module `N = J_E / I_E` of a squarefree monomial quotient.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtQuotientModule {
    n: usize,
    support: Vec<IndexSet>,
    generators: Vec<IndexSet>,
}

impl ExtQuotientModule {
    /// From an order-convex support family.
    pub fn from_support(n: usize, support: &[IndexSet]) -> Result<Self> {
        let mut bits = Vec::with_capacity(support.len());
        for f in support {
            if f.n() != n {
                return Err(Error::AmbientMismatch(f.n(), n));
            }
            bits.push(f.bits());
        }
        bits.sort_unstable();
        bits.dedup();
        let module = Self::from_bits(n, &bits);
        let convex = bits.iter().all(|&f| {
            bits.iter().filter(|&&g| f & g == f).all(|&g| {
                submasks(g & !f).all(|s| bits.binary_search(&(f | s)).is_ok())
            })
        });
        if !convex {
            return Err(Error::InvalidPresentation("support is not order-convex".into()));
        }
        Ok(module)
    }

    fn from_bits(n: usize, bits: &[u64]) -> Self {
        ExtQuotientModule {
            n,
            support: bits.iter().map(|&b| IndexSet::raw(n, b)).collect(),
            generators: minimal_elements(bits).into_iter().map(|b| IndexSet::raw(n, b)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Basis degrees, colex order.
    pub fn support(&self) -> &[IndexSet] {
        &self.support
    }

    /// Degrees `G_i` of the minimal generators `n_i = e_{G_i}`.
    pub fn generator_degrees(&self) -> &[IndexSet] {
        &self.generators
    }

    pub fn contains_degree(&self, f: IndexSet) -> bool {
        self.support.binary_search(&f).is_ok()
    }

    fn contains_bits(&self, f: u64) -> bool {
        self.contains_degree(IndexSet::raw(self.n, f))
    }

    /// Right action `x · y`.
    pub fn act<F: Field>(&self, x: &ExtElement<F>, y: &ExtElement<F>) -> Result<ExtElement<F>> {
        self.check_element(x)?;
        Ok(x.wedge(y)?.retain(|f| self.contains_bits(f)))
    }

    fn check_element<F: Field>(&self, x: &ExtElement<F>) -> Result<()> {
        if x.n != self.n {
            return Err(Error::AmbientMismatch(x.n, self.n));
        }
        if let Some((f, _)) = x.terms().find(|(f, _)| !self.contains_degree(*f)) {
            return Err(Error::InvalidPresentation(format!("degree {f} is not in the module")));
        }
        Ok(())
    }

    /// Right action on `N^*`, with `φ` given in the dual basis `e_F^*`
    /// (coordinates indexed by the support of `N`, not of `N^*`).
    ///
    /// `(e_H · φ)(y) = φ(y · e_H)` is a left action; the right action follows
    /// the bimodule sign rule, `φ · e_H = (-1)^{|H| |F|} e_H · φ` on `e_F^*`.
    pub fn functional_act<F: Field>(&self, phi: &ExtElement<F>, h: IndexSet) -> Result<ExtElement<F>> {
        self.check_element(phi)?;
        if h.n() != self.n {
            return Err(Error::AmbientMismatch(h.n(), self.n));
        }
        let h = h.bits();
        let mut out = ExtElement::zero(self.n);
        for (&f, c) in &phi.terms {
            // e_F^*(e_G ∧ e_H) is nonzero only for G = F \ H
            if h & !f != 0 || !self.contains_bits(f & !h) {
                continue;
            }
            let g = f & !h;
            let k = sigma_bits(g, h) + h.count_ones() * f.count_ones();
            out.add_term(g, F::sign(k) * c.clone());
        }
        Ok(out)
    }
}

/// `φ(y)` for `φ` in the dual basis.
pub fn pairing<F: Field>(phi: &ExtElement<F>, y: &ExtElement<F>) -> F {
    let mut out = F::zero();
    for (f, a) in &phi.terms {
        if let Some(b) = y.terms.get(f) {
            out += a.clone() * b.clone();
        }
    }
    out
}

/// The E-module of a squarefree `M`: same support, `n_i = e_{G_i}`.
pub fn to_exterior(m: &SqQuotient) -> Result<ExtQuotientModule> {
    if !m.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(ExtQuotientModule::from_bits(m.n(), &m.support_bits()))
}

/// One summand `a · x_L · m_i` of a presentation of a homogeneous element.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentationTerm<F> {
    pub coeff: F,
    /// Index into `generator_degrees()` of the quotient.
    pub generator: usize,
    pub multiplier: IndexSet,
}

fn presentation_degree<F>(m: &SqQuotient, gens: &[IndexSet], terms: &[PresentationTerm<F>]) -> Result<IndexSet> {
    let mut degree = None;
    for t in terms {
        let g = *gens.get(t.generator).ok_or_else(|| {
            Error::InvalidPresentation(format!("generator index {} out of range", t.generator))
        })?;
        if t.multiplier.n() != m.n() {
            return Err(Error::AmbientMismatch(t.multiplier.n(), m.n()));
        }
        if !g.is_disjoint(t.multiplier) {
            return Err(Error::InvalidPresentation(format!(
                "multiplier {} meets generator degree {g}",
                t.multiplier
            )));
        }
        let f = g.union(t.multiplier);
        if *degree.get_or_insert(f) != f {
            return Err(Error::InvalidPresentation("terms of different degrees".into()));
        }
    }
    degree.ok_or_else(|| Error::InvalidPresentation("empty presentation".into()))
}

/// `θ(Σ a_i x_{L_i} m_i) = Σ (-1)^{σ(G_i, L_i)} a_i n_i e_{L_i}`, evaluated
/// with actual wedge products in `N`.
pub fn theta<F: Field>(m: &SqQuotient, terms: &[PresentationTerm<F>]) -> Result<ExtElement<F>> {
    let gens = m.generator_degrees();
    presentation_degree(m, &gens, terms)?;
    let module = to_exterior(m)?;
    let mut out = ExtElement::zero(m.n());
    for t in terms {
        let g = gens[t.generator];
        let ni = ExtElement::basis(g);
        let prod = module.act(&ni, &ExtElement::basis(t.multiplier))?;
        let sign = F::sign(sigma_bits(g.bits(), t.multiplier.bits()));
        out = out.add(&prod.scale(&(sign * t.coeff.clone())))?;
    }
    Ok(out)
}

/// The coefficient of `x_F` in `Σ a_i x_{L_i} m_i`, computed on the
/// S-side (zero when `x_F` lies in the inner ideal).
pub fn evaluate_presentation<F: Field>(m: &SqQuotient, terms: &[PresentationTerm<F>]) -> Result<(IndexSet, F)> {
    let gens = m.generator_degrees();
    let f = presentation_degree(m, &gens, terms)?;
    let mut c = F::zero();
    if m.contains_degree(f) {
        for t in terms {
            c += t.coeff.clone();
        }
    }
    Ok((f, c))
}

/// `N^*`, supported on the complements of the support of `N`.
pub fn e_dual(n: &ExtQuotientModule) -> ExtQuotientModule {
    let mask = full_mask(n.n);
    let mut bits: Vec<u64> = n.support.iter().map(|f| !f.bits() & mask).collect();
    bits.sort_unstable();
    ExtQuotientModule::from_bits(n.n, &bits)
}

/// A Stanley space `n_i K<A_i>` of an E-module.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtStanleySpace {
    pub generator: IndexSet,
    pub free: IndexSet,
}

/// A space of the dual decomposition `b_i K<A_i>` together with the
/// evaluated pairings `(b_i e_H)(n_i e_{A_i \ H})` for every `H ⊆ A_i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EDualSpace {
    pub generator: IndexSet,
    pub free: IndexSet,
    /// `(H, ±1)` in colex order of `H`.
    pub pairing_signs: Vec<(IndexSet, i8)>,
}

impl EDualSpace {
    pub fn space(&self) -> ExtStanleySpace {
        ExtStanleySpace { generator: self.generator, free: self.free }
    }
}

/// Checks that the spaces `{F_i ∪ H : H ⊆ A_i}` partition the support.
pub fn validate_ext_decomposition(n: &ExtQuotientModule, d: &[ExtStanleySpace]) -> bool {
    let mut seen = vec![false; n.support.len()];
    for s in d {
        if s.generator.n() != n.n || s.free.n() != n.n || !s.generator.is_disjoint(s.free) {
            return false;
        }
        for h in submasks(s.free.bits()) {
            let Ok(k) = n.support.binary_search(&IndexSet::raw(n.n, s.generator.bits() | h)) else {
                return false;
            };
            if std::mem::replace(&mut seen[k], true) {
                return false;
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// `b_i = (n_i e_{A_i})^*` as a functional in the dual basis.
fn dual_generator<F: Field>(s: &ExtStanleySpace) -> ExtElement<F> {
    let (f, a) = (s.generator.bits(), s.free.bits());
    ExtElement::monomial(F::sign(sigma_bits(f, a)), s.generator.union(s.free))
}

fn sign_of<F: Field>(v: &F) -> Option<i8> {
    if *v == F::one() {
        Some(1)
    } else if *v == -F::one() {
        Some(-1)
    } else {
        None
    }
}

/// The decomposition `N^* = ⊕ b_i K<A_i>` with `b_i = (n_i e_{A_i})^*` in
/// degree `[n] \ (F_i ∪ A_i)`.
///
/// Every pairing `(b_i e_H)(n_i e_L)` with `H, L ⊆ A_i` is evaluated: it
/// must be `±1` for `L = A_i \ H` and zero otherwise. A violation is an
/// internal error.
pub fn edual_decomposition<F: Field>(n: &ExtQuotientModule, d: &[ExtStanleySpace]) -> Result<Vec<EDualSpace>> {
    if !validate_ext_decomposition(n, d) {
        return Err(Error::InvalidDecomposition("spaces do not partition the support".into()));
    }
    let dual = e_dual(n);
    let mut out = Vec::with_capacity(d.len());
    for s in d {
        let b = dual_generator::<F>(s);
        let ni = ExtElement::<F>::basis(s.generator);
        let mut signs = Vec::new();
        for h in submasks(s.free.bits()) {
            let bh = n.functional_act(&b, IndexSet::raw(n.n, h))?;
            for l in submasks(s.free.bits()) {
                let y = n.act(&ni, &ExtElement::basis(IndexSet::raw(n.n, l)))?;
                let v = pairing(&bh, &y);
                if l == s.free.bits() & !h {
                    let sign = sign_of(&v).ok_or_else(|| {
                        Error::Internal(format!("pairing of b_{} e_{h:#b} is {v}", s.generator))
                    })?;
                    signs.push((IndexSet::raw(n.n, h), sign));
                } else if !v.is_zero() {
                    return Err(Error::Internal(format!("stray pairing {v} in space {}", s.generator)));
                }
            }
        }
        let generator = s.generator.union(s.free).complement();
        out.push(EDualSpace { generator, free: s.free, pairing_signs: signs });
    }
    let spaces: Vec<ExtStanleySpace> = out.iter().map(EDualSpace::space).collect();
    if !validate_ext_decomposition(&dual, &spaces) {
        return Err(Error::Internal("dual spaces do not partition the dual support".into()));
    }
    Ok(out)
}

/// `x_{F} K[Z]` becomes `e_F K<Z \ F>`.
pub fn decomposition_to_exterior(d: &StanleyDecomposition) -> Vec<ExtStanleySpace> {
    d.spaces()
        .iter()
        .map(|s| ExtStanleySpace { generator: s.bottom, free: s.top.difference(s.bottom) })
        .collect()
}

/// `e_F K<A>` becomes `x_F K[F ∪ A]`.
pub fn decomposition_from_exterior(n: usize, d: &[ExtStanleySpace]) -> Result<StanleyDecomposition> {
    let spaces = d
        .iter()
        .map(|s| {
            if !s.generator.is_disjoint(s.free) {
                return Err(Error::InvalidDecomposition(format!(
                    "free set {} meets generator {}",
                    s.free, s.generator
                )));
            }
            StanleySpace::new(s.generator, s.generator.union(s.free))
        })
        .collect::<Result<Vec<_>>>()?;
    StanleyDecomposition::new(n, spaces)
}
