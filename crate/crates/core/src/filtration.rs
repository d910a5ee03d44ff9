//! Prime filtrations `0 = M_0 ⊂ M_1 ⊂ ... ⊂ M_r = J/I` with cyclic
//! quotients `M_i / M_{i-1} ≅ S/P_{F_i}(-G_i)`.
//!
//! A filtration of `J/I` is recorded by its steps `(G_i, F_i)`; the
//! submodules are `I_i / I` with `I_i = I_{i-1} + (x_{G_i})`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{tilde_total, Monomial, MonomialIdeal, SqIdeal};
use crate::setcalc::{full_mask, IndexSet};
use crate::sqmod::{dualize_quotient, SqQuotient, StanleyDecomposition, StanleySpace};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiltrationStep {
    /// `G_i`, the degree shift.
    pub shift: IndexSet,
    /// `F_i`, so the step quotient is `S/P_{F_i}(-G_i)`.
    pub prime_support: IndexSet,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PrimeFiltration {
    base: SqQuotient,
    steps: Vec<FiltrationStep>,
}

impl PrimeFiltration {
    /// Unchecked; see [`validate_filtration`].
    pub fn new(base: SqQuotient, steps: Vec<FiltrationStep>) -> Self {
        PrimeFiltration { base, steps }
    }

    pub fn base(&self) -> &SqQuotient {
        &self.base
    }

    pub fn steps(&self) -> &[FiltrationStep] {
        &self.steps
    }

    /// `I = I_0 ⊂ I_1 ⊂ ... ⊂ I_r`
    pub fn ideal_chain(&self) -> Vec<MonomialIdeal> {
        let mut chain = vec![self.base.inner().clone()];
        for s in &self.steps {
            let last = chain.last().expect("nonempty");
            let next = last.sum(&MonomialIdeal::from_generators(
                self.base.n(),
                &[Monomial::from_set(s.shift)],
            )
            .expect("same ambient size"));
            chain.push(next);
        }
        chain
    }
}

/// Peels a colex-least maximal element `F` off the remaining support at
/// each step, emitting `(F, [n] \ F)`. The peel order is the ascending
/// order of the filtration: `x_F` for a maximal `F` spans a submodule
/// isomorphic to `S/P_{F^c}(-F)`.
pub fn facet_peel_filtration(m: &SqQuotient) -> Result<PrimeFiltration> {
    if !m.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let mut remaining: Vec<IndexSet> = m.support().to_vec();
    let mut steps = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let pos = (0..remaining.len())
            .find(|&i| {
                let f = remaining[i];
                !remaining.iter().any(|&g| g != f && f.is_subset(g))
            })
            .expect("a finite family has a maximal element");
        let f = remaining.remove(pos);
        steps.push(FiltrationStep { shift: f, prime_support: f.complement() });
    }
    Ok(PrimeFiltration { base: m.clone(), steps })
}

/// Checks that the steps describe a prime filtration of the base module.
///
/// For each step: `G_i ∩ F_i = ∅`, `(I_{i-1} : x_{G_i}) = P_{F_i}`, and in
/// every squarefree degree `H` the new part `I_i / I_{i-1}` is one
/// dimensional exactly when `G_i ⊆ H` and `(H \ G_i) ∩ F_i = ∅`. The chain
/// must end at `J`. Only squarefree degrees are inspected, which is
/// enough because the base is required to be squarefree.
pub fn validate_filtration(pf: &PrimeFiltration) -> bool {
    check_filtration(pf).is_ok()
}

/// Like [`validate_filtration`], naming the first failed condition.
pub fn check_filtration(pf: &PrimeFiltration) -> Result<()> {
    let base = &pf.base;
    let n = base.n();
    let bad = |msg: String| Err(Error::InvalidFiltration(msg));
    if !base.is_squarefree() {
        return bad("base module is not squarefree".into());
    }
    let mut current = base.inner().clone();
    for (k, s) in pf.steps.iter().enumerate() {
        let (g, f) = (s.shift, s.prime_support);
        if g.n() != n || f.n() != n {
            return bad(format!("step {k}: ambient size mismatch"));
        }
        if !g.is_disjoint(f) {
            return bad(format!("step {k}: shift {g} meets prime support {f}"));
        }
        let xg = Monomial::from_set(g);
        if current.contains(&xg) {
            return bad(format!("step {k}: x_{g} already in the previous ideal"));
        }
        if current.colon(&xg) != MonomialIdeal::prime(f) {
            return bad(format!("step {k}: colon by x_{g} is not P_{f}"));
        }
        let next = current.sum(&MonomialIdeal::from_generators(n, &[xg])?);
        for h in 0..=full_mask(n) {
            let h = IndexSet::raw(n, h);
            let new = next.contains_set(h) && !current.contains_set(h);
            let expected = g.is_subset(h) && h.difference(g).is_disjoint(f);
            if new != expected {
                return bad(format!("step {k}: degree {h} mismatch"));
            }
        }
        current = next;
    }
    if &current != base.outer() {
        return bad("chain does not end at the outer ideal".into());
    }
    Ok(())
}

/// The filtration of `M^∨` carried by the chain `J̃ = Ĩ_r ⊂ ... ⊂ Ĩ_0 = Ĩ`,
/// with steps `(F_i, G_i)` in reverse order.
pub fn dualize_filtration(pf: &PrimeFiltration) -> Result<PrimeFiltration> {
    check_filtration(pf)?;
    if !pf.base.has_squarefree_ideals() {
        return Err(Error::NotSquarefree);
    }
    let n = pf.base.n();
    let chain: Vec<SqIdeal> =
        pf.ideal_chain().iter().map(|i| i.to_sq().map(|s| tilde_total(&s))).collect::<Result<_>>()?;
    let dual_base = dualize_quotient(&pf.base)?;
    let steps: Vec<FiltrationStep> = pf
        .steps
        .iter()
        .rev()
        .map(|s| FiltrationStep { shift: s.prime_support, prime_support: s.shift })
        .collect();

    // the swapped steps must regenerate the dual chain
    let mut current = chain.last().expect("nonempty").to_monomial_ideal();
    for (k, s) in steps.iter().enumerate() {
        let next = current.sum(&MonomialIdeal::from_generators(n, &[Monomial::from_set(s.shift)])?);
        let expected = chain[chain.len() - 2 - k].to_monomial_ideal();
        if next != expected {
            return Err(Error::Internal(format!(
                "dual chain step {k}: adding x_{} does not give the dual ideal",
                s.shift
            )));
        }
        current = next;
    }
    let dual = PrimeFiltration { base: dual_base, steps };
    check_filtration(&dual).map_err(|e| Error::Internal(format!("dual filtration: {e}")))?;
    Ok(dual)
}

/// The decomposition `⊕ x_{G_i} K[x_j : j ∉ F_i]` induced by a filtration.
pub fn filtration_to_decomposition(pf: &PrimeFiltration) -> Result<StanleyDecomposition> {
    check_filtration(pf)?;
    let spaces = pf
        .steps
        .iter()
        .map(|s| StanleySpace::new(s.shift, s.shift.union(s.prime_support.complement())))
        .collect::<Result<Vec<_>>>()?;
    StanleyDecomposition::new(pf.base.n(), spaces)
}
