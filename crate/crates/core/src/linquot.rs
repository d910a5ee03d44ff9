//! Linear quotients: orders `u_1, ..., u_s` of `G(I)` such that every
//! `(u_1, ..., u_{i-1}) : u_i` is generated by variables.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{Monomial, MonomialIdeal};
use crate::setcalc::IndexSet;
use crate::sqmod::{StanleyDecomposition, StanleySpace};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LinearQuotientOrder {
    pub order: Vec<Monomial>,
    /// Variables generating `(u_1, ..., u_{i-1}) : u_i`; empty for `i = 1`.
    pub colon_gens: Vec<IndexSet>,
}

impl LinearQuotientOrder {
    /// `r(I) = max |G(I_i)|`, 0 for a principal ideal.
    pub fn r(&self) -> usize {
        self.colon_gens.iter().map(|g| g.len()).max().unwrap_or(0)
    }

    /// `n - r(I)`
    pub fn depth(&self) -> usize {
        self.order.first().map_or(0, Monomial::n) - self.r()
    }
}

fn prefix_colon(n: usize, prefix: &[Monomial], u: &Monomial) -> MonomialIdeal {
    MonomialIdeal::from_generators(n, prefix).expect("same ambient size").colon(u)
}

fn variables(ideal: &MonomialIdeal) -> IndexSet {
    ideal.generators().iter().fold(IndexSet::empty(ideal.n()), |acc, g| acc.union(g.support()))
}

fn check_ideal(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        return Err(Error::ZeroModule);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(())
}

struct Search<'a> {
    n: usize,
    gens: &'a [Monomial],
    used: Vec<bool>,
    order: Vec<usize>,
    failed: HashSet<Vec<bool>>,
}

impl Search<'_> {
    fn dfs(&mut self) -> bool {
        if self.order.len() == self.gens.len() {
            return true;
        }
        if self.failed.contains(&self.used) {
            return false;
        }
        let prefix: Vec<Monomial> = self.order.iter().map(|&k| self.gens[k].clone()).collect();
        for k in 0..self.gens.len() {
            if self.used[k] {
                continue;
            }
            if !prefix.is_empty() && !prefix_colon(self.n, &prefix, &self.gens[k]).is_variable_generated() {
                continue;
            }
            self.used[k] = true;
            self.order.push(k);
            if self.dfs() {
                return true;
            }
            self.order.pop();
            self.used[k] = false;
        }
        // admissibility of the rest depends only on which generators are used
        self.failed.insert(self.used.clone());
        false
    }
}

/// The first linear-quotient order in depth-first search over the
/// canonical generator order, or `None` if `I` has no linear quotients.
pub fn find_linear_quotients(ideal: &MonomialIdeal) -> Result<Option<LinearQuotientOrder>> {
    check_ideal(ideal)?;
    let gens = ideal.generators();
    let mut search = Search {
        n: ideal.n(),
        gens,
        used: vec![false; gens.len()],
        order: Vec::with_capacity(gens.len()),
        failed: HashSet::new(),
    };
    if !search.dfs() {
        return Ok(None);
    }
    let order: Vec<Monomial> = search.order.iter().map(|&k| gens[k].clone()).collect();
    Ok(Some(with_colons(ideal.n(), order)))
}

fn with_colons(n: usize, order: Vec<Monomial>) -> LinearQuotientOrder {
    let colon_gens = (0..order.len())
        .map(|i| if i == 0 { IndexSet::empty(n) } else { variables(&prefix_colon(n, &order[..i], &order[i])) })
        .collect();
    LinearQuotientOrder { order, colon_gens }
}

/// Checks that `l` orders exactly `G(I)` with linear quotients and that
/// the recorded colon generators are right.
pub fn validate_order(ideal: &MonomialIdeal, l: &LinearQuotientOrder) -> bool {
    let mut sorted = l.order.clone();
    sorted.sort();
    if sorted != ideal.generators() || l.colon_gens.len() != l.order.len() {
        return false;
    }
    let n = ideal.n();
    (0..l.order.len()).all(|i| {
        if i == 0 {
            return l.colon_gens[0].is_empty();
        }
        let colon = prefix_colon(n, &l.order[..i], &l.order[i]);
        colon.is_variable_generated() && variables(&colon) == l.colon_gens[i]
    })
}

/// The spaces `u_i K[Z_i]` with `Z_i = X \ G(I_i)`, as `(u_i, Z_i)`.
pub fn lq_spaces(ideal: &MonomialIdeal, l: &LinearQuotientOrder) -> Result<Vec<(Monomial, IndexSet)>> {
    if !validate_order(ideal, l) {
        return Err(Error::InvalidOrder("not a linear-quotient order of G(I)".into()));
    }
    Ok(l.order.iter().cloned().zip(l.colon_gens.iter().map(|g| g.complement())).collect())
}

/// `I = ⊕ u_i K[Z_i]` for a squarefree `I`, with `sdepth = n - r(I)`.
pub fn lq_decomposition(ideal: &MonomialIdeal, l: &LinearQuotientOrder) -> Result<StanleyDecomposition> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let spaces = lq_spaces(ideal, l)?
        .into_iter()
        .map(|(u, z)| StanleySpace::new(u.support(), u.support().union(z)))
        .collect::<Result<Vec<_>>>()?;
    StanleyDecomposition::new(ideal.n(), spaces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::all_sq_ideals;
    use crate::homology::invariants;
    use crate::ideals::minimalize;
    use crate::sqmod::{validate_decomposition, SqQuotient};
    use crate::DefaultField;

    fn ideal(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
        let g: Vec<Monomial> =
            gens.iter().map(|v| Monomial::from_set(IndexSet::from_indices(n, v).unwrap())).collect();
        minimalize(n, &g).unwrap()
    }

    fn set(n: usize, v: &[usize]) -> IndexSet {
        IndexSet::from_indices(n, v).unwrap()
    }

    /// Every ordering of `G(I)`, checked directly.
    fn brute_force_has_lq(ideal: &MonomialIdeal) -> bool {
        fn rec(n: usize, rest: &mut Vec<Monomial>, prefix: &mut Vec<Monomial>) -> bool {
            if rest.is_empty() {
                return true;
            }
            for k in 0..rest.len() {
                let u = rest.remove(k);
                let ok = prefix.is_empty() || prefix_colon(n, prefix, &u).is_variable_generated();
                prefix.push(u);
                if ok && rec(n, rest, prefix) {
                    return true;
                }
                let u = prefix.pop().unwrap();
                rest.insert(k, u);
            }
            false
        }
        rec(ideal.n(), &mut ideal.generators().to_vec(), &mut Vec::new())
    }

    #[test]
    fn examples() {
        let i = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let l = find_linear_quotients(&i).unwrap().unwrap();
        assert_eq!(l.order, i.generators());
        assert_eq!(l.colon_gens, vec![set(3, &[]), set(3, &[2]), set(3, &[1])]);
        assert_eq!(l.r(), 1);
        assert_eq!(l.depth(), 2);

        let l = find_linear_quotients(&ideal(4, &[&[1, 2, 3]])).unwrap().unwrap();
        assert_eq!((l.r(), l.depth()), (0, 4));

        assert_eq!(find_linear_quotients(&ideal(4, &[&[1, 2], &[3, 4]])).unwrap(), None);
        assert_eq!(find_linear_quotients(&MonomialIdeal::zero(2)), Err(Error::ZeroModule));
        assert_eq!(find_linear_quotients(&MonomialIdeal::unit(2)), Err(Error::UnitIdeal));
    }

    #[test]
    fn decomposition_examples() {
        let i = ideal(2, &[&[1], &[2]]);
        let l = find_linear_quotients(&i).unwrap().unwrap();
        let d = lq_decomposition(&i, &l).unwrap();
        let sp = |b: &[usize], t: &[usize]| StanleySpace::new(set(2, b), set(2, t)).unwrap();
        assert_eq!(d.spaces(), &[sp(&[1], &[1, 2]), sp(&[2], &[2])]);
        assert_eq!((d.sdepth(), d.hreg()), (Some(1), Some(1)));

        let i = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let d = lq_decomposition(&i, &find_linear_quotients(&i).unwrap().unwrap()).unwrap();
        assert_eq!(d.sdepth(), Some(2));
        let m = SqQuotient::ideal_module(&i).unwrap();
        assert_eq!(invariants::<DefaultField>(&m).unwrap().depth, 2);

        let i = ideal(3, &[&[2, 3]]);
        let d = lq_decomposition(&i, &find_linear_quotients(&i).unwrap().unwrap()).unwrap();
        assert_eq!(d.spaces(), &[StanleySpace::new(set(3, &[2, 3]), IndexSet::full(3)).unwrap()]);
    }

    #[test]
    fn invalid_orders_rejected() {
        let i = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let mut l = find_linear_quotients(&i).unwrap().unwrap();
        l.colon_gens[1] = set(3, &[3]);
        assert!(!validate_order(&i, &l));
        assert!(matches!(lq_decomposition(&i, &l), Err(Error::InvalidOrder(_))));
        let bad = LinearQuotientOrder {
            order: ideal(4, &[&[1, 2], &[3, 4]]).generators().to_vec(),
            colon_gens: vec![set(4, &[]), set(4, &[1, 2])],
        };
        assert!(!validate_order(&ideal(4, &[&[1, 2], &[3, 4]]), &bad));
    }

    #[test]
    fn non_squarefree_emission() {
        let g = |v: &[u16]| Monomial::new(v.to_vec()).unwrap();
        let i = minimalize(2, &[g(&[2, 0]), g(&[1, 1])]).unwrap();
        let l = find_linear_quotients(&i).unwrap().unwrap();
        assert_eq!(l.r(), 1);
        assert_eq!(lq_spaces(&i, &l).unwrap().len(), 2);
        assert_eq!(lq_decomposition(&i, &l), Err(Error::NotSquarefree));
    }

    #[test]
    fn search_is_complete_and_depth_matches() {
        for n in 1..=4 {
            for sq in all_sq_ideals(n) {
                if sq.is_zero() || sq.is_unit() {
                    continue;
                }
                let i = sq.to_monomial_ideal();
                let found = find_linear_quotients(&i).unwrap();
                assert_eq!(found.is_some(), brute_force_has_lq(&i), "{i:?}");
                let Some(l) = found else { continue };
                assert!(validate_order(&i, &l));
                let d = lq_decomposition(&i, &l).unwrap();
                let m = SqQuotient::ideal_module(&i).unwrap();
                assert!(validate_decomposition(&m, &d));
                let depth = invariants::<DefaultField>(&m).unwrap().depth;
                assert_eq!(d.sdepth(), Some(n - l.r()));
                assert_eq!(n - l.r(), depth);
                let max_deg = i.generators().iter().map(|g| g.degree() as usize).max();
                assert_eq!(d.hreg(), max_deg);
            }
        }
    }
}
