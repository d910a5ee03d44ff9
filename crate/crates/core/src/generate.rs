//! Instance generators: exhaustive enumeration of complexes, squarefree
//! ideals and nested ideal pairs for small `n`, plus seeded sampling.
//!
//! For `n <= 6` a family of subsets of `[n]` fits in one `u64` (bit `F`
//! set iff `F` is in the family), which is how the enumerators work.

use rand::Rng;

use crate::ideals::SqIdeal;
use crate::setcalc::{full_mask, minimal_elements, SimplicialComplex};
use crate::sqmod::SqQuotient;

/// Largest `n` for which families are packed into a word.
pub const FAMILY_MAX_N: usize = 6;

fn family_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

/// Members of a packed family, colex order.
pub fn family_members(fam: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(fam.count_ones() as usize);
    let mut rest = fam;
    while rest != 0 {
        out.push(rest.trailing_zeros() as u64);
        rest &= rest - 1;
    }
    out
}

/// Every down-closed family of subsets of `[n]` (the void family included).
pub fn downsets(n: usize) -> Vec<u64> {
    assert!(n <= FAMILY_MAX_N, "families are packed for n <= {FAMILY_MAX_N}");
    fn rec(n: usize, f: u64, fam: u64, out: &mut Vec<u64>) {
        if f == 1u64 << n {
            out.push(fam);
            return;
        }
        rec(n, f + 1, fam, out);
        let closed = (0..n).filter(|j| f >> j & 1 == 1).all(|j| fam >> (f & !(1 << j)) & 1 == 1);
        if closed {
            rec(n, f + 1, fam | 1 << f, out);
        }
    }
    let mut out = Vec::new();
    rec(n, 0, 0, &mut out);
    out
}

/// Every up-closed family (squarefree degrees of a squarefree ideal).
pub fn upsets(n: usize) -> Vec<u64> {
    let mask = family_mask(n);
    downsets(n).into_iter().map(|d| !d & mask).collect()
}

/// The ideal whose squarefree degrees form the up-set `fam`.
pub fn ideal_of_upset(n: usize, fam: u64) -> SqIdeal {
    SqIdeal::from_raw(n, &minimal_elements(&family_members(fam)))
}

/// All simplicial complexes on `[n]` other than the void one.
pub fn all_complexes(n: usize) -> Vec<SimplicialComplex> {
    downsets(n)
        .into_iter()
        .filter(|&d| d != 0)
        .map(|d| SimplicialComplex::from_raw_facets(n, &family_members(d)))
        .collect()
}

/// All squarefree ideals of `S = K[x_1..x_n]`, zero and unit included.
pub fn all_sq_ideals(n: usize) -> Vec<SqIdeal> {
    upsets(n).into_iter().map(|u| ideal_of_upset(n, u)).collect()
}

/// All pairs `I ⊊ J` of squarefree ideals, i.e. every nonzero squarefree
/// quotient `J/I`. Ordered by the packed up-sets of `J`, then `I`.
pub fn all_quotient_pairs(n: usize) -> Vec<(SqIdeal, SqIdeal)> {
    let mut ups = upsets(n);
    ups.sort_unstable();
    let mut out = Vec::new();
    for &j in &ups {
        for &i in &ups {
            if i & !j == 0 && i != j {
                out.push((ideal_of_upset(n, i), ideal_of_upset(n, j)));
            }
        }
    }
    out
}

/// All nonzero squarefree quotients on `n` variables.
pub fn all_quotients(n: usize) -> Vec<SqQuotient> {
    all_quotient_pairs(n)
        .into_iter()
        .map(|(i, j)| SqQuotient::from_sq_ideals(&i, &j).expect("nested squarefree pair"))
        .collect()
}

/// A random squarefree ideal with at most `max_gens` generators. May be
/// zero; never the unit ideal.
pub fn random_sq_ideal<R: Rng>(rng: &mut R, n: usize, max_gens: usize) -> SqIdeal {
    let k = rng.gen_range(0..=max_gens);
    let gens: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=full_mask(n))).collect();
    SqIdeal::from_raw(n, &gens)
}

/// A random nonzero squarefree quotient `J/I` with `J` possibly `S`.
pub fn random_quotient<R: Rng>(rng: &mut R, n: usize) -> SqQuotient {
    assert!(n >= 1);
    loop {
        let outer = if rng.gen_bool(0.3) {
            SqIdeal::unit(n)
        } else {
            let j = random_sq_ideal(rng, n, n + 1);
            if j.is_zero() {
                continue;
            }
            j
        };
        let k = rng.gen_range(0..=n + 1);
        let inner_gens: Vec<u64> = (0..k)
            .map(|_| {
                let g = outer.generators()[rng.gen_range(0..outer.generators().len())].bits();
                g | rng.gen_range(0..=full_mask(n))
            })
            .collect();
        let inner = SqIdeal::from_raw(n, &inner_gens);
        let m = SqQuotient::from_sq_ideals(&inner, &outer).expect("inner built inside outer");
        if !m.is_zero() {
            return m;
        }
    }
}

/// A random simplicial complex (never void).
pub fn random_complex<R: Rng>(rng: &mut R, n: usize) -> SimplicialComplex {
    let k = rng.gen_range(1..=n + 1);
    let facets: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=full_mask(n))).collect();
    SimplicialComplex::from_raw_facets(n, &facets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedekind_counts() {
        // down-sets of B_n, void family included: Dedekind numbers
        let counts: Vec<usize> = (0..=5).map(|n| downsets(n).len()).collect();
        assert_eq!(counts, vec![2, 3, 6, 20, 168, 7581]);
    }

    #[test]
    fn downsets_are_closed() {
        for d in downsets(4) {
            for f in family_members(d) {
                for j in 0..4 {
                    assert!(d >> (f & !(1 << j)) & 1 == 1);
                }
            }
        }
    }

    #[test]
    fn quotient_pairs_nonzero() {
        let qs = all_quotients(3);
        assert!(qs.iter().all(|q| !q.is_zero() && q.is_squarefree()));
        // nested pairs of up-sets of B_2 with I ≠ J
        assert_eq!(all_quotient_pairs(2).len(), 14);
    }

    #[test]
    fn random_quotients_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let q = random_quotient(&mut rng, n);
            assert!(!q.is_zero());
            assert!(q.has_squarefree_ideals());
        }
    }
}
