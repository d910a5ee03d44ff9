use std::collections::HashMap;

use rand::{Rng, SeedableRng};

use super::*;
use crate::generate::{all_quotients, random_quotient};
use crate::ideals::{minimalize, sr_complex};

fn set(n: usize, v: &[usize]) -> IndexSet {
    IndexSet::from_indices(n, v).unwrap()
}

fn mono(v: &[u16]) -> Monomial {
    Monomial::new(v.to_vec()).unwrap()
}

fn ideal(n: usize, gens: &[&[u16]]) -> MonomialIdeal {
    minimalize(n, &gens.iter().map(|g| mono(g)).collect::<Vec<_>>()).unwrap()
}

fn space(n: usize, b: &[usize], t: &[usize]) -> StanleySpace {
    StanleySpace::new(set(n, b), set(n, t)).unwrap()
}

fn s_mod_x1x2() -> SqQuotient {
    SqQuotient::cyclic(&ideal(2, &[&[1, 1]])).unwrap()
}

/// Best (max of min |top|, min of max |bottom|) over *all* interval
/// partitions, by memoised search over covered states. Every interval
/// containing the chosen element is tried, not just those based at it.
fn partition_optima(support: &[u64]) -> (usize, usize) {
    fn rec(support: &[u64], covered: u32, memo: &mut HashMap<u32, (i64, i64)>) -> (i64, i64) {
        let full = if support.len() == 32 { u32::MAX } else { (1u32 << support.len()) - 1 };
        if covered == full {
            return (i64::MAX, i64::MIN);
        }
        if let Some(&r) = memo.get(&covered) {
            return r;
        }
        let e_idx = (0..support.len()).find(|&i| covered >> i & 1 == 0).unwrap();
        let e = support[e_idx];
        let mut best = (i64::MIN, i64::MAX);
        for &b in support {
            for &t in support {
                if b & !e != 0 || e & !t != 0 {
                    continue;
                }
                let mut mask = 0u32;
                let mut ok = true;
                for (k, &h) in support.iter().enumerate() {
                    let inside = b & !h == 0 && h & !t == 0;
                    if inside {
                        if covered >> k & 1 == 1 {
                            ok = false;
                        }
                        mask |= 1 << k;
                    }
                }
                let count = 1u32 << (t & !b).count_ones();
                if !ok || mask.count_ones() != count {
                    continue;
                }
                let (sd, hr) = rec(support, covered | mask, memo);
                let sd = sd.min(t.count_ones() as i64);
                let hr = hr.max(b.count_ones() as i64);
                best.0 = best.0.max(sd);
                best.1 = best.1.min(hr);
            }
        }
        memo.insert(covered, best);
        best
    }
    let (sd, hr) = rec(support, 0, &mut HashMap::new());
    (sd as usize, hr as usize)
}

#[test]
fn build_quotient_examples() {
    let m = build_quotient(&MonomialIdeal::zero(3), &MonomialIdeal::unit(3)).unwrap();
    assert_eq!(m.support().len(), 8);
    let m = s_mod_x1x2();
    assert_eq!(m.support(), &[IndexSet::empty(2), set(2, &[1]), set(2, &[2])]);

    // the xy example: support by divide-and-test over every subset
    let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0]]);
    let j = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 1, 1]]);
    let m = build_quotient(&i, &j).unwrap();
    let brute: Vec<IndexSet> = (0..8u64)
        .map(|f| IndexSet::raw(3, f))
        .filter(|&f| {
            let xf = Monomial::from_set(f);
            j.generators().iter().any(|g| g.divides(&xf))
                && !i.generators().iter().any(|g| g.divides(&xf))
        })
        .collect();
    assert_eq!(m.support(), brute.as_slice());
    assert_eq!(m.support(), &[set(3, &[2, 3])]);

    assert_eq!(build_quotient(&j, &i), Err(Error::NotContained));
}

#[test]
fn squarefree_certificate_example_1_2() {
    let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0]]);
    let i_prime = ideal(3, &[&[2, 0, 0], &[0, 1, 1]]);
    let j = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 1, 1]]);
    assert!(is_squarefree_quotient(&i, &j).unwrap().is_squarefree());
    let cert = is_squarefree_quotient(&i_prime, &j).unwrap();
    assert!(!cert.is_squarefree());
    assert_eq!(cert.witness(), Some(&mono(&[1, 1, 0])));
    let x1 = ideal(1, &[&[1]]);
    assert!(is_squarefree_quotient(&MonomialIdeal::zero(1), &x1).unwrap().is_squarefree());
}

#[test]
fn squarefree_certificate_generator_case() {
    // J = (x1^2) is generated by a non-squarefree monomial outside I = 0
    let j = ideal(1, &[&[2]]);
    let cert = is_squarefree_quotient(&MonomialIdeal::zero(1), &j).unwrap();
    assert_eq!(cert, SquarefreeCertificate::NonSquarefreeGenerator(mono(&[2])));
    // S/(x1^2): x1 ∈ S \ I with supp(x1^2) ⊆ supp(x1)
    let cert = is_squarefree_quotient(&j, &MonomialIdeal::unit(1)).unwrap();
    assert_eq!(cert.witness(), Some(&mono(&[1])));
}

/// Squarefreeness by the multiplication-map definition: for every
/// monomial `m ∈ J \ I` with exponents `<= 2` and every `i ∈ supp(m)`,
/// `x_i m ∉ I`; and every generator of `J/I` squarefree.
fn squarefree_oracle(i: &MonomialIdeal, j: &MonomialIdeal) -> bool {
    let n = j.n();
    if j.generators().iter().any(|g| !i.contains(g) && !g.is_squarefree()) {
        return false;
    }
    let mut exps = vec![0u16; n];
    loop {
        let m = Monomial::new(exps.clone()).unwrap();
        if j.contains(&m) && !i.contains(&m) {
            for k in 0..n {
                if exps[k] > 0 {
                    let mut e = exps.clone();
                    e[k] += 1;
                    if i.contains(&Monomial::new(e).unwrap()) {
                        return false;
                    }
                }
            }
        }
        let mut k = 0;
        while k < n && exps[k] == 3 {
            exps[k] = 0;
            k += 1;
        }
        if k == n {
            return true;
        }
        exps[k] += 1;
    }
}

#[test]
fn squarefree_certificate_matches_definition() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
    let mut monos = Vec::new();
    for a in 0..=2u16 {
        for b in 0..=2 {
            for c in 0..=2 {
                monos.push(mono(&[a, b, c]));
            }
        }
    }
    let mut disagreements = 0;
    for _ in 0..400 {
        let kj = rng.gen_range(1..4);
        let j_gens: Vec<Monomial> = (0..kj).map(|_| monos[rng.gen_range(1..27)].clone()).collect();
        let j = minimalize(3, &j_gens).unwrap();
        let ki = rng.gen_range(0..4);
        let i_gens: Vec<Monomial> = (0..ki)
            .map(|_| {
                let g = &j.generators()[rng.gen_range(0..j.generators().len())];
                g.mul(&monos[rng.gen_range(0..27)])
            })
            .collect();
        let i = minimalize(3, &i_gens).unwrap();
        let cert = is_squarefree_quotient(&i, &j).unwrap();
        if cert.is_squarefree() != squarefree_oracle(&i, &j) {
            disagreements += 1;
        }
        if let Some(w) = cert.witness() {
            assert!(j.contains(w));
        }
    }
    assert_eq!(disagreements, 0);
}

#[test]
fn associated_primes_examples() {
    assert_eq!(associated_primes(&s_mod_x1x2()).unwrap(), vec![set(2, &[2]), set(2, &[1])]);
    let s = SqQuotient::cyclic(&MonomialIdeal::zero(3)).unwrap();
    assert_eq!(associated_primes(&s).unwrap(), vec![IndexSet::empty(3)]);
    // support {[3]} only: the ideal (x1x2x3) as a module
    let top = SqQuotient::ideal_module(&ideal(3, &[&[1, 1, 1]])).unwrap();
    assert_eq!(top.support(), &[IndexSet::full(3)]);
    assert_eq!(associated_primes(&top).unwrap(), vec![IndexSet::empty(3)]);
}

#[test]
fn associated_primes_by_annihilators() {
    // Ann(x_F) is generated by x_A for the minimal A ⊆ F^c with F ∪ A
    // outside the support; collect the annihilators that are prime
    for n in 1..=3 {
        for m in all_quotients(n) {
            let mut expected = std::collections::BTreeSet::new();
            for &f in m.support() {
                let free = f.complement().bits();
                let killing: Vec<u64> = crate::setcalc::submasks(free)
                    .filter(|&a| !m.contains_degree(IndexSet::raw(n, f.bits() | a)))
                    .collect();
                let minimal = crate::setcalc::minimal_elements(&killing);
                if minimal.iter().all(|a| a.count_ones() == 1) {
                    let vars = minimal.iter().fold(0, |acc, a| acc | a);
                    expected.insert(vars);
                }
            }
            let mut got: Vec<u64> =
                associated_primes(&m).unwrap().iter().map(|p| p.bits()).collect();
            got.sort();
            assert_eq!(got, expected.into_iter().collect::<Vec<_>>());
        }
    }
}

#[test]
fn validate_decomposition_examples() {
    let s = SqQuotient::cyclic(&MonomialIdeal::zero(2)).unwrap();
    let d = StanleyDecomposition::new(2, vec![space(2, &[], &[1, 2])]).unwrap();
    assert!(validate_decomposition(&s, &d));

    let m = s_mod_x1x2();
    let d = StanleyDecomposition::new(2, vec![space(2, &[], &[1]), space(2, &[2], &[2])]).unwrap();
    assert!(validate_decomposition(&m, &d));
    let d = StanleyDecomposition::new(2, vec![space(2, &[], &[1, 2])]).unwrap();
    assert!(!validate_decomposition(&m, &d));
    // overlap
    let d = StanleyDecomposition::new(
        2,
        vec![space(2, &[], &[1]), space(2, &[], &[2])],
    )
    .unwrap();
    assert!(!validate_decomposition(&m, &d));
    // incomplete
    let d = StanleyDecomposition::new(2, vec![space(2, &[], &[1])]).unwrap();
    assert!(!validate_decomposition(&m, &d));
}

#[test]
fn sdepth_examples() {
    let m = s_mod_x1x2();
    let (k, w) = sdepth(&m).unwrap();
    assert_eq!(k, 1);
    assert_eq!(w.spaces(), &[space(2, &[], &[1]), space(2, &[2], &[2])]);
    assert_eq!(partition_optima(&m.support_bits()).0, 1);

    for n in 0..=4 {
        let s = SqQuotient::cyclic(&MonomialIdeal::zero(n)).unwrap();
        assert_eq!(sdepth(&s).unwrap().0, n);
        let vars: Vec<Monomial> = (1..=n).map(|i| Monomial::var(n, i)).collect();
        let k = SqQuotient::cyclic(&minimalize(n, &vars).unwrap()).unwrap();
        assert_eq!(sdepth(&k).unwrap().0, 0);
    }

    let zero = SqQuotient::cyclic(&MonomialIdeal::unit(2)).unwrap();
    assert_eq!(sdepth(&zero).unwrap_err(), Error::ZeroModule);
    assert_eq!(hreg_min(&zero).unwrap_err(), Error::ZeroModule);
}

#[test]
fn hreg_examples() {
    let s = SqQuotient::cyclic(&MonomialIdeal::zero(3)).unwrap();
    assert_eq!(hreg_min(&s).unwrap().0, 0);
    let m = SqQuotient::ideal_module(&ideal(2, &[&[1, 0], &[0, 1]])).unwrap();
    assert_eq!(m.support(), &[set(2, &[1]), set(2, &[2]), set(2, &[1, 2])]);
    assert_eq!(hreg_min(&m).unwrap().0, 1);
    assert_eq!(partition_optima(&m.support_bits()).1, 1);
    assert_eq!(hreg_min(&s_mod_x1x2()).unwrap().0, 1);
}

#[test]
fn searches_match_brute_force() {
    let mut cases = all_quotients(3);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for _ in 0..60 {
        let m = random_quotient(&mut rng, 4);
        if m.support().len() <= 12 {
            cases.push(m);
        }
    }
    for m in cases {
        let (sd, hr) = partition_optima(&m.support_bits());
        let (k, w) = sdepth(&m).unwrap();
        let (h, wh) = hreg_min(&m).unwrap();
        assert_eq!(k, sd, "sdepth of {:?}", m.support());
        assert_eq!(h, hr, "hreg of {:?}", m.support());
        assert!(validate_decomposition(&m, &w));
        assert!(validate_decomposition(&m, &wh));
        assert_eq!(w.sdepth(), Some(k));
        assert_eq!(wh.hreg(), Some(h));
        assert!(k <= apel_bound(&m).unwrap());
    }
}

#[test]
fn dualize_quotient_examples() {
    let m = s_mod_x1x2();
    let d = dualize_quotient(&m).unwrap();
    assert_eq!(d.support(), &[set(2, &[1]), set(2, &[2]), set(2, &[1, 2])]);
    assert_eq!(d.outer(), &ideal(2, &[&[1, 0], &[0, 1]]));
    assert!(d.inner().is_zero());
    assert_eq!(dualize_quotient(&d).unwrap(), m);

    // (S/I_Δ)^∨ = I_{Δ^∨}
    let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1]]);
    let d = dualize_quotient(&SqQuotient::cyclic(&i).unwrap()).unwrap();
    let delta = sr_complex(&i.to_sq().unwrap()).unwrap();
    let dual_ideal = crate::ideals::sr_ideal(&crate::setcalc::alexander_dual(&delta));
    assert_eq!(d.outer(), &dual_ideal.to_monomial_ideal());
    assert!(d.inner().is_zero());

    let s = SqQuotient::cyclic(&MonomialIdeal::zero(2)).unwrap();
    assert_eq!(dualize_quotient(&s).unwrap().support(), s.support());

    let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0]]);
    let j = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 1, 1]]);
    assert_eq!(dualize_quotient(&build_quotient(&i, &j).unwrap()), Err(Error::NotSquarefree));
}

#[test]
fn dualize_decomposition_examples() {
    let d = StanleyDecomposition::new(2, vec![space(2, &[], &[1]), space(2, &[2], &[2])]).unwrap();
    let dd = dualize_decomposition(&d);
    assert_eq!(dd.spaces(), &[space(2, &[2], &[1, 2]), space(2, &[1], &[1])]);
    let m = s_mod_x1x2();
    assert!(validate_decomposition(&dualize_quotient(&m).unwrap(), &dd));
    assert_eq!(dualize_decomposition(&dd), d);
    assert_eq!(dd.hreg(), Some(2 - d.sdepth().unwrap()));
}

#[test]
fn apel_bound_examples() {
    assert_eq!(apel_bound(&s_mod_x1x2()).unwrap(), 1);
    assert_eq!(apel_bound(&SqQuotient::cyclic(&MonomialIdeal::zero(4)).unwrap()).unwrap(), 4);
    // support {∅,{1},{2},{1,2},{3}} on n = 3
    let m = SqQuotient::cyclic(&ideal(3, &[&[1, 0, 1], &[0, 1, 1]])).unwrap();
    assert_eq!(m.support().len(), 5);
    assert_eq!(apel_bound(&m).unwrap(), 1);
}

#[test]
fn decomposition_duality_exhaustive_small() {
    for n in 1..=3 {
        for m in all_quotients(n) {
            let dual = dualize_quotient(&m).unwrap();
            let (k, w) = sdepth(&m).unwrap();
            let dw = dualize_decomposition(&w);
            assert!(validate_decomposition(&dual, &dw));
            assert_eq!(hreg_min(&dual).unwrap().0, n - k);
            // a broken decomposition stays broken on the dual side
            if w.spaces().len() > 1 {
                let broken =
                    StanleyDecomposition::new(n, w.spaces()[1..].to_vec()).unwrap();
                assert!(!validate_decomposition(&dual, &dualize_decomposition(&broken)));
            }
        }
    }
}

#[test]
fn facet_decompositions_of_face_rings_are_partitions() {
    // bottoms faces and tops facets ⟹ a partition of Δ
    for m in all_quotients(3) {
        if !m.outer().is_unit() {
            continue;
        }
        let (_, w) = sdepth(&m).unwrap();
        let facets = m.support_facets();
        let is_partition = w.spaces().iter().all(|s| facets.contains(&s.top));
        let tops: std::collections::BTreeSet<_> = w.spaces().iter().map(|s| s.top).collect();
        if is_partition {
            assert_eq!(tops.len(), w.spaces().len());
            assert_eq!(tops.into_iter().collect::<Vec<_>>(), facets);
        }
    }
}

#[test]
fn non_squarefree_quotient_rejected_by_search() {
    let j = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 1, 1]]);
    let i_prime = ideal(3, &[&[2, 0, 0], &[0, 1, 1]]);
    let m = build_quotient(&i_prime, &j).unwrap();
    assert!(!m.is_squarefree());
    assert_eq!(sdepth(&m).unwrap_err(), Error::NotSquarefree);
    assert_eq!(associated_primes(&m).unwrap_err(), Error::NotSquarefree);
}
