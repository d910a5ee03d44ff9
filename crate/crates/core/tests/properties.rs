use proptest::prelude::*;

use sqdual_core::exterior::ExtElement;
use sqdual_core::filtration::{dualize_filtration, facet_peel_filtration, filtration_to_decomposition};
use sqdual_core::ideals::{tilde, tilde_via_complexes};
use sqdual_core::instance::{emit_instance, parse_instance, Instance};
use sqdual_core::setcalc::{alexander_dual, full_mask, sigma};
use sqdual_core::sqmod::{dualize_decomposition, dualize_quotient, hreg_min, sdepth, validate_decomposition};
use sqdual_core::{IndexSet, Rational, SimplicialComplex, SqIdeal, SqQuotient};

const N: usize = 6;

fn set(n: usize) -> impl Strategy<Value = IndexSet> {
    (0..=full_mask(n)).prop_map(move |b| IndexSet::from_bits(n, b).unwrap())
}

fn sq_ideal(n: usize) -> impl Strategy<Value = SqIdeal> {
    prop::collection::vec(set(n), 0..6).prop_map(move |g| SqIdeal::new(n, &g).unwrap())
}

/// `J/I` with `I` built from multiples of generators of `J`; may be zero.
fn quotient(n: usize) -> impl Strategy<Value = SqQuotient> {
    (sq_ideal(n), prop::collection::vec((0usize..8, set(n)), 0..6)).prop_map(move |(outer, extra)| {
        let outer = if outer.is_zero() { SqIdeal::unit(n) } else { outer };
        let gens = outer.generators();
        let inner: Vec<IndexSet> = extra.iter().map(|(k, s)| gens[k % gens.len()].union(*s)).collect();
        SqQuotient::from_sq_ideals(&SqIdeal::new(n, &inner).unwrap(), &outer).unwrap()
    })
}

fn elem(n: usize) -> impl Strategy<Value = ExtElement<Rational>> {
    prop::collection::vec((set(n), -3i64..=3), 0..5).prop_map(move |terms| {
        ExtElement::from_terms(n, terms.into_iter().map(|(f, c)| (f, Rational::from_integer(c.into())))).unwrap()
    })
}

proptest! {
    #[test]
    fn sigma_is_additive(f in set(N), g in set(N), h in set(N)) {
        let g = g.difference(f);
        prop_assert_eq!(sigma(f.union(g), h), sigma(f, h) + sigma(g, h));
        prop_assert_eq!(sigma(h, f.union(g)), sigma(h, f) + sigma(h, g));
    }

    #[test]
    fn wedge_is_associative_and_bilinear(a in elem(5), b in elem(5), c in elem(5)) {
        let ab_c = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let a_bc = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = a.add(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&c).unwrap().add(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn tilde_is_an_involution(i in sq_ideal(N)) {
        prop_assume!(!i.is_unit());
        let t = tilde(&i).unwrap();
        prop_assert_eq!(tilde_via_complexes(&i).unwrap(), t.clone());
        if !t.is_unit() {
            prop_assert_eq!(tilde(&t).unwrap(), i);
        }
    }

    #[test]
    fn alexander_dual_is_an_involution(facets in prop::collection::vec(set(N), 1..6)) {
        let delta = SimplicialComplex::from_facets(N, &facets).unwrap();
        prop_assert_eq!(alexander_dual(&alexander_dual(&delta)), delta);
    }

    #[test]
    fn quotient_duality(m in quotient(5)) {
        prop_assume!(!m.is_zero());
        let dual = dualize_quotient(&m).unwrap();
        let back = dualize_quotient(&dual).unwrap();
        prop_assert_eq!(back.support(), m.support());
        let (sd, w) = sdepth(&m).unwrap();
        let dw = dualize_decomposition(&w);
        prop_assert!(validate_decomposition(&dual, &dw));
        prop_assert_eq!(hreg_min(&dual).unwrap().0, m.n() - sd);
    }

    #[test]
    fn filtrations_dualize(m in quotient(5)) {
        prop_assume!(!m.is_zero());
        let pf = facet_peel_filtration(&m).unwrap();
        let d = dualize_filtration(&pf).unwrap();
        prop_assert_eq!(dualize_filtration(&d).unwrap(), pf.clone());
        let dec = filtration_to_decomposition(&pf).unwrap();
        prop_assert!(validate_decomposition(&m, &dec));
    }

    #[test]
    fn instances_round_trip(m in quotient(4)) {
        let inst = Instance::from_quotient(&m);
        let text = emit_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.quotient().unwrap(), m);
    }
}
