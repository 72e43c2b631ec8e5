use proptest::prelude::*;

use orekit::family5::{build_family5, in_term_set, ne_witness, xy, Family5, Family5Params, TermSet};
use orekit::modlattice::ModuleInstance;
use orekit::orecore::{alpha_power_closed, BcoefTable, SkewPoly};
use orekit::FiniteRing;

fn params() -> impl Strategy<Value = Family5Params> {
    (prop::sample::select(vec![(2u64, 1u64), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)]), 2u64..=5, 1u64..=3)
        .prop_flat_map(|((p, r), e, c)| {
            let divisors: Vec<u64> = (1..e).filter(|d| (e - 1) % d == 0).collect();
            (Just((p, r, e, c)), prop::sample::select(divisors))
        })
        .prop_map(|((p, r, e, c), d)| Family5Params::new(p, r, e, c, d).unwrap())
}

fn poly(f: &Family5, terms: &[(u64, u64, u64)]) -> SkewPoly<usize> {
    let s = &f.ring;
    terms.iter().fold(SkewPoly::zero(), |acc, &(k, n, m)| {
        s.add(&acc, &s.monomial(s.coeff_ring().from_int(k as i64), xy(n, m)))
    })
}

fn terms() -> impl Strategy<Value = Vec<(u64, u64, u64)>> {
    prop::collection::vec((1u64..50, 0u64..4, 0u64..3), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn family5_multiplication_is_associative(p in params(), a in terms(), b in terms(), c in terms()) {
        let f = build_family5(&p).unwrap();
        let s = &f.ring;
        let (a, b, c) = (poly(&f, &a), poly(&f, &b), poly(&f, &c));
        let left = s.mul(&s.mul(&a, &b).unwrap(), &c).unwrap();
        let right = s.mul(&a, &s.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let sum = s.mul(&a, &s.add(&b, &c)).unwrap();
        prop_assert_eq!(sum, s.add(&s.mul(&a, &b).unwrap(), &s.mul(&a, &c).unwrap()));
    }

    #[test]
    fn printed_polynomials_parse_back(p in params(), a in terms()) {
        let f = build_family5(&p).unwrap();
        let g = poly(&f, &a);
        prop_assert_eq!(f.ring.parse(&f.ring.format(&g)).unwrap(), g);
    }

    #[test]
    fn closed_powers_match_substitution(p in params(), n in 0u64..10, m in 0u64..10) {
        let f = build_family5(&p).unwrap();
        let table = BcoefTable::new(p.e).unwrap();
        let (_, closed) = alpha_power_closed(&table, n, m, p.p, p.r, 2).unwrap();
        prop_assert_eq!(closed, f.ring.apply_power_endo(1, m, &f.term(n, 0)).unwrap());
    }

    #[test]
    fn witnesses_land_in_the_bar_set(p in params(), n in 0u64..24, m in 0u64..24) {
        prop_assume!(in_term_set(n, m, &p, TermSet::Tilde));
        let f = build_family5(&p).unwrap();
        let w = ne_witness(&f, &xy(n, m)).unwrap();
        prop_assert!(w.verified, "{:?}", w);
        prop_assert!(in_term_set(w.product.0, w.product.1, &p, TermSet::Bar));
    }

    #[test]
    fn uniform_dimension_adds_over_products(a in 2u64..9, b in 2u64..9) {
        let (ra, rb) = (FiniteRing::zmod(a).unwrap(), FiniteRing::zmod(b).unwrap());
        let prod = FiniteRing::product(&ra, &rb).unwrap();
        let udim = |r: &FiniteRing| ModuleInstance::regular(r).uniform_dimension(64).unwrap().dim;
        prop_assert_eq!(udim(&prod), udim(&ra) + udim(&rb));
    }
}
