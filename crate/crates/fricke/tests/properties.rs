//! Randomized invariants over small rational inputs.

use fricke::cremona::CremonaElem;
use fricke::dynamics::{braid_h, braid_h_inv, sigma1, sigma2, tame_g, tame_g_inv, SurfaceMap};
use fricke::harness::{run_suite, HarnessConfig};
use fricke::numeric::{exact_divide, qi, BiLaurent, FactorList, Rational};
use fricke::representations::BraidIndex;
use fricke::surfaces::{f_v, f_vi};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Rational::new(n, d))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn triple() -> impl Strategy<Value = [Rational; 3]> {
    (rat(), rat(), rat()).prop_map(|(a, b, c)| [a, b, c])
}

fn theta() -> impl Strategy<Value = [Rational; 4]> {
    (rat(), rat(), rat(), rat()).prop_map(|(a, b, c, d)| [a, b, c, d])
}

fn laurent() -> impl Strategy<Value = BiLaurent> {
    prop::collection::vec((-3i64..4, -3i64..4, rat()), 1..7).prop_map(|terms| {
        terms.into_iter().fold(BiLaurent::zero(), |acc, (i, j, c)| acc + BiLaurent::monomial(i, j, c))
    })
}

fn braid() -> impl Strategy<Value = BraidIndex> {
    prop_oneof![Just(BraidIndex::B12), Just(BraidIndex::B23), Just(BraidIndex::B31)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tame_maps_preserve_f_v(x in triple(), th in theta()) {
        let f = f_v(&x, &th);
        prop_assert_eq!(f_v(&sigma1(&x, &th), &th), f.clone());
        prop_assert_eq!(f_v(&sigma2(&x, &th), &th), f.clone());
        prop_assert_eq!(f_v(&tame_g(&x, &th), &th), f);
    }

    #[test]
    fn sigmas_are_involutions(x in triple(), th in theta()) {
        prop_assert_eq!(sigma1(&sigma1(&x, &th), &th), x.clone());
        prop_assert_eq!(sigma2(&sigma2(&x, &th), &th), x.clone());
        prop_assert_eq!(tame_g_inv(&tame_g(&x, &th), &th), x);
    }

    #[test]
    fn braids_preserve_f_vi_and_invert(x in triple(), th in theta(), b in braid()) {
        let y = braid_h(b, &x, &th);
        prop_assert_eq!(f_vi(&y, &th), f_vi(&x, &th));
        prop_assert_eq!(braid_h_inv(b, &y, &th), x);
    }

    #[test]
    fn rational_text_round_trip(r in rat()) {
        let s = r.to_string();
        prop_assert_eq!(s.parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn factor_list_round_trip(c in nonzero(), m in -3i64..4, nu in nonzero()) {
        let f = FactorList::monomial(c, m).mul(&FactorList::linear(nu));
        let back = FactorList::parse(&f.to_string()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn factor_list_inverse(nu in nonzero(), c in nonzero(), x in nonzero()) {
        let f = FactorList::monomial(c, 2).mul(&FactorList::linear(nu));
        if let (Ok(a), Ok(b)) = (f.eval(&x), f.inv().unwrap().eval(&x)) { prop_assert!((a * b).is_one()) }
    }

    #[test]
    fn laurent_division_inverts_product(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(exact_divide(&prod, &b).unwrap(), a);
    }

    #[test]
    fn blanc_p_has_order_five(u in nonzero(), v in nonzero()) {
        if let Ok(img) = CremonaElem::BlancP.pow(5).apply(&u, &v) {
            prop_assert_eq!(img, (u, v));
        }
    }

    #[test]
    fn cremona_inverse_round_trip(l in nonzero(), m in nonzero(), nu in nonzero(), u in nonzero(), v in nonzero()) {
        let w = CremonaElem::parse("w[[2,1],[1,1]]").unwrap();
        let e = CremonaElem::torus(l, m).unwrap()
            .compose(&w)
            .compose(&CremonaElem::dj1(qi(1), FactorList::linear(nu)).unwrap());
        if let Ok(img) = e.apply(&u, &v) {
            if let Ok(back) = e.inverse().apply(&img.0, &img.1) {
                prop_assert_eq!(back, (u, v));
            }
        }
    }

    #[test]
    fn word_display_round_trip(k in nonzero()) {
        let text = format!("g23({k}) . s1 . g^-1 . t2({k})");
        let m = SurfaceMap::parse(&text).unwrap();
        prop_assert_eq!(SurfaceMap::parse(&m.to_string()).unwrap().word, m.word);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn suites_are_seed_deterministic(seed in 0u64..1000) {
        let cfg = HarnessConfig { seed, trials: Some(4), corrupt: false };
        let a = run_suite("moduli", &cfg).unwrap();
        let b = run_suite("moduli", &cfg).unwrap();
        prop_assert!(a.passed());
        prop_assert_eq!(a, b);
    }
}
