mod common;

use common::*;
use idr_core::arith::{partial_fractions, q, rf};
use idr_core::basering::{expand_ratfun, laurent_evaluate, laurent_integrate};
use idr_core::constants::{c2_normalize, c2_var, leading_c2, linear_coeff, occurs_only_linearly, relation_r};
use idr_core::mpoly::Mono;
use idr_core::words::{interleaving_count, lyndon_factorization, shuffle_multiset, split_max_shuffle, GenKey};
use idr_core::{BaseRing, IdrRing, LaurentBase, LaurentLog, Mode, TrivialBase};
use proptest::prelude::*;
use rand::Rng;

const MODES: [Mode; 3] = [Mode::Free, Mode::QRespecting, Mode::Multiplicative];

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn shuffle_multiset_matches_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = random_word(&mut r, 3, 5);
        let v = random_word(&mut r, 3, 5);
        let lib: Vec<(Vec<u32>, u64)> = shuffle_multiset(&u, &v).into_iter().map(|(w, c)| (ids(&w), c)).collect();
        let brute: Vec<(Vec<u32>, u64)> = brute_shuffle(&ids(&u), &ids(&v)).into_iter().collect();
        let mut lib_sorted = lib.clone();
        lib_sorted.sort();
        prop_assert_eq!(lib_sorted, brute.clone());
        for (w, c) in brute {
            prop_assert_eq!(interleaving_count(&u, &v, &word(&w)), c);
        }
    }

    #[test]
    fn lyndon_factorization_is_a_nonincreasing_lyndon_product(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_nonempty_word(&mut r, 3, 10);
        let fs = lyndon_factorization(&w).unwrap();
        let joined: Vec<u32> = fs.iter().flat_map(ids).collect();
        prop_assert_eq!(joined, ids(&w));
        for f in &fs {
            prop_assert!(brute_is_lyndon(&ids(f)));
        }
        for pair in fs.windows(2) {
            prop_assert!(ids(&pair[0]) >= ids(&pair[1]));
        }
    }

    #[test]
    fn contiguous_split_has_the_word_as_maximal_shuffle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_nonempty_word(&mut r, 2, 9);
        match split_max_shuffle(&w).unwrap() {
            None => prop_assert!(brute_is_lyndon(&ids(&w))),
            Some((a, b)) => {
                prop_assert!(!a.is_empty() && !b.is_empty());
                prop_assert_eq!(a.concat(&b), w.clone());
                prop_assert_eq!(brute_max_shuffle(&ids(&a), &ids(&b)).0, ids(&w));
                for i in 1..a.len() {
                    prop_assert_ne!(brute_max_shuffle(&ids(&w)[..i], &ids(&w)[i..]).0, ids(&w));
                }
            }
        }
    }

    #[test]
    fn relation_leading_generator_is_linear_with_integer_coefficient(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (mut f, g, mut h) = (
            random_nonempty_word(&mut r, 2, 3),
            random_nonempty_word(&mut r, 2, 3),
            random_nonempty_word(&mut r, 2, 3),
        );
        if h < f {
            std::mem::swap(&mut f, &mut h);
        }
        let rel = relation_r(&f, &g, &h).unwrap();
        if let Some(lead) = leading_c2(&rel) {
            prop_assert!(occurs_only_linearly(&rel, &lead));
            prop_assert!(linear_coeff(&rel, &lead).is_integer());
        } else {
            prop_assert!(rel.is_zero());
        }
    }

    #[test]
    fn normal_forms_only_use_generators_of_s(seed in any::<u64>()) {
        let mut r = rng(seed);
        let v = random_nonempty_word(&mut r, 2, 3);
        let w = random_nonempty_word(&mut r, 2, 3);
        let nf = c2_normalize(&c2_var(GenKey::new(v, w).unwrap()));
        for s in nf.vars() {
            let g = s.as_c2().unwrap();
            prop_assert!(brute_in_s(&ids(g.v()), &ids(g.w())), "{} is not a generator", g);
        }
    }

    #[test]
    fn partial_fractions_reassemble(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_ratfun(&mut r);
        prop_assert_eq!(partial_fractions(&f).reassemble(), f);
    }

    #[test]
    fn laurent_expansion_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (random_ratfun(&mut r), random_ratfun(&mut r));
        let lhs = expand_ratfun(&(&f * &g), 8);
        let rhs = &expand_ratfun(&f, 8) * &expand_ratfun(&g, 8);
        prop_assert!(lhs.agrees_with(&rhs), "{} vs {}", lhs, rhs);
        let d = expand_ratfun(&f.derivative(), 8);
        prop_assert!(d.agrees_with(&expand_ratfun(&f, 9).derivative()));
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn evaluation_is_identity_minus_integral_of_derivative(seed in any::<u64>(), m in 0usize..3) {
        let ring = ring(MODES[m]);
        let mut r = rng(seed);
        let a = random_elem(&ring, &mut r, 3, 4);
        let e = ring.evaluate(&a).unwrap();
        let rhs = ring.sub(&a, &ring.integrate(&ring.derive(&a).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(e.clone(), rhs);
        prop_assert_eq!(ring.evaluate(&e).unwrap(), e.clone());
        prop_assert!(ring.derive(&e).unwrap().is_zero());
    }

    #[test]
    fn projection_from_free_commutes_with_the_operations(seed in any::<u64>(), m in 1usize..3) {
        let free = ring(Mode::Free);
        let other = free.with_mode(MODES[m]);
        let mut r = rng(seed);
        let a = random_elem(&free, &mut r, 2, 3);
        let b = random_elem(&free, &mut r, 2, 3);
        let p = |x: &idr_core::IdrElem<idr_core::RatFun>| other.project_from(&free, x).unwrap();
        let (pa, pb) = (p(&a), p(&b));
        prop_assert_eq!(p(&free.integrate(&a).unwrap()), other.integrate(&pa).unwrap());
        prop_assert_eq!(p(&free.derive(&a).unwrap()), other.derive(&pa).unwrap());
        prop_assert_eq!(p(&free.mul(&a, &b).unwrap()), other.mul(&pa, &pb).unwrap());
    }

    #[test]
    fn closure_of_an_evaluation_matches_the_series(seed in any::<u64>()) {
        let free = ring(Mode::Free);
        let mut r = rng(seed);
        let a = random_elem(&free, &mut r, 2, 3);
        let e = free.evaluate(&a).unwrap();
        let closed = free.closure_reduce(&e, 12).unwrap();
        let value = free.as_constant(&closed).and_then(|p| p.as_constant()).unwrap_or_else(|| q(0));
        let series = laurent_evaluate(&free.eta_model(&a, 12).unwrap()).unwrap();
        prop_assert_eq!(value, series);
    }

    #[test]
    fn trivial_and_laurent_bases_are_integro_differential(seed in any::<u64>()) {
        let mut r = rng(seed);
        let trivial = IdrRing::new(TrivialBase::new(), Mode::Free);
        let a = trivial.term(Mono::one(), random_word(&mut r, 1, 4), q(3));
        let b = trivial.term(Mono::one(), random_word(&mut r, 1, 3), q(-2));
        let ia = trivial.integrate(&a).unwrap();
        prop_assert_eq!(trivial.derive(&ia).unwrap(), a.clone());
        let lhs = trivial.derive(&trivial.mul(&a, &b).unwrap()).unwrap();
        let rhs = trivial.add(
            &trivial.mul(&trivial.derive(&a).unwrap(), &b).unwrap(),
            &trivial.mul(&a, &trivial.derive(&b).unwrap()).unwrap(),
        ).unwrap();
        prop_assert_eq!(lhs, rhs);

        let laurent = IdrRing::new(LaurentBase::new(), Mode::QRespecting);
        let k = r.gen_range(-3i64..4);
        let n = r.gen_range(0u32..3);
        let f = laurent.embed(LaurentLog::monomial(k, n, q(2)));
        let i = laurent.integrate(&f).unwrap();
        prop_assert_eq!(laurent.derive(&i).unwrap(), f);
    }
}

#[test]
fn laurent_integral_inverts_derivative_termwise() {
    for k in -4..=4 {
        for n in 0..=3 {
            let m = LaurentLog::monomial(k, n, q(1));
            assert_eq!(laurent_integrate(&m).derivative(), m, "x^{k} ln^{n}");
        }
    }
    let base = LaurentBase::new();
    assert!(base.cj_split(&expand_ratfun(&rf("1/(x+1)"), 5)).is_err());
}
