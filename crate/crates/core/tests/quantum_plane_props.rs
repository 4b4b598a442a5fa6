//! Gaussian binomials and normal ordering in the quantum plane.

use proptest::prelude::*;
use quasicomm::ncpoly::{expand_power, NCPoly, NormalForm, Var, Word};
use quasicomm::qbinom::{potter_coefficients, qbinomial, QBinomTable};
use quasicomm::scalar::{int, rat, ConstScalar, GenPoly, Rational, Ring};
use quasicomm::structure::{random_pair, PairType};
use quasicomm::{omega, CycNum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn binomial(n: usize, k: usize) -> Rational {
    (0..k).fold(int(1), |acc, i| acc * int((n - i) as i64) / int((i + 1) as i64))
}

#[test]
fn pascal_symmetry_and_classical_limit() {
    let w = GenPoly::w();
    for n in 1..=12usize {
        for k in 0..=n as i64 {
            let rec = qbinomial(n - 1, k - 1).plus(&w.pow_u(k as u64).times(&qbinomial(n - 1, k)));
            assert_eq!(qbinomial(n, k), rec, "[{n}, {k}]");
            assert_eq!(qbinomial(n, k), qbinomial(n, n as i64 - k));
            assert_eq!(qbinomial(n, k).eval_at(&int(1)), binomial(n, k as usize));
        }
    }
}

#[test]
fn specialisation_matches_generic_evaluation() {
    for q in 0..=10usize {
        for order in [1u32, 2, 3, 4, 5, 6, 7, 12] {
            let QBinomTable::Specialized { coeffs, .. } = potter_coefficients(q, order) else { unreachable!() };
            for (k, c) in coeffs.iter().enumerate() {
                assert_eq!(*c, qbinomial(q, k as i64).eval_at(&omega(order)));
            }
        }
        if q >= 2 {
            assert!(potter_coefficients(q, q as u32).interior_vanishes());
        }
    }
}

#[test]
fn expand_power_coefficients() {
    let w = GenPoly::w();
    for q in 0..=10u32 {
        let nf = expand_power(q, &w);
        for k in 0..=q as usize {
            assert_eq!(nf.coeff(k, q as usize - k), qbinomial(q as usize, k as i64));
        }
    }
}

/// Rewrite `xy → w·yx` at randomly chosen positions until no `xy` remains.
fn random_rewrite(word: &[Var], rng: &mut impl Rng) -> (u64, Word) {
    let mut w = word.to_vec();
    let mut steps = 0;
    loop {
        let spots: Vec<usize> = w.windows(2).enumerate().filter(|(_, p)| *p == [Var::X, Var::Y]).map(|(i, _)| i).collect();
        if spots.is_empty() {
            return (steps, w);
        }
        let i = spots[rng.gen_range(0..spots.len())];
        w.swap(i, i + 1);
        steps += 1;
    }
}

#[test]
fn confluence_of_random_rewriting() {
    let w = GenPoly::w();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for len in 0..=8usize {
        for bits in 0..(1u32 << len) {
            let word: Word = (0..len).map(|i| if bits >> i & 1 == 1 { Var::Y } else { Var::X }).collect();
            let (steps, fixed) = random_rewrite(&word, &mut rng);
            let ys = fixed.iter().filter(|v| **v == Var::Y).count();
            let got = NCPoly::monomial(GenPoly::one(), word).normal_order(&w);
            assert_eq!(got, NormalForm::monomial(w.pow_u(steps), ys, len - ys));
        }
    }
}

fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(prop_oneof![Just(Var::X), Just(Var::Y)], 0..=max)
}

fn poly_strategy(order: u32) -> impl Strategy<Value = NCPoly<CycNum>> {
    proptest::collection::vec((word_strategy(5), -4i64..=4), 0..5).prop_map(move |terms| {
        let w = omega(order);
        terms.into_iter().fold(NCPoly::zero(&w.one_like()), |acc, (word, c)| {
            acc.add(&NCPoly::monomial(w.from_int_like(c), word))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_order_is_multiplicative(
        (order, f, g) in (2u32..=6).prop_flat_map(|o| (Just(o), poly_strategy(o), poly_strategy(o)))
    ) {
        let w = omega(order);
        let lhs = f.mul(&g).normal_order(&w);
        let rhs = f.normal_order(&w).mul(&g.normal_order(&w), &w);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ideal_members_vanish_on_quasi_pairs(
        u in word_strategy(3), v in word_strategy(3), c in -3i64..=3,
        kind in prop_oneof![Just(PairType::I), Just(PairType::II), Just(PairType::III), Just(PairType::IV)],
        seed in 0u64..1000,
    ) {
        let k = 3;
        let pair = random_pair(kind, 3, k, seed).unwrap();
        let w = pair.omega.clone();
        let one = w.one_like();
        let f = NCPoly::monomial(w.from_int_like(c), u)
            .mul(&NCPoly::generator(&w))
            .mul(&NCPoly::monomial(one.clone(), v));
        prop_assert!(f.ideal_member(&w));
        let s = w.from_rational_like(&rat(2, 3));
        let value = f.evaluate_with(&pair.a.scale(&s), &pair.b, Clone::clone).unwrap();
        prop_assert!(value.is_zero());
    }
}
