//! Algebraic invariants checked on random inputs.

use hni::linalg::{signature, Matrix};
use hni::morphisms::{automorphism_from_params, derived_residuals, Kind, Sampler, H1};
use hni::quotient::{reduce, Combination, Hni, Letter, Strategy as Redex, System};
use hni::{Cyclotomic, Field, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Σ r_k ζ_M^k with small rational r_k.
fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(vec![4u32, 8, 12, 16, 24]), prop::collection::vec((-6i64..=6, 1i64..=4), 1..5)).prop_map(|(m, cs)| {
        cs.iter().enumerate().fold(Cyclotomic::zero(), |acc, (k, (n, d))| {
            acc + Cyclotomic::from_rational(q(*n, *d)) * Cyclotomic::root(m, k as i64 * 3 + 1).unwrap()
        })
    })
}

fn small_vector(dim: usize) -> impl Strategy<Value = Vec<Cyclotomic>> {
    prop::collection::vec((-3i64..=3, -2i64..=2), dim).prop_map(|v| {
        v.into_iter().map(|(a, b)| Cyclotomic::from_int(a) + Cyclotomic::from_int(b) * Cyclotomic::i()).collect()
    })
}

fn letter() -> impl Strategy<Value = Letter> {
    prop::sample::select(vec![Letter::K, Letter::Kinv, Letter::E, Letter::F])
}

fn h(n: usize) -> &'static Hni {
    static H1C: OnceLock<Hni> = OnceLock::new();
    static H2C: OnceLock<Hni> = OnceLock::new();
    match n {
        1 => H1C.get_or_init(|| Hni::build(1).unwrap()),
        _ => H2C.get_or_init(|| Hni::build(2).unwrap()),
    }
}

fn h1_ctx() -> &'static H1 {
    static C: OnceLock<H1> = OnceLock::new();
    C.get_or_init(|| H1::new().unwrap())
}

proptest! {
    #[test]
    fn field_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + a.clone() * &c);
        prop_assert!((a.clone() - &a).is_zero());
        prop_assert_eq!(a.clone() * &Cyclotomic::one(), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * &a.inverse().unwrap(), Cyclotomic::one());
        } else {
            prop_assert!(a.inverse().is_none());
        }
    }

    #[test]
    fn conjugation_and_norm(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((a.clone() * &b).conj(), a.conj() * &b.conj());
        prop_assert_eq!((a.clone() + &b).conj(), a.conj() + &b.conj());
        let n = a.clone() * &a.conj();
        prop_assert!(n.is_real());
        let expected = if a.is_zero() { Sign::Zero } else { Sign::Positive };
        prop_assert_eq!(n.real_sign().unwrap(), expected);
        let m = num_integer::lcm(a.order(), b.order());
        let (pa, pb) = (a.promote(m).unwrap(), b.promote(m).unwrap());
        prop_assert_eq!((pa.clone() * &pb).promote(m).unwrap().norm(), pa.norm() * pb.norm());
    }

    #[test]
    fn promotion_preserves_values(a in cyclotomic(), b in cyclotomic()) {
        let m = num_integer::lcm(a.order(), b.order()) * 2;
        let (pa, pb) = (a.promote(m).unwrap(), b.promote(m).unwrap());
        prop_assert_eq!(&pa, &a);
        prop_assert_eq!(pa.clone() * &pb, a.clone() * &b);
        prop_assert_eq!(pa + &pb, a.clone() + &b);
        prop_assert_eq!(a.minimal_order(), a);
    }

    #[test]
    fn left_regular_representation_is_multiplicative_h1(a in small_vector(8), b in small_vector(8)) {
        let alg = h(1).algebra();
        let ab = alg.mul(&a, &b).unwrap();
        let lhs = alg.left_mul_matrix(&ab).unwrap();
        let rhs = alg.left_mul_matrix(&a).unwrap().mul(&alg.left_mul_matrix(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_regular_representation_is_multiplicative_h2(a in small_vector(16), b in small_vector(16)) {
        let alg = h(2).algebra();
        let ab = alg.mul(&a, &b).unwrap();
        let lhs = alg.left_mul_matrix(&ab).unwrap();
        let rhs = alg.left_mul_matrix(&a).unwrap().mul(&alg.left_mul_matrix(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inertia_is_a_congruence_invariant(
        diag in prop::collection::vec(-3i64..=3, 4),
        off in prop::collection::vec((-2i64..=2, -2i64..=2), 6),
        p in prop::collection::vec((-2i64..=2, -1i64..=1), 16),
    ) {
        let z = |a: i64, b: i64| Cyclotomic::from_int(a) + Cyclotomic::from_int(b) * Cyclotomic::i();
        let mut g = Matrix::zeros(4, 4);
        let mut k = 0;
        for i in 0..4 {
            g.set(i, i, Cyclotomic::from_int(diag[i]));
            for j in i + 1..4 {
                let (a, b) = off[k];
                k += 1;
                g.set(i, j, z(a, b));
                g.set(j, i, z(a, -b));
            }
        }
        let pm = Matrix::from_rows(p.chunks(4).map(|r| r.iter().map(|(a, b)| z(*a, *b)).collect()).collect()).unwrap();
        prop_assume!(pm.rank() == 4);
        let moved = pm.adjoint().mul(&g).unwrap().mul(&pm).unwrap();
        prop_assert_eq!(signature(&moved).unwrap(), signature(&g).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rewriting_is_confluent(word in prop::collection::vec(letter(), 0..9), n in 1usize..=2, seed in any::<u64>()) {
        let c = Combination::word(word, Cyclotomic::one());
        let system = System::Quotient(n);
        let left = reduce(&c, system, &mut Redex::Leftmost);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random = reduce(&c, system, &mut Redex::Random(&mut rng));
        prop_assert_eq!(left, random);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constraint_solutions_are_automorphisms_and_satisfy_the_derived_relations(seed in any::<u64>()) {
        let ctx = h1_ctx();
        let mut s = Sampler::new(seed);
        let p = s.automorphism_params(Kind::I);
        prop_assert!(derived_residuals(ctx, &p).unwrap().iter().all(Zero::is_zero));
        prop_assert!(automorphism_from_params(ctx, &p).is_ok());
    }
}
