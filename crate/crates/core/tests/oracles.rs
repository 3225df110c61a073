//! Independent oracles: values derived by hand or by a separate route, compared against the library.

use hni::hopf::build_hopf;
use hni::linalg::{signature, Matrix};
use hni::quotient::{casimir, Hni, PbwIndex};
use hni::radical::{conjecture_probe, probe_json, RadicalReport, PROBE_SCHEMA};
use hni::representations::{adjoint_matrices, mu_multiplicative_failure};
use hni::{Cyclotomic, Field};
use num_traits::{One, Zero};

/// F^p K^n E^q as (p, n, q) with n taken mod 2N, times a scalar.
type Term = (Cyclotomic, usize, i64, usize);

/// Product of two PBW monomials from KE = -EK, KF = -FK, EF - FE = (K - K⁻¹)/2i, E² = F² = 0.
fn hand_product(a: PbwIndex, b: PbwIndex) -> Vec<Term> {
    let sign = |e: usize| if e % 2 == 0 { Cyclotomic::one() } else { -Cyclotomic::one() };
    let (m, n) = (a.n as i64, b.n as i64);
    let mut out = Vec::new();
    match (a.q, b.p) {
        (0, c) => {
            if a.p + c < 2 {
                out.push((sign(a.n * c), a.p + c, m + n, b.q));
            }
        }
        (_, 0) => {
            if b.q == 0 {
                out.push((sign(b.n), a.p, m + n, 1));
            }
        }
        _ => {
            if a.p == 0 && b.q == 0 {
                out.push((sign(a.n + b.n), 1, m + n, 1));
            }
            let half = (Cyclotomic::from_int(2) * Cyclotomic::i()).inverse().unwrap();
            out.push((half.clone(), a.p, m + n + 1, b.q));
            out.push((-half, a.p, m + n - 1, b.q));
        }
    }
    out
}

fn dense(h: &Hni, terms: &[Term]) -> Vec<Cyclotomic> {
    let order = 2 * h.n() as i64;
    let mut v = h.zero_vec();
    for (c, p, n, q) in terms {
        let i = h.index(PbwIndex { p: *p, n: n.rem_euclid(order) as usize, q: *q });
        v[i] = v[i].clone() + c;
    }
    v.into_iter().map(|x| h.scalar(&x)).collect()
}

#[test]
fn pbw_products_follow_the_defining_relations() {
    for n in 1..=3 {
        let h = Hni::build(n).unwrap();
        let alg = h.algebra();
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                let expected = dense(&h, &hand_product(h.pbw(i), h.pbw(j)));
                assert_eq!(alg.product(i, j), expected, "N = {n}, {} · {}", alg.labels()[i], alg.labels()[j]);
            }
        }
    }
}

#[test]
fn dimension_is_eight_n() {
    for n in 1..=4 {
        assert_eq!(Hni::build(n).unwrap().dim(), 8 * n);
    }
}

#[test]
fn casimir_is_fe_plus_k_difference() {
    for n in 1..=3 {
        let h = Hni::build(n).unwrap();
        let fe = h.mul(&h.f(), &h.e());
        let four_i = Cyclotomic::from_int(4) * Cyclotomic::i();
        let k: Vec<Cyclotomic> = h.k().iter().zip(h.kinv()).map(|(a, b)| (a.clone() - &b) * &four_i.inverse().unwrap()).collect();
        let expected: Vec<Cyclotomic> = fe.iter().zip(&k).map(|(a, b)| h.scalar(&(a.clone() + b))).collect();
        assert_eq!(casimir(&h), expected);
        let c = casimir(&h);
        for g in [h.k(), h.e(), h.f()] {
            assert_eq!(h.mul(&c, &g), h.mul(&g, &c));
        }
    }
}

/// S² is conjugation by K, so it multiplies F^p K^n E^q by (-1)^(p+q).
#[test]
fn antipode_squared_is_conjugation_by_k() {
    for n in 1..=4 {
        let h = Hni::build(n).unwrap();
        let hs = build_hopf(&h);
        for i in 0..h.dim() {
            let b = h.algebra().basis_vector(i);
            let ix = h.pbw(i);
            let sign = if (ix.p + ix.q) % 2 == 0 { Cyclotomic::one() } else { -Cyclotomic::one() };
            let expected: Vec<Cyclotomic> = b.iter().map(|x| x.clone() * &sign).collect();
            assert_eq!(hs.s(&hs.s(&b)), expected);
            assert_eq!(hs.s(&hs.s(&b)), h.mul3(&h.k(), &b, &h.kinv()));
        }
    }
}

#[test]
fn counit_detects_pure_k_powers() {
    let h = Hni::build(2).unwrap();
    let hs = build_hopf(&h);
    for i in 0..h.dim() {
        let ix = h.pbw(i);
        let expected = if ix.p == 0 && ix.q == 0 { Cyclotomic::one() } else { Cyclotomic::zero() };
        assert_eq!(hs.epsilon(&h.algebra().basis_vector(i)), expected);
    }
}

#[test]
fn adjoint_action_is_multiplicative_for_n_three() {
    let hs = build_hopf(&Hni::build(3).unwrap());
    let mats = adjoint_matrices(&hs);
    assert_eq!(mu_multiplicative_failure(&hs.h, &mats), None);
}

#[test]
fn signature_of_small_forms() {
    let z = |k: i64| Cyclotomic::from_int(k);
    let hyperbolic = Matrix::from_rows(vec![vec![z(0), z(1)], vec![z(1), z(0)]]).unwrap();
    let s = signature(&hyperbolic).unwrap();
    assert_eq!((s.n_plus, s.n_zero, s.n_minus), (1, 0, 1));
    let i = Cyclotomic::i();
    let hermitian = Matrix::from_rows(vec![
        vec![z(1), i.clone(), z(0)],
        vec![-i, z(1), z(0)],
        vec![z(0), z(0), z(-3)],
    ])
    .unwrap();
    let s = signature(&hermitian).unwrap();
    assert_eq!((s.n_plus, s.n_zero, s.n_minus), (1, 1, 1));
}

#[test]
fn probe_report_matches_schema_and_is_reproducible() {
    let reports = conjecture_probe(2).unwrap();
    let text = probe_json(&reports);
    assert_eq!(text, probe_json(&conjecture_probe(2).unwrap()));
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let schema: serde_json::Value = serde_json::from_str(PROBE_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    let back: Vec<RadicalReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, reports);

    let mut broken = value.clone();
    broken[0]["extra"] = serde_json::json!(1);
    assert!(!validator.is_valid(&broken));
    assert!(serde_json::from_value::<Vec<RadicalReport>>(broken).is_err());
}
