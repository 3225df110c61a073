//! Explicit models: (M₂ ⊗ Λ₁ ⊗ Λ₁)⁺ for H₁ and the even block of H₂, 4×4 matrices for the odd block of H₂.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::StructureConstants;
use crate::fixtures;
use crate::linalg::{span_rank, Matrix};
use crate::quotient::{named_algebra, Hni};
use crate::report::{Check, VerificationReport};
use crate::scalars::{Cyclotomic, Field};

/// Which algebra the Grassmann model is matched against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrassmannTarget {
    H1,
    H2Even,
}

const LAMBDA: [&str; 4] = ["1", "E", "F", "EF"];

/// M₂ ⊗ Λ₁ ⊗ Λ₁ with the ordinary tensor product; index (2l + k)·4 + bits, bit 1 = e, bit 2 = f.
fn model_algebra() -> StructureConstants<Cyclotomic> {
    let labels: Vec<String> =
        (0..16).map(|i| format!("e{}{}⊗{}", (i / 4) / 2, (i / 4) % 2, LAMBDA[i % 4])).collect();
    let mut products = Vec::with_capacity(256);
    for a in 0..16 {
        for b in 0..16 {
            let (l, k, x) = ((a / 4) / 2, (a / 4) % 2, a % 4);
            let (l2, k2, y) = ((b / 4) / 2, (b / 4) % 2, b % 4);
            let mut v = vec![Cyclotomic::zero(); 16];
            if k == l2 && x & y == 0 {
                v[(2 * l + k2) * 4 + (x | y)] = Cyclotomic::one();
            }
            products.push(v);
        }
    }
    let mut unit = vec![Cyclotomic::zero(); 16];
    unit[0] = Cyclotomic::one();
    unit[12] = Cyclotomic::one();
    StructureConstants::new(labels, products, unit).expect("model")
}

fn model_index(s: &str) -> Option<usize> {
    let (m, g) = s.split_once('⊗')?;
    let m = m.trim().strip_prefix('e')?;
    let mut digits = m.chars().map(|c| c.to_digit(10));
    let (l, k) = (digits.next()??, digits.next()??);
    if l > 1 || k > 1 {
        return None;
    }
    let bits = LAMBDA.iter().position(|x| *x == g.trim())?;
    Some((2 * l as usize + k as usize) * 4 + bits)
}

fn is_even(i: usize) -> bool {
    let (l, k, x) = ((i / 4) / 2, (i / 4) % 2, i % 4);
    (l != k) == (x.count_ones() % 2 == 1)
}

fn corrected_map(target: GrassmannTarget) -> BTreeMap<String, String> {
    let (a, b, c) = match target {
        GrassmannTarget::H1 => ("e0", "e1", ["E0", "E1", "F0", "F1", "C0", "C1"]),
        GrassmannTarget::H2Even => ("e0", "e2", ["E0", "E2", "F0", "F2", "P0", "P2"]),
    };
    let imgs = ["e01⊗E", "e10⊗E", "e01⊗F", "e10⊗F", "e00⊗EF", "e11⊗EF"];
    let mut m = BTreeMap::from([(a.to_string(), "e00⊗1".to_string()), (b.to_string(), "e11⊗1".to_string())]);
    for (l, i) in c.iter().zip(imgs) {
        m.insert(l.to_string(), i.to_string());
    }
    m
}

fn target_algebra(target: GrassmannTarget) -> StructureConstants<Cyclotomic> {
    match target {
        GrassmannTarget::H1 => named_algebra(&Hni::build(1).expect("H1")).expect("named").1,
        GrassmannTarget::H2Even => {
            let (_, alg) = named_algebra(&Hni::build(2).expect("H2")).expect("named");
            let even = ["e0", "e2", "E0", "E2", "F0", "F2", "P0", "P2"];
            let basis: Vec<Vec<Cyclotomic>> = even.iter().map(|l| alg.basis_vector(alg.index_of(l).expect("label"))).collect();
            let mut unit = vec![Cyclotomic::zero(); 8];
            unit[0] = Cyclotomic::one();
            unit[1] = Cyclotomic::one();
            alg.restrict(&basis, even.iter().map(|s| s.to_string()).collect(), unit).expect("even block")
        }
    }
}

/// Checks one correspondence label ↦ model element; returns the checks and whether all held.
fn check_map(
    alg: &StructureConstants<Cyclotomic>,
    model: &StructureConstants<Cyclotomic>,
    map: &BTreeMap<String, String>,
    prefix: &str,
    claim: &str,
    printed: bool,
) -> Vec<Check> {
    let verdict = |name: &str, ok: bool, expected: String, computed: String| {
        let c = Check::new(format!("{prefix}: {name}"), claim);
        if printed {
            c.printed_holds(ok, expected, computed)
        } else {
            c.holds(ok, expected, computed)
        }
    };
    let d = alg.dim();
    let mut out = Vec::new();
    let unknown: Vec<&String> = map.keys().filter(|k| alg.index_of(k).is_none()).collect();
    let missing: Vec<&String> = alg.labels().iter().filter(|l| !map.contains_key(*l)).collect();
    let ok = unknown.is_empty() && missing.is_empty();
    out.push(verdict(
        "labels",
        ok,
        alg.labels().join(", "),
        if ok { alg.labels().join(", ") } else { format!("unknown {unknown:?}, missing {missing:?}") },
    ));
    if !ok {
        return out;
    }
    let mut images = vec![vec![Cyclotomic::zero(); 16]; d];
    for (l, s) in map {
        let i = alg.index_of(l).expect("label");
        let j = model_index(s).expect("model element");
        images[i][j] = Cyclotomic::one();
    }
    let odd: Vec<String> =
        map.iter().filter(|(_, s)| !is_even(model_index(s).expect("model element"))).map(|(l, s)| format!("{l} = {s}")).collect();
    out.push(verdict(
        "images in the even part",
        odd.is_empty(),
        "all even".into(),
        if odd.is_empty() { "all even".into() } else { format!("odd: {}", odd.join(", ")) },
    ));
    let rank = span_rank(&images);
    out.push(verdict("injective", rank == d, format!("rank {d}"), format!("rank {rank}")));
    let phi = |v: &[Cyclotomic]| -> Vec<Cyclotomic> {
        let mut w = vec![Cyclotomic::zero(); 16];
        for (c, img) in v.iter().zip(&images) {
            if !c.is_zero() {
                for (o, x) in w.iter_mut().zip(img) {
                    *o = o.clone() + c.clone() * x;
                }
            }
        }
        w
    };
    let mut matched = 0;
    let mut first_bad = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let lhs = phi(&alg.product(i, j));
            let rhs = model.mul(&images[i], &images[j]).expect("dims");
            if lhs == rhs {
                matched += 1;
            } else if first_bad.len() < 4 {
                first_bad.push(format!(
                    "{}·{}: {} vs {}",
                    alg.labels()[i],
                    alg.labels()[j],
                    model.format(&lhs),
                    model.format(&rhs)
                ));
            }
        }
    }
    let computed = if first_bad.is_empty() {
        format!("{matched}/{}", d * d)
    } else {
        format!("{matched}/{}; e.g. {}", d * d, first_bad.join("; "))
    };
    out.push(verdict("products", matched == d * d, format!("{}/{}", d * d, d * d), computed));
    let unit_ok = phi(alg.unit()) == model.unit();
    out.push(verdict("unit", unit_ok, model.format(model.unit()), model.format(&phi(alg.unit()))));
    out
}

/// Printed and corrected correspondences with the even part of M₂ ⊗ Λ₁ ⊗ Λ₁.
pub fn grassmann_iso(target: GrassmannTarget) -> VerificationReport {
    let (n, claim, printed) = match target {
        GrassmannTarget::H1 => (1, "H1 is the even part of M2 ⊗ Λ", fixtures::grassmann().h1),
        GrassmannTarget::H2Even => (2, "the even block of H2 is the even part of M2 ⊗ Λ", fixtures::grassmann().h2_even),
    };
    let alg = target_algebra(target);
    let model = model_algebra();
    let mut rep = VerificationReport::new("grassmann", n);
    rep.extend(check_map(&alg, &model, &printed, "printed", claim, true));
    rep.extend(check_map(&alg, &model, &corrected_map(target), "corrected", claim, false));
    rep
}

fn parse_matrix(rows: &[Vec<String>]) -> Matrix<Cyclotomic> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| fixtures::scalar(s).expect("fixture")).collect()).collect())
        .expect("matrix")
}

/// The printed 4×4 matrices for K, E, F on the odd block of H₂.
pub fn h2_matrix_iso() -> VerificationReport {
    let fx = fixtures::h2_odd_block().matrix_model;
    let (k, e, f) = (parse_matrix(&fx.k), parse_matrix(&fx.e), parse_matrix(&fx.f));
    let claim = "odd block of H2 is M(2) ⊕ M(2)";
    let mut rep = VerificationReport::new("matrix-model", 2);
    let id = Matrix::identity(4);
    let zero = Matrix::zeros(4, 4);
    let mm = |a: &Matrix<Cyclotomic>, b: &Matrix<Cyclotomic>| a.mul(b).expect("4x4");
    let kinv = k.inverse();
    rep.push(Check::new("K invertible, K⁴ = 1", claim).holds(
        kinv.is_ok() && k.pow(4).expect("square") == id,
        "K⁴ = 1",
        format!("{:?}", k.pow(4).expect("square")),
    ));
    let kinv = kinv.unwrap_or_else(|_| zero.clone());
    let rel = |name: &str, lhs: Matrix<Cyclotomic>, rhs: Matrix<Cyclotomic>| {
        Check::new(name, claim).holds(lhs == rhs, format!("{rhs:?}"), format!("{lhs:?}"))
    };
    rep.push(rel("KE + EK = 0", mm(&k, &e).add(&mm(&e, &k)).expect("4x4"), zero.clone()));
    rep.push(rel("KF + FK = 0", mm(&k, &f).add(&mm(&f, &k)).expect("4x4"), zero.clone()));
    rep.push(rel("E² = 0", mm(&e, &e), zero.clone()));
    rep.push(rel("F² = 0", mm(&f, &f), zero.clone()));
    let two_i_inv = (Cyclotomic::from_int(2) * Cyclotomic::i()).inverse().expect("nonzero");
    rep.push(rel(
        "[E,F] = (K - K⁻¹)/2i",
        mm(&e, &f).sub(&mm(&f, &e)).expect("4x4"),
        k.sub(&kinv).expect("4x4").scale(&two_i_inv),
    ));

    let h = Hni::build(2).expect("H2");
    let psi: Vec<Matrix<Cyclotomic>> = (0..h.dim())
        .map(|i| {
            let ix = h.pbw(i);
            let mut m = id.clone();
            if ix.p == 1 {
                m = mm(&m, &f);
            }
            m = mm(&m, &k.pow(ix.n as u32).expect("square"));
            if ix.q == 1 {
                m = mm(&m, &e);
            }
            m
        })
        .collect();
    let apply = |v: &[Cyclotomic]| {
        v.iter().zip(&psi).fold(zero.clone(), |acc, (c, m)| if c.is_zero() { acc } else { acc.add(&m.scale(c)).expect("4x4") })
    };
    let alg = h.algebra();
    let d = h.dim();
    let bad = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).find(|&(i, j)| apply(&alg.product(i, j)) != mm(&psi[i], &psi[j]));
    rep.push(Check::new("K, E, F ↦ matrices extends to an algebra map", claim).holds(
        bad.is_none(),
        "multiplicative on all basis pairs",
        match bad {
            None => "multiplicative on all basis pairs".to_string(),
            Some((i, j)) => format!("fails at {}·{}", alg.labels()[i], alg.labels()[j]),
        },
    ));
    let (b, _) = named_algebra(&h).expect("named");
    let pi1: Vec<Cyclotomic> = ["e1", "e3"].iter().map(|l| b.vector(l).expect("label")).fold(h.zero_vec(), |acc, v| {
        acc.into_iter().zip(v).map(|(x, y)| x + y).collect()
    });
    rep.push(rel("π₁ ↦ identity", apply(&pi1), id.clone()));
    let pi0: Vec<Cyclotomic> = ["e0", "e2"].iter().map(|l| b.vector(l).expect("label")).fold(h.zero_vec(), |acc, v| {
        acc.into_iter().zip(v).map(|(x, y)| x + y).collect()
    });
    rep.push(rel("π₀ ↦ 0", apply(&pi0), zero.clone()));
    let flat: Vec<Vec<Cyclotomic>> = psi.iter().map(|m| m.to_rows().concat()).collect();
    let rank = span_rank(&flat);
    rep.push(Check::new("generated algebra dimension", claim).against_printed(8, rank));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_is_associative_with_unit() {
        let m = model_algebra();
        assert_eq!(m.associativity_failure(), None);
        assert!(m.check_unit().is_ok());
        assert_eq!((0..16).filter(|&i| is_even(i)).count(), 8);
    }

    #[test]
    fn h1_printed_fails_corrected_passes() {
        let rep = grassmann_iso(GrassmannTarget::H1);
        assert!(!rep.has_failures(), "{}", rep.to_text());
        assert!(rep.find("printed: images in the even part").map(|c| !c.passed()).unwrap());
        assert_eq!(rep.find("corrected: products").unwrap().computed, "64/64");
    }

    #[test]
    fn h2_even_corrected_passes() {
        let rep = grassmann_iso(GrassmannTarget::H2Even);
        assert!(!rep.has_failures(), "{}", rep.to_text());
        assert!(!rep.find("printed: labels").unwrap().passed());
        assert_eq!(rep.find("corrected: products").unwrap().computed, "64/64");
    }

    #[test]
    fn matrix_model_holds() {
        let rep = h2_matrix_iso();
        assert_eq!(rep.count(crate::report::Status::Pass), rep.checks.len(), "{}", rep.to_text());
    }
}
