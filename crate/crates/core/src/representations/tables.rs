//! Adjoint tables, traces and Gram forms in the named bases, diffed against the printed values.

use num_traits::{One, Zero};

use super::{adjoint_matrices, adjoint_rep, basis_vectors, star_default, trace_functional, trace_gram, GramMatrix, Rep};
use crate::algebra::format_element;
use crate::fixtures::{self, parse_expr, to_vector, Env};
use crate::hopf::HopfStructure;
use crate::linalg::{Matrix, SignatureTriple};
use crate::quotient::{named_basis, BasisChange};
use crate::report::{Check, VerificationReport};
use crate::scalars::Cyclotomic;

/// μ(b) for every named-basis element b, in named coordinates.
pub fn adjoint_in_basis(hs: &HopfStructure, b: &BasisChange) -> Vec<Matrix<Cyclotomic>> {
    let mats = adjoint_matrices(hs);
    (0..hs.dim())
        .map(|a| {
            let m = adjoint_rep(&mats, &b.matrix.column(a));
            b.inverse.mul(&m).and_then(|x| x.mul(&b.matrix)).expect("square")
        })
        .collect()
}

/// Tr μ(b) on the named basis (PBW basis when none exists), with diffs against the printed traces for N = 1, 2.
pub fn adjoint_trace_table(hs: &HopfStructure) -> (Vec<String>, Vec<Cyclotomic>, VerificationReport) {
    let t = trace_functional(hs, Rep::Mu);
    let (vecs, labels) = basis_vectors(&hs.h);
    let values: Vec<Cyclotomic> = vecs.iter().map(|v| super::apply_functional(&t, v)).collect();
    let mut rep = VerificationReport::new("adjoint-trace", hs.h.n());
    let printed: Option<(Vec<String>, Vec<String>)> = match hs.h.n() {
        1 => {
            let fx = fixtures::h1_adjoint();
            Some((fx.basis, fx.trace))
        }
        2 => {
            let fx = fixtures::h2_adjoint();
            Some((fx.trace_basis, fx.trace))
        }
        _ => None,
    };
    if let Some((basis, trace)) = printed {
        let claim = if hs.h.n() == 1 { "adjoint trace on H1" } else { "adjoint trace on H2" };
        for (l, s) in basis.iter().zip(&trace) {
            let j = labels.iter().position(|x| x == l).expect("label");
            let p = fixtures::scalar(s).expect("fixture");
            rep.push(Check::new(format!("Tr_μ({l})"), claim).against_printed(p, values[j].clone()));
        }
    }
    (labels, values, rep)
}

fn cell_diff(
    labels: &[String],
    printed: &[(String, Vec<Cyclotomic>)],
    computed: &[Vec<Cyclotomic>],
) -> (bool, String, String) {
    let mut bad_p = Vec::new();
    let mut bad_c = Vec::new();
    for ((key, p), c) in printed.iter().zip(computed) {
        if p != c {
            bad_p.push(format!("{key}: {}", format_element(labels, p)));
            bad_c.push(format!("{key}: {}", format_element(labels, c)));
        }
    }
    if bad_p.is_empty() {
        let all = printed.iter().map(|(k, p)| format!("{k}: {}", format_element(labels, p))).collect::<Vec<_>>().join("; ");
        (true, all.clone(), all)
    } else {
        (false, bad_p.join("; "), bad_c.join("; "))
    }
}

/// H1: each printed row of the μ table against μ(a)x.
pub fn h1_mu_table_checks(hs: &HopfStructure) -> Vec<Check> {
    let fx = fixtures::h1_adjoint();
    let b = named_basis(&hs.h).expect("named basis");
    let mu = adjoint_in_basis(hs, &b);
    let idx = |l: &str| b.labels.iter().position(|x| x == l).expect("label");
    fx.basis
        .iter()
        .zip(&fx.mu)
        .map(|(a, row)| {
            let m = &mu[idx(a)];
            let printed: Vec<(String, Vec<Cyclotomic>)> =
                fx.basis.iter().zip(row).map(|(x, s)| (x.clone(), fixtures::vector(s, &b.labels).expect("fixture"))).collect();
            let computed: Vec<Vec<Cyclotomic>> = fx.basis.iter().map(|x| m.column(idx(x))).collect();
            let (ok, p, c) = cell_diff(&b.labels, &printed, &computed);
            Check::new(format!("μ({a}) row"), "adjoint action table of H1").printed_holds(ok, p, c)
        })
        .collect()
}

/// H2: printed μ tables on both blocks, the generic formulas over all index pairs, and the
/// vanishing of μ on the odd block.
pub fn mu_action_tables(hs: &HopfStructure) -> VerificationReport {
    let mut rep = VerificationReport::new("adjoint-tables", hs.h.n());
    let b = named_basis(&hs.h).expect("named basis");
    let mu = adjoint_in_basis(hs, &b);
    let lab = &b.labels;
    let idx = |l: &str| lab.iter().position(|x| x == l).expect("label");
    let fx = fixtures::h2_adjoint();
    for (block, cols, table) in [("even", &fx.even_columns, &fx.even), ("odd", &fx.odd_columns, &fx.odd)] {
        for (a, row) in fx.rows.iter().zip(table) {
            let m = &mu[idx(a)];
            let printed: Vec<(String, Vec<Cyclotomic>)> =
                cols.iter().zip(row).map(|(x, s)| (x.clone(), fixtures::vector(s, lab).expect("fixture"))).collect();
            let computed: Vec<Vec<Cyclotomic>> = cols.iter().map(|x| m.column(idx(x))).collect();
            let (ok, p, c) = cell_diff(lab, &printed, &computed);
            rep.push(Check::new(format!("μ({a}) on the {block} block"), "adjoint action tables of H2").printed_holds(ok, p, c));
        }
    }
    for (key, formula) in &fx.generic {
        let (fa, fxl) = key.split_once(',').expect("key");
        let mut printed = Vec::new();
        let mut computed = Vec::new();
        for m in 0..4 {
            for j in 0..4 {
                let env = Env::with(4, &[('m', m), ('j', j)]);
                let v = to_vector(&parse_expr(formula, &env).expect("fixture"), lab).expect("fixture");
                printed.push((format!("m={m},j={j}"), v));
                computed.push(mu[idx(&format!("{fa}{m}"))].column(idx(&format!("{fxl}{j}"))));
            }
        }
        let (ok, p, c) = cell_diff(lab, &printed, &computed);
        rep.push(Check::new(format!("μ({fa}_m){fxl}_j"), "generic adjoint formulas of H2").printed_holds(ok, p, c));
    }
    let odd: Vec<&String> = lab.iter().filter(|l| l[1..].parse::<usize>().map(|k| k % 2 == 1).unwrap_or(false)).collect();
    let nonzero: Vec<String> = odd.iter().filter(|l| !mu[idx(l)].is_zero()).map(|l| l.to_string()).collect();
    rep.push(Check::new("μ vanishes on the odd block", "μ vanishes on the odd block of H2").holds(
        nonzero.is_empty(),
        "μ(a) = 0 for a in the odd block",
        if nonzero.is_empty() { "all zero".to_string() } else { format!("nonzero at {}", nonzero.join(", ")) },
    ));
    rep
}

fn gram_of(hs: &HopfStructure, rep: Rep, scale: &Cyclotomic, b: &BasisChange, labels: &[&str]) -> GramMatrix {
    let star = star_default(&hs.h);
    let vecs: Vec<Vec<Cyclotomic>> = labels.iter().map(|l| b.vector(l).expect("label")).collect();
    trace_gram(hs, rep, &star, scale, &vecs, labels.iter().map(|s| s.to_string()).collect()).expect("gram")
}

fn gram_vectors(hs: &HopfStructure, rep: Rep, vecs: &[Vec<Cyclotomic>], names: Vec<String>) -> GramMatrix {
    trace_gram(hs, rep, &star_default(&hs.h), &Cyclotomic::one(), vecs, names).expect("gram")
}

fn sig_text(g: &GramMatrix) -> String {
    g.signature.map(|s| s.to_string()).unwrap_or_else(|| "not hermitian".into())
}

fn matrix_from_strings(rows: &[Vec<String>]) -> Matrix<Cyclotomic> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| fixtures::scalar(s).expect("fixture")).collect()).collect())
        .expect("rectangular")
}

/// Gram-form claims for N = 1 (λ and ¼Tr_μ) and N = 2 (odd block λ-form, block orthogonality, μ-form).
pub fn gram_printed_checks(hs: &HopfStructure) -> VerificationReport {
    let mut rep = VerificationReport::new("gram", hs.h.n());
    let b = named_basis(&hs.h).expect("named basis");
    let all: Vec<&str> = b.labels.iter().map(|s| s.as_str()).collect();
    match hs.h.n() {
        1 => {
            let fx = fixtures::h1_adjoint();
            let lam = gram_of(hs, Rep::Lambda, &Cyclotomic::one(), &b, &all);
            rep.push(Check::new("λ-form hermitian", "λ scalar product on H1").compare(true, lam.hermitian));
            rep.push(
                Check::new("λ-form signature", "λ scalar product positive on span{e0, e1}")
                    .against_printed(SignatureTriple::new(2, 6, 0).to_string(), sig_text(&lam)),
            );
            let scale = fixtures::scalar(&fx.gram_scale).expect("fixture");
            let mu = gram_of(hs, Rep::Mu, &scale, &b, &all);
            let printed = matrix_from_strings(&fx.gram);
            rep.push(Check::new("μ-form hermitian", "μ scalar product on H1").compare(true, mu.hermitian));
            rep.push(
                Check::new("μ-form Gram", "μ scalar product on H1")
                    .printed_holds(printed == mu.matrix, format!("{printed:?}"), format!("{:?}", mu.matrix)),
            );
            rep.push(
                Check::new("μ-form signature", "μ scalar product on H1")
                    .against_printed(SignatureTriple::new(2, 6, 0).to_string(), sig_text(&mu)),
            );
        }
        2 => {
            let fx = fixtures::h2_odd_block();
            let odd: Vec<&str> = fx.basis.iter().map(|s| s.as_str()).collect();
            let lam = gram_of(hs, Rep::Lambda, &Cyclotomic::one(), &b, &odd);
            rep.push(Check::new("odd-block λ-form hermitian", "λ scalar product on the odd block of H2").compare(true, lam.hermitian));
            let printed = matrix_from_strings(&fx.gram);
            rep.push(
                Check::new("odd-block λ Gram", "λ scalar product on the odd block of H2")
                    .printed_holds(printed == lam.matrix, format!("{printed:?}"), format!("{:?}", lam.matrix)),
            );
            let [p, z, m] = fx.signature;
            rep.push(
                Check::new("odd-block λ signature", "λ scalar product on the odd block of H2")
                    .against_printed(SignatureTriple::new(p, z, m).to_string(), sig_text(&lam)),
            );
            let parse = |s: &String| b.to_source(&fixtures::vector(s, &b.labels).expect("fixture"));
            let pos: Vec<Vec<Cyclotomic>> = fx.positive.iter().map(parse).collect();
            let g = gram_vectors(hs, Rep::Lambda, &pos, fx.positive.clone());
            rep.push(
                Check::new("positive vectors orthonormal", "λ scalar product on the odd block of H2").printed_holds(
                    g.matrix == Matrix::identity(pos.len()),
                    format!("identity on {}", fx.positive.join(", ")),
                    format!("{:?}", g.matrix),
                ),
            );
            let neg: Vec<Vec<Cyclotomic>> = fx.negative.iter().map(parse).collect();
            let g = gram_vectors(hs, Rep::Lambda, &neg, fx.negative.clone());
            rep.push(
                Check::new("<F3,F3>", "λ scalar product on the odd block of H2")
                    .against_printed(-Cyclotomic::one(), g.matrix.get(0, 0).clone()),
            );
            let full = gram_of(hs, Rep::Lambda, &Cyclotomic::one(), &b, &all);
            let even_ix: Vec<usize> = (0..8).collect();
            let odd_ix: Vec<usize> = (8..16).collect();
            let cross = full.matrix.submatrix(&even_ix, &odd_ix);
            rep.push(Check::new("even/odd blocks λ-orthogonal", "blocks of H2 are mutually orthogonal").holds(
                cross.is_zero(),
                "zero cross block",
                if cross.is_zero() { "zero cross block".to_string() } else { format!("{cross:?}") },
            ));
            let afx = fixtures::h2_adjoint();
            let scale = fixtures::scalar(&afx.gram_scale).expect("fixture");
            let mu = gram_of(hs, Rep::Mu, &scale, &b, &all);
            rep.push(Check::new("μ-form hermitian", "μ scalar product on H2").compare(true, mu.hermitian));
            let mut printed_mu = Matrix::zeros(16, 16);
            for (k, v) in &afx.gram_nonzero {
                let (x, y) = k.split_once(',').expect("key");
                let (i, j) = (b.labels.iter().position(|l| l == x).unwrap(), b.labels.iter().position(|l| l == y).unwrap());
                printed_mu.set(i, j, fixtures::scalar(v).expect("fixture"));
            }
            let nonzero = |m: &Matrix<Cyclotomic>| {
                let mut out = Vec::new();
                for i in 0..16 {
                    for j in 0..16 {
                        if !m.get(i, j).is_zero() {
                            out.push(format!("<{},{}> = {}", b.labels[i], b.labels[j], m.get(i, j)));
                        }
                    }
                }
                out.join(", ")
            };
            rep.push(
                Check::new("μ-form nonzero entries", "μ scalar product on H2")
                    .printed_holds(printed_mu == mu.matrix, nonzero(&printed_mu), nonzero(&mu.matrix)),
            );
            let null = mu.signature.map(|s| s.n_zero).unwrap_or(0);
            rep.push(
                Check::new("μ-form null space dimension", "μ scalar product on H2").against_printed(afx.gram_null_space_dim, null),
            );
        }
        _ => {}
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::build_hopf;
    use crate::quotient::Hni;
    use crate::report::Status;

    fn not_passing(rep: &VerificationReport) -> Vec<&str> {
        rep.checks.iter().filter(|c| c.status != Status::Pass).map(|c| c.name.as_str()).collect()
    }

    #[test]
    fn h1_adjoint_data() {
        let hs = build_hopf(&Hni::build(1).unwrap());
        let (_, values, rep) = adjoint_trace_table(&hs);
        assert_eq!(rep.count(Status::Pass), 8);
        assert_eq!(values[0], Cyclotomic::from_int(4));
        let rows = h1_mu_table_checks(&hs);
        let bad: Vec<&str> = rows.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
        assert_eq!(bad, ["μ(F1) row", "μ(C0) row"]);
        assert_eq!(rows[5].computed, "e1: -F0 - F1");
        assert!(not_passing(&gram_printed_checks(&hs)).is_empty());
    }

    #[test]
    fn h2_adjoint_data() {
        let hs = build_hopf(&Hni::build(2).unwrap());
        let (_, _, rep) = adjoint_trace_table(&hs);
        assert_eq!(not_passing(&rep), ["Tr_μ(e0)", "Tr_μ(e2)"]);
        assert_eq!(rep.find("Tr_μ(e0)").unwrap().computed, "8");
        let tables = mu_action_tables(&hs);
        assert!(!tables.has_failures());
        assert!(tables.find("μ vanishes on the odd block").unwrap().passed());
        let g = gram_printed_checks(&hs);
        assert!(!g.has_failures(), "{}", g.to_text());
        assert!(g.find("even/odd blocks λ-orthogonal").unwrap().passed());
        assert!(g.find("μ-form null space dimension").unwrap().passed());
        assert_eq!(g.find("odd-block λ signature").unwrap().computed, "(6, 0, 2)");
    }
}
