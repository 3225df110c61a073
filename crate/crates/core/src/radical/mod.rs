//! Nilradical via the trace form, semisimple quotients, and the radical/positivity probe over N.

mod models;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use models::{grassmann_iso, h2_matrix_iso, GrassmannTarget};

use crate::algebra::{format_element, AlgebraError, StructureConstants};
use crate::hopf::{build_hopf, HopfStructure};
use crate::linalg::{same_span, signature, span_contains, span_rank, Matrix, SignatureTriple};
use crate::quotient::{named_basis, Hni, QuotientError};
use crate::representations::{gram_from_functional, star_default, trace_functional, Rep};
use crate::scalars::{Cyclotomic, Field};

/// T[i][j] = Tr λ(bᵢ bⱼ).
pub fn trace_form_matrix<F: Field>(a: &StructureConstants<F>) -> Matrix<F> {
    let d = a.dim();
    let t: Vec<F> = (0..d).map(|i| a.trace_lambda(&a.basis_vector(i)).expect("dims")).collect();
    let rows = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| a.product_sparse(i, j).iter().fold(F::zero(), |acc, (k, c)| acc + t[*k].clone() * c.clone()))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).expect("square")
}

/// Radical of a finite-dimensional algebra in characteristic zero: the kernel of (x, y) ↦ Tr λ(xy).
pub fn nilradical<F: Field>(a: &StructureConstants<F>) -> Vec<Vec<F>> {
    trace_form_matrix(a).kernel()
}

pub fn is_two_sided_ideal<F: Field>(a: &StructureConstants<F>, basis: &[Vec<F>]) -> bool {
    let d = a.dim();
    let mut products = Vec::new();
    for r in basis {
        for i in 0..d {
            let b = a.basis_vector(i);
            products.push(a.mul(&b, r).expect("dims"));
            products.push(a.mul(r, &b).expect("dims"));
        }
    }
    span_contains(basis, &products)
}

/// Smallest k with I^k = 0, if reached within dim + 1 steps.
pub fn nilpotency_index<F: Field>(a: &StructureConstants<F>, basis: &[Vec<F>]) -> Option<usize> {
    if span_rank(basis) == 0 {
        return Some(0);
    }
    let mut power = basis.to_vec();
    for k in 2..=a.dim() + 1 {
        let next: Vec<Vec<F>> = power.iter().flat_map(|p| basis.iter().map(move |r| a.mul(p, r).expect("dims"))).collect();
        power = reduce_to_basis(&next);
        if power.is_empty() {
            return Some(k);
        }
    }
    None
}

fn reduce_to_basis<F: Field>(vs: &[Vec<F>]) -> Vec<Vec<F>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(vs.to_vec()).expect("rows").rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Complement of span(basis) orthogonal for the coordinate (hermitian) dot product.
pub fn orthogonal_complement<F: Field>(basis: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    if basis.is_empty() {
        return (0..dim).map(|i| (0..dim).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect();
    }
    let rows: Vec<Vec<F>> = basis.iter().map(|r| r.iter().map(|x| x.conj()).collect()).collect();
    Matrix::from_rows(rows).expect("rows").kernel()
}

/// A/rad on the orthogonal complement, with products projected along the radical.
pub fn semisimple_quotient<F: Field>(
    a: &StructureConstants<F>,
    rad: &[Vec<F>],
) -> Result<(Vec<Vec<F>>, StructureConstants<F>), AlgebraError> {
    let comp = orthogonal_complement(rad, a.dim());
    let mut all = comp.clone();
    all.extend(rad.iter().cloned());
    let p = Matrix::from_columns(&all)?;
    let pinv = p.inverse()?;
    let k = comp.len();
    let project = |v: &[F]| -> Result<Vec<F>, AlgebraError> { Ok(pinv.apply(v)?[..k].to_vec()) };
    let mut products = Vec::with_capacity(k * k);
    for x in &comp {
        for y in &comp {
            products.push(project(&a.mul(x, y)?)?);
        }
    }
    let unit = project(a.unit())?;
    let labels = (0..k).map(|i| format!("q{i}")).collect();
    Ok((comp, StructureConstants::new(labels, products, unit)?))
}

/// One radical/positivity record per N; all scalars rendered as strings so the JSON is stable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadicalReport {
    pub n: usize,
    pub dim_algebra: usize,
    pub dim_radical: usize,
    pub basis_labels: String,
    pub radical_basis: Vec<String>,
    pub radical_is_ideal: bool,
    pub nilpotency_index: Option<usize>,
    pub dim_quotient: usize,
    pub quotient_radical_dim: usize,
    pub quotient_constants: BTreeMap<String, String>,
    pub trace_kernel_dims: BTreeMap<String, usize>,
    pub containment_flags: BTreeMap<String, bool>,
    pub kernel_equals_radical: BTreeMap<String, bool>,
    pub hermitian: BTreeMap<String, bool>,
    pub signatures: BTreeMap<String, SignatureTriple>,
    pub quotient_signatures: BTreeMap<String, SignatureTriple>,
}

/// Everything computed for one N, kept with the vectors for further checks.
pub struct RadicalData {
    pub report: RadicalReport,
    pub labels: Vec<String>,
    /// Radical basis and form kernels in the coordinates named by `labels`.
    pub radical: Vec<Vec<Cyclotomic>>,
    pub kernels: BTreeMap<String, Vec<Vec<Cyclotomic>>>,
    pub quotient: StructureConstants<Cyclotomic>,
    pub quotient_embedding: Vec<Vec<Cyclotomic>>,
}

/// Radical, quotient and both trace forms for H_N^i, in the named basis when one exists.
pub fn radical_data(hs: &HopfStructure) -> Result<RadicalData, QuotientError> {
    let h = &hs.h;
    let d = h.dim();
    let (labels, alg, to_pbw, kind) = match named_basis(h) {
        Ok(b) => (b.labels.clone(), b.transport(h.algebra())?, b.matrix.clone(), "named"),
        Err(_) => (h.algebra().labels().to_vec(), h.algebra().clone(), Matrix::identity(d), "pbw"),
    };
    let rad = reduce_to_basis(&nilradical(&alg));
    let (comp, quotient) = semisimple_quotient(&alg, &rad)?;
    let q_rad = nilradical(&quotient);
    let star = star_default(h);
    let pbw_vecs: Vec<Vec<Cyclotomic>> = (0..d).map(|j| to_pbw.column(j)).collect();
    let mut kernels = BTreeMap::new();
    let mut report = RadicalReport {
        n: h.n(),
        dim_algebra: d,
        dim_radical: rad.len(),
        basis_labels: kind.into(),
        radical_basis: rad.iter().map(|v| format_element(&labels, v)).collect(),
        radical_is_ideal: is_two_sided_ideal(&alg, &rad),
        nilpotency_index: nilpotency_index(&alg, &rad),
        dim_quotient: quotient.dim(),
        quotient_radical_dim: q_rad.len(),
        quotient_constants: BTreeMap::new(),
        trace_kernel_dims: BTreeMap::new(),
        containment_flags: BTreeMap::new(),
        kernel_equals_radical: BTreeMap::new(),
        hermitian: BTreeMap::new(),
        signatures: BTreeMap::new(),
        quotient_signatures: BTreeMap::new(),
    };
    for i in 0..quotient.dim() {
        for j in 0..quotient.dim() {
            let p = quotient.product(i, j);
            if p.iter().any(|x| !x.is_zero()) {
                report.quotient_constants.insert(format!("q{i}*q{j}"), quotient.format(&p));
            }
        }
    }
    for rep in [Rep::Lambda, Rep::Mu] {
        let t = trace_functional(hs, rep);
        let g = gram_from_functional(hs, &t, rep, &star, &Cyclotomic::one(), &pbw_vecs, labels.clone())?;
        let ker = g.matrix.kernel();
        let name = rep.name().to_string();
        report.trace_kernel_dims.insert(name.clone(), ker.len());
        report.containment_flags.insert(name.clone(), span_contains(&ker, &rad));
        report.kernel_equals_radical.insert(name.clone(), same_span(&ker, &rad));
        report.hermitian.insert(name.clone(), g.hermitian);
        if let Some(s) = g.signature {
            report.signatures.insert(name.clone(), s);
        }
        if g.hermitian && !comp.is_empty() {
            let c = Matrix::from_columns(&comp)?;
            let restricted = c.adjoint().mul(&g.matrix).and_then(|x| x.mul(&c))?;
            report.quotient_signatures.insert(name.clone(), signature(&restricted)?);
        }
        kernels.insert(name, ker);
    }
    Ok(RadicalData { report, labels, radical: rad, kernels, quotient, quotient_embedding: comp })
}

/// Radical reports for N = 1..=n_max.
pub fn conjecture_probe(n_max: usize) -> Result<Vec<RadicalReport>, QuotientError> {
    (1..=n_max).map(|n| Ok(radical_data(&build_hopf(&Hni::build(n)?))?.report)).collect()
}

/// Pretty JSON with a trailing newline; identical input gives identical bytes.
pub fn probe_json(reports: &[RadicalReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("serializable");
    s.push('\n');
    s
}

pub const PROBE_SCHEMA: &str = include_str!("probe.schema.json");

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn matrix_algebra() -> StructureConstants<BigRational> {
        let labels: Vec<String> = (0..4).map(|k| format!("m{}{}", k / 2, k % 2)).collect();
        let mut products = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                let mut v = vec![q(0); 4];
                if a % 2 == b / 2 {
                    v[(a / 2) * 2 + b % 2] = q(1);
                }
                products.push(v);
            }
        }
        StructureConstants::new(labels, products, vec![q(1), q(0), q(0), q(1)]).unwrap()
    }

    #[test]
    fn matrix_algebra_is_semisimple() {
        assert!(nilradical(&matrix_algebra()).is_empty());
    }

    #[test]
    fn h1_radical_and_quotient() {
        let h = Hni::build(1).unwrap();
        let data = radical_data(&build_hopf(&h)).unwrap();
        let r = &data.report;
        assert_eq!((r.dim_radical, r.dim_quotient, r.quotient_radical_dim), (6, 2, 0));
        assert!(r.radical_is_ideal);
        assert_eq!(r.nilpotency_index, Some(3));
        assert!(r.kernel_equals_radical["lambda"] && r.kernel_equals_radical["mu"]);
        assert_eq!(r.signatures["lambda"], SignatureTriple::new(2, 6, 0));
    }
}
