//! Regular and adjoint representations, the *-operation, trace functionals and Gram forms.

mod tables;

use num_traits::Zero;
use serde::Serialize;

pub use tables::{adjoint_trace_table, gram_printed_checks, h1_mu_table_checks, mu_action_tables};

use crate::algebra::StructureConstants;
use crate::hopf::HopfStructure;
use crate::linalg::{signature, LinalgError, Matrix, SignatureTriple};
use crate::quotient::{BasisChange, Hni, Letter};
use crate::scalars::{Cyclotomic, Field};

/// Which representation a trace is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rep {
    Lambda,
    Mu,
}

impl Rep {
    pub fn name(self) -> &'static str {
        match self {
            Rep::Lambda => "lambda",
            Rep::Mu => "mu",
        }
    }
}

/// x ↦ matrix · conj(x) when antilinear, matrix · x otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct StarOperation {
    pub matrix: Matrix<Cyclotomic>,
    pub antilinear: bool,
}

fn conj_vec(v: &[Cyclotomic]) -> Vec<Cyclotomic> {
    v.iter().map(|x| x.conj()).collect()
}

impl StarOperation {
    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let w = if self.antilinear { conj_vec(v) } else { v.to_vec() };
        self.matrix.apply(&w).expect("dimension")
    }

    /// self ∘ other, tracking antilinearity.
    pub fn compose(&self, other: &StarOperation) -> StarOperation {
        let inner = if self.antilinear { other.matrix.conj() } else { other.matrix.clone() };
        StarOperation { matrix: self.matrix.mul(&inner).expect("square"), antilinear: self.antilinear != other.antilinear }
    }

    pub fn is_involution(&self) -> bool {
        let sq = self.compose(self);
        !sq.antilinear && sq.matrix == Matrix::identity(self.matrix.rows())
    }

    /// First basis pair (i, j) with (b_i b_j)* ≠ b_j* b_i*.
    pub fn anti_multiplicative_failure(&self, a: &StructureConstants<Cyclotomic>) -> Option<(usize, usize)> {
        let d = a.dim();
        let stars: Vec<Vec<Cyclotomic>> = (0..d).map(|i| self.matrix.column(i)).collect();
        (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .find(|&(i, j)| self.apply(&a.product(i, j)) != a.mul(&stars[j], &stars[i]).expect("dims"))
    }

    /// First basis pair with φ(b_i b_j) ≠ φ(b_i)φ(b_j), for a map used as an algebra morphism.
    pub fn multiplicative_failure(&self, a: &StructureConstants<Cyclotomic>) -> Option<(usize, usize)> {
        let d = a.dim();
        let imgs: Vec<Vec<Cyclotomic>> = (0..d).map(|i| self.matrix.column(i)).collect();
        (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .find(|&(i, j)| self.apply(&a.product(i, j)) != a.mul(&imgs[i], &imgs[j]).expect("dims"))
    }

    /// The same map in the coordinates of `b`.
    pub fn in_basis(&self, b: &BasisChange) -> StarOperation {
        let p = if self.antilinear { b.matrix.conj() } else { b.matrix.clone() };
        let m = b.inverse.mul(&self.matrix).and_then(|x| x.mul(&p)).expect("square");
        StarOperation { matrix: m, antilinear: self.antilinear }
    }
}

/// Antilinear anti-involution with E* = F, F* = E, K* = K⁻¹, in PBW coordinates.
pub fn star_default(h: &Hni) -> StarOperation {
    let d = h.dim();
    let mut cols = Vec::with_capacity(d);
    for i in 0..d {
        let ix = h.pbw(i);
        let mut w = Vec::new();
        if ix.q == 1 {
            w.push(Letter::F);
        }
        w.extend(std::iter::repeat(Letter::Kinv).take(ix.n));
        if ix.p == 1 {
            w.push(Letter::E);
        }
        cols.push(h.word(&w));
    }
    StarOperation { matrix: Matrix::from_columns(&cols).expect("square"), antilinear: true }
}

/// μ(b_i) for every PBW basis element: x ↦ Σ a₍₁₎ x S(a₍₂₎).
pub fn adjoint_matrices(hs: &HopfStructure) -> Vec<Matrix<Cyclotomic>> {
    let d = hs.dim();
    let alg = hs.h.algebra();
    let s_cols: Vec<Vec<Cyclotomic>> = (0..d).map(|j| hs.antipode.column(j)).collect();
    let mut out = Vec::with_capacity(d);
    for a in 0..d {
        let mut cols = vec![hs.h.zero_vec(); d];
        for (&idx, c) in &hs.coproduct[a] {
            let (i, j) = (idx / d, idx % d);
            for (x, col) in cols.iter_mut().enumerate() {
                let left = alg.product_sparse(i, x);
                if left.is_empty() {
                    continue;
                }
                let mut bx = hs.h.zero_vec();
                for (k, v) in left {
                    bx[*k] = v.clone();
                }
                let r = hs.h.mul(&bx, &s_cols[j]);
                for (o, y) in col.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *o = o.clone() + c.clone() * y;
                    }
                }
            }
        }
        out.push(Matrix::from_columns(&cols).expect("square"));
    }
    out
}

/// μ(a) = Σ aᵢ μ(bᵢ).
pub fn adjoint_rep(mats: &[Matrix<Cyclotomic>], a: &[Cyclotomic]) -> Matrix<Cyclotomic> {
    let d = mats.len();
    let mut m = Matrix::zeros(d, d);
    for (c, mi) in a.iter().zip(mats) {
        if !c.is_zero() {
            m = m.add(&mi.scale(c)).expect("square");
        }
    }
    m
}

/// First PBW pair (i, j) with μ(bᵢbⱼ) ≠ μ(bᵢ)μ(bⱼ).
pub fn mu_multiplicative_failure(h: &Hni, mats: &[Matrix<Cyclotomic>]) -> Option<(usize, usize)> {
    let d = mats.len();
    (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).find(|&(i, j)| {
        adjoint_rep(mats, &h.algebra().product(i, j)) != mats[i].mul(&mats[j]).expect("square")
    })
}

/// Linear functional x ↦ Tr rep(x) as its values on the PBW basis.
pub fn trace_functional(hs: &HopfStructure, rep: Rep) -> Vec<Cyclotomic> {
    let alg = hs.h.algebra();
    match rep {
        Rep::Lambda => (0..hs.dim()).map(|i| alg.trace_lambda(&alg.basis_vector(i)).expect("dims")).collect(),
        Rep::Mu => adjoint_matrices(hs).iter().map(|m| m.trace()).collect(),
    }
}

pub fn apply_functional(t: &[Cyclotomic], v: &[Cyclotomic]) -> Cyclotomic {
    t.iter().zip(v).fold(Cyclotomic::zero(), |acc, (a, b)| if b.is_zero() { acc } else { acc + a.clone() * b })
}

/// G[i][j] = scale · Tr rep(vᵢ* vⱼ), with its inertia.
#[derive(Clone, Debug, Serialize)]
pub struct GramMatrix {
    pub rep: Rep,
    pub labels: Vec<String>,
    pub scale: Cyclotomic,
    pub matrix: Matrix<Cyclotomic>,
    pub hermitian: bool,
    pub signature: Option<SignatureTriple>,
}

/// Gram matrix of the given vectors (PBW coordinates) under the trace form.
pub fn trace_gram(
    hs: &HopfStructure,
    rep: Rep,
    star: &StarOperation,
    scale: &Cyclotomic,
    vectors: &[Vec<Cyclotomic>],
    labels: Vec<String>,
) -> Result<GramMatrix, LinalgError> {
    let t = trace_functional(hs, rep);
    gram_from_functional(hs, &t, rep, star, scale, vectors, labels)
}

pub fn gram_from_functional(
    hs: &HopfStructure,
    t: &[Cyclotomic],
    rep: Rep,
    star: &StarOperation,
    scale: &Cyclotomic,
    vectors: &[Vec<Cyclotomic>],
    labels: Vec<String>,
) -> Result<GramMatrix, LinalgError> {
    let stars: Vec<Vec<Cyclotomic>> = vectors.iter().map(|v| star.apply(v)).collect();
    let rows: Vec<Vec<Cyclotomic>> = stars
        .iter()
        .map(|s| vectors.iter().map(|v| apply_functional(t, &hs.h.mul(s, v)) * scale).collect())
        .collect();
    let matrix = Matrix::from_rows(rows)?;
    let hermitian = matrix.is_hermitian();
    let signature = if hermitian { Some(signature(&matrix)?) } else { None };
    Ok(GramMatrix { rep, labels, scale: scale.clone(), matrix, hermitian, signature })
}

/// Named-basis vectors (or PBW when no named basis exists) with their labels.
pub fn basis_vectors(h: &Hni) -> (Vec<Vec<Cyclotomic>>, Vec<String>) {
    match crate::quotient::named_basis(h) {
        Ok(b) => ((0..h.dim()).map(|j| b.matrix.column(j)).collect(), b.labels.clone()),
        Err(_) => ((0..h.dim()).map(|i| h.algebra().basis_vector(i)).collect(), h.algebra().labels().to_vec()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::build_hopf;
    use crate::quotient::named_basis;
    use num_traits::One;

    #[test]
    fn star_is_antimultiplicative_involution() {
        for n in 1..=3 {
            let h = Hni::build(n).unwrap();
            let s = star_default(&h);
            assert!(s.is_involution());
            assert_eq!(s.anti_multiplicative_failure(h.algebra()), None);
        }
    }

    #[test]
    fn star_on_named_basis_h1() {
        let h = Hni::build(1).unwrap();
        let b = named_basis(&h).unwrap();
        let s = star_default(&h).in_basis(&b);
        let idx = |l: &str| b.labels.iter().position(|x| x == l).unwrap();
        let e0 = s.matrix.column(idx("e0"));
        assert!(e0[idx("e0")].is_one());
        let star_e0 = s.matrix.column(idx("E0"));
        assert!(star_e0[idx("F1")].is_one());
    }

    #[test]
    fn mu_of_one_is_identity() {
        let h = Hni::build(1).unwrap();
        let hs = build_hopf(&h);
        let mats = adjoint_matrices(&hs);
        assert_eq!(adjoint_rep(&mats, &h.one()), Matrix::identity(h.dim()));
    }

    #[test]
    fn mu_is_multiplicative() {
        for n in 1..=2 {
            let h = Hni::build(n).unwrap();
            let mats = adjoint_matrices(&build_hopf(&h));
            assert_eq!(mu_multiplicative_failure(&h, &mats), None);
        }
    }
}
