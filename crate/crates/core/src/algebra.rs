//! Finite-dimensional associative algebras given by structure constants.

use serde::Serialize;

use crate::linalg::{LinalgError, Matrix};
use crate::scalars::Field;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element of length {0} does not belong to an algebra of dimension {1}")]
    Mismatch(usize, usize),
    #[error("associativity fails on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("unit law fails on {0}")]
    NoUnit(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Sparse vector: (index, nonzero coefficient) pairs sorted by index.
pub type Sparse<F> = Vec<(usize, F)>;

pub fn sparse_from_dense<F: Field>(v: &[F]) -> Sparse<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse<F: Field>(s: &Sparse<F>, dim: usize) -> Vec<F> {
    let mut v = vec![F::zero(); dim];
    for (i, x) in s {
        v[*i] = v[*i].clone() + x;
    }
    v
}

/// Multiplication b_i b_j = Σ_k c_ij^k b_k, stored sparsely per pair (i, j).
#[derive(Clone, Debug)]
pub struct StructureConstants<F> {
    dim: usize,
    labels: Vec<String>,
    table: Vec<Sparse<F>>,
    unit: Vec<F>,
}

impl<F: Field> StructureConstants<F> {
    /// `products[i * dim + j]` is b_i b_j in coordinates.
    pub fn new(labels: Vec<String>, products: Vec<Vec<F>>, unit: Vec<F>) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if products.len() != dim * dim || unit.len() != dim {
            return Err(AlgebraError::Mismatch(products.len(), dim * dim));
        }
        if let Some(p) = products.iter().find(|p| p.len() != dim) {
            return Err(AlgebraError::Mismatch(p.len(), dim));
        }
        let table = products.iter().map(|p| sparse_from_dense(p)).collect();
        Ok(StructureConstants { dim, labels, table, unit })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        v[i] = F::one();
        v
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn product_sparse(&self, i: usize, j: usize) -> &Sparse<F> {
        &self.table[i * self.dim + j]
    }

    pub fn product(&self, i: usize, j: usize) -> Vec<F> {
        dense_from_sparse(self.product_sparse(i, j), self.dim)
    }

    fn check(&self, v: &[F]) -> Result<(), AlgebraError> {
        if v.len() != self.dim {
            Err(AlgebraError::Mismatch(v.len(), self.dim))
        } else {
            Ok(())
        }
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Result<Vec<F>, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = vec![F::zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.clone() * bj;
                for (k, c) in self.product_sparse(i, j) {
                    out[*k] = out[*k].clone() + ab.clone() * c;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of x ↦ a·x.
    pub fn left_mul_matrix(&self, a: &[F]) -> Result<Matrix<F>, AlgebraError> {
        self.check(a)?;
        let mut m: Matrix<F> = Matrix::zeros(self.dim, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.product_sparse(i, j) {
                    let v = m.get(*k, j).clone() + ai.clone() * c;
                    m.set(*k, j, v);
                }
            }
        }
        Ok(m)
    }

    /// Matrix of x ↦ x·a.
    pub fn right_mul_matrix(&self, a: &[F]) -> Result<Matrix<F>, AlgebraError> {
        self.check(a)?;
        let mut m: Matrix<F> = Matrix::zeros(self.dim, self.dim);
        for (j, aj) in a.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            for i in 0..self.dim {
                for (k, c) in self.product_sparse(i, j) {
                    let v = m.get(*k, i).clone() + aj.clone() * c;
                    m.set(*k, i, v);
                }
            }
        }
        Ok(m)
    }

    /// First failing triple of basis indices, if any.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.product_sparse(i, j);
                for k in 0..self.dim {
                    let mut left = vec![F::zero(); self.dim];
                    for (m, c) in ij {
                        for (l, d) in self.product_sparse(*m, k) {
                            left[*l] = left[*l].clone() + c.clone() * d;
                        }
                    }
                    let mut right = vec![F::zero(); self.dim];
                    for (m, c) in self.product_sparse(j, k) {
                        for (l, d) in self.product_sparse(i, *m) {
                            right[*l] = right[*l].clone() + c.clone() * d;
                        }
                    }
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_associative(&self) -> Result<(), AlgebraError> {
        match self.associativity_failure() {
            None => Ok(()),
            Some((i, j, k)) => Err(AlgebraError::NotAssociative(
                self.labels[i].clone(),
                self.labels[j].clone(),
                self.labels[k].clone(),
            )),
        }
    }

    pub fn check_unit(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b)? != b || self.mul(&b, &self.unit)? != b {
                return Err(AlgebraError::NoUnit(self.labels[i].clone()));
            }
        }
        Ok(())
    }

    /// Structure constants in a new basis; column j of `p` is the j-th new basis vector in old coordinates.
    pub fn change_basis(&self, p: &Matrix<F>, labels: Vec<String>) -> Result<Self, AlgebraError> {
        let pinv = p.inverse()?;
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| p.column(j)).collect();
        let mut products = Vec::with_capacity(self.dim * self.dim);
        for a in &cols {
            for b in &cols {
                let ab = self.mul(a, b)?;
                products.push(pinv.apply(&ab)?);
            }
        }
        let unit = pinv.apply(&self.unit)?;
        Self::new(labels, products, unit)
    }

    /// Restriction to a subalgebra spanned by `basis` (given in coordinates).
    pub fn restrict(&self, basis: &[Vec<F>], labels: Vec<String>, unit: Vec<F>) -> Result<Self, AlgebraError> {
        let p = Matrix::from_columns(basis)?;
        let mut products = Vec::new();
        for a in basis {
            for b in basis {
                let ab = self.mul(a, b)?;
                let x = p
                    .solve(&ab)
                    .ok_or_else(|| AlgebraError::Linalg(LinalgError::Dimension("product leaves the subspace".into())))?;
                products.push(x);
            }
        }
        Self::new(labels, products, unit)
    }

    /// Coordinates of `v` with respect to a list of vectors spanning a space containing it.
    pub fn coordinates_in(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
        Matrix::from_columns(basis).ok()?.solve(v)
    }

    /// Trace of the left-regular representation.
    pub fn trace_lambda(&self, a: &[F]) -> Result<F, AlgebraError> {
        Ok(self.left_mul_matrix(a)?.trace())
    }

    /// Element a·b - b·a.
    pub fn commutator(&self, a: &[F], b: &[F]) -> Result<Vec<F>, AlgebraError> {
        let ab = self.mul(a, b)?;
        let ba = self.mul(b, a)?;
        Ok(ab.into_iter().zip(ba).map(|(x, y)| x - y).collect())
    }

    /// Human-readable element, e.g. "P1 + e1".
    pub fn format(&self, v: &[F]) -> String {
        format_element(&self.labels, v)
    }

    pub fn to_table_json(&self) -> TableJson<F>
    where
        F: Serialize,
    {
        let table = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        self.product_sparse(i, j)
                            .iter()
                            .map(|(k, c)| (self.labels[*k].clone(), c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        TableJson { basis: self.labels.clone(), table }
    }
}

/// JSON table dump: rows X, columns Y, cell XY as a sparse label → scalar map.
#[derive(Clone, Debug, Serialize)]
pub struct TableJson<F> {
    pub basis: Vec<String>,
    pub table: Vec<Vec<Vec<(String, F)>>>,
}

impl<F: Serialize> TableJson<F> {
    pub fn to_value(&self) -> serde_json::Value {
        let table: Vec<Vec<serde_json::Value>> = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| {
                        let mut m = serde_json::Map::new();
                        for (l, c) in cell {
                            m.insert(l.clone(), serde_json::to_value(c).expect("scalar json"));
                        }
                        serde_json::Value::Object(m)
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "basis": self.basis, "table": table })
    }
}

pub fn format_element<F: Field>(labels: &[String], v: &[F]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (l, c) in labels.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let term = if c.is_one() {
            l.clone()
        } else if (-c.clone()).is_one() {
            format!("-{l}")
        } else if s.contains(' ') {
            format!("({s})*{l}")
        } else {
            format!("{s}*{l}")
        };
        parts.push(term);
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    /// 2x2 matrix units e00, e01, e10, e11.
    fn m2() -> StructureConstants<BigRational> {
        let labels: Vec<String> = ["e00", "e01", "e10", "e11"].iter().map(|s| s.to_string()).collect();
        let mut products = Vec::new();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for (c, d) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let mut v = vec![BigRational::zero(); 4];
                if b == c {
                    v[a * 2 + d] = BigRational::one();
                }
                products.push(v);
            }
        }
        let one = BigRational::one;
        let zero = BigRational::zero;
        StructureConstants::new(labels, products, vec![one(), zero(), zero(), one()]).unwrap()
    }

    #[test]
    fn matrix_units_are_associative_with_unit() {
        let a = m2();
        a.check_associative().unwrap();
        a.check_unit().unwrap();
    }

    #[test]
    fn left_regular_is_multiplicative() {
        let a = m2();
        let x = a.basis_vector(1);
        let y = a.basis_vector(2);
        let lx = a.left_mul_matrix(&x).unwrap();
        let ly = a.left_mul_matrix(&y).unwrap();
        let lxy = a.left_mul_matrix(&a.mul(&x, &y).unwrap()).unwrap();
        assert_eq!(lx.mul(&ly).unwrap(), lxy);
    }

    #[test]
    fn mismatch_is_reported() {
        let a = m2();
        assert_eq!(a.mul(&[BigRational::one()], &a.basis_vector(0)), Err(AlgebraError::Mismatch(1, 4)));
    }

    #[test]
    fn formatting() {
        let a = m2();
        let v = vec![BigRational::one(), BigRational::zero(), -BigRational::one(), BigRational::new(1.into(), 2.into())];
        assert_eq!(a.format(&v), "e00 - e10 + 1/2*e11");
    }
}
