//! Dense exact linear algebra over a [`Field`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalars::{Field, ScalarError, Sign};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("form is not hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Inertia (n₊, n₀, n₋) of a hermitian form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignatureTriple {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl SignatureTriple {
    pub fn new(n_plus: usize, n_zero: usize, n_minus: usize) -> Self {
        SignatureTriple { n_plus, n_zero, n_minus }
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }
}

impl fmt::Display for SignatureTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_zero, self.n_minus)
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<F>]) -> Result<Self, LinalgError> {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        if cols.iter().any(|x| x.len() != r) {
            return Err(LinalgError::Dimension("ragged columns".into()));
        }
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.data[i * c + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.conj()).collect() }
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect(),
        })
    }

    fn same_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    let t = a.clone() * b;
                    out.data[idx] = std::mem::replace(&mut out.data[idx], F::zero()) + t;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn pow(&self, e: u32) -> Result<Self, LinalgError> {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> F {
        let mut acc = F::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self.get(i, i);
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for k in c..m.cols {
                let v = m.get(r, k).clone() * &inv;
                m.set(r, k, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for k in c..m.cols {
                    let pk = m.get(r, k);
                    if pk.is_zero() {
                        continue;
                    }
                    let v = m.get(i, k).clone() - f.clone() * pk;
                    m.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {v : M v = 0}.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Solves M x = b; None when inconsistent. Picks free variables as zero.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::Dimension("hstack row mismatch".into()));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    /// Kronecker product with index (i, j) ↦ i·dim(b) + j.
    pub fn kron(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            m.set(i * other.rows + k, j * other.cols + l, a.clone() * b);
                        }
                    }
                }
            }
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn is_hermitian(&self) -> bool {
        self.first_non_hermitian().is_none()
    }

    fn first_non_hermitian(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.get(j, i) != self.get(i, j).conj() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Inertia of a hermitian matrix.
///
/// Non-real entries are handled by realifying: G = A + iB becomes the real
/// symmetric [[A, -B], [B, A]], whose inertia is twice that of G.
pub fn signature<F: Field>(g: &Matrix<F>) -> Result<SignatureTriple, LinalgError> {
    if let Some((i, j)) = g.first_non_hermitian() {
        return Err(LinalgError::NotHermitian(i, j));
    }
    let all_real = g.data.iter().all(|x| x.is_real());
    if all_real {
        return real_symmetric_inertia(g.clone());
    }
    let n = g.rows;
    let mut big = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = g.get(i, j).re_im();
            big.set(i, j, a.clone());
            big.set(n + i, n + j, a);
            big.set(i, n + j, -b.clone());
            big.set(n + i, j, b);
        }
    }
    let s = real_symmetric_inertia(big)?;
    Ok(SignatureTriple::new(s.n_plus / 2, s.n_zero / 2, s.n_minus / 2))
}

/// Symmetric congruence elimination with exact pivots.
fn real_symmetric_inertia<F: Field>(mut m: Matrix<F>) -> Result<SignatureTriple, LinalgError> {
    let n = m.rows;
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let diag = active.iter().copied().find(|&i| !m.get(i, i).is_zero());
        let p = match diag {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !m.get(i, j).is_zero());
                let Some((i, j)) = pair else { break };
                // row/col i += row/col j makes the (i, i) entry 2·m_ij ≠ 0
                for k in 0..n {
                    let v = m.get(i, k).clone() + m.get(j, k);
                    m.set(i, k, v);
                }
                for k in 0..n {
                    let v = m.get(k, i).clone() + m.get(k, j);
                    m.set(k, i, v);
                }
                i
            }
        };
        let piv = m.get(p, p).clone();
        match piv.real_sign()? {
            Sign::Positive => pos += 1,
            Sign::Negative => neg += 1,
            Sign::Zero => unreachable!("pivot chosen nonzero"),
        }
        let inv = piv.inverse().expect("nonzero pivot");
        active.retain(|&x| x != p);
        for &i in &active {
            let f = m.get(i, p).clone() * &inv;
            if f.is_zero() {
                continue;
            }
            for &k in &active {
                let v = m.get(i, k).clone() - f.clone() * m.get(p, k);
                m.set(i, k, v);
            }
            m.set(i, p, F::zero());
        }
        for &k in &active {
            m.set(p, k, F::zero());
        }
    }
    Ok(SignatureTriple::new(pos, n - pos - neg, neg))
}

/// Rank of a list of vectors.
pub fn span_rank<F: Field>(vectors: &[Vec<F>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).map(|m| m.rank()).unwrap_or(0)
}

/// Whether every vector of `a` lies in span(b).
pub fn span_contains<F: Field>(b: &[Vec<F>], a: &[Vec<F>]) -> bool {
    let rb = span_rank(b);
    let mut all = b.to_vec();
    all.extend(a.iter().cloned());
    span_rank(&all) == rb
}

pub fn same_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    span_rank(a) == span_rank(b) && span_contains(b, a)
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field + Serialize> Serialize for Matrix<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).unwrap().iter().all(|x| x == &q(0)));
        assert_eq!(Matrix::<BigRational>::identity(8).rank(), 8);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(m(&[&[1, 1], &[1, 1]]).inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(signature(&Matrix::<BigRational>::identity(2)).unwrap(), SignatureTriple::new(2, 0, 0));
        let hyperbolic = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&hyperbolic).unwrap(), SignatureTriple::new(1, 0, 1));
        let degenerate = m(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, -3]]);
        assert_eq!(signature(&degenerate).unwrap(), SignatureTriple::new(1, 1, 1));
    }

    #[test]
    fn hermitian_complex_form() {
        use crate::scalars::Cyclotomic;
        let i = Cyclotomic::i();
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let g = Matrix::from_rows(vec![
            vec![Cyclotomic::from_int(1), i.clone()],
            vec![-i, Cyclotomic::from_int(1)],
        ])
        .unwrap();
        assert_eq!(signature(&g).unwrap(), SignatureTriple::new(1, 1, 0));
    }
}
