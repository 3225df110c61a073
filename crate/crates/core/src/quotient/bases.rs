use num_traits::{One, Zero};

use super::pbw::Hni;
use super::rewrite::{half_inv_i, normal_form, parse_word, Combination, System};
use super::QuotientError;
use crate::algebra::{format_element, StructureConstants};
use crate::linalg::Matrix;
use crate::report::Check;
use crate::scalars::{Cyclotomic, Field};

/// Change of basis; column j of `matrix` is the j-th target vector in source (PBW) coordinates.
#[derive(Clone, Debug)]
pub struct BasisChange {
    pub source: String,
    pub target: String,
    pub labels: Vec<String>,
    pub matrix: Matrix<Cyclotomic>,
    pub inverse: Matrix<Cyclotomic>,
}

impl BasisChange {
    fn from_columns(target: &str, labels: Vec<String>, cols: Vec<Vec<Cyclotomic>>) -> Result<Self, QuotientError> {
        let matrix = Matrix::from_columns(&cols)?;
        let inverse = matrix.inverse()?;
        Ok(BasisChange { source: "pbw".into(), target: target.into(), labels, matrix, inverse })
    }

    pub fn vector(&self, label: &str) -> Option<Vec<Cyclotomic>> {
        self.labels.iter().position(|l| l == label).map(|j| self.matrix.column(j))
    }

    /// Target coordinates of a source vector.
    pub fn to_target(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.inverse.apply(v).expect("dimension")
    }

    pub fn to_source(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.matrix.apply(v).expect("dimension")
    }

    pub fn transport(&self, a: &StructureConstants<Cyclotomic>) -> Result<StructureConstants<Cyclotomic>, QuotientError> {
        Ok(a.change_basis(&self.matrix, self.labels.clone())?)
    }
}

/// e_k = (1/2N) Σ_j u^{kj} K^j in PBW coordinates.
pub fn fourier_idempotent(h: &Hni, k: i64) -> Vec<Cyclotomic> {
    let two_n = 2 * h.n() as i64;
    let u = h.u();
    let scale = h.scalar(&Cyclotomic::frac(1, two_n));
    let mut v = h.zero_vec();
    for j in 0..two_n {
        let c = u.pow(((k * j).rem_euclid(two_n)) as u32) * &scale;
        let kj = h.k_pow(j);
        for (x, y) in v.iter_mut().zip(kj) {
            if !y.is_zero() {
                *x = x.clone() + c.clone() * y;
            }
        }
    }
    v
}

/// Basis F^p e_k E^q in the PBW layout.
pub fn fourier_basis(h: &Hni) -> Result<BasisChange, QuotientError> {
    let mut cols = Vec::with_capacity(h.dim());
    let mut labels = Vec::with_capacity(h.dim());
    let (e, f, one) = (h.e(), h.f(), h.one());
    for i in 0..h.dim() {
        let ix = h.pbw(i);
        let left = if ix.p == 1 { &f } else { &one };
        let right = if ix.q == 1 { &e } else { &one };
        let ek = fourier_idempotent(h, ix.n as i64);
        cols.push(h.mul3(left, &ek, right));
        labels.push(format!("{}e{}{}", if ix.p == 1 { "F" } else { "" }, ix.n, if ix.q == 1 { "E" } else { "" }));
    }
    BasisChange::from_columns("fourier", labels, cols)
}

/// e_k, E_k = e_k E, F_k = e_k F, P_k = e_k EF for every k, block by block.
pub fn idempotent_basis(h: &Hni) -> Result<BasisChange, QuotientError> {
    let ks: Vec<i64> = (0..2 * h.n() as i64).collect();
    idempotent_basis_ordered(h, &[ks], "P")
}

fn idempotent_basis_ordered(h: &Hni, blocks: &[Vec<i64>], top: &str) -> Result<BasisChange, QuotientError> {
    let (e, f) = (h.e(), h.f());
    let ef = h.mul(&e, &f);
    let mut cols = Vec::new();
    let mut labels = Vec::new();
    for block in blocks {
        for k in block {
            cols.push(fourier_idempotent(h, *k));
            labels.push(format!("e{k}"));
        }
        for (name, g) in [("E", &e), ("F", &f), (top, &ef)] {
            for k in block {
                cols.push(h.mul(&fourier_idempotent(h, *k), g));
                labels.push(format!("{name}{k}"));
            }
        }
    }
    BasisChange::from_columns("named", labels, cols)
}

/// Named bases: H₁ (e₀,e₁,E₀,E₁,F₀,F₁,C₀,C₁); H₂ even block then odd block with P_k = e_k EF.
pub fn named_basis(h: &Hni) -> Result<BasisChange, QuotientError> {
    match h.n() {
        1 => idempotent_basis_ordered(h, &[vec![0, 1]], "C"),
        2 => idempotent_basis_ordered(h, &[vec![0, 2], vec![1, 3]], "P"),
        n => Err(QuotientError::NoNamedBasis(n)),
    }
}

/// C = FE + (K - K⁻¹)/(4i).
pub fn casimir(h: &Hni) -> Vec<Cyclotomic> {
    let fe = h.mul(&h.f(), &h.e());
    let c = h.scalar(&(half_inv_i() * Cyclotomic::frac(1, 2)));
    let k = h.k();
    let kinv = h.kinv();
    fe.iter()
        .zip(k.iter().zip(&kinv))
        .map(|(a, (x, y))| a.clone() + (x.clone() - y) * &c)
        .collect()
}

pub fn is_central(h: &Hni, x: &[Cyclotomic]) -> bool {
    (0..h.dim()).all(|i| {
        let b = h.algebra().basis_vector(i);
        h.algebra().commutator(x, &b).expect("dims").iter().all(|c| c.is_zero())
    })
}

fn free_nf(s: &str) -> Combination {
    normal_form(&Combination::word(parse_word(s).expect("word"), Cyclotomic::one()), System::Free)
}

fn free_commutator(a: &str, b: &str) -> Combination {
    free_nf(&format!("{a}{b}")).sub(&free_nf(&format!("{b}{a}")))
}

/// Centrality of E², F², K² before the quotient and of K², C in H_N^i.
pub fn center_check(h: &Hni) -> Vec<Check> {
    let claim = "E^2, F^2 and K^2 are central in U_i(sl2)";
    let mut out = Vec::new();
    for (x, ys) in [("KK", ["K", "E", "F"]), ("EE", ["K", "E", "F"]), ("FF", ["K", "E", "F"])] {
        for y in ys {
            let c = free_commutator(x, y);
            out.push(Check::new(format!("U: [{x}, {y}] = 0"), claim).compare("0".to_string(), c.to_string()));
        }
    }
    let lab = h.algebra().labels();
    let k2 = h.k_pow(2);
    out.push(Check::new(format!("H_{}: K^2 central", h.n()), "K^2 central in the quotient").holds(
        is_central(h, &k2),
        "central",
        format_element(lab, &k2),
    ));
    let c = casimir(h);
    out.push(Check::new(format!("H_{}: Casimir central", h.n()), "Casimir element is central").holds(
        is_central(h, &c),
        "central",
        format_element(lab, &c),
    ));
    let ef = h.algebra().commutator(&h.e(), &h.f()).expect("dims");
    let expected: Vec<Cyclotomic> = h
        .k()
        .iter()
        .zip(h.kinv())
        .map(|(x, y)| (x.clone() - y) * h.scalar(&half_inv_i()))
        .collect();
    out.push(Check::new(format!("H_{}: [E, F] = (K - K^-1)/2i", h.n()), "commutator of E and F").compare(
        format_element(lab, &expected),
        format_element(lab, &ef),
    ));
    out
}

/// Checks the Fourier idempotent properties for one N.
pub fn fourier_properties(h: &Hni) -> Vec<Check> {
    let claim = "properties of the Fourier idempotents e_k";
    let two_n = 2 * h.n() as i64;
    let lab = h.algebra().labels().to_vec();
    let es: Vec<Vec<Cyclotomic>> = (0..two_n).map(|k| fourier_idempotent(h, k)).collect();
    let u = h.u();
    let mut out = Vec::new();
    let mut sum = h.zero_vec();
    for e in &es {
        sum = sum.iter().zip(e).map(|(a, b)| a.clone() + b).collect();
    }
    out.push(Check::new("sum of e_k is 1", claim).compare(format_element(&lab, &h.one()), format_element(&lab, &sum)));
    let mut ortho = true;
    for (k, ek) in es.iter().enumerate() {
        for (m, em) in es.iter().enumerate() {
            let p = h.mul(ek, em);
            let expect = if k == m { ek.clone() } else { h.zero_vec() };
            ortho &= p == expect;
        }
    }
    out.push(Check::new("e_k e_m = delta_km e_k", claim).holds(ortho, "orthogonal idempotents", if ortho { "orthogonal idempotents" } else { "violated" }));
    let scale = |v: &[Cyclotomic], s: &Cyclotomic| -> Vec<Cyclotomic> { v.iter().map(|x| x.clone() * s).collect() };
    let mut k_ok = true;
    let mut kinv_ok = true;
    let mut e_ok = true;
    let mut f_ok = true;
    let n = h.n() as i64;
    for k in 0..two_n {
        let ek = &es[k as usize];
        let ekn = &es[((k + n) % two_n) as usize];
        let uk = u.pow(k as u32);
        let uinv = uk.inverse().expect("root of unity");
        k_ok &= h.mul(&h.k(), ek) == scale(ek, &uinv);
        kinv_ok &= h.mul(&h.kinv(), ek) == scale(ek, &uk);
        e_ok &= h.mul(&h.e(), ek) == h.mul(ekn, &h.e());
        f_ok &= h.mul(ek, &h.f()) == h.mul(&h.f(), ekn);
    }
    for (name, ok) in [
        ("K e_k = u^-k e_k", k_ok),
        ("K^-1 e_k = u^k e_k", kinv_ok),
        ("E e_k = e_{k+N} E", e_ok),
        ("e_k F = F e_{k+N}", f_ok),
    ] {
        out.push(Check::new(name, claim).holds(ok, "holds for all k", if ok { "holds for all k" } else { "violated" }));
    }
    let ef = h.mul(&h.e(), &h.f());
    let quarter = h.scalar(&(half_inv_i() * Cyclotomic::frac(1, 2)));
    let mut rhs = ef;
    for k in 0..two_n {
        let uk = u.pow(k as u32);
        let coef = (uk.clone() - uk.inverse().expect("unit")) * &quarter;
        rhs = rhs.iter().zip(&es[k as usize]).map(|(a, b)| a.clone() + coef.clone() * b).collect();
    }
    out.push(Check::new("C = EF + (1/4i) sum (u^k - u^-k) e_k", claim).compare(
        format_element(&lab, &casimir(h)),
        format_element(&lab, &rhs),
    ));
    out
}

/// Structure constants in the named basis.
pub fn named_algebra(h: &Hni) -> Result<(BasisChange, StructureConstants<Cyclotomic>), QuotientError> {
    let b = named_basis(h)?;
    let a = b.transport(h.algebra())?;
    Ok((b, a))
}

/// Whether a vector is a left eigenvector of x ↦ c·x with eigenvalue λ.
pub fn is_eigen(a: &StructureConstants<Cyclotomic>, c: &[Cyclotomic], v: &[Cyclotomic], lambda: &Cyclotomic) -> bool {
    let cv = a.mul(c, v).expect("dims");
    cv.iter().zip(v).all(|(x, y)| *x == y.clone() * lambda)
}
