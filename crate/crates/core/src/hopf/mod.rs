//! Coproduct, counit and antipode of H_N^i, assembled from their values on K, E, F.

mod formulas;
mod ideal;
mod spectrum;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

pub use formulas::{hopf_in_basis, transported, TransportedHopf};
pub use ideal::verify_hopf_ideal;
pub use spectrum::{antipode_spectrum, spectrum_checks, Eigenspace, SpectrumReport};

use crate::algebra::format_element;
use crate::linalg::Matrix;
use crate::quotient::Hni;
use crate::report::{Check, VerificationReport};
use crate::scalars::Cyclotomic;

/// Element of A⊗A: index i·dim + j ↦ coefficient of b_i⊗b_j.
pub type Tensor = BTreeMap<usize, Cyclotomic>;

fn add_into(t: &mut Tensor, idx: usize, c: Cyclotomic) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&idx) {
        Some(v) => {
            *v = v.clone() + c;
            if v.is_zero() {
                t.remove(&idx);
            }
        }
        None => {
            t.insert(idx, c);
        }
    }
}

/// Values of Δ, ε, S on the generators K, E, F (in that order), in PBW coordinates.
#[derive(Clone, Debug)]
pub struct GeneratorImages {
    pub coproduct: [Tensor; 3],
    pub counit: [Cyclotomic; 3],
    pub antipode: [Vec<Cyclotomic>; 3],
}

impl GeneratorImages {
    /// Δ(K) = K⊗K, Δ(E) = E⊗1 + K⊗E, Δ(F) = F⊗K⁻¹ + 1⊗F; ε(K) = 1; S(K) = K⁻¹, S(E) = -K⁻¹E, S(F) = -FK.
    pub fn standard(h: &Hni) -> Self {
        let (one, k, kinv, e, f) = (h.one(), h.k(), h.kinv(), h.e(), h.f());
        let dk = tensor_of(h, &[(&k, &k)]);
        let de = tensor_of(h, &[(&e, &one), (&k, &e)]);
        let df = tensor_of(h, &[(&f, &kinv), (&one, &f)]);
        let neg = |v: Vec<Cyclotomic>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
        GeneratorImages {
            coproduct: [dk, de, df],
            counit: [h.scalar(&Cyclotomic::one()), h.scalar(&Cyclotomic::zero()), h.scalar(&Cyclotomic::zero())],
            antipode: [kinv.clone(), neg(h.mul(&kinv, &e)), neg(h.mul(&f, &k))],
        }
    }
}

/// Σ a⊗b over the given pairs of vectors.
pub fn tensor_of(h: &Hni, pairs: &[(&Vec<Cyclotomic>, &Vec<Cyclotomic>)]) -> Tensor {
    let d = h.dim();
    let mut t = Tensor::new();
    for (a, b) in pairs {
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                add_into(&mut t, i * d + j, x.clone() * y);
            }
        }
    }
    t
}

/// Componentwise product (a⊗b)(c⊗d) = ac⊗bd.
pub fn tensor_mul(h: &Hni, x: &Tensor, y: &Tensor) -> Tensor {
    let d = h.dim();
    let alg = h.algebra();
    let mut out = Tensor::new();
    for (&p, cp) in x {
        let (i1, j1) = (p / d, p % d);
        for (&q, cq) in y {
            let (i2, j2) = (q / d, q % d);
            let left = alg.product_sparse(i1, i2);
            if left.is_empty() {
                continue;
            }
            let right = alg.product_sparse(j1, j2);
            if right.is_empty() {
                continue;
            }
            let c = cp.clone() * cq;
            for (a, ca) in left {
                for (b, cb) in right {
                    add_into(&mut out, a * d + b, c.clone() * ca * cb);
                }
            }
        }
    }
    out
}

/// "a⊗b" rendering with the given labels.
pub fn format_tensor(labels: &[String], t: &Tensor) -> String {
    let d = labels.len();
    let pair_labels: Vec<String> = (0..d * d).map(|x| format!("{}⊗{}", labels[x / d], labels[x % d])).collect();
    let mut v = vec![Cyclotomic::zero(); d * d];
    for (&i, c) in t {
        v[i] = c.clone();
    }
    format_element(&pair_labels, &v)
}

/// Δ, ε, S of H_N^i in PBW coordinates.
#[derive(Clone, Debug)]
pub struct HopfStructure {
    pub h: Hni,
    /// Column j: Δ(b_j) in tensor-square coordinates.
    pub coproduct: Vec<Tensor>,
    pub counit: Vec<Cyclotomic>,
    /// Column j: S(b_j).
    pub antipode: Matrix<Cyclotomic>,
}

pub fn build_hopf(h: &Hni) -> HopfStructure {
    build_hopf_with(h, &GeneratorImages::standard(h))
}

/// Extends generator images along PBW words F^p K^n E^q: Δ, ε multiplicatively, S anti-multiplicatively.
pub fn build_hopf_with(h: &Hni, g: &GeneratorImages) -> HopfStructure {
    let d = h.dim();
    let one = h.one();
    let unit_tensor = tensor_of(h, &[(&one, &one)]);
    let mut coproduct = Vec::with_capacity(d);
    let mut counit = Vec::with_capacity(d);
    let mut cols = Vec::with_capacity(d);
    let [dk, de, df] = &g.coproduct;
    let [ek, ee, ef] = &g.counit;
    let [sk, se, sf] = &g.antipode;
    for i in 0..d {
        let ix = h.pbw(i);
        let mut delta = unit_tensor.clone();
        let mut eps = h.scalar(&Cyclotomic::one());
        let mut s = one.clone();
        if ix.p == 1 {
            delta = tensor_mul(h, &delta, df);
            eps = eps * ef;
        }
        for _ in 0..ix.n {
            delta = tensor_mul(h, &delta, dk);
            eps = eps * ek;
            s = h.mul(sk, &s);
        }
        if ix.q == 1 {
            delta = tensor_mul(h, &delta, de);
            eps = eps * ee;
            s = h.mul(se, &s);
        }
        if ix.p == 1 {
            s = h.mul(&s, sf);
        }
        coproduct.push(delta);
        counit.push(eps);
        cols.push(s);
    }
    let antipode = Matrix::from_columns(&cols).expect("square");
    HopfStructure { h: h.clone(), coproduct, counit, antipode }
}

impl HopfStructure {
    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.h.algebra().labels()
    }

    pub fn delta(&self, v: &[Cyclotomic]) -> Tensor {
        let mut out = Tensor::new();
        for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (&idx, x) in &self.coproduct[j] {
                add_into(&mut out, idx, c.clone() * x);
            }
        }
        out
    }

    pub fn epsilon(&self, v: &[Cyclotomic]) -> Cyclotomic {
        v.iter().zip(&self.counit).fold(self.h.scalar(&Cyclotomic::zero()), |acc, (a, b)| acc + a.clone() * b)
    }

    pub fn s(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.antipode.apply(v).expect("dimension")
    }

    /// Σ f(a₁)·g(a₂) for the multiplication of the algebra.
    fn contract(&self, t: &Tensor, left_s: bool, right_s: bool) -> Vec<Cyclotomic> {
        let d = self.dim();
        let mut out = self.h.zero_vec();
        for (&idx, c) in t {
            let (i, j) = (idx / d, idx % d);
            let a = if left_s { self.antipode.column(i) } else { self.h.algebra().basis_vector(i) };
            let b = if right_s { self.antipode.column(j) } else { self.h.algebra().basis_vector(j) };
            let p = self.h.mul(&a, &b);
            for (o, x) in out.iter_mut().zip(p) {
                if !x.is_zero() {
                    *o = o.clone() + c.clone() * x;
                }
            }
        }
        out
    }

    /// (Δ⊗id)Δ(b_j) and (id⊗Δ)Δ(b_j) in A⊗A⊗A coordinates (i·d² + j·d + k).
    pub fn coassociativity_sides(&self, j: usize) -> (Tensor, Tensor) {
        let d = self.dim();
        let mut left = Tensor::new();
        let mut right = Tensor::new();
        for (&idx, c) in &self.coproduct[j] {
            let (a, b) = (idx / d, idx % d);
            for (&y, c2) in &self.coproduct[a] {
                add_into(&mut left, y * d + b, c.clone() * c2);
            }
            for (&y, c2) in &self.coproduct[b] {
                add_into(&mut right, a * d * d + y, c.clone() * c2);
            }
        }
        (left, right)
    }

    /// The five axiom identities, each with the first failing basis element.
    pub fn verify_axioms(&self) -> VerificationReport {
        let claim = "H_N^i is a Hopf algebra with the generator-level coproduct, counit and antipode";
        let d = self.dim();
        let labels = self.labels().to_vec();
        let mut rep = VerificationReport::new("hopf-check", self.h.n());
        let mut first: [Option<(usize, String, String)>; 5] = Default::default();
        for j in 0..d {
            let b = self.h.algebra().basis_vector(j);
            if first[0].is_none() {
                let (l, r) = self.coassociativity_sides(j);
                if l != r {
                    first[0] = Some((j, format!("{} terms", r.len()), format!("{} terms", l.len())));
                }
            }
            let mut eps_left = self.h.zero_vec();
            let mut eps_right = self.h.zero_vec();
            for (&idx, c) in &self.coproduct[j] {
                let (a, bb) = (idx / d, idx % d);
                eps_left[bb] = eps_left[bb].clone() + c.clone() * &self.counit[a];
                eps_right[a] = eps_right[a].clone() + c.clone() * &self.counit[bb];
            }
            if first[1].is_none() && eps_left != b {
                first[1] = Some((j, format_element(&labels, &b), format_element(&labels, &eps_left)));
            }
            if first[2].is_none() && eps_right != b {
                first[2] = Some((j, format_element(&labels, &b), format_element(&labels, &eps_right)));
            }
            let target: Vec<Cyclotomic> = self.h.one().iter().map(|x| x.clone() * &self.counit[j]).collect();
            let sl = self.contract(&self.coproduct[j], true, false);
            if first[3].is_none() && sl != target {
                first[3] = Some((j, format_element(&labels, &target), format_element(&labels, &sl)));
            }
            let sr = self.contract(&self.coproduct[j], false, true);
            if first[4].is_none() && sr != target {
                first[4] = Some((j, format_element(&labels, &target), format_element(&labels, &sr)));
            }
        }
        let names = [
            "coassociativity (Δ⊗id)Δ = (id⊗Δ)Δ",
            "counit (ε⊗id)Δ = id",
            "counit (id⊗ε)Δ = id",
            "antipode m(S⊗id)Δ = ηε",
            "antipode m(id⊗S)Δ = ηε",
        ];
        for (name, f) in names.iter().zip(first) {
            let c = match f {
                None => Check::new(*name, claim).holds(true, "identity on every basis element", "identity on every basis element"),
                Some((j, exp, got)) => Check::new(*name, claim).holds(false, format!("at {}: {exp}", labels[j]), format!("at {}: {got}", labels[j])),
            };
            rep.push(c);
        }
        rep.extend(self.morphism_checks());
        rep
    }

    /// Δ and ε multiplicative, S anti-multiplicative, on all basis pairs.
    pub fn morphism_checks(&self) -> Vec<Check> {
        let claim = "Δ, ε are algebra maps and S is an anti-algebra map";
        let d = self.dim();
        let labels = self.labels();
        let alg = self.h.algebra();
        let mut bad: [Option<(usize, usize)>; 3] = [None, None, None];
        for i in 0..d {
            for j in 0..d {
                let p = alg.product(i, j);
                if bad[0].is_none() && self.delta(&p) != tensor_mul(&self.h, &self.coproduct[i], &self.coproduct[j]) {
                    bad[0] = Some((i, j));
                }
                if bad[1].is_none() && self.epsilon(&p) != self.counit[i].clone() * &self.counit[j] {
                    bad[1] = Some((i, j));
                }
                if bad[2].is_none() && self.s(&p) != self.h.mul(&self.antipode.column(j), &self.antipode.column(i)) {
                    bad[2] = Some((i, j));
                }
            }
        }
        ["Δ(xy) = Δ(x)Δ(y)", "ε(xy) = ε(x)ε(y)", "S(xy) = S(y)S(x)"]
            .iter()
            .zip(bad)
            .map(|(name, b)| match b {
                None => Check::new(*name, claim).holds(true, "all basis pairs", "all basis pairs"),
                Some((i, j)) => Check::new(*name, claim).holds(false, "all basis pairs", format!("fails at ({}, {})", labels[i], labels[j])),
            })
            .collect()
    }
}

pub fn verify_hopf_axioms(h: &HopfStructure) -> VerificationReport {
    h.verify_axioms()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn generator_values() {
        let h = Hni::build(1).unwrap();
        let hs = build_hopf(&h);
        let k = h.k();
        assert_eq!(hs.delta(&k), tensor_of(&h, &[(&k, &k)]));
        assert!(hs.epsilon(&h.e()).is_zero());
        assert!(hs.epsilon(&k).is_one());
        let fk: Vec<Cyclotomic> = h.mul(&h.f(), &k).into_iter().map(|x| -x).collect();
        assert_eq!(hs.s(&h.f()), fk);
    }

    #[test]
    fn axioms_hold_small() {
        for n in 1..=2 {
            let h = Hni::build(n).unwrap();
            let rep = build_hopf(&h).verify_axioms();
            assert!(!rep.has_failures(), "{}", rep.to_text());
        }
    }

    #[test]
    fn corrupted_antipode_fails_on_e() {
        let h = Hni::build(1).unwrap();
        let mut g = GeneratorImages::standard(&h);
        g.antipode[1] = h.mul(&h.kinv(), &h.e());
        let rep = build_hopf_with(&h, &g).verify_axioms();
        let c = rep.find("antipode m(S⊗id)Δ = ηε").unwrap();
        assert_eq!(c.status, Status::Fail);
        assert!(c.computed.starts_with("at E:"), "{}", c.computed);
    }
}
