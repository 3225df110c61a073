use std::sync::Arc;

use num_traits::{One, Zero};

use super::rewrite::{normal_form, Combination, Letter, System, Word};
use super::QuotientError;
use crate::algebra::StructureConstants;
use crate::scalars::{field_order, Cyclotomic};

/// PBW triple (p, n, q) for F^p K^n E^q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwIndex {
    pub p: usize,
    pub n: usize,
    pub q: usize,
}

/// H_N^i in the PBW basis, enumerated by (p, n, q) lexicographically.
#[derive(Clone, Debug)]
pub struct Hni {
    n: usize,
    order: u32,
    algebra: Arc<StructureConstants<Cyclotomic>>,
}

pub fn pbw_label(ix: PbwIndex) -> String {
    let mut s = String::new();
    if ix.p == 1 {
        s.push('F');
    }
    match ix.n {
        0 => {}
        1 => s.push('K'),
        k => s.push_str(&format!("K^{k}")),
    }
    if ix.q == 1 {
        s.push('E');
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

impl Hni {
    /// Structure constants from normal forms of all products of PBW words.
    pub fn build(n: usize) -> Result<Self, QuotientError> {
        if n == 0 {
            return Err(QuotientError::InvalidN(n));
        }
        let order = field_order(n);
        let dim = 8 * n;
        let words: Vec<Word> = (0..dim).map(|i| pbw_word(n, i)).collect();
        let labels: Vec<String> = (0..dim).map(|i| pbw_label(index_to_pbw(n, i))).collect();
        let mut products = Vec::with_capacity(dim * dim);
        for a in &words {
            for b in &words {
                let mut w = a.clone();
                w.extend_from_slice(b);
                let nf = normal_form(&Combination::word(w, Cyclotomic::one()), System::Quotient(n));
                products.push(coords_of_normal(n, order, &nf)?);
            }
        }
        let mut unit = vec![at_order(&Cyclotomic::zero(), order); dim];
        unit[0] = at_order(&Cyclotomic::one(), order);
        let algebra = StructureConstants::new(labels, products, unit)?;
        Ok(Hni { n, order, algebra: Arc::new(algebra) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        8 * self.n
    }

    pub fn algebra(&self) -> &StructureConstants<Cyclotomic> {
        &self.algebra
    }

    pub fn scalar(&self, x: &Cyclotomic) -> Cyclotomic {
        at_order(x, self.order)
    }

    /// u = e^{2πi/2N}.
    pub fn u(&self) -> Cyclotomic {
        Cyclotomic::root(self.order, (self.order as usize / (2 * self.n)) as i64).expect("valid order")
    }

    pub fn zero_vec(&self) -> Vec<Cyclotomic> {
        vec![self.scalar(&Cyclotomic::zero()); self.dim()]
    }

    pub fn index(&self, ix: PbwIndex) -> usize {
        pbw_to_index(self.n, ix)
    }

    pub fn pbw(&self, i: usize) -> PbwIndex {
        index_to_pbw(self.n, i)
    }

    /// Coordinates of an arbitrary generator word.
    pub fn element(&self, c: &Combination) -> Vec<Cyclotomic> {
        let nf = normal_form(c, System::Quotient(self.n));
        coords_of_normal(self.n, self.order, &nf).expect("normal form lies in PBW span")
    }

    pub fn word(&self, letters: &[Letter]) -> Vec<Cyclotomic> {
        self.element(&Combination::word(letters.to_vec(), Cyclotomic::one()))
    }

    pub fn one(&self) -> Vec<Cyclotomic> {
        self.word(&[])
    }

    pub fn k(&self) -> Vec<Cyclotomic> {
        self.word(&[Letter::K])
    }

    pub fn kinv(&self) -> Vec<Cyclotomic> {
        self.word(&[Letter::Kinv])
    }

    pub fn e(&self) -> Vec<Cyclotomic> {
        self.word(&[Letter::E])
    }

    pub fn f(&self) -> Vec<Cyclotomic> {
        self.word(&[Letter::F])
    }

    pub fn k_pow(&self, j: i64) -> Vec<Cyclotomic> {
        let m = (2 * self.n) as i64;
        let e = j.rem_euclid(m) as usize;
        self.word(&vec![Letter::K; e])
    }

    pub fn mul(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.algebra.mul(a, b).expect("same algebra")
    }

    pub fn mul3(&self, a: &[Cyclotomic], b: &[Cyclotomic], c: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.mul(&self.mul(a, b), c)
    }
}

pub fn at_order(x: &Cyclotomic, order: u32) -> Cyclotomic {
    if x.order() == order {
        x.clone()
    } else if order % x.order() == 0 {
        x.promote(order).expect("divisible order")
    } else {
        x.demote(order)
            .ok()
            .flatten()
            .unwrap_or_else(|| panic!("{x} does not live in order {order}"))
    }
}

pub fn pbw_to_index(n: usize, ix: PbwIndex) -> usize {
    (ix.p * 2 * n + ix.n) * 2 + ix.q
}

pub fn index_to_pbw(n: usize, i: usize) -> PbwIndex {
    let q = i % 2;
    let rest = i / 2;
    PbwIndex { p: rest / (2 * n), n: rest % (2 * n), q }
}

pub fn pbw_word(n: usize, i: usize) -> Word {
    let ix = index_to_pbw(n, i);
    let mut w = Vec::new();
    if ix.p == 1 {
        w.push(Letter::F);
    }
    w.extend(std::iter::repeat(Letter::K).take(ix.n));
    if ix.q == 1 {
        w.push(Letter::E);
    }
    w
}

fn word_to_pbw(n: usize, w: &[Letter]) -> Option<PbwIndex> {
    let mut i = 0;
    let mut p = 0;
    if w.first() == Some(&Letter::F) {
        p = 1;
        i = 1;
    }
    let mut k = 0;
    while i < w.len() && w[i] == Letter::K {
        k += 1;
        i += 1;
    }
    let mut q = 0;
    if i < w.len() && w[i] == Letter::E {
        q = 1;
        i += 1;
    }
    if i != w.len() || k >= 2 * n {
        return None;
    }
    Some(PbwIndex { p, n: k, q })
}

fn coords_of_normal(n: usize, order: u32, nf: &Combination) -> Result<Vec<Cyclotomic>, QuotientError> {
    let mut v = vec![at_order(&Cyclotomic::zero(), order); 8 * n];
    for (w, c) in nf.terms() {
        let ix = word_to_pbw(n, w).ok_or_else(|| QuotientError::NotNormal(super::rewrite::word_string(w)))?;
        let i = pbw_to_index(n, ix);
        v[i] = at_order(&(v[i].clone() + c), order);
    }
    Ok(v)
}
