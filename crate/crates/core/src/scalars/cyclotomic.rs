use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::field::{Field, Sign};
use super::interval;
use super::ScalarError;

/// Per-order data: ζ^k reduced modulo Φ_M for k in 0..M.
struct FieldData {
    degree: usize,
    powers: Vec<Vec<BigRational>>,
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact quotient of monic integer polynomials (coefficients low to high).
fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// The M-th cyclotomic polynomial, low-to-high integer coefficients.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<BigInt>> {
    if let Some(p) = poly_cache().lock().expect("poly cache").get(&m) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            p = div_monic(&p, &phi_d);
        }
    }
    let p = Arc::new(p);
    poly_cache().lock().expect("poly cache").insert(m, p.clone());
    p
}

fn field_data(order: u32) -> Arc<FieldData> {
    if let Some(f) = field_cache().lock().expect("field cache").get(&order) {
        return f.clone();
    }
    let phi = cyclotomic_polynomial(order);
    let d = phi.len() - 1;
    let mut powers: Vec<Vec<BigRational>> = Vec::with_capacity(order as usize);
    let mut cur = vec![BigRational::zero(); d];
    cur[0] = BigRational::one();
    for _ in 0..order {
        powers.push(cur.clone());
        let top = cur[d - 1].clone();
        let mut next = vec![BigRational::zero(); d];
        next[1..d].clone_from_slice(&cur[..(d - 1)]);
        if !top.is_zero() {
            for (j, pj) in phi.iter().take(d).enumerate() {
                next[j] -= &top * BigRational::from_integer(pj.clone());
            }
        }
        cur = next;
    }
    let data = Arc::new(FieldData { degree: d, powers });
    field_cache().lock().expect("field cache").insert(order, data.clone());
    data
}

fn check_order(order: u32) -> Result<(), ScalarError> {
    if order == 0 || order % 4 != 0 {
        Err(ScalarError::InvalidOrder(order))
    } else {
        Ok(())
    }
}

/// Element of ℚ(ζ_M), stored as the canonical remainder modulo Φ_M in powers of ζ_M.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn rational(r: BigRational, order: u32) -> Result<Self, ScalarError> {
        check_order(order)?;
        let d = field_data(order).degree;
        let mut coeffs = vec![BigRational::zero(); d];
        coeffs[0] = r;
        Ok(Cyclotomic { order, coeffs })
    }

    pub fn from_int(n: i64) -> Self {
        <Self as Field>::from_int(n)
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::from_rational_default(BigRational::new(num.into(), den.into()))
    }

    fn from_rational_default(r: BigRational) -> Self {
        Self::rational(r, 4).expect("order 4 is valid")
    }

    /// ζ_M^k, with k reduced mod M.
    pub fn root(order: u32, k: i64) -> Result<Self, ScalarError> {
        check_order(order)?;
        let f = field_data(order);
        let idx = k.rem_euclid(order as i64) as usize;
        Ok(Cyclotomic { order, coeffs: f.powers[idx].clone() })
    }

    pub fn i() -> Self {
        Self::root(4, 1).expect("order 4 is valid")
    }

    /// Builds from a coefficient vector in powers of ζ_M of any length.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Result<Self, ScalarError> {
        check_order(order)?;
        let f = field_data(order);
        let mut out = vec![BigRational::zero(); f.degree];
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &f.powers[k % order as usize];
            for (o, pk) in out.iter_mut().zip(p) {
                if !pk.is_zero() {
                    *o += &c * pk;
                }
            }
        }
        Ok(Cyclotomic { order, coeffs: out })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Rational value if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in ℚ(ζ_target); `order` must divide `target`.
    pub fn promote(&self, target: u32) -> Result<Self, ScalarError> {
        check_order(target)?;
        if target == self.order {
            return Ok(self.clone());
        }
        if target % self.order != 0 {
            return Err(ScalarError::IncompatibleOrders(self.order, target));
        }
        Ok(self.substitute(target, (target / self.order) as usize))
    }

    /// Σ c_j ζ_target^{s·j}.
    fn substitute(&self, target: u32, s: usize) -> Self {
        let f = field_data(target);
        let mut out = vec![BigRational::zero(); f.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &f.powers[(s * j) % target as usize];
            for (o, pk) in out.iter_mut().zip(p) {
                if !pk.is_zero() {
                    *o += c * pk;
                }
            }
        }
        Cyclotomic { order: target, coeffs: out }
    }

    /// Inverse of `promote`: succeeds iff the element lies in ℚ(ζ_target).
    pub fn demote(&self, target: u32) -> Result<Option<Self>, ScalarError> {
        check_order(target)?;
        if self.order % target != 0 {
            return Err(ScalarError::IncompatibleOrders(self.order, target));
        }
        let s = (self.order / target) as usize;
        let big = field_data(self.order);
        let small_deg = field_data(target).degree;
        let cols: Vec<&Vec<BigRational>> =
            (0..small_deg).map(|j| &big.powers[(s * j) % self.order as usize]).collect();
        match solve_columns(&cols, &self.coeffs) {
            Some(x) => Ok(Some(Cyclotomic { order: target, coeffs: x })),
            None => Ok(None),
        }
    }

    /// Same value in the smallest admissible order.
    pub fn minimal_order(&self) -> Self {
        let mut divisors: Vec<u32> =
            (1..=self.order).filter(|m| m % 4 == 0 && self.order % m == 0).collect();
        divisors.sort_unstable();
        for m in divisors {
            if let Ok(Some(v)) = self.demote(m) {
                return v;
            }
        }
        self.clone()
    }

    /// Field automorphism ζ ↦ ζ^a (a coprime to the order).
    pub fn galois(&self, a: i64) -> Self {
        let m = self.order as i64;
        let a = a.rem_euclid(m) as usize;
        self.substitute(self.order, a)
    }

    /// Norm from ℚ(ζ_order) down to ℚ, taken in the field the value is currently stored in.
    pub fn norm(&self) -> BigRational {
        let mut acc = self.clone();
        for a in 2..self.order as i64 {
            if a.gcd(&(self.order as i64)) == 1 {
                acc = acc * self.galois(a);
            }
        }
        acc.coeffs[0].clone()
    }

    pub fn is_zero_value(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self;
        }
        acc
    }


    fn combine<F>(a: &Self, b: &Self, f: F) -> Self
    where
        F: Fn(u32, &[BigRational], &[BigRational]) -> Vec<BigRational>,
    {
        if a.order == b.order {
            Cyclotomic { order: a.order, coeffs: f(a.order, &a.coeffs, &b.coeffs) }
        } else {
            let m = a.order.lcm(&b.order);
            let ac = a.promote(m).expect("lcm order").coeffs;
            let bc = b.promote(m).expect("lcm order").coeffs;
            Cyclotomic { order: m, coeffs: f(m, &ac, &bc) }
        }
    }

    fn mul_coeffs(order: u32, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let f = field_data(order);
        let d = f.degree;
        let mut conv = vec![BigRational::zero(); 2 * d - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    conv[i + j] += ai * bj;
                }
            }
        }
        let mut out: Vec<BigRational> = conv[..d].to_vec();
        for (k, c) in conv.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (o, pk) in out.iter_mut().zip(&f.powers[k]) {
                if !pk.is_zero() {
                    *o += c * pk;
                }
            }
        }
        out
    }

    fn fmt_rational(r: &BigRational) -> String {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }
}

/// Solves Σ x_j cols[j] = rhs over ℚ; None if inconsistent.
fn solve_columns(cols: &[&Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = rhs.len();
    let n = cols.len();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=n {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    Some(x)
}

impl Field for Cyclotomic {
    fn conj(&self) -> Self {
        self.galois(-1)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero_value() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Cyclotomic::rational(r.recip(), self.order).expect("valid order"));
        }
        let mut others = Cyclotomic::rational(BigRational::one(), self.order).expect("valid order");
        for a in 2..self.order as i64 {
            if a.gcd(&(self.order as i64)) == 1 {
                others = others * self.galois(a);
            }
        }
        let n = (others.clone() * self).coeffs[0].clone();
        let scale = n.recip();
        Some(Cyclotomic { order: self.order, coeffs: others.coeffs.iter().map(|c| c * &scale).collect() })
    }

    fn real_sign(&self) -> Result<Sign, ScalarError> {
        if self.is_zero_value() {
            return Ok(Sign::Zero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(if r.is_positive() { Sign::Positive } else { Sign::Negative });
        }
        if !self.is_real() {
            return Err(ScalarError::NotReal(self.to_string()));
        }
        Ok(interval::sign_of_real(self.order, &self.coeffs))
    }

    fn from_rational(r: BigRational) -> Self {
        Self::from_rational_default(r)
    }

    fn re_im(&self) -> (Self, Self) {
        let c = self.conj();
        let half = Cyclotomic::frac(1, 2);
        let re = (self.clone() + &c) * &half;
        // (x - conj x) / (2i) = -(i/2)(x - conj x)
        let im = (self.clone() - &c) * (Cyclotomic::i() * Cyclotomic::frac(-1, 2));
        (re, im)
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::from_rational_default(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.is_zero_value()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::from_rational_default(BigRational::one())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let zs = self.is_zero_value();
        let zo = other.is_zero_value();
        if zs || zo {
            return zs && zo;
        }
        let m = self.order.lcm(&other.order);
        self.promote(m).expect("lcm").coeffs == other.promote(m).expect("lcm").coeffs
    }
}

impl Eq for Cyclotomic {}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

fn add_coeffs(_: u32, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_coeffs(_: u32, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_ref(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    if b.is_zero_value() {
        return a.clone();
    }
    if a.is_zero_value() {
        return b.clone();
    }
    Cyclotomic::combine(a, b, add_coeffs)
}

fn sub_ref(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    if b.is_zero_value() {
        return a.clone();
    }
    if a.is_zero_value() {
        return -b;
    }
    Cyclotomic::combine(a, b, sub_coeffs)
}

fn mul_ref(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    if a.is_zero_value() || b.is_zero_value() {
        let m = a.order.lcm(&b.order);
        return Cyclotomic::rational(BigRational::zero(), m).expect("valid order");
    }
    if let Some(r) = a.as_rational() {
        return Cyclotomic { order: b.order, coeffs: b.coeffs.iter().map(|c| c * &r).collect() }
            .lift_to(a.order);
    }
    if let Some(r) = b.as_rational() {
        return Cyclotomic { order: a.order, coeffs: a.coeffs.iter().map(|c| c * &r).collect() }
            .lift_to(b.order);
    }
    Cyclotomic::combine(a, b, Cyclotomic::mul_coeffs)
}

fn div_ref(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    let inv = b.inverse().expect("division by zero in cyclotomic field");
    mul_ref(a, &inv)
}

impl Cyclotomic {
    /// Promotes to lcm(self.order, other) so results of mixed operations land in a common field.
    fn lift_to(self, other: u32) -> Self {
        if other == self.order || self.order % other == 0 {
            self
        } else {
            let m = self.order.lcm(&other);
            self.promote(m).expect("lcm order")
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:ident) => {
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $f(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                $f(&self, rhs)
            }
        }
        impl<'a> $trait<Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $f(self, &rhs)
            }
        }
        impl<'a, 'b> $trait<&'b Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'b Cyclotomic) -> Cyclotomic {
                $f(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.minimal_order();
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (k, c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match (v.order, k) {
                (_, 0) => String::new(),
                (4, 1) => "i".to_string(),
                (m, 1) => format!("z{m}"),
                (m, k) => format!("z{m}^{k}"),
            };
            let neg = c.is_negative();
            let a = c.abs();
            let body = if mono.is_empty() {
                Cyclotomic::fmt_rational(&a)
            } else if a.is_one() {
                mono
            } else {
                format!("{}*{}", Cyclotomic::fmt_rational(&a), mono)
            };
            terms.push((neg, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (neg, body)) in terms.iter().enumerate() {
            match (idx, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({}; order {})", self, self.order)
    }
}

fn int_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

fn json_to_int(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<[serde_json::Value; 2]> =
            self.coeffs.iter().map(|c| [int_to_json(c.numer()), int_to_json(c.denom())]).collect();
        let mut st = s.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: u32,
            coeffs: Vec<[serde_json::Value; 2]>,
        }
        let raw = Raw::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(raw.coeffs.len());
        for [n, dn] in &raw.coeffs {
            let n = json_to_int(n).ok_or_else(|| de::Error::custom("bad numerator"))?;
            let dn = json_to_int(dn).ok_or_else(|| de::Error::custom("bad denominator"))?;
            if dn.is_zero() {
                return Err(de::Error::custom("zero denominator"));
            }
            coeffs.push(BigRational::new(n, dn));
        }
        Cyclotomic::from_coeffs(raw.order, coeffs).map_err(de::Error::custom)
    }
}
