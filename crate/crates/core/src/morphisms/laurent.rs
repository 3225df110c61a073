//! Multivariate Laurent polynomials over ℚ and a parser for the printed coefficient formulas.
//!
//! Formulas are written with `+ - * / ^ ( )`, integers and identifiers. Division is only
//! allowed by monomials, which is all the printed formulas need.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalars::Field;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("cannot parse {0:?}: {1}")]
    Syntax(String, String),
    #[error("division by {0}, which is not a monomial")]
    NotMonomial(String),
    #[error("{0} is not linear in the basis labels")]
    NotLinear(String),
    #[error("no value for {0}")]
    Unbound(String),
    #[error("{0} is not invertible at the given point")]
    Singular(String),
}

type Monomial = Vec<(String, i32)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent {
    terms: BTreeMap<Monomial, BigRational>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m: BTreeMap<String, i32> = a.iter().cloned().collect();
    for (v, e) in b {
        *m.entry(v.clone()).or_insert(0) += e;
    }
    m.into_iter().filter(|(_, e)| *e != 0).collect()
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn constant(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Vec::new(), q);
        }
        Laurent { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(name.to_string(), 1)], BigRational::one());
        Laurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v.clone())).collect()
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        let e = self.terms.entry(m).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// Inverse of a single term.
    pub fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        let inv: Monomial = m.iter().map(|(v, e)| (v.clone(), -e)).collect();
        let mut terms = BTreeMap::new();
        terms.insert(inv, c.recip());
        Some(Laurent { terms })
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        Some((0..e.unsigned_abs()).fold(Laurent::one(), |acc, _| &acc * &base))
    }

    /// Replaces `var` by `value`; negative powers need `value` to be a monomial.
    pub fn subst(&self, var: &str, value: &Laurent) -> Option<Self> {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut factor = Laurent::one();
            for (v, e) in m {
                if v == var {
                    factor = value.pow(*e)?;
                } else {
                    rest.push((v.clone(), *e));
                }
            }
            let mut t = Laurent::zero();
            t.terms.insert(rest, c.clone());
            out = out + &t * &factor;
        }
        Some(out)
    }

    /// Terms containing var^exp, with that factor removed.
    pub fn coefficient(&self, var: &str, exp: i32) -> Laurent {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            let e = m.iter().find(|(v, _)| v == var).map_or(0, |(_, e)| *e);
            if e == exp {
                out.add_term(m.iter().filter(|(v, _)| v != var).cloned().collect(), c.clone());
            }
        }
        out
    }

    pub fn eval<F: Field>(&self, env: &dyn Fn(&str) -> Option<F>) -> Result<F, ExprError> {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_rational(c.clone());
            for (v, e) in m {
                let x = env(v).ok_or_else(|| ExprError::Unbound(v.clone()))?;
                let base = if *e < 0 { x.inverse().ok_or_else(|| ExprError::Singular(v.clone()))? } else { x };
                for _ in 0..e.unsigned_abs() {
                    t = t * &base;
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    pub fn eval_map<F: Field>(&self, env: &BTreeMap<String, F>) -> Result<F, ExprError> {
        self.eval(&|v: &str| env.get(v).cloned())
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !a.is_one() || m.is_empty() {
                factors.push(if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) });
            }
            for (v, e) in m {
                factors.push(if *e == 1 { v.clone() } else { format!("{v}^{e}") });
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add<&Laurent> for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add<Laurent> for Laurent {
    type Output = Laurent;
    fn add(self, o: Laurent) -> Laurent {
        &self + &o
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl Sub<&Laurent> for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        self + &(-o)
    }
}

impl Sub<Laurent> for Laurent {
    type Output = Laurent;
    fn sub(self, o: Laurent) -> Laurent {
        &self - &o
    }
}

impl Mul<&Laurent> for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Mul<Laurent> for Laurent {
    type Output = Laurent;
    fn mul(self, o: Laurent) -> Laurent {
        &self * &o
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ExprError> {
    let err = |m: &str| ExprError::Syntax(s.to_string(), m.to_string());
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let j = (i..cs.len()).find(|&k| !cs[k].is_ascii_digit()).unwrap_or(cs.len());
            let digits: String = cs[i..j].iter().collect();
            out.push(Tok::Num(digits.parse().map_err(|_| err("bad integer"))?));
            i = j;
        } else if c.is_ascii_alphabetic() {
            let j = (i..cs.len()).find(|&k| !cs[k].is_ascii_alphanumeric()).unwrap_or(cs.len());
            out.push(Tok::Ident(cs[i..j].iter().collect()));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(err(&format!("unexpected {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
    macros: &'a BTreeMap<String, Laurent>,
}

impl Parser<'_> {
    fn err(&self, m: &str) -> ExprError {
        ExprError::Syntax(self.src.to_string(), m.to_string())
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Laurent, ExprError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Laurent, ExprError> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let t = self.unary()?;
            acc = if c == '*' {
                acc * t
            } else {
                let inv = t.inverse().ok_or_else(|| ExprError::NotMonomial(t.to_string()))?;
                acc * inv
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Laurent, ExprError> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let neg = self.peek_op() == Some('-');
            if neg {
                self.pos += 1;
            }
            let Some(Tok::Num(n)) = self.toks.get(self.pos).cloned() else { return Err(self.err("exponent")) };
            self.pos += 1;
            let e: i32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
            let e = if neg { -e } else { e };
            return base.pow(e).ok_or_else(|| ExprError::NotMonomial(base.to_string()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Laurent, ExprError> {
        let tok = self.toks.get(self.pos).cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Laurent::constant(BigRational::from_integer(n))),
            Tok::Ident(v) => Ok(self.macros.get(&v).cloned().unwrap_or_else(|| Laurent::var(&v))),
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err("missing )"));
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Op(c) => Err(self.err(&format!("unexpected {c:?}"))),
        }
    }
}

/// Parses a formula; identifiers named in `macros` are replaced by their value.
pub fn parse_with(s: &str, macros: &BTreeMap<String, Laurent>) -> Result<Laurent, ExprError> {
    let mut p = Parser { src: s, toks: tokenize(s)?, pos: 0, macros };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

pub fn parse(s: &str) -> Result<Laurent, ExprError> {
    parse_with(s, &BTreeMap::new())
}

/// Splits an expression linear in `labels` into one coefficient per label.
pub fn split_linear(p: &Laurent, labels: &[String]) -> Result<Vec<Laurent>, ExprError> {
    let mut out = vec![Laurent::zero(); labels.len()];
    for (m, c) in &p.terms {
        let hits: Vec<(usize, i32)> =
            m.iter().filter_map(|(v, e)| labels.iter().position(|l| l == v).map(|k| (k, *e))).collect();
        let [(k, 1)] = hits[..] else { return Err(ExprError::NotLinear(p.to_string())) };
        let rest: Monomial = m.iter().filter(|(v, _)| *v != labels[k]).cloned().collect();
        out[k].add_term(rest, c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_parsing() {
        let p = parse("(a + b)^2 - a^2 - 2*a*b").unwrap();
        assert_eq!(p, parse("b^2").unwrap());
        let q = parse("x/y * y").unwrap();
        assert_eq!(q, Laurent::var("x"));
        assert!(matches!(parse("1/(a+b)"), Err(ExprError::NotMonomial(_))));
        assert_eq!(parse("-1/2*a^-1").unwrap().to_string(), "-1/2*a^-1");
    }

    #[test]
    fn linear_split_and_macros() {
        let mut m = BTreeMap::new();
        m.insert("P".to_string(), parse("x*y").unwrap());
        let e = parse_with("u + P*(V - U)", &m).unwrap();
        let labels: Vec<String> = ["u", "U", "V"].iter().map(|s| s.to_string()).collect();
        let c = split_linear(&e, &labels).unwrap();
        assert_eq!(c[0], Laurent::one());
        assert_eq!(c[1], parse("-x*y").unwrap());
        assert!(split_linear(&parse("u*U").unwrap(), &labels).is_err());
    }

    #[test]
    fn evaluation_and_substitution() {
        let p = parse("a/b + 3").unwrap();
        let env: BTreeMap<String, BigRational> =
            [("a".to_string(), BigRational::from_integer(2.into())), ("b".to_string(), BigRational::from_integer(4.into()))].into();
        assert_eq!(p.eval_map(&env).unwrap(), BigRational::new(7.into(), 2.into()));
        assert_eq!(p.subst("b", &parse("2*a").unwrap()).unwrap(), parse("7/2").unwrap());
        assert_eq!(p.coefficient("b", -1), parse("a").unwrap());
    }
}
