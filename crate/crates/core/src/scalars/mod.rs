//! Exact scalars: cyclotomic fields ℚ(ζ_M) with conjugation and certified signs.

mod cyclotomic;
mod field;
mod interval;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use field::{Field, Sign};

use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("order {0} is not a positive multiple of 4")]
    InvalidOrder(u32),
    #[error("order {0} does not embed in order {1}")]
    IncompatibleOrders(u32, u32),
    #[error("sign requested for a non-real value {0}")]
    NotReal(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// Field order used for H_N^i: lcm(4, 2N).
pub fn field_order(n: usize) -> u32 {
    num_integer::lcm(4, 2 * n as u32)
}

/// Rational r embedded in ℚ(ζ_M).
pub fn cyc_embed_rational(r: BigRational, order: u32) -> Result<Cyclotomic, ScalarError> {
    Cyclotomic::rational(r, order)
}

/// ζ_M^k.
pub fn cyc_root(order: u32, k: i64) -> Result<Cyclotomic, ScalarError> {
    Cyclotomic::root(order, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyc_arith(a: &Cyclotomic, b: &Cyclotomic, op: ArithOp) -> Result<Cyclotomic, ScalarError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            let inv = b.inverse().ok_or(ScalarError::DivisionByZero)?;
            a * &inv
        }
    })
}

pub fn cyc_sign(x: &Cyclotomic) -> Result<Sign, ScalarError> {
    x.real_sign()
}

/// Floating approximation (real part, imaginary part) for diagnostics.
pub fn approx_complex(x: &Cyclotomic) -> (f64, f64) {
    let (re, im) = x.re_im();
    (
        interval::approx_real(re.order(), re.coeffs()),
        interval::approx_real(im.order(), im.coeffs()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        let as_i64 = |m| cyclotomic_polynomial(m).iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn embed_and_promotion() {
        assert_eq!(cyc_embed_rational(q(1, 1), 4).unwrap(), Cyclotomic::one());
        assert!(cyc_embed_rational(q(0, 1), 8).unwrap().is_zero());
        let a = cyc_embed_rational(q(-1, 2), 4).unwrap();
        let b = cyc_embed_rational(q(-1, 2), 8).unwrap();
        assert_eq!(a, b);
        assert_eq!(cyc_embed_rational(q(1, 1), 6), Err(ScalarError::InvalidOrder(6)));
    }

    #[test]
    fn roots() {
        let i = cyc_root(4, 1).unwrap();
        assert_eq!(&i * &i, -Cyclotomic::one());
        assert_eq!(cyc_root(4, 2).unwrap(), -Cyclotomic::one());
        assert_eq!(cyc_root(8, 2).unwrap(), i);
        assert_eq!(cyc_root(8, 8).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn arithmetic_examples() {
        let i = Cyclotomic::i();
        assert_eq!(cyc_arith(&i, &i, ArithOp::Mul).unwrap(), -Cyclotomic::one());
        let two_i = &i * Cyclotomic::from_int(2);
        let r = cyc_arith(&Cyclotomic::one(), &two_i, ArithOp::Div).unwrap();
        assert_eq!(r, &i * Cyclotomic::frac(-1, 2));
        assert_eq!(cyc_arith(&i, &Cyclotomic::zero(), ArithOp::Div), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn signs() {
        assert_eq!(cyc_sign(&Cyclotomic::from_int(-1)).unwrap(), Sign::Negative);
        assert_eq!(cyc_sign(&Cyclotomic::zero()).unwrap(), Sign::Zero);
        assert!(matches!(cyc_sign(&Cyclotomic::i()), Err(ScalarError::NotReal(_))));
    }

    #[test]
    fn display_forms() {
        let x = Cyclotomic::frac(1, 2) - Cyclotomic::i() * Cyclotomic::from_int(3);
        assert_eq!(x.to_string(), "1/2 - 3*i");
        assert_eq!(cyc_root(8, 2).unwrap().to_string(), "i");
    }

    #[test]
    fn json_round_trip() {
        let x = cyc_root(8, 3).unwrap() * Cyclotomic::frac(-5, 7);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"order":8,"coeffs":[[0,1],[0,1],[0,1],[-5,7]]}"#);
        let y: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
