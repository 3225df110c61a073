//! Certified sign of a real cyclotomic number by fixed-point interval evaluation.
//!
//! All approximations are integers `v` meaning `v / 2^p`, paired with an error
//! bound in the same units. Precision doubles until the interval excludes zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::field::Sign;

/// Fixed-point approximation with an absolute error bound (both in units of 2^-p).
struct Approx {
    value: BigInt,
    err: BigInt,
}

fn atan_inv(x: u32, p: u64) -> Approx {
    let one = BigInt::from(1) << p;
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = &one / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power = power / &x2;
        k += 1;
    }
    // per term: power error < 2, division error < 1; tail below 3
    Approx { value: sum, err: BigInt::from(3 * (k + 2)) }
}

fn pi(p: u64) -> Approx {
    let a = atan_inv(5, p);
    let b = atan_inv(239, p);
    Approx {
        value: a.value * 16 - b.value * 4,
        err: a.err * 16 + b.err * 4,
    }
}

/// cos(2πj/m) for 0 ≤ j ≤ m/2, so the angle lies in [0, π].
fn cos_turn(j: u64, m: u64, pi: &Approx, p: u64) -> Approx {
    let one = BigInt::from(1) << p;
    let (theta, theta_err) = {
        let num = &pi.value * BigInt::from(2 * j);
        let (q, _) = num.div_mod_floor(&BigInt::from(m));
        // 2j/m ≤ 1 keeps the scaled π error bounded by the π error
        (q, &pi.err + 1)
    };
    let mut sum = one.clone();
    let mut term = one;
    let mut term_err = BigInt::zero();
    let mut total_err = BigInt::zero();
    let mut k: u64 = 1;
    loop {
        let denom = BigInt::from((2 * k - 1) * (2 * k));
        let t1 = (&term * &theta) >> p;
        let t2 = (&t1 * &theta) >> p;
        term = t2 / &denom;
        // |θ| < 4 bounds the amplification of the previous error by 16/denom
        term_err = (&term_err * 16 + &denom - 1) / &denom + 3;
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        total_err += &term_err;
        if term.is_zero() && k >= 3 {
            break;
        }
        k += 1;
    }
    // alternating tail once terms decrease, plus Lipschitz error from θ
    total_err += &term_err * 2 + 2 + theta_err;
    Approx { value: sum, err: total_err }
}

fn attempt(order: u32, coeffs: &[BigRational], p: u64) -> Option<Sign> {
    let m = order as u64;
    let pi = pi(p + 8);
    let pp = p + 8;
    let mut acc = BigInt::zero();
    let mut err = BigInt::zero();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = j as u64 % m;
        let jj = if 2 * j > m { m - j } else { j };
        let cosv = cos_turn(jj, m, &pi, pp);
        let num = c.numer() * &cosv.value;
        let (q, _) = num.div_mod_floor(c.denom());
        acc += q;
        let abs_c = c.abs();
        let bound = (abs_c.numer() * &cosv.err + abs_c.denom() - 1) / abs_c.denom();
        err += bound + 1;
    }
    if acc.abs() > err {
        Some(if acc.is_positive() { Sign::Positive } else { Sign::Negative })
    } else {
        None
    }
}

/// Sign of Σ c_j ζ_M^j, assumed real and nonzero.
pub(crate) fn sign_of_real(order: u32, coeffs: &[BigRational]) -> Sign {
    let mut p: u64 = 64;
    loop {
        if let Some(s) = attempt(order, coeffs, p) {
            return s;
        }
        p *= 2;
    }
}

/// Real part of Σ c_j ζ_M^j as an f64, for display and diagnostics only.
pub(crate) fn approx_real(order: u32, coeffs: &[BigRational]) -> f64 {
    use num_traits::ToPrimitive;
    coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let angle = 2.0 * std::f64::consts::PI * j as f64 / order as f64;
            c.to_f64().unwrap_or(0.0) * angle.cos()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_interval_contains_pi() {
        let p = 80;
        let a = pi(p);
        let scale = 2f64.powi(p as i32);
        let v = a.value.to_string().parse::<f64>().unwrap() / scale;
        assert!((v - std::f64::consts::PI).abs() < 1e-15);
        assert!(a.err < BigInt::from(1) << 16);
    }

    #[test]
    fn cos_of_eighth_turn() {
        let p = 80;
        let pv = pi(p);
        let c = cos_turn(1, 8, &pv, p);
        let v = c.value.to_string().parse::<f64>().unwrap() / 2f64.powi(p as i32);
        assert!((v - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }
}
