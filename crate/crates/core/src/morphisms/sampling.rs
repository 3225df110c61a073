//! Seeded exact samples: small rationals, Gaussian rationals, roots of unity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AutomorphismParams, Env, InvertibleParams, Kind, StarParams};
use crate::scalars::{Cyclotomic, Field};

pub struct Sampler {
    rng: ChaCha8Rng,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> BigRational {
        q(self.rng.gen_range(-7..=7), self.rng.gen_range(1..=5))
    }

    pub fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn positive_rational(&mut self) -> BigRational {
        q(self.rng.gen_range(1..=7), self.rng.gen_range(1..=5))
    }

    /// x + y·i with small rational x, y; zero about one time in eight.
    pub fn gaussian(&mut self) -> Cyclotomic {
        if self.rng.gen_range(0..8) == 0 {
            return Cyclotomic::zero();
        }
        Cyclotomic::from_rational(self.rational()) + Cyclotomic::from_rational(self.rational()) * Cyclotomic::i()
    }

    pub fn nonzero_gaussian(&mut self) -> Cyclotomic {
        loop {
            let g = self.gaussian();
            if !g.is_zero() {
                return g;
            }
        }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A solution of the type-I constraint system. With D₀ = μ₀τ₀ − ν₀σ₀ ≠ 0 the equalities force
    /// (μ₁, ν₁, σ₁, τ₁) = t(μ₀, −ν₀, −σ₀, τ₀) and λ = tD₀ for some t ≠ 0.
    pub fn automorphism_params(&mut self, kind: Kind) -> AutomorphismParams {
        let (mu0, nu0, sigma0, tau0) = loop {
            let v = (self.gaussian(), self.gaussian(), self.gaussian(), self.gaussian());
            if !(v.0.clone() * &v.3 - v.1.clone() * &v.2).is_zero() {
                break v;
            }
        };
        let t = self.nonzero_gaussian();
        self.params_from_blocks(kind, [mu0, nu0, sigma0, tau0], &t, &t)
    }

    /// Parameters with second block s(μ₀, −ν₀) and t(−σ₀, τ₀), λ = tD₀, plus random β, γ, δ, η.
    pub fn params_from_blocks(&mut self, kind: Kind, first: [Cyclotomic; 4], s: &Cyclotomic, t: &Cyclotomic) -> AutomorphismParams {
        let [mu0, nu0, sigma0, tau0] = first;
        let d0 = mu0.clone() * &tau0 - nu0.clone() * &sigma0;
        let mut env = Env::new();
        for n in ["beta", "gamma", "delta", "eta"] {
            env.insert(n.into(), self.gaussian());
        }
        env.insert("mu1".into(), s.clone() * &mu0);
        env.insert("nu1".into(), -(s.clone() * &nu0));
        env.insert("sigma1".into(), -(t.clone() * &sigma0));
        env.insert("tau1".into(), t.clone() * &tau0);
        env.insert("lambda".into(), t.clone() * &d0);
        env.insert("mu0".into(), mu0);
        env.insert("nu0".into(), nu0);
        env.insert("sigma0".into(), sigma0);
        env.insert("tau0".into(), tau0);
        AutomorphismParams::from_env(kind, &env)
    }

    pub fn invertible_params(&mut self) -> InvertibleParams {
        InvertibleParams {
            a0: self.nonzero_gaussian(),
            x0: self.gaussian(),
            y0: self.gaussian(),
            c0: self.gaussian(),
            a1: self.nonzero_gaussian(),
            x1: self.gaussian(),
            y1: self.gaussian(),
            c1: self.gaussian(),
        }
    }

    /// A point on the printed quadric (a² − bc = 1 for type I, a² + bc = 1 for type II) with
    /// equal signs, phases in ℚ(ζ_M) for M ∈ {4, 8, 12}.
    pub fn star_params(&mut self, kind: Kind) -> StarParams {
        let one = BigRational::one();
        let (a, b, c) = match kind {
            Kind::I => {
                if self.rng.gen_range(0..4) == 0 {
                    let bc = if self.rng.gen_bool(0.5) { (BigRational::zero(), self.positive_rational()) } else { (self.positive_rational(), BigRational::zero()) };
                    (one, bc.0, bc.1)
                } else {
                    let a = &one + self.positive_rational();
                    let b = self.positive_rational();
                    let c = (&a * &a - &one) / &b;
                    (a, b, c)
                }
            }
            Kind::II => {
                let den = self.rng.gen_range(2..=6);
                let a = q(self.rng.gen_range(1..den), den);
                let b = self.positive_rational();
                let c = (&one - &a * &a) / &b;
                (a, b, c)
            }
        };
        let order = [4u32, 8, 12][self.below(3)];
        let sign = if self.rng.gen_bool(0.5) { 1 } else { -1 };
        StarParams {
            kind,
            a,
            b,
            c,
            phase_order: order,
            phi: self.rng.gen_range(0..order as i64),
            psi: self.rng.gen_range(0..order as i64),
            sign_beta: sign,
            sign_gamma: sign,
            lambda: None,
        }
    }
}
