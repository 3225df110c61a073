//! Antilinear *-operations Γ = I∘φ built from the printed families.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{parse, tensor_map, Env, Kind, LinearMap, MorphismError, H1};
use crate::linalg::Matrix;
use crate::quotient::Letter;
use crate::scalars::{Cyclotomic, Field};

/// Real parameters a, b, c, phases e^{iφ} = ζ_M^phi, e^{iψ} = ζ_M^psi and the signs of β, γ.
#[derive(Clone, Debug, PartialEq)]
pub struct StarParams {
    pub kind: Kind,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub phase_order: u32,
    pub phi: i64,
    pub psi: i64,
    pub sign_beta: i64,
    pub sign_gamma: i64,
    /// Replaces the printed λ when set.
    pub lambda: Option<Cyclotomic>,
}

impl StarParams {
    /// α, β, γ, δ, λ from the printed parametrization.
    pub fn coefficients(&self, ctx: &H1) -> Result<Env, MorphismError> {
        if [&self.a, &self.b, &self.c].iter().any(|x| x.is_negative()) {
            return Err(MorphismError::Parameters("a, b, c must be non-negative".into()));
        }
        if self.phase_order == 0 || self.phase_order % 4 != 0 {
            return Err(MorphismError::Parameters(format!("phase order {} is not a multiple of 4", self.phase_order)));
        }
        let m = self.phase_order;
        let root = |order: u32, k: i64| Cyclotomic::root(order, k).expect("order checked");
        let mut env = Env::new();
        env.insert("a".into(), Cyclotomic::from_rational(self.a.clone()));
        env.insert("b".into(), Cyclotomic::from_rational(self.b.clone()));
        env.insert("c".into(), Cyclotomic::from_rational(self.c.clone()));
        env.insert("ephi".into(), root(m, self.phi));
        env.insert("epsi".into(), root(m, self.psi));
        env.insert("ehalf".into(), root(2 * m, self.phi + self.psi));
        env.insert("sb".into(), Cyclotomic::from_int(self.sign_beta));
        env.insert("sc".into(), Cyclotomic::from_int(self.sign_gamma));
        env.insert("i".into(), Cyclotomic::i());
        let stars = &ctx.fixture.stars;
        let formulas = if self.kind == Kind::I { &stars.one_parameters } else { &stars.two_parameters };
        let mut out = Env::new();
        for (k, f) in formulas {
            out.insert(k.clone(), parse(f)?.eval_map(&env)?);
        }
        if let Some(l) = &self.lambda {
            out.insert("lambda".into(), l.clone());
        }
        Ok(out)
    }

    /// Value of the printed quadric (zero on the family).
    pub fn quadric(&self, ctx: &H1) -> Result<BigRational, MorphismError> {
        let stars = &ctx.fixture.stars;
        let f = if self.kind == Kind::I { &stars.one_quadric } else { &stars.two_quadric };
        let env = [("a", &self.a), ("b", &self.b), ("c", &self.c)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        Ok(parse(f)?.eval_map(&env)?)
    }
}

/// Γ from α, β, γ, δ, λ; verified involutive and anti-multiplicative.
pub fn star_from_coefficients(ctx: &H1, kind: Kind, coeffs: &Env) -> Result<LinearMap, MorphismError> {
    let stars = &ctx.fixture.stars;
    let g = ctx.map_from_images(if kind == Kind::I { &stars.one } else { &stars.two }, coeffs, true)?;
    let sq = g.compose(&g);
    let d = ctx.dim();
    let labels = ctx.labels();
    for j in 0..d {
        for i in 0..d {
            let want = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
            if *sq.matrix.get(i, j) != want {
                return Err(MorphismError::NotInvolution(labels[i].clone(), labels[j].clone()));
            }
        }
    }
    if let Some((i, j)) = g.anti_multiplicative_failure(&ctx.alg) {
        return Err(MorphismError::NotAntiMultiplicative(labels[i].clone(), labels[j].clone()));
    }
    Ok(g)
}

pub fn star_family(ctx: &H1, p: &StarParams) -> Result<LinearMap, MorphismError> {
    star_from_coefficients(ctx, p.kind, &p.coefficients(ctx)?)
}

/// The antilinear anti-automorphism fixing K, E and F: F^pK^nE^q ↦ E^qK^nF^p.
pub fn base_star(ctx: &H1) -> LinearMap {
    let h = &ctx.h;
    let cols: Vec<Vec<Cyclotomic>> = (0..h.dim())
        .map(|i| {
            let ix = h.pbw(i);
            let mut w = vec![Letter::E; ix.q];
            w.extend(std::iter::repeat(Letter::K).take(ix.n));
            w.extend(std::iter::repeat(Letter::F).take(ix.p));
            h.word(&w)
        })
        .collect();
    let pbw = LinearMap { matrix: Matrix::from_columns(&cols).expect("square"), antilinear: true };
    pbw.in_basis(&ctx.basis)
}

/// The antilinear anti-homomorphism determined by the images of K, E and F (PBW coordinates):
/// F^pK^nE^q ↦ Γ(E)^q Γ(K)^n Γ(F)^p.
pub fn star_from_generators(ctx: &H1, k: &[Cyclotomic], e: &[Cyclotomic], f: &[Cyclotomic]) -> LinearMap {
    let (k, e, f) = (ctx.from_pbw(k), ctx.from_pbw(e), ctx.from_pbw(f));
    let power = |x: &[Cyclotomic], n: usize| (0..n).fold(ctx.unit(), |acc, _| ctx.mul(&acc, x));
    let cols: Vec<Vec<Cyclotomic>> = (0..ctx.h.dim())
        .map(|i| {
            let ix = ctx.h.pbw(i);
            ctx.mul(&ctx.mul(&power(&e, ix.q), &power(&k, ix.n)), &power(&f, ix.p))
        })
        .collect();
    let m = Matrix::from_columns(&cols).expect("square").mul(&ctx.basis.matrix.conj()).expect("square");
    LinearMap { matrix: m, antilinear: true }
}

/// First failure of Δ∘Γ = (Γ⊗Γ)∘Δ or ε∘Γ = conj∘ε, on K, E, F and then on every basis element.
pub fn hopf_star_failure(ctx: &H1, g: &LinearMap) -> Option<String> {
    let delta = |v: &[Cyclotomic]| tensor_map(&ctx.hopf.delta(&ctx.to_pbw(v)), &ctx.basis.inverse, false);
    let gens = [("K", ctx.from_pbw(&ctx.h.k())), ("E", ctx.from_pbw(&ctx.h.e())), ("F", ctx.from_pbw(&ctx.h.f()))];
    let mut items: Vec<(String, Vec<Cyclotomic>)> = gens.into_iter().map(|(n, v)| (n.to_string(), v)).collect();
    items.extend(ctx.labels().iter().enumerate().map(|(j, l)| (l.clone(), ctx.alg.basis_vector(j))));
    for (name, v) in &items {
        if delta(&g.apply(v)) != tensor_map(&delta(v), &g.matrix, g.antilinear) {
            return Some(format!("Δ(Γ({name}))"));
        }
        let eps = |w: &[Cyclotomic]| ctx.hopf.epsilon(&ctx.to_pbw(w));
        let e = eps(v);
        if eps(&g.apply(v)) != if g.antilinear { e.conj() } else { e } {
            return Some(format!("ε(Γ({name}))"));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(kind: Kind, a: i64, b: i64, c: i64) -> StarParams {
        let r = |n: i64| BigRational::from_integer(n.into());
        StarParams { kind, a: r(a), b: r(b), c: r(c), phase_order: 4, phi: 0, psi: 0, sign_beta: 1, sign_gamma: 1, lambda: None }
    }

    #[test]
    fn base_case_is_the_printed_table() {
        let c = H1::new().unwrap();
        let g = star_family(&c, &params(Kind::I, 1, 0, 0)).unwrap();
        assert_eq!(g, base_star(&c));
        assert!(hopf_star_failure(&c, &g).is_none());
    }

    #[test]
    fn wrong_lambda_is_rejected() {
        let c = H1::new().unwrap();
        let mut p = params(Kind::I, 1, 0, 0);
        p.lambda = Some(Cyclotomic::from_int(2));
        assert_eq!(star_family(&c, &p).unwrap_err(), MorphismError::NotInvolution("C0".into(), "C0".into()));
        p.lambda = Some(Cyclotomic::from_int(-1));
        assert!(matches!(star_family(&c, &p).unwrap_err(), MorphismError::NotAntiMultiplicative(..)));
    }
}
