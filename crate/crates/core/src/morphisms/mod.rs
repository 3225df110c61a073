//! Flip, idempotents, automorphism families and Hopf *-operations of H₁.
//!
//! Everything works in the named basis (e₀, e₁, E₀, E₁, F₀, F₁, C₀, C₁); printed
//! images are read from the morphisms fixture and evaluated at sampled parameters.

mod idempotents;
mod inner;
mod laurent;
mod sampling;
mod stars;
mod suite;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

pub use idempotents::{idempotent_classify, idempotent_family, lambda_rank};
pub use inner::{inner_automorphism, inner_element, inner_symbolic_checks, InvertibleParams};
pub use laurent::{parse, parse_with, split_linear, ExprError, Laurent};
pub use sampling::Sampler;
pub use stars::{base_star, hopf_star_failure, star_family, star_from_coefficients, star_from_generators, StarParams};
pub use suite::{morphism_report, Suite};

use crate::algebra::StructureConstants;
use crate::fixtures::{self, Morphisms};
use crate::hopf::{build_hopf, HopfStructure, Tensor};
use crate::linalg::{LinalgError, Matrix};
use crate::quotient::{named_algebra, BasisChange, Hni, Letter, QuotientError};
use crate::representations::StarOperation;
use crate::scalars::{Cyclotomic, Field};

/// A map in named coordinates; linear unless `antilinear` is set.
pub type LinearMap = StarOperation;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("not multiplicative: φ({0}·{1}) ≠ φ({0})φ({1})")]
    NotMultiplicative(String, String),
    #[error("not unital: φ(1) ≠ 1")]
    NotUnital,
    #[error("not bijective")]
    NotBijective,
    #[error("h is not invertible: a0·a1 = 0")]
    NotInvertible,
    #[error("determinant μτ − σν vanishes")]
    ZeroDeterminant,
    #[error("not an involution: Γ∘Γ differs from the identity in entry ({0}, {1})")]
    NotInvolution(String, String),
    #[error("not anti-multiplicative: Γ({0}·{1}) ≠ Γ({1})Γ({0})")]
    NotAntiMultiplicative(String, String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    I,
    II,
}

pub(crate) type Env = BTreeMap<String, Cyclotomic>;

fn add_into(t: &mut Tensor, k: usize, c: Cyclotomic) {
    let e = t.entry(k).or_insert_with(Cyclotomic::zero);
    *e = e.clone() + c;
    if e.is_zero() {
        t.remove(&k);
    }
}

/// (m⊗m)(t), conjugating the coefficients when m is antilinear.
pub fn tensor_map(t: &Tensor, m: &Matrix<Cyclotomic>, antilinear: bool) -> Tensor {
    let d = m.rows();
    let cols: Vec<Vec<Cyclotomic>> = (0..d).map(|j| m.column(j)).collect();
    let mut out = Tensor::new();
    for (&idx, c) in t {
        let c = if antilinear { c.conj() } else { c.clone() };
        let (a, b) = (&cols[idx / d], &cols[idx % d]);
        for (k, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (l, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                add_into(&mut out, k * d + l, c.clone() * x * y);
            }
        }
    }
    out
}

/// H₁ with its algebra and Hopf maps transported to the named basis.
pub struct H1 {
    pub h: Hni,
    pub hopf: HopfStructure,
    pub basis: BasisChange,
    pub alg: StructureConstants<Cyclotomic>,
    pub antipode: Matrix<Cyclotomic>,
    pub coproduct: Vec<Tensor>,
    pub counit: Vec<Cyclotomic>,
    pub fixture: Morphisms,
}

impl H1 {
    pub fn new() -> Result<Self, MorphismError> {
        let h = Hni::build(1)?;
        let hopf = build_hopf(&h);
        let (basis, alg) = named_algebra(&h)?;
        let antipode = basis.inverse.mul(&hopf.antipode)?.mul(&basis.matrix)?;
        let cols: Vec<Vec<Cyclotomic>> = (0..h.dim()).map(|j| basis.matrix.column(j)).collect();
        let coproduct = cols.iter().map(|c| tensor_map(&hopf.delta(c), &basis.inverse, false)).collect();
        let counit = cols.iter().map(|c| hopf.epsilon(c)).collect();
        Ok(H1 { h, hopf, basis, alg, antipode, coproduct, counit, fixture: fixtures::morphisms() })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.basis.labels
    }

    pub fn index(&self, label: &str) -> usize {
        self.alg.index_of(label).unwrap_or_else(|| panic!("no basis element {label}"))
    }

    pub fn unit(&self) -> Vec<Cyclotomic> {
        self.alg.unit().to_vec()
    }

    pub fn from_pbw(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.basis.to_target(v)
    }

    pub fn to_pbw(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.basis.to_source(v)
    }

    pub fn mul(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.alg.mul(a, b).expect("dimension")
    }

    pub fn format(&self, v: &[Cyclotomic]) -> String {
        self.alg.format(v)
    }

    /// Named coordinates of a formula linear in the basis labels.
    pub fn vector(&self, formula: &str, env: &Env) -> Result<Vec<Cyclotomic>, MorphismError> {
        self.vector_with(formula, env, &BTreeMap::new())
    }

    /// As `vector`, expanding the given macros first.
    pub fn vector_with(&self, formula: &str, env: &Env, macros: &BTreeMap<String, Laurent>) -> Result<Vec<Cyclotomic>, MorphismError> {
        let p = parse_with(formula, macros)?;
        let coeffs = split_linear(&p, self.labels())?;
        Ok(coeffs.iter().map(|c| c.eval_map(env)).collect::<Result<_, _>>()?)
    }

    /// The map whose image of each basis label is given by `images`.
    pub fn map_from_images(
        &self,
        images: &BTreeMap<String, String>,
        env: &Env,
        antilinear: bool,
    ) -> Result<LinearMap, MorphismError> {
        let cols = self
            .labels()
            .iter()
            .map(|l| {
                let f = images.get(l).ok_or_else(|| MorphismError::Parameters(format!("no image for {l}")))?;
                self.vector(f, env)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinearMap { matrix: Matrix::from_columns(&cols)?, antilinear })
    }

    /// PBW coordinates of a product of generators such as "KF" or "EKinv".
    pub fn word(&self, w: &str) -> Vec<Cyclotomic> {
        let mut letters = Vec::new();
        let mut rest = w;
        while !rest.is_empty() {
            let (l, n) = if rest.starts_with("Kinv") {
                (Letter::Kinv, 4)
            } else {
                match rest.as_bytes()[0] {
                    b'K' => (Letter::K, 1),
                    b'E' => (Letter::E, 1),
                    b'F' => (Letter::F, 1),
                    _ => panic!("not a generator word: {w}"),
                }
            };
            letters.push(l);
            rest = &rest[n..];
        }
        self.h.word(&letters)
    }

    /// PBW coordinates of a formula in generator words (identifiers starting with K, E or F).
    pub fn generator_vector(&self, formula: &str, env: &Env) -> Result<Vec<Cyclotomic>, MorphismError> {
        let p = parse(formula)?;
        let words: Vec<String> =
            p.vars().into_iter().filter(|v| v.starts_with(['K', 'E', 'F'])).collect();
        let coeffs = split_linear(&p, &words)?;
        let mut out = self.h.zero_vec();
        for (w, c) in words.iter().zip(coeffs) {
            let c = c.eval_map(env)?;
            for (o, x) in out.iter_mut().zip(self.word(w)) {
                *o = o.clone() + c.clone() * x;
            }
        }
        Ok(out)
    }

    /// Image of a PBW vector under a named-basis map, in PBW coordinates.
    pub fn apply_pbw(&self, m: &LinearMap, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.to_pbw(&m.apply(&self.from_pbw(v)))
    }
}

/// The algebra map determined by the images of K, E and F (PBW coordinates):
/// F^pK^nE^q ↦ φ(F)^p φ(K)^n φ(E)^q, in named coordinates.
pub fn map_from_generators(ctx: &H1, k: &[Cyclotomic], e: &[Cyclotomic], f: &[Cyclotomic]) -> LinearMap {
    let (k, e, f) = (ctx.from_pbw(k), ctx.from_pbw(e), ctx.from_pbw(f));
    let power = |x: &[Cyclotomic], n: usize| (0..n).fold(ctx.unit(), |acc, _| ctx.mul(&acc, x));
    let cols: Vec<Vec<Cyclotomic>> = (0..ctx.h.dim())
        .map(|i| {
            let ix = ctx.h.pbw(i);
            ctx.mul(&ctx.mul(&power(&f, ix.p), &power(&k, ix.n)), &power(&e, ix.q))
        })
        .collect();
    let pbw = LinearMap { matrix: Matrix::from_columns(&cols).expect("square"), antilinear: false };
    // columns are indexed by PBW monomials; re-index them by named basis elements
    LinearMap { matrix: pbw.matrix.mul(&ctx.basis.matrix).expect("square"), antilinear: false }
}

/// Why m fails to be an algebra automorphism, if it does.
pub fn automorphism_failure(ctx: &H1, m: &LinearMap) -> Option<MorphismError> {
    if m.apply(&ctx.unit()) != ctx.unit() {
        return Some(MorphismError::NotUnital);
    }
    if let Some((i, j)) = m.multiplicative_failure(&ctx.alg) {
        let l = ctx.labels();
        return Some(MorphismError::NotMultiplicative(l[i].clone(), l[j].clone()));
    }
    if m.matrix.inverse().is_err() {
        return Some(MorphismError::NotBijective);
    }
    None
}

/// κ: K ↦ −K, E ↦ E, F ↦ F, i.e. F^pK^nE^q ↦ (−1)^n F^pK^nE^q.
pub fn flip(ctx: &H1) -> LinearMap {
    let d = ctx.dim();
    let mut diag = Matrix::identity(d);
    for i in 0..d {
        if ctx.h.pbw(i).n % 2 == 1 {
            diag.set(i, i, -Cyclotomic::from_int(1));
        }
    }
    let m = ctx.basis.inverse.mul(&diag).and_then(|x| x.mul(&ctx.basis.matrix)).expect("square");
    LinearMap { matrix: m, antilinear: false }
}

pub fn commutes_with_antipode(ctx: &H1, m: &LinearMap) -> bool {
    let s = LinearMap { matrix: ctx.antipode.clone(), antilinear: false };
    s.compose(m) == m.compose(&s)
}

/// First of Δ∘m = (m⊗m)∘Δ, ε∘m = ε, m∘S = S∘m that fails, checked on K, E, F and then on every basis element.
pub fn hopf_automorphism_failure(ctx: &H1, m: &LinearMap) -> Option<String> {
    let gens = [("K", ctx.from_pbw(&ctx.h.k())), ("E", ctx.from_pbw(&ctx.h.e())), ("F", ctx.from_pbw(&ctx.h.f()))];
    let delta = |v: &[Cyclotomic]| ctx.hopf.delta(&ctx.to_pbw(v));
    let named = |t: &Tensor| tensor_map(t, &ctx.basis.inverse, false);
    for (name, g) in &gens {
        if named(&delta(&m.apply(g))) != tensor_map(&named(&delta(g)), &m.matrix, false) {
            return Some(format!("Δ(φ({name}))"));
        }
    }
    for (j, l) in ctx.labels().iter().enumerate() {
        if named(&delta(&m.matrix.column(j))) != tensor_map(&ctx.coproduct[j], &m.matrix, false) {
            return Some(format!("Δ(φ({l}))"));
        }
        let eps: Cyclotomic =
            m.matrix.column(j).iter().zip(&ctx.counit).fold(Cyclotomic::zero(), |acc, (x, e)| acc + x.clone() * e);
        if eps != ctx.counit[j] {
            return Some(format!("ε(φ({l}))"));
        }
    }
    if !commutes_with_antipode(ctx, m) {
        return Some("φ∘S = S∘φ".into());
    }
    None
}

pub fn hopf_automorphism_check(ctx: &H1, m: &LinearMap) -> bool {
    hopf_automorphism_failure(ctx, m).is_none()
}

/// Parameters of the type-I / type-II automorphism families.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AutomorphismParams {
    pub kind: Kind,
    pub beta: Cyclotomic,
    pub gamma: Cyclotomic,
    pub delta: Cyclotomic,
    pub eta: Cyclotomic,
    pub lambda: Cyclotomic,
    pub mu0: Cyclotomic,
    pub nu0: Cyclotomic,
    pub sigma0: Cyclotomic,
    pub tau0: Cyclotomic,
    pub mu1: Cyclotomic,
    pub nu1: Cyclotomic,
    pub sigma1: Cyclotomic,
    pub tau1: Cyclotomic,
}

pub const PARAM_NAMES: [&str; 13] =
    ["beta", "gamma", "delta", "eta", "lambda", "mu0", "nu0", "sigma0", "tau0", "mu1", "nu1", "sigma1", "tau1"];

impl AutomorphismParams {
    pub fn identity(kind: Kind) -> Self {
        let (z, o) = (Cyclotomic::zero(), Cyclotomic::from_int(1));
        let mut env: Env = PARAM_NAMES.iter().map(|n| (n.to_string(), z.clone())).collect();
        for n in ["lambda", "mu0", "tau0", "mu1", "tau1"] {
            env.insert(n.into(), o.clone());
        }
        Self::from_env(kind, &env)
    }

    pub fn env(&self) -> Env {
        let v = [
            &self.beta, &self.gamma, &self.delta, &self.eta, &self.lambda, &self.mu0, &self.nu0, &self.sigma0, &self.tau0,
            &self.mu1, &self.nu1, &self.sigma1, &self.tau1,
        ];
        PARAM_NAMES.iter().zip(v).map(|(n, x)| (n.to_string(), x.clone())).collect()
    }

    /// Missing names are taken as zero.
    pub fn from_env(kind: Kind, env: &Env) -> Self {
        let g = |n: &str| env.get(n).cloned().unwrap_or_else(Cyclotomic::zero);
        AutomorphismParams {
            kind,
            beta: g("beta"),
            gamma: g("gamma"),
            delta: g("delta"),
            eta: g("eta"),
            lambda: g("lambda"),
            mu0: g("mu0"),
            nu0: g("nu0"),
            sigma0: g("sigma0"),
            tau0: g("tau0"),
            mu1: g("mu1"),
            nu1: g("nu1"),
            sigma1: g("sigma1"),
            tau1: g("tau1"),
        }
    }
}

/// How to read the printed nondegeneracy condition on the second block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SecondBlock {
    /// μ₁τ₁ − ν₀σ₀ ≠ 0, as printed.
    Printed,
    /// μ₁τ₁ − ν₁σ₁ ≠ 0, the determinant used when deriving the extra relations.
    Determinant,
}

pub const SECOND_BLOCK_DETERMINANT: &str = "mu1*tau1 - nu1*sigma1";

/// Names of the violated items of the constraint system ("1", "2", "3a", "3b", "4", "5", "6").
pub fn constraint_violations(ctx: &H1, p: &AutomorphismParams, reading: SecondBlock) -> Result<Vec<String>, MorphismError> {
    let env = p.env();
    let c = &ctx.fixture.constraints;
    let mut out = Vec::new();
    for (k, f) in &c.equalities {
        if !parse(f)?.eval_map(&env)?.is_zero() {
            out.push(k.clone());
        }
    }
    for (k, f) in &c.nonzero {
        let f = if k == "5" && reading == SecondBlock::Determinant { SECOND_BLOCK_DETERMINANT } else { f.as_str() };
        if parse(f)?.eval_map(&env)?.is_zero() {
            out.push(k.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// Values of the two derived relations (both zero when they hold).
pub fn derived_residuals(ctx: &H1, p: &AutomorphismParams) -> Result<Vec<Cyclotomic>, MorphismError> {
    let env = p.env();
    ctx.fixture.constraints.derived.iter().map(|f| Ok(parse(f)?.eval_map(&env)?)).collect()
}

/// The printed map without any verification.
pub fn automorphism_unchecked(ctx: &H1, p: &AutomorphismParams) -> Result<LinearMap, MorphismError> {
    let images = match p.kind {
        Kind::I => &ctx.fixture.type_one,
        Kind::II => &ctx.fixture.type_two,
    };
    ctx.map_from_images(images, &p.env(), false)
}

/// The printed map, verified unital, multiplicative on all basis pairs and bijective.
pub fn automorphism_from_params(ctx: &H1, p: &AutomorphismParams) -> Result<LinearMap, MorphismError> {
    let m = automorphism_unchecked(ctx, p)?;
    match automorphism_failure(ctx, &m) {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

/// Reads type-I parameters back from a map's images of e₀, E₀, F₀, E₁, F₁, C₀.
pub fn type_one_params(ctx: &H1, m: &LinearMap) -> AutomorphismParams {
    let at = |col: &str, row: &str| m.matrix.get(ctx.index(row), ctx.index(col)).clone();
    let mut env = Env::new();
    for (name, col, row) in [
        ("beta", "e0", "E0"),
        ("gamma", "e0", "F0"),
        ("delta", "e0", "E1"),
        ("eta", "e0", "F1"),
        ("mu0", "E0", "E0"),
        ("nu0", "E0", "F0"),
        ("sigma0", "F0", "E0"),
        ("tau0", "F0", "F0"),
        ("mu1", "E1", "E1"),
        ("nu1", "E1", "F1"),
        ("sigma1", "F1", "E1"),
        ("tau1", "F1", "F1"),
        ("lambda", "C0", "C0"),
    ] {
        env.insert(name.into(), at(col, row));
    }
    AutomorphismParams::from_env(Kind::I, &env)
}

/// The antipode-commuting family of the given kind; fails when μτ − σν = 0 or the map is not an automorphism.
pub fn s_commuting_family(
    ctx: &H1,
    kind: Kind,
    mu: &Cyclotomic,
    nu: &Cyclotomic,
    sigma: &Cyclotomic,
    tau: &Cyclotomic,
) -> Result<LinearMap, MorphismError> {
    if (mu.clone() * tau - sigma.clone() * nu).is_zero() {
        return Err(MorphismError::ZeroDeterminant);
    }
    let env: Env = [("mu", mu), ("nu", nu), ("sigma", sigma), ("tau", tau)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    let s = &ctx.fixture.s_commuting;
    let m = ctx.map_from_images(if kind == Kind::I { &s.one } else { &s.two }, &env, false)?;
    match automorphism_failure(ctx, &m) {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> H1 {
        H1::new().unwrap()
    }

    #[test]
    fn flip_properties() {
        let c = ctx();
        let k = flip(&c);
        assert!(automorphism_failure(&c, &k).is_none());
        assert!(k.is_involution());
        assert_eq!(k.apply(&c.alg.basis_vector(c.index("e0"))), c.alg.basis_vector(c.index("e1")));
        let s = LinearMap { matrix: c.antipode.clone(), antilinear: false };
        let sinv = LinearMap { matrix: c.antipode.inverse().unwrap(), antilinear: false };
        assert_eq!(k.compose(&s).compose(&k), sinv);
        assert_eq!(hopf_automorphism_failure(&c, &k).as_deref(), Some("Δ(φ(K))"));
    }

    #[test]
    fn identity_parameters_give_identity() {
        let c = ctx();
        let m = automorphism_from_params(&c, &AutomorphismParams::identity(Kind::I)).unwrap();
        assert_eq!(m.matrix, Matrix::identity(8));
        assert!(hopf_automorphism_check(&c, &m));
    }

    #[test]
    fn first_constraint_violation_names_e0_e1() {
        let c = ctx();
        let mut p = AutomorphismParams::identity(Kind::I);
        p.nu1 = Cyclotomic::from_int(1);
        assert_eq!(constraint_violations(&c, &p, SecondBlock::Determinant).unwrap(), ["1"]);
        let err = automorphism_from_params(&c, &p).unwrap_err();
        assert_eq!(err, MorphismError::NotMultiplicative("E0".into(), "E1".into()));
    }

    #[test]
    fn s_commuting_examples() {
        let c = ctx();
        let (o, z) = (Cyclotomic::from_int(1), Cyclotomic::zero());
        let id = s_commuting_family(&c, Kind::I, &o, &z, &z, &o).unwrap();
        assert_eq!(id.matrix, Matrix::identity(8));
        // the printed type-II table has the wrong sign on C; the generator action is an automorphism
        assert_eq!(s_commuting_family(&c, Kind::II, &o, &z, &z, &o).unwrap_err(), MorphismError::NotMultiplicative("E0".into(), "F1".into()));
        let env = Env::new();
        let g = |w: &str| c.generator_vector(w, &env).unwrap();
        let two = map_from_generators(&c, &g("-K"), &g("-KE"), &g("-KF"));
        assert!(automorphism_failure(&c, &two).is_none());
        assert!(commutes_with_antipode(&c, &two));
        let c0 = two.apply(&c.alg.basis_vector(c.index("C0")));
        assert_eq!(c.format(&c0), c.format(&c.vector("-C1", &env).unwrap()));
        assert_eq!(s_commuting_family(&c, Kind::I, &o, &o, &o, &o).unwrap_err(), MorphismError::ZeroDeterminant);
    }
}
