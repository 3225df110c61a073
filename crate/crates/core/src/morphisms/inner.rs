//! Inner automorphisms x ↦ h x h⁻¹, numerically and with symbolic coefficients.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{parse, parse_with, split_linear, Env, Laurent, LinearMap, MorphismError, H1, PARAM_NAMES, SECOND_BLOCK_DETERMINANT};
use crate::linalg::Matrix;
use crate::report::Check;
use crate::scalars::Cyclotomic;

/// Coefficients of h = a₀e₀ + X₀E₀ + Y₀F₀ + c₀C₀ + a₁e₁ + X₁E₁ + Y₁F₁ + c₁C₁.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvertibleParams {
    pub a0: Cyclotomic,
    pub x0: Cyclotomic,
    pub y0: Cyclotomic,
    pub c0: Cyclotomic,
    pub a1: Cyclotomic,
    pub x1: Cyclotomic,
    pub y1: Cyclotomic,
    pub c1: Cyclotomic,
}

impl InvertibleParams {
    pub fn one() -> Self {
        let (z, o) = (Cyclotomic::zero(), Cyclotomic::from_int(1));
        InvertibleParams {
            a0: o.clone(),
            x0: z.clone(),
            y0: z.clone(),
            c0: z.clone(),
            a1: o,
            x1: z.clone(),
            y1: z.clone(),
            c1: z,
        }
    }

    pub fn env(&self) -> Env {
        [
            ("a0", &self.a0),
            ("X0", &self.x0),
            ("Y0", &self.y0),
            ("c0", &self.c0),
            ("a1", &self.a1),
            ("X1", &self.x1),
            ("Y1", &self.y1),
            ("c1", &self.c1),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
    }
}

pub fn inner_element(ctx: &H1, p: &InvertibleParams) -> Result<Vec<Cyclotomic>, MorphismError> {
    ctx.vector(&ctx.fixture.inner.h, &p.env())
}

/// ad(h) with h⁻¹ obtained by solving h·y = 1.
pub fn inner_automorphism(ctx: &H1, p: &InvertibleParams) -> Result<LinearMap, MorphismError> {
    if (p.a0.clone() * &p.a1).is_zero() {
        return Err(MorphismError::NotInvertible);
    }
    let h = inner_element(ctx, p)?;
    let hinv = ctx.alg.left_mul_matrix(&h).expect("dims").inverse()?.apply(&ctx.unit())?;
    let cols: Vec<Vec<Cyclotomic>> =
        (0..ctx.dim()).map(|j| ctx.mul(&ctx.mul(&h, &ctx.alg.basis_vector(j)), &hinv)).collect();
    Ok(LinearMap { matrix: Matrix::from_columns(&cols)?, antilinear: false })
}

/// Inverse read off the linear system h·h′ = 1; differs from the printed one only in the radical E/F part.
const INVERSE_FROM_SYSTEM: &str = "1/a0*e0 - 1/(a0*a1)*(X0*E0 + Y0*F0) + 1/a0*(P/(a0*a1) - 1/a0*c0)*C0 \
    + 1/a1*e1 - 1/(a0*a1)*(X1*E1 + Y1*F1) + 1/a1*(P/(a0*a1) - 1/a1*c1)*C1";

/// H₁ products on vectors with Laurent-polynomial coordinates.
pub(super) struct Symbolic<'a> {
    ctx: &'a H1,
    products: Vec<Vec<(usize, BigRational)>>,
    pub(super) macros: BTreeMap<String, Laurent>,
}

impl<'a> Symbolic<'a> {
    pub(super) fn new(ctx: &'a H1) -> Result<Self, MorphismError> {
        let d = ctx.dim();
        let products = (0..d * d)
            .map(|k| {
                ctx.alg
                    .product_sparse(k / d, k % d)
                    .iter()
                    .map(|(i, c)| (*i, c.as_rational().expect("rational structure constants")))
                    .collect()
            })
            .collect();
        let macros =
            ctx.fixture.inner.macros.iter().map(|(k, v)| Ok((k.clone(), parse(v)?))).collect::<Result<_, MorphismError>>()?;
        Ok(Symbolic { ctx, products, macros })
    }

    pub(super) fn vector(&self, f: &str) -> Result<Vec<Laurent>, MorphismError> {
        Ok(split_linear(&parse_with(f, &self.macros)?, self.ctx.labels())?)
    }

    pub(super) fn mul(&self, a: &[Laurent], b: &[Laurent]) -> Vec<Laurent> {
        let d = self.ctx.dim();
        let mut out = vec![Laurent::zero(); d];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in &self.products[i * d + j] {
                    out[k.to_owned()] = &out[*k] + &(&xy * &Laurent::constant(c.clone()));
                }
            }
        }
        out
    }

    pub(super) fn basis(&self, j: usize) -> Vec<Laurent> {
        (0..self.ctx.dim()).map(|i| if i == j { Laurent::one() } else { Laurent::zero() }).collect()
    }

    pub(super) fn unit(&self) -> Vec<Laurent> {
        self.ctx.unit().iter().map(|c| Laurent::constant(c.as_rational().expect("rational unit"))).collect()
    }

    pub(super) fn format(&self, v: &[Laurent]) -> String {
        let parts: Vec<String> =
            self.ctx.labels().iter().zip(v).filter(|(_, x)| !x.is_zero()).map(|(l, x)| format!("{l}: {x}")).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("; ")
        }
    }
}

pub(super) fn sub_vec(a: &[Laurent], b: &[Laurent]) -> Vec<Laurent> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn subst_all(p: &Laurent, values: &BTreeMap<String, Laurent>) -> Option<Laurent> {
    values.iter().try_fold(p.clone(), |acc, (k, v)| acc.subst(k, v))
}

/// Inverse formula, the matrix of ad(h), and its place in the type-I family, all with symbolic a₀, …, c₁.
pub fn inner_symbolic_checks(ctx: &H1) -> Result<Vec<Check>, MorphismError> {
    let s = Symbolic::new(ctx)?;
    let fx = &ctx.fixture.inner;
    let claim_inv = "inverse of an invertible element of H1";
    let claim_ad = "matrix of ad(h) in the basis (e0, E0, F0, C0, e1, E1, F1, C1)";
    let claim_par = "inner automorphisms as members of the type-I family";
    let mut out = Vec::new();

    let h = s.vector(&fx.h)?;
    let one = s.unit();
    let printed = s.vector(&fx.inverse)?;
    let res = sub_vec(&s.mul(&h, &printed), &one);
    out.push(Check::new("printed inverse: h·h⁻¹ = 1", claim_inv).printed_holds(
        res.iter().all(Laurent::is_zero),
        "0",
        s.format(&res),
    ));
    let hinv = s.vector(INVERSE_FROM_SYSTEM)?;
    let right = sub_vec(&s.mul(&h, &hinv), &one);
    let left = sub_vec(&s.mul(&hinv, &h), &one);
    out.push(Check::new("inverse with E/F coefficients -X/(a0 a1), -Y/(a0 a1)", claim_inv).holds(
        right.iter().chain(&left).all(Laurent::is_zero),
        "h·h⁻¹ = h⁻¹·h = 1",
        format!("h·h⁻¹ − 1 = {}; h⁻¹·h − 1 = {}", s.format(&right), s.format(&left)),
    ));

    let d = ctx.dim();
    let ad: Vec<Vec<Laurent>> = (0..d).map(|j| s.mul(&s.mul(&h, &s.basis(j)), &hinv)).collect();
    let mut bad = Vec::new();
    let order = &ctx.fixture.basis;
    for (r, row_label) in order.iter().enumerate() {
        for (c, col_label) in order.iter().enumerate() {
            let want = parse_with(&fx.ad_matrix[r][c], &s.macros)?;
            let got = &ad[ctx.index(col_label)][ctx.index(row_label)];
            if want != *got {
                bad.push(format!("({row_label}, {col_label}): printed {want}, computed {got}"));
            }
        }
    }
    out.push(Check::new("ad(h) matrix, 64 cells", claim_ad).printed_holds(
        bad.is_empty(),
        "all cells as printed",
        if bad.is_empty() { "all cells as printed".to_string() } else { bad.join("; ") },
    ));
    let vars: std::collections::BTreeSet<String> = ad.iter().flatten().flat_map(Laurent::vars).collect();
    out.push(Check::new("ad(h) does not depend on c0, c1", claim_ad).holds(
        !vars.contains("c0") && !vars.contains("c1"),
        "no c0, c1",
        vars.into_iter().collect::<Vec<_>>().join(", "),
    ));

    // Parameters read from ad(h), in the same positions as `type_one_params`.
    let at = |col: &str, row: &str| ad[ctx.index(col)][ctx.index(row)].clone();
    let read: BTreeMap<String, Laurent> = [
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
    ]
    .into_iter()
    .map(|(n, c, r)| (n.to_string(), at(c, r)))
    .collect();
    let mut diffs = Vec::new();
    for (k, f) in &fx.parameters {
        let want = parse_with(f, &s.macros)?;
        if read[k] != want {
            diffs.push(format!("{k}: printed {want}, computed {}", read[k]));
        }
    }
    out.push(Check::new("type-I parameters of ad(h)", claim_par).printed_holds(
        diffs.is_empty(),
        "as printed",
        if diffs.is_empty() { "as printed".to_string() } else { diffs.join("; ") },
    ));

    let c = &ctx.fixture.constraints;
    let mut broken = Vec::new();
    for (k, f) in &c.equalities {
        let v = subst_all(&parse(f)?, &read).ok_or_else(|| MorphismError::Parameters("substitution".into()))?;
        if !v.is_zero() {
            broken.push(format!("{k}: {v}"));
        }
    }
    for (k, f) in c.nonzero.iter().map(|(k, f)| (k.as_str(), f.as_str())).chain([("5*", SECOND_BLOCK_DETERMINANT)]) {
        let v = subst_all(&parse(f)?, &read).ok_or_else(|| MorphismError::Parameters("substitution".into()))?;
        if v.is_zero() {
            broken.push(format!("{k} vanishes"));
        }
    }
    for f in &c.derived {
        let v = subst_all(&parse(f)?, &read).ok_or_else(|| MorphismError::Parameters("substitution".into()))?;
        if !v.is_zero() {
            broken.push(format!("{f} = {v}"));
        }
    }
    out.push(Check::new("ad(h) parameters satisfy the constraint system", claim_par).holds(
        broken.is_empty(),
        "all identities hold symbolically",
        if broken.is_empty() { "all identities hold symbolically".to_string() } else { broken.join("; ") },
    ));

    let mut differ = Vec::new();
    for (j, l) in ctx.labels().iter().enumerate() {
        let img = subst_all(&parse(&ctx.fixture.type_one[l])?, &read)
            .ok_or_else(|| MorphismError::Parameters("substitution".into()))?;
        let v = split_linear(&img, ctx.labels())?;
        if v != ad[j] {
            differ.push(l.clone());
        }
    }
    out.push(Check::new("ad(h) is the type-I map at its parameters", claim_par).holds(
        differ.is_empty(),
        "all 8 images agree",
        if differ.is_empty() { "all 8 images agree".to_string() } else { format!("differ on {}", differ.join(", ")) },
    ));
    debug_assert!(PARAM_NAMES.iter().all(|n| read.contains_key(*n)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn numeric_examples() {
        let c = H1::new().unwrap();
        let id = inner_automorphism(&c, &InvertibleParams::one()).unwrap();
        assert_eq!(id.matrix, Matrix::identity(8));
        let mut p = InvertibleParams::one();
        p.a0 = Cyclotomic::from_int(2);
        let m = inner_automorphism(&c, &p).unwrap();
        let (e0, e1) = (c.index("E0"), c.index("E1"));
        assert_eq!(*m.matrix.get(e0, e0), Cyclotomic::from_int(2));
        assert_eq!(*m.matrix.get(e1, e1), Cyclotomic::frac(1, 2));
        p.a0 = Cyclotomic::zero();
        assert_eq!(inner_automorphism(&c, &p).unwrap_err(), MorphismError::NotInvertible);
    }

    #[test]
    fn symbolic_checks() {
        let c = H1::new().unwrap();
        let checks = inner_symbolic_checks(&c).unwrap();
        assert!(checks.iter().all(|k| k.status != Status::Fail), "{checks:#?}");
        let mismatched: Vec<&str> =
            checks.iter().filter(|k| k.status == Status::Mismatch).map(|k| k.name.as_str()).collect();
        assert_eq!(mismatched, ["printed inverse: h·h⁻¹ = 1"], "{checks:#?}");
    }
}
