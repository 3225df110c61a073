//! Idempotents of H₁: the printed families and a symbolic solution of e² = e.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::inner::{sub_vec, Symbolic};
use super::{parse, split_linear, Env, Laurent, MorphismError, H1};
use crate::report::Check;
use crate::scalars::Cyclotomic;

/// Printed e_{k,β,γ,δ,η} for k ∈ {0, 1}.
pub fn idempotent_family(
    ctx: &H1,
    k: usize,
    beta: &Cyclotomic,
    gamma: &Cyclotomic,
    delta: &Cyclotomic,
    eta: &Cyclotomic,
) -> Result<Vec<Cyclotomic>, MorphismError> {
    let f = ctx.fixture.idempotents.statement.get(&format!("e{k}")).ok_or_else(|| MorphismError::Parameters(format!("no family e{k}")))?;
    let env: Env = [("beta", beta), ("gamma", gamma), ("delta", delta), ("eta", eta)]
        .into_iter()
        .map(|(n, v)| (n.to_string(), v.clone()))
        .collect();
    ctx.vector(f, &env)
}

/// Rank of left multiplication by v.
pub fn lambda_rank(ctx: &H1, v: &[Cyclotomic]) -> usize {
    ctx.alg.left_mul_matrix(v).expect("dimension").rank()
}

/// Solves a system in which every equation can be used, one at a time, to express one unknown
/// (appearing linearly with a constant coefficient) through the others. Returns the solved
/// unknowns and the free ones, or the equations left when no step applies.
fn solve_triangular(eqs: Vec<Laurent>, unknowns: &[&str]) -> Result<(BTreeMap<String, Laurent>, Vec<String>), Vec<Laurent>> {
    let mut eqs: Vec<Laurent> = eqs.into_iter().filter(|e| !e.is_zero()).collect();
    let mut solved: BTreeMap<String, Laurent> = BTreeMap::new();
    while !eqs.is_empty() {
        let step = eqs.iter().enumerate().find_map(|(k, e)| {
            unknowns.iter().filter(|u| !solved.contains_key(**u)).find_map(|u| {
                let c = e.coefficient(u, 1).as_constant()?;
                if c.is_zero() {
                    return None;
                }
                let lin = Laurent::constant(c.clone()) * Laurent::var(u);
                let rest = e - &lin;
                if rest.vars().contains(*u) {
                    return None;
                }
                Some((k, u.to_string(), -rest * Laurent::constant(c.recip())))
            })
        });
        let Some((k, u, value)) = step else { return Err(eqs) };
        eqs.remove(k);
        eqs = eqs.into_iter().map(|e| e.subst(&u, &value).expect("polynomial")).filter(|e| !e.is_zero()).collect();
        for v in solved.values_mut() {
            *v = v.subst(&u, &value).expect("polynomial");
        }
        solved.insert(u, value);
    }
    let free = unknowns.iter().filter(|u| !solved.contains_key(**u)).map(|u| u.to_string()).collect();
    Ok((solved, free))
}

const GENERIC: &str = "a0*e0 + a1*e1 + x0*E0 + y0*F0 + x1*E1 + y1*F1 + v0*C0 + v1*C1";
const RADICAL_UNKNOWNS: [&str; 6] = ["x0", "y0", "x1", "y1", "v0", "v1"];

/// Solves e² = e for a generic element, split by its semisimple part a₀e₀ + a₁e₁.
pub fn idempotent_classify(ctx: &H1) -> Result<Vec<Check>, MorphismError> {
    let claim = "classification of the idempotents of H1";
    let s = Symbolic::new(ctx)?;
    let e = s.vector(GENERIC)?;
    let r = sub_vec(&s.mul(&e, &e), &e);
    let mut out = Vec::new();
    let (i0, i1) = (ctx.index("e0"), ctx.index("e1"));
    let ss = r[i0] == parse("a0^2 - a0")? && r[i1] == parse("a1^2 - a1")?;
    out.push(Check::new("semisimple part: a0² = a0, a1² = a1", claim).holds(
        ss,
        "a0^2 - a0, a1^2 - a1",
        format!("{}, {}", r[i0], r[i1]),
    ));

    let rename: BTreeMap<String, Laurent> = [("beta", "x0"), ("gamma", "y0"), ("delta", "x1"), ("eta", "y1")]
        .into_iter()
        .map(|(a, b)| (a.to_string(), Laurent::var(b)))
        .collect();
    let family = |f: &str| -> Result<Vec<Laurent>, MorphismError> {
        let p = rename.iter().try_fold(parse(f)?, |acc, (k, v)| acc.subst(k, v)).expect("polynomial");
        Ok(split_linear(&p, ctx.labels())?)
    };
    let fx = &ctx.fixture.idempotents;
    for (a0, a1) in [(0, 0), (1, 1), (1, 0), (0, 1)] {
        let point = |p: &Laurent| p.subst("a0", &Laurent::int(a0)).and_then(|q| q.subst("a1", &Laurent::int(a1))).expect("polynomial");
        let eqs: Vec<Laurent> = r.iter().map(point).collect();
        let case = format!("semisimple part {}", match (a0, a1) {
            (0, 0) => "0",
            (1, 1) => "e0 + e1",
            (1, 0) => "e0",
            _ => "e1",
        });
        let (solved, mut free) = match solve_triangular(eqs, &RADICAL_UNKNOWNS) {
            Ok(x) => x,
            Err(left) => {
                let left: Vec<String> = left.iter().map(|x| x.to_string()).collect();
                out.push(Check::new(format!("{case}: solved"), claim).holds(false, "triangular system", left.join("; ")));
                continue;
            }
        };
        free.sort();
        let sol: Vec<Laurent> = e
            .iter()
            .map(|c| solved.iter().fold(point(c), |acc, (u, v)| acc.subst(u, v).expect("polynomial")))
            .collect();
        let shown = s.format(&sol);
        match (a0, a1) {
            (0, 0) => out.push(Check::new(format!("{case}: only 0"), claim).printed_holds(sol.iter().all(Laurent::is_zero), "0", shown)),
            (1, 1) => out.push(Check::new(format!("{case}: only 1"), claim).printed_holds(sol == s.unit(), "e0 + e1", shown)),
            _ => {
                let k = if a0 == 1 { "e0" } else { "e1" };
                out.push(Check::new(format!("{case}: free parameters"), claim).against_printed(
                    "x0, x1, y0, y1".to_string(),
                    free.join(", "),
                ));
                out.push(
                    Check::new(format!("{case}: stated family e_{{{},β,γ,δ,η}}", &k[1..]), claim).printed_holds(
                        family(&fx.statement[k])? == sol,
                        fx.statement[k].clone(),
                        shown.clone(),
                    ),
                );
                out.push(Check::new(format!("{case}: family from the proof"), claim).printed_holds(
                    family(&fx.proof[k])? == sol,
                    fx.proof[k].clone(),
                    shown,
                ));
            }
        }
    }

    let zero = vec![Cyclotomic::from_int(0); ctx.dim()];
    out.push(Check::new("rank of 0", claim).against_printed(fx.ranks["0"], lambda_rank(ctx, &zero)));
    out.push(Check::new("rank of 1", claim).against_printed(fx.ranks["1"], lambda_rank(ctx, &ctx.unit())));
    let x = ctx.vector("e0 + C0", &Env::new())?;
    let sq = ctx.mul(&x, &x);
    out.push(Check::new("e0 + C0 is not idempotent", claim).holds(sq != x, "(e0 + C0)² ≠ e0 + C0", ctx.format(&sq)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn classification() {
        let c = H1::new().unwrap();
        let checks = idempotent_classify(&c).unwrap();
        assert!(checks.iter().all(|k| k.status != Status::Fail), "{checks:#?}");
        let z = Cyclotomic::from_int(0);
        let o = Cyclotomic::from_int(1);
        let e0 = idempotent_family(&c, 0, &z, &z, &z, &z).unwrap();
        assert_eq!(e0, c.alg.basis_vector(c.index("e0")));
        assert_eq!(lambda_rank(&c, &e0), 4);
        let x = idempotent_family(&c, 0, &o, &z, &z, &o).unwrap();
        assert_eq!(c.format(&x), c.format(&c.vector("e0 + E0 + F1 + C1 - C0", &Env::new()).unwrap()));
    }
}
