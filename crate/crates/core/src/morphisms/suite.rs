//! The `morphisms` verification suite: printed families against exact computation at seeded samples.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::*;
use crate::report::{Check, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Flip,
    Idempotents,
    Aut,
    Inner,
    Stars,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "flip" => Suite::Flip,
            "idempotents" => Suite::Idempotents,
            "aut" => Suite::Aut,
            "inner" => Suite::Inner,
            "stars" => Suite::Stars,
            _ => return Err(format!("unknown check {s:?} (all, flip, idempotents, aut, inner, stars)")),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Flip => "flip",
            Suite::Idempotents => "idempotents",
            Suite::Aut => "aut",
            Suite::Inner => "inner",
            Suite::Stars => "stars",
        })
    }
}

/// Runs the selected checks; every sampled family draws from its own stream derived from `seed`.
pub fn morphism_report(suite: Suite, samples: usize, seed: u64) -> Result<VerificationReport, MorphismError> {
    let ctx = H1::new()?;
    let mut r = VerificationReport::new("morphisms", 1);
    let stream = |k: u64| Sampler::new(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k));
    let all = suite == Suite::All;
    if all || suite == Suite::Flip {
        r.extend(flip_checks(&ctx)?);
    }
    if all || suite == Suite::Idempotents {
        r.extend(idempotent_checks(&ctx, samples, &mut stream(1))?);
    }
    if all || suite == Suite::Aut {
        r.extend(automorphism_checks(&ctx, samples, &mut stream(2))?);
    }
    if all || suite == Suite::Inner {
        r.extend(inner_checks(&ctx, samples, &mut stream(3))?);
    }
    if all || suite == Suite::Stars {
        r.extend(star_checks(&ctx, samples, &mut stream(4))?);
    }
    Ok(r)
}

/// First basis element on which two maps differ, with both images.
fn map_diff(ctx: &H1, a: &LinearMap, b: &LinearMap) -> Option<String> {
    if a.antilinear != b.antilinear {
        return Some("linear vs antilinear".into());
    }
    (0..ctx.dim()).find_map(|j| {
        let (x, y) = (a.matrix.column(j), b.matrix.column(j));
        (x != y).then(|| format!("{}: {} vs {}", ctx.labels()[j], ctx.format(&x), ctx.format(&y)))
    })
}

fn same_map(ctx: &H1, name: &str, claim: &str, printed: &LinearMap, computed: &LinearMap, printed_claim: bool) -> Check {
    let diff = map_diff(ctx, printed, computed);
    let b = Check::new(name, claim);
    let computed = diff.clone().unwrap_or_else(|| "equal on every basis element".into());
    if printed_claim {
        b.printed_holds(diff.is_none(), "printed images", computed)
    } else {
        b.holds(diff.is_none(), "equal maps", computed)
    }
}

/// Tally of a property over samples; the first counterexample is kept for the report.
struct Tally {
    total: usize,
    ok: usize,
    first_bad: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { total: 0, ok: 0, first_bad: None }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.ok += 1;
        } else if self.first_bad.is_none() {
            self.first_bad = Some(detail());
        }
    }

    fn computed(&self) -> String {
        match &self.first_bad {
            None => format!("{}/{}", self.ok, self.total),
            Some(d) => format!("{}/{}; first counterexample: {d}", self.ok, self.total),
        }
    }

    fn check(&self, name: &str, claim: &str) -> Check {
        Check::new(name, claim).holds(self.ok == self.total, format!("{0}/{0}", self.total), self.computed())
    }

    fn printed_check(&self, name: &str, claim: &str) -> Check {
        Check::new(name, claim).printed_holds(self.ok == self.total, format!("{0}/{0}", self.total), self.computed())
    }
}

fn pbw_map(ctx: &H1, images: &BTreeMap<String, String>, env: &Env) -> Result<LinearMap, MorphismError> {
    let g = |n: &str| -> Result<Vec<Cyclotomic>, MorphismError> {
        let f = images.get(n).ok_or_else(|| MorphismError::Parameters(format!("no image for {n}")))?;
        ctx.generator_vector(f, env)
    };
    Ok(map_from_generators(ctx, &g("K")?, &g("E")?, &g("F")?))
}

fn antipode_map(ctx: &H1) -> LinearMap {
    LinearMap { matrix: ctx.antipode.clone(), antilinear: false }
}

fn flip_checks(ctx: &H1) -> Result<Vec<Check>, MorphismError> {
    let claim = "the flip κ exchanging the two blocks";
    let fx = &ctx.fixture.flip;
    let k = flip(ctx);
    let env = Env::new();
    let mut out = vec![
        same_map(ctx, "κ on generators", claim, &pbw_map(ctx, &fx.generators, &env)?, &k, false),
        same_map(ctx, "κ exchanges e, E, F, C between the blocks", claim, &ctx.map_from_images(&fx.exchanges, &env, false)?, &k, true),
    ];
    let fail = automorphism_failure(ctx, &k);
    out.push(Check::new("κ is an algebra automorphism", claim).holds(
        fail.is_none(),
        "automorphism",
        fail.map_or("automorphism".into(), |e| e.to_string()),
    ));
    out.push(Check::new("κ is an involution", claim).holds(k.is_involution(), "κ² = 1", if k.is_involution() { "κ² = 1" } else { "κ² ≠ 1" }));
    let s = antipode_map(ctx);
    let sinv = LinearMap { matrix: ctx.antipode.inverse()?, antilinear: false };
    out.push(same_map(ctx, "κ S κ = S⁻¹", claim, &sinv, &k.compose(&s).compose(&k), false));
    let hopf = hopf_automorphism_failure(ctx, &k);
    out.push(Check::new("κ is not a Hopf automorphism", claim).holds(
        hopf.is_some(),
        "a coproduct or antipode condition fails",
        hopf.unwrap_or_else(|| "Hopf automorphism".into()),
    ));
    Ok(out)
}

fn rename_idempotent_env(beta: &Cyclotomic, gamma: &Cyclotomic, delta: &Cyclotomic, eta: &Cyclotomic) -> Env {
    [("x0", beta), ("y0", gamma), ("x1", delta), ("y1", eta)].into_iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn idempotent_checks(ctx: &H1, samples: usize, rng: &mut Sampler) -> Result<Vec<Check>, MorphismError> {
    let claim = "idempotents e_{k,β,γ,δ,η}";
    let mut out = idempotent_classify(ctx)?;
    let family_rank = ctx.fixture.idempotents.ranks["family"];
    for k in 0..2 {
        let (mut st, mut pr) = (Tally::new(), Tally::new());
        let (mut st_rank, mut rank) = (Tally::new(), Tally::new());
        for _ in 0..samples {
            let (b, g, d, e) = (rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian());
            let x = idempotent_family(ctx, k, &b, &g, &d, &e)?;
            let sq = ctx.mul(&x, &x);
            st.record(sq == x, || format!("e = {}, e² = {}", ctx.format(&x), ctx.format(&sq)));
            let rk = lambda_rank(ctx, &x);
            st_rank.record(rk == family_rank, || format!("rank {rk} at {}", ctx.format(&x)));
            let p = ctx.vector(&ctx.fixture.idempotents.proof[&format!("e{k}")], &rename_idempotent_env(&b, &g, &d, &e))?;
            let psq = ctx.mul(&p, &p);
            pr.record(psq == p, || format!("e = {}, e² = {}", ctx.format(&p), ctx.format(&psq)));
            let rk = lambda_rank(ctx, &p);
            rank.record(rk == family_rank, || format!("rank {rk} at {}", ctx.format(&p)));
        }
        out.push(st.printed_check(&format!("stated family e{k}: samples square to themselves"), claim));
        out.push(st_rank.printed_check(&format!("stated family e{k}: rank of left multiplication is {family_rank}"), claim));
        out.push(pr.printed_check(&format!("proof family e{k}: samples square to themselves"), claim));
        out.push(rank.printed_check(&format!("proof family e{k}: rank of left multiplication is {family_rank}"), claim));
    }
    Ok(out)
}

fn constraint_matrix(p: &AutomorphismParams) -> Matrix<Cyclotomic> {
    let z = Cyclotomic::zero;
    Matrix::from_rows(vec![
        vec![p.mu0.clone(), p.nu0.clone(), z(), z()],
        vec![p.sigma0.clone(), p.tau0.clone(), z(), z()],
        vec![z(), z(), p.mu1.clone(), p.nu1.clone()],
        vec![z(), z(), p.sigma1.clone(), p.tau1.clone()],
    ])
    .expect("rectangular")
}

fn bilinear_form(rows: &[Vec<String>], env: &Env) -> Result<Matrix<Cyclotomic>, MorphismError> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|c| Ok(parse(c)?.eval_map(env)?)).collect::<Result<Vec<_>, MorphismError>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows)?)
}

/// Zero diagonal 2×2 blocks and G₀₃ + G₁₂ = 0.
fn anti_diagonal_type(g: &Matrix<Cyclotomic>) -> bool {
    let blocks_zero = (0..2).all(|i| (0..2).all(|j| g.get(i, j).is_zero() && g.get(i + 2, j + 2).is_zero()));
    blocks_zero && (g.get(0, 3).clone() + g.get(1, 2)).is_zero()
}

/// The printed shape ((0, B), (Bᵗ-like, 0)) with upper block [[a, b], [−b, d]] and lower block [[a, b], [b, d]].
fn statement_type(g: &Matrix<Cyclotomic>) -> bool {
    let (a, b, d) = (g.get(0, 2), g.get(0, 3), g.get(1, 3));
    anti_diagonal_type(g)
        && g.get(2, 0) == a
        && g.get(2, 1) == b
        && g.get(3, 0) == b
        && g.get(3, 1) == d
}

fn rational(n: i64) -> Cyclotomic {
    Cyclotomic::from_int(n)
}

fn automorphism_checks(ctx: &H1, samples: usize, rng: &mut Sampler) -> Result<Vec<Check>, MorphismError> {
    let claim = "type-I and type-II automorphisms and their constraint system";
    let mut out = Vec::new();
    let kappa = flip(ctx);

    let (mut valid, mut aut, mut derived, mut two) = (Tally::new(), Tally::new(), Tally::new(), Tally::new());
    let (mut iff, mut normal, mut product, mut inverse) = (Tally::new(), Tally::new(), Tally::new(), Tally::new());
    let (mut printed5, mut congruence, mut statement_g) = (Tally::new(), Tally::new(), Tally::new());
    let mut previous: Option<(AutomorphismParams, LinearMap)> = None;
    for _ in 0..samples {
        let p = rng.automorphism_params(Kind::I);
        let v = constraint_violations(ctx, &p, SecondBlock::Determinant)?;
        valid.record(v.is_empty(), || format!("violated {v:?}"));
        let printed = constraint_violations(ctx, &p, SecondBlock::Printed)?;
        printed5.record(printed.is_empty(), || format!("printed reading rejects a sample: violated {printed:?}"));
        let m = automorphism_from_params(ctx, &p);
        aut.record(m.is_ok(), || format!("{:?}", m.as_ref().err()));
        let res = derived_residuals(ctx, &p)?;
        derived.record(res.iter().all(Zero::is_zero), || res.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
        let Ok(m) = m else { continue };

        let q = AutomorphismParams { kind: Kind::II, ..p.clone() };
        let m2 = automorphism_unchecked(ctx, &q)?;
        let k_phi = kappa.compose(&m);
        two.record(map_diff(ctx, &m2, &k_phi).is_none(), || map_diff(ctx, &m2, &k_phi).unwrap_or_default());

        // flip-conjugate parameters
        let env = p.env();
        let mut conj = Env::new();
        for (k, f) in &ctx.fixture.conjugation_by_flip {
            conj.insert(k.clone(), parse(f)?.eval_map(&env)?);
        }
        let conj_map = automorphism_unchecked(ctx, &AutomorphismParams::from_env(Kind::I, &conj))?;
        let kmk = kappa.compose(&m).compose(&kappa);
        normal.record(map_diff(ctx, &conj_map, &kmk).is_none(), || map_diff(ctx, &conj_map, &kmk).unwrap_or_default());

        // a perturbation of the sample: constraints hold exactly when the map is an automorphism
        let mut bad = p.clone();
        match rng.below(4) {
            0 => bad.nu1 = bad.nu1.clone() + rational(1),
            1 => bad.sigma1 = bad.sigma1.clone() + rational(1),
            2 => bad.lambda = bad.lambda.clone() + rational(1),
            _ => bad.beta = bad.beta.clone() + rational(1),
        }
        for cand in [&p, &bad] {
            let v = constraint_violations(ctx, cand, SecondBlock::Determinant)?;
            let ok = automorphism_from_params(ctx, cand).is_ok();
            iff.record(v.is_empty() == ok, || format!("violations {v:?}, automorphism {ok}"));
        }

        if let Some((pp, pm)) = &previous {
            let c = m.compose(pm);
            let cp = type_one_params(ctx, &c);
            let v = constraint_violations(ctx, &cp, SecondBlock::Determinant)?;
            let rebuilt = automorphism_unchecked(ctx, &cp)?;
            product.record(v.is_empty() && map_diff(ctx, &rebuilt, &c).is_none(), || {
                format!("product of {:?} and {:?}: violations {v:?}", p.lambda.to_string(), pp.lambda.to_string())
            });
        }
        let inv = LinearMap { matrix: m.matrix.inverse()?, antilinear: false };
        let ip = type_one_params(ctx, &inv);
        let v = constraint_violations(ctx, &ip, SecondBlock::Determinant)?;
        let rebuilt = automorphism_unchecked(ctx, &ip)?;
        inverse.record(v.is_empty() && map_diff(ctx, &rebuilt, &inv).is_none(), || format!("inverse: violations {v:?}"));

        let mm = constraint_matrix(&p);
        let form_env: Env = [("a", rng.gaussian()), ("b", rng.gaussian()), ("d", rng.gaussian())]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        let gp = bilinear_form(&ctx.fixture.congruence.proof_g, &form_env)?;
        let tp = mm.transpose().mul(&gp)?.mul(&mm)?;
        congruence.record(anti_diagonal_type(&tp), || format!("MᵗGM = {:?}", tp.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()));
        let gs = bilinear_form(&ctx.fixture.congruence.statement_g, &form_env)?;
        let ts = mm.transpose().mul(&gs)?.mul(&mm)?;
        statement_g.record(statement_type(&ts), || "statement form leaves its shape".into());
        previous = Some((p, m));
    }
    out.push(valid.check("sampled solutions satisfy the equalities and the determinant conditions", claim));
    out.push(aut.check("sampled solutions give algebra automorphisms", claim));
    out.push(derived.check("the two derived relations hold on samples", claim));
    out.push(printed5.printed_check("printed second nondegeneracy condition μ1τ1 − ν0σ0 ≠ 0 accepts every sample", claim));
    out.push(iff.check("constraints hold exactly when the printed map is an automorphism", claim));
    out.push(two.printed_check("printed type II equals κ∘φ at the same parameters", claim));
    out.push(normal.printed_check("κφκ is the type-I map at the flip-conjugated parameters", claim));
    out.push(product.check("type I is closed under composition", claim));
    out.push(inverse.check("type I is closed under inversion", claim));
    out.push(congruence.check("block matrices M preserve forms with vanishing anti-diagonal sum", claim));
    out.push(statement_g.printed_check("MᵗGM keeps the printed shape of G", claim));

    out.extend(violation_checks(ctx, rng)?);

    // a genuine automorphism excluded by the printed fifth condition
    let mut env = Env::new();
    for (k, v) in [("mu0", 1), ("tau0", 1), ("nu0", 2), ("sigma0", 2), ("mu1", 2), ("tau1", 2), ("nu1", -4), ("sigma1", -4), ("lambda", -6)] {
        env.insert(k.into(), rational(v));
    }
    let ex = AutomorphismParams::from_env(Kind::I, &env);
    let ok = automorphism_from_params(ctx, &ex).is_ok();
    let printed = constraint_violations(ctx, &ex, SecondBlock::Printed)?;
    out.push(Check::new("μ0=τ0=1, ν0=σ0=2, t=2 is an automorphism", claim).holds(ok, "automorphism", if ok { "automorphism" } else { "not an automorphism" }));
    out.push(Check::new("printed constraints admit μ0=τ0=1, ν0=σ0=2, t=2", claim).against_printed(String::new(), printed.join(", ")));

    out.extend(antipode_checks(ctx, rng)?);

    let id = automorphism_from_params(ctx, &AutomorphismParams::identity(Kind::I))?;
    out.push(Check::new("identity member of type I is a Hopf automorphism", claim).holds(
        hopf_automorphism_check(ctx, &id),
        "Hopf",
        hopf_automorphism_failure(ctx, &id).unwrap_or_else(|| "Hopf".into()),
    ));
    let fl = automorphism_unchecked(ctx, &AutomorphismParams { kind: Kind::II, ..AutomorphismParams::identity(Kind::I) })?;
    let f = hopf_automorphism_failure(ctx, &fl);
    out.push(Check::new("type II members do not preserve the coproduct", claim).holds(
        f.is_some(),
        "Δ fails",
        f.unwrap_or_else(|| "Hopf".into()),
    ));
    Ok(out)
}

/// One deliberate violation per constraint item; each must be rejected.
fn violation_checks(ctx: &H1, rng: &mut Sampler) -> Result<Vec<Check>, MorphismError> {
    let claim = "necessity of each constraint";
    let mut out = Vec::new();
    let first = loop {
        let v = [rng.nonzero_gaussian(), rng.gaussian(), rng.gaussian(), rng.nonzero_gaussian()];
        if !(v[0].clone() * &v[3] - v[1].clone() * &v[2]).is_zero() && !v[1].is_zero() && !v[2].is_zero() {
            break v;
        }
    };
    let d0 = first[0].clone() * &first[3] - first[1].clone() * &first[2];
    let s = rng.nonzero_gaussian();
    let t = loop {
        let t = rng.nonzero_gaussian();
        if t != s {
            break t;
        }
    };
    let mut cases: Vec<(&str, AutomorphismParams)> = Vec::new();
    let base = rng.params_from_blocks(Kind::I, first.clone(), &t, &t);
    let mut p = base.clone();
    p.nu1 = p.nu1.clone() + rational(1);
    cases.push(("ν1 perturbed", p));
    let mut p = base.clone();
    p.sigma1 = p.sigma1.clone() + rational(1);
    cases.push(("σ1 perturbed", p));
    cases.push(("second block scaled by s ≠ t, λ = tD0", rng.params_from_blocks(Kind::I, first.clone(), &s, &t)));
    let mut p = rng.params_from_blocks(Kind::I, first.clone(), &s, &t);
    p.lambda = s.clone() * &d0;
    cases.push(("second block scaled by s ≠ t, λ = sD0", p));
    let k = rng.nonzero_gaussian();
    let singular = [first[0].clone(), first[1].clone(), k.clone() * &first[0], k * &first[1]];
    cases.push(("singular first block, λ = 0", rng.params_from_blocks(Kind::I, singular, &t, &t)));
    cases.push(("zero second block", rng.params_from_blocks(Kind::I, first.clone(), &Cyclotomic::zero(), &Cyclotomic::zero())));
    let mut p = base;
    p.lambda = Cyclotomic::zero();
    cases.push(("λ = 0", p));
    for (name, p) in cases {
        let v = constraint_violations(ctx, &p, SecondBlock::Determinant)?;
        let res = automorphism_from_params(ctx, &p);
        out.push(Check::new(format!("{name}: rejected"), claim).holds(
            !v.is_empty() && res.is_err(),
            "a violated item and no automorphism",
            format!("violated [{}]; {}", v.join(", "), res.err().map_or("automorphism".into(), |e| e.to_string())),
        ));
    }
    Ok(out)
}

fn antipode_checks(ctx: &H1, rng: &mut Sampler) -> Result<Vec<Check>, MorphismError> {
    let claim = "automorphisms commuting with the antipode";
    let env = Env::new();
    let mut out = vec![same_map(ctx, "antipode table", claim, &ctx.map_from_images(&ctx.fixture.antipode, &env, false)?, &antipode_map(ctx), true)];
    let sc = &ctx.fixture.s_commuting;
    let (mut one_aut, mut one_gen, mut two_aut, mut two_gen, mut two_table) =
        (Tally::new(), Tally::new(), Tally::new(), Tally::new(), Tally::new());
    for _ in 0..8 {
        let (mu, nu, sigma, tau) = loop {
            let v = (rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian());
            if !(v.0.clone() * &v.3 - v.2.clone() * &v.1).is_zero() {
                break v;
            }
        };
        let env: Env = [("mu", &mu), ("nu", &nu), ("sigma", &sigma), ("tau", &tau)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        let one = s_commuting_family(ctx, Kind::I, &mu, &nu, &sigma, &tau);
        one_aut.record(one.as_ref().is_ok_and(|m| commutes_with_antipode(ctx, m)), || format!("{:?}", one.as_ref().err()));
        let g1 = pbw_map(ctx, &sc.one_generators, &env)?;
        let printed1 = ctx.map_from_images(&sc.one, &env, false)?;
        one_gen.record(map_diff(ctx, &printed1, &g1).is_none(), || map_diff(ctx, &printed1, &g1).unwrap_or_default());
        let two = s_commuting_family(ctx, Kind::II, &mu, &nu, &sigma, &tau);
        two_table.record(two.is_ok(), || two.as_ref().err().map(|e| e.to_string()).unwrap_or_default());
        let g2 = pbw_map(ctx, &sc.two_generators, &env)?;
        let f = automorphism_failure(ctx, &g2);
        two_aut.record(f.is_none() && commutes_with_antipode(ctx, &g2), || format!("{f:?}"));
        let printed2 = ctx.map_from_images(&sc.two, &env, false)?;
        two_gen.record(map_diff(ctx, &printed2, &g2).is_none(), || map_diff(ctx, &printed2, &g2).unwrap_or_default());
    }
    out.push(one_aut.check("type-I table: automorphism commuting with S", claim));
    out.push(one_gen.printed_check("type-I generator action matches the type-I table", claim));
    out.push(two_table.printed_check("type-II table: automorphism", claim));
    out.push(two_aut.check("type-II generator action: automorphism commuting with S", claim));
    out.push(two_gen.printed_check("type-II generator action matches the type-II table", claim));
    // μ = τ = 1, ν = σ = 0 is the identity, yet μν − στ vanishes there
    let (o, z) = (rational(1), Cyclotomic::zero());
    let nd: Env = [("mu", &o), ("nu", &z), ("sigma", &z), ("tau", &o)].into_iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    let printed = parse(&sc.nondegeneracy)?.eval_map(&nd)?;
    out.push(Check::new("printed nondegeneracy admits the identity", claim).printed_holds(
        !printed.is_zero(),
        format!("{} ≠ 0", sc.nondegeneracy),
        format!("{} = {printed} at μ = τ = 1, ν = σ = 0", sc.nondegeneracy),
    ));
    Ok(out)
}

fn inner_macros(ctx: &H1) -> Result<BTreeMap<String, Laurent>, MorphismError> {
    ctx.fixture.inner.macros.iter().map(|(k, f)| Ok((k.clone(), parse(f)?))).collect()
}

fn printed_ad_matrix(ctx: &H1, p: &InvertibleParams) -> Result<LinearMap, MorphismError> {
    let fx = &ctx.fixture.inner;
    let macros = inner_macros(ctx)?;
    let env = p.env();
    let order = &ctx.fixture.basis;
    let mut m = Matrix::zeros(ctx.dim(), ctx.dim());
    for (r, row) in fx.ad_matrix.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            m.set(ctx.index(&order[r]), ctx.index(&order[c]), parse_with(cell, &macros)?.eval_map(&env)?);
        }
    }
    Ok(LinearMap { matrix: m, antilinear: false })
}

fn inner_checks(ctx: &H1, samples: usize, rng: &mut Sampler) -> Result<Vec<Check>, MorphismError> {
    let claim = "inner automorphisms ad(h)";
    let mut out = inner_symbolic_checks(ctx)?;
    let macros = inner_macros(ctx)?;
    let (mut matrix, mut aut, mut printed_inv) = (Tally::new(), Tally::new(), Tally::new());
    for _ in 0..samples {
        let p = rng.invertible_params();
        let ad = inner_automorphism(ctx, &p)?;
        let printed = printed_ad_matrix(ctx, &p)?;
        matrix.record(map_diff(ctx, &printed, &ad).is_none(), || map_diff(ctx, &printed, &ad).unwrap_or_default());
        let f = automorphism_failure(ctx, &ad);
        let tp = type_one_params(ctx, &ad);
        let v = constraint_violations(ctx, &tp, SecondBlock::Determinant)?;
        aut.record(f.is_none() && v.is_empty(), || format!("{f:?}, violated {v:?}"));
        let h = inner_element(ctx, &p)?;
        let hinv = ctx.vector_with(&ctx.fixture.inner.inverse, &p.env(), &macros)?;
        let prod = ctx.mul(&h, &hinv);
        printed_inv.record(prod == ctx.unit(), || format!("h·h⁻¹ = {}", ctx.format(&prod)));
    }
    out.push(matrix.printed_check("printed ad(h) matrix at samples", claim));
    out.push(aut.check("ad(h) at samples is a type-I automorphism", claim));
    out.push(printed_inv.printed_check("printed inverse at samples", claim));
    let z = InvertibleParams { a1: Cyclotomic::zero(), ..InvertibleParams::one() };
    let e = inner_automorphism(ctx, &z);
    out.push(Check::new("a1 = 0 is rejected", claim).holds(
        e == Err(MorphismError::NotInvertible),
        "not invertible",
        format!("{:?}", e.err()),
    ));
    Ok(out)
}

fn quarter(n: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(4))
}

fn star_checks(ctx: &H1, samples: usize, rng: &mut Sampler) -> Result<Vec<Check>, MorphismError> {
    let claim = "Hopf *-operations of H1";
    let env = Env::new();
    let i = base_star(ctx);
    let mut out = vec![same_map(ctx, "base star table", claim, &ctx.map_from_images(&ctx.fixture.base_star, &env, true)?, &i, true)];
    let g = |w: &str| ctx.generator_vector(w, &env);
    let fixed = star_from_generators(ctx, &g("K")?, &g("E")?, &g("F")?);
    out.push(same_map(ctx, "base star fixes K, E, F", claim, &fixed, &i, false));
    let s = antipode_map(ctx);
    let hopf_star = |x: &LinearMap| hopf_star_failure(ctx, x).is_none() && s.compose(x).compose(&s).compose(x).matrix == Matrix::identity(ctx.dim());
    out.push(Check::new("base star is a Hopf *-operation", claim).holds(hopf_star(&i), "Hopf *", hopf_star_failure(ctx, &i).unwrap_or_else(|| "Hopf *".into())));

    let (mut one, mut one_hopf, mut quad, mut two, mut two_hopf, mut comp) =
        (Tally::new(), Tally::new(), Tally::new(), Tally::new(), Tally::new(), Tally::new());
    let mut prev: Option<LinearMap> = None;
    for _ in 0..samples {
        let p = rng.star_params(Kind::I);
        let q = p.quadric(ctx)?;
        quad.record(q.is_zero(), || format!("quadric {q}"));
        let st = star_family(ctx, &p);
        one.record(st.is_ok(), || format!("{:?}", st.as_ref().err()));
        let Ok(st) = st else { continue };
        one_hopf.record(hopf_star(&st), || hopf_star_failure(ctx, &st).unwrap_or_else(|| "(S∘*)² ≠ 1".into()));
        if let Some(pv) = &prev {
            let c = st.compose(pv);
            let f = automorphism_failure(ctx, &c);
            comp.record(f.is_none() && commutes_with_antipode(ctx, &c), || format!("{f:?}"));
        }
        prev = Some(st);
        let p2 = rng.star_params(Kind::II);
        let st2 = star_family(ctx, &p2);
        two.record(st2.is_ok(), || format!("{:?}", st2.as_ref().err()));
        if let Ok(st2) = st2 {
            two_hopf.record(hopf_star_failure(ctx, &st2).is_some(), || "coproduct preserved".into());
        }
    }
    out.push(quad.check("type-I samples lie on the quadric", claim));
    out.push(one.printed_check("type-I samples are involutive anti-automorphisms", claim));
    out.push(one_hopf.printed_check("type-I samples are Hopf *-operations", claim));
    out.push(comp.check("product of two type-I stars is an automorphism commuting with S", claim));
    out.push(two.printed_check("type-II samples are involutive anti-automorphisms", claim));
    out.push(two_hopf.check("type-II samples do not preserve the coproduct", claim));

    let ex = &ctx.fixture.stars.example;
    let mut coeffs = Env::new();
    coeffs.insert("i".into(), Cyclotomic::i());
    for k in ["alpha", "beta", "gamma", "delta", "lambda"] {
        let v = parse(&ex.parameters[k])?.eval_map(&coeffs)?;
        coeffs.insert(k.into(), v);
    }
    let st = star_from_coefficients(ctx, Kind::I, &coeffs);
    out.push(Check::new("example star is an involutive anti-automorphism", claim).holds(
        st.is_ok(),
        "valid",
        st.as_ref().err().map_or("valid".into(), |e| e.to_string()),
    ));
    if let Ok(st) = &st {
        let mut genv = Env::new();
        genv.insert("i".into(), Cyclotomic::i());
        out.push(same_map(ctx, "example star images", claim, &ctx.map_from_images(&ex.images, &genv, true)?, st, true));
        let gv = |n: &str| ctx.generator_vector(&ex.generators[n], &genv);
        let from_gens = star_from_generators(ctx, &gv("K")?, &gv("E")?, &gv("F")?);
        out.push(same_map(ctx, "example star on generators", claim, &from_gens, st, true));
        out.push(Check::new("example star is a Hopf *-operation", claim).holds(hopf_star(st), "Hopf *", hopf_star_failure(ctx, st).unwrap_or_else(|| "Hopf *".into())));
    }
    // |α| = 0, |β| = |γ| = 1
    let on_printed = StarParams {
        kind: Kind::I,
        a: BigRational::zero(),
        b: BigRational::one(),
        c: BigRational::one(),
        phase_order: 4,
        phi: 0,
        psi: 0,
        sign_beta: 1,
        sign_gamma: 1,
        lambda: None,
    }
    .quadric(ctx)?;
    out.push(Check::new("example star lies on the printed type-I quadric", claim).against_printed(
        "0".to_string(),
        on_printed.to_string(),
    ));

    // equal magnitudes on a² − bc = 1 with opposite signs of β and γ
    let mixed = StarParams {
        kind: Kind::I,
        a: quarter(5),
        b: quarter(3),
        c: quarter(3),
        phase_order: 4,
        phi: 0,
        psi: 0,
        sign_beta: 1,
        sign_gamma: -1,
        lambda: None,
    };
    let r = star_family(ctx, &mixed);
    out.push(Check::new("opposite signs on the printed quadric are rejected", claim).holds(
        r.is_err(),
        "rejected",
        r.err().map_or("accepted".into(), |e| e.to_string()),
    ));
    let wrong = StarParams { lambda: Some(rational(2)), sign_gamma: 1, ..mixed };
    let r = star_family(ctx, &wrong);
    out.push(Check::new("λ = 2 is rejected", claim).holds(r.is_err(), "rejected", r.err().map_or("accepted".into(), |e| e.to_string())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn small_run_has_no_failures() {
        let r = morphism_report(Suite::All, 6, 7).unwrap();
        let bad: Vec<_> = r.checks.iter().filter(|c| c.status == Status::Fail).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn suite_names_round_trip() {
        for s in ["all", "flip", "idempotents", "aut", "inner", "stars"] {
            assert_eq!(s.parse::<Suite>().unwrap().to_string(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
