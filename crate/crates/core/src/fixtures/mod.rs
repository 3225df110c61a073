//! Printed tables and formulas, transcribed once into JSON and pinned by SHA-256.
//!
//! Cells are small expressions: terms joined by `+`/`-`, factors joined by `*`.
//! A factor is a rational (`3`, `1/4`, `i/4`), `i`, a power `i^(..)`, `(-i)^(..)`,
//! `(-1)^(..)`, a delta `d(a,b)`, a label (`E1`, `E{m-k}`) or a tensor `A⊗B`.
//! Index expressions are linear in the template variables and reduced mod the
//! declared modulus.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::report::Check;
use crate::scalars::Cyclotomic;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("cannot parse {0:?}: {1}")]
    Parse(String, String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("fixture {0}: {1}")]
    Json(String, String),
    #[error("term {0} has {1} tensor factors, expected {2}")]
    Arity(String, usize, usize),
}

pub const H1_TABLE: &str = include_str!("data/h1_table.json");
pub const H2_EVEN_TABLE: &str = include_str!("data/h2_even_table.json");
pub const H2_ODD_TABLE: &str = include_str!("data/h2_odd_table.json");
pub const H1_HOPF: &str = include_str!("data/h1_hopf.json");
pub const H2_HOPF: &str = include_str!("data/h2_hopf.json");
pub const H1_ADJOINT: &str = include_str!("data/h1_adjoint.json");
pub const H2_ADJOINT: &str = include_str!("data/h2_adjoint.json");
pub const H2_ODD_BLOCK: &str = include_str!("data/h2_odd_block.json");
pub const GRASSMANN: &str = include_str!("data/grassmann.json");
pub const MORPHISMS: &str = include_str!("data/morphisms.json");

/// (name, contents, SHA-256 recorded at transcription time).
pub fn manifest() -> [(&'static str, &'static str, &'static str); 10] {
    [
        ("h1_table", H1_TABLE, "e2141a4fb6a86e011fb212a46bbc9faf4a968ba246bdbbf9ec757caddc7183d4"),
        ("h2_even_table", H2_EVEN_TABLE, "1f9edf89b141e8514a714c36d24af94fcc5847973c9264c827132845be38dac1"),
        ("h2_odd_table", H2_ODD_TABLE, "b873ce076f0d9f4938f9a6f842ad6ca4954593b7f9f5f0212d653e249faf073d"),
        ("h1_hopf", H1_HOPF, "d4db8464adc470051b322e18dc95e314d44a223cd57e1bda88326e85d3089c09"),
        ("h2_hopf", H2_HOPF, "27dfa03a196dd0a3bb112e13015ac0b23331aba01ccc1c6e65814edf13e2cec1"),
        ("h1_adjoint", H1_ADJOINT, "cb0041ad97c388e17499e77252808dc5460d718ed8551d8fc16b4c2b3b7cf94e"),
        ("h2_adjoint", H2_ADJOINT, "222000f3ca1e546907bdb42f967488bb27b0e722960f13c93c77ea7aa3b10d5f"),
        ("h2_odd_block", H2_ODD_BLOCK, "e2f7b045c96057d9ac8cf5acd81de1d445d5460c5e2c30c0a706ba02a245e2ac"),
        ("grassmann", GRASSMANN, "7a9a01b457e1ee14dbb967a9a0ec752e2a822d457e4fe4235d99d28d4f4004b5"),
        ("morphisms", MORPHISMS, "4bbee3217c0ccd2ec90a03ea5654a274d154882fd30cc4b33fe55c275c06f089"),
    ]
}

pub fn sha256_hex(s: &str) -> String {
    let digest = Sha256::digest(s.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// One check per fixture file comparing its digest against the recorded one.
pub fn checksum_checks() -> Vec<Check> {
    manifest()
        .iter()
        .map(|(name, body, digest)| {
            Check::new(format!("fixture {name} checksum"), "transcription of the printed tables")
                .compare(digest.to_string(), sha256_hex(body))
        })
        .collect()
}

fn json<T: for<'de> Deserialize<'de>>(name: &str, body: &str) -> T {
    serde_json::from_str(body).unwrap_or_else(|e| panic!("embedded fixture {name} is malformed: {e}"))
}

#[derive(Clone, Debug, Deserialize)]
pub struct TableFixture {
    pub basis: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct H1Hopf {
    pub basis: Vec<String>,
    pub coproduct: BTreeMap<String, String>,
    pub antipode: BTreeMap<String, String>,
    pub counit: BTreeMap<String, String>,
    pub antipode_eigenspaces: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SumTemplate {
    pub prefactor: String,
    pub summand: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct H2Hopf {
    pub index_modulus: i64,
    pub coproduct: BTreeMap<String, SumTemplate>,
    pub antipode: BTreeMap<String, String>,
    pub counit: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct H1Adjoint {
    pub basis: Vec<String>,
    pub mu: Vec<Vec<String>>,
    pub trace: Vec<String>,
    pub gram_scale: String,
    pub gram: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct H2Adjoint {
    pub rows: Vec<String>,
    pub even_columns: Vec<String>,
    pub even: Vec<Vec<String>>,
    pub odd_columns: Vec<String>,
    pub odd: Vec<Vec<String>>,
    pub generic: BTreeMap<String, String>,
    pub trace_basis: Vec<String>,
    pub trace: Vec<String>,
    pub gram_scale: String,
    pub gram_nonzero: BTreeMap<String, String>,
    pub gram_null_space_dim: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct MatrixModel {
    #[serde(rename = "K")]
    pub k: Vec<Vec<String>>,
    #[serde(rename = "E")]
    pub e: Vec<Vec<String>>,
    #[serde(rename = "F")]
    pub f: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct OddBlock {
    pub basis: Vec<String>,
    pub trace_lambda: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub positive: Vec<String>,
    pub null: Vec<String>,
    pub negative: Vec<String>,
    pub signature: [usize; 3],
    pub casimir_action: Vec<String>,
    pub casimir_eigenspaces: BTreeMap<String, Vec<String>>,
    pub matrix_model: MatrixModel,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Grassmann {
    pub h1: BTreeMap<String, String>,
    pub h2_even: BTreeMap<String, String>,
}

type Images = BTreeMap<String, String>;

#[derive(Clone, Debug, Deserialize)]
pub struct Flip {
    pub generators: Images,
    pub exchanges: Images,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Idempotents {
    pub statement: Images,
    pub proof: Images,
    pub ranks: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Constraints {
    pub equalities: Images,
    pub nonzero: Images,
    pub derived: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Congruence {
    pub statement_g: Vec<Vec<String>>,
    pub proof_g: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Inner {
    pub macros: Images,
    pub h: String,
    pub inverse: String,
    pub ad_matrix: Vec<Vec<String>>,
    pub parameters: Images,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SCommuting {
    pub nondegeneracy: String,
    pub one: Images,
    pub one_generators: Images,
    pub two: Images,
    pub two_generators: Images,
}

#[derive(Clone, Debug, Deserialize)]
pub struct StarExample {
    pub parameters: Images,
    pub images: Images,
    pub generators: Images,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Stars {
    pub one: Images,
    pub one_parameters: Images,
    pub one_quadric: String,
    pub two: Images,
    pub two_parameters: Images,
    pub two_quadric: String,
    pub example: StarExample,
}

/// Printed formulas for the flip, idempotents, automorphism families and *-structures of H₁.
#[derive(Clone, Debug, Deserialize)]
pub struct Morphisms {
    pub basis: Vec<String>,
    pub flip: Flip,
    pub idempotents: Idempotents,
    pub type_one: Images,
    pub type_two: Images,
    pub constraints: Constraints,
    pub conjugation_by_flip: Images,
    pub congruence: Congruence,
    pub inner: Inner,
    pub antipode: Images,
    pub s_commuting: SCommuting,
    pub base_star: Images,
    pub stars: Stars,
}

pub fn morphisms() -> Morphisms {
    json("morphisms", MORPHISMS)
}

pub fn h1_table() -> TableFixture {
    json("h1_table", H1_TABLE)
}

pub fn h2_even_table() -> TableFixture {
    json("h2_even_table", H2_EVEN_TABLE)
}

pub fn h2_odd_table() -> TableFixture {
    json("h2_odd_table", H2_ODD_TABLE)
}

pub fn h1_hopf() -> H1Hopf {
    json("h1_hopf", H1_HOPF)
}

pub fn h2_hopf() -> H2Hopf {
    json("h2_hopf", H2_HOPF)
}

pub fn h1_adjoint() -> H1Adjoint {
    json("h1_adjoint", H1_ADJOINT)
}

pub fn h2_adjoint() -> H2Adjoint {
    json("h2_adjoint", H2_ADJOINT)
}

pub fn h2_odd_block() -> OddBlock {
    json("h2_odd_block", H2_ODD_BLOCK)
}

pub fn grassmann() -> Grassmann {
    json("grassmann", GRASSMANN)
}

/// Values of template variables and the modulus used for indices and exponents.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub modulus: i64,
    pub vars: Vec<(char, i64)>,
}

impl Env {
    pub fn plain() -> Self {
        Env { modulus: 4, vars: Vec::new() }
    }

    pub fn with(modulus: i64, vars: &[(char, i64)]) -> Self {
        Env { modulus, vars: vars.to_vec() }
    }

    fn var(&self, c: char) -> Option<i64> {
        self.vars.iter().find(|(v, _)| *v == c).map(|(_, x)| *x)
    }
}

/// A coefficient times a tensor of labels (empty for a pure scalar).
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: Cyclotomic,
    pub labels: Vec<String>,
}

fn err(s: &str, msg: &str) -> FixtureError {
    FixtureError::Parse(s.to_string(), msg.to_string())
}

/// Splits at top-level separators; a separator that opens a term, or follows
/// `^`, `*` or `(`, stays in the term as a unary sign.
fn split_top(s: &str, seps: &[char]) -> Vec<(char, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = '+';
    for c in s.chars() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ => {}
        }
        let prev = cur.trim_end();
        let unary = prev.is_empty() || prev.ends_with(['^', '*', '(']);
        if depth == 0 && seps.contains(&c) && !unary {
            out.push((sign, cur.trim().to_string()));
            cur.clear();
            sign = c;
            continue;
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    out
}

/// Integer value of a linear index expression such as `m-k`, `2-m`, `-j`, `j+2`.
pub fn eval_index(s: &str, env: &Env) -> Result<i64, FixtureError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(err(s, "empty index"));
    }
    let mut total = 0i64;
    let mut sign = 1i64;
    let mut chars = s.chars().peekable();
    let mut expect_term = true;
    while let Some(&c) = chars.peek() {
        match c {
            ' ' => {
                chars.next();
            }
            '+' | '-' => {
                chars.next();
                if c == '-' {
                    sign = -sign;
                }
                expect_term = true;
            }
            '0'..='9' => {
                let mut n = 0i64;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n * 10 + v as i64;
                        chars.next();
                    } else {
                        break;
                    }
                }
                let mut factor = 1;
                if let Some(&v) = chars.peek() {
                    if v.is_ascii_alphabetic() {
                        factor = env.var(v).ok_or_else(|| err(s, "unknown variable"))?;
                        chars.next();
                    }
                }
                if !expect_term {
                    return Err(err(s, "missing operator"));
                }
                total += sign * n * factor;
                sign = 1;
                expect_term = false;
            }
            v if v.is_ascii_alphabetic() => {
                if !expect_term {
                    return Err(err(s, "missing operator"));
                }
                total += sign * env.var(v).ok_or_else(|| err(s, "unknown variable"))?;
                chars.next();
                sign = 1;
                expect_term = false;
            }
            _ => return Err(err(s, "unexpected character in index")),
        }
    }
    if expect_term {
        return Err(err(s, "dangling operator"));
    }
    Ok(total)
}

fn paren_arg<'a>(s: &'a str, prefix: &str) -> Option<&'a str> {
    s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')
}

fn parse_rational(s: &str) -> Option<Cyclotomic> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let den: i64 = den.trim().parse().ok()?;
    if den == 0 {
        return None;
    }
    if num.trim() == "i" {
        return Some(Cyclotomic::i() * Cyclotomic::frac(1, den));
    }
    let num: i64 = num.trim().parse().ok()?;
    Some(Cyclotomic::frac(num, den))
}

fn i_power(e: i64) -> Cyclotomic {
    Cyclotomic::root(4, e.rem_euclid(4)).expect("order 4")
}

fn parse_label(s: &str, env: &Env) -> Result<String, FixtureError> {
    match s.find('{') {
        None => Ok(s.to_string()),
        Some(p) => {
            let inner = s[p + 1..].strip_suffix('}').ok_or_else(|| err(s, "unclosed index"))?;
            let v = eval_index(inner, env)?.rem_euclid(env.modulus);
            Ok(format!("{}{}", &s[..p], v))
        }
    }
}

fn parse_factor(f: &str, env: &Env) -> Result<(Cyclotomic, Option<Vec<String>>), FixtureError> {
    let f = f.trim();
    if f.contains('⊗') {
        let labels = f.split('⊗').map(|l| parse_label(l.trim(), env)).collect::<Result<Vec<_>, _>>()?;
        return Ok((Cyclotomic::one(), Some(labels)));
    }
    if f == "i" {
        return Ok((Cyclotomic::i(), None));
    }
    if let Some(e) = paren_arg(f, "i^") {
        return Ok((i_power(eval_index(e, env)?), None));
    }
    if let Some(e) = paren_arg(f, "(-i)^") {
        return Ok((i_power(-eval_index(e, env)?), None));
    }
    if let Some(e) = paren_arg(f, "(-1)^") {
        let v = eval_index(e, env)?;
        return Ok((Cyclotomic::from_int(if v.rem_euclid(2) == 0 { 1 } else { -1 }), None));
    }
    if let Some(args) = paren_arg(f, "d") {
        let (a, b) = args.split_once(',').ok_or_else(|| err(f, "delta needs two arguments"))?;
        let same = (eval_index(a, env)? - eval_index(b, env)?).rem_euclid(env.modulus) == 0;
        return Ok((Cyclotomic::from_int(same as i64), None));
    }
    if let Some(r) = parse_rational(f) {
        return Ok((r, None));
    }
    if f.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
        return Ok((Cyclotomic::one(), Some(vec![parse_label(f, env)?])));
    }
    Err(err(f, "unrecognised factor"))
}

/// Parses an expression into terms; like terms are not merged.
pub fn parse_expr(s: &str, env: &Env) -> Result<Vec<Term>, FixtureError> {
    let mut out = Vec::new();
    for (sign, term) in split_top(s, &['+', '-']) {
        let mut coeff = Cyclotomic::from_int(if sign == '-' { -1 } else { 1 });
        let mut labels: Option<Vec<String>> = None;
        let mut body = term.as_str();
        let mut negate = false;
        while let Some(rest) = body.strip_prefix('-') {
            negate = !negate;
            body = rest.trim_start();
        }
        if negate {
            coeff = -coeff;
        }
        for f in split_top(body, &['*']).into_iter().map(|(_, f)| f) {
            let (c, l) = parse_factor(&f, env)?;
            coeff = coeff * c;
            if let Some(l) = l {
                if labels.is_some() {
                    return Err(err(s, "two label factors in one term"));
                }
                labels = Some(l);
            }
        }
        if coeff.is_zero() {
            continue;
        }
        out.push(Term { coeff, labels: labels.unwrap_or_default() });
    }
    Ok(out)
}

/// Coordinates of a label expression in the given basis.
pub fn to_vector(terms: &[Term], basis: &[String]) -> Result<Vec<Cyclotomic>, FixtureError> {
    let mut v = vec![Cyclotomic::zero(); basis.len()];
    for t in terms {
        if t.labels.len() != 1 {
            return Err(FixtureError::Arity(format!("{:?}", t.labels), t.labels.len(), 1));
        }
        let i = basis.iter().position(|b| *b == t.labels[0]).ok_or_else(|| FixtureError::UnknownLabel(t.labels[0].clone()))?;
        v[i] = v[i].clone() + &t.coeff;
    }
    Ok(v)
}

/// Sparse tensor-square coordinates, index i·dim + j.
pub fn to_tensor(terms: &[Term], basis: &[String]) -> Result<BTreeMap<usize, Cyclotomic>, FixtureError> {
    let dim = basis.len();
    let pos = |l: &str| basis.iter().position(|b| b == l).ok_or_else(|| FixtureError::UnknownLabel(l.to_string()));
    let mut out: BTreeMap<usize, Cyclotomic> = BTreeMap::new();
    for t in terms {
        if t.labels.len() != 2 {
            return Err(FixtureError::Arity(format!("{:?}", t.labels), t.labels.len(), 2));
        }
        let idx = pos(&t.labels[0])? * dim + pos(&t.labels[1])?;
        let e = out.entry(idx).or_insert_with(Cyclotomic::zero);
        *e = e.clone() + &t.coeff;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Value of a label-free expression.
pub fn to_scalar(terms: &[Term]) -> Result<Cyclotomic, FixtureError> {
    let mut s = Cyclotomic::zero();
    for t in terms {
        if !t.labels.is_empty() {
            return Err(FixtureError::Arity(format!("{:?}", t.labels), t.labels.len(), 0));
        }
        s = s + &t.coeff;
    }
    Ok(s)
}

pub fn vector(s: &str, basis: &[String]) -> Result<Vec<Cyclotomic>, FixtureError> {
    to_vector(&parse_expr(s, &Env::plain())?, basis)
}

pub fn scalar(s: &str) -> Result<Cyclotomic, FixtureError> {
    to_scalar(&parse_expr(s, &Env::plain())?)
}

/// Rows of a table of label expressions as coordinate vectors.
pub fn table_vectors(rows: &[Vec<String>], basis: &[String]) -> Result<Vec<Vec<Vec<Cyclotomic>>>, FixtureError> {
    rows.iter().map(|r| r.iter().map(|c| vector(c, basis)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_signed_sums() {
        let b = labels(&["e1", "P1", "F3"]);
        let v = vector("P1 + e1", &b).unwrap();
        assert_eq!(v, vec![Cyclotomic::one(), Cyclotomic::one(), Cyclotomic::zero()]);
        let v = vector("-1/2*F3 - e1", &b).unwrap();
        assert_eq!(v[2], Cyclotomic::frac(-1, 2));
        assert_eq!(v[0], Cyclotomic::from_int(-1));
    }

    #[test]
    fn parses_complex_coefficients() {
        let b = labels(&["E0", "E1"]);
        let v = vector("E0 - i*E1", &b).unwrap();
        assert_eq!(v[1], -Cyclotomic::i());
        let v = vector("-i/4*E1", &b).unwrap();
        assert_eq!(v[1], Cyclotomic::i() * Cyclotomic::frac(-1, 4));
    }

    #[test]
    fn templates_reduce_indices() {
        let env = Env::with(4, &[('m', 1), ('k', 3)]);
        let t = parse_expr("i^(m-k)*P{k}⊗e{m-k}", &env).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].labels, labels(&["P3", "e2"]));
        assert_eq!(t[0].coeff, Cyclotomic::from_int(-1));
        let t = parse_expr("-(-1)^(k)*i^(m)*F{k}⊗E{m-k}", &env).unwrap();
        assert_eq!(t[0].coeff, Cyclotomic::i());
        let t = parse_expr("P{-m} - d(3,m)*e1 + d(1,m)*e3", &env).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].labels, labels(&["P3"]));
    }

    #[test]
    fn index_expressions() {
        let env = Env::with(4, &[('m', 2), ('j', 3)]);
        assert_eq!(eval_index("2-m", &env).unwrap(), 0);
        assert_eq!(eval_index("-j", &env).unwrap(), -3);
        assert_eq!(eval_index("j+2", &env).unwrap(), 5);
        assert!(eval_index("x", &env).is_err());
    }

    #[test]
    fn scalars_and_tensors() {
        assert_eq!(scalar("0").unwrap(), Cyclotomic::zero());
        assert_eq!(scalar("d(0,0)").unwrap(), Cyclotomic::one());
        let b = labels(&["e0", "e1"]);
        let t = to_tensor(&parse_expr("e0⊗e0 + e1⊗e1", &Env::plain()).unwrap(), &b).unwrap();
        assert_eq!(t.keys().copied().collect::<Vec<_>>(), vec![0, 3]);
    }

    #[test]
    fn every_fixture_parses() {
        let _ = (h1_table(), h2_even_table(), h2_odd_table(), h1_hopf(), h2_hopf());
        let _ = (h1_adjoint(), h2_adjoint(), h2_odd_block(), grassmann());
    }
}
