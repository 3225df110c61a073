//! Command-line surface: argument parsing and dispatch, returning output text and an exit code.

use std::collections::BTreeMap;
use std::fs;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::StructureConstants;
use crate::fixtures;
use crate::hopf::{build_hopf, hopf_in_basis, spectrum_checks, verify_hopf_axioms, verify_hopf_ideal, HopfStructure};
use crate::morphisms::{morphism_report, Suite};
use crate::quotient::{casimir_odd_block, center_check, fourier_basis, named_algebra, table_checks, Hni};
use crate::radical::{conjecture_probe, grassmann_iso, h2_matrix_iso, probe_json, radical_data, GrassmannTarget};
use crate::report::{Check, VerificationReport};
use crate::representations::{
    adjoint_matrices, adjoint_trace_table, basis_vectors, gram_printed_checks, h1_mu_table_checks, mu_action_tables,
    mu_multiplicative_failure, star_default, trace_gram, Rep,
};
use crate::scalars::Cyclotomic;

#[derive(Parser, Debug)]
#[command(name = "hni", version, about = "Exact computations in the finite quantum groups H_N^i")]
pub struct Cli {
    /// Output format for verification reports.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text, global = true)]
    pub report: ReportFormat,
    /// Treat disagreements with printed values as failures.
    #[arg(long, global = true)]
    pub strict_paper: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Pbw,
    Fourier,
    Named,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepArg {
    Lambda,
    Mu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    All,
    Flip,
    Idempotents,
    Aut,
    Inner,
    Stars,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structure constants of H_N^i as JSON.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = BasisArg::Pbw)]
        basis: BasisArg,
        #[arg(long)]
        out: Option<String>,
    },
    /// Printed multiplication tables against the computed ones (N = 1, 2).
    Table {
        #[arg(long)]
        n: usize,
    },
    /// Hopf axioms, Hopf ideal, centre and antipode spectrum.
    HopfCheck {
        #[arg(long)]
        n: usize,
    },
    /// Gram matrix of a trace form with its signature, as JSON.
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = RepArg::Lambda)]
        rep: RepArg,
        #[arg(long)]
        out: Option<String>,
    },
    /// Adjoint representation: multiplicativity, traces, printed tables.
    Adjoint {
        #[arg(long)]
        n: usize,
        /// Include the comparisons with the printed tables.
        #[arg(long)]
        diff_paper: bool,
    },
    /// Nilradical, semisimple quotient and trace-form kernels, as JSON.
    Radical {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Radical versus trace-form kernels for N = 1..n-max, as JSON.
    Conjecture {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Automorphisms, idempotents and *-operations of H_1^i at seeded samples.
    Morphisms {
        #[arg(long, value_enum, default_value_t = CheckArg::All)]
        check: CheckArg,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every embedded printed table for N = 1 or 2, plus fixture checksums.
    VerifyPaper {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Text written to stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn error(msg: String, code: i32) -> Self {
        Outcome { stdout: String::new(), stderr: msg, code }
    }
}

#[derive(Serialize)]
struct ProductEntry<'a> {
    left: &'a str,
    right: &'a str,
    terms: BTreeMap<&'a str, Cyclotomic>,
}

#[derive(Serialize)]
struct BuildOutput<'a> {
    n: usize,
    basis: &'static str,
    dim: usize,
    labels: &'a [String],
    unit: BTreeMap<&'a str, Cyclotomic>,
    products: Vec<ProductEntry<'a>>,
}

fn sparse_terms<'a>(labels: &'a [String], v: &[Cyclotomic]) -> BTreeMap<&'a str, Cyclotomic> {
    labels.iter().zip(v).filter(|(_, c)| !num_traits::Zero::is_zero(*c)).map(|(l, c)| (l.as_str(), c.clone())).collect()
}

fn build_json(n: usize, basis: BasisArg, alg: &StructureConstants<Cyclotomic>) -> String {
    let labels = alg.labels();
    let d = alg.dim();
    let mut products = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let p = alg.mul(&alg.basis_vector(i), &alg.basis_vector(j)).expect("dims");
            let terms = sparse_terms(labels, &p);
            if !terms.is_empty() {
                products.push(ProductEntry { left: &labels[i], right: &labels[j], terms });
            }
        }
    }
    let name = match basis {
        BasisArg::Pbw => "pbw",
        BasisArg::Fourier => "fourier",
        BasisArg::Named => "named",
    };
    let out = BuildOutput { n, basis: name, dim: d, labels, unit: sparse_terms(labels, alg.unit()), products };
    serde_json::to_string_pretty(&out).expect("serializable") + "\n"
}

fn render(rep: &VerificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(rep).expect("serializable") + "\n",
        ReportFormat::Text => rep.to_text(),
    }
}

fn merge(into: &mut VerificationReport, from: VerificationReport) {
    into.extend(from.checks);
}

fn hopf_for(n: usize) -> Result<HopfStructure, String> {
    let h = Hni::build(n).map_err(|e| e.to_string())?;
    Ok(build_hopf(&h))
}

fn mu_multiplicative_check(hs: &HopfStructure) -> Check {
    let mats = adjoint_matrices(hs);
    let fail = mu_multiplicative_failure(&hs.h, &mats);
    let labels = basis_vectors(&hs.h).1;
    Check::new("μ(ab) = μ(a)μ(b) on all basis pairs", "adjoint representation is a representation").holds(
        fail.is_none(),
        "all pairs",
        match fail {
            None => "all pairs".to_string(),
            Some((i, j)) => format!("fails at PBW pair ({i}, {j}) of {}", labels.len()),
        },
    )
}

fn hopf_check_report(n: usize) -> Result<VerificationReport, String> {
    let hs = hopf_for(n)?;
    let mut rep = VerificationReport::new("hopf-check", n);
    merge(&mut rep, verify_hopf_axioms(&hs));
    merge(&mut rep, verify_hopf_ideal(n));
    rep.extend(center_check(&hs.h));
    merge(&mut rep, spectrum_checks(&hs).map_err(|e| e.to_string())?);
    Ok(rep)
}

fn adjoint_report(n: usize, diff_paper: bool) -> Result<VerificationReport, String> {
    let hs = hopf_for(n)?;
    let mut rep = VerificationReport::new("adjoint", n);
    rep.push(mu_multiplicative_check(&hs));
    let (_, _, traces) = adjoint_trace_table(&hs);
    merge(&mut rep, traces);
    if diff_paper {
        match n {
            1 => {
                rep.extend(h1_mu_table_checks(&hs));
                merge(&mut rep, gram_printed_checks(&hs));
            }
            2 => {
                merge(&mut rep, mu_action_tables(&hs));
                merge(&mut rep, gram_printed_checks(&hs));
            }
            _ => {}
        }
    }
    Ok(rep)
}

/// The whole embedded fixture suite for N = 1 or N = 2.
pub fn verify_paper_report(n: usize, samples: usize, seed: u64) -> Result<VerificationReport, String> {
    if !(1..=2).contains(&n) {
        return Err(format!("verify-paper covers N = 1 and N = 2, got {n}"));
    }
    let hs = hopf_for(n)?;
    let mut rep = VerificationReport::new("verify-paper", n);
    rep.extend(fixtures::checksum_checks());
    merge(&mut rep, table_checks(&hs.h).map_err(|e| e.to_string())?);
    merge(&mut rep, verify_hopf_axioms(&hs));
    merge(&mut rep, hopf_in_basis(&hs).map_err(|e| e.to_string())?);
    merge(&mut rep, spectrum_checks(&hs).map_err(|e| e.to_string())?);
    merge(&mut rep, adjoint_report(n, true)?);
    if n == 1 {
        merge(&mut rep, grassmann_iso(GrassmannTarget::H1));
        merge(&mut rep, morphism_report(Suite::All, samples, seed).map_err(|e| e.to_string())?);
    } else {
        merge(&mut rep, casimir_odd_block(&hs.h).map_err(|e| e.to_string())?);
        merge(&mut rep, grassmann_iso(GrassmannTarget::H2Even));
        merge(&mut rep, h2_matrix_iso());
    }
    Ok(rep)
}

fn emit(text: String, out: &Option<String>) -> Result<Outcome, String> {
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| format!("cannot write {path}: {e}"))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn report_outcome(rep: &VerificationReport, cli: &Cli) -> Outcome {
    Outcome { stdout: render(rep, cli.report), stderr: String::new(), code: rep.exit_code(cli.strict_paper) }
}

fn dispatch(cli: &Cli) -> Result<Outcome, String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match &cli.command {
        Command::Build { n, basis, out } => {
            let h = Hni::build(*n).map_err(|e| err(&e))?;
            let alg = match basis {
                BasisArg::Pbw => h.algebra().clone(),
                BasisArg::Fourier => fourier_basis(&h).and_then(|b| b.transport(h.algebra())).map_err(|e| err(&e))?,
                BasisArg::Named => named_algebra(&h).map_err(|e| err(&e))?.1,
            };
            emit(build_json(*n, *basis, &alg), out)
        }
        Command::Table { n } => {
            let h = Hni::build(*n).map_err(|e| err(&e))?;
            Ok(report_outcome(&table_checks(&h).map_err(|e| err(&e))?, cli))
        }
        Command::HopfCheck { n } => Ok(report_outcome(&hopf_check_report(*n)?, cli)),
        Command::Gram { n, rep, out } => {
            let hs = hopf_for(*n)?;
            let (vecs, labels) = basis_vectors(&hs.h);
            let (r, scale) = match rep {
                RepArg::Lambda => (Rep::Lambda, Cyclotomic::from_int(1)),
                RepArg::Mu => (Rep::Mu, Cyclotomic::frac(1, 4)),
            };
            let g = trace_gram(&hs, r, &star_default(&hs.h), &scale, &vecs, labels).map_err(|e| err(&e))?;
            emit(serde_json::to_string_pretty(&g).expect("serializable") + "\n", out)
        }
        Command::Adjoint { n, diff_paper } => Ok(report_outcome(&adjoint_report(*n, *diff_paper)?, cli)),
        Command::Radical { n, out } => {
            let hs = hopf_for(*n)?;
            let data = radical_data(&hs).map_err(|e| err(&e))?;
            emit(serde_json::to_string_pretty(&data.report).expect("serializable") + "\n", out)
        }
        Command::Conjecture { n_max, out } => {
            let reports = conjecture_probe(*n_max).map_err(|e| err(&e))?;
            emit(probe_json(&reports), out)
        }
        Command::Morphisms { check, samples, seed } => {
            let suite = match check {
                CheckArg::All => Suite::All,
                CheckArg::Flip => Suite::Flip,
                CheckArg::Idempotents => Suite::Idempotents,
                CheckArg::Aut => Suite::Aut,
                CheckArg::Inner => Suite::Inner,
                CheckArg::Stars => Suite::Stars,
            };
            Ok(report_outcome(&morphism_report(suite, *samples, *seed).map_err(|e| err(&e))?, cli))
        }
        Command::VerifyPaper { n, samples, seed } => Ok(report_outcome(&verify_paper_report(*n, *samples, *seed)?, cli)),
    }
}

/// Parses `argv` (program name first) and runs the command. Usage errors exit with 2,
/// internal failures with 1, printed-value mismatches with 0 unless `--strict-paper`.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(text) } else { Outcome::error(text, 2) };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(msg) => Outcome::error(format!("error: {msg}\n"), 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_flag_is_a_usage_error() {
        assert_eq!(run(["hni", "table", "--n", "1", "--bogus"]).code, 2);
        assert_eq!(run(["hni", "frobnicate"]).code, 2);
        assert_eq!(run(["hni", "morphisms", "--check", "nope"]).code, 2);
    }

    #[test]
    fn table_for_h1_passes() {
        let o = run(["hni", "table", "--n", "1"]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert!(o.stdout.contains("[pass]"));
    }

    #[test]
    fn build_is_deterministic_json() {
        let a = run(["hni", "build", "--n", "1", "--basis", "named"]);
        let b = run(["hni", "build", "--n", "1", "--basis", "named"]);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["dim"], 8);
        assert_eq!(v["labels"][0], "e0");
    }

    #[test]
    fn strict_flag_turns_mismatches_into_failures() {
        let lax = run(["hni", "adjoint", "--n", "1", "--diff-paper"]);
        let strict = run(["hni", "adjoint", "--n", "1", "--diff-paper", "--strict-paper"]);
        assert_eq!(lax.code, 0);
        assert_eq!(strict.code, 1);
    }
}
