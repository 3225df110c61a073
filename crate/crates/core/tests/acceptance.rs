//! Acceptance run: one line per criterion, all comparisons exact.
//!
//! A criterion fails either because an internal identity broke (a bug: the run exits non-zero)
//! or because the computation disagrees with a printed value (a finding: reported, exit stays 0).

use std::collections::BTreeSet;
use std::process::ExitCode;

use hni::hopf::{build_hopf, hopf_in_basis, spectrum_checks, verify_hopf_axioms, verify_hopf_ideal, HopfStructure};
use hni::linalg::Matrix;
use hni::morphisms::{morphism_report, Suite};
use hni::quotient::{casimir, casimir_odd_block, is_central, named_basis, table_checks, Hni};
use hni::radical::{conjecture_probe, grassmann_iso, h2_matrix_iso, probe_json, radical_data, GrassmannTarget, RadicalReport, PROBE_SCHEMA};
use hni::report::{Check, Status};
use hni::representations::{
    adjoint_matrices, adjoint_rep, adjoint_trace_table, gram_printed_checks, h1_mu_table_checks, mu_action_tables,
    mu_multiplicative_failure,
};
use hni::Cyclotomic;
use num_traits::Zero;

const AUT_SAMPLES: usize = 500;
const IDEMPOTENT_SAMPLES: usize = 500;
const INNER_SAMPLES: usize = 500;
const STAR_SAMPLES: usize = 100;
const SEED: u64 = 0;

/// Outcome of one criterion.
#[derive(Default)]
struct Verdict {
    /// Internal identities that failed.
    broken: Vec<String>,
    /// Printed values the criterion requires that were not reproduced.
    unmet: Vec<String>,
    /// Disagreements with printed values that the criterion only asks to report.
    reported: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.unmet.push(what.into());
        }
    }

    fn internal(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.broken.push(what.into());
        }
    }

    /// Every check must pass.
    fn strict<'a>(&mut self, tag: &str, checks: impl IntoIterator<Item = &'a Check>) {
        self.sort(tag, checks, |_| true);
    }

    /// Internal failures always count; mismatches with printed values count only when `required` says so.
    fn sort<'a>(&mut self, tag: &str, checks: impl IntoIterator<Item = &'a Check>, required: impl Fn(&Check) -> bool) {
        for c in checks {
            let name = format!("{tag}: {}", c.name);
            match c.status {
                Status::Pass => {}
                Status::Fail => self.broken.push(name),
                Status::Mismatch if required(c) => self.unmet.push(name),
                Status::Mismatch => self.reported.push(name),
            }
        }
    }

    fn passed(&self) -> bool {
        self.broken.is_empty() && self.unmet.is_empty()
    }

    fn line(&self, k: usize, title: &str) -> String {
        let mut parts = Vec::new();
        if !self.broken.is_empty() {
            parts.push(format!("internal failures: {}", self.broken.join("; ")));
        }
        if !self.unmet.is_empty() {
            parts.push(format!("not reproduced: {}", self.unmet.join("; ")));
        }
        if !self.reported.is_empty() {
            let shown: Vec<&str> = self.reported.iter().take(6).map(String::as_str).collect();
            let more = self.reported.len() - shown.len();
            let tail = if more > 0 { format!("; and {more} more") } else { String::new() };
            parts.push(format!("reported differences ({}): {}{tail}", self.reported.len(), shown.join("; ")));
        }
        parts.extend(self.notes.iter().cloned());
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!("criterion {k:>2}: {status} {title}{}{}", if parts.is_empty() { "" } else { " | " }, parts.join(" | "))
    }
}

fn hopf(n: usize) -> HopfStructure {
    build_hopf(&Hni::build(n).expect("construction"))
}

fn unit(d: usize, i: usize) -> Vec<Cyclotomic> {
    let mut v = vec![Cyclotomic::zero(); d];
    v[i] = Cyclotomic::from_int(1);
    v
}

fn rank(vs: &[Vec<Cyclotomic>]) -> usize {
    if vs.is_empty() {
        0
    } else {
        Matrix::from_columns(vs).expect("equal lengths").rank()
    }
}

fn same_span(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> bool {
    let both: Vec<Vec<Cyclotomic>> = a.iter().chain(b).cloned().collect();
    let r = rank(&both);
    r == rank(a) && r == rank(b)
}

fn is_zero_matrix(m: &Matrix<Cyclotomic>, d: usize) -> bool {
    (0..d).all(|j| m.column(j).iter().all(Zero::is_zero))
}

fn multiplication_tables() -> Verdict {
    let mut v = Verdict::default();
    for n in 1..=2 {
        let rep = table_checks(&Hni::build(n).expect("construction")).expect("tables");
        v.strict(&format!("N={n}"), &rep.checks);
    }
    v
}

fn hopf_axioms() -> Verdict {
    let mut v = Verdict::default();
    for n in 1..=4 {
        let hs = hopf(n);
        v.strict(&format!("N={n}"), &verify_hopf_axioms(&hs).checks);
        v.strict(&format!("N={n} ideal"), &verify_hopf_ideal(n).checks);
    }
    v
}

fn basis_change_formulas() -> Verdict {
    let mut v = Verdict::default();
    v.strict("H1", &hopf_in_basis(&hopf(1)).expect("formulas").checks);
    let prefactor = |c: &Check| !c.name.ends_with("prefactor");
    v.sort("H2", &hopf_in_basis(&hopf(2)).expect("formulas").checks, prefactor);
    v
}

fn antipode_spectrum() -> Verdict {
    let mut v = Verdict::default();
    let rep = spectrum_checks(&hopf(1)).expect("spectrum");
    v.strict("H1", &rep.checks);
    for name in ["S⁴ = 1", "eigenvalue multiplicities of S on H1", "eigenvectors of S for 1", "eigenvectors of S for i", "eigenvectors of S for -i"] {
        v.require(rep.find(name).is_some(), format!("missing check {name}"));
    }
    v
}

fn adjoint_h1() -> Verdict {
    let mut v = Verdict::default();
    for n in 1..=2 {
        let hs = hopf(n);
        let mats = adjoint_matrices(&hs);
        v.internal(mu_multiplicative_failure(&hs.h, &mats).is_none(), format!("N={n}: μ not multiplicative"));
    }
    let hs = hopf(1);
    v.strict("μ table", &h1_mu_table_checks(&hs));
    let (labels, traces, rep) = adjoint_trace_table(&hs);
    v.strict("Tr_μ", &rep.checks);
    let expected: Vec<Cyclotomic> = [4, 4, 0, 0, 0, 0, 0, 0].into_iter().map(Cyclotomic::from_int).collect();
    v.require(traces == expected, format!("Tr_μ on ({}) is not (4,4,0,0,0,0,0,0)", labels.join(",")));
    let data = radical_data(&hs).expect("radical");
    v.internal(data.report.kernel_equals_radical["mu"], "ker of the μ-form differs from the nilradical");
    v
}

fn adjoint_h2() -> Verdict {
    let mut v = Verdict::default();
    let hs = hopf(2);
    let tables = mu_action_tables(&hs);
    v.sort("tables", &tables.checks, |c| c.name == "μ vanishes on the odd block");
    let basis = named_basis(&hs.h).expect("named basis");
    let mats = adjoint_matrices(&hs);
    let odd = ["e1", "e3", "E1", "E3", "F1", "F3", "P1", "P3"];
    for l in odd {
        let x = basis.vector(l).expect("label");
        v.internal(is_zero_matrix(&adjoint_rep(&mats, &x), hs.h.dim()), format!("μ({l}) ≠ 0"));
    }
    let data = radical_data(&hs).expect("radical");
    let d = data.labels.len();
    let ker = &data.kernels["mu"];
    let mut expected = data.radical.clone();
    for l in odd {
        let i = data.labels.iter().position(|x| x == l).expect("label");
        expected.push(unit(d, i));
    }
    let odd_ix: BTreeSet<usize> = odd.iter().map(|l| data.labels.iter().position(|x| x == l).expect("label")).collect();
    v.internal(data.radical.iter().all(|r| odd_ix.iter().all(|&i| r[i].is_zero())), "radical meets the odd block");
    v.require(ker.len() == 14, format!("ker of the μ-form has dimension {}", ker.len()));
    v.require(same_span(ker, &expected), "ker of the μ-form ≠ radical of the even block ⊕ odd block");
    v.strict("μ-form", gram_printed_checks(&hs).checks.iter().filter(|c| c.name == "μ-form null space dimension"));
    v.notes.push(format!("{} table diffs emitted", tables.count(Status::Mismatch)));
    v
}

fn radical_and_quotients() -> Verdict {
    let mut v = Verdict::default();
    let data = radical_data(&hopf(1)).expect("radical");
    let stated: Vec<Vec<Cyclotomic>> = ["E0", "E1", "F0", "F1", "C0", "C1"]
        .iter()
        .map(|l| unit(data.labels.len(), data.labels.iter().position(|x| x == l).expect("label")))
        .collect();
    v.require(data.radical.len() == 6 && same_span(&data.radical, &stated), "H1 radical ≠ span{E0,E1,F0,F1,C0,C1}");
    let q = &data.quotient;
    let two_idempotents = q.dim() == 2
        && q.product(0, 0) == unit(2, 0)
        && q.product(1, 1) == unit(2, 1)
        && q.product(0, 1).iter().all(Zero::is_zero)
        && q.product(1, 0).iter().all(Zero::is_zero);
    v.require(two_idempotents, "H1/rad is not two orthogonal idempotents");
    let h2 = radical_data(&hopf(2)).expect("radical");
    v.require(h2.report.dim_radical == 6, format!("H2 radical has dimension {}", h2.report.dim_radical));
    v.strict("matrix model", &h2_matrix_iso().checks);
    v.strict("Grassmann model", &grassmann_iso(GrassmannTarget::H1).checks);
    v
}

fn gram_signatures() -> Verdict {
    let mut v = Verdict::default();
    let data = radical_data(&hopf(1)).expect("radical");
    let s = &data.report.signatures["lambda"];
    v.require((s.n_plus, s.n_zero, s.n_minus) == (2, 6, 0), format!("H1 λ signature ({}, {}, {})", s.n_plus, s.n_zero, s.n_minus));
    v.sort("H1", &gram_printed_checks(&hopf(1)).checks, |c| c.name.starts_with("λ-form"));
    let wanted = ["odd-block λ-form hermitian", "odd-block λ signature", "positive vectors orthonormal", "<F3,F3>", "even/odd blocks λ-orthogonal"];
    let rep = gram_printed_checks(&hopf(2));
    for name in wanted {
        v.require(rep.find(name).is_some(), format!("missing check {name}"));
    }
    v.sort("H2", &rep.checks, |c| wanted.contains(&c.name.as_str()));
    v
}

fn casimir_criterion() -> Verdict {
    let mut v = Verdict::default();
    for n in 1..=4 {
        let h = Hni::build(n).expect("construction");
        v.internal(is_central(&h, &casimir(&h)), format!("N={n}: C not central"));
    }
    let rep = casimir_odd_block(&Hni::build(2).expect("construction")).expect("casimir");
    let wanted = ["C² = 1/4 on the odd block", "printed vectors in the -1/2 eigenspace", "printed vectors in the 1/2 eigenspace", "C preserves the odd block"];
    for name in wanted {
        v.require(rep.find(name).is_some(), format!("missing check {name}"));
    }
    v.sort("odd block", &rep.checks, |c| wanted.contains(&c.name.as_str()));
    v
}

fn morphism_suites() -> Verdict {
    let mut v = Verdict::default();
    let runs = [
        (Suite::Aut, AUT_SAMPLES),
        (Suite::Idempotents, IDEMPOTENT_SAMPLES),
        (Suite::Inner, INNER_SAMPLES),
        (Suite::Stars, STAR_SAMPLES),
        (Suite::Flip, 1),
    ];
    let required = |c: &Check| {
        let n = c.name.as_str();
        n == "sampled solutions give algebra automorphisms"
            || n == "the two derived relations hold on samples"
            || n.starts_with("printed second nondegeneracy condition")
            || n.ends_with(": rejected")
            || n == "ad(h) matrix, 64 cells"
            || n == "printed ad(h) matrix at samples"
            || n.starts_with("stated family e")
            || n.starts_with("type-I samples are")
            || n == "type-II samples do not preserve the coproduct"
    };
    let mut seen = 0;
    for (suite, samples) in runs {
        let rep = morphism_report(suite, samples, SEED).expect("morphisms");
        seen += rep.checks.iter().filter(|c| required(c)).count();
        v.sort(&suite.to_string(), &rep.checks, required);
    }
    v.require(seen >= 18, format!("only {seen} required checks present"));
    v
}

fn conjecture() -> Verdict {
    let mut v = Verdict::default();
    let reports = conjecture_probe(4).expect("probe");
    for r in &reports {
        v.require(r.containment_flags["mu"], format!("N={}: radical ⊄ ker(μ-form)", r.n));
    }
    let text = probe_json(&reports);
    v.require(text == probe_json(&conjecture_probe(4).expect("probe")), "probe JSON differs between runs");
    let cli = |_: ()| hni::cli::run(["hni", "conjecture", "--n-max", "4"]);
    let (a, b) = (cli(()), cli(()));
    v.require(a.code == 0 && a.stdout == b.stdout && a.stdout == text, "CLI probe output not byte-identical");
    let value: serde_json::Value = serde_json::from_str(&text).expect("json");
    let schema: serde_json::Value = serde_json::from_str(PROBE_SCHEMA).expect("schema");
    let validator = jsonschema::validator_for(&schema).expect("valid schema");
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    v.require(errors.is_empty(), format!("schema: {}", errors.join("; ")));
    let back: Result<Vec<RadicalReport>, _> = serde_json::from_str(&text);
    v.require(back.as_ref().map(|b| b == &reports).unwrap_or(false), "probe JSON does not round-trip");
    v
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("multiplication tables of H1 and both H2 blocks", multiplication_tables),
        ("Hopf axioms for N = 1..4 and the Hopf ideal", hopf_axioms),
        ("coproduct, counit and antipode in the idempotent bases", basis_change_formulas),
        ("antipode spectrum on H1", antipode_spectrum),
        ("adjoint representation of H1", adjoint_h1),
        ("adjoint representation of H2", adjoint_h2),
        ("radical, quotients and model isomorphisms", radical_and_quotients),
        ("λ-form signatures", gram_signatures),
        ("Casimir", casimir_criterion),
        ("morphism suites", morphism_suites),
        ("radical inside the μ-form kernel for N = 1..4", conjecture),
    ];
    let mut broken = false;
    for (k, (title, f)) in criteria.iter().enumerate() {
        let v = f();
        broken |= !v.broken.is_empty();
        println!("{}", v.line(k + 1, title));
    }
    if broken {
        println!("internal failures present");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
