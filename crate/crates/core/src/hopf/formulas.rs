//! Δ, S, ε transported to the named idempotent bases and compared with the printed formulas.

use num_traits::Zero;

use super::{format_tensor, HopfStructure, Tensor};
use crate::algebra::format_element;
use crate::fixtures::{self, parse_expr, to_scalar, to_tensor, to_vector, Env};
use crate::linalg::Matrix;
use crate::quotient::{named_basis, BasisChange, QuotientError};
use crate::report::{Check, VerificationReport};
use crate::scalars::{Cyclotomic, Field};

/// Hopf maps expressed in another basis.
#[derive(Clone, Debug)]
pub struct TransportedHopf {
    pub labels: Vec<String>,
    pub coproduct: Vec<Tensor>,
    pub counit: Vec<Cyclotomic>,
    pub antipode: Matrix<Cyclotomic>,
}

impl TransportedHopf {
    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub fn transported(hs: &HopfStructure, basis: &BasisChange) -> TransportedHopf {
    let d = hs.dim();
    let p = &basis.matrix;
    let pinv = &basis.inverse;
    let pinv_t = pinv.transpose();
    let mut coproduct = Vec::with_capacity(d);
    let mut counit = Vec::with_capacity(d);
    for j in 0..d {
        let v = p.column(j);
        let t = hs.delta(&v);
        let mut m: Matrix<Cyclotomic> = Matrix::zeros(d, d);
        for (&idx, c) in &t {
            m.set(idx / d, idx % d, c.clone());
        }
        let mp = pinv.mul(&m).and_then(|x| x.mul(&pinv_t)).expect("square");
        let mut out = Tensor::new();
        for a in 0..d {
            for b in 0..d {
                let c = mp.get(a, b);
                if !c.is_zero() {
                    out.insert(a * d + b, c.clone());
                }
            }
        }
        coproduct.push(out);
        counit.push(hs.epsilon(&v));
    }
    let antipode = pinv.mul(&hs.antipode).and_then(|x| x.mul(p)).expect("square");
    TransportedHopf { labels: basis.labels.clone(), coproduct, counit, antipode }
}

fn tensor_eq(a: &Tensor, b: &Tensor) -> bool {
    let keys: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
    keys.into_iter().all(|k| {
        let z = Cyclotomic::zero();
        a.get(&k).unwrap_or(&z) == b.get(&k).unwrap_or(&z)
    })
}

fn scale_tensor(t: &Tensor, s: &Cyclotomic) -> Tensor {
    t.iter().map(|(k, c)| (*k, c.clone() * s)).filter(|(_, c)| !c.is_zero()).collect()
}

/// Printed formulas for the named basis of H_1 or H_2 against the transported maps.
pub fn hopf_in_basis(hs: &HopfStructure) -> Result<VerificationReport, QuotientError> {
    let basis = named_basis(&hs.h)?;
    let t = transported(hs, &basis);
    let mut rep = VerificationReport::new("hopf-in-basis", hs.h.n());
    match hs.h.n() {
        1 => h1_checks(&t, &mut rep),
        _ => h2_checks(&t, &mut rep),
    }
    Ok(rep)
}

fn h1_checks(t: &TransportedHopf, rep: &mut VerificationReport) {
    let fx = fixtures::h1_hopf();
    let lab = &t.labels;
    for l in lab {
        let j = t.index(l).expect("label");
        let printed = to_tensor(&parse_expr(&fx.coproduct[l], &Env::plain()).expect("fixture"), lab).expect("fixture");
        let ok = tensor_eq(&printed, &t.coproduct[j]);
        rep.push(Check::new(format!("Δ({l})"), "coproduct in the idempotent basis of H1").printed_holds(
            ok,
            fx.coproduct[l].clone(),
            format_tensor(lab, &t.coproduct[j]),
        ));
    }
    for l in lab {
        let j = t.index(l).expect("label");
        let printed = fixtures::vector(&fx.antipode[l], lab).expect("fixture");
        let got = t.antipode.column(j);
        rep.push(Check::new(format!("S({l})"), "antipode in the idempotent basis of H1").printed_holds(
            printed == got,
            fx.antipode[l].clone(),
            format_element(lab, &got),
        ));
    }
    for l in lab {
        let j = t.index(l).expect("label");
        let printed = fixtures::scalar(&fx.counit[l]).expect("fixture");
        rep.push(
            Check::new(format!("ε({l})"), "counit in the idempotent basis of H1")
                .against_printed(printed, t.counit[j].clone()),
        );
    }
}

fn h2_checks(t: &TransportedHopf, rep: &mut VerificationReport) {
    let fx = fixtures::h2_hopf();
    let lab = &t.labels;
    let modulus = fx.index_modulus;
    for family in ["e", "E", "F", "P"] {
        let tmpl = &fx.coproduct[family];
        let prefactor = fixtures::scalar(&tmpl.prefactor).expect("fixture");
        let mut summand_ok = true;
        let mut ratio: Option<Cyclotomic> = None;
        let mut proportional = true;
        let mut printed_txt = Vec::new();
        let mut computed_txt = Vec::new();
        for m in 0..modulus {
            let mut sum = Tensor::new();
            for k in 0..modulus {
                let terms = parse_expr(&tmpl.summand, &Env::with(modulus, &[('m', m), ('k', k)])).expect("fixture");
                for (idx, c) in to_tensor(&terms, lab).expect("fixture") {
                    let e = sum.entry(idx).or_insert_with(Cyclotomic::zero);
                    *e = e.clone() + c;
                }
            }
            sum.retain(|_, c| !c.is_zero());
            let j = t.index(&format!("{family}{m}")).expect("label");
            let got = &t.coproduct[j];
            summand_ok &= tensor_eq(&sum, got);
            if let Some((&idx, c)) = sum.iter().next() {
                let r = got.get(&idx).cloned().unwrap_or_else(Cyclotomic::zero) * c.inverse().expect("nonzero");
                proportional &= tensor_eq(&scale_tensor(&sum, &r), got);
                match &ratio {
                    None => ratio = Some(r),
                    Some(r0) => proportional &= *r0 == r,
                }
            }
            printed_txt.push(format!("m={m}: {} × ({})", tmpl.prefactor, format_tensor(lab, &sum)));
            computed_txt.push(format!("m={m}: {}", format_tensor(lab, got)));
        }
        let claim = "coproduct in the idempotent basis of H2";
        rep.push(Check::new(format!("Δ({family}_m) summands"), claim).printed_holds(
            summand_ok,
            printed_txt.join("; "),
            computed_txt.join("; "),
        ));
        let recovered = if proportional { ratio.map(|r| r.to_string()).unwrap_or_else(|| "0".into()) } else { "not proportional".into() };
        rep.push(Check::new(format!("Δ({family}_m) prefactor"), claim).against_printed(prefactor.to_string(), recovered));
    }
    for family in ["e", "E", "F", "P"] {
        let mut ok_s = true;
        let mut ok_e = true;
        let (mut ps, mut cs, mut pe, mut ce) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for m in 0..modulus {
            let env = Env::with(modulus, &[('m', m)]);
            let j = t.index(&format!("{family}{m}")).expect("label");
            let s_printed = to_vector(&parse_expr(&fx.antipode[family], &env).expect("fixture"), lab).expect("fixture");
            let s_got = t.antipode.column(j);
            ok_s &= s_printed == s_got;
            ps.push(format!("m={m}: {}", format_element(lab, &s_printed)));
            cs.push(format!("m={m}: {}", format_element(lab, &s_got)));
            let e_printed = to_scalar(&parse_expr(&fx.counit[family], &env).expect("fixture")).expect("fixture");
            ok_e &= e_printed == t.counit[j];
            pe.push(format!("m={m}: {e_printed}"));
            ce.push(format!("m={m}: {}", t.counit[j]));
        }
        rep.push(Check::new(format!("S({family}_m)"), "antipode in the idempotent basis of H2").printed_holds(ok_s, ps.join("; "), cs.join("; ")));
        rep.push(Check::new(format!("ε({family}_m)"), "counit in the idempotent basis of H2").printed_holds(ok_e, pe.join("; "), ce.join("; ")));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::build_hopf;
    use crate::quotient::Hni;
    use crate::report::Status;

    #[test]
    fn h1_formulas_match() {
        let h = Hni::build(1).unwrap();
        let rep = hopf_in_basis(&build_hopf(&h)).unwrap();
        assert_eq!(rep.count(Status::Pass), rep.checks.len(), "{}", rep.to_text());
    }

    #[test]
    fn h2_prefactor_and_p_antipode_differ() {
        let h = Hni::build(2).unwrap();
        let rep = hopf_in_basis(&build_hopf(&h)).unwrap();
        let bad: Vec<&str> = rep.checks.iter().filter(|c| c.status != Status::Pass).map(|c| c.name.as_str()).collect();
        assert_eq!(
            bad,
            ["Δ(e_m) prefactor", "Δ(E_m) prefactor", "Δ(F_m) prefactor", "Δ(P_m) prefactor", "S(P_m)"],
            "{}",
            rep.to_text()
        );
        assert_eq!(rep.count(Status::Fail), 0);
        assert_eq!(rep.find("S(P_m)").unwrap().computed, "m=0: P0; m=1: -e3 + P3; m=2: P2; m=3: e1 + P1");
    }
}
