//! Δ, ε, S of the generators E², F², K^{2N} - 1 of I_N, computed in U_i(sl₂) itself.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::quotient::{normal_form, parse_word, Combination, Letter, System, Word};
use crate::report::{Check, VerificationReport};
use crate::scalars::Cyclotomic;

type FreeTensor = BTreeMap<(Word, Word), Cyclotomic>;

fn add(t: &mut FreeTensor, k: (Word, Word), c: Cyclotomic) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(k.clone()).or_insert_with(Cyclotomic::zero);
    *e = e.clone() + c;
    if e.is_zero() {
        t.remove(&k);
    }
}

fn w(s: &str) -> Word {
    parse_word(s).expect("word")
}

fn delta_letter(l: Letter) -> FreeTensor {
    let mut t = FreeTensor::new();
    let one = Cyclotomic::one();
    match l {
        Letter::K => add(&mut t, (w("K"), w("K")), one),
        Letter::Kinv => add(&mut t, (w("k"), w("k")), one),
        Letter::E => {
            add(&mut t, (w("E"), w("")), one.clone());
            add(&mut t, (w("K"), w("E")), one);
        }
        Letter::F => {
            add(&mut t, (w("F"), w("k")), one.clone());
            add(&mut t, (w(""), w("F")), one);
        }
    }
    t
}

fn concat(x: &FreeTensor, y: &FreeTensor) -> FreeTensor {
    let mut out = FreeTensor::new();
    for ((a1, b1), c1) in x {
        for ((a2, b2), c2) in y {
            let mut a = a1.clone();
            a.extend_from_slice(a2);
            let mut b = b1.clone();
            b.extend_from_slice(b2);
            add(&mut out, (a, b), c1.clone() * c2);
        }
    }
    out
}

/// Each side rewritten to its normal form in the given system.
fn normalize(t: &FreeTensor, system: System) -> FreeTensor {
    let mut out = FreeTensor::new();
    for ((a, b), c) in t {
        let na = normal_form(&Combination::word(a.clone(), Cyclotomic::one()), system);
        let nb = normal_form(&Combination::word(b.clone(), Cyclotomic::one()), system);
        for (wa, ca) in na.terms() {
            for (wb, cb) in nb.terms() {
                add(&mut out, (wa.clone(), wb.clone()), c.clone() * ca * cb);
            }
        }
    }
    out
}

fn free_delta(x: &Combination) -> FreeTensor {
    let mut out = FreeTensor::new();
    for (word, c) in x.terms() {
        let mut t = FreeTensor::new();
        add(&mut t, (Vec::new(), Vec::new()), c.clone());
        for l in word {
            t = concat(&t, &delta_letter(*l));
        }
        for (k, v) in t {
            add(&mut out, k, v);
        }
    }
    normalize(&out, System::Free)
}

fn free_counit(x: &Combination) -> Cyclotomic {
    x.terms()
        .iter()
        .filter(|(word, _)| word.iter().all(|l| matches!(l, Letter::K | Letter::Kinv)))
        .fold(Cyclotomic::zero(), |acc, (_, c)| acc + c)
}

fn free_antipode(x: &Combination) -> Combination {
    let mut out = Combination::zero();
    for (word, c) in x.terms() {
        let mut s = Combination::word(Vec::new(), c.clone());
        for l in word.iter().rev() {
            let img = match l {
                Letter::K => Combination::word(w("k"), Cyclotomic::one()),
                Letter::Kinv => Combination::word(w("K"), Cyclotomic::one()),
                Letter::E => Combination::word(w("kE"), -Cyclotomic::one()),
                Letter::F => Combination::word(w("FK"), -Cyclotomic::one()),
            };
            s = s.concat(&img);
        }
        out = out.add(&s);
    }
    normal_form(&out, System::Free)
}

fn comb(terms: &[(&str, i64)]) -> Combination {
    let mut c = Combination::zero();
    for (s, k) in terms {
        c.add_term(w(s), Cyclotomic::from_int(*k));
    }
    normal_form(&c, System::Free)
}

fn tensor(terms: &[(&str, &str, i64)]) -> FreeTensor {
    let mut t = FreeTensor::new();
    for (a, b, k) in terms {
        add(&mut t, (w(a), w(b)), Cyclotomic::from_int(*k));
    }
    normalize(&t, System::Free)
}

fn show(t: &FreeTensor) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let s = |x: &Word| crate::quotient::rewrite::word_string(x);
    t.iter().map(|((a, b), c)| format!("({c})*{}⊗{}", s(a), s(b))).collect::<Vec<_>>().join(" + ")
}

/// Eq. 6–7 style identities checked symbolically before the quotient, plus their consequence
/// that Δ(x) vanishes in H_N^i ⊗ H_N^i, ε(x) = 0 and S(x) vanishes in H_N^i.
pub fn verify_hopf_ideal(n: usize) -> VerificationReport {
    let claim_d = "coproduct of the generators of I_N";
    let claim_e = "counit and antipode of the generators of I_N";
    let claim_i = "I_N is a Hopf ideal";
    let k2n = "K".repeat(2 * n);
    let kinv2n = "k".repeat(2 * n);
    let mut rep = VerificationReport::new("hopf-ideal", n);
    let gens: [(&str, Combination); 3] = [
        ("E^2", comb(&[("EE", 1)])),
        ("F^2", comb(&[("FF", 1)])),
        ("K^2N - 1", comb(&[(k2n.as_str(), 1), ("", -1)])),
    ];
    let printed_delta = [
        tensor(&[("EE", "", 1), ("KK", "EE", 1)]),
        tensor(&[("FF", "kk", 1), ("", "FF", 1)]),
        tensor(&[(k2n.as_str(), k2n.as_str(), 1), (k2n.as_str(), "", -1), (k2n.as_str(), "", 1), ("", "", -1)]),
    ];
    let printed_s = [
        comb(&[("kkEE", -1)]),
        comb(&[("FFKK", -1)]),
        comb(&[(format!("{kinv2n}{k2n}").as_str(), 1), (kinv2n.as_str(), -1)]),
    ];
    let printed_delta_text = ["E^2⊗1 + K^2⊗E^2", "F^2⊗K^-2 + 1⊗F^2", "K^2N⊗(K^2N - 1) + (K^2N - 1)⊗1"];
    let printed_s_text = ["-K^-2 E^2", "-F^2 K^2", "K^-2N (K^2N - 1)"];
    for (idx, (name, x)) in gens.iter().enumerate() {
        let d = free_delta(x);
        rep.push(Check::new(format!("Δ({name})"), claim_d).against_printed(show(&printed_delta[idx]), show(&d)).with_printed(printed_delta_text[idx]));
        let e = free_counit(x);
        rep.push(Check::new(format!("ε({name})"), claim_e).against_printed("0".to_string(), e.to_string()));
        let s = free_antipode(x);
        rep.push(Check::new(format!("S({name})"), claim_e).against_printed(printed_s[idx].to_string(), s.to_string()).with_printed(printed_s_text[idx]));
        let dq = normalize(&d, System::Quotient(n));
        rep.push(Check::new(format!("Δ({name}) ∈ I⊗U + U⊗I"), claim_i).compare("0".to_string(), show(&dq)));
        let sq = normal_form(&s, System::Quotient(n));
        rep.push(Check::new(format!("S({name}) ∈ I"), claim_i).compare("0".to_string(), sq.to_string()));
    }
    rep
}

trait WithPrinted {
    fn with_printed(self, text: &str) -> Self;
}

impl WithPrinted for Check {
    /// Prefixes the expected value with the formula as printed.
    fn with_printed(mut self, text: &str) -> Self {
        self.expected = format!("{text} = {}", self.expected);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_identities_hold() {
        for n in 1..=3 {
            let rep = verify_hopf_ideal(n);
            assert!(!rep.has_failures(), "{}", rep.to_text());
            let odd: Vec<&str> = rep.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
            assert_eq!(odd, ["S(K^2N - 1)"]);
        }
    }

    #[test]
    fn free_coproduct_of_k() {
        let d = free_delta(&comb(&[("Kk", 1)]));
        assert_eq!(d, tensor(&[("", "", 1)]));
    }
}
