//! Word rewriting for U_i(sl₂) and its quotients H_N^i.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::Rng;

use crate::scalars::Cyclotomic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    K,
    Kinv,
    E,
    F,
}

impl Letter {
    pub fn symbol(self) -> &'static str {
        match self {
            Letter::K => "K",
            Letter::Kinv => "k",
            Letter::E => "E",
            Letter::F => "F",
        }
    }
}

pub type Word = Vec<Letter>;

/// Parses "EKFk" style words; `k` (or `K^-1` written as `k`) is K⁻¹.
pub fn parse_word(s: &str) -> Option<Word> {
    s.chars()
        .map(|c| match c {
            'K' => Some(Letter::K),
            'k' => Some(Letter::Kinv),
            'E' => Some(Letter::E),
            'F' => Some(Letter::F),
            _ => None,
        })
        .collect()
}

pub fn word_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|l| l.symbol()).collect()
}

/// A word with a scalar coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorWord {
    pub letters: Word,
    pub coefficient: Cyclotomic,
}

/// Which relations are imposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum System {
    /// U_i(sl₂) itself: K invertible, no nilpotency.
    Free,
    /// H_N^i: additionally E² = F² = 0 and K^{2N} = 1.
    Quotient(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    KinvExpand,
    EK,
    KF,
    EF,
    EE,
    FF,
    KPower,
    EKinv,
    KinvF,
    KKinv,
    KinvK,
}

/// Linear combination of words.
#[derive(Clone, Default, PartialEq)]
pub struct Combination {
    terms: BTreeMap<Word, Cyclotomic>,
}

impl Combination {
    pub fn zero() -> Self {
        Combination { terms: BTreeMap::new() }
    }

    pub fn word(w: Word, c: Cyclotomic) -> Self {
        let mut s = Self::zero();
        s.add_term(w, c);
        s
    }

    pub fn one() -> Self {
        Self::word(Vec::new(), Cyclotomic::from_int(1))
    }

    pub fn add_term(&mut self, w: Word, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Cyclotomic) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone() * s);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Cyclotomic::from_int(-1)))
    }

    /// Concatenation product (no rewriting).
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, ca.clone() * cb);
            }
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<Word, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Debug for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(w, c)| format!("({c})*{}", word_string(w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// 1/(2i) = -i/2.
pub fn half_inv_i() -> Cyclotomic {
    Cyclotomic::i() * Cyclotomic::frac(-1, 2)
}

/// All redexes of a word: (position, rule).
pub fn redexes(w: &[Letter], system: System) -> Vec<(usize, Rule)> {
    use Letter::*;
    let mut out = Vec::new();
    for p in 0..w.len() {
        let a = w[p];
        if let System::Quotient(n) = system {
            if a == Kinv {
                out.push((p, Rule::KinvExpand));
            }
            if a == K && p + 2 * n <= w.len() && w[p..p + 2 * n].iter().all(|&l| l == K) {
                out.push((p, Rule::KPower));
            }
        }
        if p + 1 >= w.len() {
            continue;
        }
        let b = w[p + 1];
        let rule = match (a, b) {
            (E, K) => Some(Rule::EK),
            (K, F) => Some(Rule::KF),
            (E, F) => Some(Rule::EF),
            (E, E) if matches!(system, System::Quotient(_)) => Some(Rule::EE),
            (F, F) if matches!(system, System::Quotient(_)) => Some(Rule::FF),
            (E, Kinv) if system == System::Free => Some(Rule::EKinv),
            (Kinv, F) if system == System::Free => Some(Rule::KinvF),
            (K, Kinv) if system == System::Free => Some(Rule::KKinv),
            (Kinv, K) if system == System::Free => Some(Rule::KinvK),
            _ => None,
        };
        if let Some(r) = rule {
            out.push((p, r));
        }
    }
    out
}

fn splice(w: &[Letter], p: usize, len: usize, mid: &[Letter]) -> Word {
    let mut out = w[..p].to_vec();
    out.extend_from_slice(mid);
    out.extend_from_slice(&w[p + len..]);
    out
}

/// One rewrite step at a redex.
pub fn apply_rule(w: &[Letter], p: usize, rule: Rule, system: System) -> Vec<(Word, Cyclotomic)> {
    use Letter::*;
    let one = Cyclotomic::from_int(1);
    let minus = Cyclotomic::from_int(-1);
    match rule {
        Rule::KinvExpand => {
            let System::Quotient(n) = system else { unreachable!("K^-1 expansion needs N") };
            vec![(splice(w, p, 1, &vec![K; 2 * n - 1]), one)]
        }
        Rule::EK => vec![(splice(w, p, 2, &[K, E]), minus)],
        Rule::KF => vec![(splice(w, p, 2, &[F, K]), minus)],
        Rule::EKinv => vec![(splice(w, p, 2, &[Kinv, E]), minus)],
        Rule::KinvF => vec![(splice(w, p, 2, &[F, Kinv]), minus)],
        Rule::KKinv | Rule::KinvK => vec![(splice(w, p, 2, &[]), one)],
        Rule::EE | Rule::FF => vec![],
        Rule::KPower => {
            let System::Quotient(n) = system else { unreachable!("K^2N needs N") };
            vec![(splice(w, p, 2 * n, &[]), one)]
        }
        Rule::EF => {
            let c = half_inv_i();
            let kinv: Vec<Letter> = match system {
                System::Quotient(n) => vec![K; 2 * n - 1],
                System::Free => vec![Kinv],
            };
            vec![
                (splice(w, p, 2, &[F, E]), one),
                (splice(w, p, 2, &[K]), c.clone()),
                (splice(w, p, 2, &kinv), -c),
            ]
        }
    }
}

/// Redex selection policy.
pub enum Strategy<'a> {
    /// Leftmost redex of the smallest reducible word.
    Leftmost,
    /// Uniformly random reducible word and redex.
    Random(&'a mut dyn rand::RngCore),
}

/// Exhaustive rewriting to normal form.
pub fn reduce(c: &Combination, system: System, strategy: &mut Strategy<'_>) -> Combination {
    let mut cur = c.clone();
    loop {
        let reducible: Vec<(&Word, Vec<(usize, Rule)>)> = cur
            .terms
            .keys()
            .map(|w| (w, redexes(w, system)))
            .filter(|(_, r)| !r.is_empty())
            .collect();
        if reducible.is_empty() {
            return cur;
        }
        let (word, pos, rule) = match strategy {
            Strategy::Leftmost => {
                let (w, r) = &reducible[0];
                ((*w).clone(), r[0].0, r[0].1)
            }
            Strategy::Random(rng) => {
                let (w, r) = &reducible[rng.gen_range(0..reducible.len())];
                let (p, rule) = r[rng.gen_range(0..r.len())];
                ((*w).clone(), p, rule)
            }
        };
        let coeff = cur.terms.remove(&word).expect("word present");
        for (w, c) in apply_rule(&word, pos, rule, system) {
            cur.add_term(w, c * &coeff);
        }
    }
}

pub fn normal_form(c: &Combination, system: System) -> Combination {
    reduce(c, system, &mut Strategy::Leftmost)
}

/// Whether a word is in normal form F^a K^n E^b (or with K⁻¹ in the free system).
pub fn is_normal(w: &[Letter], system: System) -> bool {
    redexes(w, system).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn nf(s: &str, n: usize) -> Combination {
        normal_form(&Combination::word(parse_word(s).unwrap(), Cyclotomic::from_int(1)), System::Quotient(n))
    }

    #[test]
    fn ek_anticommutes() {
        let r = nf("EK", 1);
        assert_eq!(r, Combination::word(parse_word("KE").unwrap(), Cyclotomic::from_int(-1)));
    }

    #[test]
    fn ef_commutator_n2() {
        let r = nf("EF", 2);
        let c = half_inv_i();
        let mut expect = Combination::word(parse_word("FE").unwrap(), Cyclotomic::from_int(1));
        expect.add_term(parse_word("K").unwrap(), c.clone());
        expect.add_term(parse_word("KKK").unwrap(), -c);
        assert_eq!(r, expect);
    }

    #[test]
    fn nilpotency() {
        assert!(nf("EE", 3).is_zero());
        assert!(nf("FKF", 2).is_zero());
    }

    #[test]
    fn random_order_agrees() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let w = Combination::word(parse_word("EFKEkFE").unwrap(), Cyclotomic::from_int(1));
        let a = normal_form(&w, System::Quotient(2));
        let b = reduce(&w, System::Quotient(2), &mut Strategy::Random(&mut rng));
        assert_eq!(a, b);
    }
}
