//! Eigenvalues of the antipode: S has finite order, so its spectrum lies among roots of unity.

use num_integer::Integer;
use serde::Serialize;

use super::HopfStructure;
use crate::fixtures;
use crate::linalg::Matrix;
use crate::quotient::{named_basis, QuotientError};
use crate::report::{Check, VerificationReport};
use crate::scalars::Cyclotomic;

#[derive(Clone, Debug, Serialize)]
pub struct Eigenspace {
    pub eigenvalue: Cyclotomic,
    pub multiplicity: usize,
    /// Basis vectors in the coordinates of the matrix passed in.
    pub basis: Vec<Vec<Cyclotomic>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub order: u32,
    pub eigenspaces: Vec<Eigenspace>,
}

/// Smallest k ≥ 1 with m^k = 1, searched up to `limit`.
pub fn matrix_order(m: &Matrix<Cyclotomic>, limit: u32) -> Option<u32> {
    let id = Matrix::identity(m.rows());
    let mut p = m.clone();
    for k in 1..=limit {
        if p == id {
            return Some(k);
        }
        p = p.mul(m).expect("square");
    }
    None
}

/// Eigenspaces of a matrix of finite order: one kernel per candidate root of unity.
pub fn finite_order_spectrum(m: &Matrix<Cyclotomic>, order: u32, field_order: u32) -> Vec<Eigenspace> {
    let big = field_order.lcm(&order);
    let id = Matrix::identity(m.rows());
    let mut out = Vec::new();
    for j in 0..order {
        let lambda = Cyclotomic::root(big, (j * (big / order)) as i64).expect("root").minimal_order();
        let shifted = m.sub(&id.scale(&lambda)).expect("square");
        let ker = shifted.kernel();
        if !ker.is_empty() {
            out.push(Eigenspace { eigenvalue: lambda, multiplicity: ker.len(), basis: ker });
        }
    }
    out
}

/// Spectrum of S in the PBW basis; the order of S bounds the candidate eigenvalues.
pub fn antipode_spectrum(hs: &HopfStructure) -> SpectrumReport {
    let limit = 16 * hs.h.n() as u32;
    let order = matrix_order(&hs.antipode, limit).expect("antipode has finite order");
    SpectrumReport { n: hs.h.n(), order, eigenspaces: finite_order_spectrum(&hs.antipode, order, hs.h.order()) }
}

impl SpectrumReport {
    pub fn total_multiplicity(&self) -> usize {
        self.eigenspaces.iter().map(|e| e.multiplicity).sum()
    }

    pub fn multiplicity_of(&self, lambda: &Cyclotomic) -> usize {
        self.eigenspaces.iter().find(|e| e.eigenvalue == *lambda).map(|e| e.multiplicity).unwrap_or(0)
    }
}

/// S⁴ = 1, eigenvalue multiplicities, and (N = 1) the printed eigenvectors in the named basis.
pub fn spectrum_checks(hs: &HopfStructure) -> Result<VerificationReport, QuotientError> {
    let n = hs.h.n();
    let mut rep = VerificationReport::new("antipode-spectrum", n);
    let s4 = hs.antipode.pow(4)?;
    rep.push(Check::new("S⁴ = 1", "order of the antipode").holds(
        s4 == Matrix::identity(hs.h.dim()),
        "identity",
        if s4 == Matrix::identity(hs.h.dim()) { "identity" } else { "not the identity" },
    ));
    let spec = antipode_spectrum(hs);
    let computed: Vec<String> = spec.eigenspaces.iter().map(|e| format!("{}: {}", e.eigenvalue, e.multiplicity)).collect();
    rep.push(Check::new("eigenvalues lie in {1, i, −i, −1} and fill the space", "spectrum of the antipode").holds(
        spec.total_multiplicity() == hs.h.dim() && spec.order <= 4,
        format!("total multiplicity {}", hs.h.dim()),
        computed.join(", "),
    ));
    if n != 1 {
        return Ok(rep);
    }
    let fx = fixtures::h1_hopf();
    let basis = named_basis(&hs.h)?;
    let printed: Vec<String> = ["1", "i", "-i"].iter().map(|k| format!("{k}: {}", fx.antipode_eigenspaces[*k].len())).collect();
    let got: Vec<String> = ["1", "i", "-i"]
        .iter()
        .map(|k| format!("{k}: {}", spec.multiplicity_of(&fixtures::scalar(k).expect("fixture"))))
        .collect();
    rep.push(Check::new("eigenvalue multiplicities of S on H1", "spectrum of the antipode on H1").against_printed(
        printed.join(", "),
        got.join(", ") + if spec.eigenspaces.len() == 3 { "" } else { ", other eigenvalues present" },
    ));
    for (key, vecs) in &fx.antipode_eigenspaces {
        let lambda = fixtures::scalar(key).expect("fixture");
        let cols: Vec<Vec<Cyclotomic>> =
            vecs.iter().map(|v| basis.to_source(&fixtures::vector(v, &basis.labels).expect("fixture"))).collect();
        let eigen = cols.iter().all(|v| hs.antipode.apply(v).expect("dim") == v.iter().map(|x| x.clone() * &lambda).collect::<Vec<_>>());
        let rank = Matrix::from_columns(&cols)?.rank();
        let ok = eigen && rank == spec.multiplicity_of(&lambda);
        rep.push(Check::new(format!("eigenvectors of S for {key}"), "spectrum of the antipode on H1").printed_holds(
            ok,
            vecs.join(", "),
            format!("eigenvectors: {eigen}; rank {rank} of multiplicity {}", spec.multiplicity_of(&lambda)),
        ));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::build_hopf;
    use crate::quotient::Hni;
    use num_traits::One;

    #[test]
    fn h1_spectrum() {
        let h = Hni::build(1).unwrap();
        let rep = antipode_spectrum(&build_hopf(&h));
        assert_eq!(rep.order, 4);
        assert_eq!(rep.multiplicity_of(&Cyclotomic::one()), 4);
        assert_eq!(rep.multiplicity_of(&Cyclotomic::i()), 2);
        assert_eq!(rep.multiplicity_of(&-Cyclotomic::i()), 2);
        assert_eq!(rep.total_multiplicity(), 8);
    }

    #[test]
    fn printed_eigenvectors() {
        let h = Hni::build(1).unwrap();
        let rep = spectrum_checks(&build_hopf(&h)).unwrap();
        assert!(rep.checks.iter().all(|c| c.passed()), "{}", rep.to_text());
    }
}
