//! Printed multiplication tables against the structure constants in the named basis.

use super::bases::named_algebra;
use super::pbw::Hni;
use super::QuotientError;
use crate::fixtures::{self, TableFixture};
use crate::report::{Check, VerificationReport};

fn block_checks(
    rep: &mut VerificationReport,
    h: &Hni,
    fx: &TableFixture,
    claim: &str,
) -> Result<(), QuotientError> {
    let (basis, alg) = named_algebra(h)?;
    let labels = &basis.labels;
    let printed = fixtures::table_vectors(&fx.rows, labels).expect("fixture");
    let mut bad = Vec::new();
    for (r, row_label) in fx.basis.iter().enumerate() {
        for (c, col_label) in fx.basis.iter().enumerate() {
            let (i, j) = (alg.index_of(row_label).expect("label"), alg.index_of(col_label).expect("label"));
            let got = alg.mul(&alg.basis_vector(i), &alg.basis_vector(j))?;
            if got != printed[r][c] {
                bad.push(format!("{row_label}·{col_label} = {} (printed {})", alg.format(&got), fx.rows[r][c]));
            }
        }
    }
    let cells = fx.basis.len() * fx.basis.len();
    rep.push(Check::new(format!("{claim}: {cells} cells"), claim).printed_holds(
        bad.is_empty(),
        format!("{cells}/{cells} cells"),
        if bad.is_empty() { format!("{cells}/{cells} cells") } else { format!("{}/{cells}; {}", cells - bad.len(), bad.join("; ")) },
    ));
    Ok(())
}

/// Every printed product x·y in the named basis (H₁, or both blocks of H₂).
pub fn table_checks(h: &Hni) -> Result<VerificationReport, QuotientError> {
    let mut rep = VerificationReport::new("table", h.n());
    match h.n() {
        1 => block_checks(&mut rep, h, &fixtures::h1_table(), "multiplication table of H1")?,
        2 => {
            block_checks(&mut rep, h, &fixtures::h2_even_table(), "multiplication table of the even block of H2")?;
            block_checks(&mut rep, h, &fixtures::h2_odd_table(), "multiplication table of the odd block of H2")?;
        }
        n => return Err(QuotientError::NoNamedBasis(n)),
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_tables_agree() {
        for n in [1, 2] {
            let rep = table_checks(&Hni::build(n).unwrap()).unwrap();
            assert!(rep.checks.iter().all(|c| c.passed()), "{}", rep.to_text());
        }
    }
}
