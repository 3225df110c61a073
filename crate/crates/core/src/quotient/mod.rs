//! H_N^i from generators and relations: rewriting, PBW and idempotent bases, Casimir.

mod bases;
mod casimir;
mod pbw;
pub mod rewrite;
mod tables;

pub use bases::{
    casimir, center_check, fourier_basis, fourier_idempotent, fourier_properties, idempotent_basis, is_central,
    is_eigen, named_algebra, named_basis, BasisChange,
};
pub use casimir::casimir_odd_block;
pub use pbw::{at_order, index_to_pbw, pbw_label, pbw_to_index, pbw_word, Hni, PbwIndex};
pub use tables::table_checks;
pub use rewrite::{normal_form, parse_word, reduce, Combination, GeneratorWord, Letter, Strategy, System, Word};

use crate::algebra::AlgebraError;
use crate::linalg::LinalgError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("N must be at least 1, got {0}")]
    InvalidN(usize),
    #[error("named basis is defined for N = 1 and N = 2 only, got {0}")]
    NoNamedBasis(usize),
    #[error("word {0} is not in PBW normal form")]
    NotNormal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `normal_form` on a generator word in H_N^i, as PBW coordinates.
pub fn normal_form_word(w: &GeneratorWord, n: usize) -> Result<Vec<crate::Cyclotomic>, QuotientError> {
    let h = Hni::build(n)?;
    Ok(h.element(&Combination::word(w.letters.clone(), w.coefficient.clone())))
}

pub fn build_hni(n: usize) -> Result<Hni, QuotientError> {
    Hni::build(n)
}
