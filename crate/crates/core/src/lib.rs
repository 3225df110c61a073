//! Exact computer algebra for the finite quantum groups H_N^i.

pub mod algebra;
pub mod cli;
pub mod fixtures;
pub mod hopf;
pub mod linalg;
pub mod morphisms;
pub mod quotient;
pub mod radical;
pub mod report;
pub mod representations;
pub mod scalars;

pub use scalars::{Cyclotomic, Field, Sign};
