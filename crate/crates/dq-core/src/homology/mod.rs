//! h-adic homological algebra over the principal ideal domain Q[h]:
//! Smith normal form, homology of bounded free complexes, the graded
//! reduction functor, h-localization and the transfer checks built on them.

mod complex;
mod gr;
mod hpoly;
mod matrix;
pub mod random;
mod snf;

pub use complex::{homology_table, ComplexFile, FreeComplex, HomologyRow, ModuleSummary};
pub use gr::{
    conservativity_check, gr_complex, graded_les_check, graded_les_first_failure, is_exact,
    localize, vanishing_transfer_check, GrComplex, GradedLesRow,
};
pub use hpoly::HPoly;
pub use matrix::{HbarMatrix, MatrixFile, QMatrix};
pub use snf::{snf, Snf};
