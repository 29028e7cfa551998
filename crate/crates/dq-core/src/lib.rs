//! dq-core: the computable core of deformation quantization at desk scale.
//!
//! Everything is exact over the rationals. The crate is organized around
//! five layers:
//!
//! - [`symbolic`]: sparse polynomials, truncated h-series, differential and
//!   bidifferential operators, polynomial forms, and the text grammar.
//! - [`star`]: star products (bidifferential series, constant-Poisson
//!   closed forms, PBW rewriting algebras), associativity auditing, Poisson
//!   brackets, gauge transport, external products and the centralizer
//!   construction.
//! - [`homology`]: exact linear algebra over the principal ideal domain
//!   Q[h] — Smith normal form, homology of free complexes, the gr functor,
//!   h-localization and the graded exact-sequence checks.
//! - [`quantized`]: builders for the explicit complexes of the theory:
//!   the h-de Rham comparison complex, the diagonal Koszul complex, the
//!   P-complex with its wedge pairing, and the two-variable PBW Koszul
//!   complex.
//! - [`lagrangian`]: Lagrangian cycles on the cotangent plane, intersection
//!   numbers, Euler-Poincare index pairing, and Hamiltonian shears.

pub mod error;
pub mod homology;
pub mod lagrangian;
pub mod quantized;
pub mod sample;
pub mod star;
pub mod symbolic;

pub use error::{DqError, Result};
