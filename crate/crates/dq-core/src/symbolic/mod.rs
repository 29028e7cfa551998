//! Exact symbolic layer: sparse rational polynomials, truncated series in
//! the deformation parameter, differential and bidifferential operators,
//! and polynomial differential forms.

mod bidiff;
mod context;
mod diffop;
mod form;
mod mono;
mod parse;
mod poly;
mod rat;
mod series;

pub use bidiff::BiDiffOp;
pub use context::Context;
pub use diffop::{DiffOp, HDiffOp};
pub use form::PolyForm;
pub use mono::Mono;
pub use parse::{parse_poly, parse_raw, parse_series, RawTerm};
pub use poly::Poly;
pub use rat::{format_rat, parse_rat, rat, rat_int, Rat};
pub use series::HSeries;
