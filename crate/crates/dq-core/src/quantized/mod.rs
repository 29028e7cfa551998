//! Builders and verifiers for the explicit complexes of the theory: the
//! deformed de Rham comparison pair, the diagonal Koszul computation of
//! commutative Hochschild dimensions, the weighted form-pair complex with
//! its wedge pairing, and the doubled PBW Koszul identity.

pub mod forms_basis;

mod derham;
mod hkr;
mod notisoc;
mod pcomplex;

pub use derham::{
    build_hbar_derham, constant_times_h_homology, derham_comparison, ComparisonMap,
    ComparisonReport, DeRhamPair,
};
pub use forms_basis::{FilteredFormSpace, FormBasisElem};
pub use hkr::{hochschild_commutative, hochschild_commutative_with_signs, HkrReport};
pub use notisoc::{build_algebra, koszul_notisoc_check, NotisocAlgebra, NotisocReport};
pub use pcomplex::{
    mu_pairing_check, p2_action_check,
    build_p_complex, d_pair, mu, mu_chain_map_holds, p2_act, PComplexReport, PPair,
    WeightSchedule,
};
