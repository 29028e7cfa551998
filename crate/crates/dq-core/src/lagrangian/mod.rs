//! Lagrangian cycle calculus on the cotangent plane over a one-dimensional
//! base: weighted sums of smooth components (the zero section, graphs of
//! polynomial sections, vertical fibers), intersection numbers by root
//! multiplicity, the Euler-Poincare index pairing, and Hamiltonian shears.

mod cycle;

pub use cycle::{
    base_context, gradient_section,
    canonical_cycle, convolve, euler_index, intersection_number, CycleFile, LagComponent,
    LagCycle, ShearKernel,
};
