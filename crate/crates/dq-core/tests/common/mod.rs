//! Shared test oracles, independent of the implementation paths they check.
#![allow(dead_code)]

use dq_core::homology::HPoly;
use dq_core::symbolic::Poly;

/// Yun's squarefree decomposition over Q: returns the list of
/// (squarefree factor, multiplicity) pairs with multiplicity >= 1.
pub fn squarefree_decomposition(f: &HPoly) -> Vec<(HPoly, u32)> {
    assert!(!f.is_zero(), "decomposition of the zero polynomial");
    let mut out = Vec::new();
    let df = f.derivative();
    if df.is_zero() {
        // constant
        return out;
    }
    let g = f.gcd(&df);
    let mut c = f.div_rem(&g).0;
    let mut d = df.div_rem(&g).0.sub(&c.derivative());
    let mut i = 1u32;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        c = c.div_rem(&a).0;
        d = d.div_rem(&a).0.sub(&c.derivative());
        i += 1;
    }
    out
}

/// Total number of roots over the algebraic closure counted with
/// multiplicity, computed through the squarefree decomposition.
pub fn root_count_with_multiplicity(f: &HPoly) -> i64 {
    squarefree_decomposition(f)
        .into_iter()
        .map(|(a, m)| a.degree().unwrap_or(0) as i64 * m as i64)
        .sum()
}

/// Converts a univariate polynomial in the single-variable cycle context
/// into a dense coefficient form for the oracle.
pub fn univariate_to_dense(p: &Poly) -> HPoly {
    let mut coeffs = vec![num::Zero::zero(); p.total_degree() as usize + 1];
    for (m, c) in p.terms() {
        let deg = m.total_degree() as usize;
        coeffs[deg] = c.clone();
    }
    HPoly::from_coeffs(coeffs)
}
