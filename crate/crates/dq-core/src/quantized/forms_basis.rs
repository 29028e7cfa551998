use std::collections::BTreeMap;

use crate::symbolic::{Context, Mono, Poly, PolyForm};

/// Basis element of a filtered form space: a monomial coefficient times a
/// strictly increasing wedge of coordinate differentials.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FormBasisElem {
    pub mono: Mono,
    pub indices: Vec<usize>,
}

/// Polynomial k-forms filtered by weight = coefficient degree + form degree,
/// cut at `bound`. The exterior derivative preserves the weight, so each
/// graded piece is finite and the truncated complex is a subcomplex.
#[derive(Debug, Clone)]
pub struct FilteredFormSpace {
    ctx: Context,
    bound: u32,
    /// bases[k] lists the degree-k basis in a fixed deterministic order
    bases: Vec<Vec<FormBasisElem>>,
    /// position of each element inside bases[k]
    index: Vec<BTreeMap<FormBasisElem, usize>>,
}

impl FilteredFormSpace {
    pub fn new(ctx: &Context, bound: u32) -> Self {
        let n = ctx.len();
        let mut bases = Vec::with_capacity(n + 1);
        let mut index = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut elems = Vec::new();
            if bound >= k as u32 {
                let coeff_bound = bound - k as u32;
                let monos = monomials_up_to(n, coeff_bound);
                for idx in k_subsets(n, k) {
                    for m in &monos {
                        elems.push(FormBasisElem { mono: m.clone(), indices: idx.clone() });
                    }
                }
            }
            elems.sort();
            let map = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
            bases.push(elems);
            index.push(map);
        }
        FilteredFormSpace { ctx: ctx.clone(), bound, bases, index }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn max_form_degree(&self) -> usize {
        self.ctx.len()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.bases.get(k).map(Vec::len).unwrap_or(0)
    }

    pub fn basis(&self, k: usize) -> &[FormBasisElem] {
        &self.bases[k]
    }

    pub fn position(&self, k: usize, e: &FormBasisElem) -> Option<usize> {
        self.index.get(k)?.get(e).copied()
    }

    /// Expands a form in the basis; `None` when a term falls outside the
    /// filtration.
    pub fn coordinates(&self, form: &PolyForm) -> Option<Vec<crate::symbolic::Rat>> {
        use num::Zero;
        let k = form.degree();
        let mut v = vec![crate::symbolic::Rat::zero(); self.dim(k)];
        for (indices, p) in form.terms() {
            for (m, c) in p.terms() {
                let e = FormBasisElem { mono: m.clone(), indices: indices.clone() };
                let pos = self.position(k, &e)?;
                v[pos] = c.clone();
            }
        }
        Some(v)
    }

    /// Realizes a basis element as a symbolic form.
    pub fn realize(&self, e: &FormBasisElem) -> PolyForm {
        let p = Poly::monomial(&self.ctx, e.mono.clone(), crate::symbolic::rat_int(1));
        PolyForm::term(&self.ctx, p, &e.indices).expect("valid indices")
    }
}

pub fn monomials_up_to(n_vars: usize, degree: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u32, Vec<(usize, u32)>)> = vec![(0, degree, Vec::new())];
    while let Some((var, budget, acc)) = stack.pop() {
        if var == n_vars {
            out.push(Mono::from_pairs(acc));
            continue;
        }
        for e in 0..=budget {
            let mut next = acc.clone();
            if e > 0 {
                next.push((var, e));
            }
            stack.push((var + 1, budget - e, next));
        }
    }
    out.sort();
    out
}

pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}
