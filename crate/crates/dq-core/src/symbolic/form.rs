use std::collections::BTreeMap;
use std::fmt;

use super::context::Context;
use super::poly::Poly;
use super::rat::Rat;
use crate::error::{DqError, Result};

/// A polynomial differential form of fixed degree: a map from strictly
/// increasing variable-index sets of size `degree` to coefficient polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyForm {
    ctx: Context,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
}

impl PolyForm {
    pub fn zero(ctx: &Context, degree: usize) -> Self {
        PolyForm { ctx: ctx.clone(), degree, terms: BTreeMap::new() }
    }

    pub fn from_function(p: &Poly) -> Self {
        let mut f = PolyForm::zero(p.context(), 0);
        f.insert_add(Vec::new(), p.clone());
        f
    }

    /// A single term `p dx_I`; `indices` need not be sorted, the sign of the
    /// sorting permutation is absorbed into the coefficient.
    pub fn term(ctx: &Context, p: Poly, indices: &[usize]) -> Result<Self> {
        let mut f = PolyForm::zero(ctx, indices.len());
        let (sign, sorted) = match sort_with_sign(indices) {
            Some(v) => v,
            None => return Ok(f), // repeated index: the term vanishes
        };
        for &i in &sorted {
            if i >= ctx.len() {
                return Err(DqError::Precondition(format!("form index {i} out of range")));
            }
        }
        let coeff = if sign < 0 { p.neg() } else { p };
        f.insert_add(sorted, coeff);
        Ok(f)
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, indices: &[usize]) -> Poly {
        self.terms.get(indices).cloned().unwrap_or_else(|| Poly::zero(&self.ctx))
    }

    fn insert_add(&mut self, indices: Vec<usize>, p: Poly) {
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(indices) {
            Entry::Vacant(e) => {
                e.insert(p);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&p).expect("same context");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm> {
        self.ctx.check_same(&other.ctx)?;
        if self.degree != other.degree {
            return Err(DqError::Precondition(format!(
                "form degree mismatch: {} vs {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (i, p) in &other.terms {
            out.insert_add(i.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyForm {
        PolyForm {
            ctx: self.ctx.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(i, p)| (i.clone(), p.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> PolyForm {
        let mut out = PolyForm::zero(&self.ctx, self.degree);
        for (i, p) in &self.terms {
            out.insert_add(i.clone(), p.scale(c));
        }
        out
    }

    pub fn scale_poly(&self, a: &Poly) -> Result<PolyForm> {
        let mut out = PolyForm::zero(&self.ctx, self.degree);
        for (i, p) in &self.terms {
            out.insert_add(i.clone(), p.mul(a)?);
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(&self.ctx, self.degree + 1);
        for (indices, p) in &self.terms {
            for v in 0..self.ctx.len() {
                let dp = p.partial(v);
                if dp.is_zero() {
                    continue;
                }
                let mut idx = Vec::with_capacity(indices.len() + 1);
                idx.push(v);
                idx.extend_from_slice(indices);
                if let Some((sign, sorted)) = sort_with_sign(&idx) {
                    out.insert_add(sorted, if sign < 0 { dp.neg() } else { dp });
                }
            }
        }
        out
    }

    /// Wedge product.
    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = PolyForm::zero(&self.ctx, self.degree + other.degree);
        for (i1, p1) in &self.terms {
            for (i2, p2) in &other.terms {
                let mut idx = i1.clone();
                idx.extend_from_slice(i2);
                if let Some((sign, sorted)) = sort_with_sign(&idx) {
                    let c = p1.mul(p2)?;
                    out.insert_add(sorted, if sign < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }
}

/// Sorts indices, returning the permutation sign; `None` if an index repeats.
fn sort_with_sign(indices: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((sign, v))
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (indices, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p})")?;
            for &i in indices {
                write!(f, " d{}", self.ctx.name(i))?;
            }
        }
        Ok(())
    }
}
