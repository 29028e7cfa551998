use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use super::context::Context;
use super::mono::Mono;
use super::rat::{format_rat, Rat};
use crate::error::Result;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map ordered by the graded-lexicographic order on
/// monomials; zero coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: Context,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(ctx: &Context) -> Self {
        Poly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Context) -> Self {
        Poly::constant(ctx, Rat::one())
    }

    pub fn constant(ctx: &Context, c: Rat) -> Self {
        let mut p = Poly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Mono::one(), c);
        }
        p
    }

    pub fn var(ctx: &Context, idx: usize) -> Self {
        assert!(idx < ctx.len(), "variable index out of range");
        let mut p = Poly::zero(ctx);
        p.terms.insert(Mono::var(idx), Rat::one());
        p
    }

    pub fn var_named(ctx: &Context, name: &str) -> Option<Self> {
        ctx.index_of(name).map(|i| Poly::var(ctx, i))
    }

    pub fn monomial(ctx: &Context, m: Mono, c: Rat) -> Self {
        let mut p = Poly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn constant_part(&self) -> Rat {
        self.terms.get(&Mono::one()).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::total_degree).max().unwrap_or(0)
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert_add(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = Poly::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_add(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one(&self.ctx);
        for _ in 0..n {
            out = out.mul(self).expect("same context");
        }
        out
    }

    /// Partial derivative with respect to the variable at `idx`.
    pub fn partial(&self, idx: usize) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            if let Some((e, m2)) = m.step_down(idx) {
                out.insert_add(m2, c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// Iterated partial derivative along a multi-index.
    pub fn partial_multi(&self, alpha: &Mono) -> Poly {
        let mut out = self.clone();
        for &(idx, e) in alpha.pairs() {
            for _ in 0..e {
                if out.is_zero() {
                    return out;
                }
                out = out.partial(idx);
            }
        }
        out
    }

    /// Substitutes variable `idx` by the polynomial `value` (same context).
    pub fn substitute(&self, idx: usize, value: &Poly) -> Result<Poly> {
        self.ctx.check_same(&value.ctx)?;
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exponent(idx);
            let rest = Mono::from_pairs(
                m.pairs().iter().copied().filter(|&(i, _)| i != idx).collect(),
            );
            let term = Poly::monomial(&self.ctx, rest, c.clone()).mul(&value.pow(e))?;
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in a larger context via an index map.
    pub fn embed(&self, target: &Context, index_map: &[usize]) -> Poly {
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            out.insert_add(m.remap(index_map), c.clone());
        }
        out
    }

    /// Evaluates at the origin of selected variables (sets them to zero).
    pub fn without_vars(&self, vars: &[usize]) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            if vars.iter().all(|&v| m.exponent(v) == 0) {
                out.insert_add(m.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(self.terms().map(|(m, c)| (String::new(), m.clone(), c.clone())), &self.ctx))
    }
}

/// Shared term formatter for polynomials and h-series. Each term carries an
/// optional power-of-h prefix (already rendered), a monomial and a coefficient.
/// Output conforms to the input grammar: no parentheses, explicit `*`.
pub(crate) fn format_terms<I>(terms: I, ctx: &Context) -> String
where
    I: IntoIterator<Item = (String, Mono, Rat)>,
{
    let mut out = String::new();
    let mut first = true;
    for (hpow, m, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !hpow.is_empty() {
            factors.push(hpow);
        }
        for &(idx, e) in m.pairs() {
            if e == 1 {
                factors.push(ctx.name(idx).to_string());
            } else {
                factors.push(format!("{}^{}", ctx.name(idx), e));
            }
        }
        if factors.is_empty() || !mag.is_one() {
            factors.insert(0, format_rat(&mag));
        }
        let body = factors.join("*");
        if first {
            if neg {
                out.push('-');
            }
            out.push_str(&body);
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if first {
        out.push('0');
    }
    out
}
