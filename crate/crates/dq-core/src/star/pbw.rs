//! Normal ordering for PBW rewriting algebras of Lie type: relations
//! `[x_i, x_j] = h * b_ij` with `b_ij` of polynomial degree at most one,
//! for context positions `i < j`. Words rewrite to the basis of
//! nondecreasing monomials; termination follows from the lexicographic
//! descent on (length, inversion count).

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{DqError, Result};
use crate::symbolic::{Context, HSeries, Mono, Poly, Rat};

/// Relation table: for every pair `i < j`, the bracket polynomial `b_ij`
/// with `[x_i, x_j] = h * b_ij` (linear plus constant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwRelations {
    ctx: Context,
    brackets: BTreeMap<(usize, usize), Poly>,
}

impl PbwRelations {
    /// Missing pairs default to commuting variables.
    pub fn new(ctx: &Context, brackets: Vec<((usize, usize), Poly)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((i, j), b) in brackets {
            if i >= j || j >= ctx.len() {
                return Err(DqError::Precondition(format!(
                    "bracket pair ({i}, {j}) must satisfy i < j < {}",
                    ctx.len()
                )));
            }
            ctx.check_same(b.context())?;
            if b.total_degree() > 1 {
                return Err(DqError::Precondition(format!(
                    "bracket for ({}, {}) has degree {} > 1; only Lie-type relations are supported",
                    ctx.name(i),
                    ctx.name(j),
                    b.total_degree()
                )));
            }
            if !b.is_zero() {
                map.insert((i, j), b);
            }
        }
        Ok(PbwRelations { ctx: ctx.clone(), brackets: map })
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// `[x_i, x_j] = h * bracket(i, j)` for i < j.
    pub fn bracket(&self, i: usize, j: usize) -> Poly {
        debug_assert!(i < j);
        self.brackets.get(&(i, j)).cloned().unwrap_or_else(|| Poly::zero(&self.ctx))
    }

    /// The opposite algebra: all brackets negated.
    pub fn opposite(&self) -> PbwRelations {
        PbwRelations {
            ctx: self.ctx.clone(),
            brackets: self.brackets.iter().map(|(k, b)| (*k, b.neg())).collect(),
        }
    }

    pub fn bracket_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Poly)> {
        self.brackets.iter()
    }
}

/// A linear combination of noncommutative words with rational coefficients
/// and h-powers, truncated at `order`.
#[derive(Debug, Clone)]
pub struct WordSum {
    order: usize,
    terms: BTreeMap<(usize, Vec<usize>), Rat>,
}

impl WordSum {
    pub fn zero(order: usize) -> Self {
        WordSum { order, terms: BTreeMap::new() }
    }

    pub fn word(order: usize, h_power: usize, letters: Vec<usize>, coeff: Rat) -> Self {
        let mut w = WordSum::zero(order);
        w.insert(h_power, letters, coeff);
        w
    }

    fn insert(&mut self, h: usize, letters: Vec<usize>, c: Rat) {
        if h >= self.order || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((h, letters)) {
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
}

fn first_inversion(word: &[usize]) -> Option<usize> {
    word.windows(2).position(|w| w[0] > w[1])
}

/// Rewrites a word sum to the normal-ordered basis. Each inversion
/// `x_j x_i` (j > i) becomes `x_i x_j - h * b_ij` spliced in place.
pub fn normal_form(rel: &PbwRelations, input: WordSum) -> HSeries {
    let order = input.order;
    let mut pending: Vec<((usize, Vec<usize>), Rat)> = input.terms.into_iter().collect();
    let mut done = WordSum::zero(order);

    while let Some(((h, word), coeff)) = pending.pop() {
        if h >= order || coeff.is_zero() {
            continue;
        }
        match first_inversion(&word) {
            None => done.insert(h, word, coeff),
            Some(p) => {
                let j = word[p];
                let i = word[p + 1];
                // swapped word
                let mut swapped = word.clone();
                swapped.swap(p, p + 1);
                pending.push(((h, swapped), coeff.clone()));
                // minus h * bracket(i, j) spliced at position p
                let b = rel.bracket(i, j);
                for (m, c) in b.terms() {
                    let mut spliced: Vec<usize> = word[..p].to_vec();
                    for &(v, e) in m.pairs() {
                        for _ in 0..e {
                            spliced.push(v);
                        }
                    }
                    spliced.extend_from_slice(&word[p + 2..]);
                    pending.push(((h + 1, spliced), -(coeff.clone() * c)));
                }
            }
        }
    }

    // Normal-ordered words are commutative monomials.
    let ctx = rel.context();
    let mut coeffs = vec![Poly::zero(ctx); order];
    for ((h, word), c) in done.terms {
        let mono = Mono::from_pairs(word.into_iter().map(|v| (v, 1)).collect());
        coeffs[h] = coeffs[h].add(&Poly::monomial(ctx, mono, c)).expect("same context");
    }
    HSeries::from_coeffs(ctx, coeffs).expect("order > 0")
}

/// Star product of two truncated series in the PBW algebra: each commutative
/// monomial stands for its normal-ordered word; products concatenate and
/// rewrite.
pub fn pbw_star_mul(rel: &PbwRelations, f: &HSeries, g: &HSeries) -> Result<HSeries> {
    rel.context().check_same(f.context())?;
    rel.context().check_same(g.context())?;
    if f.order() != g.order() {
        return Err(DqError::OrderMismatch { left: f.order(), right: g.order() });
    }
    let order = f.order();
    let mut acc = WordSum::zero(order);
    for (hf, mf, cf) in f.flat_terms() {
        let wf = mono_to_word(&mf);
        for (hg, mg, cg) in g.flat_terms() {
            let h = hf + hg;
            if h >= order {
                continue;
            }
            let mut word = wf.clone();
            word.extend(mono_to_word(&mg));
            acc.insert(h, word, cf.clone() * &cg);
        }
    }
    Ok(normal_form(rel, acc))
}

fn mono_to_word(m: &Mono) -> Vec<usize> {
    let mut w = Vec::new();
    for &(v, e) in m.pairs() {
        for _ in 0..e {
            w.push(v);
        }
    }
    w
}
