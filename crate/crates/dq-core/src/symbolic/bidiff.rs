use std::collections::BTreeMap;

use num::Zero;

use super::context::Context;
use super::diffop::DiffOp;
use super::mono::Mono;
use super::poly::Poly;
use super::rat::Rat;
use crate::error::Result;

/// A bidifferential operator: a sum of `c(x) (d^alpha f)(d^beta g)` terms,
/// keyed by the pair of derivative multi-indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiDiffOp {
    ctx: Context,
    terms: BTreeMap<(Mono, Mono), Poly>,
}

impl BiDiffOp {
    pub fn zero(ctx: &Context) -> Self {
        BiDiffOp { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    /// The plain multiplication `(f, g) -> fg`.
    pub fn multiplication(ctx: &Context) -> Self {
        let mut p = BiDiffOp::zero(ctx);
        p.insert_add(Mono::one(), Mono::one(), Poly::one(ctx));
        p
    }

    pub fn term(ctx: &Context, coeff: Poly, alpha: Mono, beta: Mono) -> Self {
        let mut p = BiDiffOp::zero(ctx);
        p.insert_add(alpha, beta, coeff);
        p
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Mono, Mono), &Poly)> {
        self.terms.iter()
    }

    pub fn insert_add(&mut self, alpha: Mono, beta: Mono, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((alpha, beta)) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff).expect("same context");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &BiDiffOp) -> Result<BiDiffOp> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.insert_add(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BiDiffOp) -> Result<BiDiffOp> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiDiffOp {
        BiDiffOp {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> BiDiffOp {
        if k.is_zero() {
            return BiDiffOp::zero(&self.ctx);
        }
        BiDiffOp {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(key, c)| (key.clone(), c.scale(k))).collect(),
        }
    }

    /// `(f, g) -> sum c (d^alpha f)(d^beta g)`.
    pub fn apply(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.ctx.check_same(f.context())?;
        self.ctx.check_same(g.context())?;
        let mut out = Poly::zero(&self.ctx);
        for ((alpha, beta), c) in &self.terms {
            let df = f.partial_multi(alpha);
            if df.is_zero() {
                continue;
            }
            let dg = g.partial_multi(beta);
            if dg.is_zero() {
                continue;
            }
            out = out.add(&c.mul(&df)?.mul(&dg)?)?;
        }
        Ok(out)
    }

    /// Swaps the two argument slots: `P^swap(f, g) = P(g, f)`.
    pub fn swap_args(&self) -> BiDiffOp {
        BiDiffOp {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
                .collect(),
        }
    }

    /// The antisymmetric part `(P(f,g) - P(g,f)) / 2`.
    pub fn antisymmetrize(&self) -> BiDiffOp {
        let half = Rat::new(1.into(), 2.into());
        self.sub(&self.swap_args()).expect("same context").scale(&half)
    }

    /// Plugging 1 into the left slot leaves a differential operator in the
    /// right slot; only derivative-free left indices survive.
    pub fn left_unit_part(&self) -> DiffOp {
        let mut op = DiffOp::zero(&self.ctx);
        for ((alpha, beta), c) in &self.terms {
            if alpha.is_one() {
                op = op
                    .add(&DiffOp::term(&self.ctx, c.clone(), beta.clone()))
                    .expect("same context");
            }
        }
        op
    }

    pub fn right_unit_part(&self) -> DiffOp {
        self.swap_args().left_unit_part()
    }

    /// Post-composition with a differential operator: `(D . P)(f, g) = D(P(f, g))`.
    /// Expanded by the trinomial Leibniz rule over coefficient and both slots.
    pub fn post_compose(&self, d: &DiffOp) -> Result<BiDiffOp> {
        self.ctx.check_same(d.context())?;
        let mut out = BiDiffOp::zero(&self.ctx);
        for (gamma, a) in d.terms() {
            for ((alpha, beta), c) in &self.terms {
                for (g1, w1, rest1) in splits(gamma) {
                    let dc = c.partial_multi(&g1);
                    if dc.is_zero() {
                        continue;
                    }
                    for (g2, w2, g3) in splits(&rest1) {
                        out.insert_add(
                            alpha.mul(&g2),
                            beta.mul(&g3),
                            a.mul(&dc)?.scale(&(w1.clone() * w2)),
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// Pre-composition in the left slot: `(f, g) -> P(D f, g)`.
    pub fn pre_compose_left(&self, d: &DiffOp) -> Result<BiDiffOp> {
        self.ctx.check_same(d.context())?;
        let mut out = BiDiffOp::zero(&self.ctx);
        for ((alpha, beta), c) in &self.terms {
            // d^alpha (a d^delta f) = sum binom(alpha,g) (d^g a) d^(alpha-g+delta) f
            for (delta, a) in d.terms() {
                for (g, w, rest) in splits(alpha) {
                    let da = a.partial_multi(&g);
                    if da.is_zero() {
                        continue;
                    }
                    out.insert_add(rest.mul(delta), beta.clone(), c.mul(&da)?.scale(&w));
                }
            }
        }
        Ok(out)
    }

    pub fn pre_compose_right(&self, d: &DiffOp) -> Result<BiDiffOp> {
        Ok(self.swap_args().pre_compose_left(d)?.swap_args())
    }

    /// External product on a disjoint union context: acts as `self` on the
    /// first factor's variables and as `other` on the second's.
    pub fn external(
        &self,
        other: &BiDiffOp,
        target: &Context,
        map_left: &[usize],
        map_right: &[usize],
    ) -> BiDiffOp {
        let mut out = BiDiffOp::zero(target);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let coeff = c1
                    .embed(target, map_left)
                    .mul(&c2.embed(target, map_right))
                    .expect("same context");
                out.insert_add(
                    a1.remap(map_left).mul(&a2.remap(map_right)),
                    b1.remap(map_left).mul(&b2.remap(map_right)),
                    coeff,
                );
            }
        }
        out
    }
}

/// Splits a multi-index into an ordered pair with binomial weights:
/// yields `(gamma, binom(alpha, gamma), alpha - gamma)`.
fn splits(alpha: &Mono) -> Vec<(Mono, Rat, Mono)> {
    let mut parts: Vec<(Vec<(usize, u32)>, Rat, Vec<(usize, u32)>)> =
        vec![(Vec::new(), Rat::from_integer(1.into()), Vec::new())];
    for &(idx, e) in alpha.pairs() {
        let mut next = Vec::with_capacity(parts.len() * (e as usize + 1));
        for (left, w, right) in &parts {
            let mut binom = Rat::from_integer(1.into());
            for g in 0..=e {
                let mut l = left.clone();
                let mut r = right.clone();
                if g > 0 {
                    l.push((idx, g));
                }
                if e - g > 0 {
                    r.push((idx, e - g));
                }
                next.push((l, w * &binom, r));
                binom = binom * Rat::from_integer((e - g).into())
                    / Rat::from_integer((g + 1).into());
            }
        }
        parts = next;
    }
    parts
        .into_iter()
        .map(|(l, w, r)| (Mono::from_pairs(l), w, Mono::from_pairs(r)))
        .collect()
}
