use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::context::Context;
use super::mono::Mono;
use super::poly::Poly;
use super::rat::Rat;
use super::series::HSeries;
use crate::error::{DqError, Result};

/// A polynomial-coefficient differential operator: a sum of `a(x) d^alpha`
/// terms keyed by the derivative multi-index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOp {
    ctx: Context,
    terms: BTreeMap<Mono, Poly>,
}

impl DiffOp {
    pub fn zero(ctx: &Context) -> Self {
        DiffOp { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    /// The identity operator (multiplication by 1).
    pub fn identity(ctx: &Context) -> Self {
        DiffOp::mul_by(&Poly::one(ctx))
    }

    /// Multiplication by a polynomial.
    pub fn mul_by(p: &Poly) -> Self {
        let mut op = DiffOp::zero(p.context());
        op.insert_add(Mono::one(), p.clone());
        op
    }

    /// `d/dx_idx`.
    pub fn partial(ctx: &Context, idx: usize) -> Self {
        let mut op = DiffOp::zero(ctx);
        op.insert_add(Mono::var(idx), Poly::one(ctx));
        op
    }

    pub fn term(ctx: &Context, coeff: Poly, alpha: Mono) -> Self {
        let mut op = DiffOp::zero(ctx);
        op.insert_add(alpha, coeff);
        op
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Poly)> {
        self.terms.iter()
    }

    /// Coefficient of the derivative-free part (the multiplication part).
    pub fn order_zero_part(&self) -> Poly {
        self.terms.get(&Mono::one()).cloned().unwrap_or_else(|| Poly::zero(&self.ctx))
    }

    fn insert_add(&mut self, alpha: Mono, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
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

    pub fn add(&self, other: &DiffOp) -> Result<DiffOp> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.insert_add(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DiffOp) -> Result<DiffOp> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> DiffOp {
        if k.is_zero() {
            return DiffOp::zero(&self.ctx);
        }
        DiffOp {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.scale(k))).collect(),
        }
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        self.ctx.check_same(f.context())?;
        let mut out = Poly::zero(&self.ctx);
        for (alpha, coeff) in &self.terms {
            let d = f.partial_multi(alpha);
            if !d.is_zero() {
                out = out.add(&coeff.mul(&d)?)?;
            }
        }
        Ok(out)
    }

    /// Operator composition `self . other` via the Leibniz expansion
    /// `d^alpha (b g) = sum binom(alpha, gamma) d^gamma(b) d^(alpha-gamma) g`.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = DiffOp::zero(&self.ctx);
        for (alpha, a) in &self.terms {
            for (beta, b) in &other.terms {
                for (gamma, binom) in split_multi_index(alpha) {
                    let db = b.partial_multi(&gamma);
                    if db.is_zero() {
                        continue;
                    }
                    let rest = alpha.checked_div(&gamma).expect("gamma <= alpha");
                    out.insert_add(rest.mul(beta), a.mul(&db)?.scale(&binom));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &DiffOp) -> Result<DiffOp> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn embed(&self, target: &Context, index_map: &[usize]) -> DiffOp {
        let mut out = DiffOp::zero(target);
        for (alpha, c) in &self.terms {
            out.insert_add(alpha.remap(index_map), c.embed(target, index_map));
        }
        out
    }
}

/// All sub-multi-indices `gamma <= alpha` with the multinomial weight
/// `prod_i binom(alpha_i, gamma_i)`.
fn split_multi_index(alpha: &Mono) -> Vec<(Mono, Rat)> {
    let mut parts: Vec<(Vec<(usize, u32)>, Rat)> = vec![(Vec::new(), Rat::one())];
    for &(idx, e) in alpha.pairs() {
        let mut next = Vec::with_capacity(parts.len() * (e as usize + 1));
        for (prefix, w) in &parts {
            let mut binom = Rat::one();
            for g in 0..=e {
                let mut p = prefix.clone();
                if g > 0 {
                    p.push((idx, g));
                }
                next.push((p, w * &binom));
                // binom(e, g+1) = binom(e, g) * (e-g)/(g+1)
                binom = binom * Rat::from_integer((e - g).into())
                    / Rat::from_integer((g + 1).into());
            }
        }
        parts = next;
    }
    parts.into_iter().map(|(p, w)| (Mono::from_pairs(p), w)).collect()
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (alpha, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for &(i, e) in alpha.pairs() {
                write!(f, " d_{}", self.ctx.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// A differential operator with truncated h-series coefficients:
/// `order` plain operators for h^0 .. h^(order-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HDiffOp {
    ctx: Context,
    ops: Vec<DiffOp>,
}

impl HDiffOp {
    pub fn zero(ctx: &Context, order: usize) -> Self {
        assert!(order > 0);
        HDiffOp { ctx: ctx.clone(), ops: vec![DiffOp::zero(ctx); order] }
    }

    pub fn from_op(op: &DiffOp, order: usize) -> Self {
        let mut h = HDiffOp::zero(op.context(), order);
        h.ops[0] = op.clone();
        h
    }

    pub fn from_ops(ctx: &Context, ops: Vec<DiffOp>) -> Result<Self> {
        if ops.is_empty() {
            return Err(DqError::Precondition("order must be positive".into()));
        }
        for op in &ops {
            ctx.check_same(op.context())?;
        }
        Ok(HDiffOp { ctx: ctx.clone(), ops })
    }

    /// `op * h^k` truncated at `order`.
    pub fn h_term(op: &DiffOp, k: usize, order: usize) -> Result<Self> {
        if k >= order {
            return Err(DqError::Precondition(format!(
                "h-power {k} exceeds truncation order {order}"
            )));
        }
        let mut h = HDiffOp::zero(op.context(), order);
        h.ops[k] = op.clone();
        Ok(h)
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.ops.len()
    }

    pub fn op(&self, k: usize) -> &DiffOp {
        &self.ops[k]
    }

    pub fn is_zero(&self) -> bool {
        self.ops.iter().all(DiffOp::is_zero)
    }

    fn check_compatible(&self, other: &HDiffOp) -> Result<()> {
        self.ctx.check_same(&other.ctx)?;
        if self.order() != other.order() {
            return Err(DqError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &HDiffOp) -> Result<HDiffOp> {
        self.check_compatible(other)?;
        let ops = self
            .ops
            .iter()
            .zip(&other.ops)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(HDiffOp { ctx: self.ctx.clone(), ops })
    }

    pub fn sub(&self, other: &HDiffOp) -> Result<HDiffOp> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HDiffOp {
        HDiffOp { ctx: self.ctx.clone(), ops: self.ops.iter().map(DiffOp::neg).collect() }
    }

    /// Composition truncated at the shared order.
    pub fn compose(&self, other: &HDiffOp) -> Result<HDiffOp> {
        self.check_compatible(other)?;
        let n = self.order();
        let mut ops = vec![DiffOp::zero(&self.ctx); n];
        for (i, a) in self.ops.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.ops.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                ops[i + j] = ops[i + j].add(&a.compose(b)?)?;
            }
        }
        Ok(HDiffOp { ctx: self.ctx.clone(), ops })
    }

    pub fn commutator(&self, other: &HDiffOp) -> Result<HDiffOp> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Applies to a truncated series coefficientwise.
    pub fn apply(&self, f: &HSeries) -> Result<HSeries> {
        self.ctx.check_same(f.context())?;
        if self.order() != f.order() {
            return Err(DqError::OrderMismatch { left: self.order(), right: f.order() });
        }
        let n = self.order();
        let mut coeffs = vec![Poly::zero(&self.ctx); n];
        for (i, op) in self.ops.iter().enumerate() {
            if op.is_zero() {
                continue;
            }
            for j in 0..n - i {
                let v = op.apply(f.coeff(j))?;
                if !v.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&v)?;
                }
            }
        }
        HSeries::from_coeffs(&self.ctx, coeffs)
    }

    /// Evaluates on the constant polynomial 1.
    pub fn apply_one(&self) -> HSeries {
        let one = Poly::one(&self.ctx);
        let coeffs = self.ops.iter().map(|op| op.apply(&one).expect("same context")).collect();
        HSeries::from_coeffs(&self.ctx, coeffs).expect("nonempty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rat::rat_int;

    fn ctx() -> Context {
        Context::new(vec!["x", "u"]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let c = ctx();
        let x = Poly::var(&c, 0);
        let u = Poly::var(&c, 1);
        // d_x (x^3) = 3x^2
        let dx = DiffOp::partial(&c, 0);
        assert_eq!(dx.apply(&x.pow(3)).unwrap(), x.pow(2).scale(&rat_int(3)));
        // (x d_u)(u^2) = 2xu
        let xdu = DiffOp::term(&c, x.clone(), Mono::var(1));
        assert_eq!(xdu.apply(&u.pow(2)).unwrap(), x.mul(&u).unwrap().scale(&rat_int(2)));
        // (d_x d_u)(xu) = 1
        let dxdu = DiffOp::term(&c, Poly::one(&c), Mono::from_pairs(vec![(0, 1), (1, 1)]));
        assert_eq!(dxdu.apply(&x.mul(&u).unwrap()).unwrap(), Poly::one(&c));
    }

    #[test]
    fn canonical_commutator() {
        let c = ctx();
        let n = 4;
        // [d_x, x] = 1
        let dx = HDiffOp::from_op(&DiffOp::partial(&c, 0), n);
        let mx = HDiffOp::from_op(&DiffOp::mul_by(&Poly::var(&c, 0)), n);
        let id = HDiffOp::from_op(&DiffOp::identity(&c), n);
        assert_eq!(dx.commutator(&mx).unwrap(), id);
        // [x, u] = 0
        let mu = HDiffOp::from_op(&DiffOp::mul_by(&Poly::var(&c, 1)), n);
        assert!(mx.commutator(&mu).unwrap().is_zero());
    }

    #[test]
    fn weyl_pair_commutes() {
        // [u + h d_x, x + h d_u] = h[d_x,x] + h[u,d_u] = h - h = 0
        let c = ctx();
        let n = 5;
        let a = HDiffOp::from_op(&DiffOp::mul_by(&Poly::var(&c, 1)), n)
            .add(&HDiffOp::h_term(&DiffOp::partial(&c, 0), 1, n).unwrap())
            .unwrap();
        let b = HDiffOp::from_op(&DiffOp::mul_by(&Poly::var(&c, 0)), n)
            .add(&HDiffOp::h_term(&DiffOp::partial(&c, 1), 1, n).unwrap())
            .unwrap();
        assert!(a.commutator(&b).unwrap().is_zero());
    }

    #[test]
    fn leibniz_rule_first_order() {
        let c = ctx();
        let x = Poly::var(&c, 0);
        let u = Poly::var(&c, 1);
        let d = DiffOp::term(&c, x.clone(), Mono::var(0)); // x d_x
        let f = x.pow(2).add(&u).unwrap();
        let g = x.mul(&u).unwrap();
        let lhs = d.apply(&f.mul(&g).unwrap()).unwrap();
        let rhs = d.apply(&f).unwrap().mul(&g).unwrap().add(&f.mul(&d.apply(&g).unwrap()).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
