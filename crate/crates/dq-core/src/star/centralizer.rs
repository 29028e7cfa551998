use std::collections::BTreeMap;


use crate::error::{DqError, Result};
use crate::symbolic::{Context, DiffOp, HDiffOp, HSeries, Mono, Poly, Rat};

/// A star product reconstructed from operator families `A_i`, `B_i` with
/// `A_i(1) = B_i(1) = x_i`, `A_i = B_i = x_i mod h` and `[A_i, B_j] = 0`.
/// Elements of the algebra are the operators commuting with every `B_i`;
/// evaluation at 1 identifies them with truncated series and the product is
/// pulled back through that identification.
#[derive(Debug, Clone)]
pub struct CentralizerProduct {
    ctx: Context,
    order: usize,
    a_ops: Vec<HDiffOp>,
    b_ops: Vec<HDiffOp>,
}

impl CentralizerProduct {
    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn a_ops(&self) -> &[HDiffOp] {
        &self.a_ops
    }

    pub fn b_ops(&self) -> &[HDiffOp] {
        &self.b_ops
    }

    /// The opposite algebra swaps the two families.
    pub fn opposite(&self) -> CentralizerProduct {
        CentralizerProduct {
            ctx: self.ctx.clone(),
            order: self.order,
            a_ops: self.b_ops.clone(),
            b_ops: self.a_ops.clone(),
        }
    }

    pub fn external(
        &self,
        other: &CentralizerProduct,
        target: &Context,
        map_left: &[usize],
        map_right: &[usize],
    ) -> Result<CentralizerProduct> {
        if self.order != other.order {
            return Err(DqError::OrderMismatch { left: self.order, right: other.order });
        }
        let embed = |ops: &[HDiffOp], map: &[usize]| -> Vec<HDiffOp> {
            ops.iter()
                .map(|h| {
                    let embedded: Vec<DiffOp> =
                        (0..h.order()).map(|k| h.op(k).embed(target, map)).collect();
                    HDiffOp::from_ops(target, embedded).expect("nonempty")
                })
                .collect()
        };
        let mut a_ops = embed(&self.a_ops, map_left);
        a_ops.extend(embed(&other.a_ops, map_right));
        let mut b_ops = embed(&self.b_ops, map_left);
        b_ops.extend(embed(&other.b_ops, map_right));
        Ok(CentralizerProduct { ctx: target.clone(), order: self.order, a_ops, b_ops })
    }

    /// Solves `[G, B_i] = 0` for all i with `G(1) = f`, order by order.
    /// At each level the commutator with the coordinate functions pins every
    /// derivative coefficient; evaluation at 1 pins the rest.
    pub fn solve_commutant(&self, f: &Poly) -> Result<HDiffOp> {
        self.ctx.check_same(f.context())?;
        let n = self.order;
        let mut levels: Vec<DiffOp> = vec![DiffOp::mul_by(f)];
        for k in 1..n {
            // required: [G_k, x_i] = -sum_{p<k} [G_p, B_i^{(k-p)}]
            let mut targets: Vec<DiffOp> = Vec::with_capacity(self.ctx.len());
            for b in &self.b_ops {
                let mut c = DiffOp::zero(&self.ctx);
                for (p, g_p) in levels.iter().enumerate() {
                    let b_level = b.op(k - p);
                    if b_level.is_zero() || g_p.is_zero() {
                        continue;
                    }
                    c = c.sub(&g_p.commutator(b_level)?)?;
                }
                targets.push(c);
            }
            // read off the coefficients of G_k
            let mut coeffs: BTreeMap<Mono, Poly> = BTreeMap::new();
            for (i, c) in targets.iter().enumerate() {
                for (gamma, poly) in c.terms() {
                    let delta = gamma.mul(&Mono::var(i));
                    let weight = Rat::from_integer((gamma.exponent(i) + 1).into());
                    let candidate = poly.scale(&(Rat::from_integer(1.into()) / weight));
                    match coeffs.get(&delta) {
                        None => {
                            coeffs.insert(delta, candidate);
                        }
                        Some(existing) => {
                            if existing != &candidate {
                                return Err(DqError::CentralizerOrder {
                                    order: k,
                                    message: format!(
                                        "inconsistent coefficient for the derivative {:?}",
                                        delta.pairs()
                                    ),
                                });
                            }
                        }
                    }
                }
            }
            let mut g_k = DiffOp::zero(&self.ctx);
            for (delta, poly) in coeffs {
                g_k = g_k.add(&DiffOp::term(&self.ctx, poly, delta))?;
            }
            // verify the level exactly
            for (i, c) in targets.iter().enumerate() {
                let xi = DiffOp::mul_by(&Poly::var(&self.ctx, i));
                if &g_k.commutator(&xi)? != c {
                    return Err(DqError::CentralizerOrder {
                        order: k,
                        message: format!(
                            "no operator solves the commutation constraint with {}",
                            self.ctx.name(i)
                        ),
                    });
                }
            }
            levels.push(g_k);
        }
        HDiffOp::from_ops(&self.ctx, levels)
    }

    /// `f * g = (G(f) . G(g))(1)`, extended bilinearly over h-levels.
    pub fn star_mul(&self, f: &HSeries, g: &HSeries) -> Result<HSeries> {
        self.ctx.check_same(f.context())?;
        self.ctx.check_same(g.context())?;
        if f.order() != self.order || g.order() != self.order {
            return Err(DqError::OrderMismatch {
                left: f.order().min(g.order()),
                right: self.order,
            });
        }
        let lift = |coeffs: &[Poly]| -> Result<Vec<Option<HDiffOp>>> {
            coeffs
                .iter()
                .map(|p| if p.is_zero() { Ok(None) } else { self.solve_commutant(p).map(Some) })
                .collect()
        };
        let gf = lift(f.coeffs())?;
        let gg = lift(g.coeffs())?;
        let mut out = HSeries::zero(&self.ctx, self.order);
        for (i, fi) in gf.iter().enumerate() {
            let Some(fi) = fi else { continue };
            for (j, gj) in gg.iter().enumerate().take(self.order - i) {
                let Some(gj) = gj else { continue };
                let prod = fi.compose(gj)?.apply_one();
                out = out.add(&prod.shift_h(i + j))?;
            }
        }
        Ok(out)
    }
}

/// Verifies the operator-family conditions at the truncated order and
/// builds the centralizer product.
pub fn centralizer_star(
    ctx: &Context,
    order: usize,
    a_ops: Vec<HDiffOp>,
    b_ops: Vec<HDiffOp>,
) -> Result<CentralizerProduct> {
    if order == 0 {
        return Err(DqError::Precondition("truncation order must be positive".into()));
    }
    let n = ctx.len();
    if a_ops.len() != n || b_ops.len() != n {
        return Err(DqError::Precondition(format!(
            "need one A and one B operator per variable ({n})"
        )));
    }
    for (name, ops) in [("A", &a_ops), ("B", &b_ops)] {
        for (i, op) in ops.iter().enumerate() {
            ctx.check_same(op.context())?;
            if op.order() != order {
                return Err(DqError::OrderMismatch { left: op.order(), right: order });
            }
            let xi = Poly::var(ctx, i);
            // evaluation at 1 must give the coordinate
            let at_one = op.apply_one();
            let expected = HSeries::from_poly(&xi, order);
            if at_one != expected {
                return Err(DqError::Precondition(format!(
                    "{name}_{i}(1) != {}; the family is not unital",
                    ctx.name(i)
                )));
            }
            // x_i mod h
            if op.op(0) != &DiffOp::mul_by(&xi) {
                return Err(DqError::Precondition(format!(
                    "{name}_{i} is not multiplication by {} at order 0",
                    ctx.name(i)
                )));
            }
        }
    }
    for (i, a) in a_ops.iter().enumerate() {
        for (j, b) in b_ops.iter().enumerate() {
            if !a.commutator(b)?.is_zero() {
                return Err(DqError::Precondition(format!(
                    "[A_{i}, B_{j}] != 0 at the truncated order"
                )));
            }
        }
    }
    Ok(CentralizerProduct { ctx: ctx.clone(), order, a_ops, b_ops })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star::StarProduct;
    use crate::symbolic::{rat, Mono};

    fn xu() -> Context {
        Context::new(vec!["x", "u"]).unwrap()
    }

    /// A = (x, u + h d_x), B = (x + h d_u, u): the left/right multiplication
    /// operators of the normal-ordered product.
    fn normal_families(ctx: &Context, order: usize) -> (Vec<HDiffOp>, Vec<HDiffOp>) {
        let x = DiffOp::mul_by(&Poly::var(ctx, 0));
        let u = DiffOp::mul_by(&Poly::var(ctx, 1));
        let dx = DiffOp::partial(ctx, 0);
        let du = DiffOp::partial(ctx, 1);
        let a = vec![
            HDiffOp::from_op(&x, order),
            HDiffOp::from_op(&u, order).add(&HDiffOp::h_term(&dx, 1, order).unwrap()).unwrap(),
        ];
        let b = vec![
            HDiffOp::from_op(&x, order).add(&HDiffOp::h_term(&du, 1, order).unwrap()).unwrap(),
            HDiffOp::from_op(&u, order),
        ];
        (a, b)
    }

    #[test]
    fn commutative_families_give_plain_multiplication() {
        let c = xu();
        let order = 4;
        let coords: Vec<HDiffOp> = (0..2)
            .map(|i| HDiffOp::from_op(&DiffOp::mul_by(&Poly::var(&c, i)), order))
            .collect();
        let cp = centralizer_star(&c, order, coords.clone(), coords).unwrap();
        let f = HSeries::from_poly(&Poly::var(&c, 0).pow(2), order);
        let g = HSeries::from_poly(&Poly::var(&c, 1), order);
        let prod = cp.star_mul(&f, &g).unwrap();
        assert_eq!(prod.to_string(), "x^2*u");
    }

    #[test]
    fn normal_families_reconstruct_the_normal_product() {
        let c = xu();
        let order = 4;
        let (a, b) = normal_families(&c, order);
        let cp = centralizer_star(&c, order, a, b).unwrap();
        let reference = StarProduct::normal_cotangent(&c, order).unwrap();
        for (f, g) in [("u", "x"), ("u^2", "x^2"), ("x*u", "u"), ("x^2", "u^3")] {
            let fs = crate::symbolic::parse_series(f, &c, order).unwrap();
            let gs = crate::symbolic::parse_series(g, &c, order).unwrap();
            assert_eq!(
                cp.star_mul(&fs, &gs).unwrap(),
                reference.star_mul(&fs, &gs).unwrap(),
                "mismatch on ({f}, {g})"
            );
        }
    }

    #[test]
    fn broken_family_is_rejected() {
        let c = xu();
        let order = 3;
        let (mut a, b) = normal_families(&c, order);
        // break [A_1, B_0] = 0
        a[1] = a[1]
            .add(&HDiffOp::h_term(&DiffOp::partial(&c, 1), 1, order).unwrap())
            .unwrap();
        let err = centralizer_star(&c, order, a, b).unwrap_err();
        assert!(matches!(err, DqError::Precondition(_)));
    }

    #[test]
    fn weyl_families_have_consistent_bracket() {
        // A_i = x_i + (h/2) sum_j a_ij d_j, B_i = x_i - (h/2) sum_j a_ij d_j
        let c = Context::new(vec!["x1", "x2"]).unwrap();
        let order = 4;
        let a12 = rat(1, 1);
        let mut a_ops = Vec::new();
        let mut b_ops = Vec::new();
        for i in 0..2 {
            let xi = DiffOp::mul_by(&Poly::var(&c, i));
            let sign = if i == 0 { a12.clone() } else { -a12.clone() };
            let other = 1 - i;
            let delta = DiffOp::term(
                &c,
                Poly::constant(&c, sign * rat(1, 2)),
                Mono::var(other),
            );
            a_ops.push(
                HDiffOp::from_op(&xi, order)
                    .add(&HDiffOp::h_term(&delta, 1, order).unwrap())
                    .unwrap(),
            );
            b_ops.push(
                HDiffOp::from_op(&xi, order)
                    .sub(&HDiffOp::h_term(&delta, 1, order).unwrap())
                    .unwrap(),
            );
        }
        let cp = centralizer_star(&c, order, a_ops, b_ops).unwrap();
        let x1 = HSeries::from_poly(&Poly::var(&c, 0), order);
        let x2 = HSeries::from_poly(&Poly::var(&c, 1), order);
        let comm = cp.star_mul(&x1, &x2).unwrap().sub(&cp.star_mul(&x2, &x1).unwrap()).unwrap();
        // [x1, x2] = h a12
        assert_eq!(comm.to_string(), "h");
    }
}
