
use super::{StarKind, StarProduct};
use crate::error::{DqError, Result};
use crate::symbolic::{BiDiffOp, Context, DiffOp, HSeries, Poly};

/// A gauge: `phi(f) = sum_i h^i R_i(f)` with `R_0` the identity.
#[derive(Debug, Clone)]
pub struct GaugeMorphism {
    ctx: Context,
    ops: Vec<DiffOp>,
}

impl GaugeMorphism {
    /// `higher` supplies R_1, R_2, ...; R_0 is fixed to the identity.
    pub fn new(ctx: &Context, order: usize, higher: Vec<DiffOp>) -> Result<Self> {
        if order == 0 {
            return Err(DqError::Precondition("gauge order must be positive".into()));
        }
        if higher.len() + 1 > order {
            return Err(DqError::Precondition(format!(
                "gauge supplies {} operators beyond the truncation order {order}",
                higher.len() + 1
            )));
        }
        let mut ops = vec![DiffOp::identity(ctx)];
        for op in higher {
            ctx.check_same(op.context())?;
            ops.push(op);
        }
        ops.resize(order, DiffOp::zero(ctx));
        Ok(GaugeMorphism { ctx: ctx.clone(), ops })
    }

    pub fn identity(ctx: &Context, order: usize) -> Self {
        GaugeMorphism::new(ctx, order, Vec::new()).expect("order > 0")
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.ops.len()
    }

    pub fn op(&self, i: usize) -> &DiffOp {
        &self.ops[i]
    }

    /// Applies the gauge to a truncated series.
    pub fn apply(&self, f: &HSeries) -> Result<HSeries> {
        self.ctx.check_same(f.context())?;
        if f.order() != self.order() {
            return Err(DqError::OrderMismatch { left: f.order(), right: self.order() });
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
}

/// Transports a star product along a gauge: returns the product `*'` with
/// `phi(f *' g) = phi(f) * phi(g)`, solved order by order for the
/// bidifferential terms. With `R_1 = (1/2) d_x d_u` against the normal
/// product this recovers the Weyl antisymmetric term at order one.
pub fn gauge_transport(sp: &StarProduct, phi: &GaugeMorphism) -> Result<StarProduct> {
    sp.context().check_same(phi.context())?;
    let n = sp.order();
    if phi.order() != n {
        return Err(DqError::OrderMismatch { left: phi.order(), right: n });
    }
    let base = sp.bidiff_ops().ok_or_else(|| {
        DqError::Unsupported(
            "gauge transport needs a product with explicit bidifferential terms".into(),
        )
    })?;
    let ctx = sp.context();

    let mut transported: Vec<BiDiffOp> = Vec::with_capacity(n);
    for level in 0..n {
        // sum over i + j + k = level of P_k(R_i ., R_j .)
        let mut rhs = BiDiffOp::zero(ctx);
        for k in 0..=level {
            let pk = &base[k];
            if pk.is_zero() {
                continue;
            }
            for i in 0..=level - k {
                let j = level - k - i;
                let ri = phi.op(i);
                let rj = phi.op(j);
                if ri.is_zero() || rj.is_zero() {
                    continue;
                }
                let mut term = pk.clone();
                if i > 0 {
                    term = term.pre_compose_left(ri)?;
                }
                if j > 0 {
                    term = term.pre_compose_right(rj)?;
                }
                rhs = rhs.add(&term)?;
            }
        }
        // subtract R_i(P'_{level - i}) for i >= 1
        for i in 1..=level {
            let ri = phi.op(i);
            if ri.is_zero() {
                continue;
            }
            let prev = &transported[level - i];
            if prev.is_zero() {
                continue;
            }
            rhs = rhs.sub(&prev.post_compose(ri)?)?;
        }
        if level > 0
            && (!rhs.left_unit_part().is_zero() || !rhs.right_unit_part().is_zero())
        {
            return Err(DqError::GaugeOrder {
                order: level,
                message: "transported term does not kill the unit; the gauge does not target a star product"
                    .into(),
            });
        }
        transported.push(rhs);
    }

    StarProduct::new(ctx, n, StarKind::BiDiff(transported))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{parse_series, rat, Mono};

    fn xu() -> Context {
        Context::new(vec!["x", "u"]).unwrap()
    }

    fn half_dxdu(ctx: &Context) -> DiffOp {
        DiffOp::term(ctx, Poly::constant(ctx, rat(1, 2)), Mono::from_pairs(vec![(0, 1), (1, 1)]))
    }

    #[test]
    fn normal_to_weyl_at_order_one() {
        let c = xu();
        let sp = StarProduct::normal_cotangent(&c, 4).unwrap();
        let phi = GaugeMorphism::new(&c, 4, vec![half_dxdu(&c)]).unwrap();
        let sp2 = gauge_transport(&sp, &phi).unwrap();
        let ops = sp2.bidiff_ops().unwrap();
        // P'_1 = (1/2)(d_u (x) d_x - d_x (x) d_u)
        let expected = BiDiffOp::term(&c, Poly::constant(&c, rat(1, 2)), Mono::var(1), Mono::var(0))
            .add(&BiDiffOp::term(
                &c,
                Poly::constant(&c, rat(-1, 2)),
                Mono::var(0),
                Mono::var(1),
            ))
            .unwrap();
        assert_eq!(ops[1], expected);
    }

    #[test]
    fn identity_gauge_is_neutral() {
        let c = xu();
        let sp = StarProduct::normal_cotangent(&c, 5).unwrap();
        let phi = GaugeMorphism::identity(&c, 5);
        let sp2 = gauge_transport(&sp, &phi).unwrap();
        assert_eq!(sp2.bidiff_ops().unwrap(), sp.bidiff_ops().unwrap());
    }

    #[test]
    fn transported_product_intertwines() {
        // phi(f *' g) = phi(f) * phi(g) exactly
        let c = xu();
        let sp = StarProduct::normal_cotangent(&c, 5).unwrap();
        let phi = GaugeMorphism::new(&c, 5, vec![half_dxdu(&c)]).unwrap();
        let sp2 = gauge_transport(&sp, &phi).unwrap();
        for (f, g) in [("x^2*u", "u^2"), ("x + u", "x*u - 1"), ("u^3", "x^3")] {
            let f = parse_series(f, &c, 5).unwrap();
            let g = parse_series(g, &c, 5).unwrap();
            let lhs = phi.apply(&sp2.star_mul(&f, &g).unwrap()).unwrap();
            let rhs = sp.star_mul(&phi.apply(&f).unwrap(), &phi.apply(&g).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn antisymmetric_part_is_gauge_invariant() {
        let c = xu();
        let sp = StarProduct::normal_cotangent(&c, 4).unwrap();
        let p1 = sp.bidiff_ops().unwrap()[1].clone();
        let phi = GaugeMorphism::new(&c, 4, vec![half_dxdu(&c)]).unwrap();
        let sp2 = gauge_transport(&sp, &phi).unwrap();
        let q1 = sp2.bidiff_ops().unwrap()[1].clone();
        assert_eq!(p1.antisymmetrize(), q1.antisymmetrize());
    }
}
