use super::forms_basis::monomials_up_to;
use crate::error::Result;
use crate::star::{PbwRelations, StarProduct};
use crate::symbolic::{Context, HSeries, Poly};

/// The two-sided Koszul data for the PBW algebra with `[x1, x2] = h x1` on
/// the doubled coordinates: `[y1, y2] = -h y1`, x's commuting with y's.
pub struct NotisocAlgebra {
    pub product: StarProduct,
    pub ctx: Context,
    pub order: usize,
}

pub fn build_algebra(order: usize) -> Result<NotisocAlgebra> {
    let ctx = Context::new(vec!["x1", "x2", "y1", "y2"])?;
    let brackets = vec![
        ((0usize, 1usize), Poly::var(&ctx, 0)),        // [x1, x2] = h x1
        ((2, 3), Poly::var(&ctx, 2).neg()),            // [y1, y2] = -h y1
    ];
    let rel = PbwRelations::new(&ctx, brackets)?;
    let product = StarProduct::pbw(&ctx, order, rel)?;
    Ok(NotisocAlgebra { product, ctx, order })
}

pub struct NotisocReport {
    pub degree_bound: u32,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl NotisocReport {
    pub fn beta_alpha_zero(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies `beta . alpha = 0` on every normal-ordered monomial of total
/// degree at most `degree_bound`, where
/// `alpha(a) = (-a (x2 - y2 + h), a (x1 - y1))` and
/// `beta(b, c) = b (x1 - y1) + c (x2 - y2)` as right multiplications.
pub fn koszul_notisoc_check(degree_bound: u32, order: usize) -> Result<NotisocReport> {
    let alg = build_algebra(order)?;
    let ctx = &alg.ctx;
    let sp = &alg.product;
    let n = order;

    let x1 = Poly::var(ctx, 0);
    let x2 = Poly::var(ctx, 1);
    let y1 = Poly::var(ctx, 2);
    let y2 = Poly::var(ctx, 3);

    let x1_minus_y1 = HSeries::from_poly(&x1.sub(&y1)?, n);
    let x2_minus_y2 = HSeries::from_poly(&x2.sub(&y2)?, n);
    let x2_minus_y2_plus_h =
        x2_minus_y2.add(&HSeries::h_term(ctx, 1, Poly::one(ctx), n)?)?;

    let mut failures = Vec::new();
    let monos = monomials_up_to(4, degree_bound);
    let checked = monos.len();
    for m in &monos {
        let a = HSeries::from_poly(
            &Poly::monomial(ctx, m.clone(), crate::symbolic::rat_int(1)),
            n,
        );
        // alpha(a) = (-a (x2 - y2 + h), a (x1 - y1))
        let first = sp.star_mul(&a, &x2_minus_y2_plus_h)?.neg();
        let second = sp.star_mul(&a, &x1_minus_y1)?;
        // beta(b, c) = b (x1 - y1) + c (x2 - y2)
        let composed = sp
            .star_mul(&first, &x1_minus_y1)?
            .add(&sp.star_mul(&second, &x2_minus_y2)?)?;
        if !composed.is_zero() {
            failures.push(format!(
                "beta(alpha({})) = {}",
                a, composed
            ));
        }
    }
    Ok(NotisocReport { degree_bound, checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_instances() {
        // a = 1 and a = x1 vanish under beta . alpha
        let r = koszul_notisoc_check(1, 8).unwrap();
        assert!(r.beta_alpha_zero(), "{:?}", r.failures);
        assert_eq!(r.checked, 5);
    }

    #[test]
    fn degree_four_sweep() {
        let r = koszul_notisoc_check(4, 8).unwrap();
        assert!(r.beta_alpha_zero(), "{:?}", r.failures);
        assert_eq!(r.checked, 70);
    }

    #[test]
    fn commutator_matches_bracket() {
        // [x1 - y1, x2 - y2] = h (x1 - y1) in the doubled algebra
        let alg = build_algebra(6).unwrap();
        let ctx = &alg.ctx;
        let d1 = HSeries::from_poly(
            &Poly::var(ctx, 0).sub(&Poly::var(ctx, 2)).unwrap(),
            6,
        );
        let d2 = HSeries::from_poly(
            &Poly::var(ctx, 1).sub(&Poly::var(ctx, 3)).unwrap(),
            6,
        );
        let comm = alg
            .product
            .star_mul(&d1, &d2)
            .unwrap()
            .sub(&alg.product.star_mul(&d2, &d1).unwrap())
            .unwrap();
        let expected = d1.shift_h(1);
        assert_eq!(comm, expected);
    }
}
