use std::fmt;

use super::context::Context;
use super::mono::Mono;
use super::poly::{format_terms, Poly};
use super::rat::Rat;
use crate::error::{DqError, Result};

/// Truncated formal series in the deformation parameter: `order` polynomial
/// coefficients for h^0 .. h^(order-1).
///
/// The truncation order travels with the value; combining series of
/// different orders is an error rather than a silent re-truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSeries {
    ctx: Context,
    coeffs: Vec<Poly>,
}

impl HSeries {
    pub fn zero(ctx: &Context, order: usize) -> Self {
        assert!(order > 0, "truncation order must be positive");
        HSeries { ctx: ctx.clone(), coeffs: vec![Poly::zero(ctx); order] }
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        let mut s = HSeries::zero(p.context(), order);
        s.coeffs[0] = p.clone();
        s
    }

    pub fn one(ctx: &Context, order: usize) -> Self {
        HSeries::from_poly(&Poly::one(ctx), order)
    }

    pub fn from_coeffs(ctx: &Context, coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(DqError::Precondition("series order must be positive".into()));
        }
        for c in &coeffs {
            ctx.check_same(c.context())?;
        }
        Ok(HSeries { ctx: ctx.clone(), coeffs })
    }

    /// Single term `c * h^k`.
    pub fn h_term(ctx: &Context, k: usize, c: Poly, order: usize) -> Result<Self> {
        if k >= order {
            return Err(DqError::Precondition(format!(
                "h-power {k} exceeds truncation order {order}"
            )));
        }
        let mut s = HSeries::zero(ctx, order);
        s.coeffs[k] = c;
        Ok(s)
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Constant term `sigma_0`: the h^0 coefficient.
    pub fn sigma0(&self) -> &Poly {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    fn check_compatible(&self, other: &HSeries) -> Result<()> {
        self.ctx.check_same(&other.ctx)?;
        if self.order() != other.order() {
            return Err(DqError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &HSeries) -> Result<HSeries> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(HSeries { ctx: self.ctx.clone(), coeffs })
    }

    pub fn sub(&self, other: &HSeries) -> Result<HSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HSeries {
        HSeries { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(Poly::neg).collect() }
    }

    pub fn scale(&self, c: &Rat) -> HSeries {
        HSeries { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    /// Commutative (undeformed) product, truncated at the shared order.
    pub fn mul(&self, other: &HSeries) -> Result<HSeries> {
        self.check_compatible(other)?;
        let n = self.order();
        let mut coeffs = vec![Poly::zero(&self.ctx); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(HSeries { ctx: self.ctx.clone(), coeffs })
    }

    /// Multiplication by h^k, shifting coefficients and truncating.
    pub fn shift_h(&self, k: usize) -> HSeries {
        let n = self.order();
        let mut coeffs = vec![Poly::zero(&self.ctx); n];
        for i in 0..n.saturating_sub(k) {
            coeffs[i + k] = self.coeffs[i].clone();
        }
        HSeries { ctx: self.ctx.clone(), coeffs }
    }

    pub fn embed(&self, target: &Context, index_map: &[usize]) -> HSeries {
        HSeries {
            ctx: target.clone(),
            coeffs: self.coeffs.iter().map(|p| p.embed(target, index_map)).collect(),
        }
    }

    /// Terms as (h-power, monomial, coefficient), ascending in h, then
    /// descending graded-lex inside each h-level.
    pub fn flat_terms(&self) -> Vec<(usize, Mono, Rat)> {
        let mut out = Vec::new();
        for (k, p) in self.coeffs.iter().enumerate() {
            for (m, c) in p.terms() {
                out.push((k, m.clone(), c.clone()));
            }
        }
        out
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.flat_terms().into_iter().map(|(k, m, c)| {
            let hpow = match k {
                0 => String::new(),
                1 => "h".to_string(),
                _ => format!("h^{k}"),
            };
            (hpow, m, c)
        });
        write!(f, "{}", format_terms(terms, &self.ctx))
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
    fn order_mismatch_is_an_error() {
        let c = ctx();
        let a = HSeries::one(&c, 4);
        let b = HSeries::one(&c, 5);
        assert!(matches!(a.add(&b), Err(DqError::OrderMismatch { left: 4, right: 5 })));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn truncated_product() {
        let c = ctx();
        let x = Poly::var(&c, 0);
        // (1 + h x)^2 at order 2 drops the h^2 term
        let s = HSeries::one(&c, 2)
            .add(&HSeries::h_term(&c, 1, x.clone(), 2).unwrap())
            .unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.coeff(0), &Poly::one(&c));
        assert_eq!(sq.coeff(1), &x.scale(&rat_int(2)));
    }

    #[test]
    fn display_orders_terms() {
        let c = ctx();
        let x = Poly::var(&c, 0);
        let u = Poly::var(&c, 1);
        let xu = x.mul(&u).unwrap();
        let s = HSeries::from_poly(&xu, 3)
            .add(&HSeries::h_term(&c, 1, Poly::one(&c), 3).unwrap())
            .unwrap();
        assert_eq!(s.to_string(), "x*u + h");
    }
}
