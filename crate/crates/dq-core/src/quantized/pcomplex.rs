
use super::forms_basis::FilteredFormSpace;
use crate::error::{DqError, Result};
use crate::homology::{HPoly, HbarMatrix, FreeComplex};
use crate::symbolic::{Context, Poly, PolyForm, Rat};

/// An element of P_k: a k-form and a (k+1)-form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPair {
    pub omega: PolyForm,
    pub theta: PolyForm,
}

impl PPair {
    pub fn new(omega: PolyForm, theta: PolyForm) -> Result<Self> {
        if theta.degree() != omega.degree() + 1 {
            return Err(DqError::Precondition(format!(
                "pair degrees must be (k, k+1), got ({}, {})",
                omega.degree(),
                theta.degree()
            )));
        }
        Ok(PPair { omega, theta })
    }

    pub fn degree(&self) -> usize {
        self.omega.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.omega.is_zero() && self.theta.is_zero()
    }

    pub fn add(&self, other: &PPair) -> Result<PPair> {
        Ok(PPair { omega: self.omega.add(&other.omega)?, theta: self.theta.add(&other.theta)? })
    }

    pub fn scale(&self, c: &Rat) -> PPair {
        PPair { omega: self.omega.scale(c), theta: self.theta.scale(c) }
    }
}

/// The differential of the weighted complex: degree k goes to k-1 as
/// `(omega, theta) -> (0, w(k) omega)`.
pub fn d_pair(v: &PPair, weight: i64) -> Result<PPair> {
    let ctx = v.omega.context().clone();
    let k = v.degree();
    if k == 0 {
        return Err(DqError::Precondition("the differential leaves degree 0".into()));
    }
    let w = Rat::from_integer(weight.into());
    PPair::new(PolyForm::zero(&ctx, k - 1), v.omega.scale(&w))
}

/// The second-factor module action `a . (omega, theta) = (a omega, a theta - da ^ omega)`.
pub fn p2_act(a: &Poly, v: &PPair) -> Result<PPair> {
    let da = PolyForm::from_function(a).d();
    PPair::new(
        v.omega.scale_poly(a)?,
        v.theta.scale_poly(a)?.sub(&da.wedge(&v.omega)?)?,
    )
}

/// The pairing `mu((omega_i, theta_{i+1}), (omega_j, theta_{j+1})) =
/// (omega_i ^ omega_j, theta_{i+1} ^ omega_j + (-1)^i omega_i ^ theta_{j+1})`.
pub fn mu(a: &PPair, b: &PPair) -> Result<PPair> {
    let sign = if a.degree().is_multiple_of(2) { 1 } else { -1 };
    let omega = a.omega.wedge(&b.omega)?;
    let theta = a
        .theta
        .wedge(&b.omega)?
        .add(&a.omega.wedge(&b.theta)?.scale(&Rat::from_integer(sign.into())))?;
    PPair::new(omega, theta)
}

/// Verifies `mu . (d (x) 1 + (-1)^i 1 (x) d) = d . mu` on one pair with the
/// standard weights w(k) = k.
pub fn mu_chain_map_holds(a: &PPair, b: &PPair) -> Result<bool> {
    let i = a.degree() as i64;
    let j = b.degree() as i64;
    if i + j == 0 {
        // both differentials leave degree 0; the identity reads 0 = 0
        return Ok(true);
    }
    let sign = Rat::from_integer(if i % 2 == 0 { 1 } else { -1 }.into());
    let mut lhs: Option<PPair> = None;
    if a.degree() > 0 {
        lhs = Some(mu(&d_pair(a, i)?, b)?);
    }
    if b.degree() > 0 {
        let t = mu(a, &d_pair(b, j)?)?.scale(&sign);
        lhs = Some(match lhs {
            None => t,
            Some(s) => s.add(&t)?,
        });
    }
    let rhs = d_pair(&mu(a, b)?, i + j)?;
    Ok(lhs.expect("i + j > 0") == rhs)
}

/// Samples a random pair on the filtered basis shape.
fn sample_pair(s: &mut crate::sample::Sampler, ctx: &Context, k: usize, deg: u32) -> Result<PPair> {
    use super::forms_basis::k_subsets;
    let mut omega = PolyForm::zero(ctx, k);
    let mut theta = PolyForm::zero(ctx, k + 1);
    for idx in k_subsets(ctx.len(), k) {
        omega = omega.add(&PolyForm::term(ctx, s.poly(ctx, deg, 2), &idx)?)?;
    }
    for idx in k_subsets(ctx.len(), k + 1) {
        theta = theta.add(&PolyForm::term(ctx, s.poly(ctx, deg, 2), &idx)?)?;
    }
    PPair::new(omega, theta)
}

/// Randomized audit of the module action: `act(a1, act(a2, v)) =
/// act(a1 a2, v)` on `trials` samples. True when every trial agrees.
pub fn p2_action_check(n_vars: usize, bound: u32, trials: usize, seed: u64) -> Result<bool> {
    let ctx = Context::new((1..=n_vars).map(|i| format!("x{i}")).collect::<Vec<_>>())?;
    let mut s = crate::sample::Sampler::new(seed);
    let max_k = n_vars.saturating_sub(1);
    for _ in 0..trials {
        let k = s.usize_in(0, max_k);
        let v = sample_pair(&mut s, &ctx, k, bound)?;
        let a1 = s.poly(&ctx, bound, 2);
        let a2 = s.poly(&ctx, bound, 2);
        if p2_act(&a1, &p2_act(&a2, &v)?)? != p2_act(&a1.mul(&a2)?, &v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Randomized audit of the pairing: the chain-map identity and bilinearity
/// over the module action. True when every trial agrees.
pub fn mu_pairing_check(n_vars: usize, bound: u32, trials: usize, seed: u64) -> Result<bool> {
    let ctx = Context::new((1..=n_vars).map(|i| format!("x{i}")).collect::<Vec<_>>())?;
    let mut s = crate::sample::Sampler::new(seed);
    let max_k = n_vars.saturating_sub(1);
    for _ in 0..trials {
        let i = s.usize_in(0, max_k);
        let j = s.usize_in(0, max_k);
        let a = sample_pair(&mut s, &ctx, i, bound)?;
        let b = sample_pair(&mut s, &ctx, j, bound)?;
        if !mu_chain_map_holds(&a, &b)? {
            return Ok(false);
        }
        let f = s.poly(&ctx, bound, 2);
        if mu(&p2_act(&f, &a)?, &b)? != p2_act(&f, &mu(&a, &b)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degree weights for the complex: the standard schedule multiplies
/// `d^stan` at level k by k; callers may supply any integer schedule, e.g.
/// the shifted variant with weights k - 1 - d.
#[derive(Debug, Clone)]
pub enum WeightSchedule {
    Standard,
    Custom(Vec<i64>),
}

impl WeightSchedule {
    fn weight(&self, k: usize) -> i64 {
        match self {
            WeightSchedule::Standard => k as i64,
            WeightSchedule::Custom(w) => w.get(k).copied().unwrap_or(0),
        }
    }
}

pub struct PComplexReport {
    pub forms: FilteredFormSpace,
    /// cochain complex with P_k at degree -k
    pub complex: FreeComplex,
    /// dim over Q of the homology at degree -k, k = 0, 1, ...
    pub homology_dims: Vec<usize>,
}

/// Builds the weighted complex on the filtered form basis. P_k occupies
/// cochain degree -k; the differential into degree -(k-1) embeds the first
/// block into the second block of the target, scaled by the weight.
pub fn build_p_complex(
    n_vars: usize,
    bound: u32,
    schedule: &WeightSchedule,
) -> Result<PComplexReport> {
    if n_vars == 0 {
        return Err(DqError::Precondition("need at least one variable".into()));
    }
    let ctx = Context::new((1..=n_vars).map(|i| format!("x{i}")).collect::<Vec<_>>())?;
    let fs = FilteredFormSpace::new(&ctx, bound);
    let top = fs.max_form_degree();

    // ranks of P_k for k = 0..=top (P_top has no theta block)
    let p_dim = |k: usize| fs.dim(k) + if k < top { fs.dim(k + 1) } else { 0 };
    let kmax = (0..=top).rev().find(|&k| p_dim(k) > 0).unwrap_or(0);

    // cochain degrees -kmax ..= 0
    let ranks: Vec<usize> = (0..=kmax).rev().map(p_dim).collect();
    let mut diffs = Vec::with_capacity(kmax);
    for k in (1..=kmax).rev() {
        let w = schedule.weight(k);
        let rows = p_dim(k - 1);
        let cols = p_dim(k);
        let mut m = HbarMatrix::zero(rows, cols);
        // first block of P_k (the k-forms) lands in the second block of P_{k-1}
        for j in 0..fs.dim(k) {
            m.set(fs.dim(k - 1) + j, j, HPoly::from_int(w));
        }
        diffs.push(m);
    }
    let complex = FreeComplex::new(-(kmax as i64), ranks, diffs)?;

    let gr = crate::homology::gr_complex(&complex);
    let homology_dims: Vec<usize> =
        (0..=kmax).map(|k| gr.homology_dim(-(k as i64))).collect();

    Ok(PComplexReport { forms: fs, complex, homology_dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;
    use crate::symbolic::rat_int;

    fn sample_pair(s: &mut Sampler, ctx: &Context, k: usize, deg: u32) -> PPair {
        let mut omega = PolyForm::zero(ctx, k);
        let mut theta = PolyForm::zero(ctx, k + 1);
        for idx in super::super::forms_basis::k_subsets(ctx.len(), k) {
            omega = omega
                .add(&PolyForm::term(ctx, s.poly(ctx, deg, 2), &idx).unwrap())
                .unwrap();
        }
        for idx in super::super::forms_basis::k_subsets(ctx.len(), k + 1) {
            theta = theta
                .add(&PolyForm::term(ctx, s.poly(ctx, deg, 2), &idx).unwrap())
                .unwrap();
        }
        PPair::new(omega, theta).unwrap()
    }

    #[test]
    fn small_instance_dimensions() {
        // 1 var, bound 1: P_0 = (2, 1), P_1 = (1, 0); H^0 has dim 2, H^-1 = 0
        let r = build_p_complex(1, 1, &WeightSchedule::Standard).unwrap();
        assert_eq!(r.complex.rank(0), 3);
        assert_eq!(r.complex.rank(-1), 1);
        assert_eq!(r.homology_dims[0], 2);
        assert_eq!(r.homology_dims[1], 0);
    }

    #[test]
    fn homology_concentrated_in_degree_zero() {
        for n in 1..=3 {
            for bound in 0..=3u32 {
                let r = build_p_complex(n, bound, &WeightSchedule::Standard).unwrap();
                let poly_dim = super::super::forms_basis::monomials_up_to(n, bound).len();
                assert_eq!(r.homology_dims[0], poly_dim, "n={n} bound={bound}");
                for (k, &d) in r.homology_dims.iter().enumerate().skip(1) {
                    assert_eq!(d, 0, "n={n} bound={bound} degree -{k}");
                }
            }
        }
    }

    #[test]
    fn shifted_weights_break_concentration() {
        // weight 0 at level 1 stops the theta block from being hit
        let r = build_p_complex(1, 1, &WeightSchedule::Custom(vec![0, 0])).unwrap();
        assert!(r.homology_dims[1] > 0 || r.homology_dims[0] > 2);
    }

    #[test]
    fn p2_action_examples() {
        let ctx = Context::new(vec!["x1"]).unwrap();
        let x = Poly::var(&ctx, 0);
        let one = PPair::new(
            PolyForm::from_function(&Poly::one(&ctx)),
            PolyForm::zero(&ctx, 1),
        )
        .unwrap();
        // a = 1 acts as the identity
        assert_eq!(p2_act(&Poly::one(&ctx), &one).unwrap(), one);
        // act(x^2, (1, 0)) = (x^2, -2x dx) and matches the iterated action
        let sq = p2_act(&x.pow(2), &one).unwrap();
        let twice = p2_act(&x, &p2_act(&x, &one).unwrap()).unwrap();
        assert_eq!(sq, twice);
        assert_eq!(sq.omega, PolyForm::from_function(&x.pow(2)));
        let expected_theta =
            PolyForm::term(&ctx, x.scale(&rat_int(-2)), &[0]).unwrap();
        assert_eq!(sq.theta, expected_theta);
    }

    #[test]
    fn p2_action_is_associative_on_random_inputs() {
        let ctx = Context::new(vec!["x1", "x2"]).unwrap();
        let mut s = Sampler::new(3);
        for _ in 0..25 {
            let a1 = s.poly(&ctx, 2, 2);
            let a2 = s.poly(&ctx, 2, 2);
            let v = sample_pair(&mut s, &ctx, 1, 2);
            let lhs = p2_act(&a1, &p2_act(&a2, &v).unwrap()).unwrap();
            let rhs = p2_act(&a1.mul(&a2).unwrap(), &v).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mu_is_a_chain_map_on_random_inputs() {
        let ctx = Context::new(vec!["x1", "x2", "x3"]).unwrap();
        let mut s = Sampler::new(5);
        for _ in 0..20 {
            let i = s.usize_in(0, 2);
            let j = s.usize_in(0, 2);
            let a = sample_pair(&mut s, &ctx, i, 2);
            let b = sample_pair(&mut s, &ctx, j, 2);
            assert!(mu_chain_map_holds(&a, &b).unwrap());
        }
    }

    #[test]
    fn mu_is_p2_bilinear() {
        let ctx = Context::new(vec!["x1", "x2"]).unwrap();
        let mut s = Sampler::new(8);
        for _ in 0..10 {
            let a = s.poly(&ctx, 2, 2);
            let v = sample_pair(&mut s, &ctx, 0, 2);
            let w = sample_pair(&mut s, &ctx, 1, 2);
            let lhs = mu(&p2_act(&a, &v).unwrap(), &w).unwrap();
            let rhs = p2_act(&a, &mu(&v, &w).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let lhs2 = mu(&v, &p2_act(&a, &w).unwrap()).unwrap();
            assert_eq!(lhs2, rhs);
        }
    }
}
