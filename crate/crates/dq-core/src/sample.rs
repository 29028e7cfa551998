//! Seeded random generators for the property suites and the CLI trial
//! commands. Everything is driven by an explicit seed so runs reproduce
//! byte for byte.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::homology::HPoly;
use crate::symbolic::{Context, DiffOp, HSeries, Mono, Poly, Rat};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Derives an independent stream; used to shard trials deterministically.
    pub fn fork(&mut self, salt: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(self.rng.gen::<u64>() ^ salt) }
    }

    pub fn usize_in(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    /// Small nonzero rational with numerator in [-4, 4] and denominator in {1, 2, 3}.
    pub fn rat_nonzero(&mut self) -> Rat {
        let num = loop {
            let n: i64 = self.rng.gen_range(-4..=4);
            if n != 0 {
                break n;
            }
        };
        let den: i64 = self.rng.gen_range(1..=3);
        Rat::new(num.into(), den.into())
    }

    pub fn rat(&mut self) -> Rat {
        if self.rng.gen_bool(0.15) {
            Rat::new(0.into(), 1.into())
        } else {
            self.rat_nonzero()
        }
    }

    pub fn mono(&mut self, ctx: &Context, max_degree: u32) -> Mono {
        let mut pairs = Vec::new();
        let mut budget = self.rng.gen_range(0..=max_degree);
        while budget > 0 {
            let v = self.rng.gen_range(0..ctx.len());
            let e = self.rng.gen_range(1..=budget);
            pairs.push((v, e));
            budget -= e;
        }
        Mono::from_pairs(pairs)
    }

    /// Random polynomial with up to `terms` monomials of total degree <= `max_degree`.
    pub fn poly(&mut self, ctx: &Context, max_degree: u32, terms: usize) -> Poly {
        let mut p = Poly::zero(ctx);
        for _ in 0..terms {
            let m = self.mono(ctx, max_degree);
            p = p.add(&Poly::monomial(ctx, m, self.rat_nonzero())).expect("same context");
        }
        p
    }

    pub fn poly_nonzero(&mut self, ctx: &Context, max_degree: u32, terms: usize) -> Poly {
        loop {
            let p = self.poly(ctx, max_degree, terms);
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn series(&mut self, ctx: &Context, order: usize, max_degree: u32, terms: usize) -> HSeries {
        let mut s = HSeries::zero(ctx, order);
        // keep most of the mass at low h-order
        let levels = order.min(3);
        for k in 0..levels {
            let p = self.poly(ctx, max_degree, terms);
            s = s.add(&HSeries::h_term(ctx, k, p, order).expect("k < order")).expect("order");
        }
        s
    }

    /// Random skew-symmetric rational matrix.
    pub fn skew_matrix(&mut self, n: usize) -> Vec<Vec<Rat>> {
        let mut m = vec![vec![Rat::new(0.into(), 1.into()); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let a = self.rat();
                m[i][j] = a.clone();
                m[j][i] = -a;
            }
        }
        m
    }

    /// Univariate polynomial in the h grammar, degree <= `max_degree`.
    pub fn hpoly(&mut self, max_degree: usize) -> HPoly {
        let coeffs = (0..=max_degree).map(|_| self.rat()).collect();
        HPoly::from_coeffs(coeffs)
    }

    /// Random differential operator with derivative order <= `max_order`.
    /// The derivative-free part is omitted so the operator kills constants.
    pub fn gauge_op(&mut self, ctx: &Context, max_order: u32, terms: usize) -> DiffOp {
        let mut op = DiffOp::zero(ctx);
        for _ in 0..terms {
            let alpha = loop {
                let m = self.mono(ctx, max_order);
                if !m.is_one() {
                    break m;
                }
            };
            let coeff = self.poly_nonzero(ctx, 1, 1);
            op = op.add(&DiffOp::term(ctx, coeff, alpha)).expect("same context");
        }
        op
    }

    /// Univariate polynomial in the single context variable, exact degree `degree`.
    pub fn univariate_of_degree(&mut self, ctx: &Context, var: usize, degree: u32) -> Poly {
        let mut p = Poly::monomial(ctx, Mono::var(var).pow(degree), self.rat_nonzero());
        for e in 0..degree {
            let c = self.rat();
            p = p.add(&Poly::monomial(ctx, Mono::var(var).pow(e), c)).expect("same context");
        }
        p
    }
}
