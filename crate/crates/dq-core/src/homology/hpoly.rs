use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{DqError, Result};
use crate::symbolic::{format_rat, parse_raw, Context, Rat};

/// Dense univariate polynomial in the deformation parameter over Q.
/// Coefficients are stored from degree 0 upward with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HPoly {
    coeffs: Vec<Rat>,
}

impl HPoly {
    pub fn zero() -> Self {
        HPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        HPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = HPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    pub fn from_int(n: i64) -> Self {
        HPoly::constant(Rat::from_integer(n.into()))
    }

    /// `h^k`.
    pub fn h_pow(k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        HPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = HPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree of the zero polynomial is `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval_zero(&self) -> Rat {
        self.coeff(0)
    }

    pub fn add(&self, other: &HPoly) -> HPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        HPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &HPoly) -> HPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HPoly {
        HPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    /// Product by integer convolution: both factors are scaled to integer
    /// coefficient vectors first so the only rational reductions happen once
    /// per output coefficient.
    pub fn mul(&self, other: &HPoly) -> HPoly {
        use num::bigint::BigInt;
        use num::Integer;
        if self.is_zero() || other.is_zero() {
            return HPoly::zero();
        }
        let scale_to_int = |p: &HPoly| -> (Vec<BigInt>, BigInt) {
            let mut den = BigInt::one();
            for c in &p.coeffs {
                den = den.lcm(c.denom());
            }
            let ints = p
                .coeffs
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect();
            (ints, den)
        };
        let (na, da) = scale_to_int(self);
        let (nb, db) = scale_to_int(other);
        let mut conv = vec![BigInt::zero(); na.len() + nb.len() - 1];
        for (i, a) in na.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in nb.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let den = da * db;
        HPoly::from_coeffs(conv.into_iter().map(|c| Rat::new(c, den.clone())).collect())
    }

    pub fn scale(&self, c: &Rat) -> HPoly {
        if c.is_zero() {
            return HPoly::zero();
        }
        HPoly { coeffs: self.coeffs.iter().map(|k| k * c).collect() }
    }

    /// Euclidean division: `self = q * other + r` with `deg r < deg other`.
    /// Runs as an integer pseudo-division over common denominators so each
    /// output coefficient costs a single rational reduction.
    pub fn div_rem(&self, other: &HPoly) -> (HPoly, HPoly) {
        use num::bigint::BigInt;
        use num::Integer;
        assert!(!other.is_zero(), "division by the zero polynomial");
        let d = other.degree().unwrap();
        if self.degree().is_none_or(|n| n < d) {
            return (HPoly::zero(), self.clone());
        }
        let scale_to_int = |p: &HPoly| -> (Vec<BigInt>, BigInt) {
            let mut den = BigInt::one();
            for c in &p.coeffs {
                den = den.lcm(c.denom());
            }
            let ints = p.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
            (ints, den)
        };
        let (mut rem, da) = scale_to_int(self);
        let (b, db) = scale_to_int(other);
        let lead = b[d].clone();
        let steps = self.degree().unwrap() - d + 1;
        // lead^steps * self = q~ * other_int + r~ over the integers
        let mut quo = vec![BigInt::zero(); steps];
        let mut performed = 0usize;
        while let Some(rd) = rem.iter().rposition(|c| !c.is_zero()) {
            if rd < d {
                break;
            }
            // scale the remainder and pending quotient once per step
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            for c in quo.iter_mut() {
                *c *= &lead;
            }
            performed += 1;
            let k = rd - d;
            let c = rem[rd].clone() / &lead; // exact: rem[rd] was just scaled
            quo[k] += &c;
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    rem[k + j] -= &c * bj;
                }
            }
        }
        // undo the scalings: self = (1/da) A, other = (1/db) B,
        // lead^performed A = q~ B + r~
        let mut lead_pow = BigInt::one();
        for _ in 0..performed {
            lead_pow *= &lead;
        }
        let q_den = &da * &lead_pow;
        let q = HPoly::from_coeffs(
            quo.into_iter().map(|c| Rat::new(c * &db, q_den.clone())).collect(),
        );
        let r = HPoly::from_coeffs(
            rem.into_iter().map(|c| Rat::new(c, q_den.clone())).collect(),
        );
        (q, r)
    }

    pub fn divides(&self, other: &HPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Makes the polynomial monic; returns the original leading coefficient.
    pub fn monic(&self) -> (Rat, HPoly) {
        if self.is_zero() {
            return (Rat::one(), HPoly::zero());
        }
        let lead = self.leading();
        (lead.clone(), self.scale(&(Rat::one() / lead)))
    }

    pub fn derivative(&self) -> HPoly {
        if self.coeffs.len() <= 1 {
            return HPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect();
        HPoly::from_coeffs(coeffs)
    }

    /// Monic gcd. Remainders are rescaled to monic at every step, which
    /// keeps the rational coefficients from snowballing.
    pub fn gcd(&self, other: &HPoly) -> HPoly {
        let (mut a, mut b) = (self.monic().1, other.monic().1);
        while !b.is_zero() {
            let r = a.div_rem(&b).1.monic().1;
            a = b;
            b = r;
        }
        a
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g`
    /// monic. The remainder sequence is kept monic; the Bezout pair is
    /// rescaled along with it.
    pub fn xgcd(&self, other: &HPoly) -> (HPoly, HPoly, HPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (HPoly::one(), HPoly::zero());
        let (mut t0, mut t1) = (HPoly::zero(), HPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let mut s = s0.sub(&q.mul(&s1));
            let mut t = t0.sub(&q.mul(&t1));
            let mut r_next = r;
            if !r_next.is_zero() {
                let (lead, m) = r_next.monic();
                let inv = Rat::one() / lead;
                r_next = m;
                s = s.scale(&inv);
                t = t.scale(&inv);
            }
            r0 = r1;
            r1 = r_next;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (HPoly::zero(), HPoly::zero(), HPoly::zero());
        }
        let (lead, g) = r0.monic();
        let inv = Rat::one() / lead;
        (g, s0.scale(&inv), t0.scale(&inv))
    }

    /// Valuation at h: largest k with h^k dividing self (`None` for zero).
    pub fn h_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Splits off the h-power: `self = h^v * unit_part` with
    /// `unit_part(0) != 0`. Zero splits as `(0, 0)`.
    pub fn strip_h_power(&self) -> (usize, HPoly) {
        match self.h_valuation() {
            None => (0, HPoly::zero()),
            Some(v) => (v, HPoly { coeffs: self.coeffs[v..].to_vec() }),
        }
    }

    /// True when the polynomial is a nonzero constant times a power of h.
    pub fn is_h_primary(&self) -> bool {
        !self.is_zero() && self.strip_h_power().1.is_constant()
    }

    /// Grammar-conformant rendering (`h^2 - 1/2*h + 3`).
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => format_rat(&mag),
                (1, true) => "h".into(),
                (1, false) => format!("{}*h", format_rat(&mag)),
                (_, true) => format!("h^{k}"),
                (_, false) => format!("{}*h^{k}", format_rat(&mag)),
            };
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
        out
    }

    /// Parses the symbolic-core grammar restricted to the variable `h`.
    pub fn parse(src: &str) -> Result<HPoly> {
        let empty = Context::new(Vec::<String>::new()).expect("empty context");
        let terms = parse_raw(src, &empty)?;
        let mut out = HPoly::zero();
        for t in terms {
            if !t.mono.is_one() {
                return Err(DqError::Parse {
                    position: 0,
                    message: "matrix entries may only use the variable `h`".into(),
                });
            }
            let mut coeffs = vec![Rat::zero(); t.h_power as usize + 1];
            coeffs[t.h_power as usize] = t.coeff;
            out = out.add(&HPoly::from_coeffs(coeffs));
        }
        Ok(out)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rat;

    fn p(src: &str) -> HPoly {
        HPoly::parse(src).unwrap()
    }

    #[test]
    fn parse_render_roundtrip() {
        for s in ["h^2 - 1/2*h + 3", "0", "h", "-h^3 + 1"] {
            let q = p(s);
            assert_eq!(HPoly::parse(&q.render()).unwrap(), q);
        }
        assert_eq!(p("h^2+1").render(), "h^2 + 1");
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = p("h^3 - h");
        let b = p("h^2 - 1");
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p("h"));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p("h^2 + h")), p("h^2 + h").gcd(&a));
        assert_eq!(a.gcd(&p("h^2 - 2*h + 1")), p("h - 1"));
    }

    #[test]
    fn xgcd_bezout() {
        let a = p("h^2 + 1");
        let b = p("h^3");
        let (g, s, t) = a.xgcd(&b);
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn h_power_bookkeeping() {
        let a = p("2*h^2 + 2*h^3");
        assert_eq!(a.h_valuation(), Some(2));
        let (v, u) = a.strip_h_power();
        assert_eq!(v, 2);
        assert_eq!(u, p("2 + 2*h"));
        assert!(p("3*h^4").is_h_primary());
        assert!(!a.is_h_primary());
        assert!(!HPoly::zero().is_h_primary());
        assert_eq!(p("h - 1").eval_zero(), rat(-1, 1));
    }
}
