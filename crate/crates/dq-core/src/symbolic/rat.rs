use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{DqError, Result};

/// Exact rational scalar. `BigRational` keeps the fraction reduced with a
/// positive denominator, which is exactly the invariant we need.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `a` or `a/b` with an optional leading sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let err = |msg: &str| DqError::Parse { position: 0, message: format!("{msg}: `{s}`") };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s.trim(), None),
    };
    let n: BigInt = num.parse().map_err(|_| err("invalid integer"))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| err("invalid denominator"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(n, d))
}

/// Prints `a` or `a/b`; the sign sits on the numerator.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-4/2").unwrap(), rat_int(-2));
        assert_eq!(format_rat(&rat(-1, 3)), "-1/3");
        assert_eq!(format_rat(&rat_int(7)), "7");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
