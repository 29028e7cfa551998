use num::{BigInt, One, Zero};

use super::context::Context;
use super::mono::Mono;
use super::poly::Poly;
use super::rat::Rat;
use super::series::HSeries;
use crate::error::{DqError, Result};

/// Parsed term: power of `h`, monomial in the context variables, rational
/// coefficient. The shared backend for polynomial, series and h-polynomial
/// parsing.
#[derive(Debug, Clone)]
pub struct RawTerm {
    pub h_power: u32,
    pub mono: Mono,
    pub coeff: Rat,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    toks: Vec<(usize, Tok)>,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut l = Lexer { src, pos: 0, toks: Vec::new() };
    let bytes = src.as_bytes();
    while l.pos < bytes.len() {
        let start = l.pos;
        let c = bytes[l.pos] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                l.pos += 1;
            }
            '+' => {
                l.toks.push((start, Tok::Plus));
                l.pos += 1;
            }
            '-' => {
                l.toks.push((start, Tok::Minus));
                l.pos += 1;
            }
            '*' => {
                l.toks.push((start, Tok::Star));
                l.pos += 1;
            }
            '^' => {
                l.toks.push((start, Tok::Caret));
                l.pos += 1;
            }
            '/' => {
                l.toks.push((start, Tok::Slash));
                l.pos += 1;
            }
            '0'..='9' => {
                let mut end = l.pos;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let n: BigInt = l.src[l.pos..end].parse().expect("digits");
                l.toks.push((start, Tok::Int(n)));
                l.pos = end;
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = l.pos;
                while end < bytes.len()
                    && ((bytes[end] as char).is_ascii_alphanumeric() || bytes[end] == b'_')
                {
                    end += 1;
                }
                l.toks.push((start, Tok::Ident(l.src[l.pos..end].to_string())));
                l.pos = end;
            }
            other => {
                return Err(DqError::Parse {
                    position: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(l.toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    idx: usize,
    end: usize,
    ctx: &'a Context,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(DqError::Parse { position: self.pos(), message: message.into() })
    }

    fn expect_uint(&mut self) -> Result<u32> {
        match self.bump() {
            Some(Tok::Int(n)) => u32::try_from(n).map_err(|_| DqError::Parse {
                position: self.pos(),
                message: "exponent too large".into(),
            }),
            _ => self.err("expected a nonnegative integer exponent"),
        }
    }

    /// factor := INT [ '/' INT ] | IDENT [ '^' INT ]
    fn factor(&mut self) -> Result<RawTerm> {
        match self.bump() {
            Some(Tok::Int(n)) => {
                let mut coeff = Rat::from_integer(n);
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return self.err("zero denominator");
                            }
                            coeff /= Rat::from_integer(d);
                        }
                        _ => return self.err("expected denominator after `/`"),
                    }
                }
                Ok(RawTerm { h_power: 0, mono: Mono::one(), coeff })
            }
            Some(Tok::Ident(name)) => {
                let exp = if matches!(self.peek(), Some(Tok::Caret)) {
                    self.bump();
                    self.expect_uint()?
                } else {
                    1
                };
                if name == "h" {
                    Ok(RawTerm { h_power: exp, mono: Mono::one(), coeff: Rat::one() })
                } else if let Some(i) = self.ctx.index_of(&name) {
                    Ok(RawTerm { h_power: 0, mono: Mono::var(i).pow(exp), coeff: Rat::one() })
                } else {
                    self.err(format!("unknown variable `{name}`"))
                }
            }
            _ => self.err("expected a number or variable"),
        }
    }

    /// term := factor ('*' factor)*
    fn term(&mut self) -> Result<RawTerm> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = RawTerm {
                h_power: acc.h_power + f.h_power,
                mono: acc.mono.mul(&f.mono),
                coeff: acc.coeff * f.coeff,
            };
        }
        Ok(acc)
    }

    /// expr := ['-'] term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Vec<RawTerm>> {
        let mut out = Vec::new();
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            negate = true;
        }
        let mut t = self.term()?;
        if negate {
            t.coeff = -t.coeff;
        }
        out.push(t);
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    out.push(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let mut t = self.term()?;
                    t.coeff = -t.coeff;
                    out.push(t);
                }
                None => break,
                _ => return self.err("expected `+`, `-` or end of input"),
            }
        }
        Ok(out)
    }
}

pub fn parse_raw(src: &str, ctx: &Context) -> Result<Vec<RawTerm>> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(DqError::Parse { position: 0, message: "empty expression".into() });
    }
    let mut p = Parser { toks: &toks, idx: 0, end: src.len(), ctx };
    p.expr()
}

/// Parses a polynomial; the parameter `h` is rejected.
pub fn parse_poly(src: &str, ctx: &Context) -> Result<Poly> {
    let terms = parse_raw(src, ctx)?;
    let mut out = Poly::zero(ctx);
    for t in terms {
        if t.h_power > 0 {
            return Err(DqError::Parse {
                position: 0,
                message: "`h` is not allowed in a plain polynomial".into(),
            });
        }
        out = out.add(&Poly::monomial(ctx, t.mono, t.coeff))?;
    }
    Ok(out)
}

/// Parses a truncated series at the given order; terms at or beyond the
/// truncation order are rejected rather than dropped.
pub fn parse_series(src: &str, ctx: &Context, order: usize) -> Result<HSeries> {
    let terms = parse_raw(src, ctx)?;
    let mut out = HSeries::zero(ctx, order);
    for t in terms {
        let k = t.h_power as usize;
        if k >= order {
            return Err(DqError::Parse {
                position: 0,
                message: format!("h^{k} exceeds truncation order {order}"),
            });
        }
        let p = Poly::monomial(ctx, t.mono, t.coeff);
        out = out.add(&HSeries::h_term(ctx, k, p, order)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rat::rat;

    fn ctx() -> Context {
        Context::new(vec!["x1", "x2", "u1"]).unwrap()
    }

    #[test]
    fn parses_mixed_series() {
        let c = ctx();
        let s = parse_series("3/2*x1^2*u1 + h*x2", &c, 4).unwrap();
        let x1 = Poly::var(&c, 0);
        let x2 = Poly::var(&c, 1);
        let u1 = Poly::var(&c, 2);
        assert_eq!(s.coeff(0), &x1.pow(2).mul(&u1).unwrap().scale(&rat(3, 2)));
        assert_eq!(s.coeff(1), &x2);
    }

    #[test]
    fn rejects_unknown_variable_and_h_in_poly() {
        let c = ctx();
        assert!(parse_poly("y", &c).is_err());
        assert!(parse_poly("h", &c).is_err());
        assert!(parse_series("h^9", &c, 4).is_err());
    }

    #[test]
    fn unary_minus_and_subtraction() {
        let c = ctx();
        let p = parse_poly("-x1 + x2 - 2", &c).unwrap();
        let q = Poly::var(&c, 1)
            .sub(&Poly::var(&c, 0))
            .unwrap()
            .sub(&Poly::constant(&c, rat(2, 1)))
            .unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn reports_position() {
        let c = ctx();
        match parse_poly("x1 + $", &c) {
            Err(DqError::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn roundtrip_display_parse() {
        let c = ctx();
        let p = parse_poly("3/2*x1^2*u1 - x2 + 7", &c).unwrap();
        assert_eq!(parse_poly(&p.to_string(), &c).unwrap(), p);
        let s = parse_series("1 - h*x1 + 2*h^2", &c, 3).unwrap();
        assert_eq!(parse_series(&s.to_string(), &c, 3).unwrap(), s);
    }
}
