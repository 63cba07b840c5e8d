//! Expression parser: `+ - * / ^` (or `**`), parentheses, integer literals and
//! identifiers. Division produces a formal fraction; [`MPoly::parse`] insists
//! the denominator is a nonzero constant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::MPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = cs[st..i].iter().collect();
            out.push(Tok::Num(digits.parse().expect("ascii digits")));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if c == '*' && cs.get(i + 1) == Some(&'*') {
            out.push(Tok::Op('^'));
            i += 2;
        } else if "+-*/^".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '−' {
            out.push(Tok::Op('-'));
            i += 1;
        } else if c == '(' {
            out.push(Tok::LParen);
            i += 1;
        } else if c == ')' {
            out.push(Tok::RParen);
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` at offset {i}")));
        }
    }
    Ok(out)
}

/// A formal quotient `num / den` of polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct RatExpr {
    pub num: MPoly,
    pub den: MPoly,
}

impl RatExpr {
    fn poly(p: MPoly) -> Self {
        RatExpr { num: p, den: MPoly::constant(BigRational::one()) }
    }

    fn add(&self, o: &RatExpr) -> RatExpr {
        if self.den == o.den {
            return RatExpr { num: &self.num + &o.num, den: self.den.clone() };
        }
        RatExpr { num: &(&self.num * &o.den) + &(&o.num * &self.den), den: &self.den * &o.den }
    }

    fn neg(&self) -> RatExpr {
        RatExpr { num: -&self.num, den: self.den.clone() }
    }

    fn mul(&self, o: &RatExpr) -> RatExpr {
        RatExpr { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    fn div(&self, o: &RatExpr) -> Result<RatExpr> {
        if o.num.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(RatExpr { num: &self.num * &o.den, den: &self.den * &o.num })
    }

    fn pow(&self, e: i64) -> Result<RatExpr> {
        let k = e.unsigned_abs() as u32;
        let r = RatExpr { num: self.num.pow(k), den: self.den.pow(k) };
        if e < 0 {
            RatExpr::poly(MPoly::constant(BigRational::one())).div(&r)
        } else {
            Ok(r)
        }
    }

    /// Fold a constant denominator into the numerator.
    pub fn normalize_constant_den(self) -> RatExpr {
        match self.den.as_constant() {
            Some(c) if !c.is_one() && !c.is_zero() => RatExpr::poly(self.num.scale(&c.recip())),
            _ => self,
        }
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RatExpr> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.add(&t.neg()) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatExpr> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let u = self.unary()?;
            acc = if c == '*' { acc.mul(&u) } else { acc.div(&u)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatExpr> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatExpr> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let neg = if let Some(Tok::Op('-')) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = match self.next() {
                Some(Tok::Num(n)) => i64::try_from(&n)
                    .ok()
                    .filter(|&v| v <= u32::MAX as i64)
                    .ok_or_else(|| Error::Parse("exponent too large".into()))?,
                _ => return Err(Error::Parse("expected integer exponent after `^`".into())),
            };
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatExpr> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(RatExpr::poly(MPoly::constant(BigRational::from_integer(n)))),
            Some(Tok::Ident(v)) => Ok(RatExpr::poly(MPoly::var(&v))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Parse an arbitrary rational expression.
pub fn parse_rational_expr(s: &str) -> Result<RatExpr> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e.normalize_constant_den())
}

impl MPoly {
    /// Parse a polynomial expression; division only by nonzero constants.
    pub fn parse(s: &str) -> Result<MPoly> {
        let e = parse_rational_expr(s)?;
        match e.den.as_constant() {
            Some(c) if !c.is_zero() => Ok(e.num.scale(&c.recip())),
            _ => Err(Error::Parse(format!("`{s}` is not a polynomial"))),
        }
    }
}

impl std::str::FromStr for MPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<MPoly> {
        MPoly::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_syntax() {
        let p = MPoly::parse("3/2*x**2 - (x - y)^2 + −y").unwrap();
        assert_eq!(p.to_string(), "1/2*x^2 + 2*x*y - y^2 - y");
        assert!(MPoly::parse("x/y").is_err());
        assert!(MPoly::parse("x +").is_err());
        assert!(MPoly::parse("x $ y").is_err());
        assert!(MPoly::parse("1/0").is_err());
    }

    #[test]
    fn rational_expressions_keep_denominators() {
        let e = parse_rational_expr("z + 1/z").unwrap();
        assert_eq!(e.num, MPoly::parse("z^2 + 1").unwrap());
        assert_eq!(e.den, MPoly::parse("z").unwrap());
        let e = parse_rational_expr("z^-2").unwrap();
        assert_eq!(e.den, MPoly::parse("z^2").unwrap());
        assert!(e.num.as_constant().is_some_and(|c| c.is_one()));
        assert!(parse_rational_expr("0").unwrap().num.is_zero());
    }
}
