//! Expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] INT)?
//! atom   := INT | INT '/' INT | IDENT | '(' expr ')'
//! IDENT  := [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! `^` binds tightest, so `-x^2` is `-(x^2)`. There is no division operator;
//! `p/q` is only valid between two integer literals.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{PolyRing, Polynomial};
use crate::error::ParseError;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt, BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |start: usize| {
        let mut j = start;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'0'..=b'9' => {
                let end = digits(i);
                let num: BigInt = text[i..end].parse().expect("digits");
                i = end;
                let mut den = BigInt::from(1);
                if i < bytes.len() && bytes[i] == b'/' {
                    let dstart = i + 1;
                    let dend = digits(dstart);
                    if dend == dstart {
                        return Err(ParseError::new("expected integer denominator after `/`", i));
                    }
                    den = text[dstart..dend].parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(ParseError::new("zero denominator", dstart));
                    }
                    i = dend;
                }
                out.push((Tok::Num(num, den), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                out.push((Tok::Ident(text[i..j].to_string()), start));
                i = j;
                continue;
            }
            b'/' => {
                return Err(ParseError::new(
                    "`/` is only allowed inside a rational literal",
                    i,
                ))
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(ParseError::new(format!("unexpected character `{ch}`"), i));
            }
        }
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a, C, F> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
    resolve: F,
    _c: std::marker::PhantomData<C>,
}

impl<C: Scalar, F: Fn(&str) -> Option<Polynomial<C>>> Parser<'_, C, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial<C>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<C>, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial<C>, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial<C>, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            (Tok::Num(n, d), _) if d == BigInt::from(1) => {
                if negative && n != BigInt::from(0) {
                    return Err(ParseError::new("negative exponent", at));
                }
                let e = n
                    .to_u32()
                    .ok_or_else(|| ParseError::new("exponent too large", at))?;
                Ok(base.pow(e))
            }
            (_, p) => Err(ParseError::new("expected integer exponent", p)),
        }
    }

    fn atom(&mut self) -> Result<Polynomial<C>, ParseError> {
        match self.bump() {
            (Tok::Num(n, d), p) => {
                let c = C::from_ratio(&n, &d).ok_or_else(|| {
                    ParseError::new("literal out of range for coefficient type", p)
                })?;
                Ok(Polynomial::constant(self.ring, c))
            }
            (Tok::Ident(name), p) => {
                if let Some(i) = self.ring.index_of(&name) {
                    return Ok(Polynomial::var(self.ring, i));
                }
                match (self.resolve)(&name) {
                    Some(poly) if poly.ring() == self.ring => Ok(poly),
                    Some(_) => Err(ParseError::new(
                        format!("`{name}` lives in a different ring"),
                        p,
                    )),
                    None => Err(ParseError::new(format!("unknown variable `{name}`"), p)),
                }
            }
            (Tok::LParen, _) => {
                let inner = self.expr()?;
                match self.bump() {
                    (Tok::RParen, _) => Ok(inner),
                    (_, p) => Err(ParseError::new("expected `)`", p)),
                }
            }
            (Tok::End, p) => Err(ParseError::new("unexpected end of expression", p)),
            (t, p) => Err(ParseError::new(
                format!("unexpected token {}", describe(&t)),
                p,
            )),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::Num(..) => "number",
        Tok::Ident(_) => "identifier",
        Tok::End => "end of input",
    }
}

/// Parses an expression over the variables of `ring`.
pub fn parse_polynomial<C: Scalar>(
    text: &str,
    ring: &Arc<PolyRing>,
) -> Result<Polynomial<C>, ParseError> {
    parse_expression(text, ring, |_| None)
}

/// Parses an expression; identifiers that are not ring variables are looked
/// up through `resolve` (named polynomials, instantiated parameters, ...).
pub fn parse_expression<C, F>(
    text: &str,
    ring: &Arc<PolyRing>,
    resolve: F,
) -> Result<Polynomial<C>, ParseError>
where
    C: Scalar,
    F: Fn(&str) -> Option<Polynomial<C>>,
{
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        ring,
        resolve,
        _c: std::marker::PhantomData,
    };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        t => Err(ParseError::new(
            format!("unexpected token {}", describe(t)),
            p.offset(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::Rational;

    fn r(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars).unwrap()
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn transcribes_terms() {
        let ring = r(&["x", "y"]);
        let p: Polynomial<Rational> = parse_polynomial("x^3 - y^2", &ring).unwrap();
        assert_eq!(p.nterms(), 2);
        assert_eq!(p.coeff(&Monomial::from_exponents(vec![3, 0])), int(1));
        assert_eq!(p.coeff(&Monomial::from_exponents(vec![0, 2])), int(-1));
    }

    #[test]
    fn paper_variety_equation() {
        let ring = r(&["x", "y", "z"]);
        let p: Polynomial<Rational> =
            parse_polynomial("2*x^2*y^2 + y^3 - z^2 + x^4*y", &ring).unwrap();
        assert_eq!(p.nterms(), 4);
        assert_eq!(p.coeff(&Monomial::from_exponents(vec![2, 2, 0])), int(2));
        assert_eq!(p.coeff(&Monomial::from_exponents(vec![4, 1, 0])), int(1));
    }

    #[test]
    fn cancellation_gives_zero() {
        let ring = r(&["x"]);
        assert!(parse_polynomial::<Rational>("x - x", &ring)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn precedence_and_literals() {
        let ring = r(&["x", "y"]);
        let p: Polynomial<Rational> = parse_polynomial("-x^2 + 3/6*(x+y)^2 - 2^3", &ring).unwrap();
        assert_eq!(p.to_string(), "-1/2*x^2 + x*y + 1/2*y^2 - 8");
        let q: Polynomial<Rational> = parse_polynomial("2*-x", &ring).unwrap();
        assert_eq!(q.to_string(), "-2*x");
    }

    #[test]
    fn errors_carry_positions() {
        let ring = r(&["x", "y"]);
        let e = parse_polynomial::<Rational>("x + q", &ring).unwrap_err();
        assert_eq!(e.position, 4);
        assert!(e.message.contains("unknown variable"));
        let e = parse_polynomial::<Rational>("x^-2", &ring).unwrap_err();
        assert!(e.message.contains("negative exponent"));
        let e = parse_polynomial::<Rational>("x/2", &ring).unwrap_err();
        assert_eq!(e.position, 1);
        assert!(parse_polynomial::<Rational>("(x + y", &ring).is_err());
        assert!(parse_polynomial::<Rational>("x y", &ring).is_err());
        assert!(parse_polynomial::<Rational>("", &ring).is_err());
        assert!(parse_polynomial::<Rational>("1/0", &ring).is_err());
        assert!(parse_polynomial::<Rational>("x $ y", &ring).is_err());
    }

    #[test]
    fn resolver_supplies_named_objects() {
        let ring = r(&["x"]);
        let half = Polynomial::constant(&ring, Rational::new(1.into(), 2.into()));
        let p: Polynomial<Rational> =
            parse_expression("a*x + a", &ring, |n| (n == "a").then(|| half.clone())).unwrap();
        assert_eq!(p.to_string(), "1/2*x + 1/2");
    }
}
