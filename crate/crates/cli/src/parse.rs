//! Text forms of polynomials, derivations and rationals.
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := factor ("*" factor)*
//! factor := nat ["/" nat] | "x" nat ["^" nat] | "(" poly ")" ["^" nat]
//! sign   := "+" | "-"
//! ```
//!
//! A derivation is either `n` comma-separated polynomials (the generator
//! images) or a sum of `[term] d/dx<i>` operators, e.g.
//! `x1 d/dx1 - x2 d/dx2`. Whitespace is insignificant.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use cremona_core::poly::{Exponent, Rat};
use cremona_core::{Derivation, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("variable x{index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected {expected} generator images, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("division by zero in coefficient")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    DDx(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_at = |start: usize| -> (usize, &str) {
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        (end, &src[start..end])
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' => {
                let (end, text) = digits_at(i);
                i = end;
                out.push((start, Tok::Num(text.parse().expect("ascii digits"))));
                continue;
            }
            b'x' => {
                let (end, text) = digits_at(i + 1);
                if text.is_empty() {
                    return Err(syntax(i, "expected variable index after 'x'"));
                }
                i = end;
                let idx = text.parse().map_err(|_| syntax(start, "variable index too large"))?;
                out.push((start, Tok::Var(idx)));
                continue;
            }
            b'd' if src[i..].starts_with("d/dx") => {
                let (end, text) = digits_at(i + 4);
                if text.is_empty() {
                    return Err(syntax(i, "expected variable index after 'd/dx'"));
                }
                i = end;
                let idx = text.parse().map_err(|_| syntax(start, "variable index too large"))?;
                out.push((start, Tok::DDx(idx)));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(syntax(i, format!("unexpected character {ch:?}")));
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    n: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn var_index(&self, idx: usize) -> Result<usize, ParseError> {
        if idx == 0 || idx > self.n {
            Err(ParseError::IndexOutOfRange { index: idx, n: self.n })
        } else {
            Ok(idx - 1)
        }
    }

    fn nat_u32(&mut self) -> Result<u32, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(k)) => k.to_u32().ok_or_else(|| syntax(at, "exponent too large")),
            _ => Err(syntax(at, "expected a natural number")),
        }
    }

    fn poly(&mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::zero(self.n);
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    false
                }
                Some(Tok::Minus) => {
                    self.bump();
                    true
                }
                _ if first => false,
                _ => break,
            };
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            first = false;
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Var(_) | Tok::LParen | Tok::Minus))
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            // `x2*d/dx1` leaves the operator to the caller
            if let Some((_, Tok::DDx(_))) = self.toks.get(self.pos + 1) {
                break;
            }
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Minus) => Ok(-self.factor()?),
            Some(Tok::Num(num)) => {
                let mut value = Rat::from_integer(num);
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let at = self.offset();
                    let Some(Tok::Num(den)) = self.bump() else {
                        return Err(syntax(at, "expected denominator"));
                    };
                    if den.is_zero() {
                        return Err(ParseError::ZeroDenominator);
                    }
                    value /= Rat::from_integer(den);
                }
                Ok(Poly::constant(self.n, value))
            }
            Some(Tok::Var(idx)) => {
                let index = self.var_index(idx)?;
                let mut power = 1;
                if let Some(Tok::Caret) = self.peek() {
                    self.bump();
                    power = self.nat_u32()?;
                }
                let mut exp = vec![0; self.n];
                exp[index] = power;
                Ok(Poly::monomial(Exponent::new(exp), Rat::from_integer(1.into())))
            }
            Some(Tok::LParen) => {
                let inner = self.poly()?;
                let at = self.offset();
                if self.bump() != Some(Tok::RParen) {
                    return Err(syntax(at, "expected ')'"));
                }
                if let Some(Tok::Caret) = self.peek() {
                    self.bump();
                    let k = self.nat_u32()?;
                    return Ok(inner.pow(k));
                }
                Ok(inner)
            }
            _ => Err(syntax(at, "expected a number, variable or '('")),
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            Err(syntax(self.offset(), "unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    /// `[sign] [term ["*"]] d/dx<i> (sign [term ["*"]] d/dx<i>)*`
    fn operator_sum(&mut self) -> Result<Derivation, ParseError> {
        let mut images = vec![Poly::zero(self.n); self.n];
        let mut first = true;
        while self.pos < self.toks.len() {
            let negative = match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    false
                }
                Some(Tok::Minus) => {
                    self.bump();
                    true
                }
                _ if first => false,
                _ => return Err(syntax(self.offset(), "expected '+' or '-'")),
            };
            let coeff = if let Some(Tok::DDx(_)) = self.peek() {
                Poly::one(self.n)
            } else if self.starts_factor() {
                let t = self.term()?;
                if let Some(Tok::Star) = self.peek() {
                    self.bump();
                }
                t
            } else {
                return Err(syntax(self.offset(), "expected a term or 'd/dx'"));
            };
            let at = self.offset();
            let Some(Tok::DDx(idx)) = self.bump() else {
                return Err(syntax(at, "expected 'd/dx<i>'"));
            };
            let index = self.var_index(idx)?;
            images[index] = if negative { &images[index] - &coeff } else { &images[index] + &coeff };
            first = false;
        }
        if first {
            return Err(syntax(self.end, "empty derivation"));
        }
        Ok(Derivation::new(images).expect("images share dimension n"))
    }
}

/// Parses a polynomial in `x1..xn`.
pub fn parse_poly(src: &str, n: usize) -> Result<Poly, ParseError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(syntax(0, "empty polynomial"));
    }
    let mut p = Parser { toks: &toks, pos: 0, end: src.len(), n };
    let poly = p.poly()?;
    p.expect_end()?;
    Ok(poly)
}

/// Parses `n` comma-separated polynomials.
pub fn parse_poly_list(src: &str, n: usize) -> Result<Vec<Poly>, ParseError> {
    let toks = lex(src)?;
    let mut parts = Vec::new();
    let mut p = Parser { toks: &toks, pos: 0, end: src.len(), n };
    loop {
        if p.pos >= toks.len() || p.peek() == Some(&Tok::Comma) {
            return Err(syntax(p.offset(), "expected a polynomial"));
        }
        parts.push(p.poly()?);
        match p.bump() {
            None => break,
            Some(Tok::Comma) => continue,
            Some(_) => return Err(syntax(toks[p.pos - 1].0, "expected ',' or end of input")),
        }
    }
    if parts.len() != n {
        return Err(ParseError::WrongArity { expected: n, got: parts.len() });
    }
    Ok(parts)
}

/// Parses a derivation in either the image-list or the `d/dx` operator form.
pub fn parse_derivation(src: &str, n: usize) -> Result<Derivation, ParseError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(syntax(0, "empty derivation"));
    }
    if toks.iter().any(|(_, t)| matches!(t, Tok::DDx(_))) {
        let mut p = Parser { toks: &toks, pos: 0, end: src.len(), n };
        return p.operator_sum();
    }
    // `0` is how the operator form prints the zero derivation
    if !toks.iter().any(|(_, t)| matches!(t, Tok::Comma)) {
        let single = parse_poly(src, n)?;
        if single.is_zero() {
            return Ok(Derivation::zero(n));
        }
    }
    let images = parse_poly_list(src, n)?;
    Ok(Derivation::new(images).expect("images share dimension n"))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(src: &str) -> Result<Rat, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks: &toks, pos: 0, end: src.len(), n: 1 };
    let value = p.poly()?;
    p.expect_end()?;
    match value.single_term() {
        None if value.is_zero() => Ok(Rat::zero()),
        Some((e, c)) if e.is_zero() => Ok(c.clone()),
        _ => Err(syntax(0, "expected a rational number")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cremona_core::poly::{rat, ratio};

    #[test]
    fn literals() {
        let p = parse_poly("3*x1^2*x3 - 1/2*x2", 3).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coefficient(&Exponent::new(vec![2, 0, 1])), rat(3));
        assert_eq!(p.coefficient(&Exponent::new(vec![0, 1, 0])), ratio(-1, 2));
        assert_eq!(parse_poly("x1*x1", 2).unwrap(), Poly::var(2, 0).pow(2));
        assert_eq!(parse_poly("x4", 3), Err(ParseError::IndexOutOfRange { index: 4, n: 3 }));
        assert_eq!(parse_poly("x0", 3), Err(ParseError::IndexOutOfRange { index: 0, n: 3 }));
    }

    #[test]
    fn signs_and_parentheses() {
        assert_eq!(parse_poly("-x1 + -2*x2", 2).unwrap().to_string(), "-x1 - 2*x2");
        assert_eq!(parse_poly("(x1 + 1)^2", 2).unwrap().to_string(), "x1^2 + 2*x1 + 1");
        assert_eq!(parse_poly("x1 - x1", 2).unwrap(), Poly::zero(2));
        assert_eq!(parse_poly(" 0 ", 2).unwrap(), Poly::zero(2));
    }

    #[test]
    fn syntax_errors_have_positions() {
        assert!(matches!(parse_poly("x1 +", 2), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("x1 ? x2", 2), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("x1 x2", 2), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("", 2), Err(ParseError::Syntax { .. })));
        assert_eq!(parse_poly("1/0", 2), Err(ParseError::ZeroDenominator));
    }

    #[test]
    fn derivation_forms() {
        let d = parse_derivation("x2^3 d/dx1", 2).unwrap();
        assert_eq!(d.images(), &[Poly::var(2, 1).pow(3), Poly::zero(2)]);
        let d = parse_derivation("0, x1*x3, 0", 3).unwrap();
        assert_eq!(d.images()[1], &Poly::var(3, 0) * &Poly::var(3, 2));
        let d = parse_derivation("x1 d/dx1 - x2 d/dx2", 2).unwrap();
        assert_eq!(d.images(), &[Poly::var(2, 0), -Poly::var(2, 1)]);
        let d = parse_derivation("d/dx1 + 2*x1*d/dx2 - (x1 + x2) d/dx1", 2).unwrap();
        assert_eq!(d.images()[0].to_string(), "-x1 - x2 + 1");
        assert_eq!(d.images()[1].to_string(), "2*x1");
        assert_eq!(parse_derivation("x1, x2", 3), Err(ParseError::WrongArity { expected: 3, got: 2 }));
        assert!(parse_derivation("x1 d/dx3", 2).is_err());
        assert!(parse_derivation("x1 d/dx1 x2", 2).is_err());
        assert!(parse_derivation("x1,,x2", 3).is_err());
    }

    #[test]
    fn printed_forms_parse_back() {
        let d = parse_derivation("1/2*x2^2 d/dx1 - 3 d/dx2 + (x1 + x3) d/dx3", 3).unwrap();
        assert_eq!(parse_derivation(&d.to_string(), 3).unwrap(), d);
        assert_eq!(parse_derivation(&d.operator_form(), 3).unwrap(), d);
        let zero = Derivation::zero(3);
        assert_eq!(parse_derivation(&zero.operator_form(), 3).unwrap(), zero);
        assert!(matches!(parse_derivation("x1", 2), Err(ParseError::WrongArity { .. })));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rat("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rat("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_rat("0").unwrap(), rat(0));
        assert!(parse_rat("x1").is_err());
    }
}
