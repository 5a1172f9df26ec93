//! Parser for the polynomial text grammar: integer literals, the variable
//! `x`, operators `+ - * ^`, optional whitespace, implicit multiplication
//! between a coefficient and `x` (`3x^2`). Exponents are nonnegative
//! integer literals.

use super::IntPolynomial;
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

struct Lexer<'a> {
    input: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Caret,
    End,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Lexer {
            input: input.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Result<(Tok, usize), ParseError> {
        let save = self.pos;
        let t = self.next_tok()?;
        self.pos = save;
        Ok(t)
    }

    fn next_tok(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.input.len() {
            return Ok((Tok::End, start));
        }
        let c = self.input[self.pos];
        match c {
            b'+' => {
                self.pos += 1;
                Ok((Tok::Plus, start))
            }
            b'-' => {
                self.pos += 1;
                Ok((Tok::Minus, start))
            }
            b'*' => {
                self.pos += 1;
                Ok((Tok::Star, start))
            }
            b'^' => {
                self.pos += 1;
                Ok((Tok::Caret, start))
            }
            b'x' | b'X' => {
                self.pos += 1;
                Ok((Tok::Var, start))
            }
            b'0'..=b'9' => {
                let s = self.pos;
                while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.input[s..self.pos]).unwrap();
                Ok((Tok::Int(text.parse().unwrap()), start))
            }
            _ => err(start, format!("unexpected character '{}'", c as char)),
        }
    }
}

/// Parses polynomial text into canonical coefficient form.
pub fn parse(text: &str) -> Result<IntPolynomial, ParseError> {
    let mut lx = Lexer::new(text);
    let mut acc = IntPolynomial::zero();
    let mut first = true;
    loop {
        let (tok, at) = lx.peek()?;
        let mut sign = 1i32;
        match tok {
            Tok::End if first => return err(at, "empty input"),
            Tok::End => break,
            Tok::Plus => {
                if first {
                    return err(at, "leading '+' without term");
                }
                lx.next_tok()?;
            }
            Tok::Minus => {
                sign = -1;
                lx.next_tok()?;
                // allow a run of unary minus signs? keep it strict: one sign per term
            }
            _ if first => {}
            _ => return err(at, "expected '+' or '-' between terms"),
        }
        let term = parse_term(&mut lx)?;
        acc = if sign < 0 { acc.sub(&term) } else { acc.add(&term) };
        first = false;
    }
    Ok(acc)
}

/// term := factor (('*')? factor)* where factor := integer | x ('^' integer)?
fn parse_term(lx: &mut Lexer) -> Result<IntPolynomial, ParseError> {
    let mut acc: Option<IntPolynomial> = None;
    loop {
        let (tok, at) = lx.peek()?;
        match tok {
            Tok::Int(_) | Tok::Var => {
                let f = parse_factor(lx)?;
                acc = Some(match acc {
                    None => f,
                    Some(a) => a.mul(&f),
                });
            }
            Tok::Star => {
                if acc.is_none() {
                    return err(at, "'*' without left operand");
                }
                lx.next_tok()?;
                let f = parse_factor(lx)?;
                acc = Some(acc.unwrap().mul(&f));
            }
            _ => break,
        }
    }
    match acc {
        Some(a) => Ok(a),
        None => {
            let (_, at) = lx.peek()?;
            err(at, "expected a term")
        }
    }
}

fn parse_factor(lx: &mut Lexer) -> Result<IntPolynomial, ParseError> {
    let (tok, at) = lx.next_tok()?;
    match tok {
        Tok::Int(n) => Ok(IntPolynomial::constant(n)),
        Tok::Var => {
            let (next, nat) = lx.peek()?;
            if next == Tok::Caret {
                lx.next_tok()?;
                let (e, eat) = lx.next_tok()?;
                match e {
                    Tok::Int(n) => {
                        if n.is_zero() {
                            return Ok(IntPolynomial::one());
                        }
                        let exp: usize = n
                            .try_into()
                            .map_err(|_| ParseError {
                                position: eat,
                                message: "exponent too large".into(),
                            })?;
                        let mut coeffs = vec![BigInt::zero(); exp + 1];
                        coeffs[exp] = BigInt::from(1);
                        Ok(IntPolynomial::new(coeffs))
                    }
                    Tok::Minus => err(eat, "negative exponent"),
                    _ => err(eat, "expected integer exponent"),
                }
            } else {
                let _ = nat;
                Ok(IntPolynomial::x())
            }
        }
        _ => err(at, "expected integer or 'x'"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_terms() {
        assert_eq!(parse("x^2-3x+1").unwrap(), IntPolynomial::from_i64(&[1, -3, 1]));
        assert_eq!(parse("x").unwrap(), IntPolynomial::from_i64(&[0, 1]));
        assert_eq!(parse("2x^12").unwrap().coeff(12), 2.into());
        assert_eq!(parse("3*x^2").unwrap(), parse("3x^2").unwrap());
        assert_eq!(parse(" x ^ 2 - 3 x + 1 ").unwrap(), parse("x^2-3x+1").unwrap());
    }

    #[test]
    fn term_order_independent() {
        assert_eq!(parse("1-3x+x^2").unwrap(), parse("x^2-3x+1").unwrap());
    }

    #[test]
    fn table1_row2_degree() {
        let p = parse("x^8-12x^7+57x^6-138x^5+183x^4-138x^3+57x^2-12x+1").unwrap();
        assert_eq!(p.degree(), 8);
        assert_eq!(p.coeff(6), 57.into());
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse("x^-1").is_err());
        assert!(parse("").is_err());
        assert!(parse("x+").is_err());
        assert!(parse("y").is_err());
        assert!(parse("3^2").is_err()); // caret only after x
        let e = parse("x^2 % 1").unwrap_err();
        assert!(e.position > 0);
    }
}
