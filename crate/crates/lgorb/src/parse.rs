//! Text grammar for polynomials: terms joined by + and -, each term a
//! `*`-separated product of factors. A factor is an integer, a fraction
//! `p/q`, the symbol `zeta` (optionally `zeta^k`), or a variable `x3`,
//! `y1`, `z2` (optionally with `^e`).

use crate::error::{Error, Result};
use crate::poly::{Block, Monomial, MultiPoly};
use crate::scalar::{rat, CycField, CycScalar};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Zeta,
    Var(Block, usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_token(&mut self) -> Result<Option<(Token, usize, usize)>> {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
        let (line, col) = (self.line, self.col);
        let c = match self.peek() {
            None => return Ok(None),
            Some(c) => c,
        };
        let tok = match c {
            b'+' => {
                self.bump();
                Token::Plus
            }
            b'-' => {
                self.bump();
                Token::Minus
            }
            b'*' => {
                self.bump();
                Token::Star
            }
            b'/' => {
                self.bump();
                Token::Slash
            }
            b'^' => {
                self.bump();
                Token::Caret
            }
            b'0'..=b'9' => {
                let mut v: i64 = 0;
                while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                    let d = self.bump().unwrap();
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((d - b'0') as i64))
                        .ok_or_else(|| self.err("integer literal too large"))?;
                }
                Token::Int(v)
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = self.pos;
                while matches!(self.peek(), Some(d) if d.is_ascii_alphanumeric()) {
                    self.bump();
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if word == "zeta" {
                    Token::Zeta
                } else {
                    let block = match word.as_bytes()[0] {
                        b'x' => Block::X,
                        b'y' => Block::Y,
                        b'z' => Block::Z,
                        _ => return Err(self.err(format!("unknown symbol `{}`", word))),
                    };
                    let idx: usize = word[1..]
                        .parse()
                        .map_err(|_| self.err(format!("bad variable name `{}`", word)))?;
                    if idx == 0 {
                        return Err(self.err("variable indices start at 1"));
                    }
                    Token::Var(block, idx - 1)
                }
            }
            other => return Err(self.err(format!("unexpected character `{}`", other as char))),
        };
        Ok(Some((tok, line, col)))
    }
}

struct Parser {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
    nvars: usize,
    field: Arc<CycField>,
}

impl Parser {
    fn err_at(&self, idx: usize, msg: impl Into<String>) -> Error {
        let (line, col) = self
            .tokens
            .get(idx)
            .map(|(_, l, c)| (*l, *c))
            .or_else(|| self.tokens.last().map(|(_, l, c)| (*l, *c + 1)))
            .unwrap_or((1, 1));
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_exponent(&mut self) -> Result<u16> {
        match self.bump() {
            Some(Token::Int(v)) if v >= 0 => u16::try_from(v)
                .map_err(|_| self.err_at(self.pos - 1, "exponent too large")),
            _ => Err(self.err_at(self.pos - 1, "expected a nonnegative integer exponent")),
        }
    }

    /// factor := int ('/' int)? | zeta ('^' int)? | var ('^' int)?
    fn parse_factor(&mut self, coeff: &mut CycScalar, mono: &mut Monomial) -> Result<()> {
        let at = self.pos;
        match self.bump() {
            Some(Token::Int(p)) => {
                if matches!(self.peek(), Some(Token::Slash)) {
                    self.bump();
                    match self.bump() {
                        Some(Token::Int(q)) if q != 0 => {
                            *coeff = coeff
                                .checked_mul(&CycScalar::from_rat(&self.field, rat(p, q)))?;
                        }
                        Some(Token::Int(_)) => {
                            return Err(self.err_at(self.pos - 1, "zero denominator"))
                        }
                        _ => return Err(self.err_at(self.pos - 1, "expected a denominator")),
                    }
                } else {
                    *coeff = coeff.checked_mul(&CycScalar::from_int(&self.field, p))?;
                }
            }
            Some(Token::Zeta) => {
                let mut e = 1i64;
                if matches!(self.peek(), Some(Token::Caret)) {
                    self.bump();
                    e = self.parse_exponent()? as i64;
                }
                *coeff = coeff.checked_mul(&CycScalar::zeta_pow(&self.field, e))?;
            }
            Some(Token::Var(block, i)) => {
                if i >= self.nvars {
                    return Err(self.err_at(
                        at,
                        format!(
                            "variable {}{} exceeds the declared {} variables",
                            block.name(),
                            i + 1,
                            self.nvars
                        ),
                    ));
                }
                let mut e = 1u16;
                if matches!(self.peek(), Some(Token::Caret)) {
                    self.bump();
                    e = self.parse_exponent()?;
                }
                let prev = mono.exp(block, i);
                mono.set_exp(block, i, prev + e);
            }
            _ => return Err(self.err_at(at, "expected a coefficient, zeta, or a variable")),
        }
        Ok(())
    }

    fn parse_term(&mut self) -> Result<(Monomial, CycScalar)> {
        let mut coeff = CycScalar::one(&self.field);
        let mut mono = Monomial::one(self.nvars);
        self.parse_factor(&mut coeff, &mut mono)?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            self.parse_factor(&mut coeff, &mut mono)?;
        }
        Ok((mono, coeff))
    }
}

pub fn parse_poly(text: &str, nvars: usize, field: &Arc<CycField>) -> Result<MultiPoly> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    while let Some(t) = lexer.next_token()? {
        tokens.push(t);
    }
    if tokens.is_empty() {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "empty polynomial".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        nvars,
        field: field.clone(),
    };
    let mut poly = MultiPoly::zero(nvars, field);
    let mut negate = false;
    if matches!(parser.peek(), Some(Token::Minus)) {
        parser.bump();
        negate = true;
    } else if matches!(parser.peek(), Some(Token::Plus)) {
        parser.bump();
    }
    loop {
        let (m, mut c) = parser.parse_term()?;
        if negate {
            c = -&c;
        }
        poly.insert_term(m, c);
        match parser.bump() {
            None => break,
            Some(Token::Plus) => negate = false,
            Some(Token::Minus) => negate = true,
            Some(_) => {
                return Err(parser.err_at(parser.pos - 1, "expected `+`, `-`, or end of input"))
            }
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Block;

    #[test]
    fn parses_fermat_and_chain() {
        let f = CycField::new(3);
        let p = parse_poly("x1^3", 1, &f).unwrap();
        assert_eq!(p.nterms(), 1);
        assert_eq!(p.total_degree(), 3);

        let q = parse_poly("x1^3*x2 + x2^4", 2, &f).unwrap();
        assert_eq!(q.nterms(), 2);
    }

    #[test]
    fn parses_signs_and_rationals() {
        let f = CycField::new(3);
        let p = parse_poly("-1/3 * x1 + 2*x1^2 - x1", 1, &f).unwrap();
        let lead = p.leading().unwrap();
        assert_eq!(lead.0.exp(Block::X, 0), 2);
        assert_eq!(p.nterms(), 2);
    }

    #[test]
    fn parses_zeta_coefficients() {
        let f = CycField::new(3);
        let p = parse_poly("zeta^2 * x1 + zeta", 1, &f).unwrap();
        assert_eq!(p.nterms(), 2);
        let zeta2 = CycScalar::zeta_pow(&f, 2);
        assert_eq!(p.coeff(&Monomial::var(1, Block::X, 0)), zeta2);
    }

    #[test]
    fn reports_position_of_errors() {
        let f = CycField::new(3);
        match parse_poly("x1 + x5", 2, &f) {
            Err(Error::Parse { line: 1, col, .. }) => assert_eq!(col, 6),
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(parse_poly("x1 + + x2", 2, &f).is_err());
        assert!(parse_poly("", 1, &f).is_err());
        assert!(parse_poly("1/0", 1, &f).is_err());
    }
}
