//! Text syntax for polynomials and operators: `2*x0^2*x1 + x2 - 1`,
//! `x0^2*d0 + d1^3`.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr  := ['-'] term (('+' | '-') term)*
//! term  := power ('*' power)*
//! power := atom ('^' integer)?
//! atom  := integer | ident | '(' expr ')' | '-' atom
//! ident := [xyd] digits
//! ```

use crate::error::{Error, Result};
use crate::poly::{Ring, SparsePolynomial};

/// Something the parser can build expressions in.
pub(crate) trait Expr: Clone + Sized {
    fn constant(&self, c: i64) -> Self;
    fn variable(&self, prefix: char, index: usize) -> std::result::Result<Self, String>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn pow(&self, e: u64) -> Self;
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(char, usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse { line: pos.line, column: pos.column, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let mut advance = 1;
        match c {
            '\n' => {
                line += 1;
                column = 0;
            }
            c if c.is_whitespace() => {}
            '+' => out.push((Tok::Plus, pos)),
            '-' => out.push((Tok::Minus, pos)),
            '*' => out.push((Tok::Star, pos)),
            '^' => out.push((Tok::Caret, pos)),
            '(' => out.push((Tok::LParen, pos)),
            ')' => out.push((Tok::RParen, pos)),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                let v = s.parse::<i64>().map_err(|_| err(pos, format!("integer {s} too large")))?;
                out.push((Tok::Int(v), pos));
                advance = j - i;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(err(pos, format!("variable '{c}' needs an index, e.g. {c}0")));
                }
                let s: String = chars[i + 1..j].iter().collect();
                let idx = s.parse::<usize>().map_err(|_| err(pos, "variable index too large"))?;
                out.push((Tok::Ident(c, idx), pos));
                advance = j - i;
            }
            other => return Err(err(pos, format!("unexpected character '{other}'"))),
        }
        i += advance;
        column += advance;
    }
    Ok(out)
}

struct Parser<'a, E: Expr> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    ctx: &'a E,
    end: Pos,
}

impl<E: Expr> Parser<'_, E> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<E> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            self.ctx.constant(0).sub(&self.term()?)
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<E> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<E> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(e)) if e >= 0 => Ok(base.pow(e as u64)),
                _ => Err(err(pos, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<E> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(self.ctx.constant(v)),
            Some(Tok::Ident(c, i)) => self.ctx.variable(c, i).map_err(|m| err(pos, m)),
            Some(Tok::Minus) => Ok(self.ctx.constant(0).sub(&self.atom()?)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(close, "expected ')'")),
                }
            }
            Some(t) => Err(err(pos, format!("unexpected token {t:?}"))),
            None => Err(err(pos, "unexpected end of input")),
        }
    }
}

pub(crate) fn parse_with<E: Expr>(ctx: &E, text: &str) -> Result<E> {
    let toks = tokenize(text)?;
    let end = {
        let lines: Vec<&str> = text.split('\n').collect();
        Pos { line: lines.len(), column: lines.last().map_or(0, |l| l.chars().count()) + 1 }
    };
    if toks.is_empty() {
        return Err(err(end, "empty expression"));
    }
    let mut parser = Parser { toks, at: 0, ctx, end };
    let out = parser.expr()?;
    if parser.at < parser.toks.len() {
        return Err(err(parser.pos(), "trailing input"));
    }
    Ok(out)
}

impl Expr for SparsePolynomial {
    fn constant(&self, c: i64) -> Self {
        self.ring().constant(c)
    }

    fn variable(&self, prefix: char, index: usize) -> std::result::Result<Self, String> {
        let ring = self.ring();
        if prefix != ring.var_name().prefix() {
            return Err(format!(
                "unknown variable {prefix}{index}; this ring uses {}0..{}{}",
                ring.var_name().prefix(),
                ring.var_name().prefix(),
                ring.nvars().saturating_sub(1)
            ));
        }
        if index >= ring.nvars() {
            return Err(format!("variable {prefix}{index} out of range for {} variables", ring.nvars()));
        }
        Ok(ring.var(index))
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn pow(&self, e: u64) -> Self {
        SparsePolynomial::pow(self, e)
    }
}

pub fn parse_polynomial(ring: Ring, text: &str) -> Result<SparsePolynomial> {
    parse_with(&ring.zero(), text)
}
