//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := primary ['^' integer]
//! primary := integer | identifier | '(' expr ')'
//! ```
//!
//! A divisor must not involve the variables.

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{MPoly, RatFunc, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

/// Line and column (both 1-based, columns in characters) of a byte offset.
pub fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let err = |off: usize, message: String| {
        let (line, column) = position(text, off);
        ParseError { message, line, column }
    };
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, i));
            it.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + d.len_utf8();
                it.next();
            }
            let n: BigInt = text[i..end].parse().expect("digits");
            out.push((Tok::Int(n), i));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                it.next();
            }
            out.push((Tok::Ident(text[i..end].to_string()), i));
            continue;
        }
        return Err(err(i, format!("unexpected character '{c}'")));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [String],
    param: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, off: usize, message: String) -> ParseError {
        let (line, column) = position(self.text, off);
        ParseError { message, line, column }
    }

    fn unexpected(&self) -> ParseError {
        let (t, off) = &self.toks[self.pos];
        self.error_at(*off, format!("unexpected {}", t.describe()))
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    let off = self.toks[self.pos].1;
                    let d = self.factor()?;
                    if !d.is_constant() {
                        return Err(self.error_at(off, "divisor must not involve the variables".into()));
                    }
                    let c = d.constant_term();
                    let inv = c.inv().map_err(|_| self.error_at(off, "division by zero".into()))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (Tok::Int(k), off) => {
                let k: u32 = k
                    .try_into()
                    .map_err(|_| self.error_at(off, "exponent too large".into()))?;
                Ok(base.pow(k))
            }
            (_, _) => {
                self.pos -= 1;
                Err(self.unexpected())
            }
        }
    }

    fn primary(&mut self) -> Result<MPoly, ParseError> {
        let n = self.n();
        match self.peek().clone() {
            Tok::Int(k) => {
                self.bump();
                Ok(MPoly::constant(n, RatFunc::from_rational(&Rational::from_integer(k))))
            }
            Tok::Ident(name) => {
                let off = self.toks[self.pos].1;
                self.bump();
                if name == self.param {
                    Ok(MPoly::constant(n, RatFunc::t()))
                } else if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    Ok(MPoly::var(n, i))
                } else {
                    Err(self.error_at(off, format!("unknown identifier '{name}'")))
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected());
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parse `text` as a polynomial in `vars` with coefficients in `Q(param)`.
pub fn parse_polynomial(text: &str, vars: &[String], param: &str) -> Result<MPoly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        text,
        toks,
        pos: 0,
        vars,
        param,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected());
    }
    Ok(e)
}
