//! Text syntax for Laurent polynomials, rationals, exponent vectors and
//! integer matrices.
//!
//! Polynomial grammar (whitespace insignificant, `*` mandatory between
//! coefficient and variable):
//!
//! ```text
//! poly     := '-'? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | var ('^' int)?
//! var      := 'x' posint
//! rational := int ('/' posint)?
//! int      := '-'? digits
//! ```
//!
//! Variables are `x1..xn`. Matrix rows are separated by `;`, entries by `,`.
//! Errors carry a 1-based line:column position.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlat::IntMatrix;
use crate::laurent::{Exponent, LaurentPoly};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    src: &'a [u8],
    i: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), i: 0, line: 1, col: 1 }
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.i).copied()?;
        self.i += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.i).copied()
    }

    fn err(&self, pos: Pos, msg: impl Into<String>) -> Error {
        Error::Parse { line: pos.line, col: pos.col, msg: msg.into() }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>> {
        let mut out = Vec::new();
        loop {
            while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
                self.bump();
            }
            let pos = self.pos();
            let Some(c) = self.peek() else { break };
            match c {
                b'+' => {
                    self.bump();
                    out.push((Tok::Plus, pos));
                }
                b'-' => {
                    self.bump();
                    out.push((Tok::Minus, pos));
                }
                b'*' => {
                    self.bump();
                    out.push((Tok::Star, pos));
                }
                b'/' => {
                    self.bump();
                    out.push((Tok::Slash, pos));
                }
                b'^' => {
                    self.bump();
                    out.push((Tok::Caret, pos));
                }
                b'0'..=b'9' => {
                    let n = self.digits()?;
                    out.push((Tok::Num(n), pos));
                }
                b'x' => {
                    self.bump();
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        return Err(self.err(pos, "expected variable index after 'x'"));
                    }
                    let n = self.digits()?;
                    let idx = usize::try_from(&n)
                        .ok()
                        .filter(|&v| v >= 1)
                        .ok_or_else(|| self.err(pos, "bad variable index"))?;
                    out.push((Tok::Var(idx), pos));
                }
                _ => {
                    return Err(self.err(pos, format!("unexpected character '{}'", c as char)));
                }
            }
        }
        Ok(out)
    }

    fn digits(&mut self) -> Result<BigInt> {
        let mut s = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.bump().unwrap() as char);
        }
        Ok(s.parse().expect("ascii digits"))
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(t, _)| t.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let p = self.pos();
        Error::Parse { line: p.line, col: p.col, msg: msg.into() }
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.nvars);
        let mut sign_neg = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            sign_neg = true;
        }
        let t = self.term()?;
        acc = if sign_neg { acc.sub(&t)? } else { acc.add(&t)? };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                None => break,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(Tok::Minus) | Some(Tok::Num(_)) => {
                let q = self.rational()?;
                Ok(LaurentPoly::constant(self.nvars, q))
            }
            Some(Tok::Var(idx)) => {
                let idx = *idx;
                if idx > self.nvars {
                    return Err(self.err(format!(
                        "variable index {} out of range 1..={}",
                        idx, self.nvars
                    )));
                }
                self.bump();
                let mut e = 1i64;
                if matches!(self.peek(), Some(Tok::Caret)) {
                    self.bump();
                    e = self.int()?;
                }
                let mut exp = vec![0i64; self.nvars];
                exp[idx - 1] = e;
                Ok(LaurentPoly::monomial(Exponent(exp), Rat::one()))
            }
            _ => Err(self.err("expected a rational or a variable")),
        }
    }

    fn rational(&mut self) -> Result<Rat> {
        let mut neg = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            neg = true;
        }
        let num = match self.bump() {
            Some(Tok::Num(n)) => n,
            _ => return Err(self.err("expected digits")),
        };
        let mut den = BigInt::one();
        if matches!(self.peek(), Some(Tok::Slash)) {
            self.bump();
            let dpos = self.pos();
            den = match self.bump() {
                Some(Tok::Num(n)) => n,
                _ => return Err(self.err("expected digits after '/'")),
            };
            if den.is_zero() {
                return Err(Error::Parse {
                    line: dpos.line,
                    col: dpos.col,
                    msg: "zero denominator".into(),
                });
            }
        }
        let q = Rat::new(num, den);
        Ok(if neg { -q } else { q })
    }

    fn int(&mut self) -> Result<i64> {
        let mut neg = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            neg = true;
        }
        match self.bump() {
            Some(Tok::Num(n)) => {
                let v = i64::try_from(&n).map_err(|_| self.err("exponent too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("expected an integer")),
        }
    }
}

fn end_pos(text: &str) -> Pos {
    let mut line = 1;
    let mut col = 1;
    for c in text.bytes() {
        if c == b'\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    Pos { line, col }
}

/// Parse a Laurent polynomial in variables `x1..x{nvars}` into canonical
/// form; like terms are combined and zero terms dropped.
pub fn parse_poly(text: &str, nvars: usize) -> Result<LaurentPoly> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, i: 0, end: end_pos(text), nvars };
    let poly = p.poly()?;
    if p.i != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

fn format_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn format_term(e: &Exponent, c: &Rat) -> String {
    let vars: Vec<String> = e
        .0
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, k)
            }
        })
        .collect();
    if vars.is_empty() {
        return format_rat(c);
    }
    let vars = vars.join("*");
    if c.is_one() {
        vars
    } else {
        format!("{}*{}", format_rat(c), vars)
    }
}

/// Canonical string form: terms in descending lexicographic exponent order,
/// round-tripping exactly through [`parse_poly`].
pub fn format_poly(f: &LaurentPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in f.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&format_term(e, &abs));
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

/// Integer matrix text: rows separated by `;`, entries by `,`.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    for (ri, row_text) in text.split(';').enumerate() {
        let mut row = Vec::new();
        for entry in row_text.split(',') {
            let t = entry.trim();
            let v: BigInt = t.parse().map_err(|_| Error::Parse {
                line,
                col,
                msg: format!("entry {:?} is not an integer", t),
            })?;
            row.push(v);
            col += entry.len() + 1;
        }
        if ri > 0 && row.len() != rows[0].len() {
            return Err(Error::Parse {
                line,
                col: 1,
                msg: format!(
                    "ragged matrix: row {} has {} entries, expected {}",
                    ri + 1,
                    row.len(),
                    rows[0].len()
                ),
            });
        }
        rows.push(row);
        line += row_text.matches('\n').count();
        col = 1;
    }
    Ok(IntMatrix::from_bigint_rows(rows))
}

/// Comma-separated list of rationals written `p` or `p/q`.
pub fn parse_rat_list(text: &str) -> Result<Vec<Rat>> {
    let mut out = Vec::new();
    for (i, part) in text.split(',').enumerate() {
        let toks = Lexer::new(part).tokens()?;
        let end = end_pos(part);
        let mut p = Parser { toks, i: 0, end, nvars: 0 };
        let q = p.rational().map_err(|e| match e {
            Error::Parse { line, col, msg } => Error::Parse {
                line,
                col,
                msg: format!("entry {}: {}", i + 1, msg),
            },
            other => other,
        })?;
        if p.i != p.toks.len() {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: format!("entry {}: trailing input", i + 1),
            });
        }
        out.push(q);
    }
    Ok(out)
}

/// Comma-separated integer vector, e.g. `1,0,-2`.
pub fn parse_int_vec(text: &str) -> Result<Exponent> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let t = part.trim();
        let v: i64 = t.parse().map_err(|_| Error::Parse {
            line: 1,
            col: 1,
            msg: format!("entry {:?} is not an integer", t),
        })?;
        out.push(v);
    }
    Ok(Exponent(out))
}
