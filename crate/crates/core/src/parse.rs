//! Text grammar for scalars, polynomials, points and relation right-hand sides.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('+' | '-') factor | atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are variable names or the field generator (`i` in ℚ(i) and
//! ℚ(ζ₄), `z` in ℚ(ζ_m)). Division is only allowed by scalars and is taken
//! on the right: `f / c = f · c⁻¹`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::monomial::Exponent;
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' | '·' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, pos });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse::<BigInt>().map_err(|_| Error::parse(pos, "bad integer"))?;
            out.push(Token { tok: Tok::Num(n), pos });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), pos });
        } else {
            return Err(Error::parse(pos, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt),
    Ident(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.at += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(&Tok::Caret) {
                    self.at += 1;
                    let pos = self.pos();
                    let parens = self.peek() == Some(&Tok::LParen);
                    if parens {
                        self.at += 1;
                    }
                    let k = match self.peek() {
                        Some(Tok::Num(n)) => n.to_u32().ok_or_else(|| Error::parse(pos, "exponent too large"))?,
                        _ => return Err(Error::parse(pos, "expected a non-negative integer exponent")),
                    };
                    self.at += 1;
                    if parens {
                        if self.peek() != Some(&Tok::RParen) {
                            return Err(Error::parse(self.pos(), "expected `)`"));
                        }
                        self.at += 1;
                    }
                    Ok(Expr::Pow(Box::new(base), k))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.at += 1;
                Ok(Expr::Ident(s, pos))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::parse(self.pos(), "expected `)`"));
                }
                self.at += 1;
                Ok(e)
            }
            Some(t) => Err(Error::parse(pos, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(pos, "unexpected end of input")),
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let end = text.chars().count();
    if toks.is_empty() {
        return Err(Error::parse(0, "empty input"));
    }
    let mut p = Parser { toks, at: 0, end };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(Error::parse(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Evaluation target for the expression tree.
trait Target {
    type V: Clone;
    fn num(&self, n: &BigInt) -> Self::V;
    fn ident(&self, name: &str, pos: usize) -> Result<Self::V>;
    fn add(&self, a: Self::V, b: Self::V) -> Self::V;
    fn neg(&self, a: Self::V) -> Self::V;
    fn mul(&self, a: Self::V, b: Self::V) -> Self::V;
    fn div(&self, a: Self::V, b: Self::V, pos: usize) -> Result<Self::V>;
}

fn eval<T: Target>(t: &T, e: &Expr) -> Result<T::V> {
    Ok(match e {
        Expr::Num(n) => t.num(n),
        Expr::Ident(s, pos) => t.ident(s, *pos)?,
        Expr::Neg(a) => t.neg(eval(t, a)?),
        Expr::Add(a, b) => t.add(eval(t, a)?, eval(t, b)?),
        Expr::Sub(a, b) => {
            let b = eval(t, b)?;
            t.add(eval(t, a)?, t.neg(b))
        }
        Expr::Mul(a, b) => t.mul(eval(t, a)?, eval(t, b)?),
        Expr::Div(a, b, pos) => t.div(eval(t, a)?, eval(t, b)?, *pos)?,
        Expr::Pow(a, k) => {
            let base = eval(t, a)?;
            let mut acc = t.num(&BigInt::one());
            for _ in 0..*k {
                acc = t.mul(acc, base.clone());
            }
            acc
        }
    })
}

struct ScalarTarget<'a> {
    field: &'a Field,
}

fn generator(field: &Field, name: &str) -> Option<Scalar> {
    if field.generator_symbols().contains(&name) {
        field.zeta()
    } else {
        None
    }
}

impl Target for ScalarTarget<'_> {
    type V = Scalar;
    fn num(&self, n: &BigInt) -> Scalar {
        self.field.from_bigint(n)
    }
    fn ident(&self, name: &str, pos: usize) -> Result<Scalar> {
        generator(self.field, name)
            .ok_or_else(|| Error::parse(pos, format!("unknown symbol `{name}` in {}", self.field.spec())))
    }
    fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        &a + &b
    }
    fn neg(&self, a: Scalar) -> Scalar {
        a.neg()
    }
    fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        &a * &b
    }
    fn div(&self, a: Scalar, b: Scalar, pos: usize) -> Result<Scalar> {
        a.div(&b).map_err(|_| Error::parse(pos, "division by zero"))
    }
}

struct PolyTarget<'a> {
    alg: &'a Algebra,
}

impl Target for PolyTarget<'_> {
    type V = Polynomial;
    fn num(&self, n: &BigInt) -> Polynomial {
        self.alg.constant(self.alg.field().from_bigint(n))
    }
    fn ident(&self, name: &str, pos: usize) -> Result<Polynomial> {
        if let Some(i) = self.alg.names().iter().position(|v| v == name) {
            return Ok(self.alg.var(i));
        }
        generator(self.alg.field(), name)
            .map(|z| self.alg.constant(z))
            .ok_or_else(|| Error::parse(pos, format!("unknown variable `{name}`")))
    }
    fn add(&self, a: Polynomial, b: Polynomial) -> Polynomial {
        a.add(&b)
    }
    fn neg(&self, a: Polynomial) -> Polynomial {
        a.neg()
    }
    fn mul(&self, a: Polynomial, b: Polynomial) -> Polynomial {
        self.alg.multiply(&a, &b)
    }
    fn div(&self, a: Polynomial, b: Polynomial, pos: usize) -> Result<Polynomial> {
        if !b.is_constant() {
            return Err(Error::parse(pos, "division by a non-constant polynomial"));
        }
        let c = b.terms().first().map(|t| t.1.clone()).ok_or_else(|| Error::parse(pos, "division by zero"))?;
        let inv = c.inv().map_err(|_| Error::parse(pos, "division by zero"))?;
        Ok(self.alg.mul_right_scalar(&a, &inv))
    }
}

/// Words in the free algebra, used before a presentation exists.
pub(crate) type WordSum = HashMap<Vec<usize>, Scalar>;

struct WordTarget<'a> {
    field: &'a Field,
    names: &'a [String],
    galois: &'a [u32],
}

impl WordTarget<'_> {
    fn twist(&self, word: &[usize], s: &Scalar) -> Scalar {
        let m = self.field.root_order() as u64;
        if m <= 1 {
            return s.clone();
        }
        let k = word.iter().fold(1u64, |acc, &v| acc * self.galois[v] as u64 % m);
        s.galois(k as u32)
    }

    fn scalar_of(&self, v: &WordSum) -> Option<Scalar> {
        if v.is_empty() {
            return Some(self.field.zero());
        }
        if v.len() == 1 {
            if let Some(c) = v.get(&Vec::new()) {
                return Some(c.clone());
            }
        }
        None
    }
}

impl Target for WordTarget<'_> {
    type V = WordSum;
    fn num(&self, n: &BigInt) -> WordSum {
        let c = self.field.from_bigint(n);
        let mut m = HashMap::new();
        if !c.is_zero() {
            m.insert(Vec::new(), c);
        }
        m
    }
    fn ident(&self, name: &str, pos: usize) -> Result<WordSum> {
        let mut m = HashMap::new();
        if let Some(i) = self.names.iter().position(|v| v == name) {
            m.insert(vec![i], self.field.one());
            return Ok(m);
        }
        let z = generator(self.field, name).ok_or_else(|| Error::parse(pos, format!("unknown variable `{name}`")))?;
        m.insert(Vec::new(), z);
        Ok(m)
    }
    fn add(&self, mut a: WordSum, b: WordSum) -> WordSum {
        for (w, c) in b {
            let v = match a.remove(&w) {
                Some(x) => &x + &c,
                None => c,
            };
            if !v.is_zero() {
                a.insert(w, v);
            }
        }
        a
    }
    fn neg(&self, a: WordSum) -> WordSum {
        a.into_iter().map(|(w, c)| (w, c.neg())).collect()
    }
    fn mul(&self, a: WordSum, b: WordSum) -> WordSum {
        let mut out: WordSum = HashMap::new();
        for (wa, ca) in &a {
            for (wb, cb) in &b {
                let coef = ca * &self.twist(wa, cb);
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                let single: WordSum = [(w, coef)].into_iter().collect();
                out = self.add(out, single);
            }
        }
        out
    }
    fn div(&self, a: WordSum, b: WordSum, pos: usize) -> Result<WordSum> {
        let c = self.scalar_of(&b).ok_or_else(|| Error::parse(pos, "division by a non-scalar"))?;
        let inv = c.inv().map_err(|_| Error::parse(pos, "division by zero"))?;
        Ok(a.into_iter()
            .map(|(w, x)| {
                let t = self.twist(&w, &inv);
                (w, &x * &t)
            })
            .collect())
    }
}

pub fn parse_scalar(text: &str, field: &Field) -> Result<Scalar> {
    eval(&ScalarTarget { field }, &parse_expr(text)?)
}

/// Parses a polynomial and normal-orders it through the algebra's rules.
pub fn parse_polynomial(text: &str, alg: &Algebra) -> Result<Polynomial> {
    eval(&PolyTarget { alg }, &parse_expr(text)?)
}

pub(crate) fn parse_words(text: &str, field: &Field, names: &[String], galois: &[u32]) -> Result<WordSum> {
    eval(&WordTarget { field, names, galois }, &parse_expr(text)?)
}

/// Splits on top-level `,` or `;`, returning each piece with its offset.
pub fn split_top_level(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut start_char = 0;
    for (ci, (bi, c)) in text.char_indices().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' | ';' if depth == 0 => {
                out.push((start_char, &text[start..bi]));
                start = bi + c.len_utf8();
                start_char = ci + 1;
            }
            _ => {}
        }
    }
    out.push((start_char, &text[start..]));
    out
}

fn shift_err(e: Error, off: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + off, msg },
        other => other,
    }
}

/// Comma-separated polynomial list; empty input gives an empty list.
pub fn parse_polynomial_list(text: &str, alg: &Algebra) -> Result<Vec<Polynomial>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(text)
        .into_iter()
        .map(|(off, piece)| parse_polynomial(piece, alg).map_err(|e| shift_err(e, off)))
        .collect()
}

/// Comma-separated scalar coordinates.
pub fn parse_point(text: &str, field: &Field) -> Result<Vec<Scalar>> {
    split_top_level(text)
        .into_iter()
        .map(|(off, piece)| parse_scalar(piece, field).map_err(|e| shift_err(e, off)))
        .collect()
}

fn format_monomial(e: &Exponent, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            k => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}

/// Prints terms in deglex-descending order; `parse_polynomial` reads it back.
pub fn format_polynomial(f: &Polynomial, names: &[String]) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (e, c)) in f.terms().iter().enumerate() {
        let (neg, mag, compound) = c.signed_parts();
        let mono = format_monomial(e, names);
        let body = if mono.is_empty() {
            if compound {
                format!("({mag})")
            } else {
                mag
            }
        } else if !compound && mag == "1" {
            mono
        } else if compound {
            format!("({mag})*{mono}")
        } else {
            format!("{mag}*{mono}")
        };
        match (idx == 0, neg) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

/// Formats a point as comma-separated scalars.
pub fn format_point(p: &[Scalar]) -> String {
    p.iter()
        .map(|s| {
            let (_, _, compound) = s.signed_parts();
            if compound {
                format!("({s})")
            } else {
                s.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => chars.all(|c| c.is_alphanumeric() || c == '_'),
        _ => false,
    }
}
