//! Text syntax for rational expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^-1' | '^*']
//! atom   := scalar | generator | '(' expr ')'
//! scalar := rational ['*i' | 'i'] | 'i'
//! ```
//!
//! `x^-1` and `x^*` on a bare generator denote the group element `x⁻¹`; on
//! anything else they build `Inv` and `Adjoint` nodes. A bare scalar that
//! opens a product of several factors becomes a `ScalarMul`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::expr::RationalExpression;
use crate::algebra::GroupAlgebraElement;
use crate::freegroup::{GeneratorSet, ReducedWord};
use crate::scalar::{format_rational, GaussianRational};

type Expr = RationalExpression<GaussianRational>;
use RationalExpression as E;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown generator {name:?} at position {pos}")]
    UnknownGenerator { pos: usize, name: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_alphanumeric() || *d == '_') {
                s.push(d);
                chars.next();
            }
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            chars.next();
        } else {
            return Err(ParseError::Syntax { pos, message: format!("unexpected character {c:?}") });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    gens: &'a GeneratorSet,
}

/// A factor, remembering whether it was a bare scalar token.
struct Factor {
    expr: Expr,
    bare_scalar: Option<GaussianRational>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if self.eat('-') { E::Neg(Box::new(self.term()?)) } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = E::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = E::Add(Box::new(acc), Box::new(E::Neg(Box::new(self.term()?))));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let first = self.factor()?;
        let mut rest = Vec::new();
        while self.eat('*') {
            rest.push(self.factor()?.expr);
        }
        if rest.is_empty() {
            return Ok(first.expr);
        }
        Ok(match first.bare_scalar {
            Some(c) => E::ScalarMul(c, Box::new(fold_mul(rest).expect("nonempty"))),
            None => fold_mul(std::iter::once(first.expr).chain(rest).collect()).expect("nonempty"),
        })
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        let pos = self.pos();
        let (atom, generator) = match self.bump() {
            Tok::Num(n) => {
                let c = self.scalar_tail(n)?;
                let expr = E::Leaf(GroupAlgebraElement::scalar(c.clone()));
                return self.postfix(Factor { expr, bare_scalar: Some(c) }, None);
            }
            Tok::Ident(name) if name == "i" => {
                let c = GaussianRational::new(BigRational::zero(), BigRational::one());
                let expr = E::Leaf(GroupAlgebraElement::scalar(c.clone()));
                return self.postfix(Factor { expr, bare_scalar: Some(c) }, None);
            }
            Tok::Ident(name) => {
                let idx = self.gens.index_of(&name).ok_or(ParseError::UnknownGenerator { pos, name })?;
                (E::Leaf(GroupAlgebraElement::word(ReducedWord::letter(idx))), Some(idx))
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                (inner, None)
            }
            Tok::End => return Err(ParseError::Syntax { pos, message: "unexpected end of input".into() }),
            t => return Err(ParseError::Syntax { pos, message: format!("unexpected {}", describe(&t)) }),
        };
        self.postfix(Factor { expr: atom, bare_scalar: None }, generator)
    }

    fn postfix(&mut self, f: Factor, generator: Option<i32>) -> Result<Factor, ParseError> {
        if !self.eat('^') {
            return Ok(f);
        }
        let adjoint = if self.eat('*') {
            true
        } else if self.eat('-') && *self.peek() == Tok::Num(BigInt::one()) {
            self.bump();
            false
        } else {
            return self.error("expected '^-1' or '^*'");
        };
        let expr = match (generator, adjoint) {
            (Some(idx), _) => E::Leaf(GroupAlgebraElement::word(ReducedWord::letter(-idx))),
            (None, true) => E::Adjoint(Box::new(f.expr)),
            (None, false) => E::Inv(Box::new(f.expr)),
        };
        Ok(Factor { expr, bare_scalar: None })
    }

    /// Rest of a scalar after its leading integer: `/q`, then `i` or `*i`.
    fn scalar_tail(&mut self, numer: BigInt) -> Result<GaussianRational, ParseError> {
        let mut q = BigRational::from_integer(numer);
        if self.eat('/') {
            match self.bump() {
                Tok::Num(d) if !d.is_zero() => q /= BigRational::from_integer(d),
                Tok::Num(_) => return self.error("zero denominator"),
                _ => return self.error("expected a denominator"),
            }
        }
        let is_i = |t: &Tok| matches!(t, Tok::Ident(s) if s == "i");
        let imaginary = if is_i(self.peek()) {
            self.bump();
            true
        } else if *self.peek() == Tok::Sym('*') && is_i(self.peek2()) {
            self.bump();
            self.bump();
            true
        } else {
            false
        };
        Ok(if imaginary {
            GaussianRational::new(BigRational::zero(), q)
        } else {
            GaussianRational::new(q, BigRational::zero())
        })
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("name {s:?}"),
        Tok::Sym(c) => format!("{c:?}"),
        Tok::End => "end of input".into(),
    }
}

fn fold_mul(factors: Vec<Expr>) -> Option<Expr> {
    factors.into_iter().reduce(|a, b| E::Mul(Box::new(a), Box::new(b)))
}

pub fn parse(text: &str, gens: &GeneratorSet) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, gens };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => {
            let msg = format!("unexpected {}", describe(t));
            p.error(msg)
        }
    }
}

/// Scalar in token form, when `c` is a nonnegative real or a positive
/// imaginary number.
fn scalar_token(c: &GaussianRational) -> Option<String> {
    if c.im.is_zero() && !c.re.is_negative() {
        Some(format_rational(&c.re))
    } else if c.re.is_zero() && c.im.is_positive() {
        Some(if c.im.is_one() { "i".to_string() } else { format!("{}*i", format_rational(&c.im)) })
    } else {
        None
    }
}

fn leaf_scalar(a: &GroupAlgebraElement<GaussianRational>) -> Option<GaussianRational> {
    match a.as_monomial() {
        None if a.is_zero() => Some(GaussianRational::zero()),
        Some((c, w)) if w.is_identity() => Some(c.clone()),
        _ => None,
    }
}

struct Printer<'a> {
    gens: &'a GeneratorSet,
}

impl Printer<'_> {
    fn expr(&self, e: &Expr) -> String {
        match e {
            E::Add(a, b) => match &**b {
                E::Neg(t) => format!("{} - {}", self.expr(a), self.term(t)),
                _ => format!("{} + {}", self.expr(a), self.term(b)),
            },
            E::Neg(t) => format!("-{}", self.term(t)),
            _ => self.term(e),
        }
    }

    fn term(&self, e: &Expr) -> String {
        match e {
            E::Mul(a, b) => format!("{}*{}", self.mul_left(a), self.operand(b)),
            E::ScalarMul(c, x) => {
                let body = match &**x {
                    E::Mul(..) => self.term(x),
                    _ => self.operand(x),
                };
                match scalar_token(c) {
                    Some(s) => format!("{s}*{body}"),
                    None => format!("({})*{body}", crate::scalar::format_gaussian(c)),
                }
            }
            E::Add(..) | E::Neg(_) => format!("({})", self.expr(e)),
            _ => self.factor(e),
        }
    }

    fn mul_left(&self, e: &Expr) -> String {
        match e {
            E::Mul(..) => self.term(e),
            _ => self.operand(e),
        }
    }

    /// A factor inside a product: products, sums and scalars get brackets.
    fn operand(&self, e: &Expr) -> String {
        match e {
            E::Leaf(a) if leaf_scalar(a).is_some() => format!("({})", self.factor(e)),
            E::Mul(..) | E::ScalarMul(..) | E::Add(..) | E::Neg(_) => format!("({})", self.expr(e)),
            _ => self.factor(e),
        }
    }

    fn factor(&self, e: &Expr) -> String {
        match e {
            E::Leaf(a) => self.leaf(a),
            E::Inv(x) => format!("({})^-1", self.expr(x)),
            E::Adjoint(x) => format!("({})^*", self.expr(x)),
            _ => format!("({})", self.expr(e)),
        }
    }

    fn leaf(&self, a: &GroupAlgebraElement<GaussianRational>) -> String {
        if let Some(c) = leaf_scalar(a) {
            return scalar_token(&c).unwrap_or_else(|| format!("({})", a.format(self.gens)));
        }
        match a.as_monomial() {
            Some((c, w)) if c.is_one() && w.len() == 1 => self.gens.format_word(w),
            _ => format!("({})", a.format(self.gens)),
        }
    }
}

/// Prints `e` so that [`parse`] recovers the same tree for every tree the
/// parser can produce, and an equal element for all others.
pub fn format_expression(e: &Expr, gens: &GeneratorSet) -> String {
    Printer { gens }.expr(e)
}
