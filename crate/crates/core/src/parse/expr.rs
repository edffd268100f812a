//! Term expressions in the index variable `n`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::lexer::{describe, tokenize, Tok, Token};
use crate::error::{ParseError, ParseErrorKind};
use crate::instances::{Rational, RationalFunction};

/// Exponent of a power node: a constant or `a·n + b` with `a ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exponent {
    Const(BigUint),
    Affine { a: BigUint, b: BigUint },
}

impl Exponent {
    pub fn at(&self, n: Option<&BigUint>) -> Option<BigUint> {
        match self {
            Exponent::Const(k) => Some(k.clone()),
            Exponent::Affine { a, b } => n.map(|n| a * n + b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Int(BigInt),
    X,
    N,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    /// Carries the byte position of the `/`.
    Div(Box<Node>, Box<Node>, usize),
    Pow(Box<Node>, Exponent),
}

impl Node {
    fn any(&self, pred: &dyn Fn(&Node) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Node::Neg(a) => a.any(pred),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b, _) => a.any(pred) || b.any(pred),
            Node::Pow(a, e) => matches!(e, Exponent::Affine { .. }) && pred(&Node::N) || a.any(pred),
            _ => false,
        }
    }
}

/// A parsed term formula together with its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermExpression {
    text: String,
    root: Node,
}

impl TermExpression {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, idx: 0 };
        let root = p.expr()?;
        let t = p.peek();
        if t.tok != Tok::End {
            return Err(ParseError::syntax(t.pos, format!("unexpected {}", describe(&t.tok))));
        }
        Ok(TermExpression {
            text: text.trim().to_string(),
            root,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn mentions_index(&self) -> bool {
        self.root.any(&|n| matches!(n, Node::N))
    }

    pub fn mentions_x(&self) -> bool {
        self.root.any(&|n| matches!(n, Node::X))
    }

    /// Evaluates in ℚ, or in ℤ(X) when `X` occurs.
    pub fn evaluate_literal(&self, n: Option<&BigUint>) -> Result<Literal, EvalError> {
        if self.mentions_x() {
            eval::<RationalFunction>(&self.root, n).map(Literal::Function)
        } else {
            eval::<Rational>(&self.root, n).map(Literal::Rational)
        }
    }
}

impl fmt::Display for TermExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

pub fn parse_term_expression(text: &str) -> Result<TermExpression, ParseError> {
    TermExpression::parse(text)
}

/// An exactly evaluated constant: a rational, or a rational function when `X` is involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Rational(Rational),
    Function(RationalFunction),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    DivisionByZero { position: usize },
    TooExpensive(String),
    /// `n` occurs but no index was supplied.
    FreeIndex,
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
}

fn non_affine(pos: usize, msg: &str) -> ParseError {
    ParseError::new(ParseErrorKind::NonAffineExponent, pos, msg)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.idx]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.idx].clone();
        if t.tok != Tok::End {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        let t = self.bump();
        if t.tok == tok {
            Ok(())
        } else {
            Err(ParseError::syntax(
                t.pos,
                format!("expected {}, found {}", describe(&tok), describe(&t.tok)),
            ))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let pos = self.bump().pos;
                    lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let e = self.exponent()?;
            return Ok(Node::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Int(v) => Ok(Node::Int(v)),
            Tok::X => Ok(Node::X),
            Tok::N => Ok(Node::N),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(ParseError::syntax(t.pos, format!("expected a value, found {}", describe(&other)))),
        }
    }

    fn exponent(&mut self) -> Result<Exponent, ParseError> {
        let t = self.bump();
        let e = match t.tok {
            Tok::Int(k) => Exponent::Const(k.to_biguint().unwrap()),
            Tok::N => Exponent::Affine {
                a: BigUint::one(),
                b: BigUint::zero(),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                let (a, b) = affine_form(&inner).ok_or_else(|| {
                    non_affine(t.pos, "exponent must be a non-negative integer or a*n+b with integers a, b >= 0")
                })?;
                if a.is_zero() {
                    Exponent::Const(b)
                } else {
                    Exponent::Affine { a, b }
                }
            }
            Tok::Minus => return Err(non_affine(t.pos, "negative exponents are not allowed")),
            other => {
                return Err(ParseError::syntax(
                    t.pos,
                    format!("expected an exponent, found {}", describe(&other)),
                ))
            }
        };
        if self.peek().tok != Tok::Caret {
            return Ok(e);
        }
        let pos = self.bump().pos;
        let inner = self.exponent()?;
        match (e, inner) {
            (Exponent::Const(k), Exponent::Const(j)) => {
                let j = j
                    .to_u32()
                    .filter(|&j| k.bits() * u64::from(j) <= 64)
                    .ok_or_else(|| non_affine(pos, "constant exponent too large"))?;
                Ok(Exponent::Const(num_traits::pow(k, j as usize)))
            }
            _ => Err(non_affine(pos, "exponent must be affine in n")),
        }
    }
}

// (a, b) with node = a·n + b and a, b non-negative integers
fn affine_form(node: &Node) -> Option<(BigUint, BigUint)> {
    let (a, b) = affine_rational(node)?;
    if !a.is_integer() || !b.is_integer() {
        return None;
    }
    Some((a.to_integer().to_biguint()?, b.to_integer().to_biguint()?))
}

fn affine_rational(node: &Node) -> Option<(Rational, Rational)> {
    let zero = Rational::zero;
    Some(match node {
        Node::Int(k) => (zero(), Rational::from_integer(k.clone())),
        Node::N => (Rational::one(), zero()),
        Node::X => return None,
        Node::Neg(a) => {
            let (a, b) = affine_rational(a)?;
            (-a, -b)
        }
        Node::Add(l, r) | Node::Sub(l, r) => {
            let (la, lb) = affine_rational(l)?;
            let (ra, rb) = affine_rational(r)?;
            if matches!(node, Node::Add(..)) {
                (la + ra, lb + rb)
            } else {
                (la - ra, lb - rb)
            }
        }
        Node::Mul(l, r) => {
            let (la, lb) = affine_rational(l)?;
            let (ra, rb) = affine_rational(r)?;
            if !la.is_zero() && !ra.is_zero() {
                return None;
            }
            (&la * &rb + &ra * &lb, lb * rb)
        }
        Node::Div(l, r, _) => {
            let (la, lb) = affine_rational(l)?;
            let (ra, rb) = affine_rational(r)?;
            if !ra.is_zero() || rb.is_zero() {
                return None;
            }
            (la / &rb, lb / rb)
        }
        Node::Pow(base, Exponent::Const(k)) => {
            let k = k.to_usize()?;
            let (a, b) = affine_rational(base)?;
            match k {
                0 => (zero(), Rational::one()),
                1 => (a, b),
                _ if a.is_zero() => (zero(), num_traits::pow(b, k)),
                _ => return None,
            }
        }
        Node::Pow(_, Exponent::Affine { .. }) => return None,
    })
}

/// Rough cap on the bit size of an exact power.
const POW_BIT_LIMIT: u64 = 1 << 24;

trait Domain: Sized + Clone {
    fn int(i: &BigInt) -> Self;
    fn x() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Option<Self>;
    fn is_nil(&self) -> bool;
    fn unit_sign(&self) -> Option<bool>;
    fn bits(&self) -> u64;
    fn pow_small(&self, e: usize) -> Self;
}

impl Domain for Rational {
    fn int(i: &BigInt) -> Self {
        Rational::from_integer(i.clone())
    }
    fn x() -> Self {
        unreachable!("X is evaluated in the rational-function domain")
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn unit_sign(&self) -> Option<bool> {
        if self.is_one() {
            Some(true)
        } else if (-self).is_one() {
            Some(false)
        } else {
            None
        }
    }
    fn bits(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
    fn pow_small(&self, e: usize) -> Self {
        num_traits::pow(self.clone(), e)
    }
}

impl Domain for RationalFunction {
    fn int(i: &BigInt) -> Self {
        RationalFunction::from_int(i.clone())
    }
    fn x() -> Self {
        RationalFunction::x()
    }
    fn add(&self, o: &Self) -> Self {
        RationalFunction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RationalFunction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RationalFunction::mul(self, o)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        o.invert().ok().map(|inv| RationalFunction::mul(self, &inv))
    }
    fn is_nil(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn unit_sign(&self) -> Option<bool> {
        if *self == RationalFunction::one() {
            Some(true)
        } else if *self == RationalFunction::one().neg() {
            Some(false)
        } else {
            None
        }
    }
    fn bits(&self) -> u64 {
        let size = |p: &crate::instances::IntegerPolynomial| -> u64 { p.coeffs().iter().map(|c| c.bits() + 1).sum() };
        size(self.num()) + size(self.den())
    }
    fn pow_small(&self, e: usize) -> Self {
        RationalFunction::pow(self, e)
    }
}

fn pow_guarded<D: Domain>(base: &D, e: &BigUint) -> Result<D, EvalError> {
    if e.is_zero() {
        return Ok(D::int(&BigInt::one()));
    }
    if base.is_nil() {
        return Ok(base.clone());
    }
    if let Some(positive) = base.unit_sign() {
        let odd = e.bit(0);
        return Ok(if positive || !odd { D::int(&BigInt::one()) } else { D::int(&-BigInt::one()) });
    }
    let small = e
        .to_u64()
        .filter(|&k| k.saturating_mul(base.bits().max(1)) <= POW_BIT_LIMIT)
        .ok_or_else(|| EvalError::TooExpensive(format!("power with exponent {e}")))?;
    Ok(base.pow_small(small as usize))
}

fn eval<D: Domain>(node: &Node, n: Option<&BigUint>) -> Result<D, EvalError> {
    Ok(match node {
        Node::Int(k) => D::int(k),
        Node::X => D::x(),
        Node::N => D::int(&BigInt::from(n.ok_or(EvalError::FreeIndex)?.clone())),
        Node::Neg(a) => eval::<D>(a, n)?.neg(),
        Node::Add(a, b) => eval::<D>(a, n)?.add(&eval::<D>(b, n)?),
        Node::Sub(a, b) => eval::<D>(a, n)?.sub(&eval::<D>(b, n)?),
        Node::Mul(a, b) => eval::<D>(a, n)?.mul(&eval::<D>(b, n)?),
        Node::Div(a, b, pos) => eval::<D>(a, n)?
            .div(&eval::<D>(b, n)?)
            .ok_or(EvalError::DivisionByZero { position: *pos })?,
        Node::Pow(a, e) => {
            let e = e.at(n).ok_or(EvalError::FreeIndex)?;
            pow_guarded(&eval::<D>(a, n)?, &e)?
        }
    })
}
