//! Symbolic sequences, moduli of convergence, certificates and their validation.

mod certificate;
mod constructors;
pub mod enclosure;
mod modulus;
pub mod wire;

use num_bigint::BigUint;

pub use certificate::{
    validate_cauchy, validate_convergence, CauchyCertificate, ConvergenceCertificate, GroupSequence, ValidationReport,
    Violation, MAX_RECORDED_VIOLATIONS,
};
pub use constructors::{
    bound_from_certificate, bounded_times_null_certificate, cauchy_from_convergence, constant_certificate,
    power_null_certificate, product_certificate, scaled_certificate, sum_certificate,
};
pub use modulus::{Modulus, Side};

use crate::error::{Error, Result};
use crate::order::OrderedHemiring;
use crate::parse::{evaluate_term, TermExpression};

/// Sequence indices.
pub type Index = u128;

/// Largest index range summed or exponentiated term by term.
pub const EXACT_WORK_LIMIT: u128 = 1 << 16;

/// A term generator `n ↦ x_n` over elements of type `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolicSequence<E> {
    /// A term formula in `n`, defined from `start`.
    Expr { term: TermExpression, start: Index },
    /// `rⁿ` from `n = 0`.
    Geometric(E),
    /// `s_n = Σ_{i=start}^{n} x_i`.
    PartialSums(Box<SymbolicSequence<E>>),
    /// `i ↦ 2ⁱ·x_{2ⁱ}` from `i = 0`.
    Condensed(Box<SymbolicSequence<E>>),
    Scaled(E, Box<SymbolicSequence<E>>),
    Sum(Box<SymbolicSequence<E>>, Box<SymbolicSequence<E>>),
    Product(Box<SymbolicSequence<E>>, Box<SymbolicSequence<E>>),
    /// `n ↦ x_{n+k}`.
    Shifted(Index, Box<SymbolicSequence<E>>),
    /// Listed values from the start of `then`, followed by `then`.
    Table(Vec<E>, Box<SymbolicSequence<E>>),
}

impl<E: Clone> SymbolicSequence<E> {
    /// A formula starting at `n = 1`.
    pub fn expr(text: &str) -> Result<Self> {
        Ok(SymbolicSequence::Expr {
            term: TermExpression::parse(text)?,
            start: 1,
        })
    }

    pub fn expr_from(text: &str, start: Index) -> Result<Self> {
        Ok(SymbolicSequence::Expr {
            term: TermExpression::parse(text)?,
            start,
        })
    }

    pub fn geometric(r: E) -> Self {
        SymbolicSequence::Geometric(r)
    }

    pub fn partial_sums(self) -> Self {
        SymbolicSequence::PartialSums(Box::new(self))
    }

    pub fn condensed(self) -> Self {
        SymbolicSequence::Condensed(Box::new(self))
    }

    pub fn scaled(self, c: E) -> Self {
        SymbolicSequence::Scaled(c, Box::new(self))
    }

    pub fn plus(self, other: Self) -> Self {
        SymbolicSequence::Sum(Box::new(self), Box::new(other))
    }

    pub fn times(self, other: Self) -> Self {
        SymbolicSequence::Product(Box::new(self), Box::new(other))
    }

    pub fn shifted(self, k: Index) -> Self {
        SymbolicSequence::Shifted(k, Box::new(self))
    }

    pub fn with_table(self, values: Vec<E>) -> Self {
        SymbolicSequence::Table(values, Box::new(self))
    }

    /// First index at which terms are defined.
    pub fn start(&self) -> Index {
        match self {
            SymbolicSequence::Expr { start, .. } => *start,
            SymbolicSequence::Geometric(_) | SymbolicSequence::Condensed(_) => 0,
            SymbolicSequence::PartialSums(of) | SymbolicSequence::Scaled(_, of) | SymbolicSequence::Table(_, of) => {
                of.start()
            }
            SymbolicSequence::Sum(a, b) | SymbolicSequence::Product(a, b) => a.start().max(b.start()),
            SymbolicSequence::Shifted(k, of) => of.start().saturating_sub(*k),
        }
    }

    /// The summands when this is a partial-sum sequence.
    pub fn summands(&self) -> Option<&SymbolicSequence<E>> {
        match self {
            SymbolicSequence::PartialSums(of) => Some(of),
            _ => None,
        }
    }

    /// Transforms every embedded element.
    pub fn map_elems<F2, G: Fn(&E) -> Result<F2> + Copy>(&self, f: G) -> Result<SymbolicSequence<F2>> {
        Ok(match self {
            SymbolicSequence::Expr { term, start } => SymbolicSequence::Expr {
                term: term.clone(),
                start: *start,
            },
            SymbolicSequence::Geometric(r) => SymbolicSequence::Geometric(f(r)?),
            SymbolicSequence::PartialSums(of) => SymbolicSequence::PartialSums(Box::new(of.map_elems(f)?)),
            SymbolicSequence::Condensed(of) => SymbolicSequence::Condensed(Box::new(of.map_elems(f)?)),
            SymbolicSequence::Scaled(c, of) => SymbolicSequence::Scaled(f(c)?, Box::new(of.map_elems(f)?)),
            SymbolicSequence::Sum(a, b) => SymbolicSequence::Sum(Box::new(a.map_elems(f)?), Box::new(b.map_elems(f)?)),
            SymbolicSequence::Product(a, b) => {
                SymbolicSequence::Product(Box::new(a.map_elems(f)?), Box::new(b.map_elems(f)?))
            }
            SymbolicSequence::Shifted(k, of) => SymbolicSequence::Shifted(*k, Box::new(of.map_elems(f)?)),
            SymbolicSequence::Table(vals, of) => SymbolicSequence::Table(
                vals.iter().map(f).collect::<Result<Vec<_>>>()?,
                Box::new(of.map_elems(f)?),
            ),
        })
    }
}

fn check_start(n: Index, start: Index) -> Result<()> {
    if n < start {
        Err(Error::IndexBeforeStart { index: n, start })
    } else {
        Ok(())
    }
}

fn two_pow(i: Index) -> Result<Index> {
    if i >= 128 {
        return Err(Error::IndexOverflow(format!("2^{i}")));
    }
    Ok(1u128 << i)
}

/// `1 − r` and its inverse, when both exist.
pub(crate) fn one_minus_inverse<S: OrderedHemiring>(s: &S, r: &S::Elem) -> Option<(S::Elem, S::Elem)> {
    let one = s.one()?;
    let d = s.add(&one, &s.neg(r)?);
    let inv = s.invert(&d).ok()?;
    Some((d, inv))
}

/// Exact term `x_n`.
pub fn term<S: OrderedHemiring>(s: &S, seq: &SymbolicSequence<S::Elem>, n: Index) -> Result<S::Elem> {
    check_start(n, seq.start())?;
    match seq {
        SymbolicSequence::Expr { term, .. } => evaluate_term(term, &BigUint::from(n), s),
        SymbolicSequence::Geometric(r) => power(s, r, n),
        SymbolicSequence::PartialSums(of) => partial_sum(s, of, n),
        SymbolicSequence::Condensed(of) => {
            let k = two_pow(n)?;
            let x = term(s, of, k)?;
            Ok(s.times(&BigUint::from(k), &x))
        }
        SymbolicSequence::Scaled(c, of) => Ok(s.mul(c, &term(s, of, n)?)),
        SymbolicSequence::Sum(a, b) => Ok(s.add(&term(s, a, n)?, &term(s, b, n)?)),
        SymbolicSequence::Product(a, b) => Ok(s.mul(&term(s, a, n)?, &term(s, b, n)?)),
        SymbolicSequence::Shifted(k, of) => {
            let m = n.checked_add(*k).ok_or_else(|| Error::IndexOverflow(format!("{n}+{k}")))?;
            term(s, of, m)
        }
        SymbolicSequence::Table(vals, of) => {
            let offset = n - of.start();
            match usize::try_from(offset).ok().and_then(|i| vals.get(i)) {
                Some(v) => Ok(v.clone()),
                None => term(s, of, n),
            }
        }
    }
}

fn is_trivial_base<S: OrderedHemiring>(s: &S, r: &S::Elem) -> bool {
    if s.is_zero(r) {
        return true;
    }
    match s.one() {
        Some(one) => *r == one || s.neg(&one).is_some_and(|m| *r == m),
        None => false,
    }
}

/// `rⁿ`, refusing exponents above [`EXACT_WORK_LIMIT`] unless `r ∈ {0, 1, −1}`.
pub fn power<S: OrderedHemiring>(s: &S, r: &S::Elem, n: Index) -> Result<S::Elem> {
    if n == 0 {
        return s.one().ok_or_else(|| Error::NotApplicable(format!("{} has no 1", s.id())));
    }
    if is_trivial_base(s, r) {
        if s.is_zero(r) || n % 2 == 0 || s.one().as_ref() == Some(r) {
            return if s.is_zero(r) { Ok(r.clone()) } else { Ok(s.one().expect("unit")) };
        }
        return Ok(r.clone());
    }
    if n > EXACT_WORK_LIMIT {
        return Err(Error::TooExpensive(format!("power {}^{n}", s.render(r))));
    }
    s.pow(r, n as u64).ok_or_else(|| Error::NotApplicable(format!("{} has no 1", s.id())))
}

/// `Σ_{i=start}^{n} x_i`.
pub fn partial_sum<S: OrderedHemiring>(s: &S, seq: &SymbolicSequence<S::Elem>, n: Index) -> Result<S::Elem> {
    let start = seq.start();
    check_start(n, start)?;
    let (coef, inner) = match seq {
        SymbolicSequence::Scaled(c, of) => (Some(c), &**of),
        other => (None, other),
    };
    if let SymbolicSequence::Geometric(r) = inner {
        if let Some((_, inv)) = one_minus_inverse(s, r) {
            if let Ok(rn) = power(s, r, n + 1) {
                let one = s.one().expect("unit");
                let top = s.add(&one, &s.neg(&rn).expect("ring"));
                let sum = s.mul(&top, &inv);
                return Ok(match coef {
                    Some(c) => s.mul(c, &sum),
                    None => sum,
                });
            }
        }
    }
    if n - start >= EXACT_WORK_LIMIT {
        return Err(Error::TooExpensive(format!("partial sum over {} terms", n - start + 1)));
    }
    let mut acc = s.zero();
    for i in start..=n {
        acc = s.add(&acc, &term(s, seq, i)?);
    }
    Ok(acc)
}

/// `Σ_{i=m+1}^{n} x_i` for `m < n`.
pub fn window_sum<S: OrderedHemiring>(s: &S, seq: &SymbolicSequence<S::Elem>, m: Index, n: Index) -> Result<S::Elem> {
    let mut acc = s.zero();
    for i in m + 1..=n {
        acc = s.add(&acc, &term(s, seq, i)?);
    }
    Ok(acc)
}

/// `2ⁱ·x_{2ⁱ}` as a sequence in `i`.
pub fn condense<E: Clone>(x: SymbolicSequence<E>) -> SymbolicSequence<E> {
    x.condensed()
}
