//! Moduli of convergence: rules mapping a positive `ε` to an index `N`.

use num_bigint::BigUint;

use super::Index;
use crate::error::{Error, Result};
use crate::order::{to_index, OrderedHemiring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Use `α_l` with `α_l·M < ε`.
    Left,
    /// Use `α_r` with `M·α_r < ε`.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Modulus<E> {
    Constant(Index),
    /// Least `k ≥ 1` with `|r|ᵏ < ε`.
    PowerGap(E),
    /// Least `N` with `N·(x·ε) > 1` where `x = |r|⁻¹ − 1`.
    Bernoulli(E),
    /// Least `N ≥ 1` with `N·ε > c`.
    Archimedean(E),
    MaxOf(Vec<Modulus<E>>),
    /// `max(a(β), b(γ))` for the density witness `β + γ < ε`.
    Split(Box<Modulus<E>>, Box<Modulus<E>>),
    /// `inner(α)` for the shrink witness of `ε` against `bound`.
    Shrink {
        bound: E,
        side: Side,
        inner: Box<Modulus<E>>,
    },
    /// `2^{m(ε)}`.
    ExpShift(Box<Modulus<E>>),
    /// `⌈log₂ max(m(ε) − 1, 1)⌉ + 1`, the least `k` with `2^{k−1} + 1 ≥ m(ε)`.
    Log2Shift(Box<Modulus<E>>),
    /// `m(ε) + k`.
    Offset(Index, Box<Modulus<E>>),
}

/// Search cap for [`Modulus::PowerGap`].
const POWER_SEARCH_LIMIT: u64 = 1 << 20;

fn index_of(n: BigUint) -> Result<Index> {
    to_index(&n).ok_or_else(|| Error::IndexOverflow(n.to_string()))
}

fn ceil_log2(n: Index) -> Index {
    if n <= 1 {
        0
    } else {
        (128 - (n - 1).leading_zeros()) as Index
    }
}

impl<E: Clone> Modulus<E> {
    pub fn constant(n: Index) -> Self {
        Modulus::Constant(n)
    }

    pub fn max_of(ms: Vec<Modulus<E>>) -> Self {
        Modulus::MaxOf(ms)
    }

    pub fn split(a: Modulus<E>, b: Modulus<E>) -> Self {
        Modulus::Split(Box::new(a), Box::new(b))
    }

    pub fn shrink(bound: E, side: Side, inner: Modulus<E>) -> Self {
        Modulus::Shrink {
            bound,
            side,
            inner: Box::new(inner),
        }
    }

    pub fn exp_shift(self) -> Self {
        Modulus::ExpShift(Box::new(self))
    }

    pub fn log2_shift(self) -> Self {
        Modulus::Log2Shift(Box::new(self))
    }

    pub fn offset(self, k: Index) -> Self {
        Modulus::Offset(k, Box::new(self))
    }

    /// Evaluates the rule at a positive `ε`.
    pub fn eval<S: OrderedHemiring<Elem = E>>(&self, s: &S, eps: &E) -> Result<Index> {
        if !s.is_positive(eps) {
            return Err(Error::NonPositiveEpsilon(s.render(eps)));
        }
        match self {
            Modulus::Constant(n) => Ok(*n),
            Modulus::PowerGap(r) => power_gap(s, r, eps),
            Modulus::Bernoulli(r) => bernoulli(s, r, eps),
            Modulus::Archimedean(c) => match s.archimedean_gap(eps, c)? {
                Some(n) => index_of(n),
                None => Err(Error::NoSuchN),
            },
            Modulus::MaxOf(ms) => {
                let mut best = 0;
                for m in ms {
                    best = best.max(m.eval(s, eps)?);
                }
                Ok(best)
            }
            Modulus::Split(a, b) => {
                let (beta, gamma) = s.density_witness(eps)?;
                Ok(a.eval(s, &beta)?.max(b.eval(s, &gamma)?))
            }
            Modulus::Shrink { bound, side, inner } => {
                if !s.is_positive(bound) {
                    return Err(Error::NonPositiveBound(s.render(bound)));
                }
                let (l, r) = s.shrink_witness(eps, bound)?;
                inner.eval(s, if *side == Side::Left { &l } else { &r })
            }
            Modulus::ExpShift(m) => {
                let k = m.eval(s, eps)?;
                if k >= 127 {
                    return Err(Error::IndexOverflow(format!("2^{k}")));
                }
                Ok(1 << k)
            }
            Modulus::Log2Shift(m) => {
                let n = m.eval(s, eps)?;
                Ok(ceil_log2(n.saturating_sub(1).max(1)) + 1)
            }
            Modulus::Offset(k, m) => m
                .eval(s, eps)?
                .checked_add(*k)
                .ok_or_else(|| Error::IndexOverflow(format!("offset {k}"))),
        }
    }
}

fn power_below<S: OrderedHemiring>(s: &S, r: &S::Elem, k: u64, eps: &S::Elem) -> Result<bool> {
    let p = s.pow(r, k).ok_or_else(|| Error::NotApplicable(format!("{} has no 1", s.id())))?;
    Ok(s.lt(&p, eps))
}

fn power_gap<S: OrderedHemiring>(s: &S, r: &S::Elem, eps: &S::Elem) -> Result<Index> {
    let r = s.abs(r);
    let one = s.one().ok_or_else(|| Error::NotApplicable(format!("{} has no 1", s.id())))?;
    if !s.lt(&r, &one) {
        return Err(Error::NoNullCertificate(format!("powers of {} do not tend to 0", s.render(&r))));
    }
    if s.is_zero(&r) {
        return Ok(1);
    }
    let lower = match (s.magnitude_degree(&r), s.magnitude_degree(eps)) {
        (Some(dr), _) if dr >= 0 => return Err(Error::NoNullCertificate(format!("powers of {} do not tend to 0", s.render(&r)))),
        (Some(dr), Some(de)) if de < 0 => {
            let (dr, de) = (-dr, -de);
            ((de + dr - 1) / dr).max(1) as u64
        }
        _ => 1,
    };
    if power_below(s, &r, lower, eps)? {
        return Ok(lower as Index);
    }
    let mut lo = lower;
    let mut hi = lower.max(1) * 2;
    while !power_below(s, &r, hi, eps)? {
        lo = hi;
        hi *= 2;
        if hi > POWER_SEARCH_LIMIT {
            return Err(Error::TooExpensive(format!("power gap for {}", s.render(&r))));
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if power_below(s, &r, mid, eps)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi as Index)
}

fn bernoulli<S: OrderedHemiring>(s: &S, r: &S::Elem, eps: &S::Elem) -> Result<Index> {
    if s.is_zero(r) {
        return Ok(1);
    }
    let one = s.one().ok_or_else(|| Error::NotApplicable(format!("{} has no 1", s.id())))?;
    let minus_one = s.neg(&one).ok_or_else(|| Error::NotARing(s.id()))?;
    let x = s.add(&s.invert(&s.abs(r))?, &minus_one);
    if !s.is_positive(&x) {
        return Err(Error::NoNullCertificate(format!("powers of {} do not tend to 0", s.render(r))));
    }
    match s.archimedean_gap(&s.mul(&x, eps), &one)? {
        Some(n) => index_of(n),
        None => Err(Error::NoSuchN),
    }
}
