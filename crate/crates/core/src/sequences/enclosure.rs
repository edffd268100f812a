//! Fixed-point interval enclosures of sequence terms, for structures embedded in ℚ.
//!
//! An [`Interval`] at precision `F` holds integers `lo ≤ hi` and encloses
//! `[lo·2⁻ᶠ, hi·2⁻ᶠ]`. Terms like `(1/2)^(2^90)` are enclosed in a few
//! hundred squarings, where exact evaluation would need `2^90` bits.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{two_pow, Index, SymbolicSequence};
use crate::instances::Rational;
use crate::order::OrderedHemiring;
use crate::parse::{Exponent, Node};

/// Precisions tried in turn before falling back to exact arithmetic.
pub const PRECISIONS: [u32; 5] = [64, 256, 1024, 4096, 16384];

/// Largest exponent for which a base above 1 is still enclosed.
const GROWTH_LIMIT: u64 = 1 << 14;

/// Summation limit for partial sums without a closed form.
const SUM_LIMIT: u128 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn floor_shift(a: &BigInt, k: u32) -> BigInt {
    a.div_floor(&(BigInt::one() << k))
}

fn ceil_shift(a: &BigInt, k: u32) -> BigInt {
    -floor_shift(&-a, k)
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

impl Interval {
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn from_integer(n: &BigInt, prec: u32) -> Self {
        let v = n << prec;
        Interval {
            lo: v.clone(),
            hi: v,
            prec,
        }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let scaled = q.numer() << prec;
        Interval {
            lo: floor_div(&scaled, q.denom()),
            hi: ceil_div(&scaled, q.denom()),
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_integer(&BigInt::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_integer(&BigInt::one(), prec)
    }

    /// Lower and upper endpoints as exact rationals.
    pub fn bounds(&self) -> (Rational, Rational) {
        let d = BigInt::one() << self.prec;
        (
            Rational::new(self.lo.clone(), d.clone()),
            Rational::new(self.hi.clone(), d),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let products = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = products.iter().min().expect("four");
        let hi = products.iter().max().expect("four");
        Interval {
            lo: floor_shift(lo, self.prec),
            hi: ceil_shift(hi, self.prec),
            prec: self.prec,
        }
    }

    /// Exact scaling by an integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Interval { lo: b, hi: a, prec: self.prec }
        } else {
            Interval { lo: a, hi: b, prec: self.prec }
        }
    }

    fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `1/x` for intervals that exclude zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        let num = BigInt::one() << (2 * self.prec);
        Some(Interval {
            lo: floor_div(&num, &self.hi),
            hi: ceil_div(&num, &self.lo),
            prec: self.prec,
        })
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.recip()?))
    }

    /// Upper bound on `|x|`, scaled.
    fn upper_abs(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    /// Lower bound on `|x|`, scaled.
    fn lower_abs(&self) -> BigInt {
        if self.contains_zero() {
            BigInt::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn abs(&self) -> Self {
        Interval {
            lo: self.lower_abs(),
            hi: self.upper_abs(),
            prec: self.prec,
        }
    }

    fn pow_nonneg_endpoint(v: &BigInt, e: &BigUint, prec: u32, up: bool) -> Option<BigInt> {
        let one = BigInt::one() << prec;
        if e.is_zero() {
            return Some(one);
        }
        if v > &one && e > &BigUint::from(GROWTH_LIMIT) {
            return None;
        }
        let round = |a: &BigInt| if up { ceil_shift(a, prec) } else { floor_shift(a, prec) };
        let mut acc = one;
        let mut base = v.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = round(&(&acc * &base));
            }
            if i + 1 < bits {
                base = round(&(&base * &base));
                if base.is_zero() && !up {
                    return Some(BigInt::zero());
                }
            }
        }
        Some(acc)
    }

    /// `xᵉ`; `None` when the enclosure would grow without bound.
    pub fn pow(&self, e: &BigUint) -> Option<Self> {
        let p = self.prec;
        let odd = e.bit(0);
        let up = |v: &BigInt| Self::pow_nonneg_endpoint(v, e, p, true);
        let down = |v: &BigInt| Self::pow_nonneg_endpoint(v, e, p, false);
        let (lo, hi) = if !self.lo.is_negative() {
            (down(&self.lo)?, up(&self.hi)?)
        } else if !self.hi.is_positive() {
            let (a, b) = (down(&-&self.hi)?, up(&-&self.lo)?);
            if odd {
                (-b, -a)
            } else {
                (a, b)
            }
        } else {
            let m = up(&self.upper_abs())?;
            if odd {
                (-up(&-&self.lo)?, up(&self.hi)?)
            } else {
                (BigInt::zero(), m)
            }
        };
        Some(Interval { lo, hi, prec: p })
    }

    /// Decides `|x| < ε`: `Some(true)` when certain, `Some(false)` when `|x| ≥ ε` is certain.
    pub fn abs_below(&self, eps: &Rational) -> Option<bool> {
        let e = Interval::from_rational(eps, self.prec);
        if self.upper_abs() < e.lo {
            Some(true)
        } else if self.lower_abs() >= e.hi {
            Some(false)
        } else {
            None
        }
    }

    /// Decides the sign of `x` against zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Midpoint-free text form `[lo, hi]` with decimal endpoints.
    pub fn describe(&self) -> String {
        let (a, b) = self.bounds();
        format!("[{}, {}]", short_decimal(&a, false), short_decimal(&b, true))
    }
}

/// A decimal approximation in scientific form, rounded outward.
fn short_decimal(q: &Rational, up: bool) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigInt::from(10);
    let mut exp: i64 = 0;
    let mut v = a.clone();
    let one = Rational::one();
    let tenr = Rational::from_integer(ten.clone());
    while v >= tenr {
        v /= &tenr;
        exp += 1;
    }
    while v < one {
        v *= &tenr;
        exp -= 1;
        if exp < -100_000 {
            break;
        }
    }
    let scaled = v * Rational::from_integer(BigInt::from(100_000));
    let digits = if up != neg { scaled.ceil() } else { scaled.floor() }.to_integer();
    let s = digits.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let mant = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
    format!("{}{}e{}", if neg { "-" } else { "" }, mant, exp)
}

fn biguint_of(n: Index) -> BigUint {
    BigUint::from(n)
}

/// Encloses a term formula at `n`.
pub fn enclose_node(node: &Node, n: Index, prec: u32) -> Option<Interval> {
    Some(match node {
        Node::Int(k) => Interval::from_integer(k, prec),
        Node::X => return None,
        Node::N => Interval::from_integer(&BigInt::from(n), prec),
        Node::Neg(a) => enclose_node(a, n, prec)?.neg(),
        Node::Add(a, b) => enclose_node(a, n, prec)?.add(&enclose_node(b, n, prec)?),
        Node::Sub(a, b) => enclose_node(a, n, prec)?.sub(&enclose_node(b, n, prec)?),
        Node::Mul(a, b) => enclose_node(a, n, prec)?.mul(&enclose_node(b, n, prec)?),
        Node::Div(a, b, _) => enclose_node(a, n, prec)?.div(&enclose_node(b, n, prec)?)?,
        Node::Pow(a, e) => {
            let e = match e {
                Exponent::Const(k) => k.clone(),
                Exponent::Affine { a, b } => a * biguint_of(n) + b,
            };
            enclose_node(a, n, prec)?.pow(&e)?
        }
    })
}

/// Encloses `x_n` when every embedded element has a rational image.
pub fn enclose<S: OrderedHemiring>(s: &S, seq: &SymbolicSequence<S::Elem>, n: Index, prec: u32) -> Option<Interval> {
    if n < seq.start() {
        return None;
    }
    let q = |e: &S::Elem| s.to_rational(e).map(|r| Interval::from_rational(&r, prec));
    match seq {
        SymbolicSequence::Expr { term, .. } => enclose_node(term.root(), n, prec),
        SymbolicSequence::Geometric(r) => q(r)?.pow(&biguint_of(n)),
        SymbolicSequence::PartialSums(of) => enclose_partial_sum(s, of, n, prec),
        SymbolicSequence::Condensed(of) => {
            let k = two_pow(n).ok()?;
            Some(enclose(s, of, k, prec)?.scale(&BigInt::from(k)))
        }
        SymbolicSequence::Scaled(c, of) => Some(q(c)?.mul(&enclose(s, of, n, prec)?)),
        SymbolicSequence::Sum(a, b) => Some(enclose(s, a, n, prec)?.add(&enclose(s, b, n, prec)?)),
        SymbolicSequence::Product(a, b) => Some(enclose(s, a, n, prec)?.mul(&enclose(s, b, n, prec)?)),
        SymbolicSequence::Shifted(k, of) => enclose(s, of, n.checked_add(*k)?, prec),
        SymbolicSequence::Table(vals, of) => {
            let offset = n - of.start();
            match usize::try_from(offset).ok().and_then(|i| vals.get(i)) {
                Some(v) => q(v),
                None => enclose(s, of, n, prec),
            }
        }
    }
}

/// Encloses `Σ_{i=start}^{n} x_i`.
pub fn enclose_partial_sum<S: OrderedHemiring>(
    s: &S,
    seq: &SymbolicSequence<S::Elem>,
    n: Index,
    prec: u32,
) -> Option<Interval> {
    let start = seq.start();
    if n < start {
        return None;
    }
    let (coef, inner) = match seq {
        SymbolicSequence::Scaled(c, of) => (Some(c), &**of),
        other => (None, other),
    };
    if let SymbolicSequence::Geometric(r) = inner {
        let r = s.to_rational(r)?;
        if r != Rational::one() {
            let rn = Interval::from_rational(&r, prec).pow(&(biguint_of(n) + 1u32))?;
            let denom = Rational::one() - &r;
            let inv = Interval::from_rational(&(Rational::one() / denom), prec);
            let sum = Interval::one(prec).sub(&rn).mul(&inv);
            return Some(match coef {
                Some(c) => Interval::from_rational(&s.to_rational(c)?, prec).mul(&sum),
                None => sum,
            });
        }
    }
    if n - start >= SUM_LIMIT {
        return None;
    }
    window_enclosure(s, seq, start.checked_sub(1), n, prec)
}

/// Encloses `Σ_{i=m+1}^{n} x_i`; `m = None` sums from the start.
pub fn window_enclosure<S: OrderedHemiring>(
    s: &S,
    seq: &SymbolicSequence<S::Elem>,
    m: Option<Index>,
    n: Index,
    prec: u32,
) -> Option<Interval> {
    let from = m.map_or(seq.start(), |m| m + 1);
    let mut acc = Interval::zero(prec);
    for i in from..=n {
        acc = acc.add(&enclose(s, seq, i, prec)?);
    }
    Some(acc)
}

/// Encloses an exact rational.
pub fn rational(q: &Rational, prec: u32) -> Interval {
    Interval::from_rational(q, prec)
}
