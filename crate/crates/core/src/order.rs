//! Ordered hemirings, semirings, rings and fields.
//!
//! A structure is a value implementing [`OrderedHemiring`]; its elements are
//! plain values of the associated `Elem` type. Optional operations (`one`,
//! `neg`, `invert`) report absence instead of panicking, and the
//! [`Capabilities`] flags say which of them are meaningful.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::instances::Rational;
use crate::parse::Literal;

/// Capability flags of a registered structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Capabilities {
    pub has_one: bool,
    pub has_neg: bool,
    pub has_inverses: bool,
    pub commutative: bool,
    pub totally_ordered: bool,
    /// `a < b` implies `a + c < b + c`.
    pub strict_add_compatible: bool,
    /// `a < b` and `0 < c` imply `ac < bc` and `ca < cb`.
    pub strict_mul_compatible: bool,
    pub dense: bool,
    pub shrinkable: bool,
    /// `None` when unknown.
    pub archimedean: Option<bool>,
}

/// Element kind carried by a structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CarrierKind {
    Rational,
    Z1p,
    RationalFunction,
    MaxTimes,
}

/// Plain description of a structure, used in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureDescriptor {
    pub id: String,
    pub carrier: CarrierKind,
    pub capabilities: Capabilities,
}

/// Bounds for the seeded element samplers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleBounds {
    /// Integers are drawn from `[-int_bound, int_bound]`.
    pub int_bound: i64,
    /// Maximum polynomial degree for rational functions.
    pub max_degree: usize,
    /// Maximum exponent `n` of the denominator `p^n` in `Z[1/p]`.
    pub max_p_exponent: u32,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            int_bound: 1_000_000,
            max_degree: 6,
            max_p_exponent: 24,
        }
    }
}

/// An ordered hemiring `(H, +, ·, 0, ≤)`.
///
/// `compare` may return `None` for incomparable pairs; every instance shipped
/// with this crate is totally ordered.
pub trait OrderedHemiring: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Send + Sync;

    fn id(&self) -> String;
    fn carrier(&self) -> CarrierKind;
    fn capabilities(&self) -> Capabilities;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn compare(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Ordering>;

    /// Multiplicative inverse.
    fn invert(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(a) {
            Err(Error::DivisionByZero)
        } else {
            Err(Error::NotAUnit(self.render(a)))
        }
    }

    fn canonicalize(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bounds: &SampleBounds) -> Self::Elem;

    /// Converts an evaluated literal into this structure.
    fn from_literal(&self, v: &Literal) -> std::result::Result<Self::Elem, ParseError>;

    fn render(&self, a: &Self::Elem) -> String;

    /// Parses element text in the literal grammar.
    fn parse(&self, text: &str) -> std::result::Result<Self::Elem, ParseError> {
        crate::parse::parse_element_in(self, text)
    }

    /// Positive `(β, γ)` with `β + γ < ε`.
    fn density_witness(&self, _eps: &Self::Elem) -> Result<(Self::Elem, Self::Elem)> {
        Err(Error::NotDense(self.id()))
    }

    /// Positive `(α_l, α_r)` with `M·α_r < α` and `α_l·M < α`.
    fn shrink_witness(&self, _alpha: &Self::Elem, _m: &Self::Elem) -> Result<(Self::Elem, Self::Elem)> {
        Err(Error::NotShrinkable(self.id()))
    }

    /// Order-preserving embedding into ℚ, when the structure is a subring of ℚ.
    fn to_rational(&self, _a: &Self::Elem) -> Option<Rational> {
        None
    }

    /// `deg(num) - deg(den)` for rational-function carriers.
    fn magnitude_degree(&self, _a: &Self::Elem) -> Option<i64> {
        None
    }

    /// The indeterminate `X`, when the carrier has one.
    fn indeterminate(&self) -> Option<Self::Elem> {
        None
    }

    /// Least `n ≥ 1` with `n·x > y`, or `None` when no natural number works.
    fn archimedean_gap(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Option<BigUint>> {
        if !self.gt(x, &self.zero()) {
            return Err(Error::NonPositiveF);
        }
        match (self.to_rational(x), self.to_rational(y)) {
            (Some(x), Some(y)) => Ok(Some(rational_gap(&x, &y))),
            _ => Err(Error::NotApplicable(format!("{} has no Archimedean gap procedure", self.id()))),
        }
    }

    // ---- provided ----

    fn describe(&self) -> StructureDescriptor {
        StructureDescriptor {
            id: self.id(),
            carrier: self.carrier(),
            capabilities: self.capabilities(),
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn lt(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.compare(a, b) == Some(Ordering::Less)
    }

    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        matches!(self.compare(a, b), Some(Ordering::Less | Ordering::Equal))
    }

    fn gt(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.lt(b, a)
    }

    fn ge(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.le(b, a)
    }

    fn is_positive(&self, a: &Self::Elem) -> bool {
        self.gt(a, &self.zero())
    }

    fn max_of(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if self.lt(a, b) {
            b.clone()
        } else {
            a.clone()
        }
    }

    /// `n·a = a + ... + a`, by doubling.
    fn times(&self, n: &BigUint, a: &Self::Elem) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = a.clone();
        for i in 0..n.bits() {
            if n.bit(i) {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
        }
        acc
    }

    /// `a^e` for `e ≥ 1`; `a^0` needs a unit.
    fn pow(&self, a: &Self::Elem, e: u64) -> Option<Self::Elem> {
        let mut acc = self.one()?;
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        Some(acc)
    }

    /// Image of an integer under `ℤ → H`, defined when `n ≥ 0` or negation exists.
    fn from_integer(&self, n: &BigInt) -> Option<Self::Elem> {
        let one = self.one()?;
        let m = self.times(&n.magnitude().clone(), &one);
        if n.is_negative() {
            self.neg(&m)
        } else {
            Some(m)
        }
    }

    /// A seeded positive sample.
    fn sample_positive<R: Rng + ?Sized>(&self, rng: &mut R, bounds: &SampleBounds) -> Self::Elem {
        loop {
            let x = self.sample(rng, bounds);
            if self.is_positive(&x) {
                return x;
            }
            if let Some(nx) = self.neg(&x) {
                if self.is_positive(&nx) {
                    return nx;
                }
            }
        }
    }

    /// `max{x, -x}`; the identity on structures without negation (all elements non-negative there).
    fn abs(&self, a: &Self::Elem) -> Self::Elem {
        match self.neg(a) {
            Some(na) => self.max_of(a, &na),
            None => a.clone(),
        }
    }
}

/// An ordered commutative ring with 1.
pub trait OrderedRing: OrderedHemiring {
    fn negate(&self, a: &Self::Elem) -> Self::Elem {
        self.neg(a).expect("ordered ring has negation")
    }

    fn unit(&self) -> Self::Elem {
        self.one().expect("ordered ring has one")
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.negate(b))
    }

    fn integer(&self, n: i64) -> Self::Elem {
        self.from_integer(&BigInt::from(n)).expect("ordered ring embeds the integers")
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.invert(b)?))
    }
}

/// Least `n ≥ 1` with `n·x > y` over ℚ, for `x > 0`.
pub fn rational_gap(x: &Rational, y: &Rational) -> BigUint {
    if y.is_negative() {
        return BigUint::one();
    }
    let q = y / x;
    let n = q.floor().to_integer() + BigInt::one();
    n.to_biguint().filter(|n| !n.is_zero()).unwrap_or_else(BigUint::one)
}

/// Converts a natural number to `u128` if it fits.
pub fn to_index(n: &BigUint) -> Option<u128> {
    n.to_u128()
}

/// Checks that a supplied witness pair satisfies the density inequality.
pub fn density_holds<S: OrderedHemiring>(s: &S, eps: &S::Elem, w: &(S::Elem, S::Elem)) -> bool {
    s.is_positive(&w.0) && s.is_positive(&w.1) && s.lt(&s.add(&w.0, &w.1), eps)
}

/// Checks both strict inequalities of a shrink witness.
pub fn shrink_holds<S: OrderedHemiring>(s: &S, alpha: &S::Elem, m: &S::Elem, w: &(S::Elem, S::Elem)) -> bool {
    let (l, r) = w;
    s.is_positive(l) && s.is_positive(r) && s.lt(&s.mul(m, r), alpha) && s.lt(&s.mul(l, m), alpha)
}
