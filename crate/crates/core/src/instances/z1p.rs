use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{render_rational, Rational};
use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::order::{Capabilities, CarrierKind, OrderedHemiring, OrderedRing, SampleBounds};
use crate::parse::Literal;

/// `m / pⁿ`, normalized so that `p ∤ m` unless `n = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Z1pElem {
    pub m: BigInt,
    pub n: u64,
}

/// The ordered ring ℤ[1/p] of rationals whose denominator is a power of `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Z1pRing {
    p: u64,
}

impl Z1pRing {
    pub fn new(p: u64) -> Result<Self> {
        if !super::is_prime(p) {
            return Err(Error::UnknownStructure(format!("z1p:{p} (p must be prime)")));
        }
        Ok(Z1pRing { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn pb(&self) -> BigInt {
        BigInt::from(self.p)
    }

    fn p_pow(&self, k: u64) -> BigInt {
        num_traits::pow(self.pb(), k as usize)
    }

    pub fn elem(&self, m: BigInt, n: u64) -> Z1pElem {
        let p = self.pb();
        let (mut m, mut n) = (m, n);
        if m.is_zero() {
            return Z1pElem { m, n: 0 };
        }
        while n > 0 {
            let (q, r) = m.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            m = q;
            n -= 1;
        }
        Z1pElem { m, n }
    }

    pub fn from_rational(&self, q: &Rational) -> Option<Z1pElem> {
        let mut d = q.denom().clone();
        let p = self.pb();
        let mut n = 0u64;
        while !d.is_one() {
            let (q2, r) = d.div_rem(&p);
            if !r.is_zero() {
                return None;
            }
            d = q2;
            n += 1;
        }
        Some(self.elem(q.numer().clone(), n))
    }

    pub fn value(&self, a: &Z1pElem) -> Rational {
        Rational::new(a.m.clone(), self.p_pow(a.n))
    }

    fn aligned(&self, a: &Z1pElem, b: &Z1pElem) -> (BigInt, BigInt, u64) {
        let n = a.n.max(b.n);
        (&a.m * self.p_pow(n - a.n), &b.m * self.p_pow(n - b.n), n)
    }
}

impl OrderedHemiring for Z1pRing {
    type Elem = Z1pElem;

    fn id(&self) -> String {
        format!("z1p:{}", self.p)
    }

    fn carrier(&self) -> CarrierKind {
        CarrierKind::Z1p
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            has_one: true,
            has_neg: true,
            has_inverses: false,
            commutative: true,
            totally_ordered: true,
            strict_add_compatible: true,
            strict_mul_compatible: true,
            dense: true,
            shrinkable: true,
            archimedean: Some(true),
        }
    }

    fn zero(&self) -> Z1pElem {
        Z1pElem { m: BigInt::zero(), n: 0 }
    }

    fn one(&self) -> Option<Z1pElem> {
        Some(Z1pElem { m: BigInt::one(), n: 0 })
    }

    fn add(&self, a: &Z1pElem, b: &Z1pElem) -> Z1pElem {
        let (x, y, n) = self.aligned(a, b);
        self.elem(x + y, n)
    }

    fn mul(&self, a: &Z1pElem, b: &Z1pElem) -> Z1pElem {
        self.elem(&a.m * &b.m, a.n + b.n)
    }

    fn neg(&self, a: &Z1pElem) -> Option<Z1pElem> {
        Some(Z1pElem { m: -&a.m, n: a.n })
    }

    fn compare(&self, a: &Z1pElem, b: &Z1pElem) -> Option<Ordering> {
        let (x, y, _) = self.aligned(a, b);
        Some(x.cmp(&y))
    }

    /// Succeeds exactly on `±pᵏ/pⁿ`.
    fn invert(&self, a: &Z1pElem) -> Result<Z1pElem> {
        if a.m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.pb();
        let mut u = a.m.abs();
        let mut j = 0u64;
        while (&u % &p).is_zero() {
            u /= &p;
            j += 1;
        }
        if !u.is_one() {
            return Err(Error::NotAUnit(self.render(a)));
        }
        let sign = if a.m.is_negative() { -BigInt::one() } else { BigInt::one() };
        if a.n >= j {
            Ok(self.elem(sign * self.p_pow(a.n - j), 0))
        } else {
            Ok(self.elem(sign, j - a.n))
        }
    }

    fn canonicalize(&self, a: &Z1pElem) -> Z1pElem {
        self.elem(a.m.clone(), a.n)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bounds: &SampleBounds) -> Z1pElem {
        match rng.gen_range(0..20) {
            0 => self.zero(),
            1 => self.elem(BigInt::from(rng.gen_range(-3..=3)), 0),
            _ => {
                let m = BigInt::from(rng.gen_range(-bounds.int_bound..=bounds.int_bound));
                let n = rng.gen_range(0..=u64::from(bounds.max_p_exponent));
                self.elem(m, n)
            }
        }
    }

    fn from_literal(&self, v: &Literal) -> std::result::Result<Z1pElem, ParseError> {
        let wrong = |msg: String| ParseError::new(ParseErrorKind::WrongStructure, 0, msg);
        match v {
            Literal::Rational(q) => self
                .from_rational(q)
                .ok_or_else(|| wrong(format!("{} has a denominator that is not a power of {}", render_rational(q), self.p))),
            Literal::Function(_) => Err(wrong(format!("the indeterminate X is not an element of {}", self.id()))),
        }
    }

    fn render(&self, a: &Z1pElem) -> String {
        render_rational(&self.value(a))
    }

    /// `β = γ = ε/p` for odd `p`, `ε/4` for `p = 2`.
    fn density_witness(&self, eps: &Z1pElem) -> Result<(Z1pElem, Z1pElem)> {
        if !eps.m.is_positive() {
            return Err(Error::NonPositiveEpsilon(self.render(eps)));
        }
        let b = if self.p == 2 {
            self.elem(eps.m.clone(), eps.n + 2)
        } else {
            self.elem(eps.m.clone(), eps.n + 1)
        };
        Ok((b.clone(), b))
    }

    /// `α_l = α_r = 1/pᵏ` for the least `k` with `M < α·pᵏ`.
    fn shrink_witness(&self, alpha: &Z1pElem, m: &Z1pElem) -> Result<(Z1pElem, Z1pElem)> {
        if !m.m.is_positive() {
            return Err(Error::NonPositiveBound(self.render(m)));
        }
        if !alpha.m.is_positive() {
            return Err(Error::NonPositiveEpsilon(self.render(alpha)));
        }
        let mut k = 0u64;
        let mut scaled = alpha.clone();
        let p = self.elem(self.pb(), 0);
        while !self.lt(m, &scaled) {
            scaled = self.mul(&scaled, &p);
            k += 1;
        }
        let w = self.elem(BigInt::one(), k);
        Ok((w.clone(), w))
    }

    fn to_rational(&self, a: &Z1pElem) -> Option<Rational> {
        Some(self.value(a))
    }

    fn from_integer(&self, n: &BigInt) -> Option<Z1pElem> {
        Some(self.elem(n.clone(), 0))
    }

    fn times(&self, n: &BigUint, a: &Z1pElem) -> Z1pElem {
        self.elem(&a.m * BigInt::from(n.clone()), a.n)
    }

    fn pow(&self, a: &Z1pElem, e: u64) -> Option<Z1pElem> {
        let m = num_traits::pow(a.m.clone(), e.to_usize()?);
        Some(Z1pElem { m, n: a.n.checked_mul(e)? })
    }
}

impl OrderedRing for Z1pRing {}
