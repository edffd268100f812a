//! The ordered field ℤ(X) of rational functions with integer coefficients.
//!
//! The order makes `X` larger than every integer: `f > 0` iff the leading
//! coefficients of numerator and denominator agree in sign. Canonical
//! denominators have positive leading coefficient, so the sign of `f` is the
//! sign of its numerator's leading coefficient.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::poly::IntegerPolynomial;
use crate::error::{Error, ParseError, Result};
use crate::parse::Literal;
use crate::order::{Capabilities, CarrierKind, OrderedHemiring, OrderedRing, SampleBounds};

/// A canonical element of ℤ(X).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntegerPolynomial,
    den: IntegerPolynomial,
}

impl RationalFunction {
    /// Builds and canonicalizes `num / den`.
    pub fn new(num: IntegerPolynomial, den: IntegerPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(p: IntegerPolynomial) -> Self {
        Self::canonical(p, IntegerPolynomial::one())
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::from_poly(IntegerPolynomial::constant(n.into()))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::canonical(
            IntegerPolynomial::constant(q.numer().clone()),
            IntegerPolynomial::constant(q.denom().clone()),
        )
    }

    pub fn x() -> Self {
        Self::from_poly(IntegerPolynomial::x())
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: IntegerPolynomial::zero(),
            den: IntegerPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn num(&self) -> &IntegerPolynomial {
        &self.num
    }

    pub fn den(&self) -> &IntegerPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    // removes the polynomial gcd, then the common content, then fixes the sign
    fn canonical(num: IntegerPolynomial, den: IntegerPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.primitive_gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RationalFunction { num, den }
    }

    // num and den already coprime in ℤ[X]; only the sign may need fixing
    fn signed(num: IntegerPolynomial, den: IntegerPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.leading().unwrap().is_negative() {
            RationalFunction { num: num.neg(), den: den.neg() }
        } else {
            RationalFunction { num, den }
        }
    }

    /// Re-canonicalizes; the identity on values built through this module.
    pub fn canonicalize(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone())
    }

    /// `-1`, `0` or `+1`.
    pub fn sign(&self) -> i8 {
        match self.num.leading() {
            None => 0,
            Some(l) if l.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// `deg(num) - deg(den)`; `None` for zero.
    pub fn magnitude_degree(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(dn - self.den.degree().unwrap() as i64)
    }

    /// Henrici addition: only the gcd with the shared denominator part is needed.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let d1 = zgcd(&self.den, &other.den);
        if d1.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::signed(num, self.den.mul(&other.den));
        }
        let b1 = self.den.exact_div(&d1);
        let d1o = other.den.exact_div(&d1);
        let t = self.num.mul(&d1o).add(&other.num.mul(&b1));
        if t.is_zero() {
            return Self::zero();
        }
        let d2 = zgcd(&t, &d1);
        let num = t.exact_div(&d2);
        let den = b1.mul(&other.den.exact_div(&d2));
        Self::signed(num, den)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g1 = zgcd(&self.num, &other.den);
        let g2 = zgcd(&other.num, &self.den);
        let num = self.num.exact_div(&g1).mul(&other.num.exact_div(&g2));
        let den = self.den.exact_div(&g2).mul(&other.den.exact_div(&g1));
        Self::signed(num, den)
    }

    /// `self^e`; numerator and denominator stay coprime, so no gcd is needed.
    pub fn pow(&self, e: usize) -> Self {
        RationalFunction {
            num: poly_pow(&self.num, e),
            den: poly_pow(&self.den, e),
        }
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        self.sub(other).sign().cmp(&0)
    }

    fn poly_needs_parens(p: &IntegerPolynomial) -> bool {
        p.term_count() > 1
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if Self::poly_needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let den_bare = self.den.term_count() == 1
            && (self.den.degree() == Some(0) || self.den.leading().is_some_and(|l| l.is_one()));
        if den_bare {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

// gcd in ℤ[X]: content gcd times primitive gcd
fn zgcd(a: &IntegerPolynomial, b: &IntegerPolynomial) -> IntegerPolynomial {
    let g = a.primitive_gcd(b);
    let c = a.content().gcd(&b.content());
    if c.is_one() {
        g
    } else {
        g.scale(&c)
    }
}

/// The ordered field ℤ(X), registry id `zx`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ZxField;

/// Sign of a rational function: `-1`, `0`, `+1`.
pub fn zx_sign(f: &RationalFunction) -> i8 {
    f.sign()
}

/// Least `n ≥ 1` with `n·f > g` in ℤ(X), or `Ok(None)` when none exists.
pub fn zx_archimedean_gap(f: &RationalFunction, g: &RationalFunction) -> Result<Option<BigUint>> {
    if f.sign() <= 0 {
        return Err(Error::NonPositiveF);
    }
    let beats = |n: &BigUint| f.mul(&RationalFunction::from_int(BigInt::from(n.clone()))).compare(g) == Ordering::Greater;
    if g.sign() <= 0 {
        return Ok(Some(BigUint::one()));
    }
    let df = f.magnitude_degree().unwrap();
    let dg = g.magnitude_degree().unwrap();
    let mut n = match df.cmp(&dg) {
        Ordering::Less => return Ok(None),
        Ordering::Greater => BigUint::one(),
        Ordering::Equal => {
            let top = g.num().leading().unwrap() * f.den().leading().unwrap();
            let bottom = f.num().leading().unwrap() * g.den().leading().unwrap();
            let q = top.div_floor(&bottom) + BigInt::one();
            q.to_biguint().filter(|q| !q.is_zero()).unwrap_or_else(BigUint::one)
        }
    };
    // equal leading terms can leave the floor estimate one too high
    while n > BigUint::one() && beats(&(&n - 1u32)) {
        n -= 1u32;
    }
    while !beats(&n) {
        n += 1u32;
    }
    Ok(Some(n))
}

fn random_poly<R: Rng + ?Sized>(rng: &mut R, bounds: &SampleBounds, allow_zero: bool) -> IntegerPolynomial {
    loop {
        let deg = rng.gen_range(0..=bounds.max_degree);
        let coeffs: Vec<BigInt> = (0..=deg)
            .map(|_| BigInt::from(rng.gen_range(-bounds.int_bound..=bounds.int_bound)))
            .collect();
        let p = IntegerPolynomial::from_coeffs(coeffs);
        if allow_zero || !p.is_zero() {
            return p;
        }
    }
}

impl OrderedHemiring for ZxField {
    type Elem = RationalFunction;

    fn id(&self) -> String {
        "zx".into()
    }

    fn carrier(&self) -> CarrierKind {
        CarrierKind::RationalFunction
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            has_one: true,
            has_neg: true,
            has_inverses: true,
            commutative: true,
            totally_ordered: true,
            strict_add_compatible: true,
            strict_mul_compatible: true,
            dense: true,
            shrinkable: true,
            archimedean: Some(false),
        }
    }

    fn zero(&self) -> RationalFunction {
        RationalFunction::zero()
    }

    fn one(&self) -> Option<RationalFunction> {
        Some(RationalFunction::one())
    }

    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.add(b)
    }

    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.mul(b)
    }

    fn neg(&self, a: &RationalFunction) -> Option<RationalFunction> {
        Some(a.neg())
    }

    fn compare(&self, a: &RationalFunction, b: &RationalFunction) -> Option<Ordering> {
        Some(a.compare(b))
    }

    fn invert(&self, a: &RationalFunction) -> Result<RationalFunction> {
        a.invert()
    }

    fn canonicalize(&self, a: &RationalFunction) -> RationalFunction {
        a.canonicalize()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bounds: &SampleBounds) -> RationalFunction {
        match rng.gen_range(0..16) {
            0 => RationalFunction::zero(),
            1 => RationalFunction::from_int(rng.gen_range(-3..=3)),
            _ => {
                let num = random_poly(rng, bounds, true);
                let den = random_poly(rng, bounds, false);
                RationalFunction::canonical(num, den)
            }
        }
    }

    fn from_literal(&self, v: &Literal) -> std::result::Result<RationalFunction, ParseError> {
        Ok(match v {
            Literal::Rational(q) => RationalFunction::from_rational(q),
            Literal::Function(f) => f.clone(),
        })
    }

    fn render(&self, a: &RationalFunction) -> String {
        a.to_string()
    }

    /// `β = γ = 2ε/5`.
    fn density_witness(&self, eps: &RationalFunction) -> Result<(RationalFunction, RationalFunction)> {
        if eps.sign() <= 0 {
            return Err(Error::NonPositiveEpsilon(eps.to_string()));
        }
        let two_fifths = RationalFunction::from_rational(&BigRational::new(2.into(), 5.into()));
        let b = eps.mul(&two_fifths);
        Ok((b.clone(), b))
    }

    /// `α_l = α_r = M⁻¹β` with `β` from the density witness.
    fn shrink_witness(&self, alpha: &RationalFunction, m: &RationalFunction) -> Result<(RationalFunction, RationalFunction)> {
        if m.sign() <= 0 {
            return Err(Error::NonPositiveBound(m.to_string()));
        }
        let (beta, _) = self.density_witness(alpha)?;
        let r = m.invert()?.mul(&beta);
        Ok((r.clone(), r))
    }

    fn magnitude_degree(&self, a: &RationalFunction) -> Option<i64> {
        a.magnitude_degree()
    }

    fn indeterminate(&self) -> Option<RationalFunction> {
        Some(RationalFunction::x())
    }

    fn archimedean_gap(&self, x: &RationalFunction, y: &RationalFunction) -> Result<Option<BigUint>> {
        zx_archimedean_gap(x, y)
    }

    fn from_integer(&self, n: &BigInt) -> Option<RationalFunction> {
        Some(RationalFunction::from_int(n.clone()))
    }

    fn pow(&self, a: &RationalFunction, e: u64) -> Option<RationalFunction> {
        Some(a.pow(e.to_usize()?))
    }
}

fn poly_pow(p: &IntegerPolynomial, e: usize) -> IntegerPolynomial {
    let mut acc = IntegerPolynomial::one();
    let mut base = p.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

impl OrderedRing for ZxField {}
