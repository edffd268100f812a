use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rand::Rng;

use super::{random_rational, render_rational, Rational};
use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::order::{Capabilities, CarrierKind, OrderedHemiring, OrderedRing, SampleBounds};
use crate::parse::Literal;

/// The ordered field ℚ, registry id `rational`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl OrderedHemiring for RationalField {
    type Elem = Rational;

    fn id(&self) -> String {
        "rational".into()
    }

    fn carrier(&self) -> CarrierKind {
        CarrierKind::Rational
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
            archimedean: Some(true),
        }
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Option<Rational> {
        Some(super::int(1))
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn neg(&self, a: &Rational) -> Option<Rational> {
        Some(-a)
    }

    fn compare(&self, a: &Rational, b: &Rational) -> Option<Ordering> {
        Some(a.cmp(b))
    }

    fn invert(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn canonicalize(&self, a: &Rational) -> Rational {
        Rational::new(a.numer().clone(), a.denom().clone())
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bounds: &SampleBounds) -> Rational {
        random_rational(rng, bounds.int_bound)
    }

    fn from_literal(&self, v: &Literal) -> std::result::Result<Rational, ParseError> {
        match v {
            Literal::Rational(q) => Ok(q.clone()),
            Literal::Function(_) => Err(ParseError::new(
                ParseErrorKind::WrongStructure,
                0,
                "the indeterminate X is not an element of rational",
            )),
        }
    }

    fn render(&self, a: &Rational) -> String {
        render_rational(a)
    }

    /// `β = γ = 2ε/5`.
    fn density_witness(&self, eps: &Rational) -> Result<(Rational, Rational)> {
        if !eps.is_positive() {
            return Err(Error::NonPositiveEpsilon(render_rational(eps)));
        }
        let b = eps * super::rat(2, 5);
        Ok((b.clone(), b))
    }

    /// `α_l = α_r = M⁻¹β`, `β = 2α/5`.
    fn shrink_witness(&self, alpha: &Rational, m: &Rational) -> Result<(Rational, Rational)> {
        if !m.is_positive() {
            return Err(Error::NonPositiveBound(render_rational(m)));
        }
        let (beta, _) = self.density_witness(alpha)?;
        let r = beta / m;
        Ok((r.clone(), r))
    }

    fn to_rational(&self, a: &Rational) -> Option<Rational> {
        Some(a.clone())
    }

    fn from_integer(&self, n: &BigInt) -> Option<Rational> {
        Some(Rational::from_integer(n.clone()))
    }

    fn times(&self, n: &BigUint, a: &Rational) -> Rational {
        a * Rational::from_integer(BigInt::from(n.clone()))
    }
}

impl OrderedRing for RationalField {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{int, rat};

    #[test]
    fn density_example() {
        let (b, g) = RationalField.density_witness(&int(1)).unwrap();
        assert_eq!(b, rat(2, 5));
        assert_eq!(&b + &g, rat(4, 5));
    }

    #[test]
    fn shrink_example() {
        let (l, r) = RationalField.shrink_witness(&int(1), &int(10)).unwrap();
        assert_eq!(l, rat(1, 25));
        assert_eq!(r, rat(1, 25));
    }

    #[test]
    fn rendering() {
        assert_eq!(RationalField.render(&rat(-7, 8)), "-7/8");
        assert_eq!(RationalField.render(&int(3)), "3");
    }

    #[test]
    fn archimedean_gap_integer_case() {
        let n = RationalField.archimedean_gap(&int(2), &int(7)).unwrap();
        assert_eq!(n, Some(BigUint::from(4u32)));
    }
}
