use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{render_rational, Rational};
use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::order::{Capabilities, CarrierKind, OrderedHemiring, SampleBounds};
use crate::parse::Literal;

/// An element of G₀ = (ℚ₊, ·) with an adjoined bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MaxTimes {
    Bottom,
    /// Always strictly positive.
    Value(Rational),
}

impl MaxTimes {
    pub fn value(q: Rational) -> Self {
        if q.is_zero() {
            MaxTimes::Bottom
        } else {
            assert!(q.is_positive(), "max-times values are positive");
            MaxTimes::Value(q)
        }
    }

    pub fn as_rational(&self) -> Rational {
        match self {
            MaxTimes::Bottom => Rational::zero(),
            MaxTimes::Value(q) => q.clone(),
        }
    }
}

impl fmt::Display for MaxTimes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxTimes::Bottom => f.write_str("0"),
            MaxTimes::Value(q) => f.write_str(&render_rational(q)),
        }
    }
}

/// The max-times semiring G₀, registry id `maxtimes-qpos`: addition is `max`,
/// multiplication is the group product, and bottom is the zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MaxTimesQpos;

impl OrderedHemiring for MaxTimesQpos {
    type Elem = MaxTimes;

    fn id(&self) -> String {
        "maxtimes-qpos".into()
    }

    fn carrier(&self) -> CarrierKind {
        CarrierKind::MaxTimes
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            has_one: true,
            has_neg: false,
            has_inverses: true,
            commutative: true,
            totally_ordered: true,
            strict_add_compatible: false,
            strict_mul_compatible: true,
            dense: true,
            shrinkable: true,
            archimedean: Some(false),
        }
    }

    fn zero(&self) -> MaxTimes {
        MaxTimes::Bottom
    }

    fn one(&self) -> Option<MaxTimes> {
        Some(MaxTimes::Value(Rational::one()))
    }

    fn add(&self, a: &MaxTimes, b: &MaxTimes) -> MaxTimes {
        self.max_of(a, b)
    }

    fn mul(&self, a: &MaxTimes, b: &MaxTimes) -> MaxTimes {
        match (a, b) {
            (MaxTimes::Value(x), MaxTimes::Value(y)) => MaxTimes::Value(x * y),
            _ => MaxTimes::Bottom,
        }
    }

    fn neg(&self, _a: &MaxTimes) -> Option<MaxTimes> {
        None
    }

    fn compare(&self, a: &MaxTimes, b: &MaxTimes) -> Option<Ordering> {
        Some(match (a, b) {
            (MaxTimes::Bottom, MaxTimes::Bottom) => Ordering::Equal,
            (MaxTimes::Bottom, _) => Ordering::Less,
            (_, MaxTimes::Bottom) => Ordering::Greater,
            (MaxTimes::Value(x), MaxTimes::Value(y)) => x.cmp(y),
        })
    }

    fn invert(&self, a: &MaxTimes) -> Result<MaxTimes> {
        match a {
            MaxTimes::Bottom => Err(Error::DivisionByZero),
            MaxTimes::Value(q) => Ok(MaxTimes::Value(q.recip())),
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bounds: &SampleBounds) -> MaxTimes {
        match rng.gen_range(0..20) {
            0 => MaxTimes::Bottom,
            1 => MaxTimes::Value(Rational::one()),
            _ => {
                let n = rng.gen_range(1..=bounds.int_bound);
                let d = rng.gen_range(1..=bounds.int_bound);
                MaxTimes::Value(super::rat(n, d))
            }
        }
    }

    fn from_literal(&self, v: &Literal) -> std::result::Result<MaxTimes, ParseError> {
        let wrong = |msg: &str| ParseError::new(ParseErrorKind::WrongStructure, 0, msg);
        match v {
            Literal::Rational(q) if q.is_negative() => Err(wrong("max-times values are non-negative")),
            Literal::Rational(q) => Ok(MaxTimes::value(q.clone())),
            Literal::Function(_) => Err(wrong("the indeterminate X is not an element of maxtimes-qpos")),
        }
    }

    fn render(&self, a: &MaxTimes) -> String {
        a.to_string()
    }

    /// `β = γ = ε/2`, since `max(β, β) = β < ε`.
    fn density_witness(&self, eps: &MaxTimes) -> Result<(MaxTimes, MaxTimes)> {
        match eps {
            MaxTimes::Bottom => Err(Error::NonPositiveEpsilon("0".into())),
            MaxTimes::Value(q) => {
                let b = MaxTimes::Value(q / Rational::from_integer(2.into()));
                Ok((b.clone(), b))
            }
        }
    }

    /// `α_l = α_r = M⁻¹β`, `β = α/2`.
    fn shrink_witness(&self, alpha: &MaxTimes, m: &MaxTimes) -> Result<(MaxTimes, MaxTimes)> {
        if *m == MaxTimes::Bottom {
            return Err(Error::NonPositiveBound("0".into()));
        }
        let (beta, _) = self.density_witness(alpha)?;
        let r = self.mul(&self.invert(m)?, &beta);
        Ok((r.clone(), r))
    }

    /// `n·x = x`, so `n·x > y` holds for every `n` or for none.
    fn archimedean_gap(&self, x: &MaxTimes, y: &MaxTimes) -> Result<Option<BigUint>> {
        if *x == MaxTimes::Bottom {
            return Err(Error::NonPositiveF);
        }
        Ok(self.gt(x, y).then(BigUint::one))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::rat;

    fn v(n: i64, d: i64) -> MaxTimes {
        MaxTimes::Value(rat(n, d))
    }

    #[test]
    fn operations() {
        let s = MaxTimesQpos;
        assert_eq!(s.add(&v(3, 2), &v(5, 4)), v(3, 2));
        assert_eq!(s.mul(&v(3, 2), &v(5, 4)), v(15, 8));
        assert_eq!(s.mul(&MaxTimes::Bottom, &v(5, 4)), MaxTimes::Bottom);
        assert!(s.lt(&MaxTimes::Bottom, &v(1, 1000)));
    }

    #[test]
    fn witnesses() {
        let s = MaxTimesQpos;
        let (b, g) = s.density_witness(&v(1, 3)).unwrap();
        assert!(s.lt(&s.add(&b, &g), &v(1, 3)));
        let (l, r) = s.shrink_witness(&v(1, 3), &v(7, 1)).unwrap();
        assert!(s.lt(&s.mul(&v(7, 1), &r), &v(1, 3)));
        assert!(s.lt(&s.mul(&l, &v(7, 1)), &v(1, 3)));
    }

    #[test]
    fn not_archimedean() {
        let s = MaxTimesQpos;
        assert_eq!(s.archimedean_gap(&v(1, 1), &v(2, 1)).unwrap(), None);
        assert_eq!(s.archimedean_gap(&v(2, 1), &v(1, 1)).unwrap(), Some(BigUint::one()));
    }
}
