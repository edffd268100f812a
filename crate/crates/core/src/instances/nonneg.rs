use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;

use super::Rational;
use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::order::{Capabilities, CarrierKind, OrderedHemiring, OrderedRing, SampleBounds};
use crate::parse::Literal;

/// The non-negative cone F^{≥0} of an ordered field, a division semiring
/// under the field operations. Registry id `nonneg:<base>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonNeg<F> {
    base: F,
}

impl<F: OrderedRing> NonNeg<F> {
    pub fn new(base: F) -> Result<Self> {
        let caps = base.capabilities();
        if !caps.has_inverses || !caps.totally_ordered {
            return Err(Error::NotApplicable(format!(
                "nonneg cone needs a totally ordered field, got {}",
                base.id()
            )));
        }
        Ok(NonNeg { base })
    }

    pub fn base(&self) -> &F {
        &self.base
    }
}

impl<F: OrderedRing> OrderedHemiring for NonNeg<F> {
    type Elem = F::Elem;

    fn id(&self) -> String {
        format!("nonneg:{}", self.base.id())
    }

    fn carrier(&self) -> CarrierKind {
        self.base.carrier()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            has_neg: false,
            ..self.base.capabilities()
        }
    }

    fn zero(&self) -> F::Elem {
        self.base.zero()
    }

    fn one(&self) -> Option<F::Elem> {
        self.base.one()
    }

    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.base.add(a, b)
    }

    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.base.mul(a, b)
    }

    fn neg(&self, _a: &F::Elem) -> Option<F::Elem> {
        None
    }

    fn compare(&self, a: &F::Elem, b: &F::Elem) -> Option<Ordering> {
        self.base.compare(a, b)
    }

    fn invert(&self, a: &F::Elem) -> Result<F::Elem> {
        self.base.invert(a)
    }

    fn canonicalize(&self, a: &F::Elem) -> F::Elem {
        self.base.canonicalize(a)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bounds: &SampleBounds) -> F::Elem {
        let x = self.base.sample(rng, bounds);
        self.base.abs(&x)
    }

    fn from_literal(&self, v: &Literal) -> std::result::Result<F::Elem, ParseError> {
        let x = self.base.from_literal(v)?;
        if self.base.lt(&x, &self.base.zero()) {
            return Err(ParseError::new(
                ParseErrorKind::WrongStructure,
                0,
                format!("{} is negative", self.base.render(&x)),
            ));
        }
        Ok(x)
    }

    fn render(&self, a: &F::Elem) -> String {
        self.base.render(a)
    }

    fn density_witness(&self, eps: &F::Elem) -> Result<(F::Elem, F::Elem)> {
        self.base.density_witness(eps)
    }

    fn shrink_witness(&self, alpha: &F::Elem, m: &F::Elem) -> Result<(F::Elem, F::Elem)> {
        self.base.shrink_witness(alpha, m)
    }

    fn to_rational(&self, a: &F::Elem) -> Option<Rational> {
        self.base.to_rational(a)
    }

    fn magnitude_degree(&self, a: &F::Elem) -> Option<i64> {
        self.base.magnitude_degree(a)
    }

    fn indeterminate(&self) -> Option<F::Elem> {
        self.base.indeterminate()
    }

    fn archimedean_gap(&self, x: &F::Elem, y: &F::Elem) -> Result<Option<num_bigint::BigUint>> {
        self.base.archimedean_gap(x, y)
    }

    fn from_integer(&self, n: &BigInt) -> Option<F::Elem> {
        if n.is_negative() {
            return None;
        }
        self.base.from_integer(n)
    }

    fn pow(&self, a: &F::Elem, e: u64) -> Option<F::Elem> {
        self.base.pow(a, e)
    }
}
