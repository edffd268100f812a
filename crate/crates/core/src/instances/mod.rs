//! Concrete ordered structures: ℚ, ℤ[1/p], ℤ(X), the max-times semiring G₀
//! over the positive rationals, and non-negative cones of ordered fields.

mod maxtimes;
mod nonneg;
pub mod poly;
mod rational;
mod ratfunc;
mod z1p;

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

pub use maxtimes::{MaxTimes, MaxTimesQpos};
pub use nonneg::NonNeg;
pub use poly::IntegerPolynomial;
pub use ratfunc::{zx_archimedean_gap, zx_sign, RationalFunction, ZxField};
pub use rational::RationalField;
pub use z1p::{Z1pElem, Z1pRing};

/// Exact rationals in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Canonical text of a rational: `n` or `n/d`.
pub fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    match rng.gen_range(0..20) {
        0 => int(0),
        1 => int(rng.gen_range(-3..=3)),
        _ => {
            let n = rng.gen_range(-bound..=bound);
            let d = rng.gen_range(1..=bound);
            rat(n, d)
        }
    }
}

/// Trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
