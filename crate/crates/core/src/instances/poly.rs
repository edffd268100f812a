//! Dense univariate polynomials over ℤ.
//!
//! Coefficients are stored in ascending degree order. The zero polynomial is
//! the empty vector; otherwise the last coefficient is nonzero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·X^deg`.
    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// Builds from ascending coefficients, stripping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn neg(&self) -> Self {
        IntegerPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a / c).collect())
    }

    /// Non-negative gcd of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Pseudo-remainder `lc(g)^(deg f - deg g + 1)·f mod g`.
    pub fn pseudo_rem(&self, g: &Self) -> Self {
        let dg = g.degree().expect("pseudo-division by zero polynomial");
        let lg = g.leading().unwrap().clone();
        let mut r = self.clone();
        let Some(df) = r.degree() else {
            return r;
        };
        if df < dg {
            return r;
        }
        let mut steps = df - dg + 1;
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shifted = Self::monomial(lr, dr - dg).mul(g);
            r = r.scale(&lg).sub(&shifted);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&num_traits::pow(lg, steps));
        }
        r
    }

    /// Exact quotient `self / g`, assuming `g` divides `self` in ℤ[X].
    pub fn exact_div(&self, g: &Self) -> Self {
        let dg = g.degree().expect("division by zero polynomial");
        let lg = g.leading().unwrap();
        let mut r = self.clone();
        let Some(df) = r.degree() else {
            return Self::zero();
        };
        if df < dg {
            return Self::zero();
        }
        let mut q = vec![BigInt::zero(); df - dg + 1];
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let c = r.leading().unwrap() / lg;
            let t = Self::monomial(c.clone(), dr - dg);
            q[dr - dg] = c;
            r = r.sub(&t.mul(g));
        }
        debug_assert!(r.is_zero(), "exact_div with non-divisor");
        Self::from_coeffs(q)
    }

    /// Primitive gcd over ℤ[X] via the primitive pseudo-remainder sequence.
    ///
    /// The result is primitive with positive leading coefficient; contents are
    /// ignored, so this is the gcd over ℚ[X] normalized into ℤ[X].
    pub fn primitive_gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        if self.coprime_mod_prime(other) {
            return Self::one();
        }
        let (mut f, mut g) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !g.is_zero() {
            if g.degree() == Some(0) {
                return Self::one();
            }
            let r = f.pseudo_rem(&g);
            f = g;
            g = r.primitive_part();
        }
        f.primitive_part()
    }

    /// `true` when the reductions modulo some prime not dividing either leading
    /// coefficient are coprime over F_p, which forces coprimality over ℚ.
    /// `false` means "unknown".
    pub fn coprime_mod_prime(&self, other: &Self) -> bool {
        for &p in &MODULI {
            let pb = BigInt::from(p);
            let lead_ok = |q: &Self| q.leading().is_some_and(|l| !(l % &pb).is_zero());
            if !lead_ok(self) || !lead_ok(other) {
                continue;
            }
            let a = reduce_mod(self, p);
            let b = reduce_mod(other, p);
            return gcd_mod(a, b, p).len() == 1;
        }
        false
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn fmt_monomial(f: &mut fmt::Formatter<'_>, c: &BigInt, d: usize) -> fmt::Result {
        let c = c.abs();
        match d {
            0 => write!(f, "{c}"),
            _ => {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                if d == 1 {
                    write!(f, "X")
                } else {
                    write!(f, "X^{d}")
                }
            }
        }
    }

    /// Number of nonzero monomials.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

const MODULI: [u64; 3] = [(1 << 61) - 1, 4_294_967_291, 2_147_483_647];

fn reduce_mod(f: &IntegerPolynomial, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    f.coeffs
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p"))
        .collect()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

// Euclid over F_p on ascending coefficient vectors
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = mul_mod(*a.last().unwrap(), inv, p);
            for (i, &bc) in b.iter().enumerate() {
                let t = mul_mod(q, bc, p);
                a[i + shift] = (a[i + shift] + p - t) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for d in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[d];
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            Self::fmt_monomial(f, c, d)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c)
    }

    #[test]
    fn trailing_zeros_stripped() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (X - 1)(X + 2) and (X - 1)(3X + 1)
        let a = p(&[-1, 1]).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[1, 3]));
        assert_eq!(a.primitive_gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn gcd_ignores_content() {
        let a = p(&[6, 6]);
        let b = p(&[4, 4]);
        assert_eq!(a.primitive_gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[2]).primitive_gcd(&p(&[4])), p(&[1]));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let f = p(&[1, 0, 3, 5]);
        let g = p(&[2, 3]);
        let r = f.pseudo_rem(&g);
        assert!(r.degree().unwrap_or(0) < 1);
        // lc(g)^3 f - r is divisible by g
        let lhs = f.scale(&BigInt::from(27)).sub(&r);
        let q = lhs.exact_div(&g);
        assert_eq!(q.mul(&g), lhs);
    }

    #[test]
    fn modular_coprimality() {
        assert!(p(&[1, 1]).coprime_mod_prime(&p(&[-1, 1])));
        assert!(!p(&[-1, 0, 1]).coprime_mod_prime(&p(&[-1, 1])));
    }

    #[test]
    fn display_descending() {
        assert_eq!(p(&[1, 0, 3]).to_string(), "3*X^2+1");
        assert_eq!(p(&[1, -2]).to_string(), "-2*X+1");
        assert_eq!(p(&[-1000, 1]).to_string(), "X-1000");
        assert_eq!(p(&[0, -1]).to_string(), "-X");
    }
}
