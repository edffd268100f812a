use crate::error::{Error, Result};
use crate::laws::{LawFailure, LawReport};
use crate::order::OrderedHemiring;
use crate::sequences::{power_null_certificate, ConvergenceCertificate, Modulus, Side, SymbolicSequence};

use super::{negate, require, unit};

/// `Σ_{n≥0} rⁿ = (1 − r)⁻¹` with its certificate and prerequisites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricResult<E> {
    pub r: E,
    pub sum: E,
    /// Certifies the partial sums `s_n = Σ_{i=0}^{n} rⁱ` converge to `sum`.
    pub certificate: ConvergenceCertificate<E>,
    pub power_null: ConvergenceCertificate<E>,
    pub one_minus_r_inverse: E,
}

/// The geometric series of `r`.
///
/// `‖s_n − sum‖ = ‖r^{n+1}‖·‖(1 − r)⁻¹‖`, so the modulus is the power modulus at the
/// shrink witness of `ε` against `‖(1 − r)⁻¹‖`.
pub fn geometric_sum<S: OrderedHemiring>(s: &S, r: &S::Elem) -> Result<GeometricResult<S::Elem>> {
    require(s, true, true)?;
    let one = unit(s)?;
    if *r == one {
        return Err(Error::ROne);
    }
    let d = s.add(&one, &negate(s, r)?);
    let inv = s.invert(&d).map_err(|_| Error::NotInvertible(format!("1 - r = {}", s.render(&d))))?;
    let power_null = power_null_certificate(s, r)?;
    let modulus = Modulus::shrink(s.abs(&inv), Side::Right, power_null.modulus.clone());
    let certificate = ConvergenceCertificate::derived(
        SymbolicSequence::geometric(r.clone()).partial_sums(),
        inv.clone(),
        modulus,
        "geometric_sum",
        vec![format!("(1 - r)^-1 = {}", s.render(&inv))],
    );
    Ok(GeometricResult {
        r: r.clone(),
        sum: inv.clone(),
        certificate,
        power_null,
        one_minus_r_inverse: inv,
    })
}

/// `(1 − r)·s_n = 1 − r^{n+1}` for `n ≤ n_max`, with `s_n` summed term by term.
pub fn geometric_identity<S: OrderedHemiring>(s: &S, r: &S::Elem, n_max: u64) -> Result<LawReport> {
    let one = unit(s)?;
    let d = s.add(&one, &negate(s, r)?);
    let mut failures = Vec::new();
    let mut partial = s.zero();
    let mut power = one.clone();
    for n in 0..=n_max {
        partial = s.add(&partial, &power);
        power = s.mul(&power, r);
        let lhs = s.mul(&d, &partial);
        let rhs = s.add(&one, &negate(s, &power)?);
        if lhs != rhs {
            failures.push(LawFailure {
                inputs: vec![s.render(r), n.to_string()],
                expected: s.render(&rhs),
                observed: s.render(&lhs),
            });
        }
    }
    Ok(LawReport::from_failures("geometric_identity", n_max as usize + 1, 0, failures))
}
