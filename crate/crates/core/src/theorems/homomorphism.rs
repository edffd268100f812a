use rand::Rng;

use crate::error::{Error, Result};
use crate::laws::{LawFailure, LawReport};
use crate::order::OrderedHemiring;
use crate::sequences::{
    constant_certificate, power_null_certificate, product_certificate, scaled_certificate, sum_certificate,
    validate_convergence, ConvergenceCertificate, Index,
};

use super::unit;

/// `a/2^k`, or the integer `a` where halves do not exist.
fn small_element<S: OrderedHemiring, R: Rng + ?Sized>(s: &S, rng: &mut R, lo: i64, hi: i64) -> Result<S::Elem> {
    let a = rng.gen_range(lo..=hi);
    let k = rng.gen_range(0..=3u32);
    s.parse(&format!("{a}/{}", 1u64 << k))
        .or_else(|_| s.parse(&a.to_string()))
        .map_err(Error::Parse)
}

/// A constant, a constant plus a scaled power sequence, or a scaled power sequence.
pub fn random_convergent_certificate<S: OrderedHemiring, R: Rng + ?Sized>(
    s: &S,
    rng: &mut R,
) -> Result<ConvergenceCertificate<S::Elem>> {
    let c = small_element(s, rng, -8, 8)?;
    let kind = rng.gen_range(0..3);
    if kind == 0 {
        return constant_certificate(s, &c);
    }
    let r = ["1/2", "-1/2", "1/4", "3/4"][rng.gen_range(0..4)];
    let r = s.parse(r).map_err(Error::Parse)?;
    let d = small_element(s, rng, 1, 6)?;
    let null = scaled_certificate(s, &d, &power_null_certificate(s, &r)?)?;
    if kind == 1 {
        sum_certificate(s, &constant_certificate(s, &c)?, &null)
    } else {
        Ok(null)
    }
}

/// Probes the limit map on certified pairs.
///
/// Per pair: the product and sum certificates validate and carry the limits
/// `a·b` and `a + b`, and multiplying by the constant `1` keeps a sequence in
/// the kernel exactly when its limit is `0`.
pub fn conv_hom_probe<S: OrderedHemiring>(
    s: &S,
    pairs: &[(ConvergenceCertificate<S::Elem>, ConvergenceCertificate<S::Elem>)],
    eps: &[S::Elem],
    depth: Index,
) -> Result<LawReport> {
    let one = constant_certificate(s, &unit(s)?)?;
    let mut failures = Vec::new();
    let mut tested = 0;
    for (i, (x, y)) in pairs.iter().enumerate() {
        for (side, c) in [("x", x), ("y", y)] {
            if !validate_convergence(s, c, eps, depth)?.pass {
                return Err(Error::InvalidInputCertificate(format!("pair {i}: {side} does not validate")));
            }
        }
        let inputs = vec![i.to_string(), s.render(&x.limit), s.render(&y.limit)];
        let mut check = |what: &str, cert: &ConvergenceCertificate<S::Elem>, expected: &S::Elem| -> Result<()> {
            tested += 1;
            let valid = validate_convergence(s, cert, eps, depth)?.pass;
            if cert.limit != *expected || !valid {
                failures.push(LawFailure {
                    inputs: inputs.clone(),
                    expected: format!("{what} = {}", s.render(expected)),
                    observed: format!(
                        "{what} = {}{}",
                        s.render(&cert.limit),
                        if valid { "" } else { " (does not validate)" }
                    ),
                });
            }
            Ok(())
        };
        check("lim(xy)", &product_certificate(s, x, y)?, &s.mul(&x.limit, &y.limit))?;
        check("lim(x+y)", &sum_certificate(s, x, y)?, &s.add(&x.limit, &y.limit))?;
        let absorbed = product_certificate(s, x, &one)?;
        tested += 1;
        if s.is_zero(&x.limit) != s.is_zero(&absorbed.limit) {
            failures.push(LawFailure {
                inputs,
                expected: format!("lim(x·1) = 0 iff lim(x) = 0 ({})", s.render(&x.limit)),
                observed: format!("lim(x·1) = {}", s.render(&absorbed.limit)),
            });
        }
    }
    Ok(LawReport::from_failures("conv_homomorphism", tested, 0, failures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{int, rat, RationalField, Z1pRing};
    use crate::laws::seeded_rng;
    use crate::sequences::{Modulus, SymbolicSequence};

    #[test]
    fn random_pairs_q() {
        let q = RationalField;
        let mut rng = seeded_rng(11);
        let pairs: Vec<_> = (0..6)
            .map(|_| {
                (
                    random_convergent_certificate(&q, &mut rng).unwrap(),
                    random_convergent_certificate(&q, &mut rng).unwrap(),
                )
            })
            .collect();
        let eps = [rat(1, 10), rat(1, 1000)];
        let r = conv_hom_probe(&q, &pairs, &eps, 32).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.samples_tested, 18);
    }

    #[test]
    fn kernel_absorbs() {
        let q = RationalField;
        let x = power_null_certificate(&q, &rat(1, 2)).unwrap();
        let y = constant_certificate(&q, &int(5)).unwrap();
        assert_eq!(product_certificate(&q, &x, &y).unwrap().limit, int(0));
        assert!(conv_hom_probe(&q, &[(x, y)], &[rat(1, 100)], 32).unwrap().passed());
    }

    #[test]
    fn dyadic() {
        let d = Z1pRing::new(2).unwrap();
        let mut rng = seeded_rng(5);
        let x = random_convergent_certificate(&d, &mut rng).unwrap();
        let y = random_convergent_certificate(&d, &mut rng).unwrap();
        let eps = [d.parse("1/16").unwrap(), d.parse("1/1024").unwrap()];
        assert!(conv_hom_probe(&d, &[(x, y)], &eps, 32).unwrap().passed());
    }

    #[test]
    fn rejects_bad_input() {
        let q = RationalField;
        let fake = ConvergenceCertificate::claimed(SymbolicSequence::expr("1").unwrap(), int(0), Modulus::Constant(1));
        let y = constant_certificate(&q, &int(1)).unwrap();
        assert_eq!(
            conv_hom_probe(&q, &[(fake, y)], &[rat(1, 2)], 8),
            Err(Error::InvalidInputCertificate("pair 0: x does not validate".into()))
        );
    }
}
