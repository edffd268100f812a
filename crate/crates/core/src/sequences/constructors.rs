//! Certificate constructors for limit arithmetic and power sequences.

use super::{term, ConvergenceCertificate, CauchyCertificate, GroupSequence, Index, Modulus, Side, SymbolicSequence, EXACT_WORK_LIMIT};
use crate::error::{Error, Result};
use crate::order::OrderedHemiring;

/// Indices checked when a constructor needs a bound on a sequence.
pub const BOUND_PROBE: Index = 256;

fn unit<S: OrderedHemiring>(s: &S) -> Result<S::Elem> {
    s.one().ok_or_else(|| Error::NotApplicable(format!("{} has no 1", s.id())))
}

fn require_dense<S: OrderedHemiring>(s: &S) -> Result<()> {
    if s.capabilities().dense {
        Ok(())
    } else {
        Err(Error::NotDense(s.id()))
    }
}

fn require_shrinkable<S: OrderedHemiring>(s: &S) -> Result<()> {
    if s.capabilities().shrinkable {
        Ok(())
    } else {
        Err(Error::NotShrinkable(s.id()))
    }
}

fn require_total<S: OrderedHemiring>(s: &S) -> Result<()> {
    if s.capabilities().totally_ordered {
        Ok(())
    } else {
        Err(Error::NotTotallyOrdered(s.id()))
    }
}

/// A positive `s₁` with `‖x_n‖ ≤ s₁` for every `n`.
///
/// Dominates the tail through `‖limit‖ + ε₀` and the prefix before `modulus(ε₀)` directly.
pub fn bound_from_certificate<S: OrderedHemiring>(
    s: &S,
    cert: &ConvergenceCertificate<S::Elem>,
    eps0: &S::Elem,
) -> Result<S::Elem> {
    if !s.is_positive(eps0) {
        return Err(Error::NonPositiveEpsilon(s.render(eps0)));
    }
    require_total(s)?;
    let n0 = cert.modulus.eval(s, eps0)?;
    let start = cert.sequence.start();
    if n0.saturating_sub(start) > EXACT_WORK_LIMIT {
        return Err(Error::TooExpensive(format!("bound over {} prefix terms", n0 - start)));
    }
    let mut best = s.add(&s.abs(&cert.limit), eps0);
    for n in start..n0 {
        best = s.max_of(&best, &s.abs(&term(s, &cert.sequence, n)?));
    }
    if s.is_zero(&best) {
        best = unit(s)?;
    }
    Ok(best)
}

/// `x_n + y_n → a + b` with modulus `max(N_x(β), N_y(γ))`.
pub fn sum_certificate<S: OrderedHemiring>(
    s: &S,
    x: &ConvergenceCertificate<S::Elem>,
    y: &ConvergenceCertificate<S::Elem>,
) -> Result<ConvergenceCertificate<S::Elem>> {
    require_dense(s)?;
    Ok(ConvergenceCertificate::derived(
        x.sequence.clone().plus(y.sequence.clone()),
        s.add(&x.limit, &y.limit),
        Modulus::split(x.modulus.clone(), y.modulus.clone()),
        "sum",
        merged(&x.assumptions, &y.assumptions),
    ))
}

fn merged(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = a.to_vec();
    for x in b {
        if !out.contains(x) {
            out.push(x.clone());
        }
    }
    out
}

/// `x_n·y_n → a·b`.
///
/// With `b ≠ 0` the modulus is `max(N_y(K_r), N_x(M_l))` where `s₁·K_r < β`,
/// `M_l·‖b‖ < γ` and `s₁` bounds `‖x_n‖`; with `b = 0` the bounded-times-null rule applies.
pub fn product_certificate<S: OrderedHemiring>(
    s: &S,
    x: &ConvergenceCertificate<S::Elem>,
    y: &ConvergenceCertificate<S::Elem>,
) -> Result<ConvergenceCertificate<S::Elem>> {
    require_dense(s)?;
    require_shrinkable(s)?;
    require_total(s)?;
    let one = unit(s)?;
    let s1 = bound_from_certificate(s, x, &one)?;
    if s.is_zero(&y.limit) {
        let mut cert = bounded_times_null_certificate(s, y, &x.sequence, &s1)?;
        cert.sequence = x.sequence.clone().times(y.sequence.clone());
        cert.origin = "product".into();
        cert.assumptions = merged(&merged(&x.assumptions, &y.assumptions), &cert.assumptions);
        return Ok(cert);
    }
    let b_norm = s.abs(&y.limit);
    let modulus = Modulus::split(
        Modulus::shrink(s1, Side::Right, y.modulus.clone()),
        Modulus::shrink(b_norm, Side::Left, x.modulus.clone()),
    );
    Ok(ConvergenceCertificate::derived(
        x.sequence.clone().times(y.sequence.clone()),
        s.mul(&x.limit, &y.limit),
        modulus,
        "product",
        merged(&x.assumptions, &y.assumptions),
    ))
}

/// `x_n·y_n → 0` for `x_n → 0` and `‖y_n‖ ≤ M`, with modulus `N_x(ε_r)` where `M·ε_r < ε`.
pub fn bounded_times_null_certificate<S: OrderedHemiring>(
    s: &S,
    null: &ConvergenceCertificate<S::Elem>,
    bounded: &SymbolicSequence<S::Elem>,
    bound: &S::Elem,
) -> Result<ConvergenceCertificate<S::Elem>> {
    if !s.is_positive(bound) {
        return Err(Error::NonPositiveBound(s.render(bound)));
    }
    require_shrinkable(s)?;
    if !s.is_zero(&null.limit) {
        return Err(Error::InvalidInputCertificate(format!(
            "limit is {}, expected 0",
            s.render(&null.limit)
        )));
    }
    let start = bounded.start();
    for n in start..start + BOUND_PROBE {
        let v = term(s, bounded, n)?;
        if s.gt(&s.abs(&v), bound) {
            return Err(Error::BoundViolatedOnProbe(n));
        }
    }
    let mut assumptions = null.assumptions.clone();
    assumptions.push(format!(
        "|y_n| <= {} checked for n in [{start}, {}]",
        s.render(bound),
        start + BOUND_PROBE - 1
    ));
    Ok(ConvergenceCertificate::derived(
        null.sequence.clone().times(bounded.clone()),
        s.zero(),
        Modulus::shrink(bound.clone(), Side::Right, null.modulus.clone()),
        "bounded_times_null",
        assumptions,
    ))
}

/// `rⁿ → 0`.
///
/// Archimedean structures where `|r|` is a unit use the Bernoulli rule; otherwise
/// the least power below `ε` is searched, which in `ℤ(X)` requires `d(r) < 0`.
pub fn power_null_certificate<S: OrderedHemiring>(s: &S, r: &S::Elem) -> Result<ConvergenceCertificate<S::Elem>> {
    require_total(s)?;
    let one = unit(s)?;
    s.neg(&one).ok_or_else(|| Error::NotARing(s.id()))?;
    let seq = SymbolicSequence::geometric(r.clone());
    if s.is_zero(r) {
        return Ok(ConvergenceCertificate::derived(seq, s.zero(), Modulus::Constant(1), "power_null", vec![]));
    }
    let abs = s.abs(r);
    if !s.lt(&abs, &one) {
        return Err(Error::NoNullCertificate(format!("|r| = {} is not below 1, so r^n does not tend to 0", s.render(&abs))));
    }
    let caps = s.capabilities();
    let modulus = if caps.archimedean == Some(true) {
        if s.invert(&abs).is_ok() {
            Modulus::Bernoulli(r.clone())
        } else {
            Modulus::PowerGap(r.clone())
        }
    } else {
        match s.magnitude_degree(r) {
            Some(d) if d < 0 => Modulus::PowerGap(r.clone()),
            Some(_) => {
                return Err(Error::NoNullCertificate(format!(
                    "({r})^n does not tend to 0 in {id}: {r} is not infinitesimal, so its powers stay above every 1/X^k",
                    r = s.render(r),
                    id = s.id()
                )))
            }
            None => return Err(Error::NoNullCertificate(format!("{} is not Archimedean and r has no degree", s.id()))),
        }
    };
    Ok(ConvergenceCertificate::derived(seq, s.zero(), modulus, "power_null", vec![]))
}

/// `c·x_n → c·a`.
pub fn scaled_certificate<S: OrderedHemiring>(
    s: &S,
    c: &S::Elem,
    x: &ConvergenceCertificate<S::Elem>,
) -> Result<ConvergenceCertificate<S::Elem>> {
    let seq = x.sequence.clone().scaled(c.clone());
    let limit = s.mul(c, &x.limit);
    let modulus = if s.is_zero(c) {
        Modulus::Constant(0)
    } else {
        require_shrinkable(s)?;
        Modulus::shrink(s.abs(c), Side::Right, x.modulus.clone())
    };
    Ok(ConvergenceCertificate::derived(seq, limit, modulus, "scaled", x.assumptions.clone()))
}

/// The constant sequence `c`.
pub fn constant_certificate<S: OrderedHemiring>(s: &S, c: &S::Elem) -> Result<ConvergenceCertificate<S::Elem>> {
    let seq = SymbolicSequence::geometric(unit(s)?).scaled(c.clone());
    Ok(ConvergenceCertificate::derived(seq, c.clone(), Modulus::Constant(0), "constant", vec![]))
}

/// A convergent sequence is Cauchy with modulus `max(N(β), N(γ))`.
pub fn cauchy_from_convergence<S: OrderedHemiring>(
    s: &S,
    x: &ConvergenceCertificate<S::Elem>,
) -> Result<CauchyCertificate<S::Elem>> {
    require_dense(s)?;
    Ok(CauchyCertificate::derived(
        GroupSequence::Scalar(x.sequence.clone()),
        Modulus::split(x.modulus.clone(), x.modulus.clone()),
        "cauchy_from_convergence",
        x.assumptions.clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{int, rat, Rational, RationalField, Z1pRing, ZxField};
    use crate::sequences::{validate_cauchy, validate_convergence};

    fn ladder() -> Vec<Rational> {
        (1..=6).map(|k| rat(1, 10i64.pow(k))).collect()
    }

    fn q_cert(text: &str, limit: Rational, modulus: Modulus<Rational>) -> ConvergenceCertificate<Rational> {
        ConvergenceCertificate::claimed(SymbolicSequence::expr(text).unwrap(), limit, modulus)
    }

    #[test]
    fn bounds() {
        let q = RationalField;
        let g = power_null_certificate(&q, &rat(1, 2)).unwrap();
        assert_eq!(bound_from_certificate(&q, &g, &rat(1, 2)).unwrap(), int(1));
        let z = constant_certificate(&q, &int(0)).unwrap();
        assert_eq!(bound_from_certificate(&q, &z, &int(1)).unwrap(), int(1));
        let c = constant_certificate(&q, &int(-3)).unwrap();
        assert_eq!(bound_from_certificate(&q, &c, &rat(1, 4)).unwrap(), rat(13, 4));
    }

    #[test]
    fn power_null_examples() {
        let q = RationalField;
        let c = power_null_certificate(&q, &rat(1, 2)).unwrap();
        assert_eq!(c.modulus.eval(&q, &rat(1, 1000)).unwrap(), 1001);
        assert!(validate_convergence(&q, &c, &ladder(), 64).unwrap().pass);
        let zero = power_null_certificate(&q, &int(0)).unwrap();
        assert_eq!(zero.modulus, Modulus::Constant(1));
        let z = ZxField;
        let c = power_null_certificate(&z, &z.parse("1/X").unwrap()).unwrap();
        assert_eq!(c.modulus.eval(&z, &z.parse("1/X^3").unwrap()).unwrap(), 4);
        assert!(matches!(
            power_null_certificate(&z, &z.parse("1/2").unwrap()),
            Err(Error::NoNullCertificate(_))
        ));
        let d = Z1pRing::new(2).unwrap();
        let c = power_null_certificate(&d, &d.parse("3/4").unwrap()).unwrap();
        assert_eq!(c.modulus, Modulus::PowerGap(d.parse("3/4").unwrap()));
    }

    #[test]
    fn sum_and_product() {
        let q = RationalField;
        let x = power_null_certificate(&q, &rat(1, 2)).unwrap();
        let y = power_null_certificate(&q, &rat(1, 3)).unwrap();
        let s = sum_certificate(&q, &x, &y).unwrap();
        assert!(validate_convergence(&q, &s, &ladder(), 64).unwrap().pass);

        let a = q_cert("1 + (1/2)^n", int(1), Modulus::Bernoulli(rat(1, 2)));
        let b = q_cert("2 - (1/3)^n", int(2), Modulus::Bernoulli(rat(1, 3)));
        let p = product_certificate(&q, &a, &b).unwrap();
        assert_eq!(p.limit, int(2));
        let r = validate_convergence(&q, &p, &[rat(1, 10), rat(1, 1_000_000)], 64).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn bounded_branch() {
        let q = RationalField;
        let x = power_null_certificate(&q, &rat(1, 2)).unwrap();
        let y = SymbolicSequence::expr("(-1)^n").unwrap();
        let c = bounded_times_null_certificate(&q, &x, &y, &int(1)).unwrap();
        assert!(validate_convergence(&q, &c, &ladder(), 64).unwrap().pass);
        assert!(matches!(
            bounded_times_null_certificate(&q, &x, &y, &int(0)),
            Err(Error::NonPositiveBound(_))
        ));
        assert!(matches!(
            bounded_times_null_certificate(&q, &x, &SymbolicSequence::expr("n").unwrap(), &int(5)),
            Err(Error::BoundViolatedOnProbe(6))
        ));
        let z = ZxField;
        let nx = power_null_certificate(&z, &z.parse("1/X^2").unwrap()).unwrap();
        let yx = SymbolicSequence::expr("X").unwrap();
        let c = bounded_times_null_certificate(&z, &nx, &yx, &z.parse("X").unwrap()).unwrap();
        let eps: Vec<_> = (1..=6).map(|k| z.parse(&format!("1/X^{k}")).unwrap()).collect();
        assert!(validate_convergence(&z, &c, &eps, 64).unwrap().pass);
    }

    #[test]
    fn zx_sum() {
        let z = ZxField;
        let x = power_null_certificate(&z, &z.parse("1/X").unwrap()).unwrap();
        let y = power_null_certificate(&z, &z.parse("1/X^2").unwrap()).unwrap();
        let s = sum_certificate(&z, &x, &y).unwrap();
        assert!(validate_convergence(&z, &s, &[z.parse("1/X^4").unwrap()], 64).unwrap().pass);
    }

    #[test]
    fn scaled_and_cauchy() {
        let q = RationalField;
        let x = power_null_certificate(&q, &rat(-2, 3)).unwrap();
        let c = scaled_certificate(&q, &int(-7), &x).unwrap();
        assert!(validate_convergence(&q, &c, &ladder(), 64).unwrap().pass);
        let a = q_cert("3 + 1/n", int(3), Modulus::Archimedean(int(1)));
        let ca = cauchy_from_convergence(&q, &a).unwrap();
        assert!(validate_cauchy(&q, &ca, &ladder(), 64).unwrap().pass);
    }
}
