use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::laws::{LawFailure, LawReport};
use crate::order::OrderedHemiring;
use crate::sequences::{term, window_sum, CauchyCertificate, GroupSequence, Index, Modulus, SymbolicSequence};

use super::{check_monotone, probe_note, require};

/// `i ↦ 2ⁱ·x_{2ⁱ}` from `i = 0`.
pub fn condense<E: Clone>(x: SymbolicSequence<E>) -> SymbolicSequence<E> {
    crate::sequences::condense(x)
}

fn summands_of<E: Clone>(cert: &CauchyCertificate<E>) -> Result<&SymbolicSequence<E>> {
    match &cert.subject {
        GroupSequence::Scalar(SymbolicSequence::PartialSums(x)) => Ok(x),
        _ => Err(Error::InvalidInputCertificate("expected a Cauchy certificate for partial sums".into())),
    }
}

fn check_terms<S: OrderedHemiring>(s: &S, x: &SymbolicSequence<S::Elem>, window_end: Index) -> Result<(bool, String)> {
    if x.start() > 1 {
        return Err(Error::InvalidInputCertificate(format!(
            "terms start at {}, condensation needs x_1",
            x.start()
        )));
    }
    let zero = check_monotone(s, x, window_end, false)?;
    Ok((zero, probe_note("x_n >= 0 and x_(n+1) <= x_n", x.start(), window_end)))
}

/// From a Cauchy certificate for `Σ x_i` to one for `Σ 2ⁱ x_{2ⁱ}`.
///
/// With `N₁ = max(N(β), N(γ))` for `β + γ < ε`, the condensed partial sums are
/// `ε`-close beyond the least `k` with `2^{k−1} + 1 ≥ N₁`.
pub fn condensation_forward<S: OrderedHemiring>(
    s: &S,
    cert: &CauchyCertificate<S::Elem>,
    window_end: Index,
) -> Result<CauchyCertificate<S::Elem>> {
    require(s, true, true)?;
    let x = summands_of(cert)?;
    let (zero, note) = check_terms(s, x, window_end)?;
    let modulus = if zero {
        Modulus::Constant(1)
    } else {
        Modulus::split(cert.modulus.clone(), cert.modulus.clone()).log2_shift()
    };
    let mut assumptions = cert.assumptions.clone();
    assumptions.push(note);
    Ok(CauchyCertificate::derived(
        GroupSequence::Scalar(condense(x.clone()).partial_sums()),
        modulus,
        "condensation_forward",
        assumptions,
    ))
}

/// From a Cauchy certificate for `Σ 2ⁱ x_{2ⁱ}` to one for `Σ x_i`, with modulus `2^{N_c(ε) + 1}`.
pub fn condensation_backward<S: OrderedHemiring>(
    s: &S,
    cert: &CauchyCertificate<S::Elem>,
    window_end: Index,
) -> Result<CauchyCertificate<S::Elem>> {
    require(s, true, true)?;
    let x = match summands_of(cert)? {
        SymbolicSequence::Condensed(x) => &**x,
        _ => {
            return Err(Error::InvalidInputCertificate(
                "expected a Cauchy certificate for condensed partial sums".into(),
            ))
        }
    };
    let (zero, note) = check_terms(s, x, window_end)?;
    let modulus = if zero {
        Modulus::Constant(1)
    } else {
        cert.modulus.clone().offset(1).exp_shift()
    };
    let mut assumptions = cert.assumptions.clone();
    assumptions.push(note);
    Ok(CauchyCertificate::derived(
        GroupSequence::Scalar(x.clone().partial_sums()),
        modulus,
        "condensation_backward",
        assumptions,
    ))
}

/// Forward then backward.
pub fn condensation_roundtrip<S: OrderedHemiring>(
    s: &S,
    cert: &CauchyCertificate<S::Elem>,
    window_end: Index,
) -> Result<CauchyCertificate<S::Elem>> {
    let forward = condensation_forward(s, cert, window_end)?;
    let mut back = condensation_backward(s, &forward, window_end)?;
    back.origin = "condensation_roundtrip".into();
    Ok(back)
}

/// Rechecks `2ⁿx_{2ⁿ} ≤ 2·Σ_{i=2^{n−1}+1}^{2ⁿ} x_i` for `1 ≤ n ≤ n_max` and
/// `Σ_{i=2ⁿ}^{2^{n+1}−1} x_i ≤ 2ⁿx_{2ⁿ}` for `0 ≤ n ≤ n_max`.
pub fn condensation_inequalities<S: OrderedHemiring>(
    s: &S,
    x: &SymbolicSequence<S::Elem>,
    n_max: u32,
) -> Result<Vec<LawReport>> {
    let two = BigUint::from(2u32);
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for n in 0..=n_max {
        let p: Index = 1 << n;
        let lhs = s.times(&BigUint::from(p), &term(s, x, p)?);
        if n >= 1 {
            let block = window_sum(s, x, p / 2, p)?;
            let rhs = s.times(&two, &block);
            if !s.le(&lhs, &rhs) {
                upper.push(LawFailure {
                    inputs: vec![n.to_string()],
                    expected: format!("<= {}", s.render(&rhs)),
                    observed: s.render(&lhs),
                });
            }
        }
        let block = window_sum(s, x, p - 1, 2 * p - 1)?;
        if !s.le(&block, &lhs) {
            lower.push(LawFailure {
                inputs: vec![n.to_string()],
                expected: format!("<= {}", s.render(&lhs)),
                observed: s.render(&block),
            });
        }
    }
    Ok(vec![
        LawReport::from_failures("condensation_upper", n_max as usize, 0, upper),
        LawReport::from_failures("condensation_lower", n_max as usize + 1, 0, lower),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{int, rat, Rational, RationalField};
    use crate::sequences::{cauchy_from_convergence, validate_cauchy};
    use crate::theorems::geometric_sum;

    fn ladder() -> Vec<Rational> {
        (1..=6).map(|k| rat(1, 10i64.pow(k))).collect()
    }

    fn half_series() -> CauchyCertificate<Rational> {
        let q = RationalField;
        let g = geometric_sum(&q, &rat(1, 2)).unwrap();
        let mut c = cauchy_from_convergence(&q, &g.certificate).unwrap();
        c.subject = GroupSequence::Scalar(SymbolicSequence::expr("(1/2)^n").unwrap().partial_sums());
        c
    }

    #[test]
    fn forward_backward_roundtrip() {
        let q = RationalField;
        let c = half_series();
        let end = super::super::precondition_window(&q, &c.modulus, &ladder(), 64);
        assert_eq!(end, 4096);
        let f = condensation_forward(&q, &c, end).unwrap();
        assert!(validate_cauchy(&q, &f, &ladder(), 64).unwrap().pass);
        let b = condensation_backward(&q, &f, end).unwrap();
        let r = validate_cauchy(&q, &b, &ladder(), 64).unwrap();
        assert!(r.pass, "{r:?}");
        let rt = condensation_roundtrip(&q, &c, end).unwrap();
        assert_eq!(rt.subject, c.subject);
        assert!(validate_cauchy(&q, &rt, &ladder(), 64).unwrap().pass);
    }

    #[test]
    fn preconditions() {
        let q = RationalField;
        let c = CauchyCertificate::claimed(
            GroupSequence::Scalar(SymbolicSequence::expr("n").unwrap().partial_sums()),
            Modulus::Constant(1),
        );
        assert_eq!(condensation_forward(&q, &c, 256), Err(Error::NotDecreasingOnProbe(2)));
        let zero = CauchyCertificate::claimed(
            GroupSequence::Scalar(SymbolicSequence::expr("0").unwrap().partial_sums()),
            Modulus::Constant(7),
        );
        assert_eq!(condensation_forward(&q, &zero, 256).unwrap().modulus, Modulus::Constant(1));
        assert_eq!(condensation_backward(&q, &zero, 256).unwrap_err(), Error::InvalidInputCertificate(
            "expected a Cauchy certificate for condensed partial sums".into()
        ));
    }

    #[test]
    fn inequalities() {
        let q = RationalField;
        for text in ["(1/2)^n", "1/n", "1/n^2", "0"] {
            let x = SymbolicSequence::expr(text).unwrap();
            for r in condensation_inequalities(&q, &x, 10).unwrap() {
                assert!(r.passed(), "{text}: {r:?}");
            }
        }
        let up = SymbolicSequence::expr("n").unwrap();
        assert!(!condensation_inequalities(&q, &up, 4).unwrap()[1].passed());
        assert_eq!(term(&q, &condense(SymbolicSequence::expr("(1/2)^n").unwrap()), 3).unwrap(), rat(1, 32));
        assert_eq!(term(&q, &condense(SymbolicSequence::<Rational>::expr("0").unwrap()), 5).unwrap(), int(0));
    }
}
