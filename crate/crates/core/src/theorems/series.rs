use crate::error::{Error, Result};
use crate::laws::{LawFailure, LawReport};
use crate::order::OrderedHemiring;
use crate::parse::TermExpression;
use crate::sequences::{
    power_null_certificate, term, CauchyCertificate, ConvergenceCertificate, GroupSequence, Index, Modulus, Side,
    SymbolicSequence,
};

use super::{check_monotone, negate, probe_note, require, unit};

fn partial_sum_summands<E: Clone>(cert: &CauchyCertificate<E>, what: &str) -> Result<SymbolicSequence<E>> {
    match &cert.subject {
        GroupSequence::Scalar(SymbolicSequence::PartialSums(x)) => Ok((**x).clone()),
        _ => Err(Error::InvalidInputCertificate(format!("{what} must certify scalar partial sums"))),
    }
}

/// `Σ_j |x_{j,n}|`.
fn group_norm<S: OrderedHemiring>(s: &S, x: &GroupSequence<S::Elem>, n: Index) -> Result<S::Elem> {
    let mut acc = s.zero();
    for c in x.components() {
        acc = s.add(&acc, &s.abs(&term(s, c, n)?));
    }
    Ok(acc)
}

/// `Σ y` is Cauchy when `x_n ≤ y_n ≤ z_n` from `N₁` on and `Σ x`, `Σ z` are Cauchy;
/// the modulus is `max(N₁, N_x(ε), N_z(ε))`.
pub fn squeeze_series<S: OrderedHemiring>(
    s: &S,
    cert_x: &CauchyCertificate<S::Elem>,
    cert_z: &CauchyCertificate<S::Elem>,
    y: &SymbolicSequence<S::Elem>,
    n1: Index,
    window_end: Index,
) -> Result<CauchyCertificate<S::Elem>> {
    require(s, true, true)?;
    let x = partial_sum_summands(cert_x, "lower certificate")?;
    let z = partial_sum_summands(cert_z, "upper certificate")?;
    let from = n1.max(x.start()).max(y.start()).max(z.start());
    for n in from..=window_end.max(from) {
        let (a, b, c) = (term(s, &x, n)?, term(s, y, n)?, term(s, &z, n)?);
        if !(s.le(&a, &b) && s.le(&b, &c)) {
            return Err(Error::SandwichViolatedOnProbe(n));
        }
    }
    let mut assumptions = cert_x.assumptions.clone();
    assumptions.extend(cert_z.assumptions.iter().cloned());
    assumptions.push(probe_note("x_n <= y_n <= z_n", from, window_end.max(from)));
    Ok(CauchyCertificate::derived(
        GroupSequence::Scalar(y.clone().partial_sums()),
        Modulus::max_of(vec![Modulus::Constant(n1), cert_x.modulus.clone(), cert_z.modulus.clone()]),
        "squeeze",
        assumptions,
    ))
}

fn sign_sequence<E: Clone>(start: Index) -> SymbolicSequence<E> {
    SymbolicSequence::Expr {
        term: TermExpression::parse("(-1)^(n+1)").expect("fixed text"),
        start,
    }
}

/// `s_n = Σ (−1)^{i+1} x_i` is Cauchy for positive strictly decreasing `x_n → 0`;
/// `|s_n − s_m| ≤ x_{m+1}` gives the modulus `N_x(ε) + 1`.
pub fn alternating_cauchy<S: OrderedHemiring>(
    s: &S,
    x: &SymbolicSequence<S::Elem>,
    null_cert: &ConvergenceCertificate<S::Elem>,
    window_end: Index,
) -> Result<CauchyCertificate<S::Elem>> {
    require(s, false, true)?;
    if !s.is_zero(&null_cert.limit) {
        return Err(Error::InvalidInputCertificate(format!(
            "null certificate has limit {}",
            s.render(&null_cert.limit)
        )));
    }
    if null_cert.sequence != *x {
        return Err(Error::InvalidInputCertificate(
            "null certificate is for a different sequence".into(),
        ));
    }
    check_monotone(s, x, window_end, true)?;
    let mut assumptions = null_cert.assumptions.clone();
    assumptions.push(probe_note("0 < x_(n+1) < x_n", x.start(), window_end));
    Ok(CauchyCertificate::derived(
        GroupSequence::Scalar(sign_sequence(x.start()).times(x.clone()).partial_sums()),
        null_cert.modulus.clone().offset(1),
        "alternating",
        assumptions,
    ))
}

/// Rechecks `|s_n − s_m| ≤ x_{m+1}` for the alternating partial sums, `m < n ≤ n_max`.
pub fn alternating_bound_check<S: OrderedHemiring>(
    s: &S,
    x: &SymbolicSequence<S::Elem>,
    n_max: Index,
) -> Result<LawReport> {
    let start = x.start();
    let one = unit(s)?;
    let minus = negate(s, &one)?;
    let mut terms = Vec::new();
    let mut sums = Vec::new();
    let mut acc = s.zero();
    for i in start..=n_max + 1 {
        let v = term(s, x, i)?;
        let signed = if (i + 1) % 2 == 0 { v.clone() } else { s.mul(&minus, &v) };
        if i <= n_max {
            acc = s.add(&acc, &signed);
            sums.push(acc.clone());
        }
        terms.push(v);
    }
    let mut failures = Vec::new();
    let mut count = 0;
    for m in 0..sums.len() {
        for n in m + 1..sums.len() {
            count += 1;
            let diff = s.abs(&s.add(&sums[n], &negate(s, &sums[m])?));
            let bound = &terms[m + 1];
            if !s.le(&diff, bound) {
                failures.push(LawFailure {
                    inputs: vec![(start + m as Index).to_string(), (start + n as Index).to_string()],
                    expected: format!("<= {}", s.render(bound)),
                    observed: s.render(&diff),
                });
            }
        }
    }
    Ok(LawReport::from_failures("alternating_bound", count, 0, failures))
}

/// `Σ x` is Cauchy with the modulus of `Σ ‖x_i‖`.
pub fn absolute_to_plain<S: OrderedHemiring>(
    s: &S,
    abs_cert: &CauchyCertificate<S::Elem>,
    x: &GroupSequence<S::Elem>,
    window_end: Index,
) -> Result<CauchyCertificate<S::Elem>> {
    let a = partial_sum_summands(abs_cert, "absolute certificate")?;
    let from = a.start().max(x.start());
    for n in from..=window_end.max(from) {
        if s.gt(&group_norm(s, x, n)?, &term(s, &a, n)?) {
            return Err(Error::NormMismatchOnProbe(n));
        }
    }
    let mut assumptions = abs_cert.assumptions.clone();
    assumptions.push(probe_note("||x_n|| <= a_n", from, window_end.max(from)));
    Ok(CauchyCertificate::derived(
        x.partial_sums(),
        abs_cert.modulus.clone(),
        "absolute_to_plain",
        assumptions,
    ))
}

/// Output of the ratio test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioResult<E> {
    pub certificate: CauchyCertificate<E>,
    pub power_null: ConvergenceCertificate<E>,
    pub one_minus_r_inverse: E,
    /// `‖x₀‖·(1 − r)⁻¹`, which bounds `‖Σ_{k>m} x_k‖ / r^{m+1}`.
    pub tail_constant: E,
    /// The probed sequence; `x₀·rⁿ` when none was supplied.
    pub sequence: GroupSequence<E>,
}

/// `Σ x_n` is Cauchy when `‖x_{n+1}‖ ≤ r‖x_n‖` and `Σ rⁿ` converges.
///
/// The tail bound `‖Σ_{k=m+1}^{n} x_k‖ ≤ ‖x₀‖·r^{m+1}·(1 − r)⁻¹` makes the modulus the
/// power modulus at the shrink witness against `‖x₀‖·(1 − r)⁻¹`, offset by the start index.
pub fn ratio_test<S: OrderedHemiring>(
    s: &S,
    x0_norm: &S::Elem,
    r: &S::Elem,
    x: Option<&GroupSequence<S::Elem>>,
    window_end: Index,
) -> Result<RatioResult<S::Elem>> {
    require(s, true, true)?;
    let one = unit(s)?;
    if *r == one {
        return Err(Error::ROne);
    }
    let d = s.add(&one, &negate(s, r)?);
    let inv = s.invert(&d).map_err(|_| Error::NotInvertible(format!("1 - r = {}", s.render(&d))))?;
    let power_null = power_null_certificate(s, r)?;
    let sequence = match x {
        Some(x) => x.clone(),
        None => GroupSequence::Scalar(SymbolicSequence::geometric(r.clone()).scaled(x0_norm.clone())),
    };
    let start = sequence.start();
    if s.gt(&group_norm(s, &sequence, start)?, x0_norm) {
        return Err(Error::RatioViolatedOnProbe(start));
    }
    let mut prev = group_norm(s, &sequence, start)?;
    for n in start + 1..=window_end.max(start + 1) {
        let cur = group_norm(s, &sequence, n)?;
        if s.gt(&cur, &s.mul(r, &prev)) {
            return Err(Error::RatioViolatedOnProbe(n));
        }
        prev = cur;
    }
    let c = s.mul(x0_norm, &inv);
    let modulus = if s.is_zero(&c) {
        Modulus::Constant(start)
    } else {
        Modulus::shrink(c.clone(), Side::Right, power_null.modulus.clone()).offset(start)
    };
    let certificate = CauchyCertificate::derived(
        sequence.partial_sums(),
        modulus,
        "ratio_test",
        vec![probe_note("||x_(n+1)|| <= r ||x_n||", start, window_end.max(start + 1))],
    );
    Ok(RatioResult {
        certificate,
        power_null,
        one_minus_r_inverse: inv,
        tail_constant: c,
        sequence,
    })
}

/// Rechecks `(1 − r)·Σ_{k=m+1}^{n} rᵏ = r^{m+1} − r^{n+1}` for `m < n ≤ n_max`.
pub fn tail_identity_check<S: OrderedHemiring>(s: &S, r: &S::Elem, n_max: usize) -> Result<LawReport> {
    let one = unit(s)?;
    let d = s.add(&one, &negate(s, r)?);
    let mut powers = vec![one];
    for k in 1..=n_max + 1 {
        let next = s.mul(&powers[k - 1], r);
        powers.push(next);
    }
    let mut failures = Vec::new();
    let mut count = 0;
    for m in 0..n_max {
        let mut sum = s.zero();
        for n in m + 1..=n_max {
            sum = s.add(&sum, &powers[n]);
            count += 1;
            let lhs = s.mul(&d, &sum);
            let rhs = s.add(&powers[m + 1], &negate(s, &powers[n + 1])?);
            if lhs != rhs {
                failures.push(LawFailure {
                    inputs: vec![s.render(r), m.to_string(), n.to_string()],
                    expected: s.render(&rhs),
                    observed: s.render(&lhs),
                });
            }
        }
    }
    Ok(LawReport::from_failures("ratio_tail_identity", count, 0, failures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{int, rat, Rational, RationalField, ZxField};
    use crate::sequences::{cauchy_from_convergence, power_null_certificate, validate_cauchy};
    use crate::theorems::geometric_sum;

    fn ladder() -> Vec<Rational> {
        (1..=6).map(|k| rat(1, 10i64.pow(k))).collect()
    }

    fn series_cert(r: Rational) -> CauchyCertificate<Rational> {
        let g = geometric_sum(&RationalField, &r).unwrap();
        cauchy_from_convergence(&RationalField, &g.certificate).unwrap()
    }

    #[test]
    fn squeeze_q() {
        let q = RationalField;
        let zero = CauchyCertificate::claimed(
            GroupSequence::Scalar(SymbolicSequence::expr_from("0", 0).unwrap().partial_sums()),
            Modulus::Constant(0),
        );
        let z = series_cert(rat(1, 2));
        let y = SymbolicSequence::geometric(rat(1, 3));
        let c = squeeze_series(&q, &zero, &z, &y, 1, 256).unwrap();
        assert!(validate_cauchy(&q, &c, &ladder(), 64).unwrap().pass);
        let bad = SymbolicSequence::geometric(rat(2, 3));
        assert_eq!(squeeze_series(&q, &zero, &z, &bad, 1, 256), Err(Error::SandwichViolatedOnProbe(1)));
    }

    #[test]
    fn squeeze_zx() {
        let z = ZxField;
        let zero = CauchyCertificate::claimed(
            GroupSequence::Scalar(SymbolicSequence::expr("0").unwrap().partial_sums()),
            Modulus::Constant(0),
        );
        let g = geometric_sum(&z, &z.parse("1/X").unwrap()).unwrap();
        let mut upper = cauchy_from_convergence(&z, &g.certificate).unwrap();
        upper.subject = GroupSequence::Scalar(SymbolicSequence::expr("(1/X)^n").unwrap().partial_sums());
        let y = SymbolicSequence::expr("(1/X^2)^n").unwrap();
        let c = squeeze_series(&z, &zero, &upper, &y, 1, 256).unwrap();
        let eps: Vec<_> = (1..=6).map(|k| z.parse(&format!("1/X^{k}")).unwrap()).collect();
        assert!(validate_cauchy(&z, &c, &eps, 64).unwrap().pass);
    }

    #[test]
    fn alternating() {
        let q = RationalField;
        let x = SymbolicSequence::expr("1/n").unwrap().with_table(vec![int(1), rat(1, 2), rat(1, 3)]);
        let null = ConvergenceCertificate::claimed(x.clone(), int(0), Modulus::Archimedean(int(1)));
        let c = alternating_cauchy(&q, &x, &null, 256).unwrap();
        let r = validate_cauchy(&q, &c, &ladder(), 64).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(alternating_bound_check(&q, &x, 128).unwrap().passed());
        let g = power_null_certificate(&q, &rat(1, 2)).unwrap();
        let c = alternating_cauchy(&q, &g.sequence, &g, 256).unwrap();
        assert!(validate_cauchy(&q, &c, &ladder(), 64).unwrap().pass);
        let k = SymbolicSequence::expr("1").unwrap();
        let kc = ConvergenceCertificate::claimed(k.clone(), int(0), Modulus::Constant(1));
        assert_eq!(alternating_cauchy(&q, &k, &kc, 256), Err(Error::NotStrictlyDecreasingOnProbe(2)));
    }

    #[test]
    fn absolute() {
        let q = RationalField;
        let abs = series_cert(rat(1, 2));
        let x = GroupSequence::Scalar(SymbolicSequence::expr("(-1)^n*(1/2)^n").unwrap());
        let c = absolute_to_plain(&q, &abs, &x, 256).unwrap();
        assert!(validate_cauchy(&q, &c, &ladder(), 64).unwrap().pass);
        let v = GroupSequence::Vector(vec![
            SymbolicSequence::expr("(1/2)^n").unwrap().scaled(rat(1, 2)),
            SymbolicSequence::expr("-(1/3)^n").unwrap().scaled(rat(1, 2)),
        ]);
        let c = absolute_to_plain(&q, &abs, &v, 256).unwrap();
        assert!(validate_cauchy(&q, &c, &ladder(), 64).unwrap().pass);
        let too_big = GroupSequence::Scalar(SymbolicSequence::expr("2*(1/2)^n").unwrap());
        assert_eq!(absolute_to_plain(&q, &abs, &too_big, 256), Err(Error::NormMismatchOnProbe(1)));
    }

    #[test]
    fn ratio() {
        let q = RationalField;
        let v = GroupSequence::Vector(vec![
            SymbolicSequence::geometric(rat(1, 2)),
            SymbolicSequence::geometric(rat(1, 2)).scaled(rat(1, 2)),
        ]);
        let res = ratio_test(&q, &rat(3, 2), &rat(1, 2), Some(&v), 256).unwrap();
        let r = validate_cauchy(&q, &res.certificate, &ladder(), 64).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(tail_identity_check(&q, &rat(1, 2), 64).unwrap().passed());
        let zero = ratio_test(&q, &int(0), &rat(1, 2), None, 64).unwrap();
        assert_eq!(zero.certificate.modulus, Modulus::Constant(0));
        assert!(matches!(ratio_test(&q, &int(1), &int(2), None, 64), Err(Error::NoNullCertificate(_))));
        assert_eq!(
            ratio_test(&q, &int(1), &rat(1, 2), Some(&GroupSequence::Scalar(SymbolicSequence::geometric(rat(2, 3)))), 64),
            Err(Error::RatioViolatedOnProbe(1))
        );
    }
}
