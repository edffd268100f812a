use num_traits::{Signed, Zero};
use proptest::prelude::*;

use hemiring::instances::{int, rat, Rational, RationalField, ZxField};
use hemiring::order::OrderedHemiring;
use hemiring::sequences::wire::{certificate_from_json, convergence_to_json, CertificateDoc};
use hemiring::sequences::{
    bound_from_certificate, partial_sum, power_null_certificate, product_certificate, scaled_certificate,
    sum_certificate, term, validate_convergence, ConvergenceCertificate, SymbolicSequence,
};
use hemiring::theorems::{bernoulli_check, condensation_inequalities, BernoulliMode};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=40).prop_map(|(n, d)| rat(n, d))
}

/// Rationals strictly inside (-1, 1).
fn contraction() -> impl Strategy<Value = Rational> {
    (-29i64..=29, 30i64..=60).prop_map(|(n, d)| rat(n, d))
}

fn nonneg() -> impl Strategy<Value = Rational> {
    (0i64..=50, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn geometric_identity_matches_direct_sum(r in small_rational(), n in 0u128..40) {
        prop_assume!(r != int(1));
        let q = RationalField;
        let s_n = partial_sum(&q, &SymbolicSequence::geometric(r.clone()), n).unwrap();
        let mut direct = int(0);
        let mut p = int(1);
        for _ in 0..=n {
            direct += &p;
            p *= &r;
        }
        prop_assert_eq!(&s_n, &direct);
        prop_assert_eq!((int(1) - &r) * s_n, int(1) - p);
    }

    #[test]
    fn null_limits_are_annihilated(r in contraction()) {
        let q = RationalField;
        let c = power_null_certificate(&q, &r).unwrap();
        let eps = [rat(1, 10), rat(1, 1000)];
        prop_assert!(validate_convergence(&q, &c, &eps, 16).unwrap().pass);
        prop_assert!((&c.limit * (&r - int(1))).is_zero());
        prop_assert!(c.limit.is_zero());
    }

    #[test]
    fn bernoulli_single_power(x in nonneg(), n in 0u64..=64) {
        let lhs = (int(1) + &x).pow(n as i32);
        prop_assert!(lhs >= int(1) + int(n as i64) * &x);
        let r = bernoulli_check(&RationalField, &[vec![x]], BernoulliMode::SinglePower(n)).unwrap();
        prop_assert!(r.passed());
    }

    #[test]
    fn bernoulli_products(xs in prop::collection::vec(nonneg(), 1..6), neg in prop::collection::vec(0i64..=10, 1..6)) {
        let q = RationalField;
        prop_assert!(bernoulli_check(&q, &[xs], BernoulliMode::RingAllNonneg).unwrap().passed());
        let ys: Vec<Rational> = neg.into_iter().map(|k| rat(-k, 10)).collect();
        let lhs: Rational = ys.iter().map(|y| int(1) + y).product();
        let rhs = int(1) + ys.iter().sum::<Rational>();
        prop_assert!(lhs >= rhs);
        prop_assert!(bernoulli_check(&q, &[ys], BernoulliMode::RingAllNonpos).unwrap().passed());
    }

    #[test]
    fn condensation_inequalities_for_power_decay(c in 1i64..=20, k in 0u32..=3) {
        let x = SymbolicSequence::expr(&format!("{c}/n^{k}")).unwrap();
        for r in condensation_inequalities(&RationalField, &x, 8).unwrap() {
            prop_assert!(r.passed(), "{}", r.law_name);
        }
    }

    #[test]
    fn moduli_are_monotone(r in contraction(), a in 2i64..=1000, b in 2i64..=1000) {
        prop_assume!(!r.is_zero());
        let q = RationalField;
        let c = power_null_certificate(&q, &r).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let big = c.modulus.eval(&q, &rat(1, lo)).unwrap();
        let small = c.modulus.eval(&q, &rat(1, hi)).unwrap();
        prop_assert!(small >= big);
    }

    #[test]
    fn evaluation_is_homomorphic(a in small_rational(), b in small_rational(), n in 1u128..30) {
        let q = RationalField;
        let x = SymbolicSequence::expr("(-1)^n/n").unwrap();
        let y = SymbolicSequence::geometric(rat(1, 3)).scaled(a.clone());
        let z = SymbolicSequence::expr("n^2 - 3").unwrap().scaled(b);
        let (tx, ty, tz) = (term(&q, &x, n).unwrap(), term(&q, &y, n).unwrap(), term(&q, &z, n).unwrap());
        prop_assert_eq!(term(&q, &x.clone().plus(y.clone()), n).unwrap(), &tx + &ty);
        prop_assert_eq!(term(&q, &y.clone().times(z.clone()), n).unwrap(), &ty * &tz);
        prop_assert_eq!(tx, if n % 2 == 0 { rat(1, n as i64) } else { rat(-1, n as i64) });
        prop_assert_eq!(ty, a * rat(1, 3).pow(n as i32));
    }

    #[test]
    fn limits_multiply_and_add(a in small_rational(), b in small_rational(), r in contraction(), s in contraction()) {
        let q = RationalField;
        let x = sum_certificate(&q, &constant(&a), &power_null_certificate(&q, &r).unwrap()).unwrap();
        let y = sum_certificate(&q, &constant(&b), &scaled_certificate(&q, &int(3), &power_null_certificate(&q, &s).unwrap()).unwrap()).unwrap();
        let p = product_certificate(&q, &x, &y).unwrap();
        prop_assert_eq!(&p.limit, &(&a * &b));
        prop_assert_eq!(sum_certificate(&q, &x, &y).unwrap().limit, &a + &b);
        prop_assert!(validate_convergence(&q, &p, &[rat(1, 10), rat(1, 1000)], 16).unwrap().pass);
    }

    #[test]
    fn bound_dominates_terms(a in small_rational(), r in contraction()) {
        let q = RationalField;
        let x = sum_certificate(&q, &constant(&a), &power_null_certificate(&q, &r).unwrap()).unwrap();
        let eps0 = rat(1, 2);
        let bound = bound_from_certificate(&q, &x, &eps0).unwrap();
        let n0 = x.modulus.eval(&q, &eps0).unwrap();
        for n in 0..=n0 + 256 {
            prop_assert!(term(&q, &x.sequence, n).unwrap().abs() <= bound);
        }
    }

    #[test]
    fn certificates_round_trip_through_json(a in small_rational(), r in contraction()) {
        let q = RationalField;
        let x = sum_certificate(&q, &constant(&a), &power_null_certificate(&q, &r).unwrap()).unwrap();
        let v = convergence_to_json(&q, &x);
        match certificate_from_json(&q, &v).unwrap() {
            CertificateDoc::Convergence(back) => {
                prop_assert_eq!(&back.sequence, &x.sequence);
                prop_assert_eq!(&back.limit, &x.limit);
                prop_assert_eq!(&back.modulus, &x.modulus);
            }
            CertificateDoc::Cauchy(_) => prop_assert!(false, "decoded as Cauchy"),
        }
    }
}

fn constant(c: &Rational) -> ConvergenceCertificate<Rational> {
    hemiring::sequences::constant_certificate(&RationalField, c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zx_infinitesimal_powers(k in 1u32..4, c in 1i64..9) {
        let z = ZxField;
        let r = z.parse(&format!("{c}/X^{k}")).unwrap();
        let cert = power_null_certificate(&z, &r).unwrap();
        let eps: Vec<_> = (1..=4).map(|i| z.parse(&format!("1/X^{i}")).unwrap()).collect();
        prop_assert!(validate_convergence(&z, &cert, &eps, 16).unwrap().pass);
    }
}
