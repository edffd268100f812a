//! End-to-end acceptance run: one line per criterion, non-zero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_traits::Signed;

use hemiring::instances::{int, rat, render_rational, MaxTimesQpos, NonNeg, Rational, RationalField, Z1pRing, ZxField};
use hemiring::laws::{check_density_witness, check_hemiring_laws, check_shrink_witness, seeded_rng};
use hemiring::norms::{abs_norm, build_finite_dim_pseudonorm, check_pseudonorm_laws, random_rational_constants};
use hemiring::order::OrderedHemiring;
use hemiring::sequences::{
    cauchy_from_convergence, constant_certificate, partial_sum, power_null_certificate, product_certificate,
    sum_certificate, validate_cauchy, validate_convergence, CauchyCertificate, ConvergenceCertificate, GroupSequence,
    Modulus, SymbolicSequence,
};
use hemiring::theorems::{
    alternating_bound_check, alternating_cauchy, bernoulli_check, condensation_backward, condensation_forward,
    condensation_inequalities, condensation_roundtrip, conv_hom_probe, geometric_identity, geometric_sum,
    precondition_window, random_convergent_certificate, ratio_test, sample_bernoulli_tuples, squeeze_series,
    tail_identity_check, BernoulliMode,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn q_ladder() -> Vec<Rational> {
    (1..=6).map(|k| rat(1, 10i64.pow(k))).collect()
}

fn zx_ladder(z: &ZxField, k: u32) -> Vec<<ZxField as OrderedHemiring>::Elem> {
    (1..=k).map(|i| z.parse(&format!("1/X^{i}")).unwrap()).collect()
}

fn dyadic_ladder(d: &Z1pRing) -> Vec<<Z1pRing as OrderedHemiring>::Elem> {
    ["1/16", "1/128", "1/1024", "1/16384", "1/131072", "1/1048576"]
        .iter()
        .map(|e| d.parse(e).unwrap())
        .collect()
}

fn laws_one<S: OrderedHemiring + 'static>(s: &S) -> Result<(), String> {
    let r = check_hemiring_laws(s, 1000, 42);
    ensure(r.passed(), format!("{}: {} failures", s.id(), r.failure_count()))
}

fn criterion_1() -> Outcome {
    laws_one(&RationalField)?;
    laws_one(&Z1pRing::new(2).unwrap())?;
    laws_one(&Z1pRing::new(3).unwrap())?;
    laws_one(&ZxField)?;
    laws_one(&MaxTimesQpos)?;
    Ok("5 structures x 1000 samples, seed 42, 0 failures".into())
}

/// `e_i e_j = Σ_k γ_ijk e_k`, computed without the library's algebra.
fn oracle_product(gamma: &[Vec<Vec<Rational>>], a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let mut out = vec![int(0); n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[k] += &a[i] * &b[j] * &gamma[i][j][k];
            }
        }
    }
    out
}

fn raw_norm(a: &[Rational]) -> Rational {
    a.iter().map(|x| x.abs()).sum()
}

/// Smallest table with entries in {0, 1, 2, 5} (n = 1, 2) where Σ|aᵢ| fails on basis-vector pairs.
fn raw_violation_search() -> Option<(usize, Vec<Vec<Vec<Rational>>>)> {
    let values = [int(0), int(1), int(2), int(5)];
    for n in 1..=2usize {
        let cells = n * n * n;
        let total = values.len().pow(cells as u32);
        for code in 0..total {
            let mut c = code;
            let mut flat = Vec::with_capacity(cells);
            for _ in 0..cells {
                flat.push(values[c % values.len()].clone());
                c /= values.len();
            }
            let gamma: Vec<Vec<Vec<Rational>>> = (0..n)
                .map(|i| (0..n).map(|j| flat[(i * n + j) * n..(i * n + j + 1) * n].to_vec()).collect())
                .collect();
            for i in 0..n {
                for j in 0..n {
                    let mut a = vec![int(0); n];
                    let mut b = vec![int(0); n];
                    a[i] = int(1);
                    b[j] = int(1);
                    if raw_norm(&oracle_product(&gamma, &a, &b)) > raw_norm(&a) * raw_norm(&b) {
                        return Some((n, gamma));
                    }
                }
            }
        }
    }
    None
}

fn criterion_2() -> Outcome {
    let mut rng = seeded_rng(42);
    for t in 0..50 {
        let constants = random_rational_constants(&mut rng, 4, 10);
        let norm = build_finite_dim_pseudonorm(constants, abs_norm(RationalField).unwrap()).map_err(err)?;
        let report = check_pseudonorm_laws(&norm, 500, 42 + t);
        let sub = report.laws.iter().find(|l| l.law_name == "submultiplicative").ok_or("no submultiplicative law")?;
        ensure(sub.failure_count == 0, format!("table {t}: {} submultiplicativity failures", sub.failure_count))?;
        ensure(report.passed(), format!("table {t}: {} law failures", report.failure_count()))?;
    }
    let (n, gamma) = raw_violation_search().ok_or("no raw-norm counterexample found")?;
    let shown: Vec<String> = gamma.iter().flatten().flatten().map(render_rational).collect();
    Ok(format!(
        "50 tables x 500 pairs, 0 violations; uncorrected norm fails for n = {n}, gamma = [{}]",
        shown.join(", ")
    ))
}

fn witnesses_one<S: OrderedHemiring>(s: &S) -> Result<usize, String> {
    let caps = s.capabilities();
    let mut checked = 0;
    if caps.dense {
        let r = check_density_witness(s, 200, 42).map_err(err)?;
        ensure(r.passed(), format!("{} density: {:?}", s.id(), r.failures))?;
        checked += 1;
    }
    if caps.shrinkable {
        let r = check_shrink_witness(s, 200, 42).map_err(err)?;
        ensure(r.passed(), format!("{} shrink: {:?}", s.id(), r.failures))?;
        checked += 1;
    }
    Ok(checked)
}

fn criterion_3() -> Outcome {
    let mut n = 0;
    n += witnesses_one(&RationalField)?;
    n += witnesses_one(&Z1pRing::new(2).unwrap())?;
    n += witnesses_one(&Z1pRing::new(3).unwrap())?;
    n += witnesses_one(&ZxField)?;
    n += witnesses_one(&MaxTimesQpos)?;
    n += witnesses_one(&NonNeg::new(RationalField).unwrap())?;
    n += witnesses_one(&NonNeg::new(ZxField).unwrap())?;
    ensure(n >= 10, format!("only {n} witness suites ran"))?;
    Ok(format!("{n} witness suites x 200 samples, 0 failures"))
}

fn criterion_4() -> Outcome {
    let q = RationalField;
    let g = geometric_sum(&q, &rat(1, 2)).map_err(err)?;
    ensure(g.sum == int(2), format!("sum {}", g.sum))?;
    let s20 = partial_sum(&q, g.certificate.sequence.summands().unwrap(), 19).map_err(err)?;
    ensure((int(2) - &s20).abs() == rat(1, 1 << 19), format!("s20 = {s20}"))?;
    ensure(validate_convergence(&q, &g.certificate, &q_ladder(), 64).map_err(err)?.pass, "Q certificate")?;
    ensure(geometric_identity(&q, &rat(1, 2), 64).map_err(err)?.passed(), "Q identity")?;

    let z = ZxField;
    let r = z.parse("1/X").unwrap();
    let g = geometric_sum(&z, &r).map_err(err)?;
    ensure(g.sum == z.parse("X/(X-1)").unwrap(), format!("zx sum {}", z.render(&g.sum)))?;
    let report = validate_convergence(&z, &g.certificate, &zx_ladder(&z, 5), 64).map_err(err)?;
    ensure(report.pass, format!("zx certificate: {} violations", report.violation_count))?;
    ensure(geometric_identity(&z, &r, 64).map_err(err)?.passed(), "zx identity")?;
    Ok("sum 2, |s20 - 2| = 1/524288; zx sum X/(X-1) validates at 1/X..1/X^5; identities n <= 64".into())
}

fn criterion_5() -> Outcome {
    let z = ZxField;
    let half = z.parse("1/2").unwrap();
    let eps = vec![z.parse("1/X").unwrap()];
    let seq = SymbolicSequence::geometric(half.clone());
    let moduli = vec![
        Modulus::Constant(0),
        Modulus::Constant(1),
        Modulus::Constant(1000),
        Modulus::Constant(5000),
    ];
    let mut total = 0;
    for m in moduli {
        let cert = ConvergenceCertificate::claimed(seq.clone(), z.zero(), m.clone());
        let r = validate_convergence(&z, &cert, &eps, 64).map_err(err)?;
        ensure(!r.pass, format!("{m:?} passed"))?;
        ensure(
            r.violation_count == r.checked && r.checked == 65,
            format!("{m:?}: {} violations of {} probes", r.violation_count, r.checked),
        )?;
        total += r.checked;
    }
    Ok(format!("4 claimed moduli, violation at all {total} probed indices"))
}

fn half_series() -> Result<CauchyCertificate<Rational>, String> {
    let q = RationalField;
    let g = geometric_sum(&q, &rat(1, 2)).map_err(err)?;
    let mut c = cauchy_from_convergence(&q, &g.certificate).map_err(err)?;
    c.subject = GroupSequence::Scalar(SymbolicSequence::expr("(1/2)^n").unwrap().partial_sums());
    Ok(c)
}

fn criterion_6() -> Outcome {
    let q = RationalField;
    let eps = q_ladder();
    let c = half_series()?;
    let end = precondition_window(&q, &c.modulus, &eps, 64);
    let f = condensation_forward(&q, &c, end).map_err(err)?;
    ensure(validate_cauchy(&q, &f, &eps, 64).map_err(err)?.pass, "forward")?;
    let b_end = precondition_window(&q, &f.modulus, &eps, 64);
    let b = condensation_backward(&q, &f, b_end).map_err(err)?;
    ensure(validate_cauchy(&q, &b, &eps, 64).map_err(err)?.pass, "backward")?;
    let rt = condensation_roundtrip(&q, &c, end).map_err(err)?;
    ensure(validate_cauchy(&q, &rt, &eps, 64).map_err(err)?.pass, "roundtrip")?;
    let x = SymbolicSequence::expr("(1/2)^n").unwrap();
    for r in condensation_inequalities(&q, &x, 10).map_err(err)? {
        ensure(r.passed(), format!("{}: {:?}", r.law_name, r.failures))?;
    }
    Ok("forward, backward, roundtrip validate at 1e-1..1e-6, K = 64; inequalities (1), (4) for n <= 10".into())
}

fn bernoulli_one<S: OrderedHemiring>(s: &S, mode: BernoulliMode, seed: u64) -> Result<(), String> {
    let mut rng = seeded_rng(seed);
    let tuples = sample_bernoulli_tuples(s, &mut rng, mode, 1000).map_err(err)?;
    let r = bernoulli_check(s, &tuples, mode).map_err(err)?;
    ensure(r.precondition_failures.is_empty(), format!("{} {mode}: invalid samples", s.id()))?;
    ensure(r.law.samples_tested == 1000, "sample count")?;
    ensure(r.passed(), format!("{} {mode}: {:?}", s.id(), r.law.failures))
}

fn criterion_7() -> Outcome {
    let q = RationalField;
    let d = Z1pRing::new(2).unwrap();
    bernoulli_one(&q, BernoulliMode::RingAllNonneg, 1)?;
    bernoulli_one(&q, BernoulliMode::RingAllNonpos, 2)?;
    bernoulli_one(&q, BernoulliMode::SemiringNonneg, 3)?;
    bernoulli_one(&d, BernoulliMode::RingAllNonneg, 4)?;
    bernoulli_one(&d, BernoulliMode::RingAllNonpos, 5)?;
    bernoulli_one(&MaxTimesQpos, BernoulliMode::SemiringNonneg, 6)?;
    bernoulli_one(&q, BernoulliMode::SinglePower(17), 7)?;
    let xs: Vec<Vec<Rational>> = [rat(-1, 3), int(0), rat(7, 2), int(-1)].into_iter().map(|x| vec![x]).collect();
    let r = bernoulli_check(&q, &xs, BernoulliMode::SinglePower(1)).map_err(err)?;
    ensure(r.evaluations.iter().all(|e| e.lhs == e.rhs), "n = 1 not an equality")?;
    Ok("7 mode/structure runs x 1000 tuples, 0 failures; n = 1 gives equality".into())
}

fn hom_pairs<S: OrderedHemiring>(s: &S, seed: u64, count: usize) -> Result<Vec<(ConvergenceCertificate<S::Elem>, ConvergenceCertificate<S::Elem>)>, String> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|_| {
            Ok((
                random_convergent_certificate(s, &mut rng).map_err(err)?,
                random_convergent_certificate(s, &mut rng).map_err(err)?,
            ))
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let q = RationalField;
    let r = conv_hom_probe(&q, &hom_pairs(&q, 42, 20)?, &q_ladder(), 64).map_err(err)?;
    ensure(r.passed(), format!("Q: {:?}", r.failures))?;
    let d = Z1pRing::new(2).unwrap();
    let rd = conv_hom_probe(&d, &hom_pairs(&d, 43, 20)?, &dyadic_ladder(&d), 64).map_err(err)?;
    ensure(rd.passed(), format!("Z[1/2]: {:?}", rd.failures))?;

    let x = power_null_certificate(&q, &rat(1, 2)).map_err(err)?;
    let five = constant_certificate(&q, &int(5)).map_err(err)?;
    let p = product_certificate(&q, &x, &five).map_err(err)?;
    ensure(p.limit == int(0), "kernel did not absorb")?;
    ensure(validate_convergence(&q, &p, &q_ladder(), 64).map_err(err)?.pass, "absorbed product")?;
    let s = sum_certificate(&q, &x, &five).map_err(err)?;
    ensure(s.limit == int(5), "sum limit")?;
    Ok(format!(
        "20 pairs in Q ({} checks) and 20 in Z[1/2] ({} checks); kernel absorption holds",
        r.samples_tested, rd.samples_tested
    ))
}

fn criterion_9() -> Outcome {
    let q = RationalField;
    let x = GroupSequence::Vector(vec![
        SymbolicSequence::geometric(rat(1, 2)),
        SymbolicSequence::geometric(rat(1, 2)).scaled(rat(1, 2)),
    ]);
    let res = ratio_test(&q, &rat(3, 2), &rat(1, 2), Some(&x), 256).map_err(err)?;
    let report = validate_cauchy(&q, &res.certificate, &q_ladder(), 64).map_err(err)?;
    ensure(report.pass, format!("{} violations", report.violation_count))?;
    let limits: Vec<Rational> = x
        .components()
        .iter()
        .map(|c| {
            let first = hemiring::sequences::term(&q, c, 0).unwrap();
            first * geometric_sum(&q, &rat(1, 2)).unwrap().sum
        })
        .collect();
    ensure(limits == vec![int(2), int(1)], format!("component sums {limits:?}"))?;
    let tail = tail_identity_check(&q, &rat(1, 2), 64).map_err(err)?;
    ensure(tail.passed() && tail.samples_tested == 64 * 65 / 2, "tail identity")?;
    Ok(format!("Q^2 certificate validates; sums (2, 1); tail identity on {} pairs", tail.samples_tested))
}

fn criterion_10() -> Outcome {
    let q = RationalField;
    let zero_q = CauchyCertificate::claimed(
        GroupSequence::Scalar(SymbolicSequence::expr_from("0", 0).unwrap().partial_sums()),
        Modulus::Constant(0),
    );
    let g = geometric_sum(&q, &rat(1, 2)).map_err(err)?;
    let upper = cauchy_from_convergence(&q, &g.certificate).map_err(err)?;
    let c = squeeze_series(&q, &zero_q, &upper, &SymbolicSequence::geometric(rat(1, 3)), 1, 256).map_err(err)?;
    ensure(validate_cauchy(&q, &c, &q_ladder(), 64).map_err(err)?.pass, "Q squeeze")?;

    let z = ZxField;
    let zero_z = CauchyCertificate::claimed(
        GroupSequence::Scalar(SymbolicSequence::expr("0").unwrap().partial_sums()),
        Modulus::Constant(0),
    );
    let gz = geometric_sum(&z, &z.parse("1/X").unwrap()).map_err(err)?;
    let mut upper_z = cauchy_from_convergence(&z, &gz.certificate).map_err(err)?;
    upper_z.subject = GroupSequence::Scalar(SymbolicSequence::expr("(1/X)^n").unwrap().partial_sums());
    let y = SymbolicSequence::expr("(1/X^2)^n").unwrap();
    let cz = squeeze_series(&z, &zero_z, &upper_z, &y, 1, 256).map_err(err)?;
    ensure(validate_cauchy(&z, &cz, &zx_ladder(&z, 6), 64).map_err(err)?.pass, "zx squeeze")?;

    let harmonic = SymbolicSequence::expr("1/n").unwrap();
    let null = ConvergenceCertificate::claimed(harmonic.clone(), int(0), Modulus::Archimedean(int(1)));
    ensure(validate_convergence(&q, &null, &q_ladder(), 64).map_err(err)?.pass, "1/n null certificate")?;
    let a = alternating_cauchy(&q, &harmonic, &null, 256).map_err(err)?;
    ensure(validate_cauchy(&q, &a, &q_ladder(), 64).map_err(err)?.pass, "Q alternating 1/n")?;
    let half = power_null_certificate(&q, &rat(1, 2)).map_err(err)?;
    let ah = alternating_cauchy(&q, &half.sequence, &half, 256).map_err(err)?;
    ensure(validate_cauchy(&q, &ah, &q_ladder(), 64).map_err(err)?.pass, "Q alternating (1/2)^n")?;
    let zn = power_null_certificate(&z, &z.parse("1/X").unwrap()).map_err(err)?;
    let az = alternating_cauchy(&z, &zn.sequence, &zn, 256).map_err(err)?;
    ensure(validate_cauchy(&z, &az, &zx_ladder(&z, 6), 64).map_err(err)?.pass, "zx alternating")?;

    for x in [harmonic, half.sequence.clone()] {
        let r = alternating_bound_check(&q, &x, 128).map_err(err)?;
        ensure(r.passed(), format!("alternating bound: {:?}", r.failures))?;
    }
    Ok("squeeze and alternating certificates validate in Q and Z(X); |s_n - s_m| <= x_(m+1) for m < n <= 128".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("law suites", criterion_1),
        ("finite-dimensional norm", criterion_2),
        ("density and shrink witnesses", criterion_3),
        ("geometric series", criterion_4),
        ("non-Archimedean counterexample", criterion_5),
        ("condensation", criterion_6),
        ("Bernoulli inequalities", criterion_7),
        ("limits of products and sums", criterion_8),
        ("ratio test", criterion_9),
        ("squeeze and alternating series", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
