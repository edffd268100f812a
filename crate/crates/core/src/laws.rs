//! Seeded law checking for ordered hemirings.
//!
//! Samples are drawn sequentially from a ChaCha stream so a report depends
//! only on `(structure, seed, sample_count)`; the checks themselves run in
//! parallel.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::{density_holds, shrink_holds, OrderedHemiring, SampleBounds};

/// Most failures kept per law; `failure_count` has the full number.
pub const MAX_RECORDED_FAILURES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawFailure {
    pub inputs: Vec<String>,
    pub expected: String,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law_name: String,
    pub samples_tested: usize,
    pub failure_count: usize,
    pub failures: Vec<LawFailure>,
    pub seed: u64,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub(crate) fn from_failures(name: &str, samples: usize, seed: u64, mut failures: Vec<LawFailure>) -> Self {
        let failure_count = failures.len();
        failures.truncate(MAX_RECORDED_FAILURES);
        LawReport {
            law_name: name.to_string(),
            samples_tested: samples,
            failure_count,
            failures,
            seed,
        }
    }
}

/// All law reports for one structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawSuiteReport {
    pub structure: String,
    pub seed: u64,
    pub samples: usize,
    pub laws: Vec<LawReport>,
}

impl LawSuiteReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawReport::passed)
    }

    pub fn failure_count(&self) -> usize {
        self.laws.iter().map(|l| l.failure_count).sum()
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

type Check<S> = Box<
    dyn Fn(
            &S,
            &<S as OrderedHemiring>::Elem,
            &<S as OrderedHemiring>::Elem,
            &<S as OrderedHemiring>::Elem,
        ) -> Option<(String, String)>
        + Send
        + Sync,
>;

fn eq_check<S: OrderedHemiring>(s: &S, lhs: &S::Elem, rhs: &S::Elem, what: &str) -> Option<(String, String)> {
    if lhs == rhs {
        None
    } else {
        Some((what.to_string(), format!("{} != {}", s.render(lhs), s.render(rhs))))
    }
}

fn holds(ok: bool, expected: &str, observed: impl FnOnce() -> String) -> Option<(String, String)> {
    if ok {
        None
    } else {
        Some((expected.to_string(), observed()))
    }
}

fn sorted<S: OrderedHemiring>(s: &S, a: &S::Elem, b: &S::Elem) -> Option<(S::Elem, S::Elem)> {
    match s.compare(a, b)? {
        Ordering::Greater => Some((b.clone(), a.clone())),
        _ => Some((a.clone(), b.clone())),
    }
}

fn laws_for<S: OrderedHemiring + 'static>(s: &S) -> Vec<(&'static str, Check<S>)> {
    let caps = s.capabilities();
    let mut laws: Vec<(&'static str, Check<S>)> = vec![
        (
            "add_associative",
            Box::new(|s: &S, a: &S::Elem, b: &S::Elem, c: &S::Elem| {
                eq_check(s, &s.add(&s.add(a, b), c), &s.add(a, &s.add(b, c)), "(a+b)+c = a+(b+c)")
            }),
        ),
        (
            "add_commutative",
            Box::new(|s: &S, a: &S::Elem, b: &S::Elem, _: &S::Elem| eq_check(s, &s.add(a, b), &s.add(b, a), "a+b = b+a")),
        ),
        (
            "add_identity",
            Box::new(|s: &S, a: &S::Elem, _: &S::Elem, _: &S::Elem| {
                let z = s.zero();
                eq_check(s, &s.add(a, &z), a, "a+0 = a").or_else(|| eq_check(s, &s.add(&z, a), a, "0+a = a"))
            }),
        ),
        (
            "mul_associative",
            Box::new(|s: &S, a: &S::Elem, b: &S::Elem, c: &S::Elem| {
                eq_check(s, &s.mul(&s.mul(a, b), c), &s.mul(a, &s.mul(b, c)), "(ab)c = a(bc)")
            }),
        ),
        (
            "left_distributive",
            Box::new(|s: &S, a: &S::Elem, b: &S::Elem, c: &S::Elem| {
                eq_check(s, &s.mul(a, &s.add(b, c)), &s.add(&s.mul(a, b), &s.mul(a, c)), "a(b+c) = ab+ac")
            }),
        ),
        (
            "right_distributive",
            Box::new(|s: &S, a: &S::Elem, b: &S::Elem, c: &S::Elem| {
                eq_check(s, &s.mul(&s.add(a, b), c), &s.add(&s.mul(a, c), &s.mul(b, c)), "(a+b)c = ac+bc")
            }),
        ),
        (
            "zero_absorbing",
            Box::new(|s: &S, a: &S::Elem, _: &S::Elem, _: &S::Elem| {
                let z = s.zero();
                eq_check(s, &s.mul(&z, a), &z, "0a = 0").or_else(|| eq_check(s, &s.mul(a, &z), &z, "a0 = 0"))
            }),
        ),
        (
            "order_add_compatible",
            Box::new(|s: &S, a: &S::Elem, b: &S::Elem, c: &S::Elem| {
                let (x, y) = sorted(s, a, b)?;
                let (l, r) = (s.add(&x, c), s.add(&y, c));
                holds(s.le(&l, &r), "a <= b implies a+c <= b+c", || {
                    format!("{} > {}", s.render(&l), s.render(&r))
                })
            }),
        ),
        (
            "order_mul_compatible",
            Box::new(|s: &S, a: &S::Elem, b: &S::Elem, c: &S::Elem| {
                let (x, y) = sorted(s, a, b)?;
                let c = s.abs(c);
                let (l, r) = (s.mul(&x, &c), s.mul(&y, &c));
                let (l2, r2) = (s.mul(&c, &x), s.mul(&c, &y));
                holds(s.le(&l, &r) && s.le(&l2, &r2), "a <= b and 0 <= c imply ac <= bc and ca <= cb", || {
                    format!("ac={} bc={} ca={} cb={}", s.render(&l), s.render(&r), s.render(&l2), s.render(&r2))
                })
            }),
        ),
        (
            "order_total",
            Box::new(|s: &S, a: &S::Elem, b: &S::Elem, c: &S::Elem| {
                let ab = s.compare(a, b);
                let ba = s.compare(b, a);
                if ab.is_none() || ab != ba.map(Ordering::reverse) {
                    return Some(("compare(a,b) = reverse(compare(b,a)), both defined".into(), format!("{ab:?} vs {ba:?}")));
                }
                let trans = !(s.le(a, b) && s.le(b, c)) || s.le(a, c);
                holds(trans, "a <= b <= c implies a <= c", || "transitivity fails".into())
            }),
        ),
        (
            "canonicalize_idempotent",
            Box::new(|s: &S, a: &S::Elem, _: &S::Elem, _: &S::Elem| {
                let c = s.canonicalize(a);
                eq_check(s, &s.canonicalize(&c), &c, "canon(canon(a)) = canon(a)")
                    .or_else(|| eq_check(s, &c, a, "sampled elements are canonical"))
            }),
        ),
    ];
    if caps.strict_add_compatible {
        laws.push((
            "strict_add_compatible",
            Box::new(|s: &S, a: &S::Elem, b: &S::Elem, c: &S::Elem| {
                let (x, y) = sorted(s, a, b)?;
                if !s.lt(&x, &y) {
                    return None;
                }
                let (l, r) = (s.add(&x, c), s.add(&y, c));
                holds(s.lt(&l, &r), "a < b implies a+c < b+c", || {
                    format!("{} >= {}", s.render(&l), s.render(&r))
                })
            }),
        ));
    }
    if caps.strict_mul_compatible {
        laws.push((
            "strict_mul_compatible",
            Box::new(|s: &S, a: &S::Elem, b: &S::Elem, c: &S::Elem| {
                let (x, y) = sorted(s, a, b)?;
                let c = s.abs(c);
                if !s.lt(&x, &y) || !s.is_positive(&c) {
                    return None;
                }
                let ok = s.lt(&s.mul(&x, &c), &s.mul(&y, &c)) && s.lt(&s.mul(&c, &x), &s.mul(&c, &y));
                holds(ok, "a < b and 0 < c imply ac < bc and ca < cb", || "strict inequality lost".into())
            }),
        ));
    }
    if caps.has_one {
        laws.push((
            "mul_identity",
            Box::new(|s: &S, a: &S::Elem, _: &S::Elem, _: &S::Elem| {
                let one = s.one()?;
                eq_check(s, &s.mul(&one, a), a, "1a = a").or_else(|| eq_check(s, &s.mul(a, &one), a, "a1 = a"))
            }),
        ));
    }
    if caps.has_neg {
        laws.push((
            "additive_inverse",
            Box::new(|s: &S, a: &S::Elem, _: &S::Elem, _: &S::Elem| {
                let na = s.neg(a)?;
                eq_check(s, &s.add(a, &na), &s.zero(), "a+(-a) = 0")
            }),
        ));
    }
    if caps.commutative {
        laws.push((
            "mul_commutative",
            Box::new(|s: &S, a: &S::Elem, b: &S::Elem, _: &S::Elem| eq_check(s, &s.mul(a, b), &s.mul(b, a), "ab = ba")),
        ));
    }
    if caps.has_inverses {
        laws.push((
            "multiplicative_inverse",
            Box::new(|s: &S, a: &S::Elem, _: &S::Elem, _: &S::Elem| {
                if s.is_zero(a) {
                    return None;
                }
                let one = s.one()?;
                match s.invert(a) {
                    Ok(inv) => eq_check(s, &s.mul(a, &inv), &one, "a * a^-1 = 1"),
                    Err(e) => Some(("a^-1 exists".into(), e.to_string())),
                }
            }),
        ));
    }
    laws
}

fn sample_triples<S: OrderedHemiring>(s: &S, count: usize, seed: u64, bounds: &SampleBounds) -> Vec<(S::Elem, S::Elem, S::Elem)> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|_| (s.sample(&mut rng, bounds), s.sample(&mut rng, bounds), s.sample(&mut rng, bounds)))
        .collect()
}

/// Checks the ordered-hemiring laws, plus the ring/field laws the capability flags claim.
pub fn check_hemiring_laws<S: OrderedHemiring + 'static>(s: &S, sample_count: usize, seed: u64) -> LawSuiteReport {
    check_hemiring_laws_with(s, sample_count, seed, &SampleBounds::default())
}

pub fn check_hemiring_laws_with<S: OrderedHemiring + 'static>(
    s: &S,
    sample_count: usize,
    seed: u64,
    bounds: &SampleBounds,
) -> LawSuiteReport {
    let triples = sample_triples(s, sample_count, seed, bounds);
    let laws = laws_for(s)
        .into_iter()
        .map(|(name, check)| {
            let failures: Vec<LawFailure> = triples
                .par_iter()
                .filter_map(|(a, b, c)| {
                    check(s, a, b, c).map(|(expected, observed)| LawFailure {
                        inputs: vec![s.render(a), s.render(b), s.render(c)],
                        expected,
                        observed,
                    })
                })
                .collect();
            LawReport::from_failures(name, triples.len(), seed, failures)
        })
        .collect();
    LawSuiteReport {
        structure: s.id(),
        seed,
        samples: sample_count,
        laws,
    }
}

/// Confirms that no sampled pair of nonzero elements multiplies to zero.
pub fn check_entire<S: OrderedHemiring>(s: &S, sample_count: usize, seed: u64) -> Result<LawReport> {
    let caps = s.capabilities();
    if !caps.totally_ordered || !caps.strict_mul_compatible {
        return Err(Error::NotApplicable(format!(
            "{} lacks a total order with strict multiplicative compatibility",
            s.id()
        )));
    }
    let mut rng = seeded_rng(seed);
    let bounds = SampleBounds::default();
    let mut pairs = Vec::with_capacity(sample_count);
    while pairs.len() < sample_count {
        let a = s.sample(&mut rng, &bounds);
        let b = s.sample(&mut rng, &bounds);
        if !s.is_zero(&a) && !s.is_zero(&b) {
            pairs.push((a, b));
        }
    }
    let failures = pairs
        .par_iter()
        .filter_map(|(a, b)| {
            s.is_zero(&s.mul(a, b)).then(|| LawFailure {
                inputs: vec![s.render(a), s.render(b)],
                expected: "ab != 0".into(),
                observed: "ab = 0".into(),
            })
        })
        .collect();
    Ok(LawReport::from_failures("entire", sample_count, seed, failures))
}

/// Checks `β > 0`, `γ > 0`, `β + γ < ε` on sampled positive `ε`.
pub fn check_density_witness<S: OrderedHemiring>(s: &S, sample_count: usize, seed: u64) -> Result<LawReport> {
    if !s.capabilities().dense {
        return Err(Error::NotDense(s.id()));
    }
    let mut rng = seeded_rng(seed);
    let bounds = SampleBounds::default();
    let eps: Vec<S::Elem> = (0..sample_count).map(|_| s.sample_positive(&mut rng, &bounds)).collect();
    let results: Vec<Result<Option<LawFailure>>> = eps
        .par_iter()
        .map(|e| {
            let w = s.density_witness(e)?;
            Ok((!density_holds(s, e, &w)).then(|| LawFailure {
                inputs: vec![s.render(e)],
                expected: "beta > 0, gamma > 0, beta + gamma < eps".into(),
                observed: format!("beta={} gamma={}", s.render(&w.0), s.render(&w.1)),
            }))
        })
        .collect();
    let failures = results.into_iter().filter_map(|r| r.transpose()).collect::<Result<Vec<_>>>()?;
    Ok(LawReport::from_failures("density_witness", sample_count, seed, failures))
}

/// Checks `M·α_r < α` and `α_l·M < α` on sampled positive `(α, M)`.
pub fn check_shrink_witness<S: OrderedHemiring>(s: &S, sample_count: usize, seed: u64) -> Result<LawReport> {
    if !s.capabilities().shrinkable {
        return Err(Error::NotShrinkable(s.id()));
    }
    let mut rng = seeded_rng(seed);
    let bounds = SampleBounds::default();
    let pairs: Vec<(S::Elem, S::Elem)> = (0..sample_count)
        .map(|_| (s.sample_positive(&mut rng, &bounds), s.sample_positive(&mut rng, &bounds)))
        .collect();
    let results: Vec<Result<Option<LawFailure>>> = pairs
        .par_iter()
        .map(|(alpha, m)| {
            let w = s.shrink_witness(alpha, m)?;
            Ok((!shrink_holds(s, alpha, m, &w)).then(|| LawFailure {
                inputs: vec![s.render(alpha), s.render(m)],
                expected: "M*alpha_r < alpha and alpha_l*M < alpha".into(),
                observed: format!("alpha_l={} alpha_r={}", s.render(&w.0), s.render(&w.1)),
            }))
        })
        .collect();
    let failures = results.into_iter().filter_map(|r| r.transpose()).collect::<Result<Vec<_>>>()?;
    Ok(LawReport::from_failures("shrink_witness", sample_count, seed, failures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{MaxTimesQpos, RationalField, Z1pRing, ZxField};

    #[test]
    fn rational_laws_pass() {
        let r = check_hemiring_laws(&RationalField, 200, 7);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn z1p_and_maxtimes_laws_pass() {
        assert!(check_hemiring_laws(&Z1pRing::new(2).unwrap(), 200, 7).passed());
        let g = check_hemiring_laws(&MaxTimesQpos, 200, 7);
        assert!(g.passed());
        assert!(!g.laws.iter().any(|l| l.law_name == "strict_add_compatible"));
    }

    #[test]
    fn deterministic() {
        let a = check_hemiring_laws(&ZxField, 20, 3);
        let b = check_hemiring_laws(&ZxField, 20, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn entire_and_witnesses() {
        assert!(check_entire(&MaxTimesQpos, 100, 7).unwrap().passed());
        assert!(check_density_witness(&Z1pRing::new(3).unwrap(), 50, 1).unwrap().passed());
        assert!(check_shrink_witness(&ZxField, 20, 1).unwrap().passed());
    }
}
