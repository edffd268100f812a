use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laws::{LawFailure, LawReport};
use crate::order::{OrderedHemiring, SampleBounds};

use super::unit;

/// Most evaluations kept in a report.
const MAX_RECORDED_EVALUATIONS: usize = 64;

/// Sign regime of a Bernoulli check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BernoulliMode {
    /// Every `x_i ≥ 0` in an ordered semiring.
    SemiringNonneg,
    /// Every `x_i ≥ 0` in an ordered ring.
    RingAllNonneg,
    /// Every `x_i ≤ 0` and `1 + x_i ≥ 0` in an ordered ring.
    RingAllNonpos,
    /// `(1 + x)ⁿ ≥ 1 + n·x` for a single `x`.
    SinglePower(u64),
}

impl fmt::Display for BernoulliMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BernoulliMode::SemiringNonneg => write!(f, "semiring_nonneg"),
            BernoulliMode::RingAllNonneg => write!(f, "ring_all_nonneg"),
            BernoulliMode::RingAllNonpos => write!(f, "ring_all_nonpos"),
            BernoulliMode::SinglePower(n) => write!(f, "single_power:{n}"),
        }
    }
}

impl FromStr for BernoulliMode {
    type Err = String;

    fn from_str(text: &str) -> std::result::Result<Self, String> {
        let t = text.trim();
        match t {
            "semiring_nonneg" => return Ok(BernoulliMode::SemiringNonneg),
            "ring_all_nonneg" => return Ok(BernoulliMode::RingAllNonneg),
            "ring_all_nonpos" => return Ok(BernoulliMode::RingAllNonpos),
            _ => {}
        }
        let rest = t
            .strip_prefix("single_power")
            .ok_or_else(|| format!("unknown mode '{t}'"))?;
        let n = rest
            .strip_prefix(':')
            .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
            .ok_or_else(|| format!("expected single_power:<n>, got '{t}'"))?;
        n.trim()
            .parse()
            .map(BernoulliMode::SinglePower)
            .map_err(|_| format!("bad exponent in '{t}'"))
    }
}

impl Serialize for BernoulliMode {
    fn serialize<Z: serde::Serializer>(&self, z: Z) -> std::result::Result<Z::Ok, Z::Error> {
        z.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BernoulliEvaluation {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BernoulliReport {
    pub mode: BernoulliMode,
    pub law: LawReport,
    pub evaluations: Vec<BernoulliEvaluation>,
    pub precondition_failures: Vec<String>,
}

impl BernoulliReport {
    pub fn passed(&self) -> bool {
        self.law.passed() && self.precondition_failures.is_empty()
    }
}

fn precondition<S: OrderedHemiring>(s: &S, mode: BernoulliMode, xs: &[S::Elem], one: &S::Elem) -> Option<String> {
    let ring = s.capabilities().has_neg;
    let zero = s.zero();
    let show = |x: &S::Elem| s.render(x);
    match mode {
        BernoulliMode::RingAllNonneg | BernoulliMode::RingAllNonpos if !ring => {
            return Some(format!("{} is not a ring", s.id()))
        }
        BernoulliMode::SinglePower(_) if xs.len() != 1 => {
            return Some(format!("single_power takes one element, got {}", xs.len()))
        }
        _ => {}
    }
    for x in xs {
        let nonneg = s.ge(x, &zero);
        let bounded_below = s.ge(&s.add(one, x), &zero);
        let ok = match mode {
            BernoulliMode::SemiringNonneg | BernoulliMode::RingAllNonneg => nonneg,
            BernoulliMode::RingAllNonpos => s.le(x, &zero) && bounded_below,
            BernoulliMode::SinglePower(_) => nonneg || (ring && s.le(x, &zero) && bounded_below),
        };
        if !ok {
            return Some(match mode {
                BernoulliMode::RingAllNonpos => format!("{} is not in [-1, 0]", show(x)),
                BernoulliMode::SinglePower(_) if ring => format!("{} is below -1", show(x)),
                _ => format!("{} is negative", show(x)),
            });
        }
    }
    None
}

/// Evaluates `Π(1 + x_i) ≥ 1 + Σ x_i`, or `(1 + x)ⁿ ≥ 1 + n·x`, on each tuple.
///
/// Tuples that break the sign conditions of `mode` are listed as precondition
/// failures and not evaluated.
pub fn bernoulli_check<S: OrderedHemiring>(
    s: &S,
    tuples: &[Vec<S::Elem>],
    mode: BernoulliMode,
) -> Result<BernoulliReport> {
    let one = unit(s)?;
    let mut failures = Vec::new();
    let mut evaluations = Vec::new();
    let mut precondition_failures = Vec::new();
    let mut tested = 0;
    for xs in tuples {
        let inputs: Vec<String> = xs.iter().map(|x| s.render(x)).collect();
        if let Some(why) = precondition(s, mode, xs, &one) {
            precondition_failures.push(format!("({}): {why}", inputs.join(", ")));
            continue;
        }
        tested += 1;
        let (lhs, rhs) = match mode {
            BernoulliMode::SinglePower(n) => {
                let base = s.add(&one, &xs[0]);
                let lhs = s.pow(&base, n).ok_or_else(|| Error::NotApplicable(format!("{} has no 1", s.id())))?;
                (lhs, s.add(&one, &s.times(&BigUint::from(n), &xs[0])))
            }
            _ => {
                let mut lhs = one.clone();
                let mut sum = s.zero();
                for x in xs {
                    lhs = s.mul(&lhs, &s.add(&one, x));
                    sum = s.add(&sum, x);
                }
                (lhs, s.add(&one, &sum))
            }
        };
        let holds = s.ge(&lhs, &rhs);
        let (l, r) = (s.render(&lhs), s.render(&rhs));
        if !holds {
            failures.push(LawFailure {
                inputs: inputs.clone(),
                expected: format!(">= {r}"),
                observed: l.clone(),
            });
        }
        if evaluations.len() < MAX_RECORDED_EVALUATIONS {
            evaluations.push(BernoulliEvaluation { inputs, lhs: l, rhs: r, holds });
        }
    }
    Ok(BernoulliReport {
        mode,
        law: LawReport::from_failures(&format!("bernoulli_{}", mode_name(mode)), tested, 0, failures),
        evaluations,
        precondition_failures,
    })
}

fn mode_name(mode: BernoulliMode) -> &'static str {
    match mode {
        BernoulliMode::SemiringNonneg => "semiring_nonneg",
        BernoulliMode::RingAllNonneg => "ring_all_nonneg",
        BernoulliMode::RingAllNonpos => "ring_all_nonpos",
        BernoulliMode::SinglePower(_) => "single_power",
    }
}

fn sample_nonneg<S: OrderedHemiring, R: Rng + ?Sized>(s: &S, rng: &mut R, bounds: &SampleBounds) -> S::Elem {
    s.abs(&s.sample(rng, bounds))
}

/// An element of `[-1, 0]`: `-a` for a sampled `a ≤ 1`, else `-a⁻¹`, else `-1`.
fn sample_nonpos_unit<S: OrderedHemiring, R: Rng + ?Sized>(s: &S, rng: &mut R, bounds: &SampleBounds) -> Result<S::Elem> {
    let one = unit(s)?;
    let a = sample_nonneg(s, rng, bounds);
    let small = if s.le(&a, &one) {
        a
    } else {
        s.invert(&a).unwrap_or(one)
    };
    s.neg(&small).ok_or_else(|| Error::NotARing(s.id()))
}

/// Draws `count` tuples satisfying the sign conditions of `mode`.
pub fn sample_bernoulli_tuples<S: OrderedHemiring, R: Rng + ?Sized>(
    s: &S,
    rng: &mut R,
    mode: BernoulliMode,
    count: usize,
) -> Result<Vec<Vec<S::Elem>>> {
    let bounds = SampleBounds {
        int_bound: 1000,
        max_degree: 3,
        max_p_exponent: 12,
    };
    let ring = s.capabilities().has_neg;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let tuple = match mode {
            BernoulliMode::SemiringNonneg | BernoulliMode::RingAllNonneg => {
                let k = rng.gen_range(1..=5);
                (0..k).map(|_| sample_nonneg(s, rng, &bounds)).collect()
            }
            BernoulliMode::RingAllNonpos => {
                let k = rng.gen_range(1..=5);
                (0..k).map(|_| sample_nonpos_unit(s, rng, &bounds)).collect::<Result<_>>()?
            }
            BernoulliMode::SinglePower(_) => {
                if ring && rng.gen_bool(0.5) {
                    vec![sample_nonpos_unit(s, rng, &bounds)?]
                } else {
                    vec![sample_nonneg(s, rng, &bounds)]
                }
            }
        };
        out.push(tuple);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{int, rat, MaxTimesQpos, RationalField, Z1pRing};
    use crate::laws::seeded_rng;

    #[test]
    fn modes_parse() {
        assert_eq!("single_power:5".parse(), Ok(BernoulliMode::SinglePower(5)));
        assert_eq!("single_power(7)".parse(), Ok(BernoulliMode::SinglePower(7)));
        assert_eq!("ring_all_nonpos".parse(), Ok(BernoulliMode::RingAllNonpos));
        assert!("single_power".parse::<BernoulliMode>().is_err());
        assert_eq!(BernoulliMode::SinglePower(3).to_string(), "single_power:3");
    }

    #[test]
    fn ones() {
        let r = bernoulli_check(&RationalField, &[vec![int(1), int(1), int(1)]], BernoulliMode::RingAllNonneg).unwrap();
        assert!(r.passed());
        assert_eq!((r.evaluations[0].lhs.as_str(), r.evaluations[0].rhs.as_str()), ("8", "4"));
        let r = bernoulli_check(&RationalField, &[vec![rat(-3, 7)]], BernoulliMode::SinglePower(1)).unwrap();
        assert_eq!(r.evaluations[0].lhs, r.evaluations[0].rhs);
    }

    #[test]
    fn preconditions_are_not_failures() {
        let q = RationalField;
        let r = bernoulli_check(&q, &[vec![int(-2)], vec![rat(1, 2)]], BernoulliMode::RingAllNonpos).unwrap();
        assert_eq!(r.precondition_failures.len(), 2);
        assert_eq!(r.law.samples_tested, 0);
        let g = MaxTimesQpos;
        let r = bernoulli_check(&g, &[vec![g.parse("2").unwrap()]], BernoulliMode::RingAllNonneg).unwrap();
        assert_eq!(r.precondition_failures.len(), 1);
        let r = bernoulli_check(&q, &[vec![int(-3)]], BernoulliMode::SinglePower(4)).unwrap();
        assert_eq!(r.precondition_failures, vec!["(-3): -3 is below -1".to_string()]);
    }

    #[test]
    fn sampled() {
        let mut rng = seeded_rng(3);
        let q = RationalField;
        for mode in [
            BernoulliMode::SemiringNonneg,
            BernoulliMode::RingAllNonneg,
            BernoulliMode::RingAllNonpos,
            BernoulliMode::SinglePower(9),
        ] {
            let t = sample_bernoulli_tuples(&q, &mut rng, mode, 200).unwrap();
            let r = bernoulli_check(&q, &t, mode).unwrap();
            assert!(r.passed(), "{mode}: {r:?}");
            assert_eq!(r.law.samples_tested, 200);
        }
        let d = Z1pRing::new(2).unwrap();
        let t = sample_bernoulli_tuples(&d, &mut rng, BernoulliMode::RingAllNonpos, 200).unwrap();
        assert!(bernoulli_check(&d, &t, BernoulliMode::RingAllNonpos).unwrap().passed());
        let g = MaxTimesQpos;
        let t = sample_bernoulli_tuples(&g, &mut rng, BernoulliMode::SemiringNonneg, 200).unwrap();
        assert!(bernoulli_check(&g, &t, BernoulliMode::SemiringNonneg).unwrap().passed());
    }
}
