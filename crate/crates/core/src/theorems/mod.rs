//! Certificate transformers for series: geometric sums, condensation, squeeze,
//! alternating and absolutely convergent series, the ratio test, Bernoulli's
//! inequality and the limit homomorphism on convergent sequences.

mod bernoulli;
mod condensation;
mod geometric;
mod homomorphism;
mod series;

pub use bernoulli::{bernoulli_check, sample_bernoulli_tuples, BernoulliEvaluation, BernoulliMode, BernoulliReport};
pub use condensation::{
    condensation_backward, condensation_forward, condensation_inequalities, condensation_roundtrip, condense,
};
pub use geometric::{geometric_identity, geometric_sum, GeometricResult};
pub use homomorphism::{conv_hom_probe, random_convergent_certificate};
pub use series::{
    absolute_to_plain, alternating_bound_check, alternating_cauchy, ratio_test, squeeze_series, tail_identity_check,
    RatioResult,
};

use crate::error::{Error, Result};
use crate::order::OrderedHemiring;
use crate::sequences::{term, Index, Modulus, SymbolicSequence};

/// Smallest last index of a precondition probe.
pub const PRECONDITION_FLOOR: Index = 256;
/// Largest last index of a precondition probe.
pub const PRECONDITION_CAP: Index = 4096;

/// Last index of the precondition probe: `max(256, N(smallest ε) + K)`, capped at 4096.
pub fn precondition_window<S: OrderedHemiring>(
    s: &S,
    modulus: &Modulus<S::Elem>,
    eps: &[S::Elem],
    depth: Index,
) -> Index {
    let n = eps.iter().filter_map(|e| modulus.eval(s, e).ok()).max().unwrap_or(0);
    n.saturating_add(depth).clamp(PRECONDITION_FLOOR, PRECONDITION_CAP)
}

pub(crate) fn unit<S: OrderedHemiring>(s: &S) -> Result<S::Elem> {
    s.one().ok_or_else(|| Error::NotApplicable(format!("{} has no 1", s.id())))
}

pub(crate) fn negate<S: OrderedHemiring>(s: &S, a: &S::Elem) -> Result<S::Elem> {
    s.neg(a).ok_or_else(|| Error::NotARing(s.id()))
}

pub(crate) fn require<S: OrderedHemiring>(s: &S, dense: bool, total: bool) -> Result<()> {
    let caps = s.capabilities();
    if total && !caps.totally_ordered {
        return Err(Error::NotTotallyOrdered(s.id()));
    }
    if dense && !caps.dense {
        return Err(Error::NotDense(s.id()));
    }
    Ok(())
}

/// Checks `x_n ≥ 0` (or `> 0`) and `x_{n+1} ≤ x_n` (or `<`) for `n` from the start to `end`.
///
/// Returns whether every probed term is zero.
pub(crate) fn check_monotone<S: OrderedHemiring>(
    s: &S,
    x: &SymbolicSequence<S::Elem>,
    end: Index,
    strict: bool,
) -> Result<bool> {
    let start = x.start();
    let zero = s.zero();
    let mut prev: Option<S::Elem> = None;
    let mut all_zero = true;
    for n in start..=end.max(start) {
        let v = term(s, x, n)?;
        let positive_ok = if strict { s.gt(&v, &zero) } else { s.ge(&v, &zero) };
        if !positive_ok {
            return Err(Error::NotPositiveOnProbe(n));
        }
        all_zero &= s.is_zero(&v);
        if let Some(p) = &prev {
            let ok = if strict { s.lt(&v, p) } else { s.le(&v, p) };
            if !ok {
                return Err(if strict {
                    Error::NotStrictlyDecreasingOnProbe(n)
                } else {
                    Error::NotDecreasingOnProbe(n)
                });
            }
        }
        prev = Some(v);
    }
    Ok(all_zero)
}

pub(crate) fn probe_note(what: &str, start: Index, end: Index) -> String {
    format!("{what} checked for n in [{start}, {end}]")
}
