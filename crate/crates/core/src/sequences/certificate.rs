//! Convergence and Cauchy certificates and their validation by finite probing.

use rayon::prelude::*;
use serde::Serialize;

use super::enclosure::{self, Interval, PRECISIONS};
use super::{term, Index, Modulus, SymbolicSequence};
use crate::error::{Error, Result};
use crate::instances::Rational;
use crate::order::OrderedHemiring;

/// Cap on violations kept in a report; the count is always exact.
pub const MAX_RECORDED_VIOLATIONS: usize = 4096;

/// Claims `‖x_n − limit‖ < ε` for every `n ≥ modulus(ε)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceCertificate<E> {
    pub sequence: SymbolicSequence<E>,
    pub limit: E,
    pub modulus: Modulus<E>,
    /// Produced by a constructor that follows a proof, rather than supplied by hand.
    pub trusted: bool,
    pub origin: String,
    pub assumptions: Vec<String>,
}

impl<E> ConvergenceCertificate<E> {
    pub fn claimed(sequence: SymbolicSequence<E>, limit: E, modulus: Modulus<E>) -> Self {
        ConvergenceCertificate {
            sequence,
            limit,
            modulus,
            trusted: false,
            origin: "supplied".into(),
            assumptions: Vec::new(),
        }
    }

    pub(crate) fn derived(
        sequence: SymbolicSequence<E>,
        limit: E,
        modulus: Modulus<E>,
        origin: &str,
        assumptions: Vec<String>,
    ) -> Self {
        ConvergenceCertificate {
            sequence,
            limit,
            modulus,
            trusted: true,
            origin: origin.into(),
            assumptions,
        }
    }
}

/// A sequence in a structure or in its `k`-fold power with the sum-of-norms norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSequence<E> {
    Scalar(SymbolicSequence<E>),
    Vector(Vec<SymbolicSequence<E>>),
}

impl<E: Clone> GroupSequence<E> {
    pub fn components(&self) -> &[SymbolicSequence<E>] {
        match self {
            GroupSequence::Scalar(s) => std::slice::from_ref(s),
            GroupSequence::Vector(v) => v,
        }
    }

    pub fn start(&self) -> Index {
        self.components().iter().map(SymbolicSequence::start).max().unwrap_or(0)
    }

    /// Componentwise partial sums.
    pub fn partial_sums(&self) -> Self {
        match self {
            GroupSequence::Scalar(s) => GroupSequence::Scalar(s.clone().partial_sums()),
            GroupSequence::Vector(v) => GroupSequence::Vector(v.iter().cloned().map(SymbolicSequence::partial_sums).collect()),
        }
    }
}

/// Claims `‖x_n − x_m‖ < ε` for every `n ≥ m ≥ modulus(ε)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyCertificate<E> {
    pub subject: GroupSequence<E>,
    pub modulus: Modulus<E>,
    pub trusted: bool,
    pub origin: String,
    pub assumptions: Vec<String>,
}

impl<E> CauchyCertificate<E> {
    pub fn claimed(subject: GroupSequence<E>, modulus: Modulus<E>) -> Self {
        CauchyCertificate {
            subject,
            modulus,
            trusted: false,
            origin: "supplied".into(),
            assumptions: Vec::new(),
        }
    }

    pub(crate) fn derived(subject: GroupSequence<E>, modulus: Modulus<E>, origin: &str, assumptions: Vec<String>) -> Self {
        CauchyCertificate {
            subject,
            modulus,
            trusted: true,
            origin: origin.into(),
            assumptions,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub epsilon: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<Index>,
    pub n: Option<Index>,
    pub gap: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbedEpsilon {
    pub epsilon: String,
    pub modulus: Option<Index>,
    pub probed: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub kind: String,
    pub depth: Index,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub epsilons: Vec<ProbedEpsilon>,
    pub trusted_by_construction: bool,
    pub origin: String,
    pub assumptions: Vec<String>,
}

impl ValidationReport {
    fn assemble(kind: &str, depth: Index, parts: Vec<EpsOutcome>, trusted: bool, origin: &str, assumptions: &[String]) -> Self {
        let mut violations = Vec::new();
        let mut epsilons = Vec::new();
        let (mut checked, mut count) = (0u64, 0u64);
        for p in parts {
            checked += p.probed;
            count += p.violations.len() as u64;
            epsilons.push(ProbedEpsilon {
                epsilon: p.epsilon,
                modulus: p.modulus,
                probed: p.probed,
                violations: p.violations.len() as u64,
            });
            for v in p.violations {
                if violations.len() < MAX_RECORDED_VIOLATIONS {
                    violations.push(v);
                }
            }
        }
        ValidationReport {
            pass: count == 0,
            kind: kind.into(),
            depth,
            checked,
            violation_count: count,
            violations,
            epsilons,
            trusted_by_construction: trusted,
            origin: origin.into(),
            assumptions: assumptions.to_vec(),
        }
    }

    /// Probed indices that violated the claim at the given `ε` text.
    pub fn violating_indices(&self, epsilon: &str) -> Vec<Index> {
        self.violations
            .iter()
            .filter(|v| v.epsilon == epsilon)
            .filter_map(|v| v.n)
            .collect()
    }
}

struct EpsOutcome {
    epsilon: String,
    modulus: Option<Index>,
    probed: u64,
    violations: Vec<Violation>,
}

fn check_epsilons<S: OrderedHemiring>(s: &S, eps: &[S::Elem]) -> Result<()> {
    if eps.is_empty() {
        return Err(Error::NotApplicable("no epsilon samples".into()));
    }
    for e in eps {
        if !s.is_positive(e) {
            return Err(Error::NonPositiveEpsilon(s.render(e)));
        }
    }
    Ok(())
}

fn modulus_failure(epsilon: &str, e: &Error) -> EpsOutcome {
    EpsOutcome {
        epsilon: epsilon.to_string(),
        modulus: None,
        probed: 0,
        violations: vec![Violation {
            epsilon: epsilon.to_string(),
            m: None,
            n: None,
            gap: "-".into(),
            note: Some(format!("modulus: {e}")),
        }],
    }
}

/// `‖a − b‖` under the absolute value.
fn abs_diff<S: OrderedHemiring>(s: &S, a: &S::Elem, b: &S::Elem) -> Result<S::Elem> {
    let nb = s.neg(b).ok_or_else(|| Error::NotARing(s.id()))?;
    Ok(s.abs(&s.add(a, &nb)))
}

enum Probe {
    Holds,
    Fails(String),
    Undecided(String),
}

fn exact_conv_probe<S: OrderedHemiring>(s: &S, cert: &ConvergenceCertificate<S::Elem>, n: Index, eps: &S::Elem) -> Probe {
    let d = term(s, &cert.sequence, n).and_then(|t| abs_diff(s, &t, &cert.limit));
    match d {
        Ok(d) if s.lt(&d, eps) => Probe::Holds,
        Ok(d) => Probe::Fails(s.render(&d)),
        Err(e) => Probe::Undecided(e.to_string()),
    }
}

fn interval_conv_probe<S: OrderedHemiring>(
    s: &S,
    cert: &ConvergenceCertificate<S::Elem>,
    limit: &Rational,
    eps_q: &Rational,
    n: Index,
) -> Option<std::result::Result<(), Interval>> {
    for prec in PRECISIONS {
        let iv = enclosure::enclose(s, &cert.sequence, n, prec)?;
        let d = iv.sub(&Interval::from_rational(limit, prec));
        match d.abs_below(eps_q) {
            Some(true) => return Some(Ok(())),
            Some(false) => return Some(Err(d.abs())),
            None => continue,
        }
    }
    None
}

/// Checks `‖x_n − limit‖ < ε` for `n ∈ [N, N + depth]` at each sampled `ε`.
pub fn validate_convergence<S: OrderedHemiring>(
    s: &S,
    cert: &ConvergenceCertificate<S::Elem>,
    eps: &[S::Elem],
    depth: Index,
) -> Result<ValidationReport> {
    check_epsilons(s, eps)?;
    let start = cert.sequence.start();
    let limit_q = s.to_rational(&cert.limit);
    let parts: Vec<EpsOutcome> = eps
        .par_iter()
        .map(|e| {
            let text = s.render(e);
            let big_n = match cert.modulus.eval(s, e) {
                Ok(n) => n,
                Err(err) => return modulus_failure(&text, &err),
            };
            let lo = big_n.max(start);
            let eps_q = s.to_rational(e);
            let mut violations = Vec::new();
            let mut probed = 0;
            for n in lo..=lo.saturating_add(depth) {
                probed += 1;
                let fast = match (&limit_q, &eps_q) {
                    (Some(l), Some(q)) => interval_conv_probe(s, cert, l, q, n),
                    _ => None,
                };
                let outcome = match fast {
                    Some(Ok(())) => Probe::Holds,
                    Some(Err(iv)) => match exact_conv_probe(s, cert, n, e) {
                        Probe::Fails(g) => Probe::Fails(g),
                        _ => Probe::Fails(iv.describe()),
                    },
                    None => exact_conv_probe(s, cert, n, e),
                };
                match outcome {
                    Probe::Holds => {}
                    Probe::Fails(gap) => violations.push(Violation {
                        epsilon: text.clone(),
                        m: None,
                        n: Some(n),
                        gap,
                        note: None,
                    }),
                    Probe::Undecided(note) => violations.push(Violation {
                        epsilon: text.clone(),
                        m: None,
                        n: Some(n),
                        gap: "-".into(),
                        note: Some(format!("undecided: {note}")),
                    }),
                }
            }
            EpsOutcome {
                epsilon: text,
                modulus: Some(big_n),
                probed,
                violations,
            }
        })
        .collect();
    Ok(ValidationReport::assemble(
        "convergence",
        depth,
        parts,
        cert.trusted,
        &cert.origin,
        &cert.assumptions,
    ))
}

/// Values whose pairwise differences are the Cauchy differences on `[lo, lo + depth]`:
/// window prefix sums for partial-sum sequences, terms otherwise.
fn window_values_exact<S: OrderedHemiring>(
    s: &S,
    seq: &SymbolicSequence<S::Elem>,
    lo: Index,
    depth: Index,
) -> Result<Vec<S::Elem>> {
    let mut out = Vec::with_capacity(depth as usize + 1);
    match seq.summands() {
        Some(inner) => {
            let mut acc = s.zero();
            out.push(acc.clone());
            for i in lo + 1..=lo + depth {
                acc = s.add(&acc, &term(s, inner, i)?);
                out.push(acc.clone());
            }
        }
        None => {
            for i in lo..=lo + depth {
                out.push(term(s, seq, i)?);
            }
        }
    }
    Ok(out)
}

fn window_values_interval<S: OrderedHemiring>(
    s: &S,
    seq: &SymbolicSequence<S::Elem>,
    lo: Index,
    depth: Index,
    prec: u32,
) -> Option<Vec<Interval>> {
    let mut out = Vec::with_capacity(depth as usize + 1);
    match seq.summands() {
        Some(inner) => {
            let mut acc = Interval::zero(prec);
            out.push(acc.clone());
            for i in lo + 1..=lo + depth {
                acc = acc.add(&enclosure::enclose(s, inner, i, prec)?);
                out.push(acc.clone());
            }
        }
        None => {
            for i in lo..=lo + depth {
                out.push(enclosure::enclose(s, seq, i, prec)?);
            }
        }
    }
    Some(out)
}

/// Decides every pair `(m, n)` in the window; `None` entries remain undecided.
fn interval_pairs<S: OrderedHemiring>(
    s: &S,
    subject: &GroupSequence<S::Elem>,
    lo: Index,
    depth: Index,
    eps_q: &Rational,
) -> Vec<Option<std::result::Result<(), Interval>>> {
    let k = depth as usize;
    let pairs = k * (k + 1) / 2;
    let mut decided: Vec<Option<std::result::Result<(), Interval>>> = vec![None; pairs];
    for prec in PRECISIONS {
        let comps: Option<Vec<Vec<Interval>>> = subject
            .components()
            .iter()
            .map(|c| window_values_interval(s, c, lo, depth, prec))
            .collect();
        let Some(comps) = comps else { return decided };
        let mut idx = 0;
        let mut open = 0;
        for m in 0..=k {
            for n in m + 1..=k {
                if decided[idx].is_none() {
                    let mut norm = Interval::zero(prec);
                    for c in &comps {
                        norm = norm.add(&c[n].sub(&c[m]).abs());
                    }
                    match norm.abs_below(eps_q) {
                        Some(true) => decided[idx] = Some(Ok(())),
                        Some(false) => decided[idx] = Some(Err(norm)),
                        None => open += 1,
                    }
                }
                idx += 1;
            }
        }
        if open == 0 {
            break;
        }
    }
    decided
}

/// Checks `‖x_n − x_m‖ < ε` for all `N ≤ m < n ≤ N + depth` at each sampled `ε`.
pub fn validate_cauchy<S: OrderedHemiring>(
    s: &S,
    cert: &CauchyCertificate<S::Elem>,
    eps: &[S::Elem],
    depth: Index,
) -> Result<ValidationReport> {
    check_epsilons(s, eps)?;
    let start = cert.subject.start();
    let parts: Vec<EpsOutcome> = eps
        .par_iter()
        .map(|e| {
            let text = s.render(e);
            let big_n = match cert.modulus.eval(s, e) {
                Ok(n) => n,
                Err(err) => return modulus_failure(&text, &err),
            };
            let lo = big_n.max(start);
            if lo.checked_add(depth).is_none() {
                return modulus_failure(&text, &Error::IndexOverflow(format!("{lo}+{depth}")));
            }
            let k = depth as usize;
            let probed = (k * (k + 1) / 2) as u64;
            let fast = match s.to_rational(e) {
                Some(q) => interval_pairs(s, &cert.subject, lo, depth, &q),
                None => vec![None; k * (k + 1) / 2],
            };
            let mut exact: Option<Result<Vec<Vec<S::Elem>>>> = None;
            let mut violations = Vec::new();
            let mut idx = 0;
            for m in 0..=k {
                for n in m + 1..=k {
                    let (mi, ni) = (lo + m as Index, lo + n as Index);
                    let outcome = match &fast[idx] {
                        Some(Ok(())) => Probe::Holds,
                        other => {
                            let values = exact.get_or_insert_with(|| {
                                cert.subject
                                    .components()
                                    .iter()
                                    .map(|c| window_values_exact(s, c, lo, depth))
                                    .collect()
                            });
                            match values {
                                Ok(vals) => {
                                    let mut norm = s.zero();
                                    let mut failed = None;
                                    for v in vals.iter() {
                                        match abs_diff(s, &v[n], &v[m]) {
                                            Ok(d) => norm = s.add(&norm, &d),
                                            Err(e) => failed = Some(e),
                                        }
                                    }
                                    match failed {
                                        Some(err) => Probe::Undecided(err.to_string()),
                                        None if s.lt(&norm, e) => Probe::Holds,
                                        None => Probe::Fails(s.render(&norm)),
                                    }
                                }
                                Err(err) => match other {
                                    Some(Err(iv)) => Probe::Fails(iv.describe()),
                                    _ => Probe::Undecided(err.to_string()),
                                },
                            }
                        }
                    };
                    match outcome {
                        Probe::Holds => {}
                        Probe::Fails(gap) => violations.push(Violation {
                            epsilon: text.clone(),
                            m: Some(mi),
                            n: Some(ni),
                            gap,
                            note: None,
                        }),
                        Probe::Undecided(note) => violations.push(Violation {
                            epsilon: text.clone(),
                            m: Some(mi),
                            n: Some(ni),
                            gap: "-".into(),
                            note: Some(format!("undecided: {note}")),
                        }),
                    }
                    idx += 1;
                }
            }
            EpsOutcome {
                epsilon: text,
                modulus: Some(big_n),
                probed,
                violations,
            }
        })
        .collect();
    Ok(ValidationReport::assemble(
        "cauchy",
        depth,
        parts,
        cert.trusted,
        &cert.origin,
        &cert.assumptions,
    ))
}
