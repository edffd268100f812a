use std::path::Path;

use serde_json::{json, Map, Value};

use super::args::{CertAction, Command, Direction, NormAction, SeqAction, WitnessKind, DEFAULT_DEPTH, DEFAULT_SAMPLES, DEFAULT_SEED};
use super::{CommandResult, Status};
use crate::error::{Error, Result};
use crate::laws::check_hemiring_laws;
use crate::norms::{abs_norm, build_finite_dim_pseudonorm, check_pseudonorm_laws, padic_valuation_norm, raw_coordinate_norm, StructureConstants};
use crate::order::{density_holds, shrink_holds, OrderedHemiring, OrderedRing};
use crate::registry::AnyStructure;
use crate::sequences::wire::{cauchy_to_json, certificate_from_json, certificate_structure, convergence_to_json, index_json, CertificateDoc};
use crate::sequences::{
    partial_sum, term, validate_cauchy, validate_convergence, CauchyCertificate, GroupSequence, Index, Modulus,
    SymbolicSequence,
};
use crate::theorems::{
    bernoulli_check, condensation_backward, condensation_forward, condensation_inequalities, condensation_roundtrip,
    geometric_identity, geometric_sum, precondition_window, ratio_test, tail_identity_check, BernoulliMode,
    PRECONDITION_FLOOR,
};
use crate::{dispatch, dispatch_ring};

/// Most rows `seq eval` prints.
const MAX_EVAL_ROWS: Index = 100_000;

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<(Status, Value), Failure>;

struct Header {
    seed: u64,
    samples: usize,
    depth: Index,
    structure: Option<String>,
}

impl Header {
    fn new(structure: Option<&str>) -> Self {
        Header {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            depth: DEFAULT_DEPTH,
            structure: structure.map(str::to_string),
        }
    }

    fn into_map(self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("seed".into(), json!(self.seed));
        m.insert("samples".into(), json!(self.samples));
        m.insert("depth".into(), index_json(self.depth));
        if let Some(s) = self.structure {
            m.insert("structure".into(), json!(s));
        }
        m
    }
}

pub(super) fn execute(cmd: &Command) -> CommandResult {
    let (name, header, outcome) = match cmd {
        Command::Laws { structure, samples, seed, .. } => {
            let mut h = Header::new(Some(structure));
            h.samples = *samples;
            h.seed = *seed;
            ("laws", h, with_structure(structure, |any| dispatch!(any, s => laws(s, *samples, *seed))))
        }
        Command::Witness { kind, structure, epsilon, alpha, m, .. } => (
            "witness",
            Header::new(Some(structure)),
            with_structure(structure, |any| {
                dispatch!(any, s => witness(s, *kind, epsilon.as_deref(), alpha.as_deref(), m.as_deref()))
            }),
        ),
        Command::Norm { action: NormAction::Build { constants, check_samples, .. } } => {
            let mut h = Header::new(None);
            h.samples = *check_samples;
            ("norm build", h, norm_build(constants, *check_samples))
        }
        Command::Norm { action: NormAction::Check { kind, structure, samples, .. } } => {
            let mut h = Header::new(Some(structure));
            h.samples = *samples;
            ("norm check", h, norm_check(kind, structure, *samples))
        }
        Command::Seq { action: SeqAction::Eval { structure, term, from, to, partial_sums, .. } } => (
            "seq eval",
            Header::new(Some(structure)),
            with_structure(structure, |any| dispatch!(any, s => seq_eval(s, term, *from, *to, *partial_sums))),
        ),
        Command::Geom { structure, r, terms, .. } => (
            "geom",
            Header::new(Some(structure)),
            with_structure(structure, |any| dispatch!(any, s => geom(s, r, *terms))),
        ),
        Command::Condense { direction, structure, term, eps, depth, .. } => {
            let mut h = Header::new(Some(structure));
            h.depth = *depth;
            (
                "condense",
                h,
                with_structure(structure, |any| {
                    dispatch!(any, s => condense(s, *direction, term, eps.as_deref(), *depth))
                }),
            )
        }
        Command::Ratio { structure, x0_norm, r, eps, .. } => (
            "ratio",
            Header::new(Some(structure)),
            with_structure(structure, |any| dispatch!(any, s => ratio(s, x0_norm, r, eps.as_deref()))),
        ),
        Command::Bernoulli { structure, xs, mode, .. } => (
            "bernoulli",
            Header::new(Some(structure)),
            with_structure(structure, |any| dispatch!(any, s => bernoulli(s, xs, mode))),
        ),
        Command::Cert { action: CertAction::Validate { file, eps, depth, .. } } => {
            let mut h = Header::new(None);
            h.depth = *depth;
            let outcome = cert_validate(file, eps.as_deref(), *depth, &mut h);
            ("cert validate", h, outcome)
        }
    };
    let header = header.into_map();
    match outcome {
        Ok((status, payload)) => CommandResult::new(name, status, header, payload),
        Err(Failure::Lib(e)) => CommandResult::failed(name, header, &e),
        Err(Failure::Usage(msg)) => {
            CommandResult::new(name, Status::Error, header, json!({ "error": "Usage", "message": msg }))
        }
    }
}

fn with_structure(id: &str, f: impl FnOnce(&AnyStructure) -> Outcome) -> Outcome {
    f(&AnyStructure::resolve(id)?)
}

fn elem<S: OrderedHemiring>(s: &S, text: &str) -> Result<S::Elem> {
    s.parse(text.trim()).map_err(Error::Parse)
}

/// Text of the default ε ladder for a structure.
pub fn default_epsilons(id: &str) -> Vec<String> {
    if id == "zx" || id == "nonneg:zx" {
        return (1..=5).map(|k| format!("1/X^{k}")).collect();
    }
    if let Some(p) = id.strip_prefix("z1p:").and_then(|p| p.parse::<u128>().ok()) {
        return (1..=6u32)
            .map(|k| {
                let target = 10u128.pow(k);
                let mut q = 1u128;
                while q < target {
                    q *= p;
                }
                format!("1/{q}")
            })
            .collect();
    }
    (1..=6).map(|k| format!("1/{}", 10u64.pow(k))).collect()
}

fn epsilons<S: OrderedHemiring>(s: &S, text: Option<&str>) -> Result<Vec<S::Elem>> {
    match text {
        Some(t) => t.split(',').map(|e| elem(s, e)).collect(),
        None => default_epsilons(&s.id()).iter().map(|e| elem(s, e)).collect(),
    }
}

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Lib(Error::Json(e.to_string())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn laws<S: OrderedHemiring + 'static>(s: &S, samples: usize, seed: u64) -> Outcome {
    let report = check_hemiring_laws(s, samples, seed);
    Ok((
        Status::from_pass(report.passed()),
        json!({
            "structure": s.describe(),
            "failure_count": report.failure_count(),
            "laws": report.laws,
        }),
    ))
}

fn witness<S: OrderedHemiring>(
    s: &S,
    kind: WitnessKind,
    epsilon: Option<&str>,
    alpha: Option<&str>,
    m: Option<&str>,
) -> Outcome {
    match kind {
        WitnessKind::Density => {
            let eps = epsilon.ok_or_else(|| Failure::Usage("density needs --epsilon".into()))?;
            let eps = elem(s, eps)?;
            if !s.is_positive(&eps) {
                return Err(Error::NonPositiveEpsilon(s.render(&eps)).into());
            }
            let w = s.density_witness(&eps)?;
            let holds = density_holds(s, &eps, &w);
            Ok((
                Status::from_pass(holds),
                json!({
                    "epsilon": s.render(&eps),
                    "beta": s.render(&w.0),
                    "gamma": s.render(&w.1),
                    "holds": holds,
                }),
            ))
        }
        WitnessKind::Shrink => {
            let (a, m) = match (alpha, m) {
                (Some(a), Some(m)) => (elem(s, a)?, elem(s, m)?),
                _ => return Err(Failure::Usage("shrink needs --alpha and --m".into())),
            };
            if !s.is_positive(&a) {
                return Err(Error::NonPositiveEpsilon(s.render(&a)).into());
            }
            if !s.is_positive(&m) {
                return Err(Error::NonPositiveBound(s.render(&m)).into());
            }
            let w = s.shrink_witness(&a, &m)?;
            let holds = shrink_holds(s, &a, &m, &w);
            Ok((
                Status::from_pass(holds),
                json!({
                    "alpha": s.render(&a),
                    "m": s.render(&m),
                    "left": s.render(&w.0),
                    "right": s.render(&w.1),
                    "holds": holds,
                }),
            ))
        }
    }
}

fn norm_build(path: &Path, samples: usize) -> Outcome {
    let doc = read_json(path)?;
    let field = doc.get("field").and_then(Value::as_str).unwrap_or("rational");
    let any = AnyStructure::resolve(field)?;
    dispatch_ring!(&any, f => build_for(f, &doc, samples), _other => Err(Error::NotApplicable(format!(
        "structure constants need an ordered ring, got {field}"
    )).into()))
}

fn build_for<F: OrderedRing + 'static>(f: &F, doc: &Value, samples: usize) -> Outcome {
    let constants = StructureConstants::from_json(f, doc)?;
    let norm = build_finite_dim_pseudonorm(constants.clone(), abs_norm(f.clone())?)?;
    let report = check_pseudonorm_laws(&norm, samples, DEFAULT_SEED);
    let raw = check_pseudonorm_laws(&raw_coordinate_norm(constants, abs_norm(f.clone())?)?, samples, DEFAULT_SEED);
    let raw_submult = raw
        .laws
        .iter()
        .find(|l| l.law_name == "submultiplicative")
        .map_or(0, |l| l.failure_count);
    Ok((
        Status::from_pass(report.passed()),
        json!({
            "field": f.id(),
            "n": constants_dimension(doc),
            "m": f.render(norm.m()),
            "factor": f.render(norm.factor()),
            "zero_m": norm.zero_m(),
            "laws": report.laws,
            "uncorrected_submultiplicative_failures": raw_submult,
        }),
    ))
}

fn constants_dimension(doc: &Value) -> Value {
    doc.get("n").cloned().unwrap_or(Value::Null)
}

fn norm_check(kind: &str, structure: &str, samples: usize) -> Outcome {
    let any = AnyStructure::resolve(structure)?;
    let report = if kind == "abs" {
        dispatch_ring!(&any, s => check_pseudonorm_laws(&abs_norm(s.clone())?, samples, DEFAULT_SEED),
            _other => return Err(Error::NotARing(structure.to_string()).into()))
    } else if let Some(p) = kind.strip_prefix("padic:") {
        let p: u64 = p.parse().map_err(|_| Failure::Usage(format!("bad prime in '{kind}'")))?;
        if !matches!(any, AnyStructure::Rational(_)) {
            return Err(Error::NotApplicable(format!("the p-adic norm is defined on rational, not {structure}")).into());
        }
        check_pseudonorm_laws(&padic_valuation_norm(p)?, samples, DEFAULT_SEED)
    } else {
        return Err(Failure::Usage(format!("unknown norm kind '{kind}' (expected abs or padic:<p>)")));
    };
    Ok((
        Status::from_pass(report.passed()),
        json!({
            "norm": report.structure,
            "failure_count": report.failure_count(),
            "laws": report.laws,
        }),
    ))
}

fn seq_eval<S: OrderedHemiring>(s: &S, text: &str, from: Index, to: Index, partial_sums: bool) -> Outcome {
    if to < from {
        return Err(Failure::Usage(format!("--to {to} is before --from {from}")));
    }
    if to - from >= MAX_EVAL_ROWS {
        return Err(Failure::Usage(format!("at most {MAX_EVAL_ROWS} rows per call")));
    }
    let seq = SymbolicSequence::expr_from(text, from)?;
    let mut acc = s.zero();
    let mut values = Vec::new();
    for n in from..=to {
        let v = term(s, &seq, n)?;
        let shown = if partial_sums {
            acc = s.add(&acc, &v);
            &acc
        } else {
            &v
        };
        values.push(json!({ "n": index_json(n), "value": s.render(shown) }));
    }
    Ok((
        Status::Ok,
        json!({
            "term": text,
            "from": index_json(from),
            "to": index_json(to),
            "partial_sums": partial_sums,
            "values": values,
        }),
    ))
}

fn geom<S: OrderedHemiring>(s: &S, r: &str, terms: Option<u64>) -> Outcome {
    let r = elem(s, r)?;
    let g = geometric_sum(s, &r)?;
    let identity = geometric_identity(s, &r, 64)?;
    let eps = epsilons(s, None)?;
    let validation = validate_convergence(s, &g.certificate, &eps, DEFAULT_DEPTH)?;
    let mut payload = json!({
        "r": s.render(&r),
        "sum": s.render(&g.sum),
        "one_minus_r_inverse": s.render(&g.one_minus_r_inverse),
        "certificate": convergence_to_json(s, &g.certificate),
        "identity": identity,
        "validation": validation,
    });
    if let Some(n) = terms {
        if n == 0 {
            return Err(Failure::Usage("--terms must be at least 1".into()));
        }
        let summands = g.certificate.sequence.summands().expect("partial sums");
        let sn = partial_sum(s, summands, Index::from(n - 1))?;
        let minus = s.neg(&sn).ok_or_else(|| Error::NotARing(s.id()))?;
        let gap = s.abs(&s.add(&g.sum, &minus));
        payload["partial_sum"] = json!({ "terms": n, "value": s.render(&sn), "gap": s.render(&gap) });
    }
    Ok((Status::from_pass(identity.passed() && validation.pass), payload))
}

/// Probe length for recognizing a geometric series.
const RATIO_PROBE: Index = PRECONDITION_FLOOR;

/// A Cauchy certificate for `Σ x`, available when `x` is geometric on the probe window.
fn series_certificate<S: OrderedHemiring>(s: &S, text: &str, x: &SymbolicSequence<S::Elem>) -> Result<CauchyCertificate<S::Elem>> {
    let start = x.start();
    let end = start + RATIO_PROBE;
    let x1 = term(s, x, start)?;
    if s.is_zero(&x1) {
        for n in start..=end {
            if !s.is_zero(&term(s, x, n)?) {
                return Err(Error::NotApplicable(format!(
                    "no series certificate for '{text}': first term is 0 but x_{n} is not"
                )));
            }
        }
        return Ok(CauchyCertificate::claimed(
            GroupSequence::Scalar(x.clone().partial_sums()),
            Modulus::Constant(start),
        ));
    }
    let inv = s.invert(&x1)?;
    let r = s.mul(&term(s, x, start + 1)?, &inv);
    let mut prev = x1.clone();
    for n in start + 1..=end {
        let cur = term(s, x, n)?;
        if cur != s.mul(&r, &prev) {
            return Err(Error::NotApplicable(format!(
                "no series certificate for '{text}': successive ratios are not constant at n = {n}"
            )));
        }
        prev = cur;
    }
    let res = ratio_test(s, &s.abs(&x1), &s.abs(&r), Some(&GroupSequence::Scalar(x.clone())), end)?;
    Ok(res.certificate)
}

fn condense<S: OrderedHemiring>(s: &S, direction: Direction, text: &str, eps: Option<&str>, depth: Index) -> Outcome {
    let eps = epsilons(s, eps)?;
    let x = SymbolicSequence::expr(text)?;
    let input = series_certificate(s, text, &x)?;
    let window = precondition_window(s, &input.modulus, &eps, depth);
    let out = match direction {
        Direction::Forward => condensation_forward(s, &input, window)?,
        Direction::Backward => {
            let condensed = condensation_forward(s, &input, window)?;
            condensation_backward(s, &condensed, precondition_window(s, &condensed.modulus, &eps, depth))?
        }
        Direction::Roundtrip => condensation_roundtrip(s, &input, window)?,
    };
    let validation = validate_cauchy(s, &out, &eps, depth)?;
    let inequalities = condensation_inequalities(s, &x, 10)?;
    let pass = validation.pass && inequalities.iter().all(|r| r.passed());
    Ok((
        Status::from_pass(pass),
        json!({
            "direction": direction.name(),
            "term": text,
            "input": cauchy_to_json(s, &input),
            "certificate": cauchy_to_json(s, &out),
            "validation": validation,
            "inequalities": inequalities,
        }),
    ))
}

fn ratio<S: OrderedHemiring>(s: &S, x0: &str, r: &str, eps: Option<&str>) -> Outcome {
    let (x0, r) = (elem(s, x0)?, elem(s, r)?);
    let eps = epsilons(s, eps)?;
    let res = ratio_test(s, &x0, &r, None, RATIO_PROBE)?;
    let validation = validate_cauchy(s, &res.certificate, &eps, DEFAULT_DEPTH)?;
    let tail = tail_identity_check(s, &r, 64)?;
    Ok((
        Status::from_pass(validation.pass && tail.passed()),
        json!({
            "x0_norm": s.render(&x0),
            "r": s.render(&r),
            "one_minus_r_inverse": s.render(&res.one_minus_r_inverse),
            "tail_constant": s.render(&res.tail_constant),
            "certificate": cauchy_to_json(s, &res.certificate),
            "validation": validation,
            "tail_identity": tail,
        }),
    ))
}

fn bernoulli<S: OrderedHemiring>(s: &S, xs: &str, mode: &str) -> Outcome {
    let mode: BernoulliMode = mode.parse().map_err(Failure::Usage)?;
    let xs: Vec<S::Elem> = xs.split(';').map(|x| elem(s, x)).collect::<Result<_>>()?;
    let tuples = match mode {
        BernoulliMode::SinglePower(_) => xs.into_iter().map(|x| vec![x]).collect(),
        _ => vec![xs],
    };
    let report = bernoulli_check(s, &tuples, mode)?;
    let status = if !report.precondition_failures.is_empty() {
        Status::PreconditionFailure
    } else {
        Status::from_pass(report.law.passed())
    };
    let mut payload = to_value(&report);
    payload["pass"] = json!(report.passed());
    Ok((status, payload))
}

fn cert_validate(path: &Path, eps: Option<&str>, depth: Index, header: &mut Header) -> Outcome {
    let doc = read_json(path)?;
    let id = certificate_structure(&doc)?;
    let any = AnyStructure::resolve(&id)?;
    header.structure = Some(any.id());
    dispatch!(&any, s => validate_doc(s, &doc, eps, depth))
}

fn validate_doc<S: OrderedHemiring>(s: &S, doc: &Value, eps: Option<&str>, depth: Index) -> Outcome {
    let eps = epsilons(s, eps)?;
    let report = match certificate_from_json(s, doc)? {
        CertificateDoc::Convergence(c) => validate_convergence(s, &c, &eps, depth)?,
        CertificateDoc::Cauchy(c) => validate_cauchy(s, &c, &eps, depth)?,
    };
    Ok((Status::from_pass(report.pass), json!({ "report": report })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladders() {
        assert_eq!(default_epsilons("rational")[5], "1/1000000");
        assert_eq!(
            default_epsilons("z1p:2"),
            ["1/16", "1/128", "1/1024", "1/16384", "1/131072", "1/1048576"]
        );
        assert_eq!(default_epsilons("z1p:3")[0], "1/27");
        assert_eq!(default_epsilons("zx")[4], "1/X^5");
    }
}
