//! Hemiring-valued pseudonorms.
//!
//! A [`Pseudonorm`] maps a [`NormSource`] (a ring, an algebra given by
//! structure constants, or a plain group) into the non-negative cone of an
//! ordered hemiring.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instances::{MaxTimes, MaxTimesQpos, Rational, RationalField};
use crate::laws::{seeded_rng, LawFailure, LawReport, LawSuiteReport};
use crate::order::{OrderedHemiring, OrderedRing, SampleBounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormStrength {
    Pseudonorm,
    MultiplicativeNorm,
    UltrametricValuation,
}

/// Domain of a pseudonorm: an additive group, possibly with a multiplication.
pub trait NormSource: Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn source_name(&self) -> String;
    fn origin(&self) -> Self::Elem;
    fn plus(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn minus(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for sources without a multiplication.
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R, bounds: &SampleBounds) -> Self::Elem;
    fn show(&self, a: &Self::Elem) -> String;
}

impl<R: OrderedRing> NormSource for R {
    type Elem = R::Elem;

    fn source_name(&self) -> String {
        self.id()
    }
    fn origin(&self) -> R::Elem {
        OrderedHemiring::zero(self)
    }
    fn plus(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        OrderedHemiring::add(self, a, b)
    }
    fn minus(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        OrderedRing::sub(self, a, b)
    }
    fn product(&self, a: &R::Elem, b: &R::Elem) -> Option<R::Elem> {
        Some(OrderedHemiring::mul(self, a, b))
    }
    fn draw<G: Rng + ?Sized>(&self, rng: &mut G, bounds: &SampleBounds) -> R::Elem {
        OrderedHemiring::sample(self, rng, bounds)
    }
    fn show(&self, a: &R::Elem) -> String {
        OrderedHemiring::render(self, a)
    }
}

pub trait Pseudonorm: Send + Sync {
    type Source: NormSource;
    type Target: OrderedHemiring;

    fn name(&self) -> String;
    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn strength(&self) -> NormStrength;
    fn norm(&self, x: &<Self::Source as NormSource>::Elem) -> <Self::Target as OrderedHemiring>::Elem;
}

/// `|x| = max{x, −x}` into the ring itself.
#[derive(Debug, Clone)]
pub struct AbsNorm<R> {
    ring: R,
}

pub fn abs_norm<R: OrderedRing>(ring: R) -> Result<AbsNorm<R>> {
    if !ring.capabilities().totally_ordered {
        return Err(Error::NotTotallyOrdered(ring.id()));
    }
    Ok(AbsNorm { ring })
}

impl<R: OrderedRing> Pseudonorm for AbsNorm<R> {
    type Source = R;
    type Target = R;

    fn name(&self) -> String {
        format!("abs on {}", self.ring.id())
    }
    fn source(&self) -> &R {
        &self.ring
    }
    fn target(&self) -> &R {
        &self.ring
    }
    fn strength(&self) -> NormStrength {
        NormStrength::MultiplicativeNorm
    }
    fn norm(&self, x: &R::Elem) -> R::Elem {
        self.ring.abs(x)
    }
}

/// `|r|_p = p^(−v_p(r))` from ℚ into G₀, with `|0|_p` the bottom.
#[derive(Debug, Clone)]
pub struct PadicNorm {
    p: u64,
}

pub fn padic_valuation_norm(p: u64) -> Result<PadicNorm> {
    if !crate::instances::is_prime(p) {
        return Err(Error::NotApplicable(format!("{p} is not prime")));
    }
    Ok(PadicNorm { p })
}

/// `v_p(r)` for nonzero `r`.
pub fn valuation(p: u64, r: &Rational) -> i64 {
    let pb = BigInt::from(p);
    let count = |x: &BigInt| {
        let mut x = x.abs();
        let mut k = 0i64;
        loop {
            let (q, rem) = x.div_rem(&pb);
            if !rem.is_zero() {
                return k;
            }
            x = q;
            k += 1;
        }
    };
    count(r.numer()) - count(r.denom())
}

impl Pseudonorm for PadicNorm {
    type Source = RationalField;
    type Target = MaxTimesQpos;

    fn name(&self) -> String {
        format!("padic:{}", self.p)
    }
    fn source(&self) -> &RationalField {
        &RationalField
    }
    fn target(&self) -> &MaxTimesQpos {
        &MaxTimesQpos
    }
    fn strength(&self) -> NormStrength {
        NormStrength::UltrametricValuation
    }
    fn norm(&self, x: &Rational) -> MaxTimes {
        if x.is_zero() {
            return MaxTimes::Bottom;
        }
        let v = valuation(self.p, x);
        let pk = Rational::from_integer(num_traits::pow(BigInt::from(self.p), v.unsigned_abs() as usize));
        MaxTimes::Value(if v >= 0 { pk.recip() } else { pk })
    }
}

/// Structure constants `γ_ijk` with `e_i e_j = Σ_k γ_ijk e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants<F: OrderedHemiring> {
    n: usize,
    gamma: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: OrderedHemiring> StructureConstants<F> {
    pub fn new(gamma: Vec<Vec<Vec<F::Elem>>>) -> Result<Self> {
        let n = gamma.len();
        if n == 0 {
            return Err(Error::EmptyAlgebra);
        }
        let square = gamma.iter().all(|row| row.len() == n && row.iter().all(|c| c.len() == n));
        if !square {
            return Err(Error::InvalidConstants(format!("gamma must be {n}x{n}x{n}")));
        }
        Ok(StructureConstants { n, gamma })
    }

    /// Reads `{"n": int, "gamma": [[[text]]], "field": id}` given the already resolved field.
    pub fn from_json(field: &F, doc: &serde_json::Value) -> Result<Self> {
        let n = doc
            .get("n")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::InvalidConstants("missing integer field `n`".into()))? as usize;
        if n == 0 {
            return Err(Error::EmptyAlgebra);
        }
        let bad = |msg: &str| Error::InvalidConstants(msg.to_string());
        let gamma = doc.get("gamma").and_then(|g| g.as_array()).ok_or_else(|| bad("missing array `gamma`"))?;
        let mut out = Vec::with_capacity(n);
        for plane in gamma {
            let plane = plane.as_array().ok_or_else(|| bad("gamma[i] must be an array"))?;
            let mut rows = Vec::with_capacity(n);
            for row in plane {
                let row = row.as_array().ok_or_else(|| bad("gamma[i][j] must be an array"))?;
                let mut cells = Vec::with_capacity(n);
                for cell in row {
                    let text = cell.as_str().ok_or_else(|| bad("entries must be element strings"))?;
                    cells.push(field.parse(text)?);
                }
                rows.push(cells);
            }
            out.push(rows);
        }
        if out.len() != n {
            return Err(Error::InvalidConstants(format!("gamma has {} planes, n = {n}", out.len())));
        }
        Self::new(out)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        &self.gamma[i][j][k]
    }

    pub fn entries(&self) -> impl Iterator<Item = &F::Elem> {
        self.gamma.iter().flatten().flatten()
    }
}

/// The algebra `F^n` with multiplication given by structure constants.
#[derive(Debug, Clone)]
pub struct FiniteDimAlgebra<F: OrderedHemiring> {
    field: F,
    constants: StructureConstants<F>,
}

impl<F: OrderedRing> FiniteDimAlgebra<F> {
    pub fn new(field: F, constants: StructureConstants<F>) -> Self {
        FiniteDimAlgebra { field, constants }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn constants(&self) -> &StructureConstants<F> {
        &self.constants
    }

    pub fn basis(&self, i: usize) -> Vec<F::Elem> {
        (0..self.constants.n)
            .map(|k| if k == i { self.field.unit() } else { self.field.zero() })
            .collect()
    }

    pub fn element(&self, coords: Vec<F::Elem>) -> Result<Vec<F::Elem>> {
        if coords.len() != self.constants.n {
            return Err(Error::InvalidConstants(format!(
                "element has {} coordinates, algebra dimension is {}",
                coords.len(),
                self.constants.n
            )));
        }
        Ok(coords)
    }
}

impl<F: OrderedRing> NormSource for FiniteDimAlgebra<F> {
    type Elem = Vec<F::Elem>;

    fn source_name(&self) -> String {
        format!("{}^{}", self.field.id(), self.constants.n)
    }
    fn origin(&self) -> Self::Elem {
        vec![self.field.zero(); self.constants.n]
    }
    fn plus(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }
    fn minus(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| OrderedRing::sub(&self.field, x, y)).collect()
    }
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let f = &self.field;
        let n = self.constants.n;
        let mut out = vec![f.zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let ab = f.mul(ai, bj);
                for (k, slot) in out.iter_mut().enumerate() {
                    *slot = f.add(slot, &f.mul(&ab, self.constants.gamma(i, j, k)));
                }
            }
        }
        Some(out)
    }
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R, bounds: &SampleBounds) -> Self::Elem {
        (0..self.constants.n).map(|_| self.field.sample(rng, bounds)).collect()
    }
    fn show(&self, a: &Self::Elem) -> String {
        render_tuple(a.iter().map(|x| self.field.render(x)))
    }
}

fn render_tuple(parts: impl Iterator<Item = String>) -> String {
    format!("({})", parts.collect::<Vec<_>>().join(", "))
}

/// `‖a‖′ = nM·Σᵢ‖aᵢ‖` on an algebra given by structure constants.
#[derive(Debug, Clone)]
pub struct FiniteDimNorm<F: OrderedRing, N: Pseudonorm<Source = F>> {
    algebra: FiniteDimAlgebra<F>,
    base: N,
    /// `nM`, or the target's 1 for the uncorrected norm.
    factor: <N::Target as OrderedHemiring>::Elem,
    m: <N::Target as OrderedHemiring>::Elem,
    zero_m: bool,
}

/// Builds `‖a‖′ = nM·Σᵢ‖aᵢ‖` with `M = max ‖γ_ijk‖`; an all-zero table uses `M = 1`.
pub fn build_finite_dim_pseudonorm<F, N>(constants: StructureConstants<F>, base: N) -> Result<FiniteDimNorm<F, N>>
where
    F: OrderedRing,
    N: Pseudonorm<Source = F>,
{
    let t = base.target();
    let caps = t.capabilities();
    if !caps.totally_ordered {
        return Err(Error::NotTotallyOrdered(t.id()));
    }
    if !caps.commutative {
        return Err(Error::NotApplicable(format!("target {} must be commutative", t.id())));
    }
    let one = t.one().ok_or_else(|| Error::NotApplicable(format!("target {} has no 1", t.id())))?;
    let mut m = t.zero();
    for g in constants.entries() {
        m = t.max_of(&m, &base.norm(g));
    }
    let zero_m = t.is_zero(&m);
    if zero_m {
        m = one;
    }
    let n = BigUint::from(constants.dimension());
    let factor = t.times(&n, &m);
    Ok(FiniteDimNorm {
        algebra: FiniteDimAlgebra::new(base.source().clone(), constants),
        base,
        factor,
        m,
        zero_m,
    })
}

/// The uncorrected `Σᵢ‖aᵢ‖`, generally not submultiplicative.
pub fn raw_coordinate_norm<F, N>(constants: StructureConstants<F>, base: N) -> Result<FiniteDimNorm<F, N>>
where
    F: OrderedRing,
    N: Pseudonorm<Source = F>,
{
    let mut built = build_finite_dim_pseudonorm(constants, base)?;
    built.factor = built.base.target().one().expect("checked at build");
    Ok(built)
}

impl<F, N> FiniteDimNorm<F, N>
where
    F: OrderedRing,
    N: Pseudonorm<Source = F>,
{
    pub fn algebra(&self) -> &FiniteDimAlgebra<F> {
        &self.algebra
    }

    /// `M = max ‖γ_ijk‖` (or 1 for an all-zero table).
    pub fn m(&self) -> &<N::Target as OrderedHemiring>::Elem {
        &self.m
    }

    pub fn zero_m(&self) -> bool {
        self.zero_m
    }

    /// The scalar in front of `Σᵢ‖aᵢ‖`.
    pub fn factor(&self) -> &<N::Target as OrderedHemiring>::Elem {
        &self.factor
    }
}

impl<F, N> Pseudonorm for FiniteDimNorm<F, N>
where
    F: OrderedRing,
    N: Pseudonorm<Source = F>,
{
    type Source = FiniteDimAlgebra<F>;
    type Target = N::Target;

    fn name(&self) -> String {
        format!("finite-dim over {}", self.base.name())
    }
    fn source(&self) -> &FiniteDimAlgebra<F> {
        &self.algebra
    }
    fn target(&self) -> &N::Target {
        self.base.target()
    }
    fn strength(&self) -> NormStrength {
        NormStrength::Pseudonorm
    }
    fn norm(&self, a: &Vec<F::Elem>) -> <N::Target as OrderedHemiring>::Elem {
        let t = self.base.target();
        let sum = a.iter().fold(t.zero(), |acc, x| t.add(&acc, &self.base.norm(x)));
        t.mul(&self.factor, &sum)
    }
}

/// The group ℚᵏ under coordinatewise addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VectorGroup {
    pub k: usize,
}

impl NormSource for VectorGroup {
    type Elem = Vec<Rational>;

    fn source_name(&self) -> String {
        format!("rational^{}", self.k)
    }
    fn origin(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.k]
    }
    fn plus(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn minus(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn product(&self, _a: &Vec<Rational>, _b: &Vec<Rational>) -> Option<Vec<Rational>> {
        None
    }
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R, bounds: &SampleBounds) -> Vec<Rational> {
        (0..self.k).map(|_| OrderedHemiring::sample(&RationalField, rng, bounds)).collect()
    }
    fn show(&self, a: &Vec<Rational>) -> String {
        render_tuple(a.iter().map(crate::instances::render_rational))
    }
}

/// `‖(a₁,…,a_k)‖ = Σ|aᵢ|` on ℚᵏ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumAbsNorm {
    group: VectorGroup,
}

impl SumAbsNorm {
    pub fn new(k: usize) -> Self {
        SumAbsNorm { group: VectorGroup { k } }
    }
}

impl Pseudonorm for SumAbsNorm {
    type Source = VectorGroup;
    type Target = RationalField;

    fn name(&self) -> String {
        format!("sum-abs on rational^{}", self.group.k)
    }
    fn source(&self) -> &VectorGroup {
        &self.group
    }
    fn target(&self) -> &RationalField {
        &RationalField
    }
    fn strength(&self) -> NormStrength {
        NormStrength::Pseudonorm
    }
    fn norm(&self, x: &Vec<Rational>) -> Rational {
        x.iter().map(|v| v.abs()).sum()
    }
}

type NormCheck<N> = Box<
    dyn Fn(
            &N,
            &<<N as Pseudonorm>::Source as NormSource>::Elem,
            &<<N as Pseudonorm>::Source as NormSource>::Elem,
            &<<N as Pseudonorm>::Source as NormSource>::Elem,
        ) -> Option<(String, String)>
        + Send
        + Sync,
>;

fn norm_laws<N: Pseudonorm + 'static>(norm: &N) -> Vec<(&'static str, NormCheck<N>)> {
    let mut laws: Vec<(&'static str, NormCheck<N>)> = vec![
        (
            "non_negative_definite",
            Box::new(|nm: &N, r, _, _| {
                let t = nm.target();
                let v = nm.norm(r);
                let zero_in = nm.source().origin() == *r;
                let ok = t.ge(&v, &t.zero()) && (t.is_zero(&v) == zero_in);
                (!ok).then(|| ("|r| >= 0 and (|r| = 0 iff r = 0)".into(), format!("|r| = {}", t.render(&v))))
            }),
        ),
        (
            "triangle_difference",
            Box::new(|nm: &N, r, s, _| {
                let t = nm.target();
                let lhs = nm.norm(&nm.source().minus(r, s));
                let rhs = t.add(&nm.norm(r), &nm.norm(s));
                (!t.le(&lhs, &rhs)).then(|| ("|r-s| <= |r|+|s|".into(), format!("{} > {}", t.render(&lhs), t.render(&rhs))))
            }),
        ),
        (
            "metric_triangle",
            Box::new(|nm: &N, x, y, z| {
                let t = nm.target();
                let src = nm.source();
                let lhs = nm.norm(&src.minus(x, z));
                let rhs = t.add(&nm.norm(&src.minus(x, y)), &nm.norm(&src.minus(y, z)));
                (!t.le(&lhs, &rhs)).then(|| ("d(x,z) <= d(x,y)+d(y,z)".into(), format!("{} > {}", t.render(&lhs), t.render(&rhs))))
            }),
        ),
    ];
    if norm.source().product(&norm.source().origin(), &norm.source().origin()).is_some() {
        laws.push((
            "submultiplicative",
            Box::new(|nm: &N, r, s, _| {
                let t = nm.target();
                let lhs = nm.norm(&nm.source().product(r, s)?);
                let rhs = t.mul(&nm.norm(r), &nm.norm(s));
                (!t.le(&lhs, &rhs)).then(|| ("|rs| <= |r||s|".into(), format!("{} > {}", t.render(&lhs), t.render(&rhs))))
            }),
        ));
        if norm.strength() >= NormStrength::MultiplicativeNorm {
            laws.push((
                "multiplicative",
                Box::new(|nm: &N, r, s, _| {
                    let t = nm.target();
                    let lhs = nm.norm(&nm.source().product(r, s)?);
                    let rhs = t.mul(&nm.norm(r), &nm.norm(s));
                    (lhs != rhs).then(|| ("|rs| = |r||s|".into(), format!("{} != {}", t.render(&lhs), t.render(&rhs))))
                }),
            ));
        }
    }
    if norm.strength() == NormStrength::UltrametricValuation {
        laws.push((
            "ultrametric",
            Box::new(|nm: &N, r, s, _| {
                let t = nm.target();
                let (a, b) = (nm.norm(r), nm.norm(s));
                let lhs = nm.norm(&nm.source().plus(r, s));
                let max = t.max_of(&a, &b);
                if !t.le(&lhs, &max) {
                    return Some(("|r+s| <= max(|r|,|s|)".into(), format!("{} > {}", t.render(&lhs), t.render(&max))));
                }
                (a != b && lhs != max).then(|| {
                    ("|r| != |s| implies |r+s| = max(|r|,|s|)".into(), format!("{} != {}", t.render(&lhs), t.render(&max)))
                })
            }),
        ));
    }
    laws
}

/// Checks the pseudonorm axioms matching the declared strength on sampled triples.
pub fn check_pseudonorm_laws<N: Pseudonorm + 'static>(norm: &N, sample_count: usize, seed: u64) -> LawSuiteReport {
    check_pseudonorm_laws_with(norm, sample_count, seed, &SampleBounds::default())
}

pub fn check_pseudonorm_laws_with<N: Pseudonorm + 'static>(
    norm: &N,
    sample_count: usize,
    seed: u64,
    bounds: &SampleBounds,
) -> LawSuiteReport {
    let mut rng = seeded_rng(seed);
    let src = norm.source();
    let triples: Vec<_> = (0..sample_count)
        .map(|_| (src.draw(&mut rng, bounds), src.draw(&mut rng, bounds), src.draw(&mut rng, bounds)))
        .collect();
    let laws = norm_laws(norm)
        .into_iter()
        .map(|(name, check)| {
            let failures: Vec<LawFailure> = triples
                .par_iter()
                .filter_map(|(a, b, c)| {
                    check(norm, a, b, c).map(|(expected, observed)| LawFailure {
                        inputs: vec![src.show(a), src.show(b), src.show(c)],
                        expected,
                        observed,
                    })
                })
                .collect();
            LawReport::from_failures(name, sample_count, seed, failures)
        })
        .collect();
    LawSuiteReport {
        structure: norm.name(),
        seed,
        samples: sample_count,
        laws,
    }
}

/// Random structure constants over ℚ: dimension in `1..=max_n`, entries `a/b`
/// with `b ∈ 1..=4` and `|a/b| ≤ bound`.
pub fn random_rational_constants<R: Rng + ?Sized>(rng: &mut R, max_n: usize, bound: i64) -> StructureConstants<RationalField> {
    let n = rng.gen_range(1..=max_n);
    let gamma = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            if rng.gen_bool(0.3) {
                                return Rational::zero();
                            }
                            let d = rng.gen_range(1..=4i64);
                            crate::instances::rat(rng.gen_range(-bound * d..=bound * d), d)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    StructureConstants::new(gamma).expect("square table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{int, rat, ZxField};

    fn gaussian() -> StructureConstants<RationalField> {
        let (z, o) = (int(0), int(1));
        StructureConstants::new(vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![-o.clone(), z.clone()]],
        ])
        .unwrap()
    }

    #[test]
    fn abs_examples() {
        let q = abs_norm(RationalField).unwrap();
        assert_eq!(q.norm(&rat(-3, 4)), rat(3, 4));
        let zx = abs_norm(ZxField).unwrap();
        let f = ZxField.parse("1-X").unwrap();
        assert_eq!(OrderedHemiring::render(&ZxField, &zx.norm(&f)), "X-1");
    }

    #[test]
    fn padic_examples() {
        let two = padic_valuation_norm(2).unwrap();
        assert_eq!(two.norm(&int(12)), MaxTimes::Value(rat(1, 4)));
        assert_eq!(two.norm(&int(0)), MaxTimes::Bottom);
        let three = padic_valuation_norm(3).unwrap();
        assert_eq!(three.norm(&rat(5, 9)), MaxTimes::Value(int(9)));
    }

    #[test]
    fn gaussian_norm_example() {
        let norm = build_finite_dim_pseudonorm(gaussian(), abs_norm(RationalField).unwrap()).unwrap();
        let alg = norm.algebra();
        let a = vec![int(1), int(1)];
        let b = vec![int(1), int(-1)];
        assert_eq!(norm.m(), &int(1));
        assert_eq!(norm.norm(&a), int(4));
        assert_eq!(norm.norm(&b), int(4));
        let ab = alg.product(&a, &b).unwrap();
        assert_eq!(ab, vec![int(2), int(0)]);
        assert_eq!(norm.norm(&ab), int(4));
        assert_eq!(norm.norm(&alg.origin()), int(0));
    }

    #[test]
    fn zero_table_uses_unit_m() {
        let z = int(0);
        let sc = StructureConstants::new(vec![vec![vec![z.clone(), z.clone()]; 2]; 2]).unwrap();
        let norm = build_finite_dim_pseudonorm(sc, abs_norm(RationalField).unwrap()).unwrap();
        assert!(norm.zero_m());
        assert_eq!(norm.factor(), &int(2));
    }

    #[test]
    fn empty_algebra_rejected() {
        assert_eq!(
            StructureConstants::<RationalField>::new(vec![]).unwrap_err(),
            Error::EmptyAlgebra
        );
        let doc = serde_json::json!({"n": 0, "gamma": [], "field": "rational"});
        assert_eq!(
            StructureConstants::from_json(&RationalField, &doc).unwrap_err(),
            Error::EmptyAlgebra
        );
    }

    #[test]
    fn json_constants() {
        let doc = serde_json::json!({
            "n": 2,
            "gamma": [[["1","0"],["0","1"]],[["0","1"],["-1","0"]]],
            "field": "rational"
        });
        assert_eq!(StructureConstants::from_json(&RationalField, &doc).unwrap(), gaussian());
    }

    #[test]
    fn law_suites_pass() {
        assert!(check_pseudonorm_laws(&abs_norm(RationalField).unwrap(), 300, 1).passed());
        assert!(check_pseudonorm_laws(&padic_valuation_norm(2).unwrap(), 300, 1).passed());
        let built = build_finite_dim_pseudonorm(gaussian(), abs_norm(RationalField).unwrap()).unwrap();
        assert!(check_pseudonorm_laws(&built, 300, 1).passed());
        assert!(check_pseudonorm_laws(&SumAbsNorm::new(2), 300, 1).passed());
    }

    #[test]
    fn padic_base_for_algebra_norm() {
        let built = build_finite_dim_pseudonorm(gaussian(), padic_valuation_norm(3).unwrap()).unwrap();
        assert!(check_pseudonorm_laws(&built, 200, 5).passed());
    }
}
