//! Intersection numbers on partial flag varieties of `V = ℂⁿ` by torus localization.
//!
//! A diagonal torus acts on `V` with character `t_i` on `e_i`. Its fixed points on
//! `Fl(d₁,…,d_k; n)` are the chains of coordinate subspaces, and every bundle used here is
//! described at such a point by the multiset of its torus weights. Integrals are
//! Atiyah–Bott sums over ℚ after specializing the `t_i` to distinct integers, done twice
//! with independent draws.
//!
//! Segre classes follow the push-forward convention `s(E) = c(E^∨)^{-1}`, so that
//! `∫_{ℙ(E)} c₁(𝒪(1))^{r−1+k} α = ∫ s_k(E^∨) α` for `E` of rank `r`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exterior::{subsets, Member, MultiIndex, WedgePattern};
use crate::rep::{Check, FlagType};
use crate::{Error, Result};

/// Range of the random integer torus parameters.
pub const WEIGHT_RANGE: i64 = 10_000;

/// The pattern spanning the kernel of `∧⁴V₈ → 𝒢` on `Fl(1,4,7;8)`.
pub const RULING_PATTERN: &str = "U4^3 V + U7^4 + V^3 U1";
/// The pattern spanning the kernel of `∧⁴V₈ → 𝒫` on `Fl(2,6;8)`.
pub const HECKE_PATTERN: &str = "V^3 U2 + U6^4";

/// A torus-fixed point: the chain `S₁ ⊂ ⋯ ⊂ S_k` of coordinate index sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FixedPoint {
    pub chain: Vec<Vec<usize>>,
}

impl FixedPoint {
    /// The index set of the flag member of dimension `d`.
    pub fn member(&self, d: usize) -> Option<&[usize]> {
        self.chain.iter().find(|s| s.len() == d).map(Vec::as_slice)
    }

    /// Indices of the graded pieces `U_{d₁}, U_{d₂}/U_{d₁}, …, V/U_{d_k}`.
    pub fn blocks(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.chain.len() + 1);
        let mut prev: BTreeSet<usize> = BTreeSet::new();
        for s in self.chain.iter().map(|s| s.iter().copied().collect::<BTreeSet<_>>()).chain(std::iter::once((0..n).collect())) {
            out.push(s.difference(&prev).copied().collect());
            prev = s;
        }
        out
    }
}

/// All torus-fixed points of `flag`, ordered lexicographically by the chain.
pub fn fixed_points(flag: &FlagType) -> Vec<FixedPoint> {
    let mut out = Vec::new();
    extend_chain(flag, Vec::new(), &mut out);
    out
}

fn extend_chain(flag: &FlagType, chain: Vec<Vec<usize>>, out: &mut Vec<FixedPoint>) {
    let level = chain.len();
    if level == flag.dims.len() {
        out.push(FixedPoint { chain });
        return;
    }
    let base: Vec<usize> = chain.last().cloned().unwrap_or_default();
    let rest: Vec<usize> = (0..flag.n).filter(|i| !base.contains(i)).collect();
    for extra in subsets(rest.len(), flag.dims[level] - base.len()) {
        let mut s = base.clone();
        s.extend(extra.indices().into_iter().map(|i| rest[i]));
        s.sort_unstable();
        let mut next = chain.clone();
        next.push(s);
        extend_chain(flag, next, out);
    }
}

/// A bundle known through its torus weights at fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleSpec {
    /// The trivial bundle `V`.
    Trivial,
    /// The tautological sub-bundle `U_d`.
    Sub(usize),
    /// The quotient `V/U_d`.
    Quotient(usize),
    /// The tangent bundle of the flag variety.
    Tangent,
    /// `∧^k V` modulo the span of a wedge pattern, with an optional declared rank.
    PatternQuotient { name: Option<String>, pattern: WedgePattern, rank: Option<usize> },
    Dual(Box<BundleSpec>),
}

impl BundleSpec {
    /// The rank 19 bundle on `Fl(1,4,7;8)` whose section cuts out the abelian threefold.
    pub fn ruling() -> Self {
        BundleSpec::PatternQuotient { name: Some("G".into()), pattern: RULING_PATTERN.parse().expect("valid pattern"), rank: Some(19) }
    }

    /// The rank 14 bundle on `Fl(2,6;8)` whose section cuts out the Hecke-line locus.
    pub fn hecke() -> Self {
        BundleSpec::PatternQuotient { name: Some("P".into()), pattern: HECKE_PATTERN.parse().expect("valid pattern"), rank: Some(14) }
    }

    /// Torus weights at `fp`, as integer combinations evaluated at the parameters `t`.
    pub fn weights_at(&self, flag: &FlagType, fp: &FixedPoint, t: &[i64]) -> Result<Vec<i64>> {
        let member = |d: usize| fp.member(d).ok_or_else(|| Error::Precondition(format!("{flag} has no member of dimension {d}")));
        match self {
            BundleSpec::Trivial => Ok(t.to_vec()),
            BundleSpec::Sub(d) => Ok(member(*d)?.iter().map(|&i| t[i]).collect()),
            BundleSpec::Quotient(d) => {
                let s = member(*d)?;
                Ok((0..flag.n).filter(|i| !s.contains(i)).map(|i| t[i]).collect())
            }
            BundleSpec::Tangent => Ok(tangent_weights(flag, fp, t)),
            BundleSpec::PatternQuotient { name, pattern, rank } => {
                let out: Vec<i64> = pattern_complement(pattern, flag, fp)?.into_iter().map(|i| i.indices().iter().map(|&j| t[j]).sum()).collect();
                if let Some(r) = rank {
                    if out.len() != *r {
                        let label = name.clone().unwrap_or_else(|| pattern.to_string());
                        return Err(Error::Dimension(format!("bundle {label} has rank {} at a fixed point, declared {r}", out.len())));
                    }
                }
                Ok(out)
            }
            BundleSpec::Dual(inner) => Ok(inner.weights_at(flag, fp, t)?.into_iter().map(|w| -w).collect()),
        }
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleSpec::Trivial => write!(f, "V"),
            BundleSpec::Sub(d) => write!(f, "U{d}"),
            BundleSpec::Quotient(d) => write!(f, "V/U{d}"),
            BundleSpec::Tangent => write!(f, "T"),
            BundleSpec::PatternQuotient { name: Some(name), .. } => write!(f, "{name}"),
            BundleSpec::PatternQuotient { pattern, .. } => write!(f, "W[{pattern}]"),
            BundleSpec::Dual(inner) => write!(f, "dual({inner})"),
        }
    }
}

impl FromStr for BundleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let number = |x: &str| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad bundle `{s}`")));
        if let Some(inner) = s.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
            return Ok(BundleSpec::Dual(Box::new(inner.parse()?)));
        }
        if let Some(pattern) = s.strip_prefix("W[").and_then(|r| r.strip_suffix(']')) {
            return Ok(BundleSpec::PatternQuotient { name: None, pattern: pattern.parse()?, rank: None });
        }
        match s {
            "V" => Ok(BundleSpec::Trivial),
            "T" => Ok(BundleSpec::Tangent),
            "G" => Ok(BundleSpec::ruling()),
            "P" => Ok(BundleSpec::hecke()),
            _ => {
                if let Some(d) = s.strip_prefix("V/U") {
                    Ok(BundleSpec::Quotient(number(d)?))
                } else if let Some(d) = s.strip_prefix('U') {
                    Ok(BundleSpec::Sub(number(d)?))
                } else {
                    Err(Error::Parse(format!("unknown bundle `{s}`")))
                }
            }
        }
    }
}

/// Weights `t_b − t_a` of `⊕_{i<j} Hom(G_i, G_j)` over the graded pieces at `fp`.
pub fn tangent_weights(flag: &FlagType, fp: &FixedPoint, t: &[i64]) -> Vec<i64> {
    let blocks = fp.blocks(flag.n);
    let mut out = Vec::with_capacity(flag.dim());
    for (i, lower) in blocks.iter().enumerate() {
        for upper in &blocks[i + 1..] {
            for &a in lower {
                for &b in upper {
                    out.push(t[b] - t[a]);
                }
            }
        }
    }
    out
}

/// The index sets `I` with `e_I` outside the span of `pattern` at the coordinate flag `fp`.
///
/// A term `∧^{a₁}W₁ ∧ ⋯` with nested members `W₁ ⊂ W₂ ⊂ ⋯` contains `e_I` exactly when
/// `|I ∩ W_j| ≥ a₁ + ⋯ + a_j` for every `j`.
pub fn pattern_complement(pattern: &WedgePattern, flag: &FlagType, fp: &FixedPoint) -> Result<Vec<MultiIndex>> {
    let mut terms = Vec::new();
    for term in pattern.terms() {
        let mut factors = Vec::new();
        for &(m, a) in term {
            let set: Vec<usize> = match m {
                Member::Whole => (0..flag.n).collect(),
                Member::Dim(d) => fp.member(d).ok_or_else(|| Error::Precondition(format!("{flag} has no member of dimension {d}")))?.to_vec(),
            };
            factors.push((set, a));
        }
        factors.sort_by_key(|(s, _)| s.len());
        terms.push(factors);
    }
    Ok(subsets(flag.n, pattern.degree())
        .into_iter()
        .filter(|idx| {
            !terms.iter().any(|factors| {
                let mut need = 0;
                factors.iter().all(|(set, a)| {
                    need += a;
                    set.iter().filter(|&&i| idx.contains(i)).count() >= need
                })
            })
        })
        .collect())
}

/// Chern or Segre class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Chern,
    Segre,
}

/// A factor `c_k(E)^e` or `s_k(E)^e` of a monomial class expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFactor {
    pub kind: ClassKind,
    pub k: usize,
    pub bundle: BundleSpec,
    pub power: usize,
}

/// A product of characteristic classes, written like `c19(G)*s3(dual(U4))` or `c1(dual(U2))^12`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassExpr {
    pub factors: Vec<ClassFactor>,
}

impl ClassExpr {
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.k * f.power).sum()
    }

    /// The equivariant value at `fp`, as an integer polynomial in the specialized `t`.
    fn value_at(&self, flag: &FlagType, fp: &FixedPoint, t: &[i64]) -> Result<BigInt> {
        let mut out = BigInt::one();
        for f in &self.factors {
            let w = f.bundle.weights_at(flag, fp, t)?;
            let class = match f.kind {
                ClassKind::Chern => elementary(&w, f.k),
                ClassKind::Segre => segre(&w, f.k),
            };
            for _ in 0..f.power {
                out *= &class;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| {
                let name = match x.kind {
                    ClassKind::Chern => 'c',
                    ClassKind::Segre => 's',
                };
                let pow = if x.power == 1 { String::new() } else { format!("^{}", x.power) };
                format!("{name}{}({}){pow}", x.k, x.bundle)
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl FromStr for ClassExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for raw in split_top_level(s, '*') {
            let raw = raw.trim();
            let bad = || Error::Parse(format!("bad class factor `{raw}`"));
            let kind = match raw.chars().next() {
                Some('c') => ClassKind::Chern,
                Some('s') => ClassKind::Segre,
                _ => return Err(bad()),
            };
            let open = raw.find('(').ok_or_else(bad)?;
            let close = raw.rfind(')').ok_or_else(bad)?;
            let k = raw[1..open].parse::<usize>().map_err(|_| bad())?;
            let bundle: BundleSpec = raw[open + 1..close].parse()?;
            let tail = raw[close + 1..].trim();
            let power = if tail.is_empty() { 1 } else { tail.strip_prefix('^').ok_or_else(bad)?.trim().parse::<usize>().map_err(|_| bad())? };
            factors.push(ClassFactor { kind, k, bundle, power });
        }
        if factors.is_empty() {
            return Err(Error::Parse("empty class expression".into()));
        }
        Ok(ClassExpr { factors })
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `e_k` of the weights.
pub fn elementary(w: &[i64], k: usize) -> BigInt {
    let mut e = vec![BigInt::zero(); k + 1];
    e[0] = BigInt::one();
    for &x in w {
        for j in (1..=k).rev() {
            let add = &e[j - 1] * x;
            e[j] += add;
        }
    }
    e[k].clone()
}

/// Degree-`k` part of `c(E^∨)^{-1}` for `E` with weights `w`.
pub fn segre(w: &[i64], k: usize) -> BigInt {
    let dual: Vec<i64> = w.iter().map(|x| -x).collect();
    let c: Vec<BigInt> = (0..=k).map(|j| elementary(&dual, j)).collect();
    let mut s = vec![BigInt::one()];
    for j in 1..=k {
        let mut acc = BigInt::zero();
        for i in 1..=j {
            acc -= &c[i] * &s[j - i];
        }
        s.push(acc);
    }
    s[k].clone()
}

/// Distinct random integers in `[−range, range]`.
pub fn random_parameters(n: usize, range: i64, rng: &mut impl Rng) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(n);
    while out.len() < n {
        let x = rng.gen_range(-range..=range);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// The localization sum for one specialization of the torus parameters.
pub fn localization_sum(expr: &ClassExpr, flag: &FlagType, t: &[i64]) -> Result<BigRational> {
    let points = fixed_points(flag);
    let terms: Vec<Result<BigRational>> = points
        .par_iter()
        .map(|fp| {
            let euler: BigInt = tangent_weights(flag, fp, t).into_iter().map(BigInt::from).product();
            if euler.is_zero() {
                return Err(Error::Inconclusive("torus parameters are not distinct".into()));
            }
            Ok(BigRational::new(expr.value_at(flag, fp, t)?, euler))
        })
        .collect();
    let mut total = BigRational::zero();
    for term in terms {
        total += term?;
    }
    Ok(total)
}

/// An integral with the two specializations that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Integral {
    pub space: String,
    pub expr: String,
    pub value: String,
    pub specializations: Vec<Vec<i64>>,
}

impl Integral {
    pub fn as_i64(&self) -> Option<i64> {
        self.value.parse().ok()
    }
}

/// `∫_flag expr`, checked to be the same integer under two random specializations.
pub fn integrate(expr: &ClassExpr, flag: &FlagType, seed: u64) -> Result<Integral> {
    if expr.degree() != flag.dim() {
        return Err(Error::Precondition(format!("expression {expr} has degree {} but {flag} has dimension {}", expr.degree(), flag.dim())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::new();
    let mut specializations = Vec::new();
    for _ in 0..2 {
        let t = random_parameters(flag.n, WEIGHT_RANGE, &mut rng);
        values.push(localization_sum(expr, flag, &t)?);
        specializations.push(t);
    }
    if values[0] != values[1] {
        return Err(Error::Inconclusive(format!("specializations disagree: {} vs {}", values[0], values[1])));
    }
    if !values[0].is_integer() {
        return Err(Error::Inconclusive(format!("localization sum {} is not an integer", values[0])));
    }
    Ok(Integral { space: flag.to_string(), expr: expr.to_string(), value: values[0].to_integer().to_string(), specializations })
}

/// Parses `Fl:1,4,7:8`, `G:2:8`, `P:7` or the bare `1,4,7:8`.
pub fn parse_space(s: &str) -> Result<FlagType> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("Fl:") {
        return rest.parse();
    }
    if let Some(rest) = s.strip_prefix("G:") {
        let (k, n) = rest.split_once(':').ok_or_else(|| Error::Parse(format!("bad Grassmannian `{s}`")))?;
        let k = k.parse().map_err(|_| Error::Parse(format!("bad Grassmannian `{s}`")))?;
        let n = n.parse().map_err(|_| Error::Parse(format!("bad Grassmannian `{s}`")))?;
        return FlagType::new(vec![k], n);
    }
    if let Some(m) = s.strip_prefix("P:") {
        return Ok(FlagType::projective(m.parse().map_err(|_| Error::Parse(format!("bad projective space `{s}`")))?));
    }
    s.parse()
}

/// `χ(L)` for the line bundle `⊗_j det(G_j)^{c_j}` on the graded pieces, as the equivariant
/// holomorphic Lefschetz sum `Σ_p q^{ℓ_p} / Π_w (1 − q^{−w})` evaluated at `q = 1`.
///
/// The torus is restricted to a one-parameter subgroup with random distinct exponents and
/// each term is expanded in `ε = q − 1`; the sum is the `ε⁰` coefficient.
pub fn lefschetz_chi(flag: &FlagType, line: &[i64], seed: u64) -> Result<BigInt> {
    if line.len() != flag.dims.len() + 1 {
        return Err(Error::Dimension(format!("{flag} has {} graded pieces, got {} exponents", flag.dims.len() + 1, line.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::new();
    for _ in 0..2 {
        let a = random_parameters(flag.n, 60, &mut rng);
        values.push(lefschetz_sum(flag, line, &a));
    }
    if values[0] != values[1] || !values[0].is_integer() {
        return Err(Error::Inconclusive(format!("Lefschetz sums {} and {}", values[0], values[1])));
    }
    Ok(values[0].to_integer())
}

fn lefschetz_sum(flag: &FlagType, line: &[i64], a: &[i64]) -> BigRational {
    let order = flag.dim();
    let terms: Vec<BigRational> = fixed_points(flag)
        .par_iter()
        .map(|fp| {
            let ell: i64 = fp.blocks(flag.n).iter().zip(line).map(|(b, c)| c * b.iter().map(|&i| a[i]).sum::<i64>()).sum();
            // Π_w (1 − (1+ε)^{−w}) / ε has integer coefficients; invert it once.
            let mut denominator = vec![BigInt::zero(); order + 1];
            denominator[0] = BigInt::one();
            for m in tangent_weights(flag, fp, a) {
                let g: Vec<BigInt> = binomial_series(-m, order + 1).into_iter().skip(1).map(|c| -c).collect();
                denominator = series_mul(&denominator, &g, order);
            }
            let numerator = binomial_series(ell, order);
            let head = BigRational::from_integer(denominator[0].clone()).recip();
            let mut inverse = vec![head.clone()];
            for k in 1..=order {
                let acc = (1..=k).fold(BigRational::zero(), |acc, i| acc + BigRational::from_integer(denominator[i].clone()) * &inverse[k - i]);
                inverse.push(-acc * &head);
            }
            (0..=order).fold(BigRational::zero(), |acc, i| acc + BigRational::from_integer(numerator[i].clone()) * &inverse[order - i])
        })
        .collect();
    terms.into_iter().fold(BigRational::zero(), |acc, t| acc + t)
}

/// Coefficients of `(1+ε)^m` up to `ε^order`.
fn binomial_series(m: i64, order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for k in 1..=order {
        let next = &out[k - 1] * BigInt::from(m - k as i64 + 1) / BigInt::from(k);
        out.push(next);
    }
    out
}

fn series_mul(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    (0..=order).map(|k| (0..=k).fold(BigInt::zero(), |acc, i| acc + &a[i] * &b[k - i])).collect()
}

fn named(flag: &str, expr: &str, seed: u64) -> Result<Integral> {
    integrate(&expr.parse()?, &parse_space(flag)?, seed)
}

/// The enumerative checks, independent of the four-form.
pub fn enumerative_suite(seed: u64) -> Result<(Vec<Check>, Vec<Integral>)> {
    let mut checks = Vec::new();
    let mut integrals = Vec::new();
    let record = |checks: &mut Vec<Check>, name: &str, passed: bool, detail: String| checks.push(Check { name: name.into(), passed, detail });

    let ruling_flag = parse_space("Fl:1,4,7:8")?;
    let hecke_flag = parse_space("Fl:2,6:8")?;
    let standard = |f: &FlagType| fixed_points(f).into_iter().next().expect("nonempty");
    let g_rank = BundleSpec::ruling().weights_at(&ruling_flag, &standard(&ruling_flag), &[0; 8]).map(|w| w.len());
    record(&mut checks, "rank of the ruling bundle", g_rank == Ok(19), format!("{g_rank:?}"));
    let p_rank = BundleSpec::hecke().weights_at(&hecke_flag, &standard(&hecke_flag), &[0; 8]).map(|w| w.len());
    record(&mut checks, "rank of the Hecke bundle", p_rank == Ok(14), format!("{p_rank:?}"));

    let ruling = named("Fl:1,4,7:8", "c19(G)*s3(dual(U4))", seed)?;
    let value = ruling.as_i64();
    record(&mut checks, "ruling family degree", value == Some(32), format!("∫ c19(G) s3(U4^∨) = {}", ruling.value));
    record(&mut checks, "ruling planes through a general point", value.is_some_and(|v| v % 4 == 0 && v / 4 == 8), format!("{} / 4", ruling.value));
    integrals.push(ruling);

    let plucker = named("G:2:8", "c1(dual(U2))^12", seed)?;
    record(&mut checks, "degree of G(2,8)", plucker.as_i64() == Some(132), format!("∫ σ1^12 = {}", plucker.value));
    integrals.push(plucker);

    let hecke = named("Fl:2,6:8", "c14(P)*s5(dual(U2))*c1(dual(U2))", seed)?;
    let top = named("Fl:2,6:8", "c14(P)*s6(dual(U2))", seed)?;
    record(
        &mut checks,
        "Hecke family relative hyperplane class",
        hecke.value != "0",
        format!("∫ c1(U1^∨)^6 σ1 = {} over ℙ(U2) on the Fl(2,6;8) model; ∫ c1(U1^∨)^7 = {}", hecke.value, top.value),
    );
    integrals.push(hecke);
    integrals.push(top);

    let deg_d = named("Fl:2,6:8", "c14(P)*c1(dual(U2))^6", seed)?;
    let slice = named("Fl:2,6:8", "c14(P)*c2(dual(U2))^2*c1(dual(U2))^2", seed)?;
    record(&mut checks, "K3 slice of D has degree 2·13 − 2", slice.as_i64() == Some(24), format!("deg D = {}, deg(D ∩ G(2,6)) = {}", deg_d.value, slice.value));
    integrals.push(deg_d);
    integrals.push(slice);
    Ok((checks, integrals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{Flag, Subspace};
    use crate::field::{Fp, Ring};
    use crate::rep::{Bundle, Weight};

    fn space(s: &str) -> FlagType {
        parse_space(s).unwrap()
    }

    fn int(space_: &str, expr: &str) -> i64 {
        named(space_, expr, 7).unwrap().as_i64().unwrap()
    }

    #[test]
    fn fixed_point_counts_are_multinomial() {
        assert_eq!(fixed_points(&space("G:2:4")).len(), 6);
        assert_eq!(fixed_points(&space("P:7")).len(), 8);
        assert_eq!(fixed_points(&space("Fl:1,4,7:8")).len(), 8 * 35 * 4);
        let fp = &fixed_points(&space("Fl:1,4,7:8"))[0];
        assert_eq!(fp.blocks(8).iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn tautological_weights() {
        let f = space("G:4:8");
        let fp = &fixed_points(&f)[3];
        let t: Vec<i64> = (1..=8).collect();
        let dual = BundleSpec::Dual(Box::new(BundleSpec::Sub(4))).weights_at(&f, fp, &t).unwrap();
        let sub = BundleSpec::Sub(4).weights_at(&f, fp, &t).unwrap();
        assert_eq!(dual, sub.iter().map(|x| -x).collect::<Vec<_>>());
        assert_eq!(tangent_weights(&f, fp, &t).len(), 16);
    }

    #[test]
    fn pattern_complement_matches_dense_span() {
        type F = Fp<101>;
        for (s, pattern) in [("Fl:1,4,7:8", RULING_PATTERN), ("Fl:2,6:8", HECKE_PATTERN), ("Fl:1,4:8", "U4^2 V^2 + V^3 U1")] {
            let f = space(s);
            let p: WedgePattern = pattern.parse().unwrap();
            for fp in fixed_points(&f).iter().step_by(37) {
                let flag = Flag::new(fp.chain.iter().map(|set| Subspace::<F>::coordinate(8, set)).collect()).unwrap();
                let span = p.subspace(&flag).unwrap();
                let complement = pattern_complement(&p, &f, fp).unwrap();
                assert_eq!(span.dim() + complement.len(), 70);
                let in_span: Vec<MultiIndex> = subsets(8, 4).into_iter().filter(|i| !complement.contains(i)).collect();
                for idx in in_span {
                    let pos = subsets(8, 4).iter().position(|x| *x == idx).unwrap();
                    let mut e = vec![F::zero(); 70];
                    e[pos] = F::one();
                    assert!(span.contains(&e));
                }
            }
        }
    }

    #[test]
    fn classical_integrals() {
        assert_eq!(int("P:7", "c1(dual(U1))^7"), 1);
        // Hook-length degree formula for G(2,8): 12!·0!·1!/(6!·7!) = 132.
        assert_eq!(int("G:2:8", "c1(dual(U2))^12"), 132);
        assert_eq!(int("G:2:6", "c1(dual(U2))^8"), 14);
        // Lines in ℙ³ meeting four general lines, and lines through a point in a plane.
        assert_eq!(int("G:2:4", "c1(V/U2)^4"), 2);
        assert_eq!(int("G:2:4", "c2(V/U2)^2"), 1);
        assert_eq!(int("P:3", "c3(T)"), 4);
        assert_eq!(int("Fl:1,2:3", "c3(T)"), 6);
    }

    #[test]
    fn segre_convention_is_the_projective_bundle_push_forward() {
        // ℙ(U2) over G(2,4) is Fl(1,2;4) with relative 𝒪(1) = U1^∨.
        for k in 0..=4 {
            let upstairs = int("Fl:1,2:4", &format!("c1(dual(U1))^{}*c1(dual(U2))^{}", 1 + k, 4 - k));
            let downstairs = if k == 0 { int("G:2:4", "c1(dual(U2))^4") } else { int("G:2:4", &format!("s{k}(dual(U2))*c1(dual(U2))^{}", 4 - k)) };
            assert_eq!(upstairs, downstairs, "k = {k}");
        }
    }

    #[test]
    fn ruling_degree_is_32() {
        let r = named("Fl:1,4,7:8", "c19(G)*s3(dual(U4))", 11).unwrap();
        assert_eq!(r.value, "32");
        assert_ne!(r.specializations[0], r.specializations[1]);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let e: ClassExpr = "c1(dual(U2))^11".parse().unwrap();
        assert!(matches!(integrate(&e, &space("G:2:8"), 1), Err(Error::Precondition(_))));
        assert!("c1(X)".parse::<ClassExpr>().is_err());
        assert!("q1(U2)".parse::<ClassExpr>().is_err());
    }

    #[test]
    fn expression_round_trip() {
        let e: ClassExpr = "c19(G)*s3(dual(U4))".parse().unwrap();
        assert_eq!(e.to_string(), "c19(G)*s3(dual(U4))");
        assert_eq!(e.degree(), 22);
        let w: ClassExpr = "c2(W[V^3 U1])^2".parse().unwrap();
        assert_eq!(w.degree(), 4);
    }

    #[test]
    fn lefschetz_matches_bbw_on_line_bundles() {
        let g = FlagType::grassmannian(2, 8);
        for d in [-10, -8, -7, -4, -1, 0, 1, 2, 3, 5] {
            let chi = lefschetz_chi(&g, &[-d, 0], (d + 100) as u64).unwrap();
            let bbw = Bundle::irreducible(&Weight::o(&g, d)).euler_characteristic();
            assert_eq!(chi, BigInt::from(bbw), "O({d})");
        }
        let f = FlagType::new(vec![2, 6], 8).unwrap();
        for (a, b) in [(-1, 1), (2, -3), (0, 4)] {
            let chi = lefschetz_chi(&f, &[a, b, 0], 5).unwrap();
            let w = Weight::new(f.clone(), vec![vec![a; 2], vec![b; 4], vec![0; 2]]).unwrap();
            assert_eq!(chi, BigInt::from(Bundle::irreducible(&w).euler_characteristic()), "({a},{b})");
        }
    }

    #[test]
    fn enumerative_suite_passes() {
        let (checks, _) = enumerative_suite(3).unwrap();
        for c in &checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
