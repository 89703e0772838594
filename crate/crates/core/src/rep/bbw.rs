//! Bott–Borel–Weil on partial flag varieties of `GL_n`.
//!
//! On `Fl(d₁, …, d_k; n)` the graded pieces of the tautological flag are
//! `G₁ = U_{d₁}`, `G₂ = U_{d₂}/U_{d₁}`, …, `G_{k+1} = V/U_{d_k}`. An irreducible homogeneous
//! bundle `⊗_b S_{λ_b} G_b` is written by its block weights, sub-bundle first. Its cohomology
//! is read from the `GL_n` weight `(λ_{k+1} | … | λ₁)`: add `ρ`, reject repeated entries,
//! sort, and the number of inversions is the cohomological degree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::schur::{is_dominant, schur_dim, straighten, RepSum};
use crate::{Error, Result};

/// The type `(d₁ < … < d_k; n)` of a partial flag variety.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FlagType {
    pub dims: Vec<usize>,
    pub n: usize,
}

impl FlagType {
    pub fn new(dims: Vec<usize>, n: usize) -> Result<Self> {
        if dims.is_empty() || dims.windows(2).any(|w| w[0] >= w[1]) || dims[0] == 0 || *dims.last().unwrap() >= n {
            return Err(Error::Precondition(format!("invalid flag type {dims:?} in dimension {n}")));
        }
        Ok(FlagType { dims, n })
    }

    pub fn grassmannian(k: usize, n: usize) -> Self {
        FlagType::new(vec![k], n).expect("0 < k < n")
    }

    /// `ℙ^m` as lines in an `(m+1)`-dimensional space.
    pub fn projective(m: usize) -> Self {
        FlagType::grassmannian(1, m + 1)
    }

    /// Ranks of the graded pieces, sub-bundle first.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        let mut out: Vec<usize> = self
            .dims
            .iter()
            .map(|&d| {
                let s = d - prev;
                prev = d;
                s
            })
            .collect();
        out.push(self.n - prev);
        out
    }

    pub fn dim(&self) -> usize {
        let b = self.block_sizes();
        (0..b.len()).flat_map(|i| (i + 1..b.len()).map(move |j| (i, j))).map(|(i, j)| b[i] * b[j]).sum()
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        write!(f, "{}:{}", dims.join(","), self.n)
    }
}

impl FromStr for FlagType {
    type Err = Error;
    /// `"2,6:8"` for `Fl(2,6;8)`.
    fn from_str(s: &str) -> Result<Self> {
        let (dims, n) = s.split_once(':').ok_or_else(|| Error::Parse(format!("flag type {s:?} lacks ':n'")))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad integer {t:?} in flag type")));
        FlagType::new(dims.split(',').map(parse).collect::<Result<_>>()?, parse(n)?)
    }
}

/// Block weights of an irreducible homogeneous bundle, sub-bundle first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight {
    pub flag: FlagType,
    pub blocks: Vec<Vec<i64>>,
}

impl Weight {
    pub fn new(flag: FlagType, blocks: Vec<Vec<i64>>) -> Result<Self> {
        let sizes = flag.block_sizes();
        if blocks.len() != sizes.len() || blocks.iter().zip(&sizes).any(|(b, &s)| b.len() != s) {
            return Err(Error::Dimension(format!("block weights {blocks:?} do not fit the flag type {flag}")));
        }
        if let Some(b) = blocks.iter().find(|b| !is_dominant(b)) {
            return Err(Error::Precondition(format!("block weight {b:?} is not dominant")));
        }
        Ok(Weight { flag, blocks })
    }

    /// The trivial bundle.
    pub fn trivial(flag: &FlagType) -> Self {
        let blocks = flag.block_sizes().into_iter().map(|s| vec![0; s]).collect();
        Weight { flag: flag.clone(), blocks }
    }

    /// `(det G_block)^c`.
    pub fn det_power(flag: &FlagType, block: usize, c: i64) -> Self {
        let mut w = Weight::trivial(flag);
        w.blocks[block].iter_mut().for_each(|x| *x = c);
        w
    }

    /// `𝒪(d)` on a Grassmannian, with `𝒪(1) = det U^∨`.
    pub fn o(flag: &FlagType, d: i64) -> Self {
        Weight::det_power(flag, 0, -d)
    }

    /// `S_λ G_block` for a partition or dominant weight, other blocks trivial.
    pub fn schur(flag: &FlagType, block: usize, lambda: &[i64]) -> Result<Self> {
        let mut blocks: Vec<Vec<i64>> = Weight::trivial(flag).blocks;
        blocks[block] = super::schur::pad(lambda, blocks[block].len())?;
        Weight::new(flag.clone(), blocks)
    }

    /// The dual bundle: each block negated and reversed.
    pub fn dual(&self) -> Self {
        let blocks = self.blocks.iter().map(|b| b.iter().rev().map(|x| -x).collect()).collect();
        Weight { flag: self.flag.clone(), blocks }
    }

    /// Tensor with another bundle whose blocks are all determinantal.
    pub fn twist(&self, line: &Weight) -> Result<Self> {
        if line.blocks.iter().any(|b| b.windows(2).any(|p| p[0] != p[1])) {
            return Err(Error::Precondition("twist by a bundle that is not a line bundle".into()));
        }
        let blocks = self.blocks.iter().zip(&line.blocks).map(|(b, l)| b.iter().map(|x| x + l[0]).collect()).collect();
        Ok(Weight { flag: self.flag.clone(), blocks })
    }

    /// The `GL_n` weight `(λ_{k+1} | … | λ₁)`.
    pub fn gl_weight(&self) -> Vec<i64> {
        self.blocks.iter().rev().flatten().copied().collect()
    }

    pub fn rank(&self) -> u128 {
        self.blocks.iter().map(|b| schur_dim(b, b.len()).expect("dominant")).product()
    }

    /// Parses `"0,0|1,1,1,1,0,0"`: blocks separated by `|`, sub-bundle first.
    pub fn parse(flag: &FlagType, s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(|b| b.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad weight entry {t:?}")))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Weight::new(flag.clone(), blocks)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}", blocks.join("|"))
    }
}

/// Nonzero cohomology of an irreducible bundle: `H^degree = S_module V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub degree: usize,
    pub module: Vec<i64>,
}

/// Bott–Borel–Weil: `None` when the bundle is acyclic.
pub fn bbw(w: &Weight) -> Option<Cohomology> {
    straighten(&w.gl_weight()).map(|(degree, module)| Cohomology { degree, module })
}

/// Cohomology of a direct sum of irreducible bundles, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CohomologyTable {
    pub n: usize,
    pub degrees: BTreeMap<usize, RepSum>,
    /// The bundle was given by graded pieces of a filtration, so the table is the first page
    /// of the filtration spectral sequence.
    pub filtered: bool,
}

impl CohomologyTable {
    pub fn new(n: usize) -> Self {
        CohomologyTable { n, ..Default::default() }
    }

    pub fn add(&mut self, w: &Weight, mult: i64) {
        if let Some(c) = bbw(w) {
            let slot = self.degrees.entry(c.degree).or_default();
            *slot.entry(c.module).or_insert(0) += mult;
            slot.retain(|_, m| *m != 0);
        }
        self.degrees.retain(|_, s| !s.is_empty());
    }

    /// `h^q` for every nonzero degree.
    pub fn dims(&self) -> BTreeMap<usize, u128> {
        self.degrees.iter().map(|(&q, s)| (q, s.iter().map(|(w, &m)| schur_dim(w, self.n).expect("dominant") * m as u128).sum())).collect()
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.dims().iter().map(|(&q, &d)| if q % 2 == 0 { d as i128 } else { -(d as i128) }).sum()
    }

    /// Whether two adjacent degrees are both nonzero, so that a filtration spectral sequence
    /// could cancel them.
    pub fn adjacent_degrees(&self) -> bool {
        self.degrees.keys().zip(self.degrees.keys().skip(1)).any(|(a, b)| b - a == 1)
    }

    /// The per-degree table is exact unless it came from a filtration with adjacent degrees.
    pub fn degenerate_spectral_sequence_assumed(&self) -> bool {
        self.filtered && self.adjacent_degrees()
    }

    /// Modules up to powers of the determinant: each weight shifted so its last entry is 0.
    pub fn sl_modules(&self) -> BTreeMap<usize, RepSum> {
        self.degrees
            .iter()
            .map(|(&q, s)| {
                let mut out = RepSum::new();
                for (w, &m) in s {
                    let last = *w.last().unwrap_or(&0);
                    *out.entry(w.iter().map(|x| x - last).collect()).or_insert(0) += m;
                }
                (q, out)
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let degrees: Vec<serde_json::Value> = self
            .degrees
            .iter()
            .map(|(q, s)| {
                let modules: Vec<serde_json::Value> = s.iter().map(|(w, m)| serde_json::json!({ "weight": w, "multiplicity": m })).collect();
                serde_json::json!({ "degree": q, "dim": self.dims()[q].to_string(), "modules": modules })
            })
            .collect();
        serde_json::json!({
            "degrees": degrees,
            "euler_characteristic": self.euler_characteristic().to_string(),
            "degenerate_spectral_sequence_assumed": self.degenerate_spectral_sequence_assumed(),
        })
    }

    /// Aligned text, one line per nonzero degree.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (q, s) in &self.degrees {
            let mods: Vec<String> = s.iter().map(|(w, m)| format!("{m}×S{w:?}")).collect();
            out.push_str(&format!("H^{q:<3} dim {:>8}  {}\n", self.dims()[q], mods.join(" ⊕ ")));
        }
        if self.degrees.is_empty() {
            out.push_str("acyclic\n");
        }
        out.push_str(&format!("χ = {}\n", self.euler_characteristic()));
        out
    }
}
