//! Homogeneous bundles as formal sums of irreducible pieces.
//!
//! A bundle that is an extension is entered through its graded pieces and marked as filtered;
//! cohomology tables of filtered bundles are first pages of the filtration spectral sequence.
//! Exterior powers are supported for pieces built from at most two standard factors (Cauchy),
//! or one `∧²` factor, each possibly dualized and twisted by determinants.

use std::collections::BTreeMap;

use super::bbw::{CohomologyTable, FlagType, Weight};
use super::schur::{cauchy_wedge, schur_dim, tensor, wedge_of_wedge2};
use crate::{Error, Result};

/// A direct sum of irreducible homogeneous bundles with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub flag: FlagType,
    pub pieces: BTreeMap<Vec<Vec<i64>>, i64>,
    pub filtered: bool,
}

/// How one block factor of a piece behaves under exterior powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    /// `(det G)^c`.
    Line(i64),
    /// `G ⊗ (det G)^c`.
    Std(i64),
    /// `G^∨ ⊗ (det G)^c`.
    CoStd(i64),
    /// `∧²G ⊗ (det G)^c`.
    Wedge2(i64),
    /// `∧²G^∨ ⊗ (det G)^c`.
    CoWedge2(i64),
    Other,
}

fn classify(w: &[i64]) -> Factor {
    let r = w.len();
    let c = *w.last().unwrap_or(&0);
    let top = w[0];
    let diff: Vec<i64> = w.iter().map(|x| x - c).collect();
    if diff.iter().all(|&x| x == 0) {
        return Factor::Line(c);
    }
    if diff[0] == 1 && diff[1..].iter().all(|&x| x == 0) {
        return Factor::Std(c);
    }
    let from_top: Vec<i64> = w.iter().map(|x| x - top).collect();
    if from_top[r - 1] == -1 && from_top[..r - 1].iter().all(|&x| x == 0) {
        return Factor::CoStd(top);
    }
    if r >= 3 && diff[0] == 1 && diff[1] == 1 && diff[2..].iter().all(|&x| x == 0) {
        return Factor::Wedge2(c);
    }
    if r >= 3 && from_top[r - 1] == -1 && from_top[r - 2] == -1 && from_top[..r - 2].iter().all(|&x| x == 0) {
        return Factor::CoWedge2(top);
    }
    Factor::Other
}

/// `S_λ(G ⊗ det^c)` or `S_λ(G^∨ ⊗ det^c)` as a block weight of rank `r`.
fn schur_of_standard(lambda: &[usize], r: usize, c: i64, dual: bool) -> Vec<i64> {
    let size: i64 = lambda.iter().map(|&x| x as i64).sum();
    let mut w: Vec<i64> = (0..r).map(|i| lambda.get(i).copied().unwrap_or(0) as i64).collect();
    if dual {
        w = w.into_iter().rev().map(|x| -x).collect();
    }
    w.into_iter().map(|x| x + c * size).collect()
}

fn product(parts: Vec<Vec<(Vec<i64>, i64)>>) -> Vec<(Vec<Vec<i64>>, i64)> {
    parts.into_iter().fold(vec![(Vec::new(), 1)], |acc, choices| {
        acc.iter().flat_map(|(prefix, m)| choices.iter().map(move |(w, k)| {
            let mut p = prefix.clone();
            p.push(w.clone());
            (p, m * k)
        })).collect()
    })
}

impl Bundle {
    pub fn zero(flag: &FlagType) -> Self {
        Bundle { flag: flag.clone(), pieces: BTreeMap::new(), filtered: false }
    }

    pub fn irreducible(w: &Weight) -> Self {
        Bundle { flag: w.flag.clone(), pieces: BTreeMap::from([(w.blocks.clone(), 1)]), filtered: false }
    }

    /// An iterated extension given by its graded pieces.
    pub fn extension(pieces: &[Weight]) -> Result<Self> {
        let flag = pieces.first().ok_or_else(|| Error::Precondition("an extension needs at least one piece".into()))?.flag.clone();
        let mut b = Bundle::zero(&flag);
        for p in pieces {
            b = b.direct_sum(&Bundle::irreducible(p))?;
        }
        b.filtered = pieces.len() > 1;
        Ok(b)
    }

    pub fn direct_sum(&self, other: &Bundle) -> Result<Self> {
        if self.flag != other.flag {
            return Err(Error::Dimension("bundles on different flag varieties".into()));
        }
        let mut pieces = self.pieces.clone();
        for (w, m) in &other.pieces {
            *pieces.entry(w.clone()).or_insert(0) += m;
        }
        pieces.retain(|_, m| *m != 0);
        Ok(Bundle { flag: self.flag.clone(), pieces, filtered: self.filtered || other.filtered })
    }

    pub fn rank(&self) -> u128 {
        self.pieces.iter().map(|(blocks, &m)| blocks.iter().map(|b| schur_dim(b, b.len()).expect("dominant")).product::<u128>() * m as u128).sum()
    }

    pub fn dual(&self) -> Self {
        let pieces = self.pieces.iter().map(|(blocks, &m)| (blocks.iter().map(|b| b.iter().rev().map(|x| -x).collect()).collect(), m)).collect();
        Bundle { flag: self.flag.clone(), pieces, filtered: self.filtered }
    }

    /// Tensor product, block by block.
    pub fn tensor(&self, other: &Bundle) -> Result<Self> {
        if self.flag != other.flag {
            return Err(Error::Dimension("bundles on different flag varieties".into()));
        }
        let mut pieces = BTreeMap::new();
        for (a, &ma) in &self.pieces {
            for (b, &mb) in &other.pieces {
                let per_block: Vec<Vec<(Vec<i64>, i64)>> = a.iter().zip(b).map(|(x, y)| tensor(x, y).map(|s| s.into_iter().collect())).collect::<Result<_>>()?;
                for (blocks, m) in product(per_block) {
                    *pieces.entry(blocks).or_insert(0) += m * ma * mb;
                }
            }
        }
        pieces.retain(|_, m| *m != 0);
        Ok(Bundle { flag: self.flag.clone(), pieces, filtered: self.filtered || other.filtered })
    }

    /// `∧ʲ` of one irreducible piece.
    fn wedge_piece(&self, blocks: &[Vec<i64>], j: usize) -> Result<Vec<(Vec<Vec<i64>>, i64)>> {
        let kinds: Vec<Factor> = blocks.iter().map(|b| classify(b)).collect();
        let active: Vec<usize> = (0..blocks.len()).filter(|&i| !matches!(kinds[i], Factor::Line(_))).collect();
        let line_part = |i: usize| -> Vec<i64> {
            let Factor::Line(c) = kinds[i] else { unreachable!() };
            vec![c * j as i64; blocks[i].len()]
        };
        let assemble = |choice: &[(usize, Vec<i64>)]| -> Vec<Vec<i64>> {
            (0..blocks.len()).map(|i| choice.iter().find(|(b, _)| *b == i).map(|(_, w)| w.clone()).unwrap_or_else(|| line_part(i))).collect()
        };
        let unsupported = || Error::Precondition(format!("∧^{j} of the piece {blocks:?} needs an unsupported plethysm"));
        match active[..] {
            [] => Ok(match j {
                0 => vec![(blocks.iter().map(|b| vec![0; b.len()]).collect(), 1)],
                1 => vec![(blocks.to_vec(), 1)],
                _ => vec![],
            }),
            [b] => {
                let r = blocks[b].len();
                let list: Vec<Vec<i64>> = match kinds[b] {
                    Factor::Std(c) | Factor::CoStd(c) if j <= r => vec![schur_of_standard(&vec![1; j], r, c, matches!(kinds[b], Factor::CoStd(_)))],
                    Factor::Std(_) | Factor::CoStd(_) => vec![],
                    Factor::Wedge2(c) => wedge_of_wedge2(j, r).into_iter().map(|w| w.into_iter().map(|x| x + c * j as i64).collect()).collect(),
                    Factor::CoWedge2(c) => wedge_of_wedge2(j, r).into_iter().map(|w| w.into_iter().rev().map(|x| -x + c * j as i64).collect()).collect(),
                    _ => return Err(unsupported()),
                };
                Ok(list.into_iter().map(|w| (assemble(&[(b, w)]), 1)).collect())
            }
            [a, b] => {
                let std = |k: Factor| match k {
                    Factor::Std(c) => Some((c, false)),
                    Factor::CoStd(c) => Some((c, true)),
                    _ => None,
                };
                let ((ca, da), (cb, db)) = (std(kinds[a]).ok_or_else(unsupported)?, std(kinds[b]).ok_or_else(unsupported)?);
                let (ra, rb) = (blocks[a].len(), blocks[b].len());
                Ok(cauchy_wedge(j, ra, rb)
                    .into_iter()
                    .map(|(l, lc)| (assemble(&[(a, schur_of_standard(&l, ra, ca, da)), (b, schur_of_standard(&lc, rb, cb, db))]), 1))
                    .collect())
            }
            _ => Err(unsupported()),
        }
    }

    /// `∧ᵏ` of the whole sum: `⊕_{Σ kᵢ = k} ⊗ᵢ ∧^{kᵢ}(Pᵢ)` over the pieces with repetition.
    pub fn wedge(&self, k: usize) -> Result<Self> {
        let mut acc: Vec<Bundle> = vec![Bundle::irreducible(&Weight::trivial(&self.flag))];
        for (blocks, &m) in &self.pieces {
            if m < 0 {
                return Err(Error::Precondition("exterior power of a virtual bundle".into()));
            }
            for _ in 0..m {
                let rank = blocks.iter().map(|b| schur_dim(b, b.len()).expect("dominant")).product::<u128>() as usize;
                let powers: Vec<Bundle> = (0..=rank.min(k))
                    .map(|j| {
                        let mut b = Bundle::zero(&self.flag);
                        for (w, mult) in self.wedge_piece(blocks, j)? {
                            *b.pieces.entry(w).or_insert(0) += mult;
                        }
                        Ok(b)
                    })
                    .collect::<Result<_>>()?;
                let mut next = vec![Bundle::zero(&self.flag); k + 1];
                for (i, a) in acc.iter().enumerate() {
                    for (j, p) in powers.iter().enumerate() {
                        if i + j <= k && !a.pieces.is_empty() && !p.pieces.is_empty() {
                            next[i + j] = next[i + j].direct_sum(&a.tensor(p)?)?;
                        }
                    }
                }
                acc = next;
            }
        }
        let mut out = acc.get(k).cloned().unwrap_or_else(|| Bundle::zero(&self.flag));
        out.filtered = self.filtered;
        Ok(out)
    }

    pub fn cohomology(&self) -> CohomologyTable {
        let mut t = CohomologyTable::new(self.flag.n);
        for (blocks, &m) in &self.pieces {
            t.add(&Weight { flag: self.flag.clone(), blocks: blocks.clone() }, m);
        }
        t.filtered = self.filtered;
        t
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.cohomology().euler_characteristic()
    }
}

/// The Koszul complex `∧•E^∨ ⊗ F`: the cohomology table of `∧ᵏE^∨ ⊗ F` for every `k`.
pub fn koszul_tables(e: &Bundle, f: &Bundle) -> Result<Vec<CohomologyTable>> {
    let dual = e.dual();
    (0..=e.rank() as usize).map(|k| Ok(dual.wedge(k)?.tensor(f)?.cohomology())).collect()
}

/// `χ` of the sheaf resolved by the Koszul complex: `Σ_k (−1)^k χ(∧ᵏE^∨ ⊗ F)`.
pub fn koszul_euler_characteristic(tables: &[CohomologyTable]) -> i128 {
    tables.iter().enumerate().map(|(k, t)| if k % 2 == 0 { t.euler_characteristic() } else { -t.euler_characteristic() }).sum()
}
