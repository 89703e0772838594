//! Irreducible polynomial and rational representations of `GL_m`, indexed by non-increasing
//! integer weights: dimensions, weight multisets, tensor products and the few plethysms the
//! bundle calculus needs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::{Error, Result};

/// A formal sum of irreducible `GL_m` modules: dominant weight → multiplicity.
pub type RepSum = BTreeMap<Vec<i64>, i64>;

/// Whether a weight is non-increasing.
pub fn is_dominant(w: &[i64]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1])
}

/// Pads a partition-like weight with zeros to length `n`.
pub fn pad(w: &[i64], n: usize) -> Result<Vec<i64>> {
    if w.len() > n {
        return Err(Error::Dimension(format!("weight of length {} for GL_{n}", w.len())));
    }
    let mut out = w.to_vec();
    out.resize(n, 0);
    Ok(out)
}

/// Weyl dimension formula `∏_{i<j} (λ_i − λ_j + j − i)/(j − i)`. Shorter weights are padded
/// with zeros.
pub fn schur_dim(lambda: &[i64], n: usize) -> Result<u128> {
    let l = pad(lambda, n)?;
    if !is_dominant(&l) {
        return Err(Error::Precondition(format!("{l:?} is not dominant")));
    }
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 0..n {
        for j in i + 1..n {
            num *= l[i] - l[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    (num / den).to_u128().ok_or_else(|| Error::Dimension("dimension exceeds u128".into()))
}

/// Hook-content formula `∏_{boxes} (n + content)/hook` for a partition.
pub fn hook_content_dim(lambda: &[usize], n: usize) -> u128 {
    let conj = conjugate(lambda);
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            num *= n as i64 + j as i64 - i as i64;
            den *= (row - j) + (conj[j] - i) - 1;
        }
    }
    (num / den).to_u128().unwrap_or(u128::MAX)
}

/// The conjugate partition.
pub fn conjugate(lambda: &[usize]) -> Vec<usize> {
    let first = lambda.first().copied().unwrap_or(0);
    (0..first).map(|j| lambda.iter().filter(|&&r| r > j).count()).collect()
}

/// Partitions of `k` with at most `max_len` parts, each at most `max_part`, in decreasing
/// lexicographic order.
pub fn partitions(k: usize, max_len: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, max_len: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        if max_len == 0 {
            return;
        }
        for p in (1..=max_part.min(k)).rev() {
            prefix.push(p);
            rec(k - p, max_len - 1, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, max_len, max_part, &mut Vec::new(), &mut out);
    out
}

/// `∧ᵏ(A ⊗ B) = ⊕_{|λ| = k} S_λA ⊗ S_{λ'}B` for `rank A = a`, `rank B = b`.
pub fn cauchy_wedge(k: usize, a: usize, b: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    partitions(k, a, b)
        .into_iter()
        .map(|l| {
            let c = conjugate(&l);
            (l, c)
        })
        .collect()
}

/// The dotted action: `w + ρ` straightened by sorting. `None` if two entries of `w + ρ`
/// coincide, otherwise the number of inversions and the dominant weight `sort(w+ρ) − ρ`.
pub fn straighten(w: &[i64]) -> Option<(usize, Vec<i64>)> {
    let m = w.len();
    let shifted: Vec<i64> = w.iter().enumerate().map(|(i, x)| x + (m - 1 - i) as i64).collect();
    let mut inversions = 0;
    for i in 0..m {
        for j in i + 1..m {
            match shifted[i].cmp(&shifted[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => inversions += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    let mut sorted = shifted;
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    Some((inversions, sorted.iter().enumerate().map(|(i, x)| x - (m - 1 - i) as i64).collect()))
}

/// Weight multiset of the irreducible module of highest weight `lambda`, from semistandard
/// tableaux of the shape `lambda − λ_m`.
pub fn weights_of(lambda: &[i64]) -> BTreeMap<Vec<i64>, u64> {
    let m = lambda.len();
    let base = lambda.last().copied().unwrap_or(0);
    let shape: Vec<usize> = lambda.iter().map(|x| (x - base) as usize).collect();
    let mut out = BTreeMap::new();
    let cells: Vec<(usize, usize)> = shape.iter().enumerate().flat_map(|(i, &r)| (0..r).map(move |j| (i, j))).collect();
    let mut fill = vec![vec![0usize; shape.first().copied().unwrap_or(0)]; m];
    fn rec(k: usize, cells: &[(usize, usize)], fill: &mut Vec<Vec<usize>>, m: usize, base: i64, out: &mut BTreeMap<Vec<i64>, u64>) {
        if k == cells.len() {
            let mut w = vec![base; m];
            for &(i, j) in cells {
                w[fill[i][j]] += 1;
            }
            *out.entry(w).or_insert(0) += 1;
            return;
        }
        let (i, j) = cells[k];
        let lo = (if j > 0 { fill[i][j - 1] } else { 0 }).max(if i > 0 { fill[i - 1][j] + 1 } else { 0 });
        for x in lo..m {
            fill[i][j] = x;
            rec(k + 1, cells, fill, m, base, out);
        }
    }
    rec(0, &cells, &mut fill, m, base, &mut out);
    out
}

/// `S_μ ⊗ S_ν` by the Brauer–Klimyk rule, iterating over the weights of the smaller factor.
pub fn tensor(mu: &[i64], nu: &[i64]) -> Result<RepSum> {
    if mu.len() != nu.len() {
        return Err(Error::Dimension("tensor factors for different GL_m".into()));
    }
    let (big, small) = if schur_dim(mu, mu.len())? >= schur_dim(nu, nu.len())? { (mu, nu) } else { (nu, mu) };
    let mut out = RepSum::new();
    for (w, mult) in weights_of(small) {
        let sum: Vec<i64> = big.iter().zip(&w).map(|(a, b)| a + b).collect();
        if let Some((inv, dom)) = straighten(&sum) {
            let sign = if inv % 2 == 0 { 1 } else { -1 };
            *out.entry(dom).or_insert(0) += sign * mult as i64;
        }
    }
    out.retain(|_, m| *m != 0);
    if out.values().any(|&m| m < 0) {
        return Err(Error::Inconclusive("negative multiplicity in a tensor product".into()));
    }
    Ok(out)
}

/// `∧ʲ(∧²W)` for `rank W = r`: the partitions with Frobenius symbol
/// `(α₁−1, …, α_s−1 | α₁, …, α_s)`, `α₁ > … > α_s ≥ 1`, `Σ α = j`, of length at most `r`.
pub fn wedge_of_wedge2(j: usize, r: usize) -> Vec<Vec<i64>> {
    fn strict(j: usize, max: usize) -> Vec<Vec<usize>> {
        if j == 0 {
            return vec![vec![]];
        }
        (1..=max.min(j)).rev().flat_map(|a| strict(j - a, a - 1).into_iter().map(move |mut t| {
            t.insert(0, a);
            t
        })).collect()
    }
    strict(j, j)
        .into_iter()
        .filter_map(|alphas| {
            let len = alphas.iter().enumerate().map(|(i, a)| i + a + 1).max().unwrap_or(0).max(r);
            let mut rows = vec![0i64; len];
            for (i, &a) in alphas.iter().enumerate() {
                // Row i carries the arm (a − 1) to the right of the diagonal box (i, i).
                rows[i] += (a - 1) as i64 + 1;
                // Column i carries the leg a below the diagonal box.
                for row in rows.iter_mut().skip(i + 1).take(a) {
                    *row += 1;
                }
            }
            let mut l: Vec<i64> = rows.into_iter().collect();
            while l.len() > r && l.last() == Some(&0) {
                l.pop();
            }
            (l.len() <= r).then(|| pad(&l, r).expect("length checked"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u128, k: u128) -> u128 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn classical_dimensions() {
        assert_eq!(schur_dim(&[1, 1, 1, 1], 8).unwrap(), 70);
        assert_eq!(schur_dim(&[2, 2, 2, 2], 6).unwrap(), 105);
        assert_eq!(schur_dim(&[2, 2], 8).unwrap(), 336);
        assert_eq!(schur_dim(&[1, 0, 0, 0, 0, 0, 0, -1], 8).unwrap(), 63);
        assert_eq!(schur_dim(&[0, -2], 2).unwrap(), 3);
        assert!(schur_dim(&[0, 1], 2).is_err());
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_wedge(1, 3, 3), vec![(vec![1], vec![1])]);
        assert_eq!(cauchy_wedge(2, 2, 2), vec![(vec![2], vec![1, 1]), (vec![1, 1], vec![2])]);
        let total: u128 = cauchy_wedge(3, 4, 2)
            .iter()
            .map(|(l, c)| {
                let to_i = |p: &[usize]| p.iter().map(|&x| x as i64).collect::<Vec<_>>();
                schur_dim(&to_i(l), 4).unwrap() * schur_dim(&to_i(c), 2).unwrap()
            })
            .sum();
        assert_eq!(total, binom(8, 3));
    }

    #[test]
    fn straighten_reflects_through_rho() {
        assert_eq!(straighten(&[0, 2]), Some((1, vec![1, 1])));
        assert_eq!(straighten(&[0, 1]), None);
        assert_eq!(straighten(&[3, 1, 0]), Some((0, vec![3, 1, 0])));
    }

    #[test]
    fn weight_multisets_have_the_right_size() {
        for l in [vec![2, 1, 0], vec![1, 1, 0, -1], vec![3, 3, 1, 0]] {
            let total: u64 = weights_of(&l).values().sum();
            assert_eq!(total as u128, schur_dim(&l, l.len()).unwrap());
        }
        assert_eq!(weights_of(&[1, 0]), BTreeMap::from([(vec![1, 0], 1), (vec![0, 1], 1)]));
    }

    #[test]
    fn pieri_and_duals() {
        let t = tensor(&[1, 0, 0], &[1, 0, 0]).unwrap();
        assert_eq!(t, RepSum::from([(vec![2, 0, 0], 1), (vec![1, 1, 0], 1)]));
        let t = tensor(&[1, 0, 0, 0], &[0, 0, 0, -1]).unwrap();
        assert_eq!(t, RepSum::from([(vec![1, 0, 0, -1], 1), (vec![0, 0, 0, 0], 1)]));
    }

    #[test]
    fn wedge_of_wedge2_dimensions() {
        assert_eq!(wedge_of_wedge2(1, 4), vec![vec![1, 1, 0, 0]]);
        assert_eq!(wedge_of_wedge2(2, 4), vec![vec![2, 1, 1, 0]]);
        assert_eq!(wedge_of_wedge2(3, 6), vec![vec![3, 1, 1, 1, 0, 0], vec![2, 2, 2, 0, 0, 0]]);
        for r in 2..=6u128 {
            let n2 = r * (r - 1) / 2;
            for j in 0..=n2 {
                let total: u128 = wedge_of_wedge2(j as usize, r as usize).iter().map(|l| schur_dim(l, r as usize).unwrap()).sum();
                assert_eq!(total, binom(n2, j), "r={r} j={j}");
            }
        }
    }

    #[test]
    fn hook_content_matches_weyl() {
        for k in 0..9 {
            for l in partitions(k, 5, 5) {
                let w: Vec<i64> = l.iter().map(|&x| x as i64).collect();
                assert_eq!(hook_content_dim(&l, 5), schur_dim(&w, 5).unwrap());
            }
        }
    }
}
