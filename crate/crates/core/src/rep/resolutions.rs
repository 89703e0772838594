//! Equivariant resolutions around the moduli locus `D ⊂ G(2,8)` and their cohomology:
//! the resolution of `I_D(2)`, the module `M` over `ℂ[∧²V₆]` with its Betti table, the
//! Pfaffian ideal of a generic 6×6 skew matrix, and the Koszul complex computing `χ(N_{D/G})`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::bbw::{bbw, CohomologyTable, FlagType, Weight};
use super::bundle::{koszul_euler_characteristic, koszul_tables, Bundle};
use super::schur::{schur_dim, RepSum};
use crate::Result;

/// One term `S_λ Q ⊗ 𝒪(−d)` of a resolution on `G(2,8)`, at homological degree `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrassTerm {
    pub label: String,
    pub homological: usize,
    pub weight: Weight,
}

/// One term `S_λ V₆^∨ ⊗ S(−d)` of a graded free resolution over `ℂ[∧²V₆]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineTerm {
    pub lambda: [i64; 6],
    pub degree: i64,
    pub homological: usize,
    /// Part of the subcomplex that reproduces the Pfaffian ideal resolution.
    pub bold: bool,
}

fn g28() -> FlagType {
    FlagType::grassmannian(2, 8)
}

fn q_term(label: &str, homological: usize, lambda: &[i64], twist: i64) -> GrassTerm {
    let g = g28();
    let weight = Weight::schur(&g, 1, lambda).and_then(|w| w.twist(&Weight::o(&g, twist))).expect("valid weight");
    GrassTerm { label: label.to_string(), homological, weight }
}

/// The resolution of `I_D(2)` induced from the submaximal Pfaffians, with `𝒪(1) = det U^∨`.
pub fn ideal_resolution() -> Vec<GrassTerm> {
    vec![
        q_term("∧⁴Q", 0, &[1, 1, 1, 1, 0, 0], 0),
        q_term("sl(Q)", 1, &[1, 0, 0, 0, 0, -1], 0),
        q_term("S²Q^∨(−1)", 2, &[0, 0, 0, 0, 0, -2], -1),
        q_term("S²Q(−1)", 2, &[2, 0, 0, 0, 0, 0], -1),
        q_term("sl(Q)(−2)", 3, &[1, 0, 0, 0, 0, -1], -2),
        q_term("∧²Q(−3)", 4, &[1, 1, 0, 0, 0, 0], -3),
        q_term("𝒪(−4)", 5, &[0, 0, 0, 0, 0, 0], -4),
    ]
}

const fn t(lambda: [i64; 6], degree: i64, homological: usize, bold: bool) -> AffineTerm {
    AffineTerm { lambda, degree, homological, bold }
}

/// The minimal `GL₆`-equivariant resolution of `M = I²/S₊I_P`.
pub fn m_resolution() -> Vec<AffineTerm> {
    vec![
        t([2, 2, 2, 2, 0, 0], 4, 0, false),
        t([3, 2, 2, 2, 1, 0], 5, 1, false),
        t([2, 2, 2, 2, 1, 1], 5, 1, true),
        t([4, 2, 2, 2, 1, 1], 6, 2, false),
        t([3, 3, 2, 2, 2, 0], 6, 2, false),
        t([3, 2, 2, 2, 2, 1], 6, 2, true),
        t([4, 3, 2, 2, 2, 1], 7, 3, false),
        t([4, 2, 2, 2, 2, 2], 7, 3, true),
        t([3, 3, 3, 3, 3, 1], 8, 3, true),
        t([4, 4, 2, 2, 2, 2], 8, 4, false),
        t([4, 3, 3, 3, 3, 2], 9, 4, true),
        t([4, 4, 3, 3, 3, 3], 10, 5, true),
    ]
}

/// The resolution of the ideal of submaximal Pfaffians of a generic 6×6 skew matrix, from its
/// generators (homological degree 0) on.
pub fn pfaffian_ideal_resolution() -> Vec<AffineTerm> {
    vec![
        t([1, 1, 1, 1, 0, 0], 2, 0, false),
        t([2, 1, 1, 1, 1, 0], 3, 1, false),
        t([3, 1, 1, 1, 1, 1], 4, 2, false),
        t([2, 2, 2, 2, 2, 0], 5, 2, false),
        t([3, 2, 2, 2, 2, 1], 6, 3, false),
        t([3, 3, 2, 2, 2, 2], 7, 4, false),
        t([3, 3, 3, 3, 3, 3], 9, 5, false),
    ]
}

/// Betti table of `M`: rows 4 and 5, columns 0–5.
pub const M_BETTI_TABLE: [[u128; 6]; 2] = [[105, 399, 595, 405, 105, 0], [0, 0, 0, 21, 35, 15]];

/// `β_{i, i+r}` summed from Weyl dimensions: key `(r, i)`.
pub fn betti_table(terms: &[AffineTerm]) -> BTreeMap<(i64, usize), u128> {
    let mut out = BTreeMap::new();
    for term in terms {
        *out.entry((term.degree - term.homological as i64, term.homological)).or_insert(0) += schur_dim(&term.lambda, 6).expect("dominant");
    }
    out
}

/// Numerator `Σ (−1)^h β_{h,d} t^d` of the Hilbert series of `S/I` (or of the module, when
/// `with_unit` is false), as integer coefficients.
pub fn hilbert_numerator(terms: &[AffineTerm], with_unit: bool) -> Vec<i128> {
    let top = terms.iter().map(|t| t.degree as usize).max().unwrap_or(0);
    let mut out = vec![0i128; top + 1];
    if with_unit {
        out[0] = 1;
    }
    let shift = usize::from(with_unit);
    for term in terms {
        let sign = if (term.homological + shift) % 2 == 0 { 1 } else { -1 };
        out[term.degree as usize] += sign * schur_dim(&term.lambda, 6).expect("dominant") as i128;
    }
    out
}

/// Divides by `(1 − t)` as often as possible: the number of divisions and the quotient.
pub fn divide_out_one_minus_t(mut p: Vec<i128>) -> (usize, Vec<i128>) {
    let mut count = 0;
    while p.iter().any(|&c| c != 0) && p.iter().sum::<i128>() == 0 {
        // p(t) = (1 − t)·q(t) with q_k = Σ_{i ≤ k} p_i.
        let mut q = Vec::with_capacity(p.len() - 1);
        let mut acc = 0;
        for &c in &p[..p.len() - 1] {
            acc += c;
            q.push(acc);
        }
        p = q;
        count += 1;
    }
    (count, p)
}

/// `H^q` contributions to `H^i` of the resolved sheaf: `Σ_h H^{i+h}(F_h)` per `i`.
pub fn hypercohomology_candidates(tables: &[(usize, CohomologyTable)]) -> BTreeMap<i64, u128> {
    let mut out = BTreeMap::new();
    for (h, table) in tables {
        for (q, d) in table.dims() {
            *out.entry(q as i64 - *h as i64).or_insert(0) += d;
        }
    }
    out
}

/// The bundles `𝒱 = [∧³(U₆/U₂) ⊗ V/U₆ ; ∧²(U₆/U₂) ⊗ det(V/U₆)]` and `𝒩` on `Fl(2,6;8)`.
pub fn normal_bundle_data() -> Result<(Bundle, Bundle)> {
    let f: FlagType = "2,6:8".parse()?;
    let a = Weight::parse(&f, "0,0|1,1,1,0|1,0")?;
    let n = Weight::parse(&f, "0,0|1,1,0,0|1,1")?;
    Ok((Bundle::extension(&[a, n.clone()])?, Bundle::irreducible(&n)))
}

/// Nonzero groups `H^q(∧ᵏ𝒱^∨ ⊗ 𝒩)` as listed for the normal bundle, as `SL₈` modules.
pub fn normal_bundle_expected() -> Vec<(usize, usize, RepSum)> {
    let triv = vec![0i64; 8];
    let w4 = vec![1, 1, 1, 1, 0, 0, 0, 0];
    let sl = vec![2, 1, 1, 1, 1, 1, 1, 0];
    let one = |w: &Vec<i64>, m: i64| RepSum::from([(w.clone(), m)]);
    let sl_plus = |m: i64| RepSum::from([(sl.clone(), 1), (triv.clone(), m)]);
    vec![
        (0, 0, one(&w4, 1)),
        (1, 0, one(&triv, 1)),
        (3, 2, one(&triv, 1)),
        (3, 3, one(&triv, 2)),
        (4, 4, one(&w4, 1)),
        (4, 5, one(&w4, 1)),
        (5, 4, sl_plus(3)),
        (5, 5, sl_plus(4)),
        (5, 6, one(&triv, 1)),
        (7, 6, one(&triv, 1)),
        (7, 7, one(&triv, 1)),
        (9, 8, one(&triv, 1)),
        (9, 9, one(&triv, 1)),
        (13, 12, one(&triv, 1)),
        (13, 13, one(&triv, 1)),
    ]
}

/// One named check of the suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.to_string(), passed, detail }
}

/// All representation-theoretic checks, independent of the four-form.
pub fn verify_resolution_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();

    // The I_D(2) resolution: two non-acyclic factors.
    let mut tables = Vec::new();
    for term in ideal_resolution() {
        let table = Bundle::irreducible(&term.weight).cohomology();
        let dims = table.dims();
        let expected: BTreeMap<usize, u128> = match term.label.as_str() {
            "∧⁴Q" => BTreeMap::from([(0, 70)]),
            "S²Q^∨(−1)" => BTreeMap::from([(2, 1)]),
            _ => BTreeMap::new(),
        };
        out.push(check(&format!("I_D(2) factor {}", term.label), dims == expected, format!("{dims:?}")));
        tables.push((term.homological, table));
    }
    let candidates = hypercohomology_candidates(&tables);
    let h0 = candidates.get(&0).copied().unwrap_or(0);
    let higher_clear = candidates.iter().all(|(&i, &d)| i == 0 || d == 0);
    out.push(check("h0(I_D(2)) bookkeeping", h0 == 71 && higher_clear, format!("{candidates:?}")));

    // Every factor of the M resolution twisted by O(2) is acyclic.
    let g = g28();
    for term in m_resolution() {
        let w = Weight::schur(&g, 1, &term.lambda)?.twist(&Weight::o(&g, 2 - term.degree))?;
        let c = bbw(&w);
        out.push(check(&format!("M(2) factor S{:?}Q(−{})", term.lambda, term.degree - 2), c.is_none(), format!("{c:?}")));
    }

    // Betti table of M.
    let betti = betti_table(&m_resolution());
    let mut table_ok = true;
    for (row, values) in M_BETTI_TABLE.iter().enumerate() {
        for (col, &v) in values.iter().enumerate() {
            table_ok &= betti.get(&(row as i64 + 4, col)).copied().unwrap_or(0) == v;
        }
    }
    table_ok &= betti.keys().all(|&(r, _)| r == 4 || r == 5);
    let columns: Vec<u128> = (0..6).map(|c| betti.iter().filter(|((_, col), _)| *col == c).map(|(_, v)| v).sum()).collect();
    table_ok &= columns == [105, 399, 595, 426, 140, 15];
    out.push(check("Betti table of M", table_ok, format!("column sums {columns:?}")));
    let (order, _) = divide_out_one_minus_t(hilbert_numerator(&m_resolution(), false));
    out.push(check("M is supported in codimension one", order == 1, format!("(1−t)^{order} divides the numerator")));

    // The bold subcomplex is the Pfaffian ideal resolution twisted by det(V₆^∨) and shifted by 3.
    let bold: Vec<AffineTerm> = m_resolution().into_iter().filter(|t| t.bold).collect();
    let ideal = pfaffian_ideal_resolution();
    let matched = bold.iter().all(|b| {
        ideal.iter().any(|i| i.homological + 1 == b.homological && i.degree + 3 == b.degree && i.lambda.iter().zip(&b.lambda).all(|(x, y)| x + 1 == *y))
    });
    out.push(check("bold subcomplex reproduces the Pfaffian ideal resolution", matched && bold.len() + 1 == ideal.len(), format!("{} bold terms", bold.len())));

    // Graded ranks of the Pfaffian ideal resolution: codimension 6, degree 14.
    let (order, quotient) = divide_out_one_minus_t(hilbert_numerator(&ideal, true));
    let degree: i128 = quotient.iter().sum();
    out.push(check("Pfaffian ideal Hilbert series", order == 6 && degree == 14, format!("codimension {order}, degree {degree}")));

    // The normal bundle of D through the Koszul complex on Fl(2,6;8).
    let (v, n) = normal_bundle_data()?;
    let koszul = koszul_tables(&v, &n)?;
    let chi = koszul_euler_characteristic(&koszul);
    out.push(check("χ(N_{D/G})", chi == 70, format!("χ = {chi}")));
    let mut computed: Vec<(usize, usize, RepSum)> = Vec::new();
    for (k, table) in koszul.iter().enumerate() {
        for (q, mods) in table.sl_modules() {
            computed.push((k, q, mods));
        }
    }
    let listed = normal_bundle_expected();
    out.push(check("Koszul cohomology table of N_{D/G}", computed == listed, format!("{} nonzero groups", computed.len())));
    let vanishing = computed.iter().all(|(k, q, _)| *q as i64 - *k as i64 <= 1);
    out.push(check("H^q(∧ᵏ𝒱^∨⊗𝒩) = 0 for q − k > 1", vanishing, String::new()));
    Ok(out)
}
