//! Four-forms in eight variables as a theta representation: the Cartan subspace spanned by
//! seven pairs of complementary elementary wedges, random sampling, the `GL₈` action, the
//! complement dualization `v ↦ v^∨`, and the bracket `∧⁴V₈ × ∧⁴V₈ → sl₈`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::exterior::{format_form, hodge_dual, merge_sign, subsets, AltTensor, FieldSpec, MultiIndex, Variance};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::{Error, Result};

/// A four-form on `V₈` (vector type) or on `V₈^∨` (covector type).
pub type FourForm<F> = AltTensor<F>;

/// The seven generators, each as two 1-based index quadruples in the order written.
pub const CARTAN_QUADRUPLES: [[[usize; 4]; 2]; 7] = [
    [[1, 2, 3, 4], [5, 6, 7, 8]],
    [[1, 3, 5, 7], [6, 8, 2, 4]],
    [[1, 5, 6, 2], [8, 4, 3, 7]],
    [[1, 6, 8, 3], [4, 5, 7, 2]],
    [[1, 8, 4, 5], [7, 2, 6, 3]],
    [[1, 4, 7, 6], [2, 3, 8, 5]],
    [[1, 7, 2, 8], [3, 5, 4, 6]],
];

/// The seven triples of generator labels that share four disjoint index pairs.
pub const FANO_TRIPLES: [[usize; 3]; 7] = [[1, 2, 4], [1, 3, 7], [1, 5, 6], [2, 3, 5], [2, 6, 7], [3, 4, 6], [4, 5, 7]];

/// Sorts a list of distinct indices, returning the sorted list and the permutation sign.
fn sort_with_sign(idx: &[usize]) -> (Vec<usize>, i64) {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (v, sign)
}

/// The wedge `e_{i₁}∧e_{i₂}∧e_{i₃}∧e_{i₄}` for 1-based indices in the given order.
pub fn elementary<F: Field>(idx: &[usize], variance: Variance) -> FourForm<F> {
    let (sorted, sign) = sort_with_sign(idx);
    let zero_based: Vec<usize> = sorted.iter().map(|i| i - 1).collect();
    AltTensor::basis(8, variance, &zero_based).scale(&F::from_i64(sign))
}

/// The Cartan generators `h₁..h₇`, each sign-normalized by sorting its two wedges.
pub fn cartan_basis<F: Field>() -> [FourForm<F>; 7] {
    CARTAN_QUADRUPLES.map(|[a, b]| elementary::<F>(&a, Variance::Vector).add(&elementary(&b, Variance::Vector)))
}

/// `Σ cᵢ hᵢ`. All-zero coordinates are rejected.
pub fn cartan_sample<F: Field>(c: &[F]) -> Result<FourForm<F>> {
    if c.len() != 7 {
        return Err(Error::Dimension(format!("expected 7 Cartan coordinates, got {}", c.len())));
    }
    if c.iter().all(F::is_zero) {
        return Err(Error::Precondition("all Cartan coordinates are zero".into()));
    }
    let h = cartan_basis::<F>();
    Ok(h.iter().zip(c).fold(AltTensor::zero(8, 4, Variance::Vector), |acc, (hi, ci)| acc.add(&hi.scale(ci))))
}

/// How [`random_form`] draws its output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    /// Nonzero Cartan coordinates, then a random `SL₈` conjugation.
    CartanConjugate,
    /// Nonzero Cartan coordinates only.
    Cartan,
    /// All 70 coefficients uniform.
    Uniform,
}

/// A random element of `SL_n`: uniform entries, resampled until invertible, with the first
/// row rescaled to make the determinant 1.
pub fn random_sl<F: Field>(rng: &mut ChaCha8Rng, n: usize) -> Matrix<F> {
    loop {
        let mut g = Matrix::from_fn(n, n, |_, _| F::random(rng));
        let d = g.det();
        if let Some(inv) = d.inv() {
            for j in 0..n {
                g[(0, j)] = g[(0, j)].clone() * inv.clone();
            }
            return g;
        }
    }
}

/// A reproducible random four-form.
pub fn random_form<F: Field>(seed: u64, mode: SampleMode) -> FourForm<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match mode {
        SampleMode::Uniform => {
            let c: Vec<F> = (0..70).map(|_| F::random(&mut rng)).collect();
            AltTensor::from_dense(8, 4, Variance::Vector, &c)
        }
        SampleMode::Cartan | SampleMode::CartanConjugate => {
            let c: Vec<F> = (0..7).map(|_| F::random_nonzero(&mut rng)).collect();
            let h = cartan_sample(&c).expect("nonzero coordinates");
            if mode == SampleMode::Cartan {
                return h;
            }
            let g = random_sl(&mut rng, 8);
            gl_action(&g, &h).expect("invertible by construction")
        }
    }
}

/// The first regular form among `random_form(seed + k, mode)` for `k = 0, 1, …`, together
/// with the `k` used. Fails as inconclusive after `max_tries` irregular draws.
pub fn regular_form<F: Field>(seed: u64, mode: SampleMode, max_tries: u64) -> Result<(FourForm<F>, u64)> {
    for k in 0..max_tries {
        let v = random_form(seed.wrapping_add(k), mode);
        if is_regular(&v)? {
            return Ok((v, k));
        }
    }
    Err(Error::Inconclusive(format!("no regular form in {max_tries} draws of mode {mode:?} over {}", F::label())))
}

/// `(∧^k g)(v)` for an invertible `g` acting on vectors by `g e_i = Σ_j g_{ji} e_j`; the
/// coefficient of `e_J` picks up the minor `det g[J, I]` from each `e_I`.
pub fn gl_action<F: Field>(g: &Matrix<F>, v: &AltTensor<F>) -> Result<AltTensor<F>> {
    let n = v.dim();
    if g.nrows() != n || g.ncols() != n {
        return Err(Error::Dimension(format!("expected a {n}×{n} matrix")));
    }
    if g.det().is_zero() {
        return Err(Error::Precondition("singular matrix".into()));
    }
    let targets = subsets(n, v.degree());
    let mut out = AltTensor::zero(n, v.degree(), v.variance());
    for (i, c) in v.terms() {
        let cols = i.indices();
        let image = AltTensor::from_terms(n, v.degree(), v.variance(), targets.iter().map(|&j| (j, g.submatrix(&j.indices(), &cols).det() * c.clone())));
        out = out.add(&image);
    }
    Ok(out)
}

/// `v^∨` for the volume form `e₁^∨∧…∧e₈^∨`. Applied to a covector-type form it returns the
/// vector-type form, and the composite is the identity in degree 4 of 8.
pub fn dualize<F: Field>(v: &FourForm<F>) -> FourForm<F> {
    hodge_dual(v)
}

/// The three-index contraction `C(u, φ)_{ab} = Σ_{|S|=3} ε(a,S)·u_{a∪S}·ε(b,S)·φ_{b∪S}` of a
/// vector-type and a covector-type four-form, an endomorphism of `V₈` written as a matrix.
fn three_index_contraction<F: Field>(u: &FourForm<F>, phi: &FourForm<F>) -> Matrix<F> {
    let mut m = Matrix::<F>::zeros(8, 8);
    for (i, x) in u.terms() {
        for (j, y) in phi.terms() {
            if (i.0 & j.0).count_ones() < 3 {
                continue;
            }
            for ra in i.indices() {
                let s = MultiIndex(i.0 & !(1 << ra));
                if j.0 & s.0 != s.0 {
                    continue;
                }
                let b = MultiIndex(j.0 & !s.0);
                let sign = merge_sign(MultiIndex(1 << ra), s) * merge_sign(b, s);
                let cb = b.indices()[0];
                m[(ra, cb)] = m[(ra, cb)].clone() + F::from_i64(sign) * x.clone() * y.clone();
            }
        }
    }
    m
}

/// The bracket of two vector-type four-forms with values in `sl₈`: the traceless part of
/// `C(u, w^∨) − C(w, u^∨)`. The result transforms as `g·[u,w]·g⁻¹` under `SL₈`.
pub fn e7_bracket<F: Field>(u: &FourForm<F>, w: &FourForm<F>) -> Result<Matrix<F>> {
    for t in [u, w] {
        if t.dim() != 8 || t.degree() != 4 || t.variance() != Variance::Vector {
            return Err(Error::Dimension("bracket expects vector-type four-forms on V₈".into()));
        }
    }
    let m = three_index_contraction(u, &dualize(w)).add(&three_index_contraction(w, &dualize(u)).scale(&-F::one()));
    let trace = (0..8).fold(F::zero(), |acc, i| acc + m[(i, i)].clone());
    let shift = trace / F::from_i64(8);
    let mut out = m;
    for i in 0..8 {
        out[(i, i)] = out[(i, i)].clone() - shift.clone();
    }
    Ok(out)
}

/// The derivation action of `X ∈ gl₈` on a four-form: `e_I ↦ Σ_{i∈I} e_{i₁}∧…∧X e_i∧…`.
pub fn lie_action<F: Field>(x: &Matrix<F>, v: &FourForm<F>) -> FourForm<F> {
    let mut out = AltTensor::zero(8, 4, v.variance());
    for (i, c) in v.terms() {
        for a in i.indices() {
            let rest = MultiIndex(i.0 & !(1 << a));
            let sa = merge_sign(MultiIndex(1 << a), rest);
            for b in 0..8 {
                if (b != a && rest.contains(b)) || x[(b, a)].is_zero() {
                    continue;
                }
                let target = rest.union(MultiIndex(1 << b));
                let s = F::from_i64(sa * merge_sign(MultiIndex(1 << b), rest));
                out = out.add(&AltTensor::from_terms(8, 4, v.variance(), [(target, s * x[(b, a)].clone() * c.clone())]));
            }
        }
    }
    out
}

/// Dimensions of the two parts of the centralizer of `v` in `e₇ = sl₈ ⊕ ∧⁴V₈`: the
/// stabilizer of `v` in `sl₈`, and the four-forms whose bracket with `v` vanishes.
pub fn centralizer_dims<F: Field>(v: &FourForm<F>) -> Result<(usize, usize)> {
    let mut sl_basis = Vec::with_capacity(63);
    for i in 0..8 {
        for j in 0..8 {
            let mut m = Matrix::<F>::zeros(8, 8);
            if i != j {
                m[(i, j)] = F::one();
            } else if i < 7 {
                m[(i, i)] = F::one();
                m[(i + 1, i + 1)] = -F::one();
            } else {
                continue;
            }
            sl_basis.push(m);
        }
    }
    let stab_cols: Vec<Vec<F>> = sl_basis.iter().map(|x| lie_action(x, v).to_dense()).collect();
    let stab = Matrix::from_fn(70, 63, |r, c| stab_cols[c][r].clone());
    let mut bracket_cols = Vec::with_capacity(70);
    for idx in subsets(8, 4) {
        let u = AltTensor::from_terms(8, 4, Variance::Vector, [(idx, F::one())]);
        let b = e7_bracket(v, &u)?;
        bracket_cols.push((0..64).map(|k| b[(k / 8, k % 8)].clone()).collect::<Vec<F>>());
    }
    let br = Matrix::from_fn(64, 70, |r, c| bracket_cols[c][r].clone());
    Ok((63 - stab.rank(), 70 - br.rank()))
}

/// Whether `v` is regular in `e₇`: its centralizer has the minimal dimension 7, all of it in
/// `∧⁴V₈`. Points of the Cartan subspace on a root hyperplane fail this.
pub fn is_regular<F: Field>(v: &FourForm<F>) -> Result<bool> {
    Ok(centralizer_dims(v)? == (0, 7))
}

/// The fourteen index quadruples of the Cartan generators, as 0-based sets.
pub fn cartan_quadruples() -> Vec<MultiIndex> {
    CARTAN_QUADRUPLES
        .iter()
        .flatten()
        .map(|q| {
            let (s, _) = sort_with_sign(q);
            MultiIndex::from_slice(&s.iter().map(|i| i - 1).collect::<Vec<_>>()).expect("valid quadruple")
        })
        .collect()
}

/// Index pairs contained in a quadruple of each of the generators `h_i` (1-based labels).
pub fn shared_pairs(labels: &[usize]) -> Vec<(usize, usize)> {
    let quads = cartan_quadruples();
    subsets(8, 2)
        .into_iter()
        .filter(|p| labels.iter().all(|&l| quads[2 * (l - 1)..2 * l].iter().any(|q| q.0 & p.0 == p.0)))
        .map(|p| {
            let ix = p.indices();
            (ix[0] + 1, ix[1] + 1)
        })
        .collect()
}

/// Outcome of the combinatorial checks on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoReport {
    /// Each pair of quadruples that are neither equal nor complementary meet in ≥ 2 indices.
    pub pairs_share_two: bool,
    /// Each index pair lies in exactly three quadruples.
    pub pair_multiplicity_three: bool,
    /// Each listed triple shares exactly four pairwise disjoint index pairs.
    pub triples_share_four_disjoint: bool,
    /// Any two listed triples meet in exactly one label.
    pub triples_meet_once: bool,
}

impl FanoReport {
    pub fn all(&self) -> bool {
        self.pairs_share_two && self.pair_multiplicity_three && self.triples_share_four_disjoint && self.triples_meet_once
    }
}

pub fn fano_triples() -> [[usize; 3]; 7] {
    FANO_TRIPLES
}

pub fn fano_report() -> FanoReport {
    let quads = cartan_quadruples();
    let full = crate::exterior::full_mask(8);
    let pairs_share_two = quads.iter().enumerate().all(|(a, p)| quads.iter().skip(a + 1).all(|q| p.0 | q.0 == full || (p.0 & q.0).count_ones() >= 2));
    let pair_multiplicity_three = subsets(8, 2).iter().all(|p| quads.iter().filter(|q| q.0 & p.0 == p.0).count() == 3);
    let triples_share_four_disjoint = FANO_TRIPLES.iter().all(|t| {
        let pairs = shared_pairs(t);
        let covered: u16 = pairs.iter().fold(0, |acc, &(a, b)| acc | (1 << (a - 1)) | (1 << (b - 1)));
        pairs.len() == 4 && covered == full
    });
    let triples_meet_once = FANO_TRIPLES.iter().enumerate().all(|(a, s)| FANO_TRIPLES.iter().skip(a + 1).all(|t| s.iter().filter(|x| t.contains(x)).count() == 1));
    FanoReport { pairs_share_two, pair_multiplicity_three, triples_share_four_disjoint, triples_meet_once }
}

/// SHA-256 of the canonical text serialization, used to pin a form in certificates.
pub fn form_hash<F: Field>(v: &FourForm<F>) -> String {
    let header = if F::characteristic() == 0 { FieldSpec::Q } else { FieldSpec::Fp(F::characteristic()) };
    hex::encode(Sha256::digest(format_form(header, v).as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Ring, Q};

    type F101 = Fp<101>;

    fn e(idx: &[usize]) -> FourForm<Q> {
        elementary(idx, Variance::Vector)
    }

    #[test]
    fn cartan_generators_in_sorted_form() {
        let h = cartan_basis::<Q>();
        assert_eq!(h[0], e(&[1, 2, 3, 4]).add(&e(&[5, 6, 7, 8])));
        assert_eq!(h[1], e(&[1, 3, 5, 7]).add(&e(&[2, 4, 6, 8])));
        // Sorting e4572 needs an odd permutation, so h4 carries a minus sign.
        assert_eq!(h[3], e(&[1, 3, 6, 8]).add(&e(&[2, 4, 5, 7]).scale(&-Q::one())));
        for hi in &h {
            assert_eq!(hi.nnz(), 2);
        }
        let signs: Vec<(i64, i64)> = h
            .iter()
            .map(|hi| {
                let c: Vec<i64> = hi.terms().map(|(_, x)| if *x == Q::one() { 1 } else { -1 }).collect();
                (c[0], c[1])
            })
            .collect();
        assert_eq!(signs, [(1, 1), (1, 1), (1, 1), (1, -1), (1, 1), (-1, -1), (-1, -1)]);
    }

    #[test]
    fn cartan_sample_and_errors() {
        let mut c = vec![Q::zero(); 7];
        assert!(cartan_sample(&c).is_err());
        c[0] = Q::one();
        assert_eq!(cartan_sample(&c).unwrap(), cartan_basis::<Q>()[0]);
        assert!(cartan_sample(&c[..6]).is_err());
    }

    #[test]
    fn centralizers_detect_regularity() {
        let c = [1, 2, 3, 5, 7, 11, 13].map(Q::from_i64);
        assert_eq!(centralizer_dims(&cartan_sample(&c).unwrap()).unwrap(), (0, 7));
        let (stab, wedge_part) = centralizer_dims(&cartan_basis::<Q>()[0]).unwrap();
        assert!(stab > 0 && wedge_part > 7);
        // The stabilizer part is invariant under conjugation.
        let v: FourForm<F101> = random_form(9, SampleMode::CartanConjugate);
        let h: FourForm<F101> = random_form(9, SampleMode::Cartan);
        assert_eq!(centralizer_dims(&v).unwrap(), centralizer_dims(&h).unwrap());
    }

    #[test]
    fn small_fields_have_no_regular_cartan_points() {
        // The E₇ root arrangement has characteristic polynomial ∏(t − e) over the exponents
        // e ∈ {1,5,7,9,11,13,17}, which vanishes at 11.
        for seed in 0..10 {
            assert!(!is_regular(&random_form::<Fp<11>>(seed, SampleMode::Cartan)).unwrap());
        }
        let (v, _) = regular_form::<Fp<11>>(1, SampleMode::Uniform, 10).unwrap();
        assert!(is_regular(&v).unwrap());
        assert!(regular_form::<Fp<11>>(1, SampleMode::Cartan, 3).is_err());
    }

    #[test]
    fn random_forms_are_reproducible() {
        let a: FourForm<F101> = random_form(5, SampleMode::CartanConjugate);
        let b: FourForm<F101> = random_form(5, SampleMode::CartanConjugate);
        let c: FourForm<F101> = random_form(6, SampleMode::CartanConjugate);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(form_hash(&a), form_hash(&b));
        assert_eq!(form_hash(&a).len(), 64);
        let u: FourForm<F101> = random_form(5, SampleMode::Uniform);
        assert!(u.nnz() > 50);
    }

    #[test]
    fn gl_action_examples() {
        let v = cartan_sample(&(1..=7).map(Q::from_i64).collect::<Vec<_>>()).unwrap();
        assert_eq!(gl_action(&Matrix::identity(8), &v).unwrap(), v);
        let d = Matrix::from_fn(8, 8, |i, j| if i == j { Q::from_i64(i as i64 + 2) } else { Q::zero() });
        let dv = gl_action(&d, &e(&[1, 2, 3, 4])).unwrap();
        assert_eq!(dv, e(&[1, 2, 3, 4]).scale(&Q::from_i64(2 * 3 * 4 * 5)));
        // The transposition (12) sends e1∧e2∧e3∧e4 to e2∧e1∧e3∧e4.
        let swap = Matrix::from_fn(8, 8, |i, j| {
            let t = |k: usize| if k == 0 { 1 } else if k == 1 { 0 } else { k };
            if i == t(j) {
                Q::one()
            } else {
                Q::zero()
            }
        });
        assert_eq!(gl_action(&swap, &e(&[1, 2, 3, 4])).unwrap(), e(&[1, 2, 3, 4]).scale(&-Q::one()));
        assert!(gl_action(&Matrix::<Q>::zeros(8, 8), &v).is_err());
    }

    #[test]
    fn gl_action_is_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v: FourForm<F101> = random_form(1, SampleMode::Uniform);
        for _ in 0..3 {
            let g = random_sl::<F101>(&mut rng, 8);
            let h = random_sl::<F101>(&mut rng, 8);
            let lhs = gl_action(&g.mul(&h), &v).unwrap();
            let rhs = gl_action(&g, &gl_action(&h, &v).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dualization_examples() {
        let d = dualize(&e(&[1, 2, 3, 4]));
        assert_eq!(d, elementary::<Q>(&[5, 6, 7, 8], Variance::Covector));
        assert_eq!(dualize(&e(&[1, 3, 5, 7])), elementary::<Q>(&[2, 4, 6, 8], Variance::Covector));
        let h = cartan_basis::<Q>();
        assert_eq!(dualize(&h[1]), h[1].relabel_variance(Variance::Covector));
        let v: FourForm<F101> = random_form(2, SampleMode::Uniform);
        assert_eq!(dualize(&dualize(&v)), v);
    }

    #[test]
    fn dualization_of_each_generator() {
        // Generators whose two wedges have equal signs are fixed; h4 has opposite signs and
        // is sent to its negative.
        let h = cartan_basis::<Q>();
        for (i, hi) in h.iter().enumerate() {
            let expected = if i == 3 { hi.scale(&-Q::one()) } else { hi.clone() };
            assert_eq!(dualize(hi), expected.relabel_variance(Variance::Covector), "h{}", i + 1);
        }
    }

    /// Dense antisymmetric-array version of the three-index contraction.
    fn contraction_oracle(u: &FourForm<Q>, phi: &FourForm<Q>) -> Matrix<Q> {
        let entry = |t: &FourForm<Q>, idx: [usize; 4]| -> Q {
            let mut s = idx.to_vec();
            s.sort_unstable();
            s.dedup();
            if s.len() < 4 {
                return Q::zero();
            }
            let (_, sign) = sort_with_sign(&idx.map(|i| i + 1));
            t.coeff(&s) * Q::from_i64(sign)
        };
        Matrix::from_fn(8, 8, |a, b| {
            let mut acc = Q::zero();
            for c in 0..8 {
                for d in 0..8 {
                    for f in 0..8 {
                        acc = acc + entry(u, [a, c, d, f]) * entry(phi, [b, c, d, f]);
                    }
                }
            }
            acc / Q::from_i64(6)
        })
    }

    #[test]
    fn bracket_matches_dense_contraction() {
        let u = e(&[1, 2, 3, 4]);
        let w = e(&[1, 5, 6, 7]);
        let oracle = contraction_oracle(&u, &dualize(&w)).add(&contraction_oracle(&w, &dualize(&u)).scale(&-Q::one()));
        let b = e7_bracket(&u, &w).unwrap();
        assert!(!b.is_zero());
        let trace = (0..8).fold(Q::zero(), |acc, i| acc + oracle[(i, i)].clone());
        let expected = Matrix::from_fn(8, 8, |i, j| oracle[(i, j)].clone() - if i == j { trace.clone() / Q::from_i64(8) } else { Q::zero() });
        assert_eq!(b, expected);
    }

    #[test]
    fn bracket_of_quadruples_sharing_three_indices_vanishes() {
        // Any e_I, e_J with |I∩J| ≥ 2 lie in ∧⁴ of a 6-space, where the bracket factors through zero.
        assert!(e7_bracket(&e(&[1, 2, 3, 4]), &e(&[1, 2, 3, 5])).unwrap().is_zero());
        assert!(e7_bracket(&e(&[1, 2, 3, 4]), &e(&[1, 2, 5, 6])).unwrap().is_zero());
    }

    #[test]
    fn cartan_generators_commute() {
        let h = cartan_basis::<Q>();
        for i in 0..7 {
            assert!(e7_bracket(&h[i], &h[i]).unwrap().is_zero());
            for j in i + 1..7 {
                assert!(e7_bracket(&h[i], &h[j]).unwrap().is_zero(), "[h{}, h{}]", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn bracket_is_antisymmetric_and_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for s in 0..5 {
            let u: FourForm<F101> = random_form(100 + s, SampleMode::Uniform);
            let w: FourForm<F101> = random_form(200 + s, SampleMode::Uniform);
            let b = e7_bracket(&u, &w).unwrap();
            assert_eq!(b, e7_bracket(&w, &u).unwrap().scale(&-F101::one()));
            let g = random_sl::<F101>(&mut rng, 8);
            let gb = e7_bracket(&gl_action(&g, &u).unwrap(), &gl_action(&g, &w).unwrap()).unwrap();
            assert_eq!(gb, g.mul(&b).mul(&g.inverse().unwrap()));
        }
    }

    #[test]
    fn conjugated_cartan_pairs_still_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let h = cartan_basis::<F101>();
        let g = random_sl::<F101>(&mut rng, 8);
        let gh: Vec<_> = h.iter().map(|x| gl_action(&g, x).unwrap()).collect();
        assert!(e7_bracket(&gh[2], &gh[5]).unwrap().is_zero());
    }

    #[test]
    fn fano_combinatorics() {
        assert_eq!(shared_pairs(&[1, 2, 4]), [(1, 3), (2, 4), (5, 7), (6, 8)]);
        assert!(fano_report().all());
        assert_eq!(fano_triples().len(), 7);
    }
}
