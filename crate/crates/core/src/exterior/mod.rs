//! Alternating tensors on a small coordinate space: wedge and interior products, the
//! complement duality attached to the standard volume form, quotients by subspaces, and
//! the wedge-pattern subspaces describing flag conditions.

mod io;
mod pattern;
mod subspace;

pub use io::{format_form, parse_form_file, FieldSpec, FormFile};
pub use pattern::{flag_condition_check, Member, WedgePattern};
pub use subspace::{Flag, Subspace};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::{Error, Result};

/// Largest ambient dimension supported by the bitmask index sets.
pub const MAX_DIM: usize = 16;

/// A strictly increasing set of 0-based indices, stored as a bitmask.
///
/// Ordered first by size, then lexicographically by the sorted index tuple. Displayed
/// 1-based, matching the usual `e_{1234}` notation.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub u16);

impl MultiIndex {
    pub fn from_slice(idx: &[usize]) -> Result<Self> {
        let mut mask = 0u16;
        let mut last = None;
        for &i in idx {
            if i >= MAX_DIM || last.is_some_and(|l| l >= i) {
                return Err(Error::Dimension(format!("index list {idx:?} is not strictly increasing below {MAX_DIM}")));
            }
            mask |= 1 << i;
            last = Some(i);
        }
        Ok(MultiIndex(mask))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> Vec<usize> {
        (0..MAX_DIM).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement(self, n: usize) -> Self {
        MultiIndex(!self.0 & full_mask(n))
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        MultiIndex(self.0 | other.0)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "e{}", s.join(""))
    }
}

pub(crate) fn full_mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

/// Sign of the permutation sorting the concatenation `(a, b)`, or 0 if the sets meet.
pub fn merge_sign(a: MultiIndex, b: MultiIndex) -> i64 {
    if !a.is_disjoint(b) {
        return 0;
    }
    let mut inversions = 0;
    for j in b.indices() {
        inversions += (a.0 >> (j + 1)).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<MultiIndex> {
    let mut out: Vec<MultiIndex> = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| MultiIndex(m as u16)).collect();
    out.sort();
    out
}

/// Whether a tensor lives in ∧V or in ∧V^∨.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Variance {
    Vector,
    Covector,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Vector => Variance::Covector,
            Variance::Covector => Variance::Vector,
        }
    }
}

/// An exact alternating tensor of degree `k` on an `n`-dimensional space, stored sparsely.
#[derive(Clone, PartialEq)]
pub struct AltTensor<F> {
    n: usize,
    k: usize,
    variance: Variance,
    coeffs: BTreeMap<MultiIndex, F>,
}

impl<F: Field> fmt::Debug for AltTensor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.variance == Variance::Covector { "^" } else { "" };
        let terms: Vec<String> = self.coeffs.iter().map(|(i, c)| format!("{c:?}*{i:?}{star}")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<F: Field> AltTensor<F> {
    pub fn zero(n: usize, k: usize, variance: Variance) -> Self {
        assert!(n <= MAX_DIM && k <= n, "unsupported shape n={n}, k={k}");
        AltTensor { n, k, variance, coeffs: BTreeMap::new() }
    }

    /// Builds a tensor from `(sorted 0-based indices, coefficient)` terms; repeated keys add up.
    pub fn from_terms(n: usize, k: usize, variance: Variance, terms: impl IntoIterator<Item = (MultiIndex, F)>) -> Self {
        let mut t = Self::zero(n, k, variance);
        for (i, c) in terms {
            assert_eq!(i.len(), k, "index set {i:?} has the wrong size");
            assert!(i.0 & !full_mask(n) == 0, "index set {i:?} out of range");
            t.add_term(i, c);
        }
        t
    }

    /// The elementary wedge `e_I` (or `e_I^∨`).
    pub fn basis(n: usize, variance: Variance, idx: &[usize]) -> Self {
        let i = MultiIndex::from_slice(idx).expect("valid index list");
        Self::from_terms(n, idx.len(), variance, [(i, F::one())])
    }

    /// A degree-one tensor from a coordinate vector.
    pub fn from_vector(v: &[F], variance: Variance) -> Self {
        Self::from_terms(v.len(), 1, variance, v.iter().enumerate().map(|(i, c)| (MultiIndex(1 << i), c.clone())))
    }

    fn add_term(&mut self, i: MultiIndex, c: F) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(i).or_insert_with(F::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, i: MultiIndex) -> F {
        self.coeffs.get(&i).cloned().unwrap_or_else(F::zero)
    }

    /// Coefficient at 0-based sorted indices.
    pub fn coeff(&self, idx: &[usize]) -> F {
        MultiIndex::from_slice(idx).map(|i| self.get(i)).unwrap_or_else(|_| F::zero())
    }

    /// Nonzero terms in index-set order.
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &F)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.k, self.variance), (other.n, other.k, other.variance), "shape mismatch in sum");
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.n, self.k, self.variance, self.terms().map(|(i, x)| (i, x.clone() * c.clone())))
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> AltTensor<G> {
        AltTensor::from_terms(self.n, self.k, self.variance, self.terms().map(|(i, x)| (i, f(x))))
    }

    /// Dense coordinates in the lexicographic basis of k-subsets.
    pub fn to_dense(&self) -> Vec<F> {
        subsets(self.n, self.k).into_iter().map(|i| self.get(i)).collect()
    }

    pub fn from_dense(n: usize, k: usize, variance: Variance, v: &[F]) -> Self {
        let basis = subsets(n, k);
        assert_eq!(basis.len(), v.len(), "dense vector has the wrong length");
        Self::from_terms(n, k, variance, basis.into_iter().zip(v.iter().cloned()))
    }

    /// Same coefficients, opposite variance. This is a bare relabelling, used for data that
    /// is given in the dual basis; it is not the complement duality.
    pub fn relabel_variance(&self, variance: Variance) -> Self {
        AltTensor { variance, ..self.clone() }
    }
}

/// Wedge product. Degrees beyond the ambient dimension give the zero tensor.
pub fn wedge<F: Field>(a: &AltTensor<F>, b: &AltTensor<F>) -> Result<AltTensor<F>> {
    if a.n != b.n || a.variance != b.variance {
        return Err(Error::Dimension("wedge of tensors with different ambient space or variance".into()));
    }
    let k = a.k + b.k;
    if k > a.n {
        return Ok(AltTensor { n: a.n, k: a.n, variance: a.variance, coeffs: BTreeMap::new() });
    }
    let mut out = AltTensor::zero(a.n, k, a.variance);
    for (i, x) in a.terms() {
        for (j, y) in b.terms() {
            let s = merge_sign(i, j);
            if s != 0 {
                out.add_term(i.union(j), F::from_i64(s) * x.clone() * y.clone());
            }
        }
    }
    Ok(out)
}

/// Interior product `x ⌟ φ` of a vector `x` from the space dual to the one carrying `φ`:
/// `(x⌟φ)(a₁,…) = φ(x,a₁,…)`, so `e_m ⌟ e_I^∨ = (−1)^{pos} e_{I∖m}^∨` where `pos` is the
/// position of `m` inside `I`.
pub fn interior<F: Field>(x: &[F], phi: &AltTensor<F>) -> Result<AltTensor<F>> {
    if x.len() != phi.n {
        return Err(Error::Dimension("contraction vector has the wrong length".into()));
    }
    if phi.k == 0 {
        return Err(Error::Dimension("cannot contract a scalar".into()));
    }
    let mut out = AltTensor::zero(phi.n, phi.k - 1, phi.variance);
    for (i, c) in phi.terms() {
        for (pos, m) in i.indices().into_iter().enumerate() {
            if x[m].is_zero() {
                continue;
            }
            let sign = if pos % 2 == 0 { F::one() } else { -F::one() };
            out.add_term(MultiIndex(i.0 & !(1 << m)), sign * x[m].clone() * c.clone());
        }
    }
    Ok(out)
}

/// Contraction of a vector into a covector-type tensor, `x ⌟ φ`.
pub fn contract<F: Field>(x: &[F], phi: &AltTensor<F>) -> Result<AltTensor<F>> {
    if phi.variance != Variance::Covector {
        return Err(Error::Dimension("contract expects a covector-type tensor".into()));
    }
    interior(x, phi)
}

/// Complement duality for the volume form `e₁^∨∧…∧e_n^∨`: `e_I ↦ ε(I,J)·e_J^∨` with `J` the
/// complement of `I` and `ε(I,J)` the sign of the permutation `(I,J)`. The same rule maps
/// covector-type tensors back to vector-type ones.
pub fn hodge_dual<F: Field>(a: &AltTensor<F>) -> AltTensor<F> {
    let n = a.n;
    AltTensor::from_terms(
        n,
        n - a.k,
        a.variance.flip(),
        a.terms().map(|(i, c)| {
            let j = i.complement(n);
            (j, F::from_i64(merge_sign(i, j)) * c.clone())
        }),
    )
}

/// Image of a vector-type tensor in `∧^k(V/U)`, in coordinates of the canonical complement
/// (the non-pivot standard basis vectors of `U`'s echelon form), renumbered `0..n−dim U`.
pub fn quotient_reduce<F: Field>(a: &AltTensor<F>, u: &Subspace<F>) -> Result<AltTensor<F>> {
    if a.n != u.ambient() {
        return Err(Error::Dimension("tensor and subspace live in different spaces".into()));
    }
    if u.dim() >= a.n {
        return Err(Error::Dimension("quotient by the whole space".into()));
    }
    let proj = u.quotient_projection();
    let m = proj.ncols();
    let mut out = AltTensor::zero(m, a.k.min(m), a.variance);
    if a.k > m {
        return Ok(out);
    }
    let targets = subsets(m, a.k);
    for (i, c) in a.terms() {
        let rows = i.indices();
        for &t in &targets {
            let cols = t.indices();
            let d = proj.submatrix(&rows, &cols).det();
            if !d.is_zero() {
                out.add_term(t, d * c.clone());
            }
        }
    }
    Ok(out)
}

/// Skew matrix of an `(m−2)`-form `w` on an `m`-dimensional space under
/// `∧^{m−2}W ≅ ∧²W^∨ ⊗ det W`: entry `(a,b)` is the coefficient of `e₁∧…∧e_m` in `w∧e_a∧e_b`.
pub fn complement_two_form<F: Field>(w: &AltTensor<F>) -> Matrix<F> {
    let m = w.n;
    assert_eq!(w.k + 2, m, "complement two-form needs a form of codegree 2");
    let mut a = Matrix::zeros(m, m);
    for x in 0..m {
        for y in x + 1..m {
            let pair = MultiIndex((1 << x) | (1 << y));
            let c = pair.complement(m);
            let s = merge_sign(c, pair);
            let val = F::from_i64(s) * w.get(c);
            a[(x, y)] = val.clone();
            a[(y, x)] = -val;
        }
    }
    a
}

/// The skew 6×6 form induced on `V₈/U₂` by a four-form: `v` reduced modulo `U₂`, then read
/// through the complement duality of the quotient.
pub fn induced_two_form<F: Field>(v: &AltTensor<F>, u2: &Subspace<F>) -> Result<Matrix<F>> {
    if u2.dim() != 2 {
        return Err(Error::Precondition(format!("expected a 2-dimensional subspace, got {}", u2.dim())));
    }
    if v.k + 2 != v.n - 2 {
        return Err(Error::Dimension("induced two-form needs a form of degree n−4".into()));
    }
    Ok(complement_two_form(&quotient_reduce(v, u2)?))
}

/// Wedge of the given vectors as a dense vector in `∧^k` coordinates.
pub fn wedge_vectors<F: Field>(vectors: &[&[F]], n: usize, variance: Variance) -> AltTensor<F> {
    let mut acc = AltTensor::from_terms(n, 0, variance, [(MultiIndex(0), F::one())]);
    for v in vectors {
        acc = wedge(&acc, &AltTensor::from_vector(v, variance)).expect("matching shapes");
    }
    acc
}

/// Plücker coordinates of the span of two vectors, indexed by the 28 sorted pairs.
pub fn plucker<F: Field>(u: &[F], w: &[F]) -> Vec<F> {
    let n = u.len();
    subsets(n, 2)
        .into_iter()
        .map(|p| {
            let ix = p.indices();
            u[ix[0]].clone() * w[ix[1]].clone() - u[ix[1]].clone() * w[ix[0]].clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Ring, Q};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F11 = Fp<11>;

    fn e(idx: &[usize]) -> AltTensor<Q> {
        AltTensor::basis(8, Variance::Vector, &idx.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    fn ed(idx: &[usize]) -> AltTensor<Q> {
        AltTensor::basis(8, Variance::Covector, &idx.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    fn unit(i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); 8];
        v[i - 1] = Q::one();
        v
    }

    fn random_tensor<F: Field>(rng: &mut ChaCha8Rng, k: usize, variance: Variance) -> AltTensor<F> {
        let basis = subsets(8, k);
        let coeffs: Vec<F> = basis.iter().map(|_| F::random(rng)).collect();
        AltTensor::from_dense(8, k, variance, &coeffs)
    }

    fn h1() -> AltTensor<Q> {
        e(&[1, 2, 3, 4]).add(&e(&[5, 6, 7, 8]))
    }

    #[test]
    fn multi_index_order_is_lexicographic() {
        let s = subsets(5, 2);
        let shown: Vec<String> = s.iter().map(|i| format!("{i:?}")).collect();
        assert_eq!(shown, ["e12", "e13", "e14", "e15", "e23", "e24", "e25", "e34", "e35", "e45"]);
        assert_eq!(subsets(8, 4).len(), 70);
    }

    #[test]
    fn wedge_examples() {
        assert!(wedge(&e(&[1, 2]), &e(&[2, 3])).unwrap().is_zero());
        assert_eq!(wedge(&e(&[1]), &e(&[2])).unwrap(), e(&[1, 2]));
        assert_eq!(wedge(&e(&[2]), &e(&[1])).unwrap(), e(&[1, 2]).scale(&-Q::one()));
        let w = e(&[1, 2]).add(&e(&[3, 4]));
        assert_eq!(wedge(&w, &w).unwrap(), e(&[1, 2, 3, 4]).scale(&Q::from_i64(2)));
        assert!(wedge(&e(&[1, 2, 3, 4, 5]), &e(&[1, 6, 7, 8])).unwrap().is_zero());
        assert!(wedge(&e(&[1]), &ed(&[2])).is_err());
    }

    #[test]
    fn wedge_is_associative_and_graded_commutative() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let a: AltTensor<F11> = random_tensor(&mut rng, 1, Variance::Vector);
            let b: AltTensor<F11> = random_tensor(&mut rng, 2, Variance::Vector);
            let c: AltTensor<F11> = random_tensor(&mut rng, 3, Variance::Vector);
            let left = wedge(&wedge(&a, &b).unwrap(), &c).unwrap();
            let right = wedge(&a, &wedge(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right);
            let ac = wedge(&a, &c).unwrap();
            let ca = wedge(&c, &a).unwrap();
            assert_eq!(ac, ca.scale(&-F11::one()));
            let ab = wedge(&a, &b).unwrap();
            assert_eq!(ab, wedge(&b, &a).unwrap());
            let a2: AltTensor<F11> = random_tensor(&mut rng, 1, Variance::Vector);
            assert_eq!(wedge(&a, &a2).unwrap(), wedge(&a2, &a).unwrap().scale(&-F11::one()));
        }
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(contract(&unit(1), &ed(&[1, 2])).unwrap(), ed(&[2]));
        assert!(contract(&unit(3), &ed(&[1, 2])).unwrap().is_zero());
        let h1d = hodge_dual(&h1());
        assert_eq!(contract(&unit(1), &h1d).unwrap(), ed(&[2, 3, 4]));
        assert!(contract(&unit(1), &h1()).is_err());
    }

    #[test]
    fn contraction_squares_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for k in 1..=5 {
            for _ in 0..20 {
                let phi: AltTensor<F11> = random_tensor(&mut rng, k, Variance::Covector);
                let x: Vec<F11> = (0..8).map(|_| F11::random(&mut rng)).collect();
                let once = contract(&x, &phi).unwrap();
                if k > 1 {
                    assert!(contract(&x, &once).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn hodge_examples_and_supports() {
        assert_eq!(hodge_dual(&e(&[1, 2, 3, 4])), ed(&[5, 6, 7, 8]));
        assert_eq!(hodge_dual(&e(&[1, 3, 5, 7])), ed(&[2, 4, 6, 8]));
        for i in subsets(8, 4) {
            let t = AltTensor::<Q>::from_terms(8, 4, Variance::Vector, [(i, Q::one())]);
            let d = hodge_dual(&t);
            assert_eq!(d.nnz(), 1);
            let (j, c) = d.terms().next().unwrap();
            assert_eq!(j, i.complement(8));
            assert!(*c == Q::one() || *c == -Q::one());
            // (k, n) = (4, 8): applying the duality twice is the identity.
            assert_eq!(hodge_dual(&d), t);
        }
    }

    #[test]
    fn quotient_examples() {
        let u1 = Subspace::span(8, &[unit(1)]);
        assert_eq!(quotient_reduce(&h1(), &u1).unwrap(), AltTensor::basis(7, Variance::Vector, &[3, 4, 5, 6]));
        let u2 = Subspace::span(8, &[unit(1), unit(5)]);
        assert!(quotient_reduce(&h1(), &u2).unwrap().is_zero());
    }

    #[test]
    fn quotient_kills_exactly_the_subspace_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let basis: Vec<Vec<F11>> = (0..2).map(|_| (0..8).map(|_| F11::random(&mut rng)).collect()).collect();
            let u = Subspace::span(8, &basis);
            if u.dim() < 2 {
                continue;
            }
            // Built inside U∧∧³V: reduces to zero.
            let w: AltTensor<F11> = random_tensor(&mut rng, 3, Variance::Vector);
            let inside = wedge(&AltTensor::from_vector(&basis[0], Variance::Vector), &w).unwrap();
            assert!(quotient_reduce(&inside, &u).unwrap().is_zero());
            // A random four-form is outside with overwhelming probability, and the map is linear.
            let a: AltTensor<F11> = random_tensor(&mut rng, 4, Variance::Vector);
            let qa = quotient_reduce(&a, &u).unwrap();
            assert!(!qa.is_zero());
            assert_eq!(quotient_reduce(&a.add(&inside), &u).unwrap(), qa);
            let two = F11::new(2);
            assert_eq!(quotient_reduce(&a.scale(&two), &u).unwrap(), qa.scale(&two));
        }
    }

    #[test]
    fn induced_two_form_examples() {
        let u2 = Subspace::span(8, &[unit(1), unit(2)]);
        let a = induced_two_form(&h1(), &u2).unwrap();
        assert!(a.is_skew());
        assert_eq!(a.rank(), 2);
        let u2 = Subspace::span(8, &[unit(1), unit(5)]);
        assert!(induced_two_form(&h1(), &u2).unwrap().is_zero());
    }

    #[test]
    fn plucker_of_basis_vectors() {
        let p = plucker(&unit(1), &unit(2));
        assert_eq!(p[0], Q::one());
        assert_eq!(p.iter().filter(|x| !x.is_zero()).count(), 1);
        let t = wedge_vectors(&[&unit(1)[..], &unit(2)[..]], 8, Variance::Vector);
        assert_eq!(t.to_dense(), p);
    }
}
