//! The Grassmannian side: the skew form induced on `V₈/U₂`, its rank strata, the Coble
//! quadric as a Pfaffian, its chart gradient, and the flag witnesses `U₄ ⊂ U₆`.

use serde::Serialize;

use crate::exterior::{full_mask, induced_two_form, merge_sign, plucker, subsets, Flag, MultiIndex, Subspace, WedgePattern};
use crate::field::{Field, Jet, Ring};
use crate::linalg::{pfaffian, Matrix};
use crate::theta::{gl_action, FourForm};
use crate::{Error, Result};

use super::patterns;

/// Rank stratum of a point of G(2,8).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum G28Label {
    /// Rank 6: off the quadric.
    Generic,
    /// Rank 4: on the quadric, off D.
    Quadric,
    /// Rank 2: on D.
    Moduli,
    /// Rank 0.
    Degenerate,
}

impl G28Label {
    pub fn from_rank(r: usize) -> Self {
        match r {
            6 => G28Label::Generic,
            4 => G28Label::Quadric,
            2 => G28Label::Moduli,
            _ => G28Label::Degenerate,
        }
    }
}

/// Rank stratum of the induced skew form on `V₈/U₂`.
pub fn rank_stratum_g28<F: Field>(v: &FourForm<F>, u2: &Subspace<F>) -> Result<G28Label> {
    Ok(G28Label::from_rank(induced_two_form(v, u2)?.rank()))
}

/// The 8×8 skew form `A(ω)_{ab}` = coefficient of the volume form in `v∧ω∧e_a∧e_b`, linear
/// in `ω ∈ ∧²V₈`, stored as one matrix per Plücker coordinate.
#[derive(Clone, Debug)]
pub struct PluckerPencil<F: Field> {
    /// `mats[c]` is the coefficient matrix of the `c`-th pair in lexicographic order.
    mats: Vec<Matrix<F>>,
    /// `entries[a*8+b]` lists `(pair index, coefficient)` contributing to entry `(a,b)`, `a<b`.
    entries: Vec<Vec<(usize, F)>>,
}

impl<F: Field> PluckerPencil<F> {
    pub fn new(v: &FourForm<F>) -> Self {
        let pairs = subsets(8, 2);
        let mut mats = vec![Matrix::<F>::zeros(8, 8); pairs.len()];
        let full = MultiIndex(full_mask(8));
        for (i, x) in v.terms() {
            for (ci, &c) in pairs.iter().enumerate() {
                if !i.is_disjoint(c) {
                    continue;
                }
                let ab = MultiIndex(full.0 & !(i.0 | c.0));
                let [a, b] = ab.indices()[..] else { unreachable!() };
                let s = F::from_i64(merge_sign(i, c) * merge_sign(i.union(c), ab));
                let m = &mut mats[ci];
                m[(a, b)] = m[(a, b)].clone() + s.clone() * x.clone();
                m[(b, a)] = m[(b, a)].clone() - s * x.clone();
            }
        }
        let mut entries = vec![Vec::new(); 64];
        for (ci, m) in mats.iter().enumerate() {
            for a in 0..8 {
                for b in a + 1..8 {
                    if !m[(a, b)].is_zero() {
                        entries[a * 8 + b].push((ci, m[(a, b)].clone()));
                    }
                }
            }
        }
        PluckerPencil { mats, entries }
    }

    /// Entry `(a,b)`, `a<b`, of `A(ω)` over any ring receiving the field.
    pub fn entry<R: Ring>(&self, a: usize, b: usize, omega: &[R], lift: &impl Fn(&F) -> R) -> R {
        self.entries[a * 8 + b].iter().fold(R::zero(), |acc, (c, x)| acc + lift(x) * omega[*c].clone())
    }

    /// The full matrix `A(ω)`.
    pub fn matrix(&self, omega: &[F]) -> Matrix<F> {
        self.mats.iter().zip(omega).fold(Matrix::zeros(8, 8), |acc, (m, w)| if w.is_zero() { acc } else { acc.add(&m.scale(w)) })
    }

    /// The principal submatrix of `A(ω)` on the index list `k` (length 6), over any ring.
    pub fn restricted<R: Ring>(&self, k: &[usize], omega: &[R], lift: &impl Fn(&F) -> R) -> Matrix<R> {
        let n = k.len();
        let mut m = Matrix::zeros(n, n);
        for x in 0..n {
            for y in x + 1..n {
                let val = self.entry(k[x], k[y], omega, lift);
                m[(x, y)] = val.clone();
                m[(y, x)] = -val;
            }
        }
        m
    }
}

/// `A(ω)` for the given four-form.
pub fn full_two_form<F: Field>(v: &FourForm<F>, omega: &[F]) -> Matrix<F> {
    PluckerPencil::new(v).matrix(omega)
}

fn pair_index(p: MultiIndex) -> usize {
    subsets(8, 2).iter().position(|&q| q == p).expect("a pair")
}

/// `sgn(P,K)·Pf(A(ω)_{KK})` with `K` the complement of the pair `P`. Equals the quadric value
/// whenever the Plücker coordinate `ω_P` is 1; the ring may carry jets or polynomials.
pub fn quadric_value_in_chart<F: Field, R: Ring>(pencil: &PluckerPencil<F>, pair: MultiIndex, omega: &[R], lift: &impl Fn(&F) -> R) -> R {
    let k = pair.complement(8);
    let a = pencil.restricted(&k.indices(), omega, lift);
    let pf = pfaffian(&a).expect("even size");
    if merge_sign(pair, k) == 1 {
        pf
    } else {
        -pf
    }
}

/// The Coble quadric at `ω = u∧w`: `sgn(P,K)·Pf(A(ω)_{KK})/ω_P` at the echelon pivot pair
/// `P` of `⟨u,w⟩`. It equals `ω_P²·Pf` of the induced form on `V₈/U₂` in echelon
/// coordinates and is homogeneous of degree 2 in `ω`.
pub fn quadric_value<F: Field>(pencil: &PluckerPencil<F>, u: &[F], w: &[F]) -> Result<F> {
    let span = Subspace::span(8, &[u.to_vec(), w.to_vec()]);
    if span.dim() != 2 {
        return Err(Error::Precondition("u∧w is zero".into()));
    }
    let pair = MultiIndex::from_slice(span.pivots())?;
    quadric_value_at_pair(pencil, u, w, pair)
}

/// The same value computed from any pair `P` with `ω_P ≠ 0`.
pub fn quadric_value_at_pair<F: Field>(pencil: &PluckerPencil<F>, u: &[F], w: &[F], pair: MultiIndex) -> Result<F> {
    let omega = plucker(u, w);
    let wp = omega[pair_index(pair)].clone();
    let inv = wp.inv().ok_or_else(|| Error::Precondition(format!("Plücker coordinate at {pair:?} vanishes")))?;
    Ok(quadric_value_in_chart(pencil, pair, &omega, &|x: &F| x.clone()) * inv)
}

/// Partial derivatives of the quadric in the chart at `U₂`: entry `(j, c)` is the derivative
/// along `r_j ↦ r_j + ε·e_{K[c]}` with `r_j` the echelon basis and `K` the non-pivot indices.
/// Read as a map `V₈/U₂ → U₂`, its kernel is the tangent datum of the quadric.
pub fn quadric_gradient<F: Field>(pencil: &PluckerPencil<F>, u2: &Subspace<F>) -> Result<Matrix<F>> {
    if u2.dim() != 2 || u2.ambient() != 8 {
        return Err(Error::Precondition("expected a 2-plane in V₈".into()));
    }
    let pair = MultiIndex::from_slice(u2.pivots())?;
    let comp = u2.complement_indices();
    let lift = |x: &F| Jet::constant(x.clone());
    let mut g = Matrix::zeros(2, 6);
    for j in 0..2 {
        for (c, &kc) in comp.iter().enumerate() {
            let mut rows: Vec<Vec<Jet<F>>> = u2.basis().iter().map(|r| r.iter().map(lift).collect()).collect();
            rows[j][kc] = Jet { v: rows[j][kc].v.clone(), d: F::one() };
            let omega = jet_plucker(&rows[0], &rows[1]);
            g[(j, c)] = quadric_value_in_chart(pencil, pair, &omega, &lift).d;
        }
    }
    Ok(g)
}

fn jet_plucker<R: Ring>(u: &[R], w: &[R]) -> Vec<R> {
    subsets(8, 2)
        .into_iter()
        .map(|p| {
            let ix = p.indices();
            u[ix[0]].clone() * w[ix[1]].clone() - u[ix[1]].clone() * w[ix[0]].clone()
        })
        .collect()
}

/// Whether all twelve chart partials of the quadric vanish at `U₂`.
pub fn singular_along_d<F: Field>(pencil: &PluckerPencil<F>, u2: &Subspace<F>) -> Result<bool> {
    Ok(quadric_gradient(pencil, u2)?.is_zero())
}

/// `U₄ = U₂ + ker(induced form)` at a rank-4 point; checked against the flag condition.
pub fn u4_witness_g28<F: Field>(v: &FourForm<F>, u2: &Subspace<F>) -> Result<Subspace<F>> {
    let a = induced_two_form(v, u2)?;
    let r = a.rank();
    if r != 4 {
        return Err(Error::Precondition(format!("induced form has rank {r}, expected 4")));
    }
    let mut vecs = u2.basis().to_vec();
    vecs.extend(a.kernel_basis().iter().map(|k| u2.lift(k)));
    let u4 = Subspace::from_basis(8, &vecs)?;
    let pattern: WedgePattern = patterns::QUADRIC_U4.parse()?;
    if !pattern.subspace(&Flag::new(vec![u2.clone(), u4.clone()])?)?.contains(&v.to_dense()) {
        return Err(Error::Inconclusive("U₄ witness fails its flag condition".into()));
    }
    Ok(u4)
}

/// Standard vectors completing a subspace basis, taken at its non-pivot coordinates.
fn complete_basis<F: Field>(sub: &Subspace<F>, extra: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut vecs: Vec<Vec<F>> = extra.to_vec();
    for c in sub.complement_indices() {
        let mut e = vec![F::zero(); sub.ambient()];
        e[c] = F::one();
        vecs.push(e);
    }
    vecs
}

/// `U₆ ⊃ U₄`: in a basis adapted to `U₂ ⊂ U₄ ⊂ V₈`, the part of `v` in `U₂ ⊗ ∧³(V₈/U₄)`
/// is a map `V₈/U₄ → U₂`; `U₆` is `U₄` plus its kernel. Checked against the flag condition.
pub fn u6_witness_g28<F: Field>(v: &FourForm<F>, u2: &Subspace<F>, u4: &Subspace<F>) -> Result<Subspace<F>> {
    if !u4.contains_subspace(u2) || u4.dim() != 4 {
        return Err(Error::Precondition("U₄ must be a 4-space containing U₂".into()));
    }
    let mut basis: Vec<Vec<F>> = u2.basis().to_vec();
    for w in u4.basis() {
        if basis.len() < 4 && Subspace::span(8, &basis).reduce(w).iter().any(|c| !c.is_zero()) {
            basis.push(w.clone());
        }
    }
    let basis = complete_basis(u4, &basis);
    let g = Matrix::from_fn(8, 8, |i, j| basis[j][i].clone());
    let ginv = g.inverse().ok_or_else(|| Error::Precondition("adapted basis is singular".into()))?;
    let w = gl_action(&ginv, v)?;
    let tail = MultiIndex(0xf0);
    let mut m = Matrix::<F>::zeros(2, 4);
    for (i, c) in w.terms() {
        let inside = MultiIndex(i.0 & tail.0);
        if inside.len() < 3 {
            continue;
        }
        let head = MultiIndex(i.0 & !tail.0);
        match head.indices()[..] {
            [h] if h < 2 => {
                let missing = MultiIndex(tail.0 & !inside.0);
                let col = missing.indices()[0] - 4;
                m[(h, col)] = m[(h, col)].clone() + F::from_i64(merge_sign(inside, missing)) * c.clone();
            }
            _ => return Err(Error::Precondition("four-form violates the U₄ condition".into())),
        }
    }
    let ker = m.kernel_basis();
    if ker.len() != 2 {
        return Err(Error::Inconclusive(format!("map V₈/U₄ → U₂ has rank {}", 4 - ker.len())));
    }
    let mut vecs = u4.basis().to_vec();
    for k in &ker {
        vecs.push((0..8).map(|r| (0..4).fold(F::zero(), |acc, j| acc + k[j].clone() * basis[4 + j][r].clone())).collect());
    }
    let u6 = Subspace::from_basis(8, &vecs)?;
    let pattern: WedgePattern = patterns::QUADRIC_U6.parse()?;
    if !pattern.subspace(&Flag::new(vec![u2.clone(), u4.clone(), u6.clone()])?)?.contains(&v.to_dense()) {
        return Err(Error::Inconclusive("U₆ witness fails its flag condition".into()));
    }
    Ok(u6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{AltTensor, Variance};
    use crate::field::{Fp, Q};
    use crate::theta::{cartan_basis, elementary, random_form, SampleMode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F101 = Fp<101>;

    fn coord<F: Field>(idx: &[usize]) -> Subspace<F> {
        Subspace::coordinate(8, &idx.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    fn rand_vec<F: Field>(rng: &mut ChaCha8Rng) -> Vec<F> {
        (0..8).map(|_| F::random(rng)).collect()
    }

    #[test]
    fn strata_of_the_first_generator() {
        let h1 = cartan_basis::<Q>()[0].clone();
        assert_eq!(rank_stratum_g28(&h1, &coord(&[1, 2])).unwrap(), G28Label::Moduli);
        assert_eq!(rank_stratum_g28(&h1, &coord(&[1, 5])).unwrap(), G28Label::Degenerate);
    }

    #[test]
    fn pencil_restricts_to_the_induced_form() {
        let v: FourForm<F101> = random_form(11, SampleMode::Uniform);
        let pencil = PluckerPencil::new(&v);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let (u, w) = (rand_vec::<F101>(&mut rng), rand_vec::<F101>(&mut rng));
            let span = Subspace::span(8, &[u.clone(), w.clone()]);
            let induced = induced_two_form(&v, &span).unwrap();
            let r = &span.basis();
            let a = pencil.matrix(&plucker(&r[0], &r[1]));
            let k = span.complement_indices();
            let pair = MultiIndex::from_slice(span.pivots()).unwrap();
            let s = F101::from_i64(merge_sign(pair, pair.complement(8)));
            assert_eq!(a.submatrix(&k, &k), induced.scale(&s));
            assert!(a.is_skew());
        }
    }

    #[test]
    fn quadric_value_matches_the_pfaffian_definition() {
        let v: FourForm<F101> = random_form(12, SampleMode::CartanConjugate);
        let pencil = PluckerPencil::new(&v);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let (u, w) = (rand_vec::<F101>(&mut rng), rand_vec::<F101>(&mut rng));
            let span = Subspace::span(8, &[u.clone(), w.clone()]);
            let value = quadric_value(&pencil, &u, &w).unwrap();
            let omega = plucker(&u, &w);
            let pair = MultiIndex::from_slice(span.pivots()).unwrap();
            let wp = omega[pair_index(pair)];
            let pf = pfaffian(&induced_two_form(&v, &span).unwrap()).unwrap();
            assert_eq!(value, wp * wp * pf);
            // Every other chart gives the same value.
            for (ci, p) in subsets(8, 2).into_iter().enumerate() {
                if !omega[ci].is_zero() {
                    assert_eq!(quadric_value_at_pair(&pencil, &u, &w, p).unwrap(), value, "pair {p:?}");
                }
            }
            let lam = F101::new(7);
            let scaled: Vec<F101> = u.iter().map(|x| *x * lam).collect();
            assert_eq!(quadric_value(&pencil, &scaled, &w).unwrap(), value * lam * lam);
        }
    }

    #[test]
    fn quadric_vanishes_at_rank_four() {
        // v = e1∧e2∧w + a∧b∧c∧d reduces to a rank-4 form modulo ⟨e1,e2⟩... take instead
        // v = e3456 + e3478 so that U₂ = ⟨e1,e2⟩ sees rank 4.
        let v = elementary::<Q>(&[3, 4, 5, 6], Variance::Vector).add(&elementary(&[3, 4, 7, 8], Variance::Vector));
        let u2 = coord::<Q>(&[1, 2]);
        assert_eq!(rank_stratum_g28(&v, &u2).unwrap(), G28Label::Quadric);
        let pencil = PluckerPencil::new(&v);
        let r = u2.basis();
        assert!(quadric_value(&pencil, &r[0], &r[1]).unwrap().is_zero());
        let u4 = u4_witness_g28(&v, &u2).unwrap();
        assert_eq!(u4, coord(&[1, 2, 3, 4]));
        assert!(quadric_value(&pencil, &vec![Q::zero(); 8], &r[1]).is_err());
    }

    #[test]
    fn u4_witness_recovers_a_constructed_flag() {
        // v = e1∧e2∧(e5∧e6 + e7∧e8) + e3∧e4∧e5∧e7 + e3∧e4∧e6∧e8: modulo U₂ only the last two
        // terms survive, both containing e3∧e4.
        let e = |i: &[usize]| elementary::<Q>(i, Variance::Vector);
        let v = e(&[1, 2, 5, 6]).add(&e(&[1, 2, 7, 8])).add(&e(&[3, 4, 5, 7])).add(&e(&[3, 4, 6, 8]));
        let u2 = coord::<Q>(&[1, 2]);
        let u4 = u4_witness_g28(&v, &u2).unwrap();
        assert!(u4.contains_subspace(&u2));
        assert_eq!(u4, coord(&[1, 2, 3, 4]));
        assert!(u4_witness_g28(&cartan_basis::<Q>()[0], &u2).is_err());
    }

    #[test]
    fn u6_witness_on_the_normal_form() {
        // e1∧e5∧e6∧e7 + e2∧e5∧e6∧e8 plus a part in ∧²U₄∧∧²V₈.
        let e = |i: &[usize]| elementary::<Q>(i, Variance::Vector);
        let v = e(&[1, 5, 6, 7]).add(&e(&[2, 5, 6, 8])).add(&e(&[3, 4, 5, 7])).add(&e(&[3, 4, 6, 8])).add(&e(&[1, 3, 7, 8]));
        let u2 = coord::<Q>(&[1, 2]);
        let u4 = u4_witness_g28(&v, &u2).unwrap();
        assert_eq!(u4, coord(&[1, 2, 3, 4]));
        let u6 = u6_witness_g28(&v, &u2, &u4).unwrap();
        assert_eq!(u6, coord(&[1, 2, 3, 4, 5, 6]));
    }

    #[test]
    fn gradient_vanishes_on_rank_two_points() {
        let h1 = cartan_basis::<Q>()[0].clone();
        let pencil = PluckerPencil::new(&h1);
        assert!(singular_along_d(&pencil, &coord(&[1, 2])).unwrap());
    }

    #[test]
    fn jet_gradient_matches_finite_differences() {
        let v: FourForm<F101> = random_form(13, SampleMode::Uniform);
        let pencil = PluckerPencil::new(&v);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u2 = Subspace::span(8, &[rand_vec::<F101>(&mut rng), rand_vec::<F101>(&mut rng)]);
        let g = quadric_gradient(&pencil, &u2).unwrap();
        let comp = u2.complement_indices();
        let r = u2.basis();
        // The quadric is a polynomial of degree ≤ 3 along each chart direction, so a
        // four-point difference quotient recovers the derivative exactly.
        for j in 0..2 {
            for (c, &kc) in comp.iter().enumerate() {
                let at = |s: i64| {
                    let mut rows = r.to_vec();
                    rows[j][kc] = rows[j][kc] + F101::from_i64(s);
                    quadric_value(&pencil, &rows[0], &rows[1]).unwrap()
                };
                let (f1, fm1, f2, fm2) = (at(1), at(-1), at(2), at(-2));
                let deriv = (F101::from_i64(8) * (f1 - fm1) - (f2 - fm2)) / F101::from_i64(12);
                assert_eq!(g[(j, c)], deriv);
            }
        }
        let _ = AltTensor::<F101>::zero(8, 4, Variance::Vector);
    }
}
