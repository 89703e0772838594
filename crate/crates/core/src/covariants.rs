//! The Coble quadric as a symmetric form on `∧²V₈`: by interpolation from Pfaffian values,
//! by the cubic covariant chain, and the second (quintic) quadric through `D`.
//!
//! A quadric is a symmetric 28×28 matrix `S` on the Plücker coordinates, with value
//! `ωᵀ·S·ω`. Symmetric forms split as `S²(∧²V₈) = S₂₂V₈ ⊕ ∧⁴V₈`; the `∧⁴` summand consists
//! of the Plücker quadrics and vanishes on the Grassmannian.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::duality::dual_form;
use crate::exterior::{merge_sign, plucker, subsets, MultiIndex, Variance};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::strata::{quadric_value, PluckerPencil};
use crate::theta::FourForm;
use crate::{Error, Result};

/// Number of decomposable samples per interpolation batch.
pub const INTERPOLATION_SAMPLES: usize = 500;

const PAIRS: usize = 28;
const SYM: usize = 406;

/// Which summand of `S²(∧²V₈)` a quadric is known to lie in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Raw,
    S22,
}

/// A quadratic form on `∧²V₈` in the lexicographic Plücker basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricOnG<F: Field> {
    pub matrix: Matrix<F>,
    pub component: Component,
}

fn pairs() -> Vec<MultiIndex> {
    subsets(8, 2)
}

fn pair_table() -> [[usize; 8]; 8] {
    let mut t = [[usize::MAX; 8]; 8];
    for (k, p) in pairs().iter().enumerate() {
        let [a, b] = p.indices()[..] else { unreachable!() };
        t[a][b] = k;
        t[b][a] = k;
    }
    t
}

/// Sign and position of `e_a∧e_b` in the sorted basis.
fn signed_pair(t: &[[usize; 8]; 8], a: usize, b: usize) -> Option<(i64, usize)> {
    (a != b).then(|| (if a < b { 1 } else { -1 }, t[a][b]))
}

impl<F: Field> QuadricOnG<F> {
    pub fn raw(matrix: Matrix<F>) -> Result<Self> {
        if matrix.nrows() != PAIRS || !matrix.is_symmetric() {
            return Err(Error::Dimension("a quadric on ∧²V₈ is a symmetric 28×28 matrix".into()));
        }
        Ok(QuadricOnG { matrix, component: Component::Raw })
    }

    /// `ωᵀ·S·ω`.
    pub fn value(&self, omega: &[F]) -> F {
        let s_omega = self.matrix.mul_vec(omega);
        omega.iter().zip(&s_omega).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// The symmetric bilinear form `ωᵀ·S·η`.
    pub fn polar(&self, omega: &[F], eta: &[F]) -> F {
        let s_eta = self.matrix.mul_vec(eta);
        omega.iter().zip(&s_eta).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// The 406 upper-triangular entries, row by row.
    pub fn upper(&self) -> Vec<F> {
        (0..PAIRS).flat_map(|i| (i..PAIRS).map(move |j| (i, j))).map(|(i, j)| self.matrix[(i, j)].clone()).collect()
    }

    pub fn from_upper(entries: &[F], component: Component) -> Self {
        let mut m = Matrix::<F>::zeros(PAIRS, PAIRS);
        let mut k = 0;
        for i in 0..PAIRS {
            for j in i..PAIRS {
                m[(i, j)] = entries[k].clone();
                m[(j, i)] = entries[k].clone();
                k += 1;
            }
        }
        QuadricOnG { matrix: m, component }
    }

    /// The `∧⁴` part: `T_{abcd} = (S(ab,cd) − S(ac,bd) + S(ad,bc))/3`.
    pub fn wedge4_part(&self) -> FourForm<F> {
        let t = pair_table();
        let third = F::from_i64(3).inv().expect("characteristic is not 3");
        let s = |a: usize, b: usize, c: usize, d: usize| self.matrix[(t[a][b], t[c][d])].clone();
        FourForm::from_terms(
            8,
            4,
            Variance::Covector,
            subsets(8, 4).into_iter().map(|i| {
                let [a, b, c, d] = i.indices()[..] else { unreachable!() };
                (i, (s(a, b, c, d) - s(a, c, b, d) + s(a, d, b, c)) * third.clone())
            }),
        )
    }

    /// `S₂₂` and `∧⁴` parts; they sum to `self`.
    pub fn split(&self) -> (QuadricOnG<F>, QuadricOnG<F>) {
        let w = embed_wedge4(&self.wedge4_part());
        let s22 = QuadricOnG { matrix: self.matrix.add(&w.matrix.scale(&-F::one())), component: Component::S22 };
        (s22, w)
    }

    pub fn s22(&self) -> QuadricOnG<F> {
        match self.component {
            Component::S22 => self.clone(),
            Component::Raw => self.split().0,
        }
    }

    /// The quadric `ω ↦ q(g⁻¹·ω)`, i.e. its image under `∧²g`.
    pub fn transform(&self, g: &Matrix<F>) -> Result<QuadricOnG<F>> {
        let inv = wedge2_matrix(&g.inverse().ok_or_else(|| Error::Precondition("g is singular".into()))?);
        Ok(QuadricOnG { matrix: inv.transpose().mul(&self.matrix).mul(&inv), component: self.component })
    }

    /// `Some(c)` with `self = c·other`, when such a scalar exists.
    pub fn ratio_to(&self, other: &QuadricOnG<F>) -> Option<F> {
        let (a, b) = (self.upper(), other.upper());
        let k = b.iter().position(|x| !x.is_zero())?;
        let c = a[k].clone() / b[k].clone();
        a.iter().zip(&b).all(|(x, y)| *x == c.clone() * y.clone()).then_some(c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let labels: Vec<String> = pairs().iter().map(|p| p.indices().iter().map(|i| (i + 1).to_string()).collect()).collect();
        let rows: Vec<serde_json::Value> = (0..PAIRS).map(|i| serde_json::Value::Array(self.matrix.row(i).iter().map(Field::to_json).collect())).collect();
        serde_json::json!({ "component": self.component, "labels": labels, "matrix": rows })
    }
}

/// The Plücker-type quadric `ω ↦ ⟨T, ω∧ω⟩` of a four-form `T`.
pub fn embed_wedge4<F: Field>(t: &FourForm<F>) -> QuadricOnG<F> {
    let ps = pairs();
    let m = Matrix::from_fn(PAIRS, PAIRS, |i, j| {
        if ps[i].is_disjoint(ps[j]) {
            F::from_i64(merge_sign(ps[i], ps[j])) * t.get(ps[i].union(ps[j]))
        } else {
            F::zero()
        }
    });
    QuadricOnG { matrix: m, component: Component::Raw }
}

/// `∧²g` on the Plücker basis: column `(cd)` holds the coordinates of `g·e_c ∧ g·e_d`.
pub fn wedge2_matrix<F: Field>(g: &Matrix<F>) -> Matrix<F> {
    let ps = pairs();
    Matrix::from_fn(PAIRS, PAIRS, |i, j| {
        let ([a, b], [c, d]) = (ps[i].indices()[..].try_into().unwrap(), ps[j].indices()[..].try_into().unwrap());
        g[(a, c)].clone() * g[(b, d)].clone() - g[(a, d)].clone() * g[(b, c)].clone()
    })
}

fn monomials<F: Field>(omega: &[F]) -> Vec<F> {
    (0..PAIRS).flat_map(|i| (i..PAIRS).map(move |j| (i, j))).map(|(i, j)| omega[i].clone() * omega[j].clone()).collect()
}

/// The Coble quadric of `v` interpolated from its values on random decomposables, projected
/// to `S₂₂`. Each batch must determine the quadric up to the 70 Plücker quadrics; one further
/// batch is drawn if the first is rank deficient.
pub fn quadric_equation<F: Field>(v: &FourForm<F>, seed: u64) -> Result<QuadricOnG<F>> {
    let pencil = PluckerPencil::new(v);
    for attempt in 0..2u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut rows = Vec::with_capacity(INTERPOLATION_SAMPLES);
        let mut rhs = Vec::with_capacity(INTERPOLATION_SAMPLES);
        while rows.len() < INTERPOLATION_SAMPLES {
            let u: Vec<F> = (0..8).map(|_| F::random(&mut rng)).collect();
            let w: Vec<F> = (0..8).map(|_| F::random(&mut rng)).collect();
            let omega = plucker(&u, &w);
            if omega.iter().all(F::is_zero) {
                continue;
            }
            let mut row = monomials(&omega);
            for (k, (i, j)) in (0..PAIRS).flat_map(|i| (i..PAIRS).map(move |j| (i, j))).enumerate() {
                if i != j {
                    row[k] = row[k].clone() + row[k].clone();
                }
            }
            rhs.push(quadric_value(&pencil, &u, &w)?);
            rows.push(row);
        }
        let system = Matrix::from_rows(rows);
        if system.rank() < SYM - 70 {
            continue;
        }
        let sol = system.solve(&rhs).ok_or_else(|| Error::Inconclusive("interpolation system is inconsistent".into()))?;
        return Ok(QuadricOnG::from_upper(&sol, Component::Raw).s22());
    }
    Err(Error::Inconclusive("interpolation samples are rank deficient".into()))
}

/// `M(A,B) = ε(A,B)·v_{A∪B}`: the image of `v` in `∧²V₈ ⊗ ∧²V₈` (symmetric).
pub fn split_matrix<F: Field>(v: &FourForm<F>) -> Matrix<F> {
    let ps = pairs();
    Matrix::from_fn(PAIRS, PAIRS, |i, j| if ps[i].is_disjoint(ps[j]) { F::from_i64(merge_sign(ps[i], ps[j])) * v.get(ps[i].union(ps[j])) } else { F::zero() })
}

/// `N(B,C)` = coefficient of the volume form in `e_B ∧ v ∧ e_C`: the map
/// `∧²V₈ → ∧⁶V₈ ≅ ∧²V₈^∨ ⊗ det`, `e_B ↦ e_B∧v`.
pub fn pairing_matrix<F: Field>(v: &FourForm<F>) -> Matrix<F> {
    let ps = pairs();
    let full = MultiIndex((1 << 8) - 1);
    Matrix::from_fn(PAIRS, PAIRS, |i, j| {
        let (b, c) = (ps[i], ps[j]);
        if !b.is_disjoint(c) {
            return F::zero();
        }
        let rest = MultiIndex(full.0 & !(b.0 | c.0));
        // e_B ∧ e_I ∧ e_C with I the remaining four indices.
        let s = merge_sign(b, rest) * merge_sign(b.union(rest), c);
        F::from_i64(s) * v.get(rest)
    })
}

/// The cubic chain for a form `w`, valued in `S²(∧²)` of its own space:
/// split each copy of `w` as `α⊗β`, wedge the three `β` to `∧⁶ ≅ ∧²^∨⊗det`, contract with one
/// `α` and symmetrize. In matrices this is `M·N·M`.
fn cubic_chain_raw<F: Field>(w: &FourForm<F>) -> Matrix<F> {
    let m = split_matrix(w);
    m.mul(&pairing_matrix(w)).mul(&m)
}

/// The cubic covariant chain, read on `∧²V₈`: the chain lands in `S²` of the space carrying
/// the form, so it is applied to `v^∨` on `V₈^∨`. Projected to `S₂₂`.
pub fn cubic_covariant_chain<F: Field>(v: &FourForm<F>) -> QuadricOnG<F> {
    QuadricOnG { matrix: cubic_chain_raw(&dual_form(v)), component: Component::Raw }.s22()
}

/// `D(x)` on `∧²`: the derivation action of `x ∈ gl₈`, with `x·e_i = Σ_j x_{ji} e_j`.
fn derivation_matrix<F: Field>(x: &Matrix<F>) -> Matrix<F> {
    let (ps, t) = (pairs(), pair_table());
    let mut d = Matrix::<F>::zeros(PAIRS, PAIRS);
    for (col, p) in ps.iter().enumerate() {
        let [a, b] = p.indices()[..] else { unreachable!() };
        for j in 0..8 {
            if let Some((s, row)) = signed_pair(&t, j, b) {
                d[(row, col)] = d[(row, col)].clone() + F::from_i64(s) * x[(j, a)].clone();
            }
            if let Some((s, row)) = signed_pair(&t, a, j) {
                d[(row, col)] = d[(row, col)].clone() + F::from_i64(s) * x[(j, b)].clone();
            }
        }
    }
    d
}

/// Partial trace `End(∧²V₈) → gl₈`: `t(E)_{ij} = Σ_k E(e_i∧e_k, e_j∧e_k)`.
fn partial_trace<F: Field>(e: &Matrix<F>) -> Matrix<F> {
    let t = pair_table();
    Matrix::from_fn(8, 8, |i, j| {
        (0..8).fold(F::zero(), |acc, k| match (signed_pair(&t, i, k), signed_pair(&t, j, k)) {
            (Some((s1, r)), Some((s2, c))) => acc + F::from_i64(s1 * s2) * e[(r, c)].clone(),
            _ => acc,
        })
    })
}

/// The `S₂₂₁₁₁₁` component of `E ∈ End(∧²V₈) = ∧²V₈ ⊗ ∧⁶V₈ ⊗ det^{-1}`: `E − D(x)` with `x`
/// chosen so that the partial trace vanishes, which removes the `gl₈` part.
pub fn s221111_part<F: Field>(e: &Matrix<F>) -> Result<Matrix<F>> {
    let basis: Vec<Matrix<F>> = (0..64).map(|k| Matrix::from_fn(8, 8, |i, j| if i * 8 + j == k { F::one() } else { F::zero() })).collect();
    let flat = |m: &Matrix<F>| -> Vec<F> { (0..64).map(|k| m[(k / 8, k % 8)].clone()).collect() };
    let cols: Vec<Vec<F>> = basis.iter().map(|x| flat(&partial_trace(&derivation_matrix(x)))).collect();
    let system = Matrix::from_fn(64, 64, |r, c| cols[c][r].clone());
    let sol = system.solve(&flat(&partial_trace(e))).ok_or_else(|| Error::Precondition("partial trace is not invertible in this characteristic".into()))?;
    let x = Matrix::from_fn(8, 8, |i, j| sol[i * 8 + j].clone());
    Ok(e.add(&derivation_matrix(&x).scale(&-F::one())))
}

/// The quintic covariant: the degree-2 map `w⊗w ↦ E = (M·N)` in `∧²⊗∧⁶`, its `S₂₂₁₁₁₁` part
/// `E'`, squared into `S²(∧²) ⊗ S²(∧²^∨)`, with the `∧⁴^∨` slot contracted against `w`:
/// `E'·M·E'ᵀ`. As for the cubic chain it is applied to `v^∨`. Projected to `S₂₂`.
pub fn quintic_covariant<F: Field>(v: &FourForm<F>) -> Result<QuadricOnG<F>> {
    let w = dual_form(v);
    let m = split_matrix(&w);
    let e = s221111_part(&m.mul(&pairing_matrix(&w)))?;
    Ok(QuadricOnG { matrix: e.mul(&m).mul(&e.transpose()), component: Component::Raw }.s22())
}
