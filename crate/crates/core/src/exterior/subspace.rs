//! Linear subspaces in canonical echelon form, and flags of them.

use crate::field::{Field, Ring};
use crate::linalg::Matrix;
use crate::{Error, Result};

/// A subspace of `F^n`, held as the reduced row echelon basis. Two subspaces are equal iff
/// their echelon bases are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F> {
    n: usize,
    rref: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// The span of arbitrary (possibly dependent) vectors.
    pub fn span(n: usize, vectors: &[Vec<F>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(n);
        }
        assert!(vectors.iter().all(|v| v.len() == n), "vectors of the wrong length");
        let m = Matrix::from_fn(vectors.len(), n, |i, j| vectors[i][j].clone());
        let e = m.echelon();
        Subspace { n, rref: e.rref.rows_vec(), pivots: e.pivots }
    }

    /// The span of vectors that must be linearly independent.
    pub fn from_basis(n: usize, vectors: &[Vec<F>]) -> Result<Self> {
        let s = Self::span(n, vectors);
        if s.dim() != vectors.len() {
            return Err(Error::Precondition(format!("{} vectors span only {} dimensions", vectors.len(), s.dim())));
        }
        Ok(s)
    }

    pub fn zero(n: usize) -> Self {
        Subspace { n, rref: Vec::new(), pivots: Vec::new() }
    }

    pub fn whole(n: usize) -> Self {
        Self::coordinate(n, &(0..n).collect::<Vec<_>>())
    }

    /// The span of the standard basis vectors with the given 0-based indices.
    pub fn coordinate(n: usize, idx: &[usize]) -> Self {
        let vecs: Vec<Vec<F>> = idx
            .iter()
            .map(|&i| {
                let mut v = vec![F::zero(); n];
                v[i] = F::one();
                v
            })
            .collect();
        Self::span(n, &vecs)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rref.len()
    }

    /// Echelon basis rows: each has a 1 at its pivot and 0 at the other pivots.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.rref
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot coordinates; their standard vectors span the canonical complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.n).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Coordinates of `v` reduced modulo the subspace (entries at pivots become zero).
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (row, &p) in self.rref.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if !c.is_zero() {
                for (wj, rj) in w.iter_mut().zip(row) {
                    *wj = wj.clone() - c.clone() * rj.clone();
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(Ring::is_zero)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.rref.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut vecs = self.rref.clone();
        vecs.extend(other.rref.iter().cloned());
        Self::span(self.n, &vecs)
    }

    /// The annihilator `U^⊥ ⊂ (F^n)^∨`, in dual coordinates.
    pub fn annihilator(&self) -> Self {
        if self.dim() == 0 {
            return Self::whole(self.n);
        }
        let m = Matrix::from_rows(self.rref.clone());
        Self::span(self.n, &m.kernel_basis())
    }

    /// Matrix of the projection `F^n → F^n/U` in complement coordinates: row `i` is the image
    /// of the `i`-th standard vector.
    pub fn quotient_projection(&self) -> Matrix<F> {
        let comp = self.complement_indices();
        let mut proj = Matrix::zeros(self.n, comp.len());
        for (c, &i) in comp.iter().enumerate() {
            proj[(i, c)] = F::one();
        }
        for (row, &p) in self.rref.iter().zip(&self.pivots) {
            for (c, &i) in comp.iter().enumerate() {
                proj[(p, c)] = -row[i].clone();
            }
        }
        proj
    }

    /// Lifts a vector given in complement coordinates back to `F^n`.
    pub fn lift(&self, w: &[F]) -> Vec<F> {
        let comp = self.complement_indices();
        assert_eq!(w.len(), comp.len(), "complement vector has the wrong length");
        let mut v = vec![F::zero(); self.n];
        for (c, &i) in comp.iter().enumerate() {
            v[i] = w[c].clone();
        }
        v
    }

    /// All points of the projectivization over a finite field, each as a normalized vector
    /// (first nonzero coordinate in the basis expansion equal to 1).
    pub fn projective_points(&self) -> Vec<Vec<F>>
    where
        F: crate::field::FiniteField,
    {
        let d = self.dim();
        let q = F::ORDER;
        let mut out = Vec::new();
        for lead in 0..d {
            let free = d - lead - 1;
            let total = q.pow(free as u32);
            for mut code in 0..total {
                let mut coeffs = vec![F::zero(); d];
                coeffs[lead] = F::one();
                for c in coeffs.iter_mut().skip(lead + 1) {
                    *c = F::from_u64(code % q);
                    code /= q;
                }
                let mut v = vec![F::zero(); self.n];
                for (c, row) in coeffs.iter().zip(&self.rref) {
                    if c.is_zero() {
                        continue;
                    }
                    for (vj, rj) in v.iter_mut().zip(row) {
                        *vj = *vj + *c * *rj;
                    }
                }
                out.push(v);
            }
        }
        out
    }

    /// Echelon basis as nested JSON lists.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.rref.iter().map(|r| serde_json::Value::Array(r.iter().map(Field::to_json).collect())).collect())
    }
}

/// A strictly increasing chain of subspaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Flag<F> {
    members: Vec<Subspace<F>>,
}

impl<F: Field> Flag<F> {
    pub fn new(members: Vec<Subspace<F>>) -> Result<Self> {
        for w in members.windows(2) {
            if w[0].ambient() != w[1].ambient() || w[0].dim() >= w[1].dim() || !w[1].contains_subspace(&w[0]) {
                return Err(Error::Precondition("flag members are not strictly nested".into()));
            }
        }
        Ok(Flag { members })
    }

    pub fn members(&self) -> &[Subspace<F>] {
        &self.members
    }

    pub fn ambient(&self) -> usize {
        self.members.first().map_or(0, Subspace::ambient)
    }

    /// The member of the given dimension.
    pub fn of_dim(&self, d: usize) -> Option<&Subspace<F>> {
        self.members.iter().find(|s| s.dim() == d)
    }

    /// The coordinate flag `⟨e₁..e_{d₁}⟩ ⊂ ⟨e₁..e_{d₂}⟩ ⊂ …`.
    pub fn standard(n: usize, dims: &[usize]) -> Self {
        Flag::new(dims.iter().map(|&d| Subspace::coordinate(n, &(0..d).collect::<Vec<_>>())).collect()).expect("increasing dimensions")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Q};

    type F5 = Fp<5>;

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| Q::from_i64(a)).collect()
    }

    #[test]
    fn canonical_form_identifies_equal_spans() {
        let a = Subspace::span(4, &[v(&[1, 2, 0, 1]), v(&[0, 1, 1, 0])]);
        let b = Subspace::span(4, &[v(&[1, 3, 1, 1]), v(&[2, 4, 0, 2])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[1, 1, -1, 1])));
        assert!(!a.contains(&v(&[0, 0, 0, 1])));
        assert!(Subspace::from_basis(4, &[v(&[1, 0, 0, 0]), v(&[2, 0, 0, 0])]).is_err());
    }

    #[test]
    fn annihilator_and_projection() {
        let a = Subspace::span(4, &[v(&[1, 2, 0, 1]), v(&[0, 1, 1, 0])]);
        let ann = a.annihilator();
        assert_eq!(ann.dim(), 2);
        for f in ann.basis() {
            for u in a.basis() {
                let pairing = f.iter().zip(u).fold(Q::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
                assert!(pairing.is_zero());
            }
        }
        assert_eq!(ann.annihilator(), a);
        let proj = a.quotient_projection();
        for u in a.basis() {
            let img: Vec<Q> = (0..proj.ncols()).map(|c| (0..4).fold(Q::zero(), |acc, i| acc + u[i].clone() * proj[(i, c)].clone())).collect();
            assert!(img.iter().all(Ring::is_zero));
        }
    }

    #[test]
    fn projective_point_count() {
        let s = Subspace::<F5>::coordinate(6, &[0, 2, 3]);
        let pts = s.projective_points();
        assert_eq!(pts.len(), 31);
        assert!(pts.iter().all(|p| s.contains(p)));
    }

    #[test]
    fn flags_require_nesting() {
        let a = Subspace::<Q>::coordinate(4, &[0]);
        let b = Subspace::coordinate(4, &[1, 2]);
        assert!(Flag::new(vec![a.clone(), b]).is_err());
        let c = Subspace::coordinate(4, &[0, 2]);
        assert!(Flag::new(vec![a, c]).is_ok());
        assert_eq!(Flag::<Q>::standard(8, &[1, 4, 7]).of_dim(4).unwrap().dim(), 4);
    }
}
