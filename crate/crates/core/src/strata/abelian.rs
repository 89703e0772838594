//! The flag side: for `U₁ ⊂ U₇` the three-form `v̄₃ = ℓ⌟(v mod U₁) ∈ ∧³(U₇/U₁)`, where
//! `U₇ = ker ℓ`. The abelian threefold is the locus where `v̄₃` is decomposable, and the
//! quartic invariant of `v̄₃` cuts out a hypersurface of bidegree (2,2) in Fl(1,7;8).

use serde::Serialize;

use crate::exterior::{interior, merge_sign, subsets, wedge, AltTensor, Flag, MultiIndex, Subspace, Variance, WedgePattern};
use crate::field::{FiniteField, Field};
use crate::linalg::Matrix;
use crate::theta::{gl_action, FourForm};
use crate::{Error, Result};

use super::patterns;

/// Outcome of the decomposability test for `v̄₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AcVerdict<F> {
    /// `v̄₃` is decomposable; its support lifts to `U₄` with `U₁ ⊂ U₄ ⊂ U₇`.
    Member(Subspace<F>),
    /// `v̄₃` is nonzero with a support of the given dimension (less than 3).
    NotMember { support_dim: usize },
    /// `v̄₃ = 0`.
    Degenerate,
}

/// A basis `f₁ = x, f₂…f₇` of `U₇`, `f₈ ∉ U₇`, as the columns of a matrix.
struct Adapted<F> {
    g: Matrix<F>,
}

fn adapted_basis<F: Field>(u1: &Subspace<F>, u7: &Subspace<F>) -> Result<Adapted<F>> {
    if u1.dim() != 1 || u7.dim() != 7 || u1.ambient() != 8 || u7.ambient() != 8 || !u7.contains_subspace(u1) {
        return Err(Error::Precondition("expected a flag U₁ ⊂ U₇ in V₈".into()));
    }
    let mut cols: Vec<Vec<F>> = u1.basis().to_vec();
    for w in u7.basis() {
        if !Subspace::span(8, &cols).contains(w) {
            cols.push(w.clone());
        }
    }
    let out = u7.complement_indices()[0];
    let mut f8 = vec![F::zero(); 8];
    f8[out] = F::one();
    cols.push(f8);
    Ok(Adapted { g: Matrix::from_fn(8, 8, |i, j| cols[j][i].clone()) })
}

/// Coefficients of `v̄₃` on the basis `f₂…f₇` of `U₇/U₁`, as a three-form in six variables.
fn phi_in_basis<F: Field>(v: &FourForm<F>, g: &Matrix<F>) -> Result<AltTensor<F>> {
    let ginv = g.inverse().ok_or_else(|| Error::Precondition("adapted basis is singular".into()))?;
    let w = gl_action(&ginv, v)?;
    let terms = w.terms().filter(|(i, _)| i.contains(7) && !i.contains(0)).map(|(i, c)| (MultiIndex((i.0 & 0x7e) >> 1), c.clone()));
    Ok(AltTensor::from_terms(6, 3, Variance::Vector, terms.collect::<Vec<_>>()))
}

/// `v̄₃` for the flag `U₁ ⊂ U₇`, in the coordinates of an adapted basis of `U₇/U₁`. Also
/// returns the six basis vectors (in `V₈`) those coordinates refer to.
pub fn v3_bar<F: Field>(v: &FourForm<F>, u1: &Subspace<F>, u7: &Subspace<F>) -> Result<(AltTensor<F>, Vec<Vec<F>>)> {
    let ad = adapted_basis(u1, u7)?;
    let phi = phi_in_basis(v, &ad.g)?;
    Ok((phi, (1..7).map(|j| ad.g.column(j)).collect()))
}

/// Kernel of `u ↦ u∧φ` for a three-form in six variables.
fn support_of<F: Field>(phi: &AltTensor<F>) -> Vec<Vec<F>> {
    let n = phi.dim();
    let cols: Vec<Vec<F>> = (0..n).map(|a| wedge(&AltTensor::basis(n, Variance::Vector, &[a]), phi).expect("degrees fit").to_dense()).collect();
    let m = Matrix::from_fn(cols[0].len(), n, |r, c| cols[c][r].clone());
    m.kernel_basis()
}

/// Whether `(U₁, U₇)` lies on the abelian threefold. On success the returned `U₄` satisfies
/// the flag condition, which is re-checked here.
pub fn ac_member<F: Field>(v: &FourForm<F>, u1: &Subspace<F>, u7: &Subspace<F>) -> Result<AcVerdict<F>> {
    let (phi, basis) = v3_bar(v, u1, u7)?;
    if phi.is_zero() {
        return Ok(AcVerdict::Degenerate);
    }
    let ker = support_of(&phi);
    if ker.len() != 3 {
        return Ok(AcVerdict::NotMember { support_dim: ker.len() });
    }
    let mut vecs = u1.basis().to_vec();
    for k in &ker {
        vecs.push((0..8).map(|r| (0..6).fold(F::zero(), |acc, j| acc + k[j].clone() * basis[j][r].clone())).collect());
    }
    let u4 = Subspace::from_basis(8, &vecs)?;
    let pattern: WedgePattern = patterns::ABELIAN.parse()?;
    let flag = Flag::new(vec![u1.clone(), u4.clone(), u7.clone()])?;
    if !pattern.subspace(&flag)?.contains(&v.to_dense()) {
        return Err(Error::Inconclusive("U₄ witness fails its flag condition".into()));
    }
    Ok(AcVerdict::Member(u4))
}

/// The quartic invariant `tr(K²)/6` of a three-form in six variables, with
/// `K(α) = (α⌟φ)∧φ ∈ ∧⁵ ≅ W^∨ ⊗ ∧⁶W`.
fn quartic_invariant<F: Field>(phi: &AltTensor<F>) -> F {
    let n = phi.dim();
    let full = MultiIndex((1 << n) - 1);
    let mut k = Matrix::<F>::zeros(n, n);
    for a in 0..n {
        let mut alpha = vec![F::zero(); n];
        alpha[a] = F::one();
        let psi = wedge(&interior(&alpha, phi).expect("degrees fit"), phi).expect("degrees fit");
        for (i, c) in psi.terms() {
            let b = MultiIndex(full.0 & !i.0);
            k[(b.indices()[0], a)] = F::from_i64(merge_sign(i, b)) * c.clone();
        }
    }
    let k2 = k.mul(&k);
    (0..n).fold(F::zero(), |acc, i| acc + k2[(i, i)].clone()) / F::from_i64(6)
}

/// The bidegree (2,2) form at the flag `(⟨x⟩, ker ℓ)`: the quartic invariant of `v̄₃` in an
/// adapted basis `f`, times `det(f)²·ℓ(f₈)²`, which makes it independent of the basis and
/// homogeneous of degree 2 in `x` and in `ℓ`.
pub fn bidegree22_value<F: Field>(v: &FourForm<F>, x: &[F], ell: &[F]) -> Result<F> {
    let u1 = Subspace::span(8, &[x.to_vec()]);
    let u7 = Subspace::span(8, &[ell.to_vec()]).annihilator();
    let ad = adapted_basis(&u1, &u7)?;
    // Rebuild the basis with f₁ = x exactly (span() normalizes) and ℓ as given.
    let mut g = ad.g;
    for (r, xr) in x.iter().enumerate() {
        g[(r, 0)] = xr.clone();
    }
    let phi = phi_in_basis(v, &g)?;
    if phi.is_zero() {
        return Err(Error::Precondition("v̄₃ vanishes at this flag".into()));
    }
    let ell_f8 = (0..8).fold(F::zero(), |acc, r| acc + ell[r].clone() * g[(r, 7)].clone());
    let det = g.det();
    Ok(quartic_invariant(&phi) * det.clone() * det * ell_f8.clone() * ell_f8)
}

/// The result of scanning all hyperplanes through a point for abelian-threefold flags.
#[derive(Clone, Debug, Serialize)]
pub struct FiberScan<F: Field> {
    /// Number of hyperplanes examined.
    pub candidates: u64,
    /// Hyperplanes where `v̄₃` vanished.
    pub degenerate: u64,
    /// Covectors `ℓ` (first nonzero entry 1) of the hyperplanes on the fiber.
    #[serde(skip)]
    pub hyperplanes: Vec<Vec<F>>,
    /// The `U₄` witness for each hyperplane.
    #[serde(skip)]
    pub u4s: Vec<Subspace<F>>,
}

/// Exhaustive scan of the hyperplanes `U₇ ⊃ ⟨x⟩` for decomposable `v̄₃`. Each hit is confirmed
/// with [`ac_member`]. Fails as inconclusive when the number of hyperplanes exceeds `budget`.
pub fn ac_fiber_over_kummer<F: FiniteField>(v: &FourForm<F>, x: &[F], budget: u64) -> Result<FiberScan<F>> {
    let q = F::ORDER;
    let total = (0..7).map(|e| q.pow(e)).sum::<u64>();
    if total > budget {
        return Err(Error::Inconclusive(format!("{total} hyperplanes exceed the scan budget {budget}")));
    }
    let u1 = Subspace::span(8, &[x.to_vec()]);
    if u1.dim() != 1 {
        return Err(Error::Precondition("x must be nonzero".into()));
    }
    // f₁ = x and f₂…f₈ standard vectors, so v mod U₁ reads off in coordinates 1..8 of the
    // transformed form and ℓ ranges over all of P⁶ in the dual coordinates f₂^∨…f₈^∨.
    let mut cols = vec![x.to_vec()];
    for c in u1.complement_indices() {
        let mut e = vec![F::zero(); 8];
        e[c] = F::one();
        cols.push(e);
    }
    let g = Matrix::from_fn(8, 8, |i, j| cols[j][i]);
    let ginv = g.inverse().expect("adapted basis");
    let w = gl_action(&ginv, v)?;
    let triples = subsets(7, 3);
    let quads = subsets(7, 4);
    let quad_pos = |m: MultiIndex| quads.iter().position(|&k| k == m).expect("a 4-set");
    let psi: Vec<F> = quads.iter().map(|&k| w.get(MultiIndex(k.0 << 1))).collect();
    // φ_J = Σ_m ℓ_m ε(m,J) ψ_{m∪J}.
    let phi_map: Vec<Vec<(usize, F)>> = triples
        .iter()
        .map(|&j| {
            (0..7)
                .filter(|&m| !j.contains(m))
                .filter_map(|m| {
                    let mi = MultiIndex(1 << m);
                    let c = F::from_i64(merge_sign(mi, j)) * psi[quad_pos(mi.union(j))];
                    (!c.is_zero()).then_some((m, c))
                })
                .collect()
        })
        .collect();
    // Row a of the wedge matrix: entry K = ε(a, K∖a)·φ_{K∖a}.
    let wedge_map: Vec<Vec<(usize, usize, F)>> = (0..7)
        .map(|a| {
            let ai = MultiIndex(1 << a);
            triples.iter().enumerate().filter(|(_, j)| !j.contains(a)).map(|(ji, &j)| (quad_pos(ai.union(j)), ji, F::from_i64(merge_sign(ai, j)))).collect()
        })
        .collect();

    let mut scan = FiberScan { candidates: 0, degenerate: 0, hyperplanes: Vec::new(), u4s: Vec::new() };
    let mut ell = [F::zero(); 7];
    let mut phi = [F::zero(); 35];
    for lead in 0..7 {
        let free = 6 - lead;
        for mut code in 0..q.pow(free as u32) {
            ell.iter_mut().for_each(|c| *c = F::zero());
            ell[lead] = F::one();
            for c in ell.iter_mut().skip(lead + 1) {
                *c = F::from_u64(code % q);
                code /= q;
            }
            scan.candidates += 1;
            let mut nonzero = false;
            for (p, terms) in phi.iter_mut().zip(&phi_map) {
                *p = terms.iter().fold(F::zero(), |acc, (m, c)| acc + ell[*m] * *c);
                nonzero |= !p.is_zero();
            }
            if !nonzero {
                scan.degenerate += 1;
                continue;
            }
            if wedge_rank_at_most_four(&phi, &wedge_map) {
                let mut ell_f = [F::zero(); 8];
                ell_f[1..].copy_from_slice(&ell);
                let ell_orig: Vec<F> = (0..8).map(|i| (0..8).fold(F::zero(), |acc, r| acc + ginv[(r, i)] * ell_f[r])).collect();
                let u7 = Subspace::span(8, std::slice::from_ref(&ell_orig)).annihilator();
                match ac_member(v, &u1, &u7)? {
                    AcVerdict::Member(u4) => {
                        scan.hyperplanes.push(Subspace::span(8, &[ell_orig]).basis()[0].clone());
                        scan.u4s.push(u4);
                    }
                    other => return Err(Error::Inconclusive(format!("fast scan and direct test disagree: {other:?}"))),
                }
            }
        }
    }
    Ok(scan)
}

/// Rank of the 7×35 matrix of `u ↦ u∧φ` is at most 4, by elimination with early exit.
fn wedge_rank_at_most_four<F: FiniteField>(phi: &[F; 35], wedge_map: &[Vec<(usize, usize, F)>]) -> bool {
    let mut basis: Vec<([F; 35], usize)> = Vec::with_capacity(5);
    for row_map in wedge_map {
        let mut row = [F::zero(); 35];
        for &(k, j, s) in row_map {
            row[k] = s * phi[j];
        }
        for (b, piv) in &basis {
            let c = row[*piv];
            if !c.is_zero() {
                for (r, bb) in row.iter_mut().zip(b) {
                    *r = *r - c * *bb;
                }
            }
        }
        if let Some(piv) = row.iter().position(|c| !c.is_zero()) {
            let inv = row[piv].inv().expect("nonzero");
            row.iter_mut().for_each(|c| *c = *c * inv);
            for (b, _) in basis.iter_mut() {
                let c = b[piv];
                if !c.is_zero() {
                    for (bb, r) in b.iter_mut().zip(&row) {
                        *bb = *bb - c * *r;
                    }
                }
            }
            basis.push((row, piv));
            if basis.len() > 4 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Ring, Q};
    use crate::theta::{elementary, random_form, SampleMode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F101 = Fp<101>;

    fn coord<F: Field>(idx: &[usize]) -> Subspace<F> {
        Subspace::coordinate(8, &idx.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    /// e₂∧e₃∧e₄∧e₈ + e₄∧e₅∧e₆∧e₇ + e₁∧e₅∧e₆∧e₈: at U₁ = ⟨e₁⟩, U₇ = ⟨e₁…e₇⟩ only the first
    /// term contributes to `v̄₃`.
    fn constructed<F: Field>() -> FourForm<F> {
        let e = |i: &[usize]| elementary::<F>(i, Variance::Vector);
        e(&[2, 3, 4, 8]).add(&e(&[4, 5, 6, 7])).add(&e(&[1, 5, 6, 8]))
    }

    #[test]
    fn constructed_member_recovers_its_u4() {
        let v = constructed::<Q>();
        let verdict = ac_member(&v, &coord(&[1]), &coord(&[1, 2, 3, 4, 5, 6, 7])).unwrap();
        assert_eq!(verdict, AcVerdict::Member(coord(&[1, 2, 3, 4])));
        let (phi, _) = v3_bar(&v, &coord(&[1]), &coord(&[1, 2, 3, 4, 5, 6, 7])).unwrap();
        assert_eq!(phi.nnz(), 1);
        assert_eq!(ac_member(&v, &coord(&[2]), &coord(&[1, 2, 4, 5, 6, 7, 8])).unwrap(), AcVerdict::Degenerate);
    }

    #[test]
    fn generic_flags_are_not_members() {
        let v: FourForm<F101> = random_form(21, SampleMode::CartanConjugate);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut members = 0;
        for _ in 0..20 {
            let x: Vec<F101> = (0..8).map(|_| F101::random(&mut rng)).collect();
            let u1 = Subspace::span(8, &[x]);
            let ell_space = u1.annihilator();
            let ell: Vec<F101> = ell_space.basis().iter().fold(vec![F101::zero(); 8], |acc, b| {
                let c = F101::random(&mut rng);
                acc.iter().zip(b).map(|(a, bb)| *a + c * *bb).collect()
            });
            let u7 = Subspace::span(8, &[ell]).annihilator();
            if u7.dim() != 7 {
                continue;
            }
            if matches!(ac_member(&v, &u1, &u7).unwrap(), AcVerdict::Member(_)) {
                members += 1;
            }
        }
        assert_eq!(members, 0);
    }

    #[test]
    fn quartic_invariant_vanishes_on_decomposables_only() {
        let e = |i: &[usize]| AltTensor::<Q>::basis(6, Variance::Vector, i);
        assert!(quartic_invariant(&e(&[0, 1, 2])).is_zero());
        // e₁₂₃ + e₄₅₆ has invariant ±1 up to the normalization, nonzero in any case.
        assert!(!quartic_invariant(&e(&[0, 1, 2]).add(&e(&[3, 4, 5]))).is_zero());
    }

    #[test]
    fn bidegree_form_is_basis_free_and_of_bidegree_two_two() {
        let v: FourForm<F101> = random_form(22, SampleMode::Uniform);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rv = |rng: &mut ChaCha8Rng| (0..8).map(|_| F101::random(rng)).collect::<Vec<_>>();
        // Random x and ℓ with ℓ(x) = 0: fix ℓ, project x into its kernel.
        let ell = rv(&mut rng);
        let ker = Subspace::span(8, std::slice::from_ref(&ell)).annihilator();
        let in_ker = |rng: &mut ChaCha8Rng| ker.basis().iter().fold(vec![F101::zero(); 8], |acc, b| {
            let c = F101::random(rng);
            acc.iter().zip(b).map(|(a, bb)| *a + c * *bb).collect::<Vec<_>>()
        });
        let x = in_ker(&mut rng);
        let d = in_ker(&mut rng);
        let val = bidegree22_value(&v, &x, &ell).unwrap();
        let lam = F101::new(3);
        let x3: Vec<F101> = x.iter().map(|c| *c * lam).collect();
        let ell3: Vec<F101> = ell.iter().map(|c| *c * lam).collect();
        assert_eq!(bidegree22_value(&v, &x3, &ell).unwrap(), val * lam * lam);
        assert_eq!(bidegree22_value(&v, &x, &ell3).unwrap(), val * lam * lam);
        // Along the line x + t·d inside ker ℓ the value is a quadratic polynomial in t.
        let at = |t: i64| {
            let xt: Vec<F101> = x.iter().zip(&d).map(|(a, b)| *a + F101::from_i64(t) * *b).collect();
            bidegree22_value(&v, &xt, &ell).unwrap()
        };
        let third = at(3) - F101::from_i64(3) * at(2) + F101::from_i64(3) * at(1) - at(0);
        assert!(third.is_zero());
        // Basis independence: a different adapted basis via a different f₈ and f₂…f₇.
        let u1 = Subspace::span(8, std::slice::from_ref(&x));
        let u7 = ker.clone();
        let (phi, basis) = v3_bar(&v, &u1, &u7).unwrap();
        let g = {
            let mut cols = vec![x.clone()];
            cols.extend(basis.iter().cloned());
            let f8: Vec<F101> = loop {
                let c = rv(&mut rng);
                if !ker.contains(&c) {
                    break c;
                }
            };
            cols.push(f8);
            Matrix::from_fn(8, 8, |i, j| cols[j][i])
        };
        let mut mix = loop {
            let m = Matrix::from_fn(8, 8, |_, _| F101::random(&mut rng));
            if m.rank() == 8 {
                break m;
            }
        };
        // Keep f₁ = x and f₈ fixed, and f₂…f₇ inside U₇ modulo x.
        for i in 0..8 {
            for j in 0..8 {
                if (j == 0 || j == 7 || i == 7) && i != j {
                    mix[(i, j)] = F101::zero();
                }
            }
        }
        mix[(0, 0)] = F101::one();
        mix[(7, 7)] = F101::one();
        if mix.rank() == 8 {
            let g2 = g.mul(&mix);
            let phi2 = phi_in_basis(&v, &g2).unwrap();
            let ell_f8 = |g: &Matrix<F101>| (0..8).fold(F101::zero(), |acc, r| acc + ell[r] * g[(r, 7)]);
            let f = |phi: &AltTensor<F101>, g: &Matrix<F101>| quartic_invariant(phi) * g.det() * g.det() * ell_f8(g) * ell_f8(g);
            assert_eq!(f(&phi2, &g2), f(&phi_in_basis(&v, &g).unwrap(), &g));
            assert_eq!(f(&phi_in_basis(&v, &g).unwrap(), &g), val);
            let _ = phi;
        }
    }

    #[test]
    fn fiber_scan_finds_the_constructed_hyperplane() {
        type F5 = Fp<5>;
        let v = constructed::<F5>();
        let mut x = vec![F5::zero(); 8];
        x[0] = F5::one();
        let scan = ac_fiber_over_kummer(&v, &x, 100_000).unwrap();
        assert_eq!(scan.candidates, (0..7).map(|e| 5u64.pow(e)).sum::<u64>());
        let mut target = vec![F5::zero(); 8];
        target[7] = F5::one();
        assert!(scan.hyperplanes.contains(&target));
        for (ell, u4) in scan.hyperplanes.iter().zip(&scan.u4s) {
            let u7 = Subspace::span(8, std::slice::from_ref(ell)).annihilator();
            assert!(u7.contains_subspace(u4));
            assert_eq!(ac_member(&v, &Subspace::span(8, &[x.clone()]), &u7).unwrap(), AcVerdict::Member(u4.clone()));
        }
        assert!(ac_fiber_over_kummer(&v, &x, 10).is_err());
    }
}
