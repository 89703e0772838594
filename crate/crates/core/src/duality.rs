//! Pointwise self-duality: tangent hyperplanes of the Coble quartic and their images in the
//! quartic of `v^∨`, and Grassmannian duals of smooth points of the Coble quadric, each with
//! its biduality round trip.

use rand::Rng;

use crate::exterior::{merge_sign, Flag, MultiIndex, Subspace, Variance, WedgePattern};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::strata::{patterns, quadric_gradient, rank_stratum_g28, u4_witness_g28, u6_witness_g28, G28Label, PluckerPencil, QuarticEvaluator};
use crate::theta::{dualize, gl_action, FourForm};
use crate::{Error, Result};

/// `v^∨` read as a vector-type form on the dual space, so that every construction for `v`
/// applies to it verbatim.
pub fn dual_form<F: Field>(v: &FourForm<F>) -> FourForm<F> {
    dualize(v).relabel_variance(Variance::Vector)
}

/// How the linear form is recovered from the cubic `g(d) = c·ℓ(d)³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubeStrategy {
    /// Unique cube roots of `g(e_j)/g(e_i)` where the field provides them, planes otherwise.
    Auto,
    /// Triple roots of `g` restricted to the planes `⟨e_i, e_j⟩`.
    Planes,
}

fn unit<F: Field>(i: usize) -> Vec<F> {
    let mut e = vec![F::zero(); 8];
    e[i] = F::one();
    e
}

/// `g(d)`: the coefficient of `t³` in `μ(x + t·d)`.
fn tangent_cubic<F: Field>(eval: &QuarticEvaluator<F>, x: &[F], d: &[F]) -> Result<F> {
    Ok(eval.mu_on_line(x, d)?.coeff(3))
}

/// The triple root of a cubic through four sample values at `s = 0, 1, 2, 3`.
fn triple_root<F: Field>(values: &[F; 4]) -> Result<Option<F>> {
    let vander = Matrix::from_fn(4, 4, |r, c| F::from_i64(r as i64).pow(c as u64));
    let coeffs = vander.solve(values).ok_or_else(|| Error::Precondition("characteristic too small for interpolation".into()))?;
    let (b, a) = (coeffs[2].clone(), coeffs[3].clone());
    if a.is_zero() {
        return Ok(None);
    }
    Ok(Some(-b / (F::from_i64(3) * a)))
}

/// The tangent hyperplane of the quartic at a smooth point `x`, as a covector `ℓ` with first
/// nonzero entry 1. The cubic `g` is checked to be a cube of `ℓ` on two random directions.
pub fn tangent_hyperplane_quartic<F: Field, R: Rng + ?Sized>(eval: &QuarticEvaluator<F>, x: &[F], strategy: CubeStrategy, rng: &mut R) -> Result<Vec<F>> {
    if !eval.is_member(x) {
        return Err(Error::Precondition("x is not on the quartic".into()));
    }
    let g: Vec<F> = (0..8).map(|i| tangent_cubic(eval, x, &unit(i))).collect::<Result<_>>()?;
    let i0 = g.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::Inconclusive("the tangent cubic vanishes: x is not a smooth point".into()))?;
    let mut ell = vec![F::zero(); 8];
    ell[i0] = F::one();
    for j in 0..8 {
        if j == i0 || g[j].is_zero() {
            continue;
        }
        let by_root = match strategy {
            CubeStrategy::Auto => (g[j].clone() / g[i0].clone()).cube_root().filter(|r| r.pow(3) * g[i0].clone() == g[j]),
            CubeStrategy::Planes => None,
        };
        ell[j] = match by_root {
            Some(r) => r,
            None => {
                let mut vals: [F; 4] = std::array::from_fn(|_| F::zero());
                for (s, val) in vals.iter_mut().enumerate() {
                    let mut d = unit::<F>(i0);
                    d[j] = F::from_i64(s as i64);
                    *val = tangent_cubic(eval, x, &d)?;
                }
                match triple_root(&vals)? {
                    Some(r) if !r.is_zero() => -r.inv().expect("nonzero"),
                    _ => return Err(Error::Inconclusive("restricted tangent cubic has no triple root".into())),
                }
            }
        };
    }
    let pair = |d: &[F]| d.iter().zip(&ell).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
    for _ in 0..2 {
        let d: Vec<F> = (0..8).map(|_| F::random(rng)).collect();
        if tangent_cubic(eval, x, &d)? != g[i0].clone() * pair(&d).pow(3) {
            return Err(Error::Inconclusive("the tangent cubic is not a cube of a linear form".into()));
        }
    }
    if !pair(x).is_zero() {
        return Err(Error::Inconclusive("tangent hyperplane misses its point".into()));
    }
    Ok(ell)
}

/// The flag `U₁ ⊂ U₄ ⊂ U₇` at a smooth quartic point: `U₄ = ker q(x)`, checked against
/// `v ∈ ∧²U₄∧∧²V + ∧³V∧U₁`, and `U₇ ⊃ U₄` the hyperplane defined by the class of `v` in
/// `U₁ ⊗ ∧³(V/U₄)`. The result satisfies `v ∈ ∧²U₄∧∧²V + ∧³U₇∧U₁`, which is re-checked.
pub fn quartic_flag<F: Field>(v: &FourForm<F>, eval: &QuarticEvaluator<F>, x: &[F]) -> Result<Flag<F>> {
    let ker = eval.q(x).kernel_basis();
    if ker.len() != 4 {
        return Err(Error::Inconclusive(format!("q has a kernel of dimension {}, expected 4", ker.len())));
    }
    let u1 = Subspace::span(8, &[x.to_vec()]);
    let u4 = Subspace::from_basis(8, &ker)?;
    let cond: WedgePattern = "U4^2 V^2 + V^3 U1".parse()?;
    if !cond.subspace(&Flag::new(vec![u1.clone(), u4.clone()])?)?.contains(&v.to_dense()) {
        return Err(Error::Inconclusive("ker q fails the U₄ flag condition".into()));
    }
    // Basis f₁ = x, f₂…f₄ completing U₄, f₅…f₈ standard vectors off U₄.
    let mut cols = vec![x.to_vec()];
    for w in u4.basis() {
        if !Subspace::span(8, &cols).contains(w) {
            cols.push(w.clone());
        }
    }
    for c in u4.complement_indices() {
        cols.push(unit(c));
    }
    let g = Matrix::from_fn(8, 8, |i, j| cols[j][i].clone());
    let w = gl_action(&g.inverse().expect("adapted basis"), v)?;
    // The class of v: Σ c_J f₁∧f_J over 3-subsets J of {5..8}, read as the covector
    // m ↦ ε(J, m)·c_J on V/U₄ with J the complement of m.
    let tail = MultiIndex(0xf0);
    let mut covector = vec![F::zero(); 4];
    for (i, c) in w.terms() {
        let inside = MultiIndex(i.0 & tail.0);
        if inside.len() == 3 && i.contains(0) {
            let m = MultiIndex(tail.0 & !inside.0);
            covector[m.indices()[0] - 4] = F::from_i64(merge_sign(inside, m)) * c.clone();
        }
    }
    if covector.iter().all(F::is_zero) {
        return Err(Error::Inconclusive("the class of v in U₁ ⊗ ∧³(V/U₄) vanishes".into()));
    }
    let hyper = Matrix::from_rows(vec![covector]).kernel_basis();
    let mut vecs = u4.basis().to_vec();
    for k in &hyper {
        vecs.push((0..8).map(|r| (0..4).fold(F::zero(), |acc, j| acc + k[j].clone() * cols[4 + j][r].clone())).collect());
    }
    let u7 = Subspace::from_basis(8, &vecs)?;
    let flag = Flag::new(vec![u1, u4, u7])?;
    let key: WedgePattern = patterns::QUARTIC_TANGENT.parse()?;
    if !key.subspace(&flag)?.contains(&v.to_dense()) {
        return Err(Error::Inconclusive("the U₇ witness fails its flag condition".into()));
    }
    Ok(flag)
}

/// The outcome of the quartic duality check at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticDual<F> {
    pub x: Vec<F>,
    /// Tangent covector from the cube structure of `μ`.
    pub ell: Vec<F>,
    /// `U₁ ⊂ U₄ ⊂ U₇` from the kernel of `q`.
    pub flag: Flag<F>,
    /// Both constructions give the same hyperplane.
    pub hyperplanes_agree: bool,
    /// `[U₇^⊥]` lies on the quartic of `v^∨`.
    pub dual_member: bool,
    /// The tangent hyperplane of the dual quartic at `[U₇^⊥]` is `x^⊥`.
    pub biduality: bool,
}

impl<F: Field> QuarticDual<F> {
    pub fn passed(&self) -> bool {
        self.hyperplanes_agree && self.dual_member && self.biduality
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vec = |x: &[F]| serde_json::Value::Array(x.iter().map(Field::to_json).collect());
        serde_json::json!({
            "x": vec(&self.x),
            "ell": vec(&self.ell),
            "U4": self.flag.members()[1].to_json(),
            "U7": self.flag.members()[2].to_json(),
            "hyperplanes_agree": self.hyperplanes_agree,
            "dual_member": self.dual_member,
            "biduality": self.biduality,
        })
    }
}

/// Quartic self-duality at `x`: the tangent hyperplane from `μ`, the flag from `q`, membership
/// of the dual point in the quartic of `dual` (normally [`dual_form`] of `v`), and biduality.
pub fn quartic_dual_point<F: Field, R: Rng + ?Sized>(
    v: &FourForm<F>,
    eval: &QuarticEvaluator<F>,
    dual: &QuarticEvaluator<F>,
    x: &[F],
    strategy: CubeStrategy,
    rng: &mut R,
) -> Result<QuarticDual<F>> {
    let ell = tangent_hyperplane_quartic(eval, x, strategy, rng)?;
    let flag = quartic_flag(v, eval, x)?;
    let from_mu = Subspace::span(8, std::slice::from_ref(&ell)).annihilator();
    let hyperplanes_agree = from_mu == flag.members()[2];
    let dual_member = dual.is_member(&ell);
    let biduality = dual_member
        && match tangent_hyperplane_quartic(dual, &ell, strategy, rng) {
            Ok(back) => Subspace::span(8, &[back]) == Subspace::span(8, &[x.to_vec()]),
            Err(_) => false,
        };
    Ok(QuarticDual { x: x.to_vec(), ell, flag, hyperplanes_agree, dual_member, biduality })
}

/// The Grassmannian dual of a smooth quadric point `U₂` with its flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWitness<F> {
    pub u2: Subspace<F>,
    pub u4: Subspace<F>,
    pub u6: Subspace<F>,
    /// `U₆^⊥`, a 2-plane of the dual space.
    pub dual: Subspace<F>,
    /// Rank stratum of `v^∨` at the dual point.
    pub dual_label: G28Label,
    /// Whether the same construction on `(v^∨, U₆^⊥)` returns `U₂`. `None` when the dual
    /// point is not in the rank-4 stratum, where the construction does not apply.
    pub biduality: Option<bool>,
}

impl<F: Field> DualWitness<F> {
    /// The dual point lies on the quadric of `v^∨`.
    pub fn dual_member(&self) -> bool {
        self.dual_label != G28Label::Generic
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "U2": self.u2.to_json(),
            "U4": self.u4.to_json(),
            "U6": self.u6.to_json(),
            "dual": self.dual.to_json(),
            "dual_label": self.dual_label,
            "biduality": self.biduality,
        })
    }
}

/// Grassmannian duality at a smooth quadric point: `U₂ ↦ U₆^⊥` in G(2, V₈^∨), checked on
/// the quadric of `dual` (normally [`dual_form`] of `v`), and the round trip back to `U₂`.
pub fn grassmann_dual_point<F: Field>(v: &FourForm<F>, dual: &FourForm<F>, u2: &Subspace<F>) -> Result<DualWitness<F>> {
    let u4 = u4_witness_g28(v, u2)?;
    let u6 = u6_witness_g28(v, u2, &u4)?;
    let dual_pt = u6.annihilator();
    let dual_label = rank_stratum_g28(dual, &dual_pt)?;
    let biduality = (dual_label == G28Label::Quadric)
        .then(|| u4_witness_g28(dual, &dual_pt).and_then(|u4d| u6_witness_g28(dual, &dual_pt, &u4d)).map(|u6d| u6d.annihilator() == *u2).unwrap_or(false));
    Ok(DualWitness { u2: u2.clone(), u4, u6, dual: dual_pt, dual_label, biduality })
}

/// The gradient of the quadric at `U₂`, read as a map `V₈/U₂ → U₂`, has kernel `U₆/U₂`.
/// Fails when the gradient vanishes.
pub fn tangent_check_quadric<F: Field>(pencil: &PluckerPencil<F>, u2: &Subspace<F>, u6: &Subspace<F>) -> Result<bool> {
    let grad = quadric_gradient(pencil, u2)?;
    if grad.is_zero() {
        return Err(Error::Precondition("the quadric is singular at U₂".into()));
    }
    let proj = u2.quotient_projection();
    let image: Vec<Vec<F>> = u6.basis().iter().map(|y| (0..6).map(|c| (0..8).fold(F::zero(), |acc, r| acc + y[r].clone() * proj[(r, c)].clone())).collect()).collect();
    Ok(Subspace::span(6, &grad.kernel_basis()) == Subspace::span(6, &image))
}
