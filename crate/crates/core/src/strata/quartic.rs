//! The symmetric form `q` attached to a point of ℙ⁷, the Coble quartic as its rank-≤6
//! locus, the degree-twelve evaluator `μ`, and the Kummer order test.

use rand::Rng;
use serde::Serialize;

use crate::exterior::{interior, wedge, AltTensor, MultiIndex, Variance};
use crate::field::{Field, Ring};
use crate::linalg::Matrix;
use crate::poly::UniPoly;
use crate::theta::{dualize, FourForm};
use crate::{Error, Result};

/// Position of a point of ℙ⁷ relative to the quartic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum P7Label {
    Off,
    Quartic,
    Kummer,
    /// Every probed line lies inside the quartic, or the orders fit neither pattern.
    Degenerate,
}

/// The form `q` at `x` for the volume form `c·e₁^∨∧…∧e₈^∨`: with `ω_x = x⌟v^∨`,
/// `(a⌟ω_x)∧(b⌟ω_x)∧ω_x = q(a,b)·(x⌟vol)`.
pub fn q_form_with_volume<F: Field>(v: &FourForm<F>, x: &[F], c: &F) -> Result<Matrix<F>> {
    if x.len() != 8 || v.dim() != 8 || v.degree() != 4 {
        return Err(Error::Dimension("q needs a four-form on V₈ and a point of ℙ⁷".into()));
    }
    let i = x.iter().position(|a| !a.is_zero()).ok_or_else(|| Error::Precondition("the zero vector is not a point".into()))?;
    if c.is_zero() {
        return Err(Error::Precondition("zero volume form".into()));
    }
    let vd = dualize(v).relabel_variance(Variance::Covector).scale(c);
    let omega = interior(x, &vd)?;
    let alpha: Vec<AltTensor<F>> = (0..8)
        .map(|a| {
            let mut e = vec![F::zero(); 8];
            e[a] = F::one();
            interior(&e, &omega)
        })
        .collect::<Result<_>>()?;
    let slot = MultiIndex(!(1u16 << i) & 0xff);
    let sign = if i % 2 == 0 { F::one() } else { -F::one() };
    let denom = (sign * x[i].clone() * c.clone()).inv().expect("nonzero");
    let mut q = Matrix::zeros(8, 8);
    for a in 0..8 {
        let wa = wedge(&alpha[a], &omega)?;
        for b in a..8 {
            let t = wedge(&alpha[b], &wa)?;
            let val = t.get(slot) * denom.clone();
            q[(a, b)] = val.clone();
            q[(b, a)] = val;
        }
    }
    Ok(q)
}

/// The form `q` at `x` for the standard volume form.
pub fn q_form<F: Field>(v: &FourForm<F>, x: &[F]) -> Result<Matrix<F>> {
    q_form_with_volume(v, x, &F::one())
}

/// Precomputed polarization of `q`: `q(x) = Σ_{k≤l} x_k x_l C_{kl}`. Builds `q` at a point or
/// along a line with 36 matrix accumulations instead of exterior products.
#[derive(Clone, Debug)]
pub struct QuarticEvaluator<F: Field> {
    terms: Vec<(usize, usize, Matrix<F>)>,
}

/// Verdict of the Kummer order test together with its raw data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KummerVerdict {
    pub label: P7Label,
    /// Vanishing order of `μ` along each accepted line.
    pub orders: Vec<usize>,
    /// Lines discarded because they lie in the quartic.
    pub discarded: usize,
}

impl<F: Field> QuarticEvaluator<F> {
    pub fn new(v: &FourForm<F>) -> Result<Self> {
        let unit = |k: usize| {
            let mut e = vec![F::zero(); 8];
            e[k] = F::one();
            e
        };
        let diag: Vec<Matrix<F>> = (0..8).map(|k| q_form(v, &unit(k))).collect::<Result<_>>()?;
        let mut terms = Vec::with_capacity(36);
        for k in 0..8 {
            terms.push((k, k, diag[k].clone()));
            for l in k + 1..8 {
                let mut e = unit(k);
                e[l] = F::one();
                let mixed = q_form(v, &e)?.add(&diag[k].scale(&-F::one())).add(&diag[l].scale(&-F::one()));
                terms.push((k, l, mixed));
            }
        }
        Ok(QuarticEvaluator { terms })
    }

    /// `Σ_{k≤l} C_{kl} y_k y_l` when `same`, otherwise the mixed term
    /// `Σ_{k≤l} C_{kl} (y_k z_l + z_k y_l)`.
    fn accumulate(&self, y: &[F], z: &[F], same: bool) -> Matrix<F> {
        let mut out = Matrix::<F>::zeros(8, 8);
        for (k, l, c) in &self.terms {
            let w = if same { y[*k].clone() * y[*l].clone() } else { y[*k].clone() * z[*l].clone() + z[*k].clone() * y[*l].clone() };
            if w.is_zero() {
                continue;
            }
            for a in 0..8 {
                for b in a..8 {
                    let e = &c[(a, b)];
                    if !e.is_zero() {
                        out[(a, b)] = out[(a, b)].clone() + w.clone() * e.clone();
                    }
                }
            }
        }
        for a in 0..8 {
            for b in 0..a {
                out[(a, b)] = out[(b, a)].clone();
            }
        }
        out
    }

    /// `q` at `x`.
    pub fn q(&self, x: &[F]) -> Matrix<F> {
        self.accumulate(x, x, true)
    }

    /// `q(x + t·d)` with quadratic polynomial entries.
    pub fn q_on_line(&self, x: &[F], d: &[F]) -> Matrix<UniPoly<F>> {
        let (c0, c1, c2) = (self.q(x), self.accumulate(x, d, false), self.q(d));
        Matrix::from_fn(8, 8, |a, b| UniPoly::new(vec![c0[(a, b)].clone(), c1[(a, b)].clone(), c2[(a, b)].clone()]))
    }

    /// Quartic membership: `rank q(x) ≤ 6`.
    pub fn is_member(&self, x: &[F]) -> bool {
        self.q(x).rank() <= 6
    }

    /// `μ(x) = adj(q)_{ii}/x_i²` for the first `i` with `x_i ≠ 0`.
    pub fn mu(&self, x: &[F]) -> Result<F> {
        let i = x.iter().position(|a| !a.is_zero()).ok_or_else(|| Error::Precondition("the zero vector is not a point".into()))?;
        let c = self.q(x).cofactor(i, i);
        Ok(c / (x[i].clone() * x[i].clone()))
    }

    /// Whether `adj(q)_{ij}/(x_i x_j)` is the same for every pair with `x_i x_j ≠ 0`.
    pub fn mu_is_well_defined(&self, x: &[F]) -> bool {
        let adj = self.q(x).adjugate();
        let mut value: Option<F> = None;
        for i in 0..8 {
            for j in 0..8 {
                let d = x[i].clone() * x[j].clone();
                if d.is_zero() {
                    continue;
                }
                let r = adj[(i, j)].clone() / d;
                match &value {
                    None => value = Some(r),
                    Some(v0) if *v0 != r => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// `μ(x + t·d)` as an exact polynomial of degree ≤ 12.
    pub fn mu_on_line(&self, x: &[F], d: &[F]) -> Result<UniPoly<F>> {
        let i = (0..8)
            .max_by_key(|&i| (!x[i].is_zero(), !d[i].is_zero()))
            .filter(|&i| !x[i].is_zero() || !d[i].is_zero())
            .ok_or_else(|| Error::Precondition("degenerate line".into()))?;
        let c = self.q_on_line(x, d).cofactor(i, i);
        let xi = UniPoly::linear(x[i].clone(), d[i].clone());
        let (quot, rem) = c.div_rem(&(xi.clone() * xi));
        if !rem.is_zero() {
            return Err(Error::Inconclusive("cofactor is not divisible by the coordinate square".into()));
        }
        Ok(quot)
    }

    /// Order test at a quartic point along `m` random lines; lines inside the quartic are
    /// discarded and redrawn, up to `4m` draws in total.
    pub fn kummer_test<R: Rng + ?Sized>(&self, x: &[F], m: usize, rng: &mut R) -> Result<KummerVerdict> {
        if !self.mu(x)?.is_zero() {
            return Ok(KummerVerdict { label: P7Label::Off, orders: Vec::new(), discarded: 0 });
        }
        let mut orders = Vec::with_capacity(m);
        let mut discarded = 0;
        for _ in 0..4 * m {
            if orders.len() == m {
                break;
            }
            let d: Vec<F> = (0..8).map(|_| F::random(rng)).collect();
            if d.iter().all(Ring::is_zero) {
                continue;
            }
            match self.mu_on_line(x, &d)?.vanishing_order() {
                Some(o) => orders.push(o),
                None => discarded += 1,
            }
        }
        let label = if orders.is_empty() {
            P7Label::Degenerate
        } else if orders.iter().all(|&o| o >= 6) {
            P7Label::Kummer
        } else if 2 * orders.iter().filter(|&&o| o == 3).count() > orders.len() {
            P7Label::Quartic
        } else {
            P7Label::Degenerate
        };
        Ok(KummerVerdict { label, orders, discarded })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::theta::{random_form, SampleMode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F101 = Fp<101>;
    type FBig = Fp<2147483647>;

    fn rand_vec<F: Field>(rng: &mut ChaCha8Rng) -> Vec<F> {
        (0..8).map(|_| F::random(rng)).collect()
    }

    #[test]
    fn q_vanishes_for_a_decomposable_form() {
        let v = AltTensor::<F101>::basis(8, Variance::Vector, &[0, 1, 2, 3]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = rand_vec::<F101>(&mut rng);
        assert!(q_form(&v, &x).unwrap().is_zero());
    }

    #[test]
    fn q_is_symmetric_and_kills_its_point() {
        let v: FourForm<F101> = random_form(4, SampleMode::CartanConjugate);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut full_rank = 0;
        for _ in 0..20 {
            let x = rand_vec::<F101>(&mut rng);
            let q = q_form(&v, &x).unwrap();
            assert!(q.is_symmetric());
            assert!(q.mul_vec(&x).iter().all(Ring::is_zero));
            if q.rank() == 7 {
                full_rank += 1;
            }
        }
        assert!(full_rank >= 15, "rank 7 in only {full_rank}/20 draws");
    }

    #[test]
    fn polarized_evaluator_matches_the_definition() {
        let v: FourForm<F101> = random_form(5, SampleMode::Uniform);
        let ev = QuarticEvaluator::new(&v).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let x = rand_vec::<F101>(&mut rng);
            if x.iter().all(Ring::is_zero) {
                continue;
            }
            assert_eq!(ev.q(&x), q_form(&v, &x).unwrap());
            assert!(ev.mu_is_well_defined(&x));
        }
    }

    #[test]
    fn volume_rescaling_keeps_verdicts() {
        let v: FourForm<F101> = random_form(6, SampleMode::CartanConjugate);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = rand_vec::<F101>(&mut rng);
        let q = q_form(&v, &x).unwrap();
        for c in [2u64, 3, 50] {
            let c = F101::new(c);
            let qc = q_form_with_volume(&v, &x, &c).unwrap();
            assert_eq!(qc, q.scale(&(c * c)));
            assert_eq!(qc.rank(), q.rank());
        }
    }

    #[test]
    fn mu_on_a_line_is_a_cube_of_a_quartic() {
        let v: FourForm<FBig> = random_form(7, SampleMode::CartanConjugate);
        let ev = QuarticEvaluator::new(&v).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let (x, d) = (rand_vec::<FBig>(&mut rng), rand_vec::<FBig>(&mut rng));
            let f = ev.mu_on_line(&x, &d).unwrap();
            assert_eq!(f.degree(), Some(12));
            let g = f.perfect_cube_root().unwrap().expect("cube");
            assert_eq!(g.degree(), Some(4));
            assert_eq!(f.eval(&FBig::new(0)), ev.mu(&x).unwrap());
        }
    }

    #[test]
    fn mu_vanishes_exactly_on_members() {
        let v: FourForm<F101> = random_form(8, SampleMode::CartanConjugate);
        let ev = QuarticEvaluator::new(&v).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut members = 0;
        for _ in 0..400 {
            let x = rand_vec::<F101>(&mut rng);
            if x.iter().all(Ring::is_zero) {
                continue;
            }
            let m = ev.is_member(&x);
            assert_eq!(m, ev.mu(&x).unwrap().is_zero());
            members += m as usize;
        }
        assert!(members > 0);
    }

    #[test]
    fn smooth_points_have_order_three() {
        let v: FourForm<F101> = random_form(9, SampleMode::CartanConjugate);
        let ev = QuarticEvaluator::new(&v).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = loop {
            let x = rand_vec::<F101>(&mut rng);
            if !x.iter().all(Ring::is_zero) && ev.is_member(&x) {
                break x;
            }
        };
        let verdict = ev.kummer_test(&x, 8, &mut rng).unwrap();
        assert_eq!(verdict.label, P7Label::Quartic, "{verdict:?}");
        let off = loop {
            let y = rand_vec::<F101>(&mut rng);
            if !ev.is_member(&y) {
                break y;
            }
        };
        assert_eq!(ev.kummer_test(&off, 8, &mut rng).unwrap().label, P7Label::Off);
    }
}
