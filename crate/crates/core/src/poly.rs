//! Univariate polynomials over a field, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{ExactDiv, Field, Ring};
use crate::Error;

/// A polynomial `Σ c_i t^i`; the coefficient list never ends in a zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c:?}"),
                1 => format!("{c:?}*t"),
                _ => format!("{c:?}*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `a + b·t`.
    pub fn linear(a: F, b: F) -> Self {
        Self::new(vec![a, b])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Index of the lowest nonzero coefficient, `None` standing for "infinite" order.
    pub fn vanishing_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.clone() * F::from_i64(i as i64)).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Polynomial `f(a + t)`, i.e. the expansion around `a`.
    pub fn shift(&self, a: &F) -> Self {
        let x = UniPoly::linear(a.clone(), F::one());
        self.coeffs.iter().rev().fold(UniPoly::zero(), |acc, c| acc * x.clone() + UniPoly::constant(c.clone()))
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap().clone() * lead_inv.clone();
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = r[k + i].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
            r.pop();
        }
        (Self::new(q), Self::new(r))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Finds `g` with `self = c·g³` for a scalar `c`, returning `g` monic.
    ///
    /// Uses the square-free (Yun) decomposition, which needs characteristic 0 or larger
    /// than the degree; smaller characteristic is reported as an error.
    pub fn perfect_cube_root(&self) -> Result<Option<Self>, Error> {
        let Some(deg) = self.degree() else {
            return Ok(Some(UniPoly::zero()));
        };
        let p = F::characteristic();
        if p != 0 && p as usize <= deg {
            return Err(Error::Inconclusive(format!("characteristic {p} too small for a degree {deg} cube test")));
        }
        let factors = self.monic().squarefree_decomposition();
        let mut g = UniPoly::one();
        for (mult, a) in factors.iter().enumerate().map(|(i, a)| (i + 1, a)) {
            if a.degree() == Some(0) {
                continue;
            }
            if mult % 3 != 0 {
                return Ok(None);
            }
            for _ in 0..mult / 3 {
                g = g * a.clone();
            }
        }
        Ok(Some(g))
    }

    /// Yun's algorithm: monic `a_1, a_2, …` with `self = Π a_i^i` (up to a scalar).
    fn squarefree_decomposition(&self) -> Vec<Self> {
        let mut out = Vec::new();
        let f = self.monic();
        let d = f.derivative();
        let a = f.gcd(&d);
        let mut b = f.div_rem(&a).0;
        let c = d.div_rem(&a).0;
        let mut e = c - b.derivative();
        while b.degree() != Some(0) {
            let ai = b.gcd(&e);
            b = b.div_rem(&ai).0;
            let c = e.div_rem(&ai).0;
            e = c - b.derivative();
            out.push(ai);
        }
        out
    }
}

impl<F: Field> Add for UniPoly<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<F: Field> Sub for UniPoly<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<F: Field> Mul for UniPoly<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<F: Field> Neg for UniPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<F: Field> Ring for UniPoly<F> {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field> ExactDiv for UniPoly<F> {
    fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Q};
    use crate::linalg::Matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F101 = Fp<101>;
    type F11 = Fp<11>;

    fn p<F: Field>(c: &[i64]) -> UniPoly<F> {
        UniPoly::new(c.iter().map(|&x| F::from_i64(x)).collect())
    }

    fn random_poly<F: Field>(rng: &mut ChaCha8Rng, deg: usize) -> UniPoly<F> {
        let mut c: Vec<F> = (0..deg).map(|_| F::random(rng)).collect();
        c.push(F::random_nonzero(rng));
        UniPoly::new(c)
    }

    #[test]
    fn vanishing_orders() {
        assert_eq!(p::<Q>(&[0, 0, 0, 1, 0, 1]).vanishing_order(), Some(3));
        assert_eq!(p::<Q>(&[1]).vanishing_order(), Some(0));
        assert_eq!(UniPoly::<Q>::zero().vanishing_order(), None);
        // (t-2)^3 (t^2+5) shifted to 2 has order 3.
        let lin = p::<Q>(&[-2, 1]);
        let f = lin.clone() * lin.clone() * lin * p(&[5, 0, 1]);
        assert_eq!(f.shift(&Q::from_i64(2)).vanishing_order(), Some(3));
    }

    #[test]
    fn cube_recognition() {
        let g = p::<Q>(&[1, 0, 1]);
        let f = g.clone() * g.clone() * g.clone();
        assert_eq!(f.perfect_cube_root().unwrap(), Some(g));
        assert_eq!(p::<Q>(&[0, 0, 1, 1]).perfect_cube_root().unwrap(), None);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let g: UniPoly<F101> = random_poly(&mut rng, 4);
            let c = F101::random_nonzero(&mut rng);
            let f = (g.clone() * g.clone() * g.clone()).scale(&c);
            assert_eq!(f.perfect_cube_root().unwrap(), Some(g.monic()));
            let h = f.clone() + p(&[1]);
            assert!(h.perfect_cube_root().unwrap().is_none() || h.degree() == Some(0));
        }
    }

    #[test]
    fn cube_test_needs_large_characteristic() {
        let g: UniPoly<F11> = p(&[1, 2, 0, 0, 1]);
        let f = g.clone() * g.clone() * g;
        assert!(matches!(f.perfect_cube_root(), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn cube_of_non_squarefree_polynomials() {
        // f = (t-1)^6 (t+3)^3 = ((t-1)^2 (t+3))^3.
        let a = p::<Q>(&[-1, 1]);
        let b = p::<Q>(&[3, 1]);
        let g = a.clone() * a.clone() * b.clone();
        let f = g.clone() * g.clone() * g.clone();
        assert_eq!(f.perfect_cube_root().unwrap(), Some(g));
        let not = a.clone() * a.clone() * b.clone() * b.clone() * b;
        assert_eq!(not.perfect_cube_root().unwrap(), None);
    }

    #[test]
    fn division_and_gcd() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let a: UniPoly<F101> = random_poly(&mut rng, 5);
            let b: UniPoly<F101> = random_poly(&mut rng, 3);
            let (q, r) = a.div_rem(&b);
            assert_eq!(q * b.clone() + r.clone(), a);
            assert!(r.degree().is_none_or(|d| d < 3));
            let c: UniPoly<F101> = random_poly(&mut rng, 2);
            let g = (a.clone() * c.clone()).gcd(&(b.clone() * c.clone()));
            assert_eq!(g.div_rem(&c.monic()).1, UniPoly::zero());
        }
    }

    #[test]
    fn polynomial_determinant_matches_pointwise_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = Matrix::from_fn(4, 4, |_, _| random_poly::<F101>(&mut rng, 2));
        let d = m.det();
        for x in 0..10 {
            let x = F101::from_i64(x);
            let mx = m.map(|e| e.eval(&x));
            assert_eq!(d.eval(&x), mx.det());
        }
    }
}
