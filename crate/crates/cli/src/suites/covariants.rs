//! Claims about the quadric equation and the cubic and quintic covariants.

use coble_core::covariants::{cubic_covariant_chain, quadric_equation, quintic_covariant};
use coble_core::exterior::plucker;
use coble_core::field::{FiniteField, Ring};
use coble_core::strata::{quadric_value, sample_moduli, PluckerPencil, SamplerConfig};
use coble_core::theta::{random_form, SampleMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{with_resample, Options};
use crate::certificate::Certificate;

/// Held-out decomposables on which the interpolated equation is compared.
pub const HELD_OUT: usize = 100;
/// Forms on which the cubic chain is compared with the equation.
pub const CUBIC_FORMS: u64 = 10;
/// Points of D on which the quintic covariant is evaluated.
pub const QUINTIC_POINTS: usize = 5;

pub(super) fn run<F: FiniteField>(opts: &Options) -> Vec<Certificate> {
    let ids = ["covariants.interpolation", "covariants.cubic", "covariants.quintic"];
    with_resample::<F>(opts, &ids, |d, params| {
        let mut interp = Certificate::new(ids[0], params.clone());
        let mut cubic = Certificate::new(ids[1], params.clone());
        let mut quintic = Certificate::new(ids[2], params);
        let eq = match quadric_equation(&d.v, opts.seed) {
            Ok(eq) => eq,
            Err(e) => {
                for c in [&mut interp, &mut cubic, &mut quintic] {
                    c.inconclusive(e.to_string());
                }
                return vec![interp.finish(), cubic.finish(), quintic.finish()];
            }
        };

        let pencil = PluckerPencil::new(&d.v);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x05ee_d0fd);
        let mut agree = 0;
        let mut tested = 0;
        while tested < HELD_OUT {
            let u: Vec<F> = (0..8).map(|_| F::random(&mut rng)).collect();
            let w: Vec<F> = (0..8).map(|_| F::random(&mut rng)).collect();
            let omega = plucker(&u, &w);
            if omega.iter().all(Ring::is_zero) {
                continue;
            }
            tested += 1;
            if quadric_value(&pencil, &u, &w).is_ok_and(|x| x == eq.value(&omega)) {
                agree += 1;
            }
        }
        interp.check("the equation reproduces the Pfaffian quadric on held-out decomposables", agree == HELD_OUT, format!("{agree}/{HELD_OUT}"));

        let mut scalar = None;
        for k in 0..CUBIC_FORMS {
            let (v, label) = if k == 0 { (d.v.clone(), "the drawn form".to_string()) } else { (random_form::<F>(opts.seed.wrapping_add(k), SampleMode::Uniform), format!("uniform draw {}", opts.seed.wrapping_add(k))) };
            let ratio = if k == 0 { Ok(eq.clone()) } else { quadric_equation(&v, opts.seed.wrapping_add(k)) }.map(|e| cubic_covariant_chain(&v).ratio_to(&e));
            let (ok, detail) = match ratio {
                Ok(Some(c)) if !c.is_zero() => {
                    let first = *scalar.get_or_insert(c);
                    (first == c, format!("ratio {}", c.to_json()))
                }
                Ok(Some(_)) => (false, "the chain vanishes".to_string()),
                Ok(None) => (false, "not proportional".to_string()),
                Err(e) => (false, e.to_string()),
            };
            cubic.check(format!("{label}: the chain is the common multiple of the equation"), ok, detail);
        }

        match quintic_covariant(&d.v) {
            Ok(quint) => {
                quintic.check("the quintic covariant is nonzero", quint.upper().iter().any(|x| !x.is_zero()), "");
                quintic.check("the quintic covariant is not a multiple of the quadric", quint.ratio_to(&eq).is_none(), "");
                match sample_moduli(&d.v, &SamplerConfig::new(opts.seed, QUINTIC_POINTS, opts.budget)) {
                    Ok((_, hits)) => {
                        if hits.len() < QUINTIC_POINTS {
                            quintic.inconclusive(format!("{} of {QUINTIC_POINTS} points of D within the budget", hits.len()));
                        }
                        for (k, h) in hits.iter().enumerate() {
                            let b = h.u2.basis();
                            let value = quint.value(&plucker(&b[0], &b[1]));
                            quintic.check(format!("D point {k}: the quintic covariant vanishes"), value.is_zero(), value.to_json().to_string());
                        }
                    }
                    Err(e) => quintic.inconclusive(e.to_string()),
                }
            }
            Err(e) => quintic.inconclusive(e.to_string()),
        }
        vec![interp.finish(), cubic.finish(), quintic.finish()]
    })
}
