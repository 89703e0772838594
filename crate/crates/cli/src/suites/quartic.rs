//! Claims about the Coble quartic: projective self-duality and the cube structure of `μ`.

use coble_core::duality::{dual_form, quartic_dual_point, CubeStrategy};
use coble_core::field::{FiniteField, Ring};
use coble_core::strata::{sample_quartic, QuarticEvaluator, SamplerConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{with_resample, Options};
use crate::certificate::Certificate;

/// Random lines on which `μ` is factored.
pub const CUBE_LINES: usize = 30;

pub(super) fn run_self_dual<F: FiniteField>(opts: &Options) -> Vec<Certificate> {
    let ids = ["quartic.self-dual"];
    let count = opts.trials.max(1);
    with_resample::<F>(opts, &ids, |d, params| {
        let mut cert = Certificate::new(ids[0], params);
        let setup = QuarticEvaluator::new(&d.v).and_then(|e| Ok((e, QuarticEvaluator::new(&dual_form(&d.v))?)));
        let (eval, dual_eval) = match setup {
            Ok(x) => x,
            Err(e) => {
                cert.inconclusive(e.to_string());
                return vec![cert.finish()];
            }
        };
        // Smooth points have rank q = 4 and Kummer points rank 2; oversample to skip the latter.
        let (report, hits) = match sample_quartic(&d.v, &SamplerConfig::new(opts.seed, 2 * count, opts.budget)) {
            Ok(x) => x,
            Err(e) => {
                cert.inconclusive(e.to_string());
                return vec![cert.finish()];
            }
        };
        let smooth: Vec<_> = hits.into_iter().filter(|h| h.rank == 4).take(count).collect();
        if smooth.len() < count {
            cert.inconclusive(format!("{} of {count} smooth quartic points within the budget", smooth.len()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for (k, hit) in smooth.iter().enumerate() {
            match quartic_dual_point(&d.v, &eval, &dual_eval, &hit.x, CubeStrategy::Auto, &mut rng) {
                Ok(w) => {
                    cert.check(format!("point {k}: tangent hyperplane from μ equals U7 from q"), w.hyperplanes_agree, "");
                    cert.check(format!("point {k}: U7^perp lies on the dual quartic"), w.dual_member, "");
                    // A dual point on the Kummer of the dual form is singular and has no tangent
                    // hyperplane, so the round trip only applies at rank 4.
                    let dual_rank = dual_eval.q(&w.ell).rank();
                    if dual_rank == 4 {
                        cert.check(format!("point {k}: the dual tangent hyperplane is x^perp"), w.biduality, "");
                    } else {
                        cert.note(format!("point {k}: the dual point has rank q = {dual_rank}, so the round trip does not apply"));
                    }
                    cert.witnesses.push(w.to_json());
                }
                Err(e) => {
                    cert.check(format!("point {k}: tangent hyperplane"), false, e.to_string());
                }
            }
        }
        cert.note(format!("{} sampler trials", report.trials));
        vec![cert.finish()]
    })
}

pub(super) fn run_cube<F: FiniteField>(opts: &Options) -> Vec<Certificate> {
    let ids = ["quartic.cube-structure"];
    with_resample::<F>(opts, &ids, |d, params| {
        let mut cert = Certificate::new(ids[0], params);
        let eval = match QuarticEvaluator::new(&d.v) {
            Ok(e) => e,
            Err(e) => {
                cert.inconclusive(e.to_string());
                return vec![cert.finish()];
            }
        };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xc0b1e);
        let mut k = 0;
        while k < CUBE_LINES {
            let x: Vec<F> = (0..8).map(|_| F::random(&mut rng)).collect();
            let dir: Vec<F> = (0..8).map(|_| F::random(&mut rng)).collect();
            if x.iter().all(Ring::is_zero) || dir.iter().all(Ring::is_zero) {
                continue;
            }
            let outcome = eval.mu_on_line(&x, &dir).and_then(|mu| Ok((mu.degree(), mu.perfect_cube_root()?)));
            let (passed, detail) = match outcome {
                Ok((deg, Some(g))) => {
                    let ok = g.degree() == Some(4) && g.is_squarefree();
                    (ok, format!("deg μ = {deg:?}, deg g = {:?}, squarefree = {}", g.degree(), g.is_squarefree()))
                }
                Ok((deg, None)) => (false, format!("μ of degree {deg:?} is not a cube")),
                Err(e) => (false, e.to_string()),
            };
            cert.check(format!("line {k}: μ = g³ with g squarefree of degree 4"), passed, detail);
            k += 1;
        }
        vec![cert.finish()]
    })
}
