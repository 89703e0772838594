//! Claims about Kummer points and the ruling of the quartic by the `ℙ(U₄)` of `A_C`.

use coble_core::field::FiniteField;
use coble_core::strata::{ac_fiber_over_kummer, ac_member, sample_kummer, AcVerdict, QuarticEvaluator, SamplerConfig};
use coble_core::exterior::Subspace;

use super::{with_resample, Options};
use crate::certificate::Certificate;

/// Kummer points sampled per run.
pub const KUMMER_POINTS: usize = 6;
/// Least order of vanishing of `μ` along a line through a Kummer point.
pub const KUMMER_ORDER: usize = 6;
/// Lines in the order test.
pub const KUMMER_LINES: usize = 8;

pub(super) fn run<F: FiniteField>(opts: &Options) -> Vec<Certificate> {
    let ids = ["ruling.kummer", "ruling.ac-fiber", "ruling.planes-in-quartic"];
    with_resample::<F>(opts, &ids, |d, params| {
        let mut kummer = Certificate::new(ids[0], params.clone());
        let mut fiber = Certificate::new(ids[1], params.clone());
        let mut planes = Certificate::new(ids[2], params);
        let sampled = sample_kummer(&d.v, &SamplerConfig::new(opts.seed, KUMMER_POINTS, opts.budget)).and_then(|s| Ok((s, QuarticEvaluator::new(&d.v)?)));
        let ((report, hits), eval) = match sampled {
            Ok(x) => x,
            Err(e) => {
                for c in [&mut kummer, &mut fiber, &mut planes] {
                    c.inconclusive(e.to_string());
                }
                return vec![kummer.finish(), fiber.finish(), planes.finish()];
            }
        };
        if hits.len() < KUMMER_POINTS {
            for c in [&mut kummer, &mut fiber, &mut planes] {
                c.inconclusive(format!("{} of {KUMMER_POINTS} Kummer points within a budget of {} trials", hits.len(), opts.budget));
            }
        }
        kummer.witnesses = report.witnesses.clone();
        kummer.note(format!("{} trials, {} degenerate candidates", report.trials, report.degenerate_hits));

        let mut with_two = 0;
        let mut scanned = 0;
        for (k, hit) in hits.iter().enumerate() {
            let votes = hit.orders.iter().filter(|&&o| o >= KUMMER_ORDER).count();
            kummer.check(
                format!("point {k}: μ vanishes to order ≥ {KUMMER_ORDER} on {KUMMER_LINES}/{KUMMER_LINES} lines"),
                hit.orders.len() == KUMMER_LINES && votes == KUMMER_LINES,
                format!("orders {:?}", hit.orders),
            );
            let scan = match ac_fiber_over_kummer(&d.v, &hit.x, opts.budget) {
                Ok(s) => s,
                Err(e) => {
                    fiber.inconclusive(e.to_string());
                    continue;
                }
            };
            scanned += 1;
            if scan.hyperplanes.len() == 2 {
                with_two += 1;
            }
            fiber.note(format!("point {k}: {} hyperplanes scanned, {} degenerate, {} on the fiber", scan.candidates, scan.degenerate, scan.hyperplanes.len()));
            let u1 = Subspace::span(8, std::slice::from_ref(&hit.x));
            for (j, (ell, u4)) in scan.hyperplanes.iter().zip(&scan.u4s).enumerate() {
                let u7 = Subspace::span(8, std::slice::from_ref(ell)).annihilator();
                let again = ac_member(&d.v, &u1, &u7);
                planes.check(format!("point {k}, hyperplane {j}: the flag satisfies the membership test"), matches!(&again, Ok(AcVerdict::Member(w)) if w == u4), format!("{again:?}").chars().take(120).collect::<String>());
                let points = u4.projective_points();
                let on = points.iter().filter(|x| eval.is_member(x)).count();
                planes.check(format!("point {k}, hyperplane {j}: P(U4) lies on the quartic"), on == points.len(), format!("{on}/{} points", points.len()));
            }
        }
        if scanned > 0 {
            fiber.check(
                "exactly two hyperplanes for at least two thirds of the Kummer points",
                3 * with_two >= 2 * scanned,
                format!("{with_two} of {scanned} points"),
            );
        }
        if planes.checks.is_empty() && planes.reason.is_none() {
            planes.inconclusive("no fiber scan returned a hyperplane");
        }
        vec![kummer.finish(), fiber.finish(), planes.finish()]
    })
}
