//! Claims about the moduli locus D and the Coble quadric in G(2,8).

use coble_core::duality::{dual_form, grassmann_dual_point, tangent_check_quadric};
use coble_core::field::FiniteField;
use coble_core::strata::{rank_stratum_g28, sample_moduli, sample_quadric, singular_along_d, G28Label, PluckerPencil, QuarticEvaluator, SamplerConfig};

use super::{with_resample, Options};
use crate::certificate::Certificate;

/// Points of D sampled per run.
pub const MODULI_POINTS: usize = 5;
/// Least number of smooth quadric points, whatever `--trials` says.
pub const MIN_QUADRIC_POINTS: usize = 5;

pub(super) fn run_moduli<F: FiniteField>(opts: &Options) -> Vec<Certificate> {
    let ids = ["moduli.rank-two", "moduli.hecke-lines", "quadric.singular-along-d"];
    with_resample::<F>(opts, &ids, |d, params| {
        let mut rank = Certificate::new(ids[0], params.clone());
        let mut lines = Certificate::new(ids[1], params.clone());
        let mut singular = Certificate::new(ids[2], params);
        let cfg = SamplerConfig::new(opts.seed, MODULI_POINTS, opts.budget);
        let sampled = sample_moduli(&d.v, &cfg).and_then(|s| Ok((s, QuarticEvaluator::new(&d.v)?)));
        let ((report, hits), eval) = match sampled {
            Ok(x) => x,
            Err(e) => {
                for c in [&mut rank, &mut lines, &mut singular] {
                    c.inconclusive(e.to_string());
                }
                return vec![rank.finish(), lines.finish(), singular.finish()];
            }
        };
        if hits.len() < MODULI_POINTS {
            for c in [&mut rank, &mut lines, &mut singular] {
                c.inconclusive(format!("{} of {MODULI_POINTS} points of D within a budget of {} trials", hits.len(), opts.budget));
            }
        }
        let pencil = PluckerPencil::new(&d.v);
        for (k, hit) in hits.iter().enumerate() {
            let label = rank_stratum_g28(&d.v, &hit.u2);
            rank.check(format!("point {k}: induced form has rank 2"), matches!(label, Ok(G28Label::Moduli)), format!("{label:?}"));
            let points = hit.u2.projective_points();
            let on = points.iter().filter(|x| eval.is_member(x)).count();
            lines.check(format!("point {k}: P(U2) lies on the quartic"), on == points.len() && points.len() as u64 == F::ORDER + 1, format!("{on}/{} points", points.len()));
            let sing = singular_along_d(&pencil, &hit.u2);
            singular.check(format!("point {k}: all chart partials vanish"), matches!(sing, Ok(true)), format!("{sing:?}"));
        }
        rank.witnesses = report.witnesses.clone();
        rank.note(format!("{} trials, {} degenerate candidates", report.trials, report.degenerate_hits));
        vec![rank.finish(), lines.finish(), singular.finish()]
    })
}

pub(super) fn run_quadric<F: FiniteField>(opts: &Options) -> Vec<Certificate> {
    let ids = ["quadric.smooth-tangent", "quadric.grassmann-self-dual"];
    let count = opts.trials.max(MIN_QUADRIC_POINTS);
    with_resample::<F>(opts, &ids, |d, params| {
        let mut tangent = Certificate::new(ids[0], params.clone());
        let mut duality = Certificate::new(ids[1], params);
        let (report, hits) = match sample_quadric(&d.v, &SamplerConfig::new(opts.seed, count, opts.budget)) {
            Ok(x) => x,
            Err(e) => {
                tangent.inconclusive(e.to_string());
                duality.inconclusive(e.to_string());
                return vec![tangent.finish(), duality.finish()];
            }
        };
        if hits.len() < count {
            tangent.inconclusive(format!("{} of {count} smooth quadric points within the budget", hits.len()));
            duality.inconclusive(format!("{} of {count} smooth quadric points within the budget", hits.len()));
        }
        let pencil = PluckerPencil::new(&d.v);
        let dual = dual_form(&d.v);
        for (k, hit) in hits.iter().enumerate() {
            let t = tangent_check_quadric(&pencil, &hit.u2, &hit.u6);
            tangent.check(format!("point {k}: gradient nonzero with kernel U6/U2"), matches!(t, Ok(true)), format!("{t:?}"));
            match grassmann_dual_point(&d.v, &dual, &hit.u2) {
                Ok(w) => {
                    duality.check(format!("point {k}: U6^perp lies on the dual quadric"), w.dual_member(), format!("{:?}", w.dual_label));
                    let detail = match w.biduality {
                        None => "the dual point is outside the rank-4 stratum, where the round trip does not apply".to_string(),
                        Some(b) => format!("{b}"),
                    };
                    duality.check(format!("point {k}: round trip returns U2"), w.biduality == Some(true), detail);
                    duality.witnesses.push(w.to_json());
                }
                Err(e) => {
                    duality.check(format!("point {k}: dual point"), false, e.to_string());
                }
            }
        }
        tangent.note(format!("{} trials, {} degenerate candidates", report.trials, report.degenerate_hits));
        vec![tangent.finish(), duality.finish()]
    })
}
