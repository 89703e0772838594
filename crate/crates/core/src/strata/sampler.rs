//! Finite-field samplers for the loci. Trials are split into fixed-size chunks, chunk `k`
//! drawing from stream `k` of a ChaCha generator keyed by the seed; chunks run in parallel
//! and are merged in order, so reports do not depend on the thread count.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exterior::{induced_two_form, plucker, subsets, Flag, MultiIndex, Subspace, WedgePattern};
use crate::field::{FiniteField, Field, Ring};
use crate::poly::UniPoly;
use crate::theta::FourForm;
use crate::{Error, Result};

use super::grass::{quadric_value_in_chart, rank_stratum_g28, u4_witness_g28, u6_witness_g28, G28Label, PluckerPencil};
use super::patterns;
use super::quartic::{P7Label, QuarticEvaluator};

/// Trials per chunk.
const CHUNK: u64 = 1 << 15;

/// Sampler parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Number of hits wanted.
    pub count: usize,
    /// Maximum number of trials.
    pub budget: u64,
    /// Record wall-clock time in the report; off by default so reports are reproducible.
    pub timing: bool,
}

impl SamplerConfig {
    pub fn new(seed: u64, count: usize, budget: u64) -> Self {
        SamplerConfig { seed, count, budget, timing: false }
    }
}

/// Summary of a sampler run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub locus: String,
    pub prime: u64,
    pub seed: u64,
    /// Trials consumed up to the last reported hit, or the whole budget when exhausted.
    pub trials: u64,
    pub hits: usize,
    pub witnesses: Vec<serde_json::Value>,
    /// Candidates that passed the cheap test but fell into a degenerate stratum.
    pub degenerate_hits: u64,
    /// Whether the budget ran out before `count` hits were found.
    pub exhausted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

/// A smooth point of the quadric with its flag `U₂ ⊂ U₄ ⊂ U₆`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricHit<F> {
    pub u2: Subspace<F>,
    pub u4: Subspace<F>,
    pub u6: Subspace<F>,
}

/// A point of D with its `U₆`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliHit<F> {
    pub u2: Subspace<F>,
    pub u6: Subspace<F>,
}

/// A point of the quartic, normalized, with the rank of `q` there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticHit<F> {
    pub x: Vec<F>,
    pub rank: usize,
}

/// A Kummer point with its order-test data and the rank of `q` there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerHit<F> {
    pub x: Vec<F>,
    pub orders: Vec<usize>,
    pub rank: usize,
}

enum Event<H> {
    Hit(H),
    Degenerate,
}

struct ChunkOutcome<H> {
    events: Vec<(u64, Event<H>)>,
}

struct Merged<H> {
    hits: Vec<H>,
    trials: u64,
    degenerate: u64,
    exhausted: bool,
}

/// Runs `trial` over the chunked trial range until `count` hits or the budget is reached.
fn run_chunks<H: Send>(cfg: &SamplerConfig, trial: impl Fn(&mut ChaCha8Rng) -> Option<Event<H>> + Sync) -> Merged<H> {
    let n_chunks = cfg.budget.div_ceil(CHUNK);
    let batch = rayon::current_num_threads().max(1) as u64;
    let mut merged = Merged { hits: Vec::new(), trials: 0, degenerate: 0, exhausted: true };
    if cfg.count == 0 {
        merged.exhausted = false;
        return merged;
    }
    let mut start = 0;
    while start < n_chunks {
        let end = (start + batch).min(n_chunks);
        let outcomes: Vec<ChunkOutcome<H>> = (start..end)
            .into_par_iter()
            .map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(k);
                let len = CHUNK.min(cfg.budget - k * CHUNK);
                let mut events = Vec::new();
                let mut hits = 0;
                for i in 0..len {
                    if let Some(e) = trial(&mut rng) {
                        hits += matches!(e, Event::Hit(_)) as usize;
                        events.push((i, e));
                        if hits == cfg.count {
                            break;
                        }
                    }
                }
                ChunkOutcome { events }
            })
            .collect();
        for (k, outcome) in (start..end).zip(outcomes) {
            for (i, e) in outcome.events {
                match e {
                    Event::Hit(h) => merged.hits.push(h),
                    Event::Degenerate => merged.degenerate += 1,
                }
                if merged.hits.len() == cfg.count {
                    merged.trials = k * CHUNK + i + 1;
                    merged.exhausted = false;
                    return merged;
                }
            }
        }
        start = end;
    }
    merged.trials = cfg.budget;
    merged
}

fn report<F: FiniteField, H>(locus: &str, cfg: &SamplerConfig, merged: &Merged<H>, witness: impl Fn(&H) -> serde_json::Value, started: Instant) -> SampleReport {
    SampleReport {
        locus: locus.to_string(),
        prime: F::ORDER,
        seed: cfg.seed,
        trials: merged.trials,
        hits: merged.hits.len(),
        witnesses: merged.hits.iter().map(witness).collect(),
        degenerate_hits: merged.degenerate,
        exhausted: merged.exhausted,
        runtime_ms: cfg.timing.then(|| started.elapsed().as_millis() as u64),
    }
}

fn random_vec<F: Field, R: Rng + ?Sized>(rng: &mut R) -> Vec<F> {
    (0..8).map(|_| F::random(rng)).collect()
}

fn normalize<F: Field>(x: &[F]) -> Vec<F> {
    Subspace::span(8, &[x.to_vec()]).basis()[0].clone()
}

fn vector_json<F: Field>(x: &[F]) -> serde_json::Value {
    serde_json::Value::Array(x.iter().map(Field::to_json).collect())
}

/// Roots in `F` of a polynomial of degree at most 2.
fn quadratic_roots<F: Field>(f: &UniPoly<F>) -> Vec<F> {
    match f.degree() {
        Some(1) => vec![-f.coeff(0) / f.coeff(1)],
        Some(2) => {
            let (c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2));
            let disc = b.clone() * b.clone() - F::from_i64(4) * a.clone() * c;
            let Some(s) = disc.sqrt() else { return Vec::new() };
            let two_a = F::from_i64(2) * a;
            let r1 = (-b.clone() + s.clone()) / two_a.clone();
            let r2 = (-b - s) / two_a;
            if r1 == r2 {
                vec![r1]
            } else {
                vec![r1, r2]
            }
        }
        _ => Vec::new(),
    }
}

/// Smooth points of the quadric: restrict it to a random line `⟨u, w + t·w'⟩` of G(2,8),
/// solve the quadratic in `t`, and keep roots of rank exactly 4 whose `U₄, U₆` witnesses
/// pass their flag conditions. Roots on D count as degenerate.
pub fn sample_quadric<F: FiniteField>(v: &FourForm<F>, cfg: &SamplerConfig) -> Result<(SampleReport, Vec<QuadricHit<F>>)> {
    let started = Instant::now();
    let pencil = PluckerPencil::new(v);
    let lift = |x: &F| UniPoly::constant(*x);
    let trial = |rng: &mut ChaCha8Rng| -> Option<Event<QuadricHit<F>>> {
        let (u, w, w2) = (random_vec::<F, _>(rng), random_vec::<F, _>(rng), random_vec::<F, _>(rng));
        let base = Subspace::span(8, &[u.clone(), w.clone()]);
        if base.dim() != 2 || Subspace::span(8, &[u.clone(), w.clone(), w2.clone()]).dim() != 3 {
            return None;
        }
        let pair = MultiIndex::from_slice(base.pivots()).expect("two pivots");
        let pair_idx = subsets(8, 2).iter().position(|&p| p == pair).expect("a pair");
        let (o0, o1) = (plucker(&u, &w), plucker(&u, &w2));
        let omega: Vec<UniPoly<F>> = o0.iter().zip(&o1).map(|(a, b)| UniPoly::linear(*a, *b)).collect();
        let pf = quadric_value_in_chart(&pencil, pair, &omega, &lift);
        let (q, rem) = pf.div_rem(&omega[pair_idx]);
        debug_assert!(rem.is_zero());
        if let Some(t) = quadratic_roots(&q).into_iter().next() {
            let wt: Vec<F> = w.iter().zip(&w2).map(|(a, b)| *a + t * *b).collect();
            let u2 = Subspace::span(8, &[u.clone(), wt]);
            match rank_stratum_g28(v, &u2) {
                Ok(G28Label::Quadric) => {}
                _ => return Some(Event::Degenerate),
            }
            let Ok(u4) = u4_witness_g28(v, &u2) else { return Some(Event::Degenerate) };
            let Ok(u6) = u6_witness_g28(v, &u2, &u4) else { return Some(Event::Degenerate) };
            return Some(Event::Hit(QuadricHit { u2, u4, u6 }));
        }
        None
    };
    let merged = run_chunks(cfg, trial);
    let rep = report::<F, _>(
        "quadric",
        cfg,
        &merged,
        |h| serde_json::json!({ "U2": h.u2.to_json(), "U4": h.u4.to_json(), "U6": h.u6.to_json() }),
        started,
    );
    Ok((rep, merged.hits))
}

/// `U₆ = U₂ + ker(induced form)` at a rank-2 point; checked against the flag condition.
pub fn moduli_witness<F: Field>(v: &FourForm<F>, u2: &Subspace<F>) -> Result<Subspace<F>> {
    let a = induced_two_form(v, u2)?;
    if a.rank() != 2 {
        return Err(Error::Precondition(format!("induced form has rank {}, expected 2", a.rank())));
    }
    let mut vecs = u2.basis().to_vec();
    vecs.extend(a.kernel_basis().iter().map(|k| u2.lift(k)));
    let u6 = Subspace::from_basis(8, &vecs)?;
    let pattern: WedgePattern = patterns::MODULI.parse()?;
    if !pattern.subspace(&Flag::new(vec![u2.clone(), u6.clone()])?)?.contains(&v.to_dense()) {
        return Err(Error::Inconclusive("U₆ witness fails its flag condition".into()));
    }
    Ok(u6)
}

/// Points of D by rejection in the chart `⟨e₁ + a, e₂ + b⟩`, `a, b ∈ ⟨e₃…e₈⟩`: a trial
/// survives when all fifteen 4×4 Pfaffians of the induced 6×6 form vanish, evaluated lazily.
/// Survivors are re-checked with the full rank computation; rank 0 counts as degenerate.
pub fn sample_moduli<F: FiniteField>(v: &FourForm<F>, cfg: &SamplerConfig) -> Result<(SampleReport, Vec<ModuliHit<F>>)> {
    let started = Instant::now();
    let pencil = PluckerPencil::new(v);
    let pairs = subsets(8, 2);
    let pair_of = |a: usize, b: usize| pairs.iter().position(|p| p.0 == (1 << a) | (1 << b)).expect("a pair");
    // Entries (a,b) of the 6×6 block, indexed into [0, 15) over K = {2..7}.
    let k_pairs: Vec<(usize, usize)> = subsets(6, 2).iter().map(|p| (p.indices()[0] + 2, p.indices()[1] + 2)).collect();
    let k_index = |a: usize, b: usize| k_pairs.iter().position(|&p| p == (a + 2, b + 2)).expect("a pair");
    let quads: Vec<[usize; 3]> = subsets(6, 4)
        .iter()
        .map(|q| {
            let [a, b, c, d] = q.indices()[..] else { unreachable!() };
            [0, 1, 2].map(|s| match s {
                0 => k_index(a, b) * 15 + k_index(c, d),
                1 => k_index(a, c) * 15 + k_index(b, d),
                _ => k_index(a, d) * 15 + k_index(b, c),
            })
        })
        .collect();
    let idx01 = pair_of(0, 1);
    let chart_pairs: Vec<(usize, usize, usize)> = (2..8).flat_map(|j| (j + 1..8).map(move |k| (j, k))).map(|(j, k)| (j, k, pair_of(j, k))).collect();
    let zero_col: Vec<usize> = (2..8).map(|k| pair_of(0, k)).collect();
    let one_col: Vec<usize> = (2..8).map(|k| pair_of(1, k)).collect();
    let id = |x: &F| *x;
    let trial = |rng: &mut ChaCha8Rng| -> Option<Event<ModuliHit<F>>> {
        let a: [F; 8] = std::array::from_fn(|i| if i < 2 { F::zero() } else { F::random(rng) });
        let b: [F; 8] = std::array::from_fn(|i| if i < 2 { F::zero() } else { F::random(rng) });
        let mut omega = [F::zero(); 28];
        omega[idx01] = F::one();
        for k in 2..8 {
            omega[zero_col[k - 2]] = b[k];
            omega[one_col[k - 2]] = -a[k];
        }
        for &(j, k, c) in &chart_pairs {
            omega[c] = a[j] * b[k] - a[k] * b[j];
        }
        let mut cache: [Option<F>; 15] = [None; 15];
        let mut entry = |e: usize| *cache[e].get_or_insert_with(|| pencil.entry(k_pairs[e].0, k_pairs[e].1, &omega, &id));
        for q in &quads {
            let pf = q.iter().enumerate().fold(F::zero(), |acc, (s, &code)| {
                let term = entry(code / 15) * entry(code % 15);
                if s == 1 {
                    acc - term
                } else {
                    acc + term
                }
            });
            if !pf.is_zero() {
                return None;
            }
        }
        let mut u = a.to_vec();
        u[0] = F::one();
        let mut w = b.to_vec();
        w[1] = F::one();
        let u2 = Subspace::span(8, &[u, w]);
        match rank_stratum_g28(v, &u2) {
            Ok(G28Label::Moduli) => moduli_witness(v, &u2).ok().map(|u6| Event::Hit(ModuliHit { u2, u6 })).or(Some(Event::Degenerate)),
            _ => Some(Event::Degenerate),
        }
    };
    let merged = run_chunks(cfg, trial);
    let rep = report::<F, _>("moduli", cfg, &merged, |h| serde_json::json!({ "U2": h.u2.to_json(), "U6": h.u6.to_json() }), started);
    Ok((rep, merged.hits))
}

/// Points of the quartic by rejection on `rank q ≤ 6`.
pub fn sample_quartic<F: FiniteField>(v: &FourForm<F>, cfg: &SamplerConfig) -> Result<(SampleReport, Vec<QuarticHit<F>>)> {
    let started = Instant::now();
    let eval = QuarticEvaluator::new(v)?;
    let trial = |rng: &mut ChaCha8Rng| -> Option<Event<QuarticHit<F>>> {
        let x = random_vec::<F, _>(rng);
        if x.iter().all(Ring::is_zero) {
            return None;
        }
        let rank = eval.q(&x).rank();
        (rank <= 6).then(|| Event::Hit(QuarticHit { x: normalize(&x), rank }))
    };
    let merged = run_chunks(cfg, trial);
    let rep = report::<F, _>("quartic", cfg, &merged, |h| serde_json::json!({ "x": vector_json(&h.x), "rank_q": h.rank }), started);
    Ok((rep, merged.hits))
}

/// Kummer points by rejection: quartic membership, then one probe line (order at least 6),
/// then the full order test on eight lines.
pub fn sample_kummer<F: FiniteField>(v: &FourForm<F>, cfg: &SamplerConfig) -> Result<(SampleReport, Vec<KummerHit<F>>)> {
    let started = Instant::now();
    let eval = QuarticEvaluator::new(v)?;
    let trial = |rng: &mut ChaCha8Rng| -> Option<Event<KummerHit<F>>> {
        let x = random_vec::<F, _>(rng);
        if x.iter().all(Ring::is_zero) {
            return None;
        }
        let rank = eval.q(&x).rank();
        if rank > 6 {
            return None;
        }
        let d = random_vec::<F, _>(rng);
        match eval.mu_on_line(&x, &d).ok()?.vanishing_order() {
            Some(o) if o < 6 => return None,
            _ => {}
        }
        let verdict = eval.kummer_test(&x, 8, rng).ok()?;
        match verdict.label {
            P7Label::Kummer => Some(Event::Hit(KummerHit { x: normalize(&x), orders: verdict.orders, rank })),
            P7Label::Degenerate => Some(Event::Degenerate),
            _ => None,
        }
    };
    let merged = run_chunks(cfg, trial);
    let rep = report::<F, _>(
        "kummer",
        cfg,
        &merged,
        |h| serde_json::json!({ "x": vector_json(&h.x), "orders": h.orders, "rank_q": h.rank }),
        started,
    );
    Ok((rep, merged.hits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::strata::quadric_gradient;
    use crate::theta::{random_form, SampleMode};

    type F11 = Fp<11>;

    #[test]
    fn quadratic_roots_are_roots() {
        type F = Fp<13>;
        let f = UniPoly::new(vec![F::new(6), F::new(5), F::new(1)]);
        let mut r = quadratic_roots(&f);
        r.sort();
        assert_eq!(r, vec![F::new(10), F::new(11)]);
        assert!(quadratic_roots(&UniPoly::new(vec![F::new(1), F::new(0), F::new(1)])).len() != 1);
        assert_eq!(quadratic_roots(&UniPoly::new(vec![F::new(3), F::new(1)])), vec![F::new(10)]);
    }

    #[test]
    fn quadric_hits_are_smooth_points_with_witnesses() {
        let v: FourForm<F11> = random_form(3, SampleMode::CartanConjugate);
        let cfg = SamplerConfig::new(1, 5, 10_000);
        let (rep, hits) = sample_quadric(&v, &cfg).unwrap();
        assert_eq!(rep.hits, 5);
        assert_eq!(rep.witnesses.len(), 5);
        assert!(!rep.exhausted);
        let pencil = PluckerPencil::new(&v);
        for h in &hits {
            assert_eq!(rank_stratum_g28(&v, &h.u2).unwrap(), G28Label::Quadric);
            assert!(h.u2.dim() == 2 && h.u4.contains_subspace(&h.u2) && h.u6.contains_subspace(&h.u4));
            let r = h.u2.basis();
            assert!(super::super::quadric_value(&pencil, &r[0], &r[1]).unwrap().is_zero());
            assert!(!quadric_gradient(&pencil, &h.u2).unwrap().is_zero());
        }
        assert_eq!(sample_quadric(&v, &cfg).unwrap().0, rep);
    }

    #[test]
    fn quartic_hits_have_low_rank_and_reports_are_reproducible() {
        let v: FourForm<F11> = random_form(3, SampleMode::CartanConjugate);
        let cfg = SamplerConfig::new(2, 10, 100_000);
        let (rep, hits) = sample_quartic(&v, &cfg).unwrap();
        assert_eq!(rep.hits, 10);
        let eval = QuarticEvaluator::new(&v).unwrap();
        for h in &hits {
            assert!(eval.is_member(&h.x));
            assert!(eval.mu(&h.x).unwrap().is_zero());
        }
        assert_eq!(serde_json::to_string(&rep).unwrap(), serde_json::to_string(&sample_quartic(&v, &cfg).unwrap().0).unwrap());
        assert!(serde_json::to_value(&rep).unwrap().get("runtime_ms").is_none());
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let v: FourForm<F11> = random_form(3, SampleMode::CartanConjugate);
        let (rep, hits) = sample_moduli(&v, &SamplerConfig::new(3, 1, 1000)).unwrap();
        assert!(rep.exhausted);
        assert_eq!(rep.trials, 1000);
        assert!(hits.is_empty());
    }

    #[test]
    fn moduli_sampler_on_a_small_field() {
        type F5 = Fp<5>;
        let v: FourForm<F5> = random_form(8, SampleMode::CartanConjugate);
        let (rep, hits) = sample_moduli(&v, &SamplerConfig::new(4, 2, 2_000_000)).unwrap();
        assert_eq!(rep.hits, 2, "{rep:?}");
        for h in &hits {
            assert_eq!(rank_stratum_g28(&v, &h.u2).unwrap(), G28Label::Moduli);
            assert_eq!(h.u6.dim(), 6);
        }
    }
}
