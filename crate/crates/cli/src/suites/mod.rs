//! Verification suites. Each suite checks a fixed list of registered claims and returns one
//! certificate per claim, in registry order.

mod algebra;
mod cartan;
mod covariants;
mod grass;
mod quartic;
mod ruling;

use std::time::Instant;

use coble_core::exterior::FormFile;
use coble_core::field::FiniteField;
use coble_core::theta::{cartan_sample, form_hash, gl_action, is_regular, random_sl, regular_form, FourForm, SampleMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::certificate::{Certificate, Params};
use crate::claims::{lookup, registry};

/// Primes accepted by `--prime`.
pub const SUPPORTED_PRIMES: [u64; 9] = [7, 11, 13, 17, 19, 23, 101, 1009, 2147483647];

/// Default prime for suites over small fields.
pub const DEFAULT_PRIME: u64 = 11;
/// Default prime for checks that need a large field: the Grassmannian duality round trip and
/// the cube structure of `μ` along lines.
pub const LARGE_PRIME: u64 = 2147483647;

/// Runs `$body` with `$F` bound to `Fp<p>` for a supported runtime prime `p`.
#[macro_export]
macro_rules! with_prime {
    ($p:expr, $F:ident => $body:expr) => {
        match $p {
            7 => { type $F = coble_core::field::Fp<7>; $body }
            11 => { type $F = coble_core::field::Fp<11>; $body }
            13 => { type $F = coble_core::field::Fp<13>; $body }
            17 => { type $F = coble_core::field::Fp<17>; $body }
            19 => { type $F = coble_core::field::Fp<19>; $body }
            23 => { type $F = coble_core::field::Fp<23>; $body }
            101 => { type $F = coble_core::field::Fp<101>; $body }
            1009 => { type $F = coble_core::field::Fp<1009>; $body }
            2147483647 => { type $F = coble_core::field::Fp<2147483647>; $body }
            other => Err($crate::UsageError(format!("unsupported prime {other}; supported: {:?}", $crate::suites::SUPPORTED_PRIMES))),
        }
    };
}

/// Where the four-form comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum FormInput {
    File { path: String, form: FormFile },
    /// Cartan coordinates, conjugated by a random `SL₈` element drawn from the seed.
    Cartan(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub prime: Option<u64>,
    pub seed: u64,
    pub trials: usize,
    pub budget: u64,
    pub form: Option<FormInput>,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { prime: None, seed: 0, trials: 20, budget: 10_000_000, form: None, timings: false }
    }
}

impl Options {
    /// The prime for a suite whose default is `default`: `--prime`, else the prime declared by
    /// the form file, else `default`.
    pub fn prime_or(&self, default: u64) -> u64 {
        if let Some(p) = self.prime {
            return p;
        }
        match &self.form {
            Some(FormInput::File { form: FormFile { field: coble_core::exterior::FieldSpec::Fp(q), .. }, .. }) => *q,
            _ => default,
        }
    }

    pub(crate) fn params_exact(&self) -> Params {
        Params::exact(self.seed, self.trials, self.budget)
    }
}

/// A four-form over `F` with its provenance.
pub(crate) struct Drawn<F> {
    pub v: FourForm<F>,
    pub source: String,
}

impl<F: FiniteField> Drawn<F> {
    pub fn params(&self, opts: &Options) -> Params {
        Params {
            field: format!("F_{}", F::ORDER),
            seed: opts.seed,
            trials: opts.trials,
            budget: opts.budget,
            form_source: Some(self.source.clone()),
            form_hash: Some(form_hash(&self.v)),
        }
    }
}

/// Stride between the seeds of the first and the second draw.
const RESAMPLE_STRIDE: u64 = 1_000_003;

fn draw_form<F: FiniteField>(opts: &Options, attempt: u64) -> coble_core::Result<Drawn<F>> {
    let not_regular = || {
        coble_core::Error::Inconclusive(format!(
            "the form is not regular over F_{}: its centralizer in e7 is larger than a Cartan subalgebra; resample with another seed or use a larger prime",
            F::ORDER
        ))
    };
    match &opts.form {
        Some(FormInput::File { path, form }) => {
            let v = form.to_four_form::<F>()?;
            if !is_regular(&v)? {
                return Err(not_regular());
            }
            Ok(Drawn { v, source: format!("file {path}") })
        }
        Some(FormInput::Cartan(c)) => {
            let c: Vec<F> = c.iter().map(|&x| F::from_i64(x)).collect();
            let h = cartan_sample(&c)?;
            let g = random_sl::<F>(&mut ChaCha8Rng::seed_from_u64(opts.seed), 8);
            let v = gl_action(&g, &h)?;
            if !is_regular(&v)? {
                return Err(not_regular());
            }
            Ok(Drawn { v, source: format!("cartan {c:?} conjugated by seed {}", opts.seed) })
        }
        None => {
            let base = opts.seed.wrapping_add(attempt.wrapping_mul(RESAMPLE_STRIDE));
            let (v, k) = regular_form::<F>(base, SampleMode::Uniform, 64)?;
            Ok(Drawn { v, source: format!("uniform draw {}", base.wrapping_add(k)) })
        }
    }
}

/// The form selected by `opts`: the given one, or the first regular uniform draw.
pub(crate) fn draw<F: FiniteField>(opts: &Options) -> coble_core::Result<Drawn<F>> {
    draw_form(opts, 0)
}

/// Runs `run` on a drawn form. When the form is generated and a claim that allows it did not
/// pass, every such claim is rerun once on a fresh draw; the other claims keep the first
/// result.
pub(crate) fn with_resample<F: FiniteField>(opts: &Options, ids: &[&str], run: impl Fn(&Drawn<F>, Params) -> Vec<Certificate>) -> Vec<Certificate> {
    let first = match draw_form::<F>(opts, 0) {
        Ok(d) => {
            let params = d.params(opts);
            run(&d, params)
        }
        Err(e) => return unavailable(opts, ids, &format!("F_{}", F::ORDER), &e.to_string()),
    };
    let allows = |c: &Certificate| lookup(&c.claim_id).is_some_and(|cl| cl.resample);
    if opts.form.is_some() || first.iter().all(|c| c.passed() || !allows(c)) {
        return first;
    }
    let second = match draw_form::<F>(opts, 1) {
        Ok(d) => {
            let params = d.params(opts);
            run(&d, params)
        }
        Err(_) => return first,
    };
    first
        .into_iter()
        .zip(second)
        .map(|(a, mut b)| {
            if allows(&a) {
                b.note(format!("second draw; the first draw ({}) gave verdict {:?}", a.params.form_source.clone().unwrap_or_default(), a.verdict));
                b
            } else {
                a
            }
        })
        .collect()
}

/// Inconclusive certificates for claims that could not be attempted.
pub(crate) fn unavailable(opts: &Options, ids: &[&str], field: &str, reason: &str) -> Vec<Certificate> {
    ids.iter()
        .map(|id| {
            let mut params = opts.params_exact();
            params.field = field.to_string();
            let mut c = Certificate::new(id, params);
            c.inconclusive(reason);
            c.finish()
        })
        .collect()
}

/// Claim ids checked by `suite`, in registry order.
pub fn claim_ids(suite: &str) -> Vec<&'static str> {
    registry().iter().filter(|c| c.suite == suite).map(|c| c.id.as_str()).collect()
}

/// Runs one suite by name, or all of them for `"all"`.
pub fn run_suite(suite: &str, opts: &Options) -> Result<Vec<Certificate>, crate::UsageError> {
    if suite == "all" {
        let mut out = Vec::new();
        for s in crate::claims::SUITES {
            out.extend(run_suite(s, opts)?);
        }
        return Ok(out);
    }
    if let Some(p) = opts.prime {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(crate::UsageError(format!("unsupported prime {p}; supported: {SUPPORTED_PRIMES:?}")));
        }
    }
    if let (Some(p), Some(FormInput::File { form: FormFile { field: coble_core::exterior::FieldSpec::Fp(q), .. }, .. })) = (opts.prime, &opts.form) {
        if p != *q {
            return Err(crate::UsageError(format!("--prime {p} conflicts with the form file field F_{q}")));
        }
    }
    let started = Instant::now();
    let mut certs = match suite {
        "cartan" => cartan::run(opts),
        "moduli" => with_prime!(opts.prime_or(DEFAULT_PRIME), F => Ok::<_, crate::UsageError>(grass::run_moduli::<F>(opts)))?,
        "quadric-duality" => with_prime!(opts.prime_or(LARGE_PRIME), F => Ok::<_, crate::UsageError>(grass::run_quadric::<F>(opts)))?,
        "quartic-duality" => {
            let mut out = with_prime!(opts.prime_or(DEFAULT_PRIME), F => Ok::<_, crate::UsageError>(quartic::run_self_dual::<F>(opts)))?;
            out.extend(with_prime!(opts.prime_or(LARGE_PRIME), F => Ok::<_, crate::UsageError>(quartic::run_cube::<F>(opts)))?);
            out
        }
        "ruling" => with_prime!(opts.prime_or(DEFAULT_PRIME), F => Ok::<_, crate::UsageError>(ruling::run::<F>(opts)))?,
        "cohomology" => algebra::run_cohomology(opts),
        "enumerative" => algebra::run_enumerative(opts),
        "covariants" => with_prime!(opts.prime_or(DEFAULT_PRIME), F => Ok::<_, crate::UsageError>(covariants::run::<F>(opts)))?,
        other => return Err(crate::UsageError(format!("unknown suite `{other}`; expected one of {:?} or `all`", crate::claims::SUITES))),
    };
    if opts.timings {
        let ms = started.elapsed().as_millis() as u64;
        for c in &mut certs {
            c.runtime_ms = Some(ms);
        }
    }
    Ok(certs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_precedence() {
        let mut o = Options::default();
        assert_eq!(o.prime_or(11), 11);
        o.form = Some(FormInput::File { path: "f".into(), form: coble_core::exterior::parse_form_file("field: Fp 13\n1 2 3 4 : 1\n").unwrap() });
        assert_eq!(o.prime_or(11), 13);
        o.prime = Some(7);
        assert_eq!(o.prime_or(11), 7);
    }

    #[test]
    fn unknown_suites_and_primes_are_usage_errors() {
        assert!(run_suite("nope", &Options::default()).is_err());
        let o = Options { prime: Some(9), ..Options::default() };
        assert!(run_suite("moduli", &o).is_err());
    }
}
