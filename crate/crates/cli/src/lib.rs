//! The `coble` command-line tool: verification suites that check registered claims about a
//! four-form in eight variables and record each outcome as a JSON certificate, plus front ends
//! to the samplers, Bott–Borel–Weil, localization and the quadric equation.
//!
//! Exit codes: 0 when everything passed, 1 on a failed check, 2 when a result is
//! inconclusive (for example a degenerate form or an exhausted budget), 3 on usage errors.

pub mod certificate;
pub mod claims;
pub mod suites;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use coble_core::exterior::parse_form_file;
use coble_core::field::FiniteField;
use coble_core::rep::{bbw, FlagType, Weight};
use coble_core::schubert::{integrate, parse_space, ClassExpr};
use coble_core::strata::{ac_fiber_over_kummer, sample_kummer, sample_moduli, sample_quadric, sample_quartic, SamplerConfig};

use certificate::CertificateBundle;
use suites::{FormInput, Options, DEFAULT_PRIME};

/// A problem with the command line or its inputs; exits with code 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "coble", version, about = "Verify claims about Coble hypersurfaces attached to a four-form in eight variables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite and emit certificates.
    Verify(VerifyArgs),
    /// Sample points of a locus and emit a sample report.
    Sample(SampleArgs),
    /// Cohomology of an irreducible homogeneous bundle by Bott–Borel–Weil.
    Bbw(BbwArgs),
    /// Integrate a characteristic class expression by localization.
    Integrate(IntegrateArgs),
    /// Emit the interpolated equation of a Coble hypersurface.
    Equation(EquationArgs),
    /// List the claims registry.
    Claims,
}

#[derive(Args, Debug, Clone)]
struct FormArgs {
    /// Four-form file.
    #[arg(long, conflicts_with = "cartan")]
    form: Option<PathBuf>,
    /// Cartan coordinates c1,...,c7; the form is conjugated by a random SL8 element.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    cartan: Option<Vec<i64>>,
    #[arg(long, env = "COBLE_PRIME")]
    prime: Option<u64>,
    #[arg(long, env = "COBLE_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// cartan, moduli, quadric-duality, quartic-duality, ruling, cohomology, enumerative,
    /// covariants or all.
    suite: String,
    #[command(flatten)]
    form: FormArgs,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Directory receiving one certificate per claim and the bundle.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
    /// Record wall-clock times in certificates, which makes them non-reproducible.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Locus {
    Quadric,
    Moduli,
    Quartic,
    Kummer,
    AcFiber,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, value_enum)]
    locus: Locus,
    #[command(flatten)]
    form: FormArgs,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Kummer point for `--locus ac-fiber`, as eight comma-separated integers.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    point: Option<Vec<i64>>,
    /// Report file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BbwArgs {
    /// Flag type such as `2:8` or `1,4,7:8`.
    #[arg(long)]
    flag: String,
    /// Block weights, sub-bundle first, such as `0,0|1,1,1,1,0,0`.
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
}

#[derive(Args, Debug)]
struct IntegrateArgs {
    /// `G:2:8`, `P:7`, `Fl:1,4,7:8` or a bare flag type.
    #[arg(long)]
    space: String,
    /// Class expression such as `c19(G)*s3(dual(U4))`.
    #[arg(long)]
    expr: String,
    #[arg(long, env = "COBLE_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Hypersurface {
    Quadric,
}

#[derive(Args, Debug)]
struct EquationArgs {
    #[arg(value_enum)]
    which: Hypersurface,
    #[command(flatten)]
    form: FormArgs,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout().lock();
    match dispatch(cli.command, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut impl Write) -> Result<i32, UsageError> {
    match command {
        Command::Verify(a) => verify(a, out),
        Command::Sample(a) => sample(a, out),
        Command::Bbw(a) => {
            let flag: FlagType = a.flag.parse().map_err(usage)?;
            let w = Weight::parse(&flag, &a.weight).map_err(usage)?;
            let report = match bbw(&w) {
                None => serde_json::json!({ "flag": flag.to_string(), "weight": w.to_string(), "acyclic": true }),
                Some(c) => {
                    let dim = coble_core::rep::schur_dim(&c.module, flag.n).map_err(usage)?;
                    serde_json::json!({ "flag": flag.to_string(), "weight": w.to_string(), "acyclic": false, "degree": c.degree, "module": c.module, "dimension": dim.to_string() })
                }
            };
            emit(out, &pretty(&report))?;
            Ok(EXIT_PASS)
        }
        Command::Integrate(a) => {
            let flag = parse_space(&a.space).map_err(usage)?;
            let expr: ClassExpr = a.expr.parse().map_err(usage)?;
            let integral = integrate(&expr, &flag, a.seed).map_err(usage)?;
            emit(out, &pretty(&serde_json::to_value(&integral).expect("integrals serialize")))?;
            Ok(EXIT_PASS)
        }
        Command::Equation(a) => {
            let opts = options(&a.form, 0)?;
            with_prime!(opts.prime_or(DEFAULT_PRIME), F => equation::<F>(&opts, a.which, out))
        }
        Command::Claims => {
            emit(out, &pretty(&serde_json::to_value(claims::registry()).expect("claims serialize")))?;
            Ok(EXIT_PASS)
        }
    }
}

fn usage(e: impl fmt::Display) -> UsageError {
    UsageError(e.to_string())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), UsageError> {
    out.write_all(text.as_bytes()).map_err(|e| UsageError(format!("cannot write output: {e}")))
}

fn write_file(path: &Path, text: &str) -> Result<(), UsageError> {
    std::fs::write(path, text).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

fn options(form: &FormArgs, trials: usize) -> Result<Options, UsageError> {
    let input = match (&form.form, &form.cartan) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            let parsed = parse_form_file(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            Some(FormInput::File { path: path.display().to_string(), form: parsed })
        }
        (None, Some(c)) if c.len() == 7 => Some(FormInput::Cartan(c.clone())),
        (None, Some(c)) => return Err(UsageError(format!("--cartan takes 7 coordinates, got {}", c.len()))),
        (None, None) => None,
    };
    Ok(Options { prime: form.prime, seed: form.seed, trials, budget: form.budget, form: input, timings: false })
}

fn verify(a: VerifyArgs, out: &mut impl Write) -> Result<i32, UsageError> {
    let mut opts = options(&a.form, a.trials)?;
    opts.timings = a.timings;
    let certs = suites::run_suite(&a.suite, &opts)?;
    let bundle = CertificateBundle::new(&a.suite, certs);
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir).map_err(|e| UsageError(format!("cannot create {}: {e}", dir.display())))?;
        for c in &bundle.certificates {
            write_file(&dir.join(format!("{}.json", c.claim_id)), &(serde_json::to_string_pretty(c).expect("certificates serialize") + "\n"))?;
        }
        write_file(&dir.join("bundle.json"), &bundle.to_json())?;
    }
    if a.json {
        emit(out, &bundle.to_json())?;
    } else {
        emit(out, &bundle.to_text())?;
    }
    Ok(bundle.exit_code())
}

fn sample(a: SampleArgs, out: &mut impl Write) -> Result<i32, UsageError> {
    let opts = options(&a.form, 0)?;
    if a.point.is_some() != (a.locus == Locus::AcFiber) {
        return Err(UsageError("--point is required for --locus ac-fiber and not accepted otherwise".into()));
    }
    if a.point.as_ref().is_some_and(|x| x.len() != 8) {
        return Err(UsageError("--point takes 8 coordinates".into()));
    }
    let sampled = with_prime!(opts.prime_or(DEFAULT_PRIME), F => Ok::<_, UsageError>(sample_with::<F>(&opts, &a)))?;
    let (report, hits) = match sampled {
        Ok(x) => x,
        Err(e @ coble_core::Error::Inconclusive(_)) => {
            eprintln!("inconclusive: {e}");
            return Ok(EXIT_INCONCLUSIVE);
        }
        Err(e) => return Err(usage(e)),
    };
    let text = pretty(&report);
    match &a.out {
        Some(path) => write_file(path, &text)?,
        None => emit(out, &text)?,
    }
    Ok(if hits == 0 { EXIT_INCONCLUSIVE } else { EXIT_PASS })
}

/// The report of one sampler run and its number of hits.
fn sample_with<F: FiniteField>(opts: &Options, a: &SampleArgs) -> coble_core::Result<(serde_json::Value, usize)> {
    let drawn = suites::draw::<F>(opts)?;
    let cfg = SamplerConfig::new(opts.seed, a.count, opts.budget);
    let (report, hits) = match a.locus {
        Locus::Quadric => sample_quadric(&drawn.v, &cfg).map(|(r, h)| (r, h.len())),
        Locus::Moduli => sample_moduli(&drawn.v, &cfg).map(|(r, h)| (r, h.len())),
        Locus::Quartic => sample_quartic(&drawn.v, &cfg).map(|(r, h)| (r, h.len())),
        Locus::Kummer => sample_kummer(&drawn.v, &cfg).map(|(r, h)| (r, h.len())),
        Locus::AcFiber => {
            let x: Vec<F> = a.point.as_deref().unwrap_or_default().iter().map(|&c| F::from_i64(c)).collect();
            let scan = ac_fiber_over_kummer(&drawn.v, &x, opts.budget)?;
            let hyperplanes: Vec<serde_json::Value> = scan
                .hyperplanes
                .iter()
                .zip(&scan.u4s)
                .map(|(ell, u4)| serde_json::json!({ "ell": ell.iter().map(|c| c.to_json()).collect::<Vec<_>>(), "U4": u4.to_json() }))
                .collect();
            let report = serde_json::json!({
                "locus": "ac-fiber",
                "prime": F::ORDER,
                "form_source": drawn.source,
                "candidates": scan.candidates,
                "degenerate": scan.degenerate,
                "hits": hyperplanes.len(),
                "witnesses": hyperplanes,
            });
            let n = scan.hyperplanes.len();
            return Ok((report, n));
        }
    }?;
    let mut value = serde_json::to_value(&report).expect("reports serialize");
    value["form_source"] = serde_json::Value::String(drawn.source);
    Ok((value, hits))
}

fn equation<F: FiniteField>(opts: &Options, which: Hypersurface, out: &mut impl Write) -> Result<i32, UsageError> {
    let drawn = suites::draw::<F>(opts).map_err(usage)?;
    match which {
        Hypersurface::Quadric => {
            let eq = coble_core::covariants::quadric_equation(&drawn.v, opts.seed).map_err(usage)?;
            let report = serde_json::json!({ "hypersurface": "quadric", "prime": F::ORDER, "form_source": drawn.source, "equation": eq.to_json() });
            emit(out, &pretty(&report))?;
        }
    }
    Ok(EXIT_PASS)
}
