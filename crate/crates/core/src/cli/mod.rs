//! Command-line frontend.
//!
//! Exit codes: 0 when the checked statement holds (or a search found
//! something), 1 when it was evaluated and fails, 2 when the input could
//! not be evaluated.

pub mod config;
pub mod report;

use crate::classical::{
    bounds_table, coherence, welch_max_bound, welch_sum_lhs, welch_sum_rhs, FieldTag, WelchMax,
};
use crate::field::{Scalar, Valuation};
use crate::linalg::{inner, Config};
use crate::search::{classical_search, na_search, GeneratorSet, SearchParams};
use crate::symtensor::sym_dim;
use crate::welch::{
    check_first_order, check_general, check_higher_order, equiangular_check, zauner_check,
    ZaunerRecord,
};
use clap::{Parser, Subcommand};
use config::{format_complex, ConfigFile};
use report::{digest, to_canonical_json, Report};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Tolerance for the floating-point identity checks of `verify-classical`.
pub const CLASSICAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError(String);

impl CliError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        Self(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "nawelch",
    version,
    about = "Exact non-Archimedean Welch bounds and classical packing bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the non-Archimedean Welch bound of order M on an `na` config.
    VerifyNa {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1)]
        order: u32,
        /// Use the form without the unit-norm hypothesis.
        #[arg(long)]
        general: bool,
    },
    /// Check the Zauner-type conditions on d^2 vectors.
    ZaunerNa {
        #[arg(long)]
        config: PathBuf,
    },
    /// Check norm A and |<tau_j, tau_k>|^2 of valuation V for all pairs.
    EquiangularNa {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        norm: String,
        #[arg(long = "gamma-val", allow_hyphen_values = true)]
        gamma_val: String,
    },
    /// Check the classical Welch bounds on an `r` or `c` config.
    VerifyClassical {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1)]
        order: u32,
    },
    /// Print the catalog of classical lower bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        field: String,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        orders: Vec<u32>,
    },
    /// Random-restart coherence minimization.
    SearchClassical {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 32)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        #[arg(long, default_value_t = 0.3)]
        initial_step: f64,
        #[arg(long, default_value_t = 0.99)]
        shrink: f64,
    },
    /// Enumerate equiangular families over Q(t) from a generator file.
    SearchNa {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        norm: String,
        #[arg(long = "gamma-val", allow_hyphen_values = true)]
        gamma_val: String,
    },
}

struct Outcome {
    json: String,
    code: i32,
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::new(format!("{}: {e}", path.display())))
}

fn read_config(path: &Path) -> Result<(Vec<u8>, ConfigFile), CliError> {
    let bytes = read(path)?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| CliError::new(format!("{}: not UTF-8: {e}", path.display())))?;
    let cf = ConfigFile::from_json(text)
        .map_err(|e| CliError::new(format!("{}: {e}", path.display())))?;
    Ok((bytes, cf))
}

fn parse_arg_scalar(name: &str, text: &str) -> Result<Scalar, CliError> {
    text.parse()
        .map_err(|e| CliError::new(format!("--{name}: {e}")))
}

fn parse_valuation(text: &str) -> Result<Valuation, CliError> {
    text.parse()
        .map_err(|e| CliError::new(format!("--gamma-val: {e}")))
}

fn parse_field(text: &str) -> Result<FieldTag, CliError> {
    text.parse().map_err(CliError::from)
}

fn finish<T: Serialize>(
    argv: &[String],
    digest: String,
    result: T,
    ok: bool,
    verdict: &str,
) -> Outcome {
    let report = Report {
        command: argv,
        input_digest: digest,
        result,
        verdict,
    };
    Outcome {
        json: to_canonical_json(&report),
        code: if ok { 0 } else { 1 },
    }
}

fn config_rows(config: &Config) -> Vec<Vec<String>> {
    config
        .vectors()
        .iter()
        .map(|v| v.entries().iter().map(Scalar::to_string).collect())
        .collect()
}

#[derive(Serialize)]
struct EquiangularResult {
    n: usize,
    d: usize,
    norm: String,
    gamma_valuation: Valuation,
    /// gamma = 0, i.e. mutually orthogonal vectors.
    gamma_is_zero: bool,
    norms_match: bool,
    pair_valuations: Vec<(usize, usize, Valuation)>,
    equiangular: bool,
}

#[derive(Serialize)]
struct ClassicalResult {
    n: usize,
    d: usize,
    field: FieldTag,
    m: u32,
    coherence: f64,
    welch_sum_lhs: f64,
    welch_sum_rhs: f64,
    sum_bound_holds: bool,
    welch_max: Option<WelchMax>,
    max_bound_holds: Option<bool>,
    tolerance: f64,
}

#[derive(Serialize)]
struct ClassicalSearchResult {
    params: SearchParams,
    field: FieldTag,
    coherence: f64,
    best_bound: f64,
    gap: f64,
    vectors: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct NaHit {
    n: usize,
    vectors: Vec<Vec<String>>,
    zauner: Option<ZaunerRecord>,
}

#[derive(Serialize)]
struct NaSearchResult {
    d: usize,
    nmax: usize,
    norm: String,
    gamma_valuation: Valuation,
    generators: Vec<String>,
    count: usize,
    hits: Vec<NaHit>,
}

fn dispatch(cmd: Command, argv: &[String]) -> Result<Outcome, CliError> {
    match cmd {
        Command::VerifyNa {
            config,
            order,
            general,
        } => {
            let (bytes, cf) = read_config(&config)?;
            let cfg = cf.na_config()?;
            if order == 0 {
                return Err(CliError::new("--order must be at least 1"));
            }
            let cert = cf.certificate(sym_dim(cfg.d(), order))?;
            let report = if general {
                check_general(&cfg, order, cert.as_ref())
            } else if order == 1 {
                check_first_order(&cfg, cert.as_ref())
            } else {
                check_higher_order(&cfg, order, cert.as_ref())
            };
            let report = report.map_err(|e| match e {
                crate::Error::NotUnitNorm { .. } => CliError::new(format!(
                    "{e}; use --general for families without unit norms"
                )),
                other => other.into(),
            })?;
            let ok = report.holds;
            Ok(finish(
                argv,
                digest(&[&bytes]),
                report,
                ok,
                if ok { "holds" } else { "fails" },
            ))
        }
        Command::ZaunerNa { config } => {
            let (bytes, cf) = read_config(&config)?;
            let cfg = cf.na_config()?;
            let cert = cf.certificate(cfg.d())?;
            let record = zauner_check(&cfg, cert.as_ref())?;
            let ok = record.satisfied;
            Ok(finish(
                argv,
                digest(&[&bytes]),
                record,
                ok,
                if ok { "satisfied" } else { "not-satisfied" },
            ))
        }
        Command::EquiangularNa {
            config,
            norm,
            gamma_val,
        } => {
            let (bytes, cf) = read_config(&config)?;
            let cfg = cf.na_config()?;
            let a = parse_arg_scalar("norm", &norm)?;
            let gamma = parse_valuation(&gamma_val)?;
            let vs = cfg.vectors();
            let mut pairs = Vec::new();
            for j in 0..vs.len() {
                for k in j + 1..vs.len() {
                    pairs.push((j, k, inner(&vs[j], &vs[k])?.valuation()));
                }
            }
            let ok = equiangular_check(&cfg, &a, gamma);
            let result = EquiangularResult {
                n: cfg.n(),
                d: cfg.d(),
                norm: a.to_string(),
                gamma_valuation: gamma,
                gamma_is_zero: gamma.is_infinite(),
                norms_match: cfg.norms().iter().all(|x| *x == a),
                pair_valuations: pairs,
                equiangular: ok,
            };
            let digest = digest(&[&bytes, norm.as_bytes(), gamma_val.as_bytes()]);
            Ok(finish(
                argv,
                digest,
                result,
                ok,
                if ok { "equiangular" } else { "not-equiangular" },
            ))
        }
        Command::VerifyClassical { config, order } => {
            let (bytes, cf) = read_config(&config)?;
            let cfg = cf.classical_config()?;
            if order == 0 {
                return Err(CliError::new("--order must be at least 1"));
            }
            if cfg.n() < 2 {
                return Err(CliError::new("at least two vectors are required"));
            }
            let coh = coherence(&cfg)?;
            let lhs = welch_sum_lhs(&cfg, order);
            let rhs = welch_sum_rhs(cfg.n(), cfg.d(), order);
            let sum_ok = lhs >= rhs - CLASSICAL_TOL;
            let wm = if cfg.n() > cfg.d() {
                Some(welch_max_bound(cfg.n(), cfg.d(), order)?)
            } else {
                None
            };
            let max_ok = wm.map(|w| coh.powi(2 * order as i32) >= w.value - CLASSICAL_TOL);
            let ok = sum_ok && max_ok.unwrap_or(true);
            let result = ClassicalResult {
                n: cfg.n(),
                d: cfg.d(),
                field: cfg.field(),
                m: order,
                coherence: coh,
                welch_sum_lhs: lhs,
                welch_sum_rhs: rhs,
                sum_bound_holds: sum_ok,
                welch_max: wm,
                max_bound_holds: max_ok,
                tolerance: CLASSICAL_TOL,
            };
            Ok(finish(
                argv,
                digest(&[&bytes]),
                result,
                ok,
                if ok { "holds" } else { "fails" },
            ))
        }
        Command::Bounds {
            n,
            d,
            field,
            orders,
        } => {
            let tag = parse_field(&field)?;
            let table = bounds_table(n, d, tag, &orders)?;
            let key = format!("bounds n={n} d={d} field={tag} orders={orders:?}");
            Ok(finish(
                argv,
                digest(&[key.as_bytes()]),
                table,
                true,
                "computed",
            ))
        }
        Command::SearchClassical {
            n,
            d,
            field,
            trials,
            seed,
            steps,
            initial_step,
            shrink,
        } => {
            let tag = parse_field(&field)?;
            let params = SearchParams {
                d,
                n,
                trials,
                steps,
                initial_step,
                shrink,
                seed,
            };
            let r = classical_search(&params, tag)?;
            let vectors = r
                .best
                .vectors()
                .iter()
                .map(|v| v.entries().iter().map(|&z| format_complex(z)).collect())
                .collect();
            let key = serde_json::to_string(&params).expect("params") + &tag.to_string();
            let result = ClassicalSearchResult {
                params,
                field: tag,
                coherence: r.coherence,
                best_bound: r.best_bound,
                gap: r.gap,
                vectors,
            };
            Ok(finish(
                argv,
                digest(&[key.as_bytes()]),
                result,
                true,
                "found",
            ))
        }
        Command::SearchNa {
            d,
            nmax,
            gens,
            norm,
            gamma_val,
        } => {
            let bytes = read(&gens)?;
            let items: Vec<String> = serde_json::from_slice(&bytes).map_err(|e| {
                CliError::new(format!(
                    "{}: line {}, column {}: expected a JSON array of scalar strings: {e}",
                    gens.display(),
                    e.line(),
                    e.column()
                ))
            })?;
            let scalars = items
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    s.parse::<Scalar>().map_err(|e| {
                        CliError::new(format!("{}: generator[{i}]: {e}", gens.display()))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let gen = GeneratorSet::new(scalars)?;
            let a = parse_arg_scalar("norm", &norm)?;
            let gamma = parse_valuation(&gamma_val)?;
            let hits: Vec<NaHit> = na_search(d, nmax, &gen, &a, gamma)
                .into_iter()
                .map(|h| NaHit {
                    n: h.config.n(),
                    vectors: config_rows(&h.config),
                    zauner: h.zauner,
                })
                .collect();
            let ok = !hits.is_empty();
            let result = NaSearchResult {
                d,
                nmax,
                norm: a.to_string(),
                gamma_valuation: gamma,
                generators: gen.scalars().iter().map(Scalar::to_string).collect(),
                count: hits.len(),
                hits,
            };
            let key = format!("d={d} nmax={nmax} norm={a} gamma={gamma}");
            Ok(finish(
                argv,
                digest(&[&bytes, key.as_bytes()]),
                result,
                ok,
                if ok { "found" } else { "not-found" },
            ))
        }
    }
}

/// Runs the CLI on `argv` (program name first), writing the report to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).cloned().collect();
    match dispatch(cli.command, &echo) {
        Ok(outcome) => {
            let _ = writeln!(out, "{}", outcome.json);
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
