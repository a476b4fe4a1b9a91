//! Command line front end: argument parsing, job input, dispatch, rendering.
//!
//! Input is one JSON document `{"A": [[..]], "beta": [..], "column": j}`
//! with rationals as strings and a 1-based column. Flags override fields of
//! the document. Output is a JSON report carrying `"schema": 1`, or a short
//! text rendering with `--format text`.

pub mod report;

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classify::{nonresonant, reducibility, regular_holonomic};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, IntMatrix};
use crate::gammaseries::{
    eigenvalue_oracle, exponent_vector, loop_transport_check, operator_residual, truncated_eval, very_generic,
    SeriesSpec,
};
use crate::geometry::{gamma_a, refine_to_triangulation, t_infinity, t_zero, Configuration, Subdivision};
use crate::monodromy::{char_poly_infinity, char_poly_local, roots_multiset, sigma_set};
use crate::param::{Parameter, ParameterEntry};

use report::*;

pub const SEED_ENV: &str = "HYPERMONO_SEED";

#[derive(Parser, Debug)]
#[command(name = "hypermono", version, about = "Local monodromy of A-hypergeometric systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Regular subdivisions: Γ_A, T0, T∞, or a refining triangulation.
    Subdivide {
        #[arg(long, value_enum, default_value = "gamma")]
        which: WhichSubdivision,
        #[command(flatten)]
        common: Common,
    },
    /// Characteristic polynomials of local monodromy around x_col = 0 and ∞.
    Charpoly {
        #[arg(long, value_enum, default_value = "local")]
        which: WhichCharPoly,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalue phases read off Γ-series exponents on a refining triangulation.
    Oracle {
        #[command(flatten)]
        common: Common,
    },
    /// Truncated Γ-series: evaluation, operator residuals, loop transport.
    Series {
        #[arg(long, value_enum, default_value = "eval")]
        which: WhichSeries,
        /// Simplex as 1-based column indices, e.g. `2,4,5`.
        #[arg(long)]
        sigma: Option<String>,
        /// Coset representative on the columns outside σ (default zero).
        #[arg(long)]
        k: Option<String>,
        /// Evaluation point, comma separated reals.
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = 12)]
        truncation: u64,
        #[arg(long, default_value_t = 0.05)]
        radius: f64,
        #[arg(long, default_value_t = 64)]
        steps: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Nonresonance and reducibility of the monodromy representation.
    Classify {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Job file (JSON); `-` reads standard input.
    pub input: PathBuf,
    /// Comma separated rationals, overriding the job's `beta`.
    #[arg(long)]
    pub beta: Option<String>,
    /// 1-based column, overriding the job's `column`.
    #[arg(long)]
    pub col: Option<usize>,
    /// Seed for random refinements (HYPERMONO_SEED takes precedence).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Rewrite A in a basis of ZA when ZA ≠ Z^d.
    #[arg(long)]
    pub normalize_lattice: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhichSubdivision {
    Gamma,
    T0,
    Tinf,
    Triangulate,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhichCharPoly {
    Local,
    Infinity,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhichSeries {
    Eval,
    Residual,
    Loop,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// The job document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<ParameterEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

/// A validated job: configuration, parameter, 0-based column.
struct Job {
    cfg: Configuration,
    beta: Option<Parameter>,
    col: Option<usize>,
    seed: u64,
    format: Format,
}

impl Job {
    fn col(&self) -> Result<usize> {
        self.col
            .ok_or_else(|| Error::Input("a column is required (--col or \"column\")".into()))
    }

    fn beta(&self) -> Result<&Parameter> {
        self.beta
            .as_ref()
            .ok_or_else(|| Error::Input("a parameter is required (--beta or \"beta\")".into()))
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Input(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("{SEED_ENV} is not an unsigned integer: {s}"))),
        Err(_) => Ok(flag.unwrap_or(0)),
    }
}

fn build_job(common: &Common) -> Result<Job> {
    let text = read_input(&common.input)?;
    let spec: JobSpec = serde_json::from_str(&text).map_err(|e| Error::Input(format!("malformed job: {e}")))?;
    let rows: Vec<Vec<_>> = spec.a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let matrix = IntMatrix::from_int_rows(rows)?;
    let beta = match (&common.beta, &spec.beta) {
        (Some(s), _) => Some(Parameter::parse_list(s)?),
        (None, Some(entries)) => Some(Parameter::from_entries(entries)?),
        (None, None) => None,
    };
    if let Some(b) = &beta {
        if b.len() != matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "beta has {} entries, A has {} rows",
                b.len(),
                matrix.rows()
            )));
        }
    }
    let (cfg, beta) = if common.normalize_lattice {
        let (cfg, beta, _) = Configuration::normalized(&matrix, beta.as_ref())?;
        (cfg, beta)
    } else {
        (Configuration::new(matrix)?, beta)
    };
    let col = match common.col.or(spec.column) {
        None => None,
        Some(0) => return Err(Error::Input("columns are numbered from 1".into())),
        Some(j) if j > cfg.len() => return Err(Error::ColumnOutOfRange(j - 1)),
        Some(j) => Some(j - 1),
    };
    Ok(Job {
        cfg,
        beta,
        col,
        seed: resolve_seed(common.seed)?,
        format: common.format,
    })
}

fn parse_indices(s: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for t in s.split(',') {
        let j: usize = t
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("not a column index: {t}")))?;
        if j == 0 {
            return Err(Error::Input("columns are numbered from 1".into()));
        }
        if j > n {
            return Err(Error::ColumnOutOfRange(j - 1));
        }
        out.push(j - 1);
    }
    out.sort_unstable();
    Ok(out)
}

fn parse_point(s: &str) -> Result<Vec<Complex64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map(|r| Complex64::new(r, 0.0))
                .map_err(|_| Error::Input(format!("not a real number: {t}")))
        })
        .collect()
}

fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("report serializes")
}

fn cells_text(cells: &[Vec<usize>]) -> String {
    cells
        .iter()
        .map(|c| format!("{{{}}}", c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn subdivide(job: &Job, which: WhichSubdivision) -> Result<String> {
    let cfg = &job.cfg;
    let (sub, column, seed): (Subdivision, Option<usize>, Option<u64>) = match which {
        WhichSubdivision::Gamma => (gamma_a(cfg)?, None, None),
        WhichSubdivision::T0 => (t_zero(cfg, job.col()?)?, Some(job.col()?), None),
        WhichSubdivision::Tinf => (t_infinity(cfg, job.col()?)?, Some(job.col()?), None),
        WhichSubdivision::Triangulate => {
            let base = match job.col {
                Some(c) => t_zero(cfg, c)?,
                None => gamma_a(cfg)?,
            };
            (refine_to_triangulation(cfg, &base, job.seed)?, job.col, Some(job.seed))
        }
    };
    let report = SubdivisionReport {
        schema: SCHEMA,
        which: format!("{which:?}").to_lowercase(),
        column: column.map(|c| c + 1),
        seed,
        cells: sub.cell_sets().iter().map(|c| one_based(c)).collect(),
        triangulation: sub.is_triangulation(cfg.dim()),
    };
    Ok(match job.format {
        Format::Json => to_json(&report),
        Format::Text => format!("{}: {}", report.which, cells_text(&report.cells)),
    })
}

fn charpoly(job: &Job, which: WhichCharPoly) -> Result<String> {
    let (cfg, col, beta) = (&job.cfg, job.col()?, job.beta()?);
    let local = match which {
        WhichCharPoly::Local | WhichCharPoly::Both => Some(char_poly_local(cfg, beta, col)?),
        WhichCharPoly::Infinity => None,
    };
    let infinity = match which {
        WhichCharPoly::Infinity | WhichCharPoly::Both => Some(char_poly_infinity(cfg, beta, col)?),
        WhichCharPoly::Local => None,
    };
    let facets = sigma_set(cfg, &t_zero(cfg, col)?, col)?;
    let report = CharPolyReport {
        schema: SCHEMA,
        column: col + 1,
        beta: beta.to_entries(),
        local: local.as_ref().map(CharPolyDoc::from_poly).transpose()?,
        infinity: infinity.as_ref().map(CharPolyDoc::from_poly).transpose()?,
        facets: facets.iter().map(FacetDoc::from_facet).collect::<Result<_>>()?,
    };
    Ok(match job.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut lines = Vec::new();
            if let Some(p) = &local {
                lines.push(format!("λ0(z) = {p}"));
            }
            if let Some(p) = &infinity {
                lines.push(format!("λ∞(z) = {p}"));
            }
            lines.join("\n")
        }
    })
}

fn oracle(job: &Job) -> Result<String> {
    let (cfg, col, beta) = (&job.cfg, job.col()?, job.beta()?);
    let t = refine_to_triangulation(cfg, &t_zero(cfg, col)?, job.seed)?;
    let phases = eigenvalue_oracle(cfg, beta, col, &t)?;
    let roots = roots_multiset(&char_poly_local(cfg, beta, col)?)?;
    let report = OracleReport {
        schema: SCHEMA,
        column: col + 1,
        beta: beta.to_entries(),
        seed: job.seed,
        triangulation: t.cell_sets().iter().map(|c| one_based(c)).collect(),
        very_generic: very_generic(cfg, &t, beta)?,
        phases: phases.iter().map(format_rational).collect(),
        charpoly_roots: roots.iter().map(format_rational).collect(),
        agree: phases == roots,
    };
    Ok(match job.format {
        Format::Json => to_json(&report),
        Format::Text => format!(
            "oracle:   {}\ncharpoly: {}\nagree: {}",
            report.phases.join(" "),
            report.charpoly_roots.join(" "),
            report.agree
        ),
    })
}

struct SeriesArgs<'a> {
    which: WhichSeries,
    sigma: Option<&'a str>,
    k: Option<&'a str>,
    point: Option<&'a str>,
    truncation: u64,
    radius: f64,
    steps: usize,
}

fn series(job: &Job, args: SeriesArgs<'_>) -> Result<String> {
    let (cfg, beta) = (&job.cfg, job.beta()?);
    let sigma = parse_indices(
        args.sigma
            .ok_or_else(|| Error::Input("--sigma is required".into()))?,
        cfg.len(),
    )?;
    let m = cfg.len().saturating_sub(sigma.len());
    let k: Vec<u64> = match args.k {
        None => vec![0; m],
        Some(s) => s
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| Error::Input(format!("not a nonnegative integer: {t}"))))
            .collect::<Result<_>>()?,
    };
    let spec: SeriesSpec = exponent_vector(cfg, &sigma, &k, beta)?;
    let point = || -> Result<Vec<Complex64>> {
        parse_point(args.point.ok_or_else(|| Error::Input("--point is required".into()))?)
    };
    let mut report = SeriesReport {
        schema: SCHEMA,
        which: format!("{:?}", args.which).to_lowercase(),
        sigma: one_based(&sigma),
        k: k.clone(),
        exponents: spec.v.to_entries(),
        convergent: spec.convergent,
        truncation: args.truncation,
        value: None,
        residual: None,
        loop_check: None,
    };
    match args.which {
        WhichSeries::Eval => {
            report.value = Some(truncated_eval(cfg, &spec, &point()?, args.truncation)?.into());
        }
        WhichSeries::Residual => {
            report.residual = Some((&operator_residual(cfg, &spec, args.truncation)?).into());
        }
        WhichSeries::Loop => {
            let col = job.col()?;
            let check = loop_transport_check(cfg, &spec, col, &point()?, args.radius, args.steps, args.truncation)?;
            report.loop_check = Some(LoopDoc::new(col, args.radius, args.steps, &check));
        }
    }
    Ok(match job.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let head = format!("σ = {:?}, k = {:?}", report.sigma, report.k);
            let body = if let Some(v) = &report.value {
                format!("value = {} + {}i", v.re, v.im)
            } else if let Some(r) = &report.residual {
                format!("terms = {}, residual vanishes below boundary: {}", r.terms, r.passes)
            } else if let Some(l) = &report.loop_check {
                format!(
                    "measured = {} + {}i, expected = {} + {}i, error = {:e}",
                    l.measured.re, l.measured.im, l.expected.re, l.expected.im, l.error
                )
            } else {
                String::new()
            };
            format!("{head}\n{body}")
        }
    })
}

fn classify(job: &Job) -> Result<String> {
    let (cfg, beta) = (&job.cfg, job.beta()?);
    let verdict = reducibility(cfg, beta)?;
    let res = nonresonant(cfg, beta);
    let report = ClassifyReport::new(&verdict, &res, regular_holonomic(cfg))?;
    Ok(match job.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let c = &report.conditions;
            format!(
                "{} (i: {}, ii: {}, iii: {}); F = {:?}; nonresonant: {}",
                report.verdict, c.i, c.ii, c.iii, report.f, report.nonresonant
            )
        }
    })
}

/// Exit code for an error: 3 for a failed theorem hypothesis, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_hypothesis_failure() {
        3
    } else {
        2
    }
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    let name = debug.split(['(', ' ', '{']).next().unwrap_or("Error");
    let mut out = String::new();
    for (i, ch) in name.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.extend(ch.to_lowercase());
    }
    out
}

pub fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Subdivide { which, common } => subdivide(&build_job(common)?, *which),
        Command::Charpoly { which, common } => charpoly(&build_job(common)?, *which),
        Command::Oracle { common } => oracle(&build_job(common)?),
        Command::Series {
            which,
            sigma,
            k,
            point,
            truncation,
            radius,
            steps,
            common,
        } => series(
            &build_job(common)?,
            SeriesArgs {
                which: *which,
                sigma: sigma.as_deref(),
                k: k.as_deref(),
                point: point.as_deref(),
                truncation: *truncation,
                radius: *radius,
                steps: *steps,
            },
        ),
        Command::Classify { common } => classify(&build_job(common)?),
    }
}

/// Output of one invocation: text for stdout, text for stderr, exit code.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match execute(&cli) {
        Ok(out) => Outcome {
            stdout: out,
            stderr: String::new(),
            code: 0,
        },
        Err(e) => {
            let code = exit_code(&e);
            let doc = ErrorDoc {
                schema: SCHEMA,
                error: error_kind(&e),
                message: e.to_string(),
                exit_code: code,
            };
            Outcome {
                stdout: to_json(&doc),
                stderr: format!("error: {e}"),
                code,
            }
        }
    }
}
