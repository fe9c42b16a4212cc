//! Command-line front end: `list`, `fuse`, `nimrep` and `verify`.
//!
//! Output is assembled in memory and is byte-identical for identical jobs.
//! Exit codes: 0 ok, 1 verification failure, 2 usage or domain error,
//! 3 internal invariant breach.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::folding::{enumerate_b, enumerate_p, enumerate_s, Automorphism, AutomorphismKind};
use crate::fusion::{nimrep, twisted_fusion, NimRepMatrix};
use crate::oracle::{Oracle, ROUNDING_TOLERANCE, UNITARITY_TOLERANCE};
use crate::rootdata::{Algebra, AlgebraName};
use crate::weight::{format_rational, Weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    /// Integrable highest weights P_k^+.
    Reps,
    /// Symmetric integrable highest weights S_k^+.
    Symmetric,
    /// Twisted boundary labels B_k^+.
    Boundaries,
}

#[derive(Debug, Parser)]
#[command(
    name = "twisted-fusion",
    version,
    about = "Twisted fusion rules and NIM-reps of affine Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Simple Lie algebra, e.g. A2, D4, E6.
    #[arg(long)]
    pub algebra: String,
    /// trivial, flip, triality or triality2.
    #[arg(long, default_value = "trivial")]
    pub automorphism: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate P_k^+, S_k^+ or B_k^+ in index order.
    List {
        #[arg(value_enum)]
        domain: Domain,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_negative_numbers = true)]
        level: i64,
    },
    /// Fuse an integrable representation with a boundary label.
    Fuse {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_negative_numbers = true)]
        level: i64,
        /// Integer Dynkin labels, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        rep: String,
        /// Dynkin labels, fractions written p/q.
        #[arg(long, allow_hyphen_values = true)]
        boundary: String,
    },
    /// NIM-rep matrices; all of P_k^+ unless --rep is given.
    Nimrep {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_negative_numbers = true)]
        level: i64,
        #[arg(long, allow_hyphen_values = true)]
        rep: Option<String>,
    },
    /// Compare the folding algorithm with the S-matrix oracle for levels 1..=max.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        max_level: u32,
        #[arg(long, default_value_t = ROUNDING_TOLERANCE)]
        tolerance: f64,
    },
}

/// A fully parsed single job.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub algebra: AlgebraName,
    pub automorphism: AutomorphismKind,
    pub level: u32,
    pub rep: Option<Weight>,
    pub boundary: Option<Weight>,
    pub format: Format,
}

fn parse_level(level: i64) -> Result<u32, Error> {
    u32::try_from(level).map_err(|_| Error::NegativeLevel(level))
}

/// Parses integral Dynkin labels; fractions are rejected.
pub fn parse_rep(s: &str) -> Result<Weight, Error> {
    let w: Weight = s.parse()?;
    if !w.is_integral() {
        return Err(Error::Parse(format!(
            "representation labels must be integers, got {s:?}"
        )));
    }
    Ok(w)
}

impl JobSpec {
    pub fn from_parts(
        common: &CommonArgs,
        level: i64,
        rep: Option<&str>,
        boundary: Option<&str>,
    ) -> Result<Self, Error> {
        Ok(JobSpec {
            algebra: common.algebra.parse()?,
            automorphism: common.automorphism.parse()?,
            level: parse_level(level)?,
            rep: rep.map(parse_rep).transpose()?,
            boundary: boundary.map(str::parse).transpose()?,
            format: common.format,
        })
    }
}

impl fmt::Display for JobSpec {
    /// Canonical `key=value` form, e.g.
    /// `algebra=A2 automorphism=flip level=2 rep=1,1 boundary=1/2,1/2 format=json`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algebra={} automorphism={} level={}",
            self.algebra, self.automorphism, self.level
        )?;
        if let Some(rep) = &self.rep {
            write!(f, " rep={rep}")?;
        }
        if let Some(b) = &self.boundary {
            write!(f, " boundary={b}")?;
        }
        write!(f, " format={}", self.format.as_str())
    }
}

impl FromStr for JobSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut algebra = None;
        let mut automorphism = AutomorphismKind::Trivial;
        let mut level = None;
        let mut rep = None;
        let mut boundary = None;
        let mut format = Format::Text;
        for token in s.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {token:?}")))?;
            match key {
                "algebra" => algebra = Some(value.parse()?),
                "automorphism" => automorphism = value.parse()?,
                "level" => {
                    let l: i64 = value
                        .parse()
                        .map_err(|_| Error::Parse(format!("invalid level {value:?}")))?;
                    level = Some(parse_level(l)?);
                }
                "rep" => rep = Some(parse_rep(value)?),
                "boundary" => boundary = Some(value.parse()?),
                "format" => {
                    format = Format::from_str(value, true)
                        .map_err(|_| Error::Parse(format!("invalid format {value:?}")))?
                }
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        Ok(JobSpec {
            algebra: algebra.ok_or_else(|| Error::Parse("missing algebra".into()))?,
            automorphism,
            level: level.ok_or_else(|| Error::Parse("missing level".into()))?,
            rep,
            boundary,
            format,
        })
    }
}

/// Result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn error(err: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: exit_code(err),
        }
    }
}

/// Exit code associated with an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NegativeCoefficient { .. }
        | Error::InvariantViolation(_)
        | Error::FoldDidNotTerminate(_)
        | Error::GroupTooLarge(_)
        | Error::NonSquareSMatrix { .. } => EXIT_INTERNAL,
        Error::ResidualTooLarge { .. } => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

fn labels(w: &Weight) -> Vec<String> {
    w.coords().iter().map(format_rational).collect()
}

fn setup(algebra: AlgebraName, kind: AutomorphismKind) -> Result<(Algebra, Automorphism), Error> {
    let alg = Algebra::from_name(algebra)?;
    let aut = Automorphism::named(&alg, kind)?;
    Ok((alg, aut))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ListJson<'a> {
    algebra: String,
    automorphism: &'a str,
    level: u32,
    domain: &'a str,
    index_order: Vec<Vec<String>>,
}

fn domain_name(domain: Domain) -> &'static str {
    match domain {
        Domain::Reps => "P_k^+",
        Domain::Symmetric => "S_k^+",
        Domain::Boundaries => "B_k^+",
    }
}

pub fn cmd_list(job: &JobSpec, domain: Domain) -> Result<String, Error> {
    let (alg, aut) = setup(job.algebra, job.automorphism)?;
    let k = job.level;
    let items = match domain {
        Domain::Reps => enumerate_p(&alg, k),
        Domain::Symmetric => enumerate_s(&alg, &aut, k),
        Domain::Boundaries => enumerate_b(&alg, &aut, k),
    };
    Ok(match job.format {
        Format::Json => to_json(&ListJson {
            algebra: job.algebra.to_string(),
            automorphism: job.automorphism.as_str(),
            level: k,
            domain: domain_name(domain),
            index_order: items.iter().map(labels).collect(),
        }),
        Format::Text => {
            let mut out = format!(
                "# {} for {} {} at level {} ({} entries)\n",
                domain_name(domain),
                job.algebra,
                job.automorphism,
                k,
                items.len()
            );
            for (n, w) in items.iter().enumerate() {
                let _ = writeln!(out, "{n}: ({w})");
            }
            out
        }
    })
}

#[derive(Serialize)]
struct CoefficientJson {
    target: Vec<String>,
    value: u64,
}

#[derive(Serialize)]
struct FuseJson<'a> {
    algebra: String,
    automorphism: &'a str,
    level: u32,
    rep: Vec<String>,
    boundary: Vec<String>,
    index_order: Vec<Vec<String>>,
    coefficients: Vec<CoefficientJson>,
}

pub fn cmd_fuse(job: &JobSpec) -> Result<String, Error> {
    let (alg, aut) = setup(job.algebra, job.automorphism)?;
    let missing = |what: &str| Error::Parse(format!("fuse requires --{what}"));
    let rep = job.rep.as_ref().ok_or_else(|| missing("rep"))?;
    let boundary = job.boundary.as_ref().ok_or_else(|| missing("boundary"))?;
    rep.check_rank(alg.rank())?;
    boundary.check_rank(alg.rank())?;
    let coeffs = twisted_fusion(rep, boundary, job.level, &aut, &alg)?;
    let order = enumerate_b(&alg, &aut, job.level);
    Ok(match job.format {
        Format::Json => to_json(&FuseJson {
            algebra: job.algebra.to_string(),
            automorphism: job.automorphism.as_str(),
            level: job.level,
            rep: labels(rep),
            boundary: labels(boundary),
            index_order: order.iter().map(labels).collect(),
            coefficients: coeffs
                .iter()
                .map(|(b, v)| CoefficientJson {
                    target: labels(b),
                    value: v,
                })
                .collect(),
        }),
        Format::Text => {
            let mut out = format!(
                "({rep}) * ({boundary}) in {} {} at level {}\n",
                job.algebra, job.automorphism, job.level
            );
            for (b, v) in coeffs.iter() {
                let _ = writeln!(out, "  {v} x ({b})");
            }
            out
        }
    })
}

#[derive(Serialize)]
struct MatrixJson {
    rep: Vec<String>,
    /// `entries[β][α] = N_{iα}^β`.
    entries: Vec<Vec<u64>>,
}

#[derive(Serialize)]
struct NimrepJson<'a> {
    algebra: String,
    automorphism: &'a str,
    level: u32,
    index_order: Vec<Vec<String>>,
    matrices: Vec<MatrixJson>,
}

pub fn cmd_nimrep(job: &JobSpec) -> Result<String, Error> {
    let (alg, aut) = setup(job.algebra, job.automorphism)?;
    let reps = match &job.rep {
        Some(r) => {
            r.check_rank(alg.rank())?;
            vec![r.clone()]
        }
        None => enumerate_p(&alg, job.level),
    };
    let mats = reps
        .iter()
        .map(|i| nimrep(i, job.level, &aut, &alg))
        .collect::<Result<Vec<NimRepMatrix>, Error>>()?;
    let order = enumerate_b(&alg, &aut, job.level);
    Ok(match job.format {
        Format::Json => to_json(&NimrepJson {
            algebra: job.algebra.to_string(),
            automorphism: job.automorphism.as_str(),
            level: job.level,
            index_order: order.iter().map(labels).collect(),
            matrices: mats
                .iter()
                .map(|m| MatrixJson {
                    rep: labels(m.label()),
                    entries: m.entries().to_vec(),
                })
                .collect(),
        }),
        Format::Text => {
            let mut out = format!(
                "# NIM-reps of {} {} at level {}; rows β, columns α\n# index order:",
                job.algebra, job.automorphism, job.level
            );
            for w in &order {
                let _ = write!(out, " ({w})");
            }
            out.push('\n');
            for m in &mats {
                let _ = writeln!(out, "N[{}] =", m.label());
                for row in m.entries() {
                    let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                    let _ = writeln!(out, "  [{}]", cells.join(" "));
                }
            }
            out
        }
    })
}

/// Per-level verification statistics.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct LevelReport {
    pub level: u32,
    pub boundary_labels: usize,
    pub triples: usize,
    pub max_residual: f64,
    pub max_imaginary: f64,
    pub unitarity_residual: f64,
    pub mismatches: usize,
    pub negatives: usize,
    pub first_failure: Option<String>,
}

impl LevelReport {
    pub fn passed(&self, tolerance: f64) -> bool {
        self.first_failure.is_none()
            && self.mismatches == 0
            && self.negatives == 0
            && self.max_residual < tolerance
            && self.unitarity_residual < UNITARITY_TOLERANCE
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct VerifyReport {
    pub algebra: String,
    pub automorphism: String,
    pub tolerance: f64,
    pub levels: Vec<LevelReport>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        }
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.levels.iter().find_map(|l| l.first_failure.as_deref())
    }
}

fn verify_level(k: u32, aut: &Automorphism, alg: &Algebra, tolerance: f64) -> LevelReport {
    let mut report = LevelReport {
        level: k,
        boundary_labels: 0,
        triples: 0,
        max_residual: 0.0,
        max_imaginary: 0.0,
        unitarity_residual: 0.0,
        mismatches: 0,
        negatives: 0,
        first_failure: None,
    };
    let oracle = match Oracle::new(k, aut, alg) {
        Ok(o) => o,
        Err(e) => {
            report.first_failure = Some(format!("oracle: {e}"));
            return report;
        }
    };
    report.unitarity_residual = oracle.smatrix().unitarity_residual();
    if report.unitarity_residual >= UNITARITY_TOLERANCE {
        report.first_failure = Some(format!(
            "S-matrix unitarity residual {:e}",
            report.unitarity_residual
        ));
    }
    let bs = oracle.smatrix().rows().to_vec();
    report.boundary_labels = bs.len();
    for i in enumerate_p(alg, k) {
        let chars = match oracle.character_row(&i) {
            Ok(c) => c,
            Err(e) => {
                report
                    .first_failure
                    .get_or_insert(format!("character of ({i}): {e}"));
                continue;
            }
        };
        for alpha in &bs {
            let exact = match twisted_fusion(&i, alpha, k, aut, alg) {
                Ok(c) => c,
                Err(e) => {
                    if matches!(e, Error::NegativeCoefficient { .. }) {
                        report.negatives += 1;
                    }
                    report
                        .first_failure
                        .get_or_insert(format!("i=({i}) α=({alpha}): {e}"));
                    continue;
                }
            };
            for beta in &bs {
                let Ok(num) = oracle.coefficient_with(&chars, alpha, beta) else {
                    continue;
                };
                report.triples += 1;
                report.max_residual = report.max_residual.max(num.residual);
                report.max_imaginary = report.max_imaginary.max(num.value.im.abs());
                let n = exact.get(beta) as i64;
                if num.rounded != n || num.residual >= tolerance {
                    report.mismatches += 1;
                    report.first_failure.get_or_insert(format!(
                        "i=({i}) α=({alpha}) β=({beta}): algorithm {n}, oracle {:.9}{:+.9}i",
                        num.value.re, num.value.im
                    ));
                }
            }
        }
    }
    report
}

/// Runs the oracle comparison for levels `1..=max_level`.
pub fn verify_case(
    alg: &Algebra,
    aut: &Automorphism,
    max_level: u32,
    tolerance: f64,
) -> VerifyReport {
    let levels: Vec<LevelReport> = (1..=max_level)
        .map(|k| verify_level(k, aut, alg, tolerance))
        .collect();
    let passed = levels.iter().all(|l| l.passed(tolerance));
    VerifyReport {
        algebra: alg.name().to_string(),
        automorphism: aut.kind().to_string(),
        tolerance,
        levels,
        passed,
    }
}

pub fn render_verify(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Text => {
            let mut out = format!(
                "# verify {} {} (tolerance {:e})\n",
                report.algebra, report.automorphism, report.tolerance
            );
            for l in &report.levels {
                let _ = writeln!(
                    out,
                    "level {}: |B|={} triples={} max_residual={:.3e} max_imag={:.3e} unitarity={:.3e} mismatches={} negatives={} {}",
                    l.level,
                    l.boundary_labels,
                    l.triples,
                    l.max_residual,
                    l.max_imaginary,
                    l.unitarity_residual,
                    l.mismatches,
                    l.negatives,
                    if l.passed(report.tolerance) { "PASS" } else { "FAIL" }
                );
            }
            match report.first_failure() {
                Some(f) => {
                    let _ = writeln!(out, "FAIL: {f}");
                }
                None if report.passed => out.push_str("PASS\n"),
                None => out.push_str("FAIL\n"),
            }
            out
        }
    }
}

fn execute(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::List {
            domain,
            common,
            level,
        } => {
            let job = JobSpec::from_parts(common, *level, None, None)?;
            cmd_list(&job, *domain).map(Outcome::ok)
        }
        Command::Fuse {
            common,
            level,
            rep,
            boundary,
        } => {
            let job = JobSpec::from_parts(common, *level, Some(rep), Some(boundary))?;
            cmd_fuse(&job).map(Outcome::ok)
        }
        Command::Nimrep { common, level, rep } => {
            let job = JobSpec::from_parts(common, *level, rep.as_deref(), None)?;
            cmd_nimrep(&job).map(Outcome::ok)
        }
        Command::Verify {
            common,
            max_level,
            tolerance,
        } => {
            let job = JobSpec::from_parts(common, i64::from(*max_level), None, None)?;
            let (alg, aut) = setup(job.algebra, job.automorphism)?;
            let report = verify_case(&alg, &aut, *max_level, *tolerance);
            let stdout = render_verify(&report, job.format);
            let stderr = report
                .first_failure()
                .map(|f| format!("verification failed: {f}\n"))
                .unwrap_or_default();
            Ok(Outcome {
                stdout,
                stderr,
                code: report.exit_code(),
            })
        }
    }
}

/// Runs a parsed command, mapping errors onto the exit-code contract.
pub fn run(cli: &Cli) -> Outcome {
    execute(&cli.command).unwrap_or_else(|e| Outcome::error(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let cli =
            Cli::try_parse_from(std::iter::once("twisted-fusion").chain(args.iter().copied()))
                .unwrap();
        run(&cli)
    }

    #[test]
    fn lists_boundaries_as_rational_strings() {
        let out = run_args(&[
            "list",
            "boundaries",
            "--algebra",
            "A2",
            "--automorphism",
            "flip",
            "--level",
            "2",
            "--format",
            "json",
        ]);
        assert_eq!(out.code, 0);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(
            v["index_order"],
            serde_json::json!([["0", "0"], ["1/2", "1/2"]])
        );
    }

    #[test]
    fn lists_reps_in_text() {
        let out = run_args(&["list", "reps", "--algebra", "A1", "--level", "3"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout.lines().count(), 5);
        assert!(out.stdout.contains("3: (3)"));
    }

    #[test]
    fn unsupported_automorphism_exits_two() {
        let out = run_args(&[
            "list",
            "reps",
            "--algebra",
            "A2",
            "--automorphism",
            "triality",
            "--level",
            "1",
        ]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(
            out.stderr.contains("automorphism not defined for A2"),
            "{}",
            out.stderr
        );
    }

    #[test]
    fn negative_level_exits_two() {
        let out = run_args(&["list", "reps", "--algebra", "A2", "--level", "-1"]);
        assert_eq!(out.code, EXIT_USAGE);
    }

    #[test]
    fn fractional_rep_is_rejected() {
        let out = run_args(&[
            "fuse",
            "--algebra",
            "A2",
            "--automorphism",
            "flip",
            "--level",
            "2",
            "--rep",
            "1/2,1/2",
            "--boundary",
            "0,0",
        ]);
        assert_eq!(out.code, EXIT_USAGE);
    }

    #[test]
    fn internal_errors_map_to_three() {
        assert_eq!(
            exit_code(&Error::NegativeCoefficient {
                target: "0".into(),
                value: -1
            }),
            EXIT_INTERNAL
        );
        assert_eq!(
            exit_code(&Error::InvariantViolation("x".into())),
            EXIT_INTERNAL
        );
        assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_USAGE);
    }

    #[test]
    fn jobspec_round_trip() {
        let s = "algebra=A2 automorphism=flip level=2 rep=1,1 boundary=1/2,1/2 format=json";
        let job: JobSpec = s.parse().unwrap();
        assert_eq!(job.to_string(), s);
        assert_eq!(job.to_string().parse::<JobSpec>().unwrap(), job);
        assert!("algebra=A2 level=2 rep=1/2,1/2".parse::<JobSpec>().is_err());
        assert!("algebra=A2".parse::<JobSpec>().is_err());
        assert!("algebra=A2 level=-3".parse::<JobSpec>().is_err());
    }
}
