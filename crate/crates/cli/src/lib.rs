//! `qrlab` command line: flag parsing, map files and report output.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qrlab::constants::ConstantQuery;
use qrlab::harness::{self, SuiteConfig, VerificationReport};
use qrlab::identities::RegularizationSchedule;
use qrlab::quadrature::QuadratureSpec;
use thiserror::Error;

pub mod mapfile;
pub mod output;

use mapfile::{LoadedMap, MapFile};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("numerical failure: {0}")]
    Numerical(qrlab::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Numerical(_) | CliError::Internal(_) => EXIT_FAIL,
        }
    }
}

impl From<qrlab::Error> for CliError {
    fn from(e: qrlab::Error) -> Self {
        use qrlab::Error as E;
        match e {
            E::NoConvergence { .. }
            | E::NonFinite { .. }
            | E::NearZero { .. }
            | E::BranchCut { .. }
            | E::DomainExit { .. } => CliError::Numerical(e),
            // everything else is a property of the input
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qrlab",
    version,
    about = "Numerical checks of Riesz-type inequalities for harmonic quasiregular maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// All constants for (p, K, n) as one JSON object
    Constants,
    /// Pointwise Pichorides inequality on a uniform grid of [−π, π]
    Pichorides,
    /// Pointwise Verbitsky inequality on a uniform grid of [−π, π]
    Verbitsky,
    /// Green identity and Green representation residuals
    Green,
    /// ‖f‖_p ≤ c₂(K,p)‖Re f‖_p for a planar map, or a random sweep without --map
    Theorem1,
    /// Ball form for a linear map x ↦ Ax + b in R³ (identity without --map)
    Theorem1Ball,
    /// ‖Im f‖_p ≤ c(p,K)‖Re f‖_p and ‖f‖_p ≤ d(p,K)‖Re f‖_p
    Theorem2,
    /// Sector-map sharpness probe
    Sharpness,
    /// Identity-map equality case in R^n
    Equality,
    /// The full battery
    Suite,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Exponent in (1, 2]
    #[arg(long, global = true)]
    pub p: Option<f64>,
    /// Distortion K ≥ 1
    #[arg(long = "K", global = true)]
    pub big_k: Option<f64>,
    /// Dilatation bound k ∈ [0, 1)
    #[arg(long, global = true)]
    pub k: Option<f64>,
    /// Dimension
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Angular nodes per circle
    #[arg(long, global = true)]
    pub angles: Option<usize>,
    /// Radial nodes
    #[arg(long, global = true)]
    pub radial: Option<usize>,
    /// Points of the pointwise scans
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Maps per random sweep
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Polynomial degree of random maps or of the truncated sector map
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// β·p/(π/2) for the sharpness probe, in (0, 1)
    #[arg(long = "beta-frac", global = true)]
    pub beta_frac: Option<f64>,
    /// Map file (JSON)
    #[arg(long, global = true)]
    pub map: Option<PathBuf>,
    /// Also write flat report rows to this CSV file
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// JSON output (the default and only stdout format)
    #[arg(long, global = true)]
    pub json: bool,
}

pub const DEFAULT_GRID: usize = 100_000;
pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_DEGREE: usize = 8;
pub const DEFAULT_SWEEP_K: f64 = 0.3;

impl Options {
    fn p(&self) -> Result<f64, CliError> {
        let p = self
            .p
            .ok_or_else(|| CliError::Usage("--p is required for this subcommand".into()))?;
        check_p(p)
    }

    fn spec(&self) -> Result<QuadratureSpec, CliError> {
        let d = QuadratureSpec::default();
        Ok(QuadratureSpec::new(
            self.angles.unwrap_or(d.n_angles),
            self.radial.unwrap_or(d.n_radial),
        )?)
    }

    fn k_or(&self, default: f64) -> Result<f64, CliError> {
        let k = match (self.k, self.big_k) {
            (Some(_), Some(_)) => return Err(CliError::Usage("give --k or --K, not both".into())),
            (Some(k), None) => k,
            (None, Some(big_k)) => {
                if !(big_k >= 1.0 && big_k.is_finite()) {
                    return Err(CliError::Usage(format!("--K = {big_k} must be finite and >= 1")));
                }
                qrlab::planar::k_from_big_k(big_k)
            }
            (None, None) => default,
        };
        if !(0.0..1.0).contains(&k) {
            return Err(CliError::Usage(format!("--k = {k} must lie in [0, 1)")));
        }
        Ok(k)
    }

    fn map(&self) -> Result<Option<LoadedMap>, CliError> {
        match &self.map {
            None => Ok(None),
            Some(path) => MapFile::load(path)?.validate(&path.display().to_string()).map(Some),
        }
    }

    fn planar_map(&self) -> Result<Option<qrlab::PlanarHarmonicMap64>, CliError> {
        match self.map()? {
            None => Ok(None),
            Some(LoadedMap::Planar(m)) => Ok(Some(m)),
            Some(LoadedMap::BallLinear(_)) => Err(CliError::Usage("this subcommand needs a planar map file".into())),
        }
    }
}

fn check_p(p: f64) -> Result<f64, CliError> {
    if p > 1.0 && p <= 2.0 {
        Ok(p)
    } else {
        Err(CliError::Usage(format!("--p = {p} must lie in (1, 2]")))
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Constants(qrlab::constants::ConstantTable),
    Report(Box<VerificationReport>),
    Reports(Vec<VerificationReport>),
}

impl Outcome {
    pub fn reports(&self) -> &[VerificationReport] {
        match self {
            Outcome::Constants(_) => &[],
            Outcome::Report(r) => std::slice::from_ref(r.as_ref()),
            Outcome::Reports(r) => r,
        }
    }

    /// 1 if any applicable report fails, else 0.
    pub fn exit_code(&self) -> u8 {
        if self.reports().iter().any(VerificationReport::is_failure) {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        match self {
            Outcome::Constants(t) => output::to_json(t),
            Outcome::Report(r) => output::to_json(r),
            Outcome::Reports(r) => output::to_json(r),
        }
    }
}

pub fn run(command: Command, o: &Options) -> Result<Outcome, CliError> {
    if let Some(p) = o.p {
        check_p(p)?;
    }
    let grid = o.grid.unwrap_or(DEFAULT_GRID);
    let seed = o.seed.unwrap_or(DEFAULT_SEED);
    let samples = o.samples.unwrap_or(DEFAULT_SAMPLES);
    let degree = o.degree.unwrap_or(DEFAULT_DEGREE);
    match command {
        Command::Constants => {
            let big_k = qrlab::planar::big_k_from_k(o.k_or(0.0)?);
            let q = ConstantQuery::new(o.p()?, big_k, o.n.unwrap_or(2))?;
            Ok(Outcome::Constants(q.table()?))
        }
        Command::Pichorides => Ok(Outcome::Report(Box::new(harness::pichorides_report(o.p()?, grid)?))),
        Command::Verbitsky => Ok(Outcome::Report(Box::new(harness::verbitsky_report(o.p()?, grid)?))),
        Command::Green => {
            let spec = o.spec()?;
            let schedule = RegularizationSchedule::default();
            let ps: Vec<f64> = match o.p {
                Some(p) => vec![p],
                None => harness::GREEN_P.to_vec(),
            };
            let mut out = Vec::new();
            if let Some(m) = o.planar_map()? {
                let maps = [("map file", m)];
                for p in ps {
                    out.push(harness::green_identity_report(&maps, p, &spec, &schedule, 1e-6)?);
                }
                return Ok(Outcome::Reports(out));
            }
            let maps = harness::green_test_maps();
            for p in ps {
                out.push(harness::green_identity_report(&maps, p, &spec, &schedule, 1e-6)?);
            }
            let dims = match o.n {
                Some(n @ (2 | 3)) => vec![n],
                Some(n) => {
                    return Err(CliError::Usage(format!(
                        "--n = {n}: the representation check supports n = 2, 3"
                    )))
                }
                None => vec![2, 3],
            };
            for n in dims {
                out.push(harness::green_representation_report(n, true, &spec, 1e-8)?);
                out.push(harness::green_representation_report(n, false, &spec, 1e-6)?);
            }
            Ok(Outcome::Reports(out))
        }
        Command::Theorem1 => {
            let (p, spec) = (o.p()?, o.spec()?);
            match o.planar_map()? {
                Some(m) => Ok(Outcome::Report(Box::new(harness::check_theorem1_plane(&m, p, &spec)?))),
                None => Ok(Outcome::Report(Box::new(harness::theorem1_sweep(
                    seed,
                    samples,
                    degree,
                    p,
                    o.k_or(DEFAULT_SWEEP_K)?,
                    &spec,
                )?))),
            }
        }
        Command::Theorem1Ball => {
            let (p, spec) = (o.p()?, o.spec()?);
            let map = match o.map()? {
                Some(LoadedMap::BallLinear(m)) => m,
                Some(LoadedMap::Planar(_)) => {
                    return Err(CliError::Usage("theorem1-ball needs a ball-linear map file".into()))
                }
                None => harness::ball_diagonal_map(1.0)?,
            };
            Ok(Outcome::Report(Box::new(harness::check_theorem1_ball(&map, p, &spec)?)))
        }
        Command::Theorem2 => {
            let (p, spec) = (o.p()?, o.spec()?);
            match o.planar_map()? {
                Some(m) => Ok(Outcome::Reports(harness::check_theorem2(&m, p, &spec)?.to_vec())),
                None => Ok(Outcome::Reports(
                    harness::theorem2_sweep(seed, samples, degree, p, o.k_or(DEFAULT_SWEEP_K)?, &spec)?.to_vec(),
                )),
            }
        }
        Command::Sharpness => {
            let bf = o
                .beta_frac
                .ok_or_else(|| CliError::Usage("--beta-frac is required".into()))?;
            let deg = o.degree.unwrap_or(harness::SHARP_DEGREE);
            Ok(Outcome::Report(Box::new(harness::sharpness_report(
                o.p()?,
                o.k_or(0.0)?,
                bf,
                deg,
                &o.spec()?,
            )?)))
        }
        Command::Equality => Ok(Outcome::Report(Box::new(harness::equality_case_identity(
            o.n.unwrap_or(3),
            &o.spec()?,
        )?))),
        Command::Suite => {
            let cfg = SuiteConfig {
                seed,
                samples,
                degree,
                n_grid: grid,
                spec: o.spec()?,
            };
            Ok(Outcome::Reports(harness::suite(&cfg)?))
        }
    }
}

/// Applies `QRLAB_THREADS` (0 or unset = one worker per core).
pub fn configure_threads(value: Option<&str>) -> Result<(), CliError> {
    let n = match value {
        None => 0,
        Some(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("QRLAB_THREADS = {s:?} is not a worker count")))?,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}

/// Parses `argv`, runs the command, prints JSON and returns the exit code.
pub fn main_with_args<I, S>(argv: I, stdout: &mut impl std::io::Write, stderr: &mut impl std::io::Write) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    let result = run(cli.command, &cli.opts).and_then(|outcome| {
        let json = outcome.to_json()?;
        stdout
            .write_all(json.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
        if let Some(path) = &cli.opts.csv {
            output::write_csv(path, outcome.reports())?;
        }
        Ok(outcome.exit_code())
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "qrlab: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("qrlab").chain(args.iter().copied()))
    }

    fn exit(args: &[&str]) -> (u8, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with_args(std::iter::once("qrlab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn parses_examples() {
        let c = parse(&["constants", "--p", "1.5", "--K", "1.2", "--n", "3"]).unwrap();
        assert_eq!(c.command, Command::Constants);
        assert_eq!((c.opts.p, c.opts.big_k, c.opts.n), (Some(1.5), Some(1.2), Some(3)));
        let c = parse(&["sharpness", "--p", "1.5", "--k", "0.05", "--beta-frac", "0.99"]).unwrap();
        assert_eq!(c.command, Command::Sharpness);
        assert_eq!((c.opts.k, c.opts.beta_frac), (Some(0.05), Some(0.99)));
        assert!(parse(&["theorem1-ball", "--p", "2"]).is_ok());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(exit(&["theorem2", "--p", "3"]).0, EXIT_USAGE);
        assert_eq!(exit(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(exit(&["pichorides", "--p", "1.5", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(exit(&["pichorides"]).0, EXIT_USAGE);
        assert_eq!(exit(&["sharpness", "--p", "1.5", "--beta-frac", "1.0"]).0, EXIT_USAGE);
        assert_eq!(exit(&["constants", "--p", "1.5", "--K", "0.5"]).0, EXIT_USAGE);
        assert_eq!(exit(&["equality", "--angles", "4"]).0, EXIT_USAGE);
        assert_eq!(exit(&[]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = exit(&["--help"]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.contains("theorem1-ball"));
    }

    #[test]
    fn missing_map_is_io() {
        let (code, _, err) = exit(&["theorem1", "--p", "1.5", "--map", "/nonexistent/map.json"]);
        assert_eq!(code, EXIT_IO);
        assert!(err.contains("/nonexistent/map.json"));
    }

    #[test]
    fn constants_table() {
        let (code, out, _) = exit(&["constants", "--p", "1.5", "--K", "1.2", "--n", "3"]);
        assert_eq!(code, EXIT_PASS);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        for key in [
            "A", "B", "C", "D", "c_thm1", "c_thm2", "d_thm2", "sec", "csc", "cot", "pbar",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn equality_report() {
        let (code, out, _) = exit(&["equality", "--n", "3"]);
        assert_eq!(code, EXIT_PASS);
        let r: VerificationReport = serde_json::from_str(&out).unwrap();
        assert!((r.ratio.unwrap() - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn threads_env() {
        assert!(matches!(configure_threads(Some("many")), Err(CliError::Usage(_))));
    }
}
