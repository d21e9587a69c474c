//! Command-line front end for the verification engine: parse flags, build a
//! run configuration, execute either a single verification run or a grid
//! sweep, and print or write the deterministic report.
//!
//! Exit codes: 0 every check passed, 1 at least one check failed, 2 the
//! input could not be parsed (also used for usage and I/O errors), 3 the
//! input parsed but violates `d² = 0`.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;

use contactspin::cli_reporter::{grid_sweep, run, Grid, InputSpec, RunConfig, Suite};
use contactspin::coframe_models::{parse_rat, BuiltinModel, ModelParams};

/// Verify almost contact metric structures with skew torsion: classification
/// flags, curvature, parallel spinors, dilation solvability, conformal
/// transformations, and the full theorem battery, reported deterministically.
#[derive(Parser, Debug)]
#[command(name = "contactspin", version, about)]
struct Cli {
    /// Structure definition in the JSON interchange format (overrides
    /// --family and the parameter flags)
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Builtin model: m5family (alias m5), heisenberg, s3r2, or s3s3_basis
    /// (alias s3s3)
    #[arg(long, value_name = "NAME")]
    family: Option<String>,

    /// Family parameter a as an exact rational, e.g. 2 or -3/2 (default 0)
    #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
    a: Option<String>,

    /// Family parameter b as an exact rational (default 0)
    #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
    b: Option<String>,

    /// Family parameter c as an exact rational (default 0)
    #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
    c: Option<String>,

    /// Family parameter d as an exact rational (default 0)
    #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
    d: Option<String>,

    /// Comma-separated suites to run: classify, curvature, spinors, killing,
    /// conformal, identities, theorems (default: all)
    #[arg(long, value_name = "LIST")]
    suites: Option<String>,

    /// Integer parameter ranges, e.g. "a=-2..2,b=-2..2,c=0,d=1"; runs the
    /// theorem battery on every point of the parametric family instead of
    /// the suites (parameters left out default to 0)
    #[arg(long, value_name = "RANGES")]
    grid: Option<String>,

    /// Report file; the report goes to stdout when omitted
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Report format: json or text
    #[arg(long, value_name = "FORMAT", default_value = "json")]
    format: String,

    /// Seed for randomized checks; falls back to the CONTACTSPIN_SEED
    /// environment variable, then 0
    #[arg(long, value_name = "N")]
    seed: Option<u64>,

    /// Residual bound for floating-point kernel verification
    #[arg(long, value_name = "X", default_value_t = 1e-9)]
    tolerance: f64,
}

/// Resolve the seed: flag, then environment, then 0.
fn resolve_seed(cli: &Cli) -> Result<u64> {
    if let Some(seed) = cli.seed {
        return Ok(seed);
    }
    match std::env::var("CONTACTSPIN_SEED") {
        Ok(value) => value
            .trim()
            .parse()
            .with_context(|| format!("CONTACTSPIN_SEED must be an unsigned integer, got `{value}`")),
        Err(_) => Ok(0),
    }
}

/// Build the library run configuration from the parsed flags.
fn build_config(cli: &Cli) -> Result<RunConfig> {
    let has_params = [&cli.a, &cli.b, &cli.c, &cli.d].iter().any(|p| p.is_some());
    let grid = cli.grid.as_deref().map(str::parse::<Grid>).transpose()?;
    if grid.is_some() {
        if cli.input.is_some() {
            bail!("--grid sweeps the parametric family; it cannot be combined with --input");
        }
        if has_params {
            bail!("--grid defines the family parameters; drop the --a/--b/--c/--d flags");
        }
        if let Some(family) = &cli.family {
            if family.parse::<BuiltinModel>()? != BuiltinModel::M5Family {
                bail!("--grid only sweeps the parametric family, not `{family}`");
            }
        }
    }
    let input = if let Some(path) = &cli.input {
        InputSpec::Path(path.clone())
    } else {
        let model = match &cli.family {
            Some(name) => name
                .parse::<BuiltinModel>()
                .with_context(|| format!("unknown builtin family `{name}`"))?,
            None if grid.is_some() => BuiltinModel::M5Family,
            None => bail!("either --input or --family is required"),
        };
        let params = if model == BuiltinModel::M5Family {
            let parse = |flag: &Option<String>, name: &str| match flag {
                Some(text) => parse_rat(text)
                    .with_context(|| format!("parameter --{name} must be a rational, got `{text}`")),
                None => parse_rat("0").context("zero literal"),
            };
            Some(ModelParams::new(
                parse(&cli.a, "a")?,
                parse(&cli.b, "b")?,
                parse(&cli.c, "c")?,
                parse(&cli.d, "d")?,
            ))
        } else {
            if has_params {
                bail!("--a/--b/--c/--d only apply to the parametric family");
            }
            None
        };
        InputSpec::Builtin { model, params }
    };
    let suites = match &cli.suites {
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<Suite>().map_err(anyhow::Error::from))
            .collect::<Result<Vec<_>>>()?,
        None => Suite::ALL.to_vec(),
    };
    let mut config = RunConfig::new(input);
    config.suites = suites;
    config.grid = grid;
    config.output = cli.output.clone();
    config.format = cli.format.parse()?;
    config.seed = resolve_seed(cli)?;
    config.tolerance = cli.tolerance;
    Ok(config)
}

fn real_main() -> Result<u8> {
    let cli = Cli::parse();
    let config = build_config(&cli)?;
    let (status, rendered) = if config.grid.is_some() {
        let outcome = grid_sweep(&config).context("grid sweep failed")?;
        (outcome.status, outcome.rendered)
    } else {
        let outcome = run(&config).context("verification run failed")?;
        (outcome.status, outcome.rendered)
    };
    if config.output.is_none() {
        print!("{rendered}");
    }
    Ok(status.code() as u8)
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}
