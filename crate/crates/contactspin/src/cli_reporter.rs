//! Deterministic verification reports over structure definitions.
//!
//! This module is the programmatic core of the command-line tool: it loads a
//! structure definition (from the JSON interchange format or a builtin
//! model), runs a configurable set of verification suites, and assembles the
//! results into a versioned JSON report plus a text rendering derived from
//! that JSON. Reports are byte-identical across repeated runs with the same
//! configuration and seed: all randomness flows through a seeded portable
//! generator, all map keys serialize in sorted order, and suites execute in
//! a fixed dependency order.
//!
//! Seven suites are available:
//!
//! * `classify` — classification flags plus cross-checks that each flag
//!   matches an independent recomputation of its defining condition;
//! * `curvature` — connection antisymmetry, both first structure equations,
//!   conditional circle-reduction of the curvature, Ricci profile;
//! * `spinors` — parallel-spinor kernels: route agreement, bundle split,
//!   flatness dichotomy;
//! * `killing` — dilation-equation solvability: the structure's own problem,
//!   seeded random instances, constancy consequences;
//! * `conformal` — special conformal transformations: identity factor,
//!   torsion route agreement, fundamental-form scaling;
//! * `identities` — the first-order curvature identities of the torsion
//!   connection;
//! * `theorems` — the full verification battery (supported families only).
//!
//! A suite that does not apply to the input (for example `theorems` on a
//! coframe outside the supported families) contributes one explicit
//! `*/not-applicable` entry recording the reason instead of being dropped
//! silently; such entries count as passing because no verified statement
//! failed. Every entry carries an `anchor`, a stable topic identifier that
//! groups related statements across suites.
//!
//! Exit statuses: 0 all checks passed, 1 at least one check failed, 2 the
//! input could not be parsed, 3 the input parsed but violates `d² = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::clifford_spin::action_matrix;
use crate::coframe_models::{make_builtin, BuiltinModel, ModelParams, StructureDefinition};
use crate::connection_curvature::{
    curvature_structure_holds, identity_suite, levi_civita_forms, torsion_connection_forms,
    torsion_curvature,
};
use crate::contact_structures::{classify, fundamental_form, reeb_form, torsion_form};
use crate::string_spinor_suite::{
    dilation_consequences, killing_equation_solve, parallel_spinors, random_killing_problem,
    special_conformal, theorem_suite, ConformalFactor, KillingProblem,
};
use crate::{ratz, Error, Result};

/// Number of seeded random dilation problems solved by the `killing` suite.
const KILLING_TRIALS: usize = 25;

/// One verification suite of the report runner, in dependency order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Classify,
    Curvature,
    Spinors,
    Killing,
    Conformal,
    Identities,
    Theorems,
}

impl Suite {
    /// Every suite, in execution order.
    pub const ALL: [Suite; 7] = [
        Suite::Classify,
        Suite::Curvature,
        Suite::Spinors,
        Suite::Killing,
        Suite::Conformal,
        Suite::Identities,
        Suite::Theorems,
    ];

    /// Canonical lowercase name.
    pub fn name(self) -> &'static str {
        match self {
            Suite::Classify => "classify",
            Suite::Curvature => "curvature",
            Suite::Spinors => "spinors",
            Suite::Killing => "killing",
            Suite::Conformal => "conformal",
            Suite::Identities => "identities",
            Suite::Theorems => "theorems",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classify" => Ok(Suite::Classify),
            "curvature" => Ok(Suite::Curvature),
            "spinors" => Ok(Suite::Spinors),
            "killing" => Ok(Suite::Killing),
            "conformal" => Ok(Suite::Conformal),
            "identities" => Ok(Suite::Identities),
            "theorems" => Ok(Suite::Theorems),
            other => Err(Error::InvalidDefinition(format!("unknown suite `{other}`"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where the structure definition of a run comes from.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)] // a handful of these exist per process
pub enum InputSpec {
    /// JSON interchange file on disk.
    Path(PathBuf),
    /// Builtin model, with parameters where the family needs them.
    Builtin { model: BuiltinModel, params: Option<ModelParams> },
}

/// Rendering of the report payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::InvalidDefinition(format!("unknown report format `{other}`"))),
        }
    }
}

/// Inclusive integer ranges for the four family parameters of a grid sweep,
/// in the order `a, b, c, d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    /// `(low, high)` per parameter; every range is finite by construction.
    pub ranges: [(i64, i64); 4],
}

/// Parameter letters in storage order.
const GRID_KEYS: [char; 4] = ['a', 'b', 'c', 'd'];

impl Grid {
    /// The same inclusive range for all four parameters.
    pub fn cube(low: i64, high: i64) -> Self {
        Grid { ranges: [(low, high); 4] }
    }

    /// A grid containing exactly one point.
    pub fn single_point(p: [i64; 4]) -> Self {
        Grid { ranges: p.map(|v| (v, v)) }
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.ranges.iter().map(|(lo, hi)| (hi - lo + 1) as usize).product()
    }

    /// Whether the grid is empty (never, for validated grids).
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All points in ascending lexicographic order `(a, b, c, d)`.
    pub fn points(&self) -> Vec<[i64; 4]> {
        let mut out = Vec::with_capacity(self.len());
        let [ra, rb, rc, rd] = self.ranges;
        for a in ra.0..=ra.1 {
            for b in rb.0..=rb.1 {
                for c in rc.0..=rc.1 {
                    for d in rd.0..=rd.1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        for (key, (lo, hi)) in GRID_KEYS.iter().zip(self.ranges) {
            if lo > hi {
                return Err(Error::InvalidDefinition(format!(
                    "grid range for `{key}` is empty: {lo}..{hi}"
                )));
            }
        }
        Ok(())
    }

    /// JSON map `{"a": "-2..2", ...}`.
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (key, (lo, hi)) in GRID_KEYS.iter().zip(self.ranges) {
            map.insert(key.to_string(), json!(format!("{lo}..{hi}")));
        }
        Value::Object(map)
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// Parse `"a=-2..2,b=0,d=1..3"`; parameters left out default to the
    /// single value 0, and a bare number is a one-point range.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidDefinition(msg);
        let mut ranges: [Option<(i64, i64)>; 4] = [None; 4];
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, range) = part
                .trim()
                .split_once('=')
                .ok_or_else(|| bad(format!("grid component `{part}` is not `param=range`")))?;
            let slot = GRID_KEYS
                .iter()
                .position(|k| key.trim() == k.to_string())
                .ok_or_else(|| bad(format!("unknown grid parameter `{key}`")))?;
            if ranges[slot].is_some() {
                return Err(bad(format!("grid parameter `{key}` given twice")));
            }
            let parse_end = |t: &str| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| bad(format!("grid bound `{t}` is not an integer")))
            };
            let bounds = match range.split_once("..") {
                Some((lo, hi)) => (parse_end(lo)?, parse_end(hi)?),
                None => {
                    let v = parse_end(range)?;
                    (v, v)
                }
            };
            ranges[slot] = Some(bounds);
        }
        let grid = Grid { ranges: ranges.map(|r| r.unwrap_or((0, 0))) };
        grid.validate()?;
        Ok(grid)
    }
}

/// Full configuration of a verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Structure definition source.
    pub input: InputSpec,
    /// Suites to execute; duplicates collapse, order is normalized.
    pub suites: Vec<Suite>,
    /// Parameter ranges for [`grid_sweep`].
    pub grid: Option<Grid>,
    /// Report destination; `None` keeps the report in memory only.
    pub output: Option<PathBuf>,
    /// Rendering of the written report.
    pub format: ReportFormat,
    /// Seed for every randomized check.
    pub seed: u64,
    /// Residual bound for floating-point kernel verification; must be
    /// positive. Kernel *ranks* are always decided by the pinned
    /// representation tolerance, this bound only applies to residual norms
    /// reported by the runner.
    pub tolerance: f64,
}

impl RunConfig {
    /// Configuration with all suites, JSON format, seed 0, and the default
    /// residual tolerance `1e-9`.
    pub fn new(input: InputSpec) -> Self {
        RunConfig {
            input,
            suites: Suite::ALL.to_vec(),
            grid: None,
            output: None,
            format: ReportFormat::Json,
            seed: 0,
            tolerance: 1e-9,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidDefinition(format!(
                "tolerance must be positive and finite, got {}",
                self.tolerance
            )));
        }
        if let Some(grid) = &self.grid {
            grid.validate()?;
        }
        Ok(())
    }

    /// Requested suites in execution order, without duplicates.
    fn normalized_suites(&self) -> Vec<Suite> {
        let mut suites = self.suites.clone();
        suites.sort();
        suites.dedup();
        suites
    }
}

/// Exit status of a run, mirrored by the command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    /// Every executed check passed.
    AllPassed,
    /// At least one check failed.
    ChecksFailed,
    /// The input could not be read or parsed.
    ParseFailure,
    /// The input parsed but some generator violates `d² = 0`.
    NotIntegrable,
}

impl RunStatus {
    /// Process exit code.
    pub fn code(self) -> i32 {
        match self {
            RunStatus::AllPassed => 0,
            RunStatus::ChecksFailed => 1,
            RunStatus::ParseFailure => 2,
            RunStatus::NotIntegrable => 3,
        }
    }
}

/// One executed check of a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    /// Unique name of the check instance, `<suite>/<statement>`.
    pub name: String,
    /// Stable topic identifier grouping related statements across suites.
    pub anchor: &'static str,
    /// Whether the statement held.
    pub pass: bool,
    /// Witness of the outcome: computed values, residuals, or a skip reason.
    pub value: String,
}

impl CheckRecord {
    fn new(
        name: impl Into<String>,
        anchor: &'static str,
        pass: bool,
        value: impl Into<String>,
    ) -> Self {
        CheckRecord { name: name.into(), anchor, pass, value: value.into() }
    }

    /// JSON object with the fields `name`, `anchor`, `pass`, `value`.
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "anchor": self.anchor,
            "pass": self.pass,
            "value": self.value,
        })
    }
}

/// Report metadata: enough to reproduce the run exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportMetadata {
    /// SHA-256 of the canonical definition JSON; absent when the input never
    /// parsed.
    pub definition_hash: Option<String>,
    /// Family parameters of the definition, when it carries them.
    pub parameters: Option<BTreeMap<String, String>>,
    /// Crate version that produced the report.
    pub tool_version: String,
    /// Seed all randomized checks derive from.
    pub seed: u64,
}

impl ReportMetadata {
    fn to_json(&self) -> Value {
        json!({
            "definition_hash": self.definition_hash,
            "parameters": self.parameters,
            "tool_version": self.tool_version,
            "seed": self.seed,
        })
    }
}

/// Outcome of all requested suites on one definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// Executed checks, in suite execution order.
    pub checks: Vec<CheckRecord>,
    /// Reproducibility metadata.
    pub metadata: ReportMetadata,
    /// Parse or integrability failure, when the run never reached the
    /// suites.
    pub error: Option<String>,
}

impl VerificationReport {
    /// Whether every executed check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Versioned JSON payload; the text rendering derives from this value.
    pub fn to_json(&self) -> Value {
        json!({
            "report_version": 1,
            "checks": self.checks.iter().map(CheckRecord::to_json).collect::<Vec<_>>(),
            "error": self.error,
            "metadata": self.metadata.to_json(),
        })
    }
}

/// Everything a run produced: the status, the structured report, and the
/// exact bytes written to the report file (or that would be written).
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// Exit status.
    pub status: RunStatus,
    /// Structured report.
    pub report: VerificationReport,
    /// Rendered payload in the configured format, newline-terminated.
    pub rendered: String,
}

/// Load the definition described by an input specification; the error string
/// becomes the parse-failure report.
fn load_input(input: &InputSpec) -> std::result::Result<StructureDefinition, String> {
    match input {
        InputSpec::Path(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read `{}`: {e}", path.display()))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| format!("`{}` is not JSON: {e}", path.display()))?;
            StructureDefinition::from_json(&value).map_err(|e| e.to_string())
        }
        InputSpec::Builtin { model, params } => {
            make_builtin(*model, params.as_ref()).map_err(|e| e.to_string())
        }
    }
}

/// SHA-256 hex digest of the canonical (sorted-key) definition JSON.
fn definition_hash(def: &StructureDefinition) -> Result<String> {
    let value = def.to_json()?;
    let canonical = serde_json::to_string(&value)
        .map_err(|e| Error::InvalidDefinition(format!("serialization failed: {e}")))?;
    let digest = Sha256::digest(canonical.as_bytes());
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

/// Family parameters as a sorted string map, when present.
fn parameter_map(def: &StructureDefinition) -> Option<BTreeMap<String, String>> {
    let params = def.family()?.params.as_ref()?;
    let mut map = BTreeMap::new();
    map.insert("a".into(), params.a.to_string());
    map.insert("b".into(), params.b.to_string());
    map.insert("c".into(), params.c.to_string());
    map.insert("d".into(), params.d.to_string());
    Some(map)
}

/// Execute the configured suites on an input definition.
///
/// Exit status 0 means every check passed, 1 that some check failed, 2 that
/// the input could not be parsed, and 3 that the coframe violates `d² = 0`.
/// When an output path is configured the rendered report is written
/// atomically (temporary file plus rename); parse and integrability failures
/// still produce a report, with the reason under `error`.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    config.validate()?;
    let def = match load_input(&config.input) {
        Ok(def) => def,
        Err(message) => {
            return finish(config, RunStatus::ParseFailure, Vec::new(), None, Some(message));
        }
    };
    let validation = def.validate();
    if !validation.is_valid() {
        let failing: Vec<String> =
            validation.failures.iter().map(|f| format!("e{}", f.generator)).collect();
        let message = format!("coframe violates d² = 0 at {}", failing.join(", "));
        return finish(config, RunStatus::NotIntegrable, Vec::new(), Some(&def), Some(message));
    }
    let mut checks = Vec::new();
    for suite in config.normalized_suites() {
        checks.extend(run_suite(suite, &def, config));
    }
    let status =
        if checks.iter().all(|c| c.pass) { RunStatus::AllPassed } else { RunStatus::ChecksFailed };
    finish(config, status, checks, Some(&def), None)
}

/// Assemble, render, and (when configured) write the report.
fn finish(
    config: &RunConfig,
    status: RunStatus,
    checks: Vec<CheckRecord>,
    def: Option<&StructureDefinition>,
    error: Option<String>,
) -> Result<RunOutcome> {
    let metadata = ReportMetadata {
        definition_hash: def.map(definition_hash).transpose()?,
        parameters: def.and_then(parameter_map),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: config.seed,
    };
    let report = VerificationReport { checks, metadata, error };
    let rendered = render(&report.to_json(), config.format)?;
    if let Some(path) = &config.output {
        write_atomic(path, &rendered)?;
    }
    Ok(RunOutcome { status, report, rendered })
}

/// Render a report JSON value in the requested format, newline-terminated.
fn render(value: &Value, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(value)
                .map_err(|e| Error::InvalidDefinition(format!("serialization failed: {e}")))?;
            text.push('\n');
            Ok(text)
        }
        ReportFormat::Text => Ok(render_text(value)),
    }
}

/// Write the report through a sibling temporary file and an atomic rename.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_os_string();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    let io = |e: std::io::Error| Error::ReportIo(format!("{}: {e}", path.display()));
    std::fs::write(&tmp, contents).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

/// Text rendering, derived entirely from the JSON payload.
///
/// Handles both report shapes: per-definition reports (a `checks` array) and
/// grid-sweep aggregates (a `failures` array).
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    let version = value.get("report_version").and_then(Value::as_i64).unwrap_or(0);
    let meta = value.get("metadata").cloned().unwrap_or(Value::Null);
    let tool = meta.get("tool_version").and_then(Value::as_str).unwrap_or("?").to_string();
    let seed = meta.get("seed").and_then(Value::as_u64).unwrap_or(0);
    if let Some(failures) = value.get("failures").and_then(Value::as_array) {
        let points = value.get("points").and_then(Value::as_u64).unwrap_or(0);
        out.push_str(&format!("grid sweep report v{version}\n"));
        out.push_str(&format!("tool {tool} | seed {seed}\n"));
        if let Some(grid) = value.get("grid").and_then(Value::as_object) {
            let ranges: Vec<String> = grid
                .iter()
                .map(|(k, v)| format!("{k}={}", v.as_str().unwrap_or("?")))
                .collect();
            out.push_str(&format!("grid: {}\n", ranges.join(" ")));
        }
        out.push_str(&format!("{points} points, {} failing\n", failures.len()));
        for failure in failures {
            let params = failure
                .get("parameters")
                .and_then(Value::as_object)
                .map(|m| {
                    m.iter()
                        .map(|(k, v)| format!("{k}={}", v.as_str().unwrap_or("?")))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_else(|| "?".into());
            out.push_str(&format!("point {params}\n"));
            for check in failure.get("checks").and_then(Value::as_array).into_iter().flatten() {
                out.push_str(&render_check_line(check));
            }
        }
        return out;
    }
    out.push_str(&format!("verification report v{version}\n"));
    let hash = meta
        .get("definition_hash")
        .and_then(Value::as_str)
        .map(|h| h.to_string())
        .unwrap_or_else(|| "none".into());
    out.push_str(&format!("tool {tool} | seed {seed} | definition sha256 {hash}\n"));
    if let Some(params) = meta.get("parameters").and_then(Value::as_object) {
        let rendered: Vec<String> =
            params.iter().map(|(k, v)| format!("{k}={}", v.as_str().unwrap_or("?"))).collect();
        out.push_str(&format!("parameters: {}\n", rendered.join(" ")));
    }
    if let Some(error) = value.get("error").and_then(Value::as_str) {
        out.push_str(&format!("error: {error}\n"));
    }
    let checks = value.get("checks").and_then(Value::as_array).cloned().unwrap_or_default();
    let passed = checks.iter().filter(|c| c.get("pass") == Some(&Value::Bool(true))).count();
    out.push_str(&format!("{} checks: {passed} passed, {} failed\n", checks.len(), checks.len() - passed));
    for check in &checks {
        out.push_str(&render_check_line(check));
    }
    out
}

fn render_check_line(check: &Value) -> String {
    let pass = check.get("pass") == Some(&Value::Bool(true));
    let name = check.get("name").and_then(Value::as_str).unwrap_or("?");
    let anchor = check.get("anchor").and_then(Value::as_str).unwrap_or("?");
    let value = check.get("value").and_then(Value::as_str).unwrap_or("");
    format!("{} {name} [{anchor}] {value}\n", if pass { "PASS" } else { "FAIL" })
}

/// Run one suite, converting whole-suite inapplicability into an explicit
/// skip entry.
fn run_suite(suite: Suite, def: &StructureDefinition, config: &RunConfig) -> Vec<CheckRecord> {
    let result = match suite {
        Suite::Classify => classify_suite(def),
        Suite::Curvature => curvature_suite(def),
        Suite::Spinors => spinors_suite(def),
        Suite::Killing => killing_suite(def, config),
        Suite::Conformal => conformal_suite(def),
        Suite::Identities => identities_suite(def),
        Suite::Theorems => theorems_suite(def),
    };
    match result {
        Ok(checks) => checks,
        Err(e) => vec![CheckRecord::new(
            format!("{}/not-applicable", suite.name()),
            "suite-applicability",
            true,
            format!("skipped: {e}"),
        )],
    }
}

/// Classification flags plus independent recomputation of each flag's
/// defining condition.
fn classify_suite(def: &StructureDefinition) -> Result<Vec<CheckRecord>> {
    const ANCHOR: &str = "structure-classification";
    let flags = classify(def)?;
    let f = fundamental_form(def);
    let df = def.exterior_derivative(&f)?;
    let eta = reeb_form(def);
    let deta = def.exterior_derivative(&eta)?;
    let mut checks = Vec::new();
    let chain = (!flags.sasakian || flags.alpha_sasakian)
        && (!flags.alpha_sasakian || flags.quasi_sasakian)
        && (!flags.quasi_sasakian || flags.normal);
    checks.push(CheckRecord::new(
        "classify/flag-implication-chain",
        ANCHOR,
        chain,
        format!(
            "normal={} quasi_sasakian={} alpha_sasakian={} sasakian={} contact={} killing_xi={}",
            flags.normal,
            flags.quasi_sasakian,
            flags.alpha_sasakian,
            flags.sasakian,
            flags.contact,
            flags.killing_xi
        ),
    ));
    let (alpha_ok, alpha_value) = match &flags.alpha {
        Some(alpha) => ((&f * alpha) == deta, format!("dη = {alpha}·F")),
        None => (true, "no proportionality constant".into()),
    };
    checks.push(CheckRecord::new(
        "classify/alpha-proportionality-witness",
        ANCHOR,
        alpha_ok,
        alpha_value,
    ));
    let xi = crate::exterior_core::FrameVector::new(def.xi_index());
    let killing_recomputed = df.interior(xi)?.is_zero();
    checks.push(CheckRecord::new(
        "classify/killing-flag-matches-contraction",
        ANCHOR,
        flags.killing_xi == killing_recomputed,
        format!("ξ⌟dF = 0 recomputed as {killing_recomputed}"),
    ));
    let volume = eta.wedge(&deta)?.wedge(&deta)?;
    checks.push(CheckRecord::new(
        "classify/contact-flag-matches-volume",
        ANCHOR,
        flags.contact == !volume.is_zero(),
        format!("η∧dη∧dη = {volume}"),
    ));
    checks.push(CheckRecord::new(
        "classify/quasi-sasakian-flag-decomposes",
        ANCHOR,
        flags.quasi_sasakian == (flags.normal && df.is_zero()),
        format!("dF = {df}"),
    ));
    Ok(checks)
}

/// Connection antisymmetry, both first structure equations, conditional
/// circle reduction, and the Ricci profile.
fn curvature_suite(def: &StructureDefinition) -> Result<Vec<CheckRecord>> {
    const ANCHOR: &str = "connection-and-curvature";
    let lc = levi_civita_forms(def)?;
    let torsion = torsion_form(def)?;
    let with_torsion = torsion_connection_forms(def, &torsion)?;
    let mut checks = Vec::new();
    checks.push(CheckRecord::new(
        "curvature/connection-metric-antisymmetry",
        ANCHOR,
        lc.is_antisymmetric() && with_torsion.is_antisymmetric(),
        "ω and ω̃ are antisymmetric",
    ));
    let lc_residuals = lc.first_structure_residuals(def, None)?;
    checks.push(CheckRecord::new(
        "curvature/levi-civita-first-structure",
        ANCHOR,
        lc_residuals.is_empty(),
        format!("{} nonzero residuals", lc_residuals.len()),
    ));
    let t_residuals = with_torsion.first_structure_residuals(def, Some(&torsion))?;
    checks.push(CheckRecord::new(
        "curvature/torsion-first-structure",
        ANCHOR,
        t_residuals.is_empty(),
        format!("{} nonzero residuals", t_residuals.len()),
    ));
    let curv = torsion_curvature(def)?;
    let (reduction_ok, reduction_value) = match curv.abelian_curvature() {
        Some(omega_a) => {
            (curvature_structure_holds(def, &curv)?, format!("Ω^A = {omega_a}"))
        }
        None => (true, "holonomy not reduced to the diagonal circle".into()),
    };
    checks.push(CheckRecord::new(
        "curvature/circle-reduction-consistency",
        ANCHOR,
        reduction_ok,
        reduction_value,
    ));
    let diagonal: Vec<String> = (1..=5u8).map(|i| curv.ricci(i, i).to_string()).collect();
    checks.push(CheckRecord::new(
        "curvature/ricci-profile",
        ANCHOR,
        true,
        format!(
            "Ric diag = [{}], scalar = {}, symmetric = {}",
            diagonal.join(", "),
            curv.scalar(),
            curv.ricci_is_symmetric()
        ),
    ));
    Ok(checks)
}

/// Parallel-spinor kernels: route agreement, bundle split bound, flatness
/// dichotomy, and the raw dimensions.
fn spinors_suite(def: &StructureDefinition) -> Result<Vec<CheckRecord>> {
    const ANCHOR: &str = "holonomy-reduction";
    let data = parallel_spinors(def)?;
    let [p, m, s2] = data.dimensions();
    let mut checks = Vec::new();
    checks.push(CheckRecord::new(
        "spinors/holonomy-routes-agree",
        ANCHOR,
        data.routes_agree(),
        format!("lift kernels {:?}, curvature kernels {:?}", data.dimensions(), data.curvature_kernel_dims),
    ));
    checks.push(CheckRecord::new(
        "spinors/bundle-kernels-within-total",
        ANCHOR,
        p + m + s2 <= data.total_dimension,
        format!("bundle sum {}, total {}", p + m + s2, data.total_dimension),
    ));
    checks.push(CheckRecord::new(
        "spinors/flatness-dichotomy",
        ANCHOR,
        crate::string_spinor_suite::flatness_dichotomy_holds(def)?,
        "half-spinor and plane kernels coexist only on flat connections",
    ));
    checks.push(CheckRecord::new(
        "spinors/kernel-dimensions",
        ANCHOR,
        true,
        format!("dims (Σ⁺, Σ⁻, Σ²) = ({p}, {m}, {s2}), gauge reduced = {}", data.gauge_reduced),
    ));
    Ok(checks)
}

/// Residual norm of the dilation operator on every returned kernel spinor,
/// as the maximum squared norm in double precision.
fn max_kernel_residual(problem: &KillingProblem) -> Result<f64> {
    let op = action_matrix(&problem.operator_form())?;
    let solution = killing_equation_solve(problem)?;
    let mut worst: f64 = 0.0;
    for psi in solution
        .sigma_plus_kernel
        .iter()
        .chain(&solution.sigma_minus_kernel)
        .chain(&solution.sigma2_kernel)
    {
        let residual = op.apply(psi).norm_sq();
        let value = residual.to_f64().unwrap_or(f64::INFINITY);
        worst = worst.max(value);
    }
    Ok(worst)
}

/// Dilation-equation solvability: the structure's own problem, seeded random
/// instances, and the constancy consequences on plane-solvable data.
fn killing_suite(def: &StructureDefinition, config: &RunConfig) -> Result<Vec<CheckRecord>> {
    const ANCHOR: &str = "dilation-solvability";
    let problem = KillingProblem::from_structure(def, crate::exterior_core::Form::zero(5))?;
    let solution = killing_equation_solve(&problem)?;
    let mut checks = Vec::new();
    checks.push(CheckRecord::new(
        "killing/structure-problem-equivalence",
        ANCHOR,
        solution.equivalence_pm() && solution.equivalence_2(),
        format!(
            "half-spinor condition {}, plane condition {}, kernel dims ({}, {}, {})",
            solution.condition_pm,
            solution.condition_2,
            solution.sigma_plus_kernel.len(),
            solution.sigma_minus_kernel.len(),
            solution.sigma2_kernel.len()
        ),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut all_agree = true;
    let mut worst_residual: f64 = max_kernel_residual(&problem)?;
    let mut pm_solvable = 0usize;
    let mut plane_solvable = 0usize;
    for trial in 0..KILLING_TRIALS {
        let random = random_killing_problem(&mut rng, trial);
        let sol = killing_equation_solve(&random)?;
        all_agree &= sol.equivalence_pm() && sol.equivalence_2();
        pm_solvable += usize::from(sol.condition_pm);
        plane_solvable += usize::from(sol.condition_2);
        worst_residual = worst_residual.max(max_kernel_residual(&random)?);
    }
    checks.push(CheckRecord::new(
        "killing/seeded-random-equivalence",
        ANCHOR,
        all_agree,
        format!(
            "{KILLING_TRIALS} trials, {pm_solvable} half-spinor solvable, {plane_solvable} plane solvable"
        ),
    ));
    checks.push(CheckRecord::new(
        "killing/kernel-residual-bound",
        ANCHOR,
        worst_residual <= config.tolerance,
        format!("max ‖(2dΦ−T)·ψ‖² over kernel bases ≤ {:e} required", config.tolerance),
    ));
    let (consequence_ok, consequence_value) = if solution.condition_2 {
        let data = dilation_consequences(&problem, true)?;
        (
            data.deta_proportional_f && data.phi_constant_forced && data.identity_residual.is_zero(),
            format!(
                "dη ∝ F with factor {}",
                data.a_value.map(|a| a.to_string()).unwrap_or_else(|| "?".into())
            ),
        )
    } else {
        (true, "plane condition fails, consequences vacuous".into())
    };
    checks.push(CheckRecord::new(
        "killing/constant-dilation-consequences",
        ANCHOR,
        consequence_ok,
        consequence_value,
    ));
    Ok(checks)
}

/// Special conformal transformations: identity factor, torsion route
/// agreement at scale 2, quadratic fundamental scaling, and torsion
/// invariance when the fundamental form is closed.
fn conformal_suite(def: &StructureDefinition) -> Result<Vec<CheckRecord>> {
    const ANCHOR: &str = "conformal-transformations";
    let mut checks = Vec::new();
    let identity = special_conformal(def, &ConformalFactor::identity())?;
    checks.push(CheckRecord::new(
        "conformal/identity-factor-fixes-structure",
        ANCHOR,
        identity.definition.same_constants(def) && identity.routes_agree(),
        "scale 1 leaves the coframe and torsion unchanged",
    ));
    let doubled = special_conformal(def, &ConformalFactor::new(ratz(2))?)?;
    checks.push(CheckRecord::new(
        "conformal/torsion-routes-agree",
        ANCHOR,
        doubled.routes_agree(),
        "structural torsion equals T + (s²−1)·dᵠF at s = 2",
    ));
    let f = fundamental_form(def);
    checks.push(CheckRecord::new(
        "conformal/fundamental-scales-quadratically",
        ANCHOR,
        doubled.fundamental == (&f * &ratz(4)),
        format!("F' = {}", doubled.fundamental),
    ));
    let df = def.exterior_derivative(&f)?;
    let (invariant_ok, invariant_value) = if df.is_zero() {
        (
            doubled.torsion_from_structure == torsion_form(def)?,
            "closed fundamental form keeps the torsion fixed".into(),
        )
    } else {
        (true, format!("dF = {df} ≠ 0, invariance vacuous"))
    };
    checks.push(CheckRecord::new(
        "conformal/closed-fundamental-torsion-invariant",
        ANCHOR,
        invariant_ok,
        invariant_value,
    ));
    Ok(checks)
}

/// The first-order curvature identities of the torsion connection, one entry
/// per identity.
fn identities_suite(def: &StructureDefinition) -> Result<Vec<CheckRecord>> {
    const ANCHOR: &str = "torsion-identities";
    Ok(identity_suite(def)?
        .into_iter()
        .map(|check| {
            let value = if check.pass {
                "residual 0".to_string()
            } else {
                format!("residual {}", check.residual)
            };
            CheckRecord::new(format!("identities/{}", check.name), ANCHOR, check.pass, value)
        })
        .collect())
}

/// Topic anchor of a verification-battery check.
fn battery_anchor(name: &str) -> &'static str {
    match name {
        "reeb-field-killing" | "nijenhuis-tensor-vanishes" | "fundamental-form-closed"
        | "contact-volume-proportionality" | "family-scalar-match" => "structure-classification",
        "torsion-is-reeb-wedge" | "torsion-coclosed" => "torsion-identities",
        "vertical-plane-parallel-spinors" | "flatness-dichotomy" | "holonomy-routes-agree" => {
            "holonomy-reduction"
        }
        "ricci-horizontal-projection" | "curvature-circle-reduction" => "connection-and-curvature",
        "obstruction-four-form" | "obstruction-vertical-plane-action"
        | "obstruction-horizontal-line-action" => "parallel-spinor-obstruction",
        "canonical-gauge-alpha-sasakian" | "gauge-reaches-nilpotent-model"
        | "frame-change-reaches-sphere-product" | "gauge-reaches-rotation-cylinder" => {
            "model-equivalences"
        }
        _ => "verification-battery",
    }
}

/// The full verification battery, one entry per battery check.
fn theorems_suite(def: &StructureDefinition) -> Result<Vec<CheckRecord>> {
    Ok(theorem_suite(def)?
        .into_iter()
        .map(|check| {
            CheckRecord::new(
                format!("theorems/{}", check.name),
                battery_anchor(check.name),
                check.pass,
                check.detail,
            )
        })
        .collect())
}

/// One grid point whose battery reported failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepFailure {
    /// Family parameters `(a, b, c, d)` of the point.
    pub params: [i64; 4],
    /// The failing checks only.
    pub checks: Vec<CheckRecord>,
}

/// Outcome of a grid sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    /// Exit status (0 when no point failed).
    pub status: RunStatus,
    /// Number of points visited.
    pub points: usize,
    /// Failing points in ascending lexicographic parameter order.
    pub failures: Vec<SweepFailure>,
    /// Versioned JSON payload of the aggregate report.
    pub report: Value,
    /// Rendered payload in the configured format, newline-terminated.
    pub rendered: String,
}

/// Run the verification battery on every point of the configured parameter
/// grid and aggregate the failures.
///
/// The sweep always instantiates the four-parameter family; points are
/// visited in ascending lexicographic order `(a, b, c, d)`, and the report
/// lists failing points only. A battery error at a point is recorded as a
/// failing `theorems/error` entry rather than aborting the sweep.
pub fn grid_sweep(config: &RunConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let grid = config
        .grid
        .as_ref()
        .ok_or_else(|| Error::InvalidDefinition("grid sweep needs parameter ranges".into()))?;
    let points = grid.points();
    let mut failures = Vec::new();
    for params in &points {
        let [a, b, c, d] = *params;
        let def =
            make_builtin(BuiltinModel::M5Family, Some(&ModelParams::from_ints(a, b, c, d)))?;
        let failing: Vec<CheckRecord> = match theorems_suite(&def) {
            Ok(checks) => checks.into_iter().filter(|c| !c.pass).collect(),
            Err(e) => vec![CheckRecord::new(
                "theorems/error",
                "verification-battery",
                false,
                e.to_string(),
            )],
        };
        if !failing.is_empty() {
            failures.push(SweepFailure { params: *params, checks: failing });
        }
    }
    let status = if failures.is_empty() { RunStatus::AllPassed } else { RunStatus::ChecksFailed };
    let failures_json: Vec<Value> = failures
        .iter()
        .map(|f| {
            let mut params = serde_json::Map::new();
            for (key, v) in GRID_KEYS.iter().zip(f.params) {
                params.insert(key.to_string(), json!(v.to_string()));
            }
            json!({
                "parameters": Value::Object(params),
                "checks": f.checks.iter().map(CheckRecord::to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let report = json!({
        "report_version": 1,
        "grid": grid.to_json(),
        "points": points.len(),
        "failures": failures_json,
        "metadata": {
            "definition_hash": Value::Null,
            "parameters": Value::Null,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "seed": config.seed,
        },
    });
    let rendered = render(&report, config.format)?;
    if let Some(path) = &config.output {
        write_atomic(path, &rendered)?;
    }
    Ok(SweepOutcome { status, points: points.len(), failures, report, rendered })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior_core::Form;

    fn m5_input(a: i64, b: i64, c: i64, d: i64) -> InputSpec {
        InputSpec::Builtin {
            model: BuiltinModel::M5Family,
            params: Some(ModelParams::from_ints(a, b, c, d)),
        }
    }

    fn scratch_path(name: &str) -> PathBuf {
        std::env::temp_dir().join(format!("contactspin-reporter-{}-{name}", std::process::id()))
    }

    #[test]
    fn sasaki_point_passes_all_suites_with_many_checks() {
        let config = RunConfig::new(m5_input(2, 0, 0, 2));
        let outcome = run(&config).expect("run must succeed");
        assert_eq!(outcome.status, RunStatus::AllPassed, "every check must pass");
        assert!(
            outcome.report.checks.len() >= 30,
            "all suites together must report at least 30 checks, got {}",
            outcome.report.checks.len()
        );
        assert!(outcome.report.passed(), "report must agree with the status");
        assert!(outcome.report.error.is_none(), "no error on a clean run");
    }

    #[test]
    fn report_metadata_names_hash_parameters_version_and_seed() {
        let mut config = RunConfig::new(m5_input(1, 2, 3, 5));
        config.seed = 42;
        config.suites = vec![Suite::Classify];
        let outcome = run(&config).expect("run must succeed");
        let meta = &outcome.report.metadata;
        let hash = meta.definition_hash.as_deref().expect("definition hash present");
        assert_eq!(hash.len(), 64, "SHA-256 hex digest has 64 characters");
        assert!(hash.chars().all(|c| c.is_ascii_hexdigit()), "digest must be hex");
        let params = meta.parameters.as_ref().expect("family parameters present");
        assert_eq!(params.get("a").map(String::as_str), Some("1"));
        assert_eq!(params.get("d").map(String::as_str), Some("5"));
        assert_eq!(meta.seed, 42, "seed must round-trip into the metadata");
        assert_eq!(meta.tool_version, env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn empty_suite_list_passes_with_no_checks() {
        let mut config = RunConfig::new(m5_input(2, 0, 0, 2));
        config.suites = Vec::new();
        let outcome = run(&config).expect("run must succeed");
        assert_eq!(outcome.status, RunStatus::AllPassed);
        assert!(outcome.report.checks.is_empty(), "no suites means no checks");
    }

    #[test]
    fn duplicate_suites_collapse_in_dependency_order() {
        let mut config = RunConfig::new(m5_input(2, 0, 0, 2));
        config.suites = vec![Suite::Identities, Suite::Classify, Suite::Identities];
        let outcome = run(&config).expect("run must succeed");
        let names: Vec<&str> = outcome.report.checks.iter().map(|c| c.name.as_str()).collect();
        let classify_count = names.iter().filter(|n| n.starts_with("classify/")).count();
        let identities_count = names.iter().filter(|n| n.starts_with("identities/")).count();
        assert_eq!(classify_count, 5, "classify contributes its five checks once");
        assert_eq!(identities_count, 5, "identities runs once despite the duplicate");
        assert!(
            names.first().is_some_and(|n| n.starts_with("classify/")),
            "classify must run before identities"
        );
    }

    #[test]
    fn missing_input_file_is_a_parse_failure() {
        let config = RunConfig::new(InputSpec::Path(scratch_path("missing.json")));
        let outcome = run(&config).expect("run must still produce a report");
        assert_eq!(outcome.status, RunStatus::ParseFailure);
        assert_eq!(outcome.status.code(), 2);
        assert!(outcome.report.error.is_some(), "parse failures must carry a reason");
        assert!(outcome.report.checks.is_empty(), "no checks run on unparsable input");
    }

    #[test]
    fn malformed_json_is_a_parse_failure() {
        let path = scratch_path("garbage.json");
        std::fs::write(&path, "not json {").expect("scratch file must be writable");
        let config = RunConfig::new(InputSpec::Path(path.clone()));
        let outcome = run(&config).expect("run must still produce a report");
        assert_eq!(outcome.status, RunStatus::ParseFailure);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn zeroed_auxiliary_curvature_fails_integrability_with_status_3() {
        let def = make_builtin(BuiltinModel::M5Family, Some(&ModelParams::from_ints(2, 0, 0, 2)))
            .expect("builtin point");
        let broken = def
            .override_differential(6, Form::zero(6))
            .expect("overriding dA is representable");
        let path = scratch_path("broken.json");
        let payload = broken.to_json().expect("serializable");
        std::fs::write(&path, payload.to_string()).expect("scratch file must be writable");
        let config = RunConfig::new(InputSpec::Path(path.clone()));
        let outcome = run(&config).expect("run must still produce a report");
        assert_eq!(outcome.status, RunStatus::NotIntegrable);
        assert_eq!(outcome.status.code(), 3);
        let error = outcome.report.error.expect("integrability failure carries a reason");
        assert!(error.contains("d²"), "reason must name the failed identity: {error}");
        assert!(
            outcome.report.metadata.definition_hash.is_some(),
            "the definition parsed, so its hash must be present"
        );
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn reports_are_byte_identical_across_repeated_runs() {
        let mut config = RunConfig::new(m5_input(1, 2, 3, 5));
        config.seed = 7;
        config.suites = vec![Suite::Killing, Suite::Theorems];
        let first = run(&config).expect("first run");
        let second = run(&config).expect("second run");
        assert_eq!(first.rendered, second.rendered, "same config and seed, same bytes");
        assert_eq!(first.status, second.status);
    }

    #[test]
    fn different_seeds_change_only_the_random_trial_summary() {
        let mut config = RunConfig::new(m5_input(0, 1, 1, 0));
        config.suites = vec![Suite::Killing];
        config.seed = 1;
        let one = run(&config).expect("seed 1 run");
        config.seed = 2;
        let two = run(&config).expect("seed 2 run");
        assert_eq!(one.status, RunStatus::AllPassed);
        assert_eq!(two.status, RunStatus::AllPassed, "equivalence holds for every seed");
    }

    #[test]
    fn json_report_has_version_checks_and_metadata_keys() {
        let mut config = RunConfig::new(m5_input(2, 0, 0, 2));
        config.suites = vec![Suite::Classify];
        let outcome = run(&config).expect("run must succeed");
        let value: Value = serde_json::from_str(&outcome.rendered).expect("rendered JSON parses");
        assert_eq!(value.get("report_version"), Some(&json!(1)));
        let checks = value.get("checks").and_then(Value::as_array).expect("checks array");
        assert!(!checks.is_empty());
        for check in checks {
            for key in ["name", "anchor", "pass", "value"] {
                assert!(check.get(key).is_some(), "check entry must carry `{key}`");
            }
        }
        let meta = value.get("metadata").expect("metadata object");
        for key in ["definition_hash", "parameters", "tool_version", "seed"] {
            assert!(meta.get(key).is_some(), "metadata must carry `{key}`");
        }
    }

    #[test]
    fn text_format_renders_one_line_per_check() {
        let mut config = RunConfig::new(m5_input(2, 0, 0, 2));
        config.suites = vec![Suite::Classify];
        config.format = ReportFormat::Text;
        let outcome = run(&config).expect("run must succeed");
        assert!(outcome.rendered.starts_with("verification report v1\n"));
        let pass_lines = outcome.rendered.lines().filter(|l| l.starts_with("PASS ")).count();
        assert_eq!(pass_lines, outcome.report.checks.len(), "one PASS line per check");
        assert!(outcome.rendered.contains("5 checks: 5 passed, 0 failed"));
    }

    #[test]
    fn report_file_is_written_atomically() {
        let path = scratch_path("report.json");
        let mut config = RunConfig::new(m5_input(2, 0, 0, 2));
        config.suites = vec![Suite::Classify];
        config.output = Some(path.clone());
        let outcome = run(&config).expect("run must succeed");
        let written = std::fs::read_to_string(&path).expect("report file exists");
        assert_eq!(written, outcome.rendered, "file content matches the rendering");
        let mut tmp = path.as_os_str().to_os_string();
        tmp.push(".tmp");
        assert!(!PathBuf::from(tmp).exists(), "temporary file must be renamed away");
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn unsupported_battery_input_yields_explicit_skip_entry() {
        let mut config = RunConfig::new(InputSpec::Builtin {
            model: BuiltinModel::S3S3Basis,
            params: None,
        });
        config.suites = vec![Suite::Theorems];
        let outcome = run(&config).expect("run must succeed");
        assert_eq!(outcome.status, RunStatus::AllPassed, "a skip is not a failure");
        assert_eq!(outcome.report.checks.len(), 1, "exactly one explicit skip entry");
        let entry = &outcome.report.checks[0];
        assert_eq!(entry.name, "theorems/not-applicable");
        assert!(entry.value.starts_with("skipped: "), "skip reason must be recorded");
    }

    #[test]
    fn nonpositive_tolerance_is_rejected() {
        let mut config = RunConfig::new(m5_input(2, 0, 0, 2));
        config.tolerance = 0.0;
        assert!(run(&config).is_err(), "zero tolerance violates the config invariant");
        config.tolerance = -1e-9;
        assert!(run(&config).is_err(), "negative tolerance violates the config invariant");
    }

    #[test]
    fn grid_parses_ranges_singletons_and_defaults() {
        let grid: Grid = "a=-2..2, b=0, d=1..3".parse().expect("well-formed grid");
        assert_eq!(grid.ranges, [(-2, 2), (0, 0), (0, 0), (1, 3)]);
        assert_eq!(grid.len(), 15, "5 a-values times 3 d-values");
        assert!("x=1..2".parse::<Grid>().is_err(), "unknown parameter letter");
        assert!("a=2..1".parse::<Grid>().is_err(), "empty range");
        assert!("a=1,a=2".parse::<Grid>().is_err(), "duplicate parameter");
        assert!("a=1..b".parse::<Grid>().is_err(), "non-integer bound");
    }

    #[test]
    fn grid_points_are_lexicographically_sorted() {
        let grid = Grid { ranges: [(0, 1), (0, 0), (0, 0), (-1, 0)] };
        let points = grid.points();
        assert_eq!(
            points,
            vec![[0, 0, 0, -1], [0, 0, 0, 0], [1, 0, 0, -1], [1, 0, 0, 0]],
            "points must ascend lexicographically"
        );
        let mut sorted = points.clone();
        sorted.sort();
        assert_eq!(points, sorted);
    }

    #[test]
    fn small_cube_sweep_has_no_failures() {
        let mut config = RunConfig::new(m5_input(0, 0, 0, 0));
        config.grid = Some(Grid::cube(-1, 1));
        let outcome = grid_sweep(&config).expect("sweep must succeed");
        assert_eq!(outcome.points, 81, "3^4 grid points");
        assert!(outcome.failures.is_empty(), "the battery holds at every point");
        assert_eq!(outcome.status, RunStatus::AllPassed);
        assert!(outcome.rendered.contains("\"points\": 81"));
    }

    #[test]
    fn single_point_sweep_matches_the_run_verdict() {
        let mut config = RunConfig::new(m5_input(2, 0, 0, 2));
        config.grid = Some(Grid::single_point([2, 0, 0, 2]));
        config.suites = vec![Suite::Theorems];
        let sweep = grid_sweep(&config).expect("sweep must succeed");
        let run_outcome = run(&config).expect("run must succeed");
        assert_eq!(sweep.points, 1);
        assert_eq!(
            sweep.failures.is_empty(),
            run_outcome.status == RunStatus::AllPassed,
            "a one-point sweep and a run must agree on the verdict"
        );
    }

    #[test]
    fn sweep_without_grid_is_rejected() {
        let config = RunConfig::new(m5_input(2, 0, 0, 2));
        assert!(grid_sweep(&config).is_err(), "grid sweep requires parameter ranges");
    }

    #[test]
    fn sweep_text_format_reports_point_count() {
        let mut config = RunConfig::new(m5_input(0, 0, 0, 0));
        config.grid = Some(Grid::single_point([1, 1, 1, 1]));
        config.format = ReportFormat::Text;
        let outcome = grid_sweep(&config).expect("sweep must succeed");
        assert!(outcome.rendered.starts_with("grid sweep report v1\n"));
        assert!(outcome.rendered.contains("1 points, 0 failing"));
    }

    #[test]
    fn suite_names_round_trip_through_parsing() {
        for suite in Suite::ALL {
            let parsed: Suite = suite.name().parse().expect("canonical name parses");
            assert_eq!(parsed, suite, "name round-trip for {suite}");
        }
        assert!("spectra".parse::<Suite>().is_err(), "unknown suite name");
        assert!("json".parse::<ReportFormat>().is_ok());
        assert!("yaml".parse::<ReportFormat>().is_err(), "unknown format name");
    }
}
