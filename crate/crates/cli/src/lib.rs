//! Command implementations behind the `catalan` binary.
//!
//! Every command produces a [`CommandOutput`]: a JSON [`OutputRecord`], the same
//! numbers as CSV rows, and an exit status. Big integers are always rendered
//! as decimal strings and rationals as `p/q` strings.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use catalan_core::bounds::{
    minimal_inductive_constant, radius_estimate, verify_lower_central_binomial,
    verify_lower_touchard, verify_segner_upper_bound, verify_upper_bound_induction, BoundReport,
};
use catalan_core::catalan::{cross_validate, GeneratorMethod};
use catalan_core::series::{
    catalan_series_fixed_point, catalan_series_sqrt_formula, replay_touchard_chain,
    verify_touchard_derivation, SeriesResidual, TruncatedSeries,
};
use catalan_core::singularity::{
    locate_singularity, ImplicitQuadratic, PolynomialInZ, SingularityOutcome,
};

pub const SCHEMA_VERSION: &str = "1";

/// Largest series order `verify` replays.
pub const VERIFY_SERIES_ORDER_CAP: u64 = 512;

/// Schema shipped with the crate, matching [`OutputRecord`].
pub const OUTPUT_SCHEMA: &str = include_str!("../schema/output.schema.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitStatus {
    Success = 0,
    CheckFailed = 1,
    Usage = 2,
}

impl ExitStatus {
    fn from_pass(pass: bool) -> Self {
        if pass {
            ExitStatus::Success
        } else {
            ExitStatus::CheckFailed
        }
    }

    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub record: OutputRecord,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub status: ExitStatus,
}

impl CommandOutput {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.record).expect("record serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header).expect("in-memory write");
                for row in &self.csv_rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Segner,
    Touchard,
    Product,
}

impl From<Method> for GeneratorMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Closed => GeneratorMethod::ClosedForm,
            Method::Segner => GeneratorMethod::Segner,
            Method::Touchard => GeneratorMethod::Touchard,
            Method::Product => GeneratorMethod::ProductRecurrence,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "catalan",
    version,
    about = "Exact Catalan sequence, series and radius checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FormatArg {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate C_0..C_n with one method
    Gen {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Cross-check all generators and replay the series derivation
    Verify {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Check the upper and lower growth bounds
    Bounds {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Root/ratio-test radius estimate
    Radius {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Exact series residuals for the functional equation and the Touchard derivation
    Series {
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Locate the dominant singularity of a(z) w^2 + b(z) w + c(z) = 0
    Singular {
        /// coefficients of a(z), constant term first, e.g. "0,-1"
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Time the generators
    Bench {
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "segner,touchard,product"
        )]
        methods: Vec<Method>,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        repeats: u32,
        #[command(flatten)]
        format: FormatArg,
    },
}

impl Command {
    pub fn format(&self) -> Format {
        match self {
            Command::Gen { format, .. }
            | Command::Verify { format, .. }
            | Command::Bounds { format, .. }
            | Command::Radius { format, .. }
            | Command::Series { format, .. }
            | Command::Singular { format, .. }
            | Command::Bench { format, .. } => format.format,
        }
    }
}

/// Failure that maps to exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<catalan_core::Error> for UsageError {
    fn from(e: catalan_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

pub type CmdResult = Result<CommandOutput, UsageError>;

pub fn run(command: &Command) -> CmdResult {
    match command {
        Command::Gen { method, n, .. } => cmd_gen((*method).into(), *n),
        Command::Verify { n, .. } => cmd_verify(*n),
        Command::Bounds { n, .. } => cmd_bounds(*n),
        Command::Radius { n, .. } => cmd_radius(*n),
        Command::Series { order, .. } => cmd_series(*order),
        Command::Singular { a, b, c, .. } => cmd_singular(a, b, c),
        Command::Bench {
            methods,
            n,
            repeats,
            ..
        } => {
            let methods: Vec<GeneratorMethod> = methods.iter().map(|&m| m.into()).collect();
            cmd_bench(&methods, *n, *repeats)
        }
    }
}

fn record(command: &str, parameters: Value, results: Value) -> OutputRecord {
    let parameters = match parameters {
        Value::Object(map) => map.into_iter().collect(),
        _ => BTreeMap::new(),
    };
    OutputRecord {
        schema_version: SCHEMA_VERSION.to_string(),
        command: command.to_string(),
        parameters,
        results,
    }
}

fn rational_str(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn opt_str<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn cmd_gen(method: GeneratorMethod, n: u64) -> CmdResult {
    let table = method.generate(n)?;
    let values: Vec<String> = table.values().iter().map(ToString::to_string).collect();
    let csv_rows = values
        .iter()
        .enumerate()
        .map(|(i, v)| vec![i.to_string(), v.clone()])
        .collect();
    Ok(CommandOutput {
        record: record(
            "gen",
            json!({ "method": method.name(), "n": n }),
            json!({
                "method": method.name(),
                "cost_class": method.cost_class(),
                "max_index": table.max_index(),
                "values": values,
            }),
        ),
        csv_header: vec!["n", "value"],
        csv_rows,
        status: ExitStatus::Success,
    })
}

fn residual_json(r: &SeriesResidual) -> Value {
    json!({
        "order": r.order,
        "zero": r.is_zero(),
        "max_abs_deviation": rational_str(&r.max_abs_deviation),
        "first_failing_index": r.first_failing_index,
    })
}

fn functional_residual(order: usize) -> SeriesResidual {
    let w = catalan_series_fixed_point(order);
    let rhs = &TruncatedSeries::one(order) + &(&w * &w).shift_up(1);
    SeriesResidual::between(&w, &rhs)
}

pub fn cmd_verify(n: u64) -> CmdResult {
    let report = cross_validate(n)?;
    let order = n.min(VERIFY_SERIES_ORDER_CAP) as usize;
    let functional = functional_residual(order);
    let touchard = verify_touchard_derivation(order, order.div_ceil(2))?;
    let pass = report.all_agree() && functional.is_zero() && touchard.is_zero();

    let csv_rows = vec![
        vec![
            "generator_agreement".into(),
            report.all_agree().to_string(),
            opt_str(report.first_disagreement),
        ],
        vec![
            "functional_equation".into(),
            functional.is_zero().to_string(),
            opt_str(functional.first_failing_index),
        ],
        vec![
            "touchard_derivation".into(),
            touchard.is_zero().to_string(),
            opt_str(touchard.first_failing_index),
        ],
    ];
    Ok(CommandOutput {
        record: record(
            "verify",
            json!({ "n": n, "series_order": order }),
            json!({
                "passed": pass,
                "generator_agreement": {
                    "methods": report.methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
                    "n_max": report.n_max,
                    "all_agree": report.all_agree(),
                    "first_disagreement": report.first_disagreement,
                },
                "functional_equation": residual_json(&functional),
                "touchard_derivation": residual_json(&touchard),
            }),
        ),
        csv_header: vec!["check", "passed", "first_failure"],
        csv_rows,
        status: ExitStatus::from_pass(pass),
    })
}

fn bound_json(r: &BoundReport) -> Value {
    json!({
        "bound_name": r.bound_name.name(),
        "checked_up_to": r.checked_up_to,
        "holds": r.holds,
        "first_violation": r.first_violation,
        "constant_A": r.constant_a.as_ref().map(rational_str),
        "step_check": r.step_check.as_ref().map(|s| json!({
            "inequality": s.inequality,
            "first_step": s.first_step,
            "last_step": s.last_step,
            "holds": s.holds(),
            "first_failure": s.first_failure,
        })),
    })
}

/// The central-binomial bound starts at `n = 1`, so `n = 0` is checked as `n = 1`.
pub fn cmd_bounds(n: u64) -> CmdResult {
    let a = minimal_inductive_constant()?;
    let reports = [
        verify_upper_bound_induction(&a, n)?,
        verify_segner_upper_bound(n)?,
        verify_lower_central_binomial(n.max(1))?,
        verify_lower_touchard(n)?,
    ];
    let pass = reports.iter().all(|r| r.holds);
    let csv_rows = reports
        .iter()
        .map(|r| {
            vec![
                r.bound_name.name().to_string(),
                r.checked_up_to.to_string(),
                r.holds.to_string(),
                opt_str(r.first_violation),
                r.constant_a.as_ref().map(rational_str).unwrap_or_default(),
            ]
        })
        .collect();
    Ok(CommandOutput {
        record: record(
            "bounds",
            json!({ "n": n }),
            json!({
                "all_hold": pass,
                "bounds": reports.iter().map(bound_json).collect::<Vec<_>>(),
            }),
        ),
        csv_header: vec![
            "bound",
            "checked_up_to",
            "holds",
            "first_violation",
            "constant_A",
        ],
        csv_rows,
        status: ExitStatus::from_pass(pass),
    })
}

pub fn cmd_radius(n: u64) -> CmdResult {
    let est = radius_estimate(n)?;
    let (lo, hi) = &est.touchard_only_bracket;
    let bracket = format!("[{}, {}]", rational_str(lo), rational_str(hi));
    let ratio_exact = rational_str(&est.ratio_test_exact);
    let rows: Vec<(&str, String)> = vec![
        ("n_used", est.n_used.to_string()),
        ("root_test_value", est.root_test_value.to_string()),
        ("ratio_test_value", est.ratio_test_value.to_string()),
        ("ratio_test_exact", ratio_exact.clone()),
        (
            "radius_point_estimate",
            est.radius_point_estimate.to_string(),
        ),
        ("root_radius_estimate", est.root_radius_estimate.to_string()),
        ("touchard_only_bracket", bracket.clone()),
        ("asymptotic_ratio", est.asymptotic_ratio.to_string()),
    ];
    Ok(CommandOutput {
        record: record(
            "radius",
            json!({ "n": n }),
            json!({
                "n_used": est.n_used,
                "root_test_value": est.root_test_value,
                "ratio_test_value": est.ratio_test_value,
                "ratio_test_exact": ratio_exact,
                "radius_point_estimate": est.radius_point_estimate,
                "root_radius_estimate": est.root_radius_estimate,
                "touchard_only_bracket": bracket,
                "asymptotic_ratio": est.asymptotic_ratio,
            }),
        ),
        csv_header: vec!["quantity", "value"],
        csv_rows: rows
            .into_iter()
            .map(|(k, v)| vec![k.to_string(), v])
            .collect(),
        status: ExitStatus::Success,
    })
}

pub fn cmd_series(order: usize) -> CmdResult {
    let fixed = catalan_series_fixed_point(order);
    let mut checks: Vec<(&str, SeriesResidual)> = vec![
        ("functional_equation", functional_residual(order)),
        (
            "sqrt_formula_agreement",
            SeriesResidual::between(&fixed, &catalan_series_sqrt_formula(order)?),
        ),
    ];
    checks.extend(
        replay_touchard_chain(order)?
            .into_iter()
            .map(|step| (step.name, step.residual)),
    );
    let pass = checks.iter().all(|(_, r)| r.is_zero());
    let csv_rows = checks
        .iter()
        .map(|(name, r)| {
            vec![
                name.to_string(),
                r.order.to_string(),
                r.is_zero().to_string(),
                opt_str(r.first_failing_index),
                rational_str(&r.max_abs_deviation),
            ]
        })
        .collect();
    let results: serde_json::Map<String, Value> = checks
        .iter()
        .map(|(name, r)| (name.to_string(), residual_json(r)))
        .collect();
    Ok(CommandOutput {
        record: record(
            "series",
            json!({ "order": order, "term_cutoff": order.div_ceil(2) }),
            json!({ "passed": pass, "checks": results }),
        ),
        csv_header: vec![
            "check",
            "order",
            "zero",
            "first_failing_index",
            "max_abs_deviation",
        ],
        csv_rows,
        status: ExitStatus::from_pass(pass),
    })
}

/// Parses `"1,-2,3/4"` into exact rationals, constant term first.
pub fn parse_coefficients(spec: &str) -> Result<PolynomialInZ, UsageError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(PolynomialInZ::zero());
    }
    let coeffs = spec
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            let parsed = match tok.split_once('/') {
                Some((p, q)) => p
                    .trim()
                    .parse::<BigInt>()
                    .ok()
                    .zip(q.trim().parse::<BigInt>().ok())
                    .filter(|(_, q)| !q.is_zero())
                    .map(|(p, q)| BigRational::new(p, q)),
                None => tok.parse::<BigInt>().ok().map(BigRational::from_integer),
            };
            parsed.ok_or_else(|| UsageError(format!("malformed coefficient `{tok}` in `{spec}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolynomialInZ::new(coeffs))
}

fn interval_json(intervals: &[(BigRational, BigRational)]) -> Value {
    intervals
        .iter()
        .map(|(lo, hi)| json!([rational_str(lo), rational_str(hi)]))
        .collect()
}

pub fn cmd_singular(a: &str, b: &str, c: &str) -> CmdResult {
    let f = ImplicitQuadratic::new(
        parse_coefficients(a)?,
        parse_coefficients(b)?,
        parse_coefficients(c)?,
    )?;
    let disc = f.discriminant();
    let parameters = json!({ "a": a, "b": b, "c": c });
    let disc_coeffs: Vec<String> = disc.coeffs().iter().map(rational_str).collect();
    let (results, rows) = match locate_singularity(&f)? {
        SingularityOutcome::Located {
            point,
            irrational_roots,
        } => {
            let z = rational_str(&point.z_star);
            let w = rational_str(&point.w_star);
            (
                json!({
                    "found": true,
                    "discriminant": disc_coeffs,
                    "z_star": z,
                    "w_star": w,
                    "irrational_roots": interval_json(&irrational_roots),
                }),
                vec![
                    vec!["found".to_string(), "true".to_string()],
                    vec!["z_star".to_string(), z],
                    vec!["w_star".to_string(), w],
                ],
            )
        }
        SingularityOutcome::NoRationalSingularity { irrational_roots } => (
            json!({
                "found": false,
                "discriminant": disc_coeffs,
                "message": "no rational singularity",
                "irrational_roots": interval_json(&irrational_roots),
            }),
            vec![vec!["found".to_string(), "false".to_string()]],
        ),
    };
    Ok(CommandOutput {
        record: record("singular", parameters, results),
        csv_header: vec!["quantity", "value"],
        csv_rows: rows,
        status: ExitStatus::Success,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub method: String,
    pub n_max: u64,
    pub wall_time_ns: u64,
    pub peak_value_bits: u64,
}

/// Median wall time over `repeats` runs of each method, run one after another.
pub fn bench(
    methods: &[GeneratorMethod],
    n: u64,
    repeats: u32,
) -> Result<Vec<BenchRecord>, UsageError> {
    if repeats == 0 {
        return Err(UsageError("repeats must be at least 1".into()));
    }
    let mut records = Vec::with_capacity(methods.len());
    for &method in methods {
        let mut times = Vec::with_capacity(repeats as usize);
        let mut bits = 0;
        for _ in 0..repeats {
            let start = Instant::now();
            let table = method.generate(n)?;
            times.push(start.elapsed().as_nanos().max(1) as u64);
            bits = table.values().last().expect("nonempty").bits();
        }
        times.sort_unstable();
        records.push(BenchRecord {
            method: method.name().to_string(),
            n_max: n,
            wall_time_ns: times[times.len() / 2],
            peak_value_bits: bits,
        });
    }
    Ok(records)
}

pub fn cmd_bench(methods: &[GeneratorMethod], n: u64, repeats: u32) -> CmdResult {
    let records = bench(methods, n, repeats)?;
    let csv_rows = records
        .iter()
        .map(|r| {
            vec![
                r.method.clone(),
                r.n_max.to_string(),
                r.wall_time_ns.to_string(),
                r.peak_value_bits.to_string(),
            ]
        })
        .collect();
    Ok(CommandOutput {
        record: record(
            "bench",
            json!({
                "methods": methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
                "n": n,
                "repeats": repeats,
            }),
            json!({ "records": records }),
        ),
        csv_header: vec!["method", "n_max", "wall_time_ns", "peak_value_bits"],
        csv_rows,
        status: ExitStatus::Success,
    })
}
