//! Command-line front end.
//!
//! Every subcommand produces a table. CSV output has a fixed header per command and
//! writes floats with 17 significant digits; JSON output wraps the same rows and adds a
//! `paper_route` field naming the formula behind each number.
//!
//! Output goes to `--output` if given (`-` is standard output), else to
//! `$LANDAU_DPP_OUTPUT_DIR/<command>.<csv|json>` if that variable is set, else to
//! standard output. Files are written to a temporary sibling and renamed on success.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical failure (quadrature,
//! truncation or consistency), 1 I/O failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::counting::{
    binomial_moment, build_profile, distribution, generating_function, sample_counts, variance_series,
    MAX_BINOMIAL_MOMENT,
};
use crate::error::Error;
use crate::kernels::{EuclideanLevel, HyperbolicLevel};
use crate::quadrature::{QuadratureConfig, Scheme};
use crate::variance::{
    asymptotic_constant, asymptotic_constant_bound, contraction_check, variance_euclidean_geometric,
    variance_euclidean_shirai, variance_hyperbolic, variance_hyperbolic_via_transformed, Route, VarianceResult,
};

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "LANDAU_DPP_OUTPUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "landau-dpp", version, about = "Disc-count statistics of Ginibre-type and hyperbolic-type determinantal processes")]
pub struct RunConfig {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Output file, `-` for standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Quadrature scheme: gk, ts or gl.
    #[arg(long, default_value = "gk", global = true)]
    pub scheme: Scheme,
    #[arg(long, default_value_t = 1e-9, global = true)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-12, global = true)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1000, global = true)]
    pub max_subdivisions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number variance of the disc count, one row per radius and route.
    Variance(VarianceArgs),
    /// (1 - r^2) V against the limit constant as r -> 1.
    Asymptotics(AsymptoticsArgs),
    /// Exact count law for the weighted Bergman process, with optional Monte Carlo.
    Distribution(DistributionArgs),
    /// Hyperbolic variance at nu = R^2/2, radius r/R against the Euclidean variance.
    Contraction(ContractionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteChoice {
    Int1,
    Int3,
    Series,
    Shirai,
    Geometric,
    /// int1 + int3 (hyperbolic) or shirai + geometric (Euclidean)
    Both,
    /// every route available for the level
    All,
}

#[derive(Debug, Args)]
pub struct VarianceArgs {
    /// Use the Ginibre-type process on the plane.
    #[arg(long)]
    pub euclidean: bool,
    /// Euclidean Landau level.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Magnetic strength, nu > 1/2.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Hyperbolic level index.
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Disc radii, comma separated.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub r: Vec<f64>,
    #[arg(long, value_enum)]
    pub route: Option<RouteChoice>,
    /// Tail tolerance of the series route.
    #[arg(long, default_value_t = 1e-12)]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    #[arg(long)]
    pub nu: f64,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.9, 0.99, 0.999])]
    pub r: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct DistributionArgs {
    #[arg(long)]
    pub nu: f64,
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub epsilon: f64,
    /// Generating-function arguments in (-1, 1), comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![-0.5, 0.25, 0.9])]
    pub s: Vec<f64>,
    /// Monte Carlo draws; 0 disables sampling.
    #[arg(long, default_value_t = 0)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ContractionArgs {
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    #[arg(long = "big-r", value_delimiter = ',', default_values_t = vec![4.0, 8.0, 16.0])]
    pub big_r: Vec<f64>,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Numerics(#[from] Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerics(Error::Domain(_)) | CliError::Usage(_) => EXIT_INVALID,
            CliError::Numerics(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => json!(x),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub cells: Vec<Cell>,
    pub paper_route: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
    pub warnings: Vec<String>,
}

impl Table {
    fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Table {
            command,
            columns: columns.to_vec(),
            rows: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn push(&mut self, cells: Vec<Cell>, paper_route: &'static str) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(Row { cells, paper_route });
    }

    /// Column `name` of every row, as floats.
    pub fn column(&self, name: &str) -> Vec<f64> {
        let idx = self.columns.iter().position(|c| *c == name).expect("unknown column");
        self.rows
            .iter()
            .map(|row| match &row.cells[idx] {
                Cell::Float(x) => *x,
                Cell::Int(n) => *n as f64,
                Cell::Text(s) => s.parse().unwrap_or(f64::NAN),
            })
            .collect()
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).map_err(csv_error)?;
        for row in &self.rows {
            w.write_record(row.cells.iter().map(Cell::csv)).map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("CSV fields are UTF-8"))
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(&row.cells) {
                    obj.insert((*name).to_string(), cell.json());
                }
                obj.insert("paper_route".to_string(), json!(row.paper_route));
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "command": self.command, "rows": rows, "warnings": self.warnings });
        let mut s = serde_json::to_string_pretty(&doc).expect("JSON values are finite or null");
        s.push('\n');
        s
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

fn quadrature(common: &CommonArgs) -> Result<QuadratureConfig, CliError> {
    Ok(QuadratureConfig::new(
        common.scheme,
        common.rel_tol,
        common.abs_tol,
        common.max_subdivisions,
        QuadratureConfig::default().radial_nodes(),
    )?)
}

fn paper_route(route: Route) -> &'static str {
    match route {
        Route::Shirai => "Convolution",
        Route::Geometric => "LensArea",
        Route::Int1 => "Int1",
        Route::Int3 => "Int3",
        Route::Series => "PV",
    }
}

fn hyperbolic_routes(choice: Option<RouteChoice>, m: usize) -> Result<Vec<Route>, CliError> {
    let routes = match choice.unwrap_or(RouteChoice::Int1) {
        RouteChoice::Int1 => vec![Route::Int1],
        RouteChoice::Int3 => vec![Route::Int3],
        RouteChoice::Series => vec![Route::Series],
        RouteChoice::Both => vec![Route::Int1, Route::Int3],
        RouteChoice::All if m == 0 => vec![Route::Int1, Route::Int3, Route::Series],
        RouteChoice::All => vec![Route::Int1, Route::Int3],
        other @ (RouteChoice::Shirai | RouteChoice::Geometric) => {
            return Err(CliError::Usage(format!("route {other:?} needs --euclidean")))
        }
    };
    if routes.contains(&Route::Series) && m != 0 {
        return Err(CliError::Usage("the series route exists only for m = 0".into()));
    }
    Ok(routes)
}

fn euclidean_routes(choice: Option<RouteChoice>) -> Result<Vec<Route>, CliError> {
    match choice.unwrap_or(RouteChoice::Shirai) {
        RouteChoice::Shirai => Ok(vec![Route::Shirai]),
        RouteChoice::Geometric => Ok(vec![Route::Geometric]),
        RouteChoice::Both | RouteChoice::All => Ok(vec![Route::Shirai, Route::Geometric]),
        other => Err(CliError::Usage(format!("route {other:?} is not available with --euclidean"))),
    }
}

fn check_radii(radii: &[f64], hyperbolic: bool) -> Result<(), CliError> {
    for &r in radii {
        let ok = r > 0.0 && r.is_finite() && (!hyperbolic || r < 1.0);
        if !ok {
            let domain = if hyperbolic { "(0, 1)" } else { "(0, inf)" };
            return Err(CliError::Usage(format!("radius {r} outside {domain}")));
        }
    }
    Ok(())
}

/// `variance`: columns `r, value, error_estimate, route`.
pub fn cmd_variance(args: &VarianceArgs, quad: &QuadratureConfig) -> Result<Table, CliError> {
    let jobs: Vec<(f64, Route)>;
    let level;
    if args.euclidean {
        if args.nu.is_some() {
            return Err(CliError::Usage("--nu cannot be combined with --euclidean".into()));
        }
        check_radii(&args.r, false)?;
        let routes = euclidean_routes(args.route)?;
        jobs = args.r.iter().flat_map(|&r| routes.iter().map(move |&rt| (r, rt))).collect();
        level = None;
    } else {
        let nu = args.nu.ok_or_else(|| CliError::Usage("--nu is required unless --euclidean is given".into()))?;
        let hyperbolic = HyperbolicLevel::new(nu, args.m)?;
        check_radii(&args.r, true)?;
        let routes = hyperbolic_routes(args.route, args.m)?;
        if routes.contains(&Route::Series) && !(args.epsilon > 0.0) {
            return Err(CliError::Usage("--epsilon must be positive".into()));
        }
        jobs = args.r.iter().flat_map(|&r| routes.iter().map(move |&rt| (r, rt))).collect();
        level = Some(hyperbolic);
    }
    let euclid = EuclideanLevel::new(args.n);
    let results: Vec<Result<VarianceResult, Error>> = jobs
        .par_iter()
        .map(|&(r, route)| match (route, level) {
            (Route::Shirai, _) => variance_euclidean_shirai(euclid, r, quad),
            (Route::Geometric, _) => variance_euclidean_geometric(euclid, r, quad),
            (Route::Int1, Some(l)) => variance_hyperbolic(l, r, quad),
            (Route::Int3, Some(l)) => variance_hyperbolic_via_transformed(l, r, quad),
            (Route::Series, Some(l)) => variance_series(l.nu(), r, args.epsilon),
            _ => unreachable!("routes are matched to the process above"),
        })
        .collect();
    let mut table = Table::new("variance", &["r", "value", "error_estimate", "route"]);
    for (&(r, route), res) in jobs.iter().zip(results) {
        let v = res?;
        table.push(
            vec![
                Cell::Float(r),
                Cell::Float(v.value),
                Cell::Float(v.error_estimate),
                Cell::Text(route.as_str().into()),
            ],
            paper_route(route),
        );
    }
    Ok(table)
}

/// `asymptotics`: columns `r, scaled_variance, constant, ratio`; the last row has `r = 1`
/// and the constant itself in both value columns.
pub fn cmd_asymptotics(args: &AsymptoticsArgs, quad: &QuadratureConfig) -> Result<Table, CliError> {
    let level = HyperbolicLevel::new(args.nu, args.m)?;
    check_radii(&args.r, true)?;
    let c = asymptotic_constant(level, quad)?;
    let bound = asymptotic_constant_bound(level);
    let values: Vec<Result<VarianceResult, Error>> =
        args.r.par_iter().map(|&r| variance_hyperbolic(level, r, quad)).collect();
    let mut table = Table::new("asymptotics", &["r", "scaled_variance", "constant", "ratio"]);
    if c > bound {
        let msg = format!("constant {c} exceeds the bound 2(nu - m) - 1 = {bound}");
        eprintln!("warning: {msg}");
        table.warnings.push(msg);
    }
    for (&r, v) in args.r.iter().zip(values) {
        let scaled = (1.0 - r) * (1.0 + r) * v?.value;
        table.push(vec![Cell::Float(r), Cell::Float(scaled), Cell::Float(c), Cell::Float(scaled / c)], "Int1");
    }
    table.push(vec![Cell::Float(1.0), Cell::Float(c), Cell::Float(c), Cell::Float(1.0)], "AreaLaw");
    Ok(table)
}

/// `distribution`: long format with columns `quantity, argument, value`.
///
/// Quantities: `pmf` (argument n), `mean`, `variance`, `tail_bound`,
/// `binomial_moment` (k), `generating_function` and `pmf_expectation` (s), and with
/// `--samples`, `sample_count` (n), `sample_mean`, `sample_variance`.
pub fn cmd_distribution(args: &DistributionArgs) -> Result<Table, CliError> {
    if let Some(s) = args.s.iter().find(|s| !(**s > -1.0 && **s < 1.0)) {
        return Err(CliError::Usage(format!("generating-function argument {s} outside (-1, 1)")));
    }
    let profile = build_profile(args.nu, args.r, args.epsilon)?;
    let law = distribution(&profile);
    let mut table = Table::new("distribution", &["quantity", "argument", "value"]);
    let text = |s: &str| Cell::Text(s.to_string());
    for (n, p) in law.pmf.iter().enumerate() {
        table.push(vec![text("pmf"), Cell::Int(n as u64), Cell::Float(*p)], "Poisson-binomial");
    }
    table.push(vec![text("mean"), text(""), Cell::Float(law.mean)], "Poisson-binomial");
    table.push(vec![text("variance"), text(""), Cell::Float(law.variance)], "PV");
    table.push(vec![text("tail_bound"), text(""), Cell::Float(profile.tail_bound)], "Poisson-binomial");
    for k in 1..=MAX_BINOMIAL_MOMENT {
        let b = binomial_moment(&profile, k)?;
        table.push(vec![text("binomial_moment"), Cell::Int(k as u64), Cell::Float(b)], "BinMom");
    }
    for &s in &args.s {
        let g = generating_function(&profile, s)?;
        let e = law.expect(|n| (1.0 + s).powi(n as i32));
        table.push(vec![text("generating_function"), Cell::Float(s), Cell::Float(g)], "GenFun");
        table.push(vec![text("pmf_expectation"), Cell::Float(s), Cell::Float(e)], "GenFun");
    }
    if args.samples > 0 {
        let hist = sample_counts(&profile, args.seed, args.samples)?;
        for (n, c) in hist.counts.iter().enumerate() {
            table.push(vec![text("sample_count"), Cell::Int(n as u64), Cell::Int(*c)], "MonteCarlo");
        }
        table.push(vec![text("sample_mean"), text(""), Cell::Float(hist.mean())], "MonteCarlo");
        table.push(vec![text("sample_variance"), text(""), Cell::Float(hist.variance())], "MonteCarlo");
    }
    Ok(table)
}

/// `contraction`: columns `R, scaled_variance, euclidean_target, ratio, hyperbolic_variance, unscaled_ratio`.
pub fn cmd_contraction(args: &ContractionArgs, quad: &QuadratureConfig) -> Result<Table, CliError> {
    if !(args.r > 0.0 && args.r.is_finite()) {
        return Err(CliError::Usage(format!("radius {} must be positive", args.r)));
    }
    for &big_r in &args.big_r {
        if !(big_r > 1.0 && big_r > args.r) {
            return Err(CliError::Usage(format!("R = {big_r} must exceed both 1 and r")));
        }
        HyperbolicLevel::new(0.5 * big_r * big_r, args.m)?;
    }
    let rows = contraction_check(args.m, args.r, &args.big_r, quad)?;
    let mut table = Table::new(
        "contraction",
        &["R", "scaled_variance", "euclidean_target", "ratio", "hyperbolic_variance", "unscaled_ratio"],
    );
    for row in rows {
        table.push(
            vec![
                Cell::Float(row.big_r),
                Cell::Float(row.scaled_variance),
                Cell::Float(row.euclidean_target),
                Cell::Float(row.ratio),
                Cell::Float(row.hyperbolic_variance),
                Cell::Float(row.unscaled_ratio),
            ],
            "Contraction",
        );
    }
    Ok(table)
}

/// Runs the parsed command and returns its table.
pub fn execute(config: &RunConfig) -> Result<Table, CliError> {
    let quad = quadrature(&config.common)?;
    match &config.command {
        Command::Variance(a) => cmd_variance(a, &quad),
        Command::Asymptotics(a) => cmd_asymptotics(a, &quad),
        Command::Distribution(a) => cmd_distribution(a),
        Command::Contraction(a) => cmd_contraction(a, &quad),
    }
}

fn destination(config: &RunConfig, command: &str) -> Option<PathBuf> {
    let ext = match config.common.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    match &config.common.output {
        Some(p) if p.as_os_str() == "-" => None,
        Some(p) => Some(p.clone()),
        None => std::env::var_os(OUTPUT_DIR_ENV).map(|dir| Path::new(&dir).join(format!("{command}.{ext}"))),
    }
}

/// Writes `contents` to `path` via a temporary file in the same directory.
pub fn write_atomically(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| std::io::Error::other("output path has no file name"))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = dir.join(tmp_name);
    let result = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(contents.as_bytes()).and_then(|_| f.sync_all()))
        .and_then(|_| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

fn render_and_write(config: &RunConfig, table: &Table) -> Result<(), CliError> {
    let text = match config.common.format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json(),
    };
    match destination(config, table.command) {
        Some(path) => write_atomically(&path, &text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match execute(&config).and_then(|table| render_and_write(&config, &table)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
