//! Command-line front end: thin dispatch over the library. No numeric logic
//! lives here; every command parses flags, calls the library, and serializes
//! the result.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cmc_psl2r::ambient::AmbientSpace;
use cmc_psl2r::curvature::{self, FdOptions, GraphFunction, Oracle};
use cmc_psl2r::par_profiles::{self, ParSampleOptions, ParScrewParams};
use cmc_psl2r::profile::{ProfileCurve, ProfileError};
use cmc_psl2r::rot_profiles::{self, RotSampleOptions, RotScrewParams};
use cmc_psl2r::surface_builder::{
    self, build_parabolic_mesh, build_rotational_mesh, MeshError, ParMeshOptions, RotMeshOptions,
};

/// Environment variable overriding the default quadrature tolerance (1e-10).
pub const TOL_ENV_VAR: &str = "CMC_PSL2_TOL";

#[derive(Parser)]
#[command(
    name = "cmc-psl2r",
    about = "Generating curves, classification, meshes and curvature verification for invariant CMC surfaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a generating curve and emit it as CSV.
    Profile(ProfileArgs),
    /// Classify an (H, d) pair into its regime; emits a JSON report.
    Classify(ClassifyArgs),
    /// Build a surface mesh and export it as OBJ.
    Mesh(MeshArgs),
    /// Measure the mean curvature of a family graph at grid points (CSV in,
    /// JSON statistics out).
    Verify(VerifyArgs),
    /// Growth of an H = 1/2 rotational end: the ratio u(rho) e^{-rho/2}.
    Growth(GrowthArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Rotational,
    Parabolic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Obj,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleArg {
    Div,
    Pde,
    Both,
}

#[derive(Args)]
struct FamilyParams {
    /// Which one-parameter isometry group sweeps the curve.
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Mean curvature H >= 0.
    #[arg(long = "H", allow_hyphen_values = true)]
    h: f64,
    /// First-integral constant of the profile ODE.
    #[arg(long, allow_hyphen_values = true)]
    d: f64,
    /// Bundle curvature (0 gives the product geometry).
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    tau: f64,
    /// Screw-motion pitch (0 is the pure invariant surface).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pitch: f64,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    params: FamilyParams,
    /// Number of curve samples.
    #[arg(long, default_value_t = 512)]
    samples: usize,
    /// Truncation radius/height for unbounded domains.
    #[arg(long = "rho-max", default_value_t = 5.0)]
    rho_max: f64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    params: FamilyParams,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct MeshArgs {
    #[command(flatten)]
    params: FamilyParams,
    /// Grid resolution (profile samples and sweep steps).
    #[arg(long, default_value_t = 128)]
    samples: usize,
    /// Truncation radius for unbounded rotational domains.
    #[arg(long = "rho-max", default_value_t = 5.0)]
    rho_max: f64,
    /// Vertical periods tiled for the periodic regimes.
    #[arg(long, default_value_t = 1)]
    periods: usize,
    /// Sweep range in x for parabolic meshes.
    #[arg(long = "x-min", default_value_t = -2.0, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long = "x-max", default_value_t = 2.0, allow_hyphen_values = true)]
    x_max: f64,
    /// Output path for the OBJ file.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Obj)]
    format: FormatArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: FamilyParams,
    /// CSV file of base points, header `x,y`.
    #[arg(long)]
    grid: PathBuf,
    #[arg(long, value_enum, default_value_t = OracleArg::Div)]
    oracle: OracleArg,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GrowthArgs {
    /// End parameter alpha = -d > 0.
    #[arg(long, conflicts_with = "d")]
    alpha: Option<f64>,
    /// First-integral constant d = -alpha (alternative spelling).
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    tau: f64,
    /// Radius at which the growth ratio is evaluated.
    #[arg(long, default_value_t = 20.0)]
    rho: f64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    /// The requested family is empty; carries the violated condition.
    Empty(String),
    Failure(String),
}

impl From<ProfileError> for CliError {
    fn from(e: ProfileError) -> Self {
        match e {
            ProfileError::EmptyFamily { condition } => CliError::Empty(condition),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<MeshError> for CliError {
    fn from(e: MeshError) -> Self {
        match e {
            MeshError::Profile(p) => CliError::from(p),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(format!("i/o error: {e}"))
    }
}

/// Parse argv and execute; returns the process exit code (0 success,
/// 2 empty family or usage error, 1 any other failure).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Empty(condition)) => {
            eprintln!("empty family: {condition}");
            2
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn quad_tolerance() -> f64 {
    std::env::var(TOL_ENV_VAR)
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .filter(|t| *t > 0.0 && t.is_finite())
        .unwrap_or(rot_profiles::DEFAULT_TOL)
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Profile(args) => cmd_profile(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Mesh(args) => cmd_mesh(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Growth(args) => cmd_growth(args),
    }
}

fn sample_profile(params: &FamilyParams, samples: usize, rho_max: f64) -> Result<ProfileCurve, CliError> {
    let tol = quad_tolerance();
    Ok(match params.family {
        FamilyArg::Rotational => {
            let p = RotScrewParams::new(params.h, params.d, params.tau, params.pitch);
            rot_profiles::profile_numeric_with(&p, samples, &RotSampleOptions { rho_max, tol })?
        }
        FamilyArg::Parabolic => {
            let p = ParScrewParams::new(params.h, params.d, params.tau, params.pitch);
            par_profiles::par_profile_numeric_with(
                &p,
                samples,
                &ParSampleOptions { y_min: None, y_max: Some(rho_max), tol: Some(tol) },
            )?
        }
    })
}

fn cmd_profile(args: ProfileArgs) -> Result<(), CliError> {
    if args.format != FormatArg::Csv {
        return Err(CliError::Failure("profile output format must be csv".into()));
    }
    let curve = sample_profile(&args.params, args.samples, args.rho_max)?;
    emit(&args.out, &surface_builder::csv_to_string(&curve))
}

fn cmd_classify(args: ClassifyArgs) -> Result<(), CliError> {
    if args.format != FormatArg::Json {
        return Err(CliError::Failure("classify output format must be json".into()));
    }
    let report = match args.params.family {
        FamilyArg::Rotational => rot_profiles::classify_rotational(args.params.h, args.params.d)?,
        FamilyArg::Parabolic => par_profiles::classify_parabolic(args.params.h, args.params.d)?,
    };
    emit(&args.out, &format!("{}\n", report.to_json()))
}

fn cmd_mesh(args: MeshArgs) -> Result<(), CliError> {
    if args.format != FormatArg::Obj {
        return Err(CliError::Failure("mesh output format must be obj".into()));
    }
    let tol = quad_tolerance();
    let mesh = match args.params.family {
        FamilyArg::Rotational => {
            let p = RotScrewParams::new(args.params.h, args.params.d, args.params.tau, args.params.pitch);
            build_rotational_mesh(
                &p,
                &RotMeshOptions {
                    n_profile: args.samples,
                    n_theta: args.samples,
                    rho_max: args.rho_max,
                    tol,
                    periods: args.periods.max(1),
                },
            )?
        }
        FamilyArg::Parabolic => {
            let p = ParScrewParams::new(args.params.h, args.params.d, args.params.tau, args.params.pitch);
            build_parabolic_mesh(
                &p,
                &ParMeshOptions {
                    n_profile: args.samples,
                    n_x: args.samples,
                    x_range: (args.x_min, args.x_max),
                    y_min: None,
                    y_max: None,
                    tol,
                    periods: args.periods.max(1),
                },
            )?
        }
    };
    surface_builder::export_obj(&mesh, &args.out)?;
    Ok(())
}

/// The family graph as a `GraphFunction`, straight from the library.
fn family_graph(params: &FamilyParams) -> GraphFunction {
    let tol = quad_tolerance();
    match params.family {
        FamilyArg::Rotational => rot_profiles::profile_graph(
            &RotScrewParams::new(params.h, params.d, params.tau, params.pitch),
            tol,
        ),
        FamilyArg::Parabolic => par_profiles::profile_graph(
            &ParScrewParams::new(params.h, params.d, params.tau, params.pitch),
            tol,
        ),
    }
}

fn parse_grid(path: &PathBuf) -> Result<Vec<(f64, f64)>, CliError> {
    let body = std::fs::read_to_string(path)?;
    let mut points = Vec::new();
    for (lineno, line) in body.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line.to_lowercase().starts_with("x")) {
            continue;
        }
        let mut cols = line.split(',');
        let parse = |c: Option<&str>| {
            c.ok_or_else(|| CliError::Failure(format!("grid line {} malformed", lineno + 1)))?
                .trim()
                .parse::<f64>()
                .map_err(|e| CliError::Failure(format!("grid line {}: {e}", lineno + 1)))
        };
        let x = parse(cols.next())?;
        let y = parse(cols.next())?;
        points.push((x, y));
    }
    if points.is_empty() {
        return Err(CliError::Failure("grid file contains no points".into()));
    }
    Ok(points)
}

#[derive(serde::Serialize)]
struct OracleStats {
    count: usize,
    failed: usize,
    mean: f64,
    min: f64,
    max: f64,
    max_abs_dev: f64,
}

fn stats(values: &[Result<f64, curvature::CurvatureError>], target: f64) -> OracleStats {
    let ok: Vec<f64> = values.iter().filter_map(|r| r.as_ref().ok().copied()).collect();
    let failed = values.len() - ok.len();
    if ok.is_empty() {
        return OracleStats {
            count: 0,
            failed,
            mean: f64::NAN,
            min: f64::NAN,
            max: f64::NAN,
            max_abs_dev: f64::NAN,
        };
    }
    let mean = ok.iter().sum::<f64>() / ok.len() as f64;
    let min = ok.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ok.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let dev = ok.iter().map(|v| (v - target).abs()).fold(0.0, f64::max);
    OracleStats { count: ok.len(), failed, mean, min, max, max_abs_dev: dev }
}

#[derive(serde::Serialize)]
struct VerifyReport {
    schema_version: u32,
    family: &'static str,
    h: f64,
    d: f64,
    tau: f64,
    pitch: f64,
    oracle: &'static str,
    target_h: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    div: Option<OracleStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pde: Option<OracleStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_cross_difference: Option<f64>,
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let points = parse_grid(&args.grid)?;
    if args.params.family == FamilyArg::Rotational && args.oracle != OracleArg::Div {
        return Err(CliError::Failure(
            "the pde oracle runs on the half-plane model; rotational graphs live on the disk (use --oracle div)"
                .into(),
        ));
    }
    // Classification errors (empty family) surface before any measurement.
    match args.params.family {
        FamilyArg::Rotational => {
            rot_profiles::classify_rotational(args.params.h, args.params.d)?;
        }
        FamilyArg::Parabolic => {
            par_profiles::classify_parabolic(args.params.h, args.params.d)?;
        }
    }
    let graph = family_graph(&args.params);
    let space = match args.params.family {
        FamilyArg::Rotational => AmbientSpace::disk(args.params.tau),
        FamilyArg::Parabolic => AmbientSpace::half_plane(args.params.tau),
    };
    let opts = FdOptions::default();
    let (div, pde) = match args.oracle {
        OracleArg::Div => {
            (Some(curvature::verify_grid(&space, &graph, &points, Oracle::Divergence, &opts)), None)
        }
        OracleArg::Pde => {
            (None, Some(curvature::verify_grid(&space, &graph, &points, Oracle::Pde, &opts)))
        }
        OracleArg::Both => (
            Some(curvature::verify_grid(&space, &graph, &points, Oracle::Divergence, &opts)),
            Some(curvature::verify_grid(&space, &graph, &points, Oracle::Pde, &opts)),
        ),
    };
    let cross = match (&div, &pde) {
        (Some(a), Some(b)) => {
            let mut worst: f64 = 0.0;
            let mut any = false;
            for (x, y) in a.iter().zip(b.iter()) {
                if let (Ok(x), Ok(y)) = (x, y) {
                    worst = worst.max((x - y).abs());
                    any = true;
                }
            }
            any.then_some(worst)
        }
        _ => None,
    };
    let report = VerifyReport {
        schema_version: 1,
        family: match args.params.family {
            FamilyArg::Rotational => "rotational",
            FamilyArg::Parabolic => "parabolic",
        },
        h: args.params.h,
        d: args.params.d,
        tau: args.params.tau,
        pitch: args.params.pitch,
        oracle: match args.oracle {
            OracleArg::Div => "div",
            OracleArg::Pde => "pde",
            OracleArg::Both => "both",
        },
        target_h: args.params.h,
        div: div.map(|v| stats(&v, args.params.h)),
        pde: pde.map(|v| stats(&v, args.params.h)),
        max_cross_difference: cross,
    };
    let body = serde_json::to_string(&report)
        .map_err(|e| CliError::Failure(format!("serialization: {e}")))?;
    emit(&args.out, &format!("{body}\n"))
}

#[derive(serde::Serialize)]
struct GrowthReport {
    schema_version: u32,
    alpha: f64,
    tau: f64,
    rho: f64,
    height: f64,
    ratio: f64,
    predicted: f64,
    relative_error: f64,
}

fn cmd_growth(args: GrowthArgs) -> Result<(), CliError> {
    let alpha = match (args.alpha, args.d) {
        (Some(a), _) => a,
        (None, Some(d)) => -d,
        (None, None) => {
            return Err(CliError::Failure("growth needs --alpha or --d".into()));
        }
    };
    let g = rot_profiles::end_growth(alpha, args.tau, args.rho)?;
    let report = GrowthReport {
        schema_version: 1,
        alpha,
        tau: args.tau,
        rho: args.rho,
        height: g.height,
        ratio: g.ratio,
        predicted: g.predicted,
        relative_error: (g.ratio - g.predicted).abs() / g.predicted,
    };
    let body = serde_json::to_string(&report)
        .map_err(|e| CliError::Failure(format!("serialization: {e}")))?;
    emit(&args.out, &format!("{body}\n"))
}
