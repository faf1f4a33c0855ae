//! `tetrageo`: closed geodesics on regular tetrahedra from the command line.

mod config;

use clap::{Parser, Subcommand, ValueEnum};
use config::{Format, RunConfig};
use std::fs;
use std::io::Write;
use std::process::ExitCode;
use tetra_geodesics::counting::{count_exact, CountingError};
use tetra_geodesics::existence::{exists_geodesic, threshold_beta, ExistenceError, Outcome};
use tetra_geodesics::geodesics::{euclid_geodesic, generic_hyperbolic_geodesic, midpoint_geodesic, GeodesicError, GeodesicPath};
use tetra_geodesics::report::{to_json, BoundsDoc, CountDoc, DevelopmentDoc, PathDoc, ThresholdDoc, VerdictDoc};
use tetra_geodesics::svg::development_svg;
use tetra_geodesics::tetra::generic_from_edges;
use tetra_geodesics::unfolding::{build_development, development_for_type, Development};
use tetra_geodesics::verify::{verify, VerifyConfig};
use tetra_geodesics::{GeodesicType, SpaceKind, TetrahedronSpec};

#[derive(Parser, Debug)]
#[command(name = "tetrageo", version, about = "Simple closed geodesics on regular tetrahedra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// key=value file supplying defaults for any option below
    #[arg(long, global = true)]
    pub config: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub space: Option<Space>,
    /// Planar angle (radians unless --deg)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Edge length of a regular tetrahedron
    #[arg(long, global = true)]
    pub edge: Option<f64>,
    /// Six edge lengths of a hyperbolic tetrahedron: A1A2,A1A3,A1A4,A2A3,A2A4,A3A4
    #[arg(long, global = true, value_delimiter = ',')]
    pub edges: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub p: Option<u32>,
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Offset of the Euclidean tiling line
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    /// Length budget for `count`
    #[arg(long = "L", global = true)]
    pub budget: Option<f64>,
    /// Bisection tolerance for `threshold`
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Read --alpha in degrees
    #[arg(long, global = true)]
    pub deg: bool,
    /// Smaller verification grid
    #[arg(long, global = true)]
    pub quick: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Build the geodesic of type (p, q) and its development
    Construct,
    /// Decide existence on a spherical tetrahedron
    Exists,
    /// Bisect for the spherical threshold angle of type (p, q)
    Threshold,
    /// Closed-form existence bounds
    Bounds,
    /// Count hyperbolic geodesics up to length L
    Count,
    /// Run the invariant suite
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Euclidean,
    Spherical,
    Hyperbolic,
}

impl From<Space> for SpaceKind {
    fn from(s: Space) -> SpaceKind {
        match s {
            Space::Euclidean => SpaceKind::Euclidean,
            Space::Spherical => SpaceKind::Spherical,
            Space::Hyperbolic => SpaceKind::Hyperbolic,
        }
    }
}

/// A run that did not produce its artifact, with its exit code.
#[derive(Debug)]
pub enum Fail {
    Input(String),
    Negative(String),
    Numerical(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Input(_) => 2,
            Fail::Negative(_) => 3,
            Fail::Numerical(_) => 4,
        }
    }
}

impl From<GeodesicError> for Fail {
    fn from(e: GeodesicError) -> Fail {
        match e {
            GeodesicError::NotContained { .. } | GeodesicError::TooLong { .. } => Fail::Negative(e.to_string()),
            GeodesicError::VertexHit { .. } | GeodesicError::PreconditionFailed(_) => Fail::Input(e.to_string()),
            GeodesicError::NumericalFailure(_) => Fail::Numerical(e.to_string()),
        }
    }
}

/// Output of a successful run; `negative` marks informative negatives that
/// still emit an artifact.
struct Artifact {
    body: String,
    negative: bool,
}

fn regular_spec(cfg: &RunConfig) -> Result<TetrahedronSpec, Fail> {
    let space = cfg.space.ok_or_else(|| Fail::Input("--space is required".into()))?;
    let r = match (cfg.alpha, cfg.edge) {
        (Some(_), Some(_)) => return Err(Fail::Input("give either --alpha or --edge, not both".into())),
        (Some(a), None) => TetrahedronSpec::new(space, a),
        (None, Some(e)) => TetrahedronSpec::from_edge(space, e),
        (None, None) if space == SpaceKind::Euclidean => Ok(TetrahedronSpec::euclidean()),
        (None, None) => return Err(Fail::Input("--alpha or --edge is required".into())),
    };
    r.map_err(|e| Fail::Input(e.to_string()))
}

fn gtype(cfg: &RunConfig) -> Result<GeodesicType, Fail> {
    let (p, q) = cfg.p.zip(cfg.q).ok_or_else(|| Fail::Input("--p and --q are required".into()))?;
    GeodesicType::new(p, q).map_err(|e| Fail::Input(e.to_string()))
}

fn emit_geodesic(cfg: &RunConfig, dev: &Development, path: &GeodesicPath, t: GeodesicType) -> String {
    match cfg.format {
        Format::Svg => development_svg(dev, Some(path)),
        Format::Csv => format!("p,q,length,clearance\n{},{},{},{}\n", t.p, t.q, path.length, path.clearance),
        Format::Json => to_json(&serde_json::json!({
            "path": PathDoc::from(path),
            "development": DevelopmentDoc::from(dev),
        })),
    }
}

fn construct(cfg: &RunConfig) -> Result<Artifact, Fail> {
    let t = gtype(cfg)?;
    if let Some(edges) = &cfg.edges {
        if cfg.space.is_some_and(|s| s != SpaceKind::Hyperbolic) {
            return Err(Fail::Input("six-edge tetrahedra are hyperbolic".into()));
        }
        let e: [f64; 6] = edges.as_slice().try_into().map_err(|_| Fail::Input("--edges takes six lengths".into()))?;
        let spec = generic_from_edges(e).map_err(|e| Fail::Input(e.to_string()))?;
        let sol = generic_hyperbolic_geodesic(&spec, t)?;
        let dev = build_development(&spec, &sol.path.sequence).map_err(|e| Fail::Numerical(e.to_string()))?;
        return Ok(Artifact { body: emit_geodesic(cfg, &dev, &sol.path, t), negative: false });
    }
    let spec = regular_spec(cfg)?;
    let path = if spec.space == SpaceKind::Euclidean {
        euclid_geodesic(t, cfg.mu.unwrap_or(0.5))?
    } else {
        midpoint_geodesic(&spec, t)?
    };
    let dev = development_for_type(&spec, t).map_err(|e| Fail::Numerical(e.to_string()))?;
    Ok(Artifact { body: emit_geodesic(cfg, &dev, &path, t), negative: false })
}

fn exists(cfg: &RunConfig) -> Result<Artifact, Fail> {
    let t = gtype(cfg)?;
    let spec = regular_spec(cfg)?;
    let v = exists_geodesic(&spec, t).map_err(|e| match e {
        ExistenceError::WrongSpace(_) => Fail::Input(e.to_string()),
        _ => Fail::Numerical(e.to_string()),
    })?;
    let negative = matches!(v.outcome, Outcome::NotExists { .. });
    Ok(Artifact { body: to_json(&VerdictDoc::from(&v)), negative })
}

fn threshold(cfg: &RunConfig) -> Result<Artifact, Fail> {
    let t = gtype(cfg)?;
    match threshold_beta(t, cfg.tol.unwrap_or(1e-6)) {
        Ok(b) => Ok(Artifact { body: to_json(&ThresholdDoc::new(t, &b)), negative: false }),
        Err(e @ ExistenceError::NoThreshold(_)) => Err(Fail::Negative(e.to_string())),
        Err(e) => Err(Fail::Numerical(e.to_string())),
    }
}

fn bounds(cfg: &RunConfig) -> Result<Artifact, Fail> {
    let t = gtype(cfg)?;
    let h = if cfg.space == Some(SpaceKind::Hyperbolic) { cfg.alpha } else { None };
    Ok(Artifact { body: to_json(&BoundsDoc::new(t, h)), negative: false })
}

fn count(cfg: &RunConfig) -> Result<Artifact, Fail> {
    let alpha = cfg.alpha.ok_or_else(|| Fail::Input("--alpha is required".into()))?;
    let l = cfg.budget.ok_or_else(|| Fail::Input("--L is required".into()))?;
    let r = count_exact(l, alpha).map_err(|e| match e {
        CountingError::Construction { .. } => Fail::Numerical(e.to_string()),
        _ => Fail::Input(e.to_string()),
    })?;
    let body = match cfg.format {
        Format::Csv => r.csv(),
        _ => to_json(&CountDoc::from(&r)),
    };
    Ok(Artifact { body, negative: false })
}

fn run_verify(cfg: &RunConfig) -> Result<Artifact, Fail> {
    let vc = if cfg.quick {
        VerifyConfig {
            euclid_max_sum: 10,
            hyperbolic_max_sum: 6,
            hyperbolic_alphas: vec![0.3, 0.9],
            spherical_grid: 8,
            threshold_max_sum: 3,
            psi_max: 300,
            count_budget: 15.0,
            count_alpha: 0.5,
        }
    } else {
        VerifyConfig::default()
    };
    let r = verify(&vc);
    for c in r.checks.iter().filter(|c| !c.passed) {
        eprintln!("verify: {} failed: {}", c.name, c.failures.join("; "));
    }
    if r.passed {
        Ok(Artifact { body: to_json(&r), negative: false })
    } else {
        // the report is still written so the failures can be inspected
        let body = to_json(&r);
        write_out(cfg, &body).map_err(Fail::Input)?;
        Err(Fail::Numerical("invariant suite failed".into()))
    }
}

fn write_out(cfg: &RunConfig, body: &str) -> Result<(), String> {
    let mut body = body.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cfg.out {
        Some(path) => fs::write(path, body).map_err(|e| format!("cannot write {path}: {e}")),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    }
}

pub fn run(cfg: &RunConfig) -> Result<bool, Fail> {
    let art = match cfg.command {
        Command::Construct => construct(cfg)?,
        Command::Exists => exists(cfg)?,
        Command::Threshold => threshold(cfg)?,
        Command::Bounds => bounds(cfg)?,
        Command::Count => count(cfg)?,
        Command::Verify => run_verify(cfg)?,
    };
    write_out(cfg, &art.body).map_err(Fail::Input)?;
    Ok(art.negative)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::resolve(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("tetrageo: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("tetrageo: {e}");
        }
    }
    match run(&cfg) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(3),
        Err(f) => {
            match &f {
                Fail::Input(m) | Fail::Negative(m) | Fail::Numerical(m) => eprintln!("tetrageo: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
