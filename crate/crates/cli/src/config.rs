//! Flags merged over an optional `key=value` file; flags win.

use crate::{Cli, Command};
use clap::ValueEnum;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::fs;
use std::str::FromStr;
use tetra_geodesics::SpaceKind;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Svg,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub space: Option<SpaceKind>,
    /// Radians.
    pub alpha: Option<f64>,
    pub edge: Option<f64>,
    pub edges: Option<Vec<f64>>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub mu: Option<f64>,
    pub budget: Option<f64>,
    pub tol: Option<f64>,
    pub format: Format,
    pub out: Option<String>,
    pub threads: Option<usize>,
    pub quick: bool,
}

pub fn parse_file(text: &str) -> Result<HashMap<String, String>, String> {
    let mut map = HashMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key=value", n + 1))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn get<T: FromStr>(map: &HashMap<String, String>, key: &str) -> Result<Option<T>, String> {
    map.get(key)
        .map(|v| v.parse::<T>().map_err(|_| format!("config key {key}: cannot parse {v:?}")))
        .transpose()
}

fn get_enum<T: ValueEnum>(map: &HashMap<String, String>, key: &str) -> Result<Option<T>, String> {
    map.get(key).map(|v| T::from_str(v, true).map_err(|e| format!("config key {key}: {e}"))).transpose()
}

fn get_bool(map: &HashMap<String, String>, key: &str) -> Result<bool, String> {
    Ok(get::<bool>(map, key)?.unwrap_or(false))
}

const KEYS: [&str; 15] =
    ["space", "alpha", "edge", "edges", "p", "q", "mu", "L", "tol", "format", "out", "threads", "deg", "quick", "config"];

impl RunConfig {
    pub fn resolve(cli: Cli) -> Result<RunConfig, String> {
        let file = match &cli.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
                parse_file(&text)?
            }
            None => HashMap::new(),
        };
        RunConfig::merge(cli, &file)
    }

    pub fn merge(cli: Cli, file: &HashMap<String, String>) -> Result<RunConfig, String> {
        if let Some(k) = file.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(format!("unknown config key {k}"));
        }
        let edges = match cli.edges {
            Some(e) => Some(e),
            None => file
                .get("edges")
                .map(|v| v.split(',').map(|s| s.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>())
                .transpose()
                .map_err(|_| "config key edges: expected six comma-separated numbers".to_string())?,
        };
        let deg = cli.deg || get_bool(file, "deg")?;
        let alpha = cli.alpha.or(get(file, "alpha")?).map(|a| if deg { a * PI / 180.0 } else { a });
        let space = match cli.space {
            Some(s) => Some(s),
            None => get_enum::<crate::Space>(file, "space")?,
        };
        Ok(RunConfig {
            command: cli.command,
            space: space.map(SpaceKind::from),
            alpha,
            edge: cli.edge.or(get(file, "edge")?),
            edges,
            p: cli.p.or(get(file, "p")?),
            q: cli.q.or(get(file, "q")?),
            mu: cli.mu.or(get(file, "mu")?),
            budget: cli.budget.or(get(file, "L")?),
            tol: cli.tol.or(get(file, "tol")?),
            format: match cli.format {
                Some(f) => f,
                None => get_enum(file, "format")?.unwrap_or_default(),
            },
            out: cli.out.or(file.get("out").cloned()),
            threads: cli.threads.or(get(file, "threads")?),
            quick: cli.quick || get_bool(file, "quick")?,
        })
    }
}
