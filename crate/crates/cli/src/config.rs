use crate::args::Cli;
use crate::error::CliError;
use serde::{Deserialize, Serialize};
use std::path::Path;
use stieltjes_core::quad::QuadratureConfig;

/// Contents of the TOML config file. Every key is optional and unknown keys
/// are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    abs_tol: Option<f64>,
    rel_tol: Option<f64>,
    max_evals: Option<usize>,
    truncation_radius: Option<f64>,
    pv_epsilons: Option<Vec<f64>>,
    tol_scale: Option<f64>,
}

/// Settings after layering defaults, the config file and command-line flags.
#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub quadrature: QuadratureConfig,
    pub tol_scale: f64,
}

fn read_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
}

pub fn resolve(cli: &Cli) -> Result<Settings, CliError> {
    let file = match &cli.config {
        Some(path) => read_file(path)?,
        None => FileConfig::default(),
    };
    let mut q = QuadratureConfig::default();
    if let Some(v) = cli.abs_tol.or(file.abs_tol) {
        q.abs_tol = v;
    }
    if let Some(v) = cli.rel_tol.or(file.rel_tol) {
        q.rel_tol = v;
    }
    if let Some(v) = cli.max_evals.or(file.max_evals) {
        q.max_evals = v;
    }
    if let Some(v) = file.truncation_radius {
        q.truncation_radius = v;
    }
    if let Some(v) = file.pv_epsilons {
        q.pv_epsilons = v;
    }
    q.validate()?;
    let tol_scale = file.tol_scale.unwrap_or(1.0);
    Ok(Settings { quadrature: q, tol_scale })
}
