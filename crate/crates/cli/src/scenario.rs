//! Scenario files: one JSON document describing the process, the exit event,
//! the scale model and the numerical settings.

use std::path::Path;

use serde::{Deserialize, Serialize};

use exitrate::montecarlo::{ScaleSource, SimConfig, SimModel};
use exitrate::{
    ExitEvent, ExitHalfspace, ExitQuadrant, GgbmParams, KernelSpec, OptimizerConfig, PerturbationModel,
    ScaleLaw, Shift, TimeGrid,
};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub horizon: f64,
    /// Number of components; optional, checked against every list when given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    pub kernels: Vec<KernelEntry>,
    /// Defaults to the zero shift.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<ShiftEntry>,
    pub exit: ExitEntry,
    pub model: ModelEntry,
    #[serde(default)]
    pub optimizer: OptimizerEntry,
    #[serde(default)]
    pub simulation: SimulationEntry,
    #[serde(default)]
    pub oracle: OracleEntry,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Fbm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelEntry {
    pub family: Family,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ShiftEntry {
    Constant(Vec<f64>),
    Affine { intercept: Vec<f64>, slope: Vec<f64> },
    /// `values[i][j]` is component `i` at `times[j]`.
    Table { times: Vec<f64>, values: Vec<Vec<f64>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ExitEntry {
    Halfspace { xi: Vec<f64>, x: f64 },
    Quadrant { levels: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ScaleEntry {
    Weibull { d: f64, theta: f64 },
    Ggbm { beta: f64, rho: f64 },
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelEntry {
    Shared(ScaleEntry),
    Hadamard(Vec<ScaleEntry>),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerEntry {
    pub scan_points: usize,
    pub rel_time_tol: f64,
    pub max_iter: usize,
}

impl Default for OptimizerEntry {
    fn default() -> Self {
        let d = OptimizerConfig::default();
        OptimizerEntry {
            scan_points: d.scan_points,
            rel_time_tol: d.rel_time_tol,
            max_iter: d.max_iter,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationEntry {
    /// Uniform steps on `[0, T]`.
    pub grid_points: usize,
    pub gammas: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SimulationEntry {
    fn default() -> Self {
        SimulationEntry {
            grid_points: 512,
            gammas: vec![1.0, 2.0, 4.0, 8.0],
            samples: 10_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleEntry {
    pub m: usize,
    pub tolerance: f64,
}

impl Default for OracleEntry {
    fn default() -> Self {
        OracleEntry { m: 40, tolerance: 1e-3 }
    }
}

/// Prefixes the field named by a configuration error.
fn at(prefix: &str) -> impl Fn(exitrate::Error) -> CliError + '_ {
    move |e| match e {
        exitrate::Error::Config { field, reason } => CliError::Invalid {
            field: format!("{prefix}.{field}"),
            reason,
        },
        other => CliError::Engine(other),
    }
}

fn invalid(field: impl Into<String>, reason: impl Into<String>) -> CliError {
    CliError::Invalid {
        field: field.into(),
        reason: reason.into(),
    }
}

impl ScaleEntry {
    fn source(&self, field: &str) -> Result<ScaleSource, CliError> {
        Ok(match *self {
            ScaleEntry::Weibull { d, theta } => ScaleSource::Weibull(ScaleLaw::new(d, theta).map_err(at(field))?),
            ScaleEntry::Ggbm { beta, rho } => ScaleSource::LBeta(GgbmParams::new(beta, rho).map_err(at(field))?),
            ScaleEntry::Fixed(a) => {
                if !(a >= 0.0) || !a.is_finite() {
                    return Err(invalid(field, format!("fixed scale must be ≥ 0, got {a}")));
                }
                ScaleSource::Fixed(a)
            }
        })
    }
}

/// A scenario with every section validated and converted to engine types.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub horizon: f64,
    pub kernels: Vec<KernelSpec<f64>>,
    pub exit: ExitEvent<f64>,
    pub sim_model: SimModel,
    pub optimizer: OptimizerConfig,
    pub simulation: SimulationEntry,
    pub oracle: OracleEntry,
}

impl Resolved {
    /// Scale laws for the rate computations; fails for fixed scales.
    pub fn perturbation_model(&self) -> Result<PerturbationModel<f64>, CliError> {
        let law = |s: &ScaleSource, field: String| {
            s.law().ok_or_else(|| invalid(field, "a fixed scale has no large-deviation rate"))
        };
        Ok(match &self.sim_model {
            SimModel::Shared(s) => PerturbationModel::Shared(law(s, "model.shared".into())?),
            SimModel::Hadamard(v) => PerturbationModel::Hadamard(
                v.iter()
                    .enumerate()
                    .map(|(i, s)| law(s, format!("model.hadamard[{i}]")))
                    .collect::<Result<_, _>>()?,
            ),
        })
    }

    pub fn sim_config(&self, gammas: Option<Vec<f64>>, samples: Option<usize>, seed: Option<u64>) -> Result<SimConfig, CliError> {
        let s = &self.simulation;
        let grid = TimeGrid::uniform_with_origin(self.horizon, s.grid_points).map_err(at("simulation"))?;
        let cfg = SimConfig {
            grid,
            gammas: gammas.unwrap_or_else(|| s.gammas.clone()),
            samples: samples.unwrap_or(s.samples),
            seed: seed.unwrap_or(s.seed),
        };
        cfg.validate().map_err(at("simulation"))?;
        Ok(cfg)
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Validates every section and converts it to engine types.
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(invalid("horizon", format!("must be positive, got {}", self.horizon)));
        }
        let p = self.kernels.len();
        if p == 0 {
            return Err(invalid("kernels", "need at least one component"));
        }
        if let Some(declared) = self.p {
            if declared != p {
                return Err(invalid("p", format!("declares {declared} components but {p} kernels are given")));
            }
        }
        let kernels = self
            .kernels
            .iter()
            .enumerate()
            .map(|(i, k)| match k.family {
                Family::Fbm => KernelSpec::fbm(k.alpha).map_err(at(&format!("kernels[{i}]"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let shift = match &self.shift {
            None => Shift::zero(p),
            Some(ShiftEntry::Constant(c)) => Shift::Constant(c.clone()),
            Some(ShiftEntry::Affine { intercept, slope }) => Shift::Affine {
                intercept: intercept.clone(),
                slope: slope.clone(),
            },
            Some(ShiftEntry::Table { times, values }) => Shift::Table {
                times: times.clone(),
                values: values.clone(),
            },
        };
        shift.validate().map_err(at("shift"))?;
        if shift.dim() != p {
            return Err(invalid("shift", format!("has {} components, expected {p}", shift.dim())));
        }
        let exit = match &self.exit {
            ExitEntry::Halfspace { xi, x } => {
                if xi.len() != p {
                    return Err(invalid("exit.halfspace.xi", format!("has {} entries, expected {p}", xi.len())));
                }
                ExitEvent::Halfspace(
                    ExitHalfspace::new(xi.clone(), *x, shift, self.horizon).map_err(at("exit.halfspace"))?,
                )
            }
            ExitEntry::Quadrant { levels } => {
                if levels.len() != p {
                    return Err(invalid(
                        "exit.quadrant.levels",
                        format!("has {} entries, expected {p}", levels.len()),
                    ));
                }
                ExitEvent::Quadrant(ExitQuadrant::new(levels.clone(), shift, self.horizon).map_err(at("exit.quadrant"))?)
            }
        };
        let sim_model = match &self.model {
            ModelEntry::Shared(s) => SimModel::Shared(s.source("model.shared")?),
            ModelEntry::Hadamard(v) => {
                if v.len() != p {
                    return Err(invalid("model.hadamard", format!("has {} entries, expected {p}", v.len())));
                }
                SimModel::Hadamard(
                    v.iter()
                        .enumerate()
                        .map(|(i, s)| s.source(&format!("model.hadamard[{i}]")))
                        .collect::<Result<_, _>>()?,
                )
            }
        };
        let optimizer = OptimizerConfig {
            scan_points: self.optimizer.scan_points,
            rel_time_tol: self.optimizer.rel_time_tol,
            max_iter: self.optimizer.max_iter,
        };
        optimizer.validate().map_err(at("optimizer"))?;
        if self.simulation.grid_points == 0 {
            return Err(invalid("simulation.grid_points", "must be positive"));
        }
        if self.oracle.m < 2 {
            return Err(invalid("oracle.m", "must be at least 2"));
        }
        if !(self.oracle.tolerance > 0.0) {
            return Err(invalid("oracle.tolerance", "must be positive"));
        }
        Ok(Resolved {
            horizon: self.horizon,
            kernels,
            exit,
            sim_model,
            optimizer,
            simulation: self.simulation.clone(),
            oracle: self.oracle,
        })
    }
}
