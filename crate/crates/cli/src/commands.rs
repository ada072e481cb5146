//! The subcommands, as library functions returning their outputs.

use exitrate::montecarlo::{decay_curve, estimate_exit_prob, DecayCurve, EstimateRow};
use exitrate::oracle::{self, DiscretizedProblem};
use exitrate::{
    decay, mittag_leffler, most_likely_path, mwright_density, DecayResult, ExitEvent, ExitKind, ModelKind,
    PerturbationModel,
};

use crate::error::CliError;
use crate::report::{fmt9, DecayReport, LawReport, OracleReport};
use crate::scenario::Resolved;

fn exit_name(k: ExitKind) -> &'static str {
    match k {
        ExitKind::Halfspace => "halfspace",
        ExitKind::Quadrant => "quadrant",
    }
}

fn model_name(m: &PerturbationModel<f64>) -> &'static str {
    match m {
        PerturbationModel::Shared(_) => "equal",
        PerturbationModel::Hadamard(_) => "indep",
    }
}

fn laws(m: &PerturbationModel<f64>) -> Vec<LawReport> {
    let one = |l: &exitrate::ScaleLaw<f64>| LawReport { d: l.d(), theta: l.theta() };
    match m {
        PerturbationModel::Shared(l) => vec![one(l)],
        PerturbationModel::Hadamard(v) => v.iter().map(one).collect(),
    }
}

fn closed_form(s: &Resolved) -> Result<(PerturbationModel<f64>, DecayResult<f64>), CliError> {
    let model = s.perturbation_model()?;
    let r = decay(&s.exit, &s.kernels, &model, &s.optimizer)?;
    Ok((model, r))
}

/// Closed-form decay rate, exit time(s) and atom weights.
pub fn cmd_decay(s: &Resolved) -> Result<DecayReport, CliError> {
    let (model, r) = closed_form(s)?;
    Ok(DecayReport {
        exit: exit_name(r.tag.exit).into(),
        model: match r.tag.model {
            ModelKind::Equal => "equal",
            ModelKind::Indep => "indep",
        }
        .into(),
        laws: laws(&model),
        w: r.w,
        t_star: r.t_star,
        c_star: r.c_star,
    }
    .rounded())
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io {
        path: "<csv>".into(),
        source: std::io::Error::other(e),
    };
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io {
        path: "<csv>".into(),
        source: std::io::Error::other(e.to_string()),
    })?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

/// Most likely path on `n + 1` uniform points of `[0, T]` plus the exit
/// times, as CSV `u, z_1, …, z_p, residual`. The residual column is filled
/// at exit times only: `⟨z*(t*), ξ⟩ − x` for a halfspace, `z*_i(t*_i) − x_i`
/// for a quadrant.
pub fn cmd_mlp(s: &Resolved, n: usize) -> Result<String, CliError> {
    if n == 0 {
        return Err(CliError::Invalid {
            field: "grid-points".into(),
            reason: "must be positive".into(),
        });
    }
    let (_, r) = closed_form(s)?;
    let t = s.horizon;
    let mut times: Vec<f64> = (0..=n).map(|k| if k == n { t } else { t * k as f64 / n as f64 }).collect();
    times.extend(r.t_star.iter().copied());
    times.sort_by(f64::total_cmp);
    times.dedup();
    let mlp = most_likely_path(&r, &s.exit, &s.kernels, &times)?;
    let p = s.kernels.len();
    let mut header = vec!["u".to_string()];
    header.extend((1..=p).map(|i| format!("z_{i}")));
    header.push("residual".into());
    let rows: Vec<Vec<String>> = mlp
        .times
        .iter()
        .zip(&mlp.values)
        .map(|(&u, z)| {
            let residual = match &s.exit {
                ExitEvent::Halfspace(h) if u == r.t_star[0] => {
                    Some(z.iter().zip(h.xi()).map(|(z, xi)| z * xi).sum::<f64>() - h.level())
                }
                ExitEvent::Quadrant(q) => (0..p)
                    .filter(|&i| r.t_star[i] == u)
                    .map(|i| z[i] - q.levels()[i])
                    .max_by(|a, b| a.abs().total_cmp(&b.abs())),
                _ => None,
            };
            let mut row = vec![fmt9(u)];
            row.extend(z.iter().map(|&v| fmt9(v)));
            row.push(residual.map(fmt9).unwrap_or_default());
            row
        })
        .collect();
    csv_text(&header, &rows)
}

/// Compares the closed form with the grid oracle. `pass` is false when the
/// relative gap exceeds the tolerance.
pub fn cmd_oracle_check(s: &Resolved, m: Option<usize>, tolerance: Option<f64>) -> Result<OracleReport, CliError> {
    let m = m.unwrap_or(s.oracle.m);
    let tolerance = tolerance.unwrap_or(s.oracle.tolerance);
    let (model, cf) = closed_form(s)?;
    let prob = DiscretizedProblem::uniform(m, s.kernels.clone(), s.exit.clone(), model.clone())?;
    let sol = oracle::solve(&prob)?;
    let rel_gap = (sol.w - cf.w).abs() / cf.w;
    Ok(OracleReport {
        exit: exit_name(s.exit.kind()).into(),
        model: model_name(&model).into(),
        m,
        tolerance,
        closed_form_w: cf.w,
        oracle_w: sol.w,
        rel_gap,
        pass: rel_gap <= tolerance,
        closed_form_t_star: cf.t_star,
        oracle_t_star: sol.t_star,
        gradient_norm: sol.gradient_norm,
        constraint_residual: sol.constraint_residual,
        concentration: sol.concentration,
    }
    .rounded())
}

#[derive(Debug, Clone)]
pub struct SimulateOutput {
    pub rows: Vec<EstimateRow>,
    /// Closed-form rate the curve is compared with; absent for fixed scales.
    pub w_ref: Option<f64>,
    pub curve: Option<Result<DecayCurve, exitrate::Error>>,
}

impl SimulateOutput {
    /// `gamma, samples, exits, p_hat, ci_low, ci_high, log_rate`; the last
    /// column is empty when no scenario exited.
    pub fn estimates_csv(&self) -> Result<String, CliError> {
        let header: Vec<String> = ["gamma", "samples", "exits", "p_hat", "ci_low", "ci_high", "log_rate"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    fmt9(r.gamma),
                    r.samples.to_string(),
                    r.exits.to_string(),
                    fmt9(r.p_hat),
                    fmt9(r.ci_low),
                    fmt9(r.ci_high),
                    r.log_rate.map(fmt9).unwrap_or_default(),
                ]
            })
            .collect();
        csv_text(&header, &rows)
    }

    /// `gamma, rate, w_ref, rel_error` for the usable speeds.
    pub fn curve_csv(&self) -> Option<Result<String, CliError>> {
        let Some(Ok(c)) = &self.curve else {
            return None;
        };
        let header: Vec<String> = ["gamma", "rate", "w_ref", "rel_error"].iter().map(|s| s.to_string()).collect();
        let rows: Vec<Vec<String>> = c
            .points
            .iter()
            .map(|p| vec![fmt9(p.gamma), fmt9(p.rate), fmt9(c.w_ref), fmt9(p.rel_error)])
            .collect();
        Some(csv_text(&header, &rows))
    }

    pub fn curve_summary(&self) -> String {
        match &self.curve {
            None => "no decay curve: the scale has no rate law\n".into(),
            Some(Err(e)) => format!("no decay curve: {e}\n"),
            Some(Ok(c)) => {
                let mut s = format!("w_ref = {}\n", fmt9(c.w_ref));
                for p in &c.points {
                    s.push_str(&format!(
                        "gamma = {}: rate = {}, relative error = {}\n",
                        fmt9(p.gamma),
                        fmt9(p.rate),
                        fmt9(p.rel_error)
                    ));
                }
                s.push_str(&format!(
                    "relative error non-increasing: {}; rate non-decreasing: {}\n",
                    c.converging, c.rate_increasing
                ));
                s
            }
        }
    }
}

/// Monte Carlo exit probabilities at each speed, plus the decay curve
/// against the closed-form rate when the scale has a rate law.
pub fn cmd_simulate(
    s: &Resolved,
    gammas: Option<Vec<f64>>,
    samples: Option<usize>,
    seed: Option<u64>,
) -> Result<SimulateOutput, CliError> {
    let cfg = s.sim_config(gammas, samples, seed)?;
    let rows = estimate_exit_prob(&cfg, &s.exit, &s.sim_model, &s.kernels)?;
    let w_ref = match s.perturbation_model() {
        Ok(model) => Some(decay(&s.exit, &s.kernels, &model, &s.optimizer)?.w),
        Err(_) => None,
    };
    let curve = w_ref.map(|w| decay_curve(&rows, w));
    Ok(SimulateOutput { rows, w_ref, curve })
}

/// Mittag-Leffler `E_β(z)` or M-Wright density `M_β(τ)`; exactly one of
/// `z` and `tau` must be given.
pub fn cmd_mlf(beta: f64, z: Option<f64>, tau: Option<f64>) -> Result<f64, CliError> {
    match (z, tau) {
        (Some(z), None) => Ok(mittag_leffler(beta, z)?),
        (None, Some(tau)) => Ok(mwright_density(beta, tau)?),
        _ if !(beta > 0.0 && beta <= 1.0) => Err(CliError::Engine(exitrate::Error::Domain(format!(
            "beta must lie in (0, 1], got {beta}"
        )))),
        _ => Err(CliError::Engine(exitrate::Error::Usage(
            "give exactly one of --z and --tau".into(),
        ))),
    }
}
