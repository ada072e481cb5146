//! Result documents and their plain-text summaries.
//!
//! Floating-point values are rounded to 9 significant digits before they
//! are stored, so a results file reloaded from disk renders exactly the
//! summary that was printed when it was written.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Rounds to 9 significant digits.
pub fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

/// Formats a value rounded to 9 significant digits.
pub fn fmt9(x: f64) -> String {
    format!("{:?}", sig9(x))
}

fn fmt_list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|&x| fmt9(x)).collect();
    format!("[{}]", items.join(", "))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub d: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    /// `halfspace` or `quadrant`.
    pub exit: String,
    /// `equal` (shared scale) or `indep` (per-component scales).
    pub model: String,
    /// Resolved `(d, θ)` per scale.
    pub laws: Vec<LawReport>,
    pub w: f64,
    pub t_star: Vec<f64>,
    pub c_star: Vec<f64>,
}

impl DecayReport {
    pub fn rounded(mut self) -> Self {
        for l in &mut self.laws {
            l.d = sig9(l.d);
            l.theta = sig9(l.theta);
        }
        self.w = sig9(self.w);
        self.t_star.iter_mut().for_each(|v| *v = sig9(*v));
        self.c_star.iter_mut().for_each(|v| *v = sig9(*v));
        self
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        writeln!(s, "model: {} / {}", self.exit, self.model).unwrap();
        for (i, l) in self.laws.iter().enumerate() {
            writeln!(s, "law[{i}]: d = {}, theta = {}", fmt9(l.d), fmt9(l.theta)).unwrap();
        }
        writeln!(s, "w = {}", fmt9(self.w)).unwrap();
        writeln!(s, "t* = {}", fmt_list(&self.t_star)).unwrap();
        writeln!(s, "c* = {}", fmt_list(&self.c_star)).unwrap();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub exit: String,
    pub model: String,
    pub m: usize,
    pub tolerance: f64,
    pub closed_form_w: f64,
    pub oracle_w: f64,
    pub rel_gap: f64,
    pub pass: bool,
    pub closed_form_t_star: Vec<f64>,
    pub oracle_t_star: Vec<f64>,
    pub gradient_norm: f64,
    pub constraint_residual: f64,
    pub concentration: f64,
}

impl OracleReport {
    pub fn rounded(mut self) -> Self {
        for v in [
            &mut self.tolerance,
            &mut self.closed_form_w,
            &mut self.oracle_w,
            &mut self.rel_gap,
            &mut self.gradient_norm,
            &mut self.constraint_residual,
            &mut self.concentration,
        ] {
            *v = sig9(*v);
        }
        self.closed_form_t_star.iter_mut().for_each(|v| *v = sig9(*v));
        self.oracle_t_star.iter_mut().for_each(|v| *v = sig9(*v));
        self
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        writeln!(s, "model: {} / {}", self.exit, self.model).unwrap();
        writeln!(s, "closed form w = {} at t* = {}", fmt9(self.closed_form_w), fmt_list(&self.closed_form_t_star)).unwrap();
        writeln!(s, "oracle w = {} at t* = {} (m = {})", fmt9(self.oracle_w), fmt_list(&self.oracle_t_star), self.m).unwrap();
        writeln!(
            s,
            "relative gap = {} (tolerance {}): {}",
            fmt9(self.rel_gap),
            fmt9(self.tolerance),
            if self.pass { "pass" } else { "FAIL" }
        )
        .unwrap();
        writeln!(
            s,
            "gradient norm = {}, constraint residual = {}, concentration = {}",
            fmt9(self.gradient_norm),
            fmt9(self.constraint_residual),
            fmt9(self.concentration)
        )
        .unwrap();
        s
    }
}

/// Any results document written by the tool.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Decay(DecayReport),
    OracleCheck(OracleReport),
}

impl Report {
    pub fn summary(&self) -> String {
        match self {
            Report::Decay(r) => r.summary(),
            Report::OracleCheck(r) => r.summary(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Report(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }
}
