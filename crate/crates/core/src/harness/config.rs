use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::integrator::{IntegratorConfig, StepControl};
use crate::{Error, Result};

/// Benchmark problem selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    /// `u(x, 0) = sin πx` on `[0, 1]`, zero boundary values.
    Burgers1d,
    /// Traveling logistic front on the unit square.
    Burgers2d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Fixed,
    Adaptive,
}

/// Everything needed to reproduce one run. Fully deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: Problem,
    pub eps: f64,
    #[serde(rename = "N", alias = "n")]
    pub n: usize,
    /// Degree along `y`; defaults to `N` for the 2D problem.
    #[serde(rename = "M", alias = "m", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub theta: f64,
    #[serde(rename = "K", alias = "k")]
    pub k: usize,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    pub tf: f64,
    /// Off-node `x` locations for pointwise reporting (the diagonal `(x, x)`
    /// in 2D).
    #[serde(default)]
    pub report_points: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub newton_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt_max: Option<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            problem: Problem::Burgers1d,
            eps: 0.1,
            n: 20,
            m: None,
            theta: 0.5,
            k: 3,
            mode: Mode::Fixed,
            dt: Some(1e-3),
            tol: None,
            tf: 0.1,
            report_points: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            output_dir: None,
            newton_tol: None,
            dt_min: None,
            dt_max: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Degree along `y` for the 2D problem.
    pub fn y_degree(&self) -> usize {
        self.m.unwrap_or(self.n)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return bad(format!("eps must be positive, got {}", self.eps));
        }
        if self.n < 2 {
            return bad(format!("N must be at least 2, got {}", self.n));
        }
        match self.problem {
            Problem::Burgers1d if self.m.is_some() => {
                return bad("M applies only to burgers2d".into());
            }
            Problem::Burgers2d if self.y_degree() < 2 => {
                return bad(format!("M must be at least 2, got {}", self.y_degree()));
            }
            _ => {}
        }
        if !(self.tf >= 0.0 && self.tf.is_finite()) {
            return bad(format!("tf must be non-negative, got {}", self.tf));
        }
        match self.mode {
            Mode::Fixed if !self.dt.is_some_and(|d| d > 0.0 && d.is_finite()) => {
                return bad("fixed mode needs a positive dt".into());
            }
            Mode::Adaptive if !self.tol.is_some_and(|t| t > 0.0 && t.is_finite()) => {
                return bad("adaptive mode needs a positive tol".into());
            }
            _ => {}
        }
        if let Some(&x) = self.report_points.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return bad(format!("report point {x} outside [0, 1]"));
        }
        self.integrator_config()
            .validate()
            .map_err(|e| Error::Config(e.to_string()))
    }

    pub fn integrator_config(&self) -> IntegratorConfig {
        let control = match self.mode {
            Mode::Fixed => StepControl::Fixed {
                dt: self.dt.unwrap_or(f64::NAN),
            },
            Mode::Adaptive => StepControl::Adaptive {
                tol: self.tol.unwrap_or(f64::NAN),
            },
        };
        let mut cfg = IntegratorConfig::fixed(self.theta, self.k, 1.0);
        cfg.control = control;
        if let Some(v) = self.newton_tol {
            cfg.newton_tol = v;
        }
        if let Some(v) = self.dt_min {
            cfg.dt_min = v;
        }
        if let Some(v) = self.dt_max {
            cfg.dt_max = v;
        }
        cfg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        ExperimentConfig::default().validate().unwrap();
    }

    #[test]
    fn json_uses_flag_names() {
        let cfg: ExperimentConfig = serde_json::from_str(
            r#"{"problem":"burgers2d","eps":1,"N":10,"M":12,"theta":0.5,"K":3,
                "mode":"adaptive","tol":1e-15,"tf":0.5}"#,
        )
        .unwrap();
        assert_eq!(cfg.problem, Problem::Burgers2d);
        assert_eq!(cfg.y_degree(), 12);
        cfg.validate().unwrap();
        let back: ExperimentConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_inconsistent_settings() {
        let base = ExperimentConfig::default();
        let cases = [
            ExperimentConfig { eps: 0.0, ..base.clone() },
            ExperimentConfig { n: 1, ..base.clone() },
            ExperimentConfig { m: Some(4), ..base.clone() },
            ExperimentConfig { dt: None, ..base.clone() },
            ExperimentConfig { mode: Mode::Adaptive, ..base.clone() },
            ExperimentConfig { report_points: vec![1.5], ..base.clone() },
            ExperimentConfig { theta: 1.5, ..base.clone() },
            ExperimentConfig { k: 0, ..base.clone() },
            ExperimentConfig { tf: -1.0, ..base },
        ];
        for c in cases {
            let err = c.validate().unwrap_err();
            assert!(err.is_validation(), "{err}");
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let r: std::result::Result<ExperimentConfig, _> =
            serde_json::from_str(r#"{"problem":"burgers1d","eps":1,"N":10,"theta":0.5,"K":1,"mode":"fixed","dt":0.1,"tf":1,"bogus":1}"#);
        assert!(r.is_err());
    }
}
