//! Experiment runner: builds the benchmark problems from an
//! [`ExperimentConfig`], integrates them, measures errors against the exact
//! solutions and writes `summary.json`, `solution.csv`, `steps.csv`,
//! `convergence.csv` and `profiles_<t>.csv`.
//!
//! Errors are maxima over interior collocation nodes at the final time.
//! Off-node values always go through the collocation interpolant.

mod config;
mod output;

use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::burgers::{Homogeneous, InteriorField, SemiDiscreteSystem};
use crate::cheb::{CollocationGrid, TensorInterpolant};
use crate::integrator::{self, IntegratorConfig, RunReport, StepControl, StepRecord};
use crate::oracle::{self, FourierSolution, ScaleSelection, TravelingWave};
use crate::{Error, Result, Side};

pub use config::{ExperimentConfig, Mode, Problem};
pub use output::{fmt_f64, write_atomic, write_csv, write_json, Csv};

/// Dense samples per axis for profile output.
pub const PROFILE_POINTS: usize = 400;
/// Allowed overshoot as a fraction of the data range.
pub const OVERSHOOT_FRACTION: f64 = 0.005;

/// A discretised benchmark problem ready to integrate.
#[derive(Debug)]
pub struct Setup {
    pub system: SemiDiscreteSystem,
    pub initial: InteriorField,
    /// Present for the 2D problem.
    pub wave: Option<(TravelingWave, ScaleSelection)>,
}

impl Setup {
    pub fn new(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let gx = CollocationGrid::new(0.0, 1.0, cfg.n)?;
        match cfg.problem {
            Problem::Burgers1d => {
                let system = SemiDiscreteSystem::assemble(&[gx], cfg.eps, Arc::new(Homogeneous))?;
                let initial = system.initial_field(|x, _| (PI * x).sin());
                Ok(Self {
                    system,
                    initial,
                    wave: None,
                })
            }
            Problem::Burgers2d => {
                let gy = CollocationGrid::new(0.0, 1.0, cfg.y_degree())?;
                let (wave, selection) = TravelingWave::select(cfg.eps)?;
                log::info!("traveling-wave exponent scale {} ({selection:?})", wave.exponent_scale);
                let system = SemiDiscreteSystem::assemble(&[gx, gy], cfg.eps, Arc::new(wave))?;
                let initial = system.initial_field(|x, y| wave.value(x, y, 0.0));
                Ok(Self {
                    system,
                    initial,
                    wave: Some((wave, selection)),
                })
            }
        }
    }

    /// Initial condition at an arbitrary point of the domain.
    pub fn initial_value(&self, x: f64, y: f64) -> f64 {
        match &self.wave {
            None => (PI * x).sin(),
            Some((w, _)) => w.value(x, y, 0.0),
        }
    }

    /// Full-grid values (boundary included) of an interior field at `t`.
    pub fn full_field(&self, beta: &InteriorField, t: f64) -> Result<DMatrix<f64>> {
        self.system.extend(beta, t)
    }

    /// Collocation interpolant of `full` at `(x, y)`; `y` is ignored in 1D.
    pub fn interpolate(&self, full: &DMatrix<f64>, x: f64, y: f64) -> Result<f64> {
        match self.system.grid_y() {
            None => self.system.grid_x().interp_eval(full.as_slice(), x),
            Some(gy) => TensorInterpolant::new(self.system.grid_x(), gy, full)?.eval(x, y),
        }
    }
}

/// Exact solution matching a [`Setup`].
#[derive(Debug, Clone)]
pub enum Oracle {
    Fourier(FourierSolution),
    Wave(TravelingWave),
}

impl Oracle {
    pub fn new(cfg: &ExperimentConfig, setup: &Setup) -> Result<Self> {
        Ok(match &setup.wave {
            None => Oracle::Fourier(FourierSolution::for_viscosity(cfg.eps)?),
            Some((w, _)) => Oracle::Wave(*w),
        })
    }

    pub fn exact(&self, x: f64, y: f64, t: f64) -> Result<f64> {
        match self {
            Oracle::Fourier(s) => s.exact_1d(x, t),
            Oracle::Wave(w) => Ok(w.value(x, y, t)),
        }
    }

    /// Maximum error over the interior nodes of `system`.
    pub fn linf_on_nodes(&self, system: &SemiDiscreteSystem, beta: &InteriorField, t: f64) -> Result<f64> {
        let xs = system.grid_x().interior_nodes();
        let m = beta.as_matrix();
        let mut worst = 0.0f64;
        match system.grid_y() {
            None => {
                for (i, &x) in xs.iter().enumerate() {
                    worst = worst.max((m[(i, 0)] - self.exact(x, 0.0, t)?).abs());
                }
            }
            Some(gy) => {
                for (j, &y) in gy.interior_nodes().iter().enumerate() {
                    for (i, &x) in xs.iter().enumerate() {
                        worst = worst.max((m[(i, j)] - self.exact(x, y, t)?).abs());
                    }
                }
            }
        }
        if worst.is_nan() {
            return Err(Error::NonFinite { t });
        }
        Ok(worst)
    }
}

/// Solution versus exact value at a reporting point (`(x, x)` in 2D).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointValue {
    pub x: f64,
    pub computed: f64,
    pub exact: f64,
}

/// Result of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorSummary {
    pub config: ExperimentConfig,
    pub linf_on_nodes: f64,
    pub values_at_points: Vec<PointValue>,
    /// Accepted steps.
    pub step_count: usize,
    pub rejected_steps: usize,
    pub final_time: f64,
    /// Exponent scale of the traveling wave (2D only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_scale: Option<f64>,
    /// Not serialised so that repeated runs give identical files.
    #[serde(skip)]
    pub wall_time: f64,
}

/// Everything produced by [`solve`].
#[derive(Debug)]
pub struct Solved {
    pub summary: ErrorSummary,
    pub report: RunReport,
    pub setup: Setup,
    /// Final field on the full grid, boundary included.
    pub full_field: DMatrix<f64>,
}

/// Advances `beta0` from `t0` to `t1` with the configured step control.
pub fn integrate_between(
    system: &SemiDiscreteSystem,
    beta0: &InteriorField,
    t0: f64,
    t1: f64,
    cfg: &IntegratorConfig,
) -> Result<RunReport> {
    match cfg.control {
        StepControl::Fixed { .. } => integrator::integrate_fixed_from(system, beta0, t0, t1, cfg),
        StepControl::Adaptive { .. } => integrator::integrate_adaptive_from(system, beta0, t0, t1, cfg),
    }
}

/// Runs `cfg` without touching the file system.
pub fn solve(cfg: &ExperimentConfig) -> Result<Solved> {
    let started = Instant::now();
    let setup = Setup::new(cfg)?;
    let icfg = cfg.integrator_config();
    let report = integrate_between(&setup.system, &setup.initial, 0.0, cfg.tf, &icfg)?;
    let oracle = Oracle::new(cfg, &setup)?;
    let t = report.final_time;
    let linf = oracle.linf_on_nodes(&setup.system, &report.final_field, t)?;
    let full_field = setup.full_field(&report.final_field, t)?;
    let values_at_points = cfg
        .report_points
        .iter()
        .map(|&x| {
            Ok(PointValue {
                x,
                computed: setup.interpolate(&full_field, x, x)?,
                exact: oracle.exact(x, x, t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = report;
    report.max_error_vs_oracle = Some(linf);
    let summary = ErrorSummary {
        config: cfg.clone(),
        linf_on_nodes: linf,
        values_at_points,
        step_count: report.step_count,
        rejected_steps: report.rejected_count(),
        final_time: t,
        exponent_scale: setup.wave.as_ref().map(|(w, _)| w.exponent_scale),
        wall_time: started.elapsed().as_secs_f64(),
    };
    Ok(Solved {
        summary,
        report,
        setup,
        full_field,
    })
}

/// Runs `cfg` and, when `output_dir` is set, writes `summary.json`,
/// `solution.csv` and `steps.csv` there.
pub fn run(cfg: &ExperimentConfig) -> Result<ErrorSummary> {
    let solved = solve(cfg)?;
    if let Some(dir) = &cfg.output_dir {
        write_run(dir, &solved)?;
    }
    Ok(solved.summary)
}

fn write_run(dir: &Path, solved: &Solved) -> Result<()> {
    write_json(&dir.join("summary.json"), &solved.summary)?;
    write_csv(&dir.join("solution.csv"), &solution_csv(solved)?)?;
    write_csv(&dir.join("steps.csv"), &steps_csv(&solved.report.steps))
}

fn solution_csv(solved: &Solved) -> Result<Csv> {
    let system = &solved.setup.system;
    let oracle = Oracle::new(&solved.summary.config, &solved.setup)?;
    let t = solved.summary.final_time;
    let xs = system.grid_x().nodes();
    let u = &solved.full_field;
    Ok(match system.grid_y() {
        None => {
            let mut csv = Csv::new(&["x", "u", "exact"]);
            for (i, &x) in xs.iter().enumerate() {
                csv.floats(&[x, u[(i, 0)], oracle.exact(x, 0.0, t)?]);
            }
            csv
        }
        Some(gy) => {
            let mut csv = Csv::new(&["x", "y", "u", "exact"]);
            for (j, &y) in gy.nodes().iter().enumerate() {
                for (i, &x) in xs.iter().enumerate() {
                    csv.floats(&[x, y, u[(i, j)], oracle.exact(x, y, t)?]);
                }
            }
            csv
        }
    })
}

/// Per-step log, rejected attempts included.
pub fn steps_csv(steps: &[StepRecord]) -> Csv {
    let mut csv = Csv::new(&["step", "t", "dt", "newton_iters", "error_estimate", "accepted"]);
    for (i, s) in steps.iter().enumerate() {
        csv.row(&[
            i.to_string(),
            fmt_f64(s.t),
            fmt_f64(s.dt),
            s.newton_iters.to_string(),
            fmt_f64(s.error_estimate),
            u8::from(s.accepted).to_string(),
        ]);
    }
    csv
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub dt: f64,
    /// Error against the exact solution (time plus space).
    pub linf: f64,
    /// Error against the time reference on the same grid.
    pub temporal_error: f64,
    pub step_count: usize,
    /// Order of `temporal_error` observed against the previous step size.
    pub observed_order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `log temporal_error` against `log Δt`; NaN
    /// when the configuration is unstable.
    pub order_estimate: f64,
    pub predicted_order: usize,
    pub stable: bool,
    pub reference_dt: f64,
}

/// Newton tolerance for order studies unless the config sets one, so that
/// solver noise stays well below the smallest measured error.
pub const CONVERGENCE_NEWTON_TOL: f64 = 1e-14;
/// Order and step-size divisor of the time reference used by [`converge`].
pub const REFERENCE_ORDER: usize = 5;
pub const REFERENCE_REFINEMENT: f64 = 8.0;

/// Fixed-step runs of `cfg` for each `Δt` in `dts` (at least three,
/// strictly decreasing). Writes `convergence.csv` when `output_dir` is set.
///
/// Besides the error against the exact solution, each run is compared with
/// a θ = ½, K = 5 solution on the same grid at `Δt_min / 8`, which isolates
/// the time-discretisation error from the spatial error floor. Newton
/// iterations use [`CONVERGENCE_NEWTON_TOL`] unless `cfg` sets a tolerance.
pub fn converge(cfg: &ExperimentConfig, dts: &[f64]) -> Result<ConvergenceTable> {
    if dts.len() < 3 || dts.windows(2).any(|w| !(w[1] < w[0])) || dts.iter().any(|d| !(*d > 0.0)) {
        return Err(Error::Config("need at least three positive, strictly decreasing step sizes".into()));
    }
    let fixed = |dt: f64, theta: f64, k: usize| ExperimentConfig {
        mode: Mode::Fixed,
        dt: Some(dt),
        tol: None,
        theta,
        k,
        report_points: Vec::new(),
        output_dir: None,
        newton_tol: cfg.newton_tol.or(Some(CONVERGENCE_NEWTON_TOL)),
        ..cfg.clone()
    };
    let reference_dt = dts[dts.len() - 1] / REFERENCE_REFINEMENT;
    let reference = solve(&fixed(reference_dt, 0.5, REFERENCE_ORDER))?.report.final_field;
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(dts.len());
    let mut stable = true;
    for &dt in dts {
        let (linf, temporal_error, step_count) = match solve(&fixed(dt, cfg.theta, cfg.k)) {
            Ok(s) => {
                let diff = s.report.final_field.as_matrix() - reference.as_matrix();
                (s.summary.linf_on_nodes, diff.amax(), s.summary.step_count)
            }
            Err(e) if !e.is_validation() => {
                log::warn!("Δt = {dt}: {e}");
                (f64::NAN, f64::NAN, 0)
            }
            Err(e) => return Err(e),
        };
        let observed_order = rows.last().and_then(|prev| {
            (prev.temporal_error.is_finite() && temporal_error.is_finite() && temporal_error > 0.0)
                .then(|| (prev.temporal_error / temporal_error).ln() / (prev.dt / dt).ln())
        });
        if !temporal_error.is_finite() || observed_order.is_some_and(|p| p < 0.0) {
            stable = false;
        }
        rows.push(ConvergenceRow {
            dt,
            linf,
            temporal_error,
            step_count,
            observed_order,
        });
    }
    let order_estimate = if stable {
        let errors: Vec<f64> = rows.iter().map(|r| r.temporal_error).collect();
        integrator::order_estimate(&errors, dts).unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    let table = ConvergenceTable {
        rows,
        order_estimate,
        predicted_order: cfg.integrator_config().predicted_order(),
        stable,
        reference_dt,
    };
    if let Some(dir) = &cfg.output_dir {
        write_csv(&dir.join("convergence.csv"), &convergence_csv(&table))?;
    }
    Ok(table)
}

pub fn convergence_csv(table: &ConvergenceTable) -> Csv {
    let mut csv = Csv::new(&["dt", "linf", "temporal_error", "steps", "observed_order"]);
    for r in &table.rows {
        csv.row(&[
            fmt_f64(r.dt),
            fmt_f64(r.linf),
            fmt_f64(r.temporal_error),
            r.step_count.to_string(),
            r.observed_order.map(fmt_f64).unwrap_or_default(),
        ]);
    }
    csv.row(&[
        "order_estimate".to_string(),
        String::new(),
        String::new(),
        String::new(),
        fmt_f64(table.order_estimate),
    ]);
    csv
}

/// Dense samples of the solution at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub t: f64,
    pub xs: Vec<f64>,
    /// Empty in one dimension.
    pub ys: Vec<f64>,
    /// `values[(p, q)]` is the solution at `(xs[p], ys[q])`; one column in 1D.
    pub values: DMatrix<f64>,
}

impl Profile {
    pub fn min(&self) -> f64 {
        self.values.min()
    }

    pub fn max(&self) -> f64 {
        self.values.max()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileReport {
    pub profiles: Vec<Profile>,
    /// Range of the initial and boundary data over the run.
    pub data_range: (f64, f64),
    /// `data_range` widened by [`OVERSHOOT_FRACTION`] of its width.
    pub allowed_range: (f64, f64),
    pub non_oscillatory: bool,
}

/// `n` equispaced points covering `[0, 1]`.
pub fn dense_axis(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

/// Integrates to each of `times` (non-decreasing, within `[0, tf]`) and
/// samples the solution on a dense grid. Writes `profiles_<t>.csv` when
/// `output_dir` is set.
pub fn profile_snapshots(cfg: &ExperimentConfig, times: &[f64]) -> Result<ProfileReport> {
    if times.is_empty()
        || times.windows(2).any(|w| !(w[1] >= w[0]))
        || times.iter().any(|t| !(0.0..=cfg.tf).contains(t))
    {
        return Err(Error::Config(format!("snapshot times must be non-decreasing within [0, {}]", cfg.tf)));
    }
    let setup = Setup::new(cfg)?;
    let icfg = cfg.integrator_config();
    let axis = dense_axis(PROFILE_POINTS);
    let mut beta = setup.initial.clone();
    let mut t = 0.0;
    let mut profiles = Vec::with_capacity(times.len());
    for &target in times {
        if target > t {
            let report = integrate_between(&setup.system, &beta, t, target, &icfg)?;
            beta = report.final_field;
            t = target;
        }
        let full = setup.full_field(&beta, t)?;
        let (ys, values) = match setup.system.grid_y() {
            None => {
                let interp = setup.system.grid_x().interpolant(full.as_slice())?;
                let v = axis.iter().map(|&x| interp.eval(x)).collect::<Result<Vec<_>>>()?;
                (Vec::new(), DMatrix::from_vec(axis.len(), 1, v))
            }
            Some(gy) => {
                let interp = TensorInterpolant::new(setup.system.grid_x(), gy, &full)?;
                (axis.clone(), interp.eval_grid(&axis, &axis)?)
            }
        };
        profiles.push(Profile {
            t,
            xs: axis.clone(),
            ys,
            values,
        });
    }
    let data_range = data_range(&setup, &axis, times);
    let w = data_range.1 - data_range.0;
    let allowed_range = (data_range.0 - OVERSHOOT_FRACTION * w, data_range.1 + OVERSHOOT_FRACTION * w);
    let non_oscillatory = profiles
        .iter()
        .all(|p| p.min() >= allowed_range.0 && p.max() <= allowed_range.1);
    let report = ProfileReport {
        profiles,
        data_range,
        allowed_range,
        non_oscillatory,
    };
    if let Some(dir) = &cfg.output_dir {
        for p in &report.profiles {
            write_csv(&dir.join(format!("profiles_{}.csv", p.t)), &profile_csv(p))?;
        }
    }
    Ok(report)
}

/// Extremes of the initial data on the dense grid and of the boundary data
/// along every edge at each snapshot time.
fn data_range(setup: &Setup, axis: &[f64], times: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut see = |v: f64| {
        lo = lo.min(v);
        hi = hi.max(v);
    };
    let bc = setup.system.bc();
    match setup.system.grid_y() {
        None => {
            axis.iter().for_each(|&x| see(setup.initial_value(x, 0.0)));
            for &t in times {
                see(bc.value(Side::Left, 0.0, t));
                see(bc.value(Side::Right, 0.0, t));
            }
        }
        Some(_) => {
            for &y in axis {
                axis.iter().for_each(|&x| see(setup.initial_value(x, y)));
            }
            for &t in times {
                for &s in axis {
                    for side in [Side::Left, Side::Right, Side::Bottom, Side::Top] {
                        see(bc.value(side, s, t));
                    }
                }
            }
        }
    }
    (lo, hi)
}

pub fn profile_csv(p: &Profile) -> Csv {
    if p.ys.is_empty() {
        let mut csv = Csv::new(&["x", "u"]);
        for (i, &x) in p.xs.iter().enumerate() {
            csv.floats(&[x, p.values[(i, 0)]]);
        }
        csv
    } else {
        let mut csv = Csv::new(&["x", "y", "u"]);
        for (q, &y) in p.ys.iter().enumerate() {
            for (i, &x) in p.xs.iter().enumerate() {
                csv.floats(&[x, y, p.values[(i, q)]]);
            }
        }
        csv
    }
}

/// Self-consistency report on the exact solutions for one viscosity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub eps: f64,
    pub fourier_a0: f64,
    pub fourier_modes: usize,
    /// Largest PDE residual of the Fourier solution over the sample points.
    pub fourier_residual: f64,
    pub scale_selection: ScaleSelection,
    /// Largest PDE residual of the selected traveling wave.
    pub wave_residual: f64,
    pub samples: usize,
}

/// Evaluates both exact solutions' PDE residuals (`h = 1e-4`) at
/// `samples` low-discrepancy interior points with `t ∈ [0.05, 0.5]`.
pub fn oracle_check(eps: f64, samples: usize) -> Result<OracleCheck> {
    const H: f64 = 1e-4;
    let fourier = FourierSolution::for_viscosity(eps)?;
    let (wave, selection) = TravelingWave::select(eps)?;
    let mut fourier_residual = 0.0f64;
    let mut wave_residual = 0.0f64;
    for i in 1..=samples {
        let x = 0.02 + 0.96 * oracle::halton(i, 2);
        let y = 0.02 + 0.96 * oracle::halton(i, 3);
        let t = 0.05 + 0.45 * oracle::halton(i, 5);
        let failure = std::cell::Cell::new(None);
        let r1 = oracle::pde_residual_1d(
            |x, t| {
                fourier.exact_1d(x, t).unwrap_or_else(|e| {
                    failure.set(Some(e));
                    f64::NAN
                })
            },
            (x, t),
            eps,
            H,
        );
        if let Some(e) = failure.take() {
            return Err(e);
        }
        fourier_residual = fourier_residual.max(r1.abs());
        let r2 = oracle::pde_residual(|x, y, t| wave.value(x, y, t), (x, y, t), eps, H);
        wave_residual = wave_residual.max(r2.abs());
    }
    Ok(OracleCheck {
        eps,
        fourier_a0: fourier.a0(),
        fourier_modes: fourier.coefficients().len(),
        fourier_residual,
        scale_selection: selection,
        wave_residual,
        samples,
    })
}
