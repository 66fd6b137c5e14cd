//! The IELDTM time integrator.
//!
//! Each step matches two order-`K` local Taylor expansions of the solution,
//! one about the current node `t_i` and one about the unknown next node
//! `t_i + Δt`, at the interior point `t_i + (1 − θ)Δt`:
//!
//! ```text
//! Σ_k β̄_{i+1}(k) (−θΔt)^k = Σ_k β̄_i(k) ((1 − θ)Δt)^k
//! ```
//!
//! `θ = 0` gives the explicit Taylor method, `θ = 1` the backward one, and
//! `θ = ½` with `K = 1` is the trapezoidal rule. The implicit equations are
//! solved for `β̄_{i+1}(0)` by Newton's method with a finite-difference
//! Jacobian that is factorised once and reused while it keeps contracting.

use nalgebra::{DMatrix, DVector, Dyn, LU};
pub use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::burgers::{InteriorField, SemiDiscreteSystem, TaylorCoeffs};
use crate::{Error, Result};

/// How the step size is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepControl {
    Fixed { dt: f64 },
    Adaptive { tol: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    /// Direction parameter θ ∈ [0, 1].
    pub theta: f64,
    /// Transform order K ≥ 1.
    pub order: usize,
    pub control: StepControl,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// Fraction of the admissible step actually proposed in adaptive mode.
    pub safety: f64,
    pub dt_min: f64,
    pub dt_max: f64,
}

impl IntegratorConfig {
    pub fn fixed(theta: f64, order: usize, dt: f64) -> Self {
        Self::with_control(theta, order, StepControl::Fixed { dt })
    }

    pub fn adaptive(theta: f64, order: usize, tol: f64) -> Self {
        Self::with_control(theta, order, StepControl::Adaptive { tol })
    }

    fn with_control(theta: f64, order: usize, control: StepControl) -> Self {
        Self {
            theta,
            order,
            control,
            newton_tol: 1e-12,
            newton_max_iter: 25,
            safety: 0.8,
            dt_min: 1e-10,
            dt_max: 0.1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(0.0..=1.0).contains(&self.theta) {
            return bad(format!("theta must lie in [0, 1], got {}", self.theta));
        }
        if self.order < 1 {
            return bad("transform order must be at least 1".into());
        }
        match self.control {
            StepControl::Fixed { dt } if !(dt > 0.0 && dt.is_finite()) => {
                return bad(format!("step size must be positive, got {dt}"))
            }
            StepControl::Adaptive { tol } if !(tol > 0.0 && tol.is_finite()) => {
                return bad(format!("tolerance must be positive, got {tol}"))
            }
            _ => {}
        }
        if !(self.newton_tol > 0.0) || self.newton_max_iter == 0 {
            return bad("Newton tolerance and iteration limit must be positive".into());
        }
        if !(self.safety > 0.0 && self.safety <= 1.0) {
            return bad(format!("safety factor must lie in (0, 1], got {}", self.safety));
        }
        if !(self.dt_min > 0.0 && self.dt_min <= self.dt_max) {
            return bad(format!(
                "step clamps must satisfy 0 < dt_min <= dt_max, got [{}, {}]",
                self.dt_min, self.dt_max
            ));
        }
        Ok(())
    }

    /// `true` when θ = ½ and K is odd, where the leading error terms of the
    /// two expansions cancel and the method gains an order.
    pub fn is_symmetric_odd(&self) -> bool {
        self.theta == 0.5 && self.order % 2 == 1
    }

    /// Global convergence order predicted for this (θ, K).
    pub fn predicted_order(&self) -> usize {
        if self.is_symmetric_odd() {
            self.order + 1
        } else {
            self.order
        }
    }

    /// `(coefficient index, exponent, constant)` of the adaptive step bound.
    fn bound_terms(&self) -> (usize, usize, f64) {
        let k = self.order;
        if self.is_symmetric_odd() {
            (k + 2, k + 1, 0.5f64.powi(k as i32 + 1) * (k + 1) as f64)
        } else {
            let c = ((1.0 - self.theta).powi(k as i32 + 1) - (-self.theta).powi(k as i32 + 1)).abs();
            (k + 1, k, c)
        }
    }

    /// Left side of the adaptive inequality: `c · ‖β̄(idx)‖_∞ · Δt^p`.
    pub fn error_estimate(&self, tc: &TaylorCoeffs, dt: f64) -> f64 {
        let (idx, p, c) = self.bound_terms();
        c * tc.coeffs()[idx].norm_inf() * dt.powi(p as i32)
    }

    /// Largest step satisfying the adaptive inequality for `tol` (infinite
    /// when the relevant coefficient vanishes).
    pub fn step_bound(&self, tc: &TaylorCoeffs, tol: f64) -> f64 {
        let (idx, p, c) = self.bound_terms();
        let scale = c * tc.coeffs()[idx].norm_inf();
        if scale == 0.0 {
            f64::INFINITY
        } else {
            (tol / scale).powf(1.0 / p as f64)
        }
    }
}

/// One attempted step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    /// Time at the end of the step.
    pub t: f64,
    pub dt: f64,
    pub newton_iters: usize,
    pub error_estimate: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub steps: Vec<StepRecord>,
    pub final_field: InteriorField,
    pub final_time: f64,
    /// Number of accepted steps.
    pub step_count: usize,
    /// ∞-norm error at interior nodes, filled in by callers that own an
    /// exact solution.
    pub max_error_vs_oracle: Option<f64>,
}

impl RunReport {
    pub fn rejected_count(&self) -> usize {
        self.steps.iter().filter(|s| !s.accepted).count()
    }
}

/// Local coefficients `β̄(0..=order)` about `t` with `β̄(0) = beta0`.
pub fn local_coefficients(
    system: &SemiDiscreteSystem,
    beta0: &InteriorField,
    t: f64,
    order: usize,
) -> Result<TaylorCoeffs> {
    if order < 1 {
        return Err(Error::InvalidParameter("expansion order must be at least 1".into()));
    }
    let series = system.boundary_series(t, order);
    let coeffs = system.expand(beta0.as_matrix(), t, series.as_ref(), order)?;
    Ok(TaylorCoeffs::new(t, coeffs.into_iter().map(InteriorField::new).collect()))
}

/// `Σ β̄_{i+1}(k)(−θΔt)^k − Σ β̄_i(k)((1−θ)Δt)^k` over the common order of
/// the two expansions.
pub fn continuity_residual(tc_i: &TaylorCoeffs, tc_next: &TaylorCoeffs, theta: f64, dt: f64) -> Result<InteriorField> {
    if tc_i.order() != tc_next.order() {
        return Err(Error::InvalidParameter(format!(
            "expansion orders differ: {} vs {}",
            tc_i.order(),
            tc_next.order()
        )));
    }
    let k = tc_i.order();
    let lhs = tc_next.evaluate(-theta * dt, k);
    let rhs = tc_i.evaluate((1.0 - theta) * dt, k);
    Ok(InteriorField::new(lhs.into_matrix() - rhs.into_matrix()))
}

/// `R(z)`: the factor by which one step multiplies the solution of
/// `u' = λu` with `z = λΔt`.
pub fn stability_function(theta: f64, order: usize, z: Complex64) -> Result<Complex64> {
    let series = |w: Complex64| {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        let mut magnitude = 1.0;
        for k in 1..=order {
            term = term * w / k as f64;
            sum += term;
            magnitude += term.norm();
        }
        (sum, magnitude)
    };
    let (num, _) = series(z * (1.0 - theta));
    let (den, den_mag) = series(-z * theta);
    if !den.is_finite() || den.norm() <= 4.0 * f64::EPSILON * den_mag {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    Ok(num / den)
}

/// Least-squares slope of `log(error)` against `log(Δt)`.
pub fn order_estimate(errors: &[f64], dts: &[f64]) -> Result<f64> {
    if errors.len() != dts.len() {
        return Err(Error::OrderEstimate(format!(
            "{} errors for {} step sizes",
            errors.len(),
            dts.len()
        )));
    }
    if errors.len() < 3 {
        return Err(Error::OrderEstimate("need at least three samples".into()));
    }
    if errors.iter().chain(dts).any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::OrderEstimate("errors and step sizes must be positive".into()));
    }
    if dts.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::OrderEstimate("step sizes must be strictly decreasing".into()));
    }
    let xs: Vec<f64> = dts.iter().map(|d| d.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Outcome of one continuity solve.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub field: InteriorField,
    pub newton_iters: usize,
    pub residual: f64,
}

struct JacobianCache {
    lu: LU<f64, Dyn, Dyn>,
    dt: f64,
}

/// Stateful stepper that keeps the factorised Newton matrix between steps.
pub struct Integrator<'a> {
    system: &'a SemiDiscreteSystem,
    cfg: IntegratorConfig,
    jacobian: Option<JacobianCache>,
    jacobian_builds: usize,
}

/// Relative step-size change beyond which the cached Jacobian is rebuilt.
const JACOBIAN_DT_DRIFT: f64 = 0.2;
/// Per-iteration residual reduction below which Newton counts as healthy.
const CONTRACTION_LIMIT: f64 = 0.5;
/// Multiple of the rounding scale `ε_mach Σ_k ‖β̄(k)‖ |h|^k` of the two
/// expansions below which the continuity residual is indistinguishable
/// from zero.
pub const ROUNDOFF_FACTOR: f64 = 64.0;

/// `Σ_k ‖β̄(k)‖_∞ |h|^k` over `coeffs[..=order]`.
pub fn expansion_scale(coeffs: &[InteriorField], h: f64, order: usize) -> f64 {
    coeffs[..=order]
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm_inf() * h.abs().powi(k as i32))
        .sum()
}

/// Residual level at which an implicit step counts as converged: the
/// Newton tolerance, or the rounding floor of the residual itself when
/// that is larger (stiff steps with high `K`).
pub fn residual_threshold(newton_tol: f64, solution_norm: f64, scale: f64) -> f64 {
    (newton_tol * (1.0 + solution_norm)).max(ROUNDOFF_FACTOR * f64::EPSILON * scale)
}

impl<'a> Integrator<'a> {
    pub fn new(system: &'a SemiDiscreteSystem, cfg: IntegratorConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            system,
            cfg,
            jacobian: None,
            jacobian_builds: 0,
        })
    }

    pub fn config(&self) -> &IntegratorConfig {
        &self.cfg
    }

    /// Number of Jacobian factorisations so far.
    pub fn jacobian_builds(&self) -> usize {
        self.jacobian_builds
    }

    /// Expansion order kept at every node: K + 2, so both adaptive bounds are
    /// available.
    fn expansion_order(&self) -> usize {
        self.cfg.order + 2
    }

    pub fn coefficients(&self, beta: &InteriorField, t: f64) -> Result<TaylorCoeffs> {
        local_coefficients(self.system, beta, t, self.expansion_order())
    }

    /// Solves the continuity equation for the value at `tc_i.t() + dt`.
    pub fn step(&mut self, tc_i: &TaylorCoeffs, dt: f64) -> Result<StepOutcome> {
        let k = self.cfg.order;
        let theta = self.cfg.theta;
        if tc_i.order() < k {
            return Err(Error::MissingCoefficients {
                needed: k,
                available: tc_i.order(),
            });
        }
        let t_next = tc_i.t() + dt;
        let predictor = tc_i.evaluate(dt, k).into_matrix();
        if theta == 0.0 {
            if predictor.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite { t: t_next });
            }
            return Ok(StepOutcome {
                field: InteriorField::new(predictor),
                newton_iters: 0,
                residual: 0.0,
            });
        }
        let target = tc_i.evaluate((1.0 - theta) * dt, k).into_matrix();
        let target_scale = expansion_scale(tc_i.coeffs(), (1.0 - theta) * dt, k);
        let series = self.system.boundary_series(t_next, k.saturating_sub(1));
        let shape = predictor.shape();
        let system = self.system;
        // Σ_k β̄_{i+1}(k)(−θΔt)^k as a function of β̄_{i+1}(0), with the
        // rounding scale of the sum
        let matched = |y: &DVector<f64>| -> Result<(DVector<f64>, f64)> {
            let m = DMatrix::from_column_slice(shape.0, shape.1, y.as_slice());
            let c = system.expand(&m, t_next, series.as_ref(), k)?;
            let h = -theta * dt;
            let mut acc = c[k].clone();
            let mut scale = c[k].amax();
            for j in (0..k).rev() {
                acc *= h;
                acc += &c[j];
                scale = scale * h.abs() + c[j].amax();
            }
            Ok((DVector::from_column_slice(acc.as_slice()), scale + target_scale))
        };
        let target = DVector::from_column_slice(target.as_slice());
        let y0 = DVector::from_column_slice(predictor.as_slice());

        let stale_dt = self
            .jacobian
            .as_ref()
            .map_or(true, |j| (j.dt / dt - 1.0).abs() > JACOBIAN_DT_DRIFT);
        if stale_dt {
            self.jacobian = None;
        }
        let mut last_err = None;
        for _attempt in 0..2 {
            let fresh_start = self.jacobian.is_none();
            match self.newton(&matched, &target, y0.clone(), dt, t_next) {
                Ok((y, iters, res)) => {
                    return Ok(StepOutcome {
                        field: InteriorField::new(DMatrix::from_column_slice(shape.0, shape.1, y.as_slice())),
                        newton_iters: iters,
                        residual: res,
                    })
                }
                Err(e @ Error::NonFinite { .. }) if fresh_start => return Err(e),
                Err(e) => {
                    last_err = Some(e);
                    if fresh_start {
                        break;
                    }
                    self.jacobian = None;
                }
            }
        }
        Err(last_err.expect("newton attempted at least once"))
    }

    fn newton(
        &mut self,
        matched: &impl Fn(&DVector<f64>) -> Result<(DVector<f64>, f64)>,
        target: &DVector<f64>,
        mut y: DVector<f64>,
        dt: f64,
        t_next: f64,
    ) -> Result<(DVector<f64>, usize, f64)> {
        let tol = self.cfg.newton_tol;
        let (mut p, mut scale) = matched(&y)?;
        let mut r = &p - target;
        let mut rnorm = r.amax();
        let mut refresh = false;
        for iter in 0..self.cfg.newton_max_iter {
            if !rnorm.is_finite() {
                return Err(Error::NonFinite { t: t_next });
            }
            if rnorm <= residual_threshold(tol, y.amax(), scale) {
                return Ok((y, iter, rnorm));
            }
            if self.jacobian.is_none() || refresh {
                let jac = fd_jacobian(&|v: &DVector<f64>| matched(v).map(|m| m.0), &y, &p)?;
                self.jacobian = Some(JacobianCache { lu: jac.lu(), dt });
                self.jacobian_builds += 1;
                refresh = false;
            }
            let lu = &self.jacobian.as_ref().expect("jacobian built above").lu;
            let delta = lu.solve(&r).ok_or(Error::NewtonDiverged {
                t: t_next,
                iterations: iter,
                residual: rnorm,
            })?;
            y -= delta;
            (p, scale) = matched(&y)?;
            r = &p - target;
            let new_norm = r.amax();
            if new_norm > CONTRACTION_LIMIT * rnorm {
                refresh = true;
            }
            rnorm = new_norm;
        }
        if rnorm.is_finite() && rnorm <= residual_threshold(tol, y.amax(), scale) {
            return Ok((y, self.cfg.newton_max_iter, rnorm));
        }
        Err(Error::NewtonDiverged {
            t: t_next,
            iterations: self.cfg.newton_max_iter,
            residual: rnorm,
        })
    }
}

/// Forward-difference Jacobian with column step `√ε (1 + |y_j|)`.
fn fd_jacobian(
    f: &impl Fn(&DVector<f64>) -> Result<DVector<f64>>,
    y: &DVector<f64>,
    fy: &DVector<f64>,
) -> Result<DMatrix<f64>> {
    let n = y.len();
    let sqrt_eps = f64::EPSILON.sqrt();
    let mut jac = DMatrix::zeros(fy.len(), n);
    let mut yp = y.clone();
    for j in 0..n {
        let yj = y[j];
        let stepped = yj + sqrt_eps * (1.0 + yj.abs());
        let h = stepped - yj;
        yp[j] = stepped;
        let fp = f(&yp)?;
        yp[j] = yj;
        let mut col = jac.column_mut(j);
        for i in 0..fy.len() {
            col[i] = (fp[i] - fy[i]) / h;
        }
    }
    Ok(jac)
}

/// One step from `beta_i` at `t_i`, without reusing any factorisation.
pub fn solve_step(
    system: &SemiDiscreteSystem,
    beta_i: &InteriorField,
    t_i: f64,
    dt: f64,
    cfg: &IntegratorConfig,
) -> Result<(InteriorField, StepRecord)> {
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!("step size must be positive, got {dt}")));
    }
    let mut integ = Integrator::new(system, cfg.clone())?;
    let tc = integ.coefficients(beta_i, t_i)?;
    let out = integ.step(&tc, dt)?;
    let record = StepRecord {
        t: t_i + dt,
        dt,
        newton_iters: out.newton_iters,
        error_estimate: cfg.error_estimate(&tc, dt),
        accepted: true,
    };
    Ok((out.field, record))
}

/// Integrates to `t_f` with the configured fixed step, shortening the last
/// step to land on `t_f` exactly.
pub fn integrate_fixed(
    system: &SemiDiscreteSystem,
    beta0: &InteriorField,
    t_f: f64,
    cfg: &IntegratorConfig,
) -> Result<RunReport> {
    integrate_fixed_from(system, beta0, 0.0, t_f, cfg)
}

/// [`integrate_fixed`] starting from `beta0` at `t0`; step ends sit at
/// `t0 + kΔt`.
pub fn integrate_fixed_from(
    system: &SemiDiscreteSystem,
    beta0: &InteriorField,
    t0: f64,
    t_f: f64,
    cfg: &IntegratorConfig,
) -> Result<RunReport> {
    let dt = match cfg.control {
        StepControl::Fixed { dt } => dt,
        StepControl::Adaptive { .. } => {
            return Err(Error::InvalidParameter("integrate_fixed needs a fixed step size".into()))
        }
    };
    if !(t_f >= t0) {
        return Err(Error::InvalidParameter(format!("final time {t_f} precedes start time {t0}")));
    }
    let mut integ = Integrator::new(system, cfg.clone())?;
    let n_steps = fixed_step_count(t_f - t0, dt);
    let mut beta = beta0.clone();
    let mut t = t0;
    let mut steps = Vec::with_capacity(n_steps);
    for i in 0..n_steps {
        let t_next = if i + 1 == n_steps { t_f } else { t0 + (i + 1) as f64 * dt };
        let h = t_next - t;
        let tc = integ.coefficients(&beta, t)?;
        let out = integ.step(&tc, h)?;
        steps.push(StepRecord {
            t: t_next,
            dt: h,
            newton_iters: out.newton_iters,
            error_estimate: cfg.error_estimate(&tc, h),
            accepted: true,
        });
        beta = out.field;
        t = t_next;
    }
    Ok(RunReport {
        step_count: steps.len(),
        steps,
        final_field: beta,
        final_time: t,
        max_error_vs_oracle: None,
    })
}

/// `⌈t_f / Δt⌉`, ignoring round-off just above an integer.
pub fn fixed_step_count(t_f: f64, dt: f64) -> usize {
    if t_f <= 0.0 {
        return 0;
    }
    let ratio = t_f / dt;
    let nearest = ratio.round();
    if (ratio - nearest).abs() <= 1e-9 * ratio.max(1.0) {
        nearest.max(1.0) as usize
    } else {
        ratio.ceil() as usize
    }
}

/// Integrates to `t_f` choosing each step from the local coefficient bound.
///
/// A step is proposed as `safety ×` the bound at the current node (growth
/// capped at 2× the previous step, clamped to `[dt_min, dt_max]`). After the
/// solve the bound is re-evaluated with the coefficients at the new node; if
/// either side's estimate exceeds `tol` the step is rejected and halved.
pub fn integrate_adaptive(
    system: &SemiDiscreteSystem,
    beta0: &InteriorField,
    t_f: f64,
    cfg: &IntegratorConfig,
) -> Result<RunReport> {
    integrate_adaptive_from(system, beta0, 0.0, t_f, cfg)
}

/// [`integrate_adaptive`] starting from `beta0` at `t0`.
pub fn integrate_adaptive_from(
    system: &SemiDiscreteSystem,
    beta0: &InteriorField,
    t0: f64,
    t_f: f64,
    cfg: &IntegratorConfig,
) -> Result<RunReport> {
    let tol = match cfg.control {
        StepControl::Adaptive { tol } => tol,
        StepControl::Fixed { .. } => {
            return Err(Error::InvalidParameter("integrate_adaptive needs a tolerance".into()))
        }
    };
    if !(t_f >= t0) {
        return Err(Error::InvalidParameter(format!("final time {t_f} precedes start time {t0}")));
    }
    let mut integ = Integrator::new(system, cfg.clone())?;
    let mut t = t0;
    let mut tc = integ.coefficients(beta0, t)?;
    let mut steps = Vec::new();
    let end_slack = 1e-13 * t_f.abs().max(1.0);
    let mut dt = (cfg.safety * cfg.step_bound(&tc, tol)).clamp(cfg.dt_min, cfg.dt_max);
    while t_f - t > end_slack {
        let h = dt.min(t_f - t);
        let attempt = integ.step(&tc, h);
        let (out, tc_next) = match attempt.and_then(|o| {
            let next = integ.coefficients(&o.field, t + h)?;
            Ok((o, next))
        }) {
            Ok(v) => v,
            Err(e @ (Error::NewtonDiverged { .. } | Error::NonFinite { .. })) => {
                steps.push(StepRecord {
                    t: t + h,
                    dt: h,
                    newton_iters: cfg.newton_max_iter,
                    error_estimate: f64::NAN,
                    accepted: false,
                });
                if h <= cfg.dt_min {
                    log::debug!("giving up after {e}");
                    return Err(Error::StepSizeUnderflow { t, dt_min: cfg.dt_min });
                }
                dt = (0.5 * h).max(cfg.dt_min);
                continue;
            }
            Err(e) => return Err(e),
        };
        let estimate = cfg.error_estimate(&tc, h).max(cfg.error_estimate(&tc_next, h));
        if estimate > tol && h > cfg.dt_min {
            steps.push(StepRecord {
                t: t + h,
                dt: h,
                newton_iters: out.newton_iters,
                error_estimate: estimate,
                accepted: false,
            });
            dt = (0.5 * h).max(cfg.dt_min);
            continue;
        }
        steps.push(StepRecord {
            t: t + h,
            dt: h,
            newton_iters: out.newton_iters,
            error_estimate: estimate,
            accepted: true,
        });
        t += h;
        if t_f - t <= end_slack {
            t = t_f;
        }
        tc = tc_next;
        dt = (cfg.safety * cfg.step_bound(&tc, tol))
            .min(2.0 * h)
            .clamp(cfg.dt_min, cfg.dt_max);
    }
    let step_count = steps.iter().filter(|s| s.accepted).count();
    Ok(RunReport {
        steps,
        final_field: tc.coeffs()[0].clone(),
        final_time: t,
        step_count,
        max_error_vs_oracle: None,
    })
}
