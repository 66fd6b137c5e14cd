//! C ABI for the `ieldtm` solver.
//!
//! Runs are described by a plain [`IeldtmConfig`] struct and produce an
//! opaque [`IeldtmRun`] handle that owns the results until released with
//! [`ieldtm_run_free`]. Every fallible call returns an [`IeldtmStatus`];
//! a description of the last failure on the calling thread is available
//! from [`ieldtm_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ieldtm::harness::{self, ExperimentConfig, Mode, Problem, Setup, Solved};
use ieldtm::integrator::{stability_function, Complex64};
use ieldtm::Error;

/// Result codes. The numeric values are part of the ABI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IeldtmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    SolverFailure = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IeldtmProblem {
    Burgers1d = 0,
    Burgers2d = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IeldtmMode {
    Fixed = 0,
    Adaptive = 1,
}

/// Run description. `m` is ignored for the 1D problem; `dt` is used in
/// fixed mode and `tol` in adaptive mode.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IeldtmConfig {
    pub problem: IeldtmProblem,
    pub eps: f64,
    pub n: usize,
    pub m: usize,
    pub theta: f64,
    pub k: usize,
    pub mode: IeldtmMode,
    pub dt: f64,
    pub tol: f64,
    pub tf: f64,
}

/// Completed run.
pub struct IeldtmRun {
    solved: Solved,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: IeldtmStatus, msg: impl Into<String>) -> IeldtmStatus {
    set_last_error(msg);
    status
}

fn from_error(e: &Error) -> IeldtmStatus {
    let status = if e.is_validation() {
        IeldtmStatus::InvalidArgument
    } else {
        IeldtmStatus::SolverFailure
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> IeldtmStatus) -> IeldtmStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(IeldtmStatus::Panic, "panic inside ieldtm"))
}

impl IeldtmConfig {
    fn to_experiment(self) -> ExperimentConfig {
        let problem = match self.problem {
            IeldtmProblem::Burgers1d => Problem::Burgers1d,
            IeldtmProblem::Burgers2d => Problem::Burgers2d,
        };
        ExperimentConfig {
            problem,
            eps: self.eps,
            n: self.n,
            m: (problem == Problem::Burgers2d).then_some(self.m),
            theta: self.theta,
            k: self.k,
            mode: match self.mode {
                IeldtmMode::Fixed => Mode::Fixed,
                IeldtmMode::Adaptive => Mode::Adaptive,
            },
            dt: (self.mode == IeldtmMode::Fixed).then_some(self.dt),
            tol: (self.mode == IeldtmMode::Adaptive).then_some(self.tol),
            tf: self.tf,
            report_points: Vec::new(),
            output_dir: None,
            newton_tol: None,
            dt_min: None,
            dt_max: None,
        }
    }
}

/// Message describing the last failed call on this thread, or null. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ieldtm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Fills `out` with the 1D benchmark defaults (ε = 0.1, N = 20, θ = ½,
/// K = 3, Δt = 0.001, t_f = 0.1).
///
/// # Safety
/// `out` must be null or point to writable memory for one `IeldtmConfig`.
#[no_mangle]
pub unsafe extern "C" fn ieldtm_config_default(out: *mut IeldtmConfig) -> IeldtmStatus {
    if out.is_null() {
        return fail(IeldtmStatus::NullPointer, "null config pointer");
    }
    let d = ExperimentConfig::default();
    out.write(IeldtmConfig {
        problem: IeldtmProblem::Burgers1d,
        eps: d.eps,
        n: d.n,
        m: d.n,
        theta: d.theta,
        k: d.k,
        mode: IeldtmMode::Fixed,
        dt: d.dt.unwrap_or(1e-3),
        tol: 1e-10,
        tf: d.tf,
    });
    IeldtmStatus::Ok
}

/// Integrates the configured problem to `tf`. On success `*out` receives
/// a handle to release with [`ieldtm_run_free`].
///
/// # Safety
/// `config` must be null or point to a valid `IeldtmConfig`; `out` must be
/// null or point to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn ieldtm_run(config: *const IeldtmConfig, out: *mut *mut IeldtmRun) -> IeldtmStatus {
    if config.is_null() || out.is_null() {
        return fail(IeldtmStatus::NullPointer, "null argument to ieldtm_run");
    }
    let cfg = (*config).to_experiment();
    guard(|| match harness::solve(&cfg) {
        Ok(solved) => {
            out.write(Box::into_raw(Box::new(IeldtmRun { solved })));
            IeldtmStatus::Ok
        }
        Err(e) => from_error(&e),
    })
}

/// Releases a run handle. Null is ignored.
///
/// # Safety
/// `run` must be null or a handle from [`ieldtm_run`] not yet released.
#[no_mangle]
pub unsafe extern "C" fn ieldtm_run_free(run: *mut IeldtmRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

unsafe fn run_ref<'a>(run: *const IeldtmRun) -> Option<&'a IeldtmRun> {
    run.as_ref()
}

/// Maximum error at interior nodes against the exact solution.
///
/// # Safety
/// `run` must be a live handle; `out` must point to one writable double.
#[no_mangle]
pub unsafe extern "C" fn ieldtm_run_linf(run: *const IeldtmRun, out: *mut f64) -> IeldtmStatus {
    match (run_ref(run), out.is_null()) {
        (Some(r), false) => {
            out.write(r.solved.summary.linf_on_nodes);
            IeldtmStatus::Ok
        }
        _ => fail(IeldtmStatus::NullPointer, "null argument to ieldtm_run_linf"),
    }
}

/// Number of accepted steps.
///
/// # Safety
/// `run` must be a live handle; `out` must point to one writable `size_t`.
#[no_mangle]
pub unsafe extern "C" fn ieldtm_run_step_count(run: *const IeldtmRun, out: *mut usize) -> IeldtmStatus {
    match (run_ref(run), out.is_null()) {
        (Some(r), false) => {
            out.write(r.solved.summary.step_count);
            IeldtmStatus::Ok
        }
        _ => fail(IeldtmStatus::NullPointer, "null argument to ieldtm_run_step_count"),
    }
}

/// Grid shape `(N + 1, M + 1)` of the final field; `cols` is 1 in 1D.
///
/// # Safety
/// `run` must be a live handle; `rows` and `cols` must point to writable
/// `size_t` values.
#[no_mangle]
pub unsafe extern "C" fn ieldtm_run_field_shape(run: *const IeldtmRun, rows: *mut usize, cols: *mut usize) -> IeldtmStatus {
    match (run_ref(run), rows.is_null() || cols.is_null()) {
        (Some(r), false) => {
            let (nr, nc) = r.solved.full_field.shape();
            rows.write(nr);
            cols.write(nc);
            IeldtmStatus::Ok
        }
        _ => fail(IeldtmStatus::NullPointer, "null argument to ieldtm_run_field_shape"),
    }
}

/// Copies the final field, boundary included, in column-major order (`x`
/// varies fastest) into `buf`, which must hold `rows * cols` doubles.
///
/// # Safety
/// `run` must be a live handle; `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ieldtm_run_copy_field(run: *const IeldtmRun, buf: *mut f64, len: usize) -> IeldtmStatus {
    let Some(r) = run_ref(run) else {
        return fail(IeldtmStatus::NullPointer, "null run handle");
    };
    if buf.is_null() {
        return fail(IeldtmStatus::NullPointer, "null buffer");
    }
    let data = r.solved.full_field.as_slice();
    if len < data.len() {
        return fail(
            IeldtmStatus::BufferTooSmall,
            format!("buffer holds {len} values, field has {}", data.len()),
        );
    }
    ptr::copy_nonoverlapping(data.as_ptr(), buf, data.len());
    IeldtmStatus::Ok
}

/// Evaluates the final collocation interpolant at `(x, y)`; `y` is
/// ignored in 1D.
///
/// # Safety
/// `run` must be a live handle; `out` must point to one writable double.
#[no_mangle]
pub unsafe extern "C" fn ieldtm_run_eval(run: *const IeldtmRun, x: f64, y: f64, out: *mut f64) -> IeldtmStatus {
    let Some(r) = run_ref(run) else {
        return fail(IeldtmStatus::NullPointer, "null run handle");
    };
    if out.is_null() {
        return fail(IeldtmStatus::NullPointer, "null output pointer");
    }
    let setup: &Setup = &r.solved.setup;
    guard(|| match setup.interpolate(&r.solved.full_field, x, y) {
        Ok(v) => {
            out.write(v);
            IeldtmStatus::Ok
        }
        Err(e) => from_error(&e),
    })
}

/// Amplification factor `R(z)` of the scheme with direction `theta` and
/// order `k` on `u' = λu`, `z = λΔt`.
///
/// # Safety
/// `out_re` and `out_im` must point to writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ieldtm_stability_function(
    theta: f64,
    k: usize,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> IeldtmStatus {
    if out_re.is_null() || out_im.is_null() {
        return fail(IeldtmStatus::NullPointer, "null output pointer");
    }
    guard(|| match stability_function(theta, k, Complex64::new(z_re, z_im)) {
        Ok(r) => {
            out_re.write(r.re);
            out_im.write(r.im);
            IeldtmStatus::Ok
        }
        Err(e) => from_error(&e),
    })
}
