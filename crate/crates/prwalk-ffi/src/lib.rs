//! C ABI over the persistent-random-walk library.
//!
//! Handles are opaque pointers owned by the library; every function
//! returns a [`PrwStatus`] and writes results through out-parameters.
//! The generated header lives in `include/prwalk.h`.

use std::panic::{catch_unwind, UnwindSafe};

use prwalk::error::Error;
use prwalk::{
    estimate_params, from_thermo, genfunc, joint_pmf, simulate, to_thermo, JointPmf, ModelParams,
    SampleStats, Sigma0Mode, SimConfig,
};

/// Status code of every C-API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrwStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A persistence probability was outside the open unit interval.
    InvalidParameter = 2,
    /// The requested (x, k) violates the walk-length support constraints.
    OffSupport = 3,
    /// Sample statistics outside the admissible region of the estimator.
    Inadmissible = 4,
    /// No interior parameters reproduce the requested (beta, force).
    NoSolution = 5,
    /// A size or range limit was exceeded.
    TooLarge = 6,
    /// An unexpected internal failure (a bug; never expected).
    Internal = 7,
}

fn status_of(err: &Error) -> PrwStatus {
    match err {
        Error::InvalidParam { .. } => PrwStatus::InvalidParameter,
        Error::OffSupport { .. } | Error::NonPositiveW { .. } => PrwStatus::OffSupport,
        Error::InadmissibleStats { .. } | Error::InsufficientData(_) => PrwStatus::Inadmissible,
        Error::NoThermoSolution { .. } | Error::AmbiguousThermoSolution { .. } => {
            PrwStatus::NoSolution
        }
        Error::EnumerationTooLarge { .. } => PrwStatus::TooLarge,
        Error::Io(_) | Error::Parse { .. } => PrwStatus::Internal,
    }
}

/// Shield the C boundary from panics.
fn guarded<F: FnOnce() -> PrwStatus + UnwindSafe>(f: F) -> PrwStatus {
    catch_unwind(f).unwrap_or(PrwStatus::Internal)
}

/// How the pre-walk direction is drawn in [`prw_simulate`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrwSigma0Mode {
    Stationary = 0,
    ForcedPlus = 1,
    ForcedMinus = 2,
}

impl From<PrwSigma0Mode> for Sigma0Mode {
    fn from(m: PrwSigma0Mode) -> Self {
        match m {
            PrwSigma0Mode::Stationary => Sigma0Mode::Stationary,
            PrwSigma0Mode::ForcedPlus => Sigma0Mode::ForcedPlus,
            PrwSigma0Mode::ForcedMinus => Sigma0Mode::ForcedMinus,
        }
    }
}

/// Opaque handle holding validated model parameters.
pub struct PrwParams(ModelParams);

/// Opaque handle holding a computed joint distribution table.
pub struct PrwPmf(JointPmf);

macro_rules! nonnull {
    ($ptr:expr) => {
        match unsafe { $ptr.as_ref() } {
            Some(r) => r,
            None => return PrwStatus::NullPointer,
        }
    };
}

macro_rules! out_ptr {
    ($ptr:expr, $value:expr) => {
        match unsafe { $ptr.as_mut() } {
            Some(slot) => *slot = $value,
            None => return PrwStatus::NullPointer,
        }
    };
}

/// Validate (eps_r, eps_l) and allocate a parameter handle.
///
/// # Safety
/// `out` must be a valid pointer; the handle must be released with
/// [`prw_params_free`].
#[no_mangle]
pub unsafe extern "C" fn prw_params_new(
    eps_r: f64,
    eps_l: f64,
    out: *mut *mut PrwParams,
) -> PrwStatus {
    guarded(|| {
        if out.is_null() {
            return PrwStatus::NullPointer;
        }
        match ModelParams::new(eps_r, eps_l) {
            Ok(params) => {
                unsafe { *out = Box::into_raw(Box::new(PrwParams(params))) };
                PrwStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Release a parameter handle. Null is ignored.
///
/// # Safety
/// `params` must come from [`prw_params_new`] or [`prw_from_thermo`] and
/// must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn prw_params_free(params: *mut PrwParams) {
    if !params.is_null() {
        drop(unsafe { Box::from_raw(params) });
    }
}

/// Read back the two persistence probabilities.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prw_params_get(
    params: *const PrwParams,
    eps_r: *mut f64,
    eps_l: *mut f64,
) -> PrwStatus {
    guarded(|| {
        let p = nonnull!(params);
        out_ptr!(eps_r, p.0.eps_r());
        out_ptr!(eps_l, p.0.eps_l());
        PrwStatus::Ok
    })
}

/// Stationary weights of the increment chain.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prw_stationary(
    params: *const PrwParams,
    p_plus: *mut f64,
    p_minus: *mut f64,
) -> PrwStatus {
    guarded(|| {
        let p = nonnull!(params);
        let stat = p.0.stationary();
        out_ptr!(p_plus, stat.p_plus);
        out_ptr!(p_minus, stat.p_minus);
        PrwStatus::Ok
    })
}

/// Closed-form mean endpoint after n steps.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prw_mean_x(params: *const PrwParams, n: u32, out: *mut f64) -> PrwStatus {
    guarded(|| {
        let p = nonnull!(params);
        out_ptr!(out, genfunc::mean_x(n, &p.0));
        PrwStatus::Ok
    })
}

/// Closed-form mean reversal count after n steps.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prw_mean_k(params: *const PrwParams, n: u32, out: *mut f64) -> PrwStatus {
    guarded(|| {
        let p = nonnull!(params);
        out_ptr!(out, genfunc::mean_k(n, &p.0));
        PrwStatus::Ok
    })
}

/// Joint probability of ending at x with k reversals after n steps.
/// Off-support points return 0 with status Ok.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prw_joint_prob(
    params: *const PrwParams,
    n: u32,
    x: i64,
    k: u32,
    out: *mut f64,
) -> PrwStatus {
    guarded(|| {
        let p = nonnull!(params);
        out_ptr!(out, joint_pmf(n, x, k, &p.0));
        PrwStatus::Ok
    })
}

/// Compute the full joint distribution table for n steps.
///
/// # Safety
/// `out` must be valid; the handle must be released with [`prw_pmf_free`].
#[no_mangle]
pub unsafe extern "C" fn prw_pmf_new(
    params: *const PrwParams,
    n: u32,
    out: *mut *mut PrwPmf,
) -> PrwStatus {
    guarded(|| {
        let p = nonnull!(params);
        if out.is_null() {
            return PrwStatus::NullPointer;
        }
        let table = JointPmf::closed_form(n, &p.0);
        unsafe { *out = Box::into_raw(Box::new(PrwPmf(table))) };
        PrwStatus::Ok
    })
}

/// Release a table handle. Null is ignored.
///
/// # Safety
/// `pmf` must come from [`prw_pmf_new`] and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn prw_pmf_free(pmf: *mut PrwPmf) {
    if !pmf.is_null() {
        drop(unsafe { Box::from_raw(pmf) });
    }
}

/// Number of steps of the table's walk.
///
/// # Safety
/// `pmf` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn prw_pmf_n(pmf: *const PrwPmf) -> u32 {
    match unsafe { pmf.as_ref() } {
        Some(t) => t.0.n(),
        None => 0,
    }
}

/// Number of stored nonzero entries.
///
/// # Safety
/// `pmf` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn prw_pmf_len(pmf: *const PrwPmf) -> u64 {
    match unsafe { pmf.as_ref() } {
        Some(t) => t.0.support_len() as u64,
        None => 0,
    }
}

/// Probability at (x, k); 0 off support.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prw_pmf_prob(
    pmf: *const PrwPmf,
    x: i64,
    k: u32,
    out: *mut f64,
) -> PrwStatus {
    guarded(|| {
        let t = nonnull!(pmf);
        out_ptr!(out, t.0.prob(x, k));
        PrwStatus::Ok
    })
}

/// Natural log of the probability at (x, k); -inf off support.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prw_pmf_log_prob(
    pmf: *const PrwPmf,
    x: i64,
    k: u32,
    out: *mut f64,
) -> PrwStatus {
    guarded(|| {
        let t = nonnull!(pmf);
        out_ptr!(out, t.0.ln_prob(x, k));
        PrwStatus::Ok
    })
}

/// Sum of all stored probabilities.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prw_pmf_total_mass(pmf: *const PrwPmf, out: *mut f64) -> PrwStatus {
    guarded(|| {
        let t = nonnull!(pmf);
        out_ptr!(out, t.0.total_mass());
        PrwStatus::Ok
    })
}

/// Table-summed mean endpoint.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prw_pmf_mean_x(pmf: *const PrwPmf, out: *mut f64) -> PrwStatus {
    guarded(|| {
        let t = nonnull!(pmf);
        out_ptr!(out, t.0.mean_x());
        PrwStatus::Ok
    })
}

/// Table-summed mean reversal count.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prw_pmf_mean_k(pmf: *const PrwPmf, out: *mut f64) -> PrwStatus {
    guarded(|| {
        let t = nonnull!(pmf);
        out_ptr!(out, t.0.mean_k());
        PrwStatus::Ok
    })
}

/// Exponential-family coordinates of the parameters at walk length n.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prw_to_thermo(
    params: *const PrwParams,
    n: u32,
    force: *mut f64,
    beta: *mut f64,
    gamma_b: *mut f64,
    g: *mut f64,
) -> PrwStatus {
    guarded(|| {
        let p = nonnull!(params);
        let t = to_thermo(&p.0, n);
        out_ptr!(force, t.force);
        out_ptr!(beta, t.beta);
        out_ptr!(gamma_b, t.gamma_b);
        out_ptr!(g, t.g);
        PrwStatus::Ok
    })
}

/// Invert (beta, force) back to a parameter handle.
///
/// # Safety
/// `out` must be valid; the handle must be released with
/// [`prw_params_free`].
#[no_mangle]
pub unsafe extern "C" fn prw_from_thermo(
    beta: f64,
    force: f64,
    out: *mut *mut PrwParams,
) -> PrwStatus {
    guarded(|| {
        if out.is_null() {
            return PrwStatus::NullPointer;
        }
        match from_thermo(beta, force) {
            Ok(params) => {
                unsafe { *out = Box::into_raw(Box::new(PrwParams(params))) };
                PrwStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Moment inversion: per-step sample means to parameter estimates.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prw_estimate(
    mean_x_per_n: f64,
    mean_k_per_n: f64,
    eps_r: *mut f64,
    eps_l: *mut f64,
) -> PrwStatus {
    guarded(|| {
        let stats = match SampleStats::new(1, 1, mean_x_per_n, mean_k_per_n) {
            Ok(s) => s,
            Err(e) => return status_of(&e),
        };
        match estimate_params(&stats) {
            Ok(p) => {
                out_ptr!(eps_r, p.eps_r());
                out_ptr!(eps_l, p.eps_l());
                PrwStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Run `num_walks` seeded walks of `n` steps, filling the caller's arrays
/// (each of length `num_walks`) with sigma_0, endpoint, and reversal
/// count. Deterministic given the seed.
///
/// # Safety
/// The three output pointers must reference arrays of at least
/// `num_walks` elements.
#[no_mangle]
pub unsafe extern "C" fn prw_simulate(
    params: *const PrwParams,
    n: u32,
    num_walks: u64,
    seed: u64,
    mode: PrwSigma0Mode,
    sigma0_out: *mut i8,
    x_out: *mut i64,
    k_out: *mut u32,
) -> PrwStatus {
    guarded(|| {
        let p = nonnull!(params);
        if sigma0_out.is_null() || x_out.is_null() || k_out.is_null() {
            return PrwStatus::NullPointer;
        }
        let Ok(len) = usize::try_from(num_walks) else {
            return PrwStatus::TooLarge;
        };
        let config = SimConfig {
            n,
            num_walks,
            seed,
            params: p.0,
            sigma0_mode: mode.into(),
        };
        let outcomes = simulate(&config);
        let sigma0 = unsafe { std::slice::from_raw_parts_mut(sigma0_out, len) };
        let x = unsafe { std::slice::from_raw_parts_mut(x_out, len) };
        let k = unsafe { std::slice::from_raw_parts_mut(k_out, len) };
        for (i, o) in outcomes.iter().enumerate() {
            sigma0[i] = o.sigma0.signum() as i8;
            x[i] = o.x;
            k[i] = o.k;
        }
        PrwStatus::Ok
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn prw_status_message(status: PrwStatus) -> *const std::os::raw::c_char {
    let msg: &'static [u8] = match status {
        PrwStatus::Ok => b"ok\0",
        PrwStatus::NullPointer => b"null pointer argument\0",
        PrwStatus::InvalidParameter => b"persistence probabilities must lie inside (0, 1)\0",
        PrwStatus::OffSupport => b"arguments violate the walk support constraints\0",
        PrwStatus::Inadmissible => b"sample statistics outside the admissible region\0",
        PrwStatus::NoSolution => b"no interior parameters match the requested coordinates\0",
        PrwStatus::TooLarge => b"size limit exceeded\0",
        PrwStatus::Internal => b"internal error\0",
    };
    msg.as_ptr().cast()
}
