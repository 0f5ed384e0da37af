//! Exponential-family parameterization.
//!
//! The conditional distributions factor as a parameter-free count times
//! exp(G + beta k + F x +- gamma_b Delta), where Delta indicates an odd
//! reversal count. (F, beta, gamma_b, G) are log-space functions of the
//! persistence probabilities; (beta, F) is invertible back to the model
//! parameters. Dropping the Delta term and smoothing the count gives the
//! two-parameter approximate form.
//!
//! Naming: `gamma_b` is the boundary parameter of the exponential form;
//! the per-path weight of the same letter lives in
//! [`crate::exact::gamma_weight`].

use crate::combinatorics::{CountBackend, LnFactTable};
use crate::error::{Error, Result};
use crate::exact::{reversal_split, JointPmf};
use crate::genfunc::{mean_k, mean_x};
use crate::model::{on_support, Direction, ModelParams};

/// Exponential-family coordinates of a parameter pair at a given walk
/// length. G scales with n; the other three do not.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoParams {
    /// Drift parameter: (1/2) ln(eps_r / eps_l).
    pub force: f64,
    /// Reversal weight: -(1/2) ln[eps_r eps_l / ((1-eps_r)(1-eps_l))].
    pub beta: f64,
    /// Odd-reversal boundary parameter:
    /// (1/2) ln[(1-eps_r) eps_r / ((1-eps_l) eps_l)].
    pub gamma_b: f64,
    /// Normalization exponent: (n/2) ln(eps_r eps_l).
    pub g: f64,
    pub n: u32,
}

/// Map model parameters to their exponential-family coordinates.
/// Terms are grouped so the symmetric special cases vanish exactly.
pub fn to_thermo(params: &ModelParams, n: u32) -> ThermoParams {
    let ln_er = params.eps_r().ln();
    let ln_el = params.eps_l().ln();
    let ln_1r = (1.0 - params.eps_r()).ln();
    let ln_1l = (1.0 - params.eps_l()).ln();
    ThermoParams {
        force: 0.5 * (ln_er - ln_el),
        beta: -0.5 * ((ln_er + ln_el) - (ln_1r + ln_1l)),
        gamma_b: 0.5 * ((ln_1r + ln_er) - (ln_1l + ln_el)),
        g: 0.5 * f64::from(n) * (ln_er + ln_el),
        n,
    }
}

/// Invert (beta, force) back to the persistence probabilities.
///
/// Substituting eps_r = t eps_l with t = e^(2 force) into
/// eps_r eps_l / ((1-eps_r)(1-eps_l)) = e^(-2 beta) = c gives
/// t(1-c) eps_l^2 + c(1+t) eps_l - c = 0. Exactly one root lies in
/// (0, min(1, 1/t)), which makes both parameters interior; the errors are
/// defensive.
pub fn from_thermo(beta: f64, force: f64) -> Result<ModelParams> {
    if force < 0.0 {
        // mirror symmetry: negating the force swaps the parameters
        let p = from_thermo(beta, -force)?;
        return ModelParams::new(p.eps_l(), p.eps_r());
    }
    let t = (2.0 * force).exp();
    let c = (-2.0 * beta).exp();
    if !t.is_finite() || !c.is_finite() || c == 0.0 {
        return Err(Error::NoThermoSolution {
            beta,
            force,
            discriminant: f64::NAN,
        });
    }

    // coefficients divided by t so they stay bounded for large force
    let a = 1.0 - c;
    let b = c * (1.0 + t) / t;
    let c0 = -c / t;

    let eps_l = if a.abs() < 1e-300 {
        // beta = 0: the drift family eps_r + eps_l = 1
        1.0 / (1.0 + t)
    } else {
        let disc = b * b - 4.0 * a * c0;
        if disc < 0.0 {
            return Err(Error::NoThermoSolution {
                beta,
                force,
                discriminant: disc,
            });
        }
        // Citardauq pairing avoids cancellation in the small root
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        let roots = [q / a, c0 / q];
        let mut admissible = roots
            .into_iter()
            .filter(|&r| r > 0.0 && r < 1.0 && r * t > 0.0 && r * t < 1.0);
        let root = admissible.next().ok_or(Error::NoThermoSolution {
            beta,
            force,
            discriminant: disc,
        })?;
        if admissible.next().is_some() {
            return Err(Error::AmbiguousThermoSolution { beta, force });
        }
        root
    };
    ModelParams::new(t * eps_l, eps_l)
}

/// Exact three-parameter exponential form of the conditional probability:
/// count times exp(G + beta k + F x +- gamma_b Delta). An algebraic
/// rewrite of [`crate::exact::q_pmf`]; the two must agree elementwise.
pub fn threeparam_pmf(
    n: u32,
    sigma0: Direction,
    x: i64,
    k: u32,
    params: &ModelParams,
) -> Result<f64> {
    let n_i = i64::from(n);
    if x.abs() > n_i || (n_i - x).rem_euclid(2) != 0 {
        return Err(Error::OffSupport { n, x, k });
    }
    let backend = CountBackend::for_n(n);
    let (k_plus, k_minus) = reversal_split(sigma0, k);
    let ln_count = backend.ln_count(n, sigma0, x, k_plus, k_minus);
    if ln_count == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let thermo = to_thermo(params, n);
    let delta = f64::from(k % 2);
    let exponent = thermo.g
        + thermo.beta * f64::from(k)
        + thermo.force * x as f64
        + sigma0.signum() as f64 * thermo.gamma_b * delta;
    Ok((ln_count + exponent).exp())
}

/// ln binom(a, k/2) for integer a and possibly half-integer k/2,
/// through the log-gamma extension. Negative infinity when k/2 exceeds a
/// (even k) or leaves the positive-argument domain (odd k).
fn ln_binom_halved(a: u64, k: u32, table: &LnFactTable) -> f64 {
    if k.is_multiple_of(2) {
        return table.ln_binom(a, u64::from(k) / 2);
    }
    // b = t + 1/2 with t = (k-1)/2: requires t <= a to keep both gamma
    // arguments positive
    let t = u64::from(k - 1) / 2;
    if t > a {
        return f64::NEG_INFINITY;
    }
    table.ln_fact(a) - table.ln_gamma_half(t + 1) - table.ln_gamma_half(a - t)
}

/// Two-parameter approximate probability:
/// binom((n+x)/2, k/2) binom((n-x)/2, k/2) exp(G + beta k + F x),
/// half-integer binomials for odd k. Not exactly normalized; see
/// [`approx_normalization_defect`].
pub fn approx_pmf(n: u32, x: i64, k: u32, params: &ModelParams) -> f64 {
    if !on_support(n, x, k) {
        return 0.0;
    }
    // 2n + 2 covers the doubled arguments of the half-integer gammas
    let table = LnFactTable::new(2 * n as usize + 2);
    approx_pmf_with(n, x, k, params, &table)
}

fn approx_pmf_with(n: u32, x: i64, k: u32, params: &ModelParams, table: &LnFactTable) -> f64 {
    if !on_support(n, x, k) {
        return 0.0;
    }
    let a_plus = ((i64::from(n) + x) / 2) as u64;
    let a_minus = ((i64::from(n) - x) / 2) as u64;
    let ln_pref = ln_binom_halved(a_plus, k, table) + ln_binom_halved(a_minus, k, table);
    if ln_pref == f64::NEG_INFINITY {
        return 0.0;
    }
    let thermo = to_thermo(params, n);
    (ln_pref + thermo.g + thermo.beta * f64::from(k) + thermo.force * x as f64).exp()
}

/// |sum of the approximate form over the support - 1|. Reported, not
/// asserted: the approximation is not exactly normalized.
pub fn approx_normalization_defect(n: u32, params: &ModelParams) -> f64 {
    let table = LnFactTable::new(2 * n as usize + 2);
    let mut total = 0.0;
    for x in (-i64::from(n)..=i64::from(n)).step_by(2) {
        for k in 0..=n {
            total += approx_pmf_with(n, x, k, params, &table);
        }
    }
    (total - 1.0).abs()
}

/// Conditional first moments and odd-reversal probabilities, resolved on
/// the pre-walk direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryAverages {
    pub mean_x_plus: f64,
    pub mean_x_minus: f64,
    pub mean_k_plus: f64,
    pub mean_k_minus: f64,
    pub delta_plus: f64,
    pub delta_minus: f64,
}

/// Evaluate the conditional means through their closed forms: the odd-k
/// probabilities come from the conditional tables, the means then follow
/// from
///
/// ```text
/// <x>+- = n (eps_r-eps_l)/(2-eps_r-eps_l) -+ 2 (1-eps_r-eps_l)/(2-eps_r-eps_l) <Delta>+-
/// <k>+- = 2n (1-eps_r)(1-eps_l)/(2-eps_r-eps_l) -+ (eps_r-eps_l)/(2-eps_r-eps_l) <Delta>+-
/// ```
pub fn boundary_averages(n: u32, params: &ModelParams) -> BoundaryAverages {
    let delta_plus = JointPmf::closed_form_conditional(n, Direction::Plus, params).odd_k_prob();
    let delta_minus = JointPmf::closed_form_conditional(n, Direction::Minus, params).odd_k_prob();
    let er = params.eps_r();
    let el = params.eps_l();
    let denom = 2.0 - er - el;
    let x0 = mean_x(n, params);
    let k0 = mean_k(n, params);
    let x_coeff = 2.0 * (1.0 - er - el) / denom;
    let k_coeff = (er - el) / denom;
    BoundaryAverages {
        mean_x_plus: x0 - x_coeff * delta_plus,
        mean_x_minus: x0 + x_coeff * delta_minus,
        mean_k_plus: k0 - k_coeff * delta_plus,
        mean_k_minus: k0 + k_coeff * delta_minus,
        delta_plus,
        delta_minus,
    }
}
