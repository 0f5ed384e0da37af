//! Generating-function machinery.
//!
//! The joint distribution's generating function f^(n)(w, z) =
//! sum_{x,k} w^x z^k p_n(x, k) evolves by a 2x2 transfer matrix
//!
//! ```text
//! M(w, z) = [ eps_r w          (1-eps_l) w z ]
//!           [ (1-eps_r) z / w  eps_l / w     ]
//! ```
//!
//! whose n-th power has a closed form through its eigenvalues. For real
//! w > 0 and real z the eigenvalue gap nu is real and all arithmetic stays
//! real. First moments of x and k follow from derivatives at w = z = 1 and
//! are exposed as closed forms.

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::tolerances::NU_DEGENERATE_REL;

/// The transfer matrix at a fixed (w, z) together with its eigen-data.
#[derive(Debug, Clone, Copy)]
pub struct GenFuncMatrix {
    pub w: f64,
    pub z: f64,
    pub entries: [[f64; 2]; 2],
    /// Eigenvalue gap: lambda_plus - lambda_minus.
    pub nu: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

impl GenFuncMatrix {
    pub fn new(w: f64, z: f64, params: &ModelParams) -> Result<Self> {
        if !(w > 0.0) {
            return Err(Error::NonPositiveW { w });
        }
        let er = params.eps_r();
        let el = params.eps_l();
        let entries = [[er * w, (1.0 - el) * w * z], [(1.0 - er) * z / w, el / w]];
        let diff = er * w - el / w;
        let nu = (diff * diff + 4.0 * (1.0 - er) * (1.0 - el) * z * z).sqrt();
        let trace = er * w + el / w;
        Ok(GenFuncMatrix {
            w,
            z,
            entries,
            nu,
            lambda_plus: 0.5 * (trace + nu),
            lambda_minus: 0.5 * (trace - nu),
        })
    }

    pub fn trace(&self) -> f64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn det(&self) -> f64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    /// M v.
    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.entries[0][0] * v[0] + self.entries[0][1] * v[1],
            self.entries[1][0] * v[0] + self.entries[1][1] * v[1],
        ]
    }
}

/// (lambda_plus^n - lambda_minus^n) / nu, with the analytic limit
/// n lambda^(n-1) at a (near-)degenerate eigenvalue pair.
fn power_gap_ratio(m: &GenFuncMatrix, n: u32) -> f64 {
    let scale = m.lambda_plus.abs() + m.lambda_minus.abs();
    if m.nu < NU_DEGENERATE_REL * scale {
        let lambda = 0.5 * (m.lambda_plus + m.lambda_minus);
        return f64::from(n) * lambda.powi(n as i32 - 1);
    }
    (m.lambda_plus.powi(n as i32) - m.lambda_minus.powi(n as i32)) / m.nu
}

/// f^(n)(w, z) through the eigen-decomposition of the transfer matrix,
/// with the stationary pre-walk mixture folded into the bracketed
/// initial-condition term.
pub fn generating_fn(n: u32, w: f64, z: f64, params: &ModelParams) -> Result<f64> {
    let m = GenFuncMatrix::new(w, z, params)?;
    let er = params.eps_r();
    let el = params.eps_l();
    let stat = params.stationary();
    let sym = 0.5 * (m.lambda_plus.powi(n as i32) + m.lambda_minus.powi(n as i32));
    let bracket = (er * w - el / w) * (stat.p_plus - stat.p_minus)
        + 2.0 * (1.0 - er) * stat.p_plus * z / w
        + 2.0 * (1.0 - el) * stat.p_minus * w * z;
    Ok(sym + 0.5 * power_gap_ratio(&m, n) * bracket)
}

/// f^(n)(w, z) by applying the transfer matrix n times to the stationary
/// initial vector. Independent of the eigen route; kept as a cross-check.
pub fn generating_fn_iterated(n: u32, w: f64, z: f64, params: &ModelParams) -> Result<f64> {
    let v = propagate(n, w, z, params, None)?;
    Ok(v[0] + v[1])
}

/// Apply M(w, z) `n` times to `start` (the stationary vector when `None`).
pub fn propagate(
    n: u32,
    w: f64,
    z: f64,
    params: &ModelParams,
    start: Option<[f64; 2]>,
) -> Result<[f64; 2]> {
    let m = GenFuncMatrix::new(w, z, params)?;
    let stat = params.stationary();
    let mut v = start.unwrap_or([stat.p_plus, stat.p_minus]);
    for _ in 0..n {
        v = m.apply(v);
    }
    Ok(v)
}

/// Closed-form mean endpoint: n (eps_r - eps_l) / (2 - eps_r - eps_l).
pub fn mean_x(n: u32, params: &ModelParams) -> f64 {
    f64::from(n) * (params.eps_r() - params.eps_l()) / (2.0 - params.eps_r() - params.eps_l())
}

/// Closed-form mean reversal count:
/// 2 n (1 - eps_r)(1 - eps_l) / (2 - eps_r - eps_l).
pub fn mean_k(n: u32, params: &ModelParams) -> f64 {
    2.0 * f64::from(n) * (1.0 - params.eps_r()) * (1.0 - params.eps_l())
        / (2.0 - params.eps_r() - params.eps_l())
}
