//! The exact joint distribution of endpoint and reversal count.
//!
//! Two independent routes produce the same table:
//!
//! * the closed form — stationary-weighted mixture of the two conditional
//!   distributions, each a walk count times a path weight; and
//! * a forward dynamic-programming recursion over the final step direction.
//!
//! Path weights are accumulated in the log domain. Walk counts come from
//! exact big integers up to [`crate::tolerances::EXACT_COUNT_MAX_N`] and
//! from log-factorials beyond it.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::combinatorics::CountBackend;
use crate::error::{Error, Result};
use crate::logspace::log_sum_exp;
use crate::model::{on_support, Direction, ModelParams};
use crate::tolerances::{EXACT_COUNT_MAX_N, TABLE_LN_FLOOR};

/// A reversal split together with its log path weight.
///
/// An odd reversal count splits as (k +- sigma0)/2 between the two reversal
/// types; an even count splits evenly and the pre-walk direction drops out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitWeights {
    pub k_plus: u32,
    pub k_minus: u32,
    pub ln_weight: f64,
}

/// Split `k` reversals into (right-to-left, left-to-right) counts for a walk
/// with pre-walk direction `sigma0`.
pub fn reversal_split(sigma0: Direction, k: u32) -> (u32, u32) {
    if k.is_multiple_of(2) {
        (k / 2, k / 2)
    } else {
        match sigma0 {
            Direction::Plus => (k.div_ceil(2), k / 2),
            Direction::Minus => (k / 2, k.div_ceil(2)),
        }
    }
}

fn check_support_x(n: u32, x: i64, k: u32) -> Result<()> {
    let n_i = i64::from(n);
    if x.abs() > n_i || (n_i - x).rem_euclid(2) != 0 {
        return Err(Error::OffSupport { n, x, k });
    }
    Ok(())
}

/// Log path weight of any single n-step walk ending at `x` with the given
/// reversal split:
///
/// ```text
/// ln[ eps_r^((n+x)/2) eps_l^((n-x)/2)
///     ((1-eps_r)/eps_l)^k_plus ((1-eps_l)/eps_r)^k_minus ]
/// ```
pub fn ln_gamma_weight(
    n: u32,
    x: i64,
    k_plus: u32,
    k_minus: u32,
    params: &ModelParams,
) -> Result<f64> {
    check_support_x(n, x, k_plus + k_minus)?;
    Ok(ln_gamma_weight_raw(n, x, k_plus, k_minus, params))
}

/// Linear-domain version of [`ln_gamma_weight`].
pub fn gamma_weight(
    n: u32,
    x: i64,
    k_plus: u32,
    k_minus: u32,
    params: &ModelParams,
) -> Result<f64> {
    ln_gamma_weight(n, x, k_plus, k_minus, params).map(f64::exp)
}

fn ln_gamma_weight_raw(n: u32, x: i64, k_plus: u32, k_minus: u32, params: &ModelParams) -> f64 {
    let right = ((i64::from(n) + x) / 2) as f64;
    let left = ((i64::from(n) - x) / 2) as f64;
    let ln_er = params.eps_r().ln();
    let ln_el = params.eps_l().ln();
    let ln_1r = (1.0 - params.eps_r()).ln();
    let ln_1l = (1.0 - params.eps_l()).ln();
    right * ln_er
        + left * ln_el
        + f64::from(k_plus) * (ln_1r - ln_el)
        + f64::from(k_minus) * (ln_1l - ln_er)
}

/// Split weights for an n-step walk ending at `x` with `k` reversals.
pub fn split_weights(
    n: u32,
    sigma0: Direction,
    x: i64,
    k: u32,
    params: &ModelParams,
) -> Result<SplitWeights> {
    check_support_x(n, x, k)?;
    let (k_plus, k_minus) = reversal_split(sigma0, k);
    Ok(SplitWeights {
        k_plus,
        k_minus,
        ln_weight: ln_gamma_weight_raw(n, x, k_plus, k_minus, params),
    })
}

fn ln_q_raw(
    n: u32,
    sigma0: Direction,
    x: i64,
    k: u32,
    params: &ModelParams,
    backend: &CountBackend,
) -> f64 {
    let (k_plus, k_minus) = reversal_split(sigma0, k);
    let ln_count = backend.ln_count(n, sigma0, x, k_plus, k_minus);
    if ln_count == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    ln_count + ln_gamma_weight_raw(n, x, k_plus, k_minus, params)
}

/// Conditional probability q_n^{sigma0}(x, k): probability that a walk with
/// pre-walk direction `sigma0` ends at `x` with `k` reversals. A normalized
/// distribution over (x, k) for each `sigma0`.
pub fn q_pmf(n: u32, sigma0: Direction, x: i64, k: u32, params: &ModelParams) -> Result<f64> {
    check_support_x(n, x, k)?;
    let backend = CountBackend::for_n(n);
    Ok(ln_q_raw(n, sigma0, x, k, params, &backend).exp())
}

/// The joint probability p_n(x, k): stationary mixture of the two
/// conditional distributions. Total over (x, k); off-support points
/// return 0.
pub fn joint_pmf(n: u32, x: i64, k: u32, params: &ModelParams) -> f64 {
    if !on_support(n, x, k) {
        return 0.0;
    }
    let backend = CountBackend::for_n(n);
    let stat = params.stationary();
    let ln_plus = stat.p_plus.ln() + ln_q_raw(n, Direction::Plus, x, k, params, &backend);
    let ln_minus = stat.p_minus.ln() + ln_q_raw(n, Direction::Minus, x, k, params, &backend);
    log_sum_exp(ln_plus, ln_minus).exp()
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

/// One table entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PmfEntry {
    pub x: i64,
    pub k: u32,
    pub prob: f64,
    pub ln_prob: f64,
}

#[derive(Debug, Clone, Default)]
struct Row {
    k_lo: u32,
    ln_p: Vec<f64>,
    p: Vec<f64>,
}

impl Row {
    fn get(&self, k: u32) -> Option<(f64, f64)> {
        if k < self.k_lo {
            return None;
        }
        let idx = (k - self.k_lo) as usize;
        if idx >= self.p.len() {
            return None;
        }
        Some((self.p[idx], self.ln_p[idx]))
    }
}

/// A dense-by-row table of a distribution over (x, k), stored in both the
/// linear and log domains. Rows are indexed by x (same parity as n); each
/// row keeps the contiguous window of k values above the trim floor.
///
/// The same type holds the joint distribution, the conditional
/// distributions given the pre-walk direction, and the final-direction
/// slices of the recursion.
#[derive(Debug, Clone)]
pub struct JointPmf {
    n: u32,
    params: ModelParams,
    rows: Vec<Row>,
}

impl JointPmf {
    /// Closed-form joint table.
    pub fn closed_form(n: u32, params: &ModelParams) -> JointPmf {
        let backend = CountBackend::for_n(n);
        let stat = params.stationary();
        let ln_p_plus = stat.p_plus.ln();
        let ln_p_minus = stat.p_minus.ln();
        Self::build(n, params, |x, k| {
            log_sum_exp(
                ln_p_plus + ln_q_raw(n, Direction::Plus, x, k, params, &backend),
                ln_p_minus + ln_q_raw(n, Direction::Minus, x, k, params, &backend),
            )
        })
    }

    /// Closed-form conditional table q_n^{sigma0}.
    pub fn closed_form_conditional(n: u32, sigma0: Direction, params: &ModelParams) -> JointPmf {
        let backend = CountBackend::for_n(n);
        Self::build(n, params, |x, k| {
            ln_q_raw(n, sigma0, x, k, params, &backend)
        })
    }

    fn build<F>(n: u32, params: &ModelParams, ln_entry: F) -> JointPmf
    where
        F: Fn(i64, u32) -> f64 + Sync,
    {
        let floor = if n <= EXACT_COUNT_MAX_N {
            f64::NEG_INFINITY
        } else {
            TABLE_LN_FLOOR
        };
        let rows: Vec<Row> = (0..=n as usize)
            .into_par_iter()
            .map(|i| {
                let x = 2 * i as i64 - i64::from(n);
                let mut ln_vals = Vec::with_capacity(n as usize + 1);
                for k in 0..=n {
                    ln_vals.push(ln_entry(x, k));
                }
                let first = ln_vals.iter().position(|&v| v > floor);
                let Some(first) = first else {
                    return Row::default();
                };
                let last = ln_vals.iter().rposition(|&v| v > floor).unwrap();
                let ln_p: Vec<f64> = ln_vals[first..=last].to_vec();
                let p: Vec<f64> = ln_p.iter().map(|&v| v.exp()).collect();
                Row {
                    k_lo: first as u32,
                    ln_p,
                    p,
                }
            })
            .collect();
        JointPmf {
            n,
            params: *params,
            rows,
        }
    }

    pub(crate) fn from_linear_rows(n: u32, params: &ModelParams, dense: Vec<Vec<f64>>) -> JointPmf {
        let rows = dense
            .into_iter()
            .map(|vals| {
                let first = vals.iter().position(|&v| v > 0.0);
                let Some(first) = first else {
                    return Row::default();
                };
                let last = vals.iter().rposition(|&v| v > 0.0).unwrap();
                let p: Vec<f64> = vals[first..=last].to_vec();
                let ln_p: Vec<f64> = p.iter().map(|&v| v.ln()).collect();
                Row {
                    k_lo: first as u32,
                    ln_p,
                    p,
                }
            })
            .collect();
        JointPmf {
            n,
            params: *params,
            rows,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Probability at (x, k); 0 off support or below the trim floor.
    pub fn prob(&self, x: i64, k: u32) -> f64 {
        self.lookup(x, k).map_or(0.0, |(p, _)| p)
    }

    /// Log-probability at (x, k); negative infinity where [`Self::prob`]
    /// is 0.
    pub fn ln_prob(&self, x: i64, k: u32) -> f64 {
        self.lookup(x, k).map_or(f64::NEG_INFINITY, |(_, lp)| lp)
    }

    fn lookup(&self, x: i64, k: u32) -> Option<(f64, f64)> {
        if !on_support(self.n, x, k) {
            return None;
        }
        let i = ((x + i64::from(self.n)) / 2) as usize;
        self.rows[i].get(k)
    }

    /// Entries with nonzero probability, ordered by (x, k).
    pub fn entries(&self) -> impl Iterator<Item = PmfEntry> + '_ {
        let n = i64::from(self.n);
        self.rows.iter().enumerate().flat_map(move |(i, row)| {
            let x = 2 * i as i64 - n;
            row.p
                .iter()
                .zip(row.ln_p.iter())
                .enumerate()
                .filter(|(_, (&p, _))| p > 0.0)
                .map(move |(j, (&p, &lp))| PmfEntry {
                    x,
                    k: row.k_lo + j as u32,
                    prob: p,
                    ln_prob: lp,
                })
        })
    }

    /// Number of stored nonzero entries.
    pub fn support_len(&self) -> usize {
        self.entries().count()
    }

    /// Sum of all stored probabilities. 1 within
    /// [`crate::tolerances::MASS_TOL_LINEAR`] (exact-count range) or
    /// [`crate::tolerances::MASS_TOL_LOG`] (log range) for a distribution
    /// table.
    pub fn total_mass(&self) -> f64 {
        self.rows.iter().map(|r| r.p.iter().sum::<f64>()).sum()
    }

    /// Table-summed mean of x.
    pub fn mean_x(&self) -> f64 {
        let n = i64::from(self.n);
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let x = (2 * i as i64 - n) as f64;
                x * row.p.iter().sum::<f64>()
            })
            .sum()
    }

    /// Table-summed mean of k.
    pub fn mean_k(&self) -> f64 {
        self.rows
            .iter()
            .map(|row| {
                row.p
                    .iter()
                    .enumerate()
                    .map(|(j, &p)| f64::from(row.k_lo + j as u32) * p)
                    .sum::<f64>()
            })
            .sum()
    }

    /// Marginal distribution of the endpoint.
    pub fn marginal_x(&self) -> BTreeMap<i64, f64> {
        let n = i64::from(self.n);
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, row)| !row.p.is_empty())
            .map(|(i, row)| (2 * i as i64 - n, row.p.iter().sum::<f64>()))
            .collect()
    }

    /// Marginal distribution of the reversal count.
    pub fn marginal_k(&self) -> BTreeMap<u32, f64> {
        let mut out = BTreeMap::new();
        for row in &self.rows {
            for (j, &p) in row.p.iter().enumerate() {
                if p > 0.0 {
                    *out.entry(row.k_lo + j as u32).or_insert(0.0) += p;
                }
            }
        }
        out
    }

    /// Probability that the reversal count is odd.
    pub fn odd_k_prob(&self) -> f64 {
        self.rows
            .iter()
            .map(|row| {
                row.p
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| (row.k_lo + *j as u32) % 2 == 1)
                    .map(|(_, &p)| p)
                    .sum::<f64>()
            })
            .sum()
    }

    /// Entry with the largest probability.
    pub fn mode(&self) -> Option<PmfEntry> {
        self.entries()
            .max_by(|a, b| a.prob.partial_cmp(&b.prob).unwrap())
    }
}

/// Probability that the reversal count is odd, conditioned on the pre-walk
/// direction.
pub fn odd_k_prob_conditional(n: u32, sigma0: Direction, params: &ModelParams) -> f64 {
    JointPmf::closed_form_conditional(n, sigma0, params).odd_k_prob()
}

// ---------------------------------------------------------------------------
// Forward recursion
// ---------------------------------------------------------------------------

/// Result of the forward recursion: the joint table and the two
/// final-direction slices (probability that the last step went right or
/// left, jointly with endpoint and reversal count).
#[derive(Debug, Clone)]
pub struct DpPmf {
    pub joint: JointPmf,
    pub final_plus: JointPmf,
    pub final_minus: JointPmf,
}

/// Build the joint distribution by stepping the recursion
///
/// ```text
/// p_m^+(x, k) = eps_r    p_{m-1}^+(x-1, k)  +  (1-eps_l) p_{m-1}^-(x-1, k-1)
/// p_m^-(x, k) = (1-eps_r) p_{m-1}^+(x+1, k-1)  +  eps_l  p_{m-1}^-(x+1, k)
/// ```
///
/// seeded at step 0 with the stationary weights at x = 0, k = 0. Linear
/// domain throughout.
pub fn dp_pmf(n: u32, params: &ModelParams) -> DpPmf {
    let er = params.eps_r();
    let el = params.eps_l();
    let stat = params.stationary();

    // step m tables indexed [i][k], x = 2i - m
    let mut plus: Vec<Vec<f64>> = vec![vec![stat.p_plus]];
    let mut minus: Vec<Vec<f64>> = vec![vec![stat.p_minus]];

    for m in 1..=n as usize {
        let mut next_plus = vec![vec![0.0; m + 1]; m + 1];
        let mut next_minus = vec![vec![0.0; m + 1]; m + 1];
        for i in 0..=m {
            for k in 0..=m {
                // x-1 at step m-1 sits at row i-1; x+1 at row i
                let mut acc = 0.0;
                if i >= 1 && k < m {
                    acc += er * plus[i - 1][k];
                }
                if i >= 1 && k >= 1 && k - 1 < m {
                    acc += (1.0 - el) * minus[i - 1][k - 1];
                }
                next_plus[i][k] = acc;

                let mut acc = 0.0;
                if i < m && k >= 1 && k - 1 < m {
                    acc += (1.0 - er) * plus[i][k - 1];
                }
                if i < m && k < m {
                    acc += el * minus[i][k];
                }
                next_minus[i][k] = acc;
            }
        }
        plus = next_plus;
        minus = next_minus;
    }

    let joint: Vec<Vec<f64>> = plus
        .iter()
        .zip(minus.iter())
        .map(|(p, m)| p.iter().zip(m.iter()).map(|(a, b)| a + b).collect())
        .collect();

    DpPmf {
        joint: JointPmf::from_linear_rows(n, params, joint),
        final_plus: JointPmf::from_linear_rows(n, params, plus),
        final_minus: JointPmf::from_linear_rows(n, params, minus),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(er: f64, el: f64) -> ModelParams {
        ModelParams::new(er, el).unwrap()
    }

    #[test]
    fn reversal_split_cases() {
        assert_eq!(reversal_split(Direction::Plus, 4), (2, 2));
        assert_eq!(reversal_split(Direction::Minus, 4), (2, 2));
        assert_eq!(reversal_split(Direction::Plus, 3), (2, 1));
        assert_eq!(reversal_split(Direction::Minus, 3), (1, 2));
    }

    #[test]
    fn gamma_weight_worked_example() {
        // gamma_4(2, 1, 2) = eps_r (1 - eps_r) (1 - eps_l)^2
        for (er, el) in [(0.3, 0.6), (0.5, 0.5), (0.9, 0.2)] {
            let p = params(er, el);
            let got = gamma_weight(4, 2, 1, 2, &p).unwrap();
            let want = er * (1.0 - er) * (1.0 - el) * (1.0 - el);
            assert_abs_diff_eq!(got, want, epsilon = 1e-15);
        }
        // all-right walk: eps_r^n
        let p = params(0.7, 0.4);
        for n in [1u32, 5, 12] {
            let got = gamma_weight(n, i64::from(n), 0, 0, &p).unwrap();
            assert_abs_diff_eq!(got, 0.7f64.powi(n as i32), epsilon = 1e-15);
        }
        // symmetric case: every step contributes 1/2 and the reversal
        // ratios are 1, so the weight is 2^-n; consistent with the
        // four-step example p_4(2,3) = (1/2) * 2 * gamma = 1/16
        let got = gamma_weight(4, 2, 1, 2, &params(0.5, 0.5)).unwrap();
        assert_abs_diff_eq!(got, 1.0 / 16.0, epsilon = 1e-16);
    }

    #[test]
    fn gamma_weight_rejects_bad_domain() {
        let p = params(0.5, 0.5);
        assert!(gamma_weight(4, 3, 0, 0, &p).is_err()); // parity
        assert!(gamma_weight(4, 6, 0, 0, &p).is_err()); // range
    }

    #[test]
    fn q_pmf_known_values() {
        let p = params(0.7, 0.4);
        // the existence gate kills the sigma0 = +1 branch of p_4(2,3)
        assert_eq!(q_pmf(4, Direction::Plus, 2, 3, &p).unwrap(), 0.0);
        // monotone walk
        for n in [1u32, 4, 9] {
            let got = q_pmf(n, Direction::Plus, i64::from(n), 0, &p).unwrap();
            assert_abs_diff_eq!(got, 0.7f64.powi(n as i32), epsilon = 1e-14);
        }
    }

    #[test]
    fn q_pmf_is_normalized() {
        for (er, el) in [(0.5, 0.5), (0.7, 0.4), (0.1, 0.9)] {
            let p = params(er, el);
            for n in [1u32, 5, 12] {
                for sigma0 in Direction::BOTH {
                    let table = JointPmf::closed_form_conditional(n, sigma0, &p);
                    assert_abs_diff_eq!(table.total_mass(), 1.0, epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn joint_pmf_worked_example() {
        // p_4(2,3) = 2 eps_r (1-eps_r)^2 (1-eps_l)^2 / (2 - eps_r - eps_l)
        for er in [0.1, 0.3, 0.5, 0.7, 0.9] {
            for el in [0.1, 0.3, 0.5, 0.7, 0.9] {
                let p = params(er, el);
                let want = 2.0 * er * (1.0 - er).powi(2) * (1.0 - el).powi(2) / (2.0 - er - el);
                assert_abs_diff_eq!(joint_pmf(4, 2, 3, &p), want, epsilon = 1e-15);
            }
        }
        assert_abs_diff_eq!(
            joint_pmf(4, 2, 3, &params(0.5, 0.5)),
            1.0 / 16.0,
            epsilon = 1e-16
        );
    }

    #[test]
    fn joint_pmf_off_support_is_zero() {
        let p = params(0.6, 0.3);
        assert_eq!(joint_pmf(4, 3, 1, &p), 0.0);
        assert_eq!(joint_pmf(4, 6, 0, &p), 0.0);
        assert_eq!(joint_pmf(4, 0, 5, &p), 0.0);
    }

    #[test]
    fn one_step_distribution() {
        // the first step's reversal is counted against sigma0, so
        // p_1(1, 0) carries only the sigma0 = +1 branch and
        // p_1(1, 1) only the sigma0 = -1 branch
        let p = params(0.7, 0.4);
        let stat = p.stationary();
        assert_abs_diff_eq!(joint_pmf(1, 1, 0, &p), stat.p_plus * 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(joint_pmf(1, 1, 1, &p), stat.p_minus * 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(joint_pmf(1, -1, 0, &p), stat.p_minus * 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(joint_pmf(1, -1, 1, &p), stat.p_plus * 0.3, epsilon = 1e-15);
        // marginal over k at x = 1
        let marginal = joint_pmf(1, 1, 0, &p) + joint_pmf(1, 1, 1, &p);
        assert_abs_diff_eq!(
            marginal,
            stat.p_plus * 0.7 + stat.p_minus * 0.6,
            epsilon = 1e-15
        );
    }

    #[test]
    fn dp_matches_closed_form() {
        for (er, el) in [(0.5, 0.5), (0.7, 0.4), (0.15, 0.85)] {
            let p = params(er, el);
            for n in [1u32, 2, 5, 9] {
                let dp = dp_pmf(n, &p);
                let cf = JointPmf::closed_form(n, &p);
                for x in (-i64::from(n)..=i64::from(n)).step_by(2) {
                    for k in 0..=n {
                        assert_abs_diff_eq!(dp.joint.prob(x, k), cf.prob(x, k), epsilon = 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn dp_one_step_entries() {
        let p = params(0.7, 0.4);
        let stat = p.stationary();
        let dp = dp_pmf(1, &p);
        assert_abs_diff_eq!(dp.final_plus.prob(1, 0), stat.p_plus * 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(
            dp.final_plus.prob(1, 1),
            stat.p_minus * 0.6,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            dp.final_minus.prob(-1, 0),
            stat.p_minus * 0.4,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            dp.final_minus.prob(-1, 1),
            stat.p_plus * 0.3,
            epsilon = 1e-15
        );
    }

    #[test]
    fn symmetric_marginal_is_binomial() {
        let p = params(0.5, 0.5);
        for n in [4u32, 9] {
            let table = JointPmf::closed_form(n, &p);
            let marginal = table.marginal_x();
            for (x, prob) in marginal {
                let heads = ((i64::from(n) + x) / 2) as u64;
                let want = crate::combinatorics::binomial(u64::from(n), heads)
                    .to_string()
                    .parse::<f64>()
                    .unwrap()
                    / 2f64.powi(n as i32);
                assert_abs_diff_eq!(prob, want, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn symmetric_k_marginal_at_zero() {
        // two monotone walks, each with path probability 2^-4, each entered
        // with stationary weight 1/2
        let table = JointPmf::closed_form(4, &params(0.5, 0.5));
        let marginal = table.marginal_k();
        assert_abs_diff_eq!(marginal[&0], 1.0 / 16.0, epsilon = 1e-15);
    }

    #[test]
    fn support_size_n4() {
        let table = JointPmf::closed_form(4, &params(0.5, 0.5));
        assert_eq!(table.support_len(), 14);
        // k = n is reachable: the fully alternating walk
        assert!(table.prob(0, 4) > 0.0);
    }

    #[test]
    fn mirror_symmetry() {
        let p = params(0.72, 0.31);
        let table = JointPmf::closed_form(7, &p);
        let mirrored = JointPmf::closed_form(7, &p.mirrored());
        for entry in table.entries() {
            assert_abs_diff_eq!(
                entry.prob,
                mirrored.prob(-entry.x, entry.k),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn odd_k_identities() {
        let p = params(0.7, 0.4);
        let stat = p.stationary();
        // one step: reversal happens with the complement persistence
        let table = JointPmf::closed_form(1, &p);
        assert_abs_diff_eq!(
            table.odd_k_prob(),
            stat.p_plus * 0.3 + stat.p_minus * 0.6,
            epsilon = 1e-15
        );
        // two unbiased steps: half the sign patterns have odd reversals
        let sym = JointPmf::closed_form(2, &params(0.5, 0.5));
        assert_abs_diff_eq!(sym.odd_k_prob(), 0.5, epsilon = 1e-14);
        // stationary-weighted conditional odd-k probabilities balance
        for n in [1u32, 4, 9] {
            let dp = odd_k_prob_conditional(n, Direction::Plus, &p);
            let dm = odd_k_prob_conditional(n, Direction::Minus, &p);
            assert_abs_diff_eq!(stat.p_plus * dp, stat.p_minus * dm, epsilon = 1e-13);
        }
    }

    #[test]
    fn moments_match_closed_forms() {
        for (er, el) in [(0.5, 0.5), (0.7, 0.4), (0.2, 0.9)] {
            let p = params(er, el);
            for n in [1u32, 6, 40] {
                let table = JointPmf::closed_form(n, &p);
                let denom = 2.0 - er - el;
                let want_x = f64::from(n) * (er - el) / denom;
                let want_k = 2.0 * f64::from(n) * (1.0 - er) * (1.0 - el) / denom;
                assert_abs_diff_eq!(table.mean_x(), want_x, epsilon = 1e-10 * f64::from(n));
                assert_abs_diff_eq!(table.mean_k(), want_k, epsilon = 1e-10 * f64::from(n));
                assert_abs_diff_eq!(table.total_mass(), 1.0, epsilon = 1e-12);
            }
        }
    }
}
