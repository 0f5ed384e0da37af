//! Moment-based parameter estimation.
//!
//! The per-step means a = <x>/n and b = <k>/n determine the parameters in
//! closed form: eliminating the common denominator from the two moment
//! expressions gives eps_r = 1 - b/(1+a) and eps_l = 1 - b/(1-a). The
//! estimator inverts sample means through the same formulas and quantifies
//! uncertainty with a nonparametric bootstrap.
//!
//! The conditional (pre-walk-direction) corrections to the moments are an
//! O(1/n) effect and are ignored here; the estimator carries a known bias
//! of that order at small n.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{ModelParams, WalkOutcome};

/// Aggregated sufficient statistics of a sample of equal-length walks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub n: u32,
    pub num_walks: u64,
    /// a = (sample mean of x) / n.
    pub mean_x_per_n: f64,
    /// b = (sample mean of k) / n.
    pub mean_k_per_n: f64,
}

impl SampleStats {
    pub fn new(n: u32, num_walks: u64, mean_x_per_n: f64, mean_k_per_n: f64) -> Result<Self> {
        if n == 0 || num_walks == 0 {
            return Err(Error::InsufficientData(
                "sample statistics need n >= 1 and at least one walk".into(),
            ));
        }
        if !(mean_x_per_n.abs() <= 1.0) {
            return Err(Error::InadmissibleStats {
                constraint: format!("|mean_x_per_n| <= 1 violated: |{mean_x_per_n}| > 1"),
            });
        }
        if !(0.0..=1.0).contains(&mean_k_per_n) {
            return Err(Error::InadmissibleStats {
                constraint: format!("0 <= mean_k_per_n <= 1 violated: {mean_k_per_n}"),
            });
        }
        Ok(SampleStats {
            n,
            num_walks,
            mean_x_per_n,
            mean_k_per_n,
        })
    }

    pub fn from_outcomes(outcomes: &[WalkOutcome]) -> Result<Self> {
        let Some(first) = outcomes.first() else {
            return Err(Error::InsufficientData("no outcomes".into()));
        };
        let n = first.n;
        if outcomes.iter().any(|o| o.n != n) {
            return Err(Error::InsufficientData(
                "outcomes mix different walk lengths".into(),
            ));
        }
        let count = outcomes.len() as f64;
        let sum_x: f64 = outcomes.iter().map(|o| o.x as f64).sum();
        let sum_k: f64 = outcomes.iter().map(|o| f64::from(o.k)).sum();
        SampleStats::new(
            n,
            outcomes.len() as u64,
            sum_x / count / f64::from(n),
            sum_k / count / f64::from(n),
        )
    }
}

/// Closed-form moment inversion. Admissible statistics satisfy
/// 0 < b and b < 1 - |a|, the image of the open parameter square under the
/// moment map; the violated inequality is named in the error otherwise.
pub fn estimate_params(stats: &SampleStats) -> Result<ModelParams> {
    let a = stats.mean_x_per_n;
    let b = stats.mean_k_per_n;
    if !(b > 0.0) {
        return Err(Error::InadmissibleStats {
            constraint: format!("0 < mean_k_per_n violated: mean_k_per_n = {b}"),
        });
    }
    if !(b < 1.0 - a.abs()) {
        return Err(Error::InadmissibleStats {
            constraint: format!(
                "mean_k_per_n < 1 - |mean_x_per_n| violated: {b} >= {}",
                1.0 - a.abs()
            ),
        });
    }
    ModelParams::new(1.0 - b / (1.0 + a), 1.0 - b / (1.0 - a))
}

/// Bootstrap percentile intervals for the two estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceIntervals {
    pub point: ModelParams,
    /// 2.5%..97.5% percentile interval for eps_r.
    pub eps_r: (f64, f64),
    /// 2.5%..97.5% percentile interval for eps_l.
    pub eps_l: (f64, f64),
    pub resamples_used: u64,
    /// Resamples whose statistics fell outside the admissible region;
    /// skipped and counted, not fatal.
    pub resamples_skipped: u64,
}

/// Nonparametric bootstrap: resample outcomes with replacement, re-estimate,
/// and take the 2.5% and 97.5% percentiles. Deterministic given the seed;
/// resamples draw from independent counter-derived streams so the result
/// does not depend on scheduling.
pub fn estimate_confidence(
    outcomes: &[WalkOutcome],
    resamples: u32,
    seed: u64,
) -> Result<ConfidenceIntervals> {
    if outcomes.len() < 2 {
        return Err(Error::InsufficientData(
            "bootstrap needs at least two outcomes".into(),
        ));
    }
    if resamples == 0 {
        return Err(Error::InsufficientData(
            "bootstrap needs resamples >= 1".into(),
        ));
    }
    let point = estimate_params(&SampleStats::from_outcomes(outcomes)?)?;

    let estimates: Vec<Option<(f64, f64)>> = (0..resamples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(u64::from(i));
            let n = outcomes.first().map(|o| o.n).unwrap_or(1);
            let mut sum_x = 0.0;
            let mut sum_k = 0.0;
            for _ in 0..outcomes.len() {
                let pick = &outcomes[rng.random_range(0..outcomes.len())];
                sum_x += pick.x as f64;
                sum_k += f64::from(pick.k);
            }
            let count = outcomes.len() as f64;
            let stats = SampleStats::new(
                n,
                outcomes.len() as u64,
                sum_x / count / f64::from(n),
                sum_k / count / f64::from(n),
            )
            .ok()?;
            let p = estimate_params(&stats).ok()?;
            Some((p.eps_r(), p.eps_l()))
        })
        .collect();

    let mut ers: Vec<f64> = Vec::with_capacity(estimates.len());
    let mut els: Vec<f64> = Vec::with_capacity(estimates.len());
    let mut skipped = 0u64;
    for e in estimates {
        match e {
            Some((er, el)) => {
                ers.push(er);
                els.push(el);
            }
            None => skipped += 1,
        }
    }
    if ers.is_empty() {
        return Err(Error::InsufficientData(format!(
            "all {resamples} bootstrap resamples were inadmissible"
        )));
    }
    ers.sort_by(|a, b| a.partial_cmp(b).unwrap());
    els.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(ConfidenceIntervals {
        point,
        eps_r: (percentile(&ers, 0.025), percentile(&ers, 0.975)),
        eps_l: (percentile(&els, 0.025), percentile(&els, 0.975)),
        resamples_used: ers.len() as u64,
        resamples_skipped: skipped,
    })
}

/// Linear-interpolation percentile of a sorted slice.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let last = sorted.len() - 1;
    let pos = q * last as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        return sorted[lo];
    }
    let frac = pos - lo as f64;
    sorted[lo] * (1.0 - frac) + sorted[hi] * frac
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfunc::{mean_k, mean_x};
    use crate::model::Direction;
    use approx::assert_abs_diff_eq;

    #[test]
    fn fixed_point_estimate() {
        let stats = SampleStats::new(10, 100, 0.0, 0.5).unwrap();
        let p = estimate_params(&stats).unwrap();
        assert_abs_diff_eq!(p.eps_r(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p.eps_l(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn forward_then_invert() {
        let stats = SampleStats::new(10, 100, 0.5, 0.375).unwrap();
        let p = estimate_params(&stats).unwrap();
        assert_abs_diff_eq!(p.eps_r(), 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(p.eps_l(), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn exact_round_trip_on_grid() {
        for er in [0.05, 0.2, 0.45, 0.6, 0.85, 0.97] {
            for el in [0.1, 0.33, 0.5, 0.76, 0.9] {
                let p = ModelParams::new(er, el).unwrap();
                let n = 17;
                let stats = SampleStats::new(
                    n,
                    1,
                    mean_x(n, &p) / f64::from(n),
                    mean_k(n, &p) / f64::from(n),
                )
                .unwrap();
                let q = estimate_params(&stats).unwrap();
                assert_abs_diff_eq!(q.eps_r(), er, epsilon = 1e-14);
                assert_abs_diff_eq!(q.eps_l(), el, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn equivariance_under_mirror() {
        let stats = SampleStats::new(10, 50, 0.2, 0.3).unwrap();
        let flipped = SampleStats::new(10, 50, -0.2, 0.3).unwrap();
        let p = estimate_params(&stats).unwrap();
        let q = estimate_params(&flipped).unwrap();
        assert_abs_diff_eq!(p.eps_r(), q.eps_l(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.eps_l(), q.eps_r(), epsilon = 1e-15);
    }

    #[test]
    fn inadmissible_statistics_name_the_violation() {
        let zero_b = SampleStats::new(10, 10, 0.1, 0.0).unwrap();
        let err = estimate_params(&zero_b).unwrap_err();
        assert!(err.to_string().contains("0 < mean_k_per_n"));

        let too_large_b = SampleStats::new(10, 10, 0.5, 0.6).unwrap();
        let err = estimate_params(&too_large_b).unwrap_err();
        assert!(err.to_string().contains("1 - |mean_x_per_n|"));
    }

    fn identical_outcomes(count: usize) -> Vec<WalkOutcome> {
        vec![
            WalkOutcome {
                sigma0: Direction::Plus,
                x: 0,
                k: 25,
                n: 50
            };
            count
        ]
    }

    #[test]
    fn identical_outcomes_give_zero_width_intervals() {
        let ci = estimate_confidence(&identical_outcomes(20), 100, 7).unwrap();
        assert_eq!(ci.eps_r.0, ci.eps_r.1);
        assert_eq!(ci.eps_l.0, ci.eps_l.1);
        assert_eq!(ci.resamples_skipped, 0);
        assert_abs_diff_eq!(ci.point.eps_r(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn single_resample_degenerates_to_a_point() {
        let outcomes = identical_outcomes(5);
        let ci = estimate_confidence(&outcomes, 1, 3).unwrap();
        assert_eq!(ci.eps_r.0, ci.eps_r.1);
        assert_eq!(ci.resamples_used, 1);
    }

    #[test]
    fn bootstrap_is_deterministic() {
        let cfg = crate::sim::SimConfig {
            n: 40,
            num_walks: 500,
            seed: 99,
            params: ModelParams::new(0.6, 0.4).unwrap(),
            sigma0_mode: crate::sim::Sigma0Mode::Stationary,
        };
        let outcomes = crate::sim::simulate(&cfg);
        let a = estimate_confidence(&outcomes, 200, 5).unwrap();
        let b = estimate_confidence(&outcomes, 200, 5).unwrap();
        assert_eq!(a, b);
        let c = estimate_confidence(&outcomes, 200, 6).unwrap();
        assert_ne!(a, c);
        // the interval should bracket the point estimate
        assert!(a.eps_r.0 <= a.point.eps_r() && a.point.eps_r() <= a.eps_r.1);
        assert!(a.eps_l.0 <= a.point.eps_l() && a.point.eps_l() <= a.eps_l.1);
    }

    #[test]
    fn all_inadmissible_point_estimate_is_an_error() {
        // all-zero reversal counts are outside the admissible region
        let outcomes = vec![
            WalkOutcome {
                sigma0: Direction::Plus,
                x: 10,
                k: 0,
                n: 10
            };
            4
        ];
        assert!(estimate_confidence(&outcomes, 8, 1).is_err());
    }

    #[test]
    fn inadmissible_resamples_are_skipped_and_counted() {
        // mostly zero-reversal walks: resamples that happen to draw only
        // those are inadmissible and must be skipped, not fatal
        let mut outcomes = vec![
            WalkOutcome {
                sigma0: Direction::Plus,
                x: 10,
                k: 0,
                n: 10
            };
            7
        ];
        outcomes.push(WalkOutcome {
            sigma0: Direction::Plus,
            x: 6,
            k: 2,
            n: 10,
        });
        let ci = estimate_confidence(&outcomes, 200, 11).unwrap();
        assert!(ci.resamples_skipped > 0);
        assert_eq!(ci.resamples_used + ci.resamples_skipped, 200);
    }
}
