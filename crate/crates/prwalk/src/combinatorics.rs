//! Exact integer counting of walks.
//!
//! Everything here is parameter-free combinatorics: the double-factorial
//! coefficient `C`, the existence indicator for walks with a prescribed
//! number of segments, the parity gate on reversal splits, the segment-count
//! distribution of the unbiased walk, and the master count of n-step walks
//! with a given endpoint and reversal split.
//!
//! Counts are arbitrary-precision integers. A log-domain evaluation path
//! (`LnFactTable`, [`ln_walk_count`]) backs probability tables for large `n`
//! where exact integers become wasteful; the crossover is
//! [`crate::tolerances::EXACT_COUNT_MAX_N`].

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::model::Direction;

/// n!! with the conventions 0!! = 1 and (-1)!! = 1.
fn double_fact(n: i64) -> BigUint {
    let mut acc = BigUint::one();
    let mut i = n;
    while i >= 2 {
        acc *= BigUint::from(i as u64);
        i -= 2;
    }
    acc
}

/// The double-factorial coefficient C(n, m) = n!! / (m!! (n-m)!!).
///
/// Returns 0 when m < 0, m > n, or n < 0. With both arguments even this is
/// the ordinary binomial coefficient of the halved arguments, which is the
/// only parity combination the walk counts produce; for mixed parities the
/// ratio need not be integral and the quotient is truncated.
pub fn double_fact_c(n: i64, m: i64) -> BigUint {
    if n < 0 || m < 0 || m > n {
        return BigUint::zero();
    }
    if n % 2 == 0 && m % 2 == 0 {
        return binomial((n / 2) as u64, (m / 2) as u64);
    }
    double_fact(n) / (double_fact(m) * double_fact(n - m))
}

/// Binomial coefficient as an exact big integer.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc = acc * BigUint::from(a - i) / BigUint::from(i + 1);
    }
    acc
}

/// Indicator that an n-step walk exists which starts in direction
/// `first_dir`, ends at `x`, and consists of exactly `segments` maximal
/// runs of equal direction.
///
/// With r = ceil(s/2) runs in the starting direction and l = floor(s/2)
/// runs against it, such a walk exists iff the (n + sigma x)/2 steps in the
/// starting direction admit r nonempty runs and the remaining steps admit
/// l nonempty runs (zero steps against the start force l = 0 and vice
/// versa).
pub fn walk_exists(n: u32, first_dir: Direction, x: i64, segments: u32) -> bool {
    let n = i64::from(n);
    let s = i64::from(segments);
    if s < 1 || s > n {
        return false;
    }
    if x.abs() > n || (n - x).rem_euclid(2) != 0 {
        return false;
    }
    let sig = first_dir.signum();
    let with = (n + sig * x) / 2;
    let against = (n - sig * x) / 2;
    let runs_with = (s + 1) / 2;
    let runs_against = s / 2;
    if with < runs_with {
        return false;
    }
    if runs_against == 0 {
        against == 0
    } else {
        against >= runs_against
    }
}

/// Parity gate on a reversal split: 1 iff `k_plus == k_minus` or
/// `k_plus - k_minus == sigma0`. Any other split is inconsistent with an
/// alternating segment structure that starts in direction `sigma0`.
pub fn split_consistent(sigma0: Direction, k_plus: u32, k_minus: u32) -> bool {
    k_plus == k_minus || i64::from(k_plus) - i64::from(k_minus) == sigma0.signum()
}

/// Probability that an unbiased n-step walk has exactly `s` segments:
/// binom(n-1, s-1) / 2^(n-1), exact. Zero outside 1 <= s <= n.
pub fn segment_count_prob(n: u32, s: u32) -> BigRational {
    assert!(n >= 1, "segment_count_prob requires n >= 1");
    if s < 1 || s > n {
        return BigRational::zero();
    }
    let numer = BigInt::from(binomial(u64::from(n) - 1, u64::from(s) - 1));
    let denom = BigInt::from(2u8).pow(n - 1);
    BigRational::new(numer, denom)
}

/// Number of n-step walks with pre-walk direction `sigma0`, endpoint `x`,
/// `k_plus` right-to-left reversals and `k_minus` left-to-right reversals.
///
/// Prepending one step in direction `sigma0` turns the walk into an
/// (n+1)-step walk from position -sigma0 whose segment count is
/// k_plus + k_minus + 1; the count is then a product of two run-composition
/// coefficients, gated by existence and split consistency. A single segment
/// (k_plus = k_minus = 0) is the monotone walk, counted as 1 directly.
pub fn walk_count(n: u32, sigma0: Direction, x: i64, k_plus: u32, k_minus: u32) -> BigUint {
    if !split_consistent(sigma0, k_plus, k_minus) {
        return BigUint::zero();
    }
    let segments = k_plus + k_minus + 1;
    let sig = sigma0.signum();
    if !walk_exists(n + 1, sigma0, x + sig, segments) {
        return BigUint::zero();
    }
    if segments == 1 {
        return BigUint::one();
    }
    let (a, b, c, d) = count_args(n, sig, x, k_plus, k_minus);
    binomial(a, b) * binomial(c, d)
}

/// Halved arguments of the two coefficients
/// C(n-1+x+sigma0, 2 k_minus + sigma0 - 1) and
/// C(n-1-x-sigma0, 2 k_plus - sigma0 - 1).
/// All four are even and nonnegative once the gates pass with s >= 2.
fn count_args(n: u32, sig: i64, x: i64, k_plus: u32, k_minus: u32) -> (u64, u64, u64, u64) {
    let n = i64::from(n);
    let a = n - 1 + x + sig;
    let b = 2 * i64::from(k_minus) + sig - 1;
    let c = n - 1 - x - sig;
    let d = 2 * i64::from(k_plus) - sig - 1;
    debug_assert!(a >= 0 && b >= 0 && c >= 0 && d >= 0);
    debug_assert!(a % 2 == 0 && b % 2 == 0 && c % 2 == 0 && d % 2 == 0);
    (
        (a / 2) as u64,
        (b / 2) as u64,
        (c / 2) as u64,
        (d / 2) as u64,
    )
}

// ---------------------------------------------------------------------------
// Factorial tables backing probability-table construction
// ---------------------------------------------------------------------------

/// Exact factorials 0! ..= max!.
pub(crate) struct FactTable {
    fact: Vec<BigUint>,
}

impl FactTable {
    pub fn new(max: usize) -> Self {
        let mut fact = Vec::with_capacity(max + 1);
        fact.push(BigUint::one());
        for i in 1..=max {
            let next = &fact[i - 1] * BigUint::from(i);
            fact.push(next);
        }
        FactTable { fact }
    }

    pub fn binom(&self, a: u64, b: u64) -> BigUint {
        if b > a {
            return BigUint::zero();
        }
        let (a, b) = (a as usize, b as usize);
        &self.fact[a] / (&self.fact[b] * &self.fact[a - b])
    }
}

/// Log-factorials ln(0!) ..= ln(max!), accumulated with compensated
/// summation so that downstream binomial differences stay near machine
/// precision even for max ~ 10^4.
pub struct LnFactTable {
    ln_fact: Vec<f64>,
}

impl LnFactTable {
    pub fn new(max: usize) -> Self {
        let mut ln_fact = Vec::with_capacity(max + 1);
        ln_fact.push(0.0);
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for i in 1..=max {
            let term = (i as f64).ln();
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            ln_fact.push(sum);
        }
        LnFactTable { ln_fact }
    }

    pub fn ln_fact(&self, i: u64) -> f64 {
        self.ln_fact[i as usize]
    }

    /// ln binom(a, b); negative infinity when b > a.
    pub fn ln_binom(&self, a: u64, b: u64) -> f64 {
        if b > a {
            return f64::NEG_INFINITY;
        }
        self.ln_fact(a) - self.ln_fact(b) - self.ln_fact(a - b)
    }

    /// ln Gamma(m + 1/2) via Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!).
    /// Requires the table to cover 2m.
    pub fn ln_gamma_half(&self, m: u64) -> f64 {
        const HALF_LN_PI: f64 = 0.5723649429247001; // ln(pi)/2
        self.ln_fact(2 * m) - (m as f64) * std::f64::consts::LN_2 * 2.0 - self.ln_fact(m)
            + HALF_LN_PI
    }
}

/// ln of [`walk_count`], evaluated through a log-factorial table.
/// Negative infinity for impossible signatures.
pub fn ln_walk_count(
    n: u32,
    sigma0: Direction,
    x: i64,
    k_plus: u32,
    k_minus: u32,
    table: &LnFactTable,
) -> f64 {
    if !split_consistent(sigma0, k_plus, k_minus) {
        return f64::NEG_INFINITY;
    }
    let segments = k_plus + k_minus + 1;
    let sig = sigma0.signum();
    if !walk_exists(n + 1, sigma0, x + sig, segments) {
        return f64::NEG_INFINITY;
    }
    if segments == 1 {
        return 0.0;
    }
    let (a, b, c, d) = count_args(n, sig, x, k_plus, k_minus);
    table.ln_binom(a, b) + table.ln_binom(c, d)
}

/// Evaluation backend for walk counts inside probability tables: exact big
/// integers up to the crossover, log-factorials beyond it.
pub(crate) enum CountBackend {
    Exact(FactTable),
    Log(LnFactTable),
}

impl CountBackend {
    pub fn for_n(n: u32) -> Self {
        if n <= crate::tolerances::EXACT_COUNT_MAX_N {
            CountBackend::Exact(FactTable::new(2 * n as usize + 2))
        } else {
            CountBackend::Log(LnFactTable::new(2 * n as usize + 2))
        }
    }

    pub fn ln_count(&self, n: u32, sigma0: Direction, x: i64, k_plus: u32, k_minus: u32) -> f64 {
        match self {
            CountBackend::Log(table) => ln_walk_count(n, sigma0, x, k_plus, k_minus, table),
            CountBackend::Exact(fact) => {
                if !split_consistent(sigma0, k_plus, k_minus) {
                    return f64::NEG_INFINITY;
                }
                let segments = k_plus + k_minus + 1;
                let sig = sigma0.signum();
                if !walk_exists(n + 1, sigma0, x + sig, segments) {
                    return f64::NEG_INFINITY;
                }
                if segments == 1 {
                    return 0.0;
                }
                let (a, b, c, d) = count_args(n, sig, x, k_plus, k_minus);
                let count = fact.binom(a, b) * fact.binom(c, d);
                count
                    .to_f64()
                    .expect("count fits in f64 below crossover")
                    .ln()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn double_fact_c_values() {
        assert_eq!(double_fact_c(6, 2), big(3)); // 48 / (2 * 8)
        assert_eq!(double_fact_c(0, 0), big(1));
        assert_eq!(double_fact_c(0, 2), big(0));
        assert_eq!(double_fact_c(4, 2), big(2));
        assert_eq!(double_fact_c(2, 2), big(1));
        assert_eq!(double_fact_c(-2, -2), big(0));
        assert_eq!(double_fact_c(-1, 0), big(0));
        assert_eq!(double_fact_c(8, -2), big(0));
    }

    #[test]
    fn double_fact_c_even_args_are_binomials() {
        for a in 0..12u64 {
            for b in 0..=a {
                assert_eq!(
                    double_fact_c(2 * a as i64, 2 * b as i64),
                    binomial(a, b),
                    "C({}, {})",
                    2 * a,
                    2 * b
                );
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(300, 150), FactTable::new(300).binom(300, 150));
    }

    #[test]
    fn walk_exists_known_cases() {
        // the two gates of the worked four-step example
        assert!(!walk_exists(5, Direction::Plus, 3, 4));
        assert!(walk_exists(5, Direction::Minus, 1, 4));
        // the all-right walk
        for n in 1..=20 {
            assert!(walk_exists(n, Direction::Plus, i64::from(n), 1));
            assert!(!walk_exists(n, Direction::Plus, i64::from(n) - 2, 1));
        }
        // parity and range
        assert!(!walk_exists(4, Direction::Plus, 3, 2));
        assert!(!walk_exists(4, Direction::Plus, 6, 2));
        assert!(!walk_exists(4, Direction::Plus, 0, 5));
        assert!(!walk_exists(4, Direction::Plus, 0, 0));
    }

    #[test]
    fn split_consistent_values() {
        assert!(split_consistent(Direction::Plus, 2, 1));
        assert!(split_consistent(Direction::Minus, 1, 2));
        assert!(!split_consistent(Direction::Plus, 1, 2));
        assert!(!split_consistent(Direction::Minus, 2, 1));
        assert!(split_consistent(Direction::Plus, 3, 3));
        assert!(split_consistent(Direction::Minus, 0, 0));
        assert!(!split_consistent(Direction::Plus, 4, 2));
    }

    #[test]
    fn segment_count_prob_values() {
        assert_eq!(segment_count_prob(1, 1), BigRational::one());
        assert_eq!(
            segment_count_prob(4, 2),
            BigRational::new(BigInt::from(3), BigInt::from(8))
        );
        assert!(segment_count_prob(4, 0).is_zero());
        assert!(segment_count_prob(4, 5).is_zero());
    }

    #[test]
    fn segment_count_prob_sums_to_one() {
        for n in [1u32, 2, 3, 7, 10] {
            let total: BigRational = (1..=n).map(|s| segment_count_prob(n, s)).sum();
            assert!(total.is_one(), "n = {n}");
        }
    }

    #[test]
    fn walk_count_worked_example() {
        // p_4(2,3): the sigma0 = +1 branch is killed by the existence gate,
        // the sigma0 = -1 branch counts 2 walks.
        assert_eq!(walk_count(4, Direction::Plus, 2, 2, 1), big(0));
        assert_eq!(walk_count(4, Direction::Minus, 2, 1, 2), big(2));
    }

    #[test]
    fn walk_count_monotone_walks() {
        for n in 1..=12u32 {
            assert_eq!(walk_count(n, Direction::Plus, i64::from(n), 0, 0), big(1));
            assert_eq!(walk_count(n, Direction::Minus, -i64::from(n), 0, 0), big(1));
            // only the monotone endpoint carries a zero-reversal walk
            for x in (-i64::from(n)..i64::from(n)).step_by(2) {
                assert_eq!(walk_count(n, Direction::Plus, x, 0, 0), big(0));
            }
        }
    }

    #[test]
    fn walk_count_mirror_symmetry() {
        for n in [3u32, 6, 11, 30] {
            for x in (-i64::from(n)..=i64::from(n)).step_by(2) {
                for kp in 0..=n.min(8) {
                    for km in kp.saturating_sub(1)..=(kp + 1).min(n) {
                        assert_eq!(
                            walk_count(n, Direction::Plus, x, kp, km),
                            walk_count(n, Direction::Minus, -x, km, kp)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn walk_count_sum_rule_small() {
        // sum over all signatures is 2^n per starting direction
        for n in 1..=10u32 {
            for sigma0 in Direction::BOTH {
                let mut total = BigUint::zero();
                for x in (-i64::from(n)..=i64::from(n)).step_by(2) {
                    for kp in 0..=n {
                        for km in 0..=n {
                            total += walk_count(n, sigma0, x, kp, km);
                        }
                    }
                }
                assert_eq!(total, BigUint::from(2u8).pow(n), "n = {n}");
            }
        }
    }

    #[test]
    fn ln_walk_count_matches_exact() {
        let table = LnFactTable::new(200);
        for n in [4u32, 12, 40, 90] {
            for sigma0 in Direction::BOTH {
                for x in (-i64::from(n)..=i64::from(n)).step_by(2) {
                    for kp in 0..=n.min(20) {
                        for km in kp.saturating_sub(1)..=(kp + 1).min(n) {
                            let exact = walk_count(n, sigma0, x, kp, km);
                            let ln = ln_walk_count(n, sigma0, x, kp, km, &table);
                            if exact.is_zero() {
                                assert_eq!(ln, f64::NEG_INFINITY);
                            } else {
                                let reference = exact.to_f64().unwrap().ln();
                                assert!(
                                    (ln - reference).abs() <= 1e-11 * reference.abs().max(1.0),
                                    "n={n} x={x} kp={kp} km={km}: {ln} vs {reference}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ln_fact_table_accuracy() {
        let table = LnFactTable::new(400);
        let exact = FactTable::new(400);
        for i in [1usize, 10, 170, 400] {
            let reference = exact.fact[i].to_f64().unwrap().ln();
            assert!((table.ln_fact(i as u64) - reference).abs() <= 1e-12 * reference.max(1.0));
        }
    }

    #[test]
    fn ln_gamma_half_small_values() {
        let table = LnFactTable::new(20);
        // Gamma(1/2) = sqrt(pi), Gamma(3/2) = sqrt(pi)/2, Gamma(5/2) = 3 sqrt(pi)/4
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((table.ln_gamma_half(0) - sqrt_pi.ln()).abs() < 1e-14);
        assert!((table.ln_gamma_half(1) - (sqrt_pi / 2.0).ln()).abs() < 1e-14);
        assert!((table.ln_gamma_half(2) - (3.0 * sqrt_pi / 4.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn backend_paths_agree() {
        let exact = CountBackend::for_n(30);
        let log = CountBackend::Log(LnFactTable::new(62));
        for x in (-30i64..=30).step_by(2) {
            for kp in 0..=10u32 {
                for km in kp.saturating_sub(1)..=kp + 1 {
                    let a = exact.ln_count(30, Direction::Plus, x, kp, km);
                    let b = log.ln_count(30, Direction::Plus, x, kp, km);
                    if a == f64::NEG_INFINITY {
                        assert_eq!(b, f64::NEG_INFINITY);
                    } else {
                        assert!((a - b).abs() <= 1e-11 * a.abs().max(1.0));
                    }
                }
            }
        }
    }

    #[test]
    fn fact_table_matches_u64() {
        let t = FactTable::new(20);
        assert_eq!(t.fact[20], BigUint::from_u64(2432902008176640000).unwrap());
    }
}
