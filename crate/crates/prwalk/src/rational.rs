//! Exact-rational evaluation of the joint distribution.
//!
//! When the persistence probabilities are supplied as exact rationals
//! (decimal strings or p/q fractions), every probability in the model is a
//! rational number: walk counts are integers, path weights are products of
//! rational powers, and the stationary weights are rational. This path
//! backs the CLI's exact precision mode and the strictest tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::walk_count;
use crate::error::{Error, Result};
use crate::exact::reversal_split;
use crate::model::{on_support, Direction, ModelParams};

/// Persistence probabilities as exact rationals in (0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalParams {
    eps_r: BigRational,
    eps_l: BigRational,
}

fn rational_pow(base: &BigRational, exp: u64) -> BigRational {
    if exp > u32::MAX as u64 {
        panic!("exponent too large");
    }
    BigRational::new(base.numer().pow(exp as u32), base.denom().pow(exp as u32))
}

/// Parse "0.25", ".25", or "1/4" into an exact rational.
fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    let int_part = if int_part.is_empty() { "0" } else { int_part };
    let int: BigInt = int_part.parse().ok()?;
    let mut value = BigRational::from_integer(int);
    if !frac_part.is_empty() {
        if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let frac: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
        let frac = BigRational::new(frac, scale);
        if value.is_negative() {
            value -= frac;
        } else {
            value += frac;
        }
    }
    Some(value)
}

impl RationalParams {
    pub fn new(eps_r: BigRational, eps_l: BigRational) -> Result<Self> {
        for (name, v) in [("eps_r", &eps_r), ("eps_l", &eps_l)] {
            if !(v > &BigRational::zero() && v < &BigRational::one()) {
                return Err(Error::InvalidParam {
                    name,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(RationalParams { eps_r, eps_l })
    }

    /// Parse a pair of decimal or p/q strings.
    pub fn from_strs(eps_r: &str, eps_l: &str) -> Result<Self> {
        let er = parse_rational(eps_r).ok_or(Error::InvalidParam {
            name: "eps_r",
            value: f64::NAN,
        })?;
        let el = parse_rational(eps_l).ok_or(Error::InvalidParam {
            name: "eps_l",
            value: f64::NAN,
        })?;
        RationalParams::new(er, el)
    }

    pub fn eps_r(&self) -> &BigRational {
        &self.eps_r
    }

    pub fn eps_l(&self) -> &BigRational {
        &self.eps_l
    }

    /// Nearest double-precision parameters.
    pub fn to_f64_params(&self) -> ModelParams {
        ModelParams::new(self.eps_r.to_f64().unwrap(), self.eps_l.to_f64().unwrap())
            .expect("rational params are interior")
    }

    /// Exact stationary weights (p_plus, p_minus).
    pub fn stationary(&self) -> (BigRational, BigRational) {
        let two = BigRational::from_integer(BigInt::from(2));
        let denom = &two - &self.eps_r - &self.eps_l;
        (
            (BigRational::one() - &self.eps_l) / &denom,
            (BigRational::one() - &self.eps_r) / &denom,
        )
    }

    /// Probability of persisting in direction `dir`.
    pub fn persist_prob(&self, dir: Direction) -> BigRational {
        match dir {
            Direction::Plus => self.eps_r.clone(),
            Direction::Minus => self.eps_l.clone(),
        }
    }
}

/// Exact path weight: the probability of any single walk with the given
/// endpoint and reversal split, written with nonnegative exponents as
/// eps_r^(right - k_minus) eps_l^(left - k_plus) (1-eps_r)^k_plus
/// (1-eps_l)^k_minus. Only valid for splits with a positive walk count.
fn gamma_weight_rational(
    n: u32,
    x: i64,
    k_plus: u32,
    k_minus: u32,
    params: &RationalParams,
) -> BigRational {
    let right = ((i64::from(n) + x) / 2) as u64;
    let left = ((i64::from(n) - x) / 2) as u64;
    debug_assert!(u64::from(k_minus) <= right && u64::from(k_plus) <= left);
    let one = BigRational::one();
    rational_pow(&params.eps_r, right - u64::from(k_minus))
        * rational_pow(&params.eps_l, left - u64::from(k_plus))
        * rational_pow(&(&one - &params.eps_r), u64::from(k_plus))
        * rational_pow(&(&one - &params.eps_l), u64::from(k_minus))
}

/// Exact conditional probability q_n^{sigma0}(x, k).
pub fn q_pmf_rational(
    n: u32,
    sigma0: Direction,
    x: i64,
    k: u32,
    params: &RationalParams,
) -> BigRational {
    if !on_support(n, x, k) {
        return BigRational::zero();
    }
    let (k_plus, k_minus) = reversal_split(sigma0, k);
    let count = walk_count(n, sigma0, x, k_plus, k_minus);
    if count.is_zero() {
        return BigRational::zero();
    }
    BigRational::from_integer(count.into()) * gamma_weight_rational(n, x, k_plus, k_minus, params)
}

/// Exact joint probability p_n(x, k).
pub fn joint_pmf_rational(n: u32, x: i64, k: u32, params: &RationalParams) -> BigRational {
    let (p_plus, p_minus) = params.stationary();
    p_plus * q_pmf_rational(n, Direction::Plus, x, k, params)
        + p_minus * q_pmf_rational(n, Direction::Minus, x, k, params)
}
