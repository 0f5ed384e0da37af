//! Ground-truth machinery: exhaustive path enumeration for small n and
//! seeded Monte Carlo simulation for statistical validation at large n.
//!
//! Enumeration sums exact path probabilities over all 2^n sign sequences
//! and is the canonical oracle for every other distribution path in the
//! crate. Simulation is deterministic given the seed: walks are assigned to
//! fixed-size blocks and each block draws from its own counter-derived
//! stream, so results do not depend on thread scheduling.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::JointPmf;
use crate::model::{Direction, ModelParams, WalkOutcome};
use crate::rational::RationalParams;
use crate::tolerances::{ENUMERATION_MAX_N, ENUMERATION_RATIONAL_MAX_N};

/// How the pre-walk direction sigma_0 is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sigma0Mode {
    /// Drawn from the stationary distribution of the increment chain.
    Stationary,
    ForcedPlus,
    ForcedMinus,
}

impl Sigma0Mode {
    /// Starting directions with their weights under this mode.
    fn weighted(self, params: &ModelParams) -> Vec<(Direction, f64)> {
        match self {
            Sigma0Mode::Stationary => {
                let stat = params.stationary();
                vec![
                    (Direction::Plus, stat.p_plus),
                    (Direction::Minus, stat.p_minus),
                ]
            }
            Sigma0Mode::ForcedPlus => vec![(Direction::Plus, 1.0)],
            Sigma0Mode::ForcedMinus => vec![(Direction::Minus, 1.0)],
        }
    }
}

/// Configuration of one simulation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub n: u32,
    pub num_walks: u64,
    pub seed: u64,
    pub params: ModelParams,
    pub sigma0_mode: Sigma0Mode,
}

/// Walks per RNG stream. Fixing the block size makes outcome streams
/// bit-identical for a given config no matter how work is scheduled.
const WALKS_PER_BLOCK: u64 = 1 << 14;

fn draw_sigma0(rng: &mut ChaCha12Rng, mode: Sigma0Mode, params: &ModelParams) -> Direction {
    match mode {
        Sigma0Mode::ForcedPlus => Direction::Plus,
        Sigma0Mode::ForcedMinus => Direction::Minus,
        Sigma0Mode::Stationary => {
            if rng.random_bool(params.stationary().p_plus) {
                Direction::Plus
            } else {
                Direction::Minus
            }
        }
    }
}

fn walk_once(
    rng: &mut ChaCha12Rng,
    config: &SimConfig,
    signs: Option<&mut Vec<Direction>>,
) -> WalkOutcome {
    let sigma0 = draw_sigma0(rng, config.sigma0_mode, &config.params);
    let mut dir = sigma0;
    let mut x = 0i64;
    let mut k = 0u32;
    let mut signs = signs;
    for _ in 0..config.n {
        let persist = rng.random_bool(config.params.persist_prob(dir));
        if !persist {
            dir = dir.flip();
            k += 1;
        }
        x += dir.signum();
        if let Some(buf) = signs.as_deref_mut() {
            buf.push(dir);
        }
    }
    WalkOutcome {
        sigma0,
        x,
        k,
        n: config.n,
    }
}

/// Run the configured number of walks. Deterministic given the seed.
pub fn simulate(config: &SimConfig) -> Vec<WalkOutcome> {
    let total = config.num_walks as usize;
    let mut out = vec![
        WalkOutcome {
            sigma0: Direction::Plus,
            x: 0,
            k: 0,
            n: config.n
        };
        total
    ];
    out.par_chunks_mut(WALKS_PER_BLOCK as usize)
        .enumerate()
        .for_each(|(block, chunk)| {
            let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
            rng.set_stream(block as u64);
            for slot in chunk.iter_mut() {
                *slot = walk_once(&mut rng, config, None);
            }
        });
    out
}

/// Like [`simulate`], additionally returning each walk's sign sequence.
/// Intended for diagnostics; the outcome stream is identical to
/// [`simulate`] with the same config.
pub fn simulate_with_signs(config: &SimConfig) -> Vec<(WalkOutcome, Vec<Direction>)> {
    let total = config.num_walks as usize;
    let mut out = vec![
        (
            WalkOutcome {
                sigma0: Direction::Plus,
                x: 0,
                k: 0,
                n: config.n
            },
            Vec::new()
        );
        total
    ];
    out.par_chunks_mut(WALKS_PER_BLOCK as usize)
        .enumerate()
        .for_each(|(block, chunk)| {
            let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
            rng.set_stream(block as u64);
            for slot in chunk.iter_mut() {
                let mut signs = Vec::with_capacity(config.n as usize);
                slot.0 = walk_once(&mut rng, config, Some(&mut signs));
                slot.1 = signs;
            }
        });
    out
}

fn check_enum_bound(n: u32, max: u32) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::EnumerationTooLarge { n, max });
    }
    Ok(())
}

/// Exact joint distribution by summing path probabilities over all 2^n
/// sign sequences (weighted over sigma_0 per the mode). The canonical
/// oracle for the closed form and the recursion.
pub fn enumerate_exact(n: u32, params: &ModelParams, mode: Sigma0Mode) -> Result<JointPmf> {
    check_enum_bound(n, ENUMERATION_MAX_N)?;
    let size = n as usize + 1;
    let mut dense = vec![vec![0.0f64; size]; size];
    for (sigma0, weight) in mode.weighted(params) {
        if weight == 0.0 {
            continue;
        }
        for mask in 0u64..(1u64 << n) {
            let mut prev = sigma0;
            let mut prob = weight;
            let mut x = 0i64;
            let mut k = 0u32;
            for j in 0..n {
                let step = if mask >> j & 1 == 1 {
                    Direction::Plus
                } else {
                    Direction::Minus
                };
                let persist = params.persist_prob(prev);
                prob *= if step == prev { persist } else { 1.0 - persist };
                if step != prev {
                    k += 1;
                }
                x += step.signum();
                prev = step;
            }
            let i = ((x + i64::from(n)) / 2) as usize;
            dense[i][k as usize] += prob;
        }
    }
    Ok(JointPmf::from_linear_rows(n, params, dense))
}

/// Exact rational joint distribution by enumeration; map keyed by (x, k).
pub fn enumerate_exact_rational(
    n: u32,
    params: &RationalParams,
    mode: Sigma0Mode,
) -> Result<BTreeMap<(i64, u32), BigRational>> {
    check_enum_bound(n, ENUMERATION_RATIONAL_MAX_N)?;
    let (p_plus, p_minus) = params.stationary();
    let weighted: Vec<(Direction, BigRational)> = match mode {
        Sigma0Mode::Stationary => vec![(Direction::Plus, p_plus), (Direction::Minus, p_minus)],
        Sigma0Mode::ForcedPlus => vec![(Direction::Plus, BigRational::from_integer(1.into()))],
        Sigma0Mode::ForcedMinus => vec![(Direction::Minus, BigRational::from_integer(1.into()))],
    };
    let one = BigRational::from_integer(1.into());
    let mut out: BTreeMap<(i64, u32), BigRational> = BTreeMap::new();
    for (sigma0, weight) in weighted {
        for mask in 0u64..(1u64 << n) {
            let mut prev = sigma0;
            let mut prob = weight.clone();
            let mut x = 0i64;
            let mut k = 0u32;
            for j in 0..n {
                let step = if mask >> j & 1 == 1 {
                    Direction::Plus
                } else {
                    Direction::Minus
                };
                let persist = params.persist_prob(prev);
                prob *= if step == prev {
                    persist
                } else {
                    &one - &persist
                };
                if step != prev {
                    k += 1;
                }
                x += step.signum();
                prev = step;
            }
            *out.entry((x, k)).or_insert_with(BigRational::zero) += prob;
        }
    }
    Ok(out)
}

/// Integer walk counts by (x, k_plus, k_minus) for a fixed sigma_0,
/// from exhaustive enumeration. Oracle for the closed-form counts.
pub fn enumerate_counts(n: u32, sigma0: Direction) -> Result<BTreeMap<(i64, u32, u32), u64>> {
    check_enum_bound(n, ENUMERATION_MAX_N)?;
    let mut out = BTreeMap::new();
    for mask in 0u64..(1u64 << n) {
        let mut prev = sigma0;
        let mut x = 0i64;
        let mut k_plus = 0u32;
        let mut k_minus = 0u32;
        for j in 0..n {
            let step = if mask >> j & 1 == 1 {
                Direction::Plus
            } else {
                Direction::Minus
            };
            if step != prev {
                match prev {
                    Direction::Plus => k_plus += 1,
                    Direction::Minus => k_minus += 1,
                }
            }
            x += step.signum();
            prev = step;
        }
        *out.entry((x, k_plus, k_minus)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Walk counts by (first step direction, endpoint, number of maximal
/// equal-direction runs), from exhaustive enumeration. The run count here
/// is a property of the steps alone; sigma_0 plays no role.
pub fn enumerate_segments(n: u32) -> Result<BTreeMap<(Direction, i64, u32), u64>> {
    check_enum_bound(n, ENUMERATION_MAX_N)?;
    let mut out = BTreeMap::new();
    for mask in 0u64..(1u64 << n) {
        let mut x = 0i64;
        let mut segments = 0u32;
        let mut prev: Option<Direction> = None;
        let mut first = Direction::Plus;
        for j in 0..n {
            let step = if mask >> j & 1 == 1 {
                Direction::Plus
            } else {
                Direction::Minus
            };
            if prev != Some(step) {
                segments += 1;
            }
            if j == 0 {
                first = step;
            }
            x += step.signum();
            prev = Some(step);
        }
        *out.entry((first, x, segments)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Empirical joint distribution of (x, k) from simulated outcomes.
#[derive(Debug, Clone)]
pub struct EmpiricalDist {
    n: u32,
    counts: BTreeMap<(i64, u32), u64>,
    total: u64,
}

impl EmpiricalDist {
    pub fn from_outcomes(outcomes: &[WalkOutcome]) -> Result<Self> {
        let Some(first) = outcomes.first() else {
            return Err(Error::InsufficientData(
                "empirical distribution needs at least one outcome".into(),
            ));
        };
        let n = first.n;
        let mut counts = BTreeMap::new();
        for o in outcomes {
            if o.n != n {
                return Err(Error::InsufficientData(format!(
                    "mixed walk lengths in outcome set: {} and {}",
                    n, o.n
                )));
            }
            *counts.entry((o.x, o.k)).or_insert(0) += 1;
        }
        Ok(EmpiricalDist {
            n,
            counts,
            total: outcomes.len() as u64,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, x: i64, k: u32) -> u64 {
        self.counts.get(&(x, k)).copied().unwrap_or(0)
    }

    pub fn prob(&self, x: i64, k: u32) -> f64 {
        self.count(x, k) as f64 / self.total as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u32, u64)> + '_ {
        self.counts.iter().map(|(&(x, k), &c)| (x, k, c))
    }

    pub fn mean_x(&self) -> f64 {
        let sum: f64 = self
            .counts
            .iter()
            .map(|(&(x, _), &c)| x as f64 * c as f64)
            .sum();
        sum / self.total as f64
    }

    pub fn mean_k(&self) -> f64 {
        let sum: f64 = self
            .counts
            .iter()
            .map(|(&(_, k), &c)| f64::from(k) * c as f64)
            .sum();
        sum / self.total as f64
    }

    /// Total-variation distance to an exact table: half the sum of
    /// absolute differences over the union of supports.
    pub fn tv_distance(&self, exact: &JointPmf) -> f64 {
        let mut acc = 0.0;
        let mut seen = 0u64;
        for entry in exact.entries() {
            let emp = self.prob(entry.x, entry.k);
            acc += (emp - entry.prob).abs();
            if emp > 0.0 {
                seen += self.count(entry.x, entry.k);
            }
        }
        // empirical mass on cells the exact table does not carry
        let missed = self.total - seen;
        acc += missed as f64 / self.total as f64;
        0.5 * acc
    }
}
