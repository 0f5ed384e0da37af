//! Model parameters, the increment Markov chain, and its stationary
//! distribution.
//!
//! The walk lives on the one-dimensional integer lattice. A step continues
//! in the previous direction with probability `eps_r` (when moving right)
//! or `eps_l` (when moving left), and reverses otherwise. The increments
//! form a two-state Markov chain; the walk itself is not Markovian in
//! position alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Direction of a step (or of the pre-walk state sigma_0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    /// +1 or -1.
    pub fn signum(self) -> i64 {
        match self {
            Direction::Plus => 1,
            Direction::Minus => -1,
        }
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    }

    pub fn from_signum(s: i64) -> Option<Direction> {
        match s {
            1 => Some(Direction::Plus),
            -1 => Some(Direction::Minus),
            _ => None,
        }
    }

    pub const BOTH: [Direction; 2] = [Direction::Plus, Direction::Minus];
}

/// The two persistence probabilities. Both must lie strictly inside (0, 1);
/// boundary values degenerate the run-length distributions and are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    eps_r: f64,
    eps_l: f64,
}

impl ModelParams {
    pub fn new(eps_r: f64, eps_l: f64) -> Result<Self> {
        if !(eps_r > 0.0 && eps_r < 1.0) {
            return Err(Error::InvalidParam {
                name: "eps_r",
                value: eps_r,
            });
        }
        if !(eps_l > 0.0 && eps_l < 1.0) {
            return Err(Error::InvalidParam {
                name: "eps_l",
                value: eps_l,
            });
        }
        Ok(ModelParams { eps_r, eps_l })
    }

    pub fn eps_r(&self) -> f64 {
        self.eps_r
    }

    pub fn eps_l(&self) -> f64 {
        self.eps_l
    }

    /// Row-stochastic transition matrix of the increment chain, rows and
    /// columns ordered (+, -):
    ///
    /// ```text
    /// [ eps_r       1 - eps_r ]
    /// [ 1 - eps_l   eps_l     ]
    /// ```
    pub fn transition_matrix(&self) -> [[f64; 2]; 2] {
        [
            [self.eps_r, 1.0 - self.eps_r],
            [1.0 - self.eps_l, self.eps_l],
        ]
    }

    /// Stationary distribution of the increment chain.
    pub fn stationary(&self) -> StationaryDist {
        let denom = 2.0 - self.eps_r - self.eps_l;
        StationaryDist {
            p_plus: (1.0 - self.eps_l) / denom,
            p_minus: (1.0 - self.eps_r) / denom,
        }
    }

    /// Parameters with the two directions exchanged. Mirror-symmetric
    /// quantities can be tested through this map.
    pub fn mirrored(&self) -> ModelParams {
        ModelParams {
            eps_r: self.eps_l,
            eps_l: self.eps_r,
        }
    }

    /// Probability that a step keeps going when the previous direction
    /// was `dir`.
    pub fn persist_prob(&self, dir: Direction) -> f64 {
        match dir {
            Direction::Plus => self.eps_r,
            Direction::Minus => self.eps_l,
        }
    }
}

/// Stationary distribution of the increment chain; the left eigenvector of
/// the transition matrix with eigenvalue 1, normalized to total mass 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryDist {
    pub p_plus: f64,
    pub p_minus: f64,
}

impl StationaryDist {
    pub fn prob(&self, dir: Direction) -> f64 {
        match dir {
            Direction::Plus => self.p_plus,
            Direction::Minus => self.p_minus,
        }
    }
}

/// Summary of one realized walk: pre-walk direction, endpoint, reversal
/// count, and the number of steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkOutcome {
    pub sigma0: Direction,
    pub x: i64,
    pub k: u32,
    pub n: u32,
}

impl WalkOutcome {
    /// Support constraints: |x| <= n, x = n (mod 2), k <= n.
    pub fn is_valid(&self) -> bool {
        let n = i64::from(self.n);
        self.x.abs() <= n && (n - self.x) % 2 == 0 && u64::from(self.k) <= self.n as u64
    }
}

/// True when (x, k) can carry probability mass for an n-step walk:
/// |x| <= n, x and n of equal parity, 0 <= k <= n.
pub fn on_support(n: u32, x: i64, k: u32) -> bool {
    let n_i = i64::from(n);
    x.abs() <= n_i && (n_i - x).rem_euclid(2) == 0 && k <= n
}
