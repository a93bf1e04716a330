//! Curvature pair storage.
//!
//! Only the raw `(s, y)` are stored. The regularized gradient difference
//! `y + (max(0, -s'y/|s|^2) + mu) s` is a rank-one shift of the stored pair,
//! so it is formed on the fly for whatever `mu` the caller is trying.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{all_finite, dot};

/// One displacement / gradient-difference pair with cached inner products.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvaturePair {
    s: Vec<f64>,
    y: Vec<f64>,
    sy: f64,
    ss: f64,
    yy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRejected {
    ZeroDisplacement,
    NonFinite,
    LengthMismatch,
}

impl fmt::Display for PairRejected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairRejected::ZeroDisplacement => "zero displacement",
            PairRejected::NonFinite => "non-finite pair entry",
            PairRejected::LengthMismatch => "s and y lengths differ",
        })
    }
}

impl CurvaturePair {
    pub fn new(s: Vec<f64>, y: Vec<f64>) -> Result<Self, PairRejected> {
        if s.len() != y.len() {
            return Err(PairRejected::LengthMismatch);
        }
        if !all_finite(&s) || !all_finite(&y) {
            return Err(PairRejected::NonFinite);
        }
        let ss = dot(&s, &s);
        if ss == 0.0 {
            return Err(PairRejected::ZeroDisplacement);
        }
        let sy = dot(&s, &y);
        let yy = dot(&y, &y);
        if !sy.is_finite() || !ss.is_finite() || !yy.is_finite() {
            return Err(PairRejected::NonFinite);
        }
        Ok(CurvaturePair { s, y, sy, ss, yy })
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn sy(&self) -> f64 {
        self.sy
    }

    pub fn ss(&self) -> f64 {
        self.ss
    }

    pub fn yy(&self) -> f64 {
        self.yy
    }

    pub fn dim(&self) -> usize {
        self.s.len()
    }

    /// Coefficient `c` with `y_tilde(mu) = y + c s`.
    #[inline]
    pub fn shift_coefficient(&self, mu: f64) -> f64 {
        (-self.sy / self.ss).max(0.0) + mu
    }

    /// `s' y_tilde(mu) = max(0, s'y) + mu |s|^2`.
    #[inline]
    pub fn shifted_sy(&self, mu: f64) -> f64 {
        self.sy.max(0.0) + mu * self.ss
    }

    /// `y_tilde(mu)' v` without forming `y_tilde`.
    #[inline]
    pub fn shifted_y_dot(&self, mu: f64, v: &[f64]) -> f64 {
        dot(&self.y, v) + self.shift_coefficient(mu) * dot(&self.s, v)
    }
}

/// Returns `(y_tilde, s' y_tilde)` for the pair at regularization `mu >= 0`.
///
/// When `s'y >= 0` this is the plain shift `y + mu s`; otherwise the
/// negative curvature is first lifted to zero so that `s' y_tilde >= mu |s|^2`.
pub fn shifted_curvature(pair: &CurvaturePair, mu: f64) -> (Vec<f64>, f64) {
    debug_assert!(mu >= 0.0);
    let c = pair.shift_coefficient(mu);
    let y_tilde = pair.y.iter().zip(&pair.s).map(|(y, s)| y + c * s).collect();
    (y_tilde, pair.shifted_sy(mu))
}

/// FIFO window of the last `capacity` pairs, oldest first.
#[derive(Debug, Clone)]
pub struct PairHistory {
    pairs: VecDeque<CurvaturePair>,
    capacity: usize,
}

impl PairHistory {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "history capacity must be positive");
        PairHistory {
            pairs: VecDeque::with_capacity(capacity),
            capacity,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Validates and appends `(s, y)`, evicting the oldest pair when full.
    /// A rejected pair leaves the history untouched.
    pub fn push_pair(&mut self, s: Vec<f64>, y: Vec<f64>) -> Result<(), PairRejected> {
        if let Some(first) = self.pairs.front() {
            if first.dim() != s.len() {
                return Err(PairRejected::LengthMismatch);
            }
        }
        let pair = CurvaturePair::new(s, y)?;
        self.push(pair);
        Ok(())
    }

    pub fn push(&mut self, pair: CurvaturePair) {
        if self.pairs.len() == self.capacity {
            self.pairs.pop_front();
        }
        self.pairs.push_back(pair);
    }

    /// Oldest to newest.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &CurvaturePair> + ExactSizeIterator {
        self.pairs.iter()
    }

    pub fn newest(&self) -> Option<&CurvaturePair> {
        self.pairs.back()
    }

    pub fn clear(&mut self) {
        self.pairs.clear();
    }
}
