//! Ratio test for the regularized step.

use alloc::collections::VecDeque;

use crate::error::SolveError;
use crate::linalg::dot;

/// The last `M + 1` accepted objective values, newest last.
#[derive(Debug, Clone)]
pub struct FWindow {
    values: VecDeque<f64>,
    capacity: usize,
}

impl FWindow {
    /// Window for nonmonotone memory `m_nonmono` (holds `m_nonmono + 1` values).
    pub fn new(m_nonmono: usize) -> Self {
        let capacity = m_nonmono + 1;
        FWindow {
            values: VecDeque::with_capacity(capacity),
            capacity,
        }
    }

    pub fn from_values(m_nonmono: usize, values: &[f64]) -> Self {
        let mut w = FWindow::new(m_nonmono);
        for &v in values {
            w.push(v);
        }
        w
    }

    pub fn push(&mut self, f: f64) {
        if self.values.len() == self.capacity {
            self.values.pop_front();
        }
        self.values.push_back(f);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn latest(&self) -> Option<f64> {
        self.values.back().copied()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &f64> {
        self.values.iter()
    }
}

/// `f(x_k) - q_k(d) = -g'd / 2`, using `d' H^{-1} d = -d'g`.
///
/// A zero gradient gives 0 (the caller should already have stopped); any
/// other non-positive result means `d` is not a descent direction.
pub fn model_reduction(gradient: &[f64], d: &[f64]) -> Result<f64, SolveError> {
    let red = -0.5 * dot(gradient, d);
    if gradient.iter().all(|&g| g == 0.0) {
        return Ok(0.0);
    }
    if red > 0.0 && red.is_finite() {
        Ok(red)
    } else {
        Err(SolveError::NonpositiveModelReduction)
    }
}

/// `(f_ref - f_trial) / model_red`.
#[inline]
pub fn acceptance_ratio(f_ref: f64, f_trial: f64, model_red: f64) -> f64 {
    debug_assert!(model_red > 0.0);
    (f_ref - f_trial) / model_red
}

/// Reference value for the ratio numerator at iteration `k`.
///
/// For `k >= M` this is the maximum of the last `min(k, M) + 1` accepted
/// values. Below that (and always for `M = 0`) it is `f(x_k)` itself.
pub fn nonmonotone_reference(window: &FWindow, k: usize, m_nonmono: usize) -> f64 {
    let current = window.latest().expect("objective window is empty");
    if m_nonmono == 0 || k < m_nonmono {
        return current;
    }
    let span = k.min(m_nonmono) + 1;
    window
        .iter()
        .rev()
        .take(span)
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}
