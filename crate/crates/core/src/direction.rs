//! Regularized two-loop recursion.
//!
//! The search direction is `d(mu) = -H(mu) g`, where `H(mu)` is the L-BFGS
//! inverse built from the initial matrix `gamma / (1 + gamma mu) I` and the
//! shifted pairs `(s_i, y_tilde_i(mu))`. Nothing of size `n x n` is formed;
//! see [`dense`] for the explicit oracle used in tests.

use alloc::vec;
use alloc::vec::Vec;

use crate::curvature::{CurvaturePair, PairHistory};
use crate::error::SolveError;
use crate::linalg::{all_finite, axpy, dot, scale};

/// Inverse curvature scale `gamma_k` of the initial matrix. Always positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingState {
    gamma: f64,
}

impl ScalingState {
    pub fn new(gamma: f64) -> Option<Self> {
        (gamma > 0.0 && gamma.is_finite()).then_some(ScalingState { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

impl Default for ScalingState {
    fn default() -> Self {
        ScalingState { gamma: 1.0 }
    }
}

/// `gamma = s'y / |y|^2` from the newest pair, falling back to
/// `alpha_floor |s|^2 / |y|^2` when `s'y < alpha_floor |s|^2`.
/// With no pair yet the scale is 1.
pub fn gamma_scale(
    last_pair: Option<&CurvaturePair>,
    alpha_floor: f64,
) -> Result<ScalingState, SolveError> {
    debug_assert!(alpha_floor > 0.0);
    let Some(p) = last_pair else {
        return Ok(ScalingState::default());
    };
    if p.yy() == 0.0 {
        return Err(SolveError::NumericalBreakdown);
    }
    let gamma = if p.sy() >= alpha_floor * p.ss() {
        p.sy() / p.yy()
    } else {
        alpha_floor * p.ss() / p.yy()
    };
    ScalingState::new(gamma).ok_or(SolveError::NumericalBreakdown)
}

/// Diagonal of the regularized initial matrix, `gamma / (1 + gamma mu)`.
#[inline]
pub fn initial_diag(gamma: f64, mu: f64) -> f64 {
    gamma / (1.0 + gamma * mu)
}

/// Computes `d = -H(mu) g` in `O(m n)`.
pub fn two_loop_direction(
    history: &PairHistory,
    gradient: &[f64],
    mu: f64,
    scaling: ScalingState,
) -> Result<Vec<f64>, SolveError> {
    let m = history.len();
    let mut q = gradient.to_vec();
    let mut rho = vec![0.0; m];
    let mut a = vec![0.0; m];

    for (i, pair) in history.iter().enumerate().rev() {
        debug_assert_eq!(pair.dim(), gradient.len());
        let r = 1.0 / pair.shifted_sy(mu);
        if !r.is_finite() {
            return Err(SolveError::NumericalBreakdown);
        }
        let ai = r * dot(pair.s(), &q);
        // q -= ai * (y + c s)
        axpy(-ai, pair.y(), &mut q);
        axpy(-ai * pair.shift_coefficient(mu), pair.s(), &mut q);
        rho[i] = r;
        a[i] = ai;
    }

    scale(initial_diag(scaling.gamma(), mu), &mut q);

    for (i, pair) in history.iter().enumerate() {
        let beta = rho[i] * pair.shifted_y_dot(mu, &q);
        axpy(a[i] - beta, pair.s(), &mut q);
    }

    scale(-1.0, &mut q);
    if all_finite(&q) {
        Ok(q)
    } else {
        Err(SolveError::NumericalBreakdown)
    }
}

/// Explicit dense BFGS matrix, for checking the two-loop recursion.
pub mod dense {
    use super::*;
    use crate::curvature::shifted_curvature;

    /// Largest dimension the oracle accepts.
    pub const MAX_DIM: usize = 64;

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub enum OracleError {
        TooLarge,
        /// `s'Bs <= 0` or `s'y_tilde <= 0` in some update.
        IndefiniteUpdate,
    }

    /// Row-major square matrix.
    #[derive(Debug, Clone, PartialEq)]
    pub struct DenseMatrix {
        n: usize,
        data: Vec<f64>,
    }

    impl DenseMatrix {
        pub fn identity_scaled(n: usize, v: f64) -> Self {
            let mut data = vec![0.0; n * n];
            for i in 0..n {
                data[i * n + i] = v;
            }
            DenseMatrix { n, data }
        }

        pub fn dim(&self) -> usize {
            self.n
        }

        pub fn get(&self, i: usize, j: usize) -> f64 {
            self.data[i * self.n + j]
        }

        pub fn row(&self, i: usize) -> &[f64] {
            &self.data[i * self.n..(i + 1) * self.n]
        }

        pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
            (0..self.n).map(|i| dot(self.row(i), v)).collect()
        }

        pub fn trace(&self) -> f64 {
            (0..self.n).map(|i| self.get(i, i)).sum()
        }

        fn rank_one(&mut self, coef: f64, u: &[f64]) {
            for i in 0..self.n {
                for j in 0..self.n {
                    self.data[i * self.n + j] += coef * u[i] * u[j];
                }
            }
        }
    }

    /// `B(mu)` from `B0 = (1 + gamma mu)/gamma I` and the shifted pairs,
    /// oldest first.
    pub fn dense_bfgs_oracle(
        history: &PairHistory,
        mu: f64,
        scaling: ScalingState,
        n: usize,
    ) -> Result<DenseMatrix, OracleError> {
        if n > MAX_DIM {
            return Err(OracleError::TooLarge);
        }
        let mut b = DenseMatrix::identity_scaled(n, 1.0 / initial_diag(scaling.gamma(), mu));
        for pair in history.iter() {
            let (y_tilde, sty) = shifted_curvature(pair, mu);
            let bs = b.mul_vec(pair.s());
            let sbs = dot(pair.s(), &bs);
            if !(sbs > 0.0 && sty > 0.0) {
                return Err(OracleError::IndefiniteUpdate);
            }
            b.rank_one(-1.0 / sbs, &bs);
            b.rank_one(1.0 / sty, &y_tilde);
        }
        Ok(b)
    }
}
