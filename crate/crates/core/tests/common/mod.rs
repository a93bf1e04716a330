#![allow(dead_code)]

use std::cell::Cell;

use rand::Rng;
use regulus_core::{Objective, PairHistory};

/// Forwards to `inner` and counts calls independently of the solver.
pub struct Counting<F> {
    pub inner: F,
    pub f: Cell<usize>,
    pub g: Cell<usize>,
}

impl<F> Counting<F> {
    pub fn new(inner: F) -> Self {
        Counting {
            inner,
            f: Cell::new(0),
            g: Cell::new(0),
        }
    }
}

impl<F: Objective> Objective for Counting<F> {
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }
    fn value(&self, x: &[f64]) -> f64 {
        self.f.set(self.f.get() + 1);
        self.inner.value(x)
    }
    fn gradient(&self, x: &[f64], grad: &mut [f64]) {
        self.g.set(self.g.get() + 1);
        self.inner.gradient(x, grad)
    }
    fn value_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        self.f.set(self.f.get() + 1);
        self.g.set(self.g.get() + 1);
        self.inner.value_gradient(x, grad)
    }
}

pub fn gaussian_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Up to `max_pairs` pairs with `s'y > 0`, drawn from a random SPD-ish
/// model so the history looks like one a solver would build.
pub fn random_history<R: Rng>(rng: &mut R, n: usize, max_pairs: usize) -> PairHistory {
    let k = rng.gen_range(0..=max_pairs);
    let mut h = PairHistory::new(max_pairs.max(1));
    while h.len() < k {
        let s = gaussian_vec(rng, n);
        let noise = gaussian_vec(rng, n);
        let scale: f64 = rng.gen_range(0.1..10.0);
        let y: Vec<f64> = s
            .iter()
            .zip(&noise)
            .map(|(s, e)| scale * s + 0.3 * e)
            .collect();
        let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
        if sy > 1e-3 {
            h.push_pair(s, y).unwrap();
        }
    }
    h
}
