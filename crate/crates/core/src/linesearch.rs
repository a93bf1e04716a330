//! Strong Wolfe line search.
//!
//! Bracketing phase followed by a zoom that uses safeguarded cubic
//! interpolation, in the style of Moré and Thuente / Nocedal and Wright
//! (Algorithms 3.5 and 3.6). On success the returned step satisfies
//!
//! ```text
//! phi(a) <= phi(0) + c1 a phi'(0)
//! |phi'(a)| <= c2 |phi'(0)|
//! ```
//!
//! and is always the most recent point handed to the [`LineFunction`], so
//! callers can keep whatever they computed alongside the last evaluation.

use alloc::vec::Vec;

use crate::error::SolveError;

/// Smallest step or bracket width the search will work with.
pub const ALPHA_MIN: f64 = 1e-20;
/// Largest step the bracketing phase will try.
pub const ALPHA_MAX: f64 = 1e20;

/// `alpha -> (phi(alpha), phi'(alpha))` along a fixed direction.
pub trait LineFunction {
    fn eval(&mut self, alpha: f64) -> Result<(f64, f64), SolveError>;
}

impl<F> LineFunction for F
where
    F: FnMut(f64) -> Result<(f64, f64), SolveError>,
{
    fn eval(&mut self, alpha: f64) -> Result<(f64, f64), SolveError> {
        self(alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WolfeParams {
    pub c1: f64,
    pub c2: f64,
    pub alpha_init: f64,
    /// Maximum number of evaluations of the line function.
    pub max_iters: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSearchOutcome {
    pub alpha: f64,
    pub phi: f64,
    pub dphi: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    alpha: f64,
    phi: f64,
    dphi: f64,
}

struct Search<'a, L> {
    f: &'a mut L,
    phi0: f64,
    dphi0: f64,
    params: WolfeParams,
    evals: usize,
}

impl<L: LineFunction> Search<'_, L> {
    fn sample(&mut self, alpha: f64) -> Result<Sample, SolveError> {
        if self.evals >= self.params.max_iters {
            return Err(SolveError::LineSearchFailure);
        }
        self.evals += 1;
        let (phi, dphi) = self.f.eval(alpha)?;
        Ok(Sample { alpha, phi, dphi })
    }

    fn armijo_fails(&self, s: &Sample) -> bool {
        !(s.phi <= self.phi0 + self.params.c1 * s.alpha * self.dphi0)
    }

    fn curvature_holds(&self, s: &Sample) -> bool {
        s.dphi.abs() <= self.params.c2 * self.dphi0.abs()
    }

    fn done(&self, s: Sample) -> LineSearchOutcome {
        LineSearchOutcome {
            alpha: s.alpha,
            phi: s.phi,
            dphi: s.dphi,
            evals: self.evals,
        }
    }

    fn run(&mut self, brackets: &mut dyn FnMut(f64, f64)) -> Result<LineSearchOutcome, SolveError> {
        let mut prev = Sample {
            alpha: 0.0,
            phi: self.phi0,
            dphi: self.dphi0,
        };
        let mut alpha = self.params.alpha_init;
        let mut first = true;
        loop {
            if !(ALPHA_MIN..=ALPHA_MAX).contains(&alpha) {
                return Err(SolveError::LineSearchFailure);
            }
            let cur = self.sample(alpha)?;
            if self.armijo_fails(&cur) || (!first && cur.phi >= prev.phi) {
                return self.zoom(prev, cur, brackets);
            }
            if self.curvature_holds(&cur) {
                return Ok(self.done(cur));
            }
            if cur.dphi >= 0.0 {
                return self.zoom(cur, prev, brackets);
            }
            prev = cur;
            alpha *= 2.0;
            first = false;
        }
    }

    /// `lo` satisfies sufficient decrease and has the lowest phi seen so far;
    /// `(hi - lo) phi'(lo) < 0`.
    fn zoom(
        &mut self,
        mut lo: Sample,
        mut hi: Sample,
        brackets: &mut dyn FnMut(f64, f64),
    ) -> Result<LineSearchOutcome, SolveError> {
        loop {
            brackets(lo.alpha.min(hi.alpha), lo.alpha.max(hi.alpha));
            let width = (hi.alpha - lo.alpha).abs();
            if width < ALPHA_MIN || width <= f64::EPSILON * lo.alpha.abs().max(hi.alpha.abs()) {
                return Err(SolveError::LineSearchFailure);
            }
            let alpha = interpolate(&lo, &hi);
            let cur = self.sample(alpha)?;
            if self.armijo_fails(&cur) || cur.phi >= lo.phi {
                hi = cur;
            } else {
                if self.curvature_holds(&cur) {
                    return Ok(self.done(cur));
                }
                if cur.dphi * (hi.alpha - lo.alpha) >= 0.0 {
                    hi = lo;
                }
                lo = cur;
            }
        }
    }
}

/// Cubic minimizer of the Hermite interpolant through `a` and `b`, kept at
/// least 10% of the bracket away from either end; bisection otherwise.
fn interpolate(a: &Sample, b: &Sample) -> f64 {
    let (left, right) = if a.alpha < b.alpha {
        (a.alpha, b.alpha)
    } else {
        (b.alpha, a.alpha)
    };
    let mid = 0.5 * (left + right);
    let margin = 0.1 * (right - left);
    if !(a.phi.is_finite() && b.phi.is_finite()) {
        return mid;
    }
    let d1 = a.dphi + b.dphi - 3.0 * (a.phi - b.phi) / (a.alpha - b.alpha);
    let disc = d1 * d1 - a.dphi * b.dphi;
    if !(disc >= 0.0) {
        return mid;
    }
    let d2 = libm::copysign(libm::sqrt(disc), b.alpha - a.alpha);
    let t = b.alpha - (b.alpha - a.alpha) * (b.dphi + d2 - d1) / (b.dphi - a.dphi + 2.0 * d2);
    if t.is_finite() && t >= left + margin && t <= right - margin {
        t
    } else {
        mid
    }
}

/// Finds a step satisfying the strong Wolfe conditions along a descent
/// direction (`dphi0 < 0`).
pub fn strong_wolfe_search<L: LineFunction>(
    f: &mut L,
    phi0: f64,
    dphi0: f64,
    params: WolfeParams,
) -> Result<LineSearchOutcome, SolveError> {
    search(f, phi0, dphi0, params, &mut |_, _| {})
}

/// As [`strong_wolfe_search`], also returning every zoom bracket `[lo, hi]`
/// in the order they were visited.
pub fn strong_wolfe_search_with_brackets<L: LineFunction>(
    f: &mut L,
    phi0: f64,
    dphi0: f64,
    params: WolfeParams,
) -> (Result<LineSearchOutcome, SolveError>, Vec<(f64, f64)>) {
    let mut seen = Vec::new();
    let r = search(f, phi0, dphi0, params, &mut |lo, hi| seen.push((lo, hi)));
    (r, seen)
}

fn search<L: LineFunction>(
    f: &mut L,
    phi0: f64,
    dphi0: f64,
    params: WolfeParams,
    brackets: &mut dyn FnMut(f64, f64),
) -> Result<LineSearchOutcome, SolveError> {
    debug_assert!(0.0 < params.c1 && params.c1 < params.c2 && params.c2 < 1.0);
    if !(dphi0 < 0.0) || !phi0.is_finite() {
        return Err(SolveError::LineSearchFailure);
    }
    let mut s = Search {
        f,
        phi0,
        dphi0,
        params,
        evals: 0,
    };
    s.run(brackets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> WolfeParams {
        WolfeParams {
            c1: 1e-4,
            c2: 0.9,
            alpha_init: 1.0,
            max_iters: 20,
        }
    }

    fn check(out: &LineSearchOutcome, phi: impl Fn(f64) -> (f64, f64), p: &WolfeParams) {
        let (phi0, dphi0) = phi(0.0);
        let (pa, da) = phi(out.alpha);
        assert!(pa <= phi0 + p.c1 * out.alpha * dphi0);
        assert!(da.abs() <= p.c2 * dphi0.abs());
    }

    #[test]
    fn shifted_quadratic_accepts_unit_step() {
        let phi = |a: f64| ((a - 1.0) * (a - 1.0) - 1.0, 2.0 * (a - 1.0));
        let mut f = |a: f64| Ok(phi(a));
        let out = strong_wolfe_search(&mut f, 0.0, -2.0, params()).unwrap();
        assert_eq!(out.alpha, 1.0);
        assert_eq!(out.evals, 1);
        check(&out, phi, &params());
    }

    #[test]
    fn exact_quadratic_minimizer() {
        let phi = |a: f64| (0.5 * a * a - a, a - 1.0);
        let mut f = |a: f64| Ok(phi(a));
        let out = strong_wolfe_search(&mut f, 0.0, -1.0, params()).unwrap();
        assert_eq!(out.alpha, 1.0);
        assert_eq!(out.dphi, 0.0);
    }

    #[test]
    fn unbounded_below_fails_at_budget() {
        let mut calls = 0;
        let mut f = |a: f64| {
            calls += 1;
            Ok((-a, -1.0))
        };
        let r = strong_wolfe_search(&mut f, 0.0, -1.0, params());
        assert_eq!(r, Err(SolveError::LineSearchFailure));
        assert_eq!(calls, 20);
    }

    #[test]
    fn extends_short_initial_step() {
        // minimizer at 37
        let phi = |a: f64| (0.5 * (a - 37.0) * (a - 37.0), a - 37.0);
        let mut f = |a: f64| Ok(phi(a));
        let out = strong_wolfe_search(&mut f, phi(0.0).0, phi(0.0).1, params()).unwrap();
        assert!(out.alpha > 1.0);
        check(&out, phi, &params());
    }

    #[test]
    fn zoom_into_overshoot() {
        let phi = |a: f64| {
            let t = a - 0.01;
            (t * t * t * t - 1e-8 * a, 4.0 * t * t * t - 1e-8)
        };
        let p = WolfeParams {
            c2: 0.1,
            ..params()
        };
        let mut f = |a: f64| Ok(phi(a));
        let (r, brackets) = strong_wolfe_search_with_brackets(&mut f, phi(0.0).0, phi(0.0).1, p);
        let out = r.unwrap();
        check(&out, phi, &p);
        assert!(!brackets.is_empty());
        for w in brackets.windows(2) {
            assert!(w[1].0 >= w[0].0 && w[1].1 <= w[0].1, "{w:?}");
        }
    }

    #[test]
    fn returns_last_evaluated_point() {
        let phi = |a: f64| {
            let t = a + 1.0;
            (
                libm::sin(3.0 * t) + 0.2 * t * t,
                3.0 * libm::cos(3.0 * t) + 0.4 * t,
            )
        };
        let mut last = f64::NAN;
        let mut f = |a: f64| {
            last = a;
            Ok(phi(a))
        };
        let (p0, d0) = phi(0.0);
        assert!(d0 < 0.0);
        let out = strong_wolfe_search(&mut f, p0, d0, params()).unwrap();
        assert_eq!(out.alpha, last);
        check(&out, phi, &params());
    }

    #[test]
    fn rejects_ascent_direction() {
        let mut f = |a: f64| Ok((a, 1.0));
        assert_eq!(
            strong_wolfe_search(&mut f, 0.0, 1.0, params()),
            Err(SolveError::LineSearchFailure)
        );
    }

    #[test]
    fn probe_errors_propagate() {
        let mut f = |_: f64| Err(SolveError::EvalBudgetExceeded);
        assert_eq!(
            strong_wolfe_search(&mut f, 0.0, -1.0, params()),
            Err(SolveError::EvalBudgetExceeded)
        );
    }
}
