//! Bundled unconstrained test problems.
//!
//! Mostly the classic Moré–Garbow–Hillstrom and CUTEst families, each with
//! its analytic gradient and literature starting point. Scalable families
//! take the dimension as `name:n`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use libm::{atan, cos, exp, sin, sqrt};

use crate::linalg::fsum;
use crate::objective::Objective;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Rosenbrock,
    Powell,
    QuadraticDiag,
    QuadraticCond1e2,
    QuadraticCond1e6,
    DixonPrice,
    Trigonometric,
    Beale,
    Penalty1,
    Hilbert,
    TwoWell,
    Wood,
    HelicalValley,
    FreudensteinRoth,
    Raydan1,
    Tridia,
    BroydenTridiagonal,
    Arwhead,
    Engval1,
    Liarwhd,
    Nondia,
}

/// Dimension rule of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dims {
    Fixed(usize),
    MultipleOf(usize),
    /// Scalable with an upper bound (dense families).
    AtMost(usize),
}

impl Family {
    pub const ALL: [Family; 21] = [
        Family::Rosenbrock,
        Family::Powell,
        Family::QuadraticDiag,
        Family::QuadraticCond1e2,
        Family::QuadraticCond1e6,
        Family::DixonPrice,
        Family::Trigonometric,
        Family::Beale,
        Family::Penalty1,
        Family::Hilbert,
        Family::TwoWell,
        Family::Wood,
        Family::HelicalValley,
        Family::FreudensteinRoth,
        Family::Raydan1,
        Family::Tridia,
        Family::BroydenTridiagonal,
        Family::Arwhead,
        Family::Engval1,
        Family::Liarwhd,
        Family::Nondia,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Rosenbrock => "rosenbrock",
            Family::Powell => "powell",
            Family::QuadraticDiag => "quadratic-diag",
            Family::QuadraticCond1e2 => "quadratic-cond1e2",
            Family::QuadraticCond1e6 => "quadratic-cond1e6",
            Family::DixonPrice => "dixon-price",
            Family::Trigonometric => "trigonometric",
            Family::Beale => "beale",
            Family::Penalty1 => "penalty1",
            Family::Hilbert => "hilbert",
            Family::TwoWell => "two-well",
            Family::Wood => "wood",
            Family::HelicalValley => "helical-valley",
            Family::FreudensteinRoth => "freudenstein-roth",
            Family::Raydan1 => "raydan1",
            Family::Tridia => "tridia",
            Family::BroydenTridiagonal => "broyden-tridiagonal",
            Family::Arwhead => "arwhead",
            Family::Engval1 => "engval1",
            Family::Liarwhd => "liarwhd",
            Family::Nondia => "nondia",
        }
    }

    fn dims(self) -> Dims {
        match self {
            Family::Rosenbrock => Dims::MultipleOf(2),
            Family::Powell => Dims::MultipleOf(4),
            Family::Beale | Family::FreudensteinRoth => Dims::Fixed(2),
            Family::HelicalValley => Dims::Fixed(3),
            Family::Wood => Dims::Fixed(4),
            Family::Hilbert => Dims::AtMost(64),
            _ => Dims::MultipleOf(1),
        }
    }

    pub fn default_dim(self) -> usize {
        match self {
            Family::Rosenbrock | Family::Beale | Family::FreudensteinRoth => 2,
            Family::HelicalValley => 3,
            Family::Wood => 4,
            Family::Hilbert => 6,
            Family::Powell | Family::Penalty1 | Family::Trigonometric => 100,
            _ => 1000,
        }
    }

    fn dim_ok(self, n: usize) -> bool {
        if n == 0 {
            return false;
        }
        match self.dims() {
            Dims::Fixed(k) => n == k,
            Dims::MultipleOf(k) => n.is_multiple_of(k) && (n >= 2 || !self.needs_two()),
            Dims::AtMost(k) => n <= k,
        }
    }

    fn needs_two(self) -> bool {
        matches!(
            self,
            Family::Arwhead
                | Family::Engval1
                | Family::Nondia
                | Family::DixonPrice
                | Family::Tridia
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemError {
    UnknownProblem(String),
    BadDimension { family: &'static str, n: usize },
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemError::UnknownProblem(s) => write!(f, "unknown problem '{s}'"),
            ProblemError::BadDimension { family, n } => {
                write!(f, "dimension {n} is not valid for problem '{family}'")
            }
        }
    }
}

impl core::error::Error for ProblemError {}

/// A concrete test problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub family: Family,
    pub n: usize,
    /// Standard starting point.
    pub x0: Vec<f64>,
    /// Known global minimum value, when there is one.
    pub f_star: Option<f64>,
}

impl Problem {
    pub fn new(family: Family, n: usize) -> Result<Self, ProblemError> {
        if !family.dim_ok(n) {
            return Err(ProblemError::BadDimension {
                family: family.name(),
                n,
            });
        }
        let x0 = start(family, n);
        let f_star = match family {
            Family::Penalty1 | Family::Engval1 => None,
            Family::Raydan1 => Some((n * (n + 1)) as f64 / 20.0),
            _ => Some(0.0),
        };
        Ok(Problem {
            family,
            n,
            x0,
            f_star,
        })
    }

    /// `name:n`
    pub fn label(&self) -> String {
        format!("{}:{}", self.family.name(), self.n)
    }
}

fn start(family: Family, n: usize) -> Vec<f64> {
    match family {
        Family::Rosenbrock => (0..n)
            .map(|i| if i % 2 == 0 { -1.2 } else { 1.0 })
            .collect(),
        Family::Powell => (0..n).map(|i| [3.0, -1.0, 0.0, 1.0][i % 4]).collect(),
        Family::Trigonometric => vec![1.0 / n as f64; n],
        Family::Beale => vec![1.0, 1.0],
        Family::Penalty1 => (1..=n).map(|i| i as f64).collect(),
        Family::TwoWell => (0..n)
            .map(|i| if i % 2 == 0 { 0.5 } else { -0.4 })
            .collect(),
        Family::Wood => vec![-3.0, -1.0, -3.0, -1.0],
        Family::HelicalValley => vec![-1.0, 0.0, 0.0],
        Family::FreudensteinRoth => vec![0.5, -2.0],
        Family::BroydenTridiagonal | Family::Nondia => vec![-1.0; n],
        Family::Engval1 => vec![2.0; n],
        Family::Liarwhd => vec![4.0; n],
        _ => vec![1.0; n],
    }
}

/// Parses `name` or `name:n`.
pub fn lookup(spec: &str) -> Result<Problem, ProblemError> {
    let (name, dim) = match spec.split_once(':') {
        Some((name, d)) => {
            let n = d
                .trim()
                .parse::<usize>()
                .map_err(|_| ProblemError::UnknownProblem(spec.into()))?;
            (name.trim(), Some(n))
        }
        None => (spec.trim(), None),
    };
    let family = Family::ALL
        .into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| ProblemError::UnknownProblem(spec.into()))?;
    Problem::new(family, dim.unwrap_or(family.default_dim()))
}

/// The bundled benchmark suite.
pub fn registry() -> Vec<Problem> {
    const SUITE: &[(Family, usize)] = &[
        (Family::Rosenbrock, 2),
        (Family::Rosenbrock, 100),
        (Family::Rosenbrock, 1000),
        (Family::Powell, 100),
        (Family::Powell, 1000),
        (Family::QuadraticDiag, 100),
        (Family::QuadraticCond1e2, 1000),
        (Family::QuadraticCond1e6, 1000),
        (Family::DixonPrice, 100),
        (Family::Trigonometric, 100),
        (Family::Beale, 2),
        (Family::Penalty1, 100),
        (Family::Hilbert, 6),
        (Family::TwoWell, 1000),
        (Family::Wood, 4),
        (Family::HelicalValley, 3),
        (Family::FreudensteinRoth, 2),
        (Family::Raydan1, 1000),
        (Family::Tridia, 1000),
        (Family::BroydenTridiagonal, 1000),
        (Family::Arwhead, 1000),
        (Family::Engval1, 1000),
        (Family::Liarwhd, 1000),
        (Family::Nondia, 1000),
    ];
    SUITE
        .iter()
        .map(|&(f, n)| Problem::new(f, n).expect("suite dimensions are valid"))
        .collect()
}

/// Central differences `(f(x + h e_i) - f(x - h e_i)) / 2h`.
pub fn finite_difference_gradient<F: Objective + ?Sized>(
    objective: &F,
    point: &[f64],
    h: f64,
) -> Vec<f64> {
    assert!(h > 0.0);
    let mut x = point.to_vec();
    (0..point.len())
        .map(|i| {
            let xi = x[i];
            x[i] = xi + h;
            let fp = objective.value(&x);
            x[i] = xi - h;
            let fm = objective.value(&x);
            x[i] = xi;
            (fp - fm) / (2.0 * h)
        })
        .collect()
}

/// Eigenvalues evenly spaced on `[1, kappa]`.
fn cond_diag(kappa: f64, n: usize, i: usize) -> f64 {
    if n == 1 {
        1.0
    } else {
        1.0 + (kappa - 1.0) * i as f64 / (n - 1) as f64
    }
}

fn helical_theta(x1: f64, x2: f64) -> f64 {
    let t = if x1 == 0.0 {
        0.25 * libm::copysign(1.0, x2)
    } else {
        atan(x2 / x1) / (2.0 * PI)
    };
    if x1 < 0.0 {
        t + 0.5
    } else {
        t
    }
}

impl Objective for Problem {
    fn dimension(&self) -> usize {
        self.n
    }

    fn value(&self, x: &[f64]) -> f64 {
        let n = self.n;
        match self.family {
            Family::Rosenbrock => fsum(x.chunks_exact(2).map(|p| {
                let t = p[1] - p[0] * p[0];
                100.0 * t * t + (1.0 - p[0]) * (1.0 - p[0])
            })),
            Family::Powell => fsum(x.chunks_exact(4).map(|p| {
                let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
                let t1 = a + 10.0 * b;
                let t2 = c - d;
                let t3 = (b - 2.0 * c) * (b - 2.0 * c);
                let t4 = (a - d) * (a - d);
                t1 * t1 + 5.0 * t2 * t2 + t3 * t3 + 10.0 * t4 * t4
            })),
            Family::QuadraticDiag => fsum(
                x.iter()
                    .enumerate()
                    .map(|(i, v)| 0.5 * (i + 1) as f64 * v * v),
            ),
            Family::QuadraticCond1e2 | Family::QuadraticCond1e6 => {
                let kappa = if self.family == Family::QuadraticCond1e2 {
                    1e2
                } else {
                    1e6
                };
                fsum(
                    x.iter()
                        .enumerate()
                        .map(|(i, v)| 0.5 * cond_diag(kappa, n, i) * v * v),
                )
            }
            Family::DixonPrice => {
                let head = (x[0] - 1.0) * (x[0] - 1.0);
                fsum(core::iter::once(head).chain((1..n).map(|i| {
                    let t = 2.0 * x[i] * x[i] - x[i - 1];
                    (i + 1) as f64 * t * t
                })))
            }
            Family::Trigonometric => {
                let sum_cos = fsum(x.iter().map(|&v| cos(v)));
                fsum(x.iter().enumerate().map(|(i, &v)| {
                    let r = n as f64 - sum_cos + (i + 1) as f64 * (1.0 - cos(v)) - sin(v);
                    r * r
                }))
            }
            Family::Beale => {
                let (a, b) = (x[0], x[1]);
                let u1 = 1.5 - a + a * b;
                let u2 = 2.25 - a + a * b * b;
                let u3 = 2.625 - a + a * b * b * b;
                u1 * u1 + u2 * u2 + u3 * u3
            }
            Family::Penalty1 => {
                let a = 1e-5;
                let lin = fsum(x.iter().map(|v| (v - 1.0) * (v - 1.0)));
                let q = fsum(x.iter().map(|v| v * v)) - 0.25;
                a * lin + q * q
            }
            Family::Hilbert => {
                let terms =
                    (0..n).flat_map(|i| (0..n).map(move |j| x[i] * x[j] / (i + j + 1) as f64));
                0.5 * fsum(terms)
            }
            Family::TwoWell => {
                let wells = x.iter().map(|v| (v * v - 1.0) * (v * v - 1.0));
                let springs = x.windows(2).map(|w| 0.5 * (w[1] - w[0]) * (w[1] - w[0]));
                fsum(wells.chain(springs))
            }
            Family::Wood => {
                let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
                100.0 * (b - a * a) * (b - a * a)
                    + (1.0 - a) * (1.0 - a)
                    + 90.0 * (d - c * c) * (d - c * c)
                    + (1.0 - c) * (1.0 - c)
                    + 10.1 * ((b - 1.0) * (b - 1.0) + (d - 1.0) * (d - 1.0))
                    + 19.8 * (b - 1.0) * (d - 1.0)
            }
            Family::HelicalValley => {
                let th = helical_theta(x[0], x[1]);
                let r = sqrt(x[0] * x[0] + x[1] * x[1]);
                let u = x[2] - 10.0 * th;
                100.0 * (u * u + (r - 1.0) * (r - 1.0)) + x[2] * x[2]
            }
            Family::FreudensteinRoth => {
                let (a, b) = (x[0], x[1]);
                let r1 = -13.0 + a + ((5.0 - b) * b - 2.0) * b;
                let r2 = -29.0 + a + ((b + 1.0) * b - 14.0) * b;
                r1 * r1 + r2 * r2
            }
            Family::Raydan1 => fsum(
                x.iter()
                    .enumerate()
                    .map(|(i, &v)| (i + 1) as f64 / 10.0 * (exp(v) - v)),
            ),
            Family::Tridia => {
                let head = (x[0] - 1.0) * (x[0] - 1.0);
                fsum(core::iter::once(head).chain((1..n).map(|i| {
                    let t = 2.0 * x[i] - x[i - 1];
                    (i + 1) as f64 * t * t
                })))
            }
            Family::BroydenTridiagonal => fsum((0..n).map(|i| {
                let r = broyden_residual(x, i);
                r * r
            })),
            Family::Arwhead => {
                let xn2 = x[n - 1] * x[n - 1];
                fsum(x[..n - 1].iter().map(|&v| {
                    let t = v * v + xn2;
                    t * t - 4.0 * v + 3.0
                }))
            }
            Family::Engval1 => fsum(x.windows(2).map(|w| {
                let t = w[0] * w[0] + w[1] * w[1];
                t * t - 4.0 * w[0] + 3.0
            })),
            Family::Liarwhd => fsum(x.iter().map(|&v| {
                let t = v * v - x[0];
                4.0 * t * t + (v - 1.0) * (v - 1.0)
            })),
            Family::Nondia => {
                let head = (x[0] - 1.0) * (x[0] - 1.0);
                fsum(core::iter::once(head).chain(x[..n - 1].iter().map(|&v| {
                    let t = x[0] - v * v;
                    100.0 * t * t
                })))
            }
        }
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let n = self.n;
        g.iter_mut().for_each(|v| *v = 0.0);
        match self.family {
            Family::Rosenbrock => {
                for (p, gp) in x.chunks_exact(2).zip(g.chunks_exact_mut(2)) {
                    let t = p[1] - p[0] * p[0];
                    gp[0] = -400.0 * p[0] * t - 2.0 * (1.0 - p[0]);
                    gp[1] = 200.0 * t;
                }
            }
            Family::Powell => {
                for (p, gp) in x.chunks_exact(4).zip(g.chunks_exact_mut(4)) {
                    let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
                    let t1 = a + 10.0 * b;
                    let t2 = c - d;
                    let t3 = b - 2.0 * c;
                    let t4 = a - d;
                    gp[0] = 2.0 * t1 + 40.0 * t4 * t4 * t4;
                    gp[1] = 20.0 * t1 + 4.0 * t3 * t3 * t3;
                    gp[2] = 10.0 * t2 - 8.0 * t3 * t3 * t3;
                    gp[3] = -10.0 * t2 - 40.0 * t4 * t4 * t4;
                }
            }
            Family::QuadraticDiag => {
                for (i, (gi, v)) in g.iter_mut().zip(x).enumerate() {
                    *gi = (i + 1) as f64 * v;
                }
            }
            Family::QuadraticCond1e2 | Family::QuadraticCond1e6 => {
                let kappa = if self.family == Family::QuadraticCond1e2 {
                    1e2
                } else {
                    1e6
                };
                for (i, (gi, v)) in g.iter_mut().zip(x).enumerate() {
                    *gi = cond_diag(kappa, n, i) * v;
                }
            }
            Family::DixonPrice => {
                g[0] = 2.0 * (x[0] - 1.0);
                for i in 1..n {
                    let c = (i + 1) as f64;
                    let t = 2.0 * x[i] * x[i] - x[i - 1];
                    g[i] += 8.0 * c * t * x[i];
                    g[i - 1] -= 2.0 * c * t;
                }
            }
            Family::Trigonometric => {
                let sum_cos: f64 = x.iter().map(|&v| cos(v)).sum();
                let r: Vec<f64> = x
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| n as f64 - sum_cos + (i + 1) as f64 * (1.0 - cos(v)) - sin(v))
                    .collect();
                let rsum: f64 = r.iter().sum();
                for j in 0..n {
                    let (s, c) = (sin(x[j]), cos(x[j]));
                    g[j] = 2.0 * s * rsum + 2.0 * r[j] * ((j + 1) as f64 * s - c);
                }
            }
            Family::Beale => {
                let (a, b) = (x[0], x[1]);
                let u = [
                    1.5 - a + a * b,
                    2.25 - a + a * b * b,
                    2.625 - a + a * b * b * b,
                ];
                let mut bk = 1.0; // b^(k-1)
                for (k, uk) in u.iter().enumerate() {
                    let kk = (k + 1) as f64;
                    g[0] += 2.0 * uk * (bk * b - 1.0);
                    g[1] += 2.0 * uk * kk * a * bk;
                    bk *= b;
                }
            }
            Family::Penalty1 => {
                let a = 1e-5;
                let q = fsum(x.iter().map(|v| v * v)) - 0.25;
                for (gi, &v) in g.iter_mut().zip(x) {
                    *gi = 2.0 * a * (v - 1.0) + 4.0 * v * q;
                }
            }
            Family::Hilbert => {
                for (i, gi) in g.iter_mut().enumerate() {
                    *gi = fsum(x.iter().enumerate().map(|(j, v)| v / (i + j + 1) as f64));
                }
            }
            Family::TwoWell => {
                for (gi, &v) in g.iter_mut().zip(x) {
                    *gi = 4.0 * v * (v * v - 1.0);
                }
                for i in 0..n.saturating_sub(1) {
                    let c = x[i + 1] - x[i];
                    g[i + 1] += c;
                    g[i] -= c;
                }
            }
            Family::Wood => {
                let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
                g[0] = -400.0 * a * (b - a * a) - 2.0 * (1.0 - a);
                g[1] = 200.0 * (b - a * a) + 20.2 * (b - 1.0) + 19.8 * (d - 1.0);
                g[2] = -360.0 * c * (d - c * c) - 2.0 * (1.0 - c);
                g[3] = 180.0 * (d - c * c) + 20.2 * (d - 1.0) + 19.8 * (b - 1.0);
            }
            Family::HelicalValley => {
                let (a, b) = (x[0], x[1]);
                let r2 = a * a + b * b;
                let r = sqrt(r2);
                let u = x[2] - 10.0 * helical_theta(a, b);
                let dth_a = -b / (2.0 * PI * r2);
                let dth_b = a / (2.0 * PI * r2);
                g[0] = 200.0 * (-10.0 * u * dth_a + (r - 1.0) * a / r);
                g[1] = 200.0 * (-10.0 * u * dth_b + (r - 1.0) * b / r);
                g[2] = 200.0 * u + 2.0 * x[2];
            }
            Family::FreudensteinRoth => {
                let (a, b) = (x[0], x[1]);
                let r1 = -13.0 + a + ((5.0 - b) * b - 2.0) * b;
                let r2 = -29.0 + a + ((b + 1.0) * b - 14.0) * b;
                g[0] = 2.0 * (r1 + r2);
                g[1] = 2.0 * r1 * (10.0 * b - 3.0 * b * b - 2.0)
                    + 2.0 * r2 * (3.0 * b * b + 2.0 * b - 14.0);
            }
            Family::Raydan1 => {
                for (i, (gi, &v)) in g.iter_mut().zip(x).enumerate() {
                    *gi = (i + 1) as f64 / 10.0 * (exp(v) - 1.0);
                }
            }
            Family::Tridia => {
                g[0] = 2.0 * (x[0] - 1.0);
                for i in 1..n {
                    let c = (i + 1) as f64;
                    let t = 2.0 * x[i] - x[i - 1];
                    g[i] += 4.0 * c * t;
                    g[i - 1] -= 2.0 * c * t;
                }
            }
            Family::BroydenTridiagonal => {
                let r: Vec<f64> = (0..n).map(|i| broyden_residual(x, i)).collect();
                for j in 0..n {
                    let mut v = 2.0 * r[j] * (3.0 - 4.0 * x[j]);
                    if j + 1 < n {
                        v -= 2.0 * r[j + 1];
                    }
                    if j > 0 {
                        v -= 4.0 * r[j - 1];
                    }
                    g[j] = v;
                }
            }
            Family::Arwhead => {
                let xn = x[n - 1];
                let xn2 = xn * xn;
                for i in 0..n - 1 {
                    let t = x[i] * x[i] + xn2;
                    g[i] = 4.0 * x[i] * t - 4.0;
                    g[n - 1] += 4.0 * xn * t;
                }
            }
            Family::Engval1 => {
                for i in 0..n - 1 {
                    let t = x[i] * x[i] + x[i + 1] * x[i + 1];
                    g[i] += 4.0 * x[i] * t - 4.0;
                    g[i + 1] += 4.0 * x[i + 1] * t;
                }
            }
            Family::Liarwhd => {
                for i in 0..n {
                    let t = x[i] * x[i] - x[0];
                    g[i] += 16.0 * x[i] * t + 2.0 * (x[i] - 1.0);
                    g[0] -= 8.0 * t;
                }
            }
            Family::Nondia => {
                g[0] = 2.0 * (x[0] - 1.0);
                for i in 0..n - 1 {
                    let t = x[0] - x[i] * x[i];
                    g[0] += 200.0 * t;
                    g[i] -= 400.0 * x[i] * t;
                }
            }
        }
    }
}

fn broyden_residual(x: &[f64], i: usize) -> f64 {
    let prev = if i > 0 { x[i - 1] } else { 0.0 };
    let next = x.get(i + 1).copied().unwrap_or(0.0);
    (3.0 - 2.0 * x[i]) * x[i] - prev - 2.0 * next + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Linear(Vec<f64>);

    impl Objective for Linear {
        fn dimension(&self) -> usize {
            self.0.len()
        }
        fn value(&self, x: &[f64]) -> f64 {
            crate::linalg::dot(&self.0, x)
        }
        fn gradient(&self, _: &[f64], g: &mut [f64]) {
            g.copy_from_slice(&self.0);
        }
    }

    #[test]
    fn rosenbrock_start_value() {
        let p = lookup("rosenbrock:2").unwrap();
        assert_eq!(p.x0, vec![-1.2, 1.0]);
        assert!((p.value(&p.x0) - 24.2).abs() < 1e-12);
        assert_eq!(p.f_star, Some(0.0));
        assert_eq!(p.value(&[1.0, 1.0]), 0.0);
    }

    #[test]
    fn quadratic_diag_minimum() {
        let p = lookup("quadratic-diag:10").unwrap();
        assert_eq!(p.f_star, Some(0.0));
        assert_eq!(p.value(&[0.0; 10]), 0.0);
        let mut g = vec![0.0; 10];
        p.gradient(&p.x0, &mut g);
        assert_eq!(g, (1..=10).map(|i| i as f64).collect::<Vec<_>>());
    }

    #[test]
    fn beale_minimum() {
        let p = lookup("beale").unwrap();
        assert_eq!(p.x0, vec![1.0, 1.0]);
        assert_eq!(p.f_star, Some(0.0));
        assert!(p.value(&[3.0, 0.5]).abs() < 1e-15);
    }

    #[test]
    fn known_minimizers_are_stationary() {
        let cases: &[(&str, Vec<f64>)] = &[
            ("rosenbrock:4", vec![1.0; 4]),
            ("powell:8", vec![0.0; 8]),
            ("wood", vec![1.0; 4]),
            ("helical-valley", vec![1.0, 0.0, 0.0]),
            ("freudenstein-roth", vec![5.0, 4.0]),
            ("liarwhd:5", vec![1.0; 5]),
            ("nondia:5", vec![1.0; 5]),
            ("arwhead:5", vec![1.0, 1.0, 1.0, 1.0, 0.0]),
            ("two-well:5", vec![1.0; 5]),
            ("raydan1:5", vec![0.0; 5]),
        ];
        for (name, xs) in cases {
            let p = lookup(name).unwrap();
            assert!((p.value(xs) - p.f_star.unwrap()).abs() < 1e-12, "{name}");
            let mut g = vec![0.0; p.n];
            p.gradient(xs, &mut g);
            assert!(g.iter().all(|v| v.abs() < 1e-12), "{name}: {g:?}");
        }
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(
            lookup("nope"),
            Err(ProblemError::UnknownProblem(_))
        ));
        assert!(matches!(
            lookup("rosenbrock:3"),
            Err(ProblemError::BadDimension { .. })
        ));
        assert!(matches!(
            lookup("beale:3"),
            Err(ProblemError::BadDimension { .. })
        ));
        assert!(matches!(
            lookup("rosenbrock:x"),
            Err(ProblemError::UnknownProblem(_))
        ));
        assert_eq!(lookup("rosenbrock").unwrap().n, 2);
        assert_eq!(lookup("tridia").unwrap().n, 1000);
    }

    #[test]
    fn registry_is_large_enough_and_labels_unique() {
        let r = registry();
        assert!(r.len() >= 20);
        let mut labels: Vec<String> = r.iter().map(|p| p.label()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), r.len());
        for p in &r {
            assert_eq!(lookup(&p.label()).unwrap(), *p);
        }
    }

    #[test]
    fn fd_of_half_square() {
        let p = lookup("quadratic-diag:1").unwrap();
        let g = finite_difference_gradient(&p, &[3.0], 1e-6);
        assert!((g[0] - 3.0).abs() < 1e-8);
    }

    #[test]
    fn fd_constant_and_linear() {
        let zero = Linear(vec![0.0; 3]);
        assert_eq!(
            finite_difference_gradient(&zero, &[1.0, 2.0, 3.0], 1e-3),
            vec![0.0; 3]
        );
        let lin = Linear(vec![2.0, -0.5, 4.0]);
        let g = finite_difference_gradient(&lin, &[0.0, 0.0, 0.0], 0.5);
        assert_eq!(g, vec![2.0, -0.5, 4.0]);
    }
}
