use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regulus_core::problems::{finite_difference_gradient, registry, Problem};
use regulus_core::Objective;

/// Largest gradient error at `x`, measured two ways:
/// `(normwise, componentwise)`. The normwise error scales each component by
/// `max(1, |g|_inf)`. The componentwise one scales by `max(1, |g_i|)` after
/// discounting the rounding noise of the difference quotient.
fn fd_errors(p: &Problem, x: &[f64]) -> (f64, f64) {
    let mut g = vec![0.0; p.n];
    p.gradient(x, &mut g);
    let scale = g.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let (mut normwise, mut componentwise) = (0.0_f64, 0.0_f64);
    let mut xp = x.to_vec();
    for i in 0..p.n {
        let h = 1e-6 * x[i].abs().max(1.0);
        xp[i] = x[i] + h;
        let fp = p.value(&xp);
        xp[i] = x[i] - h;
        let fm = p.value(&xp);
        xp[i] = x[i];
        let err = ((fp - fm) / (2.0 * h) - g[i]).abs();
        let noise = f64::EPSILON * fp.abs().max(fm.abs()) / h;
        normwise = normwise.max(err / scale);
        componentwise = componentwise.max((err - noise).max(0.0) / g[i].abs().max(1.0));
    }
    (normwise, componentwise)
}

fn perturbed<R: Rng>(rng: &mut R, x0: &[f64], radius: f64) -> Vec<f64> {
    x0.iter()
        .map(|v| v + rng.gen_range(-radius..radius))
        .collect()
}

#[test]
fn gradients_match_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in registry() {
        let mut points = vec![p.x0.clone()];
        points.extend((0..10).map(|_| perturbed(&mut rng, &p.x0, 0.5)));
        for x in &points {
            let (normwise, componentwise) = fd_errors(&p, x);
            assert!(normwise <= 1e-6, "{}: {normwise:e}", p.label());
            assert!(componentwise <= 1e-6, "{}: {componentwise:e}", p.label());
        }
    }
}

#[test]
fn uniform_step_helper_agrees_on_small_problems() {
    for p in registry().into_iter().filter(|p| p.n <= 6) {
        let fd = finite_difference_gradient(&p, &p.x0, 1e-6);
        let mut g = vec![0.0; p.n];
        p.gradient(&p.x0, &mut g);
        for (a, b) in fd.iter().zip(&g) {
            assert!((a - b).abs() <= 1e-5 * b.abs().max(1.0), "{}", p.label());
        }
    }
}

#[test]
fn values_never_go_below_the_known_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for p in registry() {
        let Some(f_star) = p.f_star else { continue };
        for _ in 0..100 {
            let x = perturbed(&mut rng, &p.x0, 2.0);
            let f = p.value(&x);
            assert!(
                f >= f_star - 1e-12 * f_star.abs().max(1.0),
                "{}: {f} < {f_star}",
                p.label()
            );
        }
    }
}

#[test]
fn value_gradient_is_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for p in registry() {
        let x = perturbed(&mut rng, &p.x0, 0.5);
        let mut g1 = vec![0.0; p.n];
        let mut g2 = vec![0.0; p.n];
        p.gradient(&x, &mut g1);
        let f = p.value_gradient(&x, &mut g2);
        assert_eq!(f.to_bits(), p.value(&x).to_bits(), "{}", p.label());
        assert_eq!(g1, g2, "{}", p.label());
    }
}
