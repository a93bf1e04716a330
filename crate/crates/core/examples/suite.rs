//! Runs every solver on the bundled suite and prints a summary table.

use regulus_core::{problems, solve, Solver, SolverConfig};

fn main() {
    let cfg = SolverConfig::default();
    for p in problems::registry() {
        for s in Solver::ALL {
            let r = solve(s, &p, &p.x0, &cfg).unwrap();
            println!(
                "{:<26} {:<10} {:<24} nf={:<6} ng={:<6} it={:<6} f={:.6e} res={:.2e}",
                p.label(),
                s.name(),
                r.status.name(),
                r.counters.n_f,
                r.counters.n_g,
                r.iterations,
                r.final_f,
                r.final_residual
            );
        }
    }
}
