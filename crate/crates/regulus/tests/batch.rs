use regulus::batch::{run_batch, select_problems};
use regulus::profile::{performance_profile, Metric, DEFAULT_TAU_GRID};
use regulus::records::{read_records, write_records, RunRecord};
use regulus_core::{Solver, SolverConfig, Status};

const PROBLEMS: &str = "rosenbrock:2,beale,wood,helical-valley,hilbert,powell:100,dixon-price:100";

fn untimed(rs: &[RunRecord]) -> Vec<RunRecord> {
    rs.iter().map(RunRecord::untimed).collect()
}

fn csv_without_time(rs: &[RunRecord]) -> String {
    let mut buf = Vec::new();
    write_records(&mut buf, &untimed(rs)).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn serial_and_parallel_batches_agree() {
    let ps = select_problems(PROBLEMS).unwrap();
    let cfg = SolverConfig::default();
    let serial = run_batch(&ps, &Solver::ALL, &cfg, 1).unwrap();
    let again = run_batch(&ps, &Solver::ALL, &cfg, 1).unwrap();
    let parallel = run_batch(&ps, &Solver::ALL, &cfg, 4).unwrap();
    assert_eq!(serial.len(), ps.len() * 3);
    assert_eq!(csv_without_time(&serial), csv_without_time(&again));
    assert_eq!(csv_without_time(&serial), csv_without_time(&parallel));
    assert!(serial.iter().all(|r| r.wall_time >= 0.0));
}

#[test]
fn records_are_complete_under_failures() {
    let ps = select_problems("rosenbrock:1000,beale").unwrap();
    let cfg = SolverConfig {
        max_fevals: 30,
        ..SolverConfig::default()
    };
    let recs = run_batch(&ps, &Solver::ALL, &cfg, 2).unwrap();
    assert_eq!(recs.len(), 6);
    for r in recs.iter().filter(|r| r.problem == "rosenbrock:1000") {
        assert_eq!(r.status, Status::EvalBudgetExceeded, "{}", r.solver);
        assert_eq!(r.n_f, 31);
    }
}

#[test]
fn csv_round_trip_preserves_profiles() {
    let ps = select_problems(PROBLEMS).unwrap();
    let recs = run_batch(&ps, &Solver::ALL, &SolverConfig::default(), 2).unwrap();
    let mut buf = Vec::new();
    write_records(&mut buf, &recs).unwrap();
    let back = read_records(buf.as_slice()).unwrap();
    assert_eq!(back, recs);
    for metric in [Metric::Nf, Metric::Time] {
        assert_eq!(
            performance_profile(&recs, metric, &DEFAULT_TAU_GRID, false).unwrap(),
            performance_profile(&back, metric, &DEFAULT_TAU_GRID, false).unwrap()
        );
    }
}
