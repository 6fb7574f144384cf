use dispersal::harness::{verify_batch, Family, OracleChoice, VerifyConfig};

fn run(oracle: OracleChoice, count: usize, n_min: usize, n_max: usize, seed: u64) {
    let report = verify_batch(&VerifyConfig {
        count,
        n_min,
        n_max,
        oracle,
        seed,
        families: Family::ALL.to_vec(),
    })
    .unwrap();
    for m in report.mismatches.iter().take(5) {
        eprintln!("{} {}: {:?} {:?} {:?}", m.index, m.spec, m.solver_cost, m.oracle_cost, m.problems);
    }
    assert!(report.passed(), "{} mismatches", report.mismatches.len());
}

#[test]
fn exhaustive_small() {
    run(OracleChoice::Exhaustive, 2000, 0, 10, 11);
}

#[test]
fn pav_medium() {
    run(OracleChoice::Pav, 300, 0, 300, 12);
}

#[test]
fn naive_medium() {
    run(OracleChoice::Naive, 200, 0, 500, 13);
}
