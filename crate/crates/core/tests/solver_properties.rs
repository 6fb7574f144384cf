use dispersal::harness::{bench_spec, gen_instance, heap_ops_bound, Family};
use dispersal::oracles::{exhaustive_anchored_solve, naive_quadratic_solve, pav_isotonic_solve};
use dispersal::{audit, replay, solve, total_cost, Configuration, ProblemInstance, SolveOptions};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = ProblemInstance<i64>> {
    (1i64..6, proptest::collection::vec(-20i64..20, 0..11))
        .prop_map(|(delta, raw)| ProblemInstance::new(delta, raw).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn solver_is_optimal_and_audited(inst in instance()) {
        let r = solve(&inst, SolveOptions { trace: true, debug_audit: true }).unwrap();
        let report = audit(&inst, &r.configuration);
        prop_assert!(report.passed(), "{:?}", report.failures());
        prop_assert_eq!(total_cost(&inst, &r.configuration).unwrap(), r.total_cost);

        let ex = exhaustive_anchored_solve(&inst).unwrap();
        prop_assert_eq!(ex.best_cost, r.total_cost);
        let optima = ex.all_optima.unwrap();
        prop_assert!(optima.iter().all(|o| r.configuration.pointwise_le(o)));
        prop_assert!(optima.contains(&r.configuration));

        prop_assert_eq!(pav_isotonic_solve(&inst).unwrap().best_cost, r.total_cost);
        prop_assert_eq!(naive_quadratic_solve(&inst).unwrap().witness, r.configuration.clone());
        prop_assert_eq!(replay(&inst, r.trace.as_ref().unwrap()).unwrap(), r.configuration);
    }

    #[test]
    fn oracles_agree_without_solver(inst in instance()) {
        let ex = exhaustive_anchored_solve(&inst).unwrap();
        let pav = pav_isotonic_solve(&inst).unwrap();
        prop_assert_eq!(ex.best_cost, pav.best_cost);
        prop_assert!(pav.witness.is_independent(inst.delta).unwrap());
        prop_assert!(ex.witness.is_independent(inst.delta).unwrap());
    }

    #[test]
    fn shifting_by_a_constant_is_invariant(inst in instance(), t in -50i64..50) {
        let moved = ProblemInstance::from_sorted(inst.delta, inst.initial.iter().map(|x| x + t).collect()).unwrap();
        let a = solve(&inst, SolveOptions::default()).unwrap();
        let b = solve(&moved, SolveOptions::default()).unwrap();
        prop_assert_eq!(a.total_cost, b.total_cost);
        let expect: Vec<i64> = a.configuration.positions.iter().map(|x| x + t).collect();
        prop_assert_eq!(b.configuration.positions, expect);
    }

    #[test]
    fn decompose_covers_every_index(inst in instance()) {
        let r = solve(&inst, SolveOptions::default()).unwrap();
        let chains = dispersal::decompose_chains(&inst, &r.configuration).unwrap();
        let mut next = 0;
        for c in &chains {
            prop_assert_eq!(c.start, next);
            prop_assert_eq!(c.cnt_l + c.cnt_o + c.cnt_r, c.len());
            next = c.end + 1;
        }
        prop_assert_eq!(next, inst.len());
    }
}

#[test]
fn frozen_examples_match_exhaustive() {
    // Expected values below were produced by the exhaustive oracle.
    let cases: [(i64, &[i64], &[i64], i64); 4] = [
        (2, &[0, 1], &[-1, 1], 1),
        (1, &[0, 10], &[0, 10], 0),
        (20, &[0, 30, 35], &[0, 20, 40], 15),
        (20, &[0, 40, 45], &[0, 25, 45], 15),
    ];
    for (delta, initial, want, cost) in cases {
        let inst = ProblemInstance::from_sorted(delta, initial.to_vec()).unwrap();
        assert_eq!(exhaustive_anchored_solve(&inst).unwrap().best_cost, cost);
        let r = solve(&inst, SolveOptions::default()).unwrap();
        assert_eq!(r.configuration, Configuration::new(want.to_vec()));
        assert_eq!(r.total_cost, cost);
    }
}

#[test]
fn same_answer_in_i64_and_i128() {
    for k in 0..50 {
        let spec = dispersal::harness::batch_item_spec(99, k, 0, 300, &Family::ALL);
        let wide = gen_instance(&spec).unwrap();
        let narrow = ProblemInstance::<i64>::from_sorted(
            wide.delta as i64,
            wide.initial.iter().map(|&x| x as i64).collect(),
        )
        .unwrap();
        let a = solve(&wide, SolveOptions::default()).unwrap();
        let b = solve(&narrow, SolveOptions::default()).unwrap();
        assert_eq!(a.total_cost, i128::from(b.total_cost));
        assert!(a.configuration.positions.iter().zip(&b.configuration.positions).all(|(&x, &y)| x == i128::from(y)));
        assert_eq!(a.counters, b.counters);
    }
}

#[test]
fn heap_ops_within_bound_and_monotone() {
    for family in Family::ALL {
        let mut last = 0;
        for n in [1usize, 10, 100, 1000, 10_000, 100_000] {
            let inst = gen_instance(&bench_spec(n, family, 3)).unwrap();
            let c = solve(&inst, SolveOptions::default()).unwrap().counters;
            assert!((c.heap_ops as f64) <= heap_ops_bound(n), "{family} n={n}: {}", c.heap_ops);
            assert!(c.heap_ops >= last, "{family} n={n}");
            assert_eq!(c.iterations, n as u64);
            // Two-pass pairing heap: comparisons stay within 2 m log2(m + 2) for m primitives.
            let m = c.heap_ops as f64;
            assert!((c.heap_comparisons as f64) <= 2.0 * m * (m + 2.0).log2(), "{family} n={n}");
            last = c.heap_ops;
        }
    }
}

#[test]
fn single_chain_family_is_one_chain_of_shifts() {
    let inst = gen_instance(&bench_spec(5000, Family::AdversarialSingleChain, 1)).unwrap();
    let r = solve(&inst, SolveOptions::default()).unwrap();
    assert_eq!(r.counters.merges, 0);
    assert_eq!(dispersal::decompose_chains(&inst, &r.configuration).unwrap().len(), 1);
}
