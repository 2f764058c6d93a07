//! Harness-level checks that span modules: the greedy baseline's
//! 2-approximation and the regime composition of batch sweeps.

use lexmax::harness::{generate_instance, sweep, GenKind, GenParams, SweepBatch, SweepConfig};
use lexmax::weights::{parse_rational, Rational};

fn rat(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

#[test]
fn greedy_is_always_within_half_of_the_optimum() {
    let two = rat("2");
    let mut checked = 0usize;
    for kind in [GenKind::Matching, GenKind::Intersection] {
        for seed in 0..250u64 {
            let mut params = GenParams::new(kind, 700_000 + seed);
            params.weight_levels = 1 + (seed as usize % 4);
            params.alpha_min = rat("21/20");
            params.alpha_max = rat("4");
            let instance = generate_instance(&params).unwrap();
            let (_, greedy) = instance.greedy_baseline().unwrap();
            let (_, opt) = instance.solve_max_weight().unwrap();
            assert!(&greedy * &two >= opt, "greedy below half of the optimum on {}", instance.label);
            checked += 1;
        }
    }
    assert_eq!(checked, 500);
}

#[test]
fn above_threshold_batches_are_pure_equivalence() {
    let mut params = GenParams::new(GenKind::Matching, 42_000);
    params.weight_levels = 2;
    params.alpha_min = rat("5/2");
    params.alpha_max = rat("4");
    let config = SweepConfig { batches: vec![SweepBatch { params, count: 40 }], ..Default::default() };
    let report = sweep(&config).unwrap();
    assert!(report.all_passed);
    assert_eq!(report.batches[0].bound_instances, 0);
    assert_eq!(report.batches[0].equivalence_instances, 40);
    // Above the threshold, lexopt equals opt, so ratios are exactly one.
    assert_eq!(report.batches[0].min_ratio, Some(rat("1")));
}
