mod common;

use causal_explain::closure::ClosureRelations;
use causal_explain::generate::generate;
use causal_explain::optimize::optimize;
use causal_explain::oracle;
use causal_explain::pipeline::oracle_diff;
use common::{keys, random_theory};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mismatches(seed: u64, count: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for case in 0..count {
        let t = random_theory(&mut rng);
        let c = ClosureRelations::compute(&t);
        let ours = keys(&optimize(&generate(&t), &c.impco));
        let theirs = keys(&oracle::optimal(&t, 8).unwrap());
        if ours != theirs {
            bad.push(case);
        }
    }
    bad
}

#[test]
fn thousand_random_theories_match() {
    assert_eq!(mismatches(7, 1000), Vec::<usize>::new());
}

#[test]
fn another_seed_matches() {
    assert_eq!(mismatches(11, 500), Vec::<usize>::new());
}

#[test]
fn reference_theories_match() {
    for t in [
        causal_explain::fixtures::generic_diagram(),
        causal_explain::fixtures::pruning_example(),
        causal_explain::fixtures::sibling_bells(),
    ] {
        assert!(oracle_diff(&t, 16).unwrap().is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pipeline_equals_oracle(seed in any::<u64>()) {
        let t = random_theory(&mut ChaCha8Rng::seed_from_u64(seed));
        let diff = oracle_diff(&t, 8).unwrap();
        prop_assert!(diff.is_empty(), "{:?}", diff);
    }
}
