// Compares the pipeline with the brute-force derivation on random theories.
// Pass a count and a seed to change the sample: `oracle_check 2000 42`.

use causal_explain::pipeline::oracle_diff;
use causal_explain::{sym, CausalAtom, OntAtom, Theory};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_theory(rng: &mut ChaCha8Rng) -> Theory {
    let n = rng.gen_range(2..=8);
    let name = |i: usize| sym(&format!("s{i}"));
    let mut t = Theory::default();
    for _ in 0..rng.gen_range(1..=10) {
        t.causal.insert(CausalAtom::new(
            name(rng.gen_range(0..n)),
            name(rng.gen_range(0..n)),
        ));
    }
    for _ in 0..rng.gen_range(0..=10) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a < b {
            t.ontology.insert(OntAtom::new(name(a), name(b)));
        }
    }
    t
}

pub fn main() {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let count = args.first().copied().unwrap_or(200);
    let mut rng = ChaCha8Rng::seed_from_u64(args.get(1).copied().unwrap_or(1));
    let mut mismatches = 0;
    for i in 0..count {
        let t = random_theory(&mut rng);
        let diff = oracle_diff(&t, 8).expect("within the oracle bound");
        if !diff.is_empty() {
            mismatches += 1;
            println!("theory {i}: {diff:?}");
        }
    }
    println!("{mismatches}/{count} mismatches");
}
