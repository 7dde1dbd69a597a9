// Two copies of the generic diagram linked through a relay lattice.

use std::collections::BTreeMap;
use std::time::Instant;

use causal_explain::closure::ClosureRelations;
use causal_explain::fixtures::big_example;
use causal_explain::generate::generate;
use causal_explain::optimize::optimize;
use causal_explain::theory::symbol_universe;

pub fn main() {
    let t = big_example();
    let start = Instant::now();
    let generated = generate(&t);
    let c = ClosureRelations::compute(&t);
    let optimal = optimize(&generated, &c.impco);
    let elapsed = start.elapsed();

    let mut per_pair: BTreeMap<_, usize> = BTreeMap::new();
    for a in &generated {
        *per_pair.entry((a.from.clone(), a.to.clone())).or_default() += 1;
    }
    let ((from, to), n) = per_pair
        .iter()
        .max_by_key(|(_, n)| **n)
        .expect("atoms exist");
    println!("symbols:   {}", symbol_universe(&t).symbols.len());
    println!("generated: {}", generated.len());
    println!("optimal:   {}", optimal.len());
    println!("widest:    ({from},{to}) with {n} generated atoms");
    println!("time:      {elapsed:?}");
}
