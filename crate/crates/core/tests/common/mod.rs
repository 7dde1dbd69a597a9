#![allow(dead_code)]

use std::collections::BTreeSet;

use causal_explain::{sym, CausalAtom, ExplanationAtom, OntAtom, Theory};
use rand::Rng;

/// A random theory over at most 8 symbols with 1 to 10 causal atoms and at
/// most 10 IS-A links. Self-causes and causal cycles are allowed; IS-A links
/// always point from a lower to a higher index so the ontology stays acyclic.
pub fn random_theory(rng: &mut impl Rng) -> Theory {
    let n = rng.gen_range(2..=8);
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut t = Theory::default();
    for _ in 0..rng.gen_range(1..=10) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        t.causal
            .insert(CausalAtom::new(sym(&names[a]), sym(&names[b])));
    }
    for _ in 0..rng.gen_range(0..=10) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a < b {
            t.ontology
                .insert(OntAtom::new(sym(&names[a]), sym(&names[b])));
        }
    }
    t
}

pub fn keys(atoms: &BTreeSet<ExplanationAtom>) -> BTreeSet<String> {
    atoms
        .iter()
        .map(|a| format!("({},{},{})", a.from, a.to, a.conditions))
        .collect()
}
