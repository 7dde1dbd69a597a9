//! Stage 1: candidate explanation atoms.
//!
//! Initial explanations come from a causal atom and at most two IS-A steps.
//! They are seeded into condition sets and then chained, gathering one extra
//! condition per step, until no new atom appears.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::closure::{ClosureRelations, Relation};
use crate::symbol::Symbol;
use crate::theory::{canonicalize, ConditionSet, ExplanationAtom, Theory};

/// `from` explains `to` because `{from, extra}` is possible, obtained
/// without chaining.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InitialExplanation {
    pub from: Symbol,
    pub to: Symbol,
    pub extra: Symbol,
}

impl InitialExplanation {
    fn new(from: &Symbol, to: &Symbol, extra: &Symbol) -> Self {
        InitialExplanation {
            from: from.clone(),
            to: to.clone(),
            extra: extra.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerateOptions {
    /// Skip extending `(i,k,S)` towards `j` when `(i,j,S)` is already known.
    /// Only prunes supersets of existing sets.
    pub superset_guard: bool,
    /// Also emit every set obtained by dropping a condition implied by another
    /// member of the same set. The explaining symbol is never dropped.
    pub reduce_implied: bool,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            superset_guard: true,
            reduce_implied: true,
        }
    }
}

/// The base initial rules. With `cause(i,x)`:
///
/// * `(i,x,i)`;
/// * `(i,j,i)` if `j` IS-A `x` and `i` implies `j`, else `(i,j,j)`;
/// * `(i,j,i)` if `x` IS-A `j`;
/// * `(i,j,i)` if some `e` IS-A both `x` and `j` and `i` implies `e`.
pub fn ecinit_base(t: &Theory, c: &ClosureRelations) -> BTreeSet<InitialExplanation> {
    let mut out = BTreeSet::new();
    for cause in &t.causal {
        let (i, x) = (&cause.cause, &cause.effect);
        out.insert(InitialExplanation::new(i, x, i));
        for j in c.ontt.predecessors(x) {
            if c.impco.contains(i, j) {
                out.insert(InitialExplanation::new(i, j, i));
            } else {
                out.insert(InitialExplanation::new(i, j, j));
            }
        }
        for j in c.ontt.successors(x) {
            out.insert(InitialExplanation::new(i, j, i));
        }
        for e in c.ontt.predecessors(x) {
            if c.impco.contains(i, e) {
                for j in c.ontt.successors(e) {
                    out.insert(InitialExplanation::new(i, j, i));
                }
            }
        }
    }
    out
}

/// Initial explanations through a common sub-concept `e` of the caused `x`
/// and the target `j`, for pairs the base rules left open. A candidate is
/// dropped when a sibling candidate's witness is strictly weaker.
pub fn ecinit_double_ontology(
    t: &Theory,
    c: &ClosureRelations,
    base: &BTreeSet<InitialExplanation>,
) -> BTreeSet<InitialExplanation> {
    let has = |i: &Symbol, j: &Symbol, e: &Symbol| base.contains(&InitialExplanation::new(i, j, e));

    let mut candidates: BTreeMap<(Symbol, Symbol), BTreeSet<Symbol>> = BTreeMap::new();
    for cause in &t.causal {
        let (i, x) = (&cause.cause, &cause.effect);
        for e in c.ontt.predecessors(x) {
            if !has(i, e, e) {
                continue;
            }
            for j in c.ontt.successors(e) {
                if !has(i, j, i) && !has(i, j, j) {
                    candidates
                        .entry((i.clone(), j.clone()))
                        .or_default()
                        .insert(e.clone());
                }
            }
        }
    }

    let mut out = BTreeSet::new();
    for ((i, j), witnesses) in &candidates {
        for e in witnesses {
            let dominated = witnesses.iter().any(|e1| c.impcos.contains(e, e1));
            if !dominated {
                out.insert(InitialExplanation::new(i, j, e));
            }
        }
    }
    out
}

/// Seeds one condition set per pair with the precedence
/// `{i}` over `{i,j}` over `{i,e}`.
pub fn seed_ecsets(inits: &BTreeSet<InitialExplanation>) -> BTreeSet<ExplanationAtom> {
    let mut by_pair: BTreeMap<(&Symbol, &Symbol), Vec<&Symbol>> = BTreeMap::new();
    for init in inits {
        by_pair
            .entry((&init.from, &init.to))
            .or_default()
            .push(&init.extra);
    }

    let mut out = BTreeSet::new();
    for ((i, j), extras) in by_pair {
        let sets: Vec<Vec<Symbol>> = if extras.contains(&i) {
            vec![vec![i.clone()]]
        } else if extras.contains(&j) {
            vec![vec![i.clone(), j.clone()]]
        } else {
            extras
                .iter()
                .map(|e| vec![i.clone(), (*e).clone()])
                .collect()
        };
        for s in sets {
            let conditions = canonicalize(s).expect("seed sets are never empty");
            out.insert(
                ExplanationAtom::new(i.clone(), j.clone(), conditions)
                    .expect("seed sets contain the explaining symbol"),
            );
        }
    }
    out
}

/// Chains seeds through initial explanations until saturation:
/// `(i,k,S)` with `(k,j,k)` gives `(i,j,S)`, and with `(k,j,e)`, `e ≠ k`,
/// gives `(i,j,S ∪ {e})`.
pub fn gather_transitive(
    seeds: &BTreeSet<ExplanationAtom>,
    inits: &BTreeSet<InitialExplanation>,
    opts: GenerateOptions,
) -> BTreeSet<ExplanationAtom> {
    gather_with_edges(seeds, inits, opts, false).0
}

type Key = (Symbol, Symbol, ConditionSet);

fn gather_with_edges(
    seeds: &BTreeSet<ExplanationAtom>,
    inits: &BTreeSet<InitialExplanation>,
    opts: GenerateOptions,
    record: bool,
) -> (BTreeSet<ExplanationAtom>, Vec<(Key, Key)>) {
    let mut edges = Vec::new();
    let mut steps: HashMap<&Symbol, Vec<(&Symbol, &Symbol)>> = HashMap::new();
    for init in inits {
        steps
            .entry(&init.from)
            .or_default()
            .push((&init.to, &init.extra));
    }

    let mut known: HashSet<(Symbol, Symbol, ConditionSet)> = seeds
        .iter()
        .map(|a| (a.from.clone(), a.to.clone(), a.conditions.clone()))
        .collect();
    let mut delta: Vec<(Symbol, Symbol, ConditionSet)> = known.iter().cloned().collect();
    delta.sort();

    while !delta.is_empty() {
        let mut round: BTreeSet<(Symbol, Symbol, ConditionSet)> = BTreeSet::new();
        for (i, k, set) in &delta {
            let Some(next) = steps.get(k) else { continue };
            for &(j, e2) in next {
                let derived = if e2 == k {
                    set.clone()
                } else {
                    // Guard is evaluated against the state at the start of the round.
                    if opts.superset_guard && known.contains(&(i.clone(), j.clone(), set.clone())) {
                        if record {
                            let skipped = (i.clone(), j.clone(), set.with(e2));
                            edges.push(((i.clone(), k.clone(), set.clone()), skipped));
                        }
                        continue;
                    }
                    set.with(e2)
                };
                let key = (i.clone(), j.clone(), derived);
                if record {
                    edges.push(((i.clone(), k.clone(), set.clone()), key.clone()));
                }
                if !known.contains(&key) {
                    round.insert(key);
                }
            }
        }
        known.extend(round.iter().cloned());
        delta = round.into_iter().collect();
    }

    let atoms = known
        .into_iter()
        .map(|(i, j, s)| {
            ExplanationAtom::new(i, j, s).expect("gathering keeps the explaining symbol")
        })
        .collect();
    (atoms, edges)
}

/// All initial explanations: base rules plus the surviving double-ontology ones.
pub fn initial_explanations(t: &Theory, c: &ClosureRelations) -> BTreeSet<InitialExplanation> {
    let mut inits = ecinit_base(t, c);
    let extra = ecinit_double_ontology(t, c, &inits);
    inits.extend(extra);
    inits
}

/// Runs the whole generation stage with precomputed closures.
pub fn generate_with(
    t: &Theory,
    c: &ClosureRelations,
    opts: GenerateOptions,
) -> BTreeSet<ExplanationAtom> {
    let inits = initial_explanations(t, c);
    let seeds = seed_ecsets(&inits);
    if !opts.reduce_implied {
        return gather_transitive(&seeds, &inits, opts);
    }
    let cyclic = cyclic_symbols(&c.impco);
    let (mut gathered, edges) = gather_with_edges(&seeds, &inits, opts, !cyclic.is_empty());
    if !cyclic.is_empty() {
        gathered.extend(equivalent_variants(t, c, &cyclic, &seeds, &edges));
    }
    add_reductions(&gathered, &c.impco)
}

/// Symbols that imply and are implied by some other symbol.
fn cyclic_symbols(impco: &Relation) -> BTreeSet<Symbol> {
    impco
        .iter()
        .filter(|(a, b)| a != b && impco.contains(b, a))
        .map(|(a, _)| a.clone())
        .collect()
}

/// What a single chain step `(a, g)` may carry before simplification, one
/// alternative per common sub-concept `d` of the caused symbol and `g`.
/// Only cyclic symbols are kept, the others cannot produce a variant.
fn step_carry(
    t: &Theory,
    c: &ClosureRelations,
    cyclic: &BTreeSet<Symbol>,
) -> HashMap<(Symbol, Symbol), BTreeSet<BTreeSet<Symbol>>> {
    let mut out: HashMap<(Symbol, Symbol), BTreeSet<BTreeSet<Symbol>>> = HashMap::new();
    for cause in &t.causal {
        let (a, b) = (&cause.cause, &cause.effect);
        for d in std::iter::once(b).chain(c.ontt.predecessors(b)) {
            let alt: BTreeSet<Symbol> = [a, d]
                .into_iter()
                .filter(|s| cyclic.contains(*s))
                .cloned()
                .collect();
            for g in std::iter::once(d).chain(c.ontt.successors(d)) {
                out.entry((a.clone(), g.clone()))
                    .or_default()
                    .insert(alt.clone());
            }
        }
    }
    out
}

/// Sets obtained by carrying the cyclic conditions a chain passes through
/// and then simplifying. These differ from the plain sets only by swapping
/// members for equivalent ones.
fn equivalent_variants(
    t: &Theory,
    c: &ClosureRelations,
    cyclic: &BTreeSet<Symbol>,
    seeds: &BTreeSet<ExplanationAtom>,
    edges: &[(Key, Key)],
) -> BTreeSet<ExplanationAtom> {
    let carry = step_carry(t, c, cyclic);
    let mut alts: HashMap<Key, BTreeSet<BTreeSet<Symbol>>> = HashMap::new();
    for a in seeds {
        if let Some(x) = carry.get(&(a.from.clone(), a.to.clone())) {
            alts.insert(
                (a.from.clone(), a.to.clone(), a.conditions.clone()),
                x.clone(),
            );
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for (src, dst) in edges {
            let (Some(from_src), Some(step)) =
                (alts.get(src), carry.get(&(src.1.clone(), dst.1.clone())))
            else {
                continue;
            };
            let add: Vec<BTreeSet<Symbol>> = from_src
                .iter()
                .flat_map(|x| step.iter().map(move |y| x.union(y).cloned().collect()))
                .collect();
            let entry = alts.entry(dst.clone()).or_default();
            for x in add {
                changed |= entry.insert(x);
            }
        }
    }
    let mut out = BTreeSet::new();
    for ((i, j, set), xs) in alts {
        for x in xs {
            if x.iter().all(|s| set.contains(s)) {
                continue;
            }
            let mut conditions = set.clone();
            for s in &x {
                conditions = conditions.with(s);
            }
            out.insert(
                ExplanationAtom::new(i.clone(), j.clone(), conditions)
                    .expect("from stays in the set"),
            );
        }
    }
    out
}

/// Closes `atoms` under removal of a condition `phi != from` that is implied
/// by another member of the set.
pub fn add_reductions(
    atoms: &BTreeSet<ExplanationAtom>,
    impco: &Relation,
) -> BTreeSet<ExplanationAtom> {
    let mut out = atoms.clone();
    let mut todo: Vec<ExplanationAtom> = atoms.iter().cloned().collect();
    while let Some(a) = todo.pop() {
        for phi in a.conditions.iter() {
            if *phi == a.from {
                continue;
            }
            let implied = a
                .conditions
                .iter()
                .any(|psi| psi != phi && impco.contains(psi, phi));
            if !implied {
                continue;
            }
            let reduced = ExplanationAtom {
                conditions: a.conditions.without(phi),
                ..a.clone()
            };
            if out.insert(reduced.clone()) {
                todo.push(reduced);
            }
        }
    }
    out
}

pub fn generate(t: &Theory) -> BTreeSet<ExplanationAtom> {
    generate_with(t, &ClosureRelations::compute(t), GenerateOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{generic_diagram, pruning_example};
    use crate::sym;

    fn init(i: &str, j: &str, e: &str) -> InitialExplanation {
        InitialExplanation::new(&sym(i), &sym(j), &sym(e))
    }

    fn sets_for(atoms: &BTreeSet<ExplanationAtom>, i: &str, j: &str) -> BTreeSet<String> {
        atoms
            .iter()
            .filter(|a| a.from == sym(i) && a.to == sym(j))
            .map(|a| a.conditions.to_string())
            .collect()
    }

    #[test]
    fn single_cause() {
        let mut t = Theory::default();
        t.add_cause("a", "b");
        let c = ClosureRelations::compute(&t);
        assert_eq!(ecinit_base(&t, &c), [init("a", "b", "a")].into());
        let atoms = generate(&t);
        assert_eq!(atoms.len(), 1);
        assert_eq!(sets_for(&atoms, "a", "b"), ["{a}".to_string()].into());
    }

    #[test]
    fn base_rules_on_generic_diagram() {
        let t = generic_diagram();
        let c = ClosureRelations::compute(&t);
        let base = ecinit_base(&t, &c);
        assert!(base.contains(&init("beta2", "gamma1", "gamma1")));
        assert!(base.contains(&init("alpha", "beta2", "alpha")));
        assert!(base.contains(&init("alpha", "beta3", "beta3")));
    }

    #[test]
    fn double_ontology_on_generic_diagram() {
        let t = generic_diagram();
        let c = ClosureRelations::compute(&t);
        let base = ecinit_base(&t, &c);
        let extra = ecinit_double_ontology(&t, &c, &base);
        assert!(extra.contains(&init("beta2", "gamma3", "gamma2")));
        assert!(extra.contains(&init("beta3", "epsilon3", "epsilon1")));
        assert!(extra.contains(&init("beta3", "epsilon3", "epsilon2")));
    }

    #[test]
    fn double_ontology_keeps_only_weaker_witness() {
        // e2 IS-A e1, both below x and j: e2 is strictly stronger.
        let mut t = Theory::default();
        t.add_cause("i", "x")
            .add_ont("e1", "x")
            .add_ont("e1", "j")
            .add_ont("e2", "e1");
        let c = ClosureRelations::compute(&t);
        let base = ecinit_base(&t, &c);
        let extra = ecinit_double_ontology(&t, &c, &base);
        assert_eq!(extra, [init("i", "j", "e1")].into());
    }

    #[test]
    fn seed_precedence() {
        let inits: BTreeSet<_> = [init("a", "b", "a"), init("a", "b", "e")].into();
        let seeds = seed_ecsets(&inits);
        assert_eq!(sets_for(&seeds, "a", "b"), ["{a}".to_string()].into());

        let inits: BTreeSet<_> = [init("beta2", "gamma1", "gamma1")].into();
        let seeds = seed_ecsets(&inits);
        assert_eq!(
            sets_for(&seeds, "beta2", "gamma1"),
            ["{beta2,gamma1}".to_string()].into()
        );

        let inits: BTreeSet<_> = [init("a", "b", "b"), init("a", "b", "e")].into();
        assert_eq!(seed_ecsets(&inits).len(), 1);

        assert!(seed_ecsets(&BTreeSet::new()).is_empty());
    }

    #[test]
    fn gathering_on_generic_diagram() {
        let atoms = generate(&generic_diagram());
        let sets = sets_for(&atoms, "alpha", "delta");
        for s in [
            "{alpha,gamma1}",
            "{alpha,gamma2}",
            "{alpha,beta3,epsilon1}",
            "{alpha,beta3,epsilon2}",
            "{alpha,beta1,gamma1}",
        ] {
            assert!(sets.contains(s), "missing {s} in {sets:?}");
        }
    }

    #[test]
    fn gathering_without_composable_steps_returns_seeds() {
        let inits: BTreeSet<_> = [init("a", "b", "a"), init("c", "d", "c")].into();
        let seeds = seed_ecsets(&inits);
        assert_eq!(
            gather_transitive(&seeds, &inits, GenerateOptions::default()),
            seeds
        );
    }

    #[test]
    fn causal_cycle_saturates() {
        let mut t = Theory::default();
        t.add_cause("a", "b")
            .add_cause("b", "c")
            .add_cause("c", "a");
        t.add_ont("d", "a");
        let atoms = generate(&t);
        assert!(atoms.iter().all(|a| a.conditions.contains(&a.from)));
        assert!(!sets_for(&atoms, "a", "a").is_empty());
    }

    #[test]
    fn no_sibling_explanations() {
        let mut t = Theory::default();
        t.add_cause("x", "loud_bell")
            .add_ont("loud_bell", "bell")
            .add_ont("soft_bell", "bell");
        let atoms = generate(&t);
        assert!(atoms.iter().all(|a| a.to != sym("soft_bell")));
        assert_eq!(sets_for(&atoms, "x", "bell"), ["{x}".to_string()].into());
    }

    #[test]
    fn pruning_example_candidates() {
        let atoms = generate(&pruning_example());
        assert_eq!(
            sets_for(&atoms, "alpha", "gamma"),
            ["{alpha,beta1}".to_string(), "{alpha,beta2}".to_string()].into()
        );
    }

    #[test]
    fn deterministic() {
        let t = generic_diagram();
        assert_eq!(generate(&t), generate(&t));
    }
}
