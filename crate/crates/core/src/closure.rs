//! Derived binary relations over symbols: the IS-A closure `ontt`, the
//! implication relation `impco` induced by causal and ontological atoms, and
//! its strict part `impcos`.

use std::collections::{BTreeMap, BTreeSet};

use crate::symbol::Symbol;
use crate::theory::{symbol_universe, OntAtom, Theory};

/// A binary relation indexed in both directions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relation {
    succ: BTreeMap<Symbol, BTreeSet<Symbol>>,
    pred: BTreeMap<Symbol, BTreeSet<Symbol>>,
    len: usize,
}

static EMPTY: BTreeSet<Symbol> = BTreeSet::new();

impl Relation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns true if the pair was new.
    pub fn insert(&mut self, a: Symbol, b: Symbol) -> bool {
        let fresh = self.succ.entry(a.clone()).or_default().insert(b.clone());
        if fresh {
            self.pred.entry(b).or_default().insert(a);
            self.len += 1;
        }
        fresh
    }

    pub fn contains(&self, a: &Symbol, b: &Symbol) -> bool {
        self.succ.get(a).is_some_and(|s| s.contains(b))
    }

    pub fn successors(&self, a: &Symbol) -> &BTreeSet<Symbol> {
        self.succ.get(a).unwrap_or(&EMPTY)
    }

    pub fn predecessors(&self, b: &Symbol) -> &BTreeSet<Symbol> {
        self.pred.get(b).unwrap_or(&EMPTY)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Symbol)> {
        self.succ
            .iter()
            .flat_map(|(a, bs)| bs.iter().map(move |b| (a, b)))
    }

    pub fn pairs(&self) -> BTreeSet<(Symbol, Symbol)> {
        self.iter().map(|(a, b)| (a.clone(), b.clone())).collect()
    }
}

impl FromIterator<(Symbol, Symbol)> for Relation {
    fn from_iter<T: IntoIterator<Item = (Symbol, Symbol)>>(iter: T) -> Self {
        let mut r = Relation::new();
        for (a, b) in iter {
            r.insert(a, b);
        }
        r
    }
}

/// Saturates `closure` under `closure ∘ step` in rounds, feeding only the
/// pairs found in the previous round back in.
fn saturate(closure: &mut Relation, step: &Relation) {
    let mut delta: Vec<(Symbol, Symbol)> = closure.pairs().into_iter().collect();
    while !delta.is_empty() {
        let mut next = Vec::new();
        for (i, j) in &delta {
            for k in step.successors(j) {
                if !closure.contains(i, k) {
                    next.push((i.clone(), k.clone()));
                }
            }
        }
        delta = next
            .into_iter()
            .filter(|(i, k)| closure.insert(i.clone(), k.clone()))
            .collect();
    }
}

/// Least fixpoint of `ontt(I,J) :- ont(I,J)` and `ontt(I,K) :- ontt(I,J), ont(J,K)`.
pub fn ont_closure(ontology: &BTreeSet<OntAtom>) -> Relation {
    let base: Relation = ontology
        .iter()
        .map(|o| (o.sub.clone(), o.sup.clone()))
        .collect();
    let mut ontt = base.clone();
    saturate(&mut ontt, &base);
    ontt
}

/// Reflexive (on `symbol_e`) transitive closure of the causal and
/// ontological edges.
pub fn impco_closure(t: &Theory, symbol_e: &BTreeSet<Symbol>) -> Relation {
    let base: Relation = t
        .causal
        .iter()
        .map(|c| (c.cause.clone(), c.effect.clone()))
        .chain(t.ontology.iter().map(|o| (o.sub.clone(), o.sup.clone())))
        .collect();
    let mut impco = base.clone();
    saturate(&mut impco, &base);
    for s in symbol_e {
        impco.insert(s.clone(), s.clone());
    }
    impco
}

/// `impCOs(I,J) :- impCO(I,J), not impCO(J,I)`.
pub fn strict_impco(impco: &Relation) -> Relation {
    impco
        .iter()
        .filter(|(i, j)| !impco.contains(j, i))
        .map(|(i, j)| (i.clone(), j.clone()))
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosureRelations {
    pub ontt: Relation,
    pub impco: Relation,
    pub impcos: Relation,
}

impl ClosureRelations {
    pub fn compute(t: &Theory) -> Self {
        let universe = symbol_universe(t);
        let ontt = ont_closure(&t.ontology);
        let impco = impco_closure(t, &universe.symbol_e);
        let impcos = strict_impco(&impco);
        ClosureRelations {
            ontt,
            impco,
            impcos,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::generic_diagram;
    use crate::sym;

    fn pair(a: &str, b: &str) -> (Symbol, Symbol) {
        (sym(a), sym(b))
    }

    #[test]
    fn ont_closure_is_transitive() {
        let mut t = Theory::default();
        t.add_ont("beta1", "beta").add_ont("beta", "beta2");
        let ontt = ont_closure(&t.ontology);
        assert!(ontt.contains(&sym("beta1"), &sym("beta2")));
        assert_eq!(ontt.len(), 3);
        assert!(ont_closure(&BTreeSet::new()).is_empty());
    }

    #[test]
    fn ont_closure_of_generic_diagram() {
        let ontt = ont_closure(&generic_diagram().ontology);
        assert!(ontt.contains(&sym("epsilon1"), &sym("epsilon3")));
        assert!(ontt.contains(&sym("epsilon1"), &sym("epsilon")));
        assert!(ontt.contains(&sym("beta3"), &sym("beta2")));
    }

    #[test]
    fn impco_small_case() {
        let mut t = Theory::default();
        t.add_cause("a", "b").add_ont("b", "c");
        let c = ClosureRelations::compute(&t);
        for (x, y) in [
            ("a", "b"),
            ("b", "c"),
            ("a", "c"),
            ("a", "a"),
            ("b", "b"),
            ("c", "c"),
        ] {
            assert!(c.impco.contains(&sym(x), &sym(y)), "missing ({x},{y})");
        }
        assert_eq!(c.impco.len(), 6);
    }

    #[test]
    fn impco_isolated_symbol_is_reflexive_only() {
        let symbol_e: BTreeSet<Symbol> = [sym("s")].into();
        let impco = impco_closure(&Theory::default(), &symbol_e);
        assert_eq!(impco.pairs(), [pair("s", "s")].into());
    }

    #[test]
    fn strict_part() {
        let impco: Relation = [pair("a", "a"), pair("a", "b"), pair("b", "b")]
            .into_iter()
            .collect();
        assert_eq!(strict_impco(&impco).pairs(), [pair("a", "b")].into());

        let sym_pair: Relation = [pair("a", "b"), pair("b", "a"), pair("a", "a")]
            .into_iter()
            .collect();
        assert!(strict_impco(&sym_pair).is_empty());
    }

    #[test]
    fn ontology_cycles_collapse_out_of_strict_part() {
        let mut t = Theory::default();
        t.add_ont("a", "b").add_ont("b", "a").add_ont("b", "c");
        let c = ClosureRelations::compute(&t);
        assert!(c.ontt.contains(&sym("a"), &sym("a")));
        assert!(!c.impcos.contains(&sym("a"), &sym("b")));
        assert!(c.impcos.contains(&sym("a"), &sym("c")));
    }
}
