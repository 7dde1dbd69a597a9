//! Stage 2: pruning generated atoms down to quasi-optimal ones.
//!
//! Two passes per `(from, to)` group. The first drops any condition set that
//! strictly contains a sibling. The second drops a set when it element-wise
//! implies a sibling without the converse holding, i.e. when its conditions
//! are strictly harder to satisfy. Only whole sets are ever removed.

use std::collections::BTreeSet;

use crate::closure::Relation;
use crate::theory::{group_by_pair, ConditionSet, ExplanationAtom, Status};

/// Removes, within each `(from, to)` group, every strict superset of a
/// sibling set.
pub fn prune_supersets(atoms: &BTreeSet<ExplanationAtom>) -> BTreeSet<ExplanationAtom> {
    let mut out = BTreeSet::new();
    for group in group_by_pair(atoms).values() {
        for a in group {
            let too_large = group
                .iter()
                .any(|b| b.conditions != a.conditions && b.conditions.is_subset(&a.conditions));
            if !too_large {
                out.insert((*a).clone());
            }
        }
    }
    out
}

/// True when every member of `weaker` outside `stronger` is implied by some
/// member of `stronger` outside `weaker`.
pub fn elementwise_implies(
    stronger: &ConditionSet,
    weaker: &ConditionSet,
    impco: &Relation,
) -> bool {
    weaker.iter().filter(|e2| !stronger.contains(e2)).all(|e2| {
        stronger
            .iter()
            .filter(|e1| !weaker.contains(e1))
            .any(|e1| impco.contains(e1, e2))
    })
}

/// Drops sets that are one-directionally stronger than a sibling. Survivors
/// are marked optimal.
pub fn entailment_subsumption(
    atoms: &BTreeSet<ExplanationAtom>,
    impco: &Relation,
) -> BTreeSet<ExplanationAtom> {
    let mut out = BTreeSet::new();
    for group in group_by_pair(atoms).values() {
        for a in group {
            let too_strong = group.iter().any(|b| {
                b.conditions != a.conditions
                    && elementwise_implies(&a.conditions, &b.conditions, impco)
                    && !elementwise_implies(&b.conditions, &a.conditions, impco)
            });
            if !too_strong {
                out.insert((*a).clone().with_status(Status::Optimal));
            }
        }
    }
    out
}

pub fn optimize(atoms: &BTreeSet<ExplanationAtom>, impco: &Relation) -> BTreeSet<ExplanationAtom> {
    entailment_subsumption(&prune_supersets(atoms), impco)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::ClosureRelations;
    use crate::fixtures::{generic_diagram, pruning_example};
    use crate::generate::generate;
    use crate::sym;
    use crate::theory::canonicalize;

    fn atom(i: &str, j: &str, set: &[&str]) -> ExplanationAtom {
        ExplanationAtom::new(
            sym(i),
            sym(j),
            canonicalize(set.iter().map(|s| sym(s))).unwrap(),
        )
        .unwrap()
    }

    fn rendered(atoms: &BTreeSet<ExplanationAtom>, i: &str, j: &str) -> BTreeSet<String> {
        atoms
            .iter()
            .filter(|a| a.from == sym(i) && a.to == sym(j))
            .map(|a| a.conditions.to_string())
            .collect()
    }

    #[test]
    fn supersets_are_pruned() {
        let atoms: BTreeSet<_> = [
            atom("alpha", "delta", &["alpha", "gamma1"]),
            atom("alpha", "delta", &["alpha", "beta1", "gamma1"]),
        ]
        .into();
        let kept = prune_supersets(&atoms);
        assert_eq!(
            rendered(&kept, "alpha", "delta"),
            ["{alpha,gamma1}".to_string()].into()
        );
    }

    #[test]
    fn singleton_and_incomparable_groups_unchanged() {
        let one: BTreeSet<_> = [atom("a", "b", &["a"])].into();
        assert_eq!(prune_supersets(&one), one);

        let two: BTreeSet<_> = [atom("a", "b", &["a", "c"]), atom("a", "b", &["a", "d"])].into();
        assert_eq!(prune_supersets(&two), two);
    }

    #[test]
    fn pruning_example_keeps_weaker_set() {
        let t = pruning_example();
        let c = ClosureRelations::compute(&t);
        let out = optimize(&generate(&t), &c.impco);
        assert_eq!(
            rendered(&out, "alpha", "gamma"),
            ["{alpha,beta1}".to_string()].into()
        );
    }

    #[test]
    fn no_cross_implication_keeps_both() {
        let atoms: BTreeSet<_> = [atom("a", "b", &["a", "c"]), atom("a", "b", &["a", "d"])].into();
        let out = entailment_subsumption(&atoms, &Relation::new());
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|a| a.status == Status::Optimal));
    }

    #[test]
    fn mutual_domination_keeps_both() {
        let atoms: BTreeSet<_> = [atom("a", "b", &["a", "c"]), atom("a", "b", &["a", "d"])].into();
        let impco: Relation = [(sym("c"), sym("d")), (sym("d"), sym("c"))]
            .into_iter()
            .collect();
        assert_eq!(entailment_subsumption(&atoms, &impco).len(), 2);
    }

    #[test]
    fn generic_diagram_has_four_optimal_paths() {
        let t = generic_diagram();
        let c = ClosureRelations::compute(&t);
        let out = optimize(&generate(&t), &c.impco);
        assert_eq!(
            rendered(&out, "alpha", "delta"),
            [
                "{alpha,beta3,epsilon1}",
                "{alpha,beta3,epsilon2}",
                "{alpha,gamma1}",
                "{alpha,gamma2}"
            ]
            .iter()
            .map(|s| s.to_string())
            .collect()
        );
    }

    #[test]
    fn empty_in_empty_out() {
        assert!(optimize(&BTreeSet::new(), &Relation::new()).is_empty());
    }
}
