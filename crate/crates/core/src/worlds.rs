//! Stage 3: worlds, truth propagation and per-world checking of condition
//! sets.
//!
//! A world picks one literal from each disjunctive clause (any non-empty
//! subset when disjunction is inclusive) and one polarity for each completed
//! atom, on top of the unit facts. Truth then flows forward along implication
//! for true symbols and backward for false ones. Worlds with a conflict or a
//! clause whose literals are all false are dropped.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::closure::{ClosureRelations, Relation};
use crate::error::Error;
use crate::generate::generate_with;
use crate::generate::GenerateOptions;
use crate::optimize::optimize;
use crate::symbol::Symbol;
use crate::theory::{
    CausalAtom, Clause, ConditionSet, ExplanationAtom, Literal, LiteralAtom, Theory,
};

pub const DEFAULT_MAX_WORLDS: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct World {
    /// Starts at 1.
    pub index: usize,
    /// Unit facts plus the literals picked for this world.
    pub chosen: BTreeSet<Literal>,
    /// Symbols with a known value. Absent symbols are unknown.
    pub truth: BTreeMap<Symbol, bool>,
    /// Causal atoms known present or absent.
    pub causal_truth: BTreeMap<CausalAtom, bool>,
}

impl World {
    pub fn truth_of(&self, s: &Symbol) -> Truth {
        to_truth(self.truth.get(s))
    }

    pub fn causal_truth_of(&self, c: &CausalAtom) -> Truth {
        to_truth(self.causal_truth.get(c))
    }

    pub fn literal_value(&self, l: &Literal) -> Truth {
        let atom = match &l.atom {
            LiteralAtom::Truth(s) => self.truth_of(s),
            LiteralAtom::Causal(c) => self.causal_truth_of(c),
        };
        match (atom, l.positive) {
            (Truth::Unknown, _) => Truth::Unknown,
            (Truth::True, true) | (Truth::False, false) => Truth::True,
            _ => Truth::False,
        }
    }

    /// Three-valued: violated only when every literal is false.
    pub fn violates(&self, c: &Clause) -> bool {
        c.literals
            .iter()
            .all(|l| self.literal_value(l) == Truth::False)
    }

    /// Causal atoms in force in this world.
    pub fn effective_causal(&self) -> BTreeSet<CausalAtom> {
        self.causal_truth
            .iter()
            .filter(|(_, present)| **present)
            .map(|(c, _)| c.clone())
            .collect()
    }
}

fn to_truth(v: Option<&bool>) -> Truth {
    match v {
        Some(true) => Truth::True,
        Some(false) => Truth::False,
        None => Truth::Unknown,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WorldOptions {
    pub max_worlds: usize,
    pub inclusive_disjunction: bool,
}

impl Default for WorldOptions {
    fn default() -> Self {
        WorldOptions {
            max_worlds: DEFAULT_MAX_WORLDS,
            inclusive_disjunction: false,
        }
    }
}

/// The alternatives offered by each disjunctive clause and completion atom,
/// in canonical order.
fn choice_points(t: &Theory, inclusive: bool) -> Vec<Vec<BTreeSet<Literal>>> {
    let mut points = Vec::new();
    for clause in t.disjunctive_facts().filter(|c| !c.is_tautology()) {
        let lits: Vec<&Literal> = clause.literals.iter().collect();
        let options = if inclusive {
            (1u64..(1 << lits.len()))
                .map(|mask| {
                    lits.iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, l)| (*l).clone())
                        .collect()
                })
                .collect()
        } else {
            lits.iter()
                .map(|l| BTreeSet::from([(*l).clone()]))
                .collect()
        };
        points.push(options);
    }
    for atom in &t.completion_atoms {
        let pos = Literal {
            atom: atom.clone(),
            positive: true,
        };
        points.push(vec![
            BTreeSet::from([pos.clone()]),
            BTreeSet::from([pos.negated()]),
        ]);
    }
    points
}

fn consistent_literals(chosen: &BTreeSet<Literal>) -> bool {
    chosen.iter().all(|l| !chosen.contains(&l.negated()))
}

/// Builds the world for a set of chosen literals, or `None` when it is
/// inconsistent.
fn build_world(t: &Theory, chosen: BTreeSet<Literal>) -> Option<World> {
    if !consistent_literals(&chosen) {
        return None;
    }
    let mut causal_truth: BTreeMap<CausalAtom, bool> =
        t.causal.iter().map(|c| (c.clone(), true)).collect();
    let mut truth = BTreeMap::new();
    for l in &chosen {
        match &l.atom {
            LiteralAtom::Truth(s) => {
                truth.insert(s.clone(), l.positive);
            }
            LiteralAtom::Causal(c) => {
                if causal_truth.insert(c.clone(), l.positive) == Some(!l.positive) {
                    return None;
                }
            }
        }
    }
    let world = World {
        index: 0,
        chosen,
        truth,
        causal_truth,
    };
    let impco = ClosureRelations::compute(&world_theory(t, &world)).impco;
    let world = propagate_truth(world, &impco)?;
    if t.clauses.iter().any(|c| world.violates(c)) {
        return None;
    }
    Some(world)
}

/// The theory as seen from inside a world: its causal atoms are the ones in
/// force there.
pub fn world_theory(t: &Theory, w: &World) -> Theory {
    let mut wt = t.clone();
    wt.causal = w.effective_causal();
    wt
}

/// Propagates `true` forward and `false` backward along `impco`. Returns
/// `None` if some symbol ends up both true and false.
pub fn propagate_truth(mut w: World, impco: &Relation) -> Option<World> {
    let mut derived: BTreeMap<Symbol, bool> = BTreeMap::new();
    for (s, &value) in &w.truth {
        let reach = if value {
            impco.successors(s)
        } else {
            impco.predecessors(s)
        };
        for r in reach.iter().chain(std::iter::once(s)) {
            if let Some(&old) = derived.get(r) {
                if old != value {
                    return None;
                }
            }
            derived.insert(r.clone(), value);
        }
    }
    w.truth = derived;
    Some(w)
}

/// Every consistent world, indexed from 1 in canonical choice order.
/// Identical choices reached through different clauses count once.
pub fn enumerate_worlds(t: &Theory, opts: WorldOptions) -> Result<Vec<World>, Error> {
    let points = choice_points(t, opts.inclusive_disjunction);
    let mut seen: BTreeSet<BTreeSet<Literal>> = BTreeSet::new();
    let mut worlds = Vec::new();

    let mut stack: Vec<(usize, BTreeSet<Literal>)> = vec![(0, t.facts.clone())];
    while let Some((depth, chosen)) = stack.pop() {
        if !consistent_literals(&chosen) {
            continue;
        }
        if depth == points.len() {
            if !seen.insert(chosen.clone()) {
                continue;
            }
            if let Some(mut w) = build_world(t, chosen) {
                if worlds.len() == opts.max_worlds {
                    return Err(Error::WorldOverflow {
                        bound: opts.max_worlds,
                    });
                }
                w.index = worlds.len() + 1;
                worlds.push(w);
            }
            continue;
        }
        // Pushed in reverse so the first option is explored first.
        for option in points[depth].iter().rev() {
            let mut next = chosen.clone();
            next.extend(option.iter().cloned());
            stack.push((depth + 1, next));
        }
    }
    Ok(worlds)
}

/// Keeps the atoms none of whose conditions is false in `w`.
pub fn verify(atoms: &BTreeSet<ExplanationAtom>, w: &World) -> BTreeSet<ExplanationAtom> {
    atoms
        .iter()
        .filter(|a| a.conditions.iter().all(|s| w.truth_of(s) != Truth::False))
        .map(|a| a.clone().verified_in(w.index))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Verdict {
    pub from: Symbol,
    pub to: Symbol,
    pub conditions: ConditionSet,
    pub brave: bool,
    pub cautious: bool,
    /// World indices in increasing order.
    pub worlds: Vec<usize>,
}

fn owned_key(a: &ExplanationAtom) -> (Symbol, Symbol, ConditionSet) {
    (a.from.clone(), a.to.clone(), a.conditions.clone())
}

/// Aggregates per-world results. `candidates` lists, per world index, the
/// atoms that were checked there, `verified` those that passed.
pub fn brave_cautious(
    candidates: &BTreeMap<usize, BTreeSet<ExplanationAtom>>,
    verified: &BTreeMap<usize, BTreeSet<ExplanationAtom>>,
) -> Result<Vec<Verdict>, Error> {
    if candidates.is_empty() {
        return Err(Error::NoWorld);
    }
    let mut seen: BTreeMap<(Symbol, Symbol, ConditionSet), BTreeSet<usize>> = BTreeMap::new();
    for atoms in candidates.values() {
        for a in atoms {
            seen.entry(owned_key(a)).or_default();
        }
    }
    for (&w, atoms) in verified {
        for a in atoms {
            seen.entry(owned_key(a)).or_default().insert(w);
        }
    }
    Ok(seen
        .into_iter()
        .map(|((from, to, conditions), ws)| Verdict {
            from,
            to,
            conditions,
            brave: !ws.is_empty(),
            cautious: ws.len() == candidates.len(),
            worlds: ws.into_iter().collect(),
        })
        .collect())
}

/// One world with the optimal atoms checked there and those that passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorldResult {
    pub world: World,
    pub checked: BTreeSet<ExplanationAtom>,
    pub verified: BTreeSet<ExplanationAtom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub worlds: Vec<WorldResult>,
    pub verdicts: Vec<Verdict>,
}

/// Runs the verification stage. `optimal` is reused in every world whose
/// causal atoms match the theory's; other worlds are regenerated and
/// optimized on their own causal atoms first.
pub fn verify_all(
    t: &Theory,
    optimal: &BTreeSet<ExplanationAtom>,
    opts: WorldOptions,
) -> Result<Verification, Error> {
    let worlds = enumerate_worlds(t, opts)?;
    let mut results = Vec::with_capacity(worlds.len());
    for w in worlds {
        let checked = if w.effective_causal() == t.causal {
            optimal.clone()
        } else {
            let wt = world_theory(t, &w);
            let c = ClosureRelations::compute(&wt);
            optimize(
                &generate_with(&wt, &c, GenerateOptions::default()),
                &c.impco,
            )
        };
        let verified = verify(&checked, &w);
        results.push(WorldResult {
            world: w,
            checked,
            verified,
        });
    }
    let candidates = results
        .iter()
        .map(|r| (r.world.index, r.checked.clone()))
        .collect();
    let verified = results
        .iter()
        .map(|r| (r.world.index, r.verified.clone()))
        .collect();
    let verdicts = brave_cautious(&candidates, &verified)?;
    Ok(Verification {
        worlds: results,
        verdicts,
    })
}
