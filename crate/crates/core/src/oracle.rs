//! Brute-force reference derivation used to cross-check the staged pipeline
//! on small theories.
//!
//! This shares nothing with the closure, generation or optimization code:
//! relations are dense boolean matrices closed by Floyd-Warshall, condition
//! sets are bitmasks, and the three derivation rules (initial case with a
//! reflexive IS-A, condition gathering, removal of an implied condition other
//! than the explaining symbol) are saturated exhaustively with a worklist.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::Error;
use crate::symbol::Symbol;
use crate::theory::{canonicalize, ExplanationAtom, Status, Theory};

pub const DEFAULT_BOUND: usize = 10;

/// Hard ceiling imposed by the bitmask representation.
const MAX_SYMBOLS: usize = 64;

type Mask = u64;

/// Dense reflexive-transitive relations over the causal/ontological symbols.
#[derive(Clone, Debug)]
pub struct OracleRelations {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
    isa: Vec<Vec<bool>>,
    implies: Vec<Vec<bool>>,
}

#[allow(clippy::needless_range_loop)]
fn close(m: &mut [Vec<bool>]) {
    let n = m.len();
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
}

impl OracleRelations {
    pub fn of(t: &Theory) -> Self {
        let symbols: Vec<Symbol> = t
            .causal
            .iter()
            .flat_map(|c| [c.cause.clone(), c.effect.clone()])
            .chain(
                t.ontology
                    .iter()
                    .flat_map(|o| [o.sub.clone(), o.sup.clone()]),
            )
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<Symbol, usize> = symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let n = symbols.len();
        let mut isa = vec![vec![false; n]; n];
        for (i, row) in isa.iter_mut().enumerate() {
            row[i] = true;
        }
        for o in &t.ontology {
            isa[index[&o.sub]][index[&o.sup]] = true;
        }
        let mut implies = isa.clone();
        for c in &t.causal {
            implies[index[&c.cause]][index[&c.effect]] = true;
        }
        close(&mut isa);
        close(&mut implies);
        OracleRelations {
            symbols,
            index,
            isa,
            implies,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Reflexive implication between two known symbols.
    pub fn implies(&self, a: &Symbol, b: &Symbol) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.implies[i][j],
            _ => a == b,
        }
    }

    fn mask_of<'a>(&self, syms: impl Iterator<Item = &'a Symbol>) -> Option<Mask> {
        let mut m = 0;
        for s in syms {
            m |= 1 << *self.index.get(s)?;
        }
        Some(m)
    }

    fn members(&self, m: Mask) -> impl Iterator<Item = usize> + '_ {
        (0..self.symbols.len()).filter(move |i| m & (1 << i) != 0)
    }

    /// Every member of `b` outside `a` is implied by a member of `a` outside `b`.
    fn covers(&self, a: Mask, b: Mask) -> bool {
        let only_a: Vec<usize> = self.members(a & !b).collect();
        self.members(b & !a)
            .all(|e2| only_a.iter().any(|&e1| self.implies[e1][e2]))
    }
}

/// Exhaustively derives every explanation atom, with no pruning and no
/// consistency checks. Refuses theories with more than `bound` symbols.
pub fn derive_all(t: &Theory, bound: usize) -> Result<BTreeSet<ExplanationAtom>, Error> {
    let rel = OracleRelations::of(t);
    let n = rel.len();
    if n > bound.min(MAX_SYMBOLS) {
        return Err(Error::OracleBound {
            size: n,
            bound: bound.min(MAX_SYMBOLS),
        });
    }

    let mut known: HashSet<(usize, usize, Mask)> = HashSet::new();
    let mut by_from: Vec<Vec<(usize, Mask)>> = vec![Vec::new(); n];
    let mut by_to: Vec<Vec<(usize, Mask)>> = vec![Vec::new(); n];
    let mut queue: VecDeque<(usize, usize, Mask)> = VecDeque::new();

    let mut push = |a: (usize, usize, Mask), queue: &mut VecDeque<_>| {
        if known.insert(a) {
            queue.push_back(a);
        }
    };

    // Initial case: cause(α,β), δ IS-A β, δ IS-A γ  ⟹  α expl γ because {α,δ}.
    for c in &t.causal {
        let alpha = rel.index[&c.cause];
        let beta = rel.index[&c.effect];
        for delta in 0..n {
            if !rel.isa[delta][beta] {
                continue;
            }
            for gamma in 0..n {
                if rel.isa[delta][gamma] {
                    push((alpha, gamma, (1 << alpha) | (1 << delta)), &mut queue);
                }
            }
        }
    }

    while let Some((from, to, set)) = queue.pop_front() {
        by_from[from].push((to, set));
        by_to[to].push((from, set));

        // Drop a condition implied by another one, never the explaining symbol.
        for phi in rel.members(set) {
            if phi == from {
                continue;
            }
            let implied = rel
                .members(set)
                .any(|psi| psi != phi && rel.implies[psi][phi]);
            if implied {
                push((from, to, set & !(1 << phi)), &mut queue);
            }
        }

        // Gathering, with the new atom on either side.
        for &(next, other) in &by_from[to].clone() {
            push((from, next, set | other), &mut queue);
        }
        for &(prev, other) in &by_to[from].clone() {
            push((prev, to, other | set), &mut queue);
        }
    }

    let mut out = BTreeSet::new();
    for (from, to, set) in known {
        let conditions = canonicalize(rel.members(set).map(|i| rel.symbols[i].clone()))?;
        out.insert(ExplanationAtom::new(
            rel.symbols[from].clone(),
            rel.symbols[to].clone(),
            conditions,
        )?);
    }
    Ok(out)
}

/// Keeps, per `(from, to)`, the subset-minimal sets that no sibling beats
/// under element-wise implication.
pub fn optimal_subset(
    atoms: &BTreeSet<ExplanationAtom>,
    rel: &OracleRelations,
) -> BTreeSet<ExplanationAtom> {
    let mut groups: BTreeMap<(&Symbol, &Symbol), Vec<(Mask, &ExplanationAtom)>> = BTreeMap::new();
    for a in atoms {
        let m = rel
            .mask_of(a.conditions.iter())
            .expect("oracle atoms only mention theory symbols");
        groups.entry((&a.from, &a.to)).or_default().push((m, a));
    }

    let mut out = BTreeSet::new();
    for members in groups.values() {
        let minimal: Vec<&(Mask, &ExplanationAtom)> = members
            .iter()
            .filter(|(m, _)| !members.iter().any(|(o, _)| o != m && o & m == *o))
            .collect();
        for (m, a) in &minimal {
            let beaten = minimal
                .iter()
                .any(|(o, _)| o != m && rel.covers(*m, *o) && !rel.covers(*o, *m));
            if !beaten {
                out.insert((*a).clone().with_status(Status::Optimal));
            }
        }
    }
    out
}

/// `optimal_subset(derive_all(t))`.
pub fn optimal(t: &Theory, bound: usize) -> Result<BTreeSet<ExplanationAtom>, Error> {
    let all = derive_all(t, bound)?;
    Ok(optimal_subset(&all, &OracleRelations::of(t)))
}
