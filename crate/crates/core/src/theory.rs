//! Premises and explanation atoms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lift::{KindDeclarations, ObjectOntAtom};
use crate::symbol::Symbol;

/// `cause(cause, effect)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CausalAtom {
    pub cause: Symbol,
    pub effect: Symbol,
}

impl CausalAtom {
    pub fn new(cause: Symbol, effect: Symbol) -> Self {
        CausalAtom { cause, effect }
    }
}

/// `ont(sub, sup)`: `sub` IS-A `sup`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OntAtom {
    pub sub: Symbol,
    pub sup: Symbol,
}

impl OntAtom {
    pub fn new(sub: Symbol, sup: Symbol) -> Self {
        OntAtom { sub, sup }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LiteralAtom {
    Truth(Symbol),
    Causal(CausalAtom),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: LiteralAtom,
    pub positive: bool,
}

impl Literal {
    pub fn truth(symbol: Symbol, positive: bool) -> Self {
        Literal {
            atom: LiteralAtom::Truth(symbol),
            positive,
        }
    }

    pub fn causal(atom: CausalAtom, positive: bool) -> Self {
        Literal {
            atom: LiteralAtom::Causal(atom),
            positive,
        }
    }

    pub fn negated(&self) -> Self {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }
}

impl fmt::Display for LiteralAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiteralAtom::Truth(s) => write!(f, "true({s})"),
            LiteralAtom::Causal(c) => write!(f, "cause({},{})", c.cause, c.effect),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("-")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// A disjunction of literals.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    pub literals: BTreeSet<Literal>,
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Self {
        Clause {
            literals: literals.into_iter().collect(),
        }
    }

    pub fn is_tautology(&self) -> bool {
        self.literals
            .iter()
            .any(|l| l.positive && self.literals.contains(&l.negated()))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.literals.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" v "))
    }
}

/// A canonically ordered, duplicate-free set of condition symbols.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Symbol>", into = "Vec<Symbol>")]
pub struct ConditionSet(Vec<Symbol>);

impl ConditionSet {
    pub fn members(&self) -> &[Symbol] {
        &self.0
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.0.binary_search(s).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &ConditionSet) -> bool {
        let mut it = other.0.iter();
        'outer: for s in &self.0 {
            for o in it.by_ref() {
                match o.cmp(s) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// Copy of the set with `s` added.
    pub fn with(&self, s: &Symbol) -> ConditionSet {
        match self.0.binary_search(s) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, s.clone());
                ConditionSet(v)
            }
        }
    }

    /// Copy of the set with `s` removed.
    pub fn without(&self, s: &Symbol) -> ConditionSet {
        ConditionSet(self.0.iter().filter(|m| *m != s).cloned().collect())
    }
}

impl TryFrom<Vec<Symbol>> for ConditionSet {
    type Error = Error;

    fn try_from(v: Vec<Symbol>) -> Result<Self, Error> {
        canonicalize(v)
    }
}

impl From<ConditionSet> for Vec<Symbol> {
    fn from(c: ConditionSet) -> Self {
        c.0
    }
}

impl fmt::Display for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(Symbol::as_str).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Sorts and deduplicates; an empty collection is an error.
pub fn canonicalize(symbols: impl IntoIterator<Item = Symbol>) -> Result<ConditionSet, Error> {
    let mut v: Vec<Symbol> = symbols.into_iter().collect();
    if v.is_empty() {
        return Err(Error::EmptyConditionSet);
    }
    v.sort();
    v.dedup();
    Ok(ConditionSet(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Generated,
    Optimal,
    Verified,
}

/// "`from` explains `to` because `conditions` is possible".
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExplanationAtom {
    pub from: Symbol,
    pub to: Symbol,
    pub conditions: ConditionSet,
    pub status: Status,
    pub world_index: Option<usize>,
}

impl ExplanationAtom {
    /// A freshly generated atom. `from` must belong to `conditions`.
    pub fn new(from: Symbol, to: Symbol, conditions: ConditionSet) -> Result<Self, Error> {
        if !conditions.contains(&from) {
            return Err(Error::Invariant(format!(
                "explaining symbol {from} missing from its condition set {conditions}"
            )));
        }
        Ok(ExplanationAtom {
            from,
            to,
            conditions,
            status: Status::Generated,
            world_index: None,
        })
    }

    pub fn key(&self) -> (&Symbol, &Symbol, &ConditionSet) {
        (&self.from, &self.to, &self.conditions)
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        if status != Status::Verified {
            self.world_index = None;
        }
        self
    }

    pub fn verified_in(mut self, world: usize) -> Self {
        self.status = Status::Verified;
        self.world_index = Some(world);
        self
    }
}

/// Groups atoms by their `(from, to)` pair, in canonical order.
pub fn group_by_pair(
    atoms: &BTreeSet<ExplanationAtom>,
) -> BTreeMap<(Symbol, Symbol), Vec<&ExplanationAtom>> {
    let mut groups: BTreeMap<(Symbol, Symbol), Vec<&ExplanationAtom>> = BTreeMap::new();
    for a in atoms {
        groups
            .entry((a.from.clone(), a.to.clone()))
            .or_default()
            .push(a);
    }
    groups
}

/// The premises: causal atoms, ontology, unit facts, clauses and lifting data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    pub causal: BTreeSet<CausalAtom>,
    pub ontology: BTreeSet<OntAtom>,
    pub facts: BTreeSet<Literal>,
    /// Every clause with two or more literals. These act as constraints and,
    /// unless disabled, as generative disjunctions.
    pub clauses: BTreeSet<Clause>,
    pub declared_symbols: BTreeSet<Symbol>,
    pub kind_decls: KindDeclarations,
    pub object_ontology: BTreeSet<ObjectOntAtom>,
    /// Atoms completed with `x v -x`.
    pub completion_atoms: BTreeSet<LiteralAtom>,
}

impl Theory {
    pub fn is_empty(&self) -> bool {
        *self == Theory::default()
    }

    /// Clauses used to generate worlds.
    pub fn disjunctive_facts(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| c.literals.len() >= 2)
    }

    pub fn add_cause(&mut self, cause: &str, effect: &str) -> &mut Self {
        self.causal
            .insert(CausalAtom::new(crate::sym(cause), crate::sym(effect)));
        self
    }

    pub fn add_ont(&mut self, sub: &str, sup: &str) -> &mut Self {
        self.ontology
            .insert(OntAtom::new(crate::sym(sub), crate::sym(sup)));
        self
    }

    /// Every symbol mentioned anywhere in the premises.
    fn mentioned_symbols(&self) -> BTreeSet<Symbol> {
        let mut out = self.declared_symbols.clone();
        let add_atom = |a: &LiteralAtom, out: &mut BTreeSet<Symbol>| match a {
            LiteralAtom::Truth(s) => {
                out.insert(s.clone());
            }
            LiteralAtom::Causal(c) => {
                out.insert(c.cause.clone());
                out.insert(c.effect.clone());
            }
        };
        for l in &self.facts {
            add_atom(&l.atom, &mut out);
        }
        for c in &self.clauses {
            for l in &c.literals {
                add_atom(&l.atom, &mut out);
            }
        }
        for a in &self.completion_atoms {
            add_atom(a, &mut out);
        }
        out
    }

    /// Causal atoms that may hold in some world: unit atoms plus every causal
    /// literal occurring positively in a clause or completion.
    fn possible_causal_atoms(&self) -> BTreeSet<CausalAtom> {
        let mut out = self.causal.clone();
        let clause_lits = self.clauses.iter().flat_map(|c| c.literals.iter());
        for l in clause_lits.chain(self.facts.iter()) {
            if let (LiteralAtom::Causal(c), true) = (&l.atom, l.positive) {
                out.insert(c.clone());
            }
        }
        for a in &self.completion_atoms {
            if let LiteralAtom::Causal(c) = a {
                out.insert(c.clone());
            }
        }
        out
    }

    /// Drops tautological clauses.
    pub fn without_tautologies(&self) -> Theory {
        let mut t = self.clone();
        t.clauses.retain(|c| !c.is_tautology());
        t
    }
}

/// Symbols of a theory: all of them, and those occurring in causal or
/// ontological atoms (the ones that may enter a condition set).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolUniverse {
    pub symbols: BTreeSet<Symbol>,
    pub symbol_e: BTreeSet<Symbol>,
}

pub fn symbol_universe(t: &Theory) -> SymbolUniverse {
    let mut symbol_e = BTreeSet::new();
    for c in t.possible_causal_atoms() {
        symbol_e.insert(c.cause);
        symbol_e.insert(c.effect);
    }
    for o in &t.ontology {
        symbol_e.insert(o.sub.clone());
        symbol_e.insert(o.sup.clone());
    }
    let mut symbols = t.mentioned_symbols();
    symbols.extend(symbol_e.iter().cloned());
    SymbolUniverse { symbols, symbol_e }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Checks well-formedness. Findings are reported, never raised.
pub fn validate_theory(t: &Theory, lifting: bool) -> ValidationReport {
    let mut report = ValidationReport::default();

    for o in &t.ontology {
        if o.sub == o.sup {
            report
                .errors
                .push(format!("reflexive ontology atom ont({},{})", o.sub, o.sup));
        }
    }
    for c in &t.causal {
        if c.cause == c.effect {
            report
                .warnings
                .push(format!("self-cause cause({},{})", c.cause, c.effect));
        }
    }
    for c in &t.clauses {
        if c.literals.is_empty() {
            report.errors.push("empty clause".to_string());
        } else if c.is_tautology() {
            report.warnings.push(format!("tautology dropped: {c}"));
        }
    }

    if let Some(s) = ontology_cycle_member(&t.ontology) {
        report
            .warnings
            .push(format!("cyclic IS-A hierarchy through {s}"));
    }

    let universe = symbol_universe(t);
    let flat: BTreeSet<&str> = universe
        .symbols
        .iter()
        .filter(|s| !s.is_structured())
        .map(Symbol::as_str)
        .collect();
    let predicates: BTreeSet<&str> = universe
        .symbols
        .iter()
        .filter_map(Symbol::predicate)
        .collect();
    for p in predicates.intersection(&flat) {
        report.warnings.push(format!(
            "`{p}` is used both as a symbol and as a predicate name"
        ));
    }

    report.errors.extend(t.kind_decls.overlap_errors());
    if lifting {
        for p in &predicates {
            if !t.kind_decls.declares(p) {
                report.errors.push(format!(
                    "structured symbols use predicate `{p}` with no kind declaration"
                ));
            }
        }
    }
    report
}

fn ontology_cycle_member(ontology: &BTreeSet<OntAtom>) -> Option<Symbol> {
    let mut succ: BTreeMap<&Symbol, Vec<&Symbol>> = BTreeMap::new();
    for o in ontology {
        succ.entry(&o.sub).or_default().push(&o.sup);
    }
    for start in succ.keys() {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<&Symbol> = succ[start].clone();
        while let Some(n) = stack.pop() {
            if n == *start {
                return Some((*start).clone());
            }
            if seen.insert(n) {
                if let Some(next) = succ.get(n) {
                    stack.extend(next.iter().copied());
                }
            }
        }
    }
    None
}
