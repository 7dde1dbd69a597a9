//! Lifting an object-level IS-A hierarchy to structured atoms.
//!
//! Each argument position of a predicate has a kind:
//!
//! * `One` (essentially existential): `heard(loud_bell)` IS-A `heard(bell)`
//!   when `loud_bell` IS-A `bell`;
//! * `All` (essentially universal): `like(car)` IS-A `like(white_car)`, the
//!   reverse direction;
//! * `Fixed`: the argument must be identical on both sides.
//!
//! `onekind(p)`, `allkind(p)` and `all_onekind(p)` are the unary and binary
//! shorthands; `kind(p,k1,...,kn)` declares any arity. Inside a lifted atom
//! an argument may also stay put, at any object that is the specialized side
//! of some object IS-A fact. An atom whose arguments all stay put is dropped.
//!
//! Argument positions are sorted: when the premises mention structured atoms
//! of a predicate (or give `kindPar` tuples for it), position `i` only ranges
//! over the object-hierarchy components of the objects seen at position `i`.

use std::collections::{BTreeMap, BTreeSet};

use crate::symbol::Symbol;
use crate::theory::OntAtom;

/// `ont_object(sub, sup)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectOntAtom {
    pub sub: String,
    pub sup: String,
}

impl ObjectOntAtom {
    pub fn new(sub: &str, sup: &str) -> Self {
        ObjectOntAtom {
            sub: sub.to_string(),
            sup: sup.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamKind {
    All,
    One,
    Fixed,
}

impl ParamKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "all" => Some(ParamKind::All),
            "one" => Some(ParamKind::One),
            "fixed" => Some(ParamKind::Fixed),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ParamKind::All => "all",
            ParamKind::One => "one",
            ParamKind::Fixed => "fixed",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KindDeclarations {
    pub onekind: BTreeSet<String>,
    pub allkind: BTreeSet<String>,
    pub all_onekind: BTreeSet<String>,
    /// Objects usable as propositional (zero-argument) atoms.
    pub propkind: BTreeSet<String>,
    /// General per-position declarations, `kind(p,k1,...,kn)`.
    pub signatures: BTreeMap<String, Vec<ParamKind>>,
    pub restricted: BTreeSet<String>,
    /// Admissible argument tuples for restricted predicates.
    pub kind_par: BTreeSet<(String, Vec<String>)>,
}

impl KindDeclarations {
    pub fn is_empty(&self) -> bool {
        *self == KindDeclarations::default()
    }

    /// Per-position kinds of `predicate`, if declared.
    pub fn kinds_of(&self, predicate: &str) -> Option<Vec<ParamKind>> {
        if self.onekind.contains(predicate) {
            Some(vec![ParamKind::One])
        } else if self.allkind.contains(predicate) {
            Some(vec![ParamKind::All])
        } else if self.all_onekind.contains(predicate) {
            Some(vec![ParamKind::All, ParamKind::One])
        } else {
            self.signatures.get(predicate).cloned()
        }
    }

    pub fn declares(&self, predicate: &str) -> bool {
        self.kinds_of(predicate).is_some() || self.propkind.contains(predicate)
    }

    /// Predicates declared with more than one kind.
    pub fn overlap_errors(&self) -> Vec<String> {
        let mut count: BTreeMap<&str, usize> = BTreeMap::new();
        for p in self
            .onekind
            .iter()
            .chain(&self.allkind)
            .chain(&self.all_onekind)
            .chain(self.signatures.keys())
        {
            *count.entry(p).or_default() += 1;
        }
        count
            .into_iter()
            .filter(|(_, n)| *n > 1)
            .map(|(p, _)| format!("predicate `{p}` has conflicting kind declarations"))
            .collect()
    }

    fn predicates(&self) -> BTreeSet<&str> {
        self.onekind
            .iter()
            .chain(&self.allkind)
            .chain(&self.all_onekind)
            .chain(self.signatures.keys())
            .map(String::as_str)
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftOutput {
    pub atoms: BTreeSet<OntAtom>,
    pub warnings: Vec<String>,
}

/// Connected components of the object hierarchy, as object -> component id.
fn components(obj_ont: &BTreeSet<ObjectOntAtom>) -> BTreeMap<&str, usize> {
    let mut parent: BTreeMap<&str, &str> = BTreeMap::new();
    fn find<'a>(parent: &mut BTreeMap<&'a str, &'a str>, x: &'a str) -> &'a str {
        let p = *parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let root = find(parent, p);
        parent.insert(x, root);
        root
    }
    for o in obj_ont {
        let a = find(&mut parent, &o.sub);
        let b = find(&mut parent, &o.sup);
        if a != b {
            parent.insert(a, b);
        }
    }
    let keys: Vec<&str> = parent.keys().copied().collect();
    let mut ids: BTreeMap<&str, usize> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for k in keys {
        let root = find(&mut parent, k);
        let next = ids.len();
        let id = *ids.entry(root).or_insert(next);
        out.insert(k, id);
    }
    out
}

/// Allowed objects per argument position, or `None` when unsorted.
fn position_sorts<'a>(
    predicate: &str,
    arity: usize,
    mentioned: &'a BTreeSet<Symbol>,
    kinds: &'a KindDeclarations,
    comp: &BTreeMap<&str, usize>,
    objects: &BTreeSet<&'a str>,
) -> Option<Vec<BTreeSet<String>>> {
    let mut seen: Vec<BTreeSet<String>> = vec![BTreeSet::new(); arity];
    let mut any = false;
    let usages = mentioned
        .iter()
        .filter(|s| s.predicate() == Some(predicate))
        .map(|s| {
            s.arguments()
                .into_iter()
                .map(str::to_string)
                .collect::<Vec<_>>()
        })
        .chain(
            kinds
                .kind_par
                .iter()
                .filter(|(p, _)| p == predicate)
                .map(|(_, args)| args.clone()),
        );
    for args in usages {
        if args.len() != arity {
            continue;
        }
        any = true;
        for (i, a) in args.into_iter().enumerate() {
            seen[i].insert(a);
        }
    }
    if !any {
        return None;
    }
    Some(
        seen.into_iter()
            .map(|objs| {
                let ids: BTreeSet<usize> = objs
                    .iter()
                    .filter_map(|o| comp.get(o.as_str()).copied())
                    .collect();
                let mut sort: BTreeSet<String> = objects
                    .iter()
                    .filter(|o| comp.get(*o).is_some_and(|c| ids.contains(c)))
                    .map(|o| o.to_string())
                    .collect();
                sort.extend(objs);
                sort
            })
            .collect(),
    )
}

/// Lifts the object hierarchy to IS-A atoms over structured symbols.
/// `mentioned` are the structured symbols occurring in the premises; they
/// sort argument positions and drive the undeclared-predicate warning.
pub fn lift(
    obj_ont: &BTreeSet<ObjectOntAtom>,
    kinds: &KindDeclarations,
    mentioned: &BTreeSet<Symbol>,
) -> LiftOutput {
    let mut out = LiftOutput::default();

    let used: BTreeSet<&str> = mentioned
        .iter()
        .filter(|s| !s.arguments().is_empty())
        .filter_map(Symbol::predicate)
        .collect();
    for p in used {
        if kinds.kinds_of(p).is_none() {
            out.warnings.push(format!(
                "predicate `{p}` has no kind declaration and never yields ontological atoms"
            ));
        }
    }

    for o in obj_ont {
        if kinds.propkind.contains(&o.sub) && kinds.propkind.contains(&o.sup) {
            let a = Symbol::structured::<&str>(&o.sub, &[]);
            let b = Symbol::structured::<&str>(&o.sup, &[]);
            if let (Ok(a), Ok(b)) = (a, b) {
                out.atoms.insert(OntAtom::new(a, b));
            }
        }
    }

    let comp = components(obj_ont);
    let objects: BTreeSet<&str> = obj_ont
        .iter()
        .flat_map(|o| [o.sub.as_str(), o.sup.as_str()])
        .collect();
    let specialized: BTreeSet<&str> = obj_ont.iter().map(|o| o.sub.as_str()).collect();

    for p in kinds.predicates() {
        let Some(kind_vec) = kinds.kinds_of(p) else {
            continue;
        };
        let sorts = position_sorts(p, kind_vec.len(), mentioned, kinds, &comp, &objects);

        // Candidate (sub argument, sup argument) pairs per position.
        let options: Vec<Vec<(&str, &str)>> = kind_vec
            .iter()
            .enumerate()
            .map(|(i, kind)| {
                let mut opts: BTreeSet<(&str, &str)> = BTreeSet::new();
                match kind {
                    ParamKind::One => {
                        opts.extend(obj_ont.iter().map(|o| (o.sub.as_str(), o.sup.as_str())));
                        opts.extend(specialized.iter().map(|s| (*s, *s)));
                    }
                    ParamKind::All => {
                        opts.extend(obj_ont.iter().map(|o| (o.sup.as_str(), o.sub.as_str())));
                        opts.extend(specialized.iter().map(|s| (*s, *s)));
                    }
                    ParamKind::Fixed => {
                        opts.extend(objects.iter().map(|s| (*s, *s)));
                        if let Some(s) = &sorts {
                            opts.extend(s[i].iter().map(|o| (o.as_str(), o.as_str())));
                        }
                    }
                }
                opts.into_iter()
                    .filter(|(a, b)| match &sorts {
                        Some(s) => s[i].contains(*a) && s[i].contains(*b),
                        None => true,
                    })
                    .collect()
            })
            .collect();

        let mut combos: Vec<(Vec<&str>, Vec<&str>)> = vec![(Vec::new(), Vec::new())];
        for opts in &options {
            let mut next = Vec::with_capacity(combos.len() * opts.len());
            for (subs, sups) in &combos {
                for (a, b) in opts {
                    let mut s = subs.clone();
                    let mut t = sups.clone();
                    s.push(*a);
                    t.push(*b);
                    next.push((s, t));
                }
            }
            combos = next;
        }
        for (subs, sups) in combos {
            if subs == sups {
                continue;
            }
            let (Ok(a), Ok(b)) = (Symbol::structured(p, &subs), Symbol::structured(p, &sups))
            else {
                continue;
            };
            out.atoms.insert(OntAtom::new(a, b));
        }
    }
    out
}

/// Keeps, for restricted predicates, only atoms whose specialized side has
/// admissible arguments.
pub fn apply_restrictions(lifted: &BTreeSet<OntAtom>, kinds: &KindDeclarations) -> LiftOutput {
    let mut out = LiftOutput::default();
    for p in &kinds.restricted {
        if !kinds.kind_par.iter().any(|(q, _)| q == p) {
            out.warnings.push(format!(
                "restricted predicate `{p}` has no admissible arguments; all its atoms are dropped"
            ));
        }
    }
    out.atoms = lifted
        .iter()
        .filter(|o| match o.sub.predicate() {
            Some(p) if kinds.restricted.contains(p) => {
                let args: Vec<String> = o.sub.arguments().into_iter().map(str::to_string).collect();
                kinds.kind_par.contains(&(p.to_string(), args))
            }
            _ => true,
        })
        .cloned()
        .collect();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym;

    fn rendered(atoms: &BTreeSet<OntAtom>) -> BTreeSet<String> {
        atoms
            .iter()
            .map(|o| format!("ont({},{})", o.sub, o.sup))
            .collect()
    }

    fn own_setup() -> (BTreeSet<ObjectOntAtom>, KindDeclarations, BTreeSet<Symbol>) {
        let obj: BTreeSet<_> = [
            ObjectOntAtom::new("tom", "student"),
            ObjectOntAtom::new("book", "document"),
        ]
        .into();
        let mut kinds = KindDeclarations::default();
        kinds.all_onekind.insert("own".into());
        let mentioned: BTreeSet<_> = [sym("[own,student,book]")].into();
        (obj, kinds, mentioned)
    }

    #[test]
    fn own_tom_book() {
        let (obj, kinds, mentioned) = own_setup();
        let out = lift(&obj, &kinds, &mentioned);
        assert_eq!(
            rendered(&out.atoms),
            [
                "ont([own,tom,book],[own,tom,document])",
                "ont([own,student,book],[own,tom,book])",
                "ont([own,student,book],[own,tom,document])",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect()
        );
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn unsorted_positions_range_over_all_objects() {
        let (obj, kinds, _) = own_setup();
        let out = lift(&obj, &kinds, &BTreeSet::new());
        // Two moves and two stays per position, minus the four all-stay identities.
        assert_eq!(out.atoms.len(), 12);
    }

    #[test]
    fn allkind_reverses() {
        let obj: BTreeSet<_> = [ObjectOntAtom::new("white_car", "car")].into();
        let mut kinds = KindDeclarations::default();
        kinds.allkind.insert("like".into());
        let out = lift(&obj, &kinds, &BTreeSet::new());
        assert_eq!(
            rendered(&out.atoms),
            ["ont([like,car],[like,white_car])".to_string()].into()
        );
    }

    #[test]
    fn onekind_follows_the_rule_direction() {
        let obj: BTreeSet<_> = [ObjectOntAtom::new("loud_bell", "bell")].into();
        let mut kinds = KindDeclarations::default();
        kinds.onekind.insert("heard".into());
        let out = lift(&obj, &kinds, &BTreeSet::new());
        assert_eq!(
            rendered(&out.atoms),
            ["ont([heard,loud_bell],[heard,bell])".to_string()].into()
        );
    }

    #[test]
    fn propkind_atoms() {
        let obj: BTreeSet<_> = [ObjectOntAtom::new("a", "b"), ObjectOntAtom::new("b", "c")].into();
        let mut kinds = KindDeclarations::default();
        kinds.propkind.extend(["a".to_string(), "b".to_string()]);
        let out = lift(&obj, &kinds, &BTreeSet::new());
        assert_eq!(rendered(&out.atoms), ["ont([a],[b])".to_string()].into());
    }

    #[test]
    fn empty_object_ontology() {
        let (_, kinds, mentioned) = own_setup();
        assert!(lift(&BTreeSet::new(), &kinds, &mentioned).atoms.is_empty());
    }

    #[test]
    fn undeclared_predicate_warns() {
        let mentioned: BTreeSet<_> = [sym("[heard,bell]")].into();
        let out = lift(&BTreeSet::new(), &KindDeclarations::default(), &mentioned);
        assert!(out.warnings[0].contains("never yields ontological atoms"));
    }

    #[test]
    fn restriction_keeps_admissible_sources() {
        let (obj, mut kinds, mentioned) = own_setup();
        let lifted = lift(&obj, &kinds, &mentioned).atoms;
        kinds.restricted.insert("own".into());
        kinds
            .kind_par
            .insert(("own".into(), vec!["student".into(), "book".into()]));
        let out = apply_restrictions(&lifted, &kinds);
        assert_eq!(
            rendered(&out.atoms),
            [
                "ont([own,student,book],[own,tom,book])",
                "ont([own,student,book],[own,tom,document])",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect()
        );
    }

    #[test]
    fn restriction_edge_cases() {
        let (obj, mut kinds, mentioned) = own_setup();
        let lifted = lift(&obj, &kinds, &mentioned).atoms;
        assert_eq!(apply_restrictions(&lifted, &kinds).atoms, lifted);

        kinds.restricted.insert("own".into());
        let out = apply_restrictions(&lifted, &kinds);
        assert!(out.atoms.is_empty());
        assert_eq!(out.warnings.len(), 1);
    }

    #[test]
    fn conflicting_kinds_are_reported() {
        let mut kinds = KindDeclarations::default();
        kinds.onekind.insert("p".into());
        kinds.allkind.insert("p".into());
        assert_eq!(kinds.overlap_errors().len(), 1);
    }

    #[test]
    fn ternary_signature() {
        let obj: BTreeSet<_> =
            [ObjectOntAtom::new("a1", "a"), ObjectOntAtom::new("b1", "b")].into();
        let mut kinds = KindDeclarations::default();
        kinds.signatures.insert(
            "give".into(),
            vec![ParamKind::One, ParamKind::Fixed, ParamKind::All],
        );
        let mentioned: BTreeSet<_> = [sym("[give,a,x,b]")].into();
        let out = lift(&obj, &kinds, &mentioned);
        // Fixed position 2 is sorted to {x}: its only option is (x,x).
        // Position 1: move a1->a or stay a1; position 3: move b->b1 or stay b1.
        assert_eq!(out.atoms.len(), 3);
        assert!(rendered(&out.atoms).contains("ont([give,a1,x,b],[give,a,x,b1])"));
    }
}
