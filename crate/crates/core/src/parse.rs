//! The fact-file format.
//!
//! Statements end with a period and may share a line. `%` starts a comment.
//! A `{` before a statement and a `}` after one only group statements and
//! carry no meaning. A statement is either a single fact or a disjunction
//! `l1 v l2 v ...` of `true/1` and `cause/2` literals, each optionally
//! negated with `-`. `x v -x` marks `x` for completion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Error;
use crate::lift::{ObjectOntAtom, ParamKind};
use crate::symbol::Symbol;
use crate::theory::{
    canonicalize, CausalAtom, Clause, ConditionSet, ExplanationAtom, Literal, LiteralAtom, OntAtom,
    Status, Theory,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Gen,
    Opt,
    Verify,
}

impl Stage {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gen" => Some(Stage::Gen),
            "opt" => Some(Stage::Opt),
            "verify" => Some(Stage::Verify),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Gen => "gen",
            Stage::Opt => "opt",
            Stage::Verify => "verify",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A parsed fact file: premises plus whatever stage artifacts it carries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub theory: Theory,
    pub stage: Option<Stage>,
    /// `ecSet` lines.
    pub generated: BTreeSet<ExplanationAtom>,
    /// `ecSetRes` lines.
    pub optimal: BTreeSet<ExplanationAtom>,
    /// `world(w)` lines.
    pub worlds: BTreeSet<usize>,
    /// `explVer(w,i,j,S)` lines, by world.
    pub verified: BTreeMap<usize, BTreeSet<ExplanationAtom>>,
    pub brave: BTreeSet<ExplanationAtom>,
    pub cautious: BTreeSet<ExplanationAtom>,
}

/// A term: a name, a bracketed symbol or a braced set.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Term {
    Name(String),
    Bracket(String),
    Set(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Atom {
    negated: bool,
    name: String,
    args: Vec<Term>,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Splits `s` at top-level occurrences of `sep`.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_term(s: &str, line: usize) -> Result<Term, Error> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        let items: Vec<String> = inner.split(',').map(|x| x.trim().to_string()).collect();
        if items.iter().any(String::is_empty) {
            return Err(syntax(line, format!("malformed set `{s}`")));
        }
        return Ok(Term::Set(items));
    }
    if s.starts_with('[') {
        Symbol::parse(s).map_err(|_| syntax(line, format!("malformed symbol `{s}`")))?;
        return Ok(Term::Bracket(s.to_string()));
    }
    if crate::symbol::is_identifier(s) {
        Ok(Term::Name(s.to_string()))
    } else {
        Err(syntax(line, format!("malformed term `{s}`")))
    }
}

fn parse_atom(s: &str, line: usize) -> Result<Atom, Error> {
    let s = s.trim();
    let (negated, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s),
    };
    let (name, args) = match body.find('(') {
        Some(open) => {
            let inner = body[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| syntax(line, format!("missing `)` in `{s}`")))?;
            let args = split_top(inner, ',')
                .into_iter()
                .map(|a| parse_term(a, line))
                .collect::<Result<Vec<_>, _>>()?;
            (body[..open].trim(), args)
        }
        None => (body, Vec::new()),
    };
    if !crate::symbol::is_identifier(name) {
        return Err(syntax(line, format!("malformed atom `{s}`")));
    }
    Ok(Atom {
        negated,
        name: name.to_string(),
        args,
    })
}

impl Atom {
    fn expect_arity(&self, n: usize, line: usize) -> Result<(), Error> {
        if self.args.len() == n {
            Ok(())
        } else {
            Err(syntax(
                line,
                format!(
                    "`{}` expects {n} argument(s), got {}",
                    self.name,
                    self.args.len()
                ),
            ))
        }
    }

    fn symbol(&self, i: usize, line: usize) -> Result<Symbol, Error> {
        match &self.args[i] {
            Term::Name(s) | Term::Bracket(s) => {
                Symbol::parse(s).map_err(|_| syntax(line, format!("malformed symbol `{s}`")))
            }
            Term::Set(_) => Err(syntax(line, format!("`{}`: unexpected set", self.name))),
        }
    }

    fn name_arg(&self, i: usize, line: usize) -> Result<String, Error> {
        match &self.args[i] {
            Term::Name(s) => Ok(s.clone()),
            _ => Err(syntax(
                line,
                format!("`{}`: argument {} must be a name", self.name, i + 1),
            )),
        }
    }

    fn index(&self, i: usize, line: usize) -> Result<usize, Error> {
        match &self.args[i] {
            Term::Name(s) => s.parse().ok().filter(|w| *w > 0).ok_or_else(|| {
                syntax(line, format!("`{}`: `{s}` is not a world index", self.name))
            }),
            _ => Err(syntax(
                line,
                format!("`{}`: argument {} must be a world index", self.name, i + 1),
            )),
        }
    }

    fn set(&self, i: usize, line: usize) -> Result<ConditionSet, Error> {
        match &self.args[i] {
            Term::Set(items) => {
                let syms = items
                    .iter()
                    .map(|s| {
                        Symbol::parse(s)
                            .map_err(|_| syntax(line, format!("malformed symbol `{s}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                canonicalize(syms).map_err(|e| syntax(line, e.to_string()))
            }
            _ => Err(syntax(
                line,
                format!("`{}`: argument {} must be a set", self.name, i + 1),
            )),
        }
    }

    /// `(i, j, S)` starting at argument `first`.
    fn explanation(&self, first: usize, line: usize) -> Result<ExplanationAtom, Error> {
        let from = self.symbol(first, line)?;
        let to = self.symbol(first + 1, line)?;
        let conditions = self.set(first + 2, line)?;
        ExplanationAtom::new(from, to, conditions).map_err(|e| syntax(line, e.to_string()))
    }

    fn literal(&self, line: usize) -> Result<Literal, Error> {
        let atom = match self.name.as_str() {
            "true" => {
                self.expect_arity(1, line)?;
                LiteralAtom::Truth(self.symbol(0, line)?)
            }
            "cause" => {
                self.expect_arity(2, line)?;
                LiteralAtom::Causal(CausalAtom::new(
                    self.symbol(0, line)?,
                    self.symbol(1, line)?,
                ))
            }
            other => return Err(syntax(line, format!("`{other}` cannot occur in a clause"))),
        };
        Ok(Literal {
            atom,
            positive: !self.negated,
        })
    }
}

/// Splits the text into `(line, statement)` pairs, dropping comments and
/// grouping braces.
fn statements(text: &str) -> Result<Vec<(usize, String)>, Error> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start_line = 0;
    let mut depth = 0i32;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('%').next().unwrap_or("");
        for c in line.chars() {
            let at_start = current.trim().is_empty();
            match c {
                '{' if depth == 0 && at_start => continue,
                '}' if depth == 0 => continue,
                '(' | '[' | '{' => depth += 1,
                ')' | ']' | '}' => depth -= 1,
                _ => {}
            }
            if depth < 0 {
                return Err(syntax(line_no, "unbalanced bracket"));
            }
            if c == '.' && depth == 0 {
                let stmt = current.trim().to_string();
                if stmt.is_empty() {
                    return Err(syntax(line_no, "empty statement"));
                }
                out.push((start_line, stmt));
                current.clear();
                continue;
            }
            if current.trim().is_empty() && !c.is_whitespace() {
                start_line = line_no;
            }
            current.push(c);
        }
        if !current.trim().is_empty() {
            current.push(' ');
        }
    }
    if !current.trim().is_empty() {
        return Err(syntax(
            start_line,
            format!("missing `.` after `{}`", current.trim()),
        ));
    }
    Ok(out)
}

/// Splits a statement at top-level ` v ` separators.
fn disjuncts(stmt: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = stmt.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' => depth -= 1,
            b'v' if depth == 0 => {
                let before = i == 0 || bytes[i - 1].is_ascii_whitespace();
                let after = i + 1 == bytes.len() || bytes[i + 1].is_ascii_whitespace();
                if before && after && i > start {
                    parts.push(&stmt[start..i]);
                    start = i + 1;
                }
            }
            _ => {}
        }
    }
    parts.push(&stmt[start..]);
    parts
}

fn add_fact(doc: &mut Document, lit: Literal, line: usize) -> Result<(), Error> {
    let opposite = lit.negated();
    let clash = match (&lit.atom, lit.positive) {
        (LiteralAtom::Causal(c), false) => doc.theory.causal.contains(c),
        _ => doc.theory.facts.contains(&opposite),
    };
    if clash {
        return Err(Error::ContradictoryFacts {
            line,
            atom: lit.atom.to_string(),
        });
    }
    match (&lit.atom, lit.positive) {
        (LiteralAtom::Causal(c), true) => {
            doc.theory.causal.insert(c.clone());
        }
        _ => {
            doc.theory.facts.insert(lit);
        }
    }
    Ok(())
}

fn add_statement(doc: &mut Document, stmt: &str, line: usize) -> Result<(), Error> {
    let parts = disjuncts(stmt);
    if parts.len() > 1 {
        let lits = parts
            .iter()
            .map(|p| parse_atom(p, line)?.literal(line))
            .collect::<Result<Vec<_>, _>>()?;
        let clause = Clause::new(lits);
        if clause.literals.len() == 2 && clause.is_tautology() {
            let atom = clause
                .literals
                .iter()
                .next()
                .expect("two literals")
                .atom
                .clone();
            doc.theory.completion_atoms.insert(atom);
        } else if clause.literals.len() == 1 {
            let lit = clause.literals.into_iter().next().expect("one literal");
            add_fact(doc, lit, line)?;
        } else {
            doc.theory.clauses.insert(clause);
        }
        return Ok(());
    }

    let a = parse_atom(stmt, line)?;
    let t = &mut doc.theory;
    if a.negated && !matches!(a.name.as_str(), "true" | "cause") {
        return Err(syntax(line, format!("`{}` cannot be negated", a.name)));
    }
    match a.name.as_str() {
        "true" | "cause" => {
            let lit = a.literal(line)?;
            add_fact(doc, lit, line)?;
        }
        "symbol" => {
            a.expect_arity(1, line)?;
            t.declared_symbols.insert(a.symbol(0, line)?);
        }
        "ont" => {
            a.expect_arity(2, line)?;
            t.ontology
                .insert(OntAtom::new(a.symbol(0, line)?, a.symbol(1, line)?));
        }
        "ont_object" => {
            a.expect_arity(2, line)?;
            let (sub, sup) = (a.name_arg(0, line)?, a.name_arg(1, line)?);
            if sub == sup {
                return Err(syntax(line, "ont_object needs two distinct objects"));
            }
            t.object_ontology.insert(ObjectOntAtom::new(&sub, &sup));
        }
        "onekind" | "allkind" | "all_onekind" | "propkind" | "restr" => {
            a.expect_arity(1, line)?;
            let p = a.name_arg(0, line)?;
            let k = &mut t.kind_decls;
            match a.name.as_str() {
                "onekind" => k.onekind.insert(p),
                "allkind" => k.allkind.insert(p),
                "all_onekind" => k.all_onekind.insert(p),
                "propkind" => k.propkind.insert(p),
                _ => k.restricted.insert(p),
            };
        }
        "kind" => {
            if a.args.len() < 2 {
                return Err(syntax(
                    line,
                    "`kind` expects a predicate and at least one kind",
                ));
            }
            let p = a.name_arg(0, line)?;
            let kinds = (1..a.args.len())
                .map(|i| {
                    let k = a.name_arg(i, line)?;
                    ParamKind::parse(&k)
                        .ok_or_else(|| syntax(line, format!("unknown parameter kind `{k}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            t.kind_decls.signatures.insert(p, kinds);
        }
        "kindPar" => {
            if a.args.len() < 2 {
                return Err(syntax(
                    line,
                    "`kindPar` expects a predicate and its arguments",
                ));
            }
            let p = a.name_arg(0, line)?;
            let args = (1..a.args.len())
                .map(|i| a.name_arg(i, line))
                .collect::<Result<Vec<_>, _>>()?;
            t.kind_decls.kind_par.insert((p, args));
        }
        "stage" => {
            a.expect_arity(1, line)?;
            let s = a.name_arg(0, line)?;
            let stage =
                Stage::parse(&s).ok_or_else(|| syntax(line, format!("unknown stage `{s}`")))?;
            if doc.stage.is_some_and(|old| old != stage) {
                return Err(syntax(line, "conflicting stage markers"));
            }
            doc.stage = Some(stage);
        }
        "ecSet" => {
            a.expect_arity(3, line)?;
            doc.generated.insert(a.explanation(0, line)?);
        }
        "ecSetRes" => {
            a.expect_arity(3, line)?;
            doc.optimal
                .insert(a.explanation(0, line)?.with_status(Status::Optimal));
        }
        "world" => {
            a.expect_arity(1, line)?;
            doc.worlds.insert(a.index(0, line)?);
        }
        "explVer" => {
            a.expect_arity(4, line)?;
            let w = a.index(0, line)?;
            let atom = a.explanation(1, line)?.verified_in(w);
            doc.verified.entry(w).or_default().insert(atom);
        }
        "brave" => {
            a.expect_arity(3, line)?;
            doc.brave.insert(a.explanation(0, line)?);
        }
        "cautious" => {
            a.expect_arity(3, line)?;
            doc.cautious.insert(a.explanation(0, line)?);
        }
        other => return Err(syntax(line, format!("unknown predicate `{other}`"))),
    }
    Ok(())
}

impl Document {
    /// Adds everything from `other`. Unit facts are rechecked for
    /// contradictions; those are reported at line 0.
    pub fn absorb(&mut self, other: Document) -> Result<(), Error> {
        if let (Some(a), Some(b)) = (self.stage, other.stage) {
            if a != b {
                return Err(syntax(0, "inputs carry different stage markers"));
            }
        }
        self.stage = self.stage.or(other.stage);
        let o = other.theory;
        for c in o.causal {
            add_fact(self, Literal::causal(c, true), 0)?;
        }
        for l in o.facts {
            add_fact(self, l, 0)?;
        }
        let t = &mut self.theory;
        t.ontology.extend(o.ontology);
        t.clauses.extend(o.clauses);
        t.declared_symbols.extend(o.declared_symbols);
        t.object_ontology.extend(o.object_ontology);
        t.completion_atoms.extend(o.completion_atoms);
        let (k, ok) = (&mut t.kind_decls, o.kind_decls);
        k.onekind.extend(ok.onekind);
        k.allkind.extend(ok.allkind);
        k.all_onekind.extend(ok.all_onekind);
        k.propkind.extend(ok.propkind);
        k.signatures.extend(ok.signatures);
        k.restricted.extend(ok.restricted);
        k.kind_par.extend(ok.kind_par);
        self.generated.extend(other.generated);
        self.optimal.extend(other.optimal);
        self.worlds.extend(other.worlds);
        for (w, atoms) in other.verified {
            self.verified.entry(w).or_default().extend(atoms);
        }
        self.brave.extend(other.brave);
        self.cautious.extend(other.cautious);
        Ok(())
    }
}

/// Parses a fact file, including any stage artifacts.
pub fn parse_document(text: &str) -> Result<Document, Error> {
    let mut doc = Document::default();
    for (line, stmt) in statements(text)? {
        add_statement(&mut doc, &stmt, line)?;
    }
    Ok(doc)
}

/// Parses the premises of a fact file.
pub fn parse_theory(text: &str) -> Result<Theory, Error> {
    Ok(parse_document(text)?.theory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym;

    #[test]
    fn causal_and_ontology_facts() {
        let t = parse_theory("cause(alpha,beta).\nont(beta1, beta).").unwrap();
        assert!(t
            .causal
            .contains(&CausalAtom::new(sym("alpha"), sym("beta"))));
        assert!(t
            .ontology
            .contains(&OntAtom::new(sym("beta1"), sym("beta"))));
    }

    #[test]
    fn braced_three_literal_clause() {
        let t = parse_theory("{-true(epsilon1) v -true(gamma1) v -true(gamma2).}").unwrap();
        assert_eq!(t.clauses.len(), 1);
        let c = t.clauses.iter().next().unwrap();
        assert_eq!(c.literals.len(), 3);
        assert!(c.literals.iter().all(|l| !l.positive));
    }

    #[test]
    fn braces_spanning_lines() {
        let text = "{-true(epsilon1) v -true(gamma1) v -true(gamma2).\n-true(epsilon2) v -true(gamma1) v -true(gamma2).}\n{cause(beta2,gamma) v cause(epsilon3,gamma3).}";
        let t = parse_theory(text).unwrap();
        assert_eq!(t.clauses.len(), 3);
    }

    #[test]
    fn arity_error_names_the_line() {
        let err = parse_theory("cause(a,b).\nont(a).").unwrap_err();
        match err {
            Error::Syntax { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("expects 2"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn contradictory_unit_facts() {
        assert!(matches!(
            parse_theory("true(a).\n-true(a)."),
            Err(Error::ContradictoryFacts { line: 2, .. })
        ));
        assert!(matches!(
            parse_theory("cause(a,b). -cause(a,b)."),
            Err(Error::ContradictoryFacts { .. })
        ));
    }

    #[test]
    fn completion_and_comments() {
        let t = parse_theory("% header\ntrue(a) v -true(a). % trailing\ncause(g,d) v -cause(g,d).")
            .unwrap();
        assert_eq!(t.completion_atoms.len(), 2);
        assert!(t.clauses.is_empty());
    }

    #[test]
    fn several_statements_per_line() {
        let t = parse_theory("cause(a,b). cause(b,c).  ont(c,d).").unwrap();
        assert_eq!(t.causal.len(), 2);
        assert_eq!(t.ontology.len(), 1);
    }

    #[test]
    fn lifting_facts() {
        let t = parse_theory(
            "ont_object(tom,student). all_onekind(own). onekind(heard). allkind(like).\npropkind(alpha). restr(own). kindPar(own,student,book). kind(give,all,one,fixed).\nsymbol([own,student,book]).",
        )
        .unwrap();
        let k = &t.kind_decls;
        assert!(k.all_onekind.contains("own"));
        assert!(k.restricted.contains("own"));
        assert_eq!(
            k.signatures["give"],
            vec![ParamKind::All, ParamKind::One, ParamKind::Fixed]
        );
        assert!(k.kind_par.contains(&(
            "own".to_string(),
            vec!["student".to_string(), "book".to_string()]
        )));
        assert!(t
            .declared_symbols
            .contains(&Symbol::parse("[own,student,book]").unwrap()));
        assert_eq!(t.object_ontology.len(), 1);
    }

    #[test]
    fn stage_artifacts() {
        let d = parse_document(
            "stage(verify).\necSetRes(alpha,delta,{gamma1,alpha}).\nworld(1).\nexplVer(1,alpha,delta,{alpha,gamma1}).\nbrave(alpha,delta,{alpha,gamma1}).",
        )
        .unwrap();
        assert_eq!(d.stage, Some(Stage::Verify));
        let a = d.optimal.iter().next().unwrap();
        assert_eq!(a.conditions.to_string(), "{alpha,gamma1}");
        assert_eq!(d.verified[&1].iter().next().unwrap().world_index, Some(1));
        assert_eq!(d.brave.len(), 1);
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "cause(a,b)",
            "cause(a,.",
            "foo(a).",
            "-ont(a,b).",
            "ecSet(a,b,{b}).",
            "stage(later).",
            "true(a) v ont(a,b).",
            "kind(p,sideways).",
            "explVer(0,a,b,{a}).",
        ] {
            assert!(parse_document(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn absorb_merges_and_rechecks() {
        let mut a = parse_document("cause(a,b). true(x).").unwrap();
        a.absorb(parse_document("ont(b,c). cause(c,d).").unwrap())
            .unwrap();
        assert_eq!(a.theory.causal.len(), 2);
        assert_eq!(a.theory.ontology.len(), 1);
        assert!(matches!(
            a.absorb(parse_document("-true(x).").unwrap()),
            Err(Error::ContradictoryFacts { line: 0, .. })
        ));
    }

    #[test]
    fn symbol_named_v_is_not_a_separator() {
        let t = parse_theory("cause(v,w).\ntrue(v) v true(w).").unwrap();
        assert!(t.causal.contains(&CausalAtom::new(sym("v"), sym("w"))));
        assert_eq!(t.clauses.iter().next().unwrap().literals.len(), 2);
    }
}
