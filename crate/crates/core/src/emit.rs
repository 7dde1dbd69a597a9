//! Canonical text and JSON output.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::parse::{parse_document, Document, Stage};
use crate::theory::{ConditionSet, ExplanationAtom, Literal, Status, Theory};
use crate::worlds::Verdict;
use crate::Symbol;

/// Premises as fact lines, in a fixed order: declarations, causal atoms,
/// ontology, unit facts, clauses, completions, then lifting data.
pub fn theory_lines(t: &Theory) -> Vec<String> {
    let mut out = Vec::new();
    for s in &t.declared_symbols {
        out.push(format!("symbol({s})."));
    }
    for c in &t.causal {
        out.push(format!("cause({},{}).", c.cause, c.effect));
    }
    for o in &t.ontology {
        out.push(format!("ont({},{}).", o.sub, o.sup));
    }
    for l in &t.facts {
        out.push(format!("{l}."));
    }
    for c in &t.clauses {
        out.push(format!("{c}."));
    }
    for a in &t.completion_atoms {
        out.push(format!("{a} v -{a}."));
    }
    let k = &t.kind_decls;
    for o in &t.object_ontology {
        out.push(format!("ont_object({},{}).", o.sub, o.sup));
    }
    for (name, set) in [
        ("onekind", &k.onekind),
        ("allkind", &k.allkind),
        ("all_onekind", &k.all_onekind),
        ("propkind", &k.propkind),
        ("restr", &k.restricted),
    ] {
        for p in set {
            out.push(format!("{name}({p})."));
        }
    }
    for (p, kinds) in &k.signatures {
        let ks: Vec<&str> = kinds.iter().map(|k| k.as_str()).collect();
        out.push(format!("kind({p},{}).", ks.join(",")));
    }
    for (p, args) in &k.kind_par {
        out.push(format!("kindPar({p},{}).", args.join(",")));
    }
    out
}

pub fn emit_theory(t: &Theory) -> String {
    let mut s = String::new();
    for line in theory_lines(t) {
        s.push_str(&line);
        s.push('\n');
    }
    s
}

fn atom_line(name: &str, a: &ExplanationAtom) -> String {
    format!("{name}({},{},{}).", a.from, a.to, a.conditions)
}

/// A document as canonical fact lines. The stage marker, when present,
/// comes first.
pub fn emit_document(d: &Document) -> String {
    let mut s = String::new();
    if let Some(stage) = d.stage {
        writeln!(s, "stage({stage}).").unwrap();
    }
    s.push_str(&emit_theory(&d.theory));
    for a in &d.generated {
        writeln!(s, "{}", atom_line("ecSet", a)).unwrap();
    }
    for a in &d.optimal {
        writeln!(s, "{}", atom_line("ecSetRes", a)).unwrap();
    }
    for w in &d.worlds {
        writeln!(s, "world({w}).").unwrap();
    }
    for (w, atoms) in &d.verified {
        for a in atoms {
            writeln!(s, "explVer({w},{},{},{}).", a.from, a.to, a.conditions).unwrap();
        }
    }
    for a in &d.brave {
        writeln!(s, "{}", atom_line("brave", a)).unwrap();
    }
    for a in &d.cautious {
        writeln!(s, "{}", atom_line("cautious", a)).unwrap();
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonAtom {
    pub from: Symbol,
    pub to: Symbol,
    pub conditions: ConditionSet,
    pub status: Status,
}

impl From<&ExplanationAtom> for JsonAtom {
    fn from(a: &ExplanationAtom) -> Self {
        JsonAtom {
            from: a.from.clone(),
            to: a.to.clone(),
            conditions: a.conditions.clone(),
            status: a.status,
        }
    }
}

impl JsonAtom {
    fn to_atom(&self, world: Option<usize>) -> Result<ExplanationAtom, Error> {
        let mut a =
            ExplanationAtom::new(self.from.clone(), self.to.clone(), self.conditions.clone())?;
        a.status = self.status;
        a.world_index = world;
        Ok(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonWorld {
    pub index: usize,
    /// Literals chosen in the world, as fact text.
    pub facts: Vec<String>,
    pub explanations: Vec<JsonAtom>,
}

/// The JSON report. `stage` and `theory` make it readable as stage input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub stage: Option<String>,
    pub theory: Vec<String>,
    pub generated: Vec<JsonAtom>,
    pub optimal: Vec<JsonAtom>,
    pub worlds: Vec<JsonWorld>,
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl JsonReport {
    /// Builds the JSON view of a document. `world_facts` supplies the chosen
    /// literals per world index, when known.
    pub fn from_document(
        d: &Document,
        world_facts: &dyn Fn(usize) -> Vec<String>,
        verdicts: Vec<Verdict>,
        warnings: Vec<String>,
    ) -> Self {
        JsonReport {
            stage: d.stage.map(|s| s.as_str().to_string()),
            theory: theory_lines(&d.theory),
            generated: d.generated.iter().map(JsonAtom::from).collect(),
            optimal: d.optimal.iter().map(JsonAtom::from).collect(),
            worlds: d
                .worlds
                .iter()
                .map(|&w| JsonWorld {
                    index: w,
                    facts: world_facts(w),
                    explanations: d
                        .verified
                        .get(&w)
                        .map(|atoms| atoms.iter().map(JsonAtom::from).collect())
                        .unwrap_or_default(),
                })
                .collect(),
            verdicts,
            warnings,
        }
    }

    /// Reads the report back as a document.
    pub fn to_document(&self) -> Result<Document, Error> {
        let mut d = parse_document(&self.theory.join("\n"))?;
        d.stage = match &self.stage {
            Some(s) => Some(Stage::parse(s).ok_or_else(|| Error::Syntax {
                line: 0,
                message: format!("unknown stage `{s}`"),
            })?),
            None => None,
        };
        for a in &self.generated {
            d.generated.insert(a.to_atom(None)?);
        }
        for a in &self.optimal {
            d.optimal.insert(a.to_atom(None)?);
        }
        for w in &self.worlds {
            d.worlds.insert(w.index);
            let atoms = w
                .explanations
                .iter()
                .map(|a| a.to_atom(Some(w.index)))
                .collect::<Result<BTreeSet<_>, _>>()?;
            if !atoms.is_empty() {
                d.verified.insert(w.index, atoms);
            }
        }
        for v in &self.verdicts {
            let a = ExplanationAtom::new(v.from.clone(), v.to.clone(), v.conditions.clone())?;
            if v.brave {
                d.brave.insert(a.clone());
            }
            if v.cautious {
                d.cautious.insert(a);
            }
        }
        Ok(d)
    }
}

pub fn literal_strings(lits: &BTreeSet<Literal>) -> Vec<String> {
    lits.iter().map(ToString::to_string).collect()
}

/// Reads stage input in either format. JSON is recognized by a leading `{`
/// followed by a quoted key.
pub fn read_stage_input(text: &str) -> Result<Document, Error> {
    let trimmed = text.trim_start();
    let looks_json = trimmed.starts_with('{') && trimmed[1..].trim_start().starts_with('"');
    if looks_json {
        let report: JsonReport = serde_json::from_str(text)?;
        report.to_document()
    } else {
        parse_document(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::generic_diagram;
    use crate::parse::parse_theory;
    use crate::sym;
    use crate::theory::canonicalize;

    #[test]
    fn optimal_atom_line() {
        let a = ExplanationAtom::new(
            sym("alpha"),
            sym("delta"),
            canonicalize([sym("gamma1"), sym("alpha")]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            atom_line("ecSetRes", &a),
            "ecSetRes(alpha,delta,{alpha,gamma1})."
        );
    }

    #[test]
    fn theory_round_trip() {
        let text = "symbol(lonely).\ncause(a,b).\nont(b,c).\n-true(c).\ntrue(a) v true(d).\ntrue(x) v -true(x).\n\
                    ont_object(tom,student).\nall_onekind(own).\nkind(give,all,one,fixed).\nkindPar(own,tom,book).\nrestr(own).";
        let t = parse_theory(text).unwrap();
        let again = parse_theory(&emit_theory(&t)).unwrap();
        assert_eq!(t, again);
        assert_eq!(emit_theory(&again), emit_theory(&t));
    }

    #[test]
    fn diagram_round_trip() {
        let t = generic_diagram();
        assert_eq!(parse_theory(&emit_theory(&t)).unwrap(), t);
    }

    #[test]
    fn json_round_trip() {
        let mut d = Document {
            theory: generic_diagram(),
            stage: Some(Stage::Opt),
            ..Default::default()
        };
        let a = ExplanationAtom::new(
            sym("alpha"),
            sym("delta"),
            canonicalize([sym("alpha"), sym("gamma1")]).unwrap(),
        )
        .unwrap()
        .with_status(Status::Optimal);
        d.optimal.insert(a);
        let json = serde_json::to_string(&JsonReport::from_document(
            &d,
            &|_| Vec::new(),
            Vec::new(),
            Vec::new(),
        ))
        .unwrap();
        assert_eq!(read_stage_input(&json).unwrap(), d);
    }

    #[test]
    fn brave_only_verdict_json() {
        let v = Verdict {
            from: sym("a"),
            to: sym("b"),
            conditions: canonicalize([sym("a")]).unwrap(),
            brave: true,
            cautious: false,
            worlds: vec![1],
        };
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("\"brave\":true,\"cautious\":false"));
    }

    #[test]
    fn braced_text_is_not_json() {
        let d = read_stage_input("{-true(a) v -true(b).}").unwrap();
        assert_eq!(d.theory.clauses.len(), 1);
    }
}
