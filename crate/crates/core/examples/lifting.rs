// Lifts object-level IS-A facts to structured symbols. `own` is universal in
// its owner and existential in the owned thing, so "a student owns a book"
// specializes to Tom owning a book and Tom owning some document.

use causal_explain::pipeline::{run_text, RunConfig, StageSelection};

const FACTS: &str = "
ont_object(tom,student).
ont_object(book,document).
all_onekind(own).
symbol([own,student,book]).
";

pub fn main() {
    let cfg = RunConfig {
        stage: StageSelection::Gen,
        lift: true,
        ..Default::default()
    };
    let report = run_text(FACTS, &cfg).expect("lifting input is valid");
    for o in &report.document.theory.ontology {
        println!("ont({},{}).", o.sub, o.sup);
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
}
