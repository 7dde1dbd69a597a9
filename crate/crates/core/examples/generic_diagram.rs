// Runs every stage on the generic diagram and prints the optimal
// explanations of `delta` by `alpha`.

use causal_explain::emit::emit_theory;
use causal_explain::fixtures::generic_diagram;
use causal_explain::pipeline::{run_text, RunConfig};
use causal_explain::sym;

pub fn main() {
    let text = emit_theory(&generic_diagram());
    let report = run_text(&text, &RunConfig::default()).expect("diagram is valid");
    for a in report.optimal() {
        if a.from == sym("alpha") && a.to == sym("delta") {
            println!("alpha explains delta if {} is possible", a.conditions);
        }
    }
}
