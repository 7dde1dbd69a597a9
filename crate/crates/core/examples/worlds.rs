// Verification against a clause theory. `gamma1` is known to be false, and
// either `beta3` or `epsilon2` is impossible, so the explanations of `delta`
// split into ones that hold in every world and ones that hold in some.

use causal_explain::emit::emit_theory;
use causal_explain::fixtures::generic_diagram;
use causal_explain::pipeline::{run_text, RunConfig};

pub fn main() {
    let mut text = emit_theory(&generic_diagram());
    text.push_str("-true(gamma1).\n-true(beta3) v -true(epsilon2).\n");
    let report = run_text(&text, &RunConfig::default()).expect("theory has a world");
    let verification = report.verification.expect("stage all verifies");
    for r in &verification.worlds {
        let chosen: Vec<String> = r.world.chosen.iter().map(|l| l.to_string()).collect();
        println!("world {}: {}", r.world.index, chosen.join(" "));
    }
    for v in verification
        .verdicts
        .iter()
        .filter(|v| v.to.as_str() == "delta")
    {
        let label = if v.cautious {
            "cautious"
        } else if v.brave {
            "brave"
        } else {
            "never"
        };
        println!(
            "({},{},{}) {label} in worlds {:?}",
            v.from, v.to, v.conditions, v.worlds
        );
    }
}
