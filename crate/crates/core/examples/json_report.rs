use causal_explain::emit::emit_theory;
use causal_explain::fixtures::pruning_example;
use causal_explain::pipeline::{run_text, Format, RunConfig};

pub fn main() {
    let mut text = emit_theory(&pruning_example());
    text.push_str("-true(beta1) v -true(beta0).\n");
    let cfg = RunConfig {
        format: Format::Json,
        ..Default::default()
    };
    print!("{}", run_text(&text, &cfg).expect("valid theory").to_json());
}
