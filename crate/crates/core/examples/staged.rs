// Runs gen, opt and verify as separate steps through files, the way a shell
// pipeline would, and checks the result against a single run.

use std::path::PathBuf;

use causal_explain::emit::emit_theory;
use causal_explain::fixtures::generic_diagram;
use causal_explain::pipeline::{run_pipeline, Format, RunConfig, StageSelection};

fn step(stage: StageSelection, input: PathBuf, out: PathBuf) -> String {
    let cfg = RunConfig {
        inputs: vec![input],
        stage,
        format: Format::Text,
        out: Some(out),
        ..Default::default()
    };
    run_pipeline(&cfg).expect("stage runs").to_text()
}

pub fn main() {
    let dir = std::env::temp_dir().join(format!("causal-explain-staged-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("diagram.lp");
    std::fs::write(&input, emit_theory(&generic_diagram()) + "-true(gamma1).\n").unwrap();

    step(StageSelection::Gen, input.clone(), dir.join("gen.lp"));
    step(StageSelection::Opt, dir.join("gen.lp"), dir.join("opt.lp"));
    let chained = step(
        StageSelection::Verify,
        dir.join("opt.lp"),
        dir.join("verify.lp"),
    );
    let all = step(StageSelection::All, input, dir.join("all.lp"));

    assert_eq!(chained, all);
    println!(
        "{} lines, chained and single runs agree",
        all.lines().count()
    );
    std::fs::remove_dir_all(&dir).ok();
}
