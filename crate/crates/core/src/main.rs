use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use causal_explain::parse::Document;
use causal_explain::pipeline::{self, Format, RunConfig, StageSelection};
use causal_explain::{oracle, Error};
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StageArg {
    Gen,
    Opt,
    Verify,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Derives optimal causal explanations from a fact file and checks them
/// against every world of its clause theory. Reads stdin when no input is given.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Fact files, merged in order.
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "all")]
    stage: StageArg,
    #[arg(long, default_value_t = causal_explain::worlds::DEFAULT_MAX_WORLDS)]
    max_worlds: usize,
    /// Let a disjunction pick any non-empty subset of its literals.
    #[arg(long)]
    inclusive_disjunction: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Derive ontology atoms from object facts and kind declarations first.
    #[arg(long)]
    lift: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Compare generation and optimization with the brute-force derivation
    /// instead of running a stage.
    #[arg(long)]
    oracle: bool,
}

fn config(args: &Args) -> RunConfig {
    RunConfig {
        inputs: args.inputs.clone(),
        stage: match args.stage {
            StageArg::Gen => StageSelection::Gen,
            StageArg::Opt => StageSelection::Opt,
            StageArg::Verify => StageSelection::Verify,
            StageArg::All => StageSelection::All,
        },
        max_worlds: args.max_worlds,
        inclusive_disjunction: args.inclusive_disjunction,
        format: match args.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
        lift: args.lift,
        out: args.out.clone(),
    }
}

fn read_input(cfg: &RunConfig) -> Result<Document, Error> {
    if !cfg.inputs.is_empty() {
        return pipeline::read_inputs(&cfg.inputs);
    }
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|source| Error::Io {
            path: "<stdin>".into(),
            source,
        })?;
    causal_explain::emit::read_stage_input(&text)
}

fn run(args: &Args) -> Result<(), Error> {
    let cfg = config(args);
    let mut doc = read_input(&cfg)?;
    if args.oracle {
        if cfg.lift {
            pipeline::apply_lifting(&mut doc.theory);
        }
        let diff = pipeline::oracle_diff(&doc.theory, oracle::DEFAULT_BOUND)?;
        for a in &diff.only_pipeline {
            println!("pipeline only: ({},{},{})", a.from, a.to, a.conditions);
        }
        for a in &diff.only_oracle {
            println!("oracle only: ({},{},{})", a.from, a.to, a.conditions);
        }
        if !diff.is_empty() {
            return Err(Error::Invariant("pipeline and oracle disagree".into()));
        }
        println!("pipeline and oracle agree");
        return Ok(());
    }
    let report = pipeline::run_document(doc, &cfg)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let text = report.render(cfg.format);
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
