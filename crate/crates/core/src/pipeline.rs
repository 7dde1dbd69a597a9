//! Staged execution. Each stage reads the fact file written by the previous
//! one, so running the stages one by one gives the same output as running
//! them all at once.

use std::collections::BTreeSet;
use std::path::PathBuf;

use crate::closure::ClosureRelations;
use crate::emit::{emit_document, literal_strings, read_stage_input, JsonReport};
use crate::error::Error;
use crate::generate::generate;
use crate::lift::{apply_restrictions, lift};
use crate::optimize::optimize;
use crate::oracle;
use crate::parse::{Document, Stage};
use crate::theory::{symbol_universe, validate_theory, ExplanationAtom, Theory};
use crate::worlds::{verify_all, Verification, WorldOptions, DEFAULT_MAX_WORLDS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageSelection {
    Gen,
    Opt,
    Verify,
    All,
}

impl StageSelection {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "all" => Some(StageSelection::All),
            other => Stage::parse(other).map(|s| match s {
                Stage::Gen => StageSelection::Gen,
                Stage::Opt => StageSelection::Opt,
                Stage::Verify => StageSelection::Verify,
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub stage: StageSelection,
    pub max_worlds: usize,
    pub inclusive_disjunction: bool,
    pub format: Format,
    pub lift: bool,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            stage: StageSelection::All,
            max_worlds: DEFAULT_MAX_WORLDS,
            inclusive_disjunction: false,
            format: Format::Text,
            lift: false,
            out: None,
        }
    }
}

impl RunConfig {
    fn world_options(&self) -> WorldOptions {
        WorldOptions {
            max_worlds: self.max_worlds,
            inclusive_disjunction: self.inclusive_disjunction,
        }
    }
}

/// The result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    /// What the text output shows.
    pub document: Document,
    pub verification: Option<Verification>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn to_text(&self) -> String {
        emit_document(&self.document)
    }

    pub fn to_json(&self) -> String {
        let v = self.verification.as_ref();
        let facts = |w: usize| {
            v.and_then(|v| v.worlds.iter().find(|r| r.world.index == w))
                .map(|r| literal_strings(&r.world.chosen))
                .unwrap_or_default()
        };
        let verdicts = v.map(|v| v.verdicts.clone()).unwrap_or_default();
        let report =
            JsonReport::from_document(&self.document, &facts, verdicts, self.warnings.clone());
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }

    /// Optimal atoms of the report, as shown.
    pub fn optimal(&self) -> &BTreeSet<ExplanationAtom> {
        &self.document.optimal
    }
}

/// Applies the lifting rules, adding the lifted atoms to the ontology.
pub fn apply_lifting(t: &mut Theory) -> Vec<String> {
    let mentioned = symbol_universe(t).symbols;
    let lifted = lift(&t.object_ontology, &t.kind_decls, &mentioned);
    let kept = apply_restrictions(&lifted.atoms, &t.kind_decls);
    t.ontology.extend(kept.atoms);
    lifted.warnings.into_iter().chain(kept.warnings).collect()
}

fn prepare(doc: &mut Document, lifting: bool) -> Result<Vec<String>, Error> {
    let mut warnings = Vec::new();
    if lifting {
        warnings.extend(apply_lifting(&mut doc.theory));
    }
    let report = validate_theory(&doc.theory, lifting);
    if !report.is_ok() {
        return Err(Error::Invalid(report.errors));
    }
    warnings.extend(report.warnings);
    Ok(warnings)
}

fn gen_stage(input: &Document) -> Document {
    Document {
        theory: input.theory.clone(),
        stage: Some(Stage::Gen),
        generated: generate(&input.theory),
        ..Default::default()
    }
}

fn opt_stage(input: &Document) -> Document {
    let c = ClosureRelations::compute(&input.theory);
    Document {
        theory: input.theory.clone(),
        stage: Some(Stage::Opt),
        optimal: optimize(&input.generated, &c.impco),
        ..Default::default()
    }
}

fn verify_stage(input: &Document, opts: WorldOptions) -> Result<(Document, Verification), Error> {
    let v = verify_all(&input.theory, &input.optimal, opts)?;
    let mut d = Document {
        theory: input.theory.clone(),
        stage: Some(Stage::Verify),
        optimal: input.optimal.clone(),
        ..Default::default()
    };
    for r in &v.worlds {
        d.worlds.insert(r.world.index);
        if !r.verified.is_empty() {
            d.verified.insert(r.world.index, r.verified.clone());
        }
    }
    for verdict in &v.verdicts {
        let a = ExplanationAtom::new(
            verdict.from.clone(),
            verdict.to.clone(),
            verdict.conditions.clone(),
        )?;
        if verdict.brave {
            d.brave.insert(a.clone());
        }
        if verdict.cautious {
            d.cautious.insert(a);
        }
    }
    Ok((d, v))
}

fn require(doc: &Document, needed: Stage, stage: &'static str) -> Result<(), Error> {
    if doc.stage == Some(needed) {
        Ok(())
    } else {
        Err(Error::MissingStageInput { stage })
    }
}

/// Runs `stage` on an already parsed input.
pub fn run_document(mut input: Document, cfg: &RunConfig) -> Result<Report, Error> {
    let warnings = prepare(&mut input, cfg.lift)?;
    let (document, verification) = match cfg.stage {
        StageSelection::Gen => (gen_stage(&input), None),
        StageSelection::Opt => {
            require(&input, Stage::Gen, "opt")?;
            (opt_stage(&input), None)
        }
        StageSelection::Verify => {
            require(&input, Stage::Opt, "verify")?;
            let (d, v) = verify_stage(&input, cfg.world_options())?;
            (d, Some(v))
        }
        StageSelection::All => {
            let optimized = opt_stage(&gen_stage(&input));
            let (d, v) = verify_stage(&optimized, cfg.world_options())?;
            (d, Some(v))
        }
    };
    Ok(Report {
        document,
        verification,
        warnings,
    })
}

/// Runs `stage` on fact-file text (or a JSON report from a previous stage).
pub fn run_text(text: &str, cfg: &RunConfig) -> Result<Report, Error> {
    run_document(read_stage_input(text)?, cfg)
}

/// Reads and merges fact files (or JSON reports) in order.
pub fn read_inputs(paths: &[PathBuf]) -> Result<Document, Error> {
    let mut input = Document::default();
    for path in paths {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        input.absorb(read_stage_input(&text)?)?;
    }
    Ok(input)
}

/// Reads every input, runs the requested stage and writes the output to
/// `cfg.out` when set. Returns the report either way.
pub fn run_pipeline(cfg: &RunConfig) -> Result<Report, Error> {
    let report = run_document(read_inputs(&cfg.inputs)?, cfg)?;
    if let Some(out) = &cfg.out {
        std::fs::write(out, report.render(cfg.format)).map_err(|source| Error::Io {
            path: out.display().to_string(),
            source,
        })?;
    }
    Ok(report)
}

/// Pipeline and oracle results that differ on a theory.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleDiff {
    pub only_pipeline: BTreeSet<ExplanationAtom>,
    pub only_oracle: BTreeSet<ExplanationAtom>,
}

impl OracleDiff {
    pub fn is_empty(&self) -> bool {
        self.only_pipeline.is_empty() && self.only_oracle.is_empty()
    }
}

/// Compares generation plus optimization with the brute-force derivation.
pub fn oracle_diff(t: &Theory, bound: usize) -> Result<OracleDiff, Error> {
    let c = ClosureRelations::compute(t);
    let ours = optimize(&generate(t), &c.impco);
    let theirs = oracle::optimal(t, bound)?;
    let keys = |s: &BTreeSet<ExplanationAtom>| -> BTreeSet<ExplanationAtom> {
        s.iter()
            .map(|a| a.clone().with_status(crate::theory::Status::Optimal))
            .collect()
    };
    let (ours, theirs) = (keys(&ours), keys(&theirs));
    Ok(OracleDiff {
        only_pipeline: ours.difference(&theirs).cloned().collect(),
        only_oracle: theirs.difference(&ours).cloned().collect(),
    })
}
