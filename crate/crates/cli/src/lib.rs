//! The `continuum` command line: lattices, legends, diagrams, implication
//! bases, fitness reports and transformation deltas over formal contexts.
//!
//! [`run`] never touches the process streams or exit status; `main` does.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use continuum_core::context::{
    parse_cxt_with, parse_json_context, serialize_cxt, serialize_json_context, validate_context,
    Issue,
};
use continuum_core::corpus::{load_corpus, verify_corpus, ProvenanceCorpus};
use continuum_core::fca::implication_basis;
use continuum_core::profile::{
    evaluate_fitness, gap_cost, profile_of, transformation_delta, CostModel, RequirementSet,
    Target,
};
use continuum_core::render::{legend, to_dot, DotLabels};
use continuum_core::{ConceptLattice, Dimension, Error, FeatureRegistry, FormalContext, ValidationReport};
use serde::Serialize;

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "continuum", version, about = "Concept lattices over knowledge-graph characterisations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the concept lattice and print it as JSON
    Lattice {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = LatticeFormat::Json)]
        format: LatticeFormat,
        #[command(flatten)]
        output: Output,
    },
    /// Print the concept legend table
    Legend {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = LegendFormat::Md)]
        format: LegendFormat,
        #[command(flatten)]
        output: Output,
    },
    /// Print the Hasse diagram in Graphviz DOT
    Dot {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Labels::Intent)]
        labels: Labels,
        #[command(flatten)]
        output: Output,
    },
    /// Print the Duquenne-Guigues implication basis
    Implications {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ImplicationFormat::Json)]
        format: ImplicationFormat,
        #[command(flatten)]
        output: Output,
    },
    /// Check a KG's profile against a requirement set
    Fit {
        #[command(flatten)]
        inputs: ProfileInputs,
        /// Knowledge graph to evaluate
        #[arg(long)]
        kg: String,
        /// Requirement set JSON
        #[arg(long, value_name = "PATH")]
        require: PathBuf,
        /// Cost model JSON; adds a "cost" field to the report
        #[arg(long, value_name = "PATH")]
        cost_model: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Features to add and remove to move a KG to a target
    Delta {
        #[command(flatten)]
        inputs: ProfileInputs,
        /// Source knowledge graph
        #[arg(long)]
        kg: String,
        /// Requirement set JSON to reach
        #[arg(long, value_name = "PATH", conflicts_with = "target_kg", required_unless_present = "target_kg")]
        require: Option<PathBuf>,
        /// Knowledge graph whose profile to reach
        #[arg(long)]
        target_kg: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Report errors and warnings for a context file
    Validate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Export or verify the embedded corpus
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Write one embedded context
    Export {
        #[arg(long, value_parser = parse_dimension)]
        dimension: Dimension,
        #[arg(long, value_enum)]
        format: ContextFormat,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute every lattice and compare with the golden concept sets
    Verify {
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Context file, CXT or JSON (detected from content)
    #[arg(long, value_name = "PATH", required_unless_present = "corpus", conflicts_with = "corpus")]
    context: Option<PathBuf>,
    /// Use the embedded corpus instead of a file
    #[arg(long, value_enum)]
    corpus: Option<CorpusSource>,
    /// Dimension of a CXT file, or the corpus context to use
    #[arg(long, value_parser = parse_dimension)]
    dimension: Option<Dimension>,
}

#[derive(Args, Debug)]
struct ProfileInputs {
    /// Context files; repeat once per dimension
    #[arg(long, value_name = "PATH", required_unless_present = "corpus", conflicts_with = "corpus")]
    context: Vec<PathBuf>,
    #[arg(long, value_enum)]
    corpus: Option<CorpusSource>,
    /// Dimensions of the CXT files, in the order they are given
    #[arg(long, value_parser = parse_dimension, conflicts_with = "corpus")]
    dimension: Vec<Dimension>,
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CorpusSource {
    Builtin,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LatticeFormat {
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LegendFormat {
    Md,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Labels {
    Id,
    Intent,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ImplicationFormat {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ContextFormat {
    Cxt,
    Json,
}

fn parse_dimension(s: &str) -> Result<Dimension, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failed invocation: exit status, stable code and message.
#[derive(Debug)]
struct Failure {
    exit: i32,
    code: String,
    message: String,
}

impl Failure {
    fn input(code: &str, message: impl Into<String>) -> Self {
        Failure {
            exit: EXIT_INPUT,
            code: code.to_string(),
            message: message.into(),
        }
    }

    fn internal(code: &str, message: impl Into<String>) -> Self {
        Failure {
            exit: EXIT_INTERNAL,
            code: code.to_string(),
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let exit = match err {
            Error::CorpusCorrupt(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure {
            exit,
            code: err.code().to_string(),
            message: err.to_string(),
        }
    }
}

/// What a subcommand produced: text for the output stream, and an exit
/// status that may be nonzero even when there is output (failed checks).
struct Produced {
    text: String,
    exit: i32,
    note: Option<String>,
}

impl Produced {
    fn ok(text: String) -> Self {
        Produced {
            text,
            exit: EXIT_OK,
            note: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Style {
    pub color: bool,
}

impl Style {
    fn diagnostic(&self, code: &str, message: &str) -> String {
        if self.color {
            format!("\x1b[1;31merror[{code}]\x1b[0m: {message}\n")
        } else {
            format!("error[{code}]: {message}\n")
        }
    }
}

/// Runs one invocation without styling. `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_styled(argv, Style::default())
}

pub fn run_styled<I, S>(argv: I, style: Style) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };

    let out_path = output_of(&cli.command).out.clone();
    let result = execute(cli.command).and_then(|produced| match &out_path {
        Some(path) => fs::write(path, &produced.text)
            .map(|_| Produced {
                text: String::new(),
                ..produced
            })
            .map_err(|e| Failure::input("unwritable-file", format!("{}: {e}", path.display()))),
        None => Ok(produced),
    });

    match result {
        Ok(produced) => Outcome {
            code: produced.exit,
            stdout: produced.text,
            stderr: produced
                .note
                .map(|n| style.diagnostic("check-failed", &n))
                .unwrap_or_default(),
        },
        Err(f) => Outcome {
            code: f.exit,
            stdout: String::new(),
            stderr: style.diagnostic(&f.code, &f.message),
        },
    }
}

fn output_of(command: &Command) -> &Output {
    match command {
        Command::Lattice { output, .. }
        | Command::Legend { output, .. }
        | Command::Dot { output, .. }
        | Command::Implications { output, .. }
        | Command::Fit { output, .. }
        | Command::Delta { output, .. }
        | Command::Validate { output, .. } => output,
        Command::Corpus { action } => match action {
            CorpusAction::Export { output, .. } | CorpusAction::Verify { output } => output,
        },
    }
}

fn execute(command: Command) -> Result<Produced, Failure> {
    match command {
        Command::Lattice { input, format, .. } => {
            let ctx = load_input(&input)?;
            let LatticeFormat::Json = format;
            Ok(Produced::ok(to_json(&ConceptLattice::build(&ctx).to_json())?))
        }
        Command::Legend { input, format, .. } => {
            let ctx = load_input(&input)?;
            let table = legend(&ConceptLattice::build(&ctx));
            Ok(Produced::ok(match format {
                LegendFormat::Md => table.to_markdown(),
                LegendFormat::Csv => table.to_csv(),
            }))
        }
        Command::Dot { input, labels, .. } => {
            let ctx = load_input(&input)?;
            let labels = match labels {
                Labels::Id => DotLabels::IdOnly,
                Labels::Intent => DotLabels::IdAndIntent,
            };
            Ok(Produced::ok(to_dot(&ConceptLattice::build(&ctx), labels)))
        }
        Command::Implications { input, format, .. } => {
            let ctx = load_input(&input)?;
            let basis: Vec<_> = implication_basis(&ctx).iter().map(|i| i.to_named(&ctx)).collect();
            Ok(Produced::ok(match format {
                ImplicationFormat::Json => to_json(&basis)?,
                ImplicationFormat::Text => basis
                    .iter()
                    .map(|i| format!("{{{}}} -> {{{}}}\n", i.premise.join(", "), i.conclusion.join(", ")))
                    .collect(),
            }))
        }
        Command::Fit {
            inputs,
            kg,
            require,
            cost_model,
            ..
        } => {
            let requirement = RequirementSet::from_json(&read(&require)?)?;
            let model = cost_model
                .map(|p| read(&p).and_then(|t| Ok(CostModel::from_json(&t)?)))
                .transpose()?;
            let (contexts, registry) = load_profiles(&inputs)?;
            let profile = profile_of(&contexts, &kg)?;
            let report = evaluate_fitness(&profile, &requirement, &registry)?;
            let mut value = serde_json::to_value(&report).map_err(serialize_failure)?;
            if let (Some(model), Some(map)) = (model, value.as_object_mut()) {
                map.insert("cost".into(), gap_cost(&report, &model).into());
            }
            Ok(Produced::ok(to_json(&value)?))
        }
        Command::Delta {
            inputs,
            kg,
            require,
            target_kg,
            ..
        } => {
            let requirement = require.map(|p| read(&p)).transpose()?;
            let requirement = requirement.map(|t| RequirementSet::from_json(&t)).transpose()?;
            let (contexts, registry) = load_profiles(&inputs)?;
            let source = profile_of(&contexts, &kg)?;
            let delta = match (&requirement, target_kg) {
                (Some(req), _) => transformation_delta(&source, Target::Requirement(req), &registry)?,
                (None, Some(t)) => {
                    let target = profile_of(&contexts, &t)?;
                    transformation_delta(&source, Target::Profile(&target), &registry)?
                }
                (None, None) => unreachable!("clap requires one target"),
            };
            Ok(Produced::ok(to_json(&delta)?))
        }
        Command::Validate { input, .. } => {
            let report = match load_input(&input) {
                Ok(ctx) => validate_context(&ctx),
                Err(f) if f.exit == EXIT_INPUT && f.code != "unreadable-file" && f.code != "dimension-flag" => {
                    ValidationReport {
                        errors: vec![Issue::new(f.code, f.message)],
                        warnings: vec![],
                    }
                }
                Err(f) => return Err(f),
            };
            let failed = !report.is_ok();
            Ok(Produced {
                text: to_json(&report)?,
                exit: if failed { EXIT_INPUT } else { EXIT_OK },
                note: failed.then(|| format!("{} validation error(s)", report.errors.len())),
            })
        }
        Command::Corpus { action } => match action {
            CorpusAction::Export {
                dimension, format, ..
            } => {
                let corpus = corpus()?;
                let ctx = corpus.context(dimension);
                Ok(Produced::ok(match format {
                    ContextFormat::Cxt => serialize_cxt(ctx),
                    ContextFormat::Json => serialize_json_context(ctx),
                }))
            }
            CorpusAction::Verify { .. } => {
                let corpus = corpus()?;
                let report = verify_corpus(&corpus);
                let failed = !report.is_ok();
                Ok(Produced {
                    text: to_json(&report)?,
                    exit: if failed { EXIT_INTERNAL } else { EXIT_OK },
                    note: failed.then(|| format!("{} golden mismatch(es)", report.errors.len())),
                })
            }
        },
    }
}

fn corpus() -> Result<ProvenanceCorpus, Failure> {
    load_corpus().map_err(|e| Failure::internal(e.code(), e.to_string()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input("unreadable-file", format!("{}: {e}", path.display())))
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Parses a context file; CXT needs an explicit dimension, JSON carries its own.
fn parse_context(path: &Path, text: &str, dimension: Option<Dimension>) -> Result<FormalContext, Failure> {
    let located = |e: Error| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    };
    match (is_json(text), dimension) {
        (true, None) => parse_json_context(text).map_err(located),
        (true, Some(_)) => Err(Failure::input(
            "dimension-flag",
            format!("{}: --dimension is not allowed for JSON contexts, which carry their own", path.display()),
        )),
        (false, Some(d)) => parse_cxt_with(text, d).map_err(located),
        (false, None) => Err(Failure::input(
            "dimension-flag",
            format!("{}: --dimension is required for CXT contexts", path.display()),
        )),
    }
}

fn load_input(input: &Input) -> Result<FormalContext, Failure> {
    match &input.context {
        Some(path) => parse_context(path, &read(path)?, input.dimension),
        None => Ok(corpus()?
            .context(input.dimension.unwrap_or(Dimension::Combined))
            .clone()),
    }
}

/// Contexts for profile operations plus the registry built from them. CXT
/// files take their dimensions from the `--dimension` flags in order.
fn load_profiles(inputs: &ProfileInputs) -> Result<(Vec<FormalContext>, FeatureRegistry), Failure> {
    if inputs.corpus.is_some() {
        let corpus = corpus()?;
        let registry = corpus.registry();
        return Ok((corpus.contexts, registry));
    }
    let texts: Vec<(&PathBuf, String)> = inputs
        .context
        .iter()
        .map(|p| read(p).map(|t| (p, t)))
        .collect::<Result<_, _>>()?;
    let cxt_count = texts.iter().filter(|(_, t)| !is_json(t)).count();
    if cxt_count != inputs.dimension.len() {
        return Err(Failure::input(
            "dimension-flag",
            format!(
                "{cxt_count} CXT context(s) but {} --dimension flag(s)",
                inputs.dimension.len()
            ),
        ));
    }
    let mut dims = inputs.dimension.iter().copied();
    let mut contexts = Vec::new();
    for (path, text) in &texts {
        let dim = if is_json(text) { None } else { dims.next() };
        contexts.push(parse_context(path, text, dim)?);
    }
    let mut by_dim: BTreeMap<Dimension, &Path> = BTreeMap::new();
    for (ctx, (path, _)) in contexts.iter().zip(&texts) {
        if ctx.dimension().is_combined() {
            return Err(Failure::input(
                "dimension-flag",
                format!("{}: profile contexts need a characterisation dimension, not combined", path.display()),
            ));
        }
        if let Some(first) = by_dim.insert(ctx.dimension(), path) {
            return Err(Failure::input(
                "dimension-flag",
                format!("{} and {} are both {}", first.display(), path.display(), ctx.dimension()),
            ));
        }
    }
    let registry = FeatureRegistry::from_contexts(&contexts)?;
    Ok((contexts, registry))
}

fn serialize_failure(e: serde_json::Error) -> Failure {
    Failure::internal("serialization", e.to_string())
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(serialize_failure)?;
    text.push('\n');
    Ok(text)
}
