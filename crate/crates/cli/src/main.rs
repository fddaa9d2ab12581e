//! `wf2pt`: translate WF-nets to process trees and back, check soundness,
//! enumerate bounded languages, and run the rediscovery and runtime
//! experiments.
//!
//! Exit codes: 0 success / positive verdict, 1 I/O or input errors,
//! 2 negative verdict (irreducible, unsound, mismatches), 3 inconclusive.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use wf2pt::fit::{fit_quadratic, mean_per_x};
use wf2pt::pipeline::{run_bench, run_rediscover, ExperimentSpec};
use wf2pt_core::generate::{GeneratorConfig, OperatorProbabilities};
use wf2pt_core::petri::{
    check_soundness, enumerate_net_language, Caps, EnumCaps, SoundnessVerdict,
};
use wf2pt_core::reduce::{reduce_to_tree, ReduceOptions, ReductionOutcome};
use wf2pt_core::serial::{
    read_pnml, read_tree_text, write_bench_csv, write_pnml, write_step_log, write_tree_text,
};
use wf2pt_core::translate::{tree_to_wfnet, TranslationVariant};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_NEGATIVE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "wf2pt", version, about = "Workflow nets to process trees via pattern reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Minimal,
    TauBounded,
}

impl From<VariantArg> for TranslationVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Minimal => TranslationVariant::Minimal,
            VariantArg::TauBounded => TranslationVariant::TauBounded,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantSelection {
    Minimal,
    TauBounded,
    Both,
}

impl VariantSelection {
    fn variants(self) -> Vec<TranslationVariant> {
        match self {
            VariantSelection::Minimal => vec![TranslationVariant::Minimal],
            VariantSelection::TauBounded => vec![TranslationVariant::TauBounded],
            VariantSelection::Both => TranslationVariant::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    Net,
    Tree,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a WF-net to a language-equal process tree.
    Convert {
        /// PNML file holding the WF-net.
        #[arg(long)]
        input: PathBuf,
        /// Also write the tree text here.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Enforce the strict concurrency-pattern conditions.
        #[arg(long)]
        strict_and: bool,
        /// Write the reduction step log here.
        #[arg(long)]
        log_steps: Option<PathBuf>,
    },
    /// Translate a process tree to a WF-net.
    Tree2net {
        /// Tree text file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// PNML output path.
        #[arg(long)]
        output: PathBuf,
    },
    /// Validate a WF-net and check soundness.
    Check {
        #[arg(long)]
        input: PathBuf,
        /// State-space cap (also via WF2PT_MAX_STATES).
        #[arg(long)]
        max_states: Option<usize>,
    },
    /// Enumerate the bounded language of a net or tree.
    Lang {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: ModelKind,
        #[arg(long)]
        max_length: usize,
        #[arg(long)]
        max_states: Option<usize>,
    },
    /// Generate trees, translate, reduce, and compare canonical forms.
    Rediscover {
        #[arg(long)]
        count: u64,
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long, value_enum, default_value = "both")]
        variant: VariantSelection,
    },
    /// Time the reduction over generated nets and fit a quadratic trend.
    Bench {
        #[arg(long)]
        count: u64,
        #[command(flatten)]
        generator: GeneratorArgs,
        /// CSV output path (size,micros,outcome; one row per experiment).
        #[arg(long)]
        csv: PathBuf,
    },
}

#[derive(Args)]
struct GeneratorArgs {
    /// Base seed; instance i uses seed + i.
    #[arg(long)]
    seed: Option<u64>,
    /// Triangular activity distribution as LOW,MODE,HIGH.
    #[arg(long, value_parser = parse_triple)]
    activities: Option<(u32, u32, u32)>,
    /// Operator probabilities as SEQ,XOR,AND,LOOP.
    #[arg(long, value_parser = parse_probs)]
    probs: Option<OperatorProbabilities>,
    /// key=value generator config file; explicit flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl GeneratorArgs {
    /// Explicit flag > config file > built-in default.
    fn resolve(&self) -> Result<ExperimentSpec> {
        let file_config = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading generator config {}", path.display()))?;
                Some(GeneratorConfig::from_key_value_str(&text)?)
            }
            None => None,
        };
        let activities = self
            .activities
            .or_else(|| file_config.as_ref().map(|c| c.activities))
            .unwrap_or((10, 20, 30));
        let probabilities = self
            .probs
            .or_else(|| file_config.as_ref().map(|c| c.probabilities))
            .unwrap_or_default();
        let seed = self.seed.or_else(|| file_config.as_ref().map(|c| c.seed)).unwrap_or(0);
        let mut probe = GeneratorConfig::new(activities, seed)?;
        probe.probabilities = probabilities;
        probe.validate()?;
        Ok(ExperimentSpec { count: 0, base_seed: seed, activities, probabilities })
    }
}

fn parse_triple(value: &str) -> Result<(u32, u32, u32), String> {
    let parts: Vec<u32> = value
        .split(',')
        .map(|p| p.trim().parse().map_err(|e| format!("bad integer in triple: {e}")))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [a, b, c] => Ok((*a, *b, *c)),
        _ => Err("expected LOW,MODE,HIGH".into()),
    }
}

fn parse_probs(value: &str) -> Result<OperatorProbabilities, String> {
    let parts: Vec<f64> = value
        .split(',')
        .map(|p| p.trim().parse().map_err(|e| format!("bad number: {e}")))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [seq, xor, and, loop_] => {
            Ok(OperatorProbabilities { seq: *seq, xor: *xor, and: *and, loop_: *loop_ })
        }
        _ => Err("expected SEQ,XOR,AND,LOOP".into()),
    }
}

fn state_cap(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("WF2PT_MAX_STATES").ok().and_then(|v| v.parse().ok()))
        .unwrap_or_else(|| Caps::default().max_states)
}

fn read_net(path: &Path) -> Result<wf2pt_core::petri::WorkflowNet<wf2pt_core::petri::Label>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(read_pnml(&text)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Convert { input, output, strict_and, log_steps } => {
            let net = read_net(&input)?;
            let options = ReduceOptions { strict_and };
            let outcome = reduce_to_tree(&net, &options);
            if let Some(path) = &log_steps {
                std::fs::write(path, write_step_log(outcome.steps()))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            match outcome {
                ReductionOutcome::Tree { tree, .. } => {
                    let text = write_tree_text(&tree);
                    println!("{text}");
                    if let Some(path) = &output {
                        std::fs::write(path, format!("{text}\n"))
                            .with_context(|| format!("writing {}", path.display()))?;
                    }
                    Ok(EXIT_OK)
                }
                ReductionOutcome::Irreducible { residual, steps } => {
                    println!(
                        "irreducible after {} steps: {} transitions and {} places remain",
                        steps.len(),
                        residual.net().transition_count(),
                        residual.net().place_count(),
                    );
                    for trans in residual.net().transitions() {
                        let label = residual.net().label(trans).unwrap();
                        println!("  {trans}: {}", write_tree_text(label));
                    }
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Tree2net { input, variant, output } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let tree = read_tree_text(text.trim())?;
            let net = tree_to_wfnet(&tree, variant.into());
            std::fs::write(&output, write_pnml(&net))
                .with_context(|| format!("writing {}", output.display()))?;
            println!(
                "wrote {} ({} places, {} transitions)",
                output.display(),
                net.net().place_count(),
                net.net().transition_count()
            );
            Ok(EXIT_OK)
        }
        Command::Check { input, max_states } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let net = match read_pnml(&text) {
                Ok(net) => net,
                Err(wf2pt_core::serial::PnmlError::NotAWorkflowNet(violations)) => {
                    println!("workflow net: invalid");
                    for v in violations {
                        println!("  {v}");
                    }
                    return Ok(EXIT_NEGATIVE);
                }
                Err(other) => return Err(other.into()),
            };
            println!("workflow net: valid");
            let caps = Caps { max_states: state_cap(max_states), ..Caps::default() };
            let verdict = check_soundness(&net, &caps);
            println!("soundness: {verdict}");
            Ok(match verdict {
                SoundnessVerdict::Sound => EXIT_OK,
                SoundnessVerdict::Unsound(_) => EXIT_NEGATIVE,
                SoundnessVerdict::Inconclusive(_) => EXIT_INCONCLUSIVE,
            })
        }
        Command::Lang { input, kind, max_length, max_states } => {
            let caps = EnumCaps { max_states: state_cap(max_states), ..EnumCaps::default() };
            let language = match kind {
                ModelKind::Net => {
                    let net = read_net(&input)?;
                    enumerate_net_language(&net, max_length, &caps)?
                }
                ModelKind::Tree => {
                    let text = std::fs::read_to_string(&input)
                        .with_context(|| format!("reading {}", input.display()))?;
                    let tree = read_tree_text(text.trim())?;
                    wf2pt_core::tree::enumerate_tree_language_capped(
                        &tree, max_length, caps.max_traces,
                    )?
                }
            };
            for trace in language.iter() {
                if trace.is_empty() {
                    println!("<>");
                } else {
                    println!("{}", trace.join(","));
                }
            }
            Ok(EXIT_OK)
        }
        Command::Rediscover { count, generator, variant } => {
            let mut spec = generator.resolve()?;
            spec.count = count;
            let variants = variant.variants();
            let report = run_rediscover(&spec, &variants);
            let names: Vec<String> = variants.iter().map(ToString::to_string).collect();
            println!(
                "rediscover: {}/{} match (seeds {}..{}, activities {:?}, variants [{}])",
                report.matches,
                report.total,
                spec.base_seed,
                spec.base_seed + count.saturating_sub(1),
                spec.activities,
                names.join(", ")
            );
            for m in &report.mismatches {
                println!("mismatch: seed={} variant={}", m.seed, m.variant);
            }
            Ok(if report.all_match() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Bench { count, generator, csv } => {
            let mut spec = generator.resolve()?;
            spec.count = count;
            let rows = run_bench(&spec);
            std::fs::write(&csv, write_bench_csv(&rows))
                .with_context(|| format!("writing {}", csv.display()))?;
            if rows.is_empty() {
                println!("bench: no measurements, wrote header-only CSV");
                return Ok(EXIT_OK);
            }
            let sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
            println!(
                "bench: {} measurements, net sizes {}..{}",
                rows.len(),
                sizes.iter().min().unwrap(),
                sizes.iter().max().unwrap()
            );
            let points: Vec<(f64, f64)> =
                rows.iter().map(|r| (r.size as f64, r.micros as f64)).collect();
            match fit_quadratic(&mean_per_x(&points)) {
                Some(fit) => println!(
                    "fit over mean micros per size: a={:.6} b={:.4} c={:.2} R^2={:.4}",
                    fit.a, fit.b, fit.c, fit.r_squared
                ),
                None => println!("fit over mean micros per size: not enough distinct sizes"),
            }
            Ok(EXIT_OK)
        }
    }
}
