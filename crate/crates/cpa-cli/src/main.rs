//! The `cpa` binary. Exit codes: 0 on success, 1 on operational errors,
//! 2 on usage errors (from the argument parser).

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cpa_core::composer::CostMode;
use cpa_core::report::ApproximationReport;
use serde::Serialize;

use cpa_cli::commands::formants::FormantsArgs;
use cpa_cli::commands::{approximate, formants, render, score, winrate};
use cpa_cli::config::{Overrides, Settings};
use cpa_cli::formats::token_csv;

#[derive(Copy, Clone, Debug, ValueEnum)]
enum CostModeArg {
    Sum,
    Max,
    Lexicographic,
}

impl From<CostModeArg> for CostMode {
    fn from(arg: CostModeArg) -> Self {
        match arg {
            CostModeArg::Sum => CostMode::Sum,
            CostModeArg::Max => CostMode::Max,
            CostModeArg::Lexicographic => CostMode::Lexicographic,
        }
    }
}

#[derive(Parser)]
#[command(name = "cpa", version, about = "Compositional phoneme approximation toolkit")]
struct Cli {
    /// TOML config file with defaults for the flags below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Feature table CSV (default: bundled).
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    /// Inventory: bundled name or file path (default: korean).
    #[arg(long, global = true)]
    inventory: Option<String>,
    /// Jamo cue map: bundled name or file path (default: korean).
    #[arg(long, global = true)]
    jamo: Option<String>,
    /// Residual distance bound for consonant candidates.
    #[arg(long, global = true)]
    residual_threshold: Option<u32>,
    /// How the two vowel source distances combine for ranking.
    #[arg(long, global = true, value_enum)]
    cost_mode: Option<CostModeArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate words (label=ipa, trailing * for word-initial segments).
    Approximate {
        /// Words as label=ipa or bare IPA; defaults to the bundled corpus.
        words: Vec<String>,
        /// Extra words from a label<TAB>ipa file.
        #[arg(long)]
        words_file: Option<PathBuf>,
        /// Keep the full ranked candidate lists, not just the best.
        #[arg(long)]
        all_candidates: bool,
        /// Write JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Render grapheme cues from an approximation report.
    Render {
        /// Report JSON file; stdin when absent or `-`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Emit word<TAB>fallback lines instead of JSON.
        #[arg(long)]
        text: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Track F1/F2 over aligned tokens and report in-box rates.
    Formants {
        /// A wav file, or a directory when alignments carry a file column.
        #[arg(long)]
        audio: PathBuf,
        /// Alignment CSV: [file,]phone,start,end.
        #[arg(long)]
        alignments: PathBuf,
        /// Box CSV: vowel,f1_min,f1_max,f2_min,f2_max (default: bundled).
        #[arg(long)]
        boxes: Option<PathBuf>,
        /// Consecutive in-box frames a token needs.
        #[arg(long)]
        min_consecutive: Option<usize>,
        /// Also write one CSV row per token here.
        #[arg(long)]
        tokens_csv: Option<PathBuf>,
        /// Process files one at a time.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Score decoded transcripts against references at target positions.
    ScorePhonemes {
        /// TSV: id, reference, decoded, targets (index:symbol).
        #[arg(long)]
        transcripts: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Paired-preference win rates from judgment records.
    Winrate {
        /// CSV: word,participant,first,winner.
        #[arg(long)]
        judgments: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn emit(output: Option<&Path>, content: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn emit_json<T: Serialize>(output: Option<&Path>, value: &T) -> Result<()> {
    let mut json = serde_json::to_string_pretty(value)?;
    json.push('\n');
    emit(output, &json)
}

fn read_input(input: Option<&Path>) -> Result<String> {
    match input {
        Some(path) if path.as_os_str() != "-" => {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .context("reading stdin")?;
            Ok(text)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let overrides = Overrides {
        config: cli.config,
        table: cli.table,
        inventory: cli.inventory,
        jamo: cli.jamo,
        residual_threshold: cli.residual_threshold,
        cost_mode: cli.cost_mode.map(CostMode::from),
    };
    let settings = Settings::resolve(&overrides)?;

    match cli.command {
        Command::Approximate {
            words,
            words_file,
            all_candidates,
            output,
        } => {
            let specs = approximate::collect_words(&words, words_file.as_deref())?;
            let report = approximate::run(&settings, &specs, all_candidates)?;
            emit_json(output.as_deref(), &report)
        }
        Command::Render {
            input,
            text,
            output,
        } => {
            let json = read_input(input.as_deref())?;
            let report: ApproximationReport =
                serde_json::from_str(&json).context("parsing approximation report JSON")?;
            let cues = render::run(&settings, &report)?;
            if text {
                let mut lines = String::new();
                for cue in &cues {
                    lines.push_str(&format!("{}\t{}\n", cue.word, cue.fallback));
                }
                emit(output.as_deref(), &lines)
            } else {
                emit_json(output.as_deref(), &cues)
            }
        }
        Command::Formants {
            audio,
            alignments,
            boxes,
            min_consecutive,
            tokens_csv,
            sequential,
            output,
        } => {
            let args = FormantsArgs {
                audio,
                alignments,
                boxes,
                min_consecutive,
                tokens_csv: tokens_csv.clone(),
                sequential,
            };
            let (summary, tokens) = formants::run(&settings, &args)?;
            if let Some(path) = &args.tokens_csv {
                fs::write(path, token_csv(&tokens))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            emit_json(output.as_deref(), &summary)
        }
        Command::ScorePhonemes {
            transcripts,
            output,
        } => {
            let report = score::run(&transcripts)?;
            emit_json(output.as_deref(), &report)
        }
        Command::Winrate { judgments, output } => {
            let report = winrate::run(&judgments)?;
            emit_json(output.as_deref(), &report)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e:#}");
        process::exit(1);
    }
}
