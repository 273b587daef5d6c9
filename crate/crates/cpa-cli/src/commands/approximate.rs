//! The approximate command: run the gate over words and emit the report.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cpa_core::bundled;
use cpa_core::composer::{approximate, Position};
use cpa_core::report::{segment_report, ApproximationReport, SegmentReport, WordReport};

use crate::config::Settings;

/// One word to approximate: a label, its IPA, and whether a lone segment is
/// forced to word-initial position.
#[derive(Clone, Debug, PartialEq)]
pub struct WordSpec {
    pub label: String,
    pub ipa: String,
    pub initial: bool,
}

/// Parses `label=ipa` or bare `ipa`; a trailing `*` marks a single segment
/// as word-initial.
pub fn parse_word_arg(arg: &str) -> Result<WordSpec> {
    let (label, ipa) = match arg.split_once('=') {
        Some((label, ipa)) => (label.trim(), ipa.trim()),
        None => (arg.trim(), arg.trim()),
    };
    let (ipa, initial) = match ipa.strip_suffix('*') {
        Some(stripped) => (stripped.trim(), true),
        None => (ipa, false),
    };
    if label.is_empty() || ipa.is_empty() {
        bail!("empty word argument `{arg}`");
    }
    let label = label.strip_suffix('*').unwrap_or(label);
    Ok(WordSpec {
        label: label.to_string(),
        ipa: ipa.to_string(),
        initial,
    })
}

/// Reads a words file: `label<TAB>ipa` lines, `#` comments.
pub fn parse_words_file(text: &str) -> Result<Vec<WordSpec>> {
    let mut specs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (label, ipa) = line
            .split_once('\t')
            .with_context(|| format!("words line {}: expected label<TAB>ipa", lineno + 1))?;
        let mut spec = parse_word_arg(ipa.trim())?;
        spec.label = label.trim().to_string();
        specs.push(spec);
    }
    if specs.is_empty() {
        bail!("words file has no entries");
    }
    Ok(specs)
}

fn bundled_specs() -> Vec<WordSpec> {
    bundled::words()
        .into_iter()
        .map(|(label, ipa)| WordSpec {
            label: label.to_string(),
            ipa: ipa.to_string(),
            initial: false,
        })
        .collect()
}

/// Builds the word list: positional args, a words file, or the bundled
/// study corpus when neither is given.
pub fn collect_words(args: &[String], words_file: Option<&Path>) -> Result<Vec<WordSpec>> {
    let mut specs = Vec::new();
    for arg in args {
        specs.push(parse_word_arg(arg)?);
    }
    if let Some(path) = words_file {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading words file {}", path.display()))?;
        specs.extend(parse_words_file(&text)?);
    }
    if specs.is_empty() {
        specs = bundled_specs();
    }
    Ok(specs)
}

/// Approximates one word. Position is word-initial for the first segment of
/// a multi-segment word, or for a lone segment marked with `*`.
pub fn approximate_word(
    settings: &Settings,
    spec: &WordSpec,
    all_candidates: bool,
) -> Result<WordReport> {
    let segments = settings
        .table
        .parse_ipa(&spec.ipa)
        .with_context(|| format!("word `{}`", spec.label))?;
    let many = segments.len() > 1;
    let reports: Vec<SegmentReport> = segments
        .iter()
        .enumerate()
        .map(|(i, seg)| {
            let initial = if many { i == 0 } else { spec.initial };
            let position = if initial {
                Position::WordInitial
            } else {
                Position::Other
            };
            let result = approximate(
                settings.table.spec(),
                &settings.inventory,
                seg,
                position,
                &settings.search,
            );
            let mut report = segment_report(&result);
            if !all_candidates {
                report.candidates.truncate(1);
            }
            report
        })
        .collect();
    Ok(WordReport {
        word: spec.label.clone(),
        segments: reports,
    })
}

pub fn run(settings: &Settings, specs: &[WordSpec], all_candidates: bool) -> Result<ApproximationReport> {
    let words = specs
        .iter()
        .map(|spec| approximate_word(settings, spec, all_candidates))
        .collect::<Result<Vec<_>>>()?;
    Ok(ApproximationReport {
        language: settings.inventory.language.clone(),
        words,
    })
}
