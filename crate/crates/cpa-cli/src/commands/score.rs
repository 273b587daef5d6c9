//! The score-phonemes command: transcript file in, accuracy report out.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use cpa_core::report::ScoreReport;
use cpa_core::scoring::phoneme_accuracy;

use crate::formats::parse_transcripts;

pub fn run(transcripts: &Path) -> Result<ScoreReport> {
    let text = fs::read_to_string(transcripts)
        .with_context(|| format!("reading transcripts {}", transcripts.display()))?;
    let utterances = parse_transcripts(&text)?;
    let report = phoneme_accuracy(&utterances)?;
    Ok(report.rounded())
}
