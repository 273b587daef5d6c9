//! The formants command: track F1/F2 over aligned phone tokens and report
//! per-vowel in-box rates.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use cpa_core::acoustics::{in_box_rate, token_in_box, track_formants, FormantBox, FormantTrack};
use cpa_core::report::{FormantSummary, VowelRate};
use rayon::prelude::*;

use crate::config::Settings;
use crate::formats::{parse_alignments, parse_boxes, AlignmentRow, TokenRow};
use crate::wav::read_wav;

/// Built-in boxes for the composite target vowels.
pub const DEFAULT_BOXES: &str = include_str!("../../data/boxes.csv");

pub struct FormantsArgs {
    pub audio: PathBuf,
    pub alignments: PathBuf,
    pub boxes: Option<PathBuf>,
    pub min_consecutive: Option<usize>,
    pub tokens_csv: Option<PathBuf>,
    pub sequential: bool,
}

/// All tracked tokens from one audio file, in alignment order.
fn track_file(
    settings: &Settings,
    path: &Path,
    rows: &[&AlignmentRow],
) -> Result<Vec<(String, FormantTrack)>> {
    let (samples, sample_rate) = read_wav(path)?;
    rows.iter()
        .map(|row| {
            let track = track_formants(
                &samples,
                f64::from(sample_rate),
                &row.segment,
                &settings.track,
            )
            .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
            Ok((path.display().to_string(), track))
        })
        .collect()
}

pub fn run(settings: &Settings, args: &FormantsArgs) -> Result<(FormantSummary, Vec<TokenRow>)> {
    let alignment_text = fs::read_to_string(&args.alignments)
        .with_context(|| format!("reading alignments {}", args.alignments.display()))?;
    let rows = parse_alignments(&alignment_text)?;

    // Resolve each row to an audio path. A directory needs the file column;
    // a single file forbids it.
    let audio_is_dir = args.audio.is_dir();
    let mut by_file: Vec<(PathBuf, Vec<&AlignmentRow>)> = Vec::new();
    for row in &rows {
        let path = match (&row.file, audio_is_dir) {
            (Some(name), true) => args.audio.join(name),
            (None, false) => args.audio.clone(),
            (Some(_), false) => {
                bail!("alignments carry a file column but --audio is a single file")
            }
            (None, true) => {
                bail!("--audio is a directory, so alignments need a file column")
            }
        };
        match by_file.iter_mut().find(|(p, _)| *p == path) {
            Some((_, list)) => list.push(row),
            None => by_file.push((path, vec![row])),
        }
    }

    // File-level parallelism; results keep file order either way.
    let tracked: Vec<Vec<(String, FormantTrack)>> = if args.sequential {
        by_file
            .iter()
            .map(|(path, rows)| track_file(settings, path, rows))
            .collect::<Result<_>>()?
    } else {
        by_file
            .par_iter()
            .map(|(path, rows)| track_file(settings, path, rows))
            .collect::<Result<_>>()?
    };
    let tracks: Vec<(String, FormantTrack)> = tracked.into_iter().flatten().collect();

    let boxes = match &args.boxes {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading boxes {}", path.display()))?;
            parse_boxes(&text)?
        }
        None => parse_boxes(DEFAULT_BOXES).expect("bundled boxes parse"),
    };
    let min_consecutive = args.min_consecutive.unwrap_or(settings.min_consecutive);

    // Tokens group by vowel; vowels without a box are left out of the
    // summary rather than guessed at.
    let mut by_vowel: BTreeMap<&str, Vec<&FormantTrack>> = BTreeMap::new();
    for (_, track) in &tracks {
        by_vowel.entry(track.phone.as_str()).or_default().push(track);
    }
    let mut vowels = Vec::new();
    for formant_box in &boxes {
        let Some(group) = by_vowel.get(formant_box.vowel.as_str()) else {
            continue;
        };
        let owned: Vec<FormantTrack> = group.iter().map(|t| (*t).clone()).collect();
        let summary = in_box_rate(&owned, formant_box, min_consecutive);
        vowels.push(VowelRate {
            vowel: formant_box.vowel.clone(),
            tokens: summary.tokens,
            in_box: summary.in_box,
            rate: summary.rate,
        });
    }

    let box_for = |phone: &str| -> Option<&FormantBox> {
        boxes.iter().find(|b| b.vowel == phone)
    };
    let token_rows: Vec<TokenRow> = tracks
        .iter()
        .filter_map(|(file, track)| {
            box_for(&track.phone).map(|formant_box| TokenRow {
                file: file.clone(),
                vowel: track.phone.clone(),
                frames: track.frames.len(),
                in_box: token_in_box(track, formant_box, min_consecutive),
            })
        })
        .collect();

    let summary = FormantSummary {
        min_consecutive: min_consecutive as u32,
        vowels,
    }
    .rounded();
    Ok((summary, token_rows))
}
