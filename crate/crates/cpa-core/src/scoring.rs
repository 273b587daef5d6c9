//! Phoneme-level production scoring and pairwise preference win rates.
//!
//! Accuracy: decoded transcripts are aligned to references with unit-cost
//! edit distance; a target phoneme scores when the decoded symbol aligned to
//! its reference position matches. Win rates: paired A/B judgments are
//! grouped into (word, participant) cells; cells whose presentation orders
//! are unbalanced are flagged and excluded from the overall mean.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::report::{CellRate, ScoreReport, TargetScore, WinRateReport, WordRate};

// ── Alignment ──────────────────────────────────────────────────────────────

/// One aligned pair: reference index, decoded index; `None` marks a gap.
pub type AlignedPair = (Option<usize>, Option<usize>);

/// Unit-cost alignment of a decoded transcript to a reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alignment {
    pub pairs: Vec<AlignedPair>,
    pub distance: u32,
}

/// Aligns `decoded` to `reference` with unit costs. Traceback ties prefer
/// substitution over reference-deletion over insertion, which keeps the
/// alignment deterministic.
pub fn align(reference: &[String], decoded: &[String]) -> Alignment {
    let m = reference.len();
    let n = decoded.len();
    let width = n + 1;
    let mut dist = alloc::vec![0u32; (m + 1) * width];
    for (j, cell) in dist.iter_mut().take(width).enumerate() {
        *cell = j as u32;
    }
    for i in 1..=m {
        dist[i * width] = i as u32;
        for j in 1..=n {
            let sub = dist[(i - 1) * width + (j - 1)]
                + u32::from(reference[i - 1] != decoded[j - 1]);
            let del = dist[(i - 1) * width + j] + 1;
            let ins = dist[i * width + (j - 1)] + 1;
            dist[i * width + j] = sub.min(del).min(ins);
        }
    }

    let mut pairs: Vec<AlignedPair> = Vec::new();
    let (mut i, mut j) = (m, n);
    while i > 0 || j > 0 {
        let here = dist[i * width + j];
        if i > 0
            && j > 0
            && here
                == dist[(i - 1) * width + (j - 1)]
                    + u32::from(reference[i - 1] != decoded[j - 1])
        {
            pairs.push((Some(i - 1), Some(j - 1)));
            i -= 1;
            j -= 1;
        } else if i > 0 && here == dist[(i - 1) * width + j] + 1 {
            pairs.push((Some(i - 1), None));
            i -= 1;
        } else {
            pairs.push((None, Some(j - 1)));
            j -= 1;
        }
    }
    pairs.reverse();
    Alignment {
        pairs,
        distance: dist[m * width + n],
    }
}

// ── Phoneme accuracy ───────────────────────────────────────────────────────

/// A scored position in a reference transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetSpec {
    pub index: usize,
    pub symbol: String,
}

/// One utterance: reference and decoded transcripts plus scored targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Utterance {
    pub id: String,
    pub reference: Vec<String>,
    pub decoded: Vec<String>,
    pub targets: Vec<TargetSpec>,
}

/// Per-symbol and overall accuracy across utterances. Overall is the mean
/// over all target instances, not over symbols.
pub fn phoneme_accuracy(utterances: &[Utterance]) -> Result<ScoreReport, ScoringError> {
    let mut by_symbol: BTreeMap<String, (u32, u32)> = BTreeMap::new();
    for utt in utterances {
        if utt.reference.is_empty() {
            return Err(ScoringError::EmptyTranscript {
                id: utt.id.clone(),
            });
        }
        let alignment = align(&utt.reference, &utt.decoded);
        for target in &utt.targets {
            if target.index >= utt.reference.len() {
                return Err(ScoringError::TargetOutOfRange {
                    id: utt.id.clone(),
                    index: target.index,
                    len: utt.reference.len(),
                });
            }
            if utt.reference[target.index] != target.symbol {
                return Err(ScoringError::TargetMismatch {
                    id: utt.id.clone(),
                    index: target.index,
                    expected: target.symbol.clone(),
                    found: utt.reference[target.index].clone(),
                });
            }
            let decoded_here = alignment
                .pairs
                .iter()
                .find(|(r, _)| *r == Some(target.index))
                .and_then(|(_, d)| *d);
            let correct = decoded_here
                .is_some_and(|d| utt.decoded[d] == target.symbol);
            let entry = by_symbol.entry(target.symbol.clone()).or_insert((0, 0));
            entry.0 += 1;
            entry.1 += u32::from(correct);
        }
    }

    let mut instances_total = 0u32;
    let mut correct_total = 0u32;
    let targets: Vec<TargetScore> = by_symbol
        .into_iter()
        .map(|(symbol, (instances, correct))| {
            instances_total += instances;
            correct_total += correct;
            TargetScore {
                symbol,
                instances,
                correct,
                accuracy: 100.0 * f64::from(correct) / f64::from(instances),
            }
        })
        .collect();
    if instances_total == 0 {
        return Err(ScoringError::NoTargets);
    }
    Ok(ScoreReport {
        targets,
        overall_accuracy: 100.0 * f64::from(correct_total) / f64::from(instances_total),
    })
}

// ── Win rates ──────────────────────────────────────────────────────────────

/// Which system was presented first in a paired judgment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FirstLabel {
    Cpa,
    Other,
}

/// Which presentation the judge preferred.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WinnerPick {
    First,
    Second,
}

/// One paired preference judgment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JudgeRecord {
    pub word: String,
    pub participant: String,
    pub first: FirstLabel,
    pub winner: WinnerPick,
}

impl JudgeRecord {
    /// True when the judged winner is the CPA side, whichever side it was
    /// presented on.
    pub fn cpa_win(&self) -> bool {
        matches!(
            (self.first, self.winner),
            (FirstLabel::Cpa, WinnerPick::First) | (FirstLabel::Other, WinnerPick::Second)
        )
    }
}

/// Win rates per (word, participant) cell, per word, and overall. Cells with
/// unequal presentation orders are reported with `balanced: false` and are
/// excluded from the per-word and overall means.
pub fn win_rates(records: &[JudgeRecord]) -> Result<WinRateReport, ScoringError> {
    if records.is_empty() {
        return Err(ScoringError::NoJudgments);
    }
    let mut cells: BTreeMap<(String, String), Vec<&JudgeRecord>> = BTreeMap::new();
    for record in records {
        cells
            .entry((record.word.clone(), record.participant.clone()))
            .or_default()
            .push(record);
    }

    let mut cell_rates: Vec<CellRate> = Vec::new();
    let mut per_word_acc: BTreeMap<String, (f64, u32)> = BTreeMap::new();
    let mut overall_acc = (0.0f64, 0u32);
    for ((word, participant), records) in cells {
        let judgments = records.len() as u32;
        let cpa_first = records
            .iter()
            .filter(|r| r.first == FirstLabel::Cpa)
            .count() as u32;
        let balanced = cpa_first * 2 == judgments;
        let cpa_wins = records.iter().filter(|r| r.cpa_win()).count() as u32;
        let rate = 100.0 * f64::from(cpa_wins) / f64::from(judgments);
        if balanced {
            let entry = per_word_acc.entry(word.clone()).or_insert((0.0, 0));
            entry.0 += rate;
            entry.1 += 1;
            overall_acc.0 += rate;
            overall_acc.1 += 1;
        }
        cell_rates.push(CellRate {
            word,
            participant,
            judgments,
            cpa_wins,
            rate,
            balanced,
        });
    }

    let per_word: Vec<WordRate> = per_word_acc
        .into_iter()
        .map(|(word, (sum, count))| WordRate {
            word,
            cells: count,
            rate: sum / f64::from(count),
        })
        .collect();
    let overall_rate = (overall_acc.1 > 0).then(|| overall_acc.0 / f64::from(overall_acc.1));
    Ok(WinRateReport {
        cells: cell_rates,
        per_word,
        overall_rate,
    })
}

// ── Errors ─────────────────────────────────────────────────────────────────

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScoringError {
    EmptyTranscript { id: String },
    TargetOutOfRange { id: String, index: usize, len: usize },
    TargetMismatch {
        id: String,
        index: usize,
        expected: String,
        found: String,
    },
    NoTargets,
    NoJudgments,
}

impl fmt::Display for ScoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoringError::EmptyTranscript { id } => {
                write!(f, "utterance `{id}` has an empty reference transcript")
            }
            ScoringError::TargetOutOfRange { id, index, len } => write!(
                f,
                "utterance `{id}`: target index {index} is out of range for a {len}-segment reference"
            ),
            ScoringError::TargetMismatch {
                id,
                index,
                expected,
                found,
            } => write!(
                f,
                "utterance `{id}`: target at {index} expects `{expected}` but the reference has `{found}`"
            ),
            ScoringError::NoTargets => write!(f, "no targets to score"),
            ScoringError::NoJudgments => write!(f, "no judgments to score"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ScoringError {}
