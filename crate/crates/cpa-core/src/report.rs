//! Serializable report shapes shared by the library and the CLI.
//!
//! Field order in these structs is the JSON emission order; keep it stable,
//! the CLI's output is expected to be byte-identical across runs.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::composer::CpaResult;
use crate::grapheme::{Block, GraphemeCue};
use crate::math;
use crate::phonfeat::SegmentClass;

/// Rounds to three decimals; applied to every float a report carries.
pub fn round3(x: f64) -> f64 {
    math::round(x * 1000.0) / 1000.0
}

// ── Approximation reports ──────────────────────────────────────────────────

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproximationReport {
    pub language: String,
    pub words: Vec<WordReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordReport {
    pub word: String,
    pub segments: Vec<SegmentReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentReport {
    pub ipa: String,
    pub position: String,
    pub decision: String,
    pub candidates: Vec<CandidateReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CandidateReport {
    Vowel {
        v1: String,
        v2: String,
        cost: u32,
        approximation: String,
        sequence: Vec<String>,
    },
    Consonant {
        epenthetic: Vec<String>,
        base: String,
        triggers: Vec<String>,
        realized: String,
        rule: String,
        residual: u32,
        approximation: String,
        sequence: Vec<String>,
    },
}

/// Report form of one gate outcome, candidates in rank order.
pub fn segment_report(result: &CpaResult) -> SegmentReport {
    let mut candidates: Vec<CandidateReport> = Vec::new();
    match result.target.class {
        SegmentClass::Vowel => {
            for c in &result.vowel_candidates {
                candidates.push(CandidateReport::Vowel {
                    v1: c.v1.ipa.clone(),
                    v2: c.v2.ipa.clone(),
                    cost: c.cost,
                    approximation: c.approximation(),
                    sequence: c.sequence(),
                });
            }
        }
        SegmentClass::Consonant => {
            for c in &result.consonant_candidates {
                candidates.push(CandidateReport::Consonant {
                    epenthetic: c.epenthetic.iter().map(|s| s.ipa.clone()).collect(),
                    base: c.base.ipa.clone(),
                    triggers: c.triggers.iter().map(|s| s.ipa.clone()).collect(),
                    realized: c.realized.ipa.clone(),
                    rule: c.transformations.join("+"),
                    residual: c.residual,
                    approximation: c.approximation(),
                    sequence: c.sequence(),
                });
            }
        }
    }
    SegmentReport {
        ipa: result.target.ipa.clone(),
        position: result.position.as_str().into(),
        decision: result.decision.as_str().into(),
        candidates,
    }
}

// ── Grapheme cue reports ───────────────────────────────────────────────────

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CueReport {
    pub word: String,
    pub blocks: Vec<Block>,
    pub fallback: String,
}

impl From<&GraphemeCue> for CueReport {
    fn from(cue: &GraphemeCue) -> Self {
        CueReport {
            word: cue.word.clone(),
            blocks: cue.blocks.clone(),
            fallback: cue.fallback(),
        }
    }
}

// ── Scoring reports ────────────────────────────────────────────────────────

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetScore {
    pub symbol: String,
    pub instances: u32,
    pub correct: u32,
    pub accuracy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub targets: Vec<TargetScore>,
    pub overall_accuracy: f64,
}

impl ScoreReport {
    pub fn rounded(mut self) -> Self {
        for t in &mut self.targets {
            t.accuracy = round3(t.accuracy);
        }
        self.overall_accuracy = round3(self.overall_accuracy);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellRate {
    pub word: String,
    pub participant: String,
    pub judgments: u32,
    pub cpa_wins: u32,
    pub rate: f64,
    pub balanced: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordRate {
    pub word: String,
    pub cells: u32,
    pub rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WinRateReport {
    pub cells: Vec<CellRate>,
    pub per_word: Vec<WordRate>,
    /// Mean over balanced cells; absent when every cell is unbalanced.
    pub overall_rate: Option<f64>,
}

impl WinRateReport {
    pub fn rounded(mut self) -> Self {
        for c in &mut self.cells {
            c.rate = round3(c.rate);
        }
        for w in &mut self.per_word {
            w.rate = round3(w.rate);
        }
        self.overall_rate = self.overall_rate.map(round3);
        self
    }
}

// ── Formant reports ────────────────────────────────────────────────────────

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VowelRate {
    pub vowel: String,
    pub tokens: u32,
    pub in_box: u32,
    pub rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormantSummary {
    pub min_consecutive: u32,
    pub vowels: Vec<VowelRate>,
}

impl FormantSummary {
    pub fn rounded(mut self) -> Self {
        for v in &mut self.vowels {
            v.rate = round3(v.rate);
        }
        self
    }
}
