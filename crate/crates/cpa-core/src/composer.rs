//! Compositional approximation of out-of-inventory phonemes.
//!
//! Vowels: one native vowel donates backness, another donates height,
//! rounding is inherited if either source is round. Candidate pairs must
//! reproduce the target's front/back/high/low/round marks exactly (tense may
//! differ) and are ranked by summed feature distance of the sources.
//!
//! Consonants: allophonic variation rules from the inventory are searched
//! for realized segments near the target. A candidate's displayed sequence
//! depends on the target position: word-initially, required pre-contexts
//! are manufactured with the inventory's epenthetic vowel; elsewhere they
//! are assumed to be supplied by the surrounding word, and the base is then
//! displayed as the realized allophone.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::inventory::{Inventory, RuleContext};
use crate::phonfeat::{distance, FeatureSpec, FeatureVector, Mark, Segment, SegmentClass};

// ── Transformation registry ────────────────────────────────────────────────

/// Articulatory domain of a transformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformationDomain {
    Laryngeal,
    Place,
    Manner,
}

/// A named feature rewrite licensed by a conditioning context.
#[derive(Clone, Copy, Debug)]
pub struct Transformation {
    pub name: &'static str,
    pub domain: TransformationDomain,
    /// (feature name, mark written onto the base vector)
    pub deltas: &'static [(&'static str, Mark)],
}

/// The ten licensed transformations.
pub const TRANSFORMATIONS: [Transformation; 10] = [
    Transformation {
        name: "voicing",
        domain: TransformationDomain::Laryngeal,
        deltas: &[("voice", Mark::Plus)],
    },
    Transformation {
        name: "fortition",
        domain: TransformationDomain::Laryngeal,
        deltas: &[("constricted-glottis", Mark::Plus)],
    },
    Transformation {
        name: "aspiration",
        domain: TransformationDomain::Laryngeal,
        deltas: &[("spread-glottis", Mark::Plus)],
    },
    Transformation {
        name: "velarization",
        domain: TransformationDomain::Place,
        deltas: &[("back", Mark::Plus)],
    },
    Transformation {
        name: "labialization",
        domain: TransformationDomain::Place,
        deltas: &[("labial", Mark::Plus), ("round", Mark::Plus)],
    },
    Transformation {
        name: "dentalization",
        domain: TransformationDomain::Place,
        deltas: &[("distributed", Mark::Plus)],
    },
    Transformation {
        name: "palatalization",
        domain: TransformationDomain::Place,
        deltas: &[("anterior", Mark::Minus), ("distributed", Mark::Plus)],
    },
    Transformation {
        name: "nasalization",
        domain: TransformationDomain::Manner,
        deltas: &[("nasal", Mark::Plus)],
    },
    Transformation {
        name: "lateralization",
        domain: TransformationDomain::Manner,
        deltas: &[("lateral", Mark::Plus)],
    },
    Transformation {
        name: "spirantization",
        domain: TransformationDomain::Manner,
        deltas: &[("continuant", Mark::Plus), ("strident", Mark::Plus)],
    },
];

/// Looks a transformation up by name.
pub fn transformation(name: &str) -> Option<&'static Transformation> {
    TRANSFORMATIONS.iter().find(|t| t.name == name)
}

/// Writes the transformation's marks onto a copy of `vector`. Idempotent:
/// re-applying writes the same marks again.
pub fn apply_transformation(
    spec: &FeatureSpec,
    vector: &FeatureVector,
    name: &str,
) -> Result<FeatureVector, ComposeError> {
    let t = transformation(name).ok_or_else(|| ComposeError::UnknownTransformation {
        name: name.to_string(),
    })?;
    let mut out = *vector;
    for &(feature, mark) in t.deltas {
        let idx = spec.index_of(feature).ok_or(ComposeError::FeatureMissing {
            transformation: t.name,
            feature,
        })?;
        out.set(idx, mark);
    }
    Ok(out)
}

// ── Vowel composition ──────────────────────────────────────────────────────

/// How a candidate pair's two source distances combine into a rank key.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CostMode {
    /// d1 + d2 (the default).
    #[default]
    Sum,
    /// max(d1, d2).
    Max,
    /// (d1, d2) compared lexicographically.
    Lexicographic,
}

/// Search configuration shared by the vowel and consonant searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Consonant candidates keep residual distances up to this bound.
    pub residual_threshold: u32,
    pub cost_mode: CostMode,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            residual_threshold: 2,
            cost_mode: CostMode::Sum,
        }
    }
}

/// Composes a vowel vector: backness (front, back) from `v1`, height
/// (high, low) from `v2`, round if either source is round. Every other
/// feature is left unspecified.
pub fn compose_vowels(spec: &FeatureSpec, v1: &FeatureVector, v2: &FeatureVector) -> FeatureVector {
    let mut out = FeatureVector::unspecified();
    out.set(spec.front, v1.get(spec.front));
    out.set(spec.back, v1.get(spec.back));
    out.set(spec.high, v2.get(spec.high));
    out.set(spec.low, v2.get(spec.low));
    let round = if v1.get(spec.round) == Mark::Plus || v2.get(spec.round) == Mark::Plus {
        Mark::Plus
    } else {
        Mark::Minus
    };
    out.set(spec.round, round);
    out
}

/// One vowel candidate: sources, their composed vector, and the cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VowelComposition {
    pub v1: Segment,
    pub v2: Segment,
    pub composed: FeatureVector,
    pub d1: u32,
    pub d2: u32,
    /// Summed source distance, reported regardless of the ranking mode.
    pub cost: u32,
}

impl VowelComposition {
    /// Display form, e.g. `/o/ + /ʌ/`.
    pub fn approximation(&self) -> String {
        alloc::format!("/{}/ + /{}/", self.v1.ipa, self.v2.ipa)
    }

    pub fn sequence(&self) -> Vec<String> {
        vec![self.v1.ipa.clone(), self.v2.ipa.clone()]
    }
}

/// Ranked vowel candidates for `target`. Ordered pairs of distinct inventory
/// vowels whose composition reproduces the target's identity features, ranked
/// by cost and then by the sources' inventory order.
pub fn approximate_vowel(
    spec: &FeatureSpec,
    inventory: &Inventory,
    target: &FeatureVector,
    config: &SearchConfig,
) -> Vec<VowelComposition> {
    let vowels = inventory.vowels();
    let identity = spec.vowel_identity();
    let mut ranked: Vec<(u32, usize, usize, VowelComposition)> = Vec::new();
    for (i, v1) in vowels.iter().enumerate() {
        for (j, v2) in vowels.iter().enumerate() {
            if i == j {
                continue;
            }
            let composed = compose_vowels(spec, &v1.vector, &v2.vector);
            if !composed.agrees_on(target, &identity) {
                continue;
            }
            let d1 = distance(&v1.vector, target);
            let d2 = distance(&v2.vector, target);
            let key = match config.cost_mode {
                CostMode::Sum => d1 + d2,
                CostMode::Max => d1.max(d2),
                CostMode::Lexicographic => (d1 << 8) | d2.min(0xff),
            };
            ranked.push((
                key,
                i,
                j,
                VowelComposition {
                    v1: (*v1).clone(),
                    v2: (*v2).clone(),
                    composed,
                    d1,
                    d2,
                    cost: d1 + d2,
                },
            ));
        }
    }
    ranked.sort_by_key(|(key, i, j, _)| (*key, *i, *j));
    ranked.into_iter().map(|(_, _, _, c)| c).collect()
}

// ── Consonant search ───────────────────────────────────────────────────────

/// Position of the target within its word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    WordInitial,
    Other,
}

impl Position {
    pub fn as_str(self) -> &'static str {
        match self {
            Position::WordInitial => "word_initial",
            Position::Other => "other",
        }
    }
}

/// One consonant candidate: a variation rule whose realized segment lands
/// near the target, plus the sequence that licenses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsonantComposition {
    /// Index of the rule in the inventory's rule list.
    pub rule_index: usize,
    /// Transformation names, in rule order.
    pub transformations: Vec<String>,
    /// Manufactured pre-context, possibly empty.
    pub epenthetic: Vec<Segment>,
    /// The segment shown for articulation (written base, or realized
    /// allophone when the pre-context is assumed rather than shown).
    pub base: Segment,
    /// Post-context segments shown after the base.
    pub triggers: Vec<Segment>,
    /// What the rule realizes the base as.
    pub realized: Segment,
    /// Feature distance from the realized segment to the target.
    pub residual: u32,
}

impl ConsonantComposition {
    /// Segments the learner articulates, in order.
    pub fn sequence(&self) -> Vec<String> {
        let mut seq: Vec<String> = self.epenthetic.iter().map(|s| s.ipa.clone()).collect();
        seq.push(self.base.ipa.clone());
        seq.extend(self.triggers.iter().map(|s| s.ipa.clone()));
        seq
    }

    /// Count of segments shown around the base.
    pub fn accompanying(&self) -> usize {
        self.epenthetic.len() + self.triggers.len()
    }

    /// Display form: the epenthetic group concatenated in one slash group,
    /// then the base, then each trigger, e.g. `/ɨl/ + /ɾ/` or `/s/ + /y/`.
    pub fn approximation(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.epenthetic.is_empty() {
            let group: String = self.epenthetic.iter().map(|s| s.ipa.as_str()).collect();
            parts.push(alloc::format!("/{group}/"));
        }
        parts.push(alloc::format!("/{}/", self.base.ipa));
        for t in &self.triggers {
            parts.push(alloc::format!("/{}/", t.ipa));
        }
        parts.join(" + ")
    }
}

/// Ranked consonant candidates for `target` at `position`. Every rule whose
/// realized segment is within the residual threshold yields one candidate;
/// ranking is by (residual, accompanying count, rule order).
pub fn approximate_consonant(
    inventory: &Inventory,
    target: &FeatureVector,
    position: Position,
    config: &SearchConfig,
) -> Vec<ConsonantComposition> {
    let mut out: Vec<ConsonantComposition> = Vec::new();
    for (rule_index, rule) in inventory.rules.iter().enumerate() {
        let residual = distance(&rule.realized.vector, target);
        if residual > config.residual_threshold {
            continue;
        }
        let (epenthetic, base) = match position {
            Position::WordInitial => {
                let ep = match &rule.pre {
                    None => vec![],
                    Some(RuleContext::AnyVowel) => vec![inventory.epenthetic().clone()],
                    Some(RuleContext::Exact(seg)) => {
                        if seg.class == SegmentClass::Vowel {
                            vec![seg.clone()]
                        } else {
                            vec![inventory.epenthetic().clone(), seg.clone()]
                        }
                    }
                };
                (ep, rule.base.clone())
            }
            Position::Other => {
                // Pre-context is assumed to come from the surrounding word,
                // so the learner will produce the realized allophone.
                let base = if rule.pre.is_some() {
                    rule.realized.clone()
                } else {
                    rule.base.clone()
                };
                (vec![], base)
            }
        };
        let triggers = match &rule.post {
            Some(RuleContext::Exact(seg)) => vec![seg.clone()],
            _ => vec![],
        };
        out.push(ConsonantComposition {
            rule_index,
            transformations: rule.transformations.clone(),
            epenthetic,
            base,
            triggers,
            realized: rule.realized.clone(),
            residual,
        });
    }
    out.sort_by_key(|c| (c.residual, c.accompanying(), c.rule_index));
    out
}

// ── Gate ───────────────────────────────────────────────────────────────────

/// Outcome of the approximation gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    /// Some inventory segment carries exactly the target's vector (and is
    /// available at the target's position).
    ExactMatch,
    /// No exact match, but the class-appropriate search found candidates.
    Composite,
    /// No exact match and no candidates; pass the target through.
    Skip,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::ExactMatch => "exact_match",
            Decision::Composite => "composite",
            Decision::Skip => "skip",
        }
    }
}

/// Gate outcome for one target segment.
#[derive(Clone, Debug)]
pub struct CpaResult {
    pub target: Segment,
    pub position: Position,
    pub decision: Decision,
    /// Ranked candidates; non-empty only for vowel composites.
    pub vowel_candidates: Vec<VowelComposition>,
    /// Ranked candidates; non-empty only for consonant composites.
    pub consonant_candidates: Vec<ConsonantComposition>,
}

/// Runs the gate for one target: exact match against the inventory first
/// (word-initial availability respected), then the class-appropriate
/// compositional search, then skip.
pub fn approximate(
    spec: &FeatureSpec,
    inventory: &Inventory,
    target: &Segment,
    position: Position,
    config: &SearchConfig,
) -> CpaResult {
    let exact = inventory.segments().iter().any(|entry| {
        entry.segment.vector == target.vector
            && (position != Position::WordInitial || entry.initial_ok)
    });
    if exact {
        return CpaResult {
            target: target.clone(),
            position,
            decision: Decision::ExactMatch,
            vowel_candidates: vec![],
            consonant_candidates: vec![],
        };
    }
    let (vowel_candidates, consonant_candidates) = match target.class {
        SegmentClass::Vowel => (
            approximate_vowel(spec, inventory, &target.vector, config),
            vec![],
        ),
        SegmentClass::Consonant => (
            vec![],
            approximate_consonant(inventory, &target.vector, position, config),
        ),
    };
    let decision = if vowel_candidates.is_empty() && consonant_candidates.is_empty() {
        Decision::Skip
    } else {
        Decision::Composite
    };
    CpaResult {
        target: target.clone(),
        position,
        decision,
        vowel_candidates,
        consonant_candidates,
    }
}

// ── Errors ─────────────────────────────────────────────────────────────────

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComposeError {
    UnknownTransformation { name: String },
    FeatureMissing {
        transformation: &'static str,
        feature: &'static str,
    },
}

impl fmt::Display for ComposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComposeError::UnknownTransformation { name } => {
                write!(f, "unknown transformation `{name}`")
            }
            ComposeError::FeatureMissing {
                transformation,
                feature,
            } => write!(
                f,
                "transformation `{transformation}` needs feature `{feature}`, absent from the schema"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ComposeError {}
