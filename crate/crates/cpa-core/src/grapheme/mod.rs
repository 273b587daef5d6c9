//! Hangul-style grapheme cues for approximation results.
//!
//! Each word renders as one row of blocks. Full-size blocks carry syllable
//! content (composed to a precomposed syllable when the nucleus is a single
//! jamo, otherwise spelled as a jamo stack); half-size blocks carry
//! epenthetic groups before their base and trigger vowels after the block
//! containing their base. Composite vowels stack the two source vowels in
//! one nucleus, merging into a standard diphthong jamo when Hangul has one.

pub mod hangul;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::composer::{CpaResult, Decision};

// ── Jamo map ───────────────────────────────────────────────────────────────

/// Role a mapped jamo plays in cue layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JamoKind {
    Consonant,
    Vowel,
    Glide,
}

/// One jamo map entry: one or two compatibility jamo plus their role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JamoEntry {
    pub jamo: Vec<char>,
    pub kind: JamoKind,
}

/// IPA-to-jamo cue map, format `ipa | jamo | kind` with kind C, V, or G.
#[derive(Clone, Debug, Default)]
pub struct JamoMap {
    entries: BTreeMap<String, JamoEntry>,
}

impl JamoMap {
    pub fn parse(text: &str) -> Result<Self, JamoError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('|').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(JamoError::BadLine {
                    line: lineno,
                    reason: alloc::format!("expected 3 fields, found {}", fields.len()),
                });
            }
            let jamo: Vec<char> = fields[1].chars().collect();
            if jamo.is_empty() || jamo.len() > 2 {
                return Err(JamoError::BadLine {
                    line: lineno,
                    reason: "jamo field must hold 1 or 2 characters".to_string(),
                });
            }
            let kind = match fields[2] {
                "C" => JamoKind::Consonant,
                "V" => JamoKind::Vowel,
                "G" => JamoKind::Glide,
                other => {
                    return Err(JamoError::BadKind {
                        line: lineno,
                        found: other.to_string(),
                    })
                }
            };
            let ipa = fields[0].to_string();
            if entries.contains_key(&ipa) {
                return Err(JamoError::Duplicate { line: lineno, ipa });
            }
            entries.insert(ipa, JamoEntry { jamo, kind });
        }
        if entries.is_empty() {
            return Err(JamoError::Empty);
        }
        Ok(JamoMap { entries })
    }

    pub fn get(&self, ipa: &str) -> Option<&JamoEntry> {
        self.entries.get(ipa)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

// ── Cue structure ──────────────────────────────────────────────────────────

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockSize {
    Full,
    Half,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockRole {
    /// A full syllable block.
    Nucleus,
    /// Half-size epenthetic group shown before its base.
    Epenthetic,
    /// Half-size trigger vowel shown after the block containing its base.
    Trigger,
}

/// One rendered block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub content: String,
    pub size: BlockSize,
    pub role: BlockRole,
}

/// A word's rendered cue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphemeCue {
    pub word: String,
    pub blocks: Vec<Block>,
}

impl GraphemeCue {
    /// Plain-text form: half blocks parenthesized, e.g. `(으)ㄷㅗㅓㄴ`.
    pub fn fallback(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            match b.size {
                BlockSize::Full => out.push_str(&b.content),
                BlockSize::Half => {
                    out.push('(');
                    out.push_str(&b.content);
                    out.push(')');
                }
            }
        }
        out
    }
}

// ── Render input ───────────────────────────────────────────────────────────

/// What the renderer needs to know about one segment: the gate decision and
/// the top candidate's articulated pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderItem {
    pub ipa: String,
    pub decision: Decision,
    /// Top vowel candidate's sources, for vowel composites.
    pub vowel: Option<(String, String)>,
    /// Top consonant candidate's pieces, for consonant composites.
    pub consonant: Option<RenderConsonant>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderConsonant {
    pub epenthetic: Vec<String>,
    pub base: String,
    pub triggers: Vec<String>,
}

impl From<&CpaResult> for RenderItem {
    fn from(result: &CpaResult) -> Self {
        RenderItem {
            ipa: result.target.ipa.clone(),
            decision: result.decision,
            vowel: result
                .vowel_candidates
                .first()
                .map(|c| (c.v1.ipa.clone(), c.v2.ipa.clone())),
            consonant: result.consonant_candidates.first().map(|c| RenderConsonant {
                epenthetic: c.epenthetic.iter().map(|s| s.ipa.clone()).collect(),
                base: c.base.ipa.clone(),
                triggers: c.triggers.iter().map(|s| s.ipa.clone()).collect(),
            }),
        }
    }
}

// ── Renderer ───────────────────────────────────────────────────────────────

const FILLER: char = 'ㅡ';

/// Working atoms between approximation results and blocks.
enum Atom {
    Onset { jamo: char, triggers: Vec<char> },
    Nucleus { jamo: Vec<char> },
    Glide { jamo: char },
    Epenthetic { content: String },
}

/// Renders one word's cue row from its per-segment render items.
pub fn render_cue(word: &str, items: &[RenderItem], map: &JamoMap) -> Result<GraphemeCue, RenderError> {
    let atoms = build_atoms(items, map)?;
    let atoms = merge_glides(atoms);
    let blocks = syllabify(&atoms);
    Ok(GraphemeCue {
        word: word.to_string(),
        blocks,
    })
}

fn lookup<'m>(map: &'m JamoMap, ipa: &str) -> Result<&'m JamoEntry, RenderError> {
    map.get(ipa).ok_or_else(|| RenderError::Unmapped {
        ipa: ipa.to_string(),
    })
}

/// Jamo for a segment required to act as a vowel in a nucleus stack.
fn vowel_jamo(map: &JamoMap, ipa: &str) -> Result<Vec<char>, RenderError> {
    let entry = lookup(map, ipa)?;
    match entry.kind {
        JamoKind::Vowel | JamoKind::Glide => Ok(entry.jamo.clone()),
        JamoKind::Consonant => Err(RenderError::NotAVowel {
            ipa: ipa.to_string(),
        }),
    }
}

fn build_atoms(items: &[RenderItem], map: &JamoMap) -> Result<Vec<Atom>, RenderError> {
    let mut atoms: Vec<Atom> = Vec::new();
    for item in items {
        match item.decision {
            // Exact matches and skips both render the target's own entry;
            // a skip without an entry has nowhere to go.
            Decision::ExactMatch | Decision::Skip => {
                let entry = lookup(map, &item.ipa)?;
                match entry.kind {
                    JamoKind::Consonant => atoms.push(Atom::Onset {
                        jamo: entry.jamo[0],
                        triggers: vec![],
                    }),
                    JamoKind::Vowel => atoms.push(Atom::Nucleus {
                        jamo: entry.jamo.clone(),
                    }),
                    JamoKind::Glide => atoms.push(Atom::Glide {
                        jamo: entry.jamo[0],
                    }),
                }
            }
            Decision::Composite => {
                if let Some((v1, v2)) = &item.vowel {
                    let mut jamo = vowel_jamo(map, v1)?;
                    jamo.extend(vowel_jamo(map, v2)?);
                    atoms.push(Atom::Nucleus { jamo });
                } else if let Some(consonant) = &item.consonant {
                    if !consonant.epenthetic.is_empty() {
                        atoms.push(Atom::Epenthetic {
                            content: epenthetic_block(&consonant.epenthetic, map)?,
                        });
                    }
                    let base = lookup(map, &consonant.base)?;
                    let mut triggers = Vec::new();
                    for t in &consonant.triggers {
                        triggers.push(vowel_jamo(map, t)?[0]);
                    }
                    match base.kind {
                        JamoKind::Consonant => atoms.push(Atom::Onset {
                            jamo: base.jamo[0],
                            triggers,
                        }),
                        // A vowel base cannot also carry triggers; none of
                        // the bundled rules produce one.
                        JamoKind::Vowel | JamoKind::Glide => atoms.push(Atom::Nucleus {
                            jamo: base.jamo.clone(),
                        }),
                    }
                } else {
                    return Err(RenderError::MissingCandidate {
                        ipa: item.ipa.clone(),
                    });
                }
            }
        }
    }
    Ok(atoms)
}

/// Composes an epenthetic group (vowel, or vowel + consonant) into one
/// syllable with a silent ㅇ onset, e.g. [ɨ] to 으 and [ɨ, l] to 을.
fn epenthetic_block(segments: &[String], map: &JamoMap) -> Result<String, RenderError> {
    let fail = |reason: &str| RenderError::EpentheticBlock {
        group: segments.join(" "),
        reason: reason.to_string(),
    };
    match segments {
        [v] => {
            let jamo = vowel_jamo(map, v)?;
            let syllable = hangul::compose_jamo('ㅇ', jamo[0], None)
                .ok_or_else(|| fail("vowel has no jungseong form"))?;
            Ok(syllable.to_string())
        }
        [v, c] => {
            let vj = vowel_jamo(map, v)?;
            let entry = lookup(map, c)?;
            let syllable = hangul::compose_jamo('ㅇ', vj[0], Some(entry.jamo[0]))
                .ok_or_else(|| fail("group does not compose to a syllable"))?;
            Ok(syllable.to_string())
        }
        _ => Err(fail("expected one vowel with at most one consonant")),
    }
}

/// Folds glides into the following nucleus: merged to a standard diphthong
/// jamo when one exists, otherwise prepended to the stack. A glide with no
/// following nucleus becomes a nucleus of its own.
fn merge_glides(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut out: Vec<Atom> = Vec::new();
    let mut pending_glide: Option<char> = None;
    for atom in atoms {
        match atom {
            Atom::Glide { jamo } => {
                if let Some(prev) = pending_glide.replace(jamo) {
                    out.push(Atom::Nucleus { jamo: vec![prev] });
                }
            }
            Atom::Nucleus { mut jamo } => {
                if let Some(g) = pending_glide.take() {
                    match hangul::diphthong(g, jamo[0]) {
                        Some(merged) => jamo[0] = merged,
                        None => jamo.insert(0, g),
                    }
                }
                out.push(Atom::Nucleus { jamo });
            }
            other => {
                if let Some(g) = pending_glide.take() {
                    out.push(Atom::Nucleus { jamo: vec![g] });
                }
                out.push(other);
            }
        }
    }
    if let Some(g) = pending_glide.take() {
        out.push(Atom::Nucleus { jamo: vec![g] });
    }
    out
}

/// Jamo that Korean writes as syllable codas in cue rows: sonorants keep
/// their coda habit; obstruents only close the word-final block.
fn sonorant_jamo(j: char) -> bool {
    matches!(j, 'ㄴ' | 'ㅁ' | 'ㅇ' | 'ㄹ')
}

struct OpenBlock {
    onset: Option<char>,
    nucleus: Vec<char>,
    filler: bool,
    coda: Option<char>,
    triggers: Vec<char>,
}

impl OpenBlock {
    fn compose(&self) -> String {
        if self.nucleus.len() == 1 {
            if let Some(syllable) =
                hangul::compose_jamo(self.onset.unwrap_or('ㅇ'), self.nucleus[0], self.coda)
            {
                return syllable.to_string();
            }
        }
        let mut content = String::new();
        content.push(self.onset.unwrap_or('ㅇ'));
        content.extend(self.nucleus.iter());
        content.extend(self.coda.iter());
        content
    }
}

fn flush(open: &mut Option<OpenBlock>, blocks: &mut Vec<Block>) {
    if let Some(o) = open.take() {
        blocks.push(Block {
            content: o.compose(),
            size: BlockSize::Full,
            role: BlockRole::Nucleus,
        });
        for t in &o.triggers {
            let content = match hangul::compose_jamo('ㅇ', *t, None) {
                Some(syllable) => syllable.to_string(),
                None => t.to_string(),
            };
            blocks.push(Block {
                content,
                size: BlockSize::Half,
                role: BlockRole::Trigger,
            });
        }
    }
}

fn syllabify(atoms: &[Atom]) -> Vec<Block> {
    let mut blocks: Vec<Block> = Vec::new();
    let mut open: Option<OpenBlock> = None;

    for (i, atom) in atoms.iter().enumerate() {
        match atom {
            Atom::Epenthetic { content } => {
                flush(&mut open, &mut blocks);
                blocks.push(Block {
                    content: content.clone(),
                    size: BlockSize::Half,
                    role: BlockRole::Epenthetic,
                });
            }
            Atom::Onset { jamo, triggers } => {
                let next_is_nucleus = matches!(atoms.get(i + 1), Some(Atom::Nucleus { .. }));
                if next_is_nucleus {
                    flush(&mut open, &mut blocks);
                    open = Some(OpenBlock {
                        onset: Some(*jamo),
                        nucleus: vec![],
                        filler: false,
                        coda: None,
                        triggers: triggers.clone(),
                    });
                    continue;
                }
                let is_last = atoms[i + 1..]
                    .iter()
                    .all(|a| matches!(a, Atom::Epenthetic { .. }));
                let can_close = open.as_ref().is_some_and(|o| {
                    !o.nucleus.is_empty() && !o.filler && o.coda.is_none()
                }) && (sonorant_jamo(*jamo) || is_last)
                    && hangul::jongseong_index(*jamo).is_some();
                if can_close {
                    let o = open.as_mut().expect("checked above");
                    o.coda = Some(*jamo);
                    o.triggers.extend(triggers.iter().copied());
                } else {
                    flush(&mut open, &mut blocks);
                    open = Some(OpenBlock {
                        onset: Some(*jamo),
                        nucleus: vec![FILLER],
                        filler: true,
                        coda: None,
                        triggers: triggers.clone(),
                    });
                    flush(&mut open, &mut blocks);
                }
            }
            Atom::Nucleus { jamo } => match open.as_mut() {
                Some(o) if o.nucleus.is_empty() => {
                    o.nucleus = jamo.clone();
                }
                _ => {
                    flush(&mut open, &mut blocks);
                    open = Some(OpenBlock {
                        onset: None,
                        nucleus: jamo.clone(),
                        filler: false,
                        coda: None,
                        triggers: vec![],
                    });
                }
            },
            Atom::Glide { .. } => unreachable!("glides merged before syllabification"),
        }
    }
    flush(&mut open, &mut blocks);
    blocks
}

// ── Errors ─────────────────────────────────────────────────────────────────

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JamoError {
    BadLine { line: usize, reason: String },
    BadKind { line: usize, found: String },
    Duplicate { line: usize, ipa: String },
    Empty,
}

impl fmt::Display for JamoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JamoError::BadLine { line, reason } => write!(f, "line {line}: {reason}"),
            JamoError::BadKind { line, found } => {
                write!(f, "line {line}: kind must be C, V, or G, found `{found}`")
            }
            JamoError::Duplicate { line, ipa } => {
                write!(f, "line {line}: duplicate entry `{ipa}`")
            }
            JamoError::Empty => write!(f, "jamo map has no entries"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for JamoError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RenderError {
    /// A segment that must pass through (or display) has no jamo entry.
    Unmapped { ipa: String },
    NotAVowel { ipa: String },
    /// A composite item arrived without its candidate pieces.
    MissingCandidate { ipa: String },
    EpentheticBlock { group: String, reason: String },
}

impl fmt::Display for RenderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenderError::Unmapped { ipa } => write!(f, "no jamo entry for `{ipa}`"),
            RenderError::NotAVowel { ipa } => {
                write!(f, "`{ipa}` is mapped as a consonant but needs a vowel jamo")
            }
            RenderError::MissingCandidate { ipa } => {
                write!(f, "composite segment `{ipa}` carries no candidate")
            }
            RenderError::EpentheticBlock { group, reason } => {
                write!(f, "cannot compose epenthetic group `{group}`: {reason}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RenderError {}
