//! Ternary phonological feature vectors and the segment table.
//!
//! Every segment carries a fixed-width vector of 22 feature marks, each
//! `+`, `-`, or unspecified (`0`). Feature names are data: they arrive with
//! the table header, and the schema is validated at load. Distance between
//! two vectors counts the positions where both sides are specified and
//! disagree; unspecified positions never contribute.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use unicode_normalization::UnicodeNormalization;

/// Width of every feature vector.
pub const FEATURE_COUNT: usize = 22;

/// Names the schema must provide: `syllabic` drives segment classification,
/// the rest drive vowel composition.
pub const REQUIRED_FEATURES: [&str; 6] = ["syllabic", "front", "back", "high", "low", "round"];

// ── Marks and vectors ──────────────────────────────────────────────────────

/// One ternary feature mark.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    Plus,
    Minus,
    Unspecified,
}

impl Mark {
    /// Accepts `+`, `-` (ASCII hyphen or U+2212 minus), and `0`.
    pub fn from_char(c: char) -> Option<Mark> {
        match c {
            '+' => Some(Mark::Plus),
            '-' | '\u{2212}' => Some(Mark::Minus),
            '0' => Some(Mark::Unspecified),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Mark::Plus => '+',
            Mark::Minus => '-',
            Mark::Unspecified => '0',
        }
    }

    pub fn is_specified(self) -> bool {
        !matches!(self, Mark::Unspecified)
    }
}

/// Fixed-width vector of feature marks. Position is meaning; the names live
/// in [`FeatureSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FeatureVector {
    marks: [Mark; FEATURE_COUNT],
}

impl FeatureVector {
    pub const fn unspecified() -> Self {
        FeatureVector {
            marks: [Mark::Unspecified; FEATURE_COUNT],
        }
    }

    pub fn new(marks: [Mark; FEATURE_COUNT]) -> Self {
        FeatureVector { marks }
    }

    pub fn get(&self, index: usize) -> Mark {
        self.marks[index]
    }

    pub fn set(&mut self, index: usize, mark: Mark) {
        self.marks[index] = mark;
    }

    pub fn marks(&self) -> &[Mark; FEATURE_COUNT] {
        &self.marks
    }

    /// True when the vectors agree on every listed position.
    pub fn agrees_on(&self, other: &FeatureVector, positions: &[usize]) -> bool {
        positions.iter().all(|&i| self.marks[i] == other.marks[i])
    }
}

/// Count of positions where both vectors are specified and disagree.
pub fn distance(a: &FeatureVector, b: &FeatureVector) -> u32 {
    let mut d = 0;
    for i in 0..FEATURE_COUNT {
        let (ma, mb) = (a.marks[i], b.marks[i]);
        if ma.is_specified() && mb.is_specified() && ma != mb {
            d += 1;
        }
    }
    d
}

// ── Schema ─────────────────────────────────────────────────────────────────

/// Feature name schema, with the composition-critical indices resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureSpec {
    names: Vec<String>,
    pub syllabic: usize,
    pub front: usize,
    pub back: usize,
    pub high: usize,
    pub low: usize,
    pub round: usize,
}

impl FeatureSpec {
    /// Validates count, uniqueness, and presence of the required names.
    pub fn new(names: Vec<String>) -> Result<Self, TableError> {
        if names.len() != FEATURE_COUNT {
            return Err(TableError::Header {
                reason: alloc::format!(
                    "expected {} feature columns, found {}",
                    FEATURE_COUNT,
                    names.len()
                ),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(TableError::Header {
                    reason: alloc::format!("feature column {} has an empty name", i + 1),
                });
            }
            if names[..i].contains(name) {
                return Err(TableError::Header {
                    reason: alloc::format!("duplicate feature name `{name}`"),
                });
            }
        }
        let find = |want: &str| {
            names
                .iter()
                .position(|n| n == want)
                .ok_or_else(|| TableError::Header {
                    reason: alloc::format!("missing required feature `{want}`"),
                })
        };
        Ok(FeatureSpec {
            syllabic: find("syllabic")?,
            front: find("front")?,
            back: find("back")?,
            high: find("high")?,
            low: find("low")?,
            round: find("round")?,
            names,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Positions compared when a composed vowel is tested against a target:
    /// front, back, high, low, round. Tense is deliberately not among them.
    pub fn vowel_identity(&self) -> [usize; 5] {
        [self.front, self.back, self.high, self.low, self.round]
    }
}

// ── Segments and the table ─────────────────────────────────────────────────

/// Segment class, derived from the `syllabic` mark.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentClass {
    Vowel,
    Consonant,
}

/// One table row: an IPA key and its feature vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub ipa: String,
    pub vector: FeatureVector,
    pub class: SegmentClass,
}

/// Segment table keyed by NFC-normalized IPA strings.
#[derive(Clone, Debug)]
pub struct FeatureTable {
    spec: FeatureSpec,
    segments: Vec<Segment>,
    index: BTreeMap<String, usize>,
    max_key_chars: usize,
}

impl FeatureTable {
    /// Parses CSV text: a header row naming the 22 features, then one row
    /// per segment. `#` lines and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut spec: Option<FeatureSpec> = None;
        let mut segments: Vec<Segment> = Vec::new();
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut max_key_chars = 0;

        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let Some(spec) = spec.as_ref() else {
                let names = fields[1..].iter().map(|s| s.to_string()).collect();
                spec = Some(FeatureSpec::new(names)?);
                continue;
            };
            if fields.len() != FEATURE_COUNT + 1 {
                return Err(TableError::Arity {
                    line: lineno,
                    expected: FEATURE_COUNT + 1,
                    found: fields.len(),
                });
            }
            let key: String = fields[0].nfc().collect();
            if key.is_empty() {
                return Err(TableError::BadMark {
                    line: lineno,
                    column: "seg".to_string(),
                    found: String::new(),
                });
            }
            let mut marks = [Mark::Unspecified; FEATURE_COUNT];
            for (i, field) in fields[1..].iter().enumerate() {
                let mut chars = field.chars();
                let mark = match (chars.next(), chars.next()) {
                    (Some(c), None) => Mark::from_char(c),
                    _ => None,
                };
                marks[i] = mark.ok_or_else(|| TableError::BadMark {
                    line: lineno,
                    column: spec.names()[i].clone(),
                    found: field.to_string(),
                })?;
            }
            if index.contains_key(&key) {
                return Err(TableError::Duplicate {
                    line: lineno,
                    ipa: key,
                });
            }
            let vector = FeatureVector::new(marks);
            let class = if vector.get(spec.syllabic) == Mark::Plus {
                SegmentClass::Vowel
            } else {
                SegmentClass::Consonant
            };
            max_key_chars = max_key_chars.max(key.chars().count());
            index.insert(key.clone(), segments.len());
            segments.push(Segment {
                ipa: key,
                vector,
                class,
            });
        }

        let spec = spec.ok_or(TableError::Empty)?;
        if segments.is_empty() {
            return Err(TableError::Empty);
        }
        Ok(FeatureTable {
            spec,
            segments,
            index,
            max_key_chars,
        })
    }

    pub fn spec(&self) -> &FeatureSpec {
        &self.spec
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Looks a segment up by IPA key (NFC-normalized first).
    pub fn get(&self, ipa: &str) -> Option<&Segment> {
        let key: String = ipa.nfc().collect();
        self.index.get(&key).map(|&i| &self.segments[i])
    }

    /// Greedy longest-match tokenization of an IPA string. Whitespace and
    /// the delimiters `/ [ ]` are skipped; anything else must start a key.
    pub fn parse_ipa(&self, input: &str) -> Result<Vec<Segment>, IpaError> {
        let norm: String = input.nfc().collect();
        let mut out = Vec::new();
        let mut pos = 0;
        while pos < norm.len() {
            let rest = &norm[pos..];
            let c = rest.chars().next().expect("pos is on a char boundary");
            if c.is_whitespace() || matches!(c, '/' | '[' | ']') {
                pos += c.len_utf8();
                continue;
            }
            let mut matched = None;
            for take in (1..=self.max_key_chars).rev() {
                let Some(end) = char_prefix_len(rest, take) else {
                    continue;
                };
                if let Some(&si) = self.index.get(&rest[..end]) {
                    matched = Some((end, si));
                    break;
                }
            }
            match matched {
                Some((len, si)) => {
                    out.push(self.segments[si].clone());
                    pos += len;
                }
                None => {
                    let prefix: String = rest.chars().take(4).collect();
                    return Err(IpaError::UnknownSymbol {
                        offset: pos,
                        prefix,
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Byte length of the first `take` chars, or None if the string is shorter.
fn char_prefix_len(s: &str, take: usize) -> Option<usize> {
    let mut count = 0;
    for (i, c) in s.char_indices() {
        if count == take {
            return Some(i);
        }
        count += 1;
        let _ = c;
    }
    if count == take {
        Some(s.len())
    } else {
        None
    }
}

// ── Errors ─────────────────────────────────────────────────────────────────

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableError {
    Header { reason: String },
    Arity { line: usize, expected: usize, found: usize },
    BadMark { line: usize, column: String, found: String },
    Duplicate { line: usize, ipa: String },
    Empty,
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::Header { reason } => write!(f, "bad table header: {reason}"),
            TableError::Arity {
                line,
                expected,
                found,
            } => write!(
                f,
                "line {line}: expected {expected} fields, found {found}"
            ),
            TableError::BadMark {
                line,
                column,
                found,
            } => write!(f, "line {line}: bad mark `{found}` in column `{column}`"),
            TableError::Duplicate { line, ipa } => {
                write!(f, "line {line}: duplicate segment `{ipa}` (after NFC)")
            }
            TableError::Empty => write!(f, "table has no segment rows"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TableError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IpaError {
    UnknownSymbol { offset: usize, prefix: String },
}

impl fmt::Display for IpaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IpaError::UnknownSymbol { offset, prefix } => write!(
                f,
                "no segment matches input at byte {offset} (starts with `{prefix}`)"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for IpaError {}
