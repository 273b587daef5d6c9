//! Segment inventories: a language's segments plus its allophonic
//! variation rules, resolved against a feature table at load.
//!
//! File format: `language:` and `epenthetic:` lines, a `[segments]` section
//! (one IPA segment per line, optional `noninitial` flag), and a `[rules]`
//! section with pipe-separated `base | pre | post | transformations |
//! realized` lines. Context fields use `-` for absent and `V` for any vowel;
//! multiple transformations are joined with `+`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::composer;
use crate::phonfeat::{FeatureTable, Segment, SegmentClass};

/// Maximum transformations one rule may chain.
pub const MAX_TRANSFORMATIONS: usize = 2;

/// One inventory segment. `initial_ok` is false for segments that cannot
/// serve as word-initial exact matches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InventorySegment {
    pub segment: Segment,
    pub initial_ok: bool,
}

/// A conditioning context on one side of a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleContext {
    AnyVowel,
    Exact(Segment),
}

/// One allophonic variation rule: in the given context, `base` is realized
/// as `realized`, licensed by the named transformations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariationRule {
    pub base: Segment,
    pub pre: Option<RuleContext>,
    pub post: Option<RuleContext>,
    pub transformations: Vec<String>,
    pub realized: Segment,
}

/// A language's segments and variation rules.
#[derive(Clone, Debug, PartialEq)]
pub struct Inventory {
    pub language: String,
    epenthetic: Segment,
    segments: Vec<InventorySegment>,
    pub rules: Vec<VariationRule>,
}

impl Inventory {
    /// Parses inventory text, resolving every segment against `table`.
    pub fn parse(text: &str, table: &FeatureTable) -> Result<Self, InventoryError> {
        #[derive(PartialEq)]
        enum Section {
            Preamble,
            Segments,
            Rules,
        }

        let mut language: Option<String> = None;
        let mut epenthetic_ipa: Option<String> = None;
        let mut segments: Vec<InventorySegment> = Vec::new();
        let mut rules: Vec<VariationRule> = Vec::new();
        let mut section = Section::Preamble;

        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line {
                "[segments]" => {
                    section = Section::Segments;
                    continue;
                }
                "[rules]" => {
                    section = Section::Rules;
                    continue;
                }
                _ => {}
            }
            match section {
                Section::Preamble => {
                    if let Some(value) = line.strip_prefix("language:") {
                        language = Some(value.trim().to_string());
                    } else if let Some(value) = line.strip_prefix("epenthetic:") {
                        epenthetic_ipa = Some(value.trim().to_string());
                    } else {
                        return Err(InventoryError::UnexpectedLine { line: lineno });
                    }
                }
                Section::Segments => {
                    let mut parts = line.split_whitespace();
                    let ipa = parts.next().expect("non-empty line");
                    let initial_ok = match parts.next() {
                        None => true,
                        Some("noninitial") => false,
                        Some(flag) => {
                            return Err(InventoryError::BadFlag {
                                line: lineno,
                                flag: flag.to_string(),
                            })
                        }
                    };
                    let segment = table
                        .get(ipa)
                        .ok_or_else(|| InventoryError::UnknownSegment {
                            line: lineno,
                            ipa: ipa.to_string(),
                        })?
                        .clone();
                    if segments.iter().any(|s| s.segment.ipa == segment.ipa) {
                        return Err(InventoryError::DuplicateSegment {
                            line: lineno,
                            ipa: segment.ipa,
                        });
                    }
                    segments.push(InventorySegment {
                        segment,
                        initial_ok,
                    });
                }
                Section::Rules => {
                    let rule = parse_rule(line, lineno, table, &segments)?;
                    rules.push(rule);
                }
            }
        }

        let language = language.ok_or(InventoryError::MissingLanguage)?;
        if language.is_empty() {
            return Err(InventoryError::MissingLanguage);
        }
        let epenthetic_ipa = epenthetic_ipa.ok_or(InventoryError::MissingEpenthetic)?;
        let epenthetic = segments
            .iter()
            .map(|s| &s.segment)
            .find(|s| {
                table
                    .get(&epenthetic_ipa)
                    .is_some_and(|t| t.ipa == s.ipa)
            })
            .cloned()
            .ok_or_else(|| InventoryError::EpentheticNotInInventory {
                ipa: epenthetic_ipa.clone(),
            })?;
        if epenthetic.class != SegmentClass::Vowel {
            return Err(InventoryError::EpentheticNotVowel { ipa: epenthetic.ipa });
        }

        Ok(Inventory {
            language,
            epenthetic,
            segments,
            rules,
        })
    }

    pub fn segments(&self) -> &[InventorySegment] {
        &self.segments
    }

    /// Inventory vowels, in file order.
    pub fn vowels(&self) -> Vec<&Segment> {
        self.segments
            .iter()
            .map(|s| &s.segment)
            .filter(|s| s.class == SegmentClass::Vowel)
            .collect()
    }

    /// Inventory consonants, in file order.
    pub fn consonants(&self) -> Vec<&Segment> {
        self.segments
            .iter()
            .map(|s| &s.segment)
            .filter(|s| s.class == SegmentClass::Consonant)
            .collect()
    }

    /// The vowel inserted when a rule's pre-context has to be manufactured.
    pub fn epenthetic(&self) -> &Segment {
        &self.epenthetic
    }

    pub fn get(&self, ipa: &str) -> Option<&InventorySegment> {
        self.segments.iter().find(|s| s.segment.ipa == ipa)
    }

    /// Every rule whose base is `base` (matched by IPA symbol), paired with
    /// its realized segment, in rule order. Empty for segments without rules.
    pub fn realized_allophones(&self, base: &Segment) -> Vec<(&VariationRule, &Segment)> {
        self.rules
            .iter()
            .filter(|r| r.base.ipa == base.ipa)
            .map(|r| (r, &r.realized))
            .collect()
    }

    /// Canonical file text; `parse` of the output reproduces the inventory.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("language: ");
        out.push_str(&self.language);
        out.push('\n');
        out.push_str("epenthetic: ");
        out.push_str(&self.epenthetic.ipa);
        out.push_str("\n\n[segments]\n");
        for s in &self.segments {
            out.push_str(&s.segment.ipa);
            if !s.initial_ok {
                out.push_str(" noninitial");
            }
            out.push('\n');
        }
        out.push_str("\n[rules]\n");
        for r in &self.rules {
            let ctx = |c: &Option<RuleContext>| match c {
                None => "-".to_string(),
                Some(RuleContext::AnyVowel) => "V".to_string(),
                Some(RuleContext::Exact(seg)) => seg.ipa.clone(),
            };
            out.push_str(&alloc::format!(
                "{} | {} | {} | {} | {}\n",
                r.base.ipa,
                ctx(&r.pre),
                ctx(&r.post),
                r.transformations.join("+"),
                r.realized.ipa,
            ));
        }
        out
    }
}

fn parse_rule(
    line: &str,
    lineno: usize,
    table: &FeatureTable,
    segments: &[InventorySegment],
) -> Result<VariationRule, InventoryError> {
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    if fields.len() != 5 {
        return Err(InventoryError::BadRule {
            line: lineno,
            reason: alloc::format!("expected 5 pipe-separated fields, found {}", fields.len()),
        });
    }

    let resolve_member = |ipa: &str| -> Result<Segment, InventoryError> {
        let canonical = table
            .get(ipa)
            .ok_or_else(|| InventoryError::UnknownSegment {
                line: lineno,
                ipa: ipa.to_string(),
            })?;
        segments
            .iter()
            .map(|s| &s.segment)
            .find(|s| s.ipa == canonical.ipa)
            .cloned()
            .ok_or_else(|| InventoryError::SegmentNotInInventory {
                line: lineno,
                ipa: canonical.ipa.clone(),
            })
    };

    let base = resolve_member(fields[0])?;
    let context = |field: &str| -> Result<Option<RuleContext>, InventoryError> {
        match field {
            "-" => Ok(None),
            "V" => Ok(Some(RuleContext::AnyVowel)),
            ipa => Ok(Some(RuleContext::Exact(resolve_member(ipa)?))),
        }
    };
    let pre = context(fields[1])?;
    let post = context(fields[2])?;
    if pre.is_none() && post.is_none() {
        return Err(InventoryError::MissingContext { line: lineno });
    }

    let transformations: Vec<String> = fields[3]
        .split('+')
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect();
    if transformations.is_empty() {
        return Err(InventoryError::BadRule {
            line: lineno,
            reason: "no transformations named".to_string(),
        });
    }
    if transformations.len() > MAX_TRANSFORMATIONS {
        return Err(InventoryError::TooManyTransformations {
            line: lineno,
            found: transformations.len(),
        });
    }
    for name in &transformations {
        if composer::transformation(name).is_none() {
            return Err(InventoryError::UnknownTransformation {
                line: lineno,
                name: name.clone(),
            });
        }
    }

    // Realized segments only need a table row; they may fall outside the
    // inventory proper (allophones usually do).
    let realized = table
        .get(fields[4])
        .ok_or_else(|| InventoryError::UnknownSegment {
            line: lineno,
            ipa: fields[4].to_string(),
        })?
        .clone();

    // The named transformations must carry the base onto the realized
    // segment: applying them in order has to reproduce the realized marks on
    // every named feature.
    let mut shifted = base.vector;
    for name in &transformations {
        shifted = composer::apply_transformation(table.spec(), &shifted, name)
            .expect("names validated above");
    }
    for name in &transformations {
        let t = composer::transformation(name).expect("validated");
        for &(feature, _) in t.deltas {
            let idx = table
                .spec()
                .index_of(feature)
                .expect("registry features exist in a validated schema");
            if shifted.get(idx) != realized.vector.get(idx) {
                return Err(InventoryError::DeltaMismatch {
                    line: lineno,
                    feature: feature.to_string(),
                });
            }
        }
    }

    Ok(VariationRule {
        base,
        pre,
        post,
        transformations,
        realized,
    })
}

// ── Errors ─────────────────────────────────────────────────────────────────

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InventoryError {
    MissingLanguage,
    MissingEpenthetic,
    EpentheticNotInInventory { ipa: String },
    EpentheticNotVowel { ipa: String },
    UnexpectedLine { line: usize },
    BadFlag { line: usize, flag: String },
    UnknownSegment { line: usize, ipa: String },
    SegmentNotInInventory { line: usize, ipa: String },
    DuplicateSegment { line: usize, ipa: String },
    BadRule { line: usize, reason: String },
    MissingContext { line: usize },
    UnknownTransformation { line: usize, name: String },
    TooManyTransformations { line: usize, found: usize },
    DeltaMismatch { line: usize, feature: String },
}

impl fmt::Display for InventoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use InventoryError::*;
        match self {
            MissingLanguage => write!(f, "missing `language:` line"),
            MissingEpenthetic => write!(f, "missing `epenthetic:` line"),
            EpentheticNotInInventory { ipa } => {
                write!(f, "epenthetic `{ipa}` is not an inventory segment")
            }
            EpentheticNotVowel { ipa } => write!(f, "epenthetic `{ipa}` is not a vowel"),
            UnexpectedLine { line } => write!(f, "line {line}: unexpected content"),
            BadFlag { line, flag } => write!(f, "line {line}: unknown segment flag `{flag}`"),
            UnknownSegment { line, ipa } => {
                write!(f, "line {line}: `{ipa}` is not in the feature table")
            }
            SegmentNotInInventory { line, ipa } => {
                write!(f, "line {line}: `{ipa}` is not an inventory segment")
            }
            DuplicateSegment { line, ipa } => {
                write!(f, "line {line}: duplicate segment `{ipa}`")
            }
            BadRule { line, reason } => write!(f, "line {line}: bad rule: {reason}"),
            MissingContext { line } => {
                write!(f, "line {line}: rule needs a pre- or post-context")
            }
            UnknownTransformation { line, name } => {
                write!(f, "line {line}: unknown transformation `{name}`")
            }
            TooManyTransformations { line, found } => write!(
                f,
                "line {line}: {found} transformations exceed the limit of {MAX_TRANSFORMATIONS}"
            ),
            DeltaMismatch { line, feature } => write!(
                f,
                "line {line}: realized segment disagrees with the transformation on `{feature}`"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for InventoryError {}
