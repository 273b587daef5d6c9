//! Inventory parsing, validation, and round-trip serialization.

use cpa_core::bundled;
use cpa_core::inventory::{Inventory, InventoryError, RuleContext};
use cpa_core::phonfeat::SegmentClass;

fn korean() -> Inventory {
    let table = bundled::feature_table();
    Inventory::parse(bundled::KOREAN_INV, &table).unwrap()
}

// ── Bundled inventories ────────────────────────────────────────────────────

#[test]
fn all_bundled_inventories_parse() {
    let table = bundled::feature_table();
    for name in bundled::INVENTORY_NAMES {
        let text = bundled::inventory_source(name).unwrap();
        let inv = Inventory::parse(text, &table)
            .unwrap_or_else(|e| panic!("inventory `{name}`: {e}"));
        assert_eq!(inv.language, *name);
        assert_eq!(inv.epenthetic().class, SegmentClass::Vowel);
    }
}

#[test]
fn korean_inventory_shape() {
    let inv = korean();
    assert_eq!(inv.language, "korean");
    assert_eq!(inv.epenthetic().ipa, "ɨ");
    assert_eq!(inv.vowels().len(), 9);
    assert_eq!(inv.rules.len(), 9);
    let vowel_order: Vec<&str> = inv.vowels().iter().map(|s| s.ipa.as_str()).collect();
    assert_eq!(vowel_order, ["u", "o", "ʌ", "ɨ", "ɐ", "i", "e", "ɛ", "y"]);
}

#[test]
fn realized_allophones_pairs_rules_with_surface_segments() {
    let table = bundled::feature_table();
    let inv = korean();

    // Lenis /p/ voices between voiced segments.
    let p = &inv.get("p").unwrap().segment;
    let realized = inv.realized_allophones(p);
    assert!(!realized.is_empty());
    assert!(realized.iter().any(|(rule, seg)| {
        rule.transformations == ["voicing"] && seg.ipa == "b"
    }));
    // The paired segment carries its full feature vector.
    for (_, seg) in &realized {
        assert_eq!(seg.vector, table.get(&seg.ipa).unwrap().vector);
    }

    // A consonant with no rules yields an empty list, not an error.
    let h = &inv.get("h").unwrap().segment;
    assert!(inv.realized_allophones(h).is_empty());

    // Japanese /t/ palatalizes before /i/.
    let japanese =
        Inventory::parse(bundled::inventory_source("japanese").unwrap(), &table).unwrap();
    let t = &japanese.get("t").unwrap().segment;
    let realized = japanese.realized_allophones(t);
    assert_eq!(realized.len(), 1);
    let (rule, seg) = &realized[0];
    assert_eq!(rule.transformations, ["palatalization"]);
    assert!(matches!(&rule.post, Some(RuleContext::Exact(s)) if s.ipa == "i"));
    assert_eq!(seg.ipa, "tɕ");
}

#[test]
fn noninitial_flags_are_read() {
    let inv = korean();
    for ipa in ["m", "n", "l"] {
        assert!(!inv.get(ipa).unwrap().initial_ok, "{ipa} should be flagged");
    }
    for ipa in ["p", "s", "h", "ɾ"] {
        assert!(inv.get(ipa).unwrap().initial_ok, "{ipa} should be unflagged");
    }
}

#[test]
fn rule_contexts_resolve() {
    let inv = korean();
    // p | V | V | voicing | b
    let r = &inv.rules[0];
    assert_eq!(r.base.ipa, "p");
    assert!(matches!(r.pre, Some(RuleContext::AnyVowel)));
    assert!(matches!(r.post, Some(RuleContext::AnyVowel)));
    assert_eq!(r.transformations, ["voicing"]);
    assert_eq!(r.realized.ipa, "b");
    // s | - | y | palatalization | ɕ
    let r = inv.rules.iter().find(|r| r.base.ipa == "s").unwrap();
    assert!(r.pre.is_none());
    match &r.post {
        Some(RuleContext::Exact(seg)) => assert_eq!(seg.ipa, "y"),
        other => panic!("expected exact post-context, got {other:?}"),
    }
    // tɕ | V | y | voicing+palatalization | dʑ carries two transformations.
    let r = inv.rules.iter().find(|r| r.realized.ipa == "dʑ").unwrap();
    assert_eq!(r.transformations, ["voicing", "palatalization"]);
}

#[test]
fn serialization_round_trips() {
    let table = bundled::feature_table();
    for name in bundled::INVENTORY_NAMES {
        let text = bundled::inventory_source(name).unwrap();
        let inv = Inventory::parse(text, &table).unwrap();
        let again = Inventory::parse(&inv.serialize(), &table).unwrap();
        assert_eq!(inv, again, "round trip failed for `{name}`");
    }
}

// ── Validation errors ──────────────────────────────────────────────────────

fn parse(text: &str) -> Result<Inventory, InventoryError> {
    let table = bundled::feature_table();
    Inventory::parse(text, &table)
}

#[test]
fn missing_preamble_fields_are_rejected() {
    assert!(matches!(
        parse("epenthetic: i\n[segments]\ni\n"),
        Err(InventoryError::MissingLanguage)
    ));
    assert!(matches!(
        parse("language: x\n[segments]\ni\n"),
        Err(InventoryError::MissingEpenthetic)
    ));
}

#[test]
fn epenthetic_must_be_an_inventory_vowel() {
    assert!(matches!(
        parse("language: x\nepenthetic: u\n[segments]\ni\n"),
        Err(InventoryError::EpentheticNotInInventory { .. })
    ));
    assert!(matches!(
        parse("language: x\nepenthetic: t\n[segments]\ni\nt\n"),
        Err(InventoryError::EpentheticNotVowel { .. })
    ));
}

#[test]
fn segment_lines_are_validated() {
    let err = parse("language: x\nepenthetic: i\n[segments]\ni\nqq\n").unwrap_err();
    assert!(matches!(
        err,
        InventoryError::UnknownSegment { line: 5, .. }
    ));
    let err = parse("language: x\nepenthetic: i\n[segments]\ni\ni\n").unwrap_err();
    assert!(matches!(
        err,
        InventoryError::DuplicateSegment { line: 5, .. }
    ));
    let err = parse("language: x\nepenthetic: i\n[segments]\ni final\n").unwrap_err();
    assert!(matches!(err, InventoryError::BadFlag { line: 4, .. }));
    let err = parse("language: x\nstray\n").unwrap_err();
    assert!(matches!(err, InventoryError::UnexpectedLine { line: 2 }));
}

fn with_rule(rule: &str) -> Result<Inventory, InventoryError> {
    parse(&format!(
        "language: x\nepenthetic: i\n[segments]\ni\ny\np\nt\n[rules]\n{rule}\n"
    ))
}

#[test]
fn rules_are_validated_against_the_registry() {
    // Well-formed control case.
    assert!(with_rule("p | V | V | voicing | b").is_ok());
    // Field count.
    assert!(matches!(
        with_rule("p | V | voicing | b"),
        Err(InventoryError::BadRule { line: 9, .. })
    ));
    // A context is required somewhere.
    assert!(matches!(
        with_rule("p | - | - | voicing | b"),
        Err(InventoryError::MissingContext { line: 9 })
    ));
    // The base must be an inventory member, not just a table segment.
    assert!(matches!(
        with_rule("k | V | V | voicing | g"),
        Err(InventoryError::SegmentNotInInventory { line: 9, .. })
    ));
    // Transformation names come from the fixed registry.
    assert!(matches!(
        with_rule("p | V | V | lenition | b"),
        Err(InventoryError::UnknownTransformation { line: 9, .. })
    ));
    // At most two transformations per rule.
    assert!(matches!(
        with_rule("p | V | V | voicing+nasalization+aspiration | m"),
        Err(InventoryError::TooManyTransformations { line: 9, found: 3 })
    ));
}

#[test]
fn realized_segment_must_match_the_shifted_base() {
    // voicing writes [+voice]; t͈ is voiceless, so the claim is inconsistent.
    let err = with_rule("p | V | V | voicing | t͈").unwrap_err();
    match err {
        InventoryError::DeltaMismatch { line, feature } => {
            assert_eq!(line, 9);
            assert_eq!(feature, "voice");
        }
        other => panic!("expected delta mismatch, got {other:?}"),
    }
}
