//! End-to-end checks of the documented Korean approximations: thirteen
//! target phonemes whose top-ranked candidates are pinned, plus the gate
//! behavior for segments Korean covers exactly.

use cpa_core::bundled;
use cpa_core::composer::{approximate, Decision, Position, SearchConfig};

fn top_approximation(ipa: &str, position: Position) -> String {
    let table = bundled::feature_table();
    let inventory = bundled::korean(&table);
    let target = table.get(ipa).unwrap_or_else(|| panic!("`{ipa}` in table"));
    let result = approximate(
        table.spec(),
        &inventory,
        target,
        position,
        &SearchConfig::default(),
    );
    assert_eq!(
        result.decision,
        Decision::Composite,
        "`{ipa}` at {position:?} should be composite"
    );
    match target.class {
        cpa_core::phonfeat::SegmentClass::Vowel => {
            result.vowel_candidates[0].approximation()
        }
        cpa_core::phonfeat::SegmentClass::Consonant => {
            result.consonant_candidates[0].approximation()
        }
    }
}

#[test]
fn korean_vowel_approximations() {
    assert_eq!(top_approximation("ɔ", Position::Other), "/o/ + /ʌ/");
    assert_eq!(top_approximation("æ", Position::Other), "/ɛ/ + /ɐ/");
    assert_eq!(top_approximation("ə", Position::Other), "/ɨ/ + /ʌ/");
}

#[test]
fn korean_word_initial_consonant_approximations() {
    assert_eq!(top_approximation("b", Position::WordInitial), "/ɨ/ + /p/");
    assert_eq!(top_approximation("d", Position::WordInitial), "/ɨ/ + /t/");
    assert_eq!(top_approximation("g", Position::WordInitial), "/ɨ/ + /k/");
    assert_eq!(
        top_approximation("dʒ", Position::WordInitial),
        "/ɨ/ + /tɕ/ + /y/"
    );
    assert_eq!(top_approximation("l", Position::WordInitial), "/ɨl/ + /ɾ/");
    assert_eq!(top_approximation("m", Position::WordInitial), "/ɨm/ + /mᵇ/");
    assert_eq!(top_approximation("n", Position::WordInitial), "/ɨn/ + /nᵈ/");
}

#[test]
fn korean_noninitial_consonant_approximations() {
    assert_eq!(top_approximation("ʃ", Position::Other), "/s/ + /y/");
    assert_eq!(top_approximation("tʃ", Position::Other), "/tɕʰ/ + /y/");
    assert_eq!(top_approximation("dʒ", Position::Other), "/dʑ/ + /y/");
}

#[test]
fn korean_exact_matches() {
    let table = bundled::feature_table();
    let inventory = bundled::korean(&table);
    let config = SearchConfig::default();
    for (ipa, position) in [
        ("k", Position::Other),
        ("t", Position::Other),
        ("s", Position::Other),
        ("o", Position::Other),
        ("u", Position::Other),
        ("i", Position::Other),
        ("e", Position::Other),
        ("oʊ", Position::Other),
        ("eɪ", Position::Other),
        ("aɪ", Position::Other),
        ("n", Position::Other),
        ("l", Position::Other),
        ("m", Position::Other),
        ("j", Position::Other),
        ("h", Position::WordInitial),
        ("s", Position::WordInitial),
        ("k", Position::WordInitial),
    ] {
        let target = table.get(ipa).unwrap();
        let result = approximate(table.spec(), &inventory, target, position, &config);
        assert_eq!(
            result.decision,
            Decision::ExactMatch,
            "`{ipa}` at {position:?}"
        );
        assert!(result.vowel_candidates.is_empty());
        assert!(result.consonant_candidates.is_empty());
    }
}

#[test]
fn korean_skips() {
    let table = bundled::feature_table();
    let inventory = bundled::korean(&table);
    let config = SearchConfig::default();
    for ipa in ["f", "r", "θ"] {
        let target = table.get(ipa).unwrap();
        let result = approximate(table.spec(), &inventory, target, Position::Other, &config);
        assert_eq!(result.decision, Decision::Skip, "`{ipa}`");
        assert!(result.vowel_candidates.is_empty());
        assert!(result.consonant_candidates.is_empty());
    }
}

#[test]
fn korean_voiced_stop_allophones_medially() {
    // Between vowels the voicing rules land exactly on b, d, g: the base is
    // displayed as the realized allophone and nothing accompanies it.
    for (ipa, display) in [("b", "/b/"), ("d", "/d/"), ("g", "/g/"), ("v", "/b/"), ("z", "/d/"), ("ð", "/d/")] {
        assert_eq!(top_approximation(ipa, Position::Other), display, "`{ipa}`");
    }
}

#[test]
fn korean_lax_vowel_composites() {
    assert_eq!(top_approximation("ɪ", Position::Other), "/i/ + /ɨ/");
    assert_eq!(top_approximation("ʊ", Position::Other), "/u/ + /ɨ/");
}

#[test]
fn other_language_approximations() {
    let table = bundled::feature_table();
    let config = SearchConfig::default();

    let spanish = cpa_core::inventory::Inventory::parse(bundled::SPANISH_INV, &table).unwrap();
    let y = table.get("y").unwrap();
    let result = approximate(table.spec(), &spanish, y, Position::Other, &config);
    assert_eq!(result.decision, Decision::Composite);
    assert_eq!(result.vowel_candidates[0].approximation(), "/i/ + /u/");

    let mongolian = cpa_core::inventory::Inventory::parse(bundled::MONGOLIAN_INV, &table).unwrap();
    let turned_a = table.get("ɒ").unwrap();
    let result = approximate(table.spec(), &mongolian, turned_a, Position::Other, &config);
    assert_eq!(result.decision, Decision::Composite);
    assert_eq!(result.vowel_candidates[0].approximation(), "/ɔ/ + /a/");
    assert_eq!(result.vowel_candidates[0].cost, 3);

    let japanese = cpa_core::inventory::Inventory::parse(bundled::JAPANESE_INV, &table).unwrap();
    let tc = table.get("tɕ").unwrap();
    let result = approximate(table.spec(), &japanese, tc, Position::Other, &config);
    assert_eq!(result.decision, Decision::Composite);
    let top = &result.consonant_candidates[0];
    assert_eq!(top.approximation(), "/t/ + /i/");
    assert_eq!(top.residual, 0);
}

#[test]
fn sequences_and_residuals_for_pinned_rows() {
    let table = bundled::feature_table();
    let inventory = bundled::korean(&table);
    let config = SearchConfig::default();

    let dz = table.get("dʒ").unwrap();
    let result = approximate(table.spec(), &inventory, dz, Position::WordInitial, &config);
    let top = &result.consonant_candidates[0];
    assert_eq!(top.sequence(), ["ɨ", "tɕ", "y"]);
    assert_eq!(top.residual, 1);
    assert_eq!(top.realized.ipa, "dʑ");
    assert_eq!(top.transformations, ["voicing", "palatalization"]);

    let l = table.get("l").unwrap();
    let result = approximate(table.spec(), &inventory, l, Position::WordInitial, &config);
    let top = &result.consonant_candidates[0];
    assert_eq!(top.sequence(), ["ɨ", "l", "ɾ"]);
    assert_eq!(top.residual, 0);

    let o_slash = table.get("ɔ").unwrap();
    let result = approximate(table.spec(), &inventory, o_slash, Position::Other, &config);
    let top = &result.vowel_candidates[0];
    assert_eq!(top.cost, 2);
    assert_eq!((top.d1, top.d2), (1, 1));
    assert_eq!(top.sequence(), ["o", "ʌ"]);
}
