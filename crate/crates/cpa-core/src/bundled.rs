//! Data files compiled into the library: the feature table, segment
//! inventories, the Korean jamo cue map, and the study word list.

use crate::grapheme::JamoMap;
use crate::inventory::Inventory;
use crate::phonfeat::FeatureTable;

pub const FEATURES_CSV: &str = include_str!("../data/features.csv");
pub const KOREAN_INV: &str = include_str!("../data/korean.inv");
pub const SPANISH_INV: &str = include_str!("../data/spanish.inv");
pub const MONGOLIAN_INV: &str = include_str!("../data/mongolian.inv");
pub const JAPANESE_INV: &str = include_str!("../data/japanese.inv");
pub const KOREAN_JAMO: &str = include_str!("../data/korean.jamo");
pub const WORDS_TSV: &str = include_str!("../data/words.tsv");

/// The bundled feature table. Validity is covered by tests, so failure here
/// would mean a corrupted build.
pub fn feature_table() -> FeatureTable {
    FeatureTable::parse(FEATURES_CSV).expect("bundled feature table parses")
}

/// Source text for a bundled inventory, by language name.
pub fn inventory_source(name: &str) -> Option<&'static str> {
    match name {
        "korean" => Some(KOREAN_INV),
        "spanish" => Some(SPANISH_INV),
        "mongolian" => Some(MONGOLIAN_INV),
        "japanese" => Some(JAPANESE_INV),
        _ => None,
    }
}

/// Names of all bundled inventories.
pub const INVENTORY_NAMES: [&str; 4] = ["korean", "spanish", "mongolian", "japanese"];

/// The bundled Korean inventory, resolved against `table`.
pub fn korean(table: &FeatureTable) -> Inventory {
    Inventory::parse(KOREAN_INV, table).expect("bundled korean inventory parses")
}

/// The bundled Korean jamo cue map.
pub fn korean_jamo() -> JamoMap {
    JamoMap::parse(KOREAN_JAMO).expect("bundled korean jamo map parses")
}

/// Source text for a bundled jamo map, by language name.
pub fn jamo_source(name: &str) -> Option<&'static str> {
    match name {
        "korean" => Some(KOREAN_JAMO),
        _ => None,
    }
}

/// The bundled study words as (word, ipa) pairs.
pub fn words() -> alloc::vec::Vec<(&'static str, &'static str)> {
    WORDS_TSV
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.splitn(2, '\t');
            let word = it.next().expect("word column");
            let ipa = it.next().expect("ipa column");
            (word, ipa)
        })
        .collect()
}
