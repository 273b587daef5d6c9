//! Report DTO serialization: stable field order, tags, and rounding.

use cpa_core::bundled;
use cpa_core::composer::{approximate, Position, SearchConfig};
use cpa_core::report::{
    round3, segment_report, ApproximationReport, CandidateReport, ScoreReport, TargetScore,
    WinRateReport, WordReport,
};

#[test]
fn rounding_keeps_three_decimals() {
    assert_eq!(round3(33.333333), 33.333);
    assert_eq!(round3(66.666666), 66.667);
    assert_eq!(round3(50.0), 50.0);
    // Halfway cases round away from zero.
    assert_eq!(round3(-1.0005), -1.001);
    assert_eq!(round3(1.0005), 1.001);
    assert_eq!(round3(0.0004999), 0.0);
}

#[test]
fn score_report_rounds_in_place() {
    let report = ScoreReport {
        targets: vec![TargetScore {
            symbol: "ɔ".into(),
            instances: 3,
            correct: 2,
            accuracy: 200.0 / 3.0,
        }],
        overall_accuracy: 200.0 / 3.0,
    }
    .rounded();
    assert_eq!(report.targets[0].accuracy, 66.667);
    assert_eq!(report.overall_accuracy, 66.667);
}

#[test]
fn win_rate_report_keeps_empty_overall() {
    let report = WinRateReport {
        cells: vec![],
        per_word: vec![],
        overall_rate: None,
    }
    .rounded();
    let json = serde_json::to_string(&report).unwrap();
    assert!(json.contains("\"overall_rate\":null"));
}

fn vowel_segment_json() -> String {
    let table = bundled::feature_table();
    let inventory = bundled::korean(&table);
    let target = table.get("ɔ").unwrap();
    let result = approximate(
        table.spec(),
        &inventory,
        target,
        Position::Other,
        &SearchConfig::default(),
    );
    serde_json::to_string(&segment_report(&result)).unwrap()
}

#[test]
fn segment_fields_serialize_in_declaration_order() {
    let json = vowel_segment_json();
    let order = ["\"ipa\"", "\"position\"", "\"decision\"", "\"candidates\""];
    let mut last = 0;
    for key in order {
        let at = json.find(key).unwrap_or_else(|| panic!("missing {key}"));
        assert!(at >= last, "{key} out of order in {json}");
        last = at;
    }
    assert!(json.contains("\"kind\":\"vowel\""));
    assert!(json.contains("\"position\":\"other\""));
    assert!(json.contains("\"decision\":\"composite\""));
}

#[test]
fn candidate_reports_round_trip() {
    let json = vowel_segment_json();
    let report: cpa_core::report::SegmentReport = serde_json::from_str(&json).unwrap();
    match &report.candidates[0] {
        CandidateReport::Vowel {
            v1,
            v2,
            cost,
            approximation,
            sequence,
        } => {
            assert_eq!(v1, "o");
            assert_eq!(v2, "ʌ");
            assert_eq!(*cost, 2);
            assert_eq!(approximation, "/o/ + /ʌ/");
            assert_eq!(sequence, &["o", "ʌ"]);
        }
        other => panic!("expected a vowel candidate, got {other:?}"),
    }
}

#[test]
fn consonant_candidates_carry_the_rule_chain() {
    let table = bundled::feature_table();
    let inventory = bundled::korean(&table);
    let target = table.get("dʒ").unwrap();
    let result = approximate(
        table.spec(),
        &inventory,
        target,
        Position::WordInitial,
        &SearchConfig::default(),
    );
    let report = segment_report(&result);
    match &report.candidates[0] {
        CandidateReport::Consonant {
            epenthetic,
            base,
            triggers,
            realized,
            rule,
            residual,
            sequence,
            ..
        } => {
            assert_eq!(epenthetic, &["ɨ"]);
            assert_eq!(base, "tɕ");
            assert_eq!(triggers, &["y"]);
            assert_eq!(realized, "dʑ");
            assert_eq!(rule, "voicing+palatalization");
            assert_eq!(*residual, 1);
            assert_eq!(sequence, &["ɨ", "tɕ", "y"]);
        }
        other => panic!("expected a consonant candidate, got {other:?}"),
    }
}

#[test]
fn full_reports_round_trip_through_json() {
    let table = bundled::feature_table();
    let inventory = bundled::korean(&table);
    let config = SearchConfig::default();
    let mut words = Vec::new();
    for (word, ipa) in bundled::words().into_iter().take(3) {
        let segments = table.parse_ipa(ipa).unwrap();
        let reports = segments
            .iter()
            .enumerate()
            .map(|(i, seg)| {
                let position = if i == 0 {
                    Position::WordInitial
                } else {
                    Position::Other
                };
                segment_report(&approximate(table.spec(), &inventory, seg, position, &config))
            })
            .collect();
        words.push(WordReport {
            word: word.to_string(),
            segments: reports,
        });
    }
    let report = ApproximationReport {
        language: inventory.language.clone(),
        words,
    };
    let json = serde_json::to_string_pretty(&report).unwrap();
    let back: ApproximationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(report, back);
}
