//! End-to-end tests that drive the compiled `cpa` binary.

use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use cpa_core::acoustics::synthesize_vowel;
use serde_json::Value;
use tempfile::tempdir;

// ── Harness ──────────────────────────────────────────────────────────────────

fn cpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpa"))
        .args(args)
        .output()
        .expect("spawn cpa")
}

fn cpa_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cpa"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn cpa");
    child
        .stdin
        .take()
        .expect("stdin handle")
        .write_all(stdin.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("wait for cpa")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "cpa failed: {}",
        stderr_str(out)
    );
    serde_json::from_str(&stdout_str(out)).expect("stdout is JSON")
}

fn write_tone(path: &Path, formants: &[(f64, f64)], duration_s: f64) {
    let mut samples = synthesize_vowel(formants, 100.0, 16_000.0, duration_s);
    // Resonators have gain; scale below full range so PCM16 never clips.
    let peak = samples.iter().fold(0.0f64, |m, s| m.max(s.abs())).max(1e-12);
    for s in &mut samples {
        *s *= 0.6 / peak;
    }
    cpa_cli::wav::write_wav(path, &samples, 16_000).expect("write wav");
}

// ── Exit codes ───────────────────────────────────────────────────────────────

#[test]
fn help_and_version_exit_zero() {
    assert!(cpa(&["--help"]).status.success());
    assert!(cpa(&["--version"]).status.success());
    assert!(cpa(&["approximate", "--help"]).status.success());
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = cpa(&["--bogus-flag", "approximate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_input_file_is_an_operational_error() {
    let out = cpa(&["score-phonemes", "--transcripts", "/no/such/file.tsv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("/no/such/file.tsv"));
}

#[test]
fn bad_report_json_is_an_operational_error() {
    let out = cpa_stdin(&["render"], "not json");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("approximation report"));
}

// ── Approximate ──────────────────────────────────────────────────────────────

#[test]
fn bundled_corpus_is_the_default_and_output_is_deterministic() {
    let a = cpa(&["approximate"]);
    let b = cpa(&["approximate"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let report = json(&a);
    assert_eq!(report["language"], "korean");
    assert_eq!(report["words"].as_array().unwrap().len(), 18);
    assert_eq!(report["words"][0]["word"], "dawn");
}

#[test]
fn word_arguments_support_labels_and_initial_markers() {
    let out = json(&cpa(&["approximate", "jacket=dʒækɪt*", "dɔn"]));
    let words = out["words"].as_array().unwrap();
    assert_eq!(words.len(), 2);

    assert_eq!(words[0]["word"], "jacket");
    let segs = words[0]["segments"].as_array().unwrap();
    assert_eq!(segs[0]["ipa"], "dʒ");
    assert_eq!(segs[0]["position"], "word_initial");
    assert_eq!(segs[1]["position"], "other");
    assert_eq!(
        segs[0]["candidates"][0]["sequence"],
        serde_json::json!(["ɨ", "tɕ", "y"])
    );

    // A bare argument is its own label.
    assert_eq!(words[1]["word"], "dɔn");
}

#[test]
fn single_segment_words_honor_the_initial_marker() {
    let out = json(&cpa(&["approximate", "m*", "m"]));
    let words = out["words"].as_array().unwrap();
    assert_eq!(words[0]["segments"][0]["position"], "word_initial");
    assert_eq!(words[1]["segments"][0]["position"], "other");
}

#[test]
fn words_file_and_arguments_combine() {
    let dir = tempdir().unwrap();
    let words = dir.path().join("words.tsv");
    fs::write(&words, "# comment\nloan\tloʊn*\n\nbowl\tboʊl*\n").unwrap();

    let out = json(&cpa(&[
        "approximate",
        "dawn=dɔn*",
        "--words-file",
        words.to_str().unwrap(),
    ]));
    let labels: Vec<&str> = out["words"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["word"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["dawn", "loan", "bowl"]);
}

#[test]
fn candidates_are_truncated_unless_all_requested() {
    let best = json(&cpa(&["approximate", "ae=æ"]));
    assert_eq!(
        best["words"][0]["segments"][0]["candidates"]
            .as_array()
            .unwrap()
            .len(),
        1
    );

    let all = json(&cpa(&["approximate", "ae=æ", "--all-candidates"]));
    let n = all["words"][0]["segments"][0]["candidates"]
        .as_array()
        .unwrap()
        .len();
    assert!(n > 1, "expected a ranked list, got {n}");
}

#[test]
fn unknown_ipa_symbol_names_the_word() {
    let out = cpa(&["approximate", "bad=pxq"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("bad"));
}

// ── Render ───────────────────────────────────────────────────────────────────

#[test]
fn render_reads_a_file_or_stdin_identically() {
    let dir = tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = cpa(&[
        "approximate",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let from_file = cpa(&["render", "--input", report.to_str().unwrap()]);
    let from_stdin = cpa_stdin(&["render"], &fs::read_to_string(&report).unwrap());
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_stdin.stdout);

    let cues = json(&from_file);
    let first = &cues.as_array().unwrap()[0];
    assert_eq!(first["word"], "dawn");
    assert_eq!(first["fallback"], "(으)ㄷㅗㅓㄴ");
    assert!(first["blocks"].is_array());
}

#[test]
fn render_text_mode_emits_fallback_lines() {
    let report = stdout_str(&cpa(&["approximate"]));
    let out = cpa_stdin(&["render", "--text"], &report);
    assert!(out.status.success());

    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 18);
    assert_eq!(lines[0], "dawn\t(으)ㄷㅗㅓㄴ");
    assert!(lines.contains(&"loan\t(을)론"));
    assert!(lines.contains(&"ghost\t(으)고스드"));
    assert!(lines.contains(&"bowl\t(으)볼"));
}

// ── Formants ─────────────────────────────────────────────────────────────────

#[test]
fn formants_single_file_reports_rates_and_tokens() {
    let dir = tempdir().unwrap();
    let wav = dir.path().join("token.wav");
    write_tone(&wav, &[(700.0, 80.0), (1150.0, 90.0)], 0.5);

    let align = dir.path().join("align.csv");
    fs::write(&align, "phone,start,end\nɔ,0.05,0.45\n").unwrap();
    let tokens = dir.path().join("tokens.csv");

    let out = json(&cpa(&[
        "formants",
        "--audio",
        wav.to_str().unwrap(),
        "--alignments",
        align.to_str().unwrap(),
        "--tokens-csv",
        tokens.to_str().unwrap(),
    ]));
    assert_eq!(out["min_consecutive"], 2);
    assert_eq!(out["vowels"][0]["vowel"], "ɔ");
    assert_eq!(out["vowels"][0]["tokens"], 1);
    assert_eq!(out["vowels"][0]["in_box"], 1);
    assert_eq!(out["vowels"][0]["rate"], 100.0);

    let csv = fs::read_to_string(&tokens).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("file,vowel,frames,in_box"));
    let row = lines.next().unwrap();
    assert!(row.ends_with(",ɔ,38,true"), "unexpected row {row}");
}

#[test]
fn formants_parallel_and_sequential_agree_over_a_directory() {
    let dir = tempdir().unwrap();
    write_tone(&dir.path().join("a.wav"), &[(700.0, 80.0), (1150.0, 90.0)], 0.4);
    write_tone(&dir.path().join("b.wav"), &[(550.0, 80.0), (1600.0, 90.0)], 0.4);

    let align = dir.path().join("align.csv");
    fs::write(
        &align,
        "file,phone,start,end\na.wav,ɔ,0.05,0.35\nb.wav,ɔ,0.05,0.35\n",
    )
    .unwrap();

    let base = [
        "formants",
        "--audio",
        dir.path().to_str().unwrap(),
        "--alignments",
        align.to_str().unwrap(),
    ];
    let parallel = cpa(&base);
    let mut seq_args = base.to_vec();
    seq_args.push("--sequential");
    let sequential = cpa(&seq_args);
    assert!(parallel.status.success());
    assert_eq!(parallel.stdout, sequential.stdout);

    // The second token sits far above the ɔ box in F2.
    let out = json(&parallel);
    assert_eq!(out["vowels"][0]["tokens"], 2);
    assert_eq!(out["vowels"][0]["in_box"], 1);
    assert_eq!(out["vowels"][0]["rate"], 50.0);
}

#[test]
fn formants_validates_audio_shape_against_the_file_column() {
    let dir = tempdir().unwrap();
    let wav = dir.path().join("token.wav");
    write_tone(&wav, &[(700.0, 80.0)], 0.2);

    let with_file = dir.path().join("with_file.csv");
    fs::write(&with_file, "file,phone,start,end\ntoken.wav,ɔ,0.0,0.2\n").unwrap();
    let out = cpa(&[
        "formants",
        "--audio",
        wav.to_str().unwrap(),
        "--alignments",
        with_file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("single file"));

    let without = dir.path().join("without.csv");
    fs::write(&without, "phone,start,end\nɔ,0.0,0.2\n").unwrap();
    let out = cpa(&[
        "formants",
        "--audio",
        dir.path().to_str().unwrap(),
        "--alignments",
        without.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("file column"));
}

#[test]
fn formants_accepts_a_custom_box_file() {
    let dir = tempdir().unwrap();
    let wav = dir.path().join("token.wav");
    write_tone(&wav, &[(700.0, 80.0), (1150.0, 90.0)], 0.4);

    let align = dir.path().join("align.csv");
    fs::write(&align, "phone,start,end\nɔ,0.05,0.35\n").unwrap();

    // A box placed away from the synthesized formants: zero in-box tokens.
    let boxes = dir.path().join("boxes.csv");
    fs::write(
        &boxes,
        "vowel,f1_min,f1_max,f2_min,f2_max\nɔ,200,400,2000,3000\n",
    )
    .unwrap();

    let out = json(&cpa(&[
        "formants",
        "--audio",
        wav.to_str().unwrap(),
        "--alignments",
        align.to_str().unwrap(),
        "--boxes",
        boxes.to_str().unwrap(),
    ]));
    assert_eq!(out["vowels"][0]["in_box"], 0);
    assert_eq!(out["vowels"][0]["rate"], 0.0);
}

// ── Scoring ──────────────────────────────────────────────────────────────────

#[test]
fn score_phonemes_reports_per_target_accuracy() {
    let dir = tempdir().unwrap();
    let tsv = dir.path().join("transcripts.tsv");
    fs::write(
        &tsv,
        "id\treference\tdecoded\ttargets\n\
         u1\td ɔ n\td ɔ n\t1:ɔ\n\
         u2\td ɔ n\td o n\t1:ɔ\n\
         u3\tb oʊ l\tb oʊ l\t1:oʊ\n",
    )
    .unwrap();

    let out = json(&cpa(&["score-phonemes", "--transcripts", tsv.to_str().unwrap()]));
    let targets = out["targets"].as_array().unwrap();
    assert_eq!(targets.len(), 2);
    assert_eq!(targets[0]["symbol"], "oʊ");
    assert_eq!(targets[0]["accuracy"], 100.0);
    assert_eq!(targets[1]["symbol"], "ɔ");
    assert_eq!(targets[1]["accuracy"], 50.0);
    // Overall pools instances, not per-target rates: 2 of 3 correct.
    assert_eq!(out["overall_accuracy"], 66.667);
}

#[test]
fn winrate_excludes_unbalanced_cells_from_the_mean() {
    let dir = tempdir().unwrap();
    let csv = dir.path().join("judgments.csv");
    fs::write(
        &csv,
        "word,participant,first,winner\n\
         dawn,p1,cpa,first\n\
         dawn,p1,other,second\n\
         dawn,p2,cpa,first\n\
         dawn,p2,cpa,second\n",
    )
    .unwrap();

    let out = json(&cpa(&["winrate", "--judgments", csv.to_str().unwrap()]));
    let cells = out["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 2);
    assert_eq!(cells[0]["balanced"], true);
    assert_eq!(cells[0]["rate"], 100.0);
    assert_eq!(cells[1]["balanced"], false);
    // Only the balanced cell counts toward the means.
    assert_eq!(out["per_word"][0]["rate"], 100.0);
    assert_eq!(out["overall_rate"], 100.0);
}

// ── Settings resolution ──────────────────────────────────────────────────────

#[test]
fn config_file_overrides_defaults_and_flags_override_the_config() {
    let dir = tempdir().unwrap();
    let config = dir.path().join("cpa.toml");
    fs::write(&config, "[search]\nresidual_threshold = 0\n").unwrap();

    // Default threshold admits a residual-1 candidate for word-initial dʒ.
    let default = json(&cpa(&["approximate", "x=dʒ*"]));
    assert_eq!(default["words"][0]["segments"][0]["decision"], "composite");

    // The config tightens the threshold to zero: nothing survives.
    let tightened = json(&cpa(&[
        "--config",
        config.to_str().unwrap(),
        "approximate",
        "x=dʒ*",
    ]));
    assert_eq!(tightened["words"][0]["segments"][0]["decision"], "skip");

    // A flag beats the config and restores the candidate.
    let restored = json(&cpa(&[
        "--config",
        config.to_str().unwrap(),
        "--residual-threshold",
        "2",
        "approximate",
        "x=dʒ*",
    ]));
    assert_eq!(restored["words"][0]["segments"][0]["decision"], "composite");
}

#[test]
fn bundled_resources_load_from_explicit_paths_too() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../cpa-core/data");
    let by_path = cpa(&[
        "--table",
        root.join("features.csv").to_str().unwrap(),
        "--inventory",
        root.join("korean.inv").to_str().unwrap(),
        "--jamo",
        root.join("korean.jamo").to_str().unwrap(),
        "approximate",
    ]);
    let by_name = cpa(&["--inventory", "korean", "--jamo", "korean", "approximate"]);
    assert!(by_path.status.success());
    assert_eq!(by_path.stdout, by_name.stdout);
}

#[test]
fn unknown_inventory_name_is_an_operational_error() {
    let out = cpa(&["--inventory", "klingon", "approximate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("klingon"));
}

#[test]
fn alternate_inventories_change_the_language_tag() {
    let out = json(&cpa(&["--inventory", "japanese", "approximate", "dawn=dɔn*"]));
    assert_eq!(out["language"], "japanese");
}
