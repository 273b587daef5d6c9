//! Plain-text input formats: phone alignments, vowel boxes, transcripts,
//! and preference judgments. All are headered, comma- or tab-separated,
//! with `#` comment lines.

use anyhow::{bail, Context, Result};
use cpa_core::acoustics::{FormantBox, PhoneSegment};
use cpa_core::scoring::{FirstLabel, JudgeRecord, TargetSpec, Utterance, WinnerPick};

/// One alignment row: optional audio file plus the labeled span.
#[derive(Clone, Debug, PartialEq)]
pub struct AlignmentRow {
    pub file: Option<String>,
    pub segment: PhoneSegment,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn split_csv(line: &str) -> Vec<&str> {
    line.split(',').map(str::trim).collect()
}

/// Parses `phone,start,end` rows, or `file,phone,start,end` when the header
/// carries the leading file column.
pub fn parse_alignments(text: &str) -> Result<Vec<AlignmentRow>> {
    let mut lines = data_lines(text);
    let (_, header) = lines.next().context("alignment file is empty")?;
    let with_file = match split_csv(header).as_slice() {
        ["file", "phone", "start", "end"] => true,
        ["phone", "start", "end"] => false,
        other => bail!("bad alignment header {other:?}"),
    };
    let mut rows = Vec::new();
    for (lineno, line) in lines {
        let fields = split_csv(line);
        let expect = if with_file { 4 } else { 3 };
        if fields.len() != expect {
            bail!("alignment line {lineno}: expected {expect} fields, found {}", fields.len());
        }
        let (file, rest) = if with_file {
            (Some(fields[0].to_string()), &fields[1..])
        } else {
            (None, &fields[..])
        };
        let parse = |name: &str, v: &str| -> Result<f64> {
            v.parse()
                .with_context(|| format!("alignment line {lineno}: bad {name} `{v}`"))
        };
        let start_s = parse("start", rest[1])?;
        let end_s = parse("end", rest[2])?;
        // Negated so NaN bounds take the error path.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(end_s > start_s) {
            bail!("alignment line {lineno}: end {end_s} does not follow start {start_s}");
        }
        rows.push(AlignmentRow {
            file,
            segment: PhoneSegment {
                phone: rest[0].to_string(),
                start_s,
                end_s,
            },
        });
    }
    if rows.is_empty() {
        bail!("alignment file has no data rows");
    }
    Ok(rows)
}

/// Parses `vowel,f1_min,f1_max,f2_min,f2_max` rows.
pub fn parse_boxes(text: &str) -> Result<Vec<FormantBox>> {
    let mut lines = data_lines(text);
    let (_, header) = lines.next().context("box file is empty")?;
    if split_csv(header) != ["vowel", "f1_min", "f1_max", "f2_min", "f2_max"] {
        bail!("bad box header `{header}`");
    }
    let mut boxes = Vec::new();
    for (lineno, line) in lines {
        let fields = split_csv(line);
        if fields.len() != 5 {
            bail!("box line {lineno}: expected 5 fields, found {}", fields.len());
        }
        let num = |name: &str, v: &str| -> Result<f64> {
            v.parse()
                .with_context(|| format!("box line {lineno}: bad {name} `{v}`"))
        };
        let b = FormantBox {
            vowel: fields[0].to_string(),
            f1_min: num("f1_min", fields[1])?,
            f1_max: num("f1_max", fields[2])?,
            f2_min: num("f2_min", fields[3])?,
            f2_max: num("f2_max", fields[4])?,
        };
        if b.f1_min > b.f1_max || b.f2_min > b.f2_max {
            bail!("box line {lineno}: inverted bounds for `{}`", b.vowel);
        }
        if boxes.iter().any(|x: &FormantBox| x.vowel == b.vowel) {
            bail!("box line {lineno}: duplicate vowel `{}`", b.vowel);
        }
        boxes.push(b);
    }
    if boxes.is_empty() {
        bail!("box file has no data rows");
    }
    Ok(boxes)
}

/// Parses transcript rows: `id<TAB>reference<TAB>decoded<TAB>targets`,
/// transcripts space-separated, targets space-separated `index:symbol`.
pub fn parse_transcripts(text: &str) -> Result<Vec<Utterance>> {
    let mut lines = data_lines(text);
    let (_, header) = lines.next().context("transcript file is empty")?;
    if header.split('\t').collect::<Vec<_>>() != ["id", "reference", "decoded", "targets"] {
        bail!("bad transcript header `{header}`");
    }
    let mut utterances = Vec::new();
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            bail!("transcript line {lineno}: expected 4 tab-separated fields, found {}", fields.len());
        }
        let symbols = |s: &str| -> Vec<String> {
            s.split_whitespace().map(str::to_string).collect()
        };
        let mut targets = Vec::new();
        for item in fields[3].split_whitespace() {
            let (index, symbol) = item
                .split_once(':')
                .with_context(|| format!("transcript line {lineno}: bad target `{item}`"))?;
            let index: usize = index
                .parse()
                .with_context(|| format!("transcript line {lineno}: bad target index `{index}`"))?;
            targets.push(TargetSpec {
                index,
                symbol: symbol.to_string(),
            });
        }
        utterances.push(Utterance {
            id: fields[0].to_string(),
            reference: symbols(fields[1]),
            decoded: symbols(fields[2]),
            targets,
        });
    }
    if utterances.is_empty() {
        bail!("transcript file has no data rows");
    }
    Ok(utterances)
}

/// Parses `word,participant,first,winner` rows with first in {cpa, other}
/// and winner in {first, second}.
pub fn parse_judgments(text: &str) -> Result<Vec<JudgeRecord>> {
    let mut lines = data_lines(text);
    let (_, header) = lines.next().context("judgment file is empty")?;
    if split_csv(header) != ["word", "participant", "first", "winner"] {
        bail!("bad judgment header `{header}`");
    }
    let mut records = Vec::new();
    for (lineno, line) in lines {
        let fields = split_csv(line);
        if fields.len() != 4 {
            bail!("judgment line {lineno}: expected 4 fields, found {}", fields.len());
        }
        let first = match fields[2] {
            "cpa" => FirstLabel::Cpa,
            "other" => FirstLabel::Other,
            v => bail!("judgment line {lineno}: first must be cpa or other, found `{v}`"),
        };
        let winner = match fields[3] {
            "first" => WinnerPick::First,
            "second" => WinnerPick::Second,
            v => bail!("judgment line {lineno}: winner must be first or second, found `{v}`"),
        };
        records.push(JudgeRecord {
            word: fields[0].to_string(),
            participant: fields[1].to_string(),
            first,
            winner,
        });
    }
    if records.is_empty() {
        bail!("judgment file has no data rows");
    }
    Ok(records)
}

/// One per-token output row for the formants command.
#[derive(Clone, Debug)]
pub struct TokenRow {
    pub file: String,
    pub vowel: String,
    pub frames: usize,
    pub in_box: bool,
}

/// Renders token rows as `file,vowel,frames,in_box` CSV.
pub fn token_csv(rows: &[TokenRow]) -> String {
    let mut out = String::from("file,vowel,frames,in_box\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.file, r.vowel, r.frames, r.in_box));
    }
    out
}
