//! The render command: approximation report JSON in, grapheme cues out.

use anyhow::{bail, Result};
use cpa_core::composer::Decision;
use cpa_core::grapheme::{render_cue, RenderConsonant, RenderItem};
use cpa_core::report::{ApproximationReport, CandidateReport, CueReport, SegmentReport};

use crate::config::Settings;

/// Rebuilds the renderer's view of one segment from its report form.
fn render_item(segment: &SegmentReport) -> Result<RenderItem> {
    let decision = match segment.decision.as_str() {
        "exact_match" => Decision::ExactMatch,
        "composite" => Decision::Composite,
        "skip" => Decision::Skip,
        other => bail!("segment `{}`: unknown decision `{other}`", segment.ipa),
    };
    let mut vowel = None;
    let mut consonant = None;
    match segment.candidates.first() {
        Some(CandidateReport::Vowel { v1, v2, .. }) => {
            vowel = Some((v1.clone(), v2.clone()));
        }
        Some(CandidateReport::Consonant {
            epenthetic,
            base,
            triggers,
            ..
        }) => {
            consonant = Some(RenderConsonant {
                epenthetic: epenthetic.clone(),
                base: base.clone(),
                triggers: triggers.clone(),
            });
        }
        None => {}
    }
    if decision == Decision::Composite && vowel.is_none() && consonant.is_none() {
        bail!("segment `{}`: composite without candidates", segment.ipa);
    }
    Ok(RenderItem {
        ipa: segment.ipa.clone(),
        decision,
        vowel,
        consonant,
    })
}

/// Renders every word in an approximation report.
pub fn run(settings: &Settings, report: &ApproximationReport) -> Result<Vec<CueReport>> {
    let mut cues = Vec::new();
    for word in &report.words {
        let items = word
            .segments
            .iter()
            .map(render_item)
            .collect::<Result<Vec<_>>>()?;
        let cue = render_cue(&word.word, &items, &settings.jamo)
            .map_err(|e| anyhow::anyhow!("word `{}`: {e}", word.word))?;
        cues.push(CueReport::from(&cue));
    }
    Ok(cues)
}
