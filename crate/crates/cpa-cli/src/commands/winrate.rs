//! The winrate command: judgment file in, preference report out.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use cpa_core::report::WinRateReport;
use cpa_core::scoring::win_rates;

use crate::formats::parse_judgments;

pub fn run(judgments: &Path) -> Result<WinRateReport> {
    let text = fs::read_to_string(judgments)
        .with_context(|| format!("reading judgments {}", judgments.display()))?;
    let records = parse_judgments(&text)?;
    let report = win_rates(&records)?;
    Ok(report.rounded())
}
