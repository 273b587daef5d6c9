//! Settings resolution: command line flags override the optional TOML
//! config file, which overrides built-in defaults and bundled data.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use cpa_core::acoustics::{FormantBand, TrackConfig};
use cpa_core::bundled;
use cpa_core::composer::{CostMode, SearchConfig};
use cpa_core::grapheme::JamoMap;
use cpa_core::inventory::Inventory;
use cpa_core::phonfeat::FeatureTable;
use serde::Deserialize;

// ── File config ────────────────────────────────────────────────────────────

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub table: Option<PathBuf>,
    pub inventory: Option<String>,
    pub jamo: Option<String>,
    #[serde(default)]
    pub search: SearchSection,
    #[serde(default)]
    pub formants: FormantsSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub residual_threshold: Option<u32>,
    pub cost_mode: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormantsSection {
    pub window_s: Option<f64>,
    pub hop_s: Option<f64>,
    pub pre_emphasis: Option<f64>,
    pub order: Option<usize>,
    pub min_hz: Option<f64>,
    pub max_hz: Option<f64>,
    pub max_bandwidth_hz: Option<f64>,
    pub median_window: Option<usize>,
    pub min_consecutive: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

// ── Command line overrides ─────────────────────────────────────────────────

/// Global flags, already parsed; `None` means "not given".
#[derive(Debug, Default)]
pub struct Overrides {
    pub config: Option<PathBuf>,
    pub table: Option<PathBuf>,
    pub inventory: Option<String>,
    pub jamo: Option<String>,
    pub residual_threshold: Option<u32>,
    pub cost_mode: Option<CostMode>,
}

// ── Resolved settings ──────────────────────────────────────────────────────

/// Everything a command needs, fully loaded.
pub struct Settings {
    pub table: FeatureTable,
    pub inventory: Inventory,
    pub jamo: JamoMap,
    pub search: SearchConfig,
    pub track: TrackConfig,
    pub min_consecutive: usize,
}

fn parse_cost_mode(name: &str) -> Result<CostMode> {
    Ok(match name {
        "sum" => CostMode::Sum,
        "max" => CostMode::Max,
        "lexicographic" => CostMode::Lexicographic,
        other => bail!("unknown cost mode `{other}` (expected sum, max, or lexicographic)"),
    })
}

/// Loads an inventory by bundled name or file path.
fn load_inventory(spec: &str, table: &FeatureTable) -> Result<Inventory> {
    let text: String = match bundled::inventory_source(spec) {
        Some(text) => text.to_string(),
        None => fs::read_to_string(spec)
            .with_context(|| format!("`{spec}` is not a bundled inventory or a readable file"))?,
    };
    Inventory::parse(&text, table).with_context(|| format!("parsing inventory `{spec}`"))
}

/// Loads a jamo map by bundled name or file path.
fn load_jamo(spec: &str) -> Result<JamoMap> {
    let text: String = match bundled::jamo_source(spec) {
        Some(text) => text.to_string(),
        None => fs::read_to_string(spec)
            .with_context(|| format!("`{spec}` is not a bundled jamo map or a readable file"))?,
    };
    JamoMap::parse(&text).with_context(|| format!("parsing jamo map `{spec}`"))
}

impl Settings {
    pub fn resolve(overrides: &Overrides) -> Result<Self> {
        let file = match &overrides.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };

        let table = match overrides.table.as_ref().or(file.table.as_ref()) {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading feature table {}", path.display()))?;
                FeatureTable::parse(&text)
                    .with_context(|| format!("parsing feature table {}", path.display()))?
            }
            None => bundled::feature_table(),
        };

        let inventory_spec = overrides
            .inventory
            .clone()
            .or_else(|| file.inventory.clone())
            .unwrap_or_else(|| "korean".to_string());
        let inventory = load_inventory(&inventory_spec, &table)?;

        let jamo_spec = overrides
            .jamo
            .clone()
            .or_else(|| file.jamo.clone())
            .unwrap_or_else(|| "korean".to_string());
        let jamo = load_jamo(&jamo_spec)?;

        let default_search = SearchConfig::default();
        let file_cost_mode = file
            .search
            .cost_mode
            .as_deref()
            .map(parse_cost_mode)
            .transpose()?;
        let search = SearchConfig {
            residual_threshold: overrides
                .residual_threshold
                .or(file.search.residual_threshold)
                .unwrap_or(default_search.residual_threshold),
            cost_mode: overrides
                .cost_mode
                .or(file_cost_mode)
                .unwrap_or(default_search.cost_mode),
        };

        let ft = &file.formants;
        let default_track = TrackConfig::default();
        let track = TrackConfig {
            window_s: ft.window_s.unwrap_or(default_track.window_s),
            hop_s: ft.hop_s.unwrap_or(default_track.hop_s),
            pre_emphasis: ft.pre_emphasis.unwrap_or(default_track.pre_emphasis),
            order: ft.order.unwrap_or(default_track.order),
            band: FormantBand {
                min_hz: ft.min_hz.unwrap_or(default_track.band.min_hz),
                max_hz: ft.max_hz.unwrap_or(default_track.band.max_hz),
                max_bandwidth_hz: ft
                    .max_bandwidth_hz
                    .unwrap_or(default_track.band.max_bandwidth_hz),
            },
            median_window: ft.median_window.unwrap_or(default_track.median_window),
        };
        let min_consecutive = ft.min_consecutive.unwrap_or(2);

        Ok(Settings {
            table,
            inventory,
            jamo,
            search,
            track,
            min_consecutive,
        })
    }
}
