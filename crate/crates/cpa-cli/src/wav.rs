//! Minimal RIFF/WAVE support: 16-bit PCM, mono.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

/// Reads a mono 16-bit PCM file as samples in [-1, 1] plus the sample rate.
pub fn read_wav(path: &Path) -> Result<(Vec<f64>, u32)> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let fail = |reason: &str| anyhow::anyhow!("{}: {reason}", path.display());
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        bail!(fail("not a RIFF/WAVE file"));
    }

    let mut sample_rate: Option<u32> = None;
    let mut data: Option<&[u8]> = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_end = match (pos + 8).checked_add(size) {
            Some(end) if end <= bytes.len() => end,
            _ => bail!(fail("truncated chunk")),
        };
        let body = &bytes[pos + 8..body_end];
        match id {
            b"fmt " => {
                if body.len() < 16 {
                    bail!(fail("fmt chunk too short"));
                }
                let format = u16::from_le_bytes(body[0..2].try_into().unwrap());
                let channels = u16::from_le_bytes(body[2..4].try_into().unwrap());
                let rate = u32::from_le_bytes(body[4..8].try_into().unwrap());
                let bits = u16::from_le_bytes(body[14..16].try_into().unwrap());
                if format != 1 {
                    bail!(fail("only PCM (format 1) is supported"));
                }
                if channels != 1 {
                    bail!(fail("only mono audio is supported"));
                }
                if bits != 16 {
                    bail!(fail("only 16-bit samples are supported"));
                }
                sample_rate = Some(rate);
            }
            b"data" => data = Some(body),
            _ => {}
        }
        // Chunks are word-aligned.
        pos += 8 + size + (size & 1);
    }

    let sample_rate = sample_rate.ok_or_else(|| fail("missing fmt chunk"))?;
    let data = data.ok_or_else(|| fail("missing data chunk"))?;
    let samples = data
        .chunks_exact(2)
        .map(|b| f64::from(i16::from_le_bytes([b[0], b[1]])) / 32768.0)
        .collect();
    Ok((samples, sample_rate))
}

/// Writes samples (clamped to [-1, 1]) as a mono 16-bit PCM file.
pub fn write_wav(path: &Path, samples: &[f64], sample_rate: u32) -> Result<()> {
    let data_len = (samples.len() * 2) as u32;
    let mut bytes = Vec::with_capacity(44 + samples.len() * 2);
    bytes.extend_from_slice(b"RIFF");
    bytes.extend_from_slice(&(36 + data_len).to_le_bytes());
    bytes.extend_from_slice(b"WAVE");
    bytes.extend_from_slice(b"fmt ");
    bytes.extend_from_slice(&16u32.to_le_bytes());
    bytes.extend_from_slice(&1u16.to_le_bytes());
    bytes.extend_from_slice(&1u16.to_le_bytes());
    bytes.extend_from_slice(&sample_rate.to_le_bytes());
    bytes.extend_from_slice(&(sample_rate * 2).to_le_bytes());
    bytes.extend_from_slice(&2u16.to_le_bytes());
    bytes.extend_from_slice(&16u16.to_le_bytes());
    bytes.extend_from_slice(b"data");
    bytes.extend_from_slice(&data_len.to_le_bytes());
    for &s in samples {
        let clamped = s.clamp(-1.0, 1.0);
        bytes.extend_from_slice(&((clamped * 32767.0).round() as i16).to_le_bytes());
    }
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}
