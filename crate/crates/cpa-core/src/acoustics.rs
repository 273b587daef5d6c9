//! LPC formant analysis and in-box rates.
//!
//! Pipeline per frame: pre-emphasis, Hamming window, autocorrelation,
//! Levinson-Durbin recursion, then formants from the roots of the prediction
//! polynomial. Segment tracking drops frames with fewer than two usable
//! formants and median-smooths F1/F2. A token counts as in-box when enough
//! consecutive smoothed frames land inside a vowel's F1/F2 box.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::math;

// ── LPC ────────────────────────────────────────────────────────────────────

/// Linear prediction result with `A(z) = 1 + sum(coeffs[k] z^-(k+1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct LpcAnalysis {
    /// a_1..a_p; empty at order 0.
    pub coeffs: Vec<f64>,
    /// Reflection coefficients k_1..k_p; inside (-1, 1) for a stationary
    /// nonsingular frame.
    pub reflection: Vec<f64>,
    /// Final prediction error energy.
    pub error_energy: f64,
}

/// In-place pre-emphasis `y[n] = x[n] - coeff * x[n-1]`; the first sample is
/// scaled by (1 - coeff) so a constant signal maps near zero.
pub fn pre_emphasis(samples: &mut [f64], coeff: f64) {
    let mut prev = 0.0;
    for s in samples.iter_mut() {
        let x = *s;
        *s = x - coeff * prev;
        prev = x;
    }
    if let Some(first) = samples.first_mut() {
        // prev was 0 for the first sample; the formula above already
        // produced x[0], rescale to (1 - coeff) * x[0].
        *first *= 1.0 - coeff;
    }
}

/// Hamming window of length `n`.
pub fn hamming(n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![1.0; n];
    }
    (0..n)
        .map(|i| 0.54 - 0.46 * math::cos(2.0 * math::PI * i as f64 / (n - 1) as f64))
        .collect()
}

/// Biased autocorrelation r[0..=max_lag].
pub fn autocorrelation(frame: &[f64], max_lag: usize) -> Vec<f64> {
    let mut r = vec![0.0; max_lag + 1];
    for (lag, slot) in r.iter_mut().enumerate() {
        let mut acc = 0.0;
        for i in lag..frame.len() {
            acc += frame[i] * frame[i - lag];
        }
        *slot = acc;
    }
    r
}

/// Levinson-Durbin recursion on an autocorrelation sequence.
pub fn levinson(r: &[f64], order: usize) -> Result<LpcAnalysis, AcousticsError> {
    if r.len() < order + 1 {
        return Err(AcousticsError::OrderTooLarge {
            order,
            available: r.len().saturating_sub(1),
        });
    }
    if r[0] <= 0.0 {
        return Err(AcousticsError::Singular);
    }
    let mut a = vec![0.0f64; order + 1];
    a[0] = 1.0;
    let mut reflection = Vec::with_capacity(order);
    let mut error = r[0];
    for i in 1..=order {
        let mut acc = r[i];
        for j in 1..i {
            acc += a[j] * r[i - j];
        }
        let k = -acc / error;
        reflection.push(k);
        let mut next = a.clone();
        next[i] = k;
        for j in 1..i {
            next[j] = a[j] + k * a[i - j];
        }
        a = next;
        error *= 1.0 - k * k;
        if error <= 0.0 {
            return Err(AcousticsError::Singular);
        }
    }
    Ok(LpcAnalysis {
        coeffs: a[1..].to_vec(),
        reflection,
        error_energy: error,
    })
}

/// LPC of one frame at the given order.
pub fn lpc(frame: &[f64], order: usize) -> Result<LpcAnalysis, AcousticsError> {
    if order >= frame.len() {
        return Err(AcousticsError::OrderTooLarge {
            order,
            available: frame.len().saturating_sub(1),
        });
    }
    if order == 0 {
        let energy = autocorrelation(frame, 0)[0];
        if energy <= 0.0 {
            return Err(AcousticsError::Singular);
        }
        return Ok(LpcAnalysis {
            coeffs: vec![],
            reflection: vec![],
            error_energy: energy,
        });
    }
    let r = autocorrelation(frame, order);
    levinson(&r, order)
}

// ── Polynomial roots ───────────────────────────────────────────────────────

#[derive(Clone, Copy, Debug, PartialEq)]
struct Complex {
    re: f64,
    im: f64,
}

impl Complex {
    const fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }
    fn add(self, o: Complex) -> Complex {
        Complex::new(self.re + o.re, self.im + o.im)
    }
    fn sub(self, o: Complex) -> Complex {
        Complex::new(self.re - o.re, self.im - o.im)
    }
    fn mul(self, o: Complex) -> Complex {
        Complex::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    fn div(self, o: Complex) -> Complex {
        let denom = o.re * o.re + o.im * o.im;
        Complex::new(
            (self.re * o.re + self.im * o.im) / denom,
            (self.im * o.re - self.re * o.im) / denom,
        )
    }
    fn abs(self) -> f64 {
        math::hypot(self.re, self.im)
    }
}

/// Horner evaluation of a monic polynomial with real coefficients
/// z^p + c[0] z^(p-1) + ... + c[p-1].
fn eval_monic(coeffs: &[f64], z: Complex) -> Complex {
    let mut acc = Complex::new(1.0, 0.0);
    for &c in coeffs {
        acc = acc.mul(z).add(Complex::new(c, 0.0));
    }
    acc
}

const ROOT_MAX_ITER: usize = 1000;
const ROOT_STEP_TOL: f64 = 1e-13;
const ROOT_RESIDUAL_TOL: f64 = 1e-8;

/// All roots of the monic polynomial via Durand-Kerner iteration, accepted
/// only when every root's residual passes a scaled tolerance.
fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex>, AcousticsError> {
    let degree = coeffs.len();
    if degree == 0 {
        return Ok(vec![]);
    }
    // Non-real, non-uniform starting points; the classic (0.4 + 0.9i)^k.
    let seed = Complex::new(0.4, 0.9);
    let mut roots: Vec<Complex> = Vec::with_capacity(degree);
    let mut acc = Complex::new(1.0, 0.0);
    for _ in 0..degree {
        acc = acc.mul(seed);
        roots.push(acc);
    }

    for _ in 0..ROOT_MAX_ITER {
        let mut worst_step = 0.0f64;
        for i in 0..degree {
            let mut denom = Complex::new(1.0, 0.0);
            for j in 0..degree {
                if i != j {
                    denom = denom.mul(roots[i].sub(roots[j]));
                }
            }
            let step = eval_monic(coeffs, roots[i]).div(denom);
            roots[i] = roots[i].sub(step);
            worst_step = worst_step.max(step.abs());
        }
        if worst_step < ROOT_STEP_TOL {
            break;
        }
    }

    let scale = coeffs
        .iter()
        .fold(1.0f64, |m, &c| m.max(math::abs(c)));
    for &root in &roots {
        let residual = eval_monic(coeffs, root).abs();
        // Negated so a NaN residual takes the error path.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(residual <= ROOT_RESIDUAL_TOL * scale) {
            return Err(AcousticsError::NonConvergence { residual });
        }
    }
    Ok(roots)
}

// ── Formants ───────────────────────────────────────────────────────────────

/// One resonance estimated from an LPC pole.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormantEstimate {
    pub frequency: f64,
    pub bandwidth: f64,
}

/// Acceptance band for formant poles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormantBand {
    pub min_hz: f64,
    pub max_hz: f64,
    pub max_bandwidth_hz: f64,
}

impl Default for FormantBand {
    fn default() -> Self {
        FormantBand {
            min_hz: 90.0,
            max_hz: 4000.0,
            max_bandwidth_hz: 400.0,
        }
    }
}

/// Formants from LPC coefficients within a band. Upper-half-plane poles
/// only; frequency from the pole angle, bandwidth from its radius; sorted
/// ascending by frequency.
pub fn formants_in_band(
    coeffs: &[f64],
    sample_rate: f64,
    band: &FormantBand,
) -> Result<Vec<FormantEstimate>, AcousticsError> {
    let roots = polynomial_roots(coeffs)?;
    let mut formants: Vec<FormantEstimate> = Vec::new();
    for root in roots {
        if root.im <= 0.0 {
            continue;
        }
        let radius = root.abs();
        if radius <= 0.0 || radius >= 1.0 + 1e-9 {
            continue;
        }
        let frequency = math::atan2(root.im, root.re) * sample_rate / (2.0 * math::PI);
        let bandwidth = -math::ln(radius.min(1.0)) * sample_rate / math::PI;
        if frequency >= band.min_hz && frequency <= band.max_hz && bandwidth < band.max_bandwidth_hz
        {
            formants.push(FormantEstimate {
                frequency,
                bandwidth,
            });
        }
    }
    formants.sort_by(|a, b| a.frequency.total_cmp(&b.frequency));
    Ok(formants)
}

/// Formants with the default band.
pub fn formants_from_lpc(
    coeffs: &[f64],
    sample_rate: f64,
) -> Result<Vec<FormantEstimate>, AcousticsError> {
    formants_in_band(coeffs, sample_rate, &FormantBand::default())
}

// ── Segment tracking ───────────────────────────────────────────────────────

/// A labeled time span within an audio file.
#[derive(Clone, Debug, PartialEq)]
pub struct PhoneSegment {
    pub phone: String,
    pub start_s: f64,
    pub end_s: f64,
}

/// One analysis frame that produced at least F1 and F2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormantFrame {
    /// Window-center time in seconds.
    pub time_s: f64,
    pub f1: f64,
    pub f2: f64,
    pub b1: f64,
    pub b2: f64,
}

/// Formant trajectory of one phone token.
#[derive(Clone, Debug, PartialEq)]
pub struct FormantTrack {
    pub phone: String,
    pub frames: Vec<FormantFrame>,
}

/// Analysis configuration for segment tracking.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrackConfig {
    pub window_s: f64,
    pub hop_s: f64,
    pub pre_emphasis: f64,
    pub order: usize,
    pub band: FormantBand,
    /// Median smoothing window over F1/F2; values below 2 disable smoothing.
    pub median_window: usize,
}

impl Default for TrackConfig {
    fn default() -> Self {
        TrackConfig {
            window_s: 0.025,
            hop_s: 0.010,
            pre_emphasis: 0.97,
            order: 12,
            band: FormantBand::default(),
            median_window: 5,
        }
    }
}

/// Tracks F1/F2 across one segment. Frames that are silent or yield fewer
/// than two in-band formants are dropped; root-finding failures abort.
pub fn track_formants(
    samples: &[f64],
    sample_rate: f64,
    segment: &PhoneSegment,
    config: &TrackConfig,
) -> Result<FormantTrack, AcousticsError> {
    let start = (segment.start_s * sample_rate) as isize;
    let end = (segment.end_s * sample_rate) as isize;
    if start < 0 || end > samples.len() as isize || start >= end {
        return Err(AcousticsError::SegmentOutOfRange {
            phone: segment.phone.clone(),
            start_s: segment.start_s,
            end_s: segment.end_s,
        });
    }
    let (start, end) = (start as usize, end as usize);
    let window = (config.window_s * sample_rate) as usize;
    let hop = ((config.hop_s * sample_rate) as usize).max(1);
    if window < 2 || end - start < window {
        return Err(AcousticsError::TooShort {
            phone: segment.phone.clone(),
            need: window.max(2),
            have: end - start,
        });
    }

    let taper = hamming(window);
    let mut frames: Vec<FormantFrame> = Vec::new();
    let mut pos = start;
    while pos + window <= end {
        let mut frame: Vec<f64> = samples[pos..pos + window].to_vec();
        pre_emphasis(&mut frame, config.pre_emphasis);
        for (s, w) in frame.iter_mut().zip(&taper) {
            *s *= w;
        }
        match lpc(&frame, config.order) {
            Ok(analysis) => {
                let formants = formants_in_band(&analysis.coeffs, sample_rate, &config.band)?;
                if formants.len() >= 2 {
                    frames.push(FormantFrame {
                        time_s: (pos + window / 2) as f64 / sample_rate,
                        f1: formants[0].frequency,
                        f2: formants[1].frequency,
                        b1: formants[0].bandwidth,
                        b2: formants[1].bandwidth,
                    });
                }
            }
            // Silent stretches inside a segment are dropped, not fatal.
            Err(AcousticsError::Singular) => {}
            Err(e) => return Err(e),
        }
        pos += hop;
    }

    let f1: Vec<f64> = frames.iter().map(|f| f.f1).collect();
    let f2: Vec<f64> = frames.iter().map(|f| f.f2).collect();
    let f1 = median_smooth(&f1, config.median_window);
    let f2 = median_smooth(&f2, config.median_window);
    for (frame, (s1, s2)) in frames.iter_mut().zip(f1.into_iter().zip(f2)) {
        frame.f1 = s1;
        frame.f2 = s2;
    }

    Ok(FormantTrack {
        phone: segment.phone.clone(),
        frames,
    })
}

/// Running median with a window shrunk symmetrically at the edges, so the
/// output length matches the input and endpoints stay anchored.
pub fn median_smooth(values: &[f64], window: usize) -> Vec<f64> {
    if window < 2 || values.len() < 3 {
        return values.to_vec();
    }
    let half = window / 2;
    let n = values.len();
    let mut out = Vec::with_capacity(n);
    let mut scratch: Vec<f64> = Vec::with_capacity(window);
    for i in 0..n {
        let reach = half.min(i).min(n - 1 - i);
        scratch.clear();
        scratch.extend_from_slice(&values[i - reach..=i + reach]);
        scratch.sort_by(f64::total_cmp);
        out.push(scratch[scratch.len() / 2]);
    }
    out
}

// ── In-box rates ───────────────────────────────────────────────────────────

/// An F1/F2 acceptance box for one vowel.
#[derive(Clone, Debug, PartialEq)]
pub struct FormantBox {
    pub vowel: String,
    pub f1_min: f64,
    pub f1_max: f64,
    pub f2_min: f64,
    pub f2_max: f64,
}

impl FormantBox {
    pub fn contains(&self, frame: &FormantFrame) -> bool {
        frame.f1 >= self.f1_min
            && frame.f1 <= self.f1_max
            && frame.f2 >= self.f2_min
            && frame.f2 <= self.f2_max
    }
}

/// True when the track holds at least `min_consecutive` consecutive frames
/// inside the box.
pub fn token_in_box(track: &FormantTrack, formant_box: &FormantBox, min_consecutive: usize) -> bool {
    let need = min_consecutive.max(1);
    let mut run = 0usize;
    for frame in &track.frames {
        if formant_box.contains(frame) {
            run += 1;
            if run >= need {
                return true;
            }
        } else {
            run = 0;
        }
    }
    false
}

/// Token counts and the percentage of tracks in the box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateSummary {
    pub tokens: u32,
    pub in_box: u32,
    pub rate: f64,
}

/// In-box rate over a set of same-vowel tracks; 0 tokens rate 0.
pub fn in_box_rate(
    tracks: &[FormantTrack],
    formant_box: &FormantBox,
    min_consecutive: usize,
) -> RateSummary {
    let tokens = tracks.len() as u32;
    let in_box = tracks
        .iter()
        .filter(|t| token_in_box(t, formant_box, min_consecutive))
        .count() as u32;
    let rate = if tokens == 0 {
        0.0
    } else {
        100.0 * f64::from(in_box) / f64::from(tokens)
    };
    RateSummary {
        tokens,
        in_box,
        rate,
    }
}

// ── Reference synthesizer ──────────────────────────────────────────────────

/// Impulse train driven through cascaded two-pole resonators; the reference
/// signal generator for validating the analysis direction.
pub fn synthesize_vowel(
    formants: &[(f64, f64)],
    f0: f64,
    sample_rate: f64,
    duration_s: f64,
) -> Vec<f64> {
    let n = (duration_s * sample_rate) as usize;
    let period = (sample_rate / f0) as usize;
    let mut signal = vec![0.0f64; n];
    let mut i = 0;
    while i < n {
        signal[i] = 1.0;
        i += period.max(1);
    }
    for &(frequency, bandwidth) in formants {
        let radius = math::exp(-math::PI * bandwidth / sample_rate);
        let theta = 2.0 * math::PI * frequency / sample_rate;
        let a1 = 2.0 * radius * math::cos(theta);
        let a2 = -radius * radius;
        let (mut y1, mut y2) = (0.0f64, 0.0f64);
        for s in signal.iter_mut() {
            let y = *s + a1 * y1 + a2 * y2;
            y2 = y1;
            y1 = y;
            *s = y;
        }
    }
    signal
}

// ── Errors ─────────────────────────────────────────────────────────────────

#[derive(Clone, Debug, PartialEq)]
pub enum AcousticsError {
    /// Autocorrelation is degenerate (all-zero or unstable frame).
    Singular,
    OrderTooLarge { order: usize, available: usize },
    SegmentOutOfRange {
        phone: String,
        start_s: f64,
        end_s: f64,
    },
    TooShort {
        phone: String,
        need: usize,
        have: usize,
    },
    NonConvergence { residual: f64 },
}

impl fmt::Display for AcousticsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AcousticsError::Singular => write!(f, "degenerate frame (zero or unstable energy)"),
            AcousticsError::OrderTooLarge { order, available } => {
                write!(f, "LPC order {order} exceeds usable lags ({available})")
            }
            AcousticsError::SegmentOutOfRange {
                phone,
                start_s,
                end_s,
            } => write!(
                f,
                "segment `{phone}` [{start_s}, {end_s}) falls outside the audio"
            ),
            AcousticsError::TooShort { phone, need, have } => write!(
                f,
                "segment `{phone}` has {have} samples, needs {need} for one window"
            ),
            AcousticsError::NonConvergence { residual } => {
                write!(f, "root finding did not converge (residual {residual:e})")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AcousticsError {}

impl AcousticsError {
    /// Used by `track_formants` to tell recoverable frame failures from
    /// fatal ones.
    pub fn is_frame_local(&self) -> bool {
        matches!(self, AcousticsError::Singular)
    }
}
