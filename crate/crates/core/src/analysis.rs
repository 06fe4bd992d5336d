//! PROPI trace analysis: tail offset, signal area, initialization
//! correction and oscillation-frequency extraction.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::ResetModel;
use crate::protocols::PropiRecord;

/// Normalized signal of one full NV flip in a single readout.
pub const FULL_FLIP_SIGNAL: f64 = 1.0;

/// Tail σ relative to the signal scale above which a trace counts as unsaturated.
pub const SATURATION_THRESHOLD: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OffsetEstimate {
    pub offset: f64,
    pub sigma: f64,
}

/// Mean and standard deviation of the last `tail_points` samples.
pub fn estimate_offset(trace: &[f64], tail_points: usize) -> Result<OffsetEstimate> {
    if tail_points < 1 || tail_points >= trace.len() {
        return Err(Error::Analysis(format!(
            "tail of {tail_points} points needs a longer series (got {} samples)",
            trace.len()
        )));
    }
    let tail = &trace[trace.len() - tail_points..];
    let n = tail.len() as f64;
    let offset = tail.iter().sum::<f64>() / n;
    let var = tail.iter().map(|x| (x - offset).powi(2)).sum::<f64>() / n;
    Ok(OffsetEstimate { offset, sigma: var.sqrt() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignalArea {
    pub raw_area: f64,
    pub quanta: f64,
}

/// Σ (signal − offset), and the same in spin-flip quanta.
pub fn signal_area(trace: &[f64], offset: f64) -> Result<SignalArea> {
    if !offset.is_finite() {
        return Err(Error::Analysis(format!("offset must be finite, got {offset}")));
    }
    let raw_area: f64 = trace.iter().map(|s| s - offset).sum();
    Ok(SignalArea { raw_area, quanta: raw_area / FULL_FLIP_SIGNAL })
}

/// quanta / (p_charge · p_spin · nuclear_register_factor).
pub fn initialization_correction(quanta: f64, reset: &ResetModel, nuclear_register_factor: f64) -> Result<f64> {
    let factors = [reset.p_charge, reset.p_spin, nuclear_register_factor];
    if factors.iter().any(|f| !(*f > 0.0 && *f <= 1.0)) {
        return Err(Error::Domain(format!("correction factors must lie in (0, 1], got {factors:?}")));
    }
    Ok(quanta / factors.iter().product::<f64>())
}

/// Dominant frequency (Hz) of a uniformly sampled series with spacing `dt` seconds.
///
/// Mean-removed, zero-padded 8× FFT with parabolic interpolation of the
/// power peak. Fails if the peak is below 3× the median power or if the
/// series spans fewer than two periods.
pub fn extract_oscillation_frequency(trace: &[f64], dt: f64) -> Result<f64> {
    if trace.len() < 4 || !(dt > 0.0) {
        return Err(Error::Analysis("need at least 4 samples and a positive spacing".into()));
    }
    let mean = trace.iter().sum::<f64>() / trace.len() as f64;
    let n = (trace.len() * 8).next_power_of_two();
    let mut buf: Vec<Complex<f64>> = trace.iter().map(|x| Complex::new(x - mean, 0.0)).collect();
    buf.resize(n, Complex::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let power: Vec<f64> = buf[..n / 2 + 1].iter().map(|z| z.norm_sqr()).collect();

    let (peak, &peak_power) = power
        .iter()
        .enumerate()
        .skip(1)
        .max_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| Error::Analysis("empty spectrum".into()))?;
    let mut sorted = power[1..].to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    if !(peak_power > 3.0 * median) || peak_power == 0.0 {
        return Err(Error::Analysis("no significant spectral peak".into()));
    }
    let shift = if peak + 1 < power.len() {
        let (a, b, c) = (power[peak - 1], power[peak], power[peak + 1]);
        let denom = a - 2.0 * b + c;
        if denom != 0.0 { 0.5 * (a - c) / denom } else { 0.0 }
    } else {
        0.0
    };
    let freq = (peak as f64 + shift) / (n as f64 * dt);
    let span = trace.len() as f64 * dt;
    if freq * span < 2.0 {
        return Err(Error::Analysis(format!(
            "series covers {:.2} periods of the {freq:.4e} Hz peak; need at least 2",
            freq * span
        )));
    }
    Ok(freq)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropiResult {
    pub offset: f64,
    pub tail_sigma: f64,
    pub raw_area: f64,
    pub quanta: f64,
    pub corrected_quanta: f64,
    pub tail_points_used: usize,
    pub flags: Vec<String>,
}

impl PropiResult {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn is_saturated(&self) -> bool {
        !self.flags.iter().any(|f| f == "unsaturated")
    }
}

/// Offset, area and corrected quanta of one trace.
pub fn analyze_trace(
    trace: &[f64],
    tail_points: usize,
    reset: &ResetModel,
    nuclear_register_factor: f64,
) -> Result<PropiResult> {
    let est = estimate_offset(trace, tail_points)?;
    let area = signal_area(trace, est.offset)?;
    let corrected = initialization_correction(area.quanta, reset, nuclear_register_factor)?;
    let excursion = trace.iter().map(|s| (s - est.offset).abs()).fold(0.0, f64::max);
    let scale = est.offset.abs().max(excursion);
    let mut flags = Vec::new();
    if scale > 0.0 && est.sigma / scale > SATURATION_THRESHOLD {
        flags.push("unsaturated".to_string());
    }
    Ok(PropiResult {
        offset: est.offset,
        tail_sigma: est.sigma,
        raw_area: area.raw_area,
        quanta: area.quanta,
        corrected_quanta: corrected,
        tail_points_used: tail_points,
        flags,
    })
}

/// Analysis of the readout (M) phase, the PROPI measure proper.
pub fn analyze_propi(
    record: &PropiRecord,
    tail_points: usize,
    reset: &ResetModel,
    nuclear_register_factor: f64,
) -> Result<PropiResult> {
    let mut result = analyze_trace(&record.readout_signal(), tail_points, reset, nuclear_register_factor)?;
    result.flags.extend(record.warnings.iter().map(|w| format!("warning: {w}")));
    Ok(result)
}

/// Analysis of the polarize (N) phase with its own tail offset.
pub fn analyze_polarize_phase(
    record: &PropiRecord,
    tail_points: usize,
    reset: &ResetModel,
    nuclear_register_factor: f64,
) -> Result<PropiResult> {
    analyze_trace(&record.polarize_signal(), tail_points, reset, nuclear_register_factor)
}
