//! Declarative 1-D parameter sweeps: JSON configuration, validation with a
//! derived-quantity echo, seed-averaged PROPI runs, CSV and manifest output,
//! and figure presets.
//!
//! Configuration units are Hz, seconds, tesla and degrees; conversion to
//! angular frequencies happens when the physics objects are built.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::analyze_propi;
use crate::error::{Error, Result};
use crate::evolution::{laser_reset, DensityState, DqtModel, ReadoutModel, ResetModel};
use crate::hamiltonians::{adiabaticity_factor, dqt_effective_rabi, DqtParams};
use crate::lattice_bath::{sample_bath, BathNucleus, PhysicalConstants, SpinSystem};
use crate::protocols::{
    run_propi_repeated, CycleSpec, DqtCycleParams, Direction, IseParams, NovelParams, PropiOptions, PropiPlan,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    Novel,
    Ise,
    DqtNovel,
    DqtIse,
}

impl Protocol {
    fn is_dqt(self) -> bool {
        matches!(self, Protocol::DqtNovel | Protocol::DqtIse)
    }

    fn is_sweep(self) -> bool {
        matches!(self, Protocol::Ise | Protocol::DqtIse)
    }
}

/// Swept quantity and its unit in the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// Drive Rabi frequency, Hz (per tone for DQT).
    Rabi,
    /// Spin-lock duration, s.
    LockDuration,
    /// Frequency sweep range, Hz.
    SweepRange,
    /// Frequency sweep rate, Hz/s.
    SweepRate,
    /// Dimensionless amplitude factor α.
    Amplitude,
    /// Field misalignment, degrees.
    Theta,
    /// Number of polarize cycles N.
    PolarizeCycles,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Linear { min: f64, max: f64, points: usize },
    List { values: Vec<f64> },
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::Linear { min, max, points } => match points {
                0 => vec![],
                1 => vec![*min],
                n => (0..*n).map(|k| min + (max - min) * k as f64 / (n - 1) as f64).collect(),
            },
            Grid::List { values } => values.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanConfig {
    #[serde(default = "default_n")]
    pub n_polarize: usize,
    #[serde(default = "default_m")]
    pub m_readout: usize,
    /// Defaults to min(30, M − 1).
    #[serde(default)]
    pub tail_points: Option<usize>,
    /// Back-to-back PROPI runs; the last one is analysed. Two reproduce a
    /// repeated experiment whose bath starts where a readout phase left it.
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
}

fn default_n() -> usize {
    50
}
fn default_m() -> usize {
    200
}
fn default_repetitions() -> usize {
    2
}

impl Default for PlanConfig {
    fn default() -> Self {
        Self { n_polarize: default_n(), m_readout: default_m(), tail_points: None, repetitions: default_repetitions() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NucleusConfig {
    pub a_par_hz: f64,
    pub a_perp_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BathConfig {
    /// Natural-abundance lattice sample per seed.
    Sampled {
        #[serde(default = "default_radius")]
        radius_nm: f64,
        #[serde(default = "default_min_coupling")]
        min_coupling_hz: f64,
        #[serde(default = "default_max_spins")]
        max_spins: usize,
    },
    /// Fixed couplings; seeds then only vary jitter and photon noise.
    Explicit { nuclei: Vec<NucleusConfig> },
}

fn default_radius() -> f64 {
    1.0
}
fn default_min_coupling() -> f64 {
    2e3
}
fn default_max_spins() -> usize {
    4
}

impl Default for BathConfig {
    fn default() -> Self {
        BathConfig::Sampled {
            radius_nm: default_radius(),
            min_coupling_hz: default_min_coupling(),
            max_spins: default_max_spins(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    #[serde(default = "default_field")]
    pub field_t: f64,
    #[serde(default)]
    pub theta_deg: f64,
    #[serde(default)]
    pub bath: BathConfig,
}

fn default_field() -> f64 {
    0.175
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self { field_t: default_field(), theta_deg: 0.0, bath: BathConfig::default() }
    }
}

/// Cycle parameters at the grid's reference point; the swept one is overridden.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleConfig {
    /// Lock or sweep Rabi frequency, Hz. NOVEL defaults to the bare ¹³C
    /// Larmor frequency, ISE to 1.5 MHz; per tone for DQT.
    #[serde(default)]
    pub rabi_hz: Option<f64>,
    #[serde(default = "default_lock")]
    pub lock_duration_s: f64,
    #[serde(default = "default_direction")]
    pub direction: Direction,
    #[serde(default = "default_range")]
    pub sweep_range_hz: f64,
    #[serde(default = "default_sweep_duration")]
    pub sweep_duration_s: f64,
    /// When set, the sweep rate is held fixed and the duration follows the range.
    #[serde(default)]
    pub sweep_rate_hz_per_s: Option<f64>,
    #[serde(default = "default_dqt_delta")]
    pub dqt_delta_hz: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default)]
    pub dqt_model: DqtModel,
    #[serde(default)]
    pub ideal_pulses: bool,
}

fn default_lock() -> f64 {
    10e-6
}
fn default_direction() -> Direction {
    Direction::Up
}
fn default_range() -> f64 {
    10e6
}
fn default_sweep_duration() -> f64 {
    20e-6
}
fn default_dqt_delta() -> f64 {
    40e6
}
fn default_alpha() -> f64 {
    1.0
}

impl Default for CycleConfig {
    fn default() -> Self {
        Self {
            rabi_hz: None,
            lock_duration_s: default_lock(),
            direction: default_direction(),
            sweep_range_hz: default_range(),
            sweep_duration_s: default_sweep_duration(),
            sweep_rate_hz_per_s: None,
            dqt_delta_hz: default_dqt_delta(),
            alpha: default_alpha(),
            dqt_model: DqtModel::default(),
            ideal_pulses: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Imperfections {
    /// false runs with an ideal reset, no jitter and no photon noise.
    #[serde(default = "default_true")]
    pub enabled: bool,
    #[serde(default = "default_p_charge")]
    pub p_charge: f64,
    #[serde(default = "default_p_spin")]
    pub p_spin: f64,
    /// Relative per-cycle amplitude error bound (0.05 = ±5%).
    #[serde(default)]
    pub amplitude_jitter: f64,
    #[serde(default)]
    pub photons_per_shot: Option<f64>,
    #[serde(default = "default_nuclear_register")]
    pub nuclear_register_factor: f64,
}

fn default_true() -> bool {
    true
}
fn default_p_charge() -> f64 {
    ResetModel::default().p_charge
}
fn default_p_spin() -> f64 {
    ResetModel::default().p_spin
}
fn default_nuclear_register() -> f64 {
    1.0
}

impl Default for Imperfections {
    fn default() -> Self {
        Self {
            enabled: true,
            p_charge: default_p_charge(),
            p_spin: default_p_spin(),
            amplitude_jitter: 0.0,
            photons_per_shot: None,
            nuclear_register_factor: default_nuclear_register(),
        }
    }
}

impl Imperfections {
    fn reset(&self) -> ResetModel {
        if self.enabled {
            ResetModel { p_charge: self.p_charge, p_spin: self.p_spin }
        } else {
            ResetModel::ideal()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub protocol: Protocol,
    pub parameter: SweepParameter,
    pub grid: Grid,
    #[serde(default)]
    pub plan: PlanConfig,
    #[serde(default)]
    pub system: SystemConfig,
    #[serde(default)]
    pub cycle: CycleConfig,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub imperfections: Imperfections,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
}

fn default_seeds() -> Vec<u64> {
    (0..30).collect()
}

/// One schema or physics-precondition violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigIssue {
    pub pointer: String,
    pub message: String,
}

impl std::fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let p = if self.pointer.is_empty() { "/" } else { &self.pointer };
        write!(f, "{p}: {}", self.message)
    }
}

fn issue(pointer: &str, message: impl Into<String>) -> ConfigIssue {
    ConfigIssue { pointer: pointer.to_string(), message: message.into() }
}

/// Quantities derived from one grid point, echoed by validation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedPoint {
    pub sweep_value: f64,
    /// Hz/s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_rate_hz_per_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adiabaticity_factor: Option<f64>,
    /// Hz.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_eff_hz: Option<f64>,
    /// Lock Rabi (or Ω_eff) minus the bare ¹³C Larmor frequency, Hz.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hh_mismatch_hz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizedConfig {
    pub config: SweepConfig,
    pub derived: Vec<DerivedPoint>,
}

/// Parses and validates a configuration document. Every violation is
/// reported with its JSON pointer.
pub fn parse_config(text: &str) -> std::result::Result<NormalizedConfig, Vec<ConfigIssue>> {
    let value: Value = serde_json::from_str(text).map_err(|e| vec![issue("", format!("invalid JSON: {e}"))])?;
    let Some(obj) = value.as_object() else {
        return Err(vec![issue("", "expected a JSON object")]);
    };
    let mut issues: Vec<ConfigIssue> =
        ["protocol", "parameter", "grid"].iter().filter(|k| !obj.contains_key(**k)).map(|k| issue(&format!("/{k}"), "required field")).collect();
    if !issues.is_empty() {
        return Err(issues);
    }
    let config: SweepConfig = match serde_path_error(&value) {
        Ok(c) => c,
        Err(e) => return Err(vec![e]),
    };
    issues.extend(check_config(&config));
    if !issues.is_empty() {
        return Err(issues);
    }
    let derived = derive_points(&config).map_err(|e| vec![issue("/grid", e.to_string())])?;
    Ok(NormalizedConfig { config, derived })
}

/// Deserializes section by section so type errors carry the section pointer.
fn serde_path_error(value: &Value) -> std::result::Result<SweepConfig, ConfigIssue> {
    let obj = value.as_object().expect("checked object");
    for (key, ptr) in [
        ("protocol", "/protocol"),
        ("parameter", "/parameter"),
        ("grid", "/grid"),
        ("plan", "/plan"),
        ("system", "/system"),
        ("cycle", "/cycle"),
        ("seeds", "/seeds"),
        ("imperfections", "/imperfections"),
        ("output_path", "/output_path"),
    ] {
        if let Some(v) = obj.get(key) {
            let check = match key {
                "protocol" => serde_json::from_value::<Protocol>(v.clone()).map(drop),
                "parameter" => serde_json::from_value::<SweepParameter>(v.clone()).map(drop),
                "grid" => serde_json::from_value::<Grid>(v.clone()).map(drop),
                "plan" => serde_json::from_value::<PlanConfig>(v.clone()).map(drop),
                "system" => serde_json::from_value::<SystemConfig>(v.clone()).map(drop),
                "cycle" => serde_json::from_value::<CycleConfig>(v.clone()).map(drop),
                "seeds" => serde_json::from_value::<Vec<u64>>(v.clone()).map(drop),
                "imperfections" => serde_json::from_value::<Imperfections>(v.clone()).map(drop),
                _ => serde_json::from_value::<Option<PathBuf>>(v.clone()).map(drop),
            };
            if let Err(e) = check {
                return Err(issue(ptr, e.to_string()));
            }
        }
    }
    serde_json::from_value(value.clone()).map_err(|e| issue("", e.to_string()))
}

fn check_config(c: &SweepConfig) -> Vec<ConfigIssue> {
    let mut out = Vec::new();
    let values = c.grid.values();
    if values.is_empty() {
        out.push(issue("/grid", "grid must contain at least one point"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        out.push(issue("/grid", "grid values must be finite"));
    }
    if values.len() > 1 {
        let up = values.windows(2).all(|w| w[1] > w[0]);
        let down = values.windows(2).all(|w| w[1] < w[0]);
        if !(up || down) {
            out.push(issue("/grid", "grid must be strictly monotonic"));
        }
    }
    if c.seeds.is_empty() {
        out.push(issue("/seeds", "at least one seed is required"));
    }

    let lock_only = matches!(c.parameter, SweepParameter::LockDuration);
    let sweep_only = matches!(c.parameter, SweepParameter::SweepRange | SweepParameter::SweepRate);
    if lock_only && c.protocol.is_sweep() {
        out.push(issue("/parameter", "lock_duration applies to NOVEL protocols only"));
    }
    if sweep_only && !c.protocol.is_sweep() {
        out.push(issue("/parameter", "sweep range and rate apply to ISE protocols only"));
    }
    let positive = |v: f64| v > 0.0 && v.is_finite();
    for v in &values {
        let bad = match c.parameter {
            SweepParameter::Rabi | SweepParameter::Amplitude | SweepParameter::LockDuration => !(*v >= 0.0),
            SweepParameter::SweepRange | SweepParameter::SweepRate => !positive(*v),
            SweepParameter::Theta => !(0.0..=90.0).contains(v),
            SweepParameter::PolarizeCycles => !(*v >= 0.0 && v.fract() == 0.0),
        };
        if bad {
            out.push(issue("/grid", format!("value {v} is outside the domain of {:?}", c.parameter)));
            break;
        }
    }

    if c.plan.m_readout < 2 {
        out.push(issue("/plan/m_readout", "PROPI needs M ≥ 2 so the tail offset excludes the first readout"));
    }
    if let Some(t) = c.plan.tail_points {
        if t < 1 || t >= c.plan.m_readout {
            out.push(issue("/plan/tail_points", format!("must lie in [1, M) with M = {}", c.plan.m_readout)));
        }
    }
    if c.plan.repetitions < 1 {
        out.push(issue("/plan/repetitions", "must be ≥ 1"));
    }

    if !(c.system.field_t > 0.0 && c.system.field_t.is_finite()) {
        out.push(issue("/system/field_t", "field must be > 0"));
    }
    if !(0.0..=90.0).contains(&c.system.theta_deg) {
        out.push(issue("/system/theta_deg", "must lie in [0, 90]"));
    }
    match &c.system.bath {
        BathConfig::Sampled { radius_nm, min_coupling_hz, max_spins } => {
            if !positive(*radius_nm) {
                out.push(issue("/system/bath/radius_nm", "must be > 0"));
            }
            if !(*min_coupling_hz >= 0.0) {
                out.push(issue("/system/bath/min_coupling_hz", "must be ≥ 0"));
            }
            if 3usize.checked_shl(*max_spins as u32).is_none_or(|d| d > crate::lattice_bath::DEFAULT_DIM_CAP) {
                out.push(issue("/system/bath/max_spins", "Hilbert-space dimension 3·2ⁿ exceeds the cap"));
            }
        }
        BathConfig::Explicit { nuclei } => {
            if 3usize.checked_shl(nuclei.len() as u32).is_none_or(|d| d > crate::lattice_bath::DEFAULT_DIM_CAP) {
                out.push(issue("/system/bath/nuclei", "Hilbert-space dimension 3·2ⁿ exceeds the cap"));
            }
            for (j, n) in nuclei.iter().enumerate() {
                if !(n.a_par_hz.is_finite() && n.a_perp_hz.is_finite()) {
                    out.push(issue(&format!("/system/bath/nuclei/{j}"), "couplings must be finite"));
                }
            }
        }
    }

    let cy = &c.cycle;
    if let Some(r) = cy.rabi_hz {
        if !(r >= 0.0 && r.is_finite()) {
            out.push(issue("/cycle/rabi_hz", "must be ≥ 0"));
        }
    }
    if !(cy.lock_duration_s >= 0.0) {
        out.push(issue("/cycle/lock_duration_s", "must be ≥ 0"));
    }
    if !positive(cy.sweep_range_hz) {
        out.push(issue("/cycle/sweep_range_hz", "must be > 0"));
    }
    if !positive(cy.sweep_duration_s) {
        out.push(issue("/cycle/sweep_duration_s", "must be > 0"));
    }
    if let Some(r) = cy.sweep_rate_hz_per_s {
        if !positive(r) {
            out.push(issue("/cycle/sweep_rate_hz_per_s", "must be > 0"));
        }
    }
    if !positive(cy.dqt_delta_hz) {
        out.push(issue("/cycle/dqt_delta_hz", "must be > 0"));
    }
    if !(cy.alpha >= 0.0 && cy.alpha.is_finite()) {
        out.push(issue("/cycle/alpha", "must be ≥ 0"));
    }

    let im = &c.imperfections;
    for (name, v) in [("p_charge", im.p_charge), ("p_spin", im.p_spin)] {
        if !(v > 0.0 && v <= 1.0) {
            out.push(issue(&format!("/imperfections/{name}"), "must lie in (0, 1]"));
        }
    }
    if !(0.0..1.0).contains(&im.amplitude_jitter) {
        out.push(issue("/imperfections/amplitude_jitter", "must lie in [0, 1)"));
    }
    if let Some(p) = im.photons_per_shot {
        if !positive(p) {
            out.push(issue("/imperfections/photons_per_shot", "must be > 0"));
        }
    }
    if !(im.nuclear_register_factor > 0.0 && im.nuclear_register_factor <= 1.0) {
        out.push(issue("/imperfections/nuclear_register_factor", "must lie in (0, 1]"));
    }

    if out.is_empty() && c.protocol.is_dqt() {
        for v in &values {
            let p = point_parameters(c, *v);
            let tones = DqtParams::symmetric(p.rabi, p.dqt_delta, p.alpha);
            if let Err(e) = tones.check_effective_validity() {
                let ptr = if matches!(c.parameter, SweepParameter::Rabi | SweepParameter::Amplitude) {
                    "/grid"
                } else {
                    "/cycle/dqt_delta_hz"
                };
                out.push(issue(ptr, format!("double-quantum drive outside the adiabatic-elimination regime: {e}")));
                break;
            }
        }
    }
    out
}

/// Parameters of one grid point in angular units.
#[derive(Debug, Clone, Copy, PartialEq)]
struct PointParameters {
    rabi: f64,
    lock_duration: f64,
    range: f64,
    duration: f64,
    dqt_delta: f64,
    alpha: f64,
    theta: f64,
    n_polarize: usize,
}

fn larmor(c: &SweepConfig) -> f64 {
    PhysicalConstants::default().gamma_c13 * c.system.field_t
}

fn point_parameters(c: &SweepConfig, value: f64) -> PointParameters {
    let cy = &c.cycle;
    let default_rabi = match c.protocol {
        Protocol::Novel => larmor(c),
        Protocol::DqtNovel => dqt_tone_for_effective(larmor(c), TAU * cy.dqt_delta_hz, cy.alpha),
        Protocol::Ise => TAU * 1.5e6,
        Protocol::DqtIse => dqt_tone_for_effective(TAU * 1.5e6, TAU * cy.dqt_delta_hz, cy.alpha),
    };
    let mut p = PointParameters {
        rabi: cy.rabi_hz.map_or(default_rabi, |r| TAU * r),
        lock_duration: cy.lock_duration_s,
        range: TAU * cy.sweep_range_hz,
        duration: cy.sweep_duration_s,
        dqt_delta: TAU * cy.dqt_delta_hz,
        alpha: cy.alpha,
        theta: c.system.theta_deg.to_radians(),
        n_polarize: c.plan.n_polarize,
    };
    let mut rate = cy.sweep_rate_hz_per_s.map(|r| TAU * r);
    match c.parameter {
        SweepParameter::Rabi => p.rabi = TAU * value,
        SweepParameter::LockDuration => p.lock_duration = value,
        SweepParameter::SweepRange => p.range = TAU * value,
        SweepParameter::SweepRate => rate = Some(TAU * value),
        SweepParameter::Amplitude => {
            if c.protocol.is_dqt() {
                p.alpha = value;
            } else {
                p.rabi *= value;
            }
        }
        SweepParameter::Theta => p.theta = value.to_radians(),
        SweepParameter::PolarizeCycles => p.n_polarize = value.round() as usize,
    }
    if let Some(r) = rate {
        p.duration = p.range / r;
    }
    p
}

/// Per-tone amplitude whose effective double-quantum Rabi frequency is `target`.
pub fn dqt_tone_for_effective(target: f64, delta: f64, alpha: f64) -> f64 {
    (((2.0 * target + delta).powi(2) - delta * delta) / (2.0 * alpha.max(f64::MIN_POSITIVE))).sqrt()
}

fn derive_points(c: &SweepConfig) -> Result<Vec<DerivedPoint>> {
    let w0 = larmor(c);
    c.grid
        .values()
        .into_iter()
        .map(|v| {
            let p = point_parameters(c, v);
            let omega_eff = c.protocol.is_dqt().then(|| dqt_effective_rabi(p.rabi, p.dqt_delta, p.alpha));
            let lock = omega_eff.unwrap_or(p.rabi);
            let (rate, adiabaticity) = if c.protocol.is_sweep() {
                let rate = p.range / p.duration;
                (Some(rate / TAU), Some(adiabaticity_factor(lock, rate)?))
            } else {
                (None, None)
            };
            let hh = (!c.protocol.is_sweep()).then(|| (lock - w0) / TAU);
            Ok(DerivedPoint {
                sweep_value: v,
                sweep_rate_hz_per_s: rate,
                adiabaticity_factor: adiabaticity,
                omega_eff_hz: omega_eff.map(|w| w / TAU),
                hh_mismatch_hz: hh,
            })
        })
        .collect()
}

fn build_system(c: &SweepConfig, theta: f64, seed: u64) -> Result<SpinSystem> {
    let constants = PhysicalConstants::default();
    let nuclei = match &c.system.bath {
        BathConfig::Sampled { radius_nm, min_coupling_hz, max_spins } => {
            sample_bath(seed, radius_nm * 1e-9, TAU * min_coupling_hz, *max_spins, &constants)?
        }
        BathConfig::Explicit { nuclei } => {
            nuclei.iter().map(|n| BathNucleus::from_couplings(TAU * n.a_par_hz, TAU * n.a_perp_hz)).collect()
        }
    };
    SpinSystem::new(constants, c.system.field_t, theta, nuclei)
}

fn build_cycle(c: &SweepConfig, p: &PointParameters) -> CycleSpec {
    let direction = c.cycle.direction;
    let mut novel = NovelParams::new(p.rabi, p.lock_duration, direction);
    novel.ideal_pulses = c.cycle.ideal_pulses;
    let ise = IseParams::new(p.range, p.duration, p.rabi, direction);
    let dqt = DqtCycleParams {
        delta: p.dqt_delta,
        alpha: p.alpha,
        ideal_pulses: c.cycle.ideal_pulses,
        model: c.cycle.dqt_model,
        ..DqtCycleParams::default()
    };
    match c.protocol {
        Protocol::Novel => CycleSpec::Novel(novel),
        Protocol::Ise => CycleSpec::Ise(ise),
        Protocol::DqtNovel => CycleSpec::DqtNovel { novel, dqt },
        Protocol::DqtIse => CycleSpec::DqtIse { ise, dqt },
    }
}

/// Outcome of one (grid point, seed) run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedOutcome {
    pub seed: u64,
    pub corrected_quanta: f64,
    pub offset: f64,
    pub flags: Vec<String>,
}

fn run_point(
    c: &SweepConfig,
    value: f64,
    seed: u64,
    dump_dir: Option<&Path>,
    stem: &str,
) -> Result<SeedOutcome> {
    let p = point_parameters(c, value);
    let system = build_system(c, p.theta, seed)?;
    let polarize = build_cycle(c, &p);
    let mut plan = PropiPlan::new(&system, polarize, p.n_polarize, c.plan.m_readout);
    if let Some(t) = c.plan.tail_points {
        plan.tail_points = t;
    }
    let im = &c.imperfections;
    let options = PropiOptions {
        reset: im.reset(),
        readout: ReadoutModel {
            photons_per_shot: if im.enabled { im.photons_per_shot } else { None },
            ..ReadoutModel::default()
        },
        amplitude_jitter: if im.enabled { im.amplitude_jitter } else { 0.0 },
        seed,
        ..PropiOptions::default()
    };
    let record = run_propi_repeated(&system, &plan, &options, None, c.plan.repetitions)?;
    let result = analyze_propi(&record, plan.tail_points, &options.reset, im.nuclear_register_factor)?;
    if let Some(dir) = dump_dir {
        let state = DensityState::product(&nv_ground(), &record.final_bath)?;
        laser_reset(&state, &options.reset).dump(dir, stem)?;
    }
    Ok(SeedOutcome { seed, corrected_quanta: result.corrected_quanta, offset: result.offset, flags: result.flags })
}

fn nv_ground() -> crate::operators::CMatrix {
    let mut nv = crate::operators::CMatrix::zeros(3, 3);
    nv[(crate::operators::ZERO, crate::operators::ZERO)] = crate::operators::c(1.0);
    nv
}

/// Seed-averaged result of one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub sweep_value: f64,
    pub mean_quanta: f64,
    pub stderr_quanta: f64,
    pub mean_offset: f64,
    pub flags: Vec<String>,
    pub seeds_used: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunFailure {
    pub point: usize,
    pub sweep_value: f64,
    pub seed: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub failures: Vec<RunFailure>,
}

/// Mean and standard error (sample σ / √n; 0 for one sample).
pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Runs every grid point × seed in parallel and merges by index. Per-run
/// failures are collected; the sweep fails only if every run failed.
pub fn run_sweep(config: &SweepConfig, dump_dir: Option<&Path>) -> Result<SweepResult> {
    let issues = check_config(config);
    if !issues.is_empty() {
        let text: Vec<String> = issues.iter().map(|i| i.to_string()).collect();
        return Err(Error::Config(text.join("; ")));
    }
    let values = config.grid.values();
    let tasks: Vec<(usize, usize)> =
        (0..values.len()).flat_map(|i| (0..config.seeds.len()).map(move |s| (i, s))).collect();
    let outcomes: Vec<Result<SeedOutcome>> = tasks
        .par_iter()
        .map(|&(i, s)| {
            let seed = config.seeds[s];
            run_point(config, values[i], seed, dump_dir, &format!("point{i:04}_seed{seed}"))
        })
        .collect();

    merge_outcomes(&values, &config.seeds, outcomes)
}

/// Groups per-seed outcomes (point-major order) into rows.
fn merge_outcomes(values: &[f64], seeds: &[u64], outcomes: Vec<Result<SeedOutcome>>) -> Result<SweepResult> {
    let mut rows = Vec::with_capacity(values.len());
    let mut failures = Vec::new();
    let total = outcomes.len();
    for (i, chunk) in outcomes.chunks(seeds.len().max(1)).enumerate() {
        let mut quanta = Vec::new();
        let mut offsets = Vec::new();
        let mut flags: Vec<String> = Vec::new();
        for (s, out) in chunk.iter().enumerate() {
            match out {
                Ok(o) => {
                    quanta.push(o.corrected_quanta);
                    offsets.push(o.offset);
                    for f in &o.flags {
                        if !flags.contains(f) {
                            flags.push(f.clone());
                        }
                    }
                }
                Err(e) => failures.push(RunFailure { point: i, sweep_value: values[i], seed: seeds[s], error: e.to_string() }),
            }
        }
        let (mean_quanta, stderr_quanta) = mean_and_stderr(&quanta);
        let (mean_offset, _) = mean_and_stderr(&offsets);
        if quanta.len() < chunk.len() && !quanta.is_empty() {
            flags.push(format!("partial: {}/{} seeds", quanta.len(), chunk.len()));
        }
        rows.push(SweepRow { sweep_value: values[i], mean_quanta, stderr_quanta, mean_offset, flags, seeds_used: quanta.len() });
    }
    if total > 0 && failures.len() == total {
        return Err(Error::Domain(format!("all {total} runs failed; first: {}", failures[0].error)));
    }
    Ok(SweepResult { rows, failures })
}

pub const CSV_HEADER: &str = "sweep_value,mean_quanta,stderr_quanta,mean_offset,flags";

pub fn to_csv(result: &SweepResult) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &result.rows {
        let flags = r.flags.join(";").replace(['"', ','], " ");
        out.push_str(&format!(
            "{:.12e},{:.12e},{:.12e},{:.12e},{}\n",
            r.sweep_value, r.mean_quanta, r.stderr_quanta, r.mean_offset, flags
        ));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub config: SweepConfig,
    pub version: String,
    pub wall_time_s: f64,
    pub timestamp_unix_s: u64,
    pub csv: PathBuf,
    pub failures: Vec<RunFailure>,
}

/// Runs a sweep and writes `<output>.csv` and `manifest.json` next to it.
pub fn run_and_write(config: &SweepConfig, default_output: &Path, dump_dir: Option<&Path>) -> Result<(SweepResult, PathBuf)> {
    let start = Instant::now();
    let result = run_sweep(config, dump_dir)?;
    let csv_path = config.output_path.clone().unwrap_or_else(|| default_output.to_path_buf());
    if let Some(parent) = csv_path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(&csv_path, to_csv(&result))?;
    let manifest = Manifest {
        config: config.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_s: start.elapsed().as_secs_f64(),
        timestamp_unix_s: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        csv: csv_path.clone(),
        failures: result.failures.clone(),
    };
    let manifest_path = csv_path.with_file_name("manifest.json");
    std::fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)?;
    Ok((result, csv_path))
}

pub const FIGURES: [&str; 11] =
    ["fig2e", "fig3a", "fig3b", "fig4b", "fig4c", "fig4d", "fig5b", "fig5c", "fig6b", "fig6c", "fig6d"];

/// Desk-scale preset for one of the named experiments.
pub fn figure_preset(name: &str) -> Result<SweepConfig> {
    let linear = |min: f64, max: f64, points: usize| Grid::Linear { min, max, points };
    let base = |protocol, parameter, grid| SweepConfig {
        protocol,
        parameter,
        grid,
        plan: PlanConfig::default(),
        system: SystemConfig {
            bath: BathConfig::Sampled { radius_nm: 1.0, min_coupling_hz: 2e3, max_spins: 3 },
            ..SystemConfig::default()
        },
        cycle: CycleConfig::default(),
        seeds: (0..4).collect(),
        imperfections: Imperfections::default(),
        output_path: Some(PathBuf::from(format!("results/{name}/{name}.csv"))),
    };
    use Protocol::*;
    use SweepParameter::*;
    let config = match name {
        "fig2e" => {
            let mut c = base(Novel, PolarizeCycles, Grid::List { values: vec![0.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0] });
            c.system.bath = BathConfig::Sampled { radius_nm: 1.0, min_coupling_hz: 2e3, max_spins: 4 };
            c
        }
        "fig3a" => base(Novel, Rabi, linear(1.0e6, 2.8e6, 91)),
        "fig3b" => base(Novel, LockDuration, linear(0.0, 30e-6, 61)),
        "fig4b" => {
            let mut c = base(Ise, SweepRange, linear(0.5e6, 20e6, 40));
            c.cycle.rabi_hz = Some(0.9e6);
            c.cycle.sweep_rate_hz_per_s = Some(10e6 / 80e-6);
            c
        }
        "fig4c" => {
            // 1/|v| over one decade
            let values = (0..30).map(|k| 10e6 / (5e-6 * 10f64.powf(k as f64 / 29.0))).rev().collect();
            let mut c = base(Ise, SweepRate, Grid::List { values });
            c.plan.n_polarize = 20;
            c
        }
        "fig4d" => base(Ise, Rabi, linear(0.6e6, 3.0e6, 30)),
        "fig5b" => base(DqtNovel, Rabi, linear(8e6, 20e6, 61)),
        "fig5c" => {
            let mut c = base(DqtNovel, LockDuration, linear(0.0, 100e-6, 101));
            c.system.bath = BathConfig::Explicit { nuclei: vec![NucleusConfig { a_par_hz: 5e3, a_perp_hz: 30e3 }] };
            c.plan = PlanConfig { n_polarize: 1, m_readout: 200, tail_points: None, repetitions: 2 };
            c.seeds = vec![0];
            c
        }
        "fig6b" => {
            let mut c = base(DqtIse, SweepRange, linear(0.5e6, 20e6, 40));
            c.cycle.rabi_hz = Some(dqt_tone_for_effective(TAU * 0.9e6, TAU * default_dqt_delta(), 1.0) / TAU);
            c.cycle.sweep_rate_hz_per_s = Some(10e6 / 80e-6);
            c
        }
        "fig6c" => {
            // jitter recompiles every chirp, so this grid is coarser
            let values = (0..12).map(|k| 10e6 / (5e-6 * 10f64.powf(k as f64 / 11.0))).rev().collect();
            let mut c = base(DqtIse, SweepRate, Grid::List { values });
            c.plan = PlanConfig { n_polarize: 20, m_readout: 100, ..PlanConfig::default() };
            c.seeds = (0..2).collect();
            c.imperfections.amplitude_jitter = 0.05;
            c
        }
        "fig6d" => {
            let mut c = base(DqtIse, Amplitude, linear(0.2, 2.0, 12));
            c.plan = PlanConfig { n_polarize: 20, m_readout: 100, ..PlanConfig::default() };
            c.seeds = (0..2).collect();
            c.imperfections.amplitude_jitter = 0.05;
            c
        }
        other => {
            return Err(Error::Config(format!("unknown figure preset {other:?}; expected one of {}", FIGURES.join(", "))))
        }
    };
    Ok(config)
}
