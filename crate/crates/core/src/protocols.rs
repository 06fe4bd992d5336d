//! Polarization cycles (NOVEL, ISE and their double-quantum variants) and the
//! PROPI experiment built from them.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{
    apply_reset_cycle, laser_reset, measure_nv, Chirp, ChirpDiscretization, ControlSegment, DensityState, Drive,
    DqtModel, Engine, IdealRotation, NvPopulations, ReadoutModel, ResetModel, SegmentKind,
};
use crate::hamiltonians::{adiabaticity_factor, DqtParams, DqtPhases, SqtFrameParams, Transition};
use crate::lattice_bath::SpinSystem;
use crate::operators::{c, identity, CMatrix, MINUS, PLUS, ZERO};

/// Sign of the nuclear polarization a cycle builds up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Towards ⟨I_z′⟩ = +½.
    Up,
    /// Towards ⟨I_z′⟩ = −½.
    Down,
}

impl Direction {
    pub fn inverted(self) -> Self {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }

    /// Phase offset of the π/2 pulses.
    fn pulse_phase(self) -> f64 {
        match self {
            Direction::Up => PI,
            Direction::Down => 0.0,
        }
    }

    /// +1 for sweeps from below to above resonance.
    fn sweep_sign(self) -> f64 {
        match self {
            Direction::Up => -1.0,
            Direction::Down => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NovelParams {
    /// Spin-lock Rabi frequency (rad/s).
    pub rabi: f64,
    /// Seconds.
    pub lock_duration: f64,
    pub direction: Direction,
    /// Rabi frequency of the rectangular π/2 pulses (rad/s).
    pub pulse_rabi: f64,
    /// Replace the π/2 pulses by instantaneous rotations.
    pub ideal_pulses: bool,
    pub transition: Transition,
}

impl NovelParams {
    pub fn new(rabi: f64, lock_duration: f64, direction: Direction) -> Self {
        Self {
            rabi,
            lock_duration,
            direction,
            pulse_rabi: TAU * 10e6,
            ideal_pulses: false,
            transition: Transition::ZeroToMinusOne,
        }
    }

    /// Hartmann-Hahn matched lock of 10 μs.
    pub fn matched(system: &SpinSystem, direction: Direction) -> Self {
        Self::new(system.nuclear_larmor(), 10e-6, direction)
    }

    pub fn pi_half_duration(&self) -> f64 {
        if self.ideal_pulses {
            0.0
        } else {
            FRAC_PI_2 / self.pulse_rabi
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rabi >= 0.0 && self.rabi.is_finite()) {
            return Err(Error::Config(format!("NOVEL lock Rabi frequency must be ≥ 0, got {}", self.rabi)));
        }
        if !(self.lock_duration >= 0.0 && self.lock_duration.is_finite()) {
            return Err(Error::Config(format!("lock duration must be ≥ 0, got {}", self.lock_duration)));
        }
        if !self.ideal_pulses && !(self.pulse_rabi > 0.0 && self.pulse_rabi.is_finite()) {
            return Err(Error::Config("π/2 pulse Rabi frequency must be > 0".into()));
        }
        Ok(())
    }
}

/// Centre of a frequency sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CenterOn {
    ExactResonance,
    /// Offset from the exact resonance (rad/s).
    Manual(f64),
}

impl CenterOn {
    fn offset(self) -> f64 {
        match self {
            CenterOn::ExactResonance => 0.0,
            CenterOn::Manual(x) => x,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IseParams {
    /// Total sweep range (rad/s).
    pub range: f64,
    /// Seconds.
    pub duration: f64,
    /// Drive Rabi frequency (rad/s).
    pub rabi: f64,
    pub center_on: CenterOn,
    pub direction: Direction,
    pub transition: Transition,
}

impl IseParams {
    pub fn new(range: f64, duration: f64, rabi: f64, direction: Direction) -> Self {
        Self { range, duration, rabi, center_on: CenterOn::ExactResonance, direction, transition: Transition::ZeroToMinusOne }
    }

    /// Same range at sweep rate `rate` (rad/s²).
    pub fn with_rate(range: f64, rate: f64, rabi: f64, direction: Direction) -> Self {
        Self::new(range, range / rate.abs(), rabi, direction)
    }

    /// Sweep rate in rad/s².
    pub fn sweep_rate(&self) -> f64 {
        self.range / self.duration
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.range > 0.0 && self.range.is_finite()) {
            return Err(Error::Config(format!("sweep range must be > 0, got {}", self.range)));
        }
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(Error::Config(format!("sweep duration must be > 0, got {}", self.duration)));
        }
        if !(self.rabi >= 0.0 && self.rabi.is_finite()) {
            return Err(Error::Config(format!("ISE Rabi frequency must be ≥ 0, got {}", self.rabi)));
        }
        Ok(())
    }
}

/// Double-quantum settings shared by DQT-NOVEL and DQT-ISE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DqtCycleParams {
    /// Common detuning Δ (rad/s).
    pub delta: f64,
    pub alpha: f64,
    /// Framing |0⟩ ↔ |−1⟩ π pulses (seconds).
    pub pi_pulse_duration: f64,
    /// Per-tone amplitude of the DQ π/2 pulses (rad/s).
    pub dq_pulse_rabi: f64,
    pub ideal_pulses: bool,
    pub model: DqtModel,
}

impl Default for DqtCycleParams {
    fn default() -> Self {
        Self {
            delta: TAU * 40e6,
            alpha: 1.0,
            pi_pulse_duration: 50e-9,
            dq_pulse_rabi: TAU * 10e6,
            ideal_pulses: false,
            model: DqtModel::Full,
        }
    }
}

impl DqtCycleParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::Config(format!("DQT common detuning must be > 0, got {}", self.delta)));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::Config(format!("DQT amplitude factor must be ≥ 0, got {}", self.alpha)));
        }
        if !self.ideal_pulses && !(self.pi_pulse_duration > 0.0 && self.dq_pulse_rabi > 0.0) {
            return Err(Error::Config("DQT pulse duration and Rabi frequency must be > 0".into()));
        }
        Ok(())
    }

    fn tones(&self, rabi: f64, alpha: f64) -> DqtParams {
        DqtParams::symmetric(rabi, self.delta, alpha)
    }

    /// Duration of a DQ π/2 pulse from the effective Rabi frequency.
    pub fn dq_half_pi_duration(&self) -> f64 {
        if self.ideal_pulses {
            0.0
        } else {
            FRAC_PI_2 / self.tones(self.dq_pulse_rabi, 1.0).effective_rabi()
        }
    }
}

/// One cycle type with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CycleSpec {
    Novel(NovelParams),
    Ise(IseParams),
    DqtNovel { novel: NovelParams, dqt: DqtCycleParams },
    DqtIse { ise: IseParams, dqt: DqtCycleParams },
}

impl CycleSpec {
    pub fn direction(&self) -> Direction {
        match self {
            CycleSpec::Novel(p) | CycleSpec::DqtNovel { novel: p, .. } => p.direction,
            CycleSpec::Ise(p) | CycleSpec::DqtIse { ise: p, .. } => p.direction,
        }
    }

    pub fn with_direction(&self, direction: Direction) -> Self {
        let mut s = *self;
        match &mut s {
            CycleSpec::Novel(p) | CycleSpec::DqtNovel { novel: p, .. } => p.direction = direction,
            CycleSpec::Ise(p) | CycleSpec::DqtIse { ise: p, .. } => p.direction = direction,
        }
        s
    }

    pub fn build(&self, system: &SpinSystem) -> Result<Sequence> {
        match self {
            CycleSpec::Novel(p) => build_novel_cycle(p, system),
            CycleSpec::Ise(p) => build_ise_cycle(p, system),
            CycleSpec::DqtNovel { novel, dqt } => build_dqt_novel_cycle(novel, dqt, system),
            CycleSpec::DqtIse { ise, dqt } => build_dqt_ise_cycle(ise, dqt, system),
        }
    }
}

/// A cycle: laser reset, coherent segments, readout marker.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence {
    pub segments: Vec<ControlSegment>,
    pub warnings: Vec<String>,
}

impl Sequence {
    pub fn duration(&self) -> f64 {
        crate::evolution::total_duration(&self.segments)
    }

    /// Segments strictly between the leading reset and the trailing readout.
    pub fn coherent_part(&self) -> Result<&[ControlSegment]> {
        let n = self.segments.len();
        let well_formed = n >= 2
            && matches!(self.segments[0].kind, SegmentKind::LaserReset)
            && matches!(self.segments[n - 1].kind, SegmentKind::Readout)
            && self.segments[1..n - 1].iter().all(ControlSegment::is_coherent);
        if !well_formed {
            return Err(Error::Config("cycle must be [LaserReset, coherent segments…, Readout]".into()));
        }
        Ok(&self.segments[1..n - 1])
    }

    /// All microwave amplitudes multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let segments = self
            .segments
            .iter()
            .map(|s| {
                let kind = match s.kind {
                    SegmentKind::ConstantDrive(d) => SegmentKind::ConstantDrive(d.scaled(factor)),
                    SegmentKind::Chirp(ch) => SegmentKind::Chirp(Chirp { drive: ch.drive.scaled(factor), ..ch }),
                    other => other,
                };
                ControlSegment { kind, duration: s.duration }
            })
            .collect();
        Self { segments, warnings: self.warnings.clone() }
    }
}

fn sqt_pulse(system: &SpinSystem, transition: Transition, rabi: f64, phase: f64, duration: f64) -> ControlSegment {
    let params = SqtFrameParams { transition, ..SqtFrameParams::new(system, rabi, 0.0) };
    ControlSegment::constant(Drive::Sqt { params, phase }, duration)
}

/// [LaserReset, π/2(φ), lock(φ + 90°), π/2(φ), Readout]; Down shifts φ by 180°.
pub fn build_novel_cycle(params: &NovelParams, system: &SpinSystem) -> Result<Sequence> {
    params.validate()?;
    let mut warnings = Vec::new();
    let mismatch = (params.rabi - system.nuclear_larmor()).abs();
    if mismatch > 10.0 * system.max_a_perp() {
        warnings.push(format!(
            "lock Rabi frequency is {:.1} kHz from the Hartmann-Hahn match, beyond 10× the largest a_perp",
            mismatch / TAU * 1e-3
        ));
    }
    let phase = params.direction.pulse_phase();
    let half = if params.ideal_pulses {
        ControlSegment::ideal(IdealRotation { up: ZERO, down: params.transition.level(), angle: FRAC_PI_2, phase })
    } else {
        sqt_pulse(system, params.transition, params.pulse_rabi, phase, params.pi_half_duration())
    };
    let lock = SqtFrameParams { transition: params.transition, ..SqtFrameParams::new(system, params.rabi, 0.0) };
    Ok(Sequence {
        segments: vec![
            ControlSegment::laser_reset(),
            half,
            ControlSegment::constant(Drive::Sqt { params: lock, phase: FRAC_PI_2 }, params.lock_duration),
            half,
            ControlSegment::readout(),
        ],
        warnings,
    })
}

/// [LaserReset, chirp over the range about the resonance, Readout]; Down reverses the sweep.
pub fn build_ise_cycle(params: &IseParams, system: &SpinSystem) -> Result<Sequence> {
    params.validate()?;
    let mut warnings = Vec::new();
    let adiabaticity = adiabaticity_factor(params.rabi, params.sweep_rate())?;
    if adiabaticity < 0.1 {
        warnings.push(format!("adiabaticity factor {adiabaticity:.3} < 0.1: transfer will be negligible"));
    }
    let centre = params.center_on.offset();
    let half = 0.5 * params.range * params.direction.sweep_sign();
    let drive = Drive::Sqt {
        params: SqtFrameParams { transition: params.transition, ..SqtFrameParams::new(system, params.rabi, 0.0) },
        phase: 0.0,
    };
    Ok(Sequence {
        segments: vec![
            ControlSegment::laser_reset(),
            ControlSegment::chirp(Chirp { drive, start: centre - half, end: centre + half }, params.duration),
            ControlSegment::readout(),
        ],
        warnings,
    })
}

fn check_dqt_validity(tones: &DqtParams, dqt: &DqtCycleParams, warnings: &mut Vec<String>) -> Result<()> {
    if let Err(e) = tones.check_effective_validity() {
        match dqt.model {
            DqtModel::Effective => return Err(e),
            DqtModel::Full => warnings.push(e.to_string()),
        }
    }
    Ok(())
}

/// π on |0⟩ ↔ |−1⟩ as a single-tone drive of the three-level system.
fn framing_pi(dqt: &DqtCycleParams) -> ControlSegment {
    if dqt.ideal_pulses {
        return ControlSegment::ideal(IdealRotation { up: ZERO, down: MINUS, angle: PI, phase: 0.0 });
    }
    let omega = PI / dqt.pi_pulse_duration;
    let params = DqtParams { omega_p1: 0.0, omega_m1: omega, delta_common: 0.0, delta_two_photon: 0.0, alpha: 1.0 };
    ControlSegment::constant(Drive::Dqt { params, phases: DqtPhases::default(), model: DqtModel::Full }, dqt.pi_pulse_duration)
}

/// Tone phases giving a DQ rotation axis at `axis` in the (|+1⟩, |−1⟩) frame.
fn dq_axis_phases(axis: f64) -> DqtPhases {
    DqtPhases { p1: -axis, m1: 0.0 }
}

/// [LaserReset, π(0↔−1), DQ π/2, DQ lock, DQ π/2, π(0↔−1), Readout].
pub fn build_dqt_novel_cycle(novel: &NovelParams, dqt: &DqtCycleParams, system: &SpinSystem) -> Result<Sequence> {
    novel.validate()?;
    dqt.validate()?;
    let mut warnings = Vec::new();
    let lock_tones = dqt.tones(novel.rabi, dqt.alpha);
    check_dqt_validity(&lock_tones, dqt, &mut warnings)?;
    let pulse_tones = dqt.tones(dqt.dq_pulse_rabi, 1.0);
    if !dqt.ideal_pulses {
        check_dqt_validity(&pulse_tones, dqt, &mut warnings)?;
    }
    let mismatch = (lock_tones.effective_rabi() - system.nuclear_larmor()).abs();
    if mismatch > 10.0 * 2.0 * system.max_a_perp() {
        warnings.push(format!(
            "effective DQ Rabi frequency is {:.1} kHz from the Hartmann-Hahn match",
            mismatch / TAU * 1e-3
        ));
    }
    let axis = novel.direction.pulse_phase();
    let half = if dqt.ideal_pulses {
        ControlSegment::ideal(IdealRotation { up: PLUS, down: MINUS, angle: FRAC_PI_2, phase: axis })
    } else {
        ControlSegment::constant(
            Drive::Dqt { params: pulse_tones, phases: dq_axis_phases(axis), model: dqt.model },
            dqt.dq_half_pi_duration(),
        )
    };
    let mut lock_phases = dq_axis_phases(0.0);
    lock_phases.p1 += FRAC_PI_2;
    let lock = Drive::Dqt { params: lock_tones, phases: lock_phases, model: dqt.model };
    let pi = framing_pi(dqt);
    Ok(Sequence {
        segments: vec![
            ControlSegment::laser_reset(),
            pi,
            half,
            ControlSegment::constant(lock, novel.lock_duration),
            half,
            pi,
            ControlSegment::readout(),
        ],
        warnings,
    })
}

/// [LaserReset, π(0↔−1), two-tone chirp of δ with Δ fixed, π(0↔−1), Readout].
///
/// Each tone moves by the full range in opposite directions, so δ spans
/// twice the per-tone range.
pub fn build_dqt_ise_cycle(ise: &IseParams, dqt: &DqtCycleParams, _system: &SpinSystem) -> Result<Sequence> {
    ise.validate()?;
    dqt.validate()?;
    let mut warnings = Vec::new();
    let tones = dqt.tones(ise.rabi, dqt.alpha);
    check_dqt_validity(&tones, dqt, &mut warnings)?;
    let rate = 2.0 * ise.sweep_rate();
    let adiabaticity = adiabaticity_factor(tones.effective_rabi(), rate)?;
    if adiabaticity < 0.1 {
        warnings.push(format!("adiabaticity factor {adiabaticity:.3} < 0.1: transfer will be negligible"));
    }
    let centre = ise.center_on.offset();
    // the NV enters the sweep in |−1⟩, the lower level of the DQ pair
    let half = -ise.range * ise.direction.sweep_sign();
    let drive = Drive::Dqt { params: tones, phases: DqtPhases::default(), model: dqt.model };
    let pi = framing_pi(dqt);
    Ok(Sequence {
        segments: vec![
            ControlSegment::laser_reset(),
            pi,
            ControlSegment::chirp(Chirp { drive, start: centre - half, end: centre + half }, ise.duration),
            pi,
            ControlSegment::readout(),
        ],
        warnings,
    })
}

/// Per-nucleus ⟨I_z′⟩ and their sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BathPolarization {
    pub per_nucleus: Vec<f64>,
    pub total: f64,
}

/// ⟨I_z′⟩ of each nucleus from a bath density matrix.
pub fn bath_polarization_of(bath: &CMatrix) -> BathPolarization {
    let d = bath.nrows();
    let n = d.trailing_zeros() as usize;
    let mut per = vec![0.0; n];
    for k in 0..d {
        let p = bath[(k, k)].re;
        for (j, v) in per.iter_mut().enumerate() {
            *v += if (k >> (n - 1 - j)) & 1 == 1 { -0.5 * p } else { 0.5 * p };
        }
    }
    let total = per.iter().sum();
    BathPolarization { per_nucleus: per, total }
}

pub fn bath_polarization(state: &DensityState) -> BathPolarization {
    bath_polarization_of(&state.bath_reduced())
}

/// Product bath state with each nucleus at ⟨I_z′⟩ = `iz[j]`.
pub fn polarized_bath(iz: &[f64]) -> Result<CMatrix> {
    let mut rho = CMatrix::from_element(1, 1, c(1.0));
    for &p in iz {
        if !(-0.5..=0.5).contains(&p) {
            return Err(Error::Domain(format!("⟨I_z′⟩ must lie in [−½, ½], got {p}")));
        }
        let mut single = CMatrix::zeros(2, 2);
        single[(0, 0)] = c(0.5 + p);
        single[(1, 1)] = c(0.5 - p);
        rho = rho.kronecker(&single);
    }
    Ok(rho)
}

pub fn maximally_mixed_bath(n_nuclei: usize) -> CMatrix {
    let d = 1usize << n_nuclei;
    identity(d) * c(1.0 / d as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropiPlan {
    pub n_polarize: usize,
    pub m_readout: usize,
    pub polarize: CycleSpec,
    pub readout: NovelParams,
    pub tail_points: usize,
}

impl PropiPlan {
    /// Readout is an ideal-parameter NOVEL cycle in the opposite direction.
    pub fn new(system: &SpinSystem, polarize: CycleSpec, n_polarize: usize, m_readout: usize) -> Self {
        let readout = NovelParams::matched(system, polarize.direction().inverted());
        Self { n_polarize, m_readout, polarize, readout, tail_points: 30.min(m_readout.saturating_sub(1)).max(1) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_readout < 1 {
            return Err(Error::Config("PROPI needs at least one readout cycle".into()));
        }
        if self.tail_points < 1 || self.tail_points >= self.m_readout {
            return Err(Error::Config(format!(
                "tail_points must lie in [1, M): got {} with M = {}",
                self.tail_points, self.m_readout
            )));
        }
        self.readout.validate()
    }

    /// Every cycle's direction swapped.
    pub fn mirrored(&self) -> Self {
        let mut readout = self.readout;
        readout.direction = readout.direction.inverted();
        Self { polarize: self.polarize.with_direction(self.polarize.direction().inverted()), readout, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropiOptions {
    pub reset: ResetModel,
    pub readout: ReadoutModel,
    /// Uniform per-cycle relative amplitude error (0.05 = ±5%); 0 disables.
    pub amplitude_jitter: f64,
    pub seed: u64,
    pub chirp: ChirpDiscretization,
}

impl Default for PropiOptions {
    fn default() -> Self {
        Self {
            reset: ResetModel::default(),
            readout: ReadoutModel::default(),
            amplitude_jitter: 0.0,
            seed: 0,
            chirp: ChirpDiscretization::default(),
        }
    }
}

impl PropiOptions {
    pub fn ideal() -> Self {
        Self { reset: ResetModel::ideal(), ..Self::default() }
    }

    pub fn engine(&self) -> Engine {
        Engine { reset: self.reset, chirp: self.chirp }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    N,
    M,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub index: usize,
    pub phase: Phase,
    pub fluorescence: f64,
    pub p0: f64,
    /// Bath polarization after the cycle.
    pub bath: BathPolarization,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropiRecord {
    pub cycles: Vec<CycleRecord>,
    pub final_bath: CMatrix,
    pub warnings: Vec<String>,
    pub initial_bath: BathPolarization,
}

impl PropiRecord {
    fn signal(&self, phase: Phase) -> Vec<f64> {
        self.cycles.iter().filter(|r| r.phase == phase).map(|r| r.fluorescence).collect()
    }

    pub fn polarize_signal(&self) -> Vec<f64> {
        self.signal(Phase::N)
    }

    pub fn readout_signal(&self) -> Vec<f64> {
        self.signal(Phase::M)
    }

    /// Bath total ⟨I_z′⟩ after the last N-phase cycle.
    pub fn polarized_total(&self) -> f64 {
        self.cycles.iter().filter(|r| r.phase == Phase::N).last().map_or(self.initial_bath.total, |r| r.bath.total)
    }

    pub fn to_csv(&self) -> String {
        let n = self.initial_bath.per_nucleus.len();
        let mut out = String::from("cycle_index,phase,fluorescence,p0,bath_total_Iz");
        for j in 0..n {
            let _ = write!(out, ",Iz_{j}");
        }
        out.push('\n');
        for r in &self.cycles {
            let phase = match r.phase {
                Phase::N => "N",
                Phase::M => "M",
            };
            let _ = write!(out, "{},{},{:.12e},{:.12e},{:.12e}", r.index, phase, r.fluorescence, r.p0, r.bath.total);
            for v in &r.bath.per_nucleus {
                let _ = write!(out, ",{v:.12e}");
            }
            out.push('\n');
        }
        out
    }
}

/// Compiled cycle: unitary of the coherent part.
struct CompiledCycle {
    sequence: Sequence,
    unitary: CMatrix,
}

impl CompiledCycle {
    fn new(sequence: Sequence, engine: &Engine, system: &SpinSystem) -> Result<Self> {
        let unitary = engine.compile(sequence.coherent_part()?, system)?;
        Ok(Self { sequence, unitary })
    }
}

/// N polarize cycles then M readout cycles, recording the NV signal at each readout.
///
/// Each cycle is applied as a map on the bath alone: the laser leaves the NV
/// in the reset distribution, the compiled unitary acts, and the NV is traced
/// out after the readout.
pub fn run_propi(
    system: &SpinSystem,
    plan: &PropiPlan,
    options: &PropiOptions,
    initial_bath: Option<&CMatrix>,
) -> Result<PropiRecord> {
    plan.validate()?;
    system.validate()?;
    options.reset.validate()?;
    let engine = options.engine();
    let bath0 = match initial_bath {
        Some(b) => {
            if b.nrows() != system.bath_dim() {
                return Err(Error::DimensionMismatch { expected: system.bath_dim(), got: b.nrows() });
            }
            b.clone()
        }
        None => maximally_mixed_bath(system.n_nuclei()),
    };
    let polarize = CompiledCycle::new(plan.polarize.build(system)?, &engine, system)?;
    let readout = CompiledCycle::new(CycleSpec::Novel(plan.readout).build(system)?, &engine, system)?;
    let mut warnings = polarize.sequence.warnings.clone();
    warnings.extend(readout.sequence.warnings.iter().cloned());

    let mut jitter_rng = ChaCha8Rng::seed_from_u64(options.seed);
    jitter_rng.set_stream(1);
    let mut photon_rng = ChaCha8Rng::seed_from_u64(options.seed);
    photon_rng.set_stream(2);
    let noisy = options.readout.photons_per_shot.is_some();

    let weights = options.reset.nv_distribution();
    let mut bath = bath0;
    let initial = bath_polarization_of(&bath);
    let mut cycles = Vec::with_capacity(plan.n_polarize + plan.m_readout);
    let phases = [(Phase::N, plan.n_polarize, &polarize), (Phase::M, plan.m_readout, &readout)];
    let mut index = 0;
    for (phase, count, compiled) in phases {
        for _ in 0..count {
            let jittered;
            let unitary = if options.amplitude_jitter > 0.0 {
                let factor = 1.0 + options.amplitude_jitter * jitter_rng.random_range(-1.0..=1.0);
                jittered = engine.compile(compiled.sequence.scaled(factor).coherent_part()?, system)?;
                &jittered
            } else {
                &compiled.unitary
            };
            let (next, pops) = apply_reset_cycle(&bath, unitary, weights)?;
            bath = next;
            let fluorescence = options.readout.signal(
                &pops,
                system.theta,
                &options.reset,
                if noisy { Some(&mut photon_rng) } else { None },
            )?;
            cycles.push(CycleRecord { index, phase, fluorescence, p0: pops.p_zero, bath: bath_polarization_of(&bath) });
            index += 1;
        }
    }
    Ok(PropiRecord { cycles, final_bath: bath, warnings, initial_bath: initial })
}

/// Runs PROPI `repetitions` times, each starting from the bath left by the
/// previous run; returns the last record.
pub fn run_propi_repeated(
    system: &SpinSystem,
    plan: &PropiPlan,
    options: &PropiOptions,
    initial_bath: Option<&CMatrix>,
    repetitions: usize,
) -> Result<PropiRecord> {
    let mut record = run_propi(system, plan, options, initial_bath)?;
    for _ in 1..repetitions {
        let bath = record.final_bath.clone();
        record = run_propi(system, plan, options, Some(&bath))?;
    }
    Ok(record)
}

/// Reference implementation evolving the full NV ⊗ bath density matrix
/// segment by segment. No jitter or photon noise.
pub fn run_propi_full(
    system: &SpinSystem,
    plan: &PropiPlan,
    options: &PropiOptions,
    initial_bath: Option<&CMatrix>,
) -> Result<PropiRecord> {
    plan.validate()?;
    let engine = options.engine();
    let bath0 = initial_bath.cloned().unwrap_or_else(|| maximally_mixed_bath(system.n_nuclei()));
    let mut nv = CMatrix::zeros(3, 3);
    nv[(ZERO, ZERO)] = c(1.0);
    let mut state = DensityState::product(&nv, &bath0)?;
    let polarize = plan.polarize.build(system)?;
    let readout = CycleSpec::Novel(plan.readout).build(system)?;
    let mut cycles = Vec::new();
    let mut index = 0;
    for (phase, count, seq) in [(Phase::N, plan.n_polarize, &polarize), (Phase::M, plan.m_readout, &readout)] {
        for _ in 0..count {
            let mut pops = NvPopulations::default();
            for seg in &seq.segments {
                match seg.kind {
                    SegmentKind::Readout => pops = measure_nv(&state),
                    SegmentKind::LaserReset => state = laser_reset(&state, &options.reset),
                    _ => state = engine.evolve_segment(&state, seg, system)?,
                }
            }
            let fluorescence = options.readout.signal::<ChaCha8Rng>(&pops, system.theta, &options.reset, None)?;
            cycles.push(CycleRecord { index, phase, fluorescence, p0: pops.p_zero, bath: bath_polarization(&state) });
            index += 1;
        }
    }
    let mut warnings = polarize.warnings;
    warnings.extend(readout.warnings);
    Ok(PropiRecord {
        cycles,
        final_bath: state.bath_reduced(),
        warnings,
        initial_bath: bath_polarization_of(&bath0),
    })
}
