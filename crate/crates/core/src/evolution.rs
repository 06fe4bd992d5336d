//! Density-matrix evolution under piecewise-constant and chirped controls,
//! laser reset and NV readout.

use std::f64::consts::TAU;
use std::io::Write;
use std::path::{Path, PathBuf};

use nalgebra::{DVector, SymmetricEigen};
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonians::{
    drift_hamiltonian, dqt_effective_hamiltonian_with_phases, dqt_interaction_hamiltonian_with_phases, DqtParams,
    DqtPhases, SqtFrameParams,
};
use crate::lattice_bath::SpinSystem;
use crate::operators::{c, hermiticity_defect, identity, nv_pair_ops, CMatrix, C64, MINUS, PLUS, ZERO};

pub const STATE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    rho: CMatrix,
    n_nuclei: usize,
}

/// NV level populations.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NvPopulations {
    pub p_plus: f64,
    pub p_zero: f64,
    pub p_minus: f64,
}

impl NvPopulations {
    pub fn from_array(p: [f64; 3]) -> Self {
        Self { p_plus: p[PLUS], p_zero: p[ZERO], p_minus: p[MINUS] }
    }

    pub fn total(&self) -> f64 {
        self.p_plus + self.p_zero + self.p_minus
    }
}

fn check_n(n_nuclei: usize) -> Result<usize> {
    if n_nuclei > 20 {
        return Err(Error::DimensionCap { dim: usize::MAX, cap: 3 << 20 });
    }
    Ok(1 << n_nuclei)
}

impl DensityState {
    pub fn from_matrix(rho: CMatrix, n_nuclei: usize) -> Result<Self> {
        let d = 3 * check_n(n_nuclei)?;
        if rho.nrows() != d || rho.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: rho.nrows() });
        }
        Ok(Self { rho, n_nuclei })
    }

    /// ρ_NV ⊗ ρ_bath.
    pub fn product(nv: &CMatrix, bath: &CMatrix) -> Result<Self> {
        if nv.nrows() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: nv.nrows() });
        }
        let n = bath.nrows().trailing_zeros() as usize;
        if 1 << n != bath.nrows() {
            return Err(Error::Config(format!("bath dimension {} is not a power of two", bath.nrows())));
        }
        Self::from_matrix(nv.kronecker(bath), n)
    }

    /// NV in |0⟩, bath maximally mixed.
    pub fn reset_unpolarized(n_nuclei: usize) -> Result<Self> {
        let d = check_n(n_nuclei)?;
        let mut nv = CMatrix::zeros(3, 3);
        nv[(ZERO, ZERO)] = c(1.0);
        Self::product(&nv, &(identity(d) * c(1.0 / d as f64)))
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    pub fn into_matrix(self) -> CMatrix {
        self.rho
    }

    pub fn n_nuclei(&self) -> usize {
        self.n_nuclei
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn bath_dim(&self) -> usize {
        1 << self.n_nuclei
    }

    pub fn trace(&self) -> C64 {
        self.rho.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.rho * &self.rho).trace().re
    }

    /// Hermitian, unit trace and positive semidefinite within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let norm = self.rho.norm().max(f64::MIN_POSITIVE);
        let herm = (&self.rho - self.rho.adjoint()).norm();
        if herm > tol * norm {
            return Err(Error::NotHermitian(herm / norm));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::Domain(format!("density matrix trace {tr} ≠ 1")));
        }
        let sym = (&self.rho + self.rho.adjoint()) * c(0.5);
        let min = SymmetricEigen::new(sym).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -tol {
            return Err(Error::Domain(format!("density matrix has negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    /// Tr_bath ρ.
    pub fn nv_reduced(&self) -> CMatrix {
        let d = self.bath_dim();
        CMatrix::from_fn(3, 3, |a, b| self.rho.view((a * d, b * d), (d, d)).trace())
    }

    /// Tr_NV ρ.
    pub fn bath_reduced(&self) -> CMatrix {
        let d = self.bath_dim();
        let mut out = CMatrix::zeros(d, d);
        for l in 0..3 {
            out += self.rho.view((l * d, l * d), (d, d));
        }
        out
    }

    pub fn nv_populations(&self) -> NvPopulations {
        let r = self.nv_reduced();
        NvPopulations::from_array([r[(PLUS, PLUS)].re, r[(ZERO, ZERO)].re, r[(MINUS, MINUS)].re])
    }

    /// ρ → UρU†.
    pub fn apply_unitary(&self, u: &CMatrix) -> Result<Self> {
        if u.nrows() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: u.nrows() });
        }
        Ok(Self { rho: u * &self.rho * u.adjoint(), n_nuclei: self.n_nuclei })
    }

    /// Writes `<stem>.bin` (row-major complex128, little-endian) and `<stem>.json`.
    pub fn dump(&self, dir: &Path, stem: &str) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let bin = dir.join(format!("{stem}.bin"));
        let mut buf = Vec::with_capacity(self.dim() * self.dim() * 16);
        for r in 0..self.dim() {
            for col in 0..self.dim() {
                let z = self.rho[(r, col)];
                buf.extend_from_slice(&z.re.to_le_bytes());
                buf.extend_from_slice(&z.im.to_le_bytes());
            }
        }
        std::fs::File::create(&bin)?.write_all(&buf)?;
        let meta = serde_json::json!({
            "dimension": self.dim(),
            "n_nuclei": self.n_nuclei,
            "layout": "row-major complex128 little-endian",
            "basis_labels": basis_labels(self.n_nuclei),
        });
        std::fs::write(dir.join(format!("{stem}.json")), serde_json::to_string_pretty(&meta)?)?;
        Ok(bin)
    }
}

/// Labels such as `"+1|ud"`, NV level then nuclear spins (u = I_z′ +½).
pub fn basis_labels(n_nuclei: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(3 << n_nuclei);
    for nv in ["+1", "0", "-1"] {
        for k in 0..1usize << n_nuclei {
            let spins: String =
                (0..n_nuclei).map(|j| if (k >> (n_nuclei - 1 - j)) & 1 == 1 { 'd' } else { 'u' }).collect();
            out.push(format!("{nv}|{spins}"));
        }
    }
    out
}

/// exp(−iHt) by Hermitian eigendecomposition.
pub fn propagator(h: &CMatrix, t: f64) -> Result<CMatrix> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("propagation time must be finite and ≥ 0, got {t}")));
    }
    if h.nrows() != h.ncols() {
        return Err(Error::DimensionMismatch { expected: h.nrows(), got: h.ncols() });
    }
    let defect = hermiticity_defect(h);
    if defect > 1e-10 {
        return Err(Error::NotHermitian(defect));
    }
    if t == 0.0 || h.norm() == 0.0 {
        return Ok(identity(h.nrows()));
    }
    let eig = SymmetricEigen::new((h + h.adjoint()) * c(0.5));
    let phases = DVector::from_iterator(h.nrows(), eig.eigenvalues.iter().map(|&e| C64::from_polar(1.0, -e * t)));
    let v = eig.eigenvectors;
    let mut vp = v.clone();
    for (j, mut col) in vp.column_iter_mut().enumerate() {
        col *= phases[j];
    }
    Ok(vp * v.adjoint())
}

/// ‖U†U − 1‖_F.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    (u.adjoint() * u - identity(u.nrows())).norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DqtModel {
    /// Three-level interaction picture.
    #[default]
    Full,
    /// |0⟩ adiabatically eliminated.
    Effective,
}

/// A microwave drive configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Drive {
    Sqt { params: SqtFrameParams, phase: f64 },
    Dqt { params: DqtParams, phases: DqtPhases, model: DqtModel },
}

impl Drive {
    pub fn hamiltonian(&self, system: &SpinSystem) -> Result<CMatrix> {
        match self {
            Drive::Sqt { params, phase } => {
                params.validate()?;
                Ok(crate::hamiltonians::sqt_rotating_hamiltonian(system, params, *phase))
            }
            Drive::Dqt { params, phases, model } => {
                params.validate()?;
                match model {
                    DqtModel::Full => Ok(dqt_interaction_hamiltonian_with_phases(system, params, *phases)),
                    DqtModel::Effective => dqt_effective_hamiltonian_with_phases(system, params, *phases),
                }
            }
        }
    }

    /// Swept detuning: Δ for SQT, δ for DQT.
    pub fn detuning(&self) -> f64 {
        match self {
            Drive::Sqt { params, .. } => params.delta,
            Drive::Dqt { params, .. } => params.delta_two_photon,
        }
    }

    pub fn with_detuning(&self, value: f64) -> Self {
        let mut d = *self;
        match &mut d {
            Drive::Sqt { params, .. } => params.delta = value,
            Drive::Dqt { params, .. } => params.delta_two_photon = value,
        }
        d
    }

    /// Gap of the driven two-level system at resonance.
    pub fn rabi_gap(&self) -> f64 {
        match self {
            Drive::Sqt { params, .. } => params.omega,
            Drive::Dqt { params, .. } => params.effective_rabi(),
        }
    }

    /// Multiplies all drive amplitudes by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut d = *self;
        match &mut d {
            Drive::Sqt { params, .. } => params.omega *= factor,
            Drive::Dqt { params, .. } => {
                params.omega_p1 *= factor;
                params.omega_m1 *= factor;
            }
        }
        d
    }
}

/// Linear sweep of the drive detuning from `start` to `end` (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chirp {
    pub drive: Drive,
    pub start: f64,
    pub end: f64,
}

impl Chirp {
    /// Sweep rate in rad/s².
    pub fn sweep_rate(&self, duration: f64) -> f64 {
        (self.end - self.start) / duration
    }
}

/// Instantaneous rotation by `angle` about cos(φ)X + sin(φ)Y on an NV level pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealRotation {
    pub up: usize,
    pub down: usize,
    pub angle: f64,
    pub phase: f64,
}

impl IdealRotation {
    pub fn unitary(&self, bath_dim: usize) -> CMatrix {
        let [x, y, _] = nv_pair_ops(self.up, self.down);
        let gen = x * c(self.phase.cos()) + y * c(self.phase.sin());
        // spin-½ generator: angle π inverts the pair
        let u = propagator(&gen, self.angle).expect("generator is Hermitian");
        u.kronecker(&identity(bath_dim))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentKind {
    ConstantDrive(Drive),
    Chirp(Chirp),
    LaserReset,
    /// Drive-free evolution.
    Wait,
    /// Zero-duration ideal pulse.
    Ideal(IdealRotation),
    /// Marks a fluorescence readout; no dynamics.
    Readout,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlSegment {
    pub kind: SegmentKind,
    pub duration: f64,
}

impl ControlSegment {
    pub fn constant(drive: Drive, duration: f64) -> Self {
        Self { kind: SegmentKind::ConstantDrive(drive), duration }
    }

    pub fn chirp(chirp: Chirp, duration: f64) -> Self {
        Self { kind: SegmentKind::Chirp(chirp), duration }
    }

    pub fn wait(duration: f64) -> Self {
        Self { kind: SegmentKind::Wait, duration }
    }

    pub fn laser_reset() -> Self {
        Self { kind: SegmentKind::LaserReset, duration: 0.0 }
    }

    pub fn readout() -> Self {
        Self { kind: SegmentKind::Readout, duration: 0.0 }
    }

    pub fn ideal(rotation: IdealRotation) -> Self {
        Self { kind: SegmentKind::Ideal(rotation), duration: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.duration >= 0.0 && self.duration.is_finite()) {
            return Err(Error::Config(format!("segment duration must be finite and ≥ 0, got {}", self.duration)));
        }
        if let SegmentKind::Chirp(ch) = &self.kind {
            if !(ch.start.is_finite() && ch.end.is_finite()) {
                return Err(Error::Config("chirp detuning bounds must be finite".into()));
            }
        }
        Ok(())
    }

    pub fn is_coherent(&self) -> bool {
        !matches!(self.kind, SegmentKind::LaserReset | SegmentKind::Readout)
    }
}

pub fn total_duration(segments: &[ControlSegment]) -> f64 {
    segments.iter().map(|s| s.duration).sum()
}

/// NV charge and spin initialization after a laser pulse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResetModel {
    /// Probability of NV⁻ after the laser.
    pub p_charge: f64,
    /// Probability of m_s = 0 given NV⁻.
    pub p_spin: f64,
}

impl Default for ResetModel {
    fn default() -> Self {
        Self { p_charge: 0.70, p_spin: 0.92 }
    }
}

impl ResetModel {
    pub fn ideal() -> Self {
        Self { p_charge: 1.0, p_spin: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("p_charge", self.p_charge), ("p_spin", self.p_spin)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        Ok(())
    }

    /// Weight of the bright NV⁻ |0⟩ component.
    pub fn p_eff(&self) -> f64 {
        self.p_charge * self.p_spin
    }

    /// NV populations (+1, 0, −1) after the laser. The dark charge fraction
    /// shares the spin distribution and only loses its contrast.
    pub fn nv_distribution(&self) -> [f64; 3] {
        let rest = 0.5 * (1.0 - self.p_spin);
        [rest, self.p_spin, rest]
    }
}

/// ρ → ρ_NV,reset ⊗ Tr_NV ρ. Nuclear coherences survive, NV–nucleus coherences do not.
pub fn laser_reset(state: &DensityState, model: &ResetModel) -> DensityState {
    let bath = state.bath_reduced();
    let d = bath.nrows();
    let w = model.nv_distribution();
    let mut rho = CMatrix::zeros(3 * d, 3 * d);
    for l in 0..3 {
        if w[l] != 0.0 {
            rho.view_mut((l * d, l * d), (d, d)).copy_from(&(&bath * c(w[l])));
        }
    }
    DensityState { rho, n_nuclei: state.n_nuclei }
}

pub fn measure_nv(state: &DensityState) -> NvPopulations {
    state.nv_populations()
}

/// Optical readout settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadoutModel {
    /// Fluorescence contrast between |0⟩ and |±1⟩ for an aligned field.
    pub contrast: f64,
    /// Contrast multiplier applied above `alignment_tolerance`.
    pub misaligned_contrast_factor: f64,
    /// Radians.
    pub alignment_tolerance: f64,
    /// Mean detected photons per shot from |0⟩; enables Poisson sampling.
    pub photons_per_shot: Option<f64>,
    pub shots: u64,
}

impl Default for ReadoutModel {
    fn default() -> Self {
        Self {
            contrast: 0.3,
            misaligned_contrast_factor: 0.1,
            alignment_tolerance: 0.5f64.to_radians(),
            photons_per_shot: None,
            shots: 50_000,
        }
    }
}

impl ReadoutModel {
    pub fn effective_contrast(&self, theta: f64) -> f64 {
        if theta.abs() > self.alignment_tolerance {
            self.contrast * self.misaligned_contrast_factor
        } else {
            self.contrast
        }
    }

    /// Normalized signal of the bright NV⁻ fraction, scaled by `p_charge`.
    pub fn signal<R: Rng>(&self, pops: &NvPopulations, theta: f64, reset: &ResetModel, rng: Option<&mut R>) -> Result<f64> {
        let contrast = self.effective_contrast(theta);
        let normalized = match (self.photons_per_shot, rng) {
            (Some(rate), Some(rng)) => {
                let raw = 1.0 - contrast * (pops.p_plus + pops.p_minus);
                let mean = rate * self.shots as f64 * raw.max(0.0);
                let counts = Poisson::new(mean.max(f64::MIN_POSITIVE))
                    .map_err(|e| Error::Domain(format!("photon sampling: {e}")))?
                    .sample(rng);
                let raw = counts / (rate * self.shots as f64);
                (raw - (1.0 - contrast)) / contrast
            }
            _ => fluorescence(pops, contrast)?,
        };
        Ok(reset.p_charge * normalized)
    }
}

/// 1 − contrast·(p₊ + p₋), rescaled so that |0⟩ maps to 1 and a full flip to 0.
pub fn fluorescence(pops: &NvPopulations, contrast: f64) -> Result<f64> {
    if !(contrast > 0.0 && contrast <= 1.0) {
        return Err(Error::Domain(format!("contrast must lie in (0, 1], got {contrast}")));
    }
    let raw = 1.0 - contrast * (pops.p_plus + pops.p_minus);
    Ok((raw - (1.0 - contrast)) / contrast)
}

/// Chirp substep bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChirpDiscretization {
    /// Detuning step bound as a fraction of the Rabi gap.
    pub gap_fraction: f64,
    /// Absolute detuning step bound (rad/s).
    pub max_detuning_step: f64,
    /// Seconds.
    pub max_substep: f64,
}

impl Default for ChirpDiscretization {
    fn default() -> Self {
        Self { gap_fraction: 0.1, max_detuning_step: TAU * 100e3, max_substep: 20e-9 }
    }
}

impl ChirpDiscretization {
    pub fn refined(&self, factor: f64) -> Self {
        Self {
            gap_fraction: self.gap_fraction / factor,
            max_detuning_step: self.max_detuning_step / factor,
            max_substep: self.max_substep / factor,
        }
    }

    pub fn substeps(&self, chirp: &Chirp, duration: f64) -> usize {
        let span = (chirp.end - chirp.start).abs();
        let gap = chirp.drive.rabi_gap();
        let step = if gap > 0.0 { (gap * self.gap_fraction).min(self.max_detuning_step) } else { self.max_detuning_step };
        let by_detuning = (span / step * (1.0 - 1e-12)).ceil() as usize;
        let by_time = (duration / self.max_substep * (1.0 - 1e-12)).ceil() as usize;
        by_detuning.max(by_time).max(1)
    }
}

/// Evolution settings shared by all segments of a run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Engine {
    pub reset: ResetModel,
    pub chirp: ChirpDiscretization,
}

impl Engine {
    pub fn new(reset: ResetModel) -> Self {
        Self { reset, chirp: ChirpDiscretization::default() }
    }

    pub fn ideal() -> Self {
        Self::new(ResetModel::ideal())
    }

    /// Propagator of a coherent segment; `None` for reset and readout markers.
    pub fn segment_propagator(&self, segment: &ControlSegment, system: &SpinSystem) -> Result<Option<CMatrix>> {
        segment.validate()?;
        let dim = system.dim();
        let u = match &segment.kind {
            SegmentKind::LaserReset | SegmentKind::Readout => return Ok(None),
            _ if segment.duration == 0.0 && !matches!(segment.kind, SegmentKind::Ideal(_)) => identity(dim),
            SegmentKind::ConstantDrive(drive) => propagator(&drive.hamiltonian(system)?, segment.duration)?,
            SegmentKind::Wait => propagator(&drift_hamiltonian(system), segment.duration)?,
            SegmentKind::Ideal(rot) => rot.unitary(system.bath_dim()),
            SegmentKind::Chirp(chirp) => self.chirp_propagator(chirp, segment.duration, system)?,
        };
        Ok(Some(u))
    }

    fn chirp_propagator(&self, chirp: &Chirp, duration: f64, system: &SpinSystem) -> Result<CMatrix> {
        let n = self.chirp.substeps(chirp, duration);
        let dt = duration / n as f64;
        let steps: Vec<CMatrix> = (0..n)
            .into_par_iter()
            .map(|k| {
                let mid = chirp.start + (chirp.end - chirp.start) * (k as f64 + 0.5) / n as f64;
                propagator(&chirp.drive.with_detuning(mid).hamiltonian(system)?, dt)
            })
            .collect::<Result<_>>()?;
        let mut u = identity(system.dim());
        for s in &steps {
            u = s * u;
        }
        Ok(u)
    }

    pub fn evolve_segment(&self, state: &DensityState, segment: &ControlSegment, system: &SpinSystem) -> Result<DensityState> {
        if state.dim() != system.dim() {
            return Err(Error::DimensionMismatch { expected: system.dim(), got: state.dim() });
        }
        match segment.kind {
            SegmentKind::LaserReset => Ok(laser_reset(state, &self.reset)),
            _ => match self.segment_propagator(segment, system)? {
                Some(u) => state.apply_unitary(&u),
                None => Ok(state.clone()),
            },
        }
    }

    /// Evolves through `segments`, returning the final state and NV populations at each readout marker.
    pub fn run(
        &self,
        state: &DensityState,
        segments: &[ControlSegment],
        system: &SpinSystem,
    ) -> Result<(DensityState, Vec<NvPopulations>)> {
        let mut s = state.clone();
        let mut reads = Vec::new();
        for seg in segments {
            if matches!(seg.kind, SegmentKind::Readout) {
                reads.push(measure_nv(&s));
            }
            s = self.evolve_segment(&s, seg, system)?;
        }
        Ok((s, reads))
    }

    /// Product of the propagators of coherent segments, in time order.
    pub fn compile(&self, segments: &[ControlSegment], system: &SpinSystem) -> Result<CMatrix> {
        let mut u = identity(system.dim());
        for seg in segments {
            if matches!(seg.kind, SegmentKind::LaserReset) {
                return Err(Error::Config("cannot compile a laser reset into a unitary".into()));
            }
            if let Some(s) = self.segment_propagator(seg, system)? {
                u = s * u;
            }
        }
        Ok(u)
    }
}

/// One reset-then-unitary cycle acting on the bath alone: the NV starts in
/// `nv_weights` (diagonal), the bath in `bath`. Returns the bath after the
/// cycle with the NV traced out and the NV populations at the end.
pub fn apply_reset_cycle(bath: &CMatrix, u: &CMatrix, nv_weights: [f64; 3]) -> Result<(CMatrix, NvPopulations)> {
    let d = bath.nrows();
    if u.nrows() != 3 * d {
        return Err(Error::DimensionMismatch { expected: 3 * d, got: u.nrows() });
    }
    let mut out = CMatrix::zeros(d, d);
    let mut pops = [0.0; 3];
    for l in 0..3 {
        if nv_weights[l] == 0.0 {
            continue;
        }
        for k in 0..3 {
            let block = u.view((k * d, l * d), (d, d));
            let term = block * bath * block.adjoint();
            pops[k] += nv_weights[l] * term.trace().re;
            out += term * c(nv_weights[l]);
        }
    }
    Ok((out, NvPopulations::from_array(pops)))
}

/// Expectation of a Hermitian observable.
pub fn expectation(state: &DensityState, op: &CMatrix) -> f64 {
    (state.rho() * op).trace().re
}
