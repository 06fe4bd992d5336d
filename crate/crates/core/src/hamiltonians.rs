//! Hamiltonians of the NV + ¹³C system as dense matrices on the 3·2ⁿ space.
//!
//! All energies are angular frequencies (ħ = 1). Rotating-frame and
//! interaction-picture forms keep the rotating-wave approximation.

use std::f64::consts::TAU;

use nalgebra::{Matrix3, SymmetricEigen};

use crate::error::{Error, Result};
use crate::lattice_bath::SpinSystem;
use crate::operators::{
    add_nv_block, bath_hyperfine, bath_zeeman, c, embed, identity, nv_pair_ops, nv_sz, CMatrix,
    C64, MINUS, MS, PLUS, ZERO,
};

/// Driven single-quantum transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Transition {
    ZeroToMinusOne,
    ZeroToPlusOne,
}

impl Transition {
    /// NV basis index of the driven |±1⟩ level.
    pub fn level(self) -> usize {
        match self {
            Transition::ZeroToMinusOne => MINUS,
            Transition::ZeroToPlusOne => PLUS,
        }
    }
}

/// Single-quantum rotating frame: Rabi frequency Ω, detuning Δ from the
/// (numerically exact) transition, effective nuclear field B_eff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqtFrameParams {
    pub omega: f64,
    pub delta: f64,
    pub b_eff: f64,
    pub transition: Transition,
}

impl SqtFrameParams {
    /// B_eff defaults to the bare ¹³C Larmor frequency.
    pub fn new(system: &SpinSystem, omega: f64, delta: f64) -> Self {
        Self { omega, delta, b_eff: system.nuclear_larmor(), transition: Transition::ZeroToMinusOne }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega >= 0.0) {
            return Err(Error::Config(format!("SQT Rabi frequency must be ≥ 0, got {}", self.omega)));
        }
        if !(self.delta.is_finite() && self.b_eff.is_finite()) {
            return Err(Error::Config("SQT detuning and B_eff must be finite".into()));
        }
        Ok(())
    }
}

/// Two-tone double-quantum drive in the interaction picture.
///
/// Physical tone amplitudes are √α·Ω₊₁ and √α·Ω₋₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DqtParams {
    pub omega_p1: f64,
    pub omega_m1: f64,
    /// Common detuning Δ of |±1⟩ from |0⟩.
    pub delta_common: f64,
    /// Two-photon detuning δ.
    pub delta_two_photon: f64,
    pub alpha: f64,
}

impl DqtParams {
    pub fn symmetric(omega_sqt: f64, delta_common: f64, alpha: f64) -> Self {
        Self { omega_p1: omega_sqt, omega_m1: omega_sqt, delta_common, delta_two_photon: 0.0, alpha }
    }

    pub fn scaled_p1(&self) -> f64 {
        self.alpha.sqrt() * self.omega_p1
    }

    pub fn scaled_m1(&self) -> f64 {
        self.alpha.sqrt() * self.omega_m1
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_p1 >= 0.0 && self.omega_m1 >= 0.0 && self.alpha >= 0.0) {
            return Err(Error::Config("DQT amplitudes and α must be ≥ 0".into()));
        }
        if !(self.delta_common.is_finite() && self.delta_two_photon.is_finite() && self.alpha.is_finite()) {
            return Err(Error::Config("DQT detunings must be finite".into()));
        }
        Ok(())
    }

    /// Adiabatic elimination of |0⟩ needs Δ above both tone amplitudes.
    pub fn check_effective_validity(&self) -> Result<()> {
        let max_amp = self.scaled_p1().max(self.scaled_m1());
        if !(self.delta_common > max_amp) {
            return Err(Error::Domain(format!(
                "effective DQT model needs Δ > max(Ω₊₁, Ω₋₁): Δ/2π = {:.4} MHz, max amplitude/2π = {:.4} MHz",
                self.delta_common / TAU * 1e-6,
                max_amp / TAU * 1e-6
            )));
        }
        Ok(())
    }

    /// Second-order light-shift asymmetry δ_so = (Ω₊₁² − Ω₋₁²)/(4Δ).
    pub fn delta_so(&self) -> f64 {
        (self.scaled_p1().powi(2) - self.scaled_m1().powi(2)) / (4.0 * self.delta_common)
    }

    pub fn effective_rabi(&self) -> f64 {
        dqt_effective_rabi((self.omega_p1 * self.omega_m1).sqrt(), self.delta_common, self.alpha)
    }
}

/// Ω_eff = ½(√(2αΩ² + Δ²) − Δ).
pub fn dqt_effective_rabi(omega_sqt: f64, delta: f64, alpha: f64) -> f64 {
    0.5 * ((2.0 * alpha * omega_sqt * omega_sqt + delta * delta).sqrt() - delta)
}

/// Ω²/|v|, both in angular units (rad/s and rad/s²).
pub fn adiabaticity_factor(omega: f64, sweep_rate: f64) -> Result<f64> {
    if sweep_rate == 0.0 || !sweep_rate.is_finite() {
        return Err(Error::Domain(format!("sweep rate must be finite and nonzero, got {sweep_rate}")));
    }
    Ok(omega * omega / sweep_rate.abs())
}

fn nuclear_couplings(system: &SpinSystem) -> (Vec<f64>, Vec<f64>) {
    (
        system.nuclei.iter().map(|n| n.a_par).collect(),
        system.nuclei.iter().map(|n| n.a_perp).collect(),
    )
}

fn nv_lab_matrix(system: &SpinSystem) -> Matrix3<f64> {
    let d = system.constants.zero_field_splitting;
    let ge = system.constants.gamma_e();
    let (bx, bz) = system.field_components();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // basis (+1, 0, −1)
    let sx = Matrix3::new(0.0, s, 0.0, s, 0.0, s, 0.0, s, 0.0);
    let sz = Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 0.0, -1.0));
    sz * sz * d + (sx * bx + sz * bz) * ge
}

/// Lab-frame Hamiltonian without the ¹⁴N terms.
pub fn lab_hamiltonian(system: &SpinSystem) -> CMatrix {
    let n = system.n_nuclei();
    let nv = nv_lab_matrix(system).map(c);
    let nv = CMatrix::from_iterator(3, 3, nv.iter().copied());
    let id_b = identity(system.bath_dim());
    let (a_par, a_perp) = nuclear_couplings(system);
    let zeeman = bath_zeeman(n, &vec![system.nuclear_larmor(); n]);
    let hf = bath_hyperfine(n, &a_par, &a_perp);
    embed(&nv, &id_b) + embed(&identity(3), &zeeman) + embed(&nv_sz(), &hf)
}

/// NV-only eigenstates labelled by their dominant |m_s⟩ component.
#[derive(Debug, Clone, PartialEq)]
pub struct NvEigenbasis {
    /// Energies (rad/s) indexed by label (+1, 0, −1).
    pub energies: [f64; 3],
    /// Eigenvectors as columns, indexed by label.
    pub vectors: Matrix3<f64>,
    /// Squared overlap of each labelled state with its |m_s⟩.
    pub overlaps: [f64; 3],
    pub flagged: bool,
}

pub const LABEL_OVERLAP_THRESHOLD: f64 = 0.6;

pub fn nv_eigenbasis(system: &SpinSystem) -> NvEigenbasis {
    let eig = SymmetricEigen::new(nv_lab_matrix(system));
    let mut energies = [0.0; 3];
    let mut vectors = Matrix3::zeros();
    let mut overlaps = [0.0; 3];
    let mut taken = [false; 3];
    let mut flagged = false;
    for label in [PLUS, ZERO, MINUS] {
        let best = (0..3)
            .filter(|&k| !taken[k])
            .max_by(|&a, &b| eig.eigenvectors[(label, a)].abs().total_cmp(&eig.eigenvectors[(label, b)].abs()))
            .expect("three eigenvectors");
        taken[best] = true;
        let mut v = eig.eigenvectors.column(best).into_owned();
        if v[label] < 0.0 {
            v = -v;
        }
        overlaps[label] = v[label] * v[label];
        if overlaps[label] < LABEL_OVERLAP_THRESHOLD {
            flagged = true;
        }
        energies[label] = eig.eigenvalues[best];
        vectors.set_column(label, &v);
    }
    NvEigenbasis { energies, vectors, overlaps, flagged }
}

/// ⟨e_l|S_z|e_l⟩ for each labelled NV eigenstate; exactly (1, 0, −1) when aligned.
pub fn secular_sz(system: &SpinSystem) -> [f64; 3] {
    if system.theta == 0.0 || system.field_magnitude == 0.0 {
        return MS;
    }
    let basis = nv_eigenbasis(system);
    let mut out = [0.0; 3];
    for l in 0..3 {
        let v = basis.vectors.column(l);
        out[l] = v[PLUS] * v[PLUS] - v[MINUS] * v[MINUS];
    }
    out
}

/// NV resonance frequencies in Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionFrequencies {
    /// |0⟩ ↔ |−1⟩.
    pub f_sqt_minus: f64,
    /// |0⟩ ↔ |+1⟩.
    pub f_sqt_plus: f64,
    /// |−1⟩ ↔ |+1⟩.
    pub f_dqt: f64,
    /// Set when a labelled eigenstate overlaps its |m_s⟩ by less than 0.6.
    pub flagged: bool,
}

pub fn nv_transition_frequencies(system: &SpinSystem) -> TransitionFrequencies {
    let b = nv_eigenbasis(system);
    let e = b.energies;
    TransitionFrequencies {
        f_sqt_minus: (e[MINUS] - e[ZERO]).abs() / TAU,
        f_sqt_plus: (e[PLUS] - e[ZERO]).abs() / TAU,
        f_dqt: (e[PLUS] - e[MINUS]).abs() / TAU,
        flagged: b.flagged,
    }
}

/// Shared nuclear part: Σ_j b I_jz + Σ_l w_l |l⟩⟨l| ⊗ Σ_j (a_par I_jz + a_perp I_jx).
fn nuclear_terms(system: &SpinSystem, larmor: f64, level_weights: [f64; 3]) -> CMatrix {
    let n = system.n_nuclei();
    let bd = system.bath_dim();
    let (a_par, a_perp) = nuclear_couplings(system);
    let zeeman = bath_zeeman(n, &vec![larmor; n]);
    let hf = bath_hyperfine(n, &a_par, &a_perp);
    let mut h = CMatrix::zeros(3 * bd, 3 * bd);
    for l in 0..3 {
        add_nv_block(&mut h, l, l, c(1.0), &zeeman);
        if level_weights[l] != 0.0 {
            add_nv_block(&mut h, l, l, c(level_weights[l]), &hf);
        }
    }
    h
}

/// Drive-free Hamiltonian in the frame co-rotating with every NV level:
/// nuclear Zeeman plus the secular NV–nucleus coupling.
pub fn drift_hamiltonian(system: &SpinSystem) -> CMatrix {
    nuclear_terms(system, system.nuclear_larmor(), secular_sz(system))
}

/// Single-quantum rotating-frame Hamiltonian
/// Ω(σ_x cosφ + σ_y sinφ) + Δσ_z + Σ_j [B_eff I_jz′ + S_z(a_par,j I_jz′ + a_perp,j I_jx′)],
/// with spin-½ σ on {|0⟩, |driven⟩} (|0⟩ as σ_z = +½).
///
/// On the driven pair S_z = s̄ + (s₀ − s_m)σ_z, so besides the σ_z coupling
/// each nucleus sees its own static field B_eff − s̄·a_j; this keeps nuclei
/// with different couplings non-degenerate. Under misalignment the weight on
/// each level is its secular S_z expectation. The spectator level is
/// uncoupled from the drive.
pub fn sqt_rotating_hamiltonian(system: &SpinSystem, params: &SqtFrameParams, phase: f64) -> CMatrix {
    let m = params.transition.level();
    let weights = secular_sz(system);
    let mut h = nuclear_terms(system, params.b_eff, weights);
    let [x, y, z] = nv_pair_ops(ZERO, m);
    let nv = x * c(params.omega * phase.cos()) + y * c(params.omega * phase.sin()) + z * c(params.delta);
    let id_b = identity(system.bath_dim());
    h += embed(&nv, &id_b);
    h
}

/// Drive phases (radians) of the two tones.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DqtPhases {
    pub p1: f64,
    pub m1: f64,
}

/// Three-level interaction-picture Hamiltonian
/// (δ/2)S_z + ΔS_z² + (Ω₊₁/2)(e^{iφ₊₁}|+1⟩⟨0| + h.c.) + (Ω₋₁/2)(e^{iφ₋₁}|−1⟩⟨0| + h.c.)
/// + Σ_j γ_C B I_jz′ + S_z Σ_j (a_par,j I_jz′ + a_perp,j I_jx′).
pub fn dqt_interaction_hamiltonian_with_phases(system: &SpinSystem, params: &DqtParams, phases: DqtPhases) -> CMatrix {
    let mut h = nuclear_terms(system, system.nuclear_larmor(), secular_sz(system));
    let mut nv = CMatrix::zeros(3, 3);
    nv[(PLUS, PLUS)] = c(params.delta_common + 0.5 * params.delta_two_photon);
    nv[(MINUS, MINUS)] = c(params.delta_common - 0.5 * params.delta_two_photon);
    let dp = C64::from_polar(0.5 * params.scaled_p1(), phases.p1);
    let dm = C64::from_polar(0.5 * params.scaled_m1(), phases.m1);
    nv[(PLUS, ZERO)] = dp;
    nv[(ZERO, PLUS)] = dp.conj();
    nv[(MINUS, ZERO)] = dm;
    nv[(ZERO, MINUS)] = dm.conj();
    h += embed(&nv, &identity(system.bath_dim()));
    h
}

pub fn dqt_interaction_hamiltonian(system: &SpinSystem, params: &DqtParams) -> CMatrix {
    dqt_interaction_hamiltonian_with_phases(system, params, DqtPhases::default())
}

/// Effective double-quantum Hamiltonian after eliminating |0⟩:
/// (δ + δ_so)σ_z + Ω_eff(e^{i(φ₊₁−φ₋₁)}|+1⟩⟨−1| + h.c.)/2 + Σ_j γ_C B I_jz′
/// + 2σ_z Σ_j (a_par,j I_jz′ + a_perp,j I_jx′), with σ = ½(Pauli) on {|+1⟩, |−1⟩}.
/// The |0⟩ block carries only the nuclear Zeeman term.
pub fn dqt_effective_hamiltonian_with_phases(
    system: &SpinSystem,
    params: &DqtParams,
    phases: DqtPhases,
) -> Result<CMatrix> {
    params.check_effective_validity()?;
    let mut h = nuclear_terms(system, system.nuclear_larmor(), secular_sz(system));
    let mut nv = CMatrix::zeros(3, 3);
    let detuning = params.delta_two_photon + params.delta_so();
    nv[(PLUS, PLUS)] = c(0.5 * detuning);
    nv[(MINUS, MINUS)] = c(-0.5 * detuning);
    let coupling = C64::from_polar(0.5 * params.effective_rabi(), phases.p1 - phases.m1);
    nv[(PLUS, MINUS)] = coupling;
    nv[(MINUS, PLUS)] = coupling.conj();
    h += embed(&nv, &identity(system.bath_dim()));
    Ok(h)
}

pub fn dqt_effective_hamiltonian(system: &SpinSystem, params: &DqtParams) -> Result<CMatrix> {
    dqt_effective_hamiltonian_with_phases(system, params, DqtPhases::default())
}
