//! Diamond-lattice ¹³C bath sampling and point-dipole hyperfine couplings.
//!
//! The NV sits at the origin (a vacancy on a carbon site) with its symmetry
//! axis along [111]; the substitutional nitrogen occupies the nearest
//! neighbour along +[111] and is never a ¹³C candidate.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// μ₀/4π, T·m/A.
pub const MU0_OVER_4PI: f64 = 1e-7;

/// Closest allowed nucleus distance from the NV site.
pub const MIN_NUCLEUS_DISTANCE: f64 = 0.15e-9;
/// Largest sampling radius accepted by [`sample_bath`].
pub const MAX_SAMPLE_RADIUS: f64 = 5e-9;
/// Largest bath kept by [`sample_bath`].
pub const MAX_SAMPLED_SPINS: usize = 12;
/// Default Hilbert-space dimension cap, 3·2¹⁰.
pub const DEFAULT_DIM_CAP: usize = 3 * 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Zero-field splitting, rad/s.
    pub zero_field_splitting: f64,
    /// Electron Landé factor.
    pub g_factor: f64,
    /// Bohr magneton, J/T.
    pub bohr_magneton: f64,
    /// ¹³C gyromagnetic ratio, rad/(s·T).
    pub gamma_c13: f64,
    /// Cubic lattice constant of diamond, m.
    pub lattice_constant: f64,
    /// ¹³C natural abundance.
    pub abundance: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            zero_field_splitting: TAU * 2.870e9,
            g_factor: 2.003,
            bohr_magneton: 9.274_010_078_3e-24,
            gamma_c13: 6.728e7,
            lattice_constant: 0.3567e-9,
            abundance: 0.011,
        }
    }
}

impl PhysicalConstants {
    /// Electron gyromagnetic ratio g·μ_B/ħ, rad/(s·T).
    pub fn gamma_e(&self) -> f64 {
        self.g_factor * self.bohr_magneton / HBAR
    }

    /// Point-dipole prefactor (μ₀/4π)·g·μ_B·γ_C, so that b(r) = prefactor / r³ in rad/s.
    pub fn dipolar_prefactor(&self) -> f64 {
        MU0_OVER_4PI * self.g_factor * self.bohr_magneton * self.gamma_c13
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("zero_field_splitting", self.zero_field_splitting),
            ("g_factor", self.g_factor),
            ("bohr_magneton", self.bohr_magneton),
            ("gamma_c13", self.gamma_c13),
            ("lattice_constant", self.lattice_constant),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be strictly positive, got {v}")));
            }
        }
        // zero abundance is allowed: it describes an isotopically pure sample
        if !(0.0..=1.0).contains(&self.abundance) {
            return Err(Error::Config(format!(
                "abundance must lie in [0, 1], got {}",
                self.abundance
            )));
        }
        Ok(())
    }
}

/// One ¹³C nucleus. Couplings are angular frequencies in the nucleus's
/// primed frame: `a_par` multiplies I_z′ and `a_perp` multiplies I_x′.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathNucleus {
    pub position: Option<[f64; 3]>,
    pub a_par: f64,
    pub a_perp: f64,
}

impl BathNucleus {
    pub fn from_couplings(a_par: f64, a_perp: f64) -> Self {
        Self { position: None, a_par, a_perp }
    }

    pub fn from_position(position: [f64; 3], constants: &PhysicalConstants) -> Result<Self> {
        let (a_par, a_perp) = hyperfine_from_position(position, constants)?;
        Ok(Self { position: Some(position), a_par, a_perp })
    }

    /// √(a_par² + a_perp²).
    pub fn coupling_strength(&self) -> f64 {
        self.a_par.hypot(self.a_perp)
    }
}

/// Unit vector of the NV symmetry axis in crystal coordinates.
pub fn nv_axis() -> [f64; 3] {
    let s = 1.0 / 3f64.sqrt();
    [s, s, s]
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Secular and pseudo-secular point-dipole couplings of a nucleus at
/// `position` (metres, NV at the origin, quantization axis along [111]).
pub fn hyperfine_from_position(position: [f64; 3], constants: &PhysicalConstants) -> Result<(f64, f64)> {
    let r = norm(position);
    if !(r > MIN_NUCLEUS_DISTANCE) {
        return Err(Error::Domain(format!(
            "nucleus at {:.4} nm is closer than {:.2} nm to the NV",
            r * 1e9,
            MIN_NUCLEUS_DISTANCE * 1e9
        )));
    }
    let axis = nv_axis();
    let cos_t = (position[0] * axis[0] + position[1] * axis[1] + position[2] * axis[2]) / r;
    let cos_t = cos_t.clamp(-1.0, 1.0);
    let sin_t = (1.0 - cos_t * cos_t).sqrt();
    let b = constants.dipolar_prefactor() / (r * r * r);
    Ok((b * (1.0 - 3.0 * cos_t * cos_t), 3.0 * b * sin_t * cos_t))
}

/// All carbon sites of the diamond lattice within `radius` of the NV,
/// excluding the vacancy and the nitrogen site. Ordered lexicographically.
pub fn diamond_carbon_sites(radius: f64, lattice_constant: f64) -> Vec<[f64; 3]> {
    const FCC: [[f64; 3]; 4] = [[0.0, 0.0, 0.0], [0.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]];
    const BASIS: [[f64; 3]; 2] = [[0.0, 0.0, 0.0], [0.25, 0.25, 0.25]];
    let nitrogen = [0.25 * lattice_constant; 3];
    let cells = (radius / lattice_constant).ceil() as i64 + 1;
    let mut sites = Vec::new();
    for i in -cells..=cells {
        for j in -cells..=cells {
            for k in -cells..=cells {
                for f in FCC {
                    for b in BASIS {
                        let p = [
                            (i as f64 + f[0] + b[0]) * lattice_constant,
                            (j as f64 + f[1] + b[1]) * lattice_constant,
                            (k as f64 + f[2] + b[2]) * lattice_constant,
                        ];
                        let r = norm(p);
                        if r == 0.0 || r > radius {
                            continue;
                        }
                        let dn = norm([p[0] - nitrogen[0], p[1] - nitrogen[1], p[2] - nitrogen[2]]);
                        if dn < 1e-3 * lattice_constant {
                            continue;
                        }
                        sites.push(p);
                    }
                }
            }
        }
    }
    sites.sort_by(|a, b| cmp_position(a, b));
    sites
}

fn cmp_position(a: &[f64; 3], b: &[f64; 3]) -> Ordering {
    a[0].total_cmp(&b[0])
        .then(a[1].total_cmp(&b[1]))
        .then(a[2].total_cmp(&b[2]))
}

/// Random generator for bath `seed`. ChaCha8 is portable and bit-reproducible.
pub fn bath_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Marks each lattice site within `radius` as ¹³C with probability `abundance`.
pub fn mark_carbon13(seed: u64, radius: f64, constants: &PhysicalConstants) -> Vec<[f64; 3]> {
    let mut rng = bath_rng(seed);
    diamond_carbon_sites(radius, constants.lattice_constant)
        .into_iter()
        .filter(|_| rng.random::<f64>() < constants.abundance)
        .collect()
}

/// Descending coupling strength; ties broken by position (or couplings when
/// positions are absent) so the order is total.
pub fn strength_order(a: &BathNucleus, b: &BathNucleus) -> Ordering {
    b.coupling_strength()
        .total_cmp(&a.coupling_strength())
        .then_with(|| match (a.position, b.position) {
            (Some(pa), Some(pb)) => cmp_position(&pa, &pb),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        })
        .then(a.a_par.total_cmp(&b.a_par))
        .then(a.a_perp.total_cmp(&b.a_perp))
}

/// Samples one bath configuration: every ¹³C within `radius`, filtered by
/// `min_coupling` and truncated to the `max_spins` strongest.
pub fn sample_bath(
    seed: u64,
    radius: f64,
    min_coupling: f64,
    max_spins: usize,
    constants: &PhysicalConstants,
) -> Result<Vec<BathNucleus>> {
    constants.validate()?;
    if !(radius > 0.0 && radius <= MAX_SAMPLE_RADIUS) {
        return Err(Error::Config(format!(
            "sampling radius {:.3} nm outside (0, {:.1}] nm",
            radius * 1e9,
            MAX_SAMPLE_RADIUS * 1e9
        )));
    }
    if max_spins > MAX_SAMPLED_SPINS {
        return Err(Error::Config(format!(
            "max_spins {max_spins} exceeds the cap of {MAX_SAMPLED_SPINS}"
        )));
    }
    let mut nuclei = mark_carbon13(seed, radius, constants)
        .into_iter()
        .map(|p| BathNucleus::from_position(p, constants))
        .collect::<Result<Vec<_>>>()?;
    nuclei.retain(|n| n.coupling_strength() >= min_coupling);
    nuclei.sort_by(strength_order);
    nuclei.truncate(max_spins);
    Ok(nuclei)
}

/// NV electron plus an ordered list of bath nuclei in a static field.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinSystem {
    pub constants: PhysicalConstants,
    /// |B| in tesla.
    pub field_magnitude: f64,
    /// Angle between B and the NV axis, radians.
    pub theta: f64,
    pub nuclei: Vec<BathNucleus>,
    pub dim_cap: usize,
}

impl SpinSystem {
    pub fn new(
        constants: PhysicalConstants,
        field_magnitude: f64,
        theta: f64,
        nuclei: Vec<BathNucleus>,
    ) -> Result<Self> {
        let system = Self { constants, field_magnitude, theta, nuclei, dim_cap: DEFAULT_DIM_CAP };
        system.validate()?;
        Ok(system)
    }

    /// Aligned field, default constants.
    pub fn aligned(field_magnitude: f64, nuclei: Vec<BathNucleus>) -> Result<Self> {
        Self::new(PhysicalConstants::default(), field_magnitude, 0.0, nuclei)
    }

    pub fn with_dim_cap(mut self, cap: usize) -> Result<Self> {
        self.dim_cap = cap;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        self.constants.validate()?;
        if !(self.field_magnitude.is_finite() && self.field_magnitude >= 0.0) {
            return Err(Error::Config(format!("field magnitude must be ≥ 0, got {}", self.field_magnitude)));
        }
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&self.theta) {
            return Err(Error::Config(format!("theta must lie in [0, π/2], got {}", self.theta)));
        }
        for (j, n) in self.nuclei.iter().enumerate() {
            if !(n.a_par.is_finite() && n.a_perp.is_finite()) {
                return Err(Error::Config(format!("nucleus {j} has non-finite couplings")));
            }
            if let Some(p) = n.position {
                if !(norm(p) > MIN_NUCLEUS_DISTANCE) {
                    return Err(Error::Config(format!("nucleus {j} is too close to the NV")));
                }
            }
        }
        let dim = self.dim_checked()?;
        if dim > self.dim_cap {
            return Err(Error::DimensionCap { dim, cap: self.dim_cap });
        }
        Ok(())
    }

    fn dim_checked(&self) -> Result<usize> {
        let n = self.nuclei.len();
        if n >= usize::BITS as usize - 2 {
            return Err(Error::DimensionCap { dim: usize::MAX, cap: self.dim_cap });
        }
        Ok(3 << n)
    }

    pub fn n_nuclei(&self) -> usize {
        self.nuclei.len()
    }

    pub fn bath_dim(&self) -> usize {
        1 << self.nuclei.len()
    }

    /// Full Hilbert-space dimension 3·2ⁿ.
    pub fn dim(&self) -> usize {
        3 * self.bath_dim()
    }

    /// Bare ¹³C Larmor frequency γ_C·|B|, rad/s.
    pub fn nuclear_larmor(&self) -> f64 {
        self.constants.gamma_c13 * self.field_magnitude
    }

    pub fn field_components(&self) -> (f64, f64) {
        (self.field_magnitude * self.theta.sin(), self.field_magnitude * self.theta.cos())
    }

    /// Largest |a_perp| over the bath (zero for an empty bath).
    pub fn max_a_perp(&self) -> f64 {
        self.nuclei.iter().map(|n| n.a_perp.abs()).fold(0.0, f64::max)
    }
}

/// JSON form of a bath: frequencies in Hz, positions in nm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BathDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_nm: Option<f64>,
    pub nuclei: Vec<NucleusRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NucleusRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos_nm: Option<[f64; 3]>,
    pub a_par_hz: f64,
    pub a_perp_hz: f64,
}

impl BathDocument {
    pub fn from_nuclei(seed: Option<u64>, radius: Option<f64>, nuclei: &[BathNucleus]) -> Self {
        Self {
            seed,
            radius_nm: radius.map(|r| r * 1e9),
            nuclei: nuclei
                .iter()
                .map(|n| NucleusRecord {
                    pos_nm: n.position.map(|p| [p[0] * 1e9, p[1] * 1e9, p[2] * 1e9]),
                    a_par_hz: n.a_par / TAU,
                    a_perp_hz: n.a_perp / TAU,
                })
                .collect(),
        }
    }

    pub fn to_nuclei(&self) -> Vec<BathNucleus> {
        self.nuclei
            .iter()
            .map(|r| BathNucleus {
                position: r.pos_nm.map(|p| [p[0] * 1e-9, p[1] * 1e-9, p[2] * 1e-9]),
                a_par: r.a_par_hz * TAU,
                a_perp: r.a_perp_hz * TAU,
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
