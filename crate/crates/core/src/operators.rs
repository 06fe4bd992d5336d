//! Spin operators on the composite NV ⊗ bath space.
//!
//! NV basis order is (|+1⟩, |0⟩, |−1⟩). Each nucleus is one tensor factor,
//! nucleus 0 most significant, with |↑⟩ (I_z′ = +½) at index 0.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

pub const PLUS: usize = 0;
pub const ZERO: usize = 1;
pub const MINUS: usize = 2;

/// S_z eigenvalue of each NV basis index.
pub const MS: [f64; 3] = [1.0, 0.0, -1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NvLevel {
    Plus,
    Zero,
    Minus,
}

impl NvLevel {
    pub fn index(self) -> usize {
        match self {
            NvLevel::Plus => PLUS,
            NvLevel::Zero => ZERO,
            NvLevel::Minus => MINUS,
        }
    }

    pub fn ms(self) -> i32 {
        match self {
            NvLevel::Plus => 1,
            NvLevel::Zero => 0,
            NvLevel::Minus => -1,
        }
    }
}

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// |a⟩⟨b| on the NV.
pub fn nv_ket_bra(a: usize, b: usize) -> CMatrix {
    let mut m = CMatrix::zeros(3, 3);
    m[(a, b)] = c(1.0);
    m
}

pub fn nv_sz() -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(3, MS.iter().map(|&x| c(x))))
}

pub fn nv_sx() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = CMatrix::zeros(3, 3);
    m[(PLUS, ZERO)] = c(s);
    m[(ZERO, PLUS)] = c(s);
    m[(ZERO, MINUS)] = c(s);
    m[(MINUS, ZERO)] = c(s);
    m
}

pub fn nv_sy() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = CMatrix::zeros(3, 3);
    m[(PLUS, ZERO)] = C64::new(0.0, -s);
    m[(ZERO, PLUS)] = C64::new(0.0, s);
    m[(ZERO, MINUS)] = C64::new(0.0, -s);
    m[(MINUS, ZERO)] = C64::new(0.0, s);
    m
}

/// Spin-½ operators (X, Y, Z)/2 on the NV pair (a, b), with |a⟩ as "up".
pub fn nv_pair_ops(a: usize, b: usize) -> [CMatrix; 3] {
    let mut x = CMatrix::zeros(3, 3);
    let mut y = CMatrix::zeros(3, 3);
    let mut z = CMatrix::zeros(3, 3);
    x[(a, b)] = c(0.5);
    x[(b, a)] = c(0.5);
    y[(a, b)] = C64::new(0.0, -0.5);
    y[(b, a)] = C64::new(0.0, 0.5);
    z[(a, a)] = c(0.5);
    z[(b, b)] = c(-0.5);
    [x, y, z]
}

fn bit_is_down(state: usize, n: usize, j: usize) -> bool {
    (state >> (n - 1 - j)) & 1 == 1
}

fn flip_mask(n: usize, j: usize) -> usize {
    1 << (n - 1 - j)
}

/// I_jz on the 2ⁿ bath space.
pub fn bath_iz(n: usize, j: usize) -> CMatrix {
    let d = 1 << n;
    CMatrix::from_fn(d, d, |r, col| {
        if r == col {
            c(if bit_is_down(r, n, j) { -0.5 } else { 0.5 })
        } else {
            c(0.0)
        }
    })
}

/// I_jx on the 2ⁿ bath space.
pub fn bath_ix(n: usize, j: usize) -> CMatrix {
    let d = 1 << n;
    let mask = flip_mask(n, j);
    CMatrix::from_fn(d, d, |r, col| if r ^ col == mask { c(0.5) } else { c(0.0) })
}

/// I_jy on the 2ⁿ bath space.
pub fn bath_iy(n: usize, j: usize) -> CMatrix {
    let d = 1 << n;
    let mask = flip_mask(n, j);
    CMatrix::from_fn(d, d, |r, col| {
        if r ^ col != mask {
            return c(0.0);
        }
        // ⟨↑|I_y|↓⟩ = −i/2
        if bit_is_down(col, n, j) {
            C64::new(0.0, -0.5)
        } else {
            C64::new(0.0, 0.5)
        }
    })
}

/// Σ_j coeff_j I_jz, built directly on the diagonal.
pub fn bath_zeeman(n: usize, coeffs: &[f64]) -> CMatrix {
    let d = 1 << n;
    let diag = nalgebra::DVector::from_fn(d, |k, _| {
        let v: f64 = (0..n)
            .map(|j| if bit_is_down(k, n, j) { -0.5 } else { 0.5 } * coeffs[j])
            .sum();
        c(v)
    });
    CMatrix::from_diagonal(&diag)
}

/// Σ_j (a_par,j I_jz + a_perp,j I_jx).
pub fn bath_hyperfine(n: usize, a_par: &[f64], a_perp: &[f64]) -> CMatrix {
    let mut m = bath_zeeman(n, a_par);
    let d = 1 << n;
    for k in 0..d {
        for j in 0..n {
            m[(k ^ flip_mask(n, j), k)] += c(0.5 * a_perp[j]);
        }
    }
    m
}

/// Kronecker product a ⊗ b.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// nv ⊗ bath for a 3×3 NV operator and a 2ⁿ bath operator.
pub fn embed(nv: &CMatrix, bath: &CMatrix) -> CMatrix {
    kron(nv, bath)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// Adds `weight · |a⟩⟨b| ⊗ bath` into `h` without forming the Kronecker product.
pub fn add_nv_block(h: &mut CMatrix, a: usize, b: usize, weight: C64, bath: &CMatrix) {
    let d = bath.nrows();
    let mut view = h.view_mut((a * d, b * d), (d, d));
    view.zip_apply(bath, |x, y| *x += weight * y);
}

/// Full operator set lifted to the composite space.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub n_nuclei: usize,
    pub sx: CMatrix,
    pub sy: CMatrix,
    pub sz: CMatrix,
    pub ix: Vec<CMatrix>,
    pub iy: Vec<CMatrix>,
    pub iz: Vec<CMatrix>,
    /// `projectors[a][b]` = |a⟩⟨b| ⊗ 1.
    pub projectors: Vec<Vec<CMatrix>>,
}

/// Builds every single-spin operator on the 3·2ⁿ space. Memory grows as
/// (3n + 12)·(3·2ⁿ)², so `dim_cap` guards against accidental blow-up.
pub fn spin_operators(n_nuclei: usize, dim_cap: usize) -> Result<SpinOperators> {
    if n_nuclei >= 40 || 3usize << n_nuclei > dim_cap {
        return Err(Error::DimensionCap { dim: 3usize.saturating_mul(1 << n_nuclei.min(40)), cap: dim_cap });
    }
    let d = 1 << n_nuclei;
    let id_b = identity(d);
    let id_nv = identity(3);
    let lift_nv = |m: &CMatrix| embed(m, &id_b);
    let lift_b = |m: &CMatrix| embed(&id_nv, m);
    Ok(SpinOperators {
        n_nuclei,
        sx: lift_nv(&nv_sx()),
        sy: lift_nv(&nv_sy()),
        sz: lift_nv(&nv_sz()),
        ix: (0..n_nuclei).map(|j| lift_b(&bath_ix(n_nuclei, j))).collect(),
        iy: (0..n_nuclei).map(|j| lift_b(&bath_iy(n_nuclei, j))).collect(),
        iz: (0..n_nuclei).map(|j| lift_b(&bath_iz(n_nuclei, j))).collect(),
        projectors: (0..3)
            .map(|a| (0..3).map(|b| lift_nv(&nv_ket_bra(a, b))).collect())
            .collect(),
    })
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// ‖A − A†‖_F / max(‖A‖_F, tiny).
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    let n = a.norm();
    if n == 0.0 {
        return 0.0;
    }
    (a - a.adjoint()).norm() / n
}
