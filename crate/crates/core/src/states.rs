//! Named three-qubit states.
//!
//! `ℋ_GHZ = span{|000⟩, |111⟩}`, `ℋ_W = span{|W⟩, |W′⟩}` and `ℋ_rest`,
//! spanned by the Ψ doublets, are the invariant subspaces of the triangular
//! coupling.

use core::f64::consts::FRAC_1_SQRT_2;

use crate::linalg::StateVector;

const INV_SQRT3: f64 = 0.577_350_269_189_625_8;
const INV_SQRT6: f64 = 0.408_248_290_463_863;

/// `(|000⟩ + |111⟩)/√2`
pub fn ghz() -> StateVector {
    StateVector::from_real([FRAC_1_SQRT_2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, FRAC_1_SQRT_2])
}

/// `(|100⟩ + |010⟩ + |001⟩)/√3`
pub fn w() -> StateVector {
    StateVector::from_real([0.0, INV_SQRT3, INV_SQRT3, 0.0, INV_SQRT3, 0.0, 0.0, 0.0])
}

/// `(|011⟩ + |101⟩ + |110⟩)/√3`
pub fn w_prime() -> StateVector {
    StateVector::from_real([0.0, 0.0, 0.0, INV_SQRT3, 0.0, INV_SQRT3, INV_SQRT3, 0.0])
}

/// `(|100⟩ - |010⟩)/√2`
pub fn psi1() -> StateVector {
    StateVector::from_real([0.0, 0.0, -FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0, 0.0, 0.0])
}

/// `(|011⟩ - |101⟩)/√2`
pub fn psi1_prime() -> StateVector {
    StateVector::from_real([0.0, 0.0, 0.0, FRAC_1_SQRT_2, 0.0, -FRAC_1_SQRT_2, 0.0, 0.0])
}

/// `(|100⟩ + |010⟩ - 2|001⟩)/√6`
pub fn psi2() -> StateVector {
    StateVector::from_real([
        0.0,
        -2.0 * INV_SQRT6,
        INV_SQRT6,
        0.0,
        INV_SQRT6,
        0.0,
        0.0,
        0.0,
    ])
}

/// `(|011⟩ + |101⟩ - 2|110⟩)/√6`
pub fn psi2_prime() -> StateVector {
    StateVector::from_real([
        0.0,
        0.0,
        0.0,
        INV_SQRT6,
        0.0,
        INV_SQRT6,
        -2.0 * INV_SQRT6,
        0.0,
    ])
}

/// `|000⟩`
pub fn ground() -> StateVector {
    StateVector::basis(0)
}

/// `|111⟩`
pub fn top() -> StateVector {
    StateVector::basis(7)
}

/// The ordered basis `{|000⟩, |111⟩, |W⟩, |W′⟩}` of `ℋ_GHZ ⊕ ℋ_W` used by
/// the 4×4 rotation blocks.
pub fn symmetric_block_basis() -> [StateVector; 4] {
    [ground(), top(), w(), w_prime()]
}

/// `{|Ψ₁⟩, |Ψ₁′⟩, |Ψ₂⟩, |Ψ₂′⟩}`, spanning `ℋ_rest`.
pub fn rest_basis() -> [StateVector; 4] {
    [psi1(), psi1_prime(), psi2(), psi2_prime()]
}
