//! Dense complex linear algebra on the three-qubit Hilbert space.
//!
//! Everything is a fixed-size array: states are `[Complex; 8]`, operators are
//! `[[Complex; 8]; 8]`. Hermitian operators are diagonalized with a cyclic
//! complex Jacobi sweep, which keeps eigenvectors orthonormal to machine
//! precision even inside the heavily degenerate spectra these Hamiltonians
//! have. Propagators are assembled from that decomposition.

use core::ops::{Add, Index, Mul, Neg, Sub};

use crate::tolerances::{EIGEN_RESIDUAL, HERMITIAN, PHASE_RELATED, UNITARY};
use crate::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Hilbert-space dimension for three qubits.
pub const DIM: usize = 8;

pub type Matrix8 = [[Complex; DIM]; DIM];

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);
pub(crate) const I: Complex = Complex::new(0.0, 1.0);

pub(crate) fn zero_matrix() -> Matrix8 {
    [[ZERO; DIM]; DIM]
}

pub(crate) fn identity_matrix() -> Matrix8 {
    let mut m = zero_matrix();
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = ONE;
    }
    m
}

pub(crate) fn matmul(a: &Matrix8, b: &Matrix8) -> Matrix8 {
    let mut out = zero_matrix();
    for r in 0..DIM {
        for k in 0..DIM {
            let ark = a[r][k];
            if ark == ZERO {
                continue;
            }
            for c in 0..DIM {
                out[r][c] += ark * b[k][c];
            }
        }
    }
    out
}

pub(crate) fn dagger(a: &Matrix8) -> Matrix8 {
    let mut out = zero_matrix();
    for r in 0..DIM {
        for c in 0..DIM {
            out[c][r] = a[r][c].conj();
        }
    }
    out
}

/// Largest elementwise modulus of `a - b`.
pub fn max_abs_diff(a: &Matrix8, b: &Matrix8) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..DIM {
        for c in 0..DIM {
            worst = worst.max((a[r][c] - b[r][c]).norm());
        }
    }
    worst
}

fn all_finite(m: &Matrix8) -> bool {
    m.iter()
        .flatten()
        .all(|z| z.re.is_finite() && z.im.is_finite())
}

fn hermitian_deviation(m: &Matrix8) -> f64 {
    max_abs_diff(m, &dagger(m))
}

fn unitary_deviation(m: &Matrix8) -> f64 {
    max_abs_diff(&matmul(m, &dagger(m)), &identity_matrix())
}

/// Three-qubit pure state. Amplitude `k` belongs to basis label `b₁b₂b₃`
/// with `k = 4·b₁ + 2·b₂ + b₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    amps: [Complex; DIM],
}

impl StateVector {
    /// Computational basis state `|k⟩`.
    pub fn basis(k: usize) -> Self {
        assert!(k < DIM, "basis index {k} out of range");
        let mut amps = [ZERO; DIM];
        amps[k] = ONE;
        Self { amps }
    }

    pub fn from_amps(amps: [Complex; DIM]) -> Result<Self> {
        if amps.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(Self { amps })
        } else {
            Err(Error::NonFinite("state amplitudes"))
        }
    }

    /// Builds a state from real amplitudes; handy for the real-valued
    /// eigenbases of the coupling Hamiltonians.
    pub fn from_real(amps: [f64; DIM]) -> Self {
        Self {
            amps: amps.map(|x| Complex::new(x, 0.0)),
        }
    }

    pub(crate) const fn from_amps_unchecked(amps: [Complex; DIM]) -> Self {
        Self { amps }
    }

    pub fn zero() -> Self {
        Self { amps: [ZERO; DIM] }
    }

    pub fn amps(&self) -> &[Complex; DIM] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// Returns the state rescaled to unit norm. A zero vector is returned
    /// unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            *self
        } else {
            *self * (1.0 / n)
        }
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Complex {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest per-component modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn ensure_normalized(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() < crate::tolerances::NORMALIZED_INPUT {
            Ok(())
        } else {
            Err(Error::NotNormalized { norm_sqr: n })
        }
    }
}

impl Index<usize> for StateVector {
    type Output = Complex;

    fn index(&self, k: usize) -> &Complex {
        &self.amps[k]
    }
}

impl Add for StateVector {
    type Output = StateVector;

    fn add(mut self, rhs: StateVector) -> StateVector {
        for (a, b) in self.amps.iter_mut().zip(rhs.amps) {
            *a += b;
        }
        self
    }
}

impl Sub for StateVector {
    type Output = StateVector;

    fn sub(self, rhs: StateVector) -> StateVector {
        self + (-rhs)
    }
}

impl Neg for StateVector {
    type Output = StateVector;

    fn neg(self) -> StateVector {
        StateVector {
            amps: self.amps.map(|z| -z),
        }
    }
}

impl Mul<Complex> for StateVector {
    type Output = StateVector;

    fn mul(self, rhs: Complex) -> StateVector {
        StateVector {
            amps: self.amps.map(|z| z * rhs),
        }
    }
}

impl Mul<f64> for StateVector {
    type Output = StateVector;

    fn mul(self, rhs: f64) -> StateVector {
        StateVector {
            amps: self.amps.map(|z| z * rhs),
        }
    }
}

/// What an [`Operator`] is known to be. The flag is only set after the
/// matrix passed the corresponding check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Hermitian,
    Unitary,
    General,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    entries: Matrix8,
    role: Role,
}

impl Operator {
    pub fn hermitian(entries: Matrix8) -> Result<Self> {
        if !all_finite(&entries) {
            return Err(Error::NonFinite("operator entries"));
        }
        let deviation = hermitian_deviation(&entries);
        if deviation >= HERMITIAN {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            entries,
            role: Role::Hermitian,
        })
    }

    pub fn unitary(entries: Matrix8) -> Result<Self> {
        if !all_finite(&entries) {
            return Err(Error::NonFinite("operator entries"));
        }
        let deviation = unitary_deviation(&entries);
        if deviation >= UNITARY {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self {
            entries,
            role: Role::Unitary,
        })
    }

    pub fn general(entries: Matrix8) -> Self {
        Self {
            entries,
            role: Role::General,
        }
    }

    pub(crate) fn with_role_unchecked(entries: Matrix8, role: Role) -> Self {
        Self { entries, role }
    }

    pub fn identity() -> Self {
        Self {
            entries: identity_matrix(),
            role: Role::Unitary,
        }
    }

    /// The zero operator, flagged Hermitian.
    pub fn zero() -> Self {
        Self {
            entries: zero_matrix(),
            role: Role::Hermitian,
        }
    }

    pub fn entries(&self) -> &Matrix8 {
        &self.entries
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[row][col]
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            entries: dagger(&self.entries),
            role: self.role,
        }
    }

    /// Matrix product `self · rhs`. The product of two unitaries keeps the
    /// unitary flag; anything else becomes [`Role::General`].
    pub fn compose(&self, rhs: &Operator) -> Operator {
        let role = match (self.role, rhs.role) {
            (Role::Unitary, Role::Unitary) => Role::Unitary,
            _ => Role::General,
        };
        Operator {
            entries: matmul(&self.entries, &rhs.entries),
            role,
        }
    }

    /// Entrywise sum. Hermitian plus Hermitian stays Hermitian.
    pub fn sum(&self, rhs: &Operator) -> Operator {
        let mut entries = self.entries;
        for (row, rrow) in entries.iter_mut().zip(rhs.entries.iter()) {
            for (a, b) in row.iter_mut().zip(rrow.iter()) {
                *a += b;
            }
        }
        let role = match (self.role, rhs.role) {
            (Role::Hermitian, Role::Hermitian) => Role::Hermitian,
            _ => Role::General,
        };
        Operator { entries, role }
    }

    /// Real scalar multiple; preserves the Hermitian flag only.
    pub fn scale(&self, factor: f64) -> Operator {
        let entries = self.entries.map(|row| row.map(|z| z * factor));
        let role = if self.role == Role::Hermitian {
            Role::Hermitian
        } else {
            Role::General
        };
        Operator { entries, role }
    }

    pub fn hermitian_deviation(&self) -> f64 {
        hermitian_deviation(&self.entries)
    }

    pub fn unitary_deviation(&self) -> f64 {
        unitary_deviation(&self.entries)
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        max_abs_diff(&self.entries, &other.entries)
    }

    /// `⟨bra|self|ket⟩`.
    pub fn matrix_element(&self, bra: &StateVector, ket: &StateVector) -> Complex {
        bra.inner(&apply(self, ket))
    }
}

/// Eigen-decomposition of a Hermitian operator. `vectors[k]` pairs with
/// `values[k]`; values ascend.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub values: [f64; DIM],
    pub vectors: [StateVector; DIM],
}

impl EigenSystem {
    /// `V · diag(λ) · V†`.
    pub fn reconstruct(&self) -> Matrix8 {
        self.spectral_sum(|lambda| Complex::new(lambda, 0.0))
    }

    /// `exp(-i H t)` from the stored decomposition.
    pub fn propagator(&self, t: f64) -> Operator {
        let entries = self.spectral_sum(|lambda| Complex::from_polar(1.0, -lambda * t));
        Operator::with_role_unchecked(entries, Role::Unitary)
    }

    fn spectral_sum(&self, f: impl Fn(f64) -> Complex) -> Matrix8 {
        let mut out = zero_matrix();
        for (lambda, v) in self.values.iter().zip(self.vectors.iter()) {
            let w = f(*lambda);
            for r in 0..DIM {
                let vr = v.amps[r] * w;
                for c in 0..DIM {
                    out[r][c] += vr * v.amps[c].conj();
                }
            }
        }
        out
    }

    /// Largest residual `|H v_k - λ_k v_k|` over all components and pairs.
    pub fn max_residual(&self, h: &Operator) -> f64 {
        self.values
            .iter()
            .zip(self.vectors.iter())
            .map(|(lambda, v)| apply(h, v).max_abs_diff(&(*v * *lambda)))
            .fold(0.0, f64::max)
    }
}

const MAX_JACOBI_SWEEPS: usize = 64;

/// Diagonalizes a Hermitian operator by cyclic complex Jacobi rotations.
pub fn eig_hermitian(h: &Operator) -> Result<EigenSystem> {
    if h.role != Role::Hermitian {
        return Err(Error::NotHermitian {
            deviation: h.hermitian_deviation(),
        });
    }
    let deviation = h.hermitian_deviation();
    if deviation >= HERMITIAN {
        return Err(Error::NotHermitian { deviation });
    }

    let mut a = h.entries;
    // Symmetrize away the sub-tolerance asymmetry so every rotation sees an
    // exactly Hermitian matrix.
    for r in 0..DIM {
        a[r][r] = Complex::new(a[r][r].re, 0.0);
        for c in (r + 1)..DIM {
            let avg = (a[r][c] + a[c][r].conj()) * 0.5;
            a[r][c] = avg;
            a[c][r] = avg.conj();
        }
    }
    let mut v = identity_matrix();

    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale > 0.0 {
        for _ in 0..MAX_JACOBI_SWEEPS {
            let off: f64 = (0..DIM)
                .flat_map(|r| ((r + 1)..DIM).map(move |c| (r, c)))
                .map(|(r, c)| a[r][c].norm_sqr())
                .sum();
            if libm::sqrt(off) <= f64::EPSILON * 1e-3 * scale {
                break;
            }
            for p in 0..DIM {
                for q in (p + 1)..DIM {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order = [0usize, 1, 2, 3, 4, 5, 6, 7];
    order.sort_by(|&i, &j| a[i][i].re.total_cmp(&a[j][j].re));

    let values = order.map(|k| a[k][k].re);
    let vectors = order.map(|k| {
        let mut amps = [ZERO; DIM];
        for (r, amp) in amps.iter_mut().enumerate() {
            *amp = v[r][k];
        }
        StateVector::from_amps_unchecked(amps)
    });
    let eig = EigenSystem { values, vectors };
    debug_assert!(eig.max_residual(h) < EIGEN_RESIDUAL * (1.0 + scale));
    Ok(eig)
}

/// Zeroes `a[p][q]` with `a ← G† a G`, accumulating `v ← v G`, where
/// `G = diag(1, e^{-iφ}) · [[c, s], [-s, c]]` on the (p, q) plane and
/// `φ = arg a[p][q]`.
fn jacobi_rotate(a: &mut Matrix8, v: &mut Matrix8, p: usize, q: usize) {
    let apq = a[p][q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a[p][p].re;
    let aqq = a[q][q].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    let ph_conj = phase.conj();

    // Columns: (a_kp, a_kq) <- (c a_kp - s e^{-iφ} a_kq, s a_kp + c e^{-iφ} a_kq)
    for row in a.iter_mut() {
        let kp = row[p];
        let kq = row[q];
        row[p] = kp * c - kq * ph_conj * s;
        row[q] = kp * s + kq * ph_conj * c;
    }
    for row in v.iter_mut() {
        let kp = row[p];
        let kq = row[q];
        row[p] = kp * c - kq * ph_conj * s;
        row[q] = kp * s + kq * ph_conj * c;
    }
    // Rows: (a_pk, a_qk) <- (c a_pk - s e^{iφ} a_qk, s a_pk + c e^{iφ} a_qk)
    for k in 0..DIM {
        let pk = a[p][k];
        let qk = a[q][k];
        a[p][k] = pk * c - qk * phase * s;
        a[q][k] = pk * s + qk * phase * c;
    }

    a[p][q] = ZERO;
    a[q][p] = ZERO;
    a[p][p] = Complex::new(a[p][p].re, 0.0);
    a[q][q] = Complex::new(a[q][q].re, 0.0);
}

/// `exp(-i H t)` via the eigendecomposition of `H`. Negative `t` is allowed
/// and yields the inverse propagator.
pub fn evolve(h: &Operator, t: f64) -> Result<Operator> {
    if !t.is_finite() {
        return Err(Error::NonFinite("evolution time"));
    }
    Ok(eig_hermitian(h)?.propagator(t))
}

/// `U · ψ`.
pub fn apply(u: &Operator, psi: &StateVector) -> StateVector {
    let mut amps = [ZERO; DIM];
    for (r, out) in amps.iter_mut().enumerate() {
        *out = u.entries[r]
            .iter()
            .zip(psi.amps.iter())
            .map(|(m, x)| m * x)
            .sum();
    }
    StateVector::from_amps_unchecked(amps)
}

/// `|⟨φ|ψ⟩|²`, clamped to `[0, 1]`.
pub fn fidelity(psi: &StateVector, phi: &StateVector) -> f64 {
    phi.inner(psi).norm_sqr().clamp(0.0, 1.0)
}

/// The unit scalar `z` with `ψ ≈ z·φ`.
pub fn global_phase(psi: &StateVector, phi: &StateVector) -> Result<Complex> {
    let overlap = phi.inner(psi);
    let f = overlap.norm_sqr();
    if f <= 1.0 - PHASE_RELATED {
        return Err(Error::NotPhaseRelated { fidelity: f });
    }
    Ok(overlap / overlap.norm())
}

/// Arc distance on the unit circle between two phases, in `[0, π]`.
pub fn phase_distance(a: Complex, b: Complex) -> f64 {
    (a * b.conj()).arg().abs()
}
