//! Exchange-coupling Hamiltonians and their closed-form spectra.
//!
//! All builders sum Kronecker products of Pauli matrices with the convention
//!
//! ```text
//! H = (1/2) Σ_{coupled pairs i<j} [ g (XᵢXⱼ + YᵢYⱼ) + g̃ ZᵢZⱼ ]
//! ```
//!
//! which puts `3g̃/2` on the `|000⟩`/`|111⟩` diagonal and `g` between
//! single-excitation neighbours for the triangle.

use core::fmt;

use crate::linalg::{apply, Complex, Matrix8, Operator, StateVector, DIM, I, ONE, ZERO};
use crate::states;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    /// All three pairs coupled.
    Triangular,
    /// Chain 1–2–3; qubits 1 and 3 are not coupled.
    LinearChain,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Triangular => "triangular",
            Topology::LinearChain => "linear",
        })
    }
}

impl Topology {
    fn pairs(self) -> &'static [(usize, usize)] {
        match self {
            Topology::Triangular => &[(0, 1), (0, 2), (1, 2)],
            Topology::LinearChain => &[(0, 1), (1, 2)],
        }
    }
}

/// Physical parameters. All three strengths are angular frequencies in the
/// same (arbitrary) unit; only products with time matter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    /// Transverse exchange `g`.
    pub g: f64,
    /// Longitudinal `ZZ` coupling `g̃`.
    pub g_tilde: f64,
    /// Rabi amplitude `Ω` of the collective `σx` drive; zero when absent.
    pub omega: f64,
    pub topology: Topology,
}

impl CouplingParams {
    pub fn new(g: f64, g_tilde: f64, topology: Topology) -> Self {
        Self {
            g,
            g_tilde,
            omega: 0.0,
            topology,
        }
    }

    pub fn triangular(g: f64, g_tilde: f64) -> Self {
        Self::new(g, g_tilde, Topology::Triangular)
    }

    pub fn linear(g: f64, g_tilde: f64) -> Self {
        Self::new(g, g_tilde, Topology::LinearChain)
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.g.is_finite() && self.g_tilde.is_finite() && self.omega.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite("coupling parameters"))
        }
    }

    fn require(&self, topology: Topology) -> Result<()> {
        self.validate()?;
        if self.topology == topology {
            Ok(())
        } else {
            Err(Error::WrongTopology {
                expected: topology,
                found: self.topology,
            })
        }
    }

    /// Linear-chain single-excitation energies
    /// `ε^(±) = ±√(2g² + (g̃/2)²) − g̃/2`.
    pub fn chain_energies(&self) -> (f64, f64) {
        let root = libm::sqrt(2.0 * self.g * self.g + 0.25 * self.g_tilde * self.g_tilde);
        (root - 0.5 * self.g_tilde, -root - 0.5 * self.g_tilde)
    }

    /// Driven-triangle offsets `ε^(±) = g + g̃/2 ± Ω/2`.
    pub fn rabi_offsets(&self) -> (f64, f64) {
        let base = self.g + 0.5 * self.g_tilde;
        (base + 0.5 * self.omega, base - 0.5 * self.omega)
    }

    /// Driven-triangle splittings `χ^(±) = √((g−g̃)² ± (g−g̃)Ω + Ω²)`.
    pub fn rabi_splittings(&self) -> (f64, f64) {
        let d = self.g - self.g_tilde;
        let w = self.omega;
        (
            libm::sqrt(d * d + d * w + w * w),
            libm::sqrt(d * d - d * w + w * w),
        )
    }
}

/// Single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn matrix(self) -> [[Complex; 2]; 2] {
        match self {
            Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
            Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
            Pauli::Y => [[ZERO, -I], [I, ZERO]],
            Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
        }
    }
}

/// `A ⊗ B ⊗ C` with the first factor acting on qubit 1 (most significant).
pub(crate) fn kron3(
    a: &[[Complex; 2]; 2],
    b: &[[Complex; 2]; 2],
    c: &[[Complex; 2]; 2],
) -> Matrix8 {
    let mut out = [[ZERO; DIM]; DIM];
    for r in 0..DIM {
        let (r1, r2, r3) = (r >> 2, (r >> 1) & 1, r & 1);
        for col in 0..DIM {
            let (c1, c2, c3) = (col >> 2, (col >> 1) & 1, col & 1);
            out[r][col] = a[r1][c1] * b[r2][c2] * c[r3][c3];
        }
    }
    out
}

/// Pauli string on three qubits, e.g. `[X, I, X]` is `σx¹σx³`.
pub fn pauli_string(factors: [Pauli; 3]) -> Matrix8 {
    kron3(
        &factors[0].matrix(),
        &factors[1].matrix(),
        &factors[2].matrix(),
    )
}

fn two_site(p: Pauli, i: usize, j: usize) -> Matrix8 {
    let mut factors = [Pauli::I; 3];
    factors[i] = p;
    factors[j] = p;
    pauli_string(factors)
}

fn accumulate(acc: &mut Matrix8, term: &Matrix8, weight: f64) {
    for (row, trow) in acc.iter_mut().zip(term.iter()) {
        for (a, t) in row.iter_mut().zip(trow.iter()) {
            *a += t * weight;
        }
    }
}

fn exchange(p: &CouplingParams) -> Matrix8 {
    let mut h = [[ZERO; DIM]; DIM];
    for &(i, j) in p.topology.pairs() {
        accumulate(&mut h, &two_site(Pauli::X, i, j), 0.5 * p.g);
        accumulate(&mut h, &two_site(Pauli::Y, i, j), 0.5 * p.g);
        accumulate(&mut h, &two_site(Pauli::Z, i, j), 0.5 * p.g_tilde);
    }
    h
}

/// Triangular coupling; ignores `p.omega`.
pub fn build_triangular(p: &CouplingParams) -> Result<Operator> {
    p.require(Topology::Triangular)?;
    Operator::hermitian(exchange(p))
}

/// Linear-chain coupling 1–2, 2–3; ignores `p.omega`.
pub fn build_linear(p: &CouplingParams) -> Result<Operator> {
    p.require(Topology::LinearChain)?;
    Operator::hermitian(exchange(p))
}

/// Triangular coupling plus the collective drive `(Ω/2)(σx¹ + σx² + σx³)`.
pub fn build_rabi_triangular(p: &CouplingParams) -> Result<Operator> {
    p.require(Topology::Triangular)?;
    let mut h = exchange(p);
    for k in 0..3 {
        let mut factors = [Pauli::I; 3];
        factors[k] = Pauli::X;
        accumulate(&mut h, &pauli_string(factors), 0.5 * p.omega);
    }
    Operator::hermitian(h)
}

/// Position `k` of the excitation-number ordering
/// `{|000⟩, |001⟩, |010⟩, |100⟩, |011⟩, |101⟩, |110⟩, |111⟩}`
/// maps to computational index `HAMMING_ORDER[k]`.
pub const HAMMING_ORDER: [usize; DIM] = [0, 1, 2, 4, 3, 5, 6, 7];

/// Re-indexes a matrix written in the excitation-number ordering into the
/// computational ordering.
pub fn from_hamming_order(m: &Matrix8) -> Matrix8 {
    let mut out = [[ZERO; DIM]; DIM];
    for r in 0..DIM {
        for c in 0..DIM {
            out[HAMMING_ORDER[r]][HAMMING_ORDER[c]] = m[r][c];
        }
    }
    out
}

/// Inverse of [`from_hamming_order`].
pub fn to_hamming_order(m: &Matrix8) -> Matrix8 {
    let mut out = [[ZERO; DIM]; DIM];
    for r in 0..DIM {
        for c in 0..DIM {
            out[r][c] = m[HAMMING_ORDER[r]][HAMMING_ORDER[c]];
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Exchange coupling alone.
    Bare,
    /// Exchange coupling plus the collective Rabi drive.
    Rabi,
}

/// Eigenvalues from closed forms, sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticSpectrum {
    pub values: [f64; DIM],
}

impl AnalyticSpectrum {
    fn sorted(mut values: [f64; DIM]) -> Self {
        values.sort_by(f64::total_cmp);
        Self { values }
    }
}

pub fn analytic_spectrum(p: &CouplingParams, variant: Variant) -> Result<AnalyticSpectrum> {
    p.validate()?;
    let (g, gt) = (p.g, p.g_tilde);
    let values = match (p.topology, variant) {
        (Topology::Triangular, Variant::Bare) => {
            let ghz = 1.5 * gt;
            let w = 2.0 * g - 0.5 * gt;
            let rest = -(g + 0.5 * gt);
            [ghz, ghz, w, w, rest, rest, rest, rest]
        }
        (Topology::LinearChain, Variant::Bare) => {
            let (ep, em) = p.chain_energies();
            [gt, gt, ep, ep, em, em, 0.0, 0.0]
        }
        (Topology::Triangular, Variant::Rabi) => {
            let (ep, em) = p.rabi_offsets();
            let (cp, cm) = p.rabi_splittings();
            [ep + cp, ep - cp, em + cm, em - cm, -ep, -ep, -em, -em]
        }
        (Topology::LinearChain, Variant::Rabi) => return Err(Error::UnsupportedVariant),
    };
    Ok(AnalyticSpectrum::sorted(values))
}

/// The Hamiltonian matching `variant` for the given topology.
pub fn build(p: &CouplingParams, variant: Variant) -> Result<Operator> {
    match (p.topology, variant) {
        (Topology::Triangular, Variant::Bare) => build_triangular(p),
        (Topology::LinearChain, Variant::Bare) => build_linear(p),
        (Topology::Triangular, Variant::Rabi) => build_rabi_triangular(p),
        (Topology::LinearChain, Variant::Rabi) => Err(Error::UnsupportedVariant),
    }
}

/// Eigenbasis of the triangular coupling:
/// `{|000⟩, |111⟩, |W⟩, |W′⟩, |Ψ₁⟩, |Ψ₁′⟩, |Ψ₂⟩, |Ψ₂′⟩}`.
pub fn subspace_basis() -> [StateVector; DIM] {
    [
        states::ground(),
        states::top(),
        states::w(),
        states::w_prime(),
        states::psi1(),
        states::psi1_prime(),
        states::psi2(),
        states::psi2_prime(),
    ]
}

/// Triangular-coupling eigenvalue of each [`subspace_basis`] member, in the
/// same order.
pub fn subspace_energies(p: &CouplingParams) -> [f64; DIM] {
    let ghz = 1.5 * p.g_tilde;
    let w = 2.0 * p.g - 0.5 * p.g_tilde;
    let rest = -(p.g + 0.5 * p.g_tilde);
    [ghz, ghz, w, w, rest, rest, rest, rest]
}

/// Eigenvectors of the linear chain, labelled, with the coefficients that
/// expand `|W⟩` over the `|W⟩^(±)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearEigenbasis {
    pub eps_plus: f64,
    pub eps_minus: f64,
    /// `|W⟩^(±) = C^(±)(|100⟩ + (ε^(±)/g)|010⟩ + |001⟩)`
    pub w_plus: StateVector,
    pub w_minus: StateVector,
    /// `|W′⟩^(±) = C^(±)(|011⟩ + (ε^(±)/g)|101⟩ + |110⟩)`
    pub w_prime_plus: StateVector,
    pub w_prime_minus: StateVector,
    /// `(|001⟩ − |100⟩)/√2`, zero energy.
    pub psi: StateVector,
    /// `(|011⟩ − |110⟩)/√2`, zero energy.
    pub psi_prime: StateVector,
    /// `|000⟩` and `|111⟩`, energy `g̃`.
    pub ground: StateVector,
    pub top: StateVector,
    pub c_plus: f64,
    pub c_minus: f64,
    /// `|W⟩ = A^(+)|W⟩^(+) + A^(−)|W⟩^(−)`
    pub a_plus: f64,
    pub a_minus: f64,
}

impl LinearEigenbasis {
    /// `(label, vector, eigenvalue)` for every labelled eigenvector.
    pub fn labelled(&self, g_tilde: f64) -> [(&'static str, StateVector, f64); DIM] {
        [
            ("000", self.ground, g_tilde),
            ("111", self.top, g_tilde),
            ("W+", self.w_plus, self.eps_plus),
            ("W'+", self.w_prime_plus, self.eps_plus),
            ("W-", self.w_minus, self.eps_minus),
            ("W'-", self.w_prime_minus, self.eps_minus),
            ("Psi", self.psi, 0.0),
            ("Psi'", self.psi_prime, 0.0),
        ]
    }
}

pub fn linear_eigenbasis(p: &CouplingParams) -> Result<LinearEigenbasis> {
    p.require(Topology::LinearChain)?;
    if p.g == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    let (eps_plus, eps_minus) = p.chain_energies();
    let ratio_p = eps_plus / p.g;
    let ratio_m = eps_minus / p.g;
    let c_plus = 1.0 / libm::sqrt(2.0 + ratio_p * ratio_p);
    let c_minus = 1.0 / libm::sqrt(2.0 + ratio_m * ratio_m);

    // Indices: |001⟩ = 1, |010⟩ = 2, |100⟩ = 4, |011⟩ = 3, |101⟩ = 5, |110⟩ = 6.
    let single = |c: f64, r: f64| {
        let mut a = [0.0; DIM];
        a[4] = c;
        a[2] = c * r;
        a[1] = c;
        StateVector::from_real(a)
    };
    let double = |c: f64, r: f64| {
        let mut a = [0.0; DIM];
        a[3] = c;
        a[5] = c * r;
        a[6] = c;
        StateVector::from_real(a)
    };
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let mut psi = [0.0; DIM];
    psi[1] = h;
    psi[4] = -h;
    let mut psi_prime = [0.0; DIM];
    psi_prime[3] = h;
    psi_prime[6] = -h;

    // √3|W⟩ = u⁺·(g − ε⁻)/(ε⁺ − ε⁻) + u⁻·(ε⁺ − g)/(ε⁺ − ε⁻) with
    // u^(±) = |W⟩^(±)/C^(±).
    let spread = eps_plus - eps_minus;
    let inv_sqrt3 = 1.0 / libm::sqrt(3.0);
    let a_plus = (p.g - eps_minus) / spread / c_plus * inv_sqrt3;
    let a_minus = (eps_plus - p.g) / spread / c_minus * inv_sqrt3;

    Ok(LinearEigenbasis {
        eps_plus,
        eps_minus,
        w_plus: single(c_plus, ratio_p),
        w_minus: single(c_minus, ratio_m),
        w_prime_plus: double(c_plus, ratio_p),
        w_prime_minus: double(c_minus, ratio_m),
        psi: StateVector::from_real(psi),
        psi_prime: StateVector::from_real(psi_prime),
        ground: states::ground(),
        top: states::top(),
        c_plus,
        c_minus,
        a_plus,
        a_minus,
    })
}

/// Projector `Σ |v⟩⟨v|` onto the span of orthonormal `vectors`.
pub fn projector(vectors: &[StateVector]) -> Matrix8 {
    let mut out = [[ZERO; DIM]; DIM];
    for v in vectors {
        for r in 0..DIM {
            for c in 0..DIM {
                out[r][c] += v[r] * v[c].conj();
            }
        }
    }
    out
}

/// Squared norm of the component of `H·v` outside `span(subspace)`, for
/// checking invariant subspaces.
pub fn leakage(h: &Operator, v: &StateVector, subspace: &[StateVector]) -> f64 {
    let hv = apply(h, v);
    let inside = subspace
        .iter()
        .fold(StateVector::zero(), |acc, b| acc + *b * b.inner(&hv));
    (hv - inside).norm_sqr()
}
