//! Local rotation pulses and pulse sequences.
//!
//! A rotation about `axis` by per-qubit angles `(θ₁, θ₂, θ₃)` is
//! `exp(-i(θ₁/2)σ¹) exp(-i(θ₂/2)σ²) exp(-i(θ₃/2)σ³)`, assembled from exact
//! 2×2 blocks. Collective rotations (all three angles equal) leave
//! `ℋ_GHZ ⊕ ℋ_W` invariant; their restriction to the ordered basis
//! `{|000⟩, |111⟩, |W⟩, |W′⟩}` is available in closed form via
//! [`collective_block`].
//!
//! Operator products are conventionally written right-to-left, so the
//! composition `X_{π/2} U Y_{π/2}` applies `Y_{π/2}` first. A
//! [`PulseSequence`] stores its steps in the order they act on the state.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;
use core::fmt;

use crate::hamiltonians::kron3;
use crate::linalg::{apply, evolve, matmul, Complex, Matrix8, Operator, Role, StateVector, ZERO};
use crate::states;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// `exp(-i(θ/2)σ_axis)`.
pub fn single_qubit(axis: Axis, theta: f64) -> [[Complex; 2]; 2] {
    let half = 0.5 * theta;
    let c = Complex::new(libm::cos(half), 0.0);
    let s = libm::sin(half);
    match axis {
        Axis::X => {
            let m = Complex::new(0.0, -s);
            [[c, m], [m, c]]
        }
        Axis::Y => {
            let s = Complex::new(s, 0.0);
            [[c, -s], [s, c]]
        }
        Axis::Z => [
            [Complex::from_polar(1.0, -half), ZERO],
            [ZERO, Complex::from_polar(1.0, half)],
        ],
    }
}

/// Per-qubit rotation about a common axis. Angles must be finite.
pub fn rotation(axis: Axis, angles: [f64; 3]) -> Operator {
    let [a, b, c] = angles.map(|t| single_qubit(axis, t));
    Operator::with_role_unchecked(kron3(&a, &b, &c), Role::Unitary)
}

/// Rotation of a single qubit (`qubit` ∈ {0, 1, 2}, with 0 = qubit 1).
pub fn rotation_on(axis: Axis, qubit: usize, theta: f64) -> Operator {
    let mut angles = [0.0; 3];
    angles[qubit] = theta;
    rotation(axis, angles)
}

/// Collective rotation `R_θ^(3) R_θ^(2) R_θ^(1)`.
pub fn collective(axis: Axis, theta: f64) -> Operator {
    rotation(axis, [theta; 3])
}

/// 4×4 matrix on the ordered basis `{|000⟩, |111⟩, |W⟩, |W′⟩}`.
pub type Block4 = [[Complex; 4]; 4];

/// Closed-form restriction of the collective rotation by `theta` to
/// `ℋ_GHZ ⊕ ℋ_W`, with `c = cos(θ/2)`, `s = sin(θ/2)`.
pub fn collective_block(axis: Axis, theta: f64) -> Block4 {
    let c = libm::cos(0.5 * theta);
    let s = libm::sin(0.5 * theta);
    let r3 = libm::sqrt(3.0);
    let re = |x: f64| Complex::new(x, 0.0);
    let im = |x: f64| Complex::new(0.0, x);
    let diag_w = c * (1.0 - 3.0 * s * s);
    let off_w = s * (1.0 - 3.0 * c * c);
    match axis {
        Axis::X => [
            [
                re(c * c * c),
                im(s * s * s),
                im(-r3 * s * c * c),
                re(-r3 * c * s * s),
            ],
            [
                im(s * s * s),
                re(c * c * c),
                re(-r3 * c * s * s),
                im(-r3 * s * c * c),
            ],
            [
                im(-r3 * s * c * c),
                re(-r3 * c * s * s),
                re(diag_w),
                im(off_w),
            ],
            [
                re(-r3 * c * s * s),
                im(-r3 * s * c * c),
                im(off_w),
                re(diag_w),
            ],
        ],
        Axis::Y => [
            [
                re(c * c * c),
                re(-s * s * s),
                re(-r3 * s * c * c),
                re(r3 * c * s * s),
            ],
            [
                re(s * s * s),
                re(c * c * c),
                re(r3 * c * s * s),
                re(r3 * s * c * c),
            ],
            [
                re(r3 * s * c * c),
                re(r3 * c * s * s),
                re(diag_w),
                re(off_w),
            ],
            [
                re(r3 * c * s * s),
                re(-r3 * s * c * c),
                re(-off_w),
                re(diag_w),
            ],
        ],
        Axis::Z => {
            let ph = |k: f64| Complex::from_polar(1.0, k * 0.5 * theta);
            [
                [ph(-3.0), ZERO, ZERO, ZERO],
                [ZERO, ph(3.0), ZERO, ZERO],
                [ZERO, ZERO, ph(-1.0), ZERO],
                [ZERO, ZERO, ZERO, ph(1.0)],
            ]
        }
    }
}

/// Numerical projection `⟨bᵢ|op|bⱼ⟩` onto `{|000⟩, |111⟩, |W⟩, |W′⟩}`.
pub fn project_block(op: &Operator) -> Block4 {
    let basis = states::symmetric_block_basis();
    let mut out = [[ZERO; 4]; 4];
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            out[i][j] = op.matrix_element(bi, bj);
        }
    }
    out
}

/// Lifts coefficients on `{|000⟩, |111⟩, |W⟩, |W′⟩}` to a full state.
pub fn embed(coeffs: &[Complex; 4]) -> StateVector {
    states::symmetric_block_basis()
        .iter()
        .zip(coeffs.iter())
        .fold(StateVector::zero(), |acc, (b, c)| acc + *b * *c)
}

pub fn block_apply(block: &Block4, v: &[Complex; 4]) -> [Complex; 4] {
    let mut out = [ZERO; 4];
    for (o, row) in out.iter_mut().zip(block.iter()) {
        *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
    }
    out
}

fn column(block: &Block4, k: usize) -> [Complex; 4] {
    [block[0][k], block[1][k], block[2][k], block[3][k]]
}

/// Eigenbases of the π/2 collective blocks: the `𝒳` vectors diagonalize
/// `X^(4×4)_{π/2}` and are the columns of `Y^(4×4)_{π/2}`; the `𝒴` vectors
/// diagonalize `Y^(4×4)_{π/2}` and are the columns of `X^(4×4)_{π/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XyEigenbases {
    pub x_vectors: [[Complex; 4]; 4],
    pub lambda_x: [Complex; 4],
    pub y_vectors: [[Complex; 4]; 4],
    pub lambda_y: [Complex; 4],
}

impl XyEigenbases {
    /// `|X_{k+1}⟩` as a full state.
    pub fn x_state(&self, k: usize) -> StateVector {
        embed(&self.x_vectors[k])
    }

    /// `|Y_{k+1}⟩` as a full state.
    pub fn y_state(&self, k: usize) -> StateVector {
        embed(&self.y_vectors[k])
    }
}

pub fn xy_eigenbases() -> XyEigenbases {
    let x_half = collective_block(Axis::X, core::f64::consts::FRAC_PI_2);
    let y_half = collective_block(Axis::Y, core::f64::consts::FRAC_PI_2);
    let e_plus = Complex::from_polar(1.0, FRAC_PI_4);
    let e_minus = Complex::from_polar(1.0, -FRAC_PI_4);
    XyEigenbases {
        x_vectors: [0, 1, 2, 3].map(|k| column(&y_half, k)),
        lambda_x: [-e_plus, -e_minus, e_minus, e_plus],
        y_vectors: [0, 1, 2, 3].map(|k| column(&x_half, k)),
        lambda_y: [-e_minus, -e_plus, e_plus, e_minus],
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum PulseStep {
    /// Instantaneous rotation about `axis` with per-qubit `angles`.
    LocalRotation { axis: Axis, angles: [f64; 3] },
    /// `exp(-i H t)` for `t = duration`.
    FreeEvolution {
        hamiltonian: Operator,
        duration: f64,
    },
}

impl PulseStep {
    pub fn rotate(axis: Axis, angles: [f64; 3]) -> Self {
        PulseStep::LocalRotation { axis, angles }
    }

    pub fn collective(axis: Axis, theta: f64) -> Self {
        PulseStep::LocalRotation {
            axis,
            angles: [theta; 3],
        }
    }

    pub fn on_qubit(axis: Axis, qubit: usize, theta: f64) -> Self {
        let mut angles = [0.0; 3];
        angles[qubit] = theta;
        PulseStep::LocalRotation { axis, angles }
    }

    pub fn evolve(hamiltonian: Operator, duration: f64) -> Self {
        PulseStep::FreeEvolution {
            hamiltonian,
            duration,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            PulseStep::LocalRotation { angles, .. } => {
                if angles.iter().all(|a| a.is_finite()) {
                    Ok(())
                } else {
                    Err(Error::NonFinite("rotation angles"))
                }
            }
            PulseStep::FreeEvolution {
                hamiltonian,
                duration,
            } => {
                if !duration.is_finite() {
                    return Err(Error::NonFinite("evolution duration"));
                }
                if *duration < 0.0 {
                    return Err(Error::NegativeDuration(*duration));
                }
                if hamiltonian.role() != Role::Hermitian {
                    return Err(Error::NotHermitian {
                        deviation: hamiltonian.hermitian_deviation(),
                    });
                }
                Ok(())
            }
        }
    }

    pub fn operator(&self) -> Result<Operator> {
        match self {
            PulseStep::LocalRotation { axis, angles } => Ok(rotation(*axis, *angles)),
            PulseStep::FreeEvolution {
                hamiltonian,
                duration,
            } => evolve(hamiltonian, *duration),
        }
    }
}

/// Steps in application order: `steps[0]` acts on the state first.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSequence {
    label: String,
    steps: Vec<PulseStep>,
}

impl PulseSequence {
    pub fn new(label: impl Into<String>, steps: Vec<PulseStep>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptySequence);
        }
        for step in &steps {
            step.validate()?;
        }
        Ok(Self {
            label: label.into(),
            steps,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn steps(&self) -> &[PulseStep] {
        &self.steps
    }

    /// Duration of the first free-evolution step, if any.
    pub fn evolution_duration(&self) -> Option<f64> {
        self.steps.iter().find_map(|s| match s {
            PulseStep::FreeEvolution { duration, .. } => Some(*duration),
            PulseStep::LocalRotation { .. } => None,
        })
    }

    /// Copy with every free-evolution duration replaced by `t`.
    pub fn with_evolution_duration(&self, t: f64) -> Result<Self> {
        let steps = self
            .steps
            .iter()
            .map(|s| match s {
                PulseStep::FreeEvolution { hamiltonian, .. } => {
                    PulseStep::evolve(hamiltonian.clone(), t)
                }
                other => other.clone(),
            })
            .collect();
        Self::new(self.label.clone(), steps)
    }

    /// The full propagator, last step leftmost.
    pub fn propagator(&self) -> Result<Operator> {
        let mut total: Matrix8 = *Operator::identity().entries();
        for step in &self.steps {
            total = matmul(step.operator()?.entries(), &total);
        }
        Ok(Operator::with_role_unchecked(total, Role::Unitary))
    }
}

/// Applies every step of `seq` to `initial`, in order.
pub fn run_sequence(seq: &PulseSequence, initial: &StateVector) -> Result<StateVector> {
    initial.ensure_normalized()?;
    let mut psi = *initial;
    for step in seq.steps() {
        psi = apply(&step.operator()?, &psi);
    }
    Ok(psi)
}
