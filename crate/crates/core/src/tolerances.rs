//! Numerical thresholds shared by the library checks, the verification suite
//! and the tests.
//!
//! The ladder: algebraic identities hold to `1e-12`, eigensystem residuals to
//! `1e-10`, end-to-end protocol fidelity deficits to `1e-9`.

/// Max `|H - H†|` accepted for an operator flagged Hermitian.
pub const HERMITIAN: f64 = 1e-12;
/// Max `|U U† - I|` accepted for an operator flagged unitary.
pub const UNITARY: f64 = 1e-12;
/// Per-component eigen-residual `|H v - λ v|`.
pub const EIGEN_RESIDUAL: f64 = 1e-10;
/// Orthonormality of eigenvectors and basis sets.
pub const ORTHONORMAL: f64 = 1e-12;
/// Norm preservation under unitary maps.
pub const NORM: f64 = 1e-12;
/// Algebraic identities: block values, eigenrelations, decompositions.
pub const ALGEBRAIC: f64 = 1e-12;
/// Entrywise match of a constructed Hamiltonian against its reference matrix.
pub const GOLDEN_MATRIX: f64 = 1e-15;
/// Numeric vs closed-form eigenvalue deviation.
pub const SPECTRUM: f64 = 1e-10;
/// Allowed fidelity deficit `1 - F` for a protocol run.
pub const FIDELITY_DEFICIT: f64 = 1e-9;
/// Allowed arc distance between measured and predicted global phase.
pub const PHASE: f64 = 1e-8;
/// Intermediate-state identity after the entangling step.
pub const INTERMEDIATE_STATE: f64 = 1e-10;
/// Analytic W-state expression vs numerical evolution, per component.
pub const ANALYTIC_STATE: f64 = 1e-9;
/// Group products `U(t) U(-t) = I` and `U(t₁+t₂) = U(t₁) U(t₂)`.
pub const GROUP_LAW: f64 = 1e-11;
/// Agreement of the propagator with a Taylor-series oracle.
pub const TAYLOR: f64 = 1e-9;
/// A global phase is only extracted when `F > 1 - PHASE_RELATED`.
pub const PHASE_RELATED: f64 = 1e-6;
/// Input states must have `|‖ψ‖² - 1|` below this.
pub const NORMALIZED_INPUT: f64 = 1e-9;
/// Overlaps smaller than this report a phase argument of zero.
pub const OVERLAP_FLOOR: f64 = 1e-12;
/// Variance bound for the t-independent isotropic GHZ fidelity.
pub const ISOTROPIC_VARIANCE: f64 = 1e-20;
/// The Y·U·Y sequence without drive must stay below `1 - NO_GO_W_GAP`.
pub const NO_GO_W_GAP: f64 = 1e-3;
/// The linear chain with g̃ ≠ 0 must stay below `1 - LINEAR_DIAGNOSTIC_GAP`.
pub const LINEAR_DIAGNOSTIC_GAP: f64 = 1e-4;
/// Exit threshold used by the `spectrum` command.
pub const CLI_SPECTRUM: f64 = 1e-9;
/// Exit threshold on phase error used by the `run` command.
pub const CLI_PHASE: f64 = 1e-6;
