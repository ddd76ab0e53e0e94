use thiserror::Error;

use crate::hamiltonians::Topology;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operator is not Hermitian (max |H - H†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not unitary (max |U U† - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("wrong coupling topology: expected {expected}, got {found}")]
    WrongTopology { expected: Topology, found: Topology },

    #[error("the Rabi-driven spectrum is only defined for triangular coupling")]
    UnsupportedVariant,

    #[error("coupling strength g must be nonzero")]
    ZeroCoupling,

    #[error("this protocol requires g > 0 (got g = {g})")]
    NonPositiveCoupling { g: f64 },

    #[error(
        "isotropic singularity: gate time divergent (g = g̃ makes the symmetric state an \
         eigenstate of the coupling, so it never leaves it)"
    )]
    IsotropicSingularity,

    #[error("linear GHZ protocol requires g̃=0 (got g̃ = {g_tilde})")]
    LinearRequiresXy { g_tilde: f64 },

    #[error("the W protocol fixes Ω = -(g - g̃)/2; got a caller-supplied Ω = {omega}")]
    ConflictingOmega { omega: f64 },

    #[error("Rabi amplitude Ω must be nonzero for the analytic W state")]
    ZeroRabi,

    #[error("states are not phase-related (fidelity {fidelity})")]
    NotPhaseRelated { fidelity: f64 },

    #[error("invalid time grid: need t_min < t_max and at least 2 steps")]
    InvalidGrid,

    #[error("pulse sequence has no steps")]
    EmptySequence,

    #[error("negative evolution duration {0}")]
    NegativeDuration(f64),
}
