//! State-vector simulation of single-step tripartite entangling protocols.
//!
//! Three qubits with pairwise exchange coupling
//!
//! ```text
//! H = (1/2) Σ_{i<j} [ g (XᵢXⱼ + YᵢYⱼ) + g̃ ZᵢZⱼ ]
//! ```
//!
//! are driven by collective or asymmetric local rotations interleaved with a
//! single free evolution, producing GHZ or W states exactly. The crate builds
//! the Hamiltonians, the rotations, the five protocols, and the closed-form
//! spectra and phases used to verify them.
//!
//! The crate is `no_std` (with `alloc`); everything lives on the fixed
//! eight-dimensional Hilbert space. Basis states are indexed as
//! `4·b₁ + 2·b₂ + b₃`, qubit 1 being the most significant bit.
//!
//! ```
//! use tripartite_core::{protocols, StateVector};
//!
//! let ghz = protocols::ghz_triangular(&protocols::triangular(1.0, 0.0)).unwrap();
//! let result = protocols::execute(&ghz, &StateVector::basis(0)).unwrap();
//! assert!(result.fidelity > 1.0 - 1e-9);
//! ```

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod analysis;
mod error;
pub mod gates;
pub mod hamiltonians;
pub mod linalg;
pub mod protocols;
pub mod states;
pub mod tolerances;
pub mod verify;

pub use error::Error;
pub use linalg::{Complex, EigenSystem, Matrix8, Operator, Role, StateVector};

pub type Result<T, E = Error> = core::result::Result<T, E>;
