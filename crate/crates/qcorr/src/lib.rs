//! Quantum correlation measures for `2^n`-dimensional Bell-diagonal states.
//!
//! The library computes and cross-validates discord, dissonance, classical
//! correlation, entanglement and total mutual information for bipartite
//! states diagonal in the common eigenbasis of the commuting involutions
//! `g_k = γ_k ⊗ γ_k` built from Dirac gamma matrices:
//!
//! * [`pauli_algebra`] — gamma construction, binary exponent labels,
//!   commutation predicates, abelian-subgroup enumeration;
//! * [`bell_state`] — correlation tensors, spectra, the Walsh-Hadamard
//!   transform pair, Bloch-sphere states, dense materialization;
//! * [`correlation_measures`] — entropies, the analytic closest classical
//!   state, discord and its closed Bloch form, permutation alignment;
//! * [`css_family`] — entanglement witnesses and the inverse construction
//!   of entangled families with a known closest separable state, plus the
//!   subadditivity-gap analysis;
//! * [`oracle`] — independent brute-force certificates (measurement grid,
//!   Birkhoff sampling, partial-transpose test);
//! * [`cli`] — the `qcorr` binary surface.
//!
//! The numeric core is generic over the scalar via [`scalar::Scalar`]
//! (`f32` or `f64`); the aliases below fix `f64`, which the CLI and the
//! acceptance suite use throughout. Logarithms are base 2 everywhere, so
//! every measure is reported in bits.

#![allow(clippy::manual_is_multiple_of)] // parity checks read better as `% 2`

pub mod bell_state;
pub mod cli;
pub mod correlation_measures;
pub mod css_family;
pub mod error;
pub mod oracle;
pub mod pauli_algebra;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type GammaSet64 = pauli_algebra::GammaSet<f64>;
pub type Tensor64 = bell_state::CorrelationTensor<f64>;
pub type Spectrum64 = bell_state::Spectrum<f64>;
pub type BellState64 = bell_state::BellDiagonalState<f64>;
pub type BlochState64 = bell_state::BlochSphereState<f64>;
pub type ClassicalState64 = correlation_measures::ClassicalState<f64>;
pub type CorrelationReport64 = correlation_measures::CorrelationReport<f64>;
pub type WitnessSpec64 = css_family::WitnessSpec<f64>;
pub type GapReport64 = css_family::GapReport<f64>;
