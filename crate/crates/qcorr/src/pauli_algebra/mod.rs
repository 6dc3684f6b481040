//! Dirac gamma matrices and the binary algebra of their products.
//!
//! Group elements `Γ_a = γ_1^{a_1} ... γ_{2n}^{a_{2n}}` are labelled by
//! 2n-bit exponent vectors. Two labellings coexist on purpose:
//!
//! * the exponent form ([`ExponentVector`]), where commutation of
//!   `Γ_a` and `Γ_b` is decided by `wt(a)·wt(b) + a·b (mod 2)`;
//! * the x/z Pauli form ([`PauliString`]), where commutation is the
//!   symplectic product `x_p·z_q + z_p·x_q (mod 2)`.
//!
//! [`exponent_to_pauli`] bridges the two, and both predicates are verified
//! against materialized matrix commutators in the test suite.

mod exponent;
mod gamma;
mod pauli_string;
mod subgroup;

pub use exponent::{exponent_commutes, ExponentVector};
pub use gamma::{build_gamma_set, verify_clifford, CliffordReport, GammaSet};
pub use pauli_string::{
    exponent_to_pauli, gamma_pauli_string, materialize_pauli, symplectic_commutes, PauliString,
    Phase, SinglePauli,
};
pub use subgroup::{enumerate_abelian_subgroups, AbelianSubgroup};
pub(crate) use subgroup::N2_GENERATOR_PAIRS;
