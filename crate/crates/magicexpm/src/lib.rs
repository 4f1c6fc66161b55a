//! Closed-form evolution operators for four-level-system Hamiltonians.
//!
//! A zero-diagonal real symmetric 4x4 Hamiltonian conjugated by the magic
//! matrix splits into a commuting pair of su(2) blocks plus a small tensor
//! remainder. That structure yields exact evolution operators for two
//! coupling classes (cross and checkerboard), a four-factor closed-form
//! approximation for the generic case, and a closed Baker-Campbell-Hausdorff
//! formula for the checkerboard class of SU(4). Everything is validated
//! against independent brute-force oracles.
//!
//! Modules, bottom up:
//!
//! - [`smallmat`]: dense complex 2x2/4x4 value-semantics matrices.
//! - [`pauli`]: su(2) <-> R^3 correspondence and the exact SU(2) exponential.
//! - [`oracle`]: eigendecomposition/series exponentials and the principal
//!   logarithm of unitaries; shares no code with the closed forms.
//! - [`magic`]: the magic and swap matrices, group- and algebra-level
//!   SO(4) <-> SU(2)x SU(2) maps, Hodge star, tensor-basis decompositions.
//! - [`evolve`]: the evolution operators and their error diagnostics.
//! - [`bch`]: closed-form BCH for su(2) and the checkerboard SU(4) class.
//! - [`verify`]: seeded self-checks behind `magicexpm verify`.
//! - [`cli`]: JSON/CSV document builders and the command-line front end.

pub mod bch;
pub mod cli;
pub mod evolve;
pub mod magic;
pub mod oracle;
pub mod pauli;
pub mod smallmat;
pub mod verify;

pub use bch::{su2_bch, su2_bch_coeffs, su4_bch, BchCoefficients, BchResult, CheckerboardSym};
pub use evolve::{
    approx_error, evolve_approx, evolve_exact_checkerboard, evolve_exact_cross, evolve_oracle,
    evolve_report, evolve_symmetrized, EvolutionReport, Hamiltonian4, Method,
};
pub use magic::{
    algebra_map, conjugate_hamiltonian, conjugate_traceless_symmetric, group_map, hodge_star,
    inverse_algebra_map, magic_matrix, swap_matrix, So4Element, TensorDecomposition,
};
pub use pauli::{cross, dot, exp_su2, Su2Vector};
pub use smallmat::{tensor, C64, CMat2, CMat4};
