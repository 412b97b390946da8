//! Unitary Birkhoff decompositions.
//!
//! A unitary matrix whose rows and columns all sum to one (the group `XU(n)`) can be
//! written as a complex combination of permutation matrices,
//!
//! ```text
//! X = Σ_σ c_σ P_σ,    Σ_σ c_σ = 1,    Σ_σ |c_σ|² = 1,
//! ```
//!
//! with coefficients given in closed form by the irreducible representations of the
//! symmetric group. This crate builds those representations, evaluates the coefficient
//! formulas under several choices of the free parameters, and checks every contract.
//!
//! ```
//! use unitary_birkhoff::{decompose_even_only, golden, verify, Tolerance};
//!
//! let x = golden::phased_fourier4();
//! let w = decompose_even_only(&x, Tolerance::default()).unwrap();
//! assert!(verify(&w, &x, Tolerance::default()).passed());
//! assert!(w.iter().all(|(s, c)| s.is_even() || c.norm() == 0.0));
//! ```

pub mod birkhoff;
pub mod error;
pub mod golden;
pub mod io;
pub mod irreps;
pub mod matrix;
pub mod partition;
pub mod perm;
pub mod xu;

pub use birkhoff::{
    decompose, decompose_even_odd_split, decompose_even_only, decompose_general, group_circulant,
    reconstruct, verify, BirkhoffWeights, Strategy, StrategyChoice, VerifyReport,
};
pub use error::{Error, Result};
pub use irreps::{
    anti_standard_rep, character_standard, character_sum_check, irrep_table, regular_rep_matrix,
    standard_rep, young_orthogonal_rep, Irrep, IrrepTable, Realization,
};
pub use matrix::{
    conjugate_by_fourier, fourier_matrix, permutation_matrix, random_unitary, CMatrix, Tolerance,
};
pub use num_complex::Complex64;
pub use partition::Partition;
pub use perm::{enumerate, involution_count, CycleType, Parity, Permutation};
pub use xu::{classify, embed_unitary, is_permutation_matrix, random_xu, Classification, Verdict, XUMatrix};
