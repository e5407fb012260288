//! Exact computations with quadratic forms over ℚ, ℝ, ℚ_p and finite fields:
//! classification invariants, Witt decompositions, splitting profiles and
//! shells, and the Tate-motive invariants of projective and affine quadrics.
//!
//! ```
//! use qform::{FieldDesc, QuadraticForm, witt_decompose};
//!
//! let q = QuadraticForm::from_ints(FieldDesc::Rationals, &[1, 1, -2]).unwrap();
//! assert_eq!(witt_decompose(&q).witt_index, 1);
//! ```

pub mod cli;
pub mod error;
pub mod field;
pub mod form;
pub mod motive;
pub mod oracle;
pub mod witt;

pub use error::{Error, Result};
pub use field::{hilbert_symbol, legendre_symbol, square_class, FieldDesc, Place, Scalar, SquareClass};
pub use form::{
    diagonalize, direct_sum, invariants, isometric, prime_form, relevant_places, represents,
    scale, similar_factor, InvariantTuple, QuadraticForm, SimilarityWitness,
};
pub use motive::{
    affine_motive_equiv, euler_triangle_check, motivic_equiv_projective, phi_affine_reduced,
    phi_projective, recover_invariants, split_quadric_motive, BigradedSpace, EulerClass,
    RecoveredInvariants, TateLine, Verdict,
};
pub use witt::{
    affine_shells, is_isotropic, profile, shells, witt_decompose, witt_index_over,
    AffineShellPartition, ExtensionFamily, Profile, ShellPartition, WittDecomposition,
};
