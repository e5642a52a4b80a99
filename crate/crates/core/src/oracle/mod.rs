//! Numerical layer: tesseral harmonics, rotation matrices, projectors and
//! symmetry detection. Everything here is independent of the closed forms
//! and serves to check them.

pub mod canonical;
pub mod detect;
pub mod projector;
pub mod rotation;
pub mod tesseral;

pub use canonical::{canonicalize, diagonalize_l2};
pub use detect::{detect_in_axial, detect_symmetry, DetectOptions, SymmetryReport};
pub use projector::{invariant_basis, invariant_vectors, projector, rank};
pub use tesseral::{CoeffVector, Tesseral};
