//! Exact verification workbench for elementary subgroups of Chevalley
//! groups over small finite rings.
//!
//! The crate realizes elementary root unipotents as exact matrices (SL(l+1)
//! for A_l, Sp(2l) for C_l, the 7-dimensional representation for G2),
//! certifies generator identities symbolically over integer polynomials,
//! and checks generation and congruence statements about relative
//! elementary subgroups by exhaustive enumeration over finite rings.

pub mod matrix;
pub mod poly;
pub mod rings;
pub mod rootsys;
pub mod scalar;

pub use matrix::Matrix;
pub use poly::MultiPoly;
pub use rings::{FiniteRing, Ideal, RingElem};
pub use rootsys::{RootId, RootSystem, SystemLabel};
pub use scalar::Scalar;

/// Matrices over the symbolic scalar domain.
pub type SymbolicMatrix = Matrix<MultiPoly>;
/// Matrices over a finite ring scalar domain.
pub type RingMatrix = Matrix<RingElem>;

pub mod chevrep;
pub mod grouplab;
pub mod verifier;
pub use chevrep::{ChevRep, GroupElem};
