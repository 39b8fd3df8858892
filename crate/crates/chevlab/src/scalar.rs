//! Scalar domain abstraction.
//!
//! All matrix machinery is generic over the scalar it computes with. Two
//! domains are in play: residue tuples in a finite ring (enumeration runs)
//! and multivariate integer polynomials (symbolic certification). Both are
//! exact; there is no floating point anywhere in this crate.
//!
//! Scalars carry enough context to produce their own zero and one, so a
//! matrix can be manipulated without threading a separate domain handle
//! through every call.

use std::fmt::{Debug, Display};
use std::hash::Hash;

/// An element of a commutative ring with identity, self-describing enough
/// to mint the constants of its own domain.
pub trait Scalar: Clone + Eq + Hash + Debug + Display + Send + Sync {
    /// Zero of the same domain as `self`.
    fn zero_like(&self) -> Self;

    /// One of the same domain as `self`.
    fn one_like(&self) -> Self;

    /// Image of the integer `k` in the same domain as `self`.
    fn from_int_like(&self, k: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;

    fn sub(&self, rhs: &Self) -> Self;

    fn neg(&self) -> Self;

    fn mul(&self, rhs: &Self) -> Self;

    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, when `self` is a unit.
    fn try_inv(&self) -> Option<Self>;
}
