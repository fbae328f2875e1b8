//! Recollements of abelian categories, realized over finite-dimensional
//! representations of bound quivers over GF(2).
//!
//! The crate builds the two diagram-category recollements from quadratic
//! functor theory, the MacPherson-Vilonen construction and its semidirect
//! special cases, and mechanically verifies the recollement axioms, the
//! exact sequences relating units, counits and the norm, the vanishing
//! identities for derived functors, the kernel-category equivalences, the
//! linear-extension torsor property, and the comparison-functor
//! characterization — exhaustively at small dimensions.

pub mod error;
pub mod gf2;
pub mod quiver;
pub mod category;
pub mod examples;
pub mod functor;
pub mod recollement;
pub mod mv;
pub mod rep;
pub mod report;
pub mod resolution;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, LinearMap, Subspace};
pub use quiver::BoundQuiver;
pub use rep::{Rep, RepMorphism};
