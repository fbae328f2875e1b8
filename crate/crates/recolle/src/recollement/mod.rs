//! The recollement bundle: three abelian categories with six structural
//! functors and four adjunctions, plus the constructions and verifications
//! built on top of it (axioms, norm, exact sequences, vanishing identities,
//! kernel-category equivalences, fibers, pre-hereditary tests, gluing and
//! comparison).

pub mod axioms;
pub mod comparison;
pub mod fibers;
pub mod images;
pub mod mt;
pub mod mv_construct;
pub mod prehereditary;
pub mod sequences;
pub mod vanishing;

use crate::category::{image, Category, Morphism, Object};
use crate::functor::{Adjunction, Functor};

/// A recollement situation: A' --(i)-- A --(j)-- A''.
///
/// Functor naming: `i_star` = i*, `i_sub` = i_*, `i_shriek` = i^!,
/// `j_shriek` = j_!, `j_star` = j^*, `j_sub` = j_*.
pub struct Recollement {
    pub name: String,
    pub aprime: Category,
    pub a: Category,
    pub adouble: Category,
    /// i*: A → A', left adjoint of i_*.
    pub i_star: Functor,
    /// i_*: A' → A, the embedding.
    pub i_sub: Functor,
    /// i^!: A → A', right adjoint of i_*.
    pub i_shriek: Functor,
    /// j_!: A'' → A, left adjoint of j^*.
    pub j_shriek: Functor,
    /// j^*: A → A''.
    pub j_star: Functor,
    /// j_*: A'' → A, right adjoint of j^*.
    pub j_sub: Functor,
    /// (i*, i_*).
    pub adj_i_star: Adjunction,
    /// (i_*, i^!).
    pub adj_i_shriek: Adjunction,
    /// (j_!, j^*).
    pub adj_j_shriek: Adjunction,
    /// (j^*, j_*).
    pub adj_j_star: Adjunction,
    /// Optional exact retraction r: A → A' with r∘i_* = Id.
    pub retraction: Option<Functor>,
}

impl Recollement {
    /// The norm N_X: j_!X → j_*X, adjunct to the identity of X through the
    /// isomorphism j^*j_*X → X of axiom (iv).
    pub fn norm(&self, x: &Object) -> Morphism {
        let jsx = self.j_sub.apply(x);
        let c = self.adj_j_star.counit.at(x);
        let cinv = c
            .inverse()
            .expect("axiom (iv): counit of (j^*, j_*) must be invertible");
        self.adj_j_shriek
            .counit
            .at(&jsx)
            .compose(&self.j_shriek.apply_mor(&cinv))
    }

    /// The intermediate extension j_!* X = Im(N_X).
    pub fn j_shriek_star(&self, x: &Object) -> Object {
        image(&self.norm(x)).0
    }
}
