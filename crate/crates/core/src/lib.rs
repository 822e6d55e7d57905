//! Finite power, convolution and superextension semigroups over finite groups.
//!
//! Groups and semigroups are Cayley tables over dense indices `0..n`. On top
//! of them sit the power semigroup `exp(G)` of nonempty subsets, the
//! convolution semigroup `P(G)` of exact rational probability measures, and the
//! superextension `λ(S)` / inclusion hyperspace `G(S)` of up-families. The
//! [`embedding`] module embeds finite Clifford inverse semigroups into `exp`
//! and `P` of a product group, or certifies that no such embedding exists.

pub mod convolution;
pub mod embedding;
pub mod error;
pub mod format;
pub mod functor_ext;
pub mod group;
pub mod hyper;
pub mod semigroup;
pub mod subset;
pub mod verify;

pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
pub use semigroup::{FiniteSemigroup, Semigroup, VirtualSemigroup};
pub use subset::Subset;
