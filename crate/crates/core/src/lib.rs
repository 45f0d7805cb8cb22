//! Roots of regular languages: `root(L) = { w : w^k in L for some k >= 1 }`.
//!
//! The crate builds DFAs for roots through the transformation monoid of an
//! automaton, minimizes them, and provides the counting and verification
//! machinery around the `U(k, l)` monoid family.

pub mod counting;
pub mod dfa;
pub mod error;
pub mod monoid;
pub mod root;
pub mod transform;
pub mod verify;

pub use dfa::Dfa;
pub use error::{Error, Result};
pub use monoid::TransMonoid;
pub use root::{root_automaton, root_state_complexity, unary_root, RootAutomaton};
pub use transform::Transformation;
