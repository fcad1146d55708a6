//! Decision procedures for reversibility of disconnected binary structures.
//!
//! A structure is *reversible* when every bijective endomorphism of it is an
//! automorphism. The modules here decide (or certify, or refute with explicit
//! witnesses) that property for several presentations:
//!
//! * [`structure`]: finite binary structures, connectivity components,
//!   morphism search and a brute-force reversibility oracle.
//! * [`family`]: disjoint unions given as connected templates with
//!   multiplicities, including merge witnesses and preorder analysis.
//! * [`cardinal`]: the exact criterion for sequences of cardinals, built on
//!   numerical-semigroup membership.
//! * [`ordinal`]: Cantor normal form arithmetic, order-type expressions and
//!   the classification of CSB linear orders of a limit type.
//! * [`wellfounded`]: finite well-founded relations, monotone invariants and
//!   invariant-based reversibility certificates.

pub mod cardinal;
pub mod family;
pub mod ordinal;
pub mod structure;
pub mod wellfounded;

mod multiplicity;
mod parse;
mod verdict;

pub use multiplicity::Multiplicity;
pub use parse::ParseError;
pub use verdict::Status;
