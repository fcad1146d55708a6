//! Finite well-founded relations, monotone invariants and reversibility
//! certificates from invariants with finite fibers.

mod invariant;
mod relation;

pub use invariant::{
    certify_by_invariant, diagonal_invariant, invariant_fibers, longest_chain, otp_fibers, Certificate, EmptyDiagonal,
    Fiber, FiberError, InvValue, Invariant,
};
pub use relation::{find_cycle, is_well_founded, product_relation, subsets_have_minimal, FiniteRelation, WfReport};
