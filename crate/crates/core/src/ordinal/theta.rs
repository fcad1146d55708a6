//! The embedding invariants `θ₀` and `θ₁` on a small fragment.

use thiserror::Error;

use super::blocks::{evaluate, Block};
use super::cnf::Ordinal;
use super::expr::Expr;
use super::normal::rewrite_blocks;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("`{0}` is outside the fragment: an ordinal, a reversed ordinal, or rev(β)+α")]
pub struct Unsupported(pub String);

/// `θ₀` is the supremum of ordinals embedding into the order, `θ₁` that
/// of ordinals whose reverse embeds.
pub fn theta_invariants(e: &Expr) -> Result<(Ordinal, Ordinal), Unsupported> {
    let unsupported = || Unsupported(e.to_string());
    let (blocks, _) = rewrite_blocks(evaluate(e).map_err(|_| unsupported())?);
    match blocks.as_slice() {
        [] => Ok((Ordinal::zero(), Ordinal::zero())),
        [Block::Ord(a)] if a.is_finite() => Ok((a.clone(), a.clone())),
        [Block::Ord(a)] => Ok((a.clone(), Ordinal::omega())),
        [Block::RevOrd(b)] => Ok((Ordinal::omega(), b.clone())),
        [Block::RevOrd(b), Block::Ord(a)] if !a.is_finite() => Ok((a.clone(), b.clone())),
        _ => Err(unsupported()),
    }
}
