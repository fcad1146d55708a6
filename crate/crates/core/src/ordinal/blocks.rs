//! Evaluation of expressions to lists of primitive order-type blocks.

use std::fmt;

use thiserror::Error;

use super::cnf::{Ordinal, OrdinalError};
use super::expr::Expr;

/// A primitive summand.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    /// The ordinal `α ≥ 1` (finite ones included).
    Ord(Ordinal),
    /// `α*` for an infinite ordinal `α`.
    RevOrd(Ordinal),
    /// `ω^θ·ω*`, `θ ≥ 1`: ω*-many copies of `ω^θ`.
    Zl(Ordinal),
    /// `(ω^θ)*·ω`, `θ ≥ 1`: the reverse of [`Block::Zl`].
    ZlStar(Ordinal),
}

impl Block {
    /// `Ord(α)`, or nothing for `α = 0`.
    pub fn ordinal(a: Ordinal) -> Option<Block> {
        (!a.is_zero()).then_some(Block::Ord(a))
    }

    /// `α*`; finite orders are self-dual and stay `Ord`.
    pub fn reversed_ordinal(a: Ordinal) -> Option<Block> {
        if a.is_zero() {
            None
        } else if a.is_finite() {
            Some(Block::Ord(a))
        } else {
            Some(Block::RevOrd(a))
        }
    }

    /// `ω^θ·ω*`, which for `θ = 0` is plain `ω*`.
    pub fn zl(theta: Ordinal) -> Block {
        if theta.is_zero() {
            Block::RevOrd(Ordinal::omega())
        } else {
            Block::Zl(theta)
        }
    }

    pub fn reversed(&self) -> Block {
        match self {
            Block::Ord(a) => Block::reversed_ordinal(a.clone()).expect("blocks are nonempty"),
            Block::RevOrd(a) => Block::Ord(a.clone()),
            Block::Zl(t) => Block::ZlStar(t.clone()),
            Block::ZlStar(t) => Block::Zl(t.clone()),
        }
    }

    pub fn finite_size(&self) -> Option<u64> {
        match self {
            Block::Ord(a) => a.as_nat(),
            _ => None,
        }
    }

    pub fn as_ordinal(&self) -> Option<&Ordinal> {
        match self {
            Block::Ord(a) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Ord(a) => write!(f, "{a}"),
            Block::RevOrd(a) => write!(f, "rev({a})"),
            Block::Zl(t) => write!(f, "w^({t})*rev(w)"),
            Block::ZlStar(t) => write!(f, "rev(w^({t}))*w"),
        }
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Ord(a) => write!(f, "Ord({a})"),
            Block::RevOrd(a) => write!(f, "RevOrd({a})"),
            Block::Zl(t) => write!(f, "Zl({t})"),
            Block::ZlStar(t) => write!(f, "ZlStar({t})"),
        }
    }
}

pub fn reverse_blocks(blocks: &[Block]) -> Vec<Block> {
    blocks.iter().rev().map(Block::reversed).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unsupported product `{0}`")]
    UnsupportedProduct(String),
    #[error("powers need ordinal operands: `{0}`")]
    UnsupportedPower(String),
    #[error(transparent)]
    Arithmetic(#[from] OrdinalError),
}

/// Evaluates `e` to a list of blocks whose concatenation is the order type
/// of `e`. Products are supported when the right factor is a sum of blocks
/// below `ω²` (or their reverses) and the left factor is an ordinal, a
/// reversed ordinal, or finite; plus ordinal multiples of `Zl`/`ZlStar`
/// blocks in the cases where they stay primitive.
pub fn evaluate(e: &Expr) -> Result<Vec<Block>, EvalError> {
    match e {
        Expr::Nat(n) => Ok(Block::ordinal(Ordinal::nat(*n)).into_iter().collect()),
        Expr::Omega => Ok(vec![Block::Ord(Ordinal::omega())]),
        Expr::Sum(a, b) => {
            let mut out = evaluate(a)?;
            out.extend(evaluate(b)?);
            Ok(out)
        }
        Expr::Rev(a) => Ok(reverse_blocks(&evaluate(a)?)),
        Expr::Power(a, b) => {
            let unsupported = || EvalError::UnsupportedPower(e.to_string());
            let base = ordinal_value(&evaluate(a)?).ok_or_else(unsupported)?;
            let exp = ordinal_value(&evaluate(b)?).ok_or_else(unsupported)?;
            Ok(Block::ordinal(base.checked_pow(&exp)?).into_iter().collect())
        }
        Expr::Product(a, b) => {
            let left = evaluate(a)?;
            let right = evaluate(b)?;
            let mut out = Vec::new();
            for block in &right {
                let piece = times_block(&left, block).ok_or_else(|| EvalError::UnsupportedProduct(e.to_string()))??;
                out.extend(piece);
            }
            Ok(out)
        }
    }
}

/// The ordinal denoted by an all-`Ord` list.
pub fn ordinal_value(blocks: &[Block]) -> Option<Ordinal> {
    blocks.iter().try_fold(Ordinal::zero(), |acc, b| match b {
        Block::Ord(a) => acc.checked_add(a).ok(),
        _ => None,
    })
}

/// `left · block`: `block`-many copies of `left`.
fn times_block(left: &[Block], block: &Block) -> Option<Result<Vec<Block>, EvalError>> {
    if left.is_empty() {
        return Some(Ok(Vec::new()));
    }
    if let (Block::Ord(b), Some(a)) = (block, ordinal_value(left)) {
        return Some(a.checked_mul(b).map(|p| vec![Block::Ord(p)]).map_err(Into::into));
    }
    if let Some(n) = block.finite_size() {
        let n = usize::try_from(n).ok().filter(|&n| n.saturating_mul(left.len()) <= 4096)?;
        return Some(Ok(left.iter().cloned().cycle().take(n * left.len()).collect()));
    }
    let alpha = ordinal_value(left);
    let rev_alpha = match left {
        [Block::RevOrd(a)] => Some(a.clone()),
        _ => None,
    };
    Some(Ok(match (block, alpha, rev_alpha) {
        (Block::Ord(b), Some(a), _) => return Some(a.checked_mul(b).map(|p| vec![Block::Ord(p)]).map_err(Into::into)),
        // mirror images of the ordinal cases
        (Block::RevOrd(b), _, Some(a)) => {
            return Some(a.checked_mul(b).map(|p| vec![Block::RevOrd(p)]).map_err(Into::into));
        }
        (Block::RevOrd(b), Some(a), _) => {
            let copies = omega_multiples(b)?;
            let unit = times_rev_omega(&a);
            let mut out = Vec::new();
            let (_, m) = b.split_finite();
            for _ in 0..m {
                out.push(Block::Ord(a.clone()));
            }
            for _ in 0..copies {
                out.extend(unit.iter().cloned());
            }
            out
        }
        (Block::Ord(b), _, Some(a)) => {
            let copies = omega_multiples(b)?;
            let unit = super::blocks::reverse_blocks(&times_rev_omega(&a));
            let mut out = Vec::new();
            for _ in 0..copies {
                out.extend(unit.iter().cloned());
            }
            let (_, m) = b.split_finite();
            for _ in 0..m {
                out.push(Block::RevOrd(a.clone()));
            }
            out
        }
        (Block::Zl(t), Some(a), _) => {
            let lead = a.leading_exponent().expect("nonzero").clone();
            vec![Block::zl(lead.checked_add(t).ok()?)]
        }
        (Block::ZlStar(t), Some(a), _) if a.is_finite() => vec![Block::ZlStar(t.clone())],
        _ => return None,
    }))
}

/// `k` when `b = ω·k + m` with `k ≥ 1`.
fn omega_multiples(b: &Ordinal) -> Option<usize> {
    let (lim, _) = b.split_finite();
    match lim.terms() {
        [(e, k)] if e.as_nat() == Some(1) => usize::try_from(*k).ok().filter(|&k| k <= 4096),
        _ => None,
    }
}

/// `α·ω*` for `α = ω^θ·c + r` with `r < ω^θ`: `ω^θ·ω* + r`.
fn times_rev_omega(a: &Ordinal) -> Vec<Block> {
    let (theta, _) = &a.terms()[0];
    let r = Ordinal::from_terms(a.terms()[1..].to_vec());
    let mut out = vec![Block::zl(theta.clone())];
    out.extend(Block::ordinal(r));
    out
}
