use thiserror::Error;

use crate::structure::{find_morphisms, BinaryStructure, MorphismKind};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("{which} is not a tournament: pair ({a},{b}) violates the tournament condition")]
    NotTournament { which: String, a: String, b: String },
    #[error("part sizes sum to {parts} but the target has {target} vertices")]
    SizeMismatch { parts: usize, target: usize },
}

/// A block of the target with an isomorphism from its part onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionBlock {
    pub vertices: Vec<usize>,
    /// Part vertex index to target vertex index.
    pub mapping: Vec<usize>,
}

/// Exhaustively looks for a partition of `target` into blocks inducing
/// sub-tournaments isomorphic to `parts`, in the given order.
pub fn tournament_partition_witness(
    target: &BinaryStructure,
    parts: &[BinaryStructure],
) -> Result<Option<Vec<PartitionBlock>>, TournamentError> {
    let check = |which: String, s: &BinaryStructure| match s.tournament_violation() {
        Some((a, b)) => Err(TournamentError::NotTournament {
            which,
            a: s.name(a).to_string(),
            b: s.name(b).to_string(),
        }),
        None => Ok(()),
    };
    check("target".into(), target)?;
    for (i, p) in parts.iter().enumerate() {
        check(format!("part {i}"), p)?;
    }
    let total: usize = parts.iter().map(BinaryStructure::len).sum();
    if total != target.len() {
        return Err(TournamentError::SizeMismatch {
            parts: total,
            target: target.len(),
        });
    }
    let mut free: Vec<usize> = (0..target.len()).collect();
    let mut out = Vec::new();
    Ok(assign(target, parts, &mut free, &mut out).then_some(out))
}

fn assign(target: &BinaryStructure, parts: &[BinaryStructure], free: &mut Vec<usize>, out: &mut Vec<PartitionBlock>) -> bool {
    let Some((part, rest)) = parts.split_first() else {
        return true;
    };
    let k = part.len();
    if k > free.len() {
        return false;
    }
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let vertices: Vec<usize> = pick.iter().map(|&i| free[i]).collect();
        let induced = target.induced(&vertices);
        if let Some(iso) = find_morphisms(part, &induced, MorphismKind::Isomorphism, Some(1)).pop() {
            let remaining: Vec<usize> = free.iter().copied().filter(|v| !vertices.contains(v)).collect();
            let saved = std::mem::replace(free, remaining);
            out.push(PartitionBlock {
                mapping: iso.iter().map(|&i| vertices[i]).collect(),
                vertices,
            });
            if assign(target, rest, free, out) {
                return true;
            }
            out.pop();
            *free = saved;
        }
        if !next_combination(&mut pick, free.len()) {
            return false;
        }
    }
}

/// Advances `pick` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
