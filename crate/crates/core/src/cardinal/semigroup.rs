//! Membership in additive subsemigroups of `⟨ℕ, +⟩` with finitely many
//! generators.

/// Writes `n` as a nonempty sum of elements of `generators` (repetition
/// allowed), returning the summands in ascending order, or `None` when `n`
/// is not in the generated semigroup.
pub fn semigroup_member(n: u64, generators: &[u64]) -> Option<Vec<u64>> {
    if n == 0 {
        return None;
    }
    let n = usize::try_from(n).expect("target fits in memory");
    let gens: Vec<usize> = generators
        .iter()
        .filter(|&&g| g >= 1 && g as usize <= n)
        .map(|&g| g as usize)
        .collect();
    // via[s] = last summand of some representation of s, 0 if none
    let mut via = vec![0usize; n + 1];
    for s in 1..=n {
        via[s] = gens
            .iter()
            .copied()
            .find(|&g| g == s || (g < s && via[s - g] != 0))
            .unwrap_or(0);
    }
    if via[n] == 0 {
        return None;
    }
    let mut parts = Vec::new();
    let mut s = n;
    while s > 0 {
        parts.push(via[s] as u64);
        s -= via[s];
    }
    parts.sort_unstable();
    Some(parts)
}

/// Outcome of the independence test for a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Independence {
    Independent,
    /// `n` is a sum of members of `K ∖ {n}`.
    Dependent { n: u64, representation: Vec<u64> },
}

impl Independence {
    pub fn holds(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

/// `K` is independent when no member lies in the semigroup generated by the
/// other members. The first violating member (ascending) is reported.
pub fn is_independent(k: &[u64]) -> Independence {
    let mut members: Vec<u64> = k.to_vec();
    members.sort_unstable();
    members.dedup();
    for &n in &members {
        let others: Vec<u64> = members.iter().copied().filter(|&m| m != n).collect();
        if let Some(representation) = semigroup_member(n, &others) {
            return Independence::Dependent { n, representation };
        }
    }
    Independence::Independent
}

/// True when `parts` is a nonempty list drawn from `generators ∖ {excluded}`
/// that sums to `n`.
pub fn check_representation(n: u64, parts: &[u64], generators: &[u64], excluded: Option<u64>) -> bool {
    !parts.is_empty()
        && parts.iter().sum::<u64>() == n
        && parts
            .iter()
            .all(|p| generators.contains(p) && Some(*p) != excluded)
}
