use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::structure::BinaryStructure;
use crate::ParseError;

/// A relation on a finite carrier; `(a, b)` reads "a is below b".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRelation {
    carrier: Vec<String>,
    pairs: BTreeSet<(usize, usize)>,
}

impl FiniteRelation {
    /// Panics if a pair mentions an element outside the carrier.
    pub fn new(carrier: Vec<String>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        assert!(pairs.iter().all(|&(a, b)| a < carrier.len() && b < carrier.len()), "pair outside the carrier");
        FiniteRelation { carrier, pairs }
    }

    /// Elements named `0..n`.
    pub fn numbered(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        FiniteRelation::new((0..n).map(|i| i.to_string()).collect(), pairs)
    }

    /// Same text format as binary structures.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Ok(FiniteRelation::from(&BinaryStructure::parse(text)?))
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn relates(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.carrier.is_empty() {
            let _ = writeln!(out, "nodes {}", self.carrier.join(" "));
        }
        for &(a, b) in &self.pairs {
            let _ = writeln!(out, "edge {} {}", self.carrier[a], self.carrier[b]);
        }
        out
    }
}

impl From<&BinaryStructure> for FiniteRelation {
    fn from(s: &BinaryStructure) -> Self {
        FiniteRelation::new(s.names().to_vec(), s.edges())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WfReport {
    pub well_founded: bool,
    /// A directed cycle `c0 → c1 → … → c0` (a loop is a one-element cycle).
    pub cycle: Option<Vec<usize>>,
}

/// A directed cycle, found by depth-first search.
pub fn find_cycle(r: &FiniteRelation) -> Option<Vec<usize>> {
    let n = r.len();
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in &r.pairs {
        succ[a].push(b);
    }
    // 0 unvisited, 1 on the stack, 2 done
    let mut state = vec![0u8; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        state[root] = 1;
        stack.push((root, 0));
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = succ[v].get(*next) {
                *next += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => {
                        let start = stack.iter().position(|&(u, _)| u == w).expect("w is on the stack");
                        return Some(stack[start..].iter().map(|&(u, _)| u).collect());
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// True iff every nonempty subset has a minimal element, checked over all
/// `2^n - 1` subsets.
pub fn subsets_have_minimal(r: &FiniteRelation) -> bool {
    let n = r.len();
    assert!(n < 24, "subset check is exponential");
    (1u32..1 << n).all(|set| {
        let members = (0..n).filter(|&i| set >> i & 1 == 1);
        members.clone().any(|m| !(0..n).any(|x| set >> x & 1 == 1 && r.relates(x, m)))
    })
}

/// Well-founded iff there is no directed cycle. Carriers of at most four
/// elements are also checked against the subset definition.
pub fn is_well_founded(r: &FiniteRelation) -> WfReport {
    let cycle = find_cycle(r);
    let well_founded = cycle.is_none();
    if r.len() <= 4 {
        assert_eq!(well_founded, subsets_have_minimal(r), "cycle search disagrees with the subset check");
    }
    WfReport { well_founded, cycle }
}

/// The strict product: `a < b` iff every coordinate of `a` equals or is
/// below that of `b`, and at least one is below.
pub fn product_relation(r1: &FiniteRelation, r2: &FiniteRelation) -> FiniteRelation {
    let n2 = r2.len();
    let idx = |a: usize, b: usize| a * n2 + b;
    let carrier = r1
        .carrier
        .iter()
        .flat_map(|a| r2.carrier.iter().map(move |b| format!("({a},{b})")))
        .collect();
    let mut pairs = BTreeSet::new();
    let le1 = |a: usize, b: usize| a == b || r1.relates(a, b);
    let le2 = |a: usize, b: usize| a == b || r2.relates(a, b);
    for a1 in 0..r1.len() {
        for b1 in 0..r1.len() {
            if !le1(a1, b1) {
                continue;
            }
            for a2 in 0..n2 {
                for b2 in 0..n2 {
                    if le2(a2, b2) && (r1.relates(a1, b1) || r2.relates(a2, b2)) {
                        pairs.insert((idx(a1, a2), idx(b1, b2)));
                    }
                }
            }
        }
    }
    FiniteRelation { carrier, pairs }
}
