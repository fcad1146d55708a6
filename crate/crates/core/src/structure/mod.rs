//! Finite binary structures `⟨X, ρ⟩` and the operations on them.
//!
//! Vertices are opaque string identifiers kept in lexicographic order; all
//! algorithms work on vertex indices into that order, which makes every
//! search result reproducible.

mod components;
mod decompose;
mod morphism;
mod ops;
mod reversible;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::parse::{tokenized_lines, ParseError};

pub use components::{components, ComponentPartition};
pub use decompose::{decompose_condensation, CondensationDecomposition};
pub use morphism::{check_morphism, find_morphisms, is_morphism, MorphismKind, MorphismViolation};
pub use ops::{complement, disjoint_union, DisjointUnion};
pub use reversible::{is_reversible_bruteforce, Counterexample, ReversibilityReport, DEFAULT_GUARD};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("vertex `{0}` is not declared")]
    UndeclaredVertex(String),
    #[error("vertex `{0}` is declared more than once")]
    DuplicateVertex(String),
    #[error("vertex identifier `{0}` is not a single token without `#`")]
    InvalidIdentifier(String),
}

/// Refusal of an exhaustive search whose input is larger than allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("{size} vertices exceed the exhaustive-search guard of {guard}")]
pub struct GuardExceeded {
    pub size: usize,
    pub guard: usize,
}

/// A finite carrier with one binary relation on it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryStructure {
    names: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<bool>,
}

impl BinaryStructure {
    /// Builds a structure from vertex identifiers and identifier pairs.
    ///
    /// Duplicate pairs collapse to one; duplicate vertices and pairs naming
    /// undeclared vertices are rejected.
    pub fn new<N, E, S>(nodes: N, edges: E) -> Result<Self, StructureError>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut names: Vec<String> = nodes.into_iter().map(Into::into).collect();
        for name in &names {
            if !valid_identifier(name) {
                return Err(StructureError::InvalidIdentifier(name.clone()));
            }
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(StructureError::DuplicateVertex(w[0].clone()));
        }
        let lookup = |s: &str| {
            names
                .binary_search_by(|n| n.as_str().cmp(s))
                .map_err(|_| StructureError::UndeclaredVertex(s.to_string()))
        };
        let mut pairs = BTreeSet::new();
        for (a, b) in edges {
            pairs.insert((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Ok(Self::from_sorted(names, pairs))
    }

    /// Builds a structure from identifiers (any order) and index pairs into
    /// that list. Indices are remapped to the sorted carrier.
    pub fn from_indexed(names: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let mut position = vec![0; names.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let sorted: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]), "identifiers must be unique");
        let pairs = edges
            .into_iter()
            .map(|(a, b)| (position[a], position[b]))
            .collect();
        Self::from_sorted(sorted, pairs)
    }

    fn from_sorted(names: Vec<String>, edges: BTreeSet<(usize, usize)>) -> Self {
        let n = names.len();
        let mut adjacency = vec![false; n * n];
        for &(a, b) in &edges {
            adjacency[a * n + b] = true;
        }
        BinaryStructure {
            names,
            edges,
            adjacency,
        }
    }

    /// The empty structure on the empty carrier.
    pub fn empty() -> Self {
        Self::from_sorted(Vec::new(), BTreeSet::new())
    }

    /// Transitive tournament (a chain) `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::from_indexed(names, edges)
    }

    /// Directed cycle `0 → 1 → ... → n-1 → 0`.
    pub fn directed_cycle(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let edges = (0..n).map(|i| (i, (i + 1) % n));
        Self::from_indexed(names, edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a * self.names.len() + b]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Substructure induced on `vertices`, keeping identifiers.
    pub fn induced(&self, vertices: &[usize]) -> BinaryStructure {
        let names = vertices.iter().map(|&v| self.names[v].clone()).collect();
        let mut edges = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                if self.has_edge(a, b) {
                    edges.push((i, j));
                }
            }
        }
        Self::from_indexed(names, edges)
    }

    /// Whether this is a tournament: no loops and exactly one of `(x,y)`,
    /// `(y,x)` for distinct `x`, `y`. On failure returns the offending pair.
    pub fn tournament_violation(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for a in 0..n {
            if self.has_edge(a, a) {
                return Some((a, a));
            }
            for b in a + 1..n {
                if self.has_edge(a, b) == self.has_edge(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Transitive tournaments are exactly the finite strict linear orders.
    pub fn is_chain(&self) -> bool {
        if self.tournament_violation().is_some() {
            return false;
        }
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| !self.has_edge(a, b) || (0..n).all(|c| !self.has_edge(b, c) || self.has_edge(a, c)))
        })
    }

    /// Serializes in the line format: sorted `nodes` line, then sorted
    /// `edge` lines. Parsing the output reproduces the structure exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.names.is_empty() {
            out.push_str("nodes");
            for name in &self.names {
                out.push(' ');
                out.push_str(name);
            }
            out.push('\n');
        }
        for &(a, b) in &self.edges {
            out.push_str("edge ");
            out.push_str(&self.names[a]);
            out.push(' ');
            out.push_str(&self.names[b]);
            out.push('\n');
        }
        out
    }

    /// Parses the structure file format (`nodes ...`, `edge a b`, `#`
    /// comments).
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Self::parse_lines(tokenized_lines(text))
    }

    pub(crate) fn parse_lines<'a>(
        lines: impl IntoIterator<Item = (usize, Vec<&'a str>)>,
    ) -> Result<Self, ParseError> {
        let mut names: Vec<(usize, String)> = Vec::new();
        let mut pairs: Vec<(usize, &'a str, &'a str)> = Vec::new();
        for (line, tokens) in lines {
            match tokens[0] {
                "nodes" => names.extend(tokens[1..].iter().map(|t| (line, t.to_string()))),
                "edge" => {
                    if tokens.len() != 3 {
                        return Err(ParseError::new(line, "expected `edge <id> <id>`"));
                    }
                    pairs.push((line, tokens[1], tokens[2]));
                }
                other => {
                    return Err(ParseError::new(
                        line,
                        format!("unknown directive `{other}` (expected `nodes` or `edge`)"),
                    ))
                }
            }
        }
        let mut sorted: Vec<&(usize, String)> = names.iter().collect();
        sorted.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        if let Some(w) = sorted.windows(2).find(|w| w[0].1 == w[1].1) {
            return Err(ParseError::new(
                w[1].0,
                StructureError::DuplicateVertex(w[1].1.clone()).to_string(),
            ));
        }
        let ids: Vec<String> = sorted.iter().map(|(_, n)| n.clone()).collect();
        let mut edges = BTreeSet::new();
        for (line, a, b) in pairs {
            let find = |s: &str| {
                ids.binary_search_by(|n| n.as_str().cmp(s)).map_err(|_| {
                    ParseError::new(line, StructureError::UndeclaredVertex(s.to_string()).to_string())
                })
            };
            edges.insert((find(a)?, find(b)?));
        }
        Ok(Self::from_sorted(ids, edges))
    }
}

fn valid_identifier(name: &str) -> bool {
    !name.is_empty() && !name.contains('#') && !name.chars().any(char::is_whitespace)
}

impl fmt::Debug for BinaryStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .map(|&(a, b)| (self.names[a].as_str(), self.names[b].as_str()))
            .collect();
        f.debug_struct("BinaryStructure")
            .field("carrier", &self.names)
            .field("relation", &edges)
            .finish()
    }
}

impl fmt::Display for BinaryStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for BinaryStructure {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_edge() {
        let x = BinaryStructure::parse("nodes a b\nedge a b").unwrap();
        assert_eq!(x.names(), ["a", "b"]);
        assert_eq!(x.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn parse_without_edges() {
        let x = BinaryStructure::parse("nodes a b").unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.edge_count(), 0);
    }

    #[test]
    fn parse_rejects_undeclared_vertex() {
        let err = BinaryStructure::parse("nodes a\nedge a b").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("`b`"), "{err}");
    }

    #[test]
    fn parse_collapses_duplicate_edges_and_strips_comments() {
        let text = "# header\nnodes b a   # two nodes\nedge a b\nedge a b\n\nnodes c\nedge c c";
        let x = BinaryStructure::parse(text).unwrap();
        assert_eq!(x.names(), ["a", "b", "c"]);
        assert_eq!(x.edge_count(), 2);
        assert!(x.has_edge(2, 2));
    }

    #[test]
    fn parse_reports_malformed_lines() {
        assert_eq!(BinaryStructure::parse("nodes a\nedge a").unwrap_err().line, 2);
        assert_eq!(BinaryStructure::parse("vertex a").unwrap_err().line, 1);
        assert_eq!(BinaryStructure::parse("nodes a\nnodes a").unwrap_err().line, 2);
    }

    #[test]
    fn serializer_sorts_and_round_trips() {
        let x = BinaryStructure::new(["z", "a", "m"], [("z", "a"), ("a", "m"), ("a", "a")]).unwrap();
        let text = x.to_text();
        assert_eq!(text, "nodes a m z\nedge a a\nedge a m\nedge z a\n");
        assert_eq!(BinaryStructure::parse(&text).unwrap(), x);
        assert_eq!(BinaryStructure::empty().to_text(), "");
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(
            BinaryStructure::new(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(StructureError::DuplicateVertex("a".into()))
        );
        assert!(matches!(
            BinaryStructure::new(["a b"], Vec::<(&str, &str)>::new()),
            Err(StructureError::InvalidIdentifier(_))
        ));
    }

    #[test]
    fn chains_and_tournaments() {
        assert!(BinaryStructure::chain(4).is_chain());
        assert!(BinaryStructure::chain(1).is_chain());
        let c3 = BinaryStructure::directed_cycle(3);
        assert_eq!(c3.tournament_violation(), None);
        assert!(!c3.is_chain());
        let loopy = BinaryStructure::new(["a"], [("a", "a")]).unwrap();
        assert_eq!(loopy.tournament_violation(), Some((0, 0)));
    }

    #[test]
    fn induced_substructure_keeps_names() {
        let c = BinaryStructure::chain(4);
        let sub = c.induced(&[1, 3]);
        assert_eq!(sub.names(), ["1", "3"]);
        assert!(sub.has_edge(0, 1) && !sub.has_edge(1, 0));
    }
}
