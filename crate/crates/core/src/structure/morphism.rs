use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::BinaryStructure;

/// The five morphism kinds between binary structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MorphismKind {
    Homomorphism,
    Monomorphism,
    Embedding,
    Condensation,
    Isomorphism,
}

impl MorphismKind {
    pub const ALL: [MorphismKind; 5] = [
        MorphismKind::Homomorphism,
        MorphismKind::Monomorphism,
        MorphismKind::Embedding,
        MorphismKind::Condensation,
        MorphismKind::Isomorphism,
    ];

    fn injective(self) -> bool {
        self != MorphismKind::Homomorphism
    }

    fn bijective(self) -> bool {
        matches!(self, MorphismKind::Condensation | MorphismKind::Isomorphism)
    }

    fn reflects(self) -> bool {
        matches!(self, MorphismKind::Embedding | MorphismKind::Isomorphism)
    }

    pub fn short_name(self) -> &'static str {
        match self {
            MorphismKind::Homomorphism => "hom",
            MorphismKind::Monomorphism => "mono",
            MorphismKind::Embedding => "emb",
            MorphismKind::Condensation => "cond",
            MorphismKind::Isomorphism => "iso",
        }
    }
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MorphismKind::Homomorphism => "homomorphism",
            MorphismKind::Monomorphism => "monomorphism",
            MorphismKind::Embedding => "embedding",
            MorphismKind::Condensation => "condensation",
            MorphismKind::Isomorphism => "isomorphism",
        };
        f.write_str(s)
    }
}

impl FromStr for MorphismKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MorphismKind::ALL
            .into_iter()
            .find(|k| k.short_name() == s || k.to_string() == s)
            .ok_or_else(|| format!("unknown morphism kind `{s}`"))
    }
}

/// Why a vertex map fails to be a morphism of the requested kind.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorphismViolation {
    #[error("map has {found} entries but the source has {expected} vertices")]
    WrongLength { expected: usize, found: usize },
    #[error("image of `{vertex}` is outside the target carrier")]
    OutOfRange { vertex: String },
    #[error("`{a}` and `{b}` have the same image `{image}`")]
    NotInjective { a: String, b: String, image: String },
    #[error("`{0}` is not in the image")]
    NotSurjective(String),
    #[error("pair ({a},{b}) is not preserved: ({fa},{fb}) is not in the target relation")]
    EdgeNotPreserved { a: String, b: String, fa: String, fb: String },
    #[error("pair ({fa},{fb}) of the target is not reflected: ({a},{b}) is not in the source relation")]
    EdgeNotReflected { a: String, b: String, fa: String, fb: String },
}

/// Checks that `map` (source vertex index to target vertex index) is a
/// morphism of the given kind, returning the first violation found.
pub fn check_morphism(
    x: &BinaryStructure,
    y: &BinaryStructure,
    kind: MorphismKind,
    map: &[usize],
) -> Result<(), MorphismViolation> {
    if map.len() != x.len() {
        return Err(MorphismViolation::WrongLength {
            expected: x.len(),
            found: map.len(),
        });
    }
    if let Some(v) = map.iter().position(|&w| w >= y.len()) {
        return Err(MorphismViolation::OutOfRange {
            vertex: x.name(v).to_string(),
        });
    }
    if kind.injective() {
        let mut seen = vec![None; y.len()];
        for (v, &w) in map.iter().enumerate() {
            if let Some(u) = seen[w] {
                return Err(MorphismViolation::NotInjective {
                    a: x.name(u).to_string(),
                    b: x.name(v).to_string(),
                    image: y.name(w).to_string(),
                });
            }
            seen[w] = Some(v);
        }
        if kind.bijective() {
            if let Some(w) = seen.iter().position(Option::is_none) {
                return Err(MorphismViolation::NotSurjective(y.name(w).to_string()));
            }
        }
    }
    let pair = |a: usize, b: usize| {
        (
            x.name(a).to_string(),
            x.name(b).to_string(),
            y.name(map[a]).to_string(),
            y.name(map[b]).to_string(),
        )
    };
    for (a, b) in x.edges() {
        if !y.has_edge(map[a], map[b]) {
            let (a, b, fa, fb) = pair(a, b);
            return Err(MorphismViolation::EdgeNotPreserved { a, b, fa, fb });
        }
    }
    if kind.reflects() {
        for a in 0..x.len() {
            for b in 0..x.len() {
                if !x.has_edge(a, b) && y.has_edge(map[a], map[b]) {
                    let (a, b, fa, fb) = pair(a, b);
                    return Err(MorphismViolation::EdgeNotReflected { a, b, fa, fb });
                }
            }
        }
    }
    Ok(())
}

pub fn is_morphism(x: &BinaryStructure, y: &BinaryStructure, kind: MorphismKind, map: &[usize]) -> bool {
    check_morphism(x, y, kind, map).is_ok()
}

/// Enumerates morphisms `x → y` of the given kind in lexicographic order of
/// the image vectors, stopping after `limit` results when one is given.
pub fn find_morphisms(
    x: &BinaryStructure,
    y: &BinaryStructure,
    kind: MorphismKind,
    limit: Option<usize>,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    visit_morphisms(x, y, kind, |m| {
        out.push(m.to_vec());
        limit.is_none_or(|l| out.len() < l)
    });
    out
}

/// Streams morphisms to `visit`, which returns `false` to stop the search.
pub(crate) fn visit_morphisms(
    x: &BinaryStructure,
    y: &BinaryStructure,
    kind: MorphismKind,
    mut visit: impl FnMut(&[usize]) -> bool,
) {
    let (n, m) = (x.len(), y.len());
    if kind.bijective() && n != m {
        return;
    }
    if kind.injective() && n > m {
        return;
    }
    if kind.bijective() && x.edge_count() > y.edge_count() {
        return;
    }
    if kind == MorphismKind::Isomorphism && x.edge_count() != y.edge_count() {
        return;
    }
    if n == 0 {
        visit(&[]);
        return;
    }
    let domains: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            (0..m)
                .filter(|&w| {
                    let (lx, ly) = (x.has_edge(v, v), y.has_edge(w, w));
                    (!lx || ly) && (!kind.reflects() || lx == ly)
                })
                .collect()
        })
        .collect();
    let mut search = Search {
        x,
        y,
        kind,
        map: vec![usize::MAX; n],
        visit: &mut visit,
    };
    search.extend(0, domains);
}

struct Search<'a, F> {
    x: &'a BinaryStructure,
    y: &'a BinaryStructure,
    kind: MorphismKind,
    map: Vec<usize>,
    visit: &'a mut F,
}

impl<F: FnMut(&[usize]) -> bool> Search<'_, F> {
    /// Returns `false` once the visitor asked to stop.
    fn extend(&mut self, v: usize, domains: Vec<Vec<usize>>) -> bool {
        let n = self.x.len();
        for &w in &domains[v] {
            self.map[v] = w;
            if v + 1 == n {
                if !(self.visit)(&self.map) {
                    return false;
                }
                continue;
            }
            if let Some(next) = self.forward_check(v, w, &domains) {
                if !self.extend(v + 1, next) {
                    return false;
                }
            }
        }
        self.map[v] = usize::MAX;
        true
    }

    /// Prunes the domains of unassigned vertices against `v ↦ w`.
    fn forward_check(&self, v: usize, w: usize, domains: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
        let (x, y, kind) = (self.x, self.y, self.kind);
        let mut next = domains.to_vec();
        for (u, dom) in next.iter_mut().enumerate().skip(v + 1) {
            let (out_e, in_e) = (x.has_edge(v, u), x.has_edge(u, v));
            dom.retain(|&c| {
                if kind.injective() && c == w {
                    return false;
                }
                let (out_f, in_f) = (y.has_edge(w, c), y.has_edge(c, w));
                if (out_e && !out_f) || (in_e && !in_f) {
                    return false;
                }
                !kind.reflects() || (out_e == out_f && in_e == in_f)
            });
            if dom.is_empty() {
                return None;
            }
        }
        Some(next)
    }
}
