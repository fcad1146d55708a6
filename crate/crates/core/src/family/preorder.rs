use super::StructureFamily;
use crate::structure::{find_morphisms, MorphismKind};

/// Relation between two templates under the condensational preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreorderCell {
    /// Witness: an isomorphism from row to column.
    Isomorphic(Vec<usize>),
    /// Row `≺_c` column. Witness: a condensation row → column.
    Below(Vec<usize>),
    /// Column `≺_c` row. Witness: a condensation column → row.
    Above(Vec<usize>),
    Incomparable,
    /// A template exceeded the search guard.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreorderMatrix {
    cells: Vec<Vec<PreorderCell>>,
}

impl PreorderMatrix {
    pub fn cell(&self, row: usize, col: usize) -> &PreorderCell {
        &self.cells[row][col]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().flatten().all(|c| *c != PreorderCell::Inconclusive)
    }
}

/// Classifies every ordered pair of templates. Finite structures are
/// reversible, so condensations both ways already force an isomorphism and
/// the preorder classes are isomorphism classes.
pub fn condensation_preorder(fam: &StructureFamily, guard: usize) -> PreorderMatrix {
    let n = fam.len();
    let mut cells = vec![vec![PreorderCell::Incomparable; n]; n];
    for i in 0..n {
        for j in i..n {
            let (s, t) = (fam.structure(i), fam.structure(j));
            let (cell, mirror) = if s.len() > guard || t.len() > guard {
                (PreorderCell::Inconclusive, PreorderCell::Inconclusive)
            } else if let Some(iso) = first(s, t, MorphismKind::Isomorphism) {
                let mut inverse = vec![0; iso.len()];
                for (a, &b) in iso.iter().enumerate() {
                    inverse[b] = a;
                }
                (PreorderCell::Isomorphic(iso), PreorderCell::Isomorphic(inverse))
            } else if let Some(c) = first(s, t, MorphismKind::Condensation) {
                (PreorderCell::Below(c.clone()), PreorderCell::Above(c))
            } else if let Some(c) = first(t, s, MorphismKind::Condensation) {
                (PreorderCell::Above(c.clone()), PreorderCell::Below(c))
            } else {
                (PreorderCell::Incomparable, PreorderCell::Incomparable)
            };
            cells[i][j] = cell;
            if i != j {
                cells[j][i] = mirror;
            }
        }
    }
    PreorderMatrix { cells }
}

fn first(
    s: &crate::structure::BinaryStructure,
    t: &crate::structure::BinaryStructure,
    kind: MorphismKind,
) -> Option<Vec<usize>> {
    find_morphisms(s, t, kind, Some(1)).pop()
}

/// Pairs `(S, T)` with `S ≺_c T` and both multiplicities `ℵ₀`.
pub fn strict_pair_check(fam: &StructureFamily, matrix: &PreorderMatrix) -> Vec<(usize, usize)> {
    let n = fam.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            matches!(matrix.cell(i, j), PreorderCell::Below(_))
                && fam.multiplicity(i).is_infinite()
                && fam.multiplicity(j).is_infinite()
        })
        .collect()
}
