use super::components::{components, ComponentPartition};
use super::morphism::{check_morphism, MorphismKind, MorphismViolation};
use super::BinaryStructure;

/// A condensation split along connectivity components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondensationDecomposition {
    pub source_components: ComponentPartition,
    pub target_components: ComponentPartition,
    /// Component `i` of the source lands inside component `index_map[i]`.
    pub index_map: Vec<usize>,
    /// Restriction of the condensation to each source component, as
    /// `(source vertex, target vertex)` pairs in source order.
    pub restrictions: Vec<Vec<(usize, usize)>>,
}

impl CondensationDecomposition {
    /// The union of the restrictions, as a full vertex map.
    pub fn recompose(&self) -> Vec<usize> {
        let n: usize = self.restrictions.iter().map(Vec::len).sum();
        let mut map = vec![usize::MAX; n];
        for &(v, w) in self.restrictions.iter().flatten() {
            map[v] = w;
        }
        map
    }
}

/// Splits the condensation `map: x → y` into the induced surjection of
/// component indices and the per-component monomorphisms, verifying on the
/// way that the images of the components mapped into each target component
/// partition it.
pub fn decompose_condensation(
    map: &[usize],
    x: &BinaryStructure,
    y: &BinaryStructure,
) -> Result<CondensationDecomposition, MorphismViolation> {
    check_morphism(x, y, MorphismKind::Condensation, map)?;
    let cx = components(x);
    let cy = components(y);
    let mut index_map = Vec::with_capacity(cx.len());
    let mut restrictions: Vec<Vec<(usize, usize)>> = Vec::with_capacity(cx.len());
    for block in cx.blocks() {
        let j = cy.block_of(map[block[0]]);
        // a homomorphic image of a connected block is connected
        debug_assert!(block.iter().all(|&v| cy.block_of(map[v]) == j));
        index_map.push(j);
        let part = x.induced(block);
        let target_block = &cy.blocks()[j];
        let target = y.induced(target_block);
        let local: Vec<usize> = block
            .iter()
            .map(|&v| target_block.binary_search(&map[v]).expect("image inside block"))
            .collect();
        check_morphism(&part, &target, MorphismKind::Monomorphism, &local)?;
        restrictions.push(block.iter().map(|&v| (v, map[v])).collect());
    }
    let mut covered = vec![false; y.len()];
    for &(_, w) in restrictions.iter().flatten() {
        assert!(!covered[w], "condensation already checked injective");
        covered[w] = true;
    }
    debug_assert!(covered.iter().all(|&c| c));
    Ok(CondensationDecomposition {
        source_components: cx,
        target_components: cy,
        index_map,
        restrictions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_edges_into_a_path() {
        let x = BinaryStructure::new(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]).unwrap();
        let y = BinaryStructure::new(["0", "1", "2", "3"], [("0", "1"), ("1", "2"), ("2", "3")]).unwrap();
        let d = decompose_condensation(&[0, 1, 2, 3], &x, &y).unwrap();
        assert_eq!(d.index_map, [0, 0]);
        assert_eq!(d.restrictions, [vec![(0, 0), (1, 1)], vec![(2, 2), (3, 3)]]);
        assert_eq!(d.recompose(), [0, 1, 2, 3]);
    }

    #[test]
    fn identity_decomposes_into_isomorphisms() {
        let x = BinaryStructure::new(["a", "b", "c"], [("a", "b"), ("c", "c")]).unwrap();
        let d = decompose_condensation(&[0, 1, 2], &x, &x).unwrap();
        assert_eq!(d.index_map, [0, 1]);
    }

    #[test]
    fn non_condensation_is_rejected() {
        let x = BinaryStructure::new(["a", "b"], [("a", "b")]).unwrap();
        let y = BinaryStructure::new(["0", "1"], [("0", "1")]).unwrap();
        let err = decompose_condensation(&[1, 0], &x, &y).unwrap_err();
        assert!(matches!(err, MorphismViolation::EdgeNotPreserved { .. }));
    }
}
