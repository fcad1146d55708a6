use super::BinaryStructure;

/// `⟨X, X² ∖ ρ⟩`.
pub fn complement(x: &BinaryStructure) -> BinaryStructure {
    let n = x.len();
    let edges = (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    let edges: Vec<_> = edges.filter(|&(a, b)| !x.has_edge(a, b)).collect();
    BinaryStructure::from_indexed(x.names().to_vec(), edges)
}

/// A disjoint union together with the provenance of each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointUnion {
    pub structure: BinaryStructure,
    /// `origin[v] = (part, vertex of that part)`.
    pub origin: Vec<(usize, usize)>,
    offsets: Vec<Vec<usize>>,
}

impl DisjointUnion {
    /// Index in the union of vertex `v` of part `part`.
    pub fn vertex(&self, part: usize, v: usize) -> usize {
        self.offsets[part][v]
    }
}

/// Tags every vertex `v` of part `i` as `i.v`.
pub fn disjoint_union(parts: &[BinaryStructure]) -> DisjointUnion {
    let mut names = Vec::new();
    let mut edges = Vec::new();
    let mut raw_origin = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let base = names.len();
        names.extend(part.names().iter().map(|n| format!("{i}.{n}")));
        raw_origin.extend((0..part.len()).map(|v| (i, v)));
        edges.extend(part.edges().map(|(a, b)| (base + a, base + b)));
    }
    let structure = BinaryStructure::from_indexed(names, edges);
    let mut origin = vec![(0, 0); raw_origin.len()];
    let mut offsets: Vec<Vec<usize>> = parts.iter().map(|p| vec![0; p.len()]).collect();
    let mut k = 0;
    for (i, part) in parts.iter().enumerate() {
        for v in 0..part.len() {
            let idx = structure
                .index_of(&format!("{i}.{}", part.name(v)))
                .expect("tagged vertex present");
            origin[idx] = raw_origin[k];
            offsets[i][v] = idx;
            k += 1;
        }
    }
    DisjointUnion {
        structure,
        origin,
        offsets,
    }
}
