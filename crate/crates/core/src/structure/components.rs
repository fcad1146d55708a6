use super::BinaryStructure;

/// The connectivity components of a structure, i.e. the classes of the
/// least equivalence relation containing the relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl ComponentPartition {
    /// Blocks sorted internally and by least member.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so block order falls out of root order
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

pub fn components(x: &BinaryStructure) -> ComponentPartition {
    let n = x.len();
    let mut dsu = Dsu::new(n);
    for (a, b) in x.edges() {
        dsu.union(a, b);
    }
    let mut root_block = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![0; n];
    for v in 0..n {
        let r = dsu.find(v);
        if root_block[r] == usize::MAX {
            root_block[r] = blocks.len();
            blocks.push(Vec::new());
        }
        block_of[v] = root_block[r];
        blocks[root_block[r]].push(v);
    }
    ComponentPartition { blocks, block_of }
}

impl BinaryStructure {
    pub fn is_connected(&self) -> bool {
        components(self).len() == 1
    }
}
