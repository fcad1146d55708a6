use std::collections::BTreeMap;

use thiserror::Error;

use super::StructureFamily;
use crate::parse::ParseError;
use crate::structure::{check_morphism, disjoint_union, find_morphisms, BinaryStructure, MorphismKind};

/// One part of a merge: a copy of template `part` placed inside the target
/// by the monomorphism `mapping` (part vertex index to target vertex index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeBlock {
    pub part: usize,
    pub mapping: Vec<usize>,
}

/// The index surjection of a single merge on the symbolic index set
/// `{(type, copy)}`: consumed copies collapse onto `(target, 0)`, the target's
/// own copies move one step up, and the remaining copies of each consumed
/// type close the gap by shifting down. Every other index is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftPlan {
    pub target: usize,
    pub consumed: BTreeMap<usize, u64>,
}

impl ShiftPlan {
    pub fn image(&self, (ty, copy): (usize, u64)) -> (usize, u64) {
        if ty == self.target {
            return (ty, copy + 1);
        }
        match self.consumed.get(&ty) {
            Some(&k) if copy < k => (self.target, 0),
            Some(&k) => (ty, copy - k),
            None => (ty, copy),
        }
    }

    /// Checks on copies below `window` that the plan stays within the
    /// declared multiplicities, is onto, and merges at least two indices.
    pub fn check_window(&self, fam: &StructureFamily, window: u64) -> Result<(), InvalidWitness> {
        let moving = std::iter::once(self.target).chain(self.consumed.keys().copied());
        for ty in moving {
            if ty >= fam.len() {
                return Err(InvalidWitness(format!("template index {ty} out of range")));
            }
            if fam.multiplicity(ty).is_finite() {
                return Err(InvalidWitness(format!(
                    "template `{}` has finite multiplicity and cannot be shifted",
                    fam.name(ty)
                )));
            }
        }
        if self.consumed.contains_key(&self.target) {
            return Err(InvalidWitness("the target type cannot be consumed".into()));
        }
        let slack = self.consumed.values().copied().max().unwrap_or(0);
        let mut hits: BTreeMap<(usize, u64), u64> = BTreeMap::new();
        for ty in 0..fam.len() {
            let copies = match fam.multiplicity(ty) {
                crate::Multiplicity::Finite(m) => m,
                crate::Multiplicity::Aleph0 => window + slack + 1,
            };
            for c in 0..copies {
                let (t, d) = self.image((ty, c));
                if !fam.multiplicity(t).covers(d + 1) {
                    return Err(InvalidWitness(format!("({ty},{c}) leaves the index set")));
                }
                *hits.entry((t, d)).or_default() += 1;
            }
        }
        for ty in 0..fam.len() {
            let copies = match fam.multiplicity(ty) {
                crate::Multiplicity::Finite(m) => m,
                crate::Multiplicity::Aleph0 => window,
            };
            for c in 0..copies {
                if !hits.contains_key(&(ty, c)) {
                    return Err(InvalidWitness(format!("index ({}, {c}) has no preimage", fam.name(ty))));
                }
            }
        }
        let merged = hits.get(&(self.target, 0)).copied().unwrap_or(0);
        if merged < 2 {
            return Err(InvalidWitness("no two indices are merged".into()));
        }
        Ok(())
    }
}

/// A copy of `target` partitioned into monomorphic images of at least two
/// part templates, together with the index surjection that merges them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeWitness {
    pub target: usize,
    pub blocks: Vec<MergeBlock>,
    pub shift: ShiftPlan,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid witness: {0}")]
pub struct InvalidWitness(pub String);

impl MergeWitness {
    pub(crate) fn from_blocks(target: usize, mut blocks: Vec<MergeBlock>) -> Self {
        blocks.sort_by(|a, b| (a.part, a.mapping.iter().min()).cmp(&(b.part, b.mapping.iter().min())));
        let mut consumed = BTreeMap::new();
        for b in &blocks {
            *consumed.entry(b.part).or_insert(0) += 1;
        }
        MergeWitness {
            target,
            blocks,
            shift: ShiftPlan { target, consumed },
        }
    }

    /// `target`, then per block a `block` line with sorted `map x -> y`
    /// lines, then the shift plan.
    pub fn write_text(&self, fam: &StructureFamily, out: &mut String) {
        let t = fam.structure(self.target);
        out.push_str(&format!("target {}\n", fam.name(self.target)));
        for b in &self.blocks {
            let p = fam.structure(b.part);
            out.push_str(&format!("block {}\n", fam.name(b.part)));
            for (v, &w) in b.mapping.iter().enumerate() {
                out.push_str(&format!("map {} -> {}\n", p.name(v), t.name(w)));
            }
        }
        out.push_str(&format!("shift {}\n", fam.name(self.shift.target)));
        for (&ty, &k) in &self.shift.consumed {
            out.push_str(&format!("consume {} {k}\n", fam.name(ty)));
        }
    }

    pub(crate) fn parse_lines<'a>(
        fam: &StructureFamily,
        lines: &mut std::iter::Peekable<impl Iterator<Item = (usize, Vec<&'a str>)>>,
    ) -> Result<Self, ParseError> {
        let template = |line: usize, name: &str| {
            fam.index_of(name)
                .ok_or_else(|| ParseError::new(line, format!("unknown template `{name}`")))
        };
        let (line, t) = lines.next().ok_or_else(|| ParseError::new(0, "missing `target` line"))?;
        let target = match t[..] {
            ["target", name] => template(line, name)?,
            _ => return Err(ParseError::new(line, "expected `target <template>`")),
        };
        let ts = fam.structure(target);
        let mut blocks: Vec<MergeBlock> = Vec::new();
        let mut shift = None;
        while let Some((line, t)) = lines.peek().cloned() {
            match t[..] {
                ["block", name] => {
                    lines.next();
                    let part = template(line, name)?;
                    let ps = fam.structure(part);
                    let mut mapping = vec![usize::MAX; ps.len()];
                    while let Some((line, ["map", x, "->", y])) = lines.peek().map(|(l, t)| (*l, &t[..])) {
                        let v = vertex(ps, line, x)?;
                        mapping[v] = vertex(ts, line, y)?;
                        lines.next();
                    }
                    if mapping.contains(&usize::MAX) {
                        return Err(ParseError::new(line, "block does not map every vertex"));
                    }
                    blocks.push(MergeBlock { part, mapping });
                }
                ["shift", name] => {
                    lines.next();
                    let mut consumed = BTreeMap::new();
                    while let Some((line, ["consume", name, k])) = lines.peek().map(|(l, t)| (*l, &t[..])) {
                        let k = k.parse().map_err(|_| ParseError::new(line, "bad consume count"))?;
                        consumed.insert(template(line, name)?, k);
                        lines.next();
                    }
                    shift = Some(ShiftPlan {
                        target: template(line, name)?,
                        consumed,
                    });
                }
                _ => break,
            }
        }
        let shift = shift.ok_or_else(|| ParseError::new(line, "missing `shift` section"))?;
        Ok(MergeWitness { target, blocks, shift })
    }
}

fn vertex(s: &BinaryStructure, line: usize, name: &str) -> Result<usize, ParseError> {
    s.index_of(name)
        .ok_or_else(|| ParseError::new(line, format!("unknown vertex `{name}`")))
}

/// Re-checks a merge witness from scratch: every block is a monomorphism of
/// its part into the target, the block images partition the target, the
/// shift plan consumes exactly the blocks' parts and is a non-injective
/// surjection on the window.
pub fn validate_merge_witness(fam: &StructureFamily, w: &MergeWitness, window: u64) -> Result<(), InvalidWitness> {
    if w.target >= fam.len() || w.blocks.iter().any(|b| b.part >= fam.len()) {
        return Err(InvalidWitness("template index out of range".into()));
    }
    if w.blocks.len() < 2 {
        return Err(InvalidWitness("a merge needs at least two blocks".into()));
    }
    let t = fam.structure(w.target);
    let mut covered = vec![false; t.len()];
    for b in &w.blocks {
        check_morphism(fam.structure(b.part), t, MorphismKind::Monomorphism, &b.mapping)
            .map_err(|e| InvalidWitness(format!("block `{}`: {e}", fam.name(b.part))))?;
        for &v in &b.mapping {
            if std::mem::replace(&mut covered[v], true) {
                return Err(InvalidWitness(format!("vertex `{}` is covered twice", t.name(v))));
            }
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(InvalidWitness(format!("vertex `{}` is not covered", t.name(v))));
    }
    let mut counts = BTreeMap::new();
    for b in &w.blocks {
        *counts.entry(b.part).or_insert(0u64) += 1;
    }
    if w.shift.target != w.target || w.shift.consumed != counts {
        return Err(InvalidWitness("shift plan does not match the blocks".into()));
    }
    w.shift.check_window(fam, window)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MergeSearch {
    Found(MergeWitness),
    /// `exhaustive` is false when some target was skipped by the guard or
    /// had more vertices than the part limit.
    NotFound { exhaustive: bool },
}

/// Searches for a template of multiplicity `ℵ₀` that splits into monomorphic
/// copies of at least two (and at most `max_parts`) templates of
/// multiplicity `ℵ₀`, part types being used with repetition.
pub fn merge_witness_search(fam: &StructureFamily, max_parts: usize, guard: usize) -> MergeSearch {
    let mut exhaustive = true;
    let supply: Vec<usize> = (0..fam.len()).filter(|&i| fam.multiplicity(i).is_infinite()).collect();
    for &target in &supply {
        let size = fam.structure(target).len();
        if size > guard {
            exhaustive = false;
            continue;
        }
        if max_parts < size {
            exhaustive = false;
        }
        let parts: Vec<usize> = supply
            .iter()
            .copied()
            .filter(|&p| p != target && fam.structure(p).len() < size)
            .collect();
        let mut chosen = Vec::new();
        if let Some(w) = search_multisets(fam, target, &parts, 0, size, max_parts, &mut chosen) {
            return MergeSearch::Found(w);
        }
    }
    MergeSearch::NotFound { exhaustive }
}

fn search_multisets(
    fam: &StructureFamily,
    target: usize,
    parts: &[usize],
    from: usize,
    remaining: usize,
    max_parts: usize,
    chosen: &mut Vec<usize>,
) -> Option<MergeWitness> {
    if remaining == 0 {
        return (chosen.len() >= 2).then(|| try_merge(fam, target, chosen)).flatten();
    }
    if chosen.len() == max_parts {
        return None;
    }
    for (k, &p) in parts.iter().enumerate().skip(from) {
        let s = fam.structure(p).len();
        if s <= remaining {
            chosen.push(p);
            let found = search_multisets(fam, target, parts, k, remaining - s, max_parts, chosen);
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

fn try_merge(fam: &StructureFamily, target: usize, chosen: &[usize]) -> Option<MergeWitness> {
    let structures: Vec<BinaryStructure> = chosen.iter().map(|&p| fam.structure(p).clone()).collect();
    let union = disjoint_union(&structures);
    let cond = find_morphisms(&union.structure, fam.structure(target), MorphismKind::Condensation, Some(1)).pop()?;
    let blocks = chosen
        .iter()
        .enumerate()
        .map(|(k, &part)| MergeBlock {
            part,
            mapping: (0..structures[k].len()).map(|v| cond[union.vertex(k, v)]).collect(),
        })
        .collect();
    Some(MergeWitness::from_blocks(target, blocks))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::Multiplicity::{Aleph0, Finite};

    #[test]
    fn four_chain_from_two_chains() {
        let fam = c2_c4();
        let MergeSearch::Found(w) = merge_witness_search(&fam, 4, 9) else {
            panic!("expected a witness")
        };
        assert_eq!(w.target, 1);
        assert_eq!(w.blocks.len(), 2);
        assert_eq!(w.shift.consumed, BTreeMap::from([(0, 2)]));
        validate_merge_witness(&fam, &w, 1000).unwrap();
        let s = &w.shift;
        assert_eq!(s.image((0, 0)), (1, 0));
        assert_eq!(s.image((0, 1)), (1, 0));
        assert_eq!(s.image((0, 5)), (0, 3));
        assert_eq!(s.image((1, 5)), (1, 6));
    }

    #[test]
    fn two_and_five_do_not_merge() {
        let fam = chains(&[(2, Aleph0), (5, Aleph0)]);
        assert_eq!(merge_witness_search(&fam, 5, 9), MergeSearch::NotFound { exhaustive: true });
    }

    #[test]
    fn finite_supply_never_merges() {
        let fam = chains(&[(2, Finite(7)), (4, Aleph0)]);
        assert_eq!(merge_witness_search(&fam, 4, 9), MergeSearch::NotFound { exhaustive: true });
        let fam = chains(&[(2, Aleph0), (4, Finite(1))]);
        assert_eq!(merge_witness_search(&fam, 4, 9), MergeSearch::NotFound { exhaustive: true });
    }

    #[test]
    fn part_limit_and_guard_make_search_partial() {
        let fam = chains(&[(1, Aleph0), (3, Aleph0)]);
        assert_eq!(merge_witness_search(&fam, 2, 9), MergeSearch::NotFound { exhaustive: false });
        assert!(matches!(merge_witness_search(&fam, 3, 9), MergeSearch::Found(_)));
        assert_eq!(merge_witness_search(&fam, 3, 2), MergeSearch::NotFound { exhaustive: false });
    }

    #[test]
    fn mixed_part_types() {
        // the path a→b→c splits into an edge and a point
        let fam = StructureFamily::from_parts([
            ("P", BinaryStructure::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap(), Aleph0),
            ("E", BinaryStructure::chain(2), Aleph0),
            ("V", BinaryStructure::chain(1), Aleph0),
        ])
        .unwrap();
        let MergeSearch::Found(w) = merge_witness_search(&fam, 3, 9) else {
            panic!("expected a witness")
        };
        validate_merge_witness(&fam, &w, 100).unwrap();
    }

    #[test]
    fn tampered_witnesses_are_rejected() {
        let fam = c2_c4();
        let MergeSearch::Found(w) = merge_witness_search(&fam, 4, 9) else {
            panic!()
        };
        let mut bad = w.clone();
        bad.blocks[1].mapping = bad.blocks[0].mapping.clone();
        assert!(validate_merge_witness(&fam, &bad, 10).is_err());
        let mut bad = w.clone();
        bad.blocks[0].mapping.reverse();
        assert!(validate_merge_witness(&fam, &bad, 10).is_err());
        let mut bad = w.clone();
        bad.shift.consumed.insert(0, 3);
        assert!(validate_merge_witness(&fam, &bad, 10).is_err());
        let finite = chains(&[(2, Aleph0), (4, Finite(1))]);
        assert!(validate_merge_witness(&finite, &w, 10).is_err());
    }

    #[test]
    fn text_round_trip() {
        let fam = c2_c4();
        let MergeSearch::Found(w) = merge_witness_search(&fam, 4, 9) else {
            panic!()
        };
        let mut text = String::new();
        w.write_text(&fam, &mut text);
        assert_eq!(
            text,
            "target C4\nblock C2\nmap 0 -> 0\nmap 1 -> 1\nblock C2\nmap 0 -> 2\nmap 1 -> 3\nshift C4\nconsume C2 2\n"
        );
        let mut lines = crate::parse::tokenized_lines(&text).peekable();
        assert_eq!(MergeWitness::parse_lines(&fam, &mut lines).unwrap(), w);
    }
}
