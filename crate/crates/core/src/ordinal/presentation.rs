//! Computable presentations of block sums on ℕ, and a window oracle that
//! checks the isomorphism behind every rewrite step.
//!
//! A point of a block list is a block index plus a coordinate. Ordinal
//! blocks (and their reverses) use an ordinal below the block's ordinal;
//! `Zl(θ)` and `ZlStar(θ)` use a copy index `k` and an ordinal below
//! `ω^θ`. In `Zl` larger copy indices come first (copy 0 is the last
//! copy), in `ZlStar` they come last and each copy is reversed.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use super::blocks::Block;
use super::cnf::Ordinal;
use super::normal::{apply_rule, rewrite_blocks, Normalization, RewriteStep, Rule};

/// The window size used by the acceptance checks.
pub const DEFAULT_WINDOW: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Ord(Ordinal),
    Copy(u64, Ordinal),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub block: usize,
    pub coord: Coord,
}

impl Point {
    fn ord(block: usize, a: Ordinal) -> Self {
        Point {
            block,
            coord: Coord::Ord(a),
        }
    }

    fn copy(block: usize, k: u64, a: Ordinal) -> Self {
        Point {
            block,
            coord: Coord::Copy(k, a),
        }
    }
}

fn unpair(z: u64) -> (u64, u64) {
    let w = ((8 * z as u128 + 1).isqrt() as u64 - 1) / 2;
    let t = w * (w + 1) / 2;
    let y = z - t;
    (w - y, y)
}

fn predecessor(e: &Ordinal) -> Ordinal {
    let (limit, n) = e.split_finite();
    limit.checked_add(&Ordinal::nat(n - 1)).expect("smaller than e")
}

/// The `i`-th point of `ω^e` under a fixed surjection `ℕ → ω^e`.
fn point_below_power(e: &Ordinal, i: u64) -> Ordinal {
    if e.is_zero() {
        return Ordinal::zero();
    }
    if *e == Ordinal::one() {
        return Ordinal::nat(i);
    }
    if e.is_successor() {
        let f = predecessor(e);
        let (k, j) = unpair(i);
        let head = Ordinal::term(f.clone(), k);
        return head.checked_add(&point_below_power(&f, j)).expect("below ω^e");
    }
    if i == 0 {
        return Ordinal::zero();
    }
    let (a, rest) = unpair(i - 1);
    let (c, j) = unpair(rest);
    let g = point_below(e, a).expect("e is nonzero");
    Ordinal::term(g.clone(), c + 1)
        .checked_add(&point_below_power(&g, j))
        .expect("below ω^e")
}

/// The `i`-th point of `α` under a fixed surjection `ℕ → α`, or `None`
/// when `α` is finite and `i ≥ α`.
fn point_below(alpha: &Ordinal, i: u64) -> Option<Ordinal> {
    if let Some(n) = alpha.as_nat() {
        return (i < n).then(|| Ordinal::nat(i));
    }
    // α splits into Σc pieces of the form ω^e, each shifted by its prefix
    let count: u64 = alpha.terms().iter().map(|(_, c)| *c).fold(0, u64::saturating_add);
    let mut t = i % count;
    let mut prefix = Vec::new();
    for (e, c) in alpha.terms() {
        if t < *c {
            prefix.push((e.clone(), t));
            let start = Ordinal::from_terms(prefix.into_iter().filter(|(_, c)| *c > 0).collect());
            let x = point_below_power(e, i / count);
            return Some(start.checked_add(&x).expect("below alpha"));
        }
        t -= c;
        prefix.push((e.clone(), *c));
    }
    unreachable!("t < count")
}

/// Up to `n` distinct ordinals below `alpha`, in enumeration order.
pub fn ordinals_below(alpha: &Ordinal, n: usize) -> Vec<Ordinal> {
    if let Some(m) = alpha.as_nat() {
        return (0..m.min(n as u64)).map(Ordinal::nat).collect();
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    let budget = 64 * n as u64 + 1024;
    for i in 0..budget {
        if out.len() == n {
            break;
        }
        let x = point_below(alpha, i).expect("alpha is infinite");
        if seen.insert(x.clone()) {
            out.push(x);
        }
    }
    out
}

fn block_points(idx: usize, block: &Block, n: usize) -> Vec<Point> {
    match block {
        Block::Ord(a) | Block::RevOrd(a) => ordinals_below(a, n).into_iter().map(|x| Point::ord(idx, x)).collect(),
        Block::Zl(t) | Block::ZlStar(t) => {
            let inner = ordinals_below(&Ordinal::omega_pow(t.clone()), n);
            let mut out = Vec::with_capacity(n);
            let mut z = 0;
            while out.len() < n {
                let (k, j) = unpair(z);
                z += 1;
                if let Some(x) = inner.get(j as usize) {
                    out.push(Point::copy(idx, k, x.clone()));
                } else if j as usize > 2 * n {
                    break;
                }
            }
            out
        }
    }
}

/// The first `n` points of the presentation of `blocks` (fewer when the
/// sum is finite). Blocks are visited round-robin.
pub fn enumerate(blocks: &[Block], n: usize) -> Vec<Point> {
    let lists: Vec<Vec<Point>> = blocks.iter().enumerate().map(|(i, b)| block_points(i, b, n)).collect();
    let mut out = Vec::with_capacity(n);
    let mut round = 0;
    while out.len() < n {
        let mut any = false;
        for list in &lists {
            if let Some(p) = list.get(round) {
                any = true;
                if out.len() < n {
                    out.push(p.clone());
                }
            }
        }
        if !any {
            break;
        }
        round += 1;
    }
    out
}

pub fn contains(blocks: &[Block], p: &Point) -> bool {
    let Some(block) = blocks.get(p.block) else {
        return false;
    };
    match (block, &p.coord) {
        (Block::Ord(a) | Block::RevOrd(a), Coord::Ord(x)) => x < a,
        (Block::Zl(t) | Block::ZlStar(t), Coord::Copy(_, x)) => *x < Ordinal::omega_pow(t.clone()),
        _ => false,
    }
}

/// The order of the presentation. Both points must belong to `blocks`.
pub fn compare(blocks: &[Block], p: &Point, q: &Point) -> Ordering {
    if p.block != q.block {
        return p.block.cmp(&q.block);
    }
    match (&blocks[p.block], &p.coord, &q.coord) {
        (Block::Ord(_), Coord::Ord(x), Coord::Ord(y)) => x.cmp(y),
        (Block::RevOrd(_), Coord::Ord(x), Coord::Ord(y)) => y.cmp(x),
        (Block::Zl(_), Coord::Copy(k, x), Coord::Copy(l, y)) => l.cmp(k).then_with(|| x.cmp(y)),
        (Block::ZlStar(_), Coord::Copy(k, x), Coord::Copy(l, y)) => k.cmp(l).then_with(|| y.cmp(x)),
        _ => panic!("point does not belong to the block list"),
    }
}

/// The point of `reverse_blocks(blocks)` corresponding to `p`.
fn mirror(blocks: &[Block], p: &Point) -> Point {
    let block = blocks.len() - 1 - p.block;
    let coord = match (&blocks[p.block], &p.coord) {
        (Block::Ord(a), Coord::Ord(x)) if a.is_finite() => {
            let n = a.as_nat().expect("finite");
            let k = x.as_nat().expect("finite");
            Coord::Ord(Ordinal::nat(n - 1 - k))
        }
        (_, c) => c.clone(),
    };
    Point { block, coord }
}

/// Splits `y < ω^θ·c` as `ω^θ·d + β` with `β < ω^θ`.
fn split_copy(theta: &Ordinal, y: &Ordinal) -> (u64, Ordinal) {
    match y.terms().first() {
        Some((e, d)) if e == theta => (*d, Ordinal::from_terms(y.terms()[1..].to_vec())),
        _ => (0, y.clone()),
    }
}

/// The isomorphism behind one rewrite, with its inverse.
pub struct RuleIso {
    rule: Rule,
    lhs: [Block; 2],
    rhs: Vec<Block>,
}

impl RuleIso {
    pub fn new(rule: Rule, lhs: [Block; 2]) -> Option<Self> {
        let rhs = apply_rule(rule, &lhs[0], &lhs[1])?;
        Some(RuleIso { rule, lhs, rhs })
    }

    pub fn lhs(&self) -> &[Block] {
        &self.lhs
    }

    pub fn rhs(&self) -> &[Block] {
        &self.rhs
    }

    fn mirrored_base(&self) -> RuleIso {
        let base = if self.rule == Rule::MergeRev { Rule::Merge } else { Rule::Absorb };
        RuleIso::new(base, [self.lhs[1].reversed(), self.lhs[0].reversed()]).expect("mirror rule matched")
    }

    pub fn forward(&self, p: &Point) -> Option<Point> {
        if !contains(&self.lhs, p) {
            return None;
        }
        match self.rule {
            Rule::Merge => {
                let Block::Ord(a) = &self.lhs[0] else { return None };
                let Coord::Ord(x) = &p.coord else { return None };
                let x = if p.block == 0 { x.clone() } else { a.checked_add(x).ok()? };
                Some(Point::ord(0, x))
            }
            Rule::Absorb => {
                let (Block::Zl(t), Block::Ord(b)) = (&self.lhs[0], &self.lhs[1]) else { return None };
                let c = b.terms()[0].1;
                let head = Ordinal::term(t.clone(), c);
                match &p.coord {
                    Coord::Copy(k, x) => Some(Point::copy(0, k + c, x.clone())),
                    Coord::Ord(y) if *y < head => {
                        let (d, beta) = split_copy(t, y);
                        Some(Point::copy(0, c - 1 - d, beta))
                    }
                    Coord::Ord(y) => Some(Point::ord(1, head.left_sub(y)?)),
                }
            }
            Rule::MergeRev | Rule::AbsorbRev => {
                let base = self.mirrored_base();
                let q = base.forward(&mirror(&self.lhs, p))?;
                Some(mirror(&base.rhs, &q))
            }
        }
    }

    pub fn backward(&self, q: &Point) -> Option<Point> {
        if !contains(&self.rhs, q) {
            return None;
        }
        match self.rule {
            Rule::Merge => {
                let Block::Ord(a) = &self.lhs[0] else { return None };
                let Coord::Ord(x) = &q.coord else { return None };
                if x < a {
                    Some(Point::ord(0, x.clone()))
                } else {
                    Some(Point::ord(1, a.left_sub(x)?))
                }
            }
            Rule::Absorb => {
                let (Block::Zl(t), Block::Ord(b)) = (&self.lhs[0], &self.lhs[1]) else { return None };
                let c = b.terms()[0].1;
                let head = Ordinal::term(t.clone(), c);
                match &q.coord {
                    Coord::Copy(k, x) if *k >= c => Some(Point::copy(0, k - c, x.clone())),
                    Coord::Copy(k, x) => {
                        let y = Ordinal::term(t.clone(), c - 1 - k).checked_add(x).ok()?;
                        Some(Point::ord(1, y))
                    }
                    Coord::Ord(z) => Some(Point::ord(1, head.checked_add(z).ok()?)),
                }
            }
            Rule::MergeRev | Rule::AbsorbRev => {
                let base = self.mirrored_base();
                let p = base.backward(&mirror(&self.rhs, q))?;
                Some(mirror(&base.lhs, &p))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleFailure {
    #[error("rule {rule} does not apply to {lhs}")]
    NoMatch { rule: Rule, lhs: String },
    #[error("{rule}: point {point:?} has no valid image")]
    NoImage { rule: Rule, point: Point },
    #[error("{rule}: order not preserved between {first:?} and {second:?}")]
    NotMonotone { rule: Rule, first: Point, second: Point },
    #[error("{rule}: right-hand point {point:?} is not hit")]
    NotHit { rule: Rule, point: Point },
    #[error("the normal form does not rewrite back to the reduced blocks")]
    Regrouping,
}

/// Checks one rewrite on the first `window` points of each side: the
/// forward map is strictly increasing on the left window and every
/// right-hand point in the window is the image of its preimage.
pub fn check_rewrite(step: &RewriteStep, window: usize) -> Result<(), OracleFailure> {
    let iso = RuleIso::new(step.rule, step.before.clone()).ok_or_else(|| OracleFailure::NoMatch {
        rule: step.rule,
        lhs: format!("{:?}", step.before),
    })?;
    if iso.rhs != step.after {
        return Err(OracleFailure::NoMatch {
            rule: step.rule,
            lhs: format!("{:?}", step.before),
        });
    }
    check_iso(&iso, window)
}

pub fn check_iso(iso: &RuleIso, window: usize) -> Result<(), OracleFailure> {
    let rule = iso.rule;
    let mut pairs = Vec::new();
    for p in enumerate(&iso.lhs, window) {
        match iso.forward(&p) {
            Some(q) if contains(&iso.rhs, &q) => pairs.push((p, q)),
            _ => return Err(OracleFailure::NoImage { rule, point: p }),
        }
    }
    pairs.sort_by(|a, b| compare(&iso.lhs, &a.0, &b.0));
    for w in pairs.windows(2) {
        if compare(&iso.rhs, &w[0].1, &w[1].1) != Ordering::Less {
            return Err(OracleFailure::NotMonotone {
                rule,
                first: w[0].0.clone(),
                second: w[1].0.clone(),
            });
        }
    }
    for q in enumerate(&iso.rhs, window) {
        let back = iso.backward(&q).filter(|p| contains(&iso.lhs, p));
        if back.and_then(|p| iso.forward(&p)).as_ref() != Some(&q) {
            return Err(OracleFailure::NotHit { rule, point: q });
        }
    }
    Ok(())
}

/// Checks every step of a normalization, and that a successful normal
/// form regroups (by rewrites that pass the oracle) into the reduced list.
pub fn check_normalization(n: &Normalization, window: usize) -> Result<(), OracleFailure> {
    for step in &n.steps {
        check_rewrite(step, window)?;
    }
    if let Ok(sum) = &n.result {
        let (regrouped, steps) = rewrite_blocks(sum.blocks());
        if regrouped != n.reduced {
            return Err(OracleFailure::Regrouping);
        }
        for step in &steps {
            check_rewrite(step, window)?;
        }
    }
    Ok(())
}
