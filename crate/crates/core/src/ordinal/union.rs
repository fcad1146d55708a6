//! Reversibility of disjoint unions of CSB linear orders of a limit type.

use std::cmp::Ordering;
use std::fmt::Write as _;

use thiserror::Error;

use super::blocks::Block;
use super::cnf::Ordinal;
use super::expr::Expr;
use super::normal::{classify_csb_limit, Classification, LimitNormalSum};
use super::presentation::{compare, contains, enumerate, Coord, Point};
use crate::parse::{tokenized_lines, ParseError};
use crate::{Multiplicity, Status};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OtpError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("`{expr}` is not a CSB order of a limit type: {reason}")]
    NotInClass { expr: String, reason: String },
    #[error("the family is empty")]
    Empty,
}

/// Order types with multiplicities; equal normal forms are merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OtpFamily {
    members: Vec<(LimitNormalSum, Multiplicity)>,
}

impl OtpFamily {
    pub fn new(members: impl IntoIterator<Item = (LimitNormalSum, Multiplicity)>) -> Result<Self, OtpError> {
        let mut out: Vec<(LimitNormalSum, Multiplicity)> = Vec::new();
        for (sum, m) in members {
            match out.iter_mut().find(|(s, _)| *s == sum) {
                Some(entry) => entry.1 = entry.1 + m,
                None => out.push((sum, m)),
            }
        }
        if out.is_empty() {
            return Err(OtpError::Empty);
        }
        Ok(OtpFamily { members: out })
    }

    /// Classifies each expression first; anything outside the class is
    /// rejected.
    pub fn from_exprs(items: &[(Expr, Multiplicity)]) -> Result<Self, OtpError> {
        let mut members = Vec::new();
        for (e, m) in items {
            members.push((classify_member(e)?, *m));
        }
        OtpFamily::new(members)
    }

    /// Lines `otp <expression> times <n|inf>`.
    pub fn parse(text: &str) -> Result<Self, OtpError> {
        let mut members = Vec::new();
        for (line, tokens) in tokenized_lines(text) {
            let n = tokens.len();
            if tokens[0] != "otp" || n < 4 || tokens[n - 2] != "times" {
                return Err(ParseError::new(line, "expected `otp <expression> times <n|inf>`").into());
            }
            let src = tokens[1..n - 2].join(" ");
            let e = Expr::parse(&src).map_err(|err| ParseError::new(line, err.to_string()))?;
            let m: Multiplicity = tokens[n - 1].parse().map_err(|err: String| ParseError::new(line, err))?;
            members.push((classify_member(&e)?, m));
        }
        OtpFamily::new(members)
    }

    pub fn members(&self) -> &[(LimitNormalSum, Multiplicity)] {
        &self.members
    }
}

fn classify_member(e: &Expr) -> Result<LimitNormalSum, OtpError> {
    match classify_csb_limit(e) {
        Classification::Yes(sum) => Ok(sum),
        Classification::No(r) => Err(OtpError::NotInClass {
            expr: e.to_string(),
            reason: r.message,
        }),
        Classification::Unsupported(err) => Err(OtpError::NotInClass {
            expr: e.to_string(),
            reason: err.to_string(),
        }),
    }
}

/// The non-reversibility witness for a member with infinitely many
/// copies. Copy 0 is split into the points with an even finite part
/// (`A0`) and an odd one (`A1`); copies 0 and 1 go onto `A0` and `A1`
/// and copy `k ≥ 2` goes onto copy `k-1`. The result is a bijective
/// homomorphism of the union whose inverse is not one, since `A0` and
/// `A1` are comparable while copies 0 and 1 are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitWitness {
    pub member: usize,
    pub order_type: LimitNormalSum,
}

impl SplitWitness {
    /// The embedding of the order onto the part `parity` (0 or 1).
    pub fn embed(&self, parity: u64, p: &Point) -> Point {
        let coord = match &p.coord {
            Coord::Ord(x) => Coord::Ord(spread(x, parity)),
            Coord::Copy(k, x) => Coord::Copy(*k, spread(x, parity)),
        };
        Point { block: p.block, coord }
    }

    /// Which part `q` lies in, and its preimage there.
    pub fn locate(&self, q: &Point) -> (u64, Point) {
        let (x, rebuild): (&Ordinal, Box<dyn Fn(Ordinal) -> Coord>) = match &q.coord {
            Coord::Ord(x) => (x, Box::new(Coord::Ord)),
            Coord::Copy(k, x) => {
                let k = *k;
                (x, Box::new(move |y| Coord::Copy(k, y)))
            }
        };
        let (limit, n) = x.split_finite();
        let y = limit.checked_add(&Ordinal::nat(n / 2)).expect("below x");
        (
            n % 2,
            Point {
                block: q.block,
                coord: rebuild(y),
            },
        )
    }

    /// The shift on copy indices of the member.
    pub fn copy_image(copy: u64) -> u64 {
        copy.saturating_sub(1)
    }

    /// Checks on the first `window` points that each part map is strictly
    /// increasing, stays inside the order, and that every point of the
    /// window lies in exactly the part `locate` reports.
    pub fn validate(&self, window: usize) -> Result<(), String> {
        let blocks = self.order_type.blocks();
        if !blocks.iter().all(spreadable) {
            return Err("a block has no limit coordinate to split".into());
        }
        let mut points = enumerate(&blocks, window);
        points.sort_by(|a, b| compare(&blocks, a, b));
        for parity in 0..2 {
            let images: Vec<Point> = points.iter().map(|p| self.embed(parity, p)).collect();
            if let Some(p) = images.iter().find(|q| !contains(&blocks, q)) {
                return Err(format!("image {p:?} leaves the order"));
            }
            for (i, w) in images.windows(2).enumerate() {
                if compare(&blocks, &w[0], &w[1]) != Ordering::Less {
                    return Err(format!("part {parity} map is not increasing at {:?}", points[i]));
                }
            }
        }
        for q in &points {
            let (parity, p) = self.locate(q);
            if !contains(&blocks, &p) || self.embed(parity, &p) != *q {
                return Err(format!("point {q:?} is not covered by the split"));
            }
        }
        Ok(())
    }
}

fn spreadable(b: &Block) -> bool {
    match b {
        Block::Ord(a) | Block::RevOrd(a) => a.is_limit(),
        Block::Zl(t) | Block::ZlStar(t) => !t.is_zero(),
    }
}

/// `λ + n ↦ λ + 2n + parity` for `λ` zero or a limit.
fn spread(x: &Ordinal, parity: u64) -> Ordinal {
    let (limit, n) = x.split_finite();
    limit.checked_add(&Ordinal::nat(2 * n + parity)).expect("coefficient overflow")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionVerdict {
    pub reversible: bool,
    pub witness: Option<SplitWitness>,
}

impl UnionVerdict {
    pub fn status(&self) -> Status {
        if self.reversible {
            Status::Positive
        } else {
            Status::Negative
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("status {}\n", self.status());
        match &self.witness {
            None => out.push_str("reason finite-to-one\n"),
            Some(w) => {
                out.push_str("reason infinite-multiplicity\n");
                let _ = writeln!(out, "member {}", w.order_type);
                out.push_str("split even-odd\n");
                out.push_str("copy 0 -> 0 even\ncopy 1 -> 0 odd\ncopy k -> k-1\n");
            }
        }
        out
    }
}

/// The union is reversible iff every member has finite multiplicity.
pub fn decide_union_reversibility(fam: &OtpFamily) -> UnionVerdict {
    match fam.members.iter().position(|(_, m)| m.is_infinite()) {
        None => UnionVerdict {
            reversible: true,
            witness: None,
        },
        Some(member) => UnionVerdict {
            reversible: false,
            witness: Some(SplitWitness {
                member,
                order_type: fam.members[member].0.clone(),
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_decide() {
        let fam = OtpFamily::parse("otp w^2 times inf\n").unwrap();
        let v = decide_union_reversibility(&fam);
        assert!(!v.reversible);
        v.witness.as_ref().unwrap().validate(2000).unwrap();
        assert!(v.to_text().contains("member L(w^2)"));

        let fam = OtpFamily::parse("otp w times 1\notp w^2 times 1\notp w^3 times 1").unwrap();
        assert!(decide_union_reversibility(&fam).reversible);
    }

    #[test]
    fn equal_normal_forms_merge() {
        let fam = OtpFamily::parse("otp w + w times 1\notp w*2 times 2").unwrap();
        assert_eq!(fam.members().len(), 1);
        assert_eq!(fam.members()[0].1, Multiplicity::Finite(3));
    }

    #[test]
    fn members_outside_the_class_are_rejected() {
        assert!(matches!(OtpFamily::parse("otp w+1 times 1"), Err(OtpError::NotInClass { .. })));
        assert!(matches!(OtpFamily::parse("otp w 1"), Err(OtpError::Parse(_))));
    }

    #[test]
    fn split_of_composite_types() {
        for s in ["w*rev(w)+w^2", "rev(w^2+w)+rev(w)*w", "w^w+rev(w*2)"] {
            let fam = OtpFamily::parse(&format!("otp {s} times inf")).unwrap();
            let w = decide_union_reversibility(&fam).witness.unwrap();
            w.validate(1000).unwrap_or_else(|e| panic!("{s}: {e}"));
        }
    }
}
