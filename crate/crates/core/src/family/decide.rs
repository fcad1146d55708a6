use std::iter::Peekable;

use super::merge::{merge_witness_search, validate_merge_witness, InvalidWitness, MergeSearch, MergeWitness};
use super::preorder::{condensation_preorder, strict_pair_check};
use super::tournament::tournament_partition_witness;
use super::StructureFamily;
use crate::cardinal::{decide_reversible, CardValue, CardinalSequence, SeqReason};
use crate::parse::{tokenized_lines, ParseError};
use crate::structure::{check_morphism, find_morphisms, BinaryStructure, MorphismKind, DEFAULT_GUARD};
use crate::Status;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Largest number of parts tried in a merge; `None` means as many as the
    /// target has vertices, which makes the merge search exhaustive.
    pub max_parts: Option<usize>,
    /// Largest template on which exhaustive searches run.
    pub guard: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            max_parts: None,
            guard: DEFAULT_GUARD,
        }
    }
}

/// `below ≺_c above`, both with multiplicity `ℵ₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictPair {
    pub below: usize,
    pub above: usize,
    pub condensation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Merge(MergeWitness),
    StrictPair(StrictPair),
    Certificate { name: String, notes: Vec<String> },
    None { notes: Vec<String> },
}

impl Evidence {
    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::Merge(_) => "merge-witness",
            Evidence::StrictPair(_) => "strict-pair",
            Evidence::Certificate { .. } => "certificate",
            Evidence::None { .. } => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyVerdict {
    pub status: Status,
    pub evidence: Evidence,
}

impl FamilyVerdict {
    fn certified(name: &str, notes: Vec<String>) -> Self {
        FamilyVerdict {
            status: Status::Positive,
            evidence: Evidence::Certificate {
                name: name.to_string(),
                notes,
            },
        }
    }

    fn refuted(evidence: Evidence) -> Self {
        FamilyVerdict {
            status: Status::Negative,
            evidence,
        }
    }

    pub fn to_text(&self, fam: &StructureFamily) -> String {
        let mut out = format!("status {}\nevidence {}\n", self.status, self.evidence.kind());
        let notes = match &self.evidence {
            Evidence::Merge(w) => {
                w.write_text(fam, &mut out);
                &[][..]
            }
            Evidence::StrictPair(p) => {
                let (s, t) = (fam.structure(p.below), fam.structure(p.above));
                out += &format!("below {}\nabove {}\n", fam.name(p.below), fam.name(p.above));
                for (v, &w) in p.condensation.iter().enumerate() {
                    out += &format!("map {} -> {}\n", s.name(v), t.name(w));
                }
                &[][..]
            }
            Evidence::Certificate { name, notes } => {
                out += &format!("certificate {name}\n");
                &notes[..]
            }
            Evidence::None { notes } => &notes[..],
        };
        for n in notes {
            out += &format!("note {n}\n");
        }
        out
    }

    pub fn parse(text: &str, fam: &StructureFamily) -> Result<Self, ParseError> {
        let mut lines = tokenized_lines(text).peekable();
        let status = match lines.next() {
            Some((_, t)) if t[..] == ["status", "positive"] => Status::Positive,
            Some((_, t)) if t[..] == ["status", "negative"] => Status::Negative,
            Some((_, t)) if t[..] == ["status", "inconclusive"] => Status::Inconclusive,
            Some((line, _)) => return Err(ParseError::new(line, "expected `status <positive|negative|inconclusive>`")),
            None => return Err(ParseError::new(1, "empty verdict")),
        };
        let (line, kind) = match lines.next() {
            Some((line, t)) if t.len() == 2 && t[0] == "evidence" => (line, t[1]),
            Some((line, _)) => return Err(ParseError::new(line, "expected `evidence <kind>`")),
            None => return Err(ParseError::new(2, "missing `evidence` line")),
        };
        let evidence = match kind {
            "merge-witness" => Evidence::Merge(MergeWitness::parse_lines(fam, &mut lines)?),
            "strict-pair" => Evidence::StrictPair(parse_strict_pair(fam, &mut lines)?),
            "certificate" => match lines.next() {
                Some((_, t)) if t.len() == 2 && t[0] == "certificate" => Evidence::Certificate {
                    name: t[1].to_string(),
                    notes: parse_notes(&mut lines)?,
                },
                _ => return Err(ParseError::new(line + 1, "expected `certificate <name>`")),
            },
            "none" => Evidence::None {
                notes: parse_notes(&mut lines)?,
            },
            other => return Err(ParseError::new(line, format!("unknown evidence kind `{other}`"))),
        };
        if let Some((line, _)) = lines.next() {
            return Err(ParseError::new(line, "unexpected trailing line"));
        }
        Ok(FamilyVerdict { status, evidence })
    }

    /// Independently re-checks the evidence of a negative verdict.
    pub fn validate(&self, fam: &StructureFamily, window: u64) -> Result<(), InvalidWitness> {
        match (&self.status, &self.evidence) {
            (Status::Negative, Evidence::Merge(w)) => validate_merge_witness(fam, w, window),
            (Status::Negative, Evidence::StrictPair(p)) => {
                if p.below == p.above || p.below >= fam.len() || p.above >= fam.len() {
                    return Err(InvalidWitness("a strict pair needs two distinct templates".into()));
                }
                if !(fam.multiplicity(p.below).is_infinite() && fam.multiplicity(p.above).is_infinite()) {
                    return Err(InvalidWitness("both classes of a strict pair must be infinite".into()));
                }
                check_morphism(fam.structure(p.below), fam.structure(p.above), MorphismKind::Condensation, &p.condensation)
                    .map_err(|e| InvalidWitness(e.to_string()))
            }
            (Status::Negative, _) => Err(InvalidWitness("a negative verdict needs a witness".into())),
            _ => Ok(()),
        }
    }
}

fn parse_notes<'a>(lines: &mut Peekable<impl Iterator<Item = (usize, Vec<&'a str>)>>) -> Result<Vec<String>, ParseError> {
    let mut notes = Vec::new();
    while let Some((_, t)) = lines.peek() {
        if t[0] != "note" {
            break;
        }
        notes.push(t[1..].join(" "));
        lines.next();
    }
    Ok(notes)
}

fn parse_strict_pair<'a>(
    fam: &StructureFamily,
    lines: &mut Peekable<impl Iterator<Item = (usize, Vec<&'a str>)>>,
) -> Result<StrictPair, ParseError> {
    let mut named = |key: &str| match lines.next() {
        Some((line, t)) if t.len() == 2 && t[0] == key => fam
            .index_of(t[1])
            .ok_or_else(|| ParseError::new(line, format!("unknown template `{}`", t[1]))),
        Some((line, _)) => Err(ParseError::new(line, format!("expected `{key} <template>`"))),
        None => Err(ParseError::new(0, format!("missing `{key}` line"))),
    };
    let below = named("below")?;
    let above = named("above")?;
    let (s, t) = (fam.structure(below), fam.structure(above));
    let mut condensation = vec![usize::MAX; s.len()];
    while let Some((line, ["map", x, "->", y])) = lines.peek().map(|(l, t)| (*l, &t[..])) {
        let v = s
            .index_of(x)
            .ok_or_else(|| ParseError::new(line, format!("unknown vertex `{x}`")))?;
        condensation[v] = t
            .index_of(y)
            .ok_or_else(|| ParseError::new(line, format!("unknown vertex `{y}`")))?;
        lines.next();
    }
    if condensation.contains(&usize::MAX) {
        return Err(ParseError::new(0, "strict pair map is incomplete"));
    }
    Ok(StrictPair {
        below,
        above,
        condensation,
    })
}

/// Certificate that every ω*-sequence of the family is trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaStarCertificate {
    pub reason: &'static str,
}

/// For finite templates a monomorphism between isomorphic templates is an
/// isomorphism, so a non-trivial ω*-sequence starts with distinct templates
/// `T ≼_m S` and continues through infinitely many indices below `T`, which
/// needs a template `U ≼_m T` of multiplicity `ℵ₀`. Conversely such `S, T, U`
/// yield one. Returns `None` when such a triple exists or when a needed
/// monomorphism search is beyond the guard.
pub fn omega_star_certificate(fam: &StructureFamily, guard: usize) -> Option<OmegaStarCertificate> {
    let n = fam.len();
    if (0..n).all(|i| fam.multiplicity(i).is_finite()) {
        return Some(OmegaStarCertificate {
            reason: "finite-index-set",
        });
    }
    if (0..n).any(|i| fam.structure(i).len() > guard) {
        return None;
    }
    let mono = |a: usize, b: usize| a == b || !find_morphisms(fam.structure(a), fam.structure(b), MorphismKind::Monomorphism, Some(1)).is_empty();
    let below: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| mono(a, b)).collect()).collect();
    for s in 0..n {
        for t in (0..n).filter(|&t| t != s && below[t][s]) {
            if (0..n).any(|u| fam.multiplicity(u).is_infinite() && below[u][t]) {
                return None;
            }
        }
    }
    Some(OmegaStarCertificate {
        reason: "no-nontrivial-omega-star",
    })
}

fn all_chains_route(fam: &StructureFamily) -> Option<FamilyVerdict> {
    if !(0..fam.len()).all(|i| fam.structure(i).is_chain()) {
        return None;
    }
    let seq = CardinalSequence::from_entries(
        (0..fam.len()).map(|i| (CardValue::Nat(fam.structure(i).len() as u64), fam.multiplicity(i))),
    );
    let verdict = decide_reversible(&seq);
    if verdict.reversible {
        let notes = verdict.to_text().lines().skip(1).map(str::to_string).collect();
        return Some(FamilyVerdict::certified("cardinal-criterion", notes));
    }
    let SeqReason::NotIndependent { n, representation, .. } = verdict.reason else {
        // sizes are natural and there are no progressions
        unreachable!("chain families fail the criterion only through dependence");
    };
    let by_size = |s: u64| {
        (0..fam.len())
            .find(|&i| fam.structure(i).len() as u64 == s)
            .expect("every size in K is a template size")
    };
    let target = by_size(n);
    let parts: Vec<usize> = representation.iter().map(|&s| by_size(s)).collect();
    let structures: Vec<BinaryStructure> = parts.iter().map(|&p| fam.structure(p).clone()).collect();
    let blocks = tournament_partition_witness(fam.structure(target), &structures)
        .expect("chains are tournaments and sizes add up")
        .expect("any split of a chain is a split into chains");
    let blocks = parts
        .iter()
        .zip(blocks)
        .map(|(&part, b)| super::MergeBlock {
            part,
            mapping: b.mapping,
        })
        .collect();
    Some(FamilyVerdict::refuted(Evidence::Merge(MergeWitness::from_blocks(target, blocks))))
}

/// Decides reversibility of the union of a family where it can, and says
/// "inconclusive" otherwise.
///
/// Steps, in order: the exact cardinal criterion when every template is a
/// chain; strict pairs between infinite classes; single-merge witnesses;
/// finite index sets; all-infinite families with neither strict pairs nor
/// merges (exhaustive search only); the ω*-sequence certificate.
pub fn decide_family(fam: &StructureFamily, opts: DecideOptions) -> FamilyVerdict {
    if let Some(v) = all_chains_route(fam) {
        return v;
    }
    let matrix = condensation_preorder(fam, opts.guard);
    if let Some(&(below, above)) = strict_pair_check(fam, &matrix).first() {
        let condensation = find_morphisms(fam.structure(below), fam.structure(above), MorphismKind::Condensation, Some(1))
            .pop()
            .expect("the preorder recorded a condensation");
        return FamilyVerdict::refuted(Evidence::StrictPair(StrictPair {
            below,
            above,
            condensation,
        }));
    }
    let largest = (0..fam.len()).map(|i| fam.structure(i).len()).max().unwrap_or(0);
    let max_parts = opts.max_parts.unwrap_or(largest);
    let exhaustive = match merge_witness_search(fam, max_parts, opts.guard) {
        MergeSearch::Found(w) => return FamilyVerdict::refuted(Evidence::Merge(w)),
        MergeSearch::NotFound { exhaustive } => exhaustive,
    };
    let mult = |i: usize| fam.multiplicity(i);
    if (0..fam.len()).all(|i| mult(i).is_finite()) {
        return FamilyVerdict::certified("finite-index-set", Vec::new());
    }
    if (0..fam.len()).all(|i| mult(i).is_infinite()) && exhaustive && matrix.is_complete() {
        return FamilyVerdict::certified("no-strict-pairs-no-merges", Vec::new());
    }
    if let Some(c) = omega_star_certificate(fam, opts.guard) {
        return FamilyVerdict::certified(c.reason, Vec::new());
    }
    let mut notes = Vec::new();
    if !matrix.is_complete() {
        notes.push(format!("preorder incomplete beyond guard {}", opts.guard));
    }
    if !exhaustive {
        notes.push(format!("merge search not exhaustive with at most {max_parts} parts"));
    }
    notes.push("mixed finite and infinite multiplicities".to_string());
    FamilyVerdict {
        status: Status::Inconclusive,
        evidence: Evidence::None { notes },
    }
}
