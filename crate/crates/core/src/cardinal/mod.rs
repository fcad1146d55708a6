//! Reversibility of sequences of non-zero cardinals.
//!
//! A sequence `⟨κ_i : i ∈ I⟩` is reversible iff it is finite-to-one, or it
//! consists of natural numbers, the set `K` of values taken infinitely often
//! is nonempty and independent, and `gcd(K)` divides only finitely many of
//! the values.

mod semigroup;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::parse::{tokenized_lines, ParseError};
use crate::{Multiplicity, Status};

pub use semigroup::{check_representation, is_independent, semigroup_member, Independence};

/// A non-zero cardinal: a positive natural or an opaque `ℵ_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CardValue {
    Nat(u64),
    Aleph(u32),
}

impl CardValue {
    pub fn as_nat(self) -> Option<u64> {
        match self {
            CardValue::Nat(n) => Some(n),
            CardValue::Aleph(_) => None,
        }
    }
}

impl fmt::Display for CardValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardValue::Nat(n) => write!(f, "{n}"),
            CardValue::Aleph(k) => write!(f, "aleph_{k}"),
        }
    }
}

impl FromStr for CardValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(k) = s.strip_prefix("aleph_") {
            return k
                .parse()
                .map(CardValue::Aleph)
                .map_err(|_| format!("bad aleph index in `{s}`"));
        }
        match s.parse::<u64>() {
            Ok(0) => Err("cardinal values must be non-zero".into()),
            Ok(n) => Ok(CardValue::Nat(n)),
            Err(_) => Err(format!("expected a positive natural or `aleph_<k>`, found `{s}`")),
        }
    }
}

/// The values `first + step·n` for all `n ∈ ℕ`, each taken `per_member`
/// times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Progression {
    pub first: u64,
    pub step: u64,
    pub per_member: u64,
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "progression first {} step {} times {}",
            self.first, self.step, self.per_member
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CardinalSequence {
    entries: BTreeMap<CardValue, Multiplicity>,
    progressions: Vec<Progression>,
}

impl CardinalSequence {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `m` more indices carrying `value`; repeated values accumulate.
    pub fn add_value(&mut self, value: CardValue, m: Multiplicity) -> &mut Self {
        self.entries
            .entry(value)
            .and_modify(|e| *e = *e + m)
            .or_insert(m);
        self
    }

    pub fn add_progression(&mut self, p: Progression) -> &mut Self {
        assert!(p.first >= 1 && p.step >= 1 && p.per_member >= 1, "progression fields must be positive");
        self.progressions.push(p);
        self.progressions.sort_unstable();
        self
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (CardValue, Multiplicity)>) -> Self {
        let mut seq = Self::new();
        for (v, m) in entries {
            seq.add_value(v, m);
        }
        seq
    }

    pub fn entries(&self) -> impl Iterator<Item = (CardValue, Multiplicity)> + '_ {
        self.entries.iter().map(|(&v, &m)| (v, m))
    }

    pub fn progressions(&self) -> &[Progression] {
        &self.progressions
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut seq = Self::new();
        for (line, t) in tokenized_lines(text) {
            let err = |m: String| ParseError::new(line, m);
            match t.as_slice() {
                ["value", v, "times", m] => {
                    let v = v.parse().map_err(err)?;
                    let m = m.parse().map_err(err)?;
                    seq.add_value(v, m);
                }
                ["progression", "first", a, "step", b, "times", c] => {
                    let num = |s: &str| match s.parse::<u64>() {
                        Ok(n) if n >= 1 => Ok(n),
                        _ => Err(ParseError::new(line, format!("expected a positive natural, found `{s}`"))),
                    };
                    seq.add_progression(Progression {
                        first: num(a)?,
                        step: num(b)?,
                        per_member: num(c)?,
                    });
                }
                _ => {
                    return Err(err(
                        "expected `value <nat|aleph_k> times <nat|inf>` or \
                         `progression first <nat> step <nat> times <nat>`"
                            .into(),
                    ))
                }
            }
        }
        Ok(seq)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, m) in self.entries() {
            out.push_str(&format!("value {v} times {m}\n"));
        }
        for p in &self.progressions {
            out.push_str(&format!("{p}\n"));
        }
        out
    }

    /// No value is carried by infinitely many indices.
    pub fn is_finite_to_one(&self) -> bool {
        self.entries.values().all(|m| m.is_finite())
    }

    /// Values carried by infinitely many indices. Progression members have
    /// finite multiplicity, so only explicit entries contribute.
    pub fn infinitely_repeated(&self) -> Vec<CardValue> {
        self.entries
            .iter()
            .filter(|(_, m)| m.is_infinite())
            .map(|(&v, _)| v)
            .collect()
    }
}

/// A progression member divisible by `g`, and the period after which the
/// next one follows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityEvidence {
    pub progression: Progression,
    /// Least `n` with `g | first + step·n`.
    pub offset: u64,
    /// `g | first + step·(offset + period·t)` for every `t`.
    pub period: u64,
}

/// Whether `g` divides infinitely many of the values of `seq`.
///
/// The explicit entries form a finite set, so only a progression can supply
/// infinitely many multiples; `first + step·n ≡ 0 (mod g)` is solvable iff
/// `gcd(g, step) | first`, and then periodically so.
pub fn gcd_divides_infinitely_many(g: u64, seq: &CardinalSequence) -> Option<DivisibilityEvidence> {
    assert!(g >= 1);
    seq.progressions.iter().find_map(|&p| {
        let d = g.gcd(&p.step);
        if p.first % d != 0 {
            return None;
        }
        let modulus = (g / d) as i128;
        let s = ((p.step / d) as i128) % modulus;
        let e = s.extended_gcd(&modulus);
        let inverse = e.x.rem_euclid(modulus);
        let target = (-((p.first / d) as i128)).rem_euclid(modulus);
        let offset = (target * inverse).rem_euclid(modulus) as u64;
        Some(DivisibilityEvidence {
            progression: p,
            offset,
            period: g / d,
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqReason {
    FiniteToOne,
    IndependentAndGcdOk { k: Vec<u64>, gcd: u64 },
    NotAllNatural { value: CardValue },
    NotIndependent { k: Vec<u64>, n: u64, representation: Vec<u64> },
    GcdDividesInfinitelyMany { k: Vec<u64>, gcd: u64, evidence: DivisibilityEvidence },
}

impl SeqReason {
    pub fn code(&self) -> &'static str {
        match self {
            SeqReason::FiniteToOne => "finite-to-one",
            SeqReason::IndependentAndGcdOk { .. } => "independent-and-gcd-ok",
            SeqReason::NotAllNatural { .. } => "not-all-natural",
            SeqReason::NotIndependent { .. } => "k-not-independent",
            SeqReason::GcdDividesInfinitelyMany { .. } => "gcd-divides-infinitely-many",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqVerdict {
    pub reversible: bool,
    pub reason: SeqReason,
}

impl SeqVerdict {
    pub fn status(&self) -> Status {
        if self.reversible {
            Status::Positive
        } else {
            Status::Negative
        }
    }

    /// Key-value report: `status`, `reason`, then evidence lines.
    pub fn to_text(&self) -> String {
        let join = |v: &[u64], sep: &str| v.iter().map(u64::to_string).collect::<Vec<_>>().join(sep);
        let mut out = format!("status {}\nreason {}\n", self.status(), self.reason.code());
        match &self.reason {
            SeqReason::FiniteToOne => {}
            SeqReason::IndependentAndGcdOk { k, gcd } => {
                out += &format!("k {}\ngcd {gcd}\n", join(k, " "));
            }
            SeqReason::NotAllNatural { value } => out += &format!("value {value}\n"),
            SeqReason::NotIndependent { k, n, representation } => {
                out += &format!("k {}\nrepresentation {n} = {}\n", join(k, " "), join(representation, " + "));
            }
            SeqReason::GcdDividesInfinitelyMany { k, gcd, evidence } => {
                out += &format!(
                    "k {}\ngcd {gcd}\n{}\noffset {}\nperiod {}\n",
                    join(k, " "),
                    evidence.progression,
                    evidence.offset,
                    evidence.period
                );
            }
        }
        out
    }
}

pub fn decide_reversible(seq: &CardinalSequence) -> SeqVerdict {
    let verdict = |reversible, reason| SeqVerdict { reversible, reason };
    if seq.is_finite_to_one() {
        return verdict(true, SeqReason::FiniteToOne);
    }
    if let Some(&value) = seq.entries.keys().find(|v| v.as_nat().is_none()) {
        return verdict(false, SeqReason::NotAllNatural { value });
    }
    let k: Vec<u64> = seq.infinitely_repeated().iter().filter_map(|v| v.as_nat()).collect();
    debug_assert!(!k.is_empty(), "a sequence that is not finite-to-one repeats some value infinitely often");
    if let Independence::Dependent { n, representation } = is_independent(&k) {
        return verdict(false, SeqReason::NotIndependent { k, n, representation });
    }
    let g = k.iter().fold(0u64, |acc, &x| acc.gcd(&x));
    match gcd_divides_infinitely_many(g, seq) {
        Some(evidence) => verdict(false, SeqReason::GcdDividesInfinitelyMany { k, gcd: g, evidence }),
        None => verdict(true, SeqReason::IndependentAndGcdOk { k, gcd: g }),
    }
}
