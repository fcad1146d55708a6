use super::morphism::{visit_morphisms, MorphismKind};
use super::{BinaryStructure, GuardExceeded};

/// Largest carrier the exhaustive oracle accepts unless told otherwise.
pub const DEFAULT_GUARD: usize = 9;

/// A condensation that is not an automorphism, with a pair it fails to
/// reflect: `(x, y) ∉ ρ` although `(f x, f y) ∈ ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub map: Vec<usize>,
    pub pair: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversibilityReport {
    pub reversible: bool,
    pub condensations: usize,
    pub automorphisms: usize,
    pub counterexample: Option<Counterexample>,
}

/// Enumerates every bijective endomorphism of `x` and checks that each one
/// is an automorphism. Refuses carriers larger than `guard`.
pub fn is_reversible_bruteforce(x: &BinaryStructure, guard: usize) -> Result<ReversibilityReport, GuardExceeded> {
    if x.len() > guard {
        return Err(GuardExceeded { size: x.len(), guard });
    }
    let n = x.len();
    let mut report = ReversibilityReport {
        reversible: true,
        condensations: 0,
        automorphisms: 0,
        counterexample: None,
    };
    visit_morphisms(x, x, MorphismKind::Condensation, |map| {
        report.condensations += 1;
        let bad = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| !x.has_edge(a, b) && x.has_edge(map[a], map[b]));
        match bad {
            None => report.automorphisms += 1,
            Some(pair) => {
                report.reversible = false;
                if report.counterexample.is_none() {
                    report.counterexample = Some(Counterexample {
                        map: map.to_vec(),
                        pair,
                    });
                }
            }
        }
        true
    });
    Ok(report)
}
