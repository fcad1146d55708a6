//! Disjoint unions presented by finitely many connected templates, each with
//! a multiplicity in `ℕ⁺ ∪ {ℵ₀}`.

mod decide;
mod merge;
mod orbit;
mod preorder;
mod tournament;

use thiserror::Error;

use crate::parse::{tokenized_lines, ParseError};
use crate::structure::{find_morphisms, BinaryStructure, MorphismKind};
use crate::Multiplicity;

pub use decide::{decide_family, omega_star_certificate, DecideOptions, Evidence, FamilyVerdict, OmegaStarCertificate, StrictPair};
pub use merge::{merge_witness_search, validate_merge_witness, MergeBlock, MergeSearch, MergeWitness, ShiftPlan};
pub use orbit::{orbit_fiber_check, OrbitError, OrbitFiber};
pub use preorder::{condensation_preorder, strict_pair_check, PreorderCell, PreorderMatrix};
pub use tournament::{tournament_partition_witness, PartitionBlock, TournamentError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("a family needs at least one template")]
    Empty,
    #[error("template `{0}` has an empty carrier")]
    EmptyTemplate(String),
    #[error("template `{0}` is not connected")]
    Disconnected(String),
    #[error("template name `{0}` is used twice")]
    DuplicateName(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

type TokenLine<'a> = (usize, Vec<&'a str>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub name: String,
    pub structure: BinaryStructure,
    pub multiplicity: Multiplicity,
}

/// Pairwise non-isomorphic connected templates with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFamily {
    templates: Vec<Template>,
}

impl StructureFamily {
    /// Validates connectivity and merges isomorphic templates, adding their
    /// multiplicities under the first name seen.
    pub fn new(templates: impl IntoIterator<Item = Template>) -> Result<Self, FamilyError> {
        let mut merged: Vec<Template> = Vec::new();
        let mut names = std::collections::BTreeSet::new();
        for t in templates {
            if !names.insert(t.name.clone()) {
                return Err(FamilyError::DuplicateName(t.name));
            }
            if t.structure.is_empty() {
                return Err(FamilyError::EmptyTemplate(t.name));
            }
            if !t.structure.is_connected() {
                return Err(FamilyError::Disconnected(t.name));
            }
            let twin = merged.iter_mut().find(|m| {
                !find_morphisms(&t.structure, &m.structure, MorphismKind::Isomorphism, Some(1)).is_empty()
            });
            match twin {
                Some(m) => m.multiplicity = m.multiplicity + t.multiplicity,
                None => merged.push(t),
            }
        }
        if merged.is_empty() {
            return Err(FamilyError::Empty);
        }
        Ok(StructureFamily { templates: merged })
    }

    pub fn from_parts<S: Into<String>>(
        parts: impl IntoIterator<Item = (S, BinaryStructure, Multiplicity)>,
    ) -> Result<Self, FamilyError> {
        Self::new(parts.into_iter().map(|(name, structure, multiplicity)| Template {
            name: name.into(),
            structure,
            multiplicity,
        }))
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    pub fn structure(&self, i: usize) -> &BinaryStructure {
        &self.templates[i].structure
    }

    pub fn multiplicity(&self, i: usize) -> Multiplicity {
        self.templates[i].multiplicity
    }

    pub fn name(&self, i: usize) -> &str {
        &self.templates[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.templates.iter().position(|t| t.name == name)
    }

    /// Parses `template <name> multiplicity <n|inf>` headers, each followed
    /// by structure-file lines for that template.
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let mut heads: Vec<(usize, String, Multiplicity, Vec<TokenLine>)> = Vec::new();
        for (line, tokens) in tokenized_lines(text) {
            if tokens[0] == "template" {
                let [_, name, kw, m] = tokens[..] else {
                    return Err(ParseError::new(line, "expected `template <name> multiplicity <n|inf>`").into());
                };
                if kw != "multiplicity" {
                    return Err(ParseError::new(line, "expected `template <name> multiplicity <n|inf>`").into());
                }
                let m = m.parse().map_err(|e| ParseError::new(line, e))?;
                heads.push((line, name.to_string(), m, Vec::new()));
            } else {
                match heads.last_mut() {
                    Some(h) => h.3.push((line, tokens)),
                    None => return Err(ParseError::new(line, "structure line before the first `template`").into()),
                }
            }
        }
        let mut templates = Vec::new();
        for (line, name, multiplicity, body) in heads {
            let structure = BinaryStructure::parse_lines(body)?;
            if structure.is_empty() {
                return Err(ParseError::new(line, format!("template `{name}` declares no vertices")).into());
            }
            templates.push(Template {
                name,
                structure,
                multiplicity,
            });
        }
        Self::new(templates)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.templates {
            out.push_str(&format!("template {} multiplicity {}\n", t.name, t.multiplicity));
            out.push_str(&t.structure.to_text());
        }
        out
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::Multiplicity::{self, Aleph0};

    pub fn chains(spec: &[(usize, Multiplicity)]) -> StructureFamily {
        StructureFamily::from_parts(
            spec.iter()
                .map(|&(n, m)| (format!("C{n}"), BinaryStructure::chain(n), m)),
        )
        .unwrap()
    }

    pub fn p3() -> BinaryStructure {
        BinaryStructure::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap()
    }

    pub fn p3_c3(mp: Multiplicity, mc: Multiplicity) -> StructureFamily {
        StructureFamily::from_parts([("P3", p3(), mp), ("C3", BinaryStructure::directed_cycle(3), mc)]).unwrap()
    }

    pub fn c2_c4() -> StructureFamily {
        chains(&[(2, Aleph0), (4, Aleph0)])
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::Multiplicity::{Aleph0, Finite};

    #[test]
    fn isomorphic_templates_merge() {
        let a = BinaryStructure::new(["x", "y"], [("x", "y")]).unwrap();
        let b = BinaryStructure::new(["p", "q"], [("q", "p")]).unwrap();
        let fam = StructureFamily::from_parts([("A", a, Finite(2)), ("B", b, Finite(3))]).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.multiplicity(0), Finite(5));
        let fam = StructureFamily::from_parts([
            ("A", BinaryStructure::chain(2), Finite(2)),
            ("B", BinaryStructure::chain(2), Aleph0),
        ])
        .unwrap();
        assert_eq!(fam.multiplicity(0), Aleph0);
    }

    #[test]
    fn templates_must_be_connected() {
        let two = BinaryStructure::new(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(
            StructureFamily::from_parts([("X", two, Finite(1))]),
            Err(FamilyError::Disconnected("X".into()))
        );
        assert_eq!(
            StructureFamily::new(Vec::new()),
            Err(FamilyError::Empty)
        );
    }

    #[test]
    fn parse_round_trip() {
        let text = "# P3 and a 3-cycle\ntemplate P3 multiplicity inf\nnodes a b c\nedge a b\nedge b c\n\
                    template C3 multiplicity 4\nnodes 0 1 2\nedge 0 1\nedge 1 2\nedge 2 0\n";
        let fam = StructureFamily::parse(text).unwrap();
        assert_eq!(fam, p3_c3(Aleph0, Finite(4)));
        assert_eq!(StructureFamily::parse(&fam.to_text()).unwrap(), fam);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = StructureFamily::parse("nodes a").unwrap_err();
        assert!(matches!(err, FamilyError::Parse(ParseError { line: 1, .. })));
        let err = StructureFamily::parse("template A multiplicity 0\nnodes a").unwrap_err();
        assert!(matches!(err, FamilyError::Parse(ParseError { line: 1, .. })));
        let err = StructureFamily::parse("template A multiplicity 1\nnodes a\nedge a b").unwrap_err();
        assert!(matches!(err, FamilyError::Parse(ParseError { line: 3, .. })));
        let err = StructureFamily::parse("template A multiplicity 1\ntemplate B multiplicity 1\nnodes a").unwrap_err();
        assert!(matches!(err, FamilyError::Parse(ParseError { line: 1, .. })));
    }

}
