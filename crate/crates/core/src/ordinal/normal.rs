//! Canonical sums of limit-type summands and the rewrite system producing
//! them.

use std::fmt;

use super::blocks::{evaluate, reverse_blocks, Block, EvalError};
use super::cnf::Ordinal;
use super::expr::Expr;

/// A summand of a canonical sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// A limit ordinal.
    L(Ordinal),
    /// The reverse of a limit ordinal.
    Lstar(Ordinal),
    /// `ω^θ·ω* + ω^δ` with `1 ≤ θ < δ`.
    Z(Ordinal, Ordinal),
    /// `(ω^δ)* + (ω^θ)*·ω`, the reverse of `Z(θ, δ)`.
    Zstar(Ordinal, Ordinal),
}

impl Term {
    pub fn blocks(&self) -> Vec<Block> {
        match self {
            Term::L(a) => vec![Block::Ord(a.clone())],
            Term::Lstar(a) => vec![Block::RevOrd(a.clone())],
            Term::Z(t, d) => vec![Block::Zl(t.clone()), Block::Ord(Ordinal::omega_pow(d.clone()))],
            Term::Zstar(t, d) => vec![Block::RevOrd(Ordinal::omega_pow(d.clone())), Block::ZlStar(t.clone())],
        }
    }

    /// The term as an expression in the input grammar.
    pub fn to_expr_string(&self) -> String {
        match self {
            Term::L(a) => format!("({a})"),
            Term::Lstar(a) => format!("rev({a})"),
            Term::Z(t, d) => format!("w^({t})*rev(w)+w^({d})"),
            Term::Zstar(t, d) => format!("rev(w^({d}))+rev(w^({t}))*w"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::L(a) => write!(f, "L({a})"),
            Term::Lstar(a) => write!(f, "Lstar({a})"),
            Term::Z(t, d) => write!(f, "Z({t},{d})"),
            Term::Zstar(t, d) => write!(f, "Zstar({t},{d})"),
        }
    }
}

/// A finite sum of `L`, `Lstar`, `Z` and `Zstar` terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LimitNormalSum(pub Vec<Term>);

impl LimitNormalSum {
    pub fn blocks(&self) -> Vec<Block> {
        self.0.iter().flat_map(Term::blocks).collect()
    }

    pub fn to_expr_string(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(Term::to_expr_string).collect();
        parts.join("+")
    }

    pub fn terms(&self) -> &[Term] {
        &self.0
    }
}

impl fmt::Display for LimitNormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Term::to_string).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The rewrite rules on adjacent blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `α + β → α+β` for ordinals.
    Merge,
    /// The mirror of `Merge`: `α* + β* → (β+α)*`, with finite blocks
    /// read as self-dual (`n + β* → (β+n)*`, `β* + n → (n+β)*`).
    MergeRev,
    /// `ω^θ·ω* + (ω^θ·c + r) → ω^θ·ω* + r`.
    Absorb,
    /// The mirror of `Absorb`.
    AbsorbRev,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Merge => "merge",
            Rule::MergeRev => "merge-rev",
            Rule::Absorb => "absorb",
            Rule::AbsorbRev => "absorb-rev",
        })
    }
}

/// One rewrite: the pair at `at, at+1` became `after`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: Rule,
    pub at: usize,
    pub before: [Block; 2],
    pub after: Vec<Block>,
}

/// Applies `rule` to an adjacent pair, if it matches.
pub fn apply_rule(rule: Rule, a: &Block, b: &Block) -> Option<Vec<Block>> {
    match rule {
        Rule::Merge => match (a, b) {
            (Block::Ord(x), Block::Ord(y)) => Some(vec![Block::Ord(x.checked_add(y).ok()?)]),
            _ => None,
        },
        Rule::Absorb => match (a, b) {
            (Block::Zl(t), Block::Ord(x)) => {
                if x.leading_exponent() != Some(t) {
                    return None;
                }
                let rest = Ordinal::from_terms(x.terms()[1..].to_vec());
                let mut out = vec![a.clone()];
                out.extend(Block::ordinal(rest));
                Some(out)
            }
            _ => None,
        },
        Rule::MergeRev | Rule::AbsorbRev => {
            let base = if rule == Rule::MergeRev { Rule::Merge } else { Rule::Absorb };
            if base == Rule::Merge && a.finite_size().is_some() && b.finite_size().is_some() {
                return None;
            }
            let out = apply_rule(base, &b.reversed(), &a.reversed())?;
            Some(reverse_blocks(&out))
        }
    }
}

const RULES: [Rule; 4] = [Rule::Merge, Rule::MergeRev, Rule::Absorb, Rule::AbsorbRev];

/// Rewrites to a fixed point, always at the leftmost position where a rule
/// applies (rules tried in the order `Merge`, `MergeRev`, `Absorb`,
/// `AbsorbRev`). Every step either removes a block or shrinks an ordinal
/// block, so this terminates.
pub fn rewrite_blocks(mut blocks: Vec<Block>) -> (Vec<Block>, Vec<RewriteStep>) {
    let mut steps = Vec::new();
    'outer: loop {
        for at in 0..blocks.len().saturating_sub(1) {
            for rule in RULES {
                if let Some(after) = apply_rule(rule, &blocks[at], &blocks[at + 1]) {
                    steps.push(RewriteStep {
                        rule,
                        at,
                        before: [blocks[at].clone(), blocks[at + 1].clone()],
                        after: after.clone(),
                    });
                    blocks.splice(at..at + 2, after);
                    continue 'outer;
                }
            }
        }
        return (blocks, steps);
    }
}

/// Why an order type is not recognized as a CSB order of a limit type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotInClass {
    /// True when a successor or finite summand (or an empty order) makes
    /// the answer certain; false when the rewrite system merely ran out
    /// of rules.
    pub definitive: bool,
    pub offending: String,
    pub message: String,
    /// The irreducible block list.
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Yes(LimitNormalSum),
    No(NotInClass),
    /// The expression uses a product shape outside the supported fragment.
    Unsupported(EvalError),
}

impl Classification {
    pub fn normal_form(&self) -> Option<&LimitNormalSum> {
        match self {
            Classification::Yes(n) => Some(n),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub blocks: Vec<Block>,
    pub reduced: Vec<Block>,
    pub steps: Vec<RewriteStep>,
    pub result: Result<LimitNormalSum, NotInClass>,
}

/// Rewrites `blocks` and reads the irreducible list as a canonical sum.
pub fn normalize_blocks(blocks: Vec<Block>) -> Normalization {
    let (reduced, steps) = rewrite_blocks(blocks.clone());
    let result = read_terms(&reduced);
    Normalization {
        blocks,
        reduced,
        steps,
        result,
    }
}

pub fn normalize_limit_sum(e: &Expr) -> Result<Normalization, EvalError> {
    Ok(normalize_blocks(evaluate(e)?))
}

pub fn classify_csb_limit(e: &Expr) -> Classification {
    match normalize_limit_sum(e) {
        Ok(n) => match n.result {
            Ok(sum) => Classification::Yes(sum),
            Err(reason) => Classification::No(reason),
        },
        Err(err) => Classification::Unsupported(err),
    }
}

fn read_terms(blocks: &[Block]) -> Result<LimitNormalSum, NotInClass> {
    let fail = |definitive: bool, offending: &Block, message: &str| NotInClass {
        definitive,
        offending: format!("{offending:?}"),
        message: message.to_string(),
        blocks: blocks.to_vec(),
    };
    if blocks.is_empty() {
        return Err(NotInClass {
            definitive: true,
            offending: "0".into(),
            message: "the empty order".into(),
            blocks: Vec::new(),
        });
    }
    let mut terms = Vec::new();
    let mut i = 0;
    // an ordinal remainder left over after a Z term was split off
    let mut carry: Option<Ordinal> = None;
    while i < blocks.len() || carry.is_some() {
        let current = match carry.take() {
            Some(rest) => Block::Ord(rest),
            None => {
                i += 1;
                blocks[i - 1].clone()
            }
        };
        let next = blocks.get(i);
        match &current {
            Block::Ord(a) if a.is_limit() => terms.push(Term::L(a.clone())),
            Block::Ord(_) => return Err(fail(true, &current, "successor summand")),
            Block::RevOrd(b) => match next {
                Some(Block::ZlStar(t)) => {
                    let e = b.leading_exponent().expect("nonzero").clone();
                    if e <= *t {
                        return Err(fail(false, &current, "reversed ordinal too small to close the following block"));
                    }
                    // b = ω^e + rest, so b* = rest* + (ω^e)*
                    let rest = Ordinal::omega_pow(e.clone()).left_sub(b).expect("leading power is below b");
                    if !rest.is_zero() {
                        if !rest.is_limit() {
                            return Err(fail(true, &current, "reversed successor summand"));
                        }
                        terms.push(Term::Lstar(rest));
                    }
                    terms.push(Term::Zstar(t.clone(), e));
                    i += 1;
                }
                _ if b.is_limit() => terms.push(Term::Lstar(b.clone())),
                _ => return Err(fail(true, &current, "reversed successor summand")),
            },
            Block::Zl(t) => match next {
                Some(Block::Ord(b)) => {
                    let e = b.leading_exponent().expect("nonzero").clone();
                    if e <= *t {
                        let definitive = b.is_successor();
                        let msg = if definitive { "successor summand" } else { "ordinal too small to close the preceding block" };
                        return Err(fail(definitive, &blocks[i], msg));
                    }
                    let power = Ordinal::omega_pow(e.clone());
                    let rest = power.left_sub(b).expect("leading power is below b");
                    terms.push(Term::Z(t.clone(), e));
                    i += 1;
                    if !rest.is_zero() {
                        carry = Some(rest);
                    }
                }
                _ => return Err(fail(false, &current, "no ordinal closes this block")),
            },
            Block::ZlStar(_) => return Err(fail(false, &current, "no reversed ordinal opens this block")),
        }
    }
    Ok(LimitNormalSum(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(s: &str) -> Classification {
        classify_csb_limit(&Expr::parse(s).unwrap())
    }

    fn yes(s: &str) -> String {
        match classify(s) {
            Classification::Yes(n) => n.to_string(),
            other => panic!("{s}: {other:?}"),
        }
    }

    fn no(s: &str) -> NotInClass {
        match classify(s) {
            Classification::No(r) => r,
            other => panic!("{s}: {other:?}"),
        }
    }

    #[test]
    fn anchors() {
        assert_eq!(yes("w^2"), "L(w^2)");
        assert!(no("w+1").definitive);
        assert_eq!(yes("w^2*rev(w)+w^5"), "Z(2,5)");
        assert!(no("w*rev(w)+1").definitive);
    }

    #[test]
    fn spec_examples() {
        assert_eq!(yes("w+w"), "L(w*2)");
        assert_eq!(yes("rev(w)+rev(w^2)"), "Lstar(w^2+w)");
        // the ω in front has a least element, which ω^2·ω* + ω^5 lacks
        assert_eq!(yes("w+w^2*rev(w)+w^5"), "L(w) + Z(2,5)");
    }

    #[test]
    fn absorption_and_splitting() {
        assert_eq!(yes("w*rev(w)+w*3+w^2"), "Z(1,2)");
        assert_eq!(yes("w*rev(w)+w^2*2"), "Z(1,2) + L(w^2)");
        assert_eq!(yes("w*rev(w)+w^2+w^3"), "Z(1,3)");
        assert_eq!(yes("rev(w^2*rev(w)+w^5)"), "Zstar(2,5)");
        assert_eq!(yes("rev(w^2)+rev(w)*w"), "Zstar(1,2)");
        assert_eq!(yes("rev(w^2+w)+rev(w)*w"), "Lstar(w) + Zstar(1,2)");
    }

    #[test]
    fn finite_pieces_fold_into_reversed_blocks() {
        assert_eq!(yes("rev(w)+3"), "Lstar(w)");
        assert!(no("3+rev(w)").definitive);
        assert!(no("w*rev(w)").blocks.len() == 1);
        assert!(!no("w^2*rev(w)+w").definitive);
        assert!(no("0").definitive);
    }

    #[test]
    fn rewrite_trace_is_recorded() {
        let n = normalize_limit_sum(&Expr::parse("w+w+rev(w)+rev(w)").unwrap()).unwrap();
        let rules: Vec<Rule> = n.steps.iter().map(|s| s.rule).collect();
        assert_eq!(rules, [Rule::Merge, Rule::MergeRev]);
        assert_eq!(n.result.unwrap().to_string(), "L(w*2) + Lstar(w*2)");
    }

    #[test]
    fn normal_forms_re_normalize_to_themselves() {
        for s in ["w^2*rev(w)+w^5", "rev(w^2+w)+rev(w)*w", "w*rev(w)+w^2*2", "w^w+rev(w^(w+1))"] {
            let n = classify(s).normal_form().unwrap().clone();
            let again = classify(&n.to_expr_string());
            assert_eq!(again.normal_form(), Some(&n), "{s}");
        }
    }
}
