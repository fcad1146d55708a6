use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::family::StructureFamily;
use crate::ordinal::{theta_invariants, Expr, OtpFamily, Ordinal};
use crate::structure::BinaryStructure;
use crate::Multiplicity;

/// A value of an invariant. Naturals and ordinals are compared as usual;
/// tuples by the strict product order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvValue {
    Nat(u64),
    Ord(Ordinal),
    Tuple(Vec<InvValue>),
}

impl InvValue {
    /// The strict relation of the target order.
    pub fn below(&self, other: &InvValue) -> bool {
        match (self, other) {
            (InvValue::Nat(a), InvValue::Nat(b)) => a < b,
            (InvValue::Ord(a), InvValue::Ord(b)) => a < b,
            (InvValue::Tuple(a), InvValue::Tuple(b)) if a.len() == b.len() => {
                a.iter().zip(b).all(|(x, y)| x.at_most(y)) && a.iter().zip(b).any(|(x, y)| x.below(y))
            }
            _ => false,
        }
    }

    pub fn at_most(&self, other: &InvValue) -> bool {
        self == other || self.below(other)
    }
}

impl fmt::Display for InvValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvValue::Nat(n) => write!(f, "{n}"),
            InvValue::Ord(a) => write!(f, "{a}"),
            InvValue::Tuple(items) => {
                let parts: Vec<String> = items.iter().map(InvValue::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

type Evaluator<T> = Arc<dyn Fn(&T) -> Option<InvValue> + Send + Sync>;

/// A named map into a well-founded order, meant to be monotone along
/// monomorphisms. `None` marks an argument outside its domain.
pub struct Invariant<T> {
    name: String,
    eval: Evaluator<T>,
}

impl<T> Clone for Invariant<T> {
    fn clone(&self) -> Self {
        Invariant {
            name: self.name.clone(),
            eval: Arc::clone(&self.eval),
        }
    }
}

impl<T> fmt::Debug for Invariant<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Invariant({})", self.name)
    }
}

impl<T> Invariant<T> {
    pub fn new(name: impl Into<String>, eval: impl Fn(&T) -> Option<InvValue> + Send + Sync + 'static) -> Self {
        Invariant {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: &T) -> Option<InvValue> {
        (self.eval)(x)
    }
}

impl Invariant<BinaryStructure> {
    pub fn size() -> Self {
        Invariant::new("size", |s: &BinaryStructure| Some(InvValue::Nat(s.len() as u64)))
    }

    /// Vertices on a longest simple directed path, loops ignored.
    pub fn longest_chain() -> Self {
        Invariant::new("longest-chain", |s: &BinaryStructure| longest_chain(s).map(|n| InvValue::Nat(n as u64)))
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "size" => Some(Self::size()),
            "longest-chain" => Some(Self::longest_chain()),
            _ => None,
        }
    }
}

impl Invariant<Expr> {
    pub fn theta0() -> Self {
        Invariant::new("theta0", |e: &Expr| theta_invariants(e).ok().map(|(a, _)| InvValue::Ord(a)))
    }

    pub fn theta1() -> Self {
        Invariant::new("theta1", |e: &Expr| theta_invariants(e).ok().map(|(_, b)| InvValue::Ord(b)))
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "theta0" => Some(Self::theta0()),
            "theta1" => Some(Self::theta1()),
            "theta" => Some(diagonal_invariant(vec![Self::theta0(), Self::theta1()]).expect("two components")),
            _ => None,
        }
    }
}

/// Longest simple directed path, counted in vertices. `None` for graphs
/// with a cycle of length ≥ 2 on more than 20 vertices.
pub fn longest_chain(s: &BinaryStructure) -> Option<usize> {
    let n = s.len();
    if n == 0 {
        return Some(0);
    }
    let edges: Vec<(usize, usize)> = s.edges().filter(|(a, b)| a != b).collect();
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in &edges {
        succ[a].push(b);
    }
    // acyclic: longest path by memoised depth
    let mut depth: Vec<Option<usize>> = vec![None; n];
    let mut on_stack = vec![false; n];
    fn visit(v: usize, succ: &[Vec<usize>], depth: &mut [Option<usize>], on_stack: &mut [bool]) -> Option<usize> {
        if let Some(d) = depth[v] {
            return Some(d);
        }
        if on_stack[v] {
            return None;
        }
        on_stack[v] = true;
        let mut best = 1;
        for &w in &succ[v] {
            best = best.max(1 + visit(w, succ, depth, on_stack)?);
        }
        on_stack[v] = false;
        depth[v] = Some(best);
        Some(best)
    }
    let acyclic: Option<usize> = (0..n).map(|v| visit(v, &succ, &mut depth, &mut on_stack)).try_fold(0, |m, d| d.map(|d| m.max(d)));
    if acyclic.is_some() {
        return acyclic;
    }
    if n > 20 {
        return None;
    }
    // reach[mask] has bit v when some simple path visits exactly mask and ends at v
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        reach[1 << v] |= 1 << v;
    }
    let mut best = 1;
    for mask in 1usize..1 << n {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize);
        for v in (0..n).filter(|&v| ends >> v & 1 == 1) {
            for &w in &succ[v] {
                if mask >> w & 1 == 0 {
                    reach[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }
    Some(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("a diagonal needs at least one component")]
pub struct EmptyDiagonal;

/// The tuple of the component values, ordered by the strict product.
pub fn diagonal_invariant<T: 'static>(thetas: Vec<Invariant<T>>) -> Result<Invariant<T>, EmptyDiagonal> {
    if thetas.is_empty() {
        return Err(EmptyDiagonal);
    }
    let names: Vec<&str> = thetas.iter().map(Invariant::name).collect();
    let name = format!("diag({})", names.join(","));
    Ok(Invariant::new(name, move |x: &T| {
        thetas.iter().map(|t| t.eval(x)).collect::<Option<Vec<_>>>().map(InvValue::Tuple)
    }))
}

/// The members sharing one invariant value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub value: InvValue,
    pub members: Vec<usize>,
    pub total: Multiplicity,
}

impl Fiber {
    pub fn is_infinite(&self) -> bool {
        self.total.is_infinite()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invariant `{invariant}` is undefined on member {member}")]
pub struct FiberError {
    pub invariant: String,
    pub member: usize,
}

fn fibers_of<T>(items: &[(T, Multiplicity)], theta: &Invariant<T>) -> Result<Vec<Fiber>, FiberError> {
    let mut fibers: Vec<Fiber> = Vec::new();
    for (i, (x, m)) in items.iter().enumerate() {
        let value = theta.eval(x).ok_or_else(|| FiberError {
            invariant: theta.name.clone(),
            member: i,
        })?;
        match fibers.iter_mut().find(|f| f.value == value) {
            Some(f) => {
                f.members.push(i);
                f.total = f.total + *m;
            }
            None => fibers.push(Fiber {
                value,
                members: vec![i],
                total: *m,
            }),
        }
    }
    fibers.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    Ok(fibers)
}

/// Template indices grouped by invariant value.
pub fn invariant_fibers(fam: &StructureFamily, theta: &Invariant<BinaryStructure>) -> Result<Vec<Fiber>, FiberError> {
    let items: Vec<(BinaryStructure, Multiplicity)> =
        fam.templates().iter().map(|t| (t.structure.clone(), t.multiplicity)).collect();
    fibers_of(&items, theta)
}

/// Member indices of an order-type family grouped by invariant value.
pub fn otp_fibers(fam: &OtpFamily, theta: &Invariant<Expr>) -> Result<Vec<Fiber>, FiberError> {
    let items: Vec<(Expr, Multiplicity)> = fam
        .members()
        .iter()
        .map(|(sum, m)| (Expr::parse(&sum.to_expr_string()).expect("normal forms print as expressions"), *m))
        .collect();
    fibers_of(&items, theta)
}

/// A reversibility certificate: every fiber of a monotone invariant has
/// finite total multiplicity, so no fiber carries an ω*-sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub invariant: String,
    pub fibers: Vec<Fiber>,
}

impl Certificate {
    pub fn to_text(&self, names: &[String]) -> String {
        let mut out = format!("certificate finite-invariant-fibers invariant {}\n", self.invariant);
        for f in &self.fibers {
            let members: Vec<&str> = f.members.iter().map(|&i| names[i].as_str()).collect();
            let _ = writeln!(out, "fiber {} total {} members {}", f.value, f.total, members.join(" "));
        }
        out
    }
}

/// Issues a certificate when every fiber is finite. `None` is not a
/// refutation.
pub fn certify_by_invariant(fibers: &[Fiber], invariant: &str) -> Option<Certificate> {
    fibers.iter().all(|f| !f.is_infinite()).then(|| Certificate {
        invariant: invariant.to_string(),
        fibers: fibers.to_vec(),
    })
}
