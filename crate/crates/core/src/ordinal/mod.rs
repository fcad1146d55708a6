//! Cantor normal form ordinals, order-type expressions, and the
//! classification of CSB linear orders of a limit type.

mod blocks;
mod cnf;
mod expr;
mod normal;
pub mod presentation;
mod theta;
mod union;


pub use blocks::{evaluate, ordinal_value, reverse_blocks, Block, EvalError};
pub use cnf::{Ordinal, OrdinalError, HEIGHT_GUARD};
pub use expr::{push_reversals, reverse, Expr, SyntaxError};
pub use normal::{
    apply_rule, classify_csb_limit, normalize_blocks, normalize_limit_sum, rewrite_blocks, Classification,
    LimitNormalSum, NotInClass, Normalization, RewriteStep, Rule, Term,
};
pub use theta::{theta_invariants, Unsupported};
pub use union::{decide_union_reversibility, OtpError, OtpFamily, SplitWitness, UnionVerdict};
