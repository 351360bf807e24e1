//! A small language for closed-form sequence families in the variables
//! `i` (family index) and `n` (position, starting at 1).
//!
//! ```text
//! file   := defn (";" defn)*
//! defn   := "case" guard ":" expr | expr
//! guard  := "i" ("odd"|"even") | "n" ("<"|">=") int | "otherwise"
//! expr   := term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*
//! factor := ("-")? atom ("^" int)?
//! atom   := int | "n" | "i" | "(" expr ")"
//! ```
//!
//! `#` starts a comment running to the end of the line. A bare `expr` inside
//! a multi-case file acts as `case otherwise`.

mod eval;
mod parser;
mod print;

pub use eval::{eval, eval_expr, to_listing, to_set_spec};
pub use parser::{parse, parse_file};

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    N,
    I,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigUint),
    Var(Var),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Guard {
    IOdd,
    IEven,
    NLess(u64),
    NAtLeast(u64),
    Otherwise,
}

impl Guard {
    pub fn matches(self, i: i64, n: u64) -> bool {
        match self {
            Guard::IOdd => i.rem_euclid(2) == 1,
            Guard::IEven => i.rem_euclid(2) == 0,
            Guard::NLess(k) => n < k,
            Guard::NAtLeast(k) => n >= k,
            Guard::Otherwise => true,
        }
    }
}

/// A parsed family definition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SequenceExpr {
    Plain(Expr),
    /// Cases are tried in order; the first matching guard wins.
    Piecewise(Vec<(Guard, Expr)>),
}

impl Expr {
    pub fn int(v: u64) -> Expr {
        Expr::Int(BigUint::from(v))
    }

    pub fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Bin(op, Box::new(l), Box::new(r))
    }

    pub fn mentions(&self, var: Var) -> bool {
        match self {
            Expr::Int(_) => false,
            Expr::Var(v) => *v == var,
            Expr::Neg(e) | Expr::Pow(e, _) => e.mentions(var),
            Expr::Bin(_, l, r) => l.mentions(var) || r.mentions(var),
        }
    }
}

impl SequenceExpr {
    /// Whether the value can depend on `n`.
    pub fn depends_on_n(&self) -> bool {
        match self {
            SequenceExpr::Plain(e) => e.mentions(Var::N),
            SequenceExpr::Piecewise(cases) => cases.iter().any(|(g, e)| {
                matches!(g, Guard::NLess(_) | Guard::NAtLeast(_)) || e.mentions(Var::N)
            }),
        }
    }

    /// The expression selected for `(i, n)`, if any guard matches.
    pub fn select(&self, i: i64, n: u64) -> Option<&Expr> {
        match self {
            SequenceExpr::Plain(e) => Some(e),
            SequenceExpr::Piecewise(cases) => {
                cases.iter().find(|(g, _)| g.matches(i, n)).map(|(_, e)| e)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: found {found}, expected one of {}", expected.join(", "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("case list does not cover every (i, n): no guard matches i={i}, n={n}")]
    NotTotal { i: i64, n: u64 },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { offset, .. } => Some(*offset),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero at i={i}, n={n}")]
    DivisionByZero { i: i64, n: u64 },
    #[error("position n must be at least 1")]
    ZeroPosition,
    #[error("no case matches i={i}, n={n}")]
    NoCase { i: i64, n: u64 },
}

#[cfg(test)]
mod tests;
