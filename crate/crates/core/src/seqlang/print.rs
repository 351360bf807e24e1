use std::fmt;

use super::{BinOp, Expr, Guard, SequenceExpr, Var};

// Binding strength; higher binds tighter.
const ADDITIVE: u8 = 1;
const MULTIPLICATIVE: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn strength(e: &Expr) -> u8 {
    match e {
        Expr::Int(_) | Expr::Var(_) => ATOM,
        Expr::Pow(..) => POWER,
        Expr::Neg(_) => UNARY,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => MULTIPLICATIVE,
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => ADDITIVE,
    }
}

fn is_atom(e: &Expr) -> bool {
    strength(e) == ATOM
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var(Var::N) => f.write_str("n"),
            Expr::Var(Var::I) => f.write_str("i"),
            // the grammar only admits an atom under "^"
            Expr::Pow(base, k) => {
                write_wrapped(f, base, !is_atom(base))?;
                write!(f, "^{k}")
            }
            // and only an atom or atom^k under unary minus
            Expr::Neg(inner) => {
                f.write_str("-")?;
                let plain = match inner.as_ref() {
                    Expr::Pow(base, _) => is_atom(base),
                    other => is_atom(other),
                };
                write_wrapped(f, inner, !plain)
            }
            Expr::Bin(op, l, r) => {
                let (level, sym) = match op {
                    BinOp::Add => (ADDITIVE, "+"),
                    BinOp::Sub => (ADDITIVE, "-"),
                    BinOp::Mul => (MULTIPLICATIVE, "*"),
                    BinOp::Div => (MULTIPLICATIVE, "/"),
                };
                write_wrapped(f, l, strength(l) < level)?;
                write!(f, " {sym} ")?;
                write_wrapped(f, r, strength(r) <= level)
            }
        }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::IOdd => f.write_str("i odd"),
            Guard::IEven => f.write_str("i even"),
            Guard::NLess(k) => write!(f, "n < {k}"),
            Guard::NAtLeast(k) => write!(f, "n >= {k}"),
            Guard::Otherwise => f.write_str("otherwise"),
        }
    }
}

impl fmt::Display for SequenceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceExpr::Plain(e) => write!(f, "{e}"),
            SequenceExpr::Piecewise(cases) => {
                for (k, (g, e)) in cases.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ; ")?;
                    }
                    write!(f, "case {g}: {e}")?;
                }
                Ok(())
            }
        }
    }
}
