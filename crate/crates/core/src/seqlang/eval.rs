use crate::rational::Rational;
use crate::sequences::{Listing, ListingError, SetSpec};

use super::{BinOp, EvalError, Expr, SequenceExpr, Var};

pub fn eval_expr(expr: &Expr, i: i64, n: u64) -> Result<Rational, EvalError> {
    Ok(match expr {
        Expr::Int(v) => Rational::from_integer(v.clone()),
        Expr::Var(Var::I) => Rational::from(i),
        Expr::Var(Var::N) => Rational::from(n),
        Expr::Neg(e) => -eval_expr(e, i, n)?,
        Expr::Pow(e, k) => eval_expr(e, i, n)?.pow(*k),
        Expr::Bin(op, l, r) => {
            let a = eval_expr(l, i, n)?;
            let b = eval_expr(r, i, n)?;
            match op {
                BinOp::Add => &a + &b,
                BinOp::Sub => &a - &b,
                BinOp::Mul => &a * &b,
                BinOp::Div => a
                    .checked_div(&b)
                    .map_err(|_| EvalError::DivisionByZero { i, n })?,
            }
        }
    })
}

/// Value of the definition at family index `i` and position `n ≥ 1`.
pub fn eval(def: &SequenceExpr, i: i64, n: u64) -> Result<Rational, EvalError> {
    if n == 0 {
        return Err(EvalError::ZeroPosition);
    }
    let expr = def.select(i, n).ok_or(EvalError::NoCase { i, n })?;
    eval_expr(expr, i, n)
}

/// Listing whose index `k` is the value at `n = k + 1`, repeats skipped.
pub fn to_listing(def: &SequenceExpr, i: i64) -> Listing {
    if !def.depends_on_n() {
        // a constant yields one value; do not scan for fresh ones
        return match eval(def, i, 1) {
            Ok(v) => Listing::from_values(vec![v]),
            Err(e) => Listing::from_index_fn(move |_| Err(ListingError::Eval(e.clone()))),
        };
    }
    let def = def.clone();
    Listing::from_index_fn(move |k| Ok(Some(eval(&def, i, k + 1)?)))
}

pub fn to_set_spec(def: &SequenceExpr, i: i64, label: impl Into<String>) -> SetSpec {
    let def = def.clone();
    SetSpec::new(label, move || to_listing(&def, i))
}
