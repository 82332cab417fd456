use super::ast::Expr;
use crate::error::{Error, Result};
use crate::ring::{Field, Poly, PolyRing};

/// Evaluates a parsed expression in `ring`.
pub fn eval_expr<F: Field>(ring: &PolyRing<F>, e: &Expr) -> Result<Poly<F::Elem>> {
    Ok(match e {
        Expr::Num(n) => ring.constant(ring.field().from_bigint(n)),
        Expr::Var(v, span) => match ring.var_index(v) {
            Some(i) => ring.var(i),
            None => {
                return Err(Error::Parse(format!(
                    "line {}, col {}: unknown variable '{v}'",
                    span.line, span.col
                )))
            }
        },
        Expr::Neg(a) => ring.neg(&eval_expr(ring, a)?),
        Expr::Add(a, b) => ring.add(&eval_expr(ring, a)?, &eval_expr(ring, b)?),
        Expr::Sub(a, b) => ring.sub(&eval_expr(ring, a)?, &eval_expr(ring, b)?),
        Expr::Mul(a, b) => ring.mul(&eval_expr(ring, a)?, &eval_expr(ring, b)?),
        Expr::Pow(a, k) => ring.pow(&eval_expr(ring, a)?, *k),
        Expr::Div(a, b, span) => {
            let num = eval_expr(ring, a)?;
            let den = eval_expr(ring, b)?;
            let at = |msg: &str| Error::Parse(format!("line {}, col {}: {msg}", span.line, span.col));
            if den.is_zero() {
                return Err(at("division by zero"));
            }
            if !den.is_constant() {
                return Err(at("division is only allowed by a constant"));
            }
            ring.scale(&num, &ring.field().inv(den.lc()))
        }
    })
}
