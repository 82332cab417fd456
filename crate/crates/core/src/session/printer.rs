//! Canonical text form of a session; parsing the output gives the same
//! session back.

use std::fmt::Write;

use num_traits::One;

use super::ast::*;

pub fn print_session(s: &Session) -> String {
    let mut out = String::new();
    for stmt in &s.stmts {
        print_stmt(&mut out, stmt);
        out.push('\n');
    }
    out
}

/// Appends the canonical text of one statement.
pub fn print_stmt(out: &mut String, stmt: &Stmt) {
    match stmt {
        Stmt::Ring(r) => {
            let field = match r.field {
                FieldSpec::Rationals => "QQ".to_string(),
                FieldSpec::Prime(p) => format!("GF({p})"),
            };
            let _ = write!(out, "ring {} = {field}[", r.name);
            if !r.params.is_empty() {
                let _ = write!(out, "{} | ", r.params.join(", "));
            }
            let blocks: Vec<String> = r.blocks.iter().map(|b| b.join(", ")).collect();
            out.push_str(&blocks.join("; "));
            out.push(']');
            if !r.modulus.is_empty() {
                out.push_str(" / ");
                print_list(out, &r.modulus);
            }
            out.push(';');
        }
        Stmt::Poly(p) => {
            let _ = write!(out, "{} {} = ", p.kind.keyword(), p.name);
            print_list(out, &p.polys);
            out.push(';');
        }
        Stmt::Family(f) => {
            let _ = write!(out, "family {} = {} ", f.name, f.kind.keyword());
            print_list(out, &f.polys);
            if !f.points.is_empty() {
                let pts: Vec<String> = f
                    .points
                    .iter()
                    .map(|p| {
                        let vals: Vec<String> = p.iter().map(print_rational).collect();
                        format!("({})", vals.join(", "))
                    })
                    .collect();
                let _ = write!(out, " at {}", pts.join(", "));
            }
            if let Some(t) = f.trials {
                let _ = write!(out, " trials {t}");
            }
            out.push(';');
        }
        Stmt::Cmd(c) => {
            out.push_str(c.kind.keyword());
            for a in &c.args {
                out.push(' ');
                out.push_str(a);
            }
            if let Some(k) = &c.scan {
                out.push(' ');
                out.push_str(&k.name());
            }
            if let Some(e) = &c.poly {
                out.push_str(" (");
                out.push_str(&print_expr(e));
                out.push(')');
            }
            out.push(';');
        }
    }
}

fn print_rational(r: &Rational) -> String {
    if r.den.is_one() {
        r.num.to_string()
    } else {
        format!("{}/{}", r.num, r.den)
    }
}

fn print_list(out: &mut String, polys: &[Expr]) {
    let items: Vec<String> = polys.iter().map(print_expr).collect();
    let _ = write!(out, "({})", items.join(", "));
}

/// Binding strength: sums 1, products 2, unary minus 3, powers 4, atoms 5.
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(_) | Expr::Var(..) => 5,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    let s = print_expr(e);
    if prec(e) < min {
        format!("({s})")
    } else {
        s
    }
}

pub fn print_expr(e: &Expr) -> String {
    match e {
        Expr::Num(n) => n.to_string(),
        Expr::Var(v, _) => v.clone(),
        Expr::Neg(a) => format!("-{}", wrap(a, 3)),
        Expr::Add(a, b) => format!("{} + {}", wrap(a, 1), wrap(b, 2)),
        Expr::Sub(a, b) => format!("{} - {}", wrap(a, 1), wrap(b, 2)),
        Expr::Mul(a, b) => format!("{}*{}", wrap(a, 2), wrap(b, 3)),
        Expr::Div(a, b, _) => format!("{}/{}", wrap(a, 2), wrap(b, 3)),
        Expr::Pow(a, k) => format!("{}^{k}", wrap(a, 5)),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_session;
    use super::*;

    #[test]
    fn round_trip() {
        let text = "ring R = QQ[a | x0..x2; y0, y1] / (x0*y1 - x1*y0,);\n\
                    ideal I = (-x0^2 + 3/2*x1, (x0 - x1)*(x0 + x1), -(x2)^3, x0 - (x1 - x2));\n\
                    map F = (x0^2, x0*x1, x1^2);\n\
                    family G = map (x0^2 + a*x1^2, x1*x2, x2^2) at (0), (-2/3) trials 3;\n\
                    table I; intdep I I; psid I (x0 - 1); scan G proj-degrees; scan G mixed-mult(1, 0); report G; mapdeg F;";
        let s = parse_session(text).unwrap();
        let printed = print_session(&s);
        let again = parse_session(&printed).unwrap();
        assert_eq!(s, again);
        assert_eq!(printed, print_session(&again));
    }
}
