//! Recursive-descent parser for session files, with name resolution.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ast::*;
use super::lexer::{tokenize, Span, Tok, Token};
use crate::error::{Error, Result};
use crate::ring::PrimeField;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum NameKind {
    Ring,
    Ideal,
    Map,
    Family,
}

impl NameKind {
    fn describe(self) -> &'static str {
        match self {
            NameKind::Ring => "a ring",
            NameKind::Ideal => "an ideal",
            NameKind::Map => "a map",
            NameKind::Family => "a family",
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    names: HashMap<String, (NameKind, String)>,
    ring_vars: HashMap<String, Vec<String>>,
    current_ring: Option<String>,
}

fn diag(span: Span, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {}, col {}: {msg}", span.line, span.col))
}

/// Parses and resolves a whole session.
pub fn parse_session(text: &str) -> Result<Session> {
    let mut p = Parser::new(text)?;
    let mut stmts = Vec::new();
    while p.peek() != &Tok::Eof {
        stmts.push(p.stmt()?);
    }
    Ok(Session { stmts })
}

/// Parses a single polynomial expression (no name resolution).
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.peek() != &Tok::Eof {
        return Err(p.expected("operator or end of input"));
    }
    Ok(e)
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            names: HashMap::new(),
            ring_vars: HashMap::new(),
            current_ring: None,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expected(&self, what: &str) -> Error {
        match self.peek() {
            Tok::Eof => diag(self.span(), format!("expected {what}")),
            t => diag(self.span(), format!("expected {what}, found {}", t.describe())),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Span> {
        if self.peek() == &tok {
            Ok(self.bump().span)
        } else {
            Err(self.expected(&format!("'{}'", tok.symbol())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let span = self.bump().span;
                Ok((s, span))
            }
            _ => Err(self.expected(what)),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Span> {
        match self.peek() {
            Tok::Ident(s) if s == kw => Ok(self.bump().span),
            _ => Err(self.expected(&format!("'{kw}'"))),
        }
    }

    fn int(&mut self, what: &str) -> Result<(BigInt, Span)> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let span = self.bump().span;
                Ok((s.parse().expect("digits"), span))
            }
            _ => Err(self.expected(what)),
        }
    }

    fn small_int(&mut self, what: &str) -> Result<usize> {
        let span = self.span();
        let (n, _) = self.int(what)?;
        usize::try_from(n).map_err(|_| diag(span, "integer too large"))
    }

    // ---------------------------------------------------------------
    // statements

    fn stmt(&mut self) -> Result<Stmt> {
        let span = self.span();
        let word = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.expected("declaration or command")),
        };
        match word.as_str() {
            "ring" => self.ring_decl().map(Stmt::Ring),
            "ideal" | "map" => self.poly_decl().map(Stmt::Poly),
            "family" => self.family_decl().map(Stmt::Family),
            w => match CmdKind::from_keyword(w) {
                Some(kind) => self.command(kind).map(Stmt::Cmd),
                None => Err(diag(
                    span,
                    format!("expected declaration or command, found '{w}'"),
                )),
            },
        }
    }

    fn declare(&mut self, name: &str, span: Span, kind: NameKind, ring: &str) -> Result<()> {
        if self.names.contains_key(name) {
            return Err(diag(span, format!("'{name}' is already declared")));
        }
        self.names
            .insert(name.to_string(), (kind, ring.to_string()));
        Ok(())
    }

    fn ring_decl(&mut self) -> Result<RingDecl> {
        let span = self.keyword("ring")?;
        let (name, name_span) = self.ident("ring name")?;
        self.expect(Tok::Eq)?;
        let field = self.field()?;
        self.expect(Tok::LBracket)?;
        let mut params = Vec::new();
        let mut blocks = vec![self.var_group()?];
        if self.eat(&Tok::Bar) {
            params = blocks.pop().unwrap();
            blocks.push(self.var_group()?);
        }
        while self.eat(&Tok::Semi) {
            blocks.push(self.var_group()?);
        }
        if !matches!(self.peek(), Tok::RBracket) {
            return Err(self.expected("',', ';', '|' or ']'"));
        }
        self.bump();
        let mut all: Vec<String> = params.clone();
        for b in &blocks {
            all.extend(b.iter().cloned());
        }
        for (i, v) in all.iter().enumerate() {
            if all[..i].contains(v) {
                return Err(diag(name_span, format!("variable '{v}' declared twice")));
            }
        }
        self.declare(&name, name_span, NameKind::Ring, &name)?;
        self.ring_vars.insert(name.clone(), all);
        self.current_ring = Some(name.clone());
        let mut modulus = Vec::new();
        if self.eat(&Tok::Slash) {
            modulus = self.poly_list()?;
            self.resolve_vars(&name, &modulus)?;
        }
        self.expect(Tok::Semi)?;
        Ok(RingDecl {
            name,
            field,
            params,
            blocks,
            modulus,
            span,
        })
    }

    fn field(&mut self) -> Result<FieldSpec> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "QQ" => {
                self.bump();
                Ok(FieldSpec::Rationals)
            }
            Tok::Ident(s) if s == "GF" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let span = self.span();
                let (p, _) = self.int("prime")?;
                let p = u64::try_from(p).map_err(|_| diag(span, "prime too large"))?;
                PrimeField::new(p).map_err(|e| diag(span, e))?;
                self.expect(Tok::RParen)?;
                Ok(FieldSpec::Prime(p))
            }
            _ => Err(self.expected("'QQ' or 'GF'")),
        }
    }

    fn var_group(&mut self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        loop {
            let (first, span) = self.ident("variable name")?;
            if self.eat(&Tok::DotDot) {
                let (last, _) = self.ident("variable name")?;
                out.extend(expand_range(&first, &last).ok_or_else(|| {
                    diag(span, format!("invalid variable range {first}..{last}"))
                })?);
            } else {
                out.push(first);
            }
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn current_ring(&self, span: Span) -> Result<String> {
        self.current_ring
            .clone()
            .ok_or_else(|| diag(span, "no ring declared"))
    }

    fn poly_decl(&mut self) -> Result<PolyDecl> {
        let span = self.span();
        let (word, _) = self.ident("'ideal' or 'map'")?;
        let kind = if word == "ideal" {
            PayloadKind::Ideal
        } else {
            PayloadKind::Map
        };
        let ring = self.current_ring(span)?;
        let (name, name_span) = self.ident("name")?;
        self.expect(Tok::Eq)?;
        let polys = self.poly_list()?;
        self.resolve_vars(&ring, &polys)?;
        self.expect(Tok::Semi)?;
        let nk = match kind {
            PayloadKind::Ideal => NameKind::Ideal,
            PayloadKind::Map => NameKind::Map,
        };
        self.declare(&name, name_span, nk, &ring)?;
        Ok(PolyDecl {
            kind,
            name,
            ring,
            polys,
            span,
        })
    }

    fn family_decl(&mut self) -> Result<FamilyDecl> {
        let span = self.keyword("family")?;
        let ring = self.current_ring(span)?;
        let (name, name_span) = self.ident("family name")?;
        self.expect(Tok::Eq)?;
        let kind = match self.peek() {
            Tok::Ident(s) if s == "ideal" => PayloadKind::Ideal,
            Tok::Ident(s) if s == "map" => PayloadKind::Map,
            _ => return Err(self.expected("'ideal' or 'map'")),
        };
        self.bump();
        let polys = self.poly_list()?;
        self.resolve_vars(&ring, &polys)?;
        let mut points = Vec::new();
        if matches!(self.peek(), Tok::Ident(s) if s == "at") {
            self.bump();
            loop {
                points.push(self.point()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        let mut trials = None;
        if matches!(self.peek(), Tok::Ident(s) if s == "trials") {
            self.bump();
            let t_span = self.span();
            let t = self.small_int("trial count")?;
            if t < 2 {
                return Err(diag(t_span, "at least 2 trials are needed"));
            }
            trials = Some(t);
        }
        if self.peek() != &Tok::Semi {
            return Err(self.expected("'at', 'trials' or ';'"));
        }
        self.bump();
        self.declare(&name, name_span, NameKind::Family, &ring)?;
        Ok(FamilyDecl {
            name,
            ring,
            kind,
            polys,
            points,
            trials,
            span,
        })
    }

    fn point(&mut self) -> Result<Vec<Rational>> {
        self.expect(Tok::LParen)?;
        let mut vals = Vec::new();
        loop {
            let neg = self.eat(&Tok::Minus);
            let (mut num, _) = self.int("number")?;
            if neg {
                num = -num;
            }
            let mut den = BigInt::one();
            if self.eat(&Tok::Slash) {
                let span = self.span();
                den = self.int("denominator")?.0;
                if den.is_zero() {
                    return Err(diag(span, "division by zero"));
                }
            }
            vals.push(Rational { num, den });
            if self.eat(&Tok::Comma) {
                continue;
            }
            if self.eat(&Tok::RParen) {
                return Ok(vals);
            }
            return Err(self.expected("',' or ')'"));
        }
    }

    fn lookup(&self, name: &str, span: Span, allowed: &[NameKind]) -> Result<String> {
        match self.names.get(name) {
            None => Err(diag(span, format!("unknown name '{name}'"))),
            Some((kind, ring)) if allowed.contains(kind) => Ok(ring.clone()),
            Some((kind, _)) => Err(diag(
                span,
                format!(
                    "'{name}' is {}, expected {}",
                    kind.describe(),
                    allowed
                        .iter()
                        .map(|k| k.describe())
                        .collect::<Vec<_>>()
                        .join(" or ")
                ),
            )),
        }
    }

    fn command(&mut self, kind: CmdKind) -> Result<Command> {
        let span = self.bump().span;
        let mut args = Vec::new();
        let mut scan = None;
        let mut poly = None;
        let (name, name_span) = self.ident("name")?;
        use NameKind::*;
        match kind {
            CmdKind::Segre
            | CmdKind::Polar
            | CmdKind::Nu
            | CmdKind::Table
            | CmdKind::Order
            | CmdKind::Multideg => {
                self.lookup(&name, name_span, &[Ideal])?;
                args.push(name);
            }
            CmdKind::Projdeg | CmdKind::Degim | CmdKind::Mapdeg | CmdKind::Jmult => {
                self.lookup(&name, name_span, &[Map, Ideal])?;
                args.push(name);
            }
            CmdKind::Intdep => {
                let r1 = self.lookup(&name, name_span, &[Ideal])?;
                let (other, other_span) = self.ident("second ideal name")?;
                let r2 = self.lookup(&other, other_span, &[Ideal])?;
                if r1 != r2 {
                    return Err(diag(other_span, format!("'{other}' lives in another ring")));
                }
                args.push(name);
                args.push(other);
            }
            CmdKind::Psid => {
                let ring = self.lookup(&name, name_span, &[Ideal])?;
                self.expect(Tok::LParen)?;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                self.resolve_vars(&ring, std::slice::from_ref(&e))?;
                args.push(name);
                poly = Some(e);
            }
            CmdKind::Scan => {
                self.lookup(&name, name_span, &[Family])?;
                args.push(name);
                if self.peek() != &Tok::Semi {
                    scan = Some(self.scan_kind()?);
                }
            }
            CmdKind::Report => {
                self.lookup(&name, name_span, &[Family])?;
                args.push(name);
            }
        }
        if self.peek() != &Tok::Semi {
            return Err(self.expected("';'"));
        }
        self.bump();
        Ok(Command {
            kind,
            args,
            scan,
            poly,
            span,
        })
    }

    fn scan_kind(&mut self) -> Result<ScanKind> {
        let span = self.span();
        let (mut word, _) = self.ident("scan kind")?;
        while self.eat(&Tok::Minus) {
            let (w, _) = self.ident("scan kind")?;
            word.push('-');
            word.push_str(&w);
        }
        let index = |p: &mut Parser| -> Result<Vec<usize>> {
            p.expect(Tok::LParen)?;
            let mut n = vec![p.small_int("index")?];
            while p.eat(&Tok::Comma) {
                n.push(p.small_int("index")?);
            }
            p.expect(Tok::RParen)?;
            Ok(n)
        };
        Ok(match word.as_str() {
            "mixed-mult" => ScanKind::MixedMult(index(self)?),
            "multidegree" => ScanKind::Multidegree(index(self)?),
            "deg-image" => ScanKind::DegImage,
            "proj-degrees" => ScanKind::ProjDegrees,
            "map-degree" => ScanKind::MapDegree,
            "j-mult" => ScanKind::JMult,
            "segre-seq" => ScanKind::SegreSeq,
            "polar-seq" => ScanKind::PolarSeq,
            "nu-seq" => ScanKind::NuSeq,
            _ => {
                return Err(diag(
                    span,
                    format!(
                        "expected scan kind ({}), found '{word}'",
                        ScanKind::NAMES.join(", ")
                    ),
                ))
            }
        })
    }

    // ---------------------------------------------------------------
    // polynomials

    fn poly_list(&mut self) -> Result<Vec<Expr>> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if self.eat(&Tok::Comma) {
                if self.eat(&Tok::RParen) {
                    return Ok(out);
                }
                if !starts_expr(self.peek()) {
                    return Err(self.expected("expression or ')'"));
                }
                continue;
            }
            if self.eat(&Tok::RParen) {
                return Ok(out);
            }
            return Err(self.expected("operator, ',' or ')'"));
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == &Tok::Slash {
                let span = self.bump().span;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), span);
            } else {
                if starts_expr(self.peek()) && !matches!(self.peek(), Tok::Minus | Tok::Plus) {
                    return Err(self.expected("operator ('*' is required between factors)"));
                }
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let span = self.span();
            let (e, _) = self.int("exponent")?;
            let e = u32::try_from(e)
                .ok()
                .filter(|&e| e < crate::ring::MAX_EXPONENT)
                .ok_or_else(|| diag(span, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                Ok(Expr::Num(s.parse().expect("digits")))
            }
            Tok::Ident(s) => {
                let span = self.bump().span;
                Ok(Expr::Var(s, span))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.expected("expression")),
        }
    }

    fn resolve_vars(&self, ring: &str, exprs: &[Expr]) -> Result<()> {
        let vars = &self.ring_vars[ring];
        for e in exprs {
            check_vars(e, vars, ring)?;
        }
        Ok(())
    }
}

fn starts_expr(t: &Tok) -> bool {
    matches!(t, Tok::Int(_) | Tok::Ident(_) | Tok::LParen | Tok::Minus | Tok::Plus)
}

fn check_vars(e: &Expr, vars: &[String], ring: &str) -> Result<()> {
    match e {
        Expr::Num(_) => Ok(()),
        Expr::Var(v, span) => {
            if vars.contains(v) {
                Ok(())
            } else {
                Err(diag(*span, format!("unknown variable '{v}' in ring {ring}")))
            }
        }
        Expr::Neg(a) | Expr::Pow(a, _) => check_vars(a, vars, ring),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            check_vars(a, vars, ring)?;
            check_vars(b, vars, ring)
        }
    }
}

/// `x0..x3` → `x0, x1, x2, x3`.
fn expand_range(first: &str, last: &str) -> Option<Vec<String>> {
    let split = |s: &str| {
        let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (p, n) = s.split_at(s.len() - digits);
        Some((p.to_string(), n.parse::<usize>().ok()?))
    };
    let (p1, a) = split(first)?;
    let (p2, b) = split(last)?;
    (p1 == p2 && a <= b).then(|| (a..=b).map(|k| format!("{p1}{k}")).collect())
}
