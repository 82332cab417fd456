use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use super::field::Field;
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::groebner::{self, GbStore};

/// What a variable is for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VarRole {
    /// Coefficient parameter of a family (degree zero).
    Parameter,
    /// Coordinate in the given grading block.
    Coordinate(usize),
    /// Helper variable for elimination, Rees and saturation work.
    Auxiliary,
}

pub(crate) type GbMemo<E> = RwLock<HashMap<Vec<Poly<E>>, Arc<Vec<Poly<E>>>>>;

/// A polynomial ring over a field, optionally modulo a fixed ideal.
///
/// The ring owns the monomial order: every [`Poly`] it returns is sorted
/// descending in that order. When a modulus is present it is kept as a
/// reduced Gröbner basis and ring elements are normal forms modulo it.
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
    roles: Vec<VarRole>,
    grading: Vec<Vec<i64>>,
    order: MonomialOrder,
    modulus: Vec<Poly<F::Elem>>,
    pub(crate) memo: GbMemo<F::Elem>,
    pub(crate) store: Option<Arc<dyn GbStore>>,
}

impl<F: Field> fmt::Debug for PolyRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field.kind(), self.vars.join(","))?;
        if !self.modulus.is_empty() {
            write!(f, "/({} relations)", self.modulus.len())?;
        }
        Ok(())
    }
}

/// Incremental construction of a [`PolyRing`].
pub struct RingBuilder<F: Field> {
    field: F,
    params: Vec<String>,
    blocks: Vec<Vec<String>>,
    aux: Vec<String>,
    order: MonomialOrder,
    grading: Option<Vec<Vec<i64>>>,
    store: Option<Arc<dyn GbStore>>,
}

impl<F: Field> RingBuilder<F> {
    pub fn parameters<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.params = names.iter().map(|s| s.as_ref().to_string()).collect();
        self
    }

    pub fn block<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.blocks
            .push(names.iter().map(|s| s.as_ref().to_string()).collect());
        self
    }

    pub fn auxiliary<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.aux = names.iter().map(|s| s.as_ref().to_string()).collect();
        self
    }

    pub fn order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    /// Overrides the default grading (block `i` in degree `e_i`).
    pub fn grading(mut self, grading: Vec<Vec<i64>>) -> Self {
        self.grading = Some(grading);
        self
    }

    pub fn store(mut self, store: Option<Arc<dyn GbStore>>) -> Self {
        self.store = store;
        self
    }

    pub fn build(self) -> Arc<PolyRing<F>> {
        let p = self.blocks.len().max(1);
        let mut vars = Vec::new();
        let mut roles = Vec::new();
        let mut grading = Vec::new();
        for name in &self.params {
            vars.push(name.clone());
            roles.push(VarRole::Parameter);
            grading.push(vec![0; p]);
        }
        for (b, block) in self.blocks.iter().enumerate() {
            for name in block {
                vars.push(name.clone());
                roles.push(VarRole::Coordinate(b));
                let mut d = vec![0; p];
                d[b] = 1;
                grading.push(d);
            }
        }
        for name in &self.aux {
            vars.push(name.clone());
            roles.push(VarRole::Auxiliary);
            grading.push(vec![0; p]);
        }
        if let Some(g) = self.grading {
            assert_eq!(g.len(), vars.len(), "grading must cover every variable");
            grading = g;
        }
        Arc::new(PolyRing {
            field: self.field,
            vars,
            roles,
            grading,
            order: self.order,
            modulus: Vec::new(),
            memo: RwLock::new(HashMap::new()),
            store: self.store,
        })
    }
}

impl<F: Field> PolyRing<F> {
    /// Standard graded polynomial ring in the given variables, grevlex order.
    pub fn new<S: AsRef<str>>(field: F, names: &[S]) -> Arc<Self> {
        Self::builder(field).block(names).build()
    }

    pub fn builder(field: F) -> RingBuilder<F> {
        RingBuilder {
            field,
            params: Vec::new(),
            blocks: Vec::new(),
            aux: Vec::new(),
            order: MonomialOrder::Grevlex,
            grading: None,
            store: None,
        }
    }

    /// The quotient of the ambient polynomial ring by `relations` (which
    /// replace any modulus already present).
    pub fn quotient(self: &Arc<Self>, relations: &[Poly<F::Elem>]) -> Arc<Self> {
        let ambient = self.ambient();
        let gb = groebner::gb_of(&ambient, relations);
        Arc::new(PolyRing {
            modulus: gb.as_ref().clone(),
            ..ambient.shallow_copy()
        })
    }

    /// The same variables and order without the modulus.
    pub fn ambient(self: &Arc<Self>) -> Arc<Self> {
        if self.modulus.is_empty() {
            return Arc::clone(self);
        }
        Arc::new(self.shallow_copy())
    }

    /// Same variables, roles and grading under a different order. The
    /// modulus is recomputed in the new order.
    pub fn with_order(self: &Arc<Self>, order: MonomialOrder) -> Arc<Self> {
        if order == self.order {
            return Arc::clone(self);
        }
        let ambient = Arc::new(PolyRing {
            order,
            ..self.shallow_copy()
        });
        if self.modulus.is_empty() {
            ambient
        } else {
            let rel: Vec<_> = self
                .modulus
                .iter()
                .map(|f| ambient.convert(self, f))
                .collect();
            ambient.quotient(&rel)
        }
    }

    /// Copy without modulus or memo (but sharing the disk store).
    fn shallow_copy(&self) -> Self {
        PolyRing {
            field: self.field.clone(),
            vars: self.vars.clone(),
            roles: self.roles.clone(),
            grading: self.grading.clone(),
            order: self.order.clone(),
            modulus: Vec::new(),
            memo: RwLock::new(HashMap::new()),
            store: self.store.clone(),
        }
    }

    /// A new ring (no modulus) with explicitly given variables, sharing the
    /// field and disk store of `self`.
    pub fn derived(
        &self,
        vars: Vec<String>,
        roles: Vec<VarRole>,
        grading: Vec<Vec<i64>>,
        order: MonomialOrder,
    ) -> Arc<Self> {
        assert_eq!(vars.len(), roles.len());
        assert_eq!(vars.len(), grading.len());
        Arc::new(PolyRing {
            field: self.field.clone(),
            vars,
            roles,
            grading,
            order,
            modulus: Vec::new(),
            memo: RwLock::new(HashMap::new()),
            store: self.store.clone(),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn roles(&self) -> &[VarRole] {
        &self.roles
    }

    pub fn grading(&self) -> &[Vec<i64>] {
        &self.grading
    }

    /// Number of grading components.
    pub fn grading_rank(&self) -> usize {
        self.grading.first().map_or(1, |g| g.len())
    }

    pub fn modulus(&self) -> &[Poly<F::Elem>] {
        &self.modulus
    }

    pub fn has_modulus(&self) -> bool {
        !self.modulus.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn parameter_indices(&self) -> Vec<usize> {
        self.indices_with(|r| r == VarRole::Parameter)
    }

    pub fn coordinate_indices(&self) -> Vec<usize> {
        self.indices_with(|r| matches!(r, VarRole::Coordinate(_)))
    }

    fn indices_with(&self, pred: impl Fn(VarRole) -> bool) -> Vec<usize> {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, r)| pred(**r))
            .map(|(i, _)| i)
            .collect()
    }

    /// Every coordinate variable has degree `e_b` for its block `b`, and
    /// all other variables have degree zero.
    pub fn is_standard_multigraded(&self) -> bool {
        let p = self.grading_rank();
        self.roles.iter().zip(self.grading.iter()).all(|(r, g)| {
            let mut expect = vec![0; p];
            if let VarRole::Coordinate(b) = r {
                if *b >= p {
                    return false;
                }
                expect[*b] = 1;
            }
            *g == expect
        })
    }

    // ---------------------------------------------------------------
    // construction

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly::zero()
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn from_int(&self, n: i64) -> Poly<F::Elem> {
        self.constant(self.field.from_i64(n))
    }

    pub fn var(&self, i: usize) -> Poly<F::Elem> {
        self.term(Monomial::var(self.nvars(), i), self.field.one())
    }

    /// Variable by name. Panics when the name is unknown.
    pub fn var_named(&self, name: &str) -> Poly<F::Elem> {
        let i = self
            .var_index(name)
            .unwrap_or_else(|| panic!("no variable {name}"));
        self.var(i)
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(&c) {
            Poly::zero()
        } else {
            Poly::from_sorted(vec![(m, c)])
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates
    /// and drops zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, F::Elem)>) -> Poly<F::Elem> {
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if self.field.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        Poly::from_sorted(out)
    }

    /// Re-expresses a polynomial of a ring with the same variables (but
    /// possibly another order) in this ring.
    pub fn convert(&self, from: &PolyRing<F>, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        debug_assert_eq!(from.nvars(), self.nvars());
        if from.order == self.order {
            return f.clone();
        }
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Poly::from_sorted(terms)
    }

    /// Moves a polynomial between rings along a variable map: variable `k`
    /// of this ring takes the exponent of variable `map[k]` of the source.
    /// Source variables absent from the map must not occur.
    pub fn remap(&self, f: &Poly<F::Elem>, map: &[Option<usize>]) -> Poly<F::Elem> {
        let terms = f
            .terms
            .iter()
            .map(|(m, c)| (m.remap(map), c.clone()))
            .collect();
        self.from_terms(terms)
    }

    // ---------------------------------------------------------------
    // arithmetic

    pub fn add(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.merge(f, g, |c| c.clone())
    }

    pub fn sub(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.merge(f, g, |c| self.field.neg(c))
    }

    pub fn neg(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly::from_sorted(
            f.terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        )
    }

    pub fn scale(&self, f: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly::from_sorted(
            f.terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(a, c)))
                .collect(),
        )
    }

    /// `c * m * f`; the result stays sorted because orders are multiplicative.
    pub fn mul_term(&self, f: &Poly<F::Elem>, m: &Monomial, c: &F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly::from_sorted(
            f.terms
                .iter()
                .map(|(t, a)| (t.mul(m), self.field.mul(a, c)))
                .collect(),
        )
    }

    pub fn mul(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        let mut acc = Poly::zero();
        for (m, c) in &small.terms {
            let part = self.mul_term(large, m, c);
            acc = self.add(&acc, &part);
        }
        acc
    }

    pub fn pow(&self, f: &Poly<F::Elem>, k: u32) -> Poly<F::Elem> {
        let mut acc = self.one();
        let mut base = f.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `f - c * m * g`, the reduction step.
    pub fn sub_mul_term(
        &self,
        f: &Poly<F::Elem>,
        c: &F::Elem,
        m: &Monomial,
        g: &Poly<F::Elem>,
    ) -> Poly<F::Elem> {
        let field = &self.field;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut i = 0;
        let mut j = 0;
        let mut gm: Option<Monomial> = g.terms.first().map(|(t, _)| t.mul(m));
        while i < f.len() || j < g.len() {
            let ord = match (f.terms.get(i), &gm) {
                (Some((a, _)), Some(b)) => self.order.cmp(a, b),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(f.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let prod = field.neg(&field.mul(c, &g.terms[j].1));
                    out.push((gm.take().unwrap(), prod));
                    j += 1;
                    gm = g.terms.get(j).map(|(t, _)| t.mul(m));
                }
                Ordering::Equal => {
                    let v = field.sub(&f.terms[i].1, &field.mul(c, &g.terms[j].1));
                    if !field.is_zero(&v) {
                        out.push((gm.take().unwrap(), v));
                    }
                    i += 1;
                    j += 1;
                    gm = g.terms.get(j).map(|(t, _)| t.mul(m));
                }
            }
        }
        Poly::from_sorted(out)
    }

    fn merge(
        &self,
        f: &Poly<F::Elem>,
        g: &Poly<F::Elem>,
        map_g: impl Fn(&F::Elem) -> F::Elem,
    ) -> Poly<F::Elem> {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        while i < f.len() && j < g.len() {
            match self.order.cmp(&f.terms[i].0, &g.terms[j].0) {
                Ordering::Greater => {
                    out.push(f.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((g.terms[j].0.clone(), map_g(&g.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = self.field.add(&f.terms[i].1, &map_g(&g.terms[j].1));
                    if !self.field.is_zero(&v) {
                        out.push((f.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(f.terms[i..].iter().cloned());
        out.extend(g.terms[j..].iter().map(|(m, c)| (m.clone(), map_g(c))));
        Poly::from_sorted(out)
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        match f.lead() {
            None => Poly::zero(),
            Some((_, c)) if self.field.is_one(c) => f.clone(),
            Some((_, c)) => self.scale(f, &self.field.inv(c)),
        }
    }

    /// Exact quotient `f / h`, or `None` when `h` does not divide `f`.
    pub fn divide_exact(&self, f: &Poly<F::Elem>, h: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        assert!(!h.is_zero(), "division by the zero polynomial");
        let inv = self.field.inv(h.lc());
        let mut rem = f.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.lead().cloned() {
            let q = h.lm().quotient(&m)?;
            let coef = self.field.mul(&c, &inv);
            rem = self.sub_mul_term(&rem, &coef, &q, h);
            quot.push((q, coef));
        }
        Some(self.from_terms(quot))
    }

    // ---------------------------------------------------------------
    // gradings and substitution

    /// The common multidegree of all terms, or `None` when `f` is not
    /// homogeneous. The zero polynomial has no degree.
    pub fn multidegree(&self, f: &Poly<F::Elem>) -> Option<Vec<i64>> {
        let mut it = f.terms.iter().map(|(m, _)| m.multidegree(&self.grading));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Homogeneous for the standard total degree (all variables weight one).
    pub fn is_standard_homogeneous(&self, f: &Poly<F::Elem>) -> bool {
        let mut degs = f.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Substitutes field values for some variables (by index), keeping the
    /// polynomial in this ring.
    pub fn substitute(&self, f: &Poly<F::Elem>, values: &[(usize, F::Elem)]) -> Poly<F::Elem> {
        let terms = f
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m = m.clone();
                let mut c = c.clone();
                for (i, v) in values {
                    let e = m.exponents()[*i];
                    if e > 0 {
                        for _ in 0..e {
                            c = self.field.mul(&c, v);
                        }
                        m.set(*i, 0);
                    }
                }
                (m, c)
            })
            .collect();
        self.from_terms(terms)
    }

    /// Substitutes a polynomial for each variable (`images[i]` for variable
    /// `i`), evaluating into `target`.
    pub fn compose(
        &self,
        f: &Poly<F::Elem>,
        target: &PolyRing<F>,
        images: &[Poly<F::Elem>],
    ) -> Poly<F::Elem> {
        let mut acc = target.zero();
        for (m, c) in &f.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = target.mul(&t, &target.pow(&images[i], e));
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    /// The ring obtained by deleting the parameter variables (and the
    /// modulus relations are carried over after specialization by the
    /// caller).
    pub fn parameter_free(self: &Arc<Self>) -> Arc<Self> {
        let keep: Vec<usize> = (0..self.nvars())
            .filter(|&i| self.roles[i] != VarRole::Parameter)
            .collect();
        if keep.len() == self.nvars() {
            return self.ambient();
        }
        let order = restrict_order(&self.order, &keep);
        self.derived(
            keep.iter().map(|&i| self.vars[i].clone()).collect(),
            keep.iter().map(|&i| self.roles[i]).collect(),
            keep.iter().map(|&i| self.grading[i].clone()).collect(),
            order,
        )
    }

    /// Specializes parameters by name into `target`, which must be
    /// [`PolyRing::parameter_free`] of this ring (or share its variables).
    pub fn specialize(
        &self,
        f: &Poly<F::Elem>,
        target: &PolyRing<F>,
        assignment: &[(&str, F::Elem)],
    ) -> Result<Poly<F::Elem>> {
        let params = self.parameter_indices();
        let mut values = Vec::with_capacity(assignment.len());
        for (name, v) in assignment {
            let i = self
                .var_index(name)
                .ok_or_else(|| Error::NotAParameter(name.to_string()))?;
            if self.roles[i] != VarRole::Parameter {
                return Err(Error::NotAParameter(name.to_string()));
            }
            values.push((i, v.clone()));
        }
        let mut covered: Vec<usize> = values.iter().map(|(i, _)| *i).collect();
        covered.sort_unstable();
        covered.dedup();
        if covered != params {
            return Err(Error::IncompleteAssignment(format!(
                "{} of {} parameters assigned",
                covered.len(),
                params.len()
            )));
        }
        let evaluated = self.substitute(f, &values);
        let map: Vec<Option<usize>> = target
            .var_names()
            .iter()
            .map(|n| self.var_index(n))
            .collect();
        Ok(target.remap(&evaluated, &map))
    }

    // ---------------------------------------------------------------
    // text

    pub fn format(&self, f: &Poly<F::Elem>) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in f.terms.iter().enumerate() {
            let neg = self.field.is_negative(c);
            let abs = if neg { self.field.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            let coef = self.field.format(&abs);
            if mono.is_empty() {
                s.push_str(&coef);
            } else if self.field.is_one(&abs) {
                s.push_str(&mono);
            } else {
                s.push_str(&coef);
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], e)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Parses an infix polynomial over this ring's variables.
    pub fn parse(&self, text: &str) -> Result<Poly<F::Elem>> {
        let expr = crate::session::parse_expr(text)?;
        crate::session::eval_expr(self, &expr)
    }
}

/// The order induced on a subset of the variables.
pub(crate) fn restrict_order(order: &MonomialOrder, keep: &[usize]) -> MonomialOrder {
    match order {
        MonomialOrder::Weighted(rows) => MonomialOrder::Weighted(
            rows.iter()
                .map(|r| keep.iter().map(|&i| r[i]).collect())
                .collect(),
        ),
        o => o.clone(),
    }
}
