//! Ideal operations that go through elimination.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Field, Ideal, MonomialOrder, Poly, PolyRing, VarRole};

use super::gb_of;

/// The ring with extra auxiliary variables appended, ordered so that the
/// new variables are eliminated first.
fn extend_for_elimination<F: Field>(ring: &PolyRing<F>, extra: &[&str]) -> Arc<PolyRing<F>> {
    let n = ring.nvars();
    let total = n + extra.len();
    let mut vars = ring.var_names().to_vec();
    let mut roles = ring.roles().to_vec();
    let mut grading = ring.grading().to_vec();
    let rank = ring.grading_rank();
    for name in extra {
        vars.push(format!("_{name}"));
        roles.push(VarRole::Auxiliary);
        grading.push(vec![0; rank]);
    }
    let block: Vec<usize> = (n..total).collect();
    ring.derived(vars, roles, grading, MonomialOrder::elimination(total, &block))
}

fn embed_map(from_nvars: usize, to_nvars: usize) -> Vec<Option<usize>> {
    (0..to_nvars)
        .map(|k| (k < from_nvars).then_some(k))
        .collect()
}

/// Gröbner basis elements free of the auxiliary variables, moved back.
fn contract<F: Field>(
    ext: &PolyRing<F>,
    gb: &[Poly<F::Elem>],
    target: &PolyRing<F>,
) -> Vec<Poly<F::Elem>> {
    let n = target.nvars();
    let back: Vec<Option<usize>> = (0..n).map(Some).collect();
    gb.iter()
        .filter(|g| (n..ext.nvars()).all(|i| !g.involves(i)))
        .map(|g| target.remap(g, &back))
        .collect()
}

impl<F: Field> Ideal<F> {
    /// `I ∩ J`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(self.ring()));
        }
        let ring = self.ring();
        let n = ring.nvars();
        let ext = extend_for_elimination(ring, &["t"]);
        let map = embed_map(n, n + 1);
        let t = ext.var(n);
        let one_minus_t = ext.sub(&ext.one(), &t);
        let mut gens = Vec::new();
        for f in self.gens() {
            gens.push(ext.mul(&t, &ext.remap(f, &map)));
        }
        for g in other.gens() {
            gens.push(ext.mul(&one_minus_t, &ext.remap(g, &map)));
        }
        for p in ring.modulus() {
            gens.push(ext.remap(p, &map));
        }
        let gb = gb_of(&ext, &gens);
        Ok(Ideal::new(ring, contract(&ext, &gb, ring)))
    }

    /// `I : f^∞`, by eliminating `t` from `I + (1 - t f)`.
    pub fn saturate_poly(&self, f: &Poly<F::Elem>) -> Ideal<F> {
        let ring = self.ring();
        let n = ring.nvars();
        if f.is_zero() {
            return Ideal::unit(ring);
        }
        let ext = extend_for_elimination(ring, &["t"]);
        let map = embed_map(n, n + 1);
        let tf = ext.mul(&ext.var(n), &ext.remap(f, &map));
        let mut gens: Vec<_> = self.gens().iter().map(|g| ext.remap(g, &map)).collect();
        gens.push(ext.sub(&ext.one(), &tf));
        for p in ring.modulus() {
            gens.push(ext.remap(p, &map));
        }
        let gb = gb_of(&ext, &gens);
        Ideal::new(ring, contract(&ext, &gb, ring))
    }

    /// `I : J^∞ = ⋂ I : g^∞` over the generators `g` of `J`.
    pub fn saturate(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        let mut gens = other.gens().iter();
        let Some(first) = gens.next() else {
            return Ok(Ideal::unit(self.ring()));
        };
        let mut acc = self.saturate_poly(first);
        for g in gens {
            let s = self.saturate_poly(g);
            if acc.is_unit() {
                acc = s;
            } else if !s.is_unit() {
                acc = acc.intersect(&s)?;
            }
        }
        Ok(acc)
    }

    /// `I : f`.
    pub fn colon_poly(&self, f: &Poly<F::Elem>) -> Ideal<F> {
        let ring = self.ring();
        if f.is_zero() || self.contains(f) {
            return Ideal::unit(ring);
        }
        // work in the ambient ring, where division by f is exact
        let ambient = ring.ambient();
        let mut big = self.gens().to_vec();
        big.extend(ring.modulus().iter().cloned());
        let i = Ideal::new(&ambient, big);
        let principal = Ideal::new(&ambient, vec![f.clone()]);
        let meet = i.intersect(&principal).expect("same ring");
        let quotients = meet
            .gens()
            .iter()
            .map(|h| ambient.divide_exact(h, f).expect("element of (f) divisible by f"))
            .collect();
        Ideal::new(ring, quotients)
    }

    /// `I : J`.
    pub fn colon(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        let mut acc = Ideal::unit(self.ring());
        for g in other.gens() {
            let c = self.colon_poly(g);
            acc = if acc.is_unit() { c } else { acc.intersect(&c)? };
        }
        Ok(acc)
    }

    /// Generators of `I ∩ k[remaining variables]`, as an ideal of the same
    /// ring.
    pub fn eliminate(&self, vars: &[usize]) -> Ideal<F> {
        let ring = self.ring();
        let order = MonomialOrder::elimination(ring.nvars(), vars);
        let ext = ring.ambient().with_order(order);
        let mut gens: Vec<_> = self.gens().iter().map(|g| ext.convert(ring, g)).collect();
        for p in ring.modulus() {
            gens.push(ext.convert(ring, p));
        }
        let gb = gb_of(&ext, &gens);
        let kept = gb
            .iter()
            .filter(|g| vars.iter().all(|&i| !g.involves(i)))
            .map(|g| ring.convert(&ext, g))
            .collect();
        Ideal::new(ring, kept)
    }
}

/// Kernel of the map `source → target` sending variable `j` of `source` to
/// `images[j]`. Both rings may be quotients; parameters of the source must
/// map to themselves (or anything the caller chooses).
///
/// The graph ideal lives in `target ⊗ source` with the target variables
/// eliminated first; when every image is homogeneous of one degree `δ` the
/// source variables are weighted by `δ` so the graph relations are
/// homogeneous.
pub fn kernel_of_map<F: Field>(
    source: &Arc<PolyRing<F>>,
    target: &Arc<PolyRing<F>>,
    images: &[Poly<F::Elem>],
) -> Result<Ideal<F>> {
    if images.len() != source.nvars() {
        return Err(Error::InvalidMap(format!(
            "{} images for {} variables",
            images.len(),
            source.nvars()
        )));
    }
    let n = target.nvars();
    let m = source.nvars();
    let mut vars: Vec<String> = target.var_names().iter().map(|v| format!("_{v}")).collect();
    vars.extend(source.var_names().iter().cloned());
    let roles = vec![VarRole::Auxiliary; n]
        .into_iter()
        .chain(source.roles().iter().copied())
        .collect();
    let rank = source.grading_rank();
    let grading = vec![vec![0; rank]; n]
        .into_iter()
        .chain(source.grading().iter().cloned())
        .collect();
    let common = images
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| target.is_standard_homogeneous(f).then(|| f.total_degree().unwrap()))
        .collect::<Option<Vec<u64>>>()
        .and_then(|d| {
            let first = *d.first()?;
            d.iter().all(|&x| x == first).then_some(first as i64)
        });
    let block: Vec<usize> = (0..n).collect();
    let order = match common {
        Some(delta) => {
            let mut w = vec![1; n];
            w.extend(std::iter::repeat_n(delta, m));
            MonomialOrder::elimination_weighted(n + m, &block, w)
        }
        None => MonomialOrder::elimination(n + m, &block),
    };
    let graph = source.derived(vars, roles, grading, order);
    let x_map: Vec<Option<usize>> = (0..n + m).map(|k| (k < n).then_some(k)).collect();
    let y_map: Vec<Option<usize>> = (0..n + m).map(|k| (k >= n).then(|| k - n)).collect();
    let mut gens = Vec::new();
    for (j, f) in images.iter().enumerate() {
        gens.push(graph.sub(&graph.var(n + j), &graph.remap(f, &x_map)));
    }
    for p in target.modulus() {
        gens.push(graph.remap(p, &x_map));
    }
    for q in source.modulus() {
        gens.push(graph.remap(q, &y_map));
    }
    let gb = gb_of(&graph, &gens);
    let back: Vec<Option<usize>> = (0..m).map(|k| Some(n + k)).collect();
    let kernel = gb
        .iter()
        .filter(|g| (0..n).all(|i| !g.involves(i)))
        .map(|g| source.remap(g, &back))
        .collect();
    Ok(Ideal::new(source, kernel))
}

/// Defining ideal of the Rees algebra `R[I t]` as a quotient of `R[y]`.
///
/// Returns the ring `k[params, x, y]` (no modulus; `y` in a new grading
/// block) and the ideal, which contains the modulus of `R`.
pub fn rees_ideal<F: Field>(ideal: &Ideal<F>) -> (Arc<PolyRing<F>>, Ideal<F>) {
    let ring = ideal.ring();
    let n = ring.nvars();
    let gens = ideal.gens();
    let m = gens.len();
    let rank = ring.grading_rank();

    let mut vars = ring.var_names().to_vec();
    let mut roles = ring.roles().to_vec();
    let mut grading: Vec<Vec<i64>> = ring
        .grading()
        .iter()
        .map(|g| {
            let mut g = g.clone();
            g.push(0);
            g
        })
        .collect();
    for j in 0..m {
        vars.push(format!("y{j}"));
        roles.push(VarRole::Coordinate(rank));
        let mut g = vec![0; rank + 1];
        g[rank] = 1;
        grading.push(g);
    }
    let rees_ring = ring.derived(vars.clone(), roles.clone(), grading.clone(), MonomialOrder::Grevlex);

    // eliminate t from y_j - t f_j; weights make the relations homogeneous
    // for homogeneous f_j
    let mut weights: Vec<i64> = (0..n)
        .map(|i| if ring.roles()[i] == VarRole::Parameter { 0 } else { 1 })
        .collect();
    for f in gens {
        weights.push(f.total_degree().unwrap_or(0) as i64 + 1);
    }
    weights.push(1);
    let total = n + m + 1;
    vars.push("_t".into());
    roles.push(VarRole::Auxiliary);
    grading.push(vec![0; rank + 1]);
    let order = MonomialOrder::elimination_weighted(total, &[n + m], weights);
    let ext = ring.derived(vars, roles, grading, order);
    let x_map: Vec<Option<usize>> = (0..total).map(|k| (k < n).then_some(k)).collect();
    let t = ext.var(n + m);
    let mut rel = Vec::new();
    for (j, f) in gens.iter().enumerate() {
        let tf = ext.mul(&t, &ext.remap(f, &x_map));
        rel.push(ext.sub(&ext.var(n + j), &tf));
    }
    for p in ring.modulus() {
        rel.push(ext.remap(p, &x_map));
    }
    let gb = gb_of(&ext, &rel);
    let back: Vec<Option<usize>> = (0..n + m).map(Some).collect();
    let kept = gb
        .iter()
        .filter(|g| !g.involves(n + m))
        .map(|g| rees_ring.remap(g, &back))
        .collect();
    let ideal = Ideal::new(&rees_ring, kept);
    (rees_ring, ideal)
}
