use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::monomial::Monomial;
use super::poly::Poly;
use super::ring::{PolyRing, VarRole};
use crate::error::{Error, Result};
use crate::groebner;

/// A finitely generated ideal of a [`PolyRing`] (which may be a quotient).
///
/// Generators are kept as normal forms modulo the ring's modulus, in the
/// order given, with zeros dropped.
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Poly<F::Elem>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: Arc::clone(&self.ring),
            gens: self.gens.clone(),
        }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| self.ring.format(g)).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, gens: Vec<Poly<F::Elem>>) -> Self {
        let gens = gens
            .into_iter()
            .map(|g| groebner::reduce_mod(ring, &g))
            .filter(|g| !g.is_zero())
            .collect();
        Ideal {
            ring: Arc::clone(ring),
            gens,
        }
    }

    /// Parses each generator with [`PolyRing::parse`].
    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing<F>>, gens: &[S]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| ring.parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(ring, polys))
    }

    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing<F>>) -> Self {
        Self::new(ring, vec![ring.one()])
    }

    /// The ideal of all coordinate variables.
    pub fn maximal(ring: &Arc<PolyRing<F>>) -> Self {
        let gens = (0..ring.nvars())
            .filter(|&i| matches!(ring.roles()[i], VarRole::Coordinate(_)))
            .map(|i| ring.var(i))
            .collect();
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<F::Elem>] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    /// Reduced Gröbner basis of the ideal plus the ring's modulus.
    pub fn gb(&self) -> Arc<Vec<Poly<F::Elem>>> {
        groebner::gb_of(&self.ring, &self.gens)
    }

    pub fn normal_form(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        groebner::normal_form(&self.ring, f, &self.gb())
    }

    pub fn contains(&self, f: &Poly<F::Elem>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_as(&self, other: &Ideal<F>) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.gb();
        gb.len() == 1 && gb[0].is_constant()
    }

    /// Leading monomials of the Gröbner basis.
    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.gb().iter().map(|g| g.lm().clone()).collect()
    }

    /// Whether every generator is homogeneous for the ring grading.
    pub fn is_homogeneous(&self) -> bool {
        self.gens
            .iter()
            .all(|g| self.ring.multidegree(g).is_some())
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    /// The ideal with one more generator.
    pub fn with(&self, f: Poly<F::Elem>) -> Ideal<F> {
        let mut gens = self.gens.clone();
        gens.push(f);
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(self.ring.mul(f, g));
            }
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I^k`, generated by the products of `k` generators.
    pub fn power(&self, k: u32) -> Ideal<F> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            let mut gens: Vec<Poly<F::Elem>> = Vec::new();
            for f in &acc.gens {
                for g in &self.gens {
                    let p = groebner::reduce_mod(&self.ring, &self.ring.mul(f, g));
                    if !p.is_zero() && !gens.contains(&p) {
                        gens.push(p);
                    }
                }
            }
            acc = Ideal::new(&self.ring, gens);
        }
        acc
    }

    /// Minimal total degree of a nonzero generator normal form, `None` for
    /// the zero ideal.
    pub fn min_generator_degree(&self) -> Option<u64> {
        self.gens.iter().filter_map(|g| g.min_degree()).min()
    }

    /// Krull dimension of `R / I`, or `-1` for the unit ideal.
    pub fn krull_dim(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.ring.nvars();
        let leads: Vec<u64> = self.lead_monomials().iter().map(|m| m.support_mask()).collect();
        krull_dim_of_supports(n, &leads)
    }

    pub(crate) fn check_ring(&self, other: &Ideal<F>) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

/// Largest set of variables containing the support of no leading monomial.
fn krull_dim_of_supports(n: usize, leads: &[u64]) -> i64 {
    assert!(n < 63, "too many variables for dimension search");
    let mut best = 0;
    // independent sets are closed under subsets, so search maximal ones
    fn extend(start: usize, n: usize, set: u64, size: i64, leads: &[u64], best: &mut i64) {
        if size > *best {
            *best = size;
        }
        if size + (n - start) as i64 <= *best {
            return;
        }
        for v in start..n {
            let s = set | (1 << v);
            if leads.iter().all(|&l| l & !s != 0) {
                extend(v + 1, n, s, size + 1, leads, best);
            }
        }
    }
    extend(0, n, 0, 0, leads, &mut best);
    best
}
