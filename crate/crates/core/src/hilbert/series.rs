//! Multigraded Hilbert series of monomial quotients by pivot recursion.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::ring::{Field, Ideal, Monomial, PolyRing};

pub(crate) type Numerator = BTreeMap<Vec<i64>, i128>;

/// Hilbert series `N(t) / Π_v (1 - t^{deg v})` of a graded module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    degrees: Vec<Vec<i64>>,
    numerator: Numerator,
}

fn add_into(acc: &mut Numerator, other: &Numerator, shift: Option<&[i64]>, sign: i128) {
    for (k, v) in other {
        let key = match shift {
            Some(s) => k.iter().zip(s).map(|(a, b)| a + b).collect(),
            None => k.clone(),
        };
        let e = acc.entry(key).or_insert(0);
        *e += sign * v;
    }
    acc.retain(|_, v| *v != 0);
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

struct Pivoter<'a> {
    degrees: &'a [Vec<i64>],
    rank: usize,
    memo: HashMap<Vec<Monomial>, Numerator>,
}

impl Pivoter<'_> {
    fn degree(&self, m: &Monomial) -> Vec<i64> {
        m.multidegree(self.degrees)
    }

    fn numerator(&mut self, gens: Vec<Monomial>) -> Numerator {
        let gens = minimalize(gens);
        if let Some(n) = self.memo.get(&gens) {
            return n.clone();
        }
        let n = self.compute(&gens);
        self.memo.insert(gens, n.clone());
        n
    }

    fn compute(&mut self, gens: &[Monomial]) -> Numerator {
        let mut one = Numerator::new();
        one.insert(vec![0; self.rank], 1);
        if gens.iter().any(|g| g.is_one()) {
            return Numerator::new();
        }
        let coprime = gens
            .iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
        if coprime {
            let mut acc = one;
            for g in gens {
                let d = self.degree(g);
                let prev = acc.clone();
                add_into(&mut acc, &prev, Some(&d), -1);
            }
            return acc;
        }
        // pivot on the variable shared by the most generators
        let n = gens[0].nvars();
        let var = (0..n)
            .max_by_key(|&i| (gens.iter().filter(|g| g.exponents()[i] > 0).count(), n - i))
            .unwrap();
        let mut exps: Vec<u32> = gens
            .iter()
            .map(|g| g.exponents()[var])
            .filter(|&e| e > 0)
            .collect();
        exps.sort_unstable();
        let e = exps[(exps.len() - 1) / 2];
        let mut pivot = Monomial::one(n);
        pivot.set(var, e);

        let mut sum = gens.to_vec();
        sum.push(pivot.clone());
        let colon: Vec<Monomial> = gens
            .iter()
            .map(|g| {
                let mut q = g.clone();
                q.set(var, g.exponents()[var].saturating_sub(e));
                q
            })
            .collect();
        let mut acc = self.numerator(sum);
        let c = self.numerator(colon);
        add_into(&mut acc, &c, Some(&self.degree(&pivot)), 1);
        acc
    }
}

impl HilbertSeries {
    /// Series of `S / (gens)` for a monomial ideal.
    pub fn of_monomials(gens: &[Monomial], degrees: &[Vec<i64>]) -> HilbertSeries {
        let rank = degrees.first().map_or(1, |d| d.len());
        let mut p = Pivoter {
            degrees,
            rank,
            memo: HashMap::new(),
        };
        HilbertSeries {
            degrees: degrees.to_vec(),
            numerator: p.numerator(gens.to_vec()),
        }
    }

    /// Series of `R / I` for a homogeneous ideal of a positively graded ring.
    pub fn of_quotient<F: Field>(ideal: &Ideal<F>) -> Result<HilbertSeries> {
        check_positive(ideal.ring())?;
        if !ideal.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(Self::of_monomials(&ideal.lead_monomials(), ideal.ring().grading()))
    }

    /// Series of `H / K` for homogeneous ideals `K ⊆ H`.
    pub fn of_module<F: Field>(sub: &Ideal<F>, sup: &Ideal<F>) -> Result<HilbertSeries> {
        sub.check_ring(sup)?;
        if !sup.contains_ideal(sub) {
            return Err(Error::NotContained);
        }
        let a = Self::of_quotient(sub)?;
        let b = Self::of_quotient(sup)?;
        let mut numerator = a.numerator;
        add_into(&mut numerator, &b.numerator, None, -1);
        Ok(HilbertSeries {
            degrees: a.degrees,
            numerator,
        })
    }

    pub fn degrees(&self) -> &[Vec<i64>] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.first().map_or(1, |d| d.len())
    }

    /// Numerator coefficients keyed by exponent vector.
    pub fn numerator(&self) -> &BTreeMap<Vec<i64>, i128> {
        &self.numerator
    }

    /// Componentwise maximum of numerator exponents (zero when empty).
    pub fn numerator_bound(&self) -> Vec<i64> {
        let mut b = vec![0; self.rank()];
        for k in self.numerator.keys() {
            for (x, y) in b.iter_mut().zip(k) {
                *x = (*x).max(*y);
            }
        }
        b
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Dimension of the graded piece of degree `nu`.
    pub fn hilbert_function(&self, nu: &[i64]) -> i128 {
        let mut counter = MonomialCounter::new(&self.degrees);
        self.numerator
            .iter()
            .map(|(a, c)| {
                let mu: Vec<i64> = nu.iter().zip(a).map(|(x, y)| x - y).collect();
                c * counter.count(&mu)
            })
            .sum()
    }
}

pub(crate) fn check_positive<F: Field>(ring: &PolyRing<F>) -> Result<()> {
    for (name, d) in ring.var_names().iter().zip(ring.grading()) {
        if d.iter().any(|&x| x < 0) || d.iter().all(|&x| x == 0) {
            return Err(Error::NonPositiveGrading(format!(
                "variable {name} has degree {d:?}"
            )));
        }
    }
    Ok(())
}

/// Counts monomials of a given multidegree.
pub(crate) struct MonomialCounter<'a> {
    degrees: &'a [Vec<i64>],
    /// Block sizes when every degree is a unit vector.
    standard: Option<Vec<u64>>,
    memo: HashMap<(usize, Vec<i64>), i128>,
}

impl<'a> MonomialCounter<'a> {
    pub(crate) fn new(degrees: &'a [Vec<i64>]) -> Self {
        let rank = degrees.first().map_or(1, |d| d.len());
        let mut sizes = vec![0u64; rank];
        let mut standard = true;
        for d in degrees {
            let ones: Vec<usize> = (0..rank).filter(|&b| d[b] == 1).collect();
            if ones.len() == 1 && d.iter().filter(|&&x| x != 0).count() == 1 {
                sizes[ones[0]] += 1;
            } else {
                standard = false;
            }
        }
        MonomialCounter {
            degrees,
            standard: standard.then_some(sizes),
            memo: HashMap::new(),
        }
    }

    pub(crate) fn count(&mut self, mu: &[i64]) -> i128 {
        if mu.iter().any(|&x| x < 0) {
            return 0;
        }
        match &self.standard {
            Some(sizes) => sizes
                .iter()
                .zip(mu)
                .map(|(&n, &m)| {
                    if n == 0 {
                        i128::from(m == 0)
                    } else {
                        binomial(m as i128 + n as i128 - 1, n as i128 - 1)
                    }
                })
                .product(),
            None => self.count_from(0, mu.to_vec()),
        }
    }

    fn count_from(&mut self, var: usize, mu: Vec<i64>) -> i128 {
        if var == self.degrees.len() {
            return i128::from(mu.iter().all(|&x| x == 0));
        }
        if let Some(&v) = self.memo.get(&(var, mu.clone())) {
            return v;
        }
        let d = &self.degrees[var];
        let mut total = 0;
        let mut rest = mu.clone();
        while rest.iter().all(|&x| x >= 0) {
            total += self.count_from(var + 1, rest.clone());
            for (r, x) in rest.iter_mut().zip(d) {
                *r -= x;
            }
        }
        self.memo.insert((var, mu), total);
        total
    }
}

/// `binom(n, k)` for integer `n` (possibly negative) and `k >= 0`.
pub(crate) fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 {
        return 0;
    }
    let mut num: i128 = 1;
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PolyRing, Rationals};

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-1, 3), -1);
        assert_eq!(binomial(-3, 2), 6);
        assert_eq!(binomial(2, 3), 0);
    }

    #[test]
    fn x_squared_xy() {
        // k[x,y]/(x^2, xy): numerator 1 - 2t^2 + t^3
        let hs = HilbertSeries::of_monomials(&[m(&[2, 0]), m(&[1, 1])], &[vec![1], vec![1]]);
        let expect: Numerator = [(vec![0], 1), (vec![2], -2), (vec![3], 1)].into_iter().collect();
        assert_eq!(hs.numerator(), &expect);
        let dims: Vec<i128> = (0..6).map(|t| hs.hilbert_function(&[t])).collect();
        assert_eq!(dims, [1, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn free_line() {
        let hs = HilbertSeries::of_monomials(&[], &[vec![1]]);
        assert_eq!(hs.hilbert_function(&[7]), 1);
    }

    #[test]
    fn bigraded_segre_relation() {
        let r = PolyRing::builder(Rationals)
            .block(&["x0", "x1"])
            .block(&["y0", "y1"])
            .build();
        let i = Ideal::parse(&r, &["x0*y1 - x1*y0"]).unwrap();
        let hs = HilbertSeries::of_quotient(&i).unwrap();
        for a in 0..=3 {
            for b in 0..=3 {
                assert_eq!(hs.hilbert_function(&[a, b]), (a + b + 1) as i128);
            }
        }
    }

    #[test]
    fn weighted_counting() {
        // degrees 1 and 2: monomials of degree 4 are x^4, x^2 y, y^2
        let degrees = [vec![1], vec![2]];
        let mut c = MonomialCounter::new(&degrees);
        assert_eq!(c.count(&[4]), 3);
    }

    #[test]
    fn rejects_degree_zero_variables() {
        let r = PolyRing::builder(Rationals)
            .parameters(&["a"])
            .block(&["x"])
            .build();
        let err = HilbertSeries::of_quotient(&Ideal::zero(&r)).unwrap_err();
        assert!(matches!(err, Error::NonPositiveGrading(_)));
    }
}
