//! Hilbert polynomials in the binomial basis, by interpolation.

use std::collections::BTreeMap;

use super::series::{binomial, HilbertSeries};
use crate::error::{Error, Result};
use crate::ring::{Field, Ideal};

/// Extra points per axis on which an interpolated polynomial is checked.
pub const VALIDATION_BAND: i64 = 2;

/// `P(t) = Σ e(n) Π binom(t_i + n_i, n_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    coeffs: BTreeMap<Vec<usize>, i128>,
    rank: usize,
}

impl HilbertPolynomial {
    /// Interpolates the Hilbert polynomial of a series over a standard
    /// multigraded ring, then validates it on a band of further points.
    pub fn from_series(hs: &HilbertSeries) -> Result<HilbertPolynomial> {
        let rank = hs.rank();
        let mut sizes = vec![0usize; rank];
        for d in hs.degrees() {
            let nz: Vec<usize> = (0..rank).filter(|&b| d[b] != 0).collect();
            if nz.len() != 1 || d[nz[0]] != 1 {
                return Err(Error::NonStandardGrading(format!("variable of degree {d:?}")));
            }
            sizes[nz[0]] += 1;
        }
        // the polynomial has degree < n_b in t_b and matches the function
        // from the numerator bound on
        let dmax: Vec<usize> = sizes.iter().map(|&n| n.saturating_sub(1)).collect();
        let base = hs.numerator_bound();

        let grid = box_points(&dmax.iter().map(|&d| d as i64).collect::<Vec<_>>());
        let mut values: BTreeMap<Vec<i64>, i128> = BTreeMap::new();
        for k in &grid {
            let nu: Vec<i64> = k.iter().zip(&base).map(|(a, b)| a + b).collect();
            values.insert(k.clone(), hs.hilbert_function(&nu));
        }
        // tensor forward differences give Newton coefficients
        let mut newton = values;
        for axis in 0..rank {
            for level in 1..=dmax[axis] as i64 {
                let mut keys: Vec<Vec<i64>> = newton
                    .keys()
                    .filter(|k| k[axis] >= level)
                    .cloned()
                    .collect();
                keys.sort_by(|a, b| b[axis].cmp(&a[axis]));
                for k in keys {
                    let mut prev = k.clone();
                    prev[axis] -= 1;
                    let v = newton[&k] - newton[&prev];
                    newton.insert(k, v);
                }
            }
        }
        let eval_shifted = |k: &[i64]| -> i128 {
            newton
                .iter()
                .map(|(j, c)| {
                    c * k
                        .iter()
                        .zip(j)
                        .map(|(&x, &jj)| binomial(x as i128, jj as i128))
                        .product::<i128>()
                })
                .sum()
        };

        // e(n) = (Π ∇^{n_b}) P at t = (-1, ..., -1)
        let mut coeffs = BTreeMap::new();
        for n in box_points(&dmax.iter().map(|&d| d as i64).collect::<Vec<_>>()) {
            let mut e: i128 = 0;
            for i in box_points(&n) {
                let sign: i128 = if i.iter().sum::<i64>() % 2 == 0 { 1 } else { -1 };
                let weight: i128 = n
                    .iter()
                    .zip(&i)
                    .map(|(&a, &b)| binomial(a as i128, b as i128))
                    .product();
                let k: Vec<i64> = i.iter().zip(&base).map(|(a, b)| -1 - a - b).collect();
                e += sign * weight * eval_shifted(&k);
            }
            if e != 0 {
                coeffs.insert(n.iter().map(|&x| x as usize).collect(), e);
            }
        }
        let hp = HilbertPolynomial { coeffs, rank };

        let band: Vec<i64> = dmax.iter().map(|&d| d as i64 + VALIDATION_BAND).collect();
        for k in box_points(&band) {
            let nu: Vec<i64> = k.iter().zip(&base).map(|(a, b)| a + b).collect();
            if hp.eval(&nu) != hs.hilbert_function(&nu) {
                return Err(Error::InterpolationMismatch(format!("{nu:?}")));
            }
        }
        Ok(hp)
    }

    pub fn of_quotient<F: Field>(ideal: &Ideal<F>) -> Result<HilbertPolynomial> {
        Self::from_series(&HilbertSeries::of_quotient(ideal)?)
    }

    pub fn of_module<F: Field>(sub: &Ideal<F>, sup: &Ideal<F>) -> Result<HilbertPolynomial> {
        Self::from_series(&HilbertSeries::of_module(sub, sup)?)
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<usize>, i128> {
        &self.coeffs
    }

    pub fn coefficient(&self, n: &[usize]) -> i128 {
        self.coeffs.get(n).copied().unwrap_or(0)
    }

    /// Total degree, `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs
            .keys()
            .map(|n| n.iter().sum::<usize>() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &[i64]) -> i128 {
        self.coeffs
            .iter()
            .map(|(n, c)| {
                c * n
                    .iter()
                    .zip(t)
                    .map(|(&k, &x)| binomial(x as i128 + k as i128, k as i128))
                    .product::<i128>()
            })
            .sum()
    }

    /// The coefficients of top total degree: the mixed multiplicities.
    pub fn mixed_multiplicities(&self) -> BTreeMap<Vec<usize>, i128> {
        let r = self.degree();
        let mut out = BTreeMap::new();
        if r < 0 {
            return out;
        }
        for n in box_points(&vec![r; self.rank]) {
            if n.iter().sum::<i64>() == r {
                let n: Vec<usize> = n.iter().map(|&x| x as usize).collect();
                let c = self.coefficient(&n);
                out.insert(n, c);
            }
        }
        out
    }
}

/// All integer points of `[0, b_0] × ... × [0, b_{p-1}]` in lexicographic order.
pub(crate) fn box_points(bounds: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &b in bounds {
        let mut next = Vec::new();
        for p in &out {
            for x in 0..=b.max(0) {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Mixed multiplicity `e(n; R/I)`; zero when `|n|` differs from the degree
/// of the Hilbert polynomial.
pub fn mixed_multiplicity<F: Field>(ideal: &Ideal<F>, n: &[usize]) -> Result<i128> {
    let hp = HilbertPolynomial::of_quotient(ideal)?;
    if n.iter().sum::<usize>() as i64 == hp.degree() {
        Ok(hp.coefficient(n))
    } else {
        Ok(0)
    }
}

/// Multiplicity of the `k`-cycle of `H / K` over a standard graded ring:
/// zero below dimension `k`, an error above it, the total length for `k = 0`.
pub fn graded_degree<F: Field>(sub: &Ideal<F>, sup: &Ideal<F>, k: usize) -> Result<u64> {
    let hs = HilbertSeries::of_module(sub, sup)?;
    if hs.rank() != 1 {
        return Err(Error::NonStandardGrading(
            "graded degrees need a single grading".into(),
        ));
    }
    let hp = HilbertPolynomial::from_series(&hs)?;
    // Krull dimension of a nonzero module is deg P + 1 (0 when of finite length)
    let dim = if hs.is_zero() { -1 } else { hp.degree() + 1 };
    let k = k as i64;
    if dim > k {
        return Err(Error::DimensionTooLarge {
            found: dim,
            expected: k,
        });
    }
    if dim < k {
        return Ok(0);
    }
    if k == 0 {
        let top = hs.numerator_bound()[0];
        let total: i128 = (0..=top).map(|t| hs.hilbert_function(&[t])).sum();
        return Ok(total as u64);
    }
    Ok(hp.coefficient(&[k as usize - 1]) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PolyRing, Rationals};

    #[test]
    fn polynomial_ring_is_binomial() {
        let r = PolyRing::new(Rationals, &["x0", "x1", "x2"]);
        let hp = HilbertPolynomial::of_quotient(&Ideal::zero(&r)).unwrap();
        assert_eq!(hp.coefficients().len(), 1);
        assert_eq!(hp.coefficient(&[2]), 1);
        assert_eq!(graded_degree(&Ideal::zero(&r), &Ideal::unit(&r), 3).unwrap(), 1);
    }

    #[test]
    fn plane_cubic() {
        let r = PolyRing::new(Rationals, &["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x^3 + y^3 + z^3"]).unwrap();
        let hp = HilbertPolynomial::of_quotient(&i).unwrap();
        // 3t = 3 binom(t+1,1) - 3
        assert_eq!(hp.eval(&[5]), 15);
        assert_eq!(hp.coefficient(&[1]), 3);
        assert_eq!(hp.coefficient(&[0]), -3);
        assert_eq!(graded_degree(&i, &Ideal::unit(&r), 2).unwrap(), 3);
        assert!(matches!(
            graded_degree(&i, &Ideal::unit(&r), 1),
            Err(Error::DimensionTooLarge { found: 2, expected: 1 })
        ));
        assert_eq!(graded_degree(&i, &Ideal::unit(&r), 3).unwrap(), 0);
    }

    #[test]
    fn p1_times_p1() {
        let r = PolyRing::builder(Rationals)
            .block(&["x0", "x1"])
            .block(&["y0", "y1"])
            .build();
        let hp = HilbertPolynomial::of_quotient(&Ideal::zero(&r)).unwrap();
        let mm = hp.mixed_multiplicities();
        assert_eq!(mm.get(&vec![1, 1]), Some(&1));

        let i = Ideal::parse(&r, &["x0*y1 - x1*y0"]).unwrap();
        let mm = HilbertPolynomial::of_quotient(&i).unwrap().mixed_multiplicities();
        assert_eq!(mm.get(&vec![1, 0]), Some(&1));
        assert_eq!(mm.get(&vec![0, 1]), Some(&1));
    }

    #[test]
    fn finite_length_total() {
        let r = PolyRing::new(Rationals, &["x", "y"]);
        let i = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        assert_eq!(graded_degree(&i, &Ideal::unit(&r), 0).unwrap(), 4);
        assert!(HilbertPolynomial::of_quotient(&i).unwrap().is_zero());
    }
}
