use std::fmt;

use smallvec::SmallVec;

/// Largest admissible exponent.
pub const MAX_EXPONENT: u32 = 1 << 31;

/// Dense exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Bitmask of the variables that occur (variables past 63 share bit 63).
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                m |= 1 << i.min(63);
            }
        }
        m
    }

    /// Product; panics when an exponent leaves the admissible range.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| {
                    let s = a + b;
                    assert!(s < MAX_EXPONENT, "exponent overflow");
                    s
                })
                .collect(),
        )
    }

    pub fn checked_pow(&self, k: u32) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.nvars());
        for &e in self.0.iter() {
            let v = (e as u64) * (k as u64);
            if v >= MAX_EXPONENT as u64 {
                return None;
            }
            out.push(v as u32);
        }
        Some(Monomial(out))
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when divisible.
    #[inline]
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Weighted degree with respect to one weight per variable.
    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(weights.iter())
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    /// Multidegree under a grading that assigns a vector to every variable.
    pub fn multidegree(&self, grading: &[Vec<i64>]) -> Vec<i64> {
        let p = grading.first().map_or(0, |g| g.len());
        let mut d = vec![0i64; p];
        for (e, g) in self.0.iter().zip(grading.iter()) {
            for (slot, w) in d.iter_mut().zip(g.iter()) {
                *slot += *e as i64 * w;
            }
        }
        d
    }

    pub(crate) fn set(&mut self, i: usize, e: u32) {
        self.0[i] = e;
    }

    /// Drops or reorders coordinates: the result has `map.len()` variables,
    /// the `k`-th taken from position `map[k]` (or zero when `None`).
    pub fn remap(&self, map: &[Option<usize>]) -> Monomial {
        Monomial(map.iter().map(|m| m.map_or(0, |i| self.0[i])).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..])
    }
}
