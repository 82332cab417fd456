use super::monomial::Monomial;

/// A sparse polynomial: nonzero terms strictly descending in the order of
/// the ring that produced it.
///
/// A `Poly` does not carry its ring; all arithmetic goes through
/// [`PolyRing`](super::PolyRing), which owns the field and the order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    pub(crate) terms: Vec<(Monomial, E)>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    /// Wraps terms that are already sorted, combined and nonzero.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, E)>) -> Self {
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, E)> {
        self.terms
    }

    pub fn lead(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    /// Leading monomial. Panics on the zero polynomial.
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    /// Leading coefficient. Panics on the zero polynomial.
    pub fn lc(&self) -> &E {
        &self.terms[0].1
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Smallest total degree of a term (the order at the origin).
    pub fn min_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Whether variable `i` occurs.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[i] > 0)
    }

    pub fn support_mask(&self) -> u64 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support_mask())
    }
}
