use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;

/// A monomial order.
///
/// `Weighted` compares the weight rows lexicographically and breaks ties with
/// grevlex; with nonnegative rows this is a well-order. Elimination orders and
/// weighted grevlex are both expressed through it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    Weighted(Vec<Vec<i64>>),
}

impl MonomialOrder {
    /// Block elimination order: monomials are first compared by their degree
    /// in the variables of `block`.
    pub fn elimination(nvars: usize, block: &[usize]) -> Self {
        let mut row = vec![0; nvars];
        for &i in block {
            row[i] = 1;
        }
        MonomialOrder::Weighted(vec![row])
    }

    /// Elimination order refined by a weight vector making the input
    /// (weighted) homogeneous.
    pub fn elimination_weighted(nvars: usize, block: &[usize], weights: Vec<i64>) -> Self {
        let mut row = vec![0; nvars];
        for &i in block {
            row[i] = 1;
        }
        MonomialOrder::Weighted(vec![row, weights])
    }

    pub fn weighted_grevlex(weights: Vec<i64>) -> Self {
        MonomialOrder::Weighted(vec![weights])
    }

    /// True when the order refines total degree, so the lead term of a
    /// polynomial has maximal total degree.
    pub fn is_degree_compatible(&self) -> bool {
        match self {
            MonomialOrder::Grevlex => true,
            MonomialOrder::Lex => false,
            MonomialOrder::Weighted(rows) => rows
                .first()
                .is_none_or(|r| r.iter().all(|&w| w == r[0]) && r[0] > 0),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Weighted(rows) => {
                for row in rows {
                    match a.weighted_degree(row).cmp(&b.weighted_degree(row)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                grevlex(a, b)
            }
        }
    }

    /// Short descriptor used in cache headers.
    pub fn descriptor(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Weighted(rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|w| w.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                format!("weighted[{}]", rows.join(";"))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.exponents().iter().zip(b.exponents().iter()).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}
