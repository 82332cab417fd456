//! Brute-force polar multiplicities and Segre numbers from length tables.
//!
//! For homogeneous `I` the lengths
//! `L_B(v, n) = ℓ(I^v / 𝔪^{n+1} I^v)` and
//! `L_G(v, n) = ℓ(I^v / (𝔪^{n+1} I^v + I^{v+1}))`
//! are vector space dimensions of graded modules. Mixed backward
//! differences of `L_B` and of `H²(v, n) = Σ_{k ≤ v} L_G(k, n)` at the
//! corner of the grid give `m_i` and `c_i`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::graded_degree;
use crate::ring::{Field, Ideal};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleEstimate {
    pub m: Vec<i64>,
    pub c: Vec<i64>,
    /// The corner one step inside the grid gives the same values.
    pub stable: bool,
}

/// `Δ_v^a Δ_n^b` (backward) of a table at `(v, n)`.
fn mixed_difference(table: &[Vec<i64>], v: usize, n: usize, a: usize, b: usize) -> i64 {
    let mut total = 0;
    for i in 0..=a {
        for j in 0..=b {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            total += sign * binom(a, i) * binom(b, j) * table[v - i][n - j];
        }
    }
    total
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

pub fn kleiman_thorup_oracle<F: Field>(
    ideal: &Ideal<F>,
    v_max: usize,
    n_max: usize,
) -> Result<OracleEstimate> {
    let ring = ideal.ring();
    if ring.grading_rank() != 1 || !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let d = Ideal::zero(ring).krull_dim();
    if d < 0 {
        return Err(Error::UnitIdeal);
    }
    let d = d as usize;
    // differences of order d at two corners
    if v_max < d + 1 || n_max < d + 1 {
        return Err(Error::GridTooSmall(format!(
            "need v_max, n_max >= {} for dimension {d}, got ({v_max}, {n_max})",
            d + 1
        )));
    }

    let powers: Vec<Ideal<F>> = (0..=v_max as u32 + 1).map(|v| ideal.power(v)).collect();
    let maximal = Ideal::maximal(ring);
    let mpowers: Vec<Ideal<F>> = (1..=n_max as u32 + 1).map(|n| maximal.power(n)).collect();

    let mut lb = vec![vec![0i64; n_max + 1]; v_max + 1];
    let mut lg = vec![vec![0i64; n_max + 1]; v_max + 1];
    for v in 0..=v_max {
        for n in 0..=n_max {
            let deep = mpowers[n].product(&powers[v])?;
            lb[v][n] = graded_degree(&deep, &powers[v], 0)? as i64;
            let with_next = deep.sum(&powers[v + 1])?;
            lg[v][n] = graded_degree(&with_next, &powers[v], 0)? as i64;
        }
    }
    let mut h2 = lg.clone();
    for v in 1..=v_max {
        for n in 0..=n_max {
            h2[v][n] += h2[v - 1][n];
        }
    }

    let read = |v: usize, n: usize| -> (Vec<i64>, Vec<i64>) {
        let m = (0..=d)
            .map(|i| mixed_difference(&lb, v, n, i, d - i))
            .collect();
        let c = (0..=d)
            .map(|i| mixed_difference(&h2, v, n, i, d - i))
            .collect();
        (m, c)
    };
    let (m, c) = read(v_max, n_max);
    let inner = read(v_max - 1, n_max - 1);
    Ok(OracleEstimate {
        stable: inner == (m.clone(), c.clone()),
        m,
        c,
    })
}
