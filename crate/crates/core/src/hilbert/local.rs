//! Hilbert–Samuel multiplicities at the origin.
//!
//! The leading ideal `L` of `K + P` for a local degree order is read off a
//! Gröbner basis of the homogenized generators (Lazard). Then
//! `dim R/(K + 𝔪^{n+1}) = #{monomials of degree ≤ n outside L}`, which is
//! counted with the Hilbert series of `L`.

use super::series::HilbertSeries;
use crate::error::{Error, Result};
use crate::groebner;
use crate::ring::{Field, Ideal, Monomial, MonomialOrder, VarRole};

/// Stabilization window and cap for finite differences of the
/// Hilbert–Samuel function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HsConfig {
    pub window: usize,
    pub cap: usize,
}

impl Default for HsConfig {
    fn default() -> Self {
        HsConfig { window: 3, cap: 60 }
    }
}

/// A local multiplicity with the point where it stabilized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalDetail {
    pub value: u64,
    /// Local dimension of `R/K` at the origin, `-1` if `K` is not in `𝔪`.
    pub dim: i64,
    /// First `n` of the stabilization window (0 when nothing was scanned).
    pub stable_from: usize,
}

/// Hilbert–Samuel multiplicity of `R/K` at `𝔪` if its local dimension is
/// `j`, zero if it is smaller.
pub fn local_multiplicity<F: Field>(k: &Ideal<F>, j: usize, cfg: &HsConfig) -> Result<u64> {
    local_multiplicity_detail(k, j, cfg).map(|d| d.value)
}

/// Length of the local ring `R/K` at the origin.
pub fn local_length<F: Field>(k: &Ideal<F>, cfg: &HsConfig) -> Result<u64> {
    local_multiplicity(k, 0, cfg)
}

pub fn local_multiplicity_detail<F: Field>(
    k: &Ideal<F>,
    j: usize,
    cfg: &HsConfig,
) -> Result<LocalDetail> {
    let ring = k.ring();
    if ring
        .roles()
        .iter()
        .any(|r| !matches!(r, VarRole::Coordinate(_)))
    {
        return Err(Error::NonPositiveGrading(
            "local multiplicities need a ring of coordinates only".into(),
        ));
    }
    let leads = local_leads(k);
    let n = ring.nvars();
    if leads.iter().any(|m| m.is_one()) {
        return Ok(LocalDetail {
            value: 0,
            dim: -1,
            stable_from: 0,
        });
    }
    let dim = monomial_dim(n, &leads);
    if dim > j as i64 {
        return Err(Error::DimensionTooLarge {
            found: dim,
            expected: j as i64,
        });
    }
    if dim < j as i64 {
        return Ok(LocalDetail {
            value: 0,
            dim,
            stable_from: 0,
        });
    }

    let hs = HilbertSeries::of_monomials(&leads, &vec![vec![1]; n]);
    // Δ^j of the cumulative function is Δ^{j-1} of the Hilbert function
    let mut samuel: Vec<i128> = Vec::with_capacity(cfg.cap + 1);
    let mut total = 0;
    for t in 0..=cfg.cap as i64 {
        total += hs.hilbert_function(&[t]);
        samuel.push(total);
    }
    let mut diffs = samuel;
    for _ in 0..j {
        let mut next = Vec::with_capacity(diffs.len());
        next.push(diffs[0]);
        next.extend(diffs.windows(2).map(|w| w[1] - w[0]));
        diffs = next;
    }
    // the cumulative function is polynomial from t = deg(numerator) - n on;
    // an earlier plateau can fool the window
    let settled = (hs.numerator_bound()[0] - n as i64).max(0) as usize + j;
    let w = cfg.window.max(1);
    for start in settled..diffs.len() {
        if start + w > diffs.len() {
            break;
        }
        let v = diffs[start];
        if diffs[start..start + w].iter().all(|&x| x == v) {
            if v < 0 {
                return Err(Error::Inconsistent(format!("negative multiplicity {v}")));
            }
            return Ok(LocalDetail {
                value: v as u64,
                dim,
                stable_from: start,
            });
        }
    }
    Err(Error::NonStabilization {
        what: format!("{j}-th difference of the Hilbert–Samuel function"),
        cap: cfg.cap,
    })
}

/// Leading monomials of `K + P` for a local degree order.
fn local_leads<F: Field>(k: &Ideal<F>) -> Vec<Monomial> {
    let ring = k.ring();
    let n = ring.nvars();
    let ambient = ring.ambient();
    let mut gens: Vec<_> = k.gens().to_vec();
    gens.extend(ring.modulus().iter().map(|g| ambient.convert(ring, g)));

    if gens.iter().all(|g| ring.is_standard_homogeneous(g)) {
        let std = ambient.with_order(MonomialOrder::Grevlex);
        let gens: Vec<_> = gens.iter().map(|g| std.convert(&ambient, g)).collect();
        return groebner::gb_of(&std, &gens)
            .iter()
            .map(|g| g.lm().clone())
            .collect();
    }

    let mut vars = ring.var_names().to_vec();
    vars.push("_h".into());
    let mut roles = ring.roles().to_vec();
    roles.push(VarRole::Auxiliary);
    let mut grading: Vec<Vec<i64>> = vec![vec![1]; n];
    grading.push(vec![1]);
    let mut hrow = vec![0; n + 1];
    hrow[n] = 1;
    let order = MonomialOrder::Weighted(vec![vec![1; n + 1], hrow]);
    let hring = ring.derived(vars, roles, grading, order);

    let homog: Vec<_> = gens
        .iter()
        .map(|g| {
            let top = g.total_degree().unwrap_or(0);
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.push((top - m.degree()) as u32);
                    (Monomial::from_exponents(&e), c.clone())
                })
                .collect();
            hring.from_terms(terms)
        })
        .collect();
    let gb = groebner::gb_of(&hring, &homog);
    let mut leads: Vec<Monomial> = gb
        .iter()
        .map(|g| Monomial::from_exponents(&g.lm().exponents()[..n]))
        .collect();
    leads.sort();
    leads.dedup();
    leads
}

/// Krull dimension of `k[x]/(leads)`.
fn monomial_dim(n: usize, leads: &[Monomial]) -> i64 {
    let masks: Vec<u64> = leads.iter().map(|m| m.support_mask()).collect();
    let mut best = 0;
    for set in 0u64..(1 << n) {
        let size = set.count_ones() as i64;
        if size > best && masks.iter().all(|&l| l & !set != 0) {
            best = size;
        }
    }
    best
}
