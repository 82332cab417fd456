//! Order, polar multiplicities, Segre numbers and polar-Segre
//! multiplicities of an ideal at the origin.

mod oracle;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{local_multiplicity_detail, HsConfig};
use crate::ring::{Field, Ideal, Poly};

pub use oracle::{kleiman_thorup_oracle, OracleEstimate};

/// Knobs shared by every randomized computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantConfig {
    pub seed: u64,
    /// Extra attempts after the first draw.
    pub retries: usize,
    /// Coefficient box for general elements over ℚ.
    pub coeff_bound: u64,
    pub hs: HsConfig,
}

impl Default for InvariantConfig {
    fn default() -> Self {
        InvariantConfig {
            seed: 0,
            retries: 2,
            coeff_bound: 1000,
            hs: HsConfig::default(),
        }
    }
}

/// `o(I)`: the lowest degree of a term of a generator normal form.
pub fn order<F: Field>(ideal: &Ideal<F>) -> Result<u64> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(ideal.min_generator_degree().unwrap_or(0))
}

/// `g_j = Σ_i a_{j,i} f_i` for random scalars `a`.
#[derive(Clone, Debug)]
pub struct GeneralSequence<F: Field> {
    pub coefficients: Vec<Vec<F::Elem>>,
    pub elements: Vec<Poly<F::Elem>>,
}

impl<F: Field> GeneralSequence<F> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn draw<F: Field>(ideal: &Ideal<F>, k: usize, rng: &mut ChaCha8Rng, bound: u64) -> GeneralSequence<F> {
    let ring = ideal.ring();
    let field = ring.field();
    let mut coefficients = Vec::with_capacity(k);
    let mut elements = Vec::with_capacity(k);
    for _ in 0..k {
        let row: Vec<F::Elem> = ideal
            .gens()
            .iter()
            .map(|_| field.random_nonzero(rng, bound))
            .collect();
        let mut g = ring.zero();
        for (a, f) in row.iter().zip(ideal.gens()) {
            g = ring.add(&g, &ring.scale(f, a));
        }
        coefficients.push(row);
        elements.push(g);
    }
    GeneralSequence {
        coefficients,
        elements,
    }
}

/// The saturation chain `S_i = (g_1..g_i) : I^∞` of a sequence, with the
/// dimension bounds `dim R/S_i ≤ d - i` checked along the way.
struct Chain<F: Field> {
    dim: usize,
    sat: Vec<Ideal<F>>,
}

impl<F: Field> Chain<F> {
    fn build(ideal: &Ideal<F>, seq: &GeneralSequence<F>) -> Result<Chain<F>> {
        let ring = ideal.ring();
        let d = ring_dim(ideal)?;
        let mut sat = Vec::with_capacity(seq.len() + 1);
        for i in 0..=seq.len() {
            let cut = Ideal::new(ring, seq.elements[..i].to_vec());
            let s = cut.saturate(ideal)?;
            if s.krull_dim() > d as i64 - i as i64 {
                return Err(Error::GenericityFailure {
                    seed: 0,
                    retries: 0,
                    check: format!("dim R/(g_1..g_{i}):I^∞ exceeds {}", d as i64 - i as i64),
                });
            }
            sat.push(s);
        }
        Ok(Chain { dim: d, sat })
    }
}

fn ring_dim<F: Field>(ideal: &Ideal<F>) -> Result<usize> {
    let d = Ideal::zero(ideal.ring()).krull_dim();
    if d < 0 {
        return Err(Error::UnitIdeal);
    }
    Ok(d as usize)
}

/// Draws `k` general elements of `I`, redrawing until the dimension bounds
/// of the saturation chain hold.
pub fn general_sequence<F: Field>(
    ideal: &Ideal<F>,
    k: usize,
    cfg: &InvariantConfig,
) -> Result<GeneralSequence<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut last = String::new();
    for _ in 0..=cfg.retries {
        let seq = draw(ideal, k, &mut rng, cfg.coeff_bound);
        match Chain::build(ideal, &seq) {
            Ok(_) => return Ok(seq),
            Err(Error::GenericityFailure { check, .. }) => last = check,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenericityFailure {
        seed: cfg.seed,
        retries: cfg.retries,
        check: last,
    })
}

/// `m_i = e_{d-i}(R / (g_1..g_i) : I^∞)` for `0 ≤ i ≤ d`.
pub fn polar_sequence<F: Field>(
    ideal: &Ideal<F>,
    seq: &GeneralSequence<F>,
    hs: &HsConfig,
) -> Result<Vec<u64>> {
    Ok(Raw::compute(ideal, seq, hs)?.m)
}

/// `ν_0 = m_0`, `ν_i = e_{d-i}(R / ((g_1..g_{i-1}) : I^∞ + (g_i)))`.
pub fn nu_sequence<F: Field>(
    ideal: &Ideal<F>,
    seq: &GeneralSequence<F>,
    hs: &HsConfig,
) -> Result<Vec<u64>> {
    Ok(Raw::compute(ideal, seq, hs)?.nu)
}

/// `c_0 = e(R) - m_0`, `c_i = ν_i - m_i`.
pub fn segre_sequence<F: Field>(
    ideal: &Ideal<F>,
    seq: &GeneralSequence<F>,
    hs: &HsConfig,
) -> Result<Vec<u64>> {
    Ok(Raw::compute(ideal, seq, hs)?.c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Raw {
    dim: usize,
    e_ring: u64,
    m: Vec<u64>,
    nu: Vec<u64>,
    c: Vec<u64>,
    max_stable: usize,
}

fn genericity(check: String) -> Error {
    Error::GenericityFailure {
        seed: 0,
        retries: 0,
        check,
    }
}

impl Raw {
    fn compute<F: Field>(ideal: &Ideal<F>, seq: &GeneralSequence<F>, hs: &HsConfig) -> Result<Raw> {
        let chain = Chain::build(ideal, seq)?;
        let d = chain.dim;
        if seq.len() != d {
            return Err(Error::Inconsistent(format!(
                "a sequence of {} elements for dimension {d}",
                seq.len()
            )));
        }
        let mut max_stable = 0;
        let mut lm = |k: &Ideal<F>, j: usize| -> Result<u64> {
            match local_multiplicity_detail(k, j, hs) {
                Ok(detail) => {
                    max_stable = max_stable.max(detail.stable_from);
                    Ok(detail.value)
                }
                Err(Error::DimensionTooLarge { found, expected }) => Err(genericity(format!(
                    "local dimension {found} above {expected}"
                ))),
                Err(e) => Err(e),
            }
        };
        let e_ring = lm(&Ideal::zero(ideal.ring()), d)?;
        let mut m = Vec::with_capacity(d + 1);
        for (i, s) in chain.sat.iter().enumerate() {
            m.push(lm(s, d - i)?);
        }
        if m[d] != 0 {
            return Err(genericity(format!("m_{d} = {} is not zero", m[d])));
        }
        let mut nu = vec![m[0]];
        for i in 1..=d {
            let cut = chain.sat[i - 1].with(seq.elements[i - 1].clone());
            nu.push(lm(&cut, d - i)?);
        }
        let mut c = Vec::with_capacity(d + 1);
        let c0 = e_ring as i128 - m[0] as i128;
        for i in 0..=d {
            let v = if i == 0 { c0 } else { nu[i] as i128 - m[i] as i128 };
            if v < 0 {
                return Err(genericity(format!("negative Segre number c_{i} = {v}")));
            }
            c.push(v as u64);
        }
        Ok(Raw {
            dim: d,
            e_ring,
            m,
            nu,
            c,
            max_stable,
        })
    }

    fn same_values(&self, other: &Raw) -> bool {
        self.m == other.m && self.nu == other.nu && self.c == other.c
    }
}

/// How a table was certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub seed: u64,
    /// Attempts discarded before the certified one.
    pub retries_used: usize,
    /// Each dimension bound and the independent redraw agreed.
    pub checks_passed: bool,
    /// Largest `n` at which a Hilbert–Samuel difference stabilized.
    pub max_stable_n: usize,
    /// Stabilization happened within two windows of the cap.
    pub near_cap: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantTable {
    pub dim: usize,
    pub order: u64,
    /// Multiplicity of the ring at the origin.
    pub ring_multiplicity: u64,
    pub m: Vec<u64>,
    pub c: Vec<u64>,
    pub nu: Vec<u64>,
    pub gparam_generic: bool,
    /// `ht(I) = 0`: accepted, but `c_0` then carries the top-dimensional part.
    pub height_zero: bool,
    pub certification: Certification,
}

/// `δ m_{i-1} = ν_i` for every `1 ≤ i ≤ d`.
pub fn gparam_check(table: &InvariantTable) -> bool {
    (1..=table.dim).all(|i| table.order * table.m[i - 1] == table.nu[i])
}

/// The certified table of invariants of `I`: two independent draws must
/// agree; disagreeing or failing draws are discarded and resampled.
pub fn invariant_table<F: Field>(ideal: &Ideal<F>, cfg: &InvariantConfig) -> Result<InvariantTable> {
    let delta = order(ideal)?;
    let d = ring_dim(ideal)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut last = String::new();
    for attempt in 0..=cfg.retries {
        let first = draw(ideal, d, &mut rng, cfg.coeff_bound);
        let second = draw(ideal, d, &mut rng, cfg.coeff_bound);
        let a = match Raw::compute(ideal, &first, &cfg.hs) {
            Ok(a) => a,
            Err(Error::GenericityFailure { check, .. }) => {
                last = check;
                continue;
            }
            Err(e) => return Err(e),
        };
        let b = match Raw::compute(ideal, &second, &cfg.hs) {
            Ok(b) => b,
            Err(Error::GenericityFailure { check, .. }) => {
                last = check;
                continue;
            }
            Err(e) => return Err(e),
        };
        if !a.same_values(&b) {
            last = format!(
                "independent draws disagree: m {:?} vs {:?}, ν {:?} vs {:?}",
                a.m, b.m, a.nu, b.nu
            );
            continue;
        }
        let max_stable = a.max_stable.max(b.max_stable);
        let mut table = InvariantTable {
            dim: a.dim,
            order: delta,
            ring_multiplicity: a.e_ring,
            m: a.m,
            c: a.c,
            nu: a.nu,
            gparam_generic: false,
            height_zero: ideal.krull_dim() == d as i64,
            certification: Certification {
                seed: cfg.seed,
                retries_used: attempt,
                checks_passed: true,
                max_stable_n: max_stable,
                near_cap: max_stable + 2 * cfg.hs.window >= cfg.hs.cap,
            },
        };
        for i in 1..=d {
            if delta * table.m[i - 1] > table.nu[i] {
                return Err(Error::Inconsistent(format!(
                    "δ m_{} = {} exceeds ν_{i} = {}",
                    i - 1,
                    delta * table.m[i - 1],
                    table.nu[i]
                )));
            }
        }
        table.gparam_generic = gparam_check(&table);
        return Ok(table);
    }
    Err(Error::GenericityFailure {
        seed: cfg.seed,
        retries: cfg.retries,
        check: last,
    })
}
