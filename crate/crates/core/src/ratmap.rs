//! Rational maps `ℙ^r ⇢ ℙ^s` given by forms of a common degree.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{kernel_of_map, rees_ideal};
use crate::hilbert::{graded_degree, HilbertPolynomial};
use crate::invariants::{invariant_table, InvariantConfig};
use crate::ring::{Field, Ideal, Poly, PolyRing, VarRole};

#[derive(Clone, Debug)]
pub struct RationalMap<F: Field> {
    source: Arc<PolyRing<F>>,
    forms: Vec<Poly<F::Elem>>,
    delta: u64,
}

impl<F: Field> RationalMap<F> {
    /// Forms must be homogeneous of one positive degree in a single block of
    /// coordinates (parameters allowed) and not all zero.
    pub fn new(source: &Arc<PolyRing<F>>, forms: Vec<Poly<F::Elem>>) -> Result<Self> {
        if source.has_modulus() {
            return Err(Error::InvalidMap("the source must be a polynomial ring".into()));
        }
        if source.grading_rank() != 1 || !source.is_standard_multigraded() {
            return Err(Error::InvalidMap(
                "the source needs one block of coordinates of degree 1".into(),
            ));
        }
        if forms.is_empty() {
            return Err(Error::InvalidMap("no forms".into()));
        }
        let mut delta = None;
        for f in forms.iter().filter(|f| !f.is_zero()) {
            let d = source.multidegree(f).ok_or_else(|| {
                Error::InvalidMap(format!("{} is not homogeneous", source.format(f)))
            })?[0];
            if d <= 0 {
                return Err(Error::InvalidMap("forms must have positive degree".into()));
            }
            match delta {
                None => delta = Some(d as u64),
                Some(e) if e != d as u64 => {
                    return Err(Error::InvalidMap(format!(
                        "forms of degrees {e} and {d}"
                    )))
                }
                _ => {}
            }
        }
        let delta = delta.ok_or_else(|| Error::InvalidMap("every form is zero".into()))?;
        Ok(RationalMap {
            source: Arc::clone(source),
            forms,
            delta,
        })
    }

    pub fn parse<S: AsRef<str>>(source: &Arc<PolyRing<F>>, forms: &[S]) -> Result<Self> {
        let forms = forms
            .iter()
            .map(|s| source.parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, forms)
    }

    pub fn source(&self) -> &Arc<PolyRing<F>> {
        &self.source
    }

    pub fn forms(&self) -> &[Poly<F::Elem>] {
        &self.forms
    }

    /// The common degree `δ` of the forms.
    pub fn degree(&self) -> u64 {
        self.delta
    }

    pub fn source_dim(&self) -> usize {
        self.source.coordinate_indices().len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn base_ideal(&self) -> Ideal<F> {
        Ideal::new(&self.source, self.forms.clone())
    }

    pub fn has_parameters(&self) -> bool {
        !self.source.parameter_indices().is_empty()
    }

    /// The map at a point of parameter space; a distinct error when every
    /// form vanishes there.
    pub fn specialize(
        &self,
        target: &Arc<PolyRing<F>>,
        assignment: &[(&str, F::Elem)],
    ) -> Result<RationalMap<F>> {
        let forms = self
            .forms
            .iter()
            .map(|f| self.source.specialize(f, target, assignment))
            .collect::<Result<Vec<_>>>()?;
        if forms.iter().all(|f| f.is_zero()) {
            return Err(Error::DegenerateFiber);
        }
        Self::new(target, forms)
    }

    fn require_parameter_free(&self) -> Result<()> {
        if self.has_parameters() {
            Err(Error::InvalidMap("specialize the parameters first".into()))
        } else {
            Ok(())
        }
    }

    /// `k[y_0..y_s]`, sharing field and cache with the source.
    pub fn target_ring(&self) -> Arc<PolyRing<F>> {
        let s = self.forms.len();
        self.source.derived(
            (0..s).map(|j| format!("y{j}")).collect(),
            vec![VarRole::Coordinate(0); s],
            vec![vec![1]; s],
            crate::ring::MonomialOrder::Grevlex,
        )
    }

    /// Defining ideal of the closure of the image.
    pub fn image_ideal(&self) -> Result<Ideal<F>> {
        self.require_parameter_free()?;
        kernel_of_map(&self.target_ring(), &self.source, &self.forms)
    }

    /// `deg Y` if `dim Y = r`, else 0.
    pub fn deg_image(&self) -> Result<u64> {
        let image = self.image_ideal()?;
        let r = self.source_dim();
        if image.krull_dim() - 1 < r as i64 {
            return Ok(0);
        }
        graded_degree(&image, &Ideal::unit(image.ring()), r + 1)
    }

    /// `(d_0, ..., d_r)` with `d_i = m_{r-i}` of the base ideal.
    pub fn projective_degrees(&self, cfg: &InvariantConfig) -> Result<Vec<u64>> {
        self.require_parameter_free()?;
        let table = invariant_table(&self.base_ideal(), cfg)?;
        let r = self.source_dim();
        Ok((0..=r).map(|i| table.m[r - i]).collect())
    }

    /// Projective degrees as mixed multiplicities `e(i, r-i)` of the Rees
    /// algebra, bigraded by `(deg x, deg y)`.
    pub fn projective_degrees_rees(&self) -> Result<Vec<u64>> {
        self.require_parameter_free()?;
        let (_, j) = rees_ideal(&self.base_ideal());
        let hp = HilbertPolynomial::of_quotient(&j)?;
        let r = self.source_dim();
        if hp.degree() != r as i64 {
            return Err(Error::Inconsistent(format!(
                "graph of dimension {} for a source of dimension {r}",
                hp.degree()
            )));
        }
        Ok((0..=r).map(|i| hp.coefficient(&[i, r - i]) as u64).collect())
    }

    /// Both paths, which must agree.
    pub fn projective_degrees_checked(&self, cfg: &InvariantConfig) -> Result<Vec<u64>> {
        let rees = self.projective_degrees_rees()?;
        let mut last = Vec::new();
        for attempt in 0..=cfg.retries as u64 {
            let c = InvariantConfig {
                seed: cfg.seed.wrapping_add(attempt),
                ..*cfg
            };
            last = self.projective_degrees(&c)?;
            if last == rees {
                return Ok(rees);
            }
        }
        Err(Error::Inconsistent(format!(
            "projective degrees {last:?} from general elements, {rees:?} from the graph"
        )))
    }

    /// `[K(ℙ^r) : K(Y)]`, or 0 when the map is not generically finite.
    pub fn map_degree(&self, cfg: &InvariantConfig) -> Result<u64> {
        let deg_im = self.deg_image()?;
        if deg_im == 0 {
            return Ok(0);
        }
        let d0 = self.projective_degrees(cfg)?[0];
        if d0 % deg_im != 0 {
            return Err(Error::Inconsistent(format!(
                "d_0 = {d0} is not a multiple of deg Y = {deg_im}"
            )));
        }
        Ok(d0 / deg_im)
    }

    pub fn is_birational(&self, cfg: &InvariantConfig) -> Result<bool> {
        Ok(self.map_degree(cfg)? == 1)
    }

    /// `j(I) = δ d_0`.
    pub fn j_multiplicity(&self, cfg: &InvariantConfig) -> Result<u64> {
        Ok(self.delta * self.projective_degrees(cfg)?[0])
    }

    /// Compares the projective degrees with the bound for a structure.
    pub fn degree_bounds(&self, structure: &Structure, cfg: &InvariantConfig) -> Result<Vec<BoundCheck>> {
        let d = self.projective_degrees(cfg)?;
        let r = self.source_dim();
        let s = self.target_dim();
        Ok(d
            .iter()
            .enumerate()
            .map(|(i, &value)| {
                let bound = structure.bound(self.delta, r, s, i);
                BoundCheck {
                    i,
                    value,
                    bound,
                    satisfied: value <= bound,
                }
            })
            .collect())
    }
}

/// Caller-supplied structure of the base ideal, trusted as given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Structure {
    Generic,
    /// Perfect of height two with Hilbert–Burch shifts `μ_1..μ_s`.
    HilbertBurch(Vec<u64>),
    /// Gorenstein of height three with presentation entries of degree `D`.
    Gorenstein3(u64),
}

impl Structure {
    /// Bound on `d_i` for a map `ℙ^r ⇢ ℙ^s` of degree `δ`.
    pub fn bound(&self, delta: u64, r: usize, s: usize, i: usize) -> u64 {
        let k = r - i;
        match self {
            Structure::Generic => delta.pow(k as u32),
            Structure::HilbertBurch(mu) => elementary_symmetric(mu, k),
            Structure::Gorenstein3(big_d) => {
                if i + 3 > r {
                    return delta.pow(k as u32);
                }
                let top = (s + i).saturating_sub(r) / 2;
                let sum: u64 = (0..=top)
                    .map(|kk| binom(s as i64 - 1 - 2 * kk as i64, k as i64 - 1))
                    .sum();
                big_d.pow(k as u32) * sum
            }
        }
    }
}

fn elementary_symmetric(mu: &[u64], k: usize) -> u64 {
    // e_0 = 1; rolling update over the μ_j
    let mut e = vec![0u64; k + 1];
    e[0] = 1;
    for &m in mu {
        for j in (1..=k).rev() {
            e[j] += e[j - 1] * m;
        }
    }
    e[k]
}

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub i: usize,
    pub value: u64,
    pub bound: u64,
    pub satisfied: bool,
}

#[cfg(test)]
mod tests;
