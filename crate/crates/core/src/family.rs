//! Parametric families: fiber scans, pseudo-generic values and
//! semicontinuity verdicts.

use std::cmp::Ordering;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::rees_ideal;
use crate::hilbert::HilbertPolynomial;
use crate::invariants::{invariant_table, InvariantConfig};
use crate::ratmap::RationalMap;
use crate::ring::{Field, Ideal, PolyRing};
use crate::session::ScanKind;

/// What a family carries over each point.
#[derive(Clone, Debug)]
pub enum Payload<F: Field> {
    Ideal(Ideal<F>),
    Map(RationalMap<F>),
}

impl<F: Field> Payload<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        match self {
            Payload::Ideal(i) => i.ring(),
            Payload::Map(m) => m.source(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FamilyScenario<F: Field> {
    payload: Payload<F>,
    fiber_ring: Arc<PolyRing<F>>,
    /// Values of the parameters, in ring order, one row per point.
    points: Vec<Vec<F::Elem>>,
    trials: usize,
}

/// A scanned value; the dimension conventions stay distinguishable from a
/// genuine zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Finite(u64),
    /// `|n|` exceeds the dimension of the relevant support.
    ZeroByDimension,
    /// `|n|` is below the dimension of the relevant support.
    InfiniteByDimension,
    Sequence(Vec<u64>),
}

impl Value {
    /// Order on scalar values with `0 = zero-by-dimension < 1 < ... < ∞`.
    fn scalar_cmp(&self, other: &Value) -> Option<Ordering> {
        let rank = |v: &Value| match v {
            Value::ZeroByDimension => Some((0, 0)),
            Value::Finite(n) => Some((0, *n)),
            Value::InfiniteByDimension => Some((1, 0)),
            Value::Sequence(_) => None,
        };
        Some(rank(self)?.cmp(&rank(other)?))
    }

    pub fn render(&self) -> String {
        match self {
            Value::Finite(n) => n.to_string(),
            Value::ZeroByDimension => "0 (dim)".into(),
            Value::InfiniteByDimension => "inf".into(),
            Value::Sequence(s) => format!(
                "({})",
                s.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
            ),
        }
    }
}

/// How an invariant may move under specialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Special values are at least the generic one.
    Upper,
    /// Special values are at most the generic one (componentwise).
    Lower,
    /// Upper semicontinuous for the lexicographic order on `c_1..c_d`.
    UpperLex,
    NotGoverned,
}

pub fn direction<F: Field>(kind: &ScanKind, payload: &Payload<F>) -> Direction {
    match (kind, payload) {
        (ScanKind::MixedMult(_) | ScanKind::Multidegree(_), Payload::Ideal(_)) => Direction::Upper,
        (ScanKind::MixedMult(_) | ScanKind::Multidegree(_), Payload::Map(_)) => Direction::Lower,
        (ScanKind::DegImage | ScanKind::ProjDegrees | ScanKind::JMult, _) => Direction::Lower,
        (ScanKind::SegreSeq, _) => Direction::UpperLex,
        (ScanKind::MapDegree | ScanKind::PolarSeq | ScanKind::NuSeq, _) => Direction::NotGoverned,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointValue {
    pub point: Vec<String>,
    pub value: Option<Value>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Consensus {
    pub value: Option<Value>,
    pub trials: usize,
    /// Successful trials whose value differs from the consensus.
    pub disagreements: usize,
    pub failed_trials: usize,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    /// Differs from the generic value in the allowed direction.
    Consistent,
    /// Differs in the forbidden direction: a defect certificate.
    Violation,
    NotGoverned,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointVerdict {
    pub point: Vec<String>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub kind: String,
    pub direction: Direction,
    pub points: Vec<PointValue>,
    pub generic: Consensus,
    pub verdicts: Vec<PointVerdict>,
    /// Hypotheses the verdicts rely on but that are not checked.
    pub assumed: Vec<String>,
}

impl ScanReport {
    pub fn violations(&self) -> usize {
        self.verdicts
            .iter()
            .filter(|v| v.verdict == Verdict::Violation)
            .count()
    }
}

impl<F: Field> FamilyScenario<F> {
    pub fn new(payload: Payload<F>, points: Vec<Vec<F::Elem>>, trials: usize) -> Result<Self> {
        let ring = payload.ring();
        let nparams = ring.parameter_indices().len();
        if let Some(p) = points.iter().find(|p| p.len() != nparams) {
            return Err(Error::IncompleteAssignment(format!(
                "{} values for {nparams} parameters",
                p.len()
            )));
        }
        if trials < 2 {
            return Err(Error::Session("a family needs at least 2 trials".into()));
        }
        let fiber_ring = ring.parameter_free();
        Ok(FamilyScenario {
            payload,
            fiber_ring,
            points,
            trials,
        })
    }

    pub fn payload(&self) -> &Payload<F> {
        &self.payload
    }

    pub fn points(&self) -> &[Vec<F::Elem>] {
        &self.points
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    fn param_names(&self) -> Vec<String> {
        let ring = self.payload.ring();
        ring.parameter_indices()
            .iter()
            .map(|&i| ring.var_names()[i].clone())
            .collect()
    }

    fn render_point(&self, point: &[F::Elem]) -> Vec<String> {
        let field = self.fiber_ring.field();
        point.iter().map(|v| field.format(v)).collect()
    }

    /// The payload over the fiber at `point`.
    pub fn specialize_payload(&self, point: &[F::Elem]) -> Result<Payload<F>> {
        let names = self.param_names();
        let assignment: Vec<(&str, F::Elem)> = names
            .iter()
            .map(String::as_str)
            .zip(point.iter().cloned())
            .collect();
        let source = self.payload.ring();
        let fiber = if source.has_modulus() {
            let relations = source
                .modulus()
                .iter()
                .map(|g| source.specialize(g, &self.fiber_ring, &assignment))
                .collect::<Result<Vec<_>>>()?;
            self.fiber_ring.quotient(&relations)
        } else {
            Arc::clone(&self.fiber_ring)
        };
        match &self.payload {
            Payload::Ideal(i) => {
                let gens = i
                    .gens()
                    .iter()
                    .map(|g| source.specialize(g, &fiber, &assignment))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Payload::Ideal(Ideal::new(&fiber, gens)))
            }
            Payload::Map(m) => Ok(Payload::Map(m.specialize(&self.fiber_ring, &assignment)?)),
        }
    }

    /// Evaluates `kind` at every listed point; failures stay per point.
    pub fn scan(&self, kind: &ScanKind, cfg: &InvariantConfig) -> ScanReport {
        let points: Vec<PointValue> = self
            .points
            .par_iter()
            .map(|p| {
                let outcome = self
                    .specialize_payload(p)
                    .and_then(|payload| evaluate(&payload, kind, cfg));
                PointValue {
                    point: self.render_point(p),
                    value: outcome.as_ref().ok().cloned(),
                    error: outcome.err().map(|e| e.to_string()),
                }
            })
            .collect();
        let dir = direction(kind, &self.payload);
        let generic = self.pseudo_generic(kind, cfg);
        let verdicts = points
            .iter()
            .map(|p| PointVerdict {
                point: p.point.clone(),
                verdict: judge(dir, p.value.as_ref(), generic.value.as_ref()),
            })
            .collect();
        let mut assumed = Vec::new();
        if dir == Direction::UpperLex {
            assumed.push("fibers equidimensional of one dimension with ht I(p) > 0".into());
        }
        ScanReport {
            kind: kind.name(),
            direction: dir,
            points,
            generic,
            verdicts,
            assumed,
        }
    }

    /// Value at `trials` random points, combined in the direction the
    /// invariant may jump: the minimum for upper semicontinuous invariants,
    /// the maximum for lower ones, the most frequent value otherwise.
    pub fn pseudo_generic(&self, kind: &ScanKind, cfg: &InvariantConfig) -> Consensus {
        let field = self.fiber_ring.field();
        let nparams = self.param_names().len();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
        let draws: Vec<Vec<F::Elem>> = (0..self.trials)
            .map(|_| {
                (0..nparams)
                    .map(|_| field.random_nonzero(&mut rng, cfg.coeff_bound))
                    .collect()
            })
            .collect();
        let results: Vec<Result<Value>> = draws
            .par_iter()
            .map(|p| {
                self.specialize_payload(p)
                    .and_then(|payload| evaluate(&payload, kind, cfg))
            })
            .collect();
        let values: Vec<Value> = results.iter().filter_map(|r| r.as_ref().ok().cloned()).collect();
        let failed_trials = results.len() - values.len();
        let dir = direction(kind, &self.payload);
        let agree = values
            .iter()
            .enumerate()
            .any(|(i, a)| values[i + 1..].iter().any(|b| a == b));
        if !agree {
            return Consensus {
                value: None,
                trials: self.trials,
                disagreements: values.len(),
                failed_trials,
                note: "inconclusive: no two trials agree".into(),
            };
        }
        let value = combine(dir, &values);
        let disagreements = values.iter().filter(|v| Some(*v) != value.as_ref()).count();
        let note = match dir {
            Direction::Upper => "minimum over trials",
            Direction::Lower => "maximum over trials",
            Direction::UpperLex => "lexicographic minimum over trials",
            Direction::NotGoverned => "most frequent value over trials",
        };
        Consensus {
            value,
            trials: self.trials,
            disagreements,
            failed_trials,
            note: note.into(),
        }
    }
}

fn combine(dir: Direction, values: &[Value]) -> Option<Value> {
    match dir {
        Direction::Upper => values
            .iter()
            .min_by(|a, b| a.scalar_cmp(b).unwrap_or(Ordering::Equal))
            .cloned(),
        Direction::Lower => match &values[0] {
            Value::Sequence(first) => {
                let mut best = first.clone();
                for v in values {
                    if let Value::Sequence(s) = v {
                        for (b, x) in best.iter_mut().zip(s) {
                            *b = (*b).max(*x);
                        }
                    }
                }
                Some(Value::Sequence(best))
            }
            _ => values
                .iter()
                .max_by(|a, b| a.scalar_cmp(b).unwrap_or(Ordering::Equal))
                .cloned(),
        },
        Direction::UpperLex => values
            .iter()
            .min_by(|a, b| lex_key(a).cmp(&lex_key(b)))
            .cloned(),
        Direction::NotGoverned => {
            let mut best: Option<(&Value, usize)> = None;
            for v in values {
                let n = values.iter().filter(|w| *w == v).count();
                if best.is_none_or(|(_, m)| n > m) {
                    best = Some((v, n));
                }
            }
            best.map(|(v, _)| v.clone())
        }
    }
}

/// `c_1..c_d` of a Segre sequence.
fn lex_key(v: &Value) -> Vec<u64> {
    match v {
        Value::Sequence(s) => s.iter().skip(1).copied().collect(),
        _ => Vec::new(),
    }
}

fn judge(dir: Direction, value: Option<&Value>, generic: Option<&Value>) -> Verdict {
    let (Some(v), Some(g)) = (value, generic) else {
        return Verdict::Skipped;
    };
    if dir == Direction::NotGoverned {
        return if v == g { Verdict::Equal } else { Verdict::NotGoverned };
    }
    if v == g {
        return Verdict::Equal;
    }
    let ok = match dir {
        Direction::Upper => v.scalar_cmp(g) == Some(Ordering::Greater),
        Direction::UpperLex => lex_key(v) > lex_key(g),
        Direction::Lower => match (v, g) {
            (Value::Sequence(a), Value::Sequence(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
            }
            _ => v.scalar_cmp(g) == Some(Ordering::Less),
        },
        Direction::NotGoverned => unreachable!(),
    };
    if ok {
        Verdict::Consistent
    } else {
        Verdict::Violation
    }
}

fn as_map<F: Field>(payload: &Payload<F>) -> Result<RationalMap<F>> {
    match payload {
        Payload::Map(m) => Ok(m.clone()),
        Payload::Ideal(i) => RationalMap::new(i.ring(), i.gens().to_vec()),
    }
}

fn as_ideal<F: Field>(payload: &Payload<F>) -> Ideal<F> {
    match payload {
        Payload::Ideal(i) => i.clone(),
        Payload::Map(m) => m.base_ideal(),
    }
}

/// `e(n)` with the dimension conventions: finite when `|n|` is the degree of
/// the Hilbert polynomial, tagged otherwise.
pub fn tagged_mixed_multiplicity(hp: &HilbertPolynomial, n: &[usize]) -> Value {
    let total = n.iter().sum::<usize>() as i64;
    let d = hp.degree();
    match total.cmp(&d) {
        Ordering::Equal => Value::Finite(hp.coefficient(n) as u64),
        Ordering::Greater => Value::ZeroByDimension,
        Ordering::Less => Value::InfiniteByDimension,
    }
}

/// One invariant of a parameter-free payload.
pub fn evaluate<F: Field>(payload: &Payload<F>, kind: &ScanKind, cfg: &InvariantConfig) -> Result<Value> {
    match kind {
        ScanKind::MixedMult(n) | ScanKind::Multidegree(n) => {
            let hp = match payload {
                Payload::Ideal(i) => HilbertPolynomial::of_quotient(i)?,
                Payload::Map(m) => {
                    let (_, j) = rees_ideal(&m.base_ideal());
                    HilbertPolynomial::of_quotient(&j)?
                }
            };
            let rank = match payload {
                Payload::Ideal(i) => i.ring().grading_rank(),
                Payload::Map(_) => 2,
            };
            if n.len() != rank {
                return Err(Error::Session(format!(
                    "multi-index of length {} for a grading of rank {rank}",
                    n.len()
                )));
            }
            Ok(tagged_mixed_multiplicity(&hp, n))
        }
        ScanKind::DegImage => Ok(Value::Finite(as_map(payload)?.deg_image()?)),
        ScanKind::ProjDegrees => Ok(Value::Sequence(as_map(payload)?.projective_degrees(cfg)?)),
        ScanKind::MapDegree => Ok(Value::Finite(as_map(payload)?.map_degree(cfg)?)),
        ScanKind::JMult => Ok(Value::Finite(as_map(payload)?.j_multiplicity(cfg)?)),
        ScanKind::SegreSeq => Ok(Value::Sequence(invariant_table(&as_ideal(payload), cfg)?.c)),
        ScanKind::PolarSeq => Ok(Value::Sequence(invariant_table(&as_ideal(payload), cfg)?.m)),
        ScanKind::NuSeq => Ok(Value::Sequence(invariant_table(&as_ideal(payload), cfg)?.nu)),
    }
}

/// The scan kinds a `report` runs for a payload.
pub fn default_kinds<F: Field>(payload: &Payload<F>) -> Vec<ScanKind> {
    match payload {
        Payload::Ideal(_) => vec![ScanKind::SegreSeq, ScanKind::PolarSeq, ScanKind::NuSeq],
        Payload::Map(_) => vec![
            ScanKind::ProjDegrees,
            ScanKind::DegImage,
            ScanKind::MapDegree,
            ScanKind::JMult,
        ],
    }
}

/// Scans every default kind of the payload.
pub fn semicontinuity_report<F: Field>(scenario: &FamilyScenario<F>, cfg: &InvariantConfig) -> Vec<ScanReport> {
    default_kinds(&scenario.payload)
        .iter()
        .map(|k| scenario.scan(k, cfg))
        .collect()
}

#[cfg(test)]
mod tests;
