//! Numerical criteria for integral dependence of a pair `I ⊆ J`.
//!
//! The Segre criterion is authoritative: equal multiplicity sequences mean
//! `J` is integral over `I`. Polar multiplicities and `ν` decide only after
//! two hypothesis gates; without them they can miss a non-integral pair.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{invariant_table, InvariantConfig, InvariantTable};
use crate::ring::{Field, Ideal, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    Segre,
    PolarNu,
    LexDominance,
    PsidHypotheses,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::Segre => "segre",
            Criterion::PolarNu => "polar-nu",
            Criterion::LexDominance => "lex-dominance",
            Criterion::PsidHypotheses => "psid-hypotheses",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    Integral,
    NotIntegral,
    Inconclusive,
    /// The checked statement holds (lex dominance, PSID hypotheses).
    Holds,
    /// The checked statement fails.
    Fails,
}

impl Conclusion {
    pub fn name(self) -> &'static str {
        match self {
            Conclusion::Integral => "integral",
            Conclusion::NotIntegral => "not-integral",
            Conclusion::Inconclusive => "inconclusive",
            Conclusion::Holds => "holds",
            Conclusion::Fails => "fails",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub label: String,
    pub table: InvariantTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    pub criterion: Criterion,
    pub applicable: bool,
    pub reasons: Vec<String>,
    pub conclusion: Conclusion,
    pub evidence: Vec<Evidence>,
}

impl CriterionVerdict {
    fn inapplicable(criterion: Criterion, reasons: Vec<String>, evidence: Vec<Evidence>) -> Self {
        CriterionVerdict {
            criterion,
            applicable: false,
            reasons,
            conclusion: Conclusion::Inconclusive,
            evidence,
        }
    }
}

/// `I ⊆ J`: every generator of `I` reduces to zero modulo `J`.
pub fn contains<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<bool> {
    i.check_ring(j)?;
    Ok(j.contains_ideal(i))
}

/// Tables of both ideals, or the reason certification failed.
fn tables<F: Field>(
    i: &Ideal<F>,
    j: &Ideal<F>,
    cfg: &InvariantConfig,
) -> Result<std::result::Result<(InvariantTable, InvariantTable), String>> {
    let mut out = Vec::with_capacity(2);
    for ideal in [i, j] {
        match invariant_table(ideal, cfg) {
            Ok(t) => out.push(t),
            Err(e @ (Error::GenericityFailure { .. } | Error::NonStabilization { .. } | Error::Inconsistent(_))) => {
                return Ok(Err(e.to_string()))
            }
            Err(e) => return Err(e),
        }
    }
    let tj = out.pop().unwrap();
    let ti = out.pop().unwrap();
    Ok(Ok((ti, tj)))
}

fn evidence(ti: &InvariantTable, tj: &InvariantTable) -> Vec<Evidence> {
    vec![
        Evidence {
            label: "I".into(),
            table: ti.clone(),
        },
        Evidence {
            label: "J".into(),
            table: tj.clone(),
        },
    ]
}

const NOT_CONTAINED: &str = "I is not contained in J";

/// Equal Segre sequences if and only if `J` is integral over `I`. The ring
/// is assumed equidimensional and universally catenary.
pub fn segre_criterion<F: Field>(i: &Ideal<F>, j: &Ideal<F>, cfg: &InvariantConfig) -> Result<CriterionVerdict> {
    let crit = Criterion::Segre;
    if !contains(i, j)? {
        return Ok(CriterionVerdict::inapplicable(crit, vec![NOT_CONTAINED.into()], vec![]));
    }
    let mut reasons = vec![
        "I ⊆ J".to_string(),
        "assumed: R equidimensional and universally catenary".to_string(),
    ];
    let (ti, tj) = match tables(i, j, cfg)? {
        Ok(t) => t,
        Err(why) => {
            reasons.push(format!("certification failed: {why}"));
            return Ok(CriterionVerdict {
                criterion: crit,
                applicable: true,
                reasons,
                conclusion: Conclusion::Inconclusive,
                evidence: vec![],
            });
        }
    };
    let conclusion = if ti.c == tj.c {
        reasons.push(format!("c(I) = c(J) = {:?}: criterion equivalence", ti.c));
        Conclusion::Integral
    } else {
        reasons.push(format!(
            "c(I) = {:?} differs from c(J) = {:?}: necessary-condition failure",
            ti.c, tj.c
        ));
        Conclusion::NotIntegral
    };
    Ok(CriterionVerdict {
        criterion: crit,
        applicable: true,
        reasons,
        conclusion,
        evidence: evidence(&ti, &tj),
    })
}

/// Polar multiplicities and `ν`, behind the gates `o(I) = o(J)` and the
/// 𝒢-parameter condition on `I`.
pub fn polar_nu_criterion<F: Field>(i: &Ideal<F>, j: &Ideal<F>, cfg: &InvariantConfig) -> Result<CriterionVerdict> {
    let crit = Criterion::PolarNu;
    if !contains(i, j)? {
        return Ok(CriterionVerdict::inapplicable(crit, vec![NOT_CONTAINED.into()], vec![]));
    }
    let (ti, tj) = match tables(i, j, cfg)? {
        Ok(t) => t,
        Err(why) => {
            return Ok(CriterionVerdict::inapplicable(
                crit,
                vec![format!("certification failed: {why}")],
                vec![],
            ))
        }
    };
    let ev = evidence(&ti, &tj);
    let mut gates = Vec::new();
    if ti.order != tj.order {
        gates.push(format!("gate (a) fails: o(I) = {} but o(J) = {}", ti.order, tj.order));
    }
    if !ti.gparam_generic {
        let k = (1..=ti.dim)
            .find(|&k| ti.order * ti.m[k - 1] != ti.nu[k])
            .unwrap_or(1);
        gates.push(format!(
            "gate (b) fails: I is not a 𝒢-parameter ideal generically ({}·m_{} = {} but ν_{k} = {})",
            ti.order,
            k - 1,
            ti.order * ti.m[k - 1],
            ti.nu[k]
        ));
    }
    if !gates.is_empty() {
        return Ok(CriterionVerdict::inapplicable(crit, gates, ev));
    }
    let d = ti.dim;
    let m_equal = ti.m[..d] == tj.m[..d];
    let nu_equal = ti.nu == tj.nu;
    let mut reasons = vec![
        "I ⊆ J".to_string(),
        format!("gate (a): o(I) = o(J) = {}", ti.order),
        "gate (b): I is a 𝒢-parameter ideal generically".to_string(),
    ];
    let conclusion = match (m_equal, nu_equal) {
        (true, true) => {
            reasons.push("m_i and ν_i agree".into());
            Conclusion::Integral
        }
        (false, false) => {
            reasons.push(format!(
                "m(I) = {:?}, m(J) = {:?}; ν(I) = {:?}, ν(J) = {:?}",
                ti.m, tj.m, ti.nu, tj.nu
            ));
            Conclusion::NotIntegral
        }
        _ => {
            reasons.push("m and ν comparisons disagree".into());
            Conclusion::Inconclusive
        }
    };
    Ok(CriterionVerdict {
        criterion: crit,
        applicable: true,
        reasons,
        conclusion,
        evidence: ev,
    })
}

/// `c(I) ≥_lex c(J)` for `I ⊆ J`; a failure is a defect certificate.
pub fn lex_dominance<F: Field>(i: &Ideal<F>, j: &Ideal<F>, cfg: &InvariantConfig) -> Result<CriterionVerdict> {
    let crit = Criterion::LexDominance;
    if !contains(i, j)? {
        return Ok(CriterionVerdict::inapplicable(crit, vec![NOT_CONTAINED.into()], vec![]));
    }
    let (ti, tj) = match tables(i, j, cfg)? {
        Ok(t) => t,
        Err(why) => {
            return Ok(CriterionVerdict::inapplicable(
                crit,
                vec![format!("certification failed: {why}")],
                vec![],
            ))
        }
    };
    let (conclusion, reason) = match ti.c.cmp(&tj.c) {
        std::cmp::Ordering::Equal => (Conclusion::Holds, format!("c(I) = c(J) = {:?}", ti.c)),
        std::cmp::Ordering::Greater => (Conclusion::Holds, format!("{:?} >lex {:?}", ti.c, tj.c)),
        std::cmp::Ordering::Less => (
            Conclusion::Fails,
            format!("defect: {:?} <lex {:?} for nested ideals", ti.c, tj.c),
        ),
    };
    Ok(CriterionVerdict {
        criterion: crit,
        applicable: true,
        reasons: vec![reason],
        conclusion,
        evidence: evidence(&ti, &tj),
    })
}

/// Hypotheses of specialization of integral dependence along `t`:
/// `ht(I, t) ≥ 2` and `c_i(I, R/tR) = c_i(I, R)` for `1 ≤ i ≤ d - 1`.
pub fn psid_hypotheses<F: Field>(i: &Ideal<F>, t: &Poly<F::Elem>, cfg: &InvariantConfig) -> Result<CriterionVerdict> {
    let crit = Criterion::PsidHypotheses;
    let ring = i.ring();
    let d = Ideal::zero(ring).krull_dim();
    if t.is_zero() || t.terms().iter().any(|(m, _)| m.is_one()) {
        return Ok(CriterionVerdict::inapplicable(
            crit,
            vec!["t is not in the maximal ideal of the origin".into()],
            vec![],
        ));
    }
    let tr = Ideal::new(ring, vec![t.clone()]);
    let dim_t = tr.krull_dim();
    if dim_t != d - 1 {
        return Ok(CriterionVerdict::inapplicable(
            crit,
            vec![format!("dim R/tR = {dim_t}, expected {}", d - 1)],
            vec![],
        ));
    }
    let height = d - i.with(t.clone()).krull_dim();
    let mut reasons = vec![format!("dim R/tR = {dim_t}"), format!("ht(I, t) = {height}")];
    let mut modulus = ring.modulus().to_vec();
    modulus.push(t.clone());
    let cut_ring = ring.quotient(&modulus);
    let cut = Ideal::new(
        &cut_ring,
        i.gens().iter().map(|g| cut_ring.convert(ring, g)).collect(),
    );
    let certified = invariant_table(i, cfg).and_then(|a| Ok((a, invariant_table(&cut, cfg)?)));
    let (full, special) = match certified {
        Ok(pair) => pair,
        Err(Error::ZeroIdeal | Error::UnitIdeal) if height < 2 => {
            reasons.push("ht(I, t) < 2".into());
            reasons.push("I has no Segre sequence on R/tR".into());
            return Ok(CriterionVerdict {
                criterion: crit,
                applicable: true,
                reasons,
                conclusion: Conclusion::Fails,
                evidence: vec![],
            });
        }
        Err(e @ (Error::GenericityFailure { .. } | Error::NonStabilization { .. } | Error::Inconsistent(_))) => {
            reasons.push(format!("certification failed: {e}"));
            return Ok(CriterionVerdict {
                criterion: crit,
                applicable: true,
                reasons,
                conclusion: Conclusion::Inconclusive,
                evidence: vec![],
            });
        }
        Err(e) => return Err(e),
    };
    let d = full.dim;
    let mismatched: Vec<usize> = (1..d).filter(|&k| full.c[k] != special.c[k]).collect();
    let mut holds = true;
    if height < 2 {
        holds = false;
        reasons.push("ht(I, t) < 2".into());
    }
    if mismatched.is_empty() {
        reasons.push(format!("c_i(I, R/tR) = c_i(I, R) for 1 ≤ i ≤ {}", d - 1));
    } else {
        holds = false;
        reasons.extend(mismatched.iter().map(|&k| {
            format!("c_{k}(I, R/tR) = {} but c_{k}(I, R) = {}", special.c[k], full.c[k])
        }));
    }
    Ok(CriterionVerdict {
        criterion: crit,
        applicable: true,
        reasons,
        conclusion: if holds { Conclusion::Holds } else { Conclusion::Fails },
        evidence: vec![
            Evidence {
                label: "R".into(),
                table: full,
            },
            Evidence {
                label: "R/tR".into(),
                table: special,
            },
        ],
    })
}
