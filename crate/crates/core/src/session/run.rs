//! Executing a parsed session into a report.

use std::collections::HashMap;
use std::fmt::Write;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::ast::*;
use super::eval::eval_expr;
use super::printer::print_stmt;
use crate::error::{Error, Result};
use crate::family::{semicontinuity_report, FamilyScenario, Payload, ScanReport};
use crate::groebner::GbStore;
use crate::hilbert::HilbertPolynomial;
use crate::intdep::{lex_dominance, polar_nu_criterion, psid_hypotheses, segre_criterion, CriterionVerdict};
use crate::invariants::{invariant_table, order, InvariantConfig, InvariantTable};
use crate::ratmap::RationalMap;
use crate::ring::{Field, Ideal, PolyRing, PrimeField, Rationals};

#[derive(Clone)]
#[derive(Default)]
pub struct RunConfig {
    /// Replaces the field of every ring declaration when set.
    pub field: Option<FieldSpec>,
    pub invariants: InvariantConfig,
    pub store: Option<Arc<dyn GbStore>>,
}


#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Meta {
    pub field: String,
    pub seed: u64,
    pub retries: usize,
    pub coeff_bound: u64,
    pub hs_window: usize,
    pub hs_cap: usize,
    /// A Hilbert–Samuel stabilization came within two windows of the cap.
    pub caps_touched: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub command: String,
    pub input: String,
    pub result: Value,
    pub meta: Meta,
    #[serde(skip)]
    pub failed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| e.failed).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are plain JSON");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(out, "> {}", e.input);
            match &e.result {
                Value::Object(map) => {
                    for (k, v) in map {
                        let _ = writeln!(out, "  {k}: {}", render(v));
                    }
                }
                v => {
                    let _ = writeln!(out, "  {}", render(v));
                }
            }
        }
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => format!(
            "({})",
            items.iter().map(render).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

fn field_name(spec: &FieldSpec) -> String {
    match spec {
        FieldSpec::Rationals => "qq".into(),
        FieldSpec::Prime(p) => format!("gf:{p}"),
    }
}

struct Scope<F: Field> {
    field: F,
    rings: HashMap<String, Arc<PolyRing<F>>>,
    ideals: HashMap<String, Ideal<F>>,
    maps: HashMap<String, RationalMap<F>>,
    families: HashMap<String, FamilyScenario<F>>,
}

impl<F: Field> Scope<F> {
    fn new(field: F) -> Self {
        Scope {
            field,
            rings: HashMap::new(),
            ideals: HashMap::new(),
            maps: HashMap::new(),
            families: HashMap::new(),
        }
    }

    fn ring(&self, name: &str) -> Result<&Arc<PolyRing<F>>> {
        self.rings
            .get(name)
            .ok_or_else(|| Error::Session(format!("ring '{name}' is unavailable after an earlier error")))
    }

    fn ideal(&self, name: &str) -> Result<&Ideal<F>> {
        self.ideals
            .get(name)
            .ok_or_else(|| Error::Session(format!("'{name}' is unavailable after an earlier error")))
    }

    fn map_like(&self, name: &str) -> Result<RationalMap<F>> {
        if let Some(m) = self.maps.get(name) {
            return Ok(m.clone());
        }
        let i = self.ideal(name)?;
        RationalMap::new(i.ring(), i.gens().to_vec())
    }

    fn declare_ring(&mut self, d: &RingDecl, store: &Option<Arc<dyn GbStore>>) -> Result<()> {
        let mut b = PolyRing::builder(self.field.clone())
            .parameters(&d.params)
            .store(store.clone());
        for block in &d.blocks {
            b = b.block(block);
        }
        let mut ring = b.build();
        if !d.modulus.is_empty() {
            let rel = d
                .modulus
                .iter()
                .map(|e| eval_expr(&ring, e))
                .collect::<Result<Vec<_>>>()?;
            ring = ring.quotient(&rel);
        }
        self.rings.insert(d.name.clone(), ring);
        Ok(())
    }

    fn declare_poly(&mut self, d: &PolyDecl) -> Result<()> {
        let ring = Arc::clone(self.ring(&d.ring)?);
        let polys = d
            .polys
            .iter()
            .map(|e| eval_expr(&ring, e))
            .collect::<Result<Vec<_>>>()?;
        match d.kind {
            PayloadKind::Ideal => {
                self.ideals.insert(d.name.clone(), Ideal::new(&ring, polys));
            }
            PayloadKind::Map => {
                self.maps.insert(d.name.clone(), RationalMap::new(&ring, polys)?);
            }
        }
        Ok(())
    }

    fn declare_family(&mut self, d: &FamilyDecl) -> Result<()> {
        let ring = Arc::clone(self.ring(&d.ring)?);
        let polys = d
            .polys
            .iter()
            .map(|e| eval_expr(&ring, e))
            .collect::<Result<Vec<_>>>()?;
        let payload = match d.kind {
            PayloadKind::Ideal => Payload::Ideal(Ideal::new(&ring, polys)),
            PayloadKind::Map => Payload::Map(RationalMap::new(&ring, polys)?),
        };
        let points = d
            .points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|r| self.field.from_fraction(&r.num, &r.den))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let fam = FamilyScenario::new(payload, points, d.trials.unwrap_or(5))?;
        self.families.insert(d.name.clone(), fam);
        Ok(())
    }

    fn command(&self, c: &Command, cfg: &InvariantConfig, caps: &mut bool) -> Result<Value> {
        let arg = |k: usize| c.args[k].as_str();
        let mut note_table = |t: &InvariantTable| *caps |= t.certification.near_cap;
        Ok(match c.kind {
            CmdKind::Order => json!({ "order": order(self.ideal(arg(0))?)? }),
            CmdKind::Segre | CmdKind::Polar | CmdKind::Nu | CmdKind::Table => {
                let t = invariant_table(self.ideal(arg(0))?, cfg)?;
                note_table(&t);
                let certified = json!(t.certification);
                match c.kind {
                    CmdKind::Segre => json!({ "c": t.c, "certified": certified }),
                    CmdKind::Polar => json!({ "m": t.m, "certified": certified }),
                    CmdKind::Nu => json!({ "nu": t.nu, "certified": certified }),
                    _ => json!({
                        "order": t.order,
                        "m": t.m,
                        "c": t.c,
                        "nu": t.nu,
                        "gparam_generic": t.gparam_generic,
                        "certified": certified,
                    }),
                }
            }
            CmdKind::Multideg => {
                let hp = HilbertPolynomial::of_quotient(self.ideal(arg(0))?)?;
                let entries: Vec<Value> = hp
                    .mixed_multiplicities()
                    .into_iter()
                    .map(|(n, e)| json!({ "n": n, "e": e as i64 }))
                    .collect();
                json!({ "multidegree": entries })
            }
            CmdKind::Projdeg => json!({ "d": self.map_like(arg(0))?.projective_degrees(cfg)? }),
            CmdKind::Degim => json!({ "deg_image": self.map_like(arg(0))?.deg_image()? }),
            CmdKind::Mapdeg => json!({ "map_degree": self.map_like(arg(0))?.map_degree(cfg)? }),
            CmdKind::Jmult => json!({ "j": self.map_like(arg(0))?.j_multiplicity(cfg)? }),
            CmdKind::Intdep => {
                let (i, j) = (self.ideal(arg(0))?, self.ideal(arg(1))?);
                let segre = segre_criterion(i, j, cfg)?;
                let others = [polar_nu_criterion(i, j, cfg)?, lex_dominance(i, j, cfg)?];
                for v in std::iter::once(&segre).chain(&others) {
                    v.evidence.iter().for_each(|e| note_table(&e.table));
                }
                json!({
                    "verdict": segre.conclusion.name(),
                    "reasons": segre.reasons,
                    "criteria": std::iter::once(&segre).chain(&others).map(summary).collect::<Vec<_>>(),
                })
            }
            CmdKind::Psid => {
                let i = self.ideal(arg(0))?;
                let t = eval_expr(i.ring(), c.poly.as_ref().expect("psid carries a polynomial"))?;
                let v = psid_hypotheses(i, &t, cfg)?;
                v.evidence.iter().for_each(|e| note_table(&e.table));
                json!({
                    "verdict": v.conclusion.name(),
                    "reasons": v.reasons,
                    "c": v.evidence.iter().map(|e| json!({ "ring": e.label, "c": e.table.c })).collect::<Vec<_>>(),
                })
            }
            CmdKind::Scan | CmdKind::Report => {
                let fam = self
                    .families
                    .get(arg(0))
                    .ok_or_else(|| Error::Session(format!("'{}' is unavailable after an earlier error", arg(0))))?;
                let reports = match &c.scan {
                    Some(kind) => vec![fam.scan(kind, cfg)],
                    None => semicontinuity_report(fam, cfg),
                };
                let violations: usize = reports.iter().map(ScanReport::violations).sum();
                if c.kind == CmdKind::Report {
                    json!({
                        "verdict": if violations == 0 { "no-violation" } else { "violation" },
                        "reasons": reports.iter().flat_map(|r| r.assumed.iter().map(|a| format!("assumed: {a}"))).collect::<Vec<_>>(),
                        "scans": reports,
                    })
                } else {
                    json!({ "scans": reports })
                }
            }
        })
    }
}

fn summary(v: &CriterionVerdict) -> Value {
    json!({
        "criterion": v.criterion.name(),
        "applicable": v.applicable,
        "conclusion": v.conclusion.name(),
        "reasons": v.reasons,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Tag {
    Q,
    P(u64),
}

struct Runner {
    q: Scope<Rationals>,
    p: HashMap<u64, Scope<PrimeField>>,
    tags: HashMap<String, Tag>,
}

macro_rules! with_scope {
    ($self:ident, $tag:expr, $s:ident => $body:expr) => {
        match $tag {
            Tag::Q => {
                let $s = &mut $self.q;
                $body
            }
            Tag::P(p) => {
                let $s = $self.p.get_mut(&p).expect("scope exists for every declared prime");
                $body
            }
        }
    };
}

impl Runner {
    fn tag_of(&self, name: &str) -> Result<Tag> {
        self.tags
            .get(name)
            .copied()
            .ok_or_else(|| Error::Session(format!("'{name}' is unavailable after an earlier error")))
    }

    fn ring_tag(&mut self, spec: &FieldSpec) -> Result<Tag> {
        Ok(match spec {
            FieldSpec::Rationals => Tag::Q,
            FieldSpec::Prime(p) => {
                if !self.p.contains_key(p) {
                    self.p.insert(*p, Scope::new(PrimeField::new(*p)?));
                }
                Tag::P(*p)
            }
        })
    }
}

/// Runs every statement in order. Failures are recorded per entry; a
/// failed declaration makes later uses of its name fail too.
pub fn run(session: &Session, cfg: &RunConfig) -> Report {
    let mut runner = Runner {
        q: Scope::new(Rationals),
        p: HashMap::new(),
        tags: HashMap::new(),
    };
    let mut report = Report::default();
    let inv = &cfg.invariants;
    for stmt in &session.stmts {
        let mut input = String::new();
        print_stmt(&mut input, stmt);
        let mut caps = false;
        let (command, field, outcome): (String, String, Result<Value>) = match stmt {
            Stmt::Ring(d) => {
                let spec = cfg.field.clone().unwrap_or_else(|| d.field.clone());
                let outcome = runner.ring_tag(&spec).and_then(|tag| {
                    with_scope!(runner, tag, s => s.declare_ring(d, &cfg.store))?;
                    runner.tags.insert(d.name.clone(), tag);
                    Ok(Value::Null)
                });
                ("ring".into(), field_name(&spec), outcome)
            }
            Stmt::Poly(d) => {
                let outcome = runner.tag_of(&d.ring).and_then(|tag| {
                    with_scope!(runner, tag, s => s.declare_poly(d))?;
                    runner.tags.insert(d.name.clone(), tag);
                    Ok(Value::Null)
                });
                (d.kind.keyword().into(), tag_name(runner.tags.get(&d.ring)), outcome)
            }
            Stmt::Family(d) => {
                let outcome = runner.tag_of(&d.ring).and_then(|tag| {
                    with_scope!(runner, tag, s => s.declare_family(d))?;
                    runner.tags.insert(d.name.clone(), tag);
                    Ok(Value::Null)
                });
                ("family".into(), tag_name(runner.tags.get(&d.ring)), outcome)
            }
            Stmt::Cmd(c) => {
                let outcome = runner
                    .tag_of(&c.args[0])
                    .and_then(|tag| with_scope!(runner, tag, s => s.command(c, inv, &mut caps)));
                if let Err(Error::NonStabilization { .. }) = &outcome {
                    caps = true;
                }
                (c.kind.keyword().into(), tag_name(runner.tags.get(&c.args[0])), outcome)
            }
        };
        let declaration = matches!(stmt, Stmt::Ring(_) | Stmt::Poly(_) | Stmt::Family(_));
        let (result, failed) = match outcome {
            Ok(_) if declaration => continue,
            Ok(v) => (v, false),
            Err(e) => (json!({ "error": e.to_string() }), true),
        };
        report.entries.push(Entry {
            command,
            input,
            result,
            meta: Meta {
                field,
                seed: inv.seed,
                retries: inv.retries,
                coeff_bound: inv.coeff_bound,
                hs_window: inv.hs.window,
                hs_cap: inv.hs.cap,
                caps_touched: caps,
            },
            failed,
        });
    }
    report
}

fn tag_name(tag: Option<&Tag>) -> String {
    match tag {
        Some(Tag::Q) => "qq".into(),
        Some(Tag::P(p)) => format!("gf:{p}"),
        None => "unknown".into(),
    }
}
