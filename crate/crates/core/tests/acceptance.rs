//! One line per acceptance criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use segrelab::family::{FamilyScenario, Payload, Value};
use segrelab::groebner::{kernel_of_map, DiskStore, GbStore};
use segrelab::intdep::{lex_dominance, polar_nu_criterion, segre_criterion, Conclusion};
use segrelab::invariants::{gparam_check, invariant_table, kleiman_thorup_oracle, InvariantConfig, InvariantTable};
use segrelab::ratmap::RationalMap;
use segrelab::session::{parse_session, run, RunConfig, ScanKind};
use segrelab::{Field, Ideal, PolyRing, PrimeField, Rationals};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfg(seed: u64) -> InvariantConfig {
    InvariantConfig {
        seed,
        ..InvariantConfig::default()
    }
}

fn table<F: Field>(ring: &Arc<PolyRing<F>>, gens: &[&str], seed: u64) -> Result<InvariantTable, String> {
    let i = Ideal::parse(ring, gens).map_err(|e| e.to_string())?;
    invariant_table(&i, &cfg(seed)).map_err(|e| e.to_string())
}

fn expect_table(t: &InvariantTable, c: &[u64], m: &[u64], nu: &[u64], what: &str) -> Result<(), String> {
    ensure(t.c == c && t.m == m && t.nu == nu, || {
        format!("{what}: c {:?} m {:?} ν {:?}", t.c, t.m, t.nu)
    })
}

fn gf(vars: &[&str]) -> Arc<PolyRing<PrimeField>> {
    PolyRing::new(PrimeField::default(), vars)
}

fn quartic() -> Arc<PolyRing<PrimeField>> {
    let src = gf(&["x0", "x1", "x2", "x3"]);
    let tgt = gf(&["s", "t"]);
    let images: Vec<_> = ["s^4", "s^3*t", "s*t^3", "t^4"]
        .iter()
        .map(|f| tgt.parse(f).unwrap())
        .collect();
    let p = kernel_of_map(&src, &tgt, &images).unwrap();
    src.quotient(p.gens())
}

const PLANE_I: [&str; 2] = ["x0^2", "x0*x1^2"];
const PLANE_J: [&str; 2] = ["x0^2", "x0*x1"];
const QUARTIC_I: [&str; 3] = ["x0^2", "x0*x2*x3", "x1^2*x3^2"];
const QUARTIC_J: [&str; 4] = ["x0^2", "x0*x2", "x0*x3", "x1*x3^2"];

fn plane_tables() -> Check {
    let q = PolyRing::new(Rationals, &["x0", "x1"]);
    let p = gf(&["x0", "x1"]);
    for seed in [1, 2] {
        expect_table(&table(&q, &PLANE_I, seed)?, &[0, 1, 4], &[1, 1, 0], &[1, 2, 4], "I over QQ")?;
        expect_table(&table(&q, &PLANE_J, seed)?, &[0, 1, 2], &[1, 1, 0], &[1, 2, 2], "J over QQ")?;
        expect_table(&table(&p, &PLANE_I, seed)?, &[0, 1, 4], &[1, 1, 0], &[1, 2, 4], "I over GF(p)")?;
        expect_table(&table(&p, &PLANE_J, seed)?, &[0, 1, 2], &[1, 1, 0], &[1, 2, 2], "J over GF(p)")?;
    }
    Ok("both fields, two seeds".into())
}

fn quartic_tables() -> Check {
    let q = quartic();
    expect_table(&table(&q, &QUARTIC_I, 7)?, &[0, 5, 14], &[4, 3, 0], &[4, 8, 14], "I")?;
    expect_table(&table(&q, &QUARTIC_J, 7)?, &[0, 3, 14], &[4, 5, 0], &[4, 8, 14], "J")?;
    Ok("P by elimination".into())
}

fn gating() -> Check {
    let r = gf(&["x0", "x1"]);
    let q = quartic();
    let mut gates = Vec::new();
    for (ring, i, j, seed) in [(&r, &PLANE_I[..], &PLANE_J[..], 1), (&q, &QUARTIC_I[..], &QUARTIC_J[..], 7)] {
        let i = Ideal::parse(ring, i).unwrap();
        let j = Ideal::parse(ring, j).unwrap();
        let s = segre_criterion(&i, &j, &cfg(seed)).map_err(|e| e.to_string())?;
        ensure(s.conclusion == Conclusion::NotIntegral, || format!("segre: {:?}", s.conclusion))?;
        let p = polar_nu_criterion(&i, &j, &cfg(seed)).map_err(|e| e.to_string())?;
        ensure(p.conclusion == Conclusion::Inconclusive && !p.applicable, || {
            format!("polar-nu: {:?}", p.conclusion)
        })?;
        // o(I) = o(J) = 2 in both pairs, so the 𝒢-parameter gate is the blocking one
        ensure(p.reasons.len() == 1 && p.reasons[0].starts_with("gate (b)"), || {
            format!("gates: {:?}", p.reasons)
        })?;
        gates.push("(b)");
    }
    Ok(format!("segre not-integral twice; polar-nu blocked by gates {}", gates.join(", ")))
}

fn projective_degrees() -> Check {
    let plane = gf(&["x0", "x1", "x2"]);
    let cremona = RationalMap::parse(&plane, &["x1*x2", "x0*x2", "x0*x1"]).unwrap();
    let d = cremona.projective_degrees_checked(&cfg(3)).map_err(|e| e.to_string())?;
    ensure(d == [1, 2, 1], || format!("cremona {d:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let monos = ["x0^2", "x0*x1", "x1^2", "x0*x2", "x1*x2", "x2^2"];
    let forms: Vec<String> = (0..3)
        .map(|_| {
            monos
                .iter()
                .map(|m| format!("{}*{m}", rng.gen_range(1..1000)))
                .collect::<Vec<_>>()
                .join(" + ")
        })
        .collect();
    let conics = RationalMap::parse(&plane, &forms).unwrap();
    let d = conics.projective_degrees_checked(&cfg(3)).map_err(|e| e.to_string())?;
    ensure(d == [4, 2, 1], || format!("conics {d:?}"))?;
    Ok("cremona (1,2,1) on both paths, conics (4,2,1)".into())
}

const FOLD: [&str; 4] = [
    "x0^2*x1^2 + a*x0*x1^2*x2 - x0*x1*x2^2",
    "-x0^4 - a*x0^3*x2 + x0^2*x2^2",
    "x0^3*x1 - x0^2*x1^2",
    "x0^4 - x0^2*x1^2 + a*x0^3*x2 - a*x1^3*x2 - x0^2*x2^2 + x1^2*x2^2",
];
const TRIPLE: [&str; 3] = [
    "x0^3*x2 + x0*x1^3 + x1^3*x2",
    "x0^3*x2 - a*x1^2*x2^2",
    "-x0^2*x1*x2 - a*x0^2*x2^2 - a*x1^3*x2",
];

fn map_family(forms: &[&str], at: &[i64]) -> FamilyScenario<PrimeField> {
    let r = PolyRing::builder(PrimeField::default())
        .parameters(&["a"])
        .block(&["x0", "x1", "x2"])
        .build();
    let f = PrimeField::default();
    let points = at.iter().map(|&v| vec![f.from_i64(v)]).collect();
    FamilyScenario::new(Payload::Map(RationalMap::parse(&r, forms).unwrap()), points, 5).unwrap()
}

fn ideal_family(gens: &[&str], at: &[i64]) -> FamilyScenario<PrimeField> {
    let r = PolyRing::builder(PrimeField::default())
        .parameters(&["a"])
        .block(&["x0", "x1"])
        .build();
    let f = PrimeField::default();
    let points = at.iter().map(|&v| vec![f.from_i64(v)]).collect();
    FamilyScenario::new(Payload::Ideal(Ideal::parse(&r, gens).unwrap()), points, 5).unwrap()
}

fn values(fam: &FamilyScenario<PrimeField>, kind: &ScanKind) -> (Vec<Option<Value>>, Option<Value>) {
    let r = fam.scan(kind, &cfg(17));
    (r.points.into_iter().map(|p| p.value).collect(), r.generic.value)
}

fn map_degree_families() -> Check {
    let (at, generic) = values(&map_family(&FOLD, &[0]), &ScanKind::MapDegree);
    ensure(at == [Some(Value::Finite(2))] && generic == Some(Value::Finite(1)), || {
        format!("fold: {at:?}, generic {generic:?}")
    })?;
    let (at, _) = values(&map_family(&TRIPLE, &[0, 1, 2]), &ScanKind::MapDegree);
    let want: Vec<_> = [1, 3, 3].iter().map(|&n| Some(Value::Finite(n))).collect();
    ensure(at == want, || format!("triple: {at:?}"))?;
    Ok("fold: 2 at a=0, generic 1; triple: (1, 3, 3)".into())
}

/// Random ideal of `k[x0, x1]` with 2 or 3 generators of one or two terms.
fn random_ideal(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing<PrimeField>>) -> Ideal<PrimeField> {
    loop {
        let n = rng.gen_range(2..=3);
        let gens: Vec<String> = (0..n)
            .map(|_| {
                (0..rng.gen_range(1..=2))
                    .map(|_| {
                        let d = rng.gen_range(1..=4);
                        let a = rng.gen_range(0..=d);
                        format!("{}*x0^{a}*x1^{}", rng.gen_range(1..50), d - a)
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect();
        let i = Ideal::parse(ring, &gens).unwrap();
        if !i.is_zero() && !i.is_unit() {
            return i;
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng, deg: u32) -> String {
    (0..=deg)
        .map(|a| format!("{}*x0^{a}*x1^{}", rng.gen_range(1..100), deg - a))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn properties() -> Check {
    let ring = gf(&["x0", "x1"]);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let field = PrimeField::default();
    let mut count = 0;
    for k in 0..12 {
        let i = random_ideal(&mut rng, &ring);
        let t = invariant_table(&i, &cfg(k)).map_err(|e| format!("ideal {k}: {e}"))?;
        let d = t.dim;
        ensure(t.m[d] == 0, || format!("ideal {k}: m_d = {}", t.m[d]))?;
        for j in 1..=d {
            ensure(t.order * t.m[j - 1] <= t.nu[j], || format!("ideal {k}: δm_{} > ν_{j}", j - 1))?;
            ensure(t.nu[j] == t.m[j] + t.c[j], || format!("ideal {k}: ν_{j} ≠ m_{j} + c_{j}"))?;
        }
        // another presentation: reversed, scaled, plus a redundant combination
        let mut gens: Vec<_> = i.gens().iter().rev().map(|g| ring.scale(g, &field.from_i64(3))).collect();
        gens.push(ring.add(&i.gens()[0], &ring.mul(&ring.var(1), &i.gens()[1])));
        let t2 = invariant_table(&Ideal::new(&ring, gens), &cfg(k + 100)).map_err(|e| e.to_string())?;
        ensure(t.m == t2.m && t.c == t2.c && t.nu == t2.nu, || format!("ideal {k}: presentation changes the table"))?;
        // nested pair I ⊆ I + (x0^e)
        let bigger = i.with(ring.parse(&format!("x0^{}", rng.gen_range(1..=3))).unwrap());
        if !bigger.is_unit() {
            let l = lex_dominance(&i, &bigger, &cfg(k)).map_err(|e| e.to_string())?;
            ensure(l.conclusion == Conclusion::Holds, || format!("ideal {k}: {:?}", l.reasons))?;
        }
        count += 1;
    }
    for k in 0..10u64 {
        let deg = rng.gen_range(1..=3);
        let gens: Vec<String> = (0..rng.gen_range(2..=3)).map(|_| random_form(&mut rng, deg)).collect();
        let t = table(&ring, &gens.iter().map(String::as_str).collect::<Vec<_>>(), k)?;
        ensure(gparam_check(&t), || format!("equigenerated {k}: ν {:?} m {:?}", t.nu, t.m))?;
        count += 1;
    }
    Ok(format!("{count} random ideals"))
}

fn oracle() -> Check {
    let r = gf(&["x0", "x1"]);
    let cases: [&[&str]; 5] = [&PLANE_I, &PLANE_J, &["x0", "x1"], &["x0^2", "x1^2"], &["x0^2"]];
    for gens in cases {
        let i = Ideal::parse(&r, gens).unwrap();
        let o = kleiman_thorup_oracle(&i, 8, 8).map_err(|e| e.to_string())?;
        let t = invariant_table(&i, &cfg(1)).map_err(|e| e.to_string())?;
        let as_i64 = |v: &[u64]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
        ensure(o.stable && o.m == as_i64(&t.m) && o.c == as_i64(&t.c), || {
            format!("{gens:?}: oracle m {:?} c {:?}, table m {:?} c {:?}", o.m, o.c, t.m, t.c)
        })?;
    }
    let top = kleiman_thorup_oracle(&Ideal::parse(&r, &["x0^2", "x1^2"]).unwrap(), 8, 8).unwrap().c[2];
    ensure(top == 4, || format!("c_2 = {top}"))?;
    Ok("5 ideals on an 8x8 grid".into())
}

fn height_one() -> Check {
    let ring = gf(&["x0", "x1"]);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..10u64 {
        let (p, q) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let h = [random_form(&mut rng, p), random_form(&mut rng, q)];
        let hideal = Ideal::parse(&ring, &h).unwrap();
        if hideal.krull_dim() != 0 {
            return Err(format!("pair {k}: H has height below 2"));
        }
        let deg_a = rng.gen_range(1..=2);
        let a = random_form(&mut rng, deg_a);
        let gens: Vec<String> = h.iter().map(|f| format!("({a})*({f})")).collect();
        let t = table(&ring, &gens.iter().map(String::as_str).collect::<Vec<_>>(), k)?;
        let o = p.min(q) as u64;
        ensure(t.m[1] == o, || format!("pair {k}: m_1 = {} but o(H) = {o}", t.m[1]))?;
    }
    Ok("10 random pairs".into())
}

fn semicontinuity() -> Check {
    let mut scans = 0;
    let mut run_scans = |fam: FamilyScenario<PrimeField>, kinds: &[ScanKind]| -> Result<(), String> {
        for k in kinds {
            let r = fam.scan(k, &cfg(17));
            ensure(r.violations() == 0, || format!("{} violates {:?}: {:?}", r.kind, r.direction, r.points))?;
            ensure(r.generic.value.is_some(), || format!("{}: {}", r.kind, r.generic.note))?;
            scans += 1;
        }
        Ok(())
    };
    let map_kinds = [
        ScanKind::ProjDegrees,
        ScanKind::DegImage,
        ScanKind::JMult,
        ScanKind::MixedMult(vec![1, 1]),
    ];
    run_scans(map_family(&FOLD, &[0, 1, 2]), &map_kinds)?;
    run_scans(map_family(&TRIPLE, &[0, 1, 2]), &map_kinds)?;
    run_scans(
        map_family(&["x1*x2", "x0*x2", "x0*x1 + a*x2^2"], &[0, 1]),
        &map_kinds,
    )?;
    run_scans(
        ideal_family(&["x0^2", "x0*x1^2 + a*x0*x1"], &[0, 1, 2]),
        &[ScanKind::SegreSeq],
    )?;
    run_scans(
        ideal_family(&["x0^2 + a*x1^2", "x0*x1"], &[0, 1, 2]),
        &[ScanKind::SegreSeq, ScanKind::MixedMult(vec![0])],
    )?;
    Ok(format!("{scans} scans, no violation"))
}

fn determinism() -> Check {
    let text = "ring R = QQ[x0, x1];
        ideal I = (x0^2, x0*x1^2);
        ideal J = (x0^2, x0*x1);
        table I; table J; intdep I J;
        ring P = GF(32003)[x0, x1, x2];
        map F = (x1*x2, x0*x2, x0*x1);
        projdeg F; mapdeg F;
        ring S = GF(32003)[a | x0, x1];
        family G = ideal (x0^2, x0*x1^2 + a*x0*x1) at (0), (1) trials 3;
        report G;";
    let session = parse_session(text).map_err(|e| e.to_string())?;
    let dir = std::env::temp_dir().join(format!("segrelab-acceptance-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let go = |store: Option<Arc<dyn GbStore>>| {
        let cfg = RunConfig {
            field: None,
            invariants: cfg(99),
            store,
        };
        run(&session, &cfg).to_json()
    };
    let cold = Arc::new(DiskStore::new(&dir));
    let a = go(Some(cold.clone()));
    let warm = Arc::new(DiskStore::new(&dir));
    let b = go(Some(warm.clone()));
    let c = go(None);
    let _ = std::fs::remove_dir_all(&dir);
    ensure(warm.hits() > 0, || "warm run never hit the cache".into())?;
    ensure(a == b && b == c, || "reports differ".into())?;
    Ok(format!("{} bytes, {} warm hits", a.len(), warm.hits()))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("plane pair tables", 5, plane_tables),
        ("quartic pair tables", 60, quartic_tables),
        ("criterion gating", 90, gating),
        ("projective degrees", 30, projective_degrees),
        ("map degree families", 120, map_degree_families),
        ("property suite", 300, properties),
        ("oracle equivalence", 120, oracle),
        ("height-one cuts", 120, height_one),
        ("semicontinuity scans", 300, semicontinuity),
        ("determinism", 120, determinism),
    ];
    let mut failed = 0;
    for (n, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > Duration::from_secs(*limit) => Err(format!("{detail}, but over the {limit}s limit")),
            other => other,
        };
        let secs = took.as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s, limit {limit}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s, limit {limit}s)", n + 1);
            }
        }
    }
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
