use super::*;
use crate::ring::PrimeField;

fn cfg() -> InvariantConfig {
    InvariantConfig {
        seed: 17,
        ..InvariantConfig::default()
    }
}

fn ring(params: &[&str], coords: &[&str]) -> Arc<PolyRing<PrimeField>> {
    PolyRing::builder(PrimeField::default())
        .parameters(params)
        .block(coords)
        .build()
}

fn points(values: &[i64]) -> Vec<Vec<u64>> {
    let f = PrimeField::default();
    values.iter().map(|&v| vec![f.from_i64(v)]).collect()
}

fn map_family(forms: &[&str], at: &[i64]) -> FamilyScenario<PrimeField> {
    let r = ring(&["a"], &["x0", "x1", "x2"]);
    let map = RationalMap::parse(&r, forms).unwrap();
    FamilyScenario::new(Payload::Map(map), points(at), 5).unwrap()
}

fn ideal_family(gens: &[&str], at: &[i64]) -> FamilyScenario<PrimeField> {
    let r = ring(&["a"], &["x0", "x1"]);
    FamilyScenario::new(Payload::Ideal(Ideal::parse(&r, gens).unwrap()), points(at), 5).unwrap()
}

fn values(report: &ScanReport) -> Vec<Value> {
    report.points.iter().map(|p| p.value.clone().unwrap()).collect()
}

#[test]
fn map_degree_jumps_down() {
    let fam = map_family(
        &[
            "x0^2*x1^2 + a*x0*x1^2*x2 - x0*x1*x2^2",
            "-x0^4 - a*x0^3*x2 + x0^2*x2^2",
            "x0^3*x1 - x0^2*x1^2",
            "x0^4 - x0^2*x1^2 + a*x0^3*x2 - a*x1^3*x2 - x0^2*x2^2 + x1^2*x2^2",
        ],
        &[0, 1, 2],
    );
    let report = fam.scan(&ScanKind::MapDegree, &cfg());
    assert_eq!(values(&report), [Value::Finite(2), Value::Finite(1), Value::Finite(1)]);
    assert_eq!(report.generic.value, Some(Value::Finite(1)));
    assert_eq!(report.direction, Direction::NotGoverned);
    assert_eq!(report.violations(), 0);
}

#[test]
fn map_degree_jumps_up() {
    let fam = map_family(
        &[
            "x0^3*x2 + x0*x1^3 + x1^3*x2",
            "x0^3*x2 - a*x1^2*x2^2",
            "-x0^2*x1*x2 - a*x0^2*x2^2 - a*x1^3*x2",
        ],
        &[0, 1],
    );
    let report = fam.scan(&ScanKind::MapDegree, &cfg());
    assert_eq!(values(&report), [Value::Finite(1), Value::Finite(3)]);
    assert_eq!(report.generic.value, Some(Value::Finite(3)));
    assert_eq!(report.verdicts[0].verdict, Verdict::NotGoverned);
    assert_eq!(report.verdicts[1].verdict, Verdict::Equal);
}

#[test]
fn projective_degrees_are_lower_semicontinuous() {
    let fam = map_family(
        &[
            "x0^2*x1^2 + a*x0*x1^2*x2 - x0*x1*x2^2",
            "-x0^4 - a*x0^3*x2 + x0^2*x2^2",
            "x0^3*x1 - x0^2*x1^2",
            "x0^4 - x0^2*x1^2 + a*x0^3*x2 - a*x1^3*x2 - x0^2*x2^2 + x1^2*x2^2",
        ],
        &[0, 3],
    );
    let report = fam.scan(&ScanKind::ProjDegrees, &cfg());
    assert_eq!(report.direction, Direction::Lower);
    assert_eq!(report.violations(), 0);
    assert!(report.verdicts.iter().all(|v| v.verdict != Verdict::Skipped));
}

#[test]
fn constant_family() {
    let fam = ideal_family(&["x0^2"], &[0, 1, 7]);
    let report = fam.scan(&ScanKind::SegreSeq, &cfg());
    assert!(values(&report).iter().all(|v| *v == Value::Sequence(vec![0, 2, 0])));
    assert_eq!(report.generic.value, Some(Value::Sequence(vec![0, 2, 0])));
    assert_eq!(report.generic.disagreements, 0);
    assert!(report.verdicts.iter().all(|v| v.verdict == Verdict::Equal));
}

#[test]
fn segre_pencil() {
    // at a = 0 the second generator loses its x0*x1 term
    let fam = ideal_family(&["x0^2", "x0*x1^2 + a*x0*x1"], &[0, 1]);
    let report = fam.scan(&ScanKind::SegreSeq, &cfg());
    assert_eq!(values(&report), [Value::Sequence(vec![0, 1, 4]), Value::Sequence(vec![0, 1, 2])]);
    assert_eq!(report.generic.value, Some(Value::Sequence(vec![0, 1, 2])));
    assert_eq!(report.verdicts[0].verdict, Verdict::Consistent);
    assert_eq!(report.verdicts[1].verdict, Verdict::Equal);
    assert!(!report.assumed.is_empty());
}

#[test]
fn equigenerated_identity() {
    // c_i = δ m_{i-1} - m_i along an equigenerated family
    let fam = ideal_family(&["x0^2", "x1^2 + a*x0*x1"], &[0, 1, 2]);
    for p in fam.points() {
        let payload = fam.specialize_payload(p).unwrap();
        let Payload::Ideal(i) = &payload else { unreachable!() };
        let t = invariant_table(i, &cfg()).unwrap();
        assert!(t.gparam_generic);
        for k in 1..=t.dim {
            assert_eq!(t.c[k], t.order * t.m[k - 1] - t.m[k]);
        }
    }
}

#[test]
fn mixed_multiplicity_tags() {
    let fam = ideal_family(&["x0*x1 + a*x0^2"], &[0, 1]);
    let at = |n: Vec<usize>| values(&fam.scan(&ScanKind::MixedMult(n), &cfg()));
    // two points of ℙ^1
    assert_eq!(at(vec![0]), [Value::Finite(2), Value::Finite(2)]);
    assert_eq!(at(vec![1]), [Value::ZeroByDimension, Value::ZeroByDimension]);
    let line = ring(&[], &["x0", "x1"]);
    let hp = HilbertPolynomial::of_quotient(&Ideal::zero(&line)).unwrap();
    assert_eq!(tagged_mixed_multiplicity(&hp, &[0]), Value::InfiniteByDimension);
    assert_eq!(tagged_mixed_multiplicity(&hp, &[1]), Value::Finite(1));
}

#[test]
fn degenerate_fibers_are_recorded() {
    let fam = map_family(&["a*x0", "a*x1", "a*x2"], &[0, 1]);
    let report = fam.scan(&ScanKind::DegImage, &cfg());
    assert!(report.points[0].error.as_deref().unwrap().contains("degenerate"));
    assert_eq!(report.points[1].value, Some(Value::Finite(1)));
    assert_eq!(report.verdicts[0].verdict, Verdict::Skipped);
}

#[test]
fn consensus_rules() {
    let f = Value::Finite;
    assert_eq!(combine(Direction::Upper, &[f(3), f(2), f(2)]), Some(f(2)));
    assert_eq!(combine(Direction::Lower, &[f(3), f(2), f(2)]), Some(f(3)));
    assert_eq!(combine(Direction::NotGoverned, &[f(3), f(2), f(2)]), Some(f(2)));
    let s = |v: &[u64]| Value::Sequence(v.to_vec());
    assert_eq!(combine(Direction::UpperLex, &[s(&[9, 1, 4]), s(&[0, 1, 2])]), Some(s(&[0, 1, 2])));
    assert_eq!(combine(Direction::Lower, &[s(&[1, 3]), s(&[2, 2])]), Some(s(&[2, 3])));
    assert_eq!(judge(Direction::Upper, Some(&f(1)), Some(&f(2))), Verdict::Violation);
    assert_eq!(judge(Direction::Upper, Some(&Value::InfiniteByDimension), Some(&f(2))), Verdict::Consistent);
    assert_eq!(judge(Direction::Lower, Some(&s(&[1, 3])), Some(&s(&[2, 2]))), Verdict::Violation);
}

#[test]
fn scans_are_deterministic() {
    let fam = ideal_family(&["x0^2", "x0*x1^2 + a*x0*x1"], &[0, 1, 2, 3]);
    assert_eq!(fam.scan(&ScanKind::SegreSeq, &cfg()), fam.scan(&ScanKind::SegreSeq, &cfg()));
}
