use super::*;
use crate::ring::{PrimeField, Rationals};

fn plane() -> Arc<PolyRing<PrimeField>> {
    PolyRing::new(PrimeField::default(), &["x0", "x1", "x2"])
}

fn cfg() -> InvariantConfig {
    InvariantConfig {
        seed: 17,
        ..InvariantConfig::default()
    }
}

const FOLD: [&str; 4] = [
    "x0^2*x1^2 + a*x0*x1^2*x2 - x0*x1*x2^2",
    "-x0^4 - a*x0^3*x2 + x0^2*x2^2",
    "x0^3*x1 - x0^2*x1^2",
    "x0^4 - x0^2*x1^2 + a*x0^3*x2 - a*x1^3*x2 - x0^2*x2^2 + x1^2*x2^2",
];

fn family<F: Field>(field: F, forms: &[&str]) -> RationalMap<F> {
    let r = PolyRing::builder(field)
        .parameters(&["a"])
        .block(&["x0", "x1", "x2"])
        .build();
    RationalMap::parse(&r, forms).unwrap()
}

fn at<F: Field>(map: &RationalMap<F>, a: i64) -> RationalMap<F> {
    let target = map.source().parameter_free();
    let v = target.field().from_i64(a);
    map.specialize(&target, &[("a", v)]).unwrap()
}

#[test]
fn cremona() {
    let m = RationalMap::parse(&plane(), &["x1*x2", "x0*x2", "x0*x1"]).unwrap();
    assert_eq!(m.degree(), 2);
    assert!(m.image_ideal().unwrap().is_zero());
    assert_eq!(m.deg_image().unwrap(), 1);
    assert_eq!(m.projective_degrees(&cfg()).unwrap(), [1, 2, 1]);
    assert_eq!(m.projective_degrees_rees().unwrap(), [1, 2, 1]);
    assert_eq!(m.map_degree(&cfg()).unwrap(), 1);
    assert_eq!(m.j_multiplicity(&cfg()).unwrap(), 2);
    let checks = m.degree_bounds(&Structure::Generic, &cfg()).unwrap();
    assert_eq!(checks.iter().map(|c| c.bound).collect::<Vec<_>>(), [4, 2, 1]);
    assert!(checks.iter().all(|c| c.satisfied));
}

#[test]
fn generic_conics() {
    let m = RationalMap::parse(
        &plane(),
        &[
            "3*x0^2 + 5*x0*x1 - 7*x1^2 + 2*x0*x2 + 11*x1*x2 - x2^2",
            "x0^2 - 4*x0*x1 + 9*x1^2 + 13*x0*x2 - 6*x1*x2 + 8*x2^2",
            "-2*x0^2 + x0*x1 + 3*x1^2 - 5*x0*x2 + 7*x1*x2 + 12*x2^2",
        ],
    )
    .unwrap();
    assert_eq!(m.projective_degrees_checked(&cfg()).unwrap(), [4, 2, 1]);
    assert_eq!(m.j_multiplicity(&cfg()).unwrap(), 8);
    assert_eq!(m.map_degree(&cfg()).unwrap(), 4);
}

#[test]
fn identity_and_point() {
    let id = RationalMap::parse(&plane(), &["x0", "x1", "x2"]).unwrap();
    assert_eq!(id.projective_degrees_checked(&cfg()).unwrap(), [1, 1, 1]);
    assert_eq!(id.j_multiplicity(&cfg()).unwrap(), 1);
    let point = RationalMap::parse(&plane(), &["x0^2", "x0^2", "x0^2"]).unwrap();
    assert_eq!(point.deg_image().unwrap(), 0);
    assert_eq!(point.map_degree(&cfg()).unwrap(), 0);
}

#[test]
fn rational_quartic_image() {
    let line = PolyRing::new(PrimeField::default(), &["s", "t"]);
    let m = RationalMap::parse(&line, &["s^4", "s^3*t", "s*t^3", "t^4"]).unwrap();
    let image = m.image_ideal().unwrap();
    assert!(image.contains(&image.ring().parse("y0*y3 - y1*y2").unwrap()));
    assert_eq!(m.deg_image().unwrap(), 4);
    assert_eq!(m.map_degree(&cfg()).unwrap(), 1);
}

#[test]
fn squares_on_the_line() {
    let line = PolyRing::new(PrimeField::default(), &["x0", "x1"]);
    let m = RationalMap::parse(&line, &["x0^2", "x1^2"]).unwrap();
    assert!(m.image_ideal().unwrap().is_zero());
    assert_eq!(m.map_degree(&cfg()).unwrap(), 2);
}

#[test]
fn degree_jumps_up_under_specialization() {
    let fam = family(PrimeField::default(), &FOLD);
    assert_eq!(at(&fam, 0).map_degree(&cfg()).unwrap(), 2);
    assert_eq!(at(&fam, 5).map_degree(&cfg()).unwrap(), 1);
    let d0 = at(&fam, 0).projective_degrees_checked(&cfg()).unwrap();
    let d5 = at(&fam, 5).projective_degrees_checked(&cfg()).unwrap();
    // projective degrees only drop under specialization
    assert!(d0.iter().zip(&d5).all(|(a, b)| a <= b), "{d0:?} {d5:?}");
}

#[test]
fn degree_drops_under_specialization() {
    // 2x2 minors of [[x0, x2 x1^2], [-x1, x2 x0^2 + x1^3], [a x2, x2 x0^2]]
    let forms = [
        "x0^3*x2 + x0*x1^3 + x1^3*x2",
        "x0^3*x2 - a*x1^2*x2^2",
        "-x0^2*x1*x2 - a*x0^2*x2^2 - a*x1^3*x2",
    ];
    let fam = family(PrimeField::default(), &forms);
    assert_eq!(at(&fam, 0).map_degree(&cfg()).unwrap(), 1);
    assert_eq!(at(&fam, 3).map_degree(&cfg()).unwrap(), 3);
}

#[test]
fn rationals_agree() {
    let fam = family(Rationals, &FOLD);
    assert_eq!(at(&fam, 0).map_degree(&cfg()).unwrap(), 2);
}

#[test]
fn degenerate_and_invalid() {
    let fam = family(PrimeField::default(), &["a*x0", "a*x1"]);
    let target = fam.source().parameter_free();
    assert_eq!(
        fam.specialize(&target, &[("a", 0)]).unwrap_err(),
        Error::DegenerateFiber
    );
    assert!(matches!(
        RationalMap::parse(&plane(), &["x0", "x1^2"]),
        Err(Error::InvalidMap(_))
    ));
    assert!(matches!(fam.image_ideal(), Err(Error::InvalidMap(_))));
}

#[test]
fn bound_formulas() {
    assert_eq!(Structure::HilbertBurch(vec![1, 1]).bound(2, 2, 2, 0), 1);
    assert_eq!(Structure::HilbertBurch(vec![1, 1]).bound(2, 2, 2, 1), 2);
    assert_eq!(Structure::HilbertBurch(vec![1, 1]).bound(2, 2, 2, 2), 1);
    assert_eq!(Structure::HilbertBurch(vec![1, 2, 3]).bound(3, 3, 3, 0), 6);
    assert_eq!(Structure::Generic.bound(3, 2, 4, 2), 1);
    // Gorenstein, r = s = 3: D^3 (binom(2, 2) + binom(0, 2)) = D^3
    assert_eq!(Structure::Gorenstein3(2).bound(3, 3, 3, 0), 8);
    assert_eq!(Structure::Gorenstein3(2).bound(3, 3, 3, 1), 9);
}
