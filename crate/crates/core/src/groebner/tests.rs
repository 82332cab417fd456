use std::sync::Arc;

use super::*;
use crate::ring::{Ideal, MonomialOrder, PrimeField, Rationals};

fn qq(vars: &[&str]) -> Arc<PolyRing<Rationals>> {
    PolyRing::new(Rationals, vars)
}

fn ideal<F: Field>(ring: &Arc<PolyRing<F>>, gens: &[&str]) -> Ideal<F> {
    Ideal::parse(ring, gens).unwrap()
}

/// Plain multivariate division, independent of the engine's reducer.
fn naive_remainder<F: Field>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
    gs: &[Poly<F::Elem>],
) -> Poly<F::Elem> {
    let field = ring.field();
    let mut p = f.clone();
    let mut r = ring.zero();
    while let Some((m, c)) = p.lead().cloned() {
        match gs.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let q = g.lm().quotient(&m).unwrap();
                let coef = field.mul(&c, &field.inv(g.lc()));
                p = ring.sub(&p, &ring.mul(&ring.term(q, coef), g));
            }
            None => {
                let t = ring.term(m, c);
                r = ring.add(&r, &t);
                p = ring.sub(&p, &t);
            }
        }
    }
    r
}

/// Buchberger's criterion plus reducedness.
fn assert_reduced_gb<F: Field>(ring: &PolyRing<F>, gb: &[Poly<F::Elem>]) {
    let field = ring.field();
    for (i, f) in gb.iter().enumerate() {
        assert!(field.is_one(f.lc()));
        for (j, g) in gb.iter().enumerate() {
            if i != j {
                for (m, _) in f.terms() {
                    assert!(!g.lm().divides(m), "not reduced");
                }
            }
            if i < j {
                let l = f.lm().lcm(g.lm());
                let a = ring.mul(&ring.term(f.lm().quotient(&l).unwrap(), field.one()), f);
                let b = ring.mul(&ring.term(g.lm().quotient(&l).unwrap(), field.one()), g);
                let s = ring.sub(&a, &b);
                assert!(naive_remainder(ring, &s, gb).is_zero(), "S-polynomial does not reduce");
            }
        }
    }
}

#[test]
fn twisted_cubic_is_its_own_basis() {
    let r = qq(&["x0", "x1", "x2", "x3"]);
    let i = ideal(&r, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
    let gb = i.gb();
    assert_eq!(gb.len(), 3);
    assert_reduced_gb(&r, &gb);
    assert_eq!(i.krull_dim(), 2);
}

#[test]
fn lex_basis_triangularizes() {
    let r = PolyRing::builder(Rationals)
        .block(&["x", "y"])
        .order(MonomialOrder::Lex)
        .build();
    let i = ideal(&r, &["x^2 - y", "x*y - 1"]);
    let gb = i.gb();
    assert_reduced_gb(&r, &gb);
    // x = y^2 and y^3 = 1
    let expect = ideal(&r, &["x - y^2", "y^3 - 1"]);
    assert!(i.same_as(&expect));
    assert_eq!(gb.len(), 2);
}

#[test]
fn unit_and_dimension() {
    let r = qq(&["x", "y", "z"]);
    assert!(ideal(&r, &["x", "x + 1"]).is_unit());
    assert_eq!(ideal(&r, &["x", "x + 1"]).krull_dim(), -1);
    assert_eq!(ideal(&r, &["x", "y"]).krull_dim(), 1);
    assert_eq!(Ideal::zero(&r).krull_dim(), 3);
    assert_eq!(ideal(&r, &["x*y", "x*z"]).krull_dim(), 2);
}

#[test]
fn intersection_colon_saturation() {
    let r = qq(&["x", "y"]);
    let meet = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
    assert!(meet.same_as(&ideal(&r, &["x*y"])));

    let c = ideal(&r, &["x^2", "x*y"]).colon_poly(&r.parse("x").unwrap());
    assert!(c.same_as(&ideal(&r, &["x", "y"])));

    let m = Ideal::maximal(&r);
    let s = ideal(&r, &["x^2*y", "x*y^2"]).saturate(&m).unwrap();
    assert!(s.same_as(&ideal(&r, &["x*y"])));

    let c2 = ideal(&r, &["x^3", "x*y"]).colon(&ideal(&r, &["x", "y"])).unwrap();
    assert!(c2.same_as(&ideal(&r, &["x^2", "x*y"])));
}

#[test]
fn operations_in_a_quotient_ring() {
    // k[x,y]/(x*y): the colon (0 : x) is (y)
    let r = qq(&["x", "y"]);
    let q = r.quotient(&[r.parse("x*y").unwrap()]);
    let zero = Ideal::zero(&q);
    let c = zero.colon_poly(&q.parse("x").unwrap());
    assert!(c.same_as(&ideal(&q, &["y"])));
    assert_eq!(Ideal::zero(&q).krull_dim(), 1);
    let sat = ideal(&q, &["x^2"]).saturate_poly(&q.parse("x").unwrap());
    assert!(sat.is_unit());
}

#[test]
fn kernel_of_veronese() {
    let src = qq(&["y0", "y1", "y2"]);
    let tgt = qq(&["s", "t"]);
    let images: Vec<_> = ["s^2", "s*t", "t^2"].iter().map(|f| tgt.parse(f).unwrap()).collect();
    let k = kernel_of_map(&src, &tgt, &images).unwrap();
    assert!(k.same_as(&ideal(&src, &["y0*y2 - y1^2"])));
}

#[test]
fn rational_quartic_by_elimination() {
    let src = qq(&["x0", "x1", "x2", "x3"]);
    let tgt = qq(&["s", "t"]);
    let images: Vec<_> = ["s^4", "s^3*t", "s*t^3", "t^4"]
        .iter()
        .map(|f| tgt.parse(f).unwrap())
        .collect();
    let p = kernel_of_map(&src, &tgt, &images).unwrap();
    assert_eq!(p.krull_dim(), 2);
    for rel in ["x0*x3 - x1*x2", "x1^3 - x0^2*x2", "x2^3 - x1*x3^2"] {
        assert!(p.contains(&src.parse(rel).unwrap()), "{rel}");
    }
    assert!(!p.contains(&src.parse("x1*x2 - x0*x3 + x1^2").unwrap()));
}

#[test]
fn rees_ideal_of_the_maximal_ideal() {
    let r = qq(&["x0", "x1"]);
    let (rees, j) = rees_ideal(&Ideal::maximal(&r));
    assert_eq!(rees.var_names(), ["x0", "x1", "y0", "y1"]);
    assert!(j.same_as(&ideal(&rees, &["x0*y1 - x1*y0"])));
    assert_eq!(rees.grading()[2], vec![0, 1]);
}

#[test]
fn elimination_keeps_only_remaining_variables() {
    let r = qq(&["t", "x", "y"]);
    let i = ideal(&r, &["x - t^2", "y - t^3"]);
    let e = i.eliminate(&[0]);
    assert!(e.same_as(&ideal(&r, &["x^3 - y^2"])));
}

#[test]
fn prime_field_matches_rationals_on_integer_input() {
    let gens = ["x^2*y - 3*z", "y^2 - x*z + 2", "x*y*z - 1"];
    let rq = qq(&["x", "y", "z"]);
    let rp = PolyRing::new(PrimeField::default(), &["x", "y", "z"]);
    let a = ideal(&rq, &gens);
    let b = ideal(&rp, &gens);
    assert_reduced_gb(&rq, &a.gb());
    assert_reduced_gb(&rp, &b.gb());
    assert_eq!(a.lead_monomials(), b.lead_monomials());
}

#[test]
fn disk_store_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let store: Arc<dyn GbStore> = Arc::new(DiskStore::new(dir.path()));
    let make = || {
        PolyRing::builder(Rationals)
            .block(&["x", "y"])
            .store(Some(Arc::clone(&store)))
            .build()
    };
    let r1 = make();
    let gb1 = ideal(&r1, &["x^2 - 1/3*y", "x*y"]).gb();
    let r2 = make();
    // another presentation of the same generators hits the same entry
    let gb2 = ideal(&r2, &["y*x", "3*x^2 - y"]).gb();
    assert_eq!(gb1, gb2);

    let files: Vec<_> = walk(dir.path());
    assert_eq!(files.len(), 1);
    let text = std::fs::read_to_string(&files[0]).unwrap();
    assert!(text.starts_with(FORMAT_HEADER));

    // damaged and foreign-version entries are recomputed
    std::fs::write(&files[0], text.replace("end", "en")).unwrap();
    let gb3 = ideal(&make(), &["x^2 - 1/3*y", "x*y"]).gb();
    assert_eq!(gb1, gb3);
    std::fs::write(&files[0], text.replace("v1", "v0")).unwrap();
    let gb4 = ideal(&make(), &["x^2 - 1/3*y", "x*y"]).gb();
    assert_eq!(gb1, gb4);
}

fn walk(dir: &std::path::Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}
