//! Buchberger's algorithm with the Gebauer–Möller pair criteria and sugar
//! selection.

use std::cmp::Ordering;

use crate::ring::{Field, Monomial, Poly, PolyRing};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

struct Basis<E> {
    polys: Vec<Poly<E>>,
    sugar: Vec<u64>,
    masks: Vec<u64>,
    active: Vec<bool>,
}

impl<E> Basis<E> {
    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        (0..self.polys.len()).find(|&k| {
            self.active[k] && self.masks[k] & !mask == 0 && self.polys[k].lm().divides(m)
        })
    }
}

/// Fully reduces `f` by the polynomials in `gs`.
pub(crate) fn reduce_by<F: Field>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
    gs: &[Poly<F::Elem>],
) -> Poly<F::Elem> {
    let masks: Vec<u64> = gs.iter().map(|g| g.lm().support_mask()).collect();
    let find = |m: &Monomial| {
        let mask = m.support_mask();
        (0..gs.len()).find(|&k| masks[k] & !mask == 0 && gs[k].lm().divides(m))
    };
    reduce_with(ring, f, |m| find(m).map(|k| &gs[k]))
}

fn reduce_with<'a, F: Field>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
    find: impl Fn(&Monomial) -> Option<&'a Poly<F::Elem>>,
) -> Poly<F::Elem>
where
    F::Elem: 'a,
{
    let field = ring.field();
    let mut rem = f.clone();
    let mut done: Vec<(Monomial, F::Elem)> = Vec::new();
    // terms of `rem` before `start` are irreducible and untouched by later
    // steps, since each step only changes terms below the current one
    let mut start = 0;
    while start < rem.terms.len() {
        let (m, c) = &rem.terms[start];
        match find(m) {
            Some(g) => {
                let q = g.lm().quotient(m).expect("reducer divides");
                let coef = field.mul(c, &field.inv(g.lc()));
                let tail = Poly::from_sorted(rem.terms.split_off(start));
                let reduced = ring.sub_mul_term(&tail, &coef, &q, g);
                rem.terms.extend(reduced.terms);
            }
            None => start += 1,
        }
    }
    done.append(&mut rem.terms);
    Poly::from_sorted(done)
}

fn spoly<F: Field>(ring: &PolyRing<F>, f: &Poly<F::Elem>, g: &Poly<F::Elem>, lcm: &Monomial) -> Poly<F::Elem> {
    let field = ring.field();
    let qf = f.lm().quotient(lcm).unwrap();
    let qg = g.lm().quotient(lcm).unwrap();
    let a = ring.mul_term(f, &qf, &field.inv(f.lc()));
    ring.sub_mul_term(&a, &field.inv(g.lc()), &qg, g)
}

fn pair_cmp<F: Field>(ring: &PolyRing<F>, a: &Pair, b: &Pair) -> Ordering {
    a.sugar
        .cmp(&b.sugar)
        .then_with(|| ring.order().cmp(&a.lcm, &b.lcm))
        .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
}

/// Reduced Gröbner basis of the ideal generated by `input`, monic and
/// sorted by increasing leading monomial.
pub(crate) fn groebner_basis<F: Field>(
    ring: &PolyRing<F>,
    input: &[Poly<F::Elem>],
) -> Vec<Poly<F::Elem>> {
    let mut basis = Basis {
        polys: Vec::new(),
        sugar: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
    };
    let mut pairs: Vec<Pair> = Vec::new();

    let mut seeds: Vec<Poly<F::Elem>> = input
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| ring.monic(f))
        .collect();
    seeds.sort_by(|a, b| ring.order().cmp(a.lm(), b.lm()));
    for f in seeds {
        let sugar = f.total_degree().unwrap_or(0);
        let h = reduce_with(ring, &f, |m| basis.find_reducer(m).map(|k| &basis.polys[k]));
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![ring.one()];
        }
        insert::<F>(&mut basis, &mut pairs, ring.monic(&h), sugar);
    }

    while !pairs.is_empty() {
        pairs.sort_by(|a, b| pair_cmp(ring, b, a));
        let p = pairs.pop().unwrap();
        let s = spoly(ring, &basis.polys[p.i], &basis.polys[p.j], &p.lcm);
        let h = reduce_with(ring, &s, |m| basis.find_reducer(m).map(|k| &basis.polys[k]));
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![ring.one()];
        }
        let sugar = p.sugar.max(h.total_degree().unwrap_or(0));
        insert::<F>(&mut basis, &mut pairs, ring.monic(&h), sugar);
    }

    let gens: Vec<Poly<F::Elem>> = (0..basis.polys.len())
        .filter(|&k| basis.active[k])
        .map(|k| basis.polys[k].clone())
        .collect();
    interreduce(ring, gens)
}

fn insert<F: Field>(
    basis: &mut Basis<F::Elem>,
    pairs: &mut Vec<Pair>,
    h: Poly<F::Elem>,
    sugar: u64,
) {
    let hm = h.lm().clone();
    let hn = basis.polys.len();
    let sugar_of = |k: usize, lcm: &Monomial, basis: &Basis<F::Elem>| {
        let a = basis.sugar[k] + lcm.degree() - basis.polys[k].lm().degree();
        let b = sugar + lcm.degree() - hm.degree();
        a.max(b)
    };

    // candidate pairs with h
    let mut cands: Vec<(usize, Monomial, bool)> = (0..hn)
        .filter(|&k| basis.active[k])
        .map(|k| {
            let g = basis.polys[k].lm();
            (k, g.lcm(&hm), g.is_coprime(&hm))
        })
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some(c) = cands.pop() {
        let dominated = cands
            .iter()
            .chain(kept.iter())
            .any(|(_, l, _)| l.divides(&c.1));
        if c.2 || !dominated {
            kept.push(c);
        }
    }
    // product criterion
    kept.retain(|(_, _, coprime)| !coprime);

    // old pairs made redundant by h
    pairs.retain(|p| {
        if !hm.divides(&p.lcm) {
            return true;
        }
        let li = basis.polys[p.i].lm().lcm(&hm);
        let lj = basis.polys[p.j].lm().lcm(&hm);
        li == p.lcm || lj == p.lcm
    });

    for (k, lcm, _) in kept {
        let s = sugar_of(k, &lcm, basis);
        pairs.push(Pair {
            i: k,
            j: hn,
            lcm,
            sugar: s,
        });
    }

    for k in 0..hn {
        if basis.active[k] && hm.divides(basis.polys[k].lm()) {
            basis.active[k] = false;
        }
    }
    basis.masks.push(hm.support_mask());
    basis.polys.push(h);
    basis.sugar.push(sugar);
    basis.active.push(true);
}

/// Turns a Gröbner basis into the reduced one.
pub(crate) fn interreduce<F: Field>(
    ring: &PolyRing<F>,
    mut gens: Vec<Poly<F::Elem>>,
) -> Vec<Poly<F::Elem>> {
    gens.retain(|g| !g.is_zero());
    gens.sort_by(|a, b| ring.order().cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Poly<F::Elem>> = Vec::new();
    for g in gens {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly<F::Elem>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, g)| g.clone())
            .collect();
        let (lead, tail) = minimal[k].terms.split_first().unwrap();
        let tail = reduce_by(ring, &Poly::from_sorted(tail.to_vec()), &others);
        let mut terms = vec![lead.clone()];
        terms.extend(tail.terms);
        out.push(ring.monic(&Poly::from_sorted(terms)));
    }
    out
}
