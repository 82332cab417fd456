//! Gröbner bases and the ideal operations built on them.

mod buchberger;
mod ops;
mod store;

use std::sync::Arc;

pub use ops::{kernel_of_map, rees_ideal};
pub use store::{DiskStore, GbStore, FORMAT_HEADER};

use crate::ring::{Field, Poly, PolyRing};

/// Reduced Gröbner basis of `gens` together with the ring's modulus, in the
/// ambient polynomial ring and the ring's order.
///
/// Results are memoized on the ring and, when the ring has a disk store,
/// persisted there.
pub fn gb_of<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F::Elem>]) -> Arc<Vec<Poly<F::Elem>>> {
    let mut key: Vec<Poly<F::Elem>> = Vec::with_capacity(gens.len());
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let g = ring.monic(g);
        if !key.contains(&g) {
            key.push(g);
        }
    }
    // presentation-independent: order and scaling of generators do not matter
    key.sort_by_cached_key(|g| store::encode_poly(ring, g));
    if let Some(hit) = ring.memo.read().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let store_key = ring.store.as_ref().map(|_| store::cache_key(ring, &key));
    let loaded = match (&ring.store, &store_key) {
        (Some(s), Some(k)) => s.load(k).and_then(|text| store::decode(ring, &text)),
        _ => None,
    };
    let gb = match loaded {
        Some(gb) => gb,
        None => {
            let mut input = key.clone();
            input.extend(ring.modulus().iter().cloned());
            let gb = buchberger::groebner_basis(ring, &input);
            if let (Some(s), Some(k)) = (&ring.store, &store_key) {
                s.save(k, &store::encode(ring, &gb));
            }
            gb
        }
    };
    let gb = Arc::new(gb);
    ring.memo.write().unwrap().insert(key, Arc::clone(&gb));
    gb
}

/// Remainder of `f` on division by the Gröbner basis `gb`.
pub fn normal_form<F: Field>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
    gb: &[Poly<F::Elem>],
) -> Poly<F::Elem> {
    buchberger::reduce_by(ring, f, gb)
}

/// Normal form of `f` modulo the ring's modulus.
pub fn reduce_mod<F: Field>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> Poly<F::Elem> {
    if ring.has_modulus() {
        buchberger::reduce_by(ring, f, ring.modulus())
    } else {
        f.clone()
    }
}

#[cfg(test)]
mod tests;
