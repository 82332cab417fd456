pub mod error;
pub mod family;
pub mod groebner;
pub mod hilbert;
pub mod intdep;
pub mod invariants;
pub mod ratmap;
pub mod ring;
pub mod session;

pub use error::{Error, Result};
pub use ring::{Field, FieldKind, Ideal, Monomial, MonomialOrder, Poly, PolyRing, PrimeField, Rationals};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/index.md")]
    mod index {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/hilbert.md")]
    mod hilbert {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/intdep.md")]
    mod intdep {}
    #[doc = include_str!("../../../book/src/sessions.md")]
    mod sessions {}
}
