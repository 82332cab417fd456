//! Fields, monomials, orders, polynomial rings and ideals.

mod field;
mod ideal;
mod monomial;
mod order;
mod poly;
#[allow(clippy::module_inception)]
mod ring;

pub use field::{Field, FieldKind, PrimeField, Rationals, DEFAULT_PRIME, SMALL_PRIME_WARNING};
pub use ideal::Ideal;
pub use monomial::{Monomial, MAX_EXPONENT};
pub use order::MonomialOrder;
pub use poly::Poly;
pub use ring::{PolyRing, RingBuilder, VarRole};
