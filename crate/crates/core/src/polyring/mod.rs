//! Polynomial arithmetic over exact coefficient domains.

pub mod finite_field;
pub mod multipoly;
pub mod newton;
pub mod resultant;
pub mod ring;
pub mod unipoly;

pub use finite_field::{make_ext_field, reduce_rat, roots_in_field, FieldDescriptor, FieldElem, FiniteField};
pub use multipoly::{BiPoly, MultiPoly, VAR_A, VAR_C};
pub use newton::NewtonPolygon;
pub use resultant::{resultant, resultant_in};
pub use ring::{Field, Rationals, Ring};
pub use unipoly::{PolyRing, UniPoly};
