// `!(x > 0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod horocycle;
pub mod plane;
pub mod sampling;
pub mod scalar;
pub mod walpha;
pub mod witness;

pub use error::{GeometryError, Result};
pub use plane::*;
pub use scalar::{BigFloat, Real, Tolerances};

pub type Real64 = f64;
pub type Real128 = BigFloat<128>;
pub type Real256 = BigFloat<256>;
pub type Real512 = BigFloat<512>;
pub type Real1024 = BigFloat<1024>;

pub type Point64 = Point<f64>;
pub type Point256 = Point<Real256>;
pub type Isometry64 = Isometry<f64>;
pub type Isometry256 = Isometry<Real256>;
pub type UnitTangent64 = UnitTangent<f64>;
pub type UnitTangent256 = UnitTangent<Real256>;
