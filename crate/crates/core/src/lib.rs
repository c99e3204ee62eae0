//! Local tropicalization of ideals of formal power series rings over affine semigroups.

pub mod arith;
pub mod error;
pub mod extended;
pub mod ideal;
pub mod json;
pub mod lattice;
pub mod order;
pub mod poly;
pub mod polyhedral;
pub mod semigroup;
pub mod standard;
pub mod tropical;

pub use error::{Error, Result};
