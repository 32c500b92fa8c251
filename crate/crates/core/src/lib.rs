//! Coxeter elements of star lattices attached to Kleinian and Fuchsian
//! genus-0 singularities, and the Poincaré series of those singularities
//! computed as characteristic polynomial quotients and from divisor degrees.

pub mod arith;
pub mod error;
pub mod lattice;
pub mod poincare;
pub mod star;
pub mod verify;

pub use error::{Error, Result};
