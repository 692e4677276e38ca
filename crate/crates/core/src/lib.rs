//! Exact computations for polynomial foliations of the complex projective
//! plane: singular points and their Milnor numbers, Seidenberg reduction by
//! blow-ups, separatrix indices, invariant curves and extactic polynomials,
//! degree bounds driven by plurigenera, and the classical example families.

pub mod blowup;
pub mod bounds;
pub mod curves;
pub mod error;
pub mod exactmath;
pub mod families;
pub mod foliation;

pub use error::{Error, Result};
