//! Exact arithmetic: rationals, polynomials, resultants, factorization and
//! certified root isolation.

pub mod factor;
pub mod field;
pub mod gcd;
pub mod io;
pub mod linalg;
pub mod mpoly;
pub mod numfield;
pub mod rational;
pub mod roots;
pub mod solve;
pub mod upoly;

pub use field::Field;
pub use gcd::{gcd, squarefree_part};
pub use linalg::{det_bareiss, resultant};
pub use mpoly::{vars_of, MPoly, Monomial, Vars};
pub use numfield::{AlgNum, NumberField};
pub use rational::Rational;
pub use roots::{isolate_roots, refine, ComplexBox};
pub use solve::{common_zeros, Orbit};
pub use upoly::UPoly;

/// `(x, y)` as a shared variable list.
pub fn xy() -> Vars {
    vars_of(&["x", "y"])
}

/// Parses a polynomial in `(x, y)`. Panics on malformed input; intended for
/// literals in code and tests.
pub fn poly(s: &str) -> MPoly {
    MPoly::parse(s, &["x", "y"]).unwrap_or_else(|e| panic!("{e}"))
}
