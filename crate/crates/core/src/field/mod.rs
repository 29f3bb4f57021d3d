//! Exact coefficient field: rationals, polynomials in `q`, and `Q(q)`.

mod cyclo;
mod gcd;
mod poly;
pub mod rational;
mod ratfunc;
mod zpoly;

pub use cyclo::{cyclotomic, CycloFrac};
pub use gcd::poly_gcd;
pub use poly::Poly;
pub use rational::Rational;
pub use ratfunc::RatFunc;
pub use zpoly::ZPoly;

