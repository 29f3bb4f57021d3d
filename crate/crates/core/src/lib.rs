//! Exact computation of Carlitz q-Bernoulli numbers and polynomials.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: big rationals, dense polynomials in `q`, and the canonical
//!   rational-function field `Q(q)` in which every identity is certified.
//! * [`qcore`]: q-integers `[x]_{q^d}`, multinomial coefficients and the
//!   q-power sums `T_{n,m}(w | q)`.
//! * [`carlitz`]: classical Bernoulli numbers (the `q -> 1` limits) and the
//!   Carlitz families `β_{n,q}`, `β_{n,q}(x)`, `β^{(h)}_{n,q}(x)`, `β^{(h,k)}_{n,q}(x)`.
//! * [`padic`]: truncated p-adic arithmetic with precision tracking and
//!   finite-level q-Volkenborn sums.
//! * [`identity`]: the S₃-symmetric identities, checked exactly for all six
//!   permutations of `(w₁, w₂, w₃)`.
//!
//! With the default `parallel` feature the data-parallel loops (Volkenborn
//! sums, permutation sweeps, parameter grids) run on rayon; [`Exec`] selects
//! the strategy per call so both paths stay available.

pub mod carlitz;
mod error;
mod exec;
pub mod field;
pub mod identity;
pub mod padic;
pub mod qcore;

pub use error::{Error, Result};
pub use exec::Exec;
pub use field::{Poly, RatFunc, Rational, ZPoly};
pub use qcore::QArg;
