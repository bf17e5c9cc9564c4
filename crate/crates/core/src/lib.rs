//! Exact arithmetic for bicritical post-critically finite (PCF) polynomials in
//! dynamical Belyi normal form `f(z) = a·B_{d,k}(z) + c`.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`]: big integers and rationals, primality, factorization, p-adic valuations.
//! * [`polyring`]: univariate and sparse multivariate polynomials over `Q`, `GF(p)` and
//!   `GF(p^e)`, Sylvester resultants and Newton polygons.
//! * [`belyi`]: the Belyi coefficients `b_i`, conjugacy normalization and the
//!   n-critical generalization.
//! * [`idf`]: index-divisor-free (IDF) primes, exception scans and the Mordell sieve.
//! * [`valdyn`]: min-plus simulation of critical-orbit valuations.
//! * [`pcf`]: PCF locus polynomials, integrality certificates, and Jacobian checks modulo
//!   an IDF prime.

pub mod arith;
pub mod belyi;
pub mod idf;
pub mod pcf;
pub mod polyring;
pub mod valdyn;

mod error;

pub use error::{Error, Result};
