//! Certified search and verification engine for minimal spectral radii of
//! constrained classes of monic integer polynomials.
//!
//! The library is organized around an exact, certificate-producing core:
//! integer polynomials ([`poly`]), companion digraphs and Perron–Frobenius
//! machinery ([`matrix`]), bisection root enclosures and exact disk counts
//! ([`roots`]), the two candidate classes ([`classes`]), the minimality
//! search ([`search`]), and the claim verifiers ([`verify`]). Nothing on the
//! certified paths touches floating point.

pub mod classes;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod search;
pub mod verify;

pub use classes::{ClassSpec, Family};
pub use error::{Error, Result};
pub use poly::IntPoly;
pub use roots::RootEnclosure;
pub use search::{search_min, SearchOptions, SearchReport};
