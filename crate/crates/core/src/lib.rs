//! Exact arithmetic for integer symplectic matrices whose leading eigenvalue
//! is bi-Perron (all algebraic conjugates lie in the closed annulus between
//! `1/lambda` and `lambda`) yet fails to be a simple root of the
//! characteristic polynomial.
//!
//! Everything that certifies a claim runs over arbitrary-precision integers
//! and rationals: characteristic polynomials, Sturm counts, disk root counts,
//! square-free structure. Floating point appears only in clearly labeled
//! diagnostic helpers and never feeds a certificate.
//!
//! Module map:
//! - [`exactmat`]: integer matrices, symplectic form checks, exact
//!   characteristic polynomials and determinants,
//! - [`intpoly`]: integer polynomials, gcds, square-free decomposition,
//!   palindromicity, Sturm counting, and the composition identity used by the
//!   block constructions,
//! - [`rootcert`]: isolating intervals, disk root counts, and annulus
//!   certificates for the bi-Perron property,
//! - [`families`]: the seeded block constructions of symplectic matrices with
//!   prescribed spectral behaviour, plus a seeded random-symplectic sampler,
//! - [`densitylab`]: the palindromic-quartic scan measuring how rarely such
//!   quartics avoid real roots.

pub mod densitylab;
pub mod exactmat;
pub mod families;
pub mod intpoly;
pub mod rootcert;
