//! Quaternionic slice functions induced by stem functions on circular domains.
//!
//! A stem function is a complex-intrinsic map `F = F1 + √-1 F2` from a plane
//! domain `D` into the complexified quaternions. It induces a slice function
//! `f(α + βJ) = F1(z) + J F2(z)` on the circular set swept out by rotating `D`
//! through the sphere of imaginary units. This crate provides:
//!
//! - exact quaternion and complexified-quaternion arithmetic ([`algebra`]),
//! - circular domains and stem functions with polynomial, constant and
//!   callable backends ([`domain`], [`stem`]),
//! - slice-function evaluation, the two-semislice representation formula and
//!   the spherical derivative ([`slice`]),
//! - slice derivatives and regularity checks ([`calculus`]),
//! - the slice product, conjugate, normal function and regular reciprocal
//!   ([`products`]),
//! - zero-locus classification per sphere ([`zeros`]),
//! - executable checkers for the identity, maximum/minimum modulus and open
//!   mapping theorems on domains that need not meet the real axis
//!   ([`principles`]),
//! - named example functions ([`gallery`]) and a JSON function-spec format
//!   ([`spec`]).
//!
//! Everything is immutable and pure; values can be shared freely across
//! threads.

pub mod algebra;
pub mod calculus;
pub mod domain;
pub mod error;
pub mod gallery;
pub mod principles;
pub mod products;
pub mod slice;
pub mod spec;
pub mod stem;
pub mod zeros;

pub use algebra::{ComplexifiedQuaternion, ImaginaryUnit, Quaternion};
pub use num_complex::Complex64;
pub use domain::{CircularDomain, Region};
pub use error::Error;
pub use slice::SliceFunction;
pub use stem::{StemBackend, StemFunction};

/// Library-wide default absolute tolerance for approximate equality.
pub const DEFAULT_TOL: f64 = 1e-10;
