//! Exact computer algebra over prime fields for certifying that the
//! Frobenius pull-back of a semistable bundle on a smooth plane curve can
//! have a Harder-Narasimhan filtration longer than the characteristic.
//!
//! The crate is `no_std` and needs only `alloc`. Command-line handling and
//! serialization live in the `frobhn` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bundles;
pub mod cohomology;
pub mod divisors;
pub mod ffpoly;
pub mod groebner;
pub mod linalg;
