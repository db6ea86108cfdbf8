//! Exact equations for torus quotients inside Cox rings of toric varieties.
//!
//! The pipeline runs entirely over the integers and rationals: a torus
//! action and its Gale dual give the quotient torus, a fan gives the Cox
//! ring, and homogenizing then saturating gives the equations of the closure.
//! [`m0n`] instantiates all of it for the moduli space of marked rational
//! curves.

pub mod exactla;
pub mod fan;
pub mod gb;
pub mod git;
pub mod m0n;
pub mod poly;
pub mod quotient;

/// Number types used throughout the public API.
pub mod num {
    pub use num_bigint::BigInt;
    pub use num_rational::BigRational;
}
