//! Verification and search toolkit for parametrized families of elliptic curves
//! over ℚ with torsion ℤ/8ℤ or ℤ/2ℤ × ℤ/6ℤ.
//!
//! - [`exact_math`]: rationals, polynomials, rational functions, square roots.
//! - [`curves`]: Weierstrass models, Tate normal form, the group law.
//! - [`catalog`]: every family, substitution chain and claimed point.
//! - [`verify`]: symbolic membership, sampled torsion, independence checks.
//! - [`torsion`]: point counting mod p and the rational torsion subgroup.
//! - [`heights`]: canonical heights, pairings and regulators.
//! - [`rank3`]: parameter matching and rank-3 curve generation.
//! - [`sieve`]: Mestre–Nagao sums and parameter scans.
//! - [`cli`]: the `ecfam` command line.

pub mod error;
pub mod catalog;
pub mod curves;
pub mod exact_math;
pub mod heights;
pub mod rank3;
pub mod sieve;
pub mod torsion;
pub mod verify;

pub use error::{Error, Result};
