//! Exact arithmetic for the Hodge spectrum of an irreducible plane curve
//! singularity given by its Puiseux pairs.
//!
//! Everything is computed over arbitrary-precision rationals — there is no
//! floating point anywhere in the evaluation paths, so equalities and
//! inequalities reported by this crate are exact statements, not numerical
//! ones.
//!
//! The pieces:
//!
//! - [`curve`] — input validation and the classical invariants derived from
//!   the pairs: multiplicity sequence data `e_j`, `w_j`, Milnor number `μ`,
//!   characteristic exponents, semigroup generators, log canonical
//!   threshold.
//! - [`spectrum`] — brute-force enumeration of the spectrum in `(0, 1)` and
//!   a counting oracle built from it.
//! - [`distribution`] — the closed-form counting function and the cumulative
//!   difference function `φ_f`, cross-checked against each other on every
//!   call path that computes both.
//! - [`dominating`] — quadratic lower bounds for `2μ·φ_f`, their
//!   discriminants, and certified rational enclosures of the intervals of
//!   dominating values they prove.
//! - [`family`] — one-parameter families of curves, scans of `φ_f` along a
//!   family, and convergence verdicts.
//! - [`exact`] — the small arithmetic toolkit the rest sits on: fractional
//!   parts, integer square roots, rational parsing, interval enclosures of
//!   square roots.

pub mod curve;
pub mod distribution;
pub mod dominating;
pub mod error;
pub mod exact;
pub mod family;
pub mod spectrum;

pub use error::Error;
