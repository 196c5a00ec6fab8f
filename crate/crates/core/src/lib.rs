//! Verification toolkit for greatest prime factors of products of
//! integers in arithmetic progression with difference 2 or 3, and for the
//! irreducibility of generalized Hermite–Laguerre polynomials.
//!
//! The crate is split by subject:
//!
//! * [`primes`]: prime tables, π/θ and their closed-form estimates;
//! * [`smoothness`]: Δ(m, d, k), exceptional-window searches, the deletion
//!   argument and the inequality machinery built on it;
//! * [`irreducibility`]: Newton polygons and the factor-degree exclusion
//!   criterion;
//! * [`gpoly`]: coefficients of G_q(x) and a mod-p factor-degree oracle;
//! * [`diophantine`]: bounded solvers for the exponential and Thue
//!   equations behind the exceptional cases.
//!
//! Every search is bounded. Results are "verified up to the stated bound",
//! never unconditional statements.

pub mod arith;
pub mod diophantine;
mod error;
pub mod gpoly;
pub mod irreducibility;
pub mod numeric;
pub mod primes;
pub mod smoothness;

pub use error::{Error, Result};
