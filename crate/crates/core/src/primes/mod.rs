//! Prime tables, the counting functions π and θ (globally and in residue
//! classes), gaps between primes of a class, and the analytic estimates
//! the inequality machinery relies on.

mod estimates;
mod factorial;
mod sieve;

pub use estimates::{
    check_bound, estimate_value, BoundCheck, EstimateKind, EstimateProfile, Verdict, DUSART_PI_CONST,
    DUSART_THETA_LOWER_CONST, DUSART_THETA_UPPER_FACTOR, MARGIN_TOLERANCE, RR_SQRT_CONST, RR_SWITCH, RR_TAIL_CONST,
};
pub use factorial::{factorial, factorial_bounds, ord_factorial, ord_factorial_lower_bound, FactorialBounds};
pub use sieve::{prime_in_interval, GapRecord, PrimeTable, MAX_TABLE_LIMIT};

use crate::error::Result;
use crate::numeric::{ln_u64, DoubleDouble};

/// The constant M₀ = 1.92367 × 10¹⁰ up to which Grimm-type statements are known.
pub const M0: u64 = 19_236_700_000;

/// Prefix sums of π and θ restricted to one residue class, for many
/// queries against the same table.
#[derive(Debug, Clone)]
pub struct ChebyshevIndex {
    modulus: u64,
    residue: u64,
    limit: u64,
    primes: Vec<u64>,
    theta_prefix: Vec<f64>,
}

impl ChebyshevIndex {
    pub fn new(table: &PrimeTable, modulus: u64, residue: u64) -> Result<Self> {
        sieve::check_class(modulus, residue)?;
        let primes: Vec<u64> = table.iter().filter(|p| p % modulus == residue).collect();
        let mut acc = DoubleDouble::ZERO;
        let mut theta_prefix = Vec::with_capacity(primes.len() + 1);
        theta_prefix.push(0.0);
        for &p in &primes {
            acc += ln_u64(p);
            theta_prefix.push(acc.to_f64());
        }
        Ok(ChebyshevIndex { modulus, residue, limit: table.limit(), primes, theta_prefix })
    }

    /// Index over all primes (μ = 1).
    pub fn global(table: &PrimeTable) -> Self {
        Self::new(table, 1, 0).expect("trivial class")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    fn count(&self, x: u64) -> Result<usize> {
        if x > self.limit {
            return Err(crate::Error::Range(format!("{x} exceeds table limit {}", self.limit)));
        }
        Ok(self.primes.partition_point(|&p| p <= x))
    }

    pub fn pi(&self, x: u64) -> Result<u64> {
        self.count(x).map(|c| c as u64)
    }

    pub fn theta(&self, x: u64) -> Result<f64> {
        self.count(x).map(|c| self.theta_prefix[c])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_matches_direct_sums() {
        let t = PrimeTable::sieve(5000).unwrap();
        let g = ChebyshevIndex::global(&t);
        let c1 = ChebyshevIndex::new(&t, 3, 1).unwrap();
        for x in [2u64, 3, 10, 100, 997, 4999] {
            assert_eq!(g.pi(x).unwrap(), t.pi(x).unwrap());
            assert!((g.theta(x).unwrap() - t.theta(x).unwrap()).abs() < 1e-12);
            assert_eq!(c1.pi(x).unwrap(), t.pi_ap(x, 3, 1).unwrap());
            assert!((c1.theta(x).unwrap() - t.theta_ap(x, 3, 1).unwrap()).abs() < 1e-12);
        }
        assert!(g.pi(5001).is_err());
        assert!(ChebyshevIndex::new(&t, 3, 3).is_err());
    }
}
