use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::ln_biguint;

/// ord_p(k!) by Legendre's formula Σ ⌊k/p^j⌋.
pub fn ord_factorial(p: u64, k: u64) -> u64 {
    assert!(p >= 2);
    let mut total = 0;
    let mut q = k;
    while q >= p {
        q /= p;
        total += q;
    }
    total
}

/// (k − p)/(p − 1) − log(k − 1)/log p, valid for k > 1 and p < k.
pub fn ord_factorial_lower_bound(p: u64, k: u64) -> Result<f64> {
    if k < 2 || p >= k || p < 2 {
        return Err(Error::Domain(format!("need k > 1 and 2 ≤ p < k, got p = {p}, k = {k}")));
    }
    let (p, k) = (p as f64, k as f64);
    Ok((k - p) / (p - 1.0) - (k - 1.0).ln() / p.ln())
}

/// Robbins' two-sided Stirling bounds, kept in logarithmic form so they
/// remain finite for large k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorialBounds {
    pub k: u64,
    pub ln_lower: f64,
    pub ln_upper: f64,
}

impl FactorialBounds {
    pub fn lower(&self) -> f64 {
        self.ln_lower.exp()
    }

    pub fn upper(&self) -> f64 {
        self.ln_upper.exp()
    }

    /// Strict bracketing of an exact factorial, compared in log space.
    pub fn brackets(&self, exact: &BigUint) -> bool {
        let ln = ln_biguint(exact);
        self.ln_lower < ln && ln < self.ln_upper
    }
}

pub fn factorial_bounds(k: u64) -> Result<FactorialBounds> {
    if k < 2 {
        return Err(Error::Domain(format!("factorial bounds need k > 1, got {k}")));
    }
    let kf = k as f64;
    let base = 0.5 * (2.0 * std::f64::consts::PI * kf).ln() - kf + kf * kf.ln();
    Ok(FactorialBounds { k, ln_lower: base + 1.0 / (12.0 * kf + 1.0), ln_upper: base + 1.0 / (12.0 * kf) })
}

pub fn factorial(k: u64) -> BigUint {
    (2..=k).fold(BigUint::from(1u32), |acc, i| acc * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre() {
        assert_eq!(ord_factorial(2, 10), 8);
        assert_eq!(ord_factorial(3, 9), 4);
        assert_eq!(ord_factorial(5, 4), 0);
        // direct count on 30!
        let f = factorial(30);
        let mut m = f.clone();
        let mut e = 0;
        while (&m % 2u32) == BigUint::from(0u32) {
            m /= 2u32;
            e += 1;
        }
        assert_eq!(ord_factorial(2, 30), e);
    }

    #[test]
    fn legendre_dominates_lower_bound() {
        for k in 3..=2000u64 {
            for p in crate::primes::PrimeTable::sieve(k).unwrap().up_to(k - 1) {
                assert!(ord_factorial(p, k) as f64 >= ord_factorial_lower_bound(p, k).unwrap(), "p={p} k={k}");
            }
        }
        assert!(ord_factorial_lower_bound(5, 5).is_err());
    }

    #[test]
    fn stirling_brackets() {
        assert!(factorial_bounds(2).unwrap().lower() < 2.0 && factorial_bounds(2).unwrap().upper() > 2.0);
        let b = factorial_bounds(10).unwrap();
        assert!(b.lower() < 3628800.0 && 3628800.0 < b.upper());
        for k in [2u64, 3, 10, 50, 100, 170] {
            assert!(factorial_bounds(k).unwrap().brackets(&factorial(k)), "k = {k}");
        }
        assert!(factorial_bounds(1).is_err());
    }
}
