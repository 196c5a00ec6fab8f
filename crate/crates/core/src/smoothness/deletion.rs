//! The deletion argument: remove, for every small prime, one term of Δ
//! where that prime appears to maximal power, then bound the product of
//! the smallest survivors from both sides.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use super::window::{ProgressionWindow, WindowFactorization};
use crate::error::{Error, Result};
use crate::primes::{factorial, ord_factorial, PrimeTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurvivorSet {
    pub window: ProgressionWindow,
    /// 4 when d = 2, 3 when d = 3 in the main argument.
    pub big_d: u64,
    /// prime p ≤ Dk dividing Δ → index i_p of the deleted term.
    pub deleted: BTreeMap<u64, u64>,
    /// Surviving terms, ascending.
    pub survivors: Vec<u64>,
    /// π(Dk).
    pub pi_dk: u64,
    /// t₀ = k − π(Dk); may be negative.
    pub t0: i64,
    /// Product of the smallest min(t₀ + 1, |survivors|) survivors (1 if none).
    pub product: BigUint,
}

impl SurvivorSet {
    /// Number of indices removed (distinct primes may pick the same term).
    pub fn deleted_indices(&self) -> usize {
        let mut idx: Vec<u64> = self.deleted.values().copied().collect();
        idx.sort_unstable();
        idx.dedup();
        idx.len()
    }

    /// Terms entering the survivor product.
    pub fn product_terms(&self) -> &[u64] {
        let n = usize::try_from(self.t0 + 1).unwrap_or(0).min(self.survivors.len());
        &self.survivors[..n]
    }
}

/// Default D for a common difference.
pub fn default_big_d(d: u64) -> u64 {
    if d == 2 {
        4
    } else {
        3
    }
}

/// For each prime p ≤ Dk dividing Δ delete the term with the largest
/// ord_p, breaking ties toward the smallest index.
pub fn deletion_survivors(factored: &WindowFactorization, big_d: u64, table: &PrimeTable) -> Result<SurvivorSet> {
    let window = factored.window;
    let bound = big_d * window.k;
    let pi_dk = table.pi(bound)?;
    let mut deleted = BTreeMap::new();
    for p in factored.primes().into_iter().filter(|&p| p <= bound) {
        let mut best = (0u32, 0u64);
        for i in 0..window.k {
            let e = factored.ord(i as usize, p);
            if e > best.0 {
                best = (e, i);
            }
        }
        deleted.insert(p, best.1);
    }
    let survivors: Vec<u64> =
        (0..window.k).filter(|i| !deleted.values().any(|j| j == i)).map(|i| window.term(i)).collect();
    let t0 = window.k as i64 - pi_dk as i64;
    let n = usize::try_from(t0 + 1).unwrap_or(0).min(survivors.len());
    let product = survivors[..n].iter().fold(BigUint::from(1u32), |acc, &t| acc * t);
    Ok(SurvivorSet { window, big_d, deleted, survivors, pi_dk, t0, product })
}

/// (k − 1)! with every factor d removed: (k − 1)! · d^(−ord_d((k − 1)!)).
pub fn factorial_without_d(k: u64, d: u64) -> BigUint {
    let f = factorial(k.saturating_sub(1));
    f / BigUint::from(d).pow(ord_factorial(d, k.saturating_sub(1)) as u32)
}

/// Whether 𝔓 ≤ (k − 1)! · d^(−ord_d((k − 1)!)), in exact integers.
///
/// Needs P(Δ) < Dk and m > dk. When t₀ < 0 the product is empty and the
/// bound holds trivially.
pub fn survivor_product_bound_check(s: &SurvivorSet, gpf: u64) -> Result<bool> {
    let w = s.window;
    if gpf >= s.big_d * w.k {
        return Err(Error::Inapplicable(format!("P(Δ) = {gpf} is not below Dk = {}", s.big_d * w.k)));
    }
    if !w.in_theorem_range() {
        return Err(Error::Inapplicable(format!("m = {} does not exceed dk = {}", w.m, w.d * w.k)));
    }
    Ok(s.product <= factorial_without_d(w.k, w.d))
}

/// The lower bound 𝔓 ≥ d^(t₀+1) ∏_{i=0}^{t₀} (vk + i) = ∏_{i=0}^{t₀} (m + id).
pub fn survivor_product_lower_bound(s: &SurvivorSet) -> Option<BigUint> {
    let t0 = u64::try_from(s.t0).ok()?;
    Some((0..=t0).fold(BigUint::from(1u32), |acc, i| acc * s.window.term(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smoothness::window::factor_window;

    fn survivors(m: u64, d: u64, k: u64) -> SurvivorSet {
        let t = PrimeTable::sieve(1000).unwrap();
        let f = factor_window(ProgressionWindow::new(m, d, k).unwrap());
        deletion_survivors(&f, default_big_d(d), &t).unwrap()
    }

    #[test]
    fn nine_two_four_is_emptied() {
        let s = survivors(9, 2, 4);
        let want: BTreeMap<u64, u64> = [(3, 0), (5, 3), (11, 1), (13, 2)].into_iter().collect();
        assert_eq!(s.deleted, want);
        assert!(s.survivors.is_empty());
        assert_eq!(s.product, BigUint::from(1u32));
    }

    #[test]
    fn vacuous_count_bound_still_builds() {
        let s = survivors(19, 2, 9);
        assert_eq!(s.pi_dk, 11);
        assert_eq!(s.t0, -2);
        assert_eq!(s.survivors.len() as u64, 9 - s.deleted_indices() as u64);
    }

    #[test]
    fn tie_breaks_to_smallest_index() {
        // 7, 9, 11, 13, 15: 3 divides 9 and 15 once each -> index 1
        let s = survivors(7, 2, 5);
        assert_eq!(s.deleted[&3], 1);
    }

    #[test]
    fn upper_bound_on_listed_exceptions() {
        for (m, d, k) in [(9, 2, 4), (13, 2, 5), (125, 3, 2)] {
            let w = ProgressionWindow::new(m, d, k).unwrap();
            let s = survivors(m, d, k);
            assert!(survivor_product_bound_check(&s, crate::smoothness::gpf(w)).unwrap());
        }
        let s = survivors(11, 2, 2);
        assert!(matches!(survivor_product_bound_check(&s, 13), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn factorial_without_d_values() {
        // 9! = 362880 = 2^7 * 2835
        assert_eq!(factorial_without_d(10, 2), BigUint::from(2835u32));
        assert_eq!(factorial_without_d(10, 3), BigUint::from(362880u32 / 81));
    }
}
