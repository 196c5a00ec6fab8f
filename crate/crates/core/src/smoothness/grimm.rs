use serde::Serialize;

use super::window::{factor_window, ProgressionWindow};
use crate::arith::{factor_u64, is_prime_u64};
use crate::error::{Error, Result};
use crate::primes::PrimeTable;

/// Assign distinct primes P_i | (m + i) to the composite run m+1, …, m+l.
///
/// Uses augmenting paths (Kuhn's algorithm); each term tries its prime
/// divisors from largest to smallest, so the result is deterministic.
/// Returns `None` when no system of distinct representatives exists.
pub fn grimm_matching(m: u64, l: u64) -> Result<Option<Vec<(u64, u64)>>> {
    let terms: Vec<u64> = (1..=l).map(|i| m + i).collect();
    if let Some(&t) = terms.iter().find(|&&t| t < 4 || is_prime_u64(t)) {
        return Err(Error::Argument(format!("{t} is not composite")));
    }
    let options: Vec<Vec<u64>> =
        terms.iter().map(|&t| factor_u64(t).into_iter().rev().map(|(p, _)| p).collect()).collect();
    let mut owner: std::collections::HashMap<u64, usize> = std::collections::HashMap::new();

    fn augment(
        i: usize,
        options: &[Vec<u64>],
        owner: &mut std::collections::HashMap<u64, usize>,
        seen: &mut std::collections::HashSet<u64>,
    ) -> bool {
        for &p in &options[i] {
            if !seen.insert(p) {
                continue;
            }
            let free = match owner.get(&p) {
                None => true,
                Some(&j) => augment(j, options, owner, seen),
            };
            if free {
                owner.insert(p, i);
                return true;
            }
        }
        false
    }

    for i in 0..terms.len() {
        let mut seen = std::collections::HashSet::new();
        if !augment(i, &options, &mut owner, &mut seen) {
            return Ok(None);
        }
    }
    let mut assignment = vec![0u64; terms.len()];
    for (p, i) in owner {
        assignment[i] = p;
    }
    Ok(Some(terms.into_iter().zip(assignment).collect()))
}

/// Outcome of the dichotomy for Δ(m, 2, k) with m > 4k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum NorpkOutcome {
    /// Some term m + 2i is a prime above 4k.
    GpfGt4k { prime_term: u64 },
    /// All terms are composite; ω(Δ) ≥ k and hence P(Δ) ≥ p_{k+1}.
    OmegaGeKThusPk1 { omega: usize, gpf: u64, p_k1: u64 },
}

/// Classify Δ(m, 2, k) (m odd, m > 4k) by exhibiting either a prime term
/// or at least k distinct primes.
pub fn norpk_check(m: u64, k: u64, table: &PrimeTable) -> Result<NorpkOutcome> {
    let window = ProgressionWindow::new(m, 2, k)?;
    if m <= 4 * k {
        return Err(Error::Inapplicable(format!("need m > 4k, got m = {m}, k = {k}")));
    }
    if let Some(t) = window.terms().find(|&t| is_prime_u64(t)) {
        return Ok(NorpkOutcome::GpfGt4k { prime_term: t });
    }
    let f = factor_window(window);
    let omega = f.omega();
    let gpf = f.gpf();
    let p_k1 =
        table.nth(k as usize + 1).ok_or_else(|| Error::Capacity(format!("table holds fewer than {} primes", k + 1)))?;
    if omega < k as usize || gpf < p_k1 {
        return Err(Error::Inconsistent(format!(
            "all terms of Δ({m}, 2, {k}) composite but ω = {omega}, P = {gpf}, p_(k+1) = {p_k1}"
        )));
    }
    Ok(NorpkOutcome::OmegaGeKThusPk1 { omega, gpf, p_k1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_matching() {
        let got = grimm_matching(24, 4).unwrap().unwrap();
        assert_eq!(got, vec![(25, 5), (26, 13), (27, 3), (28, 7)]);
    }

    #[test]
    fn ninety_run() {
        // 91..96 composite
        let got = grimm_matching(90, 6).unwrap().unwrap();
        let mut ps: Vec<u64> = got.iter().map(|&(_, p)| p).collect();
        assert!(got.iter().all(|&(t, p)| t % p == 0));
        ps.sort_unstable();
        ps.dedup();
        assert_eq!(ps.len(), 6);
    }

    #[test]
    fn rejects_primes_and_reports_no_matching() {
        assert!(grimm_matching(22, 2).is_err());
        // 8, 9, 10 share primes 2, 3 and 5: fine; 8, 9, 16 would not be a run
        assert!(grimm_matching(7, 3).unwrap().is_some());
    }

    #[test]
    fn dichotomy() {
        let t = PrimeTable::sieve(1000).unwrap();
        assert_eq!(norpk_check(113, 5, &t).unwrap(), NorpkOutcome::GpfGt4k { prime_term: 113 });
        match norpk_check(115, 3, &t).unwrap() {
            NorpkOutcome::OmegaGeKThusPk1 { omega, gpf, p_k1 } => {
                assert_eq!(omega, 6);
                assert_eq!(gpf, 23);
                assert_eq!(p_k1, 7);
            }
            other => panic!("{other:?}"),
        }
        assert!(norpk_check(15, 4, &t).is_err());
    }
}
