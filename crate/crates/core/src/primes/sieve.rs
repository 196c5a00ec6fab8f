use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{ln_u64, DoubleDouble};

/// Largest limit a [`PrimeTable`] can be built for. Primes are stored as `u32`.
pub const MAX_TABLE_LIMIT: u64 = u32::MAX as u64;

/// Odd numbers covered by one sieve segment.
const SEGMENT_ODDS: u64 = 1 << 18;

/// Immutable table of all primes up to `limit`, ascending.
#[derive(Debug, Clone, Serialize)]
pub struct PrimeTable {
    limit: u64,
    #[serde(skip)]
    primes: Vec<u32>,
}

fn simple_sieve(limit: u64) -> Vec<u32> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes in the odd numbers of `[lo, hi]`, `lo` odd and > 2.
fn sieve_segment(lo: u64, hi: u64, base: &[u32]) -> Vec<u32> {
    debug_assert!(lo % 2 == 1);
    let len = ((hi - lo) / 2 + 1) as usize;
    let mut composite = vec![false; len];
    for &p in base.iter().skip(1) {
        let p = p as u64;
        let p2 = p * p;
        if p2 > hi {
            break;
        }
        // first odd multiple of p that is >= max(p^2, lo)
        let mut start = p2.max(lo.div_ceil(p) * p);
        if start % 2 == 0 {
            start += p;
        }
        let mut idx = ((start - lo) / 2) as usize;
        let step = p as usize;
        while idx < len {
            composite[idx] = true;
            idx += step;
        }
    }
    composite.iter().enumerate().filter(|(_, &c)| !c).map(|(i, _)| (lo + 2 * i as u64) as u32).collect()
}

impl PrimeTable {
    /// Segmented sieve of Eratosthenes over odd numbers.
    pub fn sieve(limit: u64) -> Result<Self> {
        if !(2..=MAX_TABLE_LIMIT).contains(&limit) {
            return Err(Error::Capacity(format!("sieve limit {limit} outside [2, {MAX_TABLE_LIMIT}]")));
        }
        let root = (limit as f64).sqrt() as u64 + 2;
        let base = simple_sieve(root.min(limit));
        if limit <= root {
            return Ok(PrimeTable { limit, primes: base });
        }
        let mut starts = Vec::new();
        let mut lo = 3u64;
        while lo <= limit {
            starts.push(lo);
            lo += 2 * SEGMENT_ODDS;
        }
        let segment = |&lo: &u64| {
            let hi = (lo + 2 * (SEGMENT_ODDS - 1)).min(limit);
            sieve_segment(lo, hi, &base)
        };
        #[cfg(feature = "parallel")]
        let parts: Vec<Vec<u32>> = {
            use rayon::prelude::*;
            starts.par_iter().map(segment).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let parts: Vec<Vec<u32>> = starts.iter().map(segment).collect();

        let total: usize = parts.iter().map(Vec::len).sum();
        let mut primes = Vec::with_capacity(total + 1);
        primes.push(2);
        for part in parts {
            primes.extend(part);
        }
        Ok(PrimeTable { limit, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + ExactSizeIterator + '_ {
        self.primes.iter().map(|&p| p as u64)
    }

    /// The `i`-th prime, 1-based (`nth(1) == 2`).
    pub fn nth(&self, i: usize) -> Option<u64> {
        i.checked_sub(1).and_then(|j| self.primes.get(j)).map(|&p| p as u64)
    }

    /// Primes up to and including `x`.
    pub fn up_to(&self, x: u64) -> impl DoubleEndedIterator<Item = u64> + '_ {
        let end = self.primes.partition_point(|&p| (p as u64) <= x);
        self.primes[..end].iter().map(|&p| p as u64)
    }

    pub fn contains(&self, n: u64) -> bool {
        n <= self.limit && u32::try_from(n).is_ok_and(|n| self.primes.binary_search(&n).is_ok())
    }

    fn check_range(&self, x: u64) -> Result<()> {
        if x > self.limit {
            Err(Error::Range(format!("{x} exceeds table limit {}", self.limit)))
        } else {
            Ok(())
        }
    }

    /// π(x).
    pub fn pi(&self, x: u64) -> Result<u64> {
        self.check_range(x)?;
        Ok(self.primes.partition_point(|&p| (p as u64) <= x) as u64)
    }

    /// θ(x) = Σ_{p ≤ x} ln p.
    pub fn theta(&self, x: u64) -> Result<f64> {
        self.check_range(x)?;
        Ok(self.up_to(x).map(ln_u64).sum::<DoubleDouble>().to_f64())
    }

    /// π(x; μ, l): primes p ≤ x with p ≡ l (mod μ).
    pub fn pi_ap(&self, x: u64, modulus: u64, residue: u64) -> Result<u64> {
        check_class(modulus, residue)?;
        self.check_range(x)?;
        Ok(self.up_to(x).filter(|p| p % modulus == residue).count() as u64)
    }

    /// θ(x; μ, l).
    pub fn theta_ap(&self, x: u64, modulus: u64, residue: u64) -> Result<f64> {
        check_class(modulus, residue)?;
        self.check_range(x)?;
        Ok(self.up_to(x).filter(|p| p % modulus == residue).map(ln_u64).sum::<DoubleDouble>().to_f64())
    }

    /// The `i`-th prime congruent to `l` modulo `μ` (1-based).
    pub fn nth_prime_ap(&self, i: usize, modulus: u64, residue: u64) -> Result<u64> {
        check_class(modulus, residue)?;
        if i == 0 {
            return Err(Error::Argument("prime index is 1-based".into()));
        }
        self.iter().filter(|p| p % modulus == residue).nth(i - 1).ok_or_else(|| {
            Error::Capacity(format!("fewer than {i} primes ≡ {residue} (mod {modulus}) up to {}", self.limit))
        })
    }

    /// Largest gap between consecutive primes of the class `l mod μ`,
    /// taken over primes `p_i ≤ limit`. The successor of the last such
    /// prime may lie beyond `limit` (and beyond the table).
    pub fn max_gap_ap(&self, limit: u64, modulus: u64, residue: u64) -> Result<GapRecord> {
        check_class(modulus, residue)?;
        self.check_range(limit)?;
        let class: Vec<u64> = self.up_to(limit).filter(|p| p % modulus == residue).collect();
        if class.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "fewer than two primes ≡ {residue} (mod {modulus}) up to {limit}"
            )));
        }
        let last = *class.last().unwrap();
        let successor = next_prime_in_class(last, modulus, residue);
        let mut best = GapRecord { max_gap: 0, witness_prime: 0 };
        let pairs = class.windows(2).map(|w| (w[0], w[1])).chain([(last, successor)]);
        for (p, q) in pairs {
            if q - p > best.max_gap {
                best = GapRecord { max_gap: q - p, witness_prime: p };
            }
        }
        Ok(best)
    }
}

/// A maximal gap and the prime that opens it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapRecord {
    pub max_gap: u64,
    pub witness_prime: u64,
}

fn next_prime_in_class(after: u64, modulus: u64, residue: u64) -> u64 {
    let mut n = after + modulus;
    while !crate::arith::is_prime_u64(n) {
        n += modulus;
    }
    debug_assert_eq!(n % modulus, residue);
    n
}

pub(crate) fn check_class(modulus: u64, residue: u64) -> Result<()> {
    use num_integer::Integer;
    // μ = 1 is the trivial class used for π(x) = π(x, 1, 1)
    if modulus == 1 && residue <= 1 {
        return Ok(());
    }
    if modulus < 2 || residue == 0 || residue >= modulus || residue.gcd(&modulus) != 1 {
        return Err(Error::Argument(format!(
            "residue class {residue} mod {modulus} needs 1 ≤ l < μ and gcd(l, μ) = 1"
        )));
    }
    Ok(())
}

/// Smallest prime strictly between `a` and `b`.
pub fn prime_in_interval(a: f64, b: f64) -> Option<u64> {
    if !(a < b) || b <= 2.0 {
        return None;
    }
    let start = if a < 1.0 { 2 } else { a.floor() as u64 + 1 };
    (start..).take_while(|&n| (n as f64) < b).find(|&n| crate::arith::is_prime_u64(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn small_tables() {
        assert_eq!(PrimeTable::sieve(10).unwrap().iter().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(PrimeTable::sieve(2).unwrap().iter().collect::<Vec<_>>(), vec![2]);
        assert!(matches!(PrimeTable::sieve(1), Err(Error::Capacity(_))));
        assert!(matches!(PrimeTable::sieve(MAX_TABLE_LIMIT + 1), Err(Error::Capacity(_))));
    }

    #[test]
    fn membership_matches_trial_division_across_segments() {
        // crosses several segment boundaries
        let limit = 3 * 2 * SEGMENT_ODDS + 12345;
        let t = PrimeTable::sieve(limit).unwrap();
        let brute = (0..=limit).filter(|&n| trial_prime(n)).count();
        assert_eq!(t.len(), brute);
        for n in (0..=limit).step_by(7) {
            assert_eq!(t.contains(n), trial_prime(n), "n = {n}");
        }
        assert!(t.iter().zip(t.iter().skip(1)).all(|(a, b)| a < b));
    }

    #[test]
    fn counting_functions() {
        let t = PrimeTable::sieve(1000).unwrap();
        assert_eq!(t.pi(100).unwrap(), 25);
        assert!((t.theta(10).unwrap() - 210f64.ln()).abs() < 1e-15);
        assert_eq!(t.pi_ap(20, 3, 1).unwrap(), 3);
        assert!(matches!(t.pi(1001), Err(Error::Range(_))));
        assert!(matches!(t.pi_ap(10, 3, 0), Err(Error::Argument(_))));
        assert!(matches!(t.theta_ap(10, 4, 2), Err(Error::Argument(_))));
    }

    #[test]
    fn primes_in_classes() {
        let t = PrimeTable::sieve(100).unwrap();
        assert_eq!(t.nth_prime_ap(1, 3, 1).unwrap(), 7);
        assert_eq!(t.nth_prime_ap(1, 3, 2).unwrap(), 2);
        assert_eq!(t.nth_prime_ap(3, 3, 2).unwrap(), 11);
        assert!(matches!(t.nth_prime_ap(100, 3, 1), Err(Error::Capacity(_))));
    }

    #[test]
    fn gaps() {
        let t = PrimeTable::sieve(100).unwrap();
        // class 1 mod 3: 7, 13, 19, 31, 37, 43, 61, ...
        let g = t.max_gap_ap(40, 3, 1).unwrap();
        assert_eq!(g, GapRecord { max_gap: 12, witness_prime: 19 });
        // successor of 37 is 43 (beyond the limit): still gap 12 max
        assert!(matches!(t.max_gap_ap(7, 3, 1), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn intervals() {
        assert_eq!(prime_in_interval(35.0, 40.0), Some(37));
        assert_eq!(prime_in_interval(8.0, 10.0), None);
        assert_eq!(prime_in_interval(7.0, 8.0), None);
        assert_eq!(prime_in_interval(0.0, 3.0), Some(2));
    }
}
