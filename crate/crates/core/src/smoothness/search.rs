//! Bounded searches for windows whose greatest prime factor is small.

use serde::Serialize;

use super::window::{gpf, ProgressionWindow};
use crate::arith::smooth_gpf;
use crate::error::{Error, Result};
use crate::primes::PrimeTable;

/// Largest `m_max` accepted by [`exceptional_search`].
pub const MAX_SEARCH_M: u64 = 1_000_000_000_000;

/// Width (in values of m) of one search segment.
const SEGMENT: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Exception {
    pub m: u64,
    pub k: u64,
    pub gpf: u64,
}

/// For each n in `[lo, lo + len)`, the largest prime factor when n is
/// `cap`-smooth, or 0 when n has a prime factor above `cap`.
pub(crate) fn smooth_segment(lo: u64, len: usize, small_primes: &[u64]) -> Vec<u64> {
    let mut rest: Vec<u64> = (lo..lo + len as u64).collect();
    let mut largest = vec![1u64; len];
    for &p in small_primes {
        let first = lo.div_ceil(p) * p;
        let mut idx = (first - lo) as usize;
        while idx < len {
            let r = &mut rest[idx];
            while *r % p == 0 {
                *r /= p;
            }
            largest[idx] = p;
            idx += p as usize;
        }
    }
    rest.iter().zip(largest).map(|(&r, l)| if r == 1 { l } else { 0 }).collect()
}

fn run_chunks<T: Send>(starts: Vec<u64>, f: impl Fn(u64) -> Vec<T> + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    let parts: Vec<Vec<T>> = {
        use rayon::prelude::*;
        starts.into_par_iter().map(&f).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Vec<T>> = starts.into_iter().map(&f).collect();
    parts.into_iter().flatten().collect()
}

/// All (m, k) with `k_min ≤ k ≤ k_max`, `d ∤ m` and `dk < m ≤ m_max` for
/// which P(Δ(m, d, k)) does not exceed the threshold (3.5k, 4k or 3k).
/// Results are sorted by (k, m).
pub fn exceptional_search(d: u64, k_min: u64, k_max: u64, m_max: u64) -> Result<Vec<Exception>> {
    if d != 2 && d != 3 {
        return Err(Error::Argument(format!("common difference must be 2 or 3, got {d}")));
    }
    if k_min < 2 || k_max < k_min {
        return Err(Error::Argument(format!("need 2 ≤ k_min ≤ k_max, got {k_min}..{k_max}")));
    }
    if m_max > MAX_SEARCH_M {
        return Err(Error::Capacity(format!("m_max {m_max} exceeds {MAX_SEARCH_M}")));
    }
    let cap = 4 * k_max;
    let small: Vec<u64> = PrimeTable::sieve(cap.max(2))?.iter().collect();
    let m_lo = d * k_min + 1;
    if m_lo > m_max {
        return Ok(Vec::new());
    }
    let span = d * (k_max - 1);
    let starts: Vec<u64> = (m_lo..=m_max).step_by(SEGMENT as usize).collect();

    let mut found = run_chunks(starts, |lo| {
        let hi = (lo + SEGMENT - 1).min(m_max);
        let len = (hi - lo + 1 + span) as usize;
        let lpf = smooth_segment(lo, len, &small);
        let mut out = Vec::new();
        for m in lo..=hi {
            if m % d == 0 {
                continue;
            }
            'k: for k in k_min..=k_max {
                if m <= d * k {
                    break;
                }
                let window = ProgressionWindow { m, d, k };
                let threshold = window.threshold();
                let mut largest = 1;
                for i in 0..k {
                    let p = lpf[(m - lo + i * d) as usize];
                    if p == 0 || threshold.exceeded_by(p) {
                        continue 'k;
                    }
                    largest = largest.max(p);
                }
                out.push(Exception { m, k, gpf: largest });
            }
        }
        out
    });
    found.sort_unstable_by_key(|e| (e.k, e.m));
    debug_assert!(found.iter().all(|e| gpf(ProgressionWindow { m: e.m, d, k: e.k }) == e.gpf));
    Ok(found)
}

/// Odd m with 2k < m < 4k for which P(Δ(m, 2, k)) does not exceed 3.5k
/// (when m ≤ 2.5k) or 4k (when m > 2.5k).
pub fn cor24_search(k: u64) -> Result<Vec<u64>> {
    if k < 2 {
        return Err(Error::Argument(format!("need k ≥ 2, got {k}")));
    }
    Ok((2 * k + 1..4 * k)
        .filter(|m| m % 2 == 1)
        .filter(|&m| {
            let w = ProgressionWindow { m, d: 2, k };
            !w.threshold().exceeded_by(gpf(w))
        })
        .collect())
}

/// The integer polynomial `a·X + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AffineForm {
    pub a: i64,
    pub b: i64,
}

impl AffineForm {
    pub const fn shift(b: i64) -> Self {
        AffineForm { a: 1, b }
    }

    pub const fn new(a: i64, b: i64) -> Self {
        AffineForm { a, b }
    }

    pub fn eval(self, x: u64) -> i128 {
        self.a as i128 * x as i128 + self.b as i128
    }
}

/// A search for X in `[lo, hi]` such that every form in `forms` is
/// `prime_cap`-smooth at X and, when `alternatives` is non-empty, all forms
/// of at least one alternative group are too. A zero value is never smooth.
#[derive(Debug, Clone, Serialize)]
pub struct LehmerQuery {
    pub lo: u64,
    pub hi: u64,
    pub prime_cap: u64,
    pub forms: Vec<AffineForm>,
    pub alternatives: Vec<Vec<AffineForm>>,
}

impl LehmerQuery {
    /// X in `[lo, hi]` with P(∏ (X + offset)) ≤ `prime_cap`.
    pub fn offsets(lo: u64, hi: u64, prime_cap: u64, offsets: &[i64]) -> Self {
        LehmerQuery {
            lo,
            hi,
            prime_cap,
            forms: offsets.iter().map(|&b| AffineForm::shift(b)).collect(),
            alternatives: Vec::new(),
        }
    }
}

fn form_smooth(form: AffineForm, x: u64, small: &[u64]) -> bool {
    let v = form.eval(x).unsigned_abs();
    v != 0 && u64::try_from(v).is_ok_and(|v| smooth_gpf(v, small).is_some())
}

/// Run a [`LehmerQuery`] keeping only X accepted by `side` (parity and
/// residue side conditions). Results ascend.
pub fn lehmer_style_search(query: &LehmerQuery, side: impl Fn(u64) -> bool + Sync + Send) -> Result<Vec<u64>> {
    if query.lo > query.hi {
        return Ok(Vec::new());
    }
    let small: Vec<u64> = PrimeTable::sieve(query.prime_cap.max(2))?.up_to(query.prime_cap).collect();
    let starts: Vec<u64> = (query.lo..=query.hi).step_by(SEGMENT as usize).collect();
    Ok(run_chunks(starts, |lo| {
        let hi = (lo + SEGMENT - 1).min(query.hi);
        (lo..=hi)
            .filter(|&x| side(x))
            .filter(|&x| query.forms.iter().all(|&f| form_smooth(f, x, &small)))
            .filter(|&x| {
                query.alternatives.is_empty()
                    || query.alternatives.iter().any(|g| g.iter().all(|&f| form_smooth(f, x, &small)))
            })
            .collect()
    }))
}
