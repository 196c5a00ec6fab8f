use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::factor_u64;
use crate::error::{Error, Result};

/// The product Δ(m, d, k) = m(m + d)⋯(m + (k − 1)d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProgressionWindow {
    pub m: u64,
    pub d: u64,
    pub k: u64,
}

impl ProgressionWindow {
    /// Validates `d ∈ {2, 3}`, `k ≥ 1`, `m ≥ 1` and `gcd(m, d) = 1`.
    pub fn new(m: u64, d: u64, k: u64) -> Result<Self> {
        if d != 2 && d != 3 {
            return Err(Error::Argument(format!("common difference must be 2 or 3, got {d}")));
        }
        if m == 0 || k == 0 {
            return Err(Error::Argument(format!("need m ≥ 1 and k ≥ 1, got m = {m}, k = {k}")));
        }
        if m.gcd(&d) != 1 {
            return Err(Error::Argument(format!("gcd(m, d) = gcd({m}, {d}) ≠ 1")));
        }
        let last = (k - 1).checked_mul(d).and_then(|s| s.checked_add(m));
        if last.is_none() {
            return Err(Error::Capacity("last term does not fit in 64 bits".into()));
        }
        Ok(ProgressionWindow { m, d, k })
    }

    pub fn term(&self, i: u64) -> u64 {
        self.m + i * self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.k).map(|i| self.term(i))
    }

    pub fn last_term(&self) -> u64 {
        self.term(self.k - 1)
    }

    /// Δ(m, d, k) as an exact big integer.
    pub fn product(&self) -> BigUint {
        self.terms().fold(BigUint::from(1u32), |acc, t| acc * t)
    }

    /// Whether `m > dk`, the range where the main theorem speaks.
    pub fn in_theorem_range(&self) -> bool {
        self.m > self.d * self.k
    }

    /// Threshold that P(Δ) must exceed.
    pub fn threshold(&self) -> Threshold {
        match self.d {
            2 if 2 * self.m <= 5 * self.k => Threshold::SevenHalvesK(self.k),
            2 => Threshold::FourK(self.k),
            _ => Threshold::ThreeK(self.k),
        }
    }
}

impl fmt::Display for ProgressionWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ({}, {}, {})", self.m, self.d, self.k)
    }
}

/// The lower bound for P(Δ(m, d, k)): 3.5k or 4k for d = 2, 3k for d = 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Threshold {
    SevenHalvesK(u64),
    FourK(u64),
    ThreeK(u64),
}

impl Threshold {
    /// Strict comparison `p > threshold`; 3.5k is compared as 2p > 7k.
    pub fn exceeded_by(self, p: u64) -> bool {
        match self {
            Threshold::SevenHalvesK(k) => 2 * p > 7 * k,
            Threshold::FourK(k) => p > 4 * k,
            Threshold::ThreeK(k) => p > 3 * k,
        }
    }

    /// Largest integer not exceeding the threshold.
    pub fn floor(self) -> u64 {
        match self {
            Threshold::SevenHalvesK(k) => 7 * k / 2,
            Threshold::FourK(k) => 4 * k,
            Threshold::ThreeK(k) => 3 * k,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Threshold::SevenHalvesK(k) => 3.5 * k as f64,
            Threshold::FourK(k) => 4.0 * k as f64,
            Threshold::ThreeK(k) => 3.0 * k as f64,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Threshold::SevenHalvesK(_) => "3.5k",
            Threshold::FourK(_) => "4k",
            Threshold::ThreeK(_) => "3k",
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.value();
        if v.fract() == 0.0 {
            write!(f, "{}={}", self.label(), v as u64)
        } else {
            write!(f, "{}={}", self.label(), v)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactoredTerm {
    pub term: u64,
    pub factors: Vec<(u64, u32)>,
}

/// Every term of Δ(m, d, k) together with its factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowFactorization {
    pub window: ProgressionWindow,
    pub per_term: Vec<FactoredTerm>,
}

impl WindowFactorization {
    /// P(Δ), with P(1) = 1.
    pub fn gpf(&self) -> u64 {
        self.per_term.iter().filter_map(|t| t.factors.last().map(|&(p, _)| p)).max().unwrap_or(1)
    }

    /// Distinct primes dividing Δ, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.per_term.iter().flat_map(|t| t.factors.iter().map(|&(p, _)| p)).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// ω(Δ).
    pub fn omega(&self) -> usize {
        self.primes().len()
    }

    /// ord_p of the `i`-th term.
    pub fn ord(&self, i: usize, p: u64) -> u32 {
        self.per_term[i].factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    /// Product of the reconstructed terms.
    pub fn reconstruct(&self) -> BigUint {
        self.per_term
            .iter()
            .flat_map(|t| t.factors.iter())
            .fold(BigUint::from(1u32), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
    }
}

pub fn factor_window(window: ProgressionWindow) -> WindowFactorization {
    let per_term = window.terms().map(|term| FactoredTerm { term, factors: factor_u64(term) }).collect();
    WindowFactorization { window, per_term }
}

/// P(Δ(m, d, k)).
pub fn gpf(window: ProgressionWindow) -> u64 {
    window.terms().map(crate::arith::gpf_u64).max().unwrap_or(1)
}

/// One evaluated window, in the row shape written by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub m: u64,
    pub d: u64,
    pub k: u64,
    pub gpf: u64,
    pub threshold: String,
    pub verdict: FindingVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingVerdict {
    /// P(Δ) exceeds the threshold.
    Ok,
    /// P(Δ) does not exceed the threshold.
    Exception,
}

pub fn evaluate(window: ProgressionWindow) -> Finding {
    let p = gpf(window);
    let threshold = window.threshold();
    Finding {
        m: window.m,
        d: window.d,
        k: window.k,
        gpf: p,
        threshold: threshold.to_string(),
        verdict: if threshold.exceeded_by(p) { FindingVerdict::Ok } else { FindingVerdict::Exception },
    }
}
