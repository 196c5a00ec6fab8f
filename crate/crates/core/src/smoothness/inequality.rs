//! The inequalities (E0), (E3), (E4) comparing the two bounds on the
//! survivor product, the scan for k₀(v), and the θ-gap criterion that
//! forces a prime into long windows.
//!
//! (E0) is decided in exact rational arithmetic. (E3) and (E4) are real
//! inequalities evaluated in `f64`; they return a signed margin where a
//! positive value means the inequality holds.

use std::f64::consts::{E, PI};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::deletion::default_big_d;
use crate::error::{Error, Result};
use crate::primes::{
    factorial, ord_factorial, PrimeTable, Verdict, DUSART_PI_CONST, DUSART_THETA_LOWER_CONST,
    DUSART_THETA_UPPER_FACTOR, RR_SQRT_CONST,
};

/// Parameters (d, D, v = m/(dk), k) of one inequality evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityContext {
    pub d: u64,
    pub big_d: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub v: BigRational,
    pub k: u64,
    /// π(Dk).
    pub pi_dk: u64,
}

fn ser_ratio<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn check_d(d: u64) -> Result<()> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(Error::Argument(format!("common difference must be 2 or 3, got {d}")))
    }
}

fn check_vd(v: f64, d: u64) -> Result<()> {
    let big_d = default_big_d(d);
    if !(v * d as f64 >= big_d as f64) {
        return Err(Error::Inapplicable(format!("v·d = {} is below D = {big_d}", v * d as f64)));
    }
    Ok(())
}

impl InequalityContext {
    /// Requires `d ∈ {2, 3}`, `v·d ≥ D`, `k ≥ 2` and `k ≥ π(Dk)`.
    pub fn new(d: u64, v: BigRational, k: u64) -> Result<Self> {
        check_d(d)?;
        let big_d = default_big_d(d);
        if k < 2 {
            return Err(Error::Argument(format!("need k ≥ 2, got {k}")));
        }
        if !v.is_positive() || &v * BigRational::from_integer(d.into()) < BigRational::from_integer(big_d.into()) {
            return Err(Error::Inapplicable(format!("v·d ≥ D fails for v = {v}, d = {d}")));
        }
        let pi_dk = PrimeTable::sieve(big_d * k)?.pi(big_d * k)?;
        if pi_dk > k {
            return Err(Error::Inapplicable(format!("t₀ = k − π(Dk) = {k} − {pi_dk} is negative")));
        }
        Ok(InequalityContext { d, big_d, v, k, pi_dk })
    }

    /// Context for v = m/(dk).
    pub fn from_m(d: u64, m: u64, k: u64) -> Result<Self> {
        Self::new(d, BigRational::new(m.into(), (d * k).into()), k)
    }

    pub fn v_f64(&self) -> f64 {
        self.v.to_f64().expect("finite ratio")
    }
}

/// (E0): d^π(Dk) ≥ d^(k+1) · d^(ord_d (k−1)!) · (vk)^(k+1−π(Dk)) / (k − 1)!.
pub fn check_e0(ctx: &InequalityContext) -> bool {
    let d = BigUint::from(ctx.d);
    let k = ctx.k;
    let exponent = (k + 1 - ctx.pi_dk) as u32;
    let vk = &ctx.v * BigRational::from_integer(k.into());
    let num = vk.numer().magnitude().pow(exponent);
    let den = vk.denom().magnitude().pow(exponent);
    let d_power = (k + 1 + ord_factorial(ctx.d, k - 1)) as u32;
    let lhs = d.pow(ctx.pi_dk as u32) * factorial(k - 1) * den;
    let rhs = d.pow(d_power) * num;
    lhs >= rhs
}

/// A real inequality evaluated in floating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Margin {
    /// (claimed larger side) − (claimed smaller side).
    pub value: f64,
    pub verdict: Verdict,
}

impl Margin {
    fn new(value: f64) -> Self {
        Margin { value, verdict: Verdict::from_margin(value) }
    }

    /// Valid with margin at least the tolerance.
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// Invalid with margin at least the tolerance.
    pub fn fails(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

fn d_root(d: f64) -> f64 {
    // d^(1/(d−1))
    d.powf(1.0 / (d - 1.0))
}

/// ½ log(v²k / (2πe² d^(2/(d−1)))).
fn half_log_term(v: f64, k: f64, d: f64) -> f64 {
    0.5 * (v * v * k / (2.0 * PI * E * E * d_root(d).powi(2))).ln()
}

/// log(e v d^(d/(d−1))).
fn log_evd(v: f64, d: f64) -> f64 {
    1.0 + v.ln() + d / (d - 1.0) * d.ln()
}

/// (E3): π(Dk) > [k log(evd^(d/(d−1))) + (k + ½) log(k/(k−1)) − 1/(12(k−1))
///             + ½ log(v²k/(2πe²d^(2/(d−1))))] / log(vdk).
pub fn check_e3(ctx: &InequalityContext) -> Margin {
    let (v, k, d) = (ctx.v_f64(), ctx.k as f64, ctx.d as f64);
    let numer =
        k * log_evd(v, d) + (k + 0.5) * (k / (k - 1.0)).ln() - 1.0 / (12.0 * (k - 1.0)) + half_log_term(v, k, d);
    let rhs = numer / (v * d * k).ln();
    Margin::new(ctx.pi_dk as f64 - rhs)
}

/// F(k, v) = log(evd^(d/(d−1))) − D(1 + log(vd/D)/log(Dk))(1 + 1.2762/log(Dk)).
pub fn f_kv(k: f64, v: f64, d: u64) -> f64 {
    let big_d = default_big_d(d) as f64;
    let df = d as f64;
    let l = (big_d * k).ln();
    log_evd(v, df) - big_d * (1.0 + (v * df / big_d).ln() / l) * (1.0 + DUSART_PI_CONST / l)
}

/// Right-hand side of (E4).
pub fn e4_rhs(k: f64, v: f64, d: u64) -> f64 {
    half_log_term(v, k, d as f64) - 1.0 / (12.0 * (k - 1.0)) + k * f_kv(k, v, d)
}

/// (E4): 0 > RHS. The margin is −RHS.
pub fn check_e4(ctx: &InequalityContext) -> Margin {
    Margin::new(-e4_rhs(ctx.k as f64, ctx.v_f64(), ctx.d))
}

/// (E4) evaluated without building a context (no π(Dk) needed).
pub fn e4_margin(v: f64, d: u64, k: u64) -> Result<Margin> {
    check_d(d)?;
    check_vd(v, d)?;
    if k < 2 {
        return Err(Error::Argument(format!("need k ≥ 2, got {k}")));
    }
    Ok(Margin::new(-e4_rhs(k as f64, v, d)))
}

/// Largest k examined by [`find_k0`].
pub const K0_SCAN_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct K0 {
    /// Least k with F(k, v) > 0.
    pub k1: u64,
    /// Least k ≥ k₁ where the right-hand side of (E4) is positive.
    pub k0: u64,
}

/// Compute k₁(v) and k₀(v) for a common difference d, then confirm the
/// right-hand side of (E4) stays positive on a grid over [k₀, 10k₀].
pub fn find_k0(v: f64, d: u64) -> Result<K0> {
    check_d(d)?;
    check_vd(v, d)?;
    let exhausted = || Error::ScanExhausted(format!("no k ≤ {K0_SCAN_CAP} for v = {v}, d = {d}"));
    let k1 = (2..=K0_SCAN_CAP).find(|&k| f_kv(k as f64, v, d) > 0.0).ok_or_else(exhausted)?;
    let k0 = (k1..=K0_SCAN_CAP).find(|&k| e4_rhs(k as f64, v, d) > 0.0).ok_or_else(exhausted)?;
    let dense = k0..=(k0 + 1000).min(10 * k0);
    let coarse = (0..=200).map(|j| k0 + j * 9 * k0 / 200);
    for k in dense.chain(coarse) {
        if e4_rhs(k as f64, v, d) <= 0.0 || f_kv(k as f64, v, d) <= 0.0 {
            return Err(Error::Inconsistent(format!(
                "(E4) right-hand side not positive at k = {k} ≥ k₀ = {k0} (v = {v}, d = {d})"
            )));
        }
    }
    Ok(K0 { k1, k0 })
}

/// Ratios θ₁, θ₂ bounding θ(·, d, l)/(x/φ(d)) from above at m − 1 and from
/// below at m + d(k − 1).
pub fn theta_ratios(d: u64, nu0: f64) -> Result<(f64, f64)> {
    check_d(d)?;
    Ok(if d == 2 {
        let l = nu0.ln();
        (DUSART_THETA_UPPER_FACTOR, 1.0 - DUSART_THETA_LOWER_CONST / (l * l))
    } else {
        let eps = 2.0 * RR_SQRT_CONST / nu0.sqrt();
        (1.0 + eps, 1.0 - eps)
    })
}

/// The sufficient condition d(k − 1)/m > θ₁/θ₂ − 1 for a prime among
/// m, m + d, …, m + (k − 1)d.
///
/// For d = 3, `nu0` is where the Ramaré–Rumely bounds start and must not
/// exceed m. For d = 2, `nu0` is the point at which the Dusart lower bound
/// for θ is evaluated, so the last term must reach it.
pub fn theta_gap_criterion(m: u64, d: u64, k: u64, nu0: f64) -> Result<bool> {
    check_d(d)?;
    if k < 1 || m < 2 {
        return Err(Error::Argument(format!("need m ≥ 2 and k ≥ 1, got m = {m}, k = {k}")));
    }
    let last = m as f64 + (d * (k - 1)) as f64;
    if d == 3 && (m as f64) < nu0 {
        return Err(Error::Domain(format!("m = {m} is below nu0 = {nu0}")));
    }
    if d == 2 && last < nu0 {
        return Err(Error::Domain(format!("last term {last} is below nu0 = {nu0}")));
    }
    if !(nu0 > 1.0 && nu0 <= 1e10) {
        return Err(Error::Domain(format!("nu0 = {nu0} must lie in (1, 1e10]")));
    }
    let (t1, t2) = theta_ratios(d, nu0)?;
    Ok((d * (k - 1)) as f64 / m as f64 > t1 / t2 - 1.0)
}
