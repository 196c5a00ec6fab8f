//! Generalized Hermite–Laguerre polynomials
//!
//! G(x) = a_n x^n + a_{n−1}(α + (n−1+u)d) x^{n−1} + ⋯ + a_0 ∏_{i=0}^{n−1}(α + (i+u)d)
//!
//! with q = u + α/d, together with two oracles that do not depend on
//! Newton polygons: a mod-p factor-degree certificate and an exact search
//! for rational roots.

mod fp;
mod roots;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use fp::{distinct_degree_degrees, FpPoly};
pub use roots::{eval_rational, rational_linear_factors};

use crate::error::{Error, Result};

/// Parameters of G_q(x), q = u + α/d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GPolySpec {
    pub n: u64,
    pub u: u64,
    pub alpha: u64,
    pub d: u64,
    /// a_0, …, a_n.
    pub a: Vec<BigInt>,
}

impl GPolySpec {
    pub fn new(n: u64, u: u64, alpha: u64, d: u64, a: Vec<BigInt>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("degree must be at least 1".into()));
        }
        if d != 2 && d != 3 {
            return Err(Error::Argument(format!("d must be 2 or 3, got {d}")));
        }
        if !(1..d).contains(&alpha) || alpha.gcd(&d) != 1 {
            return Err(Error::Argument(format!("need 1 ≤ α < d with gcd(α, d) = 1, got α = {alpha}")));
        }
        if a.len() as u64 != n + 1 {
            return Err(Error::Argument(format!("expected {} coefficients a_0..a_n, got {}", n + 1, a.len())));
        }
        if a[0].is_zero() || a[n as usize].is_zero() {
            return Err(Error::Degenerate("a_0 · a_n must be nonzero".into()));
        }
        Ok(GPolySpec { n, u, alpha, d, a })
    }

    /// All a_j = 1.
    pub fn unit(n: u64, u: u64, alpha: u64, d: u64) -> Result<Self> {
        Self::new(n, u, alpha, d, vec![BigInt::from(1); n as usize + 1])
    }

    /// Prescribed a_0 and a_n, every other a_j = 1.
    pub fn with_ends(n: u64, u: u64, alpha: u64, d: u64, a0: BigInt, an: BigInt) -> Result<Self> {
        let mut a = vec![BigInt::from(1); n as usize + 1];
        a[0] = a0;
        a[n as usize] = an;
        Self::new(n, u, alpha, d, a)
    }

    /// q as (numerator, denominator) = (ud + α, d).
    pub fn q(&self) -> (u64, u64) {
        (self.u * self.d + self.alpha, self.d)
    }

    /// The factor α + (i + u)d.
    pub fn step(&self, i: u64) -> u64 {
        self.alpha + (i + self.u) * self.d
    }

    /// |a_0 · a_n|.
    pub fn end_product(&self) -> BigUint {
        (&self.a[0] * &self.a[self.n as usize]).magnitude().clone()
    }

    /// Whether the prime p divides a_0 a_n.
    pub fn divides_ends(&self, p: u64) -> bool {
        (self.end_product() % p).is_zero()
    }

    /// P(a_0 a_n) when a_0 a_n fits in 64 bits.
    pub fn end_gpf(&self) -> Option<u64> {
        self.end_product().to_u64().map(crate::arith::gpf_u64)
    }
}

/// c_n = a_n and c_j = a_j ∏_{i=j}^{n−1} (α + (i + u)d), lowest degree first.
pub fn build_coefficients(spec: &GPolySpec) -> Vec<BigInt> {
    let n = spec.n as usize;
    let mut out = vec![BigInt::zero(); n + 1];
    let mut running = BigInt::from(1);
    out[n] = spec.a[n].clone();
    for j in (0..n).rev() {
        running *= spec.step(j as u64);
        out[j] = &spec.a[j] * &running;
    }
    out
}

/// Factor-degree data of a polynomial reduced modulo p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCertificate {
    pub prime: u64,
    /// Degrees of the irreducible factors (ascending) when usable.
    pub degrees: Vec<usize>,
    /// p ∤ leading coefficient and the reduction is squarefree.
    pub usable: bool,
}

fn reduce(coeffs: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let c = coeffs
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            r.to_u64().expect("reduced below p")
        })
        .collect();
    FpPoly::new(p, c)
}

pub fn degree_multiset_mod_p(coeffs: &[BigInt], p: u64) -> DegreeCertificate {
    let unusable = DegreeCertificate { prime: p, degrees: Vec::new(), usable: false };
    let Some(lead) = coeffs.last() else { return unusable };
    if (lead % BigInt::from(p)).is_zero() {
        return unusable;
    }
    let f = reduce(coeffs, p).monic();
    if f.degree() == Some(0) {
        return DegreeCertificate { prime: p, degrees: Vec::new(), usable: true };
    }
    if !f.is_squarefree() {
        return unusable;
    }
    DegreeCertificate { prime: p, degrees: distinct_degree_degrees(&f), usable: true }
}

/// Whether some sub-multiset of `degrees` sums to `k`.
pub fn subset_sums_to(degrees: &[usize], k: usize) -> bool {
    let mut reach = vec![false; k + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=k).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach[k]
}

/// Default number of usable primes consulted by [`no_factor_of_degree`].
pub const DEFAULT_PRIME_BUDGET: usize = 25;
/// Primes above this bound are never tried.
pub const MAX_ORACLE_PRIME: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FactorDegreeVerdict {
    /// Mod `prime` the factor degrees admit no sub-multiset summing to k,
    /// so no rational factor of degree k exists.
    CertifiedAbsent { prime: u64, degrees: Vec<usize> },
    /// Every usable prime in the budget allowed a factor of degree k.
    Inconclusive { primes_tried: Vec<u64> },
}

impl FactorDegreeVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, FactorDegreeVerdict::CertifiedAbsent { .. })
    }
}

/// A degree-k factor over Q reduces to a product of factors whose degrees
/// sum to k modulo every prime not dividing the leading coefficient. Try
/// the first `prime_budget` usable odd primes looking for a contradiction.
pub fn no_factor_of_degree(coeffs: &[BigInt], k: usize, prime_budget: usize) -> Result<FactorDegreeVerdict> {
    let n = coeffs.len().saturating_sub(1);
    if k == 0 || k >= n {
        return Err(Error::Argument(format!("need 1 ≤ k < n = {n}, got k = {k}")));
    }
    let mut tried = Vec::new();
    let mut p = 3;
    while tried.len() < prime_budget && p <= MAX_ORACLE_PRIME {
        if crate::arith::is_prime_u64(p) {
            let cert = degree_multiset_mod_p(coeffs, p);
            if cert.usable {
                if !subset_sums_to(&cert.degrees, k) {
                    return Ok(FactorDegreeVerdict::CertifiedAbsent { prime: p, degrees: cert.degrees });
                }
                tried.push(p);
            }
        }
        p += 2;
    }
    Ok(FactorDegreeVerdict::Inconclusive { primes_tried: tried })
}

/// Render a polynomial (lowest degree first) in the usual notation.
pub fn format_poly(coeffs: &[BigInt]) -> String {
    let mut parts = Vec::new();
    for (j, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.sign() == Sign::Minus { "-" } else { "+" };
        let mag = c.abs();
        let body = match (j, mag == BigInt::from(1)) {
            (0, _) => mag.to_string(),
            (1, true) => "x".to_string(),
            (1, false) => format!("{mag}x"),
            (_, true) => format!("x^{j}"),
            (_, false) => format!("{mag}x^{j}"),
        };
        parts.push((sign, body));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (sign, body)) in parts.iter().enumerate() {
        match (i, *sign) {
            (0, "-") => s.push('-'),
            (0, _) => {}
            (_, sg) => s.push_str(&format!(" {sg} ")),
        }
        s.push_str(body);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_coefficient_lists() {
        assert_eq!(build_coefficients(&GPolySpec::unit(1, 0, 1, 2).unwrap()), ints(&[1, 1]));
        assert_eq!(build_coefficients(&GPolySpec::unit(2, 0, 1, 2).unwrap()), ints(&[3, 3, 1]));
        assert_eq!(build_coefficients(&GPolySpec::unit(2, 0, 2, 3).unwrap()), ints(&[10, 5, 1]));
        let c = build_coefficients(&GPolySpec::unit(2, 0, 2, 3).unwrap());
        assert_eq!(format_poly(&c), "x^2 + 5x + 10");
        assert_eq!(format_poly(&ints(&[-1, 0, 1])), "x^2 - 1");
    }

    #[test]
    fn coefficient_products() {
        let spec = GPolySpec::with_ends(7, 2, 1, 2, BigInt::from(-4), BigInt::from(2)).unwrap();
        let c = build_coefficients(&spec);
        for j in 0..7u64 {
            let prod: BigInt = (j..7).map(|i| BigInt::from(spec.step(i))).product();
            assert_eq!(&c[j as usize], &(&spec.a[j as usize] * prod));
        }
        assert_eq!(c[7], BigInt::from(2));
    }

    #[test]
    fn spec_validation() {
        assert!(GPolySpec::unit(3, 0, 2, 2).is_err());
        assert!(GPolySpec::unit(3, 0, 3, 3).is_err());
        assert!(GPolySpec::unit(0, 0, 1, 2).is_err());
        assert!(GPolySpec::with_ends(3, 0, 1, 2, BigInt::zero(), BigInt::from(1)).is_err());
        assert_eq!(GPolySpec::unit(3, 1, 1, 2).unwrap().q(), (3, 2));
    }

    #[test]
    fn certificates() {
        let c = degree_multiset_mod_p(&ints(&[3, 3, 1]), 5);
        assert_eq!((c.usable, c.degrees.clone()), (true, vec![2]));
        let c = degree_multiset_mod_p(&ints(&[-1, 0, 1]), 5);
        assert_eq!((c.usable, c.degrees.clone()), (true, vec![1, 1]));
        assert!(!degree_multiset_mod_p(&ints(&[10, 5, 1]), 5).usable);
        assert!(!degree_multiset_mod_p(&ints(&[1, 1, 5]), 5).usable);
    }

    #[test]
    fn degree_obstructions() {
        match no_factor_of_degree(&ints(&[3, 3, 1]), 1, 25).unwrap() {
            FactorDegreeVerdict::CertifiedAbsent { degrees, .. } => assert_eq!(degrees, vec![2]),
            other => panic!("{other:?}"),
        }
        let v = no_factor_of_degree(&ints(&[-1, 0, 1]), 1, 25).unwrap();
        assert!(matches!(v, FactorDegreeVerdict::Inconclusive { ref primes_tried } if primes_tried.len() == 25));
        let spec = GPolySpec::unit(12, 2, 1, 2).unwrap();
        assert!(no_factor_of_degree(&build_coefficients(&spec), 2, 25).unwrap().is_certified());
        assert!(no_factor_of_degree(&ints(&[1, 1]), 1, 25).is_err());
    }

    #[test]
    fn subset_sum() {
        assert!(subset_sums_to(&[1, 3, 5], 4));
        assert!(!subset_sums_to(&[3, 5], 4));
        assert!(subset_sums_to(&[], 0));
    }
}
