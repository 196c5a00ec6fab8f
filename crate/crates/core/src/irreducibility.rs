//! Newton polygons and the factor-degree exclusion criterion for
//! generalized Hermite–Laguerre polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::factor_u64;
use crate::error::{Error, Result};
use crate::gpoly::GPolySpec;

/// p-adic valuation, with ν(0) = +∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn valuation(p: u64, n: &BigInt) -> Valuation {
    assert!(p >= 2, "valuation needs a prime");
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut n = n.abs();
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        n = q;
        v += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValuationPoint {
    pub index: usize,
    pub valuation: Valuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: (usize, u64),
    pub to: (usize, u64),
    #[serde(serialize_with = "ratio_str")]
    pub slope: Ratio<i64>,
}

impl Edge {
    pub fn width(&self) -> usize {
        self.to.0 - self.from.0
    }
}

fn ratio_str<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub prime: u64,
    /// Point j carries ν(a_{n−j}).
    pub points: Vec<ValuationPoint>,
    pub edges: Vec<Edge>,
}

impl NewtonPolygon {
    /// Height of the path at abscissa x (x within [0, n]).
    pub fn height_at(&self, x: usize) -> Ratio<i64> {
        let e = self.edges.iter().find(|e| e.from.0 <= x && x <= e.to.0).expect("abscissa inside the polygon");
        Ratio::from_integer(e.from.1 as i64) + e.slope * Ratio::from_integer((x - e.from.0) as i64)
    }
}

/// Lower convex hull of S = {(j, ν(a_{n−j}))}, collinear edges merged.
/// `coeffs` is a_0, …, a_n.
pub fn newton_polygon(coeffs: &[BigInt], p: u64) -> Result<NewtonPolygon> {
    let n = coeffs.len().checked_sub(1).ok_or_else(|| Error::Degenerate("empty polynomial".into()))?;
    if coeffs[0].is_zero() || coeffs[n].is_zero() {
        return Err(Error::Degenerate("a_0 · a_n must be nonzero".into()));
    }
    let points: Vec<ValuationPoint> =
        (0..=n).map(|j| ValuationPoint { index: j, valuation: valuation(p, &coeffs[n - j]) }).collect();
    let mut hull: Vec<(i128, i128)> = Vec::new();
    for pt in &points {
        let Some(v) = pt.valuation.finite() else { continue };
        let c = (pt.index as i128, v as i128);
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (c.1 - o.1) - (a.1 - o.1) * (c.0 - o.0);
            if cross > 0 {
                break;
            }
            hull.pop();
        }
        hull.push(c);
    }
    let edges = hull
        .windows(2)
        .map(|w| Edge {
            from: (w[0].0 as usize, w[0].1 as u64),
            to: (w[1].0 as usize, w[1].1 as u64),
            slope: Ratio::new((w[1].1 - w[0].1) as i64, (w[1].0 - w[0].0) as i64),
        })
        .collect();
    Ok(NewtonPolygon { prime: p, points, edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionStatus {
    Excluded,
    ExceptionFlagged,
    Indeterminate,
}

impl fmt::Display for ExclusionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExclusionStatus::Excluded => "excluded",
            ExclusionStatus::ExceptionFlagged => "exception_flagged",
            ExclusionStatus::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExclusionResult {
    pub k: u64,
    pub status: ExclusionStatus,
    pub witness_prime: Option<u64>,
    pub reason: String,
}

/// Smallest admissible witness prime for degree k.
pub fn witness_threshold(spec: &GPolySpec, k: u64) -> u64 {
    let base = (k + spec.u - 1) * spec.d + spec.alpha;
    if spec.u > 0 {
        base + 1
    } else {
        base + 2
    }
}

/// Configurations where the criterion is known to stay silent: the
/// power-of-two linear case for d = 3, the k = 2 cases at n = 43 (d = 3)
/// and (u, n) ∈ {(1, 13), (2, 12), (2, 121)} (d = 2), and k = 1 with
/// u ≥ 1 for d = 2.
pub fn is_known_exception(spec: &GPolySpec, k: u64) -> bool {
    match (spec.d, k) {
        (3, 1) => (spec.alpha + 3 * (spec.n - 1)).is_power_of_two(),
        (3, 2) => spec.alpha == 2 && spec.n == 43,
        (2, 1) => spec.u >= 1,
        (2, 2) => matches!((spec.u, spec.n), (1, 13) | (2, 12) | (2, 121)),
        _ => false,
    }
}

/// Look for a prime p dividing (α + (n+u−k)d)⋯(α + (n+u−1)d) with
/// p ∤ a_0 a_n above the threshold; if one exists G has no factor of
/// degree k. The largest such prime is reported.
pub fn exclusion_criterion(spec: &GPolySpec, k: u64) -> Result<ExclusionResult> {
    if k == 0 || 2 * k > spec.n {
        return Err(Error::Argument(format!("need 1 ≤ k ≤ n/2, got k = {k}, n = {}", spec.n)));
    }
    if (k, spec.u) == (1, 0) && spec.d > 2 * spec.alpha + 2 {
        return Err(Error::Inapplicable(format!(
            "(k, u) = (1, 0) requires d ≤ 2α + 2, got d = {}, α = {}",
            spec.d, spec.alpha
        )));
    }
    let first = spec.n + spec.u - k;
    let terms: Vec<u64> = (first..first + k)
        .map(|i| {
            i.checked_mul(spec.d)
                .and_then(|x| x.checked_add(spec.alpha))
                .ok_or(Error::Range("product term exceeds 64 bits".into()))
        })
        .collect::<Result<_>>()?;
    let threshold = witness_threshold(spec, k);
    let ends = spec.end_product();
    let mut primes: Vec<u64> = terms.iter().flat_map(|&t| factor_u64(t).into_iter().map(|(p, _)| p)).collect();
    primes.sort_unstable();
    primes.dedup();
    let witness = primes.iter().rev().copied().find(|&p| p >= threshold && !(&ends % p).is_zero());
    let m = terms[0];
    if let Some(p) = witness {
        return Ok(ExclusionResult {
            k,
            status: ExclusionStatus::Excluded,
            witness_prime: Some(p),
            reason: format!("{p} divides Δ({m}, {}, {k}), {p} ≥ {threshold}, {p} ∤ a_0 a_n", spec.d),
        });
    }
    let largest = primes.last().copied().unwrap_or(1);
    let why = format!(
        "no prime of Δ({m}, {}, {k}) is ≥ {threshold} and coprime to a_0 a_n (largest prime factor {largest})",
        spec.d
    );
    let (status, reason) = if is_known_exception(spec, k) {
        (ExclusionStatus::ExceptionFlagged, format!("{why}; known exceptional configuration"))
    } else {
        (ExclusionStatus::Indeterminate, why)
    };
    Ok(ExclusionResult { k, status, witness_prime: None, reason })
}

/// The criterion for every k in 1..=⌊n/2⌋. Configurations the criterion
/// cannot address (the (k, u) = (1, 0) side condition) are reported as
/// indeterminate.
pub fn full_exclusion_scan(spec: &GPolySpec) -> Result<Vec<ExclusionResult>> {
    (1..=spec.n / 2)
        .map(|k| match exclusion_criterion(spec, k) {
            Err(Error::Inapplicable(reason)) => {
                Ok(ExclusionResult { k, status: ExclusionStatus::Indeterminate, witness_prime: None, reason })
            }
            other => other,
        })
        .collect()
}

/// Summary of a scan: the k that were not excluded.
pub fn unexcluded(results: &[ExclusionResult]) -> Vec<u64> {
    results.iter().filter(|r| r.status != ExclusionStatus::Excluded).map(|r| r.k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(2, &BigInt::from(48)), Valuation::Finite(4));
        assert_eq!(valuation(5, &BigInt::zero()), Valuation::Infinite);
        assert_eq!(valuation(7, &BigInt::from(10)), Valuation::Finite(0));
        assert_eq!(valuation(3, &BigInt::from(-81)), Valuation::Finite(4));
    }

    fn slopes(np: &NewtonPolygon) -> Vec<Ratio<i64>> {
        np.edges.iter().map(|e| e.slope).collect()
    }

    #[test]
    fn polygons() {
        // x^2 + 2x + 4
        let np = newton_polygon(&ints(&[4, 2, 1]), 2).unwrap();
        assert_eq!(slopes(&np), vec![Ratio::from_integer(1)]);
        assert_eq!((np.edges[0].from, np.edges[0].to), ((0, 0), (2, 2)));
        // x^2 + 4x + 2
        let np = newton_polygon(&ints(&[2, 4, 1]), 2).unwrap();
        assert_eq!(slopes(&np), vec![Ratio::new(1, 2)]);
        // x^3 + 2
        let np = newton_polygon(&ints(&[2, 0, 0, 1]), 2).unwrap();
        assert_eq!(slopes(&np), vec![Ratio::new(1, 3)]);
        assert_eq!(np.points[1].valuation, Valuation::Infinite);
        // 4x^2 + x + 4: dips to the middle
        let np = newton_polygon(&ints(&[4, 1, 4]), 2).unwrap();
        assert_eq!(slopes(&np), vec![Ratio::from_integer(-2), Ratio::from_integer(2)]);
        assert!(newton_polygon(&ints(&[0, 1]), 2).is_err());
    }

    #[test]
    fn criterion_examples() {
        let two = |t: u32| BigInt::from(2).pow(t);
        let g = GPolySpec::with_ends(10, 0, 1, 2, two(3), two(1)).unwrap();
        let r = exclusion_criterion(&g, 1).unwrap();
        assert_eq!((r.status, r.witness_prime), (ExclusionStatus::Excluded, Some(19)));

        let g = GPolySpec::unit(43, 0, 2, 3).unwrap();
        let r = exclusion_criterion(&g, 2).unwrap();
        assert_eq!(r.status, ExclusionStatus::ExceptionFlagged);
        assert_eq!(witness_threshold(&g, 2), 7);

        let g = GPolySpec::unit(12, 2, 1, 2).unwrap();
        assert_eq!(exclusion_criterion(&g, 2).unwrap().status, ExclusionStatus::ExceptionFlagged);
        assert!(exclusion_criterion(&g, 7).is_err());
    }

    #[test]
    fn scans() {
        let g = GPolySpec::with_ends(6, 0, 1, 3, BigInt::from(3), BigInt::from(1)).unwrap();
        let r = full_exclusion_scan(&g).unwrap();
        assert_eq!(r[0].status, ExclusionStatus::ExceptionFlagged);
        assert!(r[1..].iter().all(|x| x.status == ExclusionStatus::Excluded));

        // 2 + 3·42 = 128 is a power of two, so k = 1 is flagged as well
        let g = GPolySpec::unit(43, 0, 2, 3).unwrap();
        let r = full_exclusion_scan(&g).unwrap();
        assert_eq!(unexcluded(&r), vec![1, 2]);
        assert!(r[..2].iter().all(|x| x.status == ExclusionStatus::ExceptionFlagged));

        let g = GPolySpec::unit(13, 1, 1, 2).unwrap();
        let r = full_exclusion_scan(&g).unwrap();
        assert_eq!(r[1].status, ExclusionStatus::ExceptionFlagged);
    }
}
