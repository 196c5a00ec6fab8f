//! Closed-form bounds for π and θ: Dusart's global estimates and the
//! Ramaré–Rumely bounds for primes in the classes 1, 2 modulo 3.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DUSART_PI_CONST: f64 = 1.2762;
pub const DUSART_THETA_LOWER_CONST: f64 = 3.965;
pub const DUSART_THETA_UPPER_FACTOR: f64 = 1.00008;
pub const RR_SQRT_CONST: f64 = 1.798158;
pub const RR_TAIL_CONST: f64 = 0.002238;
/// Point beyond which the Ramaré–Rumely bounds switch to the flat tail constant.
pub const RR_SWITCH: f64 = 1e10;

/// Below this absolute margin a comparison is reported as indeterminate.
pub const MARGIN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    DusartPiUpper,
    DusartThetaLower,
    DusartThetaUpper,
    RamareRumelyLower,
    RamareRumelyUpper,
}

impl EstimateKind {
    pub const ALL: [EstimateKind; 5] = [
        EstimateKind::DusartPiUpper,
        EstimateKind::DusartThetaLower,
        EstimateKind::DusartThetaUpper,
        EstimateKind::RamareRumelyLower,
        EstimateKind::RamareRumelyUpper,
    ];

    pub fn is_upper(self) -> bool {
        matches!(self, EstimateKind::DusartPiUpper | EstimateKind::DusartThetaUpper | EstimateKind::RamareRumelyUpper)
    }

    pub fn name(self) -> &'static str {
        match self {
            EstimateKind::DusartPiUpper => "dusart_pi_upper",
            EstimateKind::DusartThetaLower => "dusart_theta_lower",
            EstimateKind::DusartThetaUpper => "dusart_theta_upper",
            EstimateKind::RamareRumelyLower => "ramare_rumely_lower",
            EstimateKind::RamareRumelyUpper => "ramare_rumely_upper",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// An estimate together with its parameters. `nu0` is only read by the
/// Ramaré–Rumely variants (the start of their validity range).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateProfile {
    pub kind: EstimateKind,
    pub nu0: Option<f64>,
}

impl EstimateProfile {
    pub fn dusart(kind: EstimateKind) -> Self {
        EstimateProfile { kind, nu0: None }
    }

    pub fn ramare_rumely(kind: EstimateKind, nu0: f64) -> Self {
        EstimateProfile { kind, nu0: Some(nu0) }
    }
}

/// Evaluate the printed closed form at `x`.
pub fn estimate_value(profile: EstimateProfile, x: f64) -> Result<f64> {
    use EstimateKind::*;
    match profile.kind {
        DusartPiUpper | DusartThetaLower | DusartThetaUpper => {
            if !(x > 1.0) {
                return Err(Error::Domain(format!("{} needs x > 1, got {x}", profile.kind.name())));
            }
            let lx = x.ln();
            Ok(match profile.kind {
                DusartPiUpper => x / lx * (1.0 + DUSART_PI_CONST / lx),
                DusartThetaLower => x * (1.0 - DUSART_THETA_LOWER_CONST / (lx * lx)),
                _ => DUSART_THETA_UPPER_FACTOR * x,
            })
        }
        RamareRumelyLower | RamareRumelyUpper => {
            let nu0 = profile.nu0.ok_or_else(|| Error::Argument("Ramaré–Rumely bounds need nu0".into()))?;
            if !(nu0 > 0.0 && nu0 <= RR_SWITCH) {
                return Err(Error::Domain(format!("nu0 = {nu0} must lie in (0, 1e10]")));
            }
            if x < nu0 {
                return Err(Error::Domain(format!("x = {x} below nu0 = {nu0}")));
            }
            let eps = if x >= RR_SWITCH { RR_TAIL_CONST } else { 2.0 * RR_SQRT_CONST / nu0.sqrt() };
            let sign = if profile.kind == RamareRumelyLower { -1.0 } else { 1.0 };
            Ok(x / 2.0 * (1.0 + sign * eps))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    Indeterminate,
}

impl Verdict {
    /// Classify a signed margin where positive means "holds".
    pub fn from_margin(margin: f64) -> Self {
        if margin.abs() < MARGIN_TOLERANCE {
            Verdict::Indeterminate
        } else if margin > 0.0 {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }
}

/// An estimate compared against an exact value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub bound: f64,
    pub exact: f64,
    /// Positive when the bound holds on the correct side of `exact`.
    pub margin: f64,
    pub verdict: Verdict,
}

pub fn check_bound(profile: EstimateProfile, x: f64, exact: f64) -> Result<BoundCheck> {
    let bound = estimate_value(profile, x)?;
    let margin = if profile.kind.is_upper() { bound - exact } else { exact - bound };
    Ok(BoundCheck { bound, exact, margin, verdict: Verdict::from_margin(margin) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use EstimateKind::*;

    #[test]
    fn printed_values() {
        let v = estimate_value(EstimateProfile::dusart(DusartPiUpper), 100.0).unwrap();
        let l = 100f64.ln();
        assert!((v - 100.0 / l * (1.0 + 1.2762 / l)).abs() < 1e-12);
        assert!((v - 27.73).abs() < 0.01);
        let u = estimate_value(EstimateProfile::dusart(DusartThetaUpper), 100.0).unwrap();
        assert!((u - 100.008).abs() < 1e-12);
        let rr = estimate_value(EstimateProfile::ramare_rumely(RamareRumelyLower, 6450.0), 6450.0).unwrap();
        assert!((rr - 3225.0 * (1.0 - 2.0 * 1.798158 / 6450f64.sqrt())).abs() < 1e-9);
        let tail = estimate_value(EstimateProfile::ramare_rumely(RamareRumelyUpper, 6450.0), 2e10).unwrap();
        assert!((tail - 1e10 * 1.002238).abs() < 1e-3);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(estimate_value(EstimateProfile::dusart(DusartPiUpper), 1.0), Err(Error::Domain(_))));
        let p = EstimateProfile::ramare_rumely(RamareRumelyLower, 1000.0);
        assert!(matches!(estimate_value(p, 999.0), Err(Error::Domain(_))));
        let missing = EstimateProfile { kind: RamareRumelyUpper, nu0: None };
        assert!(matches!(estimate_value(missing, 5000.0), Err(Error::Argument(_))));
    }

    #[test]
    fn margins() {
        let c = check_bound(EstimateProfile::dusart(DusartPiUpper), 100.0, 25.0).unwrap();
        assert_eq!(c.verdict, Verdict::Holds);
        assert_eq!(Verdict::from_margin(1e-12), Verdict::Indeterminate);
        assert_eq!(Verdict::from_margin(-1.0), Verdict::Violated);
        assert_eq!(EstimateKind::parse("dusart_theta_lower"), Some(DusartThetaLower));
    }
}
