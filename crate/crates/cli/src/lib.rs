//! Command implementations behind the `hlverify` binary. Each command
//! returns its output as text so it can be tested without a process.

pub mod verify;

use std::fmt::Write as _;
use std::str::FromStr;

use hlverify::diophantine::{smooth_numbers, thue_bounded};
use hlverify::gpoly::{build_coefficients, format_poly, GPolySpec};
use hlverify::irreducibility::{full_exclusion_scan, newton_polygon, ExclusionResult};
use hlverify::primes::{check_bound, ChebyshevIndex, EstimateKind, EstimateProfile, PrimeTable, MAX_TABLE_LIMIT};
use hlverify::smoothness::{evaluate, exceptional_search, Finding, FindingVerdict, ProgressionWindow};
use hlverify::Error;
use num_bigint::BigInt;
use serde::Serialize;

/// A failure carrying the process exit code it should produce.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Argument(_) | Error::Degenerate(_) | Error::Inapplicable(_) => 2,
            Error::Capacity(_) | Error::Range(_) | Error::Domain(_) | Error::ScanExhausted(_) => 3,
            Error::InsufficientData(_) | Error::Inconsistent(_) => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<verify::UsageError> for CliError {
    fn from(e: verify::UsageError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: 1, message: e.to_string() }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Default sieve limit, overridable through `HL_PRIME_TABLE_LIMIT`.
pub const DEFAULT_TABLE_LIMIT: u64 = 100_000_000;

pub fn table_limit_from(var: Option<&str>) -> CliResult<u64> {
    let Some(raw) = var else { return Ok(DEFAULT_TABLE_LIMIT) };
    let limit = parse_number(raw)
        .map_err(|_| CliError::usage(format!("HL_PRIME_TABLE_LIMIT must be a positive integer, got '{raw}'")))?;
    if limit < 2 || limit > MAX_TABLE_LIMIT {
        return Err(CliError::usage(format!("HL_PRIME_TABLE_LIMIT must lie in [2, {MAX_TABLE_LIMIT}]")));
    }
    Ok(limit)
}

/// `<gpf> <op> <threshold> : <verdict>`, e.g. `13 > 4k=8 : OK`.
pub fn gpf_line(m: u64, d: u64, k: u64) -> CliResult<String> {
    let f = evaluate(ProgressionWindow::new(m, d, k)?);
    Ok(match f.verdict {
        FindingVerdict::Ok => format!("{} > {} : OK", f.gpf, f.threshold),
        FindingVerdict::Exception => format!("{} ≤ {} : EXCEPTION", f.gpf, f.threshold),
    })
}

pub fn search_findings(d: u64, k_max: u64, m_max: u64) -> CliResult<Vec<Finding>> {
    let found = exceptional_search(d, 2, k_max, m_max)?;
    found.into_iter().map(|e| Ok(evaluate(ProgressionWindow::new(e.m, d, e.k)?))).collect()
}

/// Render serializable flat rows in the requested format.
pub fn render_rows<T: Serialize>(rows: &[T], format: Format, text: impl Fn(&T) -> String) -> CliResult<String> {
    match format {
        Format::Text => Ok(rows.iter().map(|r| text(r) + "\n").collect()),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).map_err(|e| CliError { code: 1, message: e.to_string() })?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| CliError { code: 1, message: e.to_string() })?;
            }
            let bytes = w.into_inner().map_err(|e| CliError { code: 1, message: e.to_string() })?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn finding_text(f: &Finding) -> String {
    let op = if f.verdict == FindingVerdict::Ok { ">" } else { "≤" };
    format!("m={} d={} k={} : {} {} {}", f.m, f.d, f.k, f.gpf, op, f.threshold)
}

/// Parse a coefficient file: one integer per line, constant term first.
/// Blank lines are ignored.
pub fn parse_coefficients(text: &str) -> CliResult<Vec<BigInt>> {
    let coeffs: Vec<BigInt> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            BigInt::from_str(l.trim())
                .map_err(|_| CliError::usage(format!("line {}: '{}' is not an integer", i + 1, l.trim())))
        })
        .collect::<CliResult<_>>()?;
    if coeffs.is_empty() {
        return Err(CliError::usage("coefficient file is empty"));
    }
    Ok(coeffs)
}

/// One line per edge, e.g. `(0,0)→(2,1) slope 1/2`.
pub fn np_lines(coeffs: &[BigInt], p: u64) -> CliResult<String> {
    if !hlverify::arith::is_prime_u64(p) {
        return Err(CliError::usage(format!("{p} is not prime")));
    }
    let np = newton_polygon(coeffs, p)?;
    let mut out = String::new();
    for e in &np.edges {
        writeln!(out, "({},{})→({},{}) slope {}", e.from.0, e.from.1, e.to.0, e.to.1, e.slope).unwrap();
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct IrredRow {
    pub k: u64,
    pub status: String,
    pub witness_prime: Option<u64>,
    pub reason: String,
}

impl From<ExclusionResult> for IrredRow {
    fn from(r: ExclusionResult) -> Self {
        IrredRow { k: r.k, status: r.status.to_string(), witness_prime: r.witness_prime, reason: r.reason }
    }
}

pub fn irred_spec(
    n: u64,
    u: u64,
    alpha: u64,
    d: u64,
    a0: BigInt,
    an: BigInt,
    all: Option<Vec<BigInt>>,
) -> CliResult<GPolySpec> {
    match all {
        None => Ok(GPolySpec::with_ends(n, u, alpha, d, a0, an)?),
        Some(a) => {
            if a.first() != Some(&a0) || a.last() != Some(&an) {
                return Err(CliError::usage("a0 and an must match the ends of the coefficient file"));
            }
            Ok(GPolySpec::new(n, u, alpha, d, a)?)
        }
    }
}

pub fn irred_rows(spec: &GPolySpec) -> CliResult<Vec<IrredRow>> {
    Ok(full_exclusion_scan(spec)?.into_iter().map(IrredRow::from).collect())
}

pub fn irred_header(spec: &GPolySpec) -> String {
    let (num, den) = spec.q();
    let coeffs = build_coefficients(spec);
    let shown = if spec.n <= 6 { format_poly(&coeffs) } else { format!("degree {}", spec.n) };
    format!("G with q = {num}/{den}, u = {}, n = {}: {shown}\n", spec.u, spec.n)
}

pub fn irred_text(r: &IrredRow) -> String {
    let w = r.witness_prime.map_or("-".to_string(), |p| p.to_string());
    format!("k={:<4} {:<18} witness {:<6} {}", r.k, r.status, w, r.reason)
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub estimate: String,
    pub modulus: u64,
    pub residue: u64,
    pub x: u64,
    pub exact: f64,
    pub bound: f64,
    pub margin: f64,
    pub verdict: String,
}

/// Compare π, θ and θ(·; 3, l) at x against the closed-form estimates.
/// RR bounds are evaluated only when `x ≥ nu0`.
pub fn bounds_rows(x: u64, nu0: u64, limit: u64) -> CliResult<Vec<BoundRow>> {
    if x < 2 {
        return Err(CliError::usage("x must be at least 2"));
    }
    if x > limit {
        return Err(
            Error::Range(format!("x = {x} exceeds the prime table limit {limit} (HL_PRIME_TABLE_LIMIT)")).into()
        );
    }
    let table = PrimeTable::sieve(x)?;
    let global = ChebyshevIndex::global(&table);
    let mut rows = Vec::new();
    let mut push =
        |kind: EstimateKind, profile: EstimateProfile, modulus: u64, residue: u64, exact: f64| -> CliResult<()> {
            let c = check_bound(profile, x as f64, exact)?;
            rows.push(BoundRow {
                estimate: kind.name().to_string(),
                modulus,
                residue,
                x,
                exact,
                bound: c.bound,
                margin: c.margin,
                verdict: format!("{:?}", c.verdict).to_lowercase(),
            });
            Ok(())
        };
    for kind in [EstimateKind::DusartPiUpper, EstimateKind::DusartThetaLower, EstimateKind::DusartThetaUpper] {
        let exact = if kind == EstimateKind::DusartPiUpper { global.pi(x)? as f64 } else { global.theta(x)? };
        push(kind, EstimateProfile::dusart(kind), 1, 0, exact)?;
    }
    if x >= nu0 {
        for l in [1, 2] {
            let theta = ChebyshevIndex::new(&table, 3, l)?.theta(x)?;
            for kind in [EstimateKind::RamareRumelyLower, EstimateKind::RamareRumelyUpper] {
                push(kind, EstimateProfile::ramare_rumely(kind, nu0 as f64), 3, l, theta)?;
            }
        }
    }
    Ok(rows)
}

pub fn bound_text(r: &BoundRow) -> String {
    let class = if r.modulus == 1 { String::new() } else { format!(" (mod {} = {})", r.modulus, r.residue) };
    format!("{}{class}: exact {:.6} bound {:.6} margin {:.6e} {}", r.estimate, r.exact, r.bound, r.margin, r.verdict)
}

pub fn thue_lines(a: u64, b: u64, box_: i64) -> CliResult<String> {
    let sols = thue_bounded(a, b, box_)?;
    let mut out = format!("X^3 + {a}Y^3 = {b}, |X|, |Y| ≤ {box_}: {} solution(s)\n", sols.len());
    for (x, y) in sols {
        writeln!(out, "({x}, {y})").unwrap();
    }
    Ok(out)
}

pub fn smooth_lines(basis: &[u64], bound: u128, count_only: bool) -> CliResult<String> {
    let list = smooth_numbers(basis, bound)?;
    let mut out = format!("{} integers ≤ {bound} composed of {:?}\n", list.values.len(), basis);
    if !count_only {
        for v in &list.values {
            writeln!(out, "{v}").unwrap();
        }
    }
    Ok(out)
}

/// Parse `key=value` bound overrides.
pub fn parse_bound(s: &str) -> Result<(String, u64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got '{s}'"))?;
    let v = parse_number(v)?;
    Ok((k.trim().to_string(), v))
}

/// Integers, optionally written as `1e6`-style powers of ten.
pub fn parse_number(s: &str) -> Result<u64, String> {
    let s = s.trim().replace('_', "");
    if let Some((mant, exp)) = s.split_once(['e', 'E']) {
        let mant: u64 = mant.parse().map_err(|_| format!("bad number '{s}'"))?;
        let exp: u32 = exp.parse().map_err(|_| format!("bad number '{s}'"))?;
        return 10u64.checked_pow(exp).and_then(|p| p.checked_mul(mant)).ok_or_else(|| format!("'{s}' overflows"));
    }
    s.parse().map_err(|_| format!("bad number '{s}'"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gpf_lines() {
        assert_eq!(gpf_line(125, 3, 2).unwrap(), "5 ≤ 3k=6 : EXCEPTION");
        assert_eq!(gpf_line(11, 2, 2).unwrap(), "13 > 4k=8 : OK");
        assert_eq!(gpf_line(6, 3, 2).unwrap_err().code, 2);
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_number("1e6"), Ok(1_000_000));
        assert_eq!(parse_number("1_000"), Ok(1000));
        assert_eq!(parse_bound("m_max=5e2"), Ok(("m_max".into(), 500)));
        assert!(parse_bound("m_max").is_err());
        assert!(parse_number("1e30").is_err());
    }

    #[test]
    fn coefficient_files() {
        let c = parse_coefficients("10\n5\n\n1\n").unwrap();
        assert_eq!(c, vec![BigInt::from(10), BigInt::from(5), BigInt::from(1)]);
        assert!(parse_coefficients("1\nx\n").is_err());
        assert!(parse_coefficients("\n").is_err());
    }

    #[test]
    fn newton_polygon_lines() {
        let c = parse_coefficients("2\n4\n1").unwrap();
        assert_eq!(np_lines(&c, 2).unwrap(), "(0,0)→(2,1) slope 1/2\n");
        assert_eq!(np_lines(&c, 4).unwrap_err().code, 2);
    }

    #[test]
    fn table_limit() {
        assert_eq!(table_limit_from(None).unwrap(), DEFAULT_TABLE_LIMIT);
        assert_eq!(table_limit_from(Some("1000")).unwrap(), 1000);
        assert!(table_limit_from(Some("lots")).is_err());
        let err = bounds_rows(5000, 1000, 1000).unwrap_err();
        assert_eq!(err.code, 3);
    }

    #[test]
    fn bounds_at_6450() {
        let rows = bounds_rows(6450, 6450, DEFAULT_TABLE_LIMIT).unwrap();
        assert_eq!(rows.len(), 7);
        assert!(rows.iter().all(|r| r.verdict == "holds"));
    }
}
