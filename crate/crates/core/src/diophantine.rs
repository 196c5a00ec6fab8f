//! Bounded solvers for the exponential and cubic Thue equations that
//! arise when pinning down smooth consecutive values.
//!
//! Every completeness statement here is relative to an explicit bound.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{exact_cbrt, exact_log, valuation_i128};
use crate::error::{Error, Result};

/// Basis-smooth integers up to a bound, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothList {
    pub prime_basis: Vec<u64>,
    pub bound: u128,
    pub values: Vec<u128>,
}

/// All integers in [1, bound] whose prime factors lie in `basis`,
/// generated in increasing order from a min-heap.
pub fn smooth_numbers(basis: &[u64], bound: u128) -> Result<SmoothList> {
    if basis.is_empty() || bound == 0 {
        return Err(Error::Argument("need a nonempty basis and bound ≥ 1".into()));
    }
    if let Some(&p) = basis.iter().find(|&&p| !crate::arith::is_prime_u64(p)) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    let mut primes = basis.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let mut heap = BinaryHeap::from([Reverse(1u128)]);
    let mut values = Vec::new();
    while let Some(Reverse(v)) = heap.pop() {
        if values.last() == Some(&v) {
            continue;
        }
        values.push(v);
        for &p in &primes {
            if let Some(w) = v.checked_mul(p as u128).filter(|&w| w <= bound) {
                heap.push(Reverse(w));
            }
        }
    }
    Ok(SmoothList { prime_basis: primes, bound, values })
}

/// Pairs (i, X) with X > 80, 3 ∤ X, 1 ≤ i ≤ 7, X ≤ `x_bound`,
/// P(X(X + 3i)) = 5 and 2 | X(X + 3i).
pub fn upto7_solutions(x_bound: u64) -> Result<Vec<(u64, u64)>> {
    if x_bound < 81 {
        return Err(Error::Argument("x_bound must be at least 81".into()));
    }
    // 3 ∤ X forces 3 ∤ X + 3i, so both factors are {2, 5}-smooth
    let smooth = smooth_numbers(&[2, 5], x_bound as u128 + 21)?.values;
    let set: BTreeSet<u128> = smooth.iter().copied().collect();
    let mut out = Vec::new();
    for &x in smooth.iter().filter(|&&x| x > 80 && x <= x_bound as u128) {
        for i in 1..=7u128 {
            let y = x + 3 * i;
            let prod_has = |p: u128| x % p == 0 || y % p == 0;
            if set.contains(&y) && prod_has(2) && prod_has(5) {
                out.push((i as u64, x as u64));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// A solution a^x + b^y = c^z.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct NagellSolution {
    pub a: u64,
    pub x: u32,
    pub b: u64,
    pub y: u32,
    pub c: u64,
    pub z: u32,
}

impl NagellSolution {
    /// (a^x, b^y, c^z).
    pub fn values(&self) -> (BigUint, BigUint, BigUint) {
        (BigUint::from(self.a).pow(self.x), BigUint::from(self.b).pow(self.y), BigUint::from(self.c).pow(self.z))
    }
}

/// All a^x + b^y = c^z with a < b, {a, b, c} ⊆ {2, 3, 5} and
/// 1 ≤ x, y ≤ `exp_bound`. Since c must be coprime to a and b it is the
/// remaining base.
pub fn nagell_solutions(exp_bound: u32) -> Result<Vec<NagellSolution>> {
    if exp_bound < 7 {
        return Err(Error::Argument("exp_bound must be at least 7".into()));
    }
    let mut out = Vec::new();
    for (a, b, c) in [(2u64, 3u64, 5u64), (2, 5, 3), (3, 5, 2)] {
        let pa: Vec<BigUint> = (1..=exp_bound).map(|x| BigUint::from(a).pow(x)).collect();
        let pb: Vec<BigUint> = (1..=exp_bound).map(|y| BigUint::from(b).pow(y)).collect();
        for (xi, u) in pa.iter().enumerate() {
            for (yi, v) in pb.iter().enumerate() {
                if let Some(z) = exact_log(&(u + v), c) {
                    out.push(NagellSolution { a, x: xi as u32 + 1, b, y: yi as u32 + 1, c, z });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// A · base1^x − B · base2^y = C with 1 ≤ x ≤ max_x, 1 ≤ y ≤ max_y.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerEquation {
    pub coeff1: u64,
    pub base1: u64,
    pub coeff2: u64,
    pub base2: u64,
    pub rhs: i64,
    pub max_x: u32,
    pub max_y: u32,
}

/// Largest exponent bound accepted by [`power_diff_solutions`].
pub const MAX_POWER_EXPONENT: u32 = 200;

impl PowerEquation {
    /// base1^x − base2^y = rhs with both exponents up to `max_exp`.
    pub fn simple(base1: u64, base2: u64, rhs: i64, max_exp: u32) -> Self {
        PowerEquation { coeff1: 1, base1, coeff2: 1, base2, rhs, max_x: max_exp, max_y: max_exp }
    }

    pub fn holds(&self, x: u32, y: u32) -> bool {
        let lhs = BigInt::from(self.coeff1) * BigInt::from(self.base1).pow(x)
            - BigInt::from(self.coeff2) * BigInt::from(self.base2).pow(y);
        lhs == BigInt::from(self.rhs)
    }

    pub fn describe(&self) -> String {
        let term = |c: u64, b: u64, e: &str| if c == 1 { format!("{b}^{e}") } else { format!("{c}*{b}^{e}") };
        format!("{} - {} = {}", term(self.coeff1, self.base1, "x"), term(self.coeff2, self.base2, "y"), self.rhs)
    }
}

/// Every (x, y) within the bounds, found by solving for y given x.
pub fn power_diff_solutions(eq: &PowerEquation) -> Result<Vec<(u32, u32)>> {
    if eq.max_x > MAX_POWER_EXPONENT || eq.max_y > MAX_POWER_EXPONENT {
        return Err(Error::Capacity(format!("exponent bounds above {MAX_POWER_EXPONENT}")));
    }
    if eq.base1 < 2 || eq.base2 < 2 || eq.coeff1 == 0 || eq.coeff2 == 0 {
        return Err(Error::Argument("bases must be ≥ 2 and coefficients nonzero".into()));
    }
    let c2 = BigInt::from(eq.coeff2);
    let mut out = Vec::new();
    let mut left = BigInt::from(eq.coeff1);
    for x in 1..=eq.max_x {
        left *= eq.base1;
        let rest = &left - eq.rhs;
        if !rest.is_positive() || !(&rest % &c2).is_zero() {
            continue;
        }
        let q = (rest / &c2).magnitude().clone();
        if let Some(y) = exact_log(&q, eq.base2).filter(|&y| (1..=eq.max_y).contains(&y)) {
            debug_assert!(eq.holds(x, y));
            out.push((x, y));
        }
    }
    Ok(out)
}

/// Largest box accepted by [`thue_bounded`].
pub const MAX_THUE_BOX: i64 = 10_000_000;

const CUBE_MOD: u64 = 7 * 9 * 13;

fn cube_residues() -> Vec<bool> {
    let mut table = vec![false; CUBE_MOD as usize];
    for x in 0..CUBE_MOD {
        table[(x * x % CUBE_MOD * x % CUBE_MOD) as usize] = true;
    }
    table
}

/// Integer solutions of X³ + A Y³ = B with |X|, |Y| ≤ `box_`.
/// Not exhaustive beyond the box.
pub fn thue_bounded(a: u64, b: u64, box_: i64) -> Result<Vec<(i64, i64)>> {
    if !(0..=MAX_THUE_BOX).contains(&box_) {
        return Err(Error::Capacity(format!("box must lie in [0, {MAX_THUE_BOX}]")));
    }
    let a_i = a as i128;
    let b_i = b as i128;
    if a_i.checked_mul((box_ as i128).pow(3)).is_none() {
        return Err(Error::Range("A · box³ overflows 128 bits".into()));
    }
    let cubes = cube_residues();
    let (am, bm) = (a % CUBE_MOD, b % CUBE_MOD);
    let mut out = Vec::new();
    for y in -box_..=box_ {
        let ym = y.rem_euclid(CUBE_MOD as i64) as u64;
        let y3 = ym * ym % CUBE_MOD * ym % CUBE_MOD;
        let target = (bm + CUBE_MOD - am * y3 % CUBE_MOD) % CUBE_MOD;
        if !cubes[target as usize] {
            continue;
        }
        let yi = y as i128;
        if let Some(x) = exact_cbrt(b_i - a_i * yi * yi * yi) {
            if x.abs() <= box_ as i128 {
                out.push((x as i64, y));
            }
        }
    }
    Ok(out)
}

/// One of the eight families of Thue equations X³ + A Y³ = B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThueRow {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

impl ThueRow {
    pub const ALL: [ThueRow; 8] =
        [ThueRow::I, ThueRow::II, ThueRow::III, ThueRow::IV, ThueRow::V, ThueRow::VI, ThueRow::VII, ThueRow::VIII];

    pub fn label(self) -> &'static str {
        ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii"][self as usize]
    }

    /// The exponential equation the row comes from (δ ∈ {1, 2}).
    pub fn source(self) -> &'static str {
        match self {
            ThueRow::I | ThueRow::V => "2^a - 5*7^c = ±3",
            ThueRow::II | ThueRow::VI => "5*2^a - 7^c = ±3",
            ThueRow::III | ThueRow::VII => "5^b - 2^δ*7^c = ±3",
            ThueRow::IV | ThueRow::VIII => "2^δ*5^b - 7^c = ±3",
        }
    }

    /// The valuation condition a solution must meet to be relevant.
    pub fn condition(self) -> ValuationCondition {
        match self {
            ThueRow::VI => ValuationCondition::AllOf(vec![Requirement::AtLeast(2, 1), Requirement::AtLeast(7, 1)]),
            ThueRow::VIII => ValuationCondition::AllOf(vec![Requirement::Exactly(2, 0), Requirement::AtLeast(7, 1)]),
            _ => ValuationCondition::AtLeastTwoOf(vec![
                Requirement::AtLeast(2, 2),
                Requirement::AtLeast(5, 1),
                Requirement::AtLeast(7, 1),
            ]),
        }
    }

    /// Whether (X, Y) has the form the row's substitution produces:
    /// X = ±c·p^e and Y = ±q^f with e, f ≥ 0.
    pub fn shape_holds(self, x: i64, y: i64) -> bool {
        let (cx, px, qy) = match self {
            ThueRow::I => (1, 2, 7),
            ThueRow::II => (5, 2, 7),
            ThueRow::III => (1, 5, 7),
            ThueRow::IV => (2, 5, 7),
            ThueRow::V => (5, 7, 2),
            ThueRow::VI => (1, 7, 2),
            ThueRow::VII => (2, 7, 5),
            ThueRow::VIII => (1, 7, 5),
        };
        let power_of = |n: u64, p: u64| {
            let mut n = n;
            while n > 1 && n % p == 0 {
                n /= p;
            }
            n == 1
        };
        let ax = x.unsigned_abs();
        ax % cx == 0 && ax > 0 && power_of(ax / cx, px) && power_of(y.unsigned_abs(), qy)
    }

    /// Every (A, B) the row produces for the normalizing exponents
    /// a′, b′ ∈ {0, 1, 2}, c′ ∈ {0, 1}, δ ∈ {1, 2}.
    pub fn instances(self) -> Vec<ThueInstance> {
        let p = |b: u64, e: u32| b.pow(e);
        let mut out = Vec::new();
        let mut push = |a: u64, b: u64, params: String| out.push(ThueInstance { row: self, a, b, params });
        match self {
            ThueRow::I | ThueRow::II => {
                for ap in 0..3 {
                    for cp in 0..2 {
                        let (a, b) = if self == ThueRow::I {
                            (5 * p(2, ap) * p(7, cp), 3 * p(2, ap))
                        } else {
                            (25 * p(2, ap) * p(7, cp), 75 * p(2, ap))
                        };
                        push(a, b, format!("a'={ap},c'={cp}"));
                    }
                }
            }
            ThueRow::III | ThueRow::IV => {
                for delta in 1..3 {
                    for bp in 0..3 {
                        for cp in 0..2 {
                            let (a, b) = if self == ThueRow::III {
                                (p(2, delta) * p(5, bp) * p(7, cp), 3 * p(5, bp))
                            } else {
                                (p(2, 3 - delta) * p(5, bp) * p(7, cp), 3 * p(2, 3 - delta) * p(5, bp))
                            };
                            push(a, b, format!("δ={delta},b'={bp},c'={cp}"));
                        }
                    }
                }
            }
            ThueRow::V | ThueRow::VI => {
                for ap in 0..3 {
                    let (a, b) = if self == ThueRow::V { (175 * p(2, ap), 525) } else { (35 * p(2, ap), 21) };
                    push(a, b, format!("a'={ap}"));
                }
            }
            ThueRow::VII | ThueRow::VIII => {
                for delta in 1..3 {
                    for bp in 0..3 {
                        let (a, b) = if self == ThueRow::VII {
                            (p(2, 3 - delta) * p(5, bp) * 7, 21 * p(2, 3 - delta))
                        } else {
                            (p(2, delta) * p(5, bp) * 7, 21)
                        };
                        push(a, b, format!("δ={delta},b'={bp}"));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThueInstance {
    pub row: ThueRow,
    pub a: u64,
    pub b: u64,
    pub params: String,
}

/// All 54 concrete equations of the table.
pub fn thue_table() -> Vec<ThueInstance> {
    ThueRow::ALL.iter().flat_map(|r| r.instances()).collect()
}

/// A bound on ord_p(XY); ord_p(0) = ∞ satisfies every lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Requirement {
    AtLeast(u64, u32),
    Exactly(u64, u32),
}

impl Requirement {
    pub fn holds(self, x: i64, y: i64) -> bool {
        let ord = |p: u64| valuation_i128(p, x as i128 * y as i128);
        match self {
            Requirement::AtLeast(p, e) => ord(p).is_none_or(|v| v >= e),
            Requirement::Exactly(p, e) => ord(p) == Some(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ValuationCondition {
    AtLeastTwoOf(Vec<Requirement>),
    AllOf(Vec<Requirement>),
}

impl ValuationCondition {
    pub fn holds(&self, x: i64, y: i64) -> bool {
        match self {
            ValuationCondition::AtLeastTwoOf(rs) => rs.iter().filter(|r| r.holds(x, y)).count() >= 2,
            ValuationCondition::AllOf(rs) => rs.iter().all(|r| r.holds(x, y)),
        }
    }
}

pub fn valuation_filter(solutions: &[(i64, i64)], condition: &ValuationCondition) -> Vec<(i64, i64)> {
    solutions.iter().copied().filter(|&(x, y)| condition.holds(x, y)).collect()
}

/// Bounded solutions of one table equation, before and after filtering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThueRowReport {
    pub instance: ThueInstance,
    pub box_: i64,
    pub solutions: Vec<(i64, i64)>,
    pub surviving: Vec<(i64, i64)>,
    /// Survivors that also have the row's (X, Y) shape.
    pub shaped: Vec<(i64, i64)>,
}

/// Solve every table equation within the box and apply its row's filter.
pub fn thue_table_check(box_: i64) -> Result<Vec<ThueRowReport>> {
    let solve = |inst: ThueInstance| -> Result<ThueRowReport> {
        let solutions = thue_bounded(inst.a, inst.b, box_)?;
        let surviving = valuation_filter(&solutions, &inst.row.condition());
        let shaped = surviving.iter().copied().filter(|&(x, y)| inst.row.shape_holds(x, y)).collect();
        Ok(ThueRowReport { instance: inst, box_, solutions, surviving, shaped })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        thue_table().into_par_iter().map(solve).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        thue_table().into_iter().map(solve).collect()
    }
}

/// Exact check of X³ + A Y³ = B.
pub fn thue_holds(a: u64, b: u64, x: i64, y: i64) -> bool {
    let (x, y) = (BigInt::from(x), BigInt::from(y));
    &x * &x * &x + BigInt::from(a) * &y * &y * &y == BigInt::from(b)
}
