//! Exact rational roots of integer polynomials.
//!
//! Rather than enumerating divisors of c_0 (hopeless once c_0 has a few
//! hundred digits), roots are found p-adically: pass to the monic
//! g(y) = c_n^{n−1} f(y / c_n), whose rational roots are integers, find
//! roots modulo a prime where g stays squarefree, Hensel-lift them past
//! the Cauchy bound and keep those that evaluate to zero exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::FpPoly;
use super::MAX_ORACLE_PRIME;
use crate::arith::is_prime_u64;
use crate::error::{Error, Result};

/// Polynomial evaluation at a rational point.
pub fn eval_rational(coeffs: &[BigInt], r: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * r + BigRational::from_integer(c.clone()))
}

fn eval_int(coeffs: &[BigInt], y: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut v = trim(v);
    let c = content(&v);
    if c.is_zero() {
        return v;
    }
    let sign = if v.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    let c = c * sign;
    for x in v.iter_mut() {
        *x = &*x / &c;
    }
    v
}

fn derivative(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Pseudo-remainder of a by b (b nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &lr * c;
        }
        r = trim(r);
    }
    r
}

/// Primitive gcd over Z[x].
fn gcd_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = (primitive(a.to_vec()), primitive(b.to_vec()));
    while !b.is_empty() {
        let r = primitive(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Exact quotient a / b when b | a in Z[x].
fn exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &b[db];
        for (j, bc) in b.iter().enumerate() {
            r[i + j] -= &c * bc;
        }
        q[i] = c;
    }
    q
}

fn reduce(v: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(p, v.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn squarefree_prime(f: &[BigInt]) -> Option<u64> {
    let lead = f.last().unwrap();
    (2..=MAX_ORACLE_PRIME)
        .filter(|&p| is_prime_u64(p))
        .find(|&p| !(lead % BigInt::from(p)).is_zero() && reduce(f, p).is_squarefree())
}

/// All distinct rational roots, ascending, each verified by exact evaluation.
pub fn rational_linear_factors(coeffs: &[BigInt]) -> Result<Vec<BigRational>> {
    let f = trim(coeffs.to_vec());
    if f.is_empty() {
        return Err(Error::Degenerate("zero polynomial".into()));
    }
    let mut roots = Vec::new();
    let zeros = f.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(BigRational::zero());
    }
    let mut f = primitive(f[zeros..].to_vec());
    if f.len() <= 1 {
        return Ok(roots);
    }
    let p = match squarefree_prime(&f) {
        Some(p) => p,
        None => {
            let g = gcd_z(&f, &derivative(&f));
            f = primitive(exact_div(&f, &g));
            squarefree_prime(&f).ok_or_else(|| {
                Error::Capacity(format!("no prime ≤ {MAX_ORACLE_PRIME} keeps the polynomial squarefree"))
            })?
        }
    };
    let n = f.len() - 1;
    let lead = f[n].clone();
    // g(y) = Σ c_j lead^{n−1−j} y^j for j < n, plus y^n
    let mut g = vec![BigInt::zero(); n + 1];
    g[n] = BigInt::one();
    let mut scale = BigInt::one();
    for j in (0..n).rev() {
        g[j] = &f[j] * &scale;
        scale *= &lead;
    }
    let bound = g.iter().map(|c| c.abs()).max().unwrap() + 1u32;
    let gp = reduce(&g, p);
    let dg = derivative(&g);
    let dgp = reduce(&dg, p);
    let pb = BigInt::from(p);
    for y0 in (0..p).filter(|&y| gp.eval(y) == 0) {
        // simple root mod p because g mod p is squarefree
        let inv = crate::arith::pow_mod(dgp.eval(y0), p - 2, p);
        let mut y = BigInt::from(y0);
        let mut modulus = pb.clone();
        while modulus <= &bound * 2u32 {
            let t = (eval_int(&g, &y) / &modulus).mod_floor(&pb);
            let t = (&pb - t * BigInt::from(inv) % &pb) % &pb;
            y += &t * &modulus;
            modulus *= &pb;
        }
        let y = y.mod_floor(&modulus);
        let y = if &y * 2u32 > modulus { y - &modulus } else { y };
        if eval_int(&g, &y).is_zero() {
            let r = BigRational::new(y, lead.clone());
            debug_assert!(eval_rational(coeffs, &r).is_zero());
            roots.push(r);
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn spec_examples() {
        assert!(rational_linear_factors(&ints(&[3, 3, 1])).unwrap().is_empty());
        assert_eq!(rational_linear_factors(&ints(&[-1, 0, 1])).unwrap(), vec![q(-1, 1), q(1, 1)]);
    }

    #[test]
    fn non_monic_and_repeated() {
        // (2x − 3)(3x + 1)^2 x
        let f = ints(&[0, -3, -16, -15, 18]);
        assert_eq!(rational_linear_factors(&f).unwrap(), vec![q(-1, 3), q(0, 1), q(3, 2)]);
        // (x − 1)^3
        assert_eq!(rational_linear_factors(&ints(&[-1, 3, -3, 1])).unwrap(), vec![q(1, 1)]);
        assert!(rational_linear_factors(&ints(&[5])).unwrap().is_empty());
    }

    #[test]
    fn large_roots() {
        // (x − 10^30)(7x + 1)(x^2 + 1)
        let big: BigInt = BigInt::from(10).pow(30);
        let lin = vec![-big.clone(), BigInt::one()];
        let f = mul(&mul(&lin, &ints(&[1, 7])), &ints(&[1, 0, 1]));
        assert_eq!(rational_linear_factors(&f).unwrap(), vec![q(-1, 7), BigRational::from_integer(big)]);
    }

    fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }
}
