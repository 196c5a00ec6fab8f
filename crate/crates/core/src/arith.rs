//! Word-size integer arithmetic: deterministic primality, factorization,
//! exact integer roots and p-adic valuations.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Witnesses making Miller-Rabin deterministic for every 64-bit input.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    debug_assert!(n > 3 && n % 2 == 1 && !is_prime_u64(n));
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 2u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // backtrack one step at a time
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Complete factorization of `n` as ascending `(prime, exponent)` pairs.
/// `factor_u64(1)` is empty.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    let mut large = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            large.push(m);
            continue;
        }
        let f = pollard_brent(m);
        stack.push(f);
        stack.push(m / f);
    }
    large.sort_unstable();
    for p in large {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out.sort_unstable();
    out
}

/// Greatest prime factor, with `P(1) = 1`.
pub fn gpf_u64(n: u64) -> u64 {
    factor_u64(n).last().map_or(1, |&(p, _)| p)
}

/// Largest prime factor if `n` is `bound`-smooth, else `None`.
pub fn smooth_gpf(mut n: u64, small_primes: &[u64]) -> Option<u64> {
    let mut largest = 1;
    for &p in small_primes {
        if n % p == 0 {
            largest = p;
            while n % p == 0 {
                n /= p;
            }
        }
        if n == 1 {
            break;
        }
    }
    (n == 1).then_some(largest)
}

/// Exponent of `p` in `n`; `None` stands for `n = 0` (valuation +inf).
pub fn valuation_u64(p: u64, mut n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    Some(e)
}

pub fn valuation_i128(p: u64, n: i128) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let p = p as u128;
    let mut m = n.unsigned_abs();
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    Some(e)
}

/// Floor of the real cube root of a non-negative integer.
pub fn icbrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).cbrt() as u128;
    // fix up float rounding in both directions
    while x > 0 && x.checked_pow(3).is_none_or(|c| c > n) {
        x -= 1;
    }
    while (x + 1).checked_pow(3).is_some_and(|c| c <= n) {
        x += 1;
    }
    x
}

/// Exact signed cube root, if `n` is a perfect cube.
pub fn exact_cbrt(n: i128) -> Option<i128> {
    let r = icbrt_u128(n.unsigned_abs()) as i128;
    if r * r * r == n.abs() {
        Some(if n < 0 { -r } else { r })
    } else {
        None
    }
}

/// `true` when `n = 2^j` for some `j >= 0`.
pub fn is_power_of_two(n: &BigUint) -> bool {
    !n.is_zero() && n.count_ones() == 1
}

/// If `n = base^e` with `e >= 0`, return `e`.
pub fn exact_log(n: &BigUint, base: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let b = BigUint::from(base);
    let mut m = n.clone();
    let mut e = 0;
    while !m.is_one() {
        let (q, r) = m.div_rem(&b);
        if !r.is_zero() {
            return None;
        }
        m = q;
        e += 1;
    }
    Some(e)
}

/// Ascending positive divisors of a small integer.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn big_to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}
