//! Dense polynomials over the prime field F_p (p < 2^31), lowest degree first.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::arith::pow_mod(a, p - 2, p)
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut f = FpPoly { p, coeffs };
        f.trim();
        f
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        FpPoly::new(self.p, self.coeffs.iter().map(|&c| c * inv % self.p).collect())
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect();
        FpPoly::new(p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        FpPoly::new(p, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::new(self.p, Vec::new());
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        FpPoly::new(p, out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FpPoly::new(p, Vec::new()), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * inv % p;
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + p - c * b % p) % p;
            }
        }
        rem.truncate(dd);
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = FpPoly::new(self.p, vec![1]).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % self.p)
    }

    /// No repeated irreducible factor: gcd(f, f') = 1.
    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).degree() == Some(0)
    }
}

/// Frobenius map h ↦ h^p on F_p[x]/(f), as the images of x^(p·j).
struct Frobenius {
    columns: Vec<FpPoly>,
    modulus: FpPoly,
}

impl Frobenius {
    fn new(f: &FpPoly) -> Self {
        let p = f.p;
        let n = f.degree().unwrap();
        let xp = FpPoly::x(p).pow_mod(p, f);
        let mut columns = Vec::with_capacity(n);
        let mut cur = FpPoly::new(p, vec![1]);
        for _ in 0..n {
            columns.push(cur.clone());
            cur = cur.mul_mod(&xp, f);
        }
        Frobenius { columns, modulus: f.clone() }
    }

    fn apply(&self, h: &FpPoly) -> FpPoly {
        let p = self.modulus.p;
        let n = self.columns.len();
        let mut out = vec![0u64; n];
        for (j, &c) in h.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, &q) in self.columns[j].coeffs.iter().enumerate() {
                out[i] = (out[i] + c * q) % p;
            }
        }
        FpPoly::new(p, out)
    }
}

/// Degrees of the irreducible factors of a monic squarefree polynomial,
/// by distinct-degree factorization. Ascending.
pub fn distinct_degree_degrees(f: &FpPoly) -> Vec<usize> {
    let p = f.p;
    let n = f.degree().expect("nonzero");
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let frob = Frobenius::new(f);
    let x = FpPoly::x(p);
    let mut rest = f.clone();
    let mut h = x.rem(f);
    let mut i = 1;
    while rest.degree().unwrap() >= 2 * i {
        h = frob.apply(&h);
        let g = h.sub(&x).gcd(&rest);
        let gd = g.degree().unwrap();
        if gd > 0 {
            out.extend(std::iter::repeat_n(i, gd / i));
            rest = rest.div_rem(&g).0;
        }
        i += 1;
    }
    let rd = rest.degree().unwrap();
    if rd > 0 {
        out.push(rd);
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = 7;
        let f = FpPoly::new(p, vec![1, 2, 1]); // (x + 1)^2
        let g = FpPoly::new(p, vec![1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(q, g);
        assert!(r.is_zero());
        assert!(!f.is_squarefree());
        assert_eq!(f.gcd(&g), g);
        assert_eq!(FpPoly::new(p, vec![3, 0, 0]).degree(), Some(0));
        assert_eq!(f.eval(6), 0);
    }

    #[test]
    fn ddf_degrees() {
        // x^2 + 3x + 3 mod 5 has discriminant 2, a non-residue
        assert_eq!(distinct_degree_degrees(&FpPoly::new(5, vec![3, 3, 1])), vec![2]);
        // x^2 - 1 = (x - 1)(x + 1)
        assert_eq!(distinct_degree_degrees(&FpPoly::new(5, vec![4, 0, 1])), vec![1, 1]);
        // x^4 + 1 over F_3 splits into two quadratics
        assert_eq!(distinct_degree_degrees(&FpPoly::new(3, vec![1, 0, 0, 0, 1])), vec![2, 2]);
        // x^p - x splits completely over F_p
        let mut c = vec![0u64; 12];
        c[1] = 10;
        c[11] = 1;
        assert_eq!(distinct_degree_degrees(&FpPoly::new(11, c)), vec![1; 11]);
        // x^3 + x + 1 is irreducible over F_2
        assert_eq!(distinct_degree_degrees(&FpPoly::new(2, vec![1, 1, 0, 1])), vec![3]);
    }
}
