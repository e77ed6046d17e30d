//! Prime-power fields as `Z_p[x]/(f)`.
//!
//! An element with coefficients `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` has
//! index `Σ c_i p^i`, so the prime subfield occupies indices `0..p`.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: usize,
    degree: u32,
    /// Monic modulus, low degree first, length `degree + 1`.
    modulus: Vec<usize>,
}

impl GaloisField {
    /// Field of order `q`, using the least monic irreducible of the right degree.
    pub fn new(q: u64) -> Result<Self> {
        let (p, degree) = prime_power(q)
            .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        let p = p as usize;
        let modulus = least_irreducible(p, degree);
        Ok(Self { p, degree, modulus })
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.p.pow(self.degree)
    }

    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    fn digits(&self, mut x: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    fn pack_digits(&self, digits: &[usize]) -> usize {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.degree {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.degree {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let a = self.digits(a);
        let b = self.digits(b);
        let mut prod = vec![0usize; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let rem = poly_rem(&prod, &self.modulus, self.p);
        self.pack_digits(&rem[..self.degree as usize])
    }
}

/// `(p, k)` with `q = p^k`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

pub fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let p = smallest_prime_factor(n);
        out.push(p);
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`, padded to `m.len() - 1`
/// coefficients.
fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let deg_m = m.len() - 1;
    let mut r = a.to_vec();
    if r.len() < deg_m {
        r.resize(deg_m, 0);
    }
    for top in (deg_m..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        let shift = top - deg_m;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - c) * mi % p) % p;
        }
    }
    r.truncate(deg_m.max(1));
    r
}

/// Monic polynomials of degree `d`, ordered by `Σ c_i p^i` over the
/// non-leading coefficients.
fn monic_polys(p: usize, d: u32) -> impl Iterator<Item = Vec<usize>> {
    let count = p.pow(d);
    (0..count).map(move |mut v| {
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        for _ in 0..d {
            coeffs.push(v % p);
            v /= p;
        }
        coeffs.push(1);
        coeffs
    })
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return true;
    }
    (1..=deg / 2).all(|d| {
        monic_polys(p, d as u32).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0))
    })
}

fn least_irreducible(p: usize, degree: u32) -> Vec<usize> {
    monic_polys(p, degree)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_uses_the_unique_quadratic() {
        let f = GaloisField::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn gf8_modulus_is_least() {
        let f = GaloisField::new(8).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        let f = GaloisField::new(9).unwrap();
        // x^2 + 1 is irreducible over F_3 and has the smallest value
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn multiplicative_group_is_complete() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = GaloisField::new(q).unwrap();
            let n = f.order();
            for a in 1..n {
                let inverses = (1..n).filter(|&b| f.mul(a, b) == 1).count();
                assert_eq!(inverses, 1, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_divisors(12), vec![2, 3]);
    }
}
