//! Exact elements of `Z[ζ_N]`.
//!
//! An element is stored as its remainder modulo the cyclotomic polynomial
//! `Φ_N`, i.e. as `φ(N)` integer coefficients on `1, ζ, …, ζ^{φ(N)−1}`.
//! That representation is unique, so equality of character sums is plain
//! coefficient equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result, Scalar};

/// `Φ_N` with integer coefficients, low degree first.
///
/// Computed by dividing `x^N − 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: usize) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        poly = exact_div(&poly, &cyclotomic_poly(d));
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for top in (dd..num.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        // den is monic
        quot[top - dd] = c;
        for (i, &di) in den.iter().enumerate() {
            rem[top - dd + i] -= c * di;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    cyclotomic_poly(n).len() - 1
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic<T> {
    order: usize,
    coeffs: Vec<T>,
}

impl<T: Scalar> Cyclotomic<T> {
    pub fn zero(order: usize) -> Self {
        Self::from_integer(order, T::zero())
    }

    pub fn from_integer(order: usize, value: T) -> Self {
        let mut coeffs = vec![T::zero(); totient(order)];
        coeffs[0] = value;
        Self { order, coeffs }
    }

    /// `Σ_k counts[k] ζ_N^k` in canonical form; `counts` has length `N`.
    pub fn from_exponent_counts(order: usize, counts: &[T]) -> Self {
        assert_eq!(counts.len(), order, "one count per exponent");
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        let mut r = counts.to_vec();
        for top in (deg..order).rev() {
            let c = r[top].clone();
            if c.is_zero() {
                continue;
            }
            let base = top - deg;
            for (i, &pi) in phi.iter().enumerate() {
                if pi != 0 {
                    r[base + i] = r[base + i].clone() - c.clone() * T::from_i64_exact(pi);
                }
            }
        }
        r.truncate(deg);
        Self { order, coeffs: r }
    }

    /// Canonical form of `ζ_N^k` (`k` taken mod `N`).
    pub fn root_power(order: usize, k: i64) -> Self {
        let mut counts = vec![T::zero(); order];
        counts[k.rem_euclid(order as i64) as usize] = T::one();
        Self::from_exponent_counts(order, &counts)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "cyclotomic orders differ: {} vs {}",
                self.order, other.order
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Self { order: self.order, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    /// The same number written at order `target`, a multiple of the current order.
    pub fn lift(&self, target: usize) -> Result<Self> {
        if !target.is_multiple_of(self.order) {
            return Err(Error::invalid(format!(
                "cannot lift order {} to {target}",
                self.order
            )));
        }
        let step = target / self.order;
        let mut counts = vec![T::zero(); target];
        for (i, c) in self.coeffs.iter().enumerate() {
            counts[i * step] = c.clone();
        }
        Ok(Self::from_exponent_counts(target, &counts))
    }

    /// Equality as complex numbers; mixed orders are compared at their lcm.
    pub fn equals(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let l = self.order.lcm(&other.order);
        self.lift(l).unwrap().coeffs == other.lift(l).unwrap().coeffs
    }

    /// The integer value when every non-constant coefficient vanishes.
    pub fn as_rational_integer(&self) -> Option<T> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }
}

impl<T: Scalar> fmt::Display for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            wrote = true;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "z{}", self.order)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct Repr {
    order: usize,
    coeffs: Vec<Coeff>,
}

impl<T: Scalar> Serialize for Cyclotomic<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.to_i64().map_or_else(|| Coeff::Big(c.to_string()), Coeff::Small))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar + std::str::FromStr> Deserialize<'de> for Cyclotomic<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = Repr::deserialize(d)?;
        if repr.order == 0 || repr.coeffs.len() != totient(repr.order) {
            return Err(D::Error::custom("coefficient count must equal φ(order)"));
        }
        let coeffs = repr
            .coeffs
            .into_iter()
            .map(|c| match c {
                Coeff::Small(v) => T::from_i64(v).ok_or_else(|| D::Error::custom("coefficient overflow")),
                Coeff::Big(s) => s.parse().map_err(|_| D::Error::custom("bad coefficient")),
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { order: repr.order, coeffs })
    }
}
