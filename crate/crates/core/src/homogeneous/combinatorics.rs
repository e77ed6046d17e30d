//! Gaussian coefficients and the rank-based closed forms of the weight.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar};

fn q_pow<T: Scalar>(q: u64, e: u64) -> T {
    num_traits::pow(T::from_u64_exact(q), e as usize)
}

fn binom2(r: u32) -> u64 {
    let r = r as u64;
    r * r.saturating_sub(1) / 2
}

fn sign<T: Scalar>(odd: bool) -> T {
    if odd {
        -T::one()
    } else {
        T::one()
    }
}

/// Gaussian coefficient `[m j]_q`, the number of `j`-dimensional subspaces
/// of `F_q^m`; zero when `j > m`.
pub fn gaussian<T: Scalar>(m: u32, j: u32, q: u64) -> T {
    assert!(q >= 2, "gaussian coefficients need q >= 2");
    if j > m {
        return T::zero();
    }
    let (mut num, mut den) = (T::one(), T::one());
    for i in 0..j as u64 {
        num = num * (q_pow::<T>(q, m as u64) - q_pow::<T>(q, i));
        den = den * (q_pow::<T>(q, j as u64) - q_pow::<T>(q, i));
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quot
}

/// `α_j(x) = ∏_{i<j} (x − q^i)`.
pub fn alpha<T: Scalar>(j: u32, q: u64, x: &T) -> T {
    (0..j as u64).fold(T::one(), |acc, i| acc * (x.clone() - q_pow::<T>(q, i)))
}

/// Number of rank-`j` matrices in the left ideal generated by a rank-`r`
/// matrix of `F_q^{m×m}`: `[r j] α_j(q^m)`.
pub fn s_count<T: Scalar>(j: u32, m: u32, r: u32, q: u64) -> T {
    gaussian::<T>(r, j, q) * alpha(j, q, &q_pow::<T>(q, m as u64))
}

/// `Σ_{j=0}^{r} (−1)^j q^{C(j,2)} [r j]_q = 0`.
pub fn cauchy_identity_check(r: u32, q: u64) -> bool {
    let sum = (0..=r).fold(crate::Integer::from(0), |acc, j| {
        acc + sign::<crate::Integer>(j % 2 == 1) * q_pow::<crate::Integer>(q, binom2(j)) * gaussian::<crate::Integer>(r, j, q)
    });
    sum == crate::Integer::from(0)
}

/// Normalized homogeneous weight of a rank-`r` matrix in `F_q^{m×m}`:
/// `(−1)^{r+1} q^{C(r,2)} / α_r(q^m) + 1`.
pub fn weight_matrix_rank<T: Scalar>(r: u32, m: u32, q: u64) -> Ratio<T> {
    assert!(r <= m, "rank exceeds dimension");
    Ratio::one_minus(rank_factor(RankEntry { rank: r, q, m }))
}

/// `(−1)^r q^{C(r,2)} / α_r(q^m)`.
fn rank_factor<T: Scalar>(e: RankEntry) -> Ratio<T> {
    let num = sign::<T>(e.rank % 2 == 1) * q_pow::<T>(e.q, binom2(e.rank));
    let den = alpha(e.rank, e.q, &q_pow::<T>(e.q, e.m as u64));
    Ratio::new(num, den)
}

trait OneMinus {
    fn one_minus(x: Self) -> Self;
}

impl<T: Scalar> OneMinus for Ratio<T> {
    fn one_minus(x: Self) -> Self {
        Ratio::from_integer(T::one()) - x
    }
}

/// `(rank, q, m)` of one component `(F_q)^{m×m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankEntry {
    pub rank: u32,
    pub q: u64,
    pub m: u32,
}

/// Componentwise ranks of an element of a product of matrix rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankProfile {
    ranks: Vec<RankEntry>,
}

impl RankProfile {
    pub fn new(ranks: Vec<RankEntry>) -> Result<Self> {
        for e in &ranks {
            if e.rank > e.m || e.q < 2 || e.m == 0 {
                return Err(Error::invalid(format!("invalid rank entry {e:?}")));
            }
        }
        Ok(Self { ranks })
    }

    pub fn from_triples(triples: &[(u32, u64, u32)]) -> Result<Self> {
        Self::new(
            triples
                .iter()
                .map(|&(rank, q, m)| RankEntry { rank, q, m })
                .collect(),
        )
    }

    pub fn entries(&self) -> &[RankEntry] {
        &self.ranks
    }

    pub fn ranks(&self) -> Vec<u32> {
        self.ranks.iter().map(|e| e.rank).collect()
    }
}

/// `1 − ∏_i (−1)^{r_i} q_i^{C(r_i,2)} / α_{q_i,r_i}(q_i^{m_i})`.
pub fn weight_rank_profile<T: Scalar>(profile: &RankProfile) -> Ratio<T> {
    let product = profile
        .ranks
        .iter()
        .fold(Ratio::from_integer(T::one()), |acc, &e| acc * rank_factor::<T>(e));
    Ratio::one_minus(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Integer, Rational};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// Subspaces of F_q^m counted by brute force over spanning sets (q prime).
    fn count_subspaces(m: u32, j: u32, q: u64) -> u64 {
        let n = q.pow(m) as usize;
        let vec_add = |a: usize, b: usize| -> usize {
            let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
            for _ in 0..m {
                out += ((a % q as usize + b % q as usize) % q as usize) * place;
                a /= q as usize;
                b /= q as usize;
                place *= q as usize;
            }
            out
        };
        let vec_scale = |k: usize, a: usize| (0..k).fold(0, |acc, _| vec_add(acc, a));
        let mut spaces = std::collections::HashSet::new();
        // every j-subspace is spanned by j vectors
        let mut stack: Vec<(Vec<bool>, u32)> = vec![({ let mut s = vec![false; n]; s[0] = true; s }, 0)];
        while let Some((span, dim)) = stack.pop() {
            if dim == j {
                spaces.insert(span);
                continue;
            }
            for v in 0..n {
                if span[v] {
                    continue;
                }
                let mut next = span.clone();
                for w in 0..n {
                    if span[w] {
                        for k in 0..q as usize {
                            next[vec_add(w, vec_scale(k, v))] = true;
                        }
                    }
                }
                stack.push((next, dim + 1));
            }
        }
        spaces.len() as u64
    }

    #[test]
    fn gaussian_against_subspace_enumeration() {
        assert_eq!(count_subspaces(2, 1, 2), 3);
        assert_eq!(count_subspaces(3, 2, 2), 7);
        for (m, j, q) in [(2, 1, 2), (3, 2, 2), (3, 1, 3), (4, 2, 2), (2, 1, 5)] {
            assert_eq!(gaussian::<i64>(m, j, q), count_subspaces(m, j, q) as i64, "[{m} {j}]_{q}");
        }
        assert_eq!(gaussian::<i64>(5, 0, 3), 1);
        assert_eq!(gaussian::<i64>(2, 3, 2), 0);
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha::<i64>(0, 2, &4), 1);
        assert_eq!(alpha::<i64>(1, 2, &4), 3);
        assert_eq!(alpha::<i64>(2, 2, &4), 6);
    }

    #[test]
    fn s_count_values() {
        assert_eq!(s_count::<i64>(1, 2, 2, 2), 9);
        assert_eq!(s_count::<i64>(0, 3, 2, 3), 1);
        let total: i64 = (0..=2).map(|j| s_count::<i64>(j, 2, 2, 2)).sum();
        assert_eq!(total, 16);
        assert_eq!(s_count::<i64>(1, 2, 2, 3), 32);
    }

    #[test]
    fn s_count_sums_to_ideal_size() {
        for q in [2u64, 3] {
            for m in 1..=4u32 {
                for r in 0..=m {
                    let total: Integer = (0..=r).map(|j| s_count::<Integer>(j, m, r, q)).sum();
                    assert_eq!(total, num_traits::pow(Integer::from(q), (r * m) as usize));
                }
            }
        }
    }

    #[test]
    fn cauchy_identity() {
        assert!(cauchy_identity_check(1, 2));
        for r in 1..=6 {
            for q in [2, 3, 4, 5] {
                assert!(cauchy_identity_check(r, q), "r={r} q={q}");
            }
        }
    }

    #[test]
    fn matrix_rank_weights() {
        assert_eq!(weight_matrix_rank::<Integer>(0, 2, 2), rat(0, 1));
        assert_eq!(weight_matrix_rank::<Integer>(1, 2, 2), rat(4, 3));
        assert_eq!(weight_matrix_rank::<Integer>(2, 2, 2), rat(2, 3));
        // fields: q/(q-1)... no, the Hamming-type value 1 + 1/(q-1)
        assert_eq!(weight_matrix_rank::<i64>(1, 1, 3), Ratio::new(3, 2));
    }

    #[test]
    fn rank_profile_weights() {
        let p = RankProfile::from_triples(&[(1, 2, 2), (1, 2, 2)]).unwrap();
        assert_eq!(weight_rank_profile::<Integer>(&p), rat(8, 9));
        let p = RankProfile::from_triples(&[(2, 2, 2), (2, 2, 2)]).unwrap();
        assert_eq!(weight_rank_profile::<Integer>(&p), rat(8, 9));
        let p = RankProfile::from_triples(&[(0, 3, 2), (0, 5, 1)]).unwrap();
        assert_eq!(weight_rank_profile::<Integer>(&p), rat(0, 1));
        assert!(RankProfile::from_triples(&[(3, 2, 2)]).is_err());
    }

    #[test]
    fn block_weights_of_two_by_two_pairs() {
        // {{0,1}}, {{0,2}}, {{1,1}}, {{1,2}}, {{2,2}} for q = 3
        let q = 3i64;
        let a = q * q - 1;
        let expected = [
            Ratio::new(1, 1) + Ratio::new(1, a),
            Ratio::new(1, 1) - Ratio::new(1, a * (q - 1)),
            Ratio::new(1, 1) - Ratio::new(1, a * a),
            Ratio::new(1, 1) + Ratio::new(1, a * a * (q - 1)),
            Ratio::new(1, 1) - Ratio::new(1, a * a * (q - 1) * (q - 1)),
        ];
        let pairs = [(0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
        for ((r1, r2), want) in pairs.iter().zip(expected) {
            let p = RankProfile::from_triples(&[(*r1, 3, 2), (*r2, 3, 2)]).unwrap();
            assert_eq!(weight_rank_profile::<i64>(&p), want);
        }
    }
}
