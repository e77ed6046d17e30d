//! Krawtchouk coefficients and character-theoretic dual partitions.
//!
//! For a partition `P_1 | … | P_M` and a generating character `χ`, the left
//! coefficients are `Σ_{a∈P_m} χ(ab)` and the right ones `Σ_{a∈P_m} χ(ba)`.
//! Two elements are equivalent in the dual partition when their full
//! coefficient columns agree exactly.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::characters::{all_generating_characters, canonical_generating_character};
use crate::homogeneous::gaussian;
use crate::ring::{same_ring, Element, Side};
use crate::{Character, Cyclotomic, Error, Integer, Partition, Result, Scalar};

#[derive(Clone, Debug)]
pub struct KrawtchoukTable<T: Scalar = Integer> {
    side: Side,
    block_sizes: Vec<usize>,
    /// `columns[b][m]`.
    columns: Vec<Vec<Cyclotomic<T>>>,
}

impl<T: Scalar> KrawtchoukTable<T> {
    /// Exact coefficients of `p` under `chi`; the `b = 0` row and the
    /// orthogonality column sums are checked.
    pub fn compute(p: &Partition, chi: &Character, side: Side) -> Result<Self> {
        let ring = chi.ring();
        if !same_ring(ring, p.ring()) {
            return Err(Error::invalid("partition and character live on different rings"));
        }
        let n = chi.order();
        let blocks = p.len();
        let columns: Vec<Vec<Cyclotomic<T>>> = ring
            .elements()
            .into_par_iter()
            .map(|b| {
                let mut counts = vec![0i64; blocks * n];
                for a in ring.elements() {
                    let ab = match side {
                        Side::Left => ring.mul(a, b),
                        Side::Right => ring.mul(b, a),
                    };
                    counts[p.block_of(a) * n + chi.exponent(ab)] += 1;
                }
                counts
                    .chunks(n)
                    .map(|c| {
                        let c: Vec<T> = c.iter().map(|&v| T::from_i64_exact(v)).collect();
                        Cyclotomic::from_exponent_counts(n, &c)
                    })
                    .collect()
            })
            .collect();
        let table = Self {
            side,
            block_sizes: p.block_sizes(),
            columns,
        };
        table.check(n)?;
        Ok(table)
    }

    fn check(&self, n: usize) -> Result<()> {
        for (m, size) in self.block_sizes.iter().enumerate() {
            if self.columns[0][m] != Cyclotomic::from_integer(n, T::from_u64_exact(*size as u64)) {
                return Err(Error::inconsistent(format!("coefficient of block {m} at 0 is not its size")));
            }
        }
        let total = T::from_u64_exact(self.columns.len() as u64);
        for (b, col) in self.columns.iter().enumerate() {
            let mut sum = Cyclotomic::zero(n);
            for c in col {
                sum = sum.add(c)?;
            }
            let expected = if b == 0 { total.clone() } else { T::zero() };
            if sum != Cyclotomic::from_integer(n, expected) {
                return Err(Error::inconsistent(format!("column sum at {b} violates orthogonality")));
            }
        }
        Ok(())
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn num_blocks(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn entry(&self, m: usize, b: Element) -> &Cyclotomic<T> {
        &self.columns[b][m]
    }

    pub fn column(&self, b: Element) -> &[Cyclotomic<T>] {
        &self.columns[b]
    }

    pub fn columns(&self) -> &[Vec<Cyclotomic<T>>] {
        &self.columns
    }

    /// Elements grouped by equal columns.
    pub fn dual_partition(&self, p: &Partition) -> Partition {
        let mut ids: HashMap<&[Cyclotomic<T>], usize> = HashMap::new();
        let assignment: Vec<usize> = self
            .columns
            .iter()
            .map(|c| {
                let next = ids.len();
                *ids.entry(c.as_slice()).or_insert(next)
            })
            .collect();
        Partition::from_assignment(p.ring(), &assignment).expect("one column per element")
    }
}

impl<T: Scalar> PartialEq for KrawtchoukTable<T> {
    /// Entrywise equality, whatever the side.
    fn eq(&self, other: &Self) -> bool {
        self.block_sizes == other.block_sizes && self.columns == other.columns
    }
}

/// Left or right `χ`-dual partition of `p`.
pub fn dual_partition(p: &Partition, chi: &Character, side: Side) -> Result<Partition> {
    Ok(KrawtchoukTable::<Integer>::compute(p, chi, side)?.dual_partition(p))
}

/// `p` equals its left dual.
pub fn is_self_dual(p: &Partition, chi: &Character) -> Result<bool> {
    dual_partition(p, chi, Side::Left)?.equals(p)
}

/// Reflexivity decided twice: the right dual of the left dual equals `p`,
/// and `|p|` equals the number of blocks of its left dual. The two answers
/// must agree, and the dual never has fewer blocks.
pub fn is_reflexive(p: &Partition, chi: &Character) -> Result<bool> {
    let dual = dual_partition(p, chi, Side::Left)?;
    if dual.len() < p.len() {
        return Err(Error::inconsistent(format!(
            "dual has {} blocks, fewer than the {} of the partition",
            dual.len(),
            p.len()
        )));
    }
    let by_bidual = dual_partition(&dual, chi, Side::Right)?.equals(p)?;
    let by_count = dual.len() == p.len();
    if by_bidual != by_count {
        return Err(Error::inconsistent(format!(
            "bidual test ({by_bidual}) and block count test ({by_count}) disagree"
        )));
    }
    Ok(by_bidual)
}

/// Left and right Krawtchouk tables coincide entrywise.
pub fn left_right_agreement(p: &Partition, chi: &Character) -> Result<bool> {
    let left = KrawtchoukTable::<Integer>::compute(p, chi, Side::Left)?;
    let right = KrawtchoukTable::<Integer>::compute(p, chi, Side::Right)?;
    Ok(left == right)
}

/// Every generating character gives the same left tables and the same
/// right tables.
pub fn character_independence_check(p: &Partition) -> Result<bool> {
    let chars = all_generating_characters(p.ring())?;
    for side in [Side::Left, Side::Right] {
        let reference = KrawtchoukTable::<Integer>::compute(p, &chars[0], side)?;
        for chi in &chars[1..] {
            if KrawtchoukTable::<Integer>::compute(p, chi, side)? != reference {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Closed form of `Σ_{rk B = k} χ(tr(BA))` for a rank-`i` matrix `A` of
/// `F_q^{m×m}`:
/// `Σ_j (−1)^{k−j} q^{jm + C(k−j,2)} [m−j, m−k]_q [m−i, j]_q`.
pub fn delsarte_rank_krawtchouk(m: u32, q: u64, i: u32, k: u32) -> Result<Integer> {
    if i > m || k > m {
        return Err(Error::invalid(format!("ranks {i}, {k} exceed dimension {m}")));
    }
    // terms with j > k vanish since [m−j, m−k] = 0
    let sum = (0..=k.min(m - i)).fold(Integer::from(0), |acc, j| {
        let d = (k - j) as u64;
        let exp = (j * m) as u64 + d * d.saturating_sub(1) / 2;
        let term = num_traits::pow(Integer::from(q), exp as usize)
            * gaussian::<Integer>(m - j, m - k, q)
            * gaussian::<Integer>(m - i, j, q);
        if d % 2 == 1 {
            acc - term
        } else {
            acc + term
        }
    });
    Ok(sum)
}

/// For a semisimple ring and an invariant partition, the left and right
/// tables under the canonical (symmetric) character agree.
pub fn semisimple_lr_agreement(p: &Partition) -> Result<bool> {
    let ring = p.ring();
    if !ring.is_semisimple() {
        return Err(Error::invalid(format!("{} is not semisimple", ring.name())));
    }
    if !p.is_invariant() {
        return Err(Error::invalid("partition is not invariant"));
    }
    let chi = canonical_generating_character(ring)?;
    if !chi.is_symmetric() {
        return Err(Error::inconsistent(format!(
            "canonical character of {} is not symmetric",
            ring.name()
        )));
    }
    left_right_agreement(p, &chi)
}
