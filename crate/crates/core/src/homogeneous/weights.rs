//! The normalized homogeneous weight through unit character sums.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;

use super::combinatorics::{weight_rank_profile, RankEntry, RankProfile};
use crate::characters::{canonical_generating_character, search_generating_character};
use crate::ring::{quotient_by_radical, same_ring, Element, Family, FiniteRing, Ring, Side};
use crate::{Character, Cyclotomic, Error, Integer, Result, Scalar};

/// `Σ_{u∈R*} χ(xu)` and `Σ_{u∈R*} χ(ux)` as cyclotomic integers.
fn unit_sums<T: Scalar>(chi: &Character, x: Element) -> (Cyclotomic<T>, Cyclotomic<T>) {
    let ring = chi.ring();
    let n = chi.order();
    let (mut right, mut left) = (vec![0i64; n], vec![0i64; n]);
    for &u in ring.unit_slice() {
        right[chi.exponent(ring.mul(x, u))] += 1;
        left[chi.exponent(ring.mul(u, x))] += 1;
    }
    let conv = |v: Vec<i64>| -> Vec<T> { v.into_iter().map(T::from_i64_exact).collect() };
    (
        Cyclotomic::from_exponent_counts(n, &conv(right)),
        Cyclotomic::from_exponent_counts(n, &conv(left)),
    )
}

/// `ω(x) = 1 − (1/|R*|) Σ_{u∈R*} χ(xu)` for a generating character `χ`.
///
/// Both one-sided unit sums are formed; they must agree and be rational
/// integers, otherwise the character is not generating.
pub fn weight_via_characters<T: Scalar>(chi: &Character, x: Element) -> Result<Ratio<T>> {
    let ring = chi.ring();
    if x >= ring.size() {
        return Err(Error::invalid(format!("element {x} out of range")));
    }
    let (xu, ux) = unit_sums::<T>(chi, x);
    if xu != ux {
        return Err(Error::inconsistent(format!(
            "unit sums differ at {x}: {xu} vs {ux}"
        )));
    }
    let s = xu.as_rational_integer().ok_or_else(|| {
        Error::inconsistent(format!("unit sum at {x} is not rational: {xu}"))
    })?;
    let units = T::from_u64_exact(ring.unit_slice().len() as u64);
    Ok(Ratio::from_integer(T::one()) - Ratio::new(s, units))
}

/// Exact weights of every element of a ring.
#[derive(Clone, Debug)]
pub struct WeightTable<T: Scalar = Integer> {
    ring: Ring,
    weights: Vec<Ratio<T>>,
}

impl<T: Scalar> WeightTable<T> {
    /// Weights from a generating character, validated against the defining
    /// properties on both sides.
    pub fn compute(chi: &Character) -> Result<Self> {
        let table = Self::compute_unchecked(chi)?;
        table.validate()?;
        Ok(table)
    }

    /// Weights from a generating character without the post-validation.
    pub fn compute_unchecked(chi: &Character) -> Result<Self> {
        let ring = chi.ring().clone();
        ring.unit_slice();
        let weights = ring
            .elements()
            .into_par_iter()
            .map(|x| weight_via_characters::<T>(chi, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ring, weights })
    }

    /// Wraps arbitrary values; no property is checked.
    pub fn from_values(ring: &Ring, weights: Vec<Ratio<T>>) -> Result<Self> {
        if weights.len() != ring.size() {
            return Err(Error::invalid(format!(
                "expected {} weights, got {}",
                ring.size(),
                weights.len()
            )));
        }
        Ok(Self {
            ring: ring.clone(),
            weights,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn weights(&self) -> &[Ratio<T>] {
        &self.weights
    }

    pub fn weight(&self, x: Element) -> &Ratio<T> {
        &self.weights[x]
    }

    /// Distinct values with multiplicities, ascending.
    pub fn value_counts(&self) -> BTreeMap<Ratio<T>, usize> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Dense class id per element plus the distinct values in class order.
    pub(crate) fn classes(&self) -> (Vec<usize>, Vec<Ratio<T>>) {
        let values: Vec<Ratio<T>> = self.value_counts().into_keys().collect();
        let ids = self
            .weights
            .iter()
            .map(|w| values.binary_search(w).expect("value present"))
            .collect();
        (ids, values)
    }

    /// `ω(0) = 0`, constancy under unit multiplication on both sides, and
    /// average one on every nonzero principal left and right ideal.
    pub fn validate(&self) -> Result<()> {
        if !self.weights[0].is_zero_value() {
            return Err(Error::inconsistent("weight of zero is not zero"));
        }
        if let Some(x) = self.unit_invariance_failure() {
            return Err(Error::inconsistent(format!(
                "weight not constant on the associates of {x}"
            )));
        }
        for side in [Side::Left, Side::Right] {
            if let Some(x) = self.principal_average_failure(side) {
                return Err(Error::inconsistent(format!(
                    "average weight on the {side} ideal of {x} is not one"
                )));
            }
        }
        Ok(())
    }

    fn unit_invariance_failure(&self) -> Option<Element> {
        let ring = &self.ring;
        let units = ring.unit_slice();
        ring.elements().into_par_iter().find_first(|&x| {
            units.iter().any(|&u| {
                self.weights[ring.mul(u, x)] != self.weights[x]
                    || self.weights[ring.mul(x, u)] != self.weights[x]
            })
        })
    }

    fn principal_average_failure(&self, side: Side) -> Option<Element> {
        let ring = &self.ring;
        let (ids, values) = self.classes();
        let n = ring.size();
        ring.elements().into_par_iter().skip(1).find_first(|&x| {
            let mut seen = vec![false; n];
            let mut counts = vec![0usize; values.len()];
            let mut size = 0usize;
            for r in 0..n {
                let y = match side {
                    Side::Left => ring.mul(r, x),
                    Side::Right => ring.mul(x, r),
                };
                if !seen[y] {
                    seen[y] = true;
                    counts[ids[y]] += 1;
                    size += 1;
                }
            }
            !sum_equals_size(&counts, &values, size)
        })
    }

    /// `Σ_{y∈Rx} ω(y) = |Rx|` (or `xR`) for every nonzero `x`.
    pub fn principal_averages_hold(&self, side: Side) -> bool {
        self.principal_average_failure(side).is_none()
    }

    /// `Σ_{y∈I} ω(y) = |I|` for every nonzero one-sided ideal `I`; the
    /// ideal lattice is enumerated, so this is limited to small rings.
    pub fn all_ideal_sums_hold(&self, side: Side) -> Result<bool> {
        let (ids, values) = self.classes();
        Ok(self.ring.one_sided_ideals(side)?.iter().all(|ideal| {
            if ideal.is_zero() {
                return true;
            }
            let mut counts = vec![0usize; values.len()];
            for &y in ideal.members() {
                counts[ids[y]] += 1;
            }
            sum_equals_size(&counts, &values, ideal.len())
        }))
    }
}

fn sum_equals_size<T: Scalar>(counts: &[usize], values: &[Ratio<T>], size: usize) -> bool {
    let sum = counts
        .iter()
        .zip(values)
        .filter(|(c, _)| **c > 0)
        .fold(Ratio::from_integer(T::zero()), |acc, (c, w)| {
            acc + w.clone() * Ratio::from_integer(T::from_u64_exact(*c as u64))
        });
    sum == Ratio::from_integer(T::from_u64_exact(size as u64))
}

trait IsZeroValue {
    fn is_zero_value(&self) -> bool;
}

impl<T: Scalar> IsZeroValue for Ratio<T> {
    fn is_zero_value(&self) -> bool {
        self.numer().is_zero()
    }
}

/// Weight table of `ring` under `chi`, which must belong to that ring.
pub fn weight_table(ring: &Ring, chi: &Character) -> Result<WeightTable> {
    if !same_ring(ring, chi.ring()) {
        return Err(Error::invalid("character belongs to a different ring"));
    }
    WeightTable::compute(chi)
}

/// Weight table under the canonical generating character.
pub fn homogeneous_weights(ring: &Ring) -> Result<WeightTable> {
    WeightTable::compute(&canonical_generating_character(ring)?)
}

/// Rank of a matrix-ring element, by Gaussian elimination over the field.
pub fn matrix_rank(ring: &FiniteRing, x: Element) -> Result<u32> {
    let (dim, field) = ring
        .matrix_shape()
        .ok_or_else(|| Error::invalid(format!("{} is not a matrix ring", ring.name())))?;
    let mut a = ring.matrix_entries(x).expect("matrix ring");
    let at = |i: usize, j: usize| i * dim + j;
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..dim).find(|&i| a[at(i, col)] != 0) else {
            continue;
        };
        for j in 0..dim {
            a.swap(at(rank, j), at(pivot, j));
        }
        let inv = field.inverse(a[at(rank, col)]).expect("nonzero field element");
        for i in 0..dim {
            if i == rank || a[at(i, col)] == 0 {
                continue;
            }
            let f = field.mul(a[at(i, col)], inv);
            for j in 0..dim {
                let t = field.mul(f, a[at(rank, j)]);
                a[at(i, j)] = field.sub(a[at(i, j)], t);
            }
        }
        rank += 1;
    }
    Ok(rank as u32)
}

/// Componentwise ranks of an element of a field, a matrix ring over a
/// field, or a direct product of those.
pub fn rank_profile(ring: &FiniteRing, x: Element) -> Result<RankProfile> {
    let mut entries = Vec::new();
    push_ranks(ring, x, &mut entries)?;
    RankProfile::new(entries)
}

fn push_ranks(ring: &FiniteRing, x: Element, out: &mut Vec<RankEntry>) -> Result<()> {
    match ring.family() {
        Family::Product { factors, .. } => {
            let coords = ring.factor_coords(x).expect("product ring");
            for (f, c) in factors.iter().zip(coords) {
                push_ranks(f, c, out)?;
            }
        }
        Family::Matrix { dim, field } => out.push(RankEntry {
            rank: matrix_rank(ring, x)?,
            q: field.field_order().expect("matrix rings are over fields"),
            m: *dim as u32,
        }),
        _ => {
            let q = ring.field_order().ok_or_else(|| {
                Error::invalid(format!("{} is not a product of matrix rings", ring.name()))
            })?;
            out.push(RankEntry {
                rank: (x != 0) as u32,
                q,
                m: 1,
            });
        }
    }
    Ok(())
}

/// Weights of a product of matrix rings from the rank-profile closed form.
pub fn weights_from_rank_profiles(ring: &Ring) -> Result<WeightTable> {
    let weights = ring
        .elements()
        .map(|x| Ok(weight_rank_profile(&rank_profile(ring, x)?)))
        .collect::<Result<Vec<_>>>()?;
    WeightTable::from_values(ring, weights)
}

/// The weight is one off the socle, and its values on the socle match the
/// weights of `R/rad(R)` as multisets.
pub fn socle_weight_consistency(ring: &Ring, chi: &Character) -> Result<bool> {
    let table = weight_table(ring, chi)?;
    let socle = ring.socle(Side::Left);
    let one = Ratio::from_integer(Integer::from(1));
    if ring
        .elements()
        .any(|x| !socle.contains(x) && table.weight(x) != &one)
    {
        return Ok(false);
    }
    let (quotient, _) = quotient_by_radical(ring)?;
    let qchi = match canonical_generating_character(&quotient) {
        Ok(c) => c,
        Err(_) => search_generating_character(&quotient)
            .ok_or_else(|| Error::NotFrobenius(quotient.name().to_string()))?,
    };
    let qtable = WeightTable::<Integer>::compute(&qchi)?;
    let mut on_socle: Vec<_> = socle.members().iter().map(|&x| table.weight(x).clone()).collect();
    let mut on_quotient = qtable.weights().to_vec();
    on_socle.sort();
    on_quotient.sort();
    Ok(on_socle == on_quotient)
}

/// Whether some nonzero element has weight zero. When the ring carries a
/// decomposition, this must match "`F_2` occurs at least twice".
pub fn has_zero_weight_nonzero(ring: &Ring, chi: &Character) -> Result<bool> {
    let table = weight_table(ring, chi)?;
    let scan = table.weights().iter().skip(1).any(|w| w.is_zero_value());
    if let Some(structure) = ring.structure() {
        let predicate = structure.iter().filter(|f| f.q == 2 && f.m == 1).count() >= 2;
        if predicate != scan {
            return Err(Error::inconsistent(format!(
                "zero-weight scan ({scan}) disagrees with the structure of {}",
                ring.name()
            )));
        }
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::all_generating_characters;
    use crate::homogeneous::weight_matrix_rank;
    use crate::ring::{build_gf, build_matrix_ring, build_product, build_zmod, ex5_5};
    use crate::Rational;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn counts(t: &WeightTable) -> Vec<(Rational, usize)> {
        t.value_counts().into_iter().collect()
    }

    /// Solves the averaging equations directly: with `ω` constant on
    /// associate classes, process classes by increasing ideal size.
    fn averaging_oracle(ring: &Ring) -> Vec<Rational> {
        let n = ring.size();
        let ideal = |x: Element| ring.principal_ideal(x, Side::Left);
        let mut order: Vec<Element> = (1..n).collect();
        order.sort_by_key(|&x| ideal(x).len());
        let mut w: Vec<Option<Rational>> = vec![None; n];
        w[0] = Some(rat(0, 1));
        for x in order {
            if w[x].is_some() {
                continue;
            }
            let members = ideal(x);
            let generators: Vec<Element> = members
                .members()
                .iter()
                .copied()
                .filter(|&y| ideal(y).same_set(&members))
                .collect();
            let known: Rational = members
                .members()
                .iter()
                .filter_map(|&y| w[y].clone())
                .sum();
            let value = (rat(members.len() as i64, 1) - known) / rat(generators.len() as i64, 1);
            for y in generators {
                w[y] = Some(value.clone());
            }
        }
        w.into_iter().map(Option::unwrap).collect()
    }

    #[test]
    fn z4_weights() {
        let t = homogeneous_weights(&build_zmod(4).unwrap()).unwrap();
        assert_eq!(t.weights(), &[rat(0, 1), rat(1, 1), rat(2, 1), rat(1, 1)]);
    }

    #[test]
    fn zpq_weights_match_averaging_oracle() {
        for (n, expected) in [
            (6, vec![(rat(0, 1), 1), (rat(1, 2), 2), (rat(3, 2), 2), (rat(2, 1), 1)]),
            (15, vec![]),
        ] {
            let ring = build_zmod(n).unwrap();
            let t = homogeneous_weights(&ring).unwrap();
            assert_eq!(t.weights(), averaging_oracle(&ring).as_slice());
            if !expected.is_empty() {
                assert_eq!(counts(&t), expected);
            }
        }
        // on pZ_pq \ {0} the value is q/(q-1): for Z_15, 3Z_15 has 5 elements
        let t = homogeneous_weights(&build_zmod(15).unwrap()).unwrap();
        assert_eq!(t.weight(3), &rat(5, 4));
        assert_eq!(t.weight(5), &rat(3, 2));
    }

    #[test]
    fn oracle_agrees_on_assorted_rings() {
        let f2 = build_gf(2).unwrap();
        for ring in [
            build_zmod(8).unwrap(),
            build_zmod(12).unwrap(),
            build_gf(4).unwrap(),
            build_matrix_ring(2, &f2).unwrap(),
            ex5_5().unwrap(),
        ] {
            let t = homogeneous_weights(&ring).unwrap();
            assert_eq!(t.weights(), averaging_oracle(&ring).as_slice(), "{}", ring.name());
        }
    }

    #[test]
    fn m2f2_weights() {
        let ring = build_matrix_ring(2, &build_gf(2).unwrap()).unwrap();
        let t = homogeneous_weights(&ring).unwrap();
        assert_eq!(counts(&t), vec![(rat(0, 1), 1), (rat(2, 3), 6), (rat(4, 3), 9)]);
        for x in ring.elements() {
            let r = matrix_rank(&ring, x).unwrap();
            assert_eq!(t.weight(x), &weight_matrix_rank::<Integer>(r, 2, 2));
        }
    }

    #[test]
    fn ranks() {
        let ring = build_matrix_ring(2, &build_gf(2).unwrap()).unwrap();
        assert_eq!(matrix_rank(&ring, 0).unwrap(), 0);
        assert_eq!(matrix_rank(&ring, 9).unwrap(), 2);
        assert_eq!(matrix_rank(&ring, 8).unwrap(), 1);
        let mut by_rank = [0; 3];
        for x in ring.elements() {
            by_rank[matrix_rank(&ring, x).unwrap() as usize] += 1;
        }
        assert_eq!(by_rank, [1, 9, 6]);
        assert!(matrix_rank(&build_zmod(4).unwrap(), 1).is_err());
    }

    #[test]
    fn rank_profile_weights_agree_with_characters() {
        let f2 = build_gf(2).unwrap();
        let f3 = build_gf(3).unwrap();
        let m2 = build_matrix_ring(2, &f2).unwrap();
        for ring in [
            build_product(&[m2.clone(), f2.clone()]).unwrap(),
            build_product(&[f2.clone(), f3.clone()]).unwrap(),
            build_product(&[build_gf(4).unwrap(), f3.clone()]).unwrap(),
            build_matrix_ring(2, &f3).unwrap(),
        ] {
            let closed = weights_from_rank_profiles(&ring).unwrap();
            let chars = homogeneous_weights(&ring).unwrap();
            assert_eq!(closed.weights(), chars.weights(), "{}", ring.name());
        }
    }

    #[test]
    fn f2_squared_has_zero_weight() {
        let f2 = build_gf(2).unwrap();
        let ring = build_product(&[f2.clone(), f2]).unwrap();
        let t = homogeneous_weights(&ring).unwrap();
        assert_eq!(t.weight(3), &rat(0, 1));
    }

    #[test]
    fn zero_weight_predicate() {
        let f2 = build_gf(2).unwrap();
        let f3 = build_gf(3).unwrap();
        let cases = [
            (build_zmod(4).unwrap(), false),
            (build_zmod(6).unwrap(), false),
            (build_product(&[f2.clone(), f2.clone()]).unwrap(), true),
            (build_product(&[f2.clone(), f2.clone(), f3]).unwrap(), true),
            (
                build_product(&[build_matrix_ring(2, &f2).unwrap(), f2]).unwrap(),
                false,
            ),
        ];
        for (ring, expected) in cases {
            let chi = canonical_generating_character(&ring).unwrap();
            assert_eq!(has_zero_weight_nonzero(&ring, &chi).unwrap(), expected, "{}", ring.name());
        }
    }

    #[test]
    fn socle_consistency() {
        for ring in [
            build_zmod(8).unwrap(),
            build_zmod(12).unwrap(),
            ex5_5().unwrap(),
            build_matrix_ring(2, &build_gf(2).unwrap()).unwrap(),
        ] {
            let chi = canonical_generating_character(&ring).unwrap();
            assert!(socle_weight_consistency(&ring, &chi).unwrap(), "{}", ring.name());
        }
    }

    #[test]
    fn z8_weights_off_socle() {
        let t = homogeneous_weights(&build_zmod(8).unwrap()).unwrap();
        for x in [1, 2, 3, 5, 6, 7] {
            assert_eq!(t.weight(x), &rat(1, 1));
        }
        assert_eq!(t.weight(4), &rat(2, 1));
    }

    #[test]
    fn independent_of_generating_character() {
        for ring in [build_zmod(9).unwrap(), build_matrix_ring(2, &build_gf(2).unwrap()).unwrap()] {
            let reference = homogeneous_weights(&ring).unwrap();
            for chi in all_generating_characters(&ring).unwrap() {
                assert_eq!(WeightTable::<Integer>::compute(&chi).unwrap().weights(), reference.weights());
            }
        }
    }

    #[test]
    fn all_ideals_average_one() {
        let f2 = build_gf(2).unwrap();
        for ring in [build_zmod(12).unwrap(), ex5_5().unwrap(), build_matrix_ring(2, &f2).unwrap()] {
            let t = homogeneous_weights(&ring).unwrap();
            for side in [Side::Left, Side::Right] {
                assert!(t.all_ideal_sums_hold(side).unwrap());
                assert!(t.principal_averages_hold(side));
            }
        }
    }

    #[test]
    fn non_generating_character_is_rejected() {
        let ring = build_zmod(4).unwrap();
        let chi = Character::new(&ring, vec![0, 2, 0, 2]).unwrap();
        assert!(matches!(
            WeightTable::<Integer>::compute(&chi),
            Err(Error::InternalInconsistency(_))
        ));
    }

    #[test]
    fn machine_integers_agree() {
        let ring = build_matrix_ring(2, &build_gf(3).unwrap()).unwrap();
        let chi = canonical_generating_character(&ring).unwrap();
        let small = WeightTable::<i64>::compute(&chi).unwrap();
        let big = WeightTable::<Integer>::compute(&chi).unwrap();
        for (a, b) in small.weights().iter().zip(big.weights()) {
            assert_eq!(Integer::from(*a.numer()), *b.numer());
            assert_eq!(Integer::from(*a.denom()), *b.denom());
        }
    }
}
