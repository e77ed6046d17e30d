//! Units, radical, socle, ideals and the semisimple quotient.

use rand::rngs::StdRng;
use rand::{Rng as _, SeedableRng};
use serde::{Deserialize, Serialize};

use super::{Element, FiniteRing, Limits, Ring, Side};
use crate::{Error, Result};

const NO_INVERSE: u32 = u32::MAX;

pub(crate) struct UnitData {
    units: Vec<Element>,
    inverse: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealSide {
    Left,
    Right,
    TwoSided,
}

impl From<Side> for IdealSide {
    fn from(side: Side) -> Self {
        match side {
            Side::Left => IdealSide::Left,
            Side::Right => IdealSide::Right,
        }
    }
}

/// A one- or two-sided ideal as a sorted set of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealSet {
    members: Vec<Element>,
    side: IdealSide,
}

impl IdealSet {
    fn from_mask(mask: &[bool], side: IdealSide) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Self { members, side }
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn side(&self) -> IdealSide {
        self.side
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.members == [0]
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Same members, regardless of declared side.
    pub fn same_set(&self, other: &IdealSet) -> bool {
        self.members == other.members
    }

    /// Closed under addition and under multiplication on the declared side.
    pub fn is_closed_in(&self, ring: &FiniteRing) -> bool {
        let left = matches!(self.side, IdealSide::Left | IdealSide::TwoSided);
        let right = matches!(self.side, IdealSide::Right | IdealSide::TwoSided);
        self.members.iter().all(|&x| {
            self.members.iter().all(|&y| self.contains(ring.add(x, y)))
                && ring.elements().all(|r| {
                    (!left || self.contains(ring.mul(r, x))) && (!right || self.contains(ring.mul(x, r)))
                })
        })
    }
}

impl FiniteRing {
    fn unit_data(&self) -> &UnitData {
        self.cache.units.get_or_init(|| {
            let n = self.size();
            let one = self.one();
            let mut inverse = vec![NO_INVERSE; n];
            let mut units = Vec::new();
            for x in 0..n {
                if inverse[x] != NO_INVERSE {
                    units.push(x);
                    continue;
                }
                if let Some(y) = (0..n).find(|&y| self.mul(x, y) == one && self.mul(y, x) == one) {
                    inverse[x] = y as u32;
                    inverse[y] = x as u32;
                    units.push(x);
                }
            }
            UnitData { units, inverse }
        })
    }

    /// The group of units, sorted.
    pub fn units(&self) -> Vec<Element> {
        self.unit_data().units.clone()
    }

    pub fn unit_slice(&self) -> &[Element] {
        &self.unit_data().units
    }

    pub fn is_unit(&self, x: Element) -> bool {
        self.unit_data().inverse[x] != NO_INVERSE
    }

    pub fn inverse(&self, x: Element) -> Option<Element> {
        match self.unit_data().inverse[x] {
            NO_INVERSE => None,
            y => Some(y as Element),
        }
    }

    /// `rad(R) = {x : 1 − r·x is a unit for all r}`.
    pub fn jacobson_radical(&self) -> IdealSet {
        let members = self
            .cache
            .radical
            .get_or_init(|| {
                let one = self.one();
                self.elements()
                    .filter(|&x| {
                        self.elements()
                            .all(|r| self.is_unit(self.sub(one, self.mul(r, x))))
                    })
                    .collect()
            })
            .clone();
        IdealSet {
            members,
            side: IdealSide::TwoSided,
        }
    }

    pub fn is_semisimple(&self) -> bool {
        self.jacobson_radical().is_zero()
    }

    /// Left socle `{x : rad·x = 0}` or right socle `{x : x·rad = 0}`.
    pub fn socle(&self, side: Side) -> IdealSet {
        let cell = match side {
            Side::Left => &self.cache.left_socle,
            Side::Right => &self.cache.right_socle,
        };
        let members = cell
            .get_or_init(|| {
                let rad = self.jacobson_radical();
                self.elements()
                    .filter(|&x| {
                        rad.members().iter().all(|&j| match side {
                            Side::Left => self.mul(j, x) == 0,
                            Side::Right => self.mul(x, j) == 0,
                        })
                    })
                    .collect()
            })
            .clone();
        IdealSet {
            members,
            side: IdealSide::TwoSided,
        }
    }

    fn principal_mask(&self, x: Element, side: Side, mask: &mut [bool]) -> usize {
        mask.iter_mut().for_each(|m| *m = false);
        let mut count = 0;
        for r in self.elements() {
            let y = match side {
                Side::Left => self.mul(r, x),
                Side::Right => self.mul(x, r),
            };
            if !mask[y] {
                mask[y] = true;
                count += 1;
            }
        }
        count
    }

    /// `Rx` (left) or `xR` (right).
    pub fn principal_ideal(&self, x: Element, side: Side) -> IdealSet {
        let mut mask = vec![false; self.size()];
        self.principal_mask(x, side, &mut mask);
        IdealSet::from_mask(&mask, side.into())
    }

    /// Some `a` with `soc = Ra` (left) or `soc = aR` (right).
    pub fn socle_generator(&self, side: Side) -> Option<Element> {
        let soc = self.socle(side);
        let mut mask = vec![false; self.size()];
        let one = self.one();
        let mut candidates = soc
            .contains(one)
            .then_some(one)
            .into_iter()
            .chain(soc.members().iter().copied().filter(|&a| a != one));
        candidates.find(|&a| self.principal_mask(a, side, &mut mask) == soc.len())
    }

    /// Both socles are principal on their side.
    pub fn is_frobenius(&self) -> bool {
        let frobenius =
            self.socle_generator(Side::Left).is_some() && self.socle_generator(Side::Right).is_some();
        if frobenius {
            assert!(
                self.socle(Side::Left).same_set(&self.socle(Side::Right)),
                "left and right socle differ on a Frobenius ring {}",
                self.name()
            );
        }
        frobenius
    }

    /// Every one-sided ideal, by closing principal ideals under sums.
    /// Limited to rings with at most 64 elements.
    pub fn one_sided_ideals(&self, side: Side) -> Result<Vec<IdealSet>> {
        let n = self.size();
        if n > 64 {
            return Err(Error::ResourceLimit {
                what: format!("ideal lattice of {}", self.name()),
                needed: n as u128,
                limit: 64,
            });
        }
        let to_bits = |set: &IdealSet| set.members().iter().fold(0u64, |acc, &x| acc | (1 << x));
        let principal: Vec<u64> = self
            .elements()
            .map(|x| to_bits(&self.principal_ideal(x, side)))
            .collect();
        let sum = |a: u64, b: u64| {
            let mut out = 0u64;
            for x in (0..n).filter(|x| a >> x & 1 == 1) {
                for y in (0..n).filter(|y| b >> y & 1 == 1) {
                    out |= 1 << self.add(x, y);
                }
            }
            out
        };
        let mut ideals: Vec<u64> = vec![1];
        let mut seen: std::collections::HashSet<u64> = ideals.iter().copied().collect();
        let mut frontier = ideals.clone();
        while let Some(i) = frontier.pop() {
            for &p in &principal {
                let j = sum(i, p);
                if seen.insert(j) {
                    ideals.push(j);
                    frontier.push(j);
                }
            }
        }
        ideals.sort_unstable();
        Ok(ideals
            .into_iter()
            .map(|bits| {
                let mask: Vec<bool> = (0..n).map(|x| bits >> x & 1 == 1).collect();
                IdealSet::from_mask(&mask, side.into())
            })
            .collect())
    }

    /// Ring axioms on all triples when `size ≤ exhaustive_limit`, otherwise on
    /// `samples` random triples from a fixed seed.
    pub fn check_axioms(&self, exhaustive_limit: usize, samples: usize) -> Result<()> {
        let check = |a: Element, b: Element, c: Element| -> Result<()> {
            let ok = self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                && self.add(a, b) == self.add(b, a)
                && self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                && self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))
                && self.mul(self.add(a, b), c) == self.add(self.mul(a, c), self.mul(b, c))
                && self.add(a, 0) == a
                && self.add(a, self.neg(a)) == 0
                && self.mul(self.one(), a) == a
                && self.mul(a, self.one()) == a;
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidRing(format!(
                    "{}: ring axiom fails at ({a}, {b}, {c})",
                    self.name()
                )))
            }
        };
        let n = self.size();
        if n <= exhaustive_limit {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            for _ in 0..samples {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }
}

/// `R/rad(R)` as a table ring together with the projection `π`.
///
/// A semisimple ring is returned as itself with the identity projection.
pub fn quotient_by_radical(ring: &Ring) -> Result<(Ring, Vec<Element>)> {
    let rad = ring.jacobson_radical();
    if rad.is_zero() {
        return Ok((ring.clone(), ring.elements().collect()));
    }
    let n = ring.size();
    let mut label = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in ring.elements() {
        if label[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &j in rad.members() {
            label[ring.add(x, j)] = id;
        }
    }
    let k = reps.len();
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            add.push(label[ring.add(a, b)] as u16);
            mul.push(label[ring.mul(a, b)] as u16);
        }
    }
    let quotient = Limits::default().build_from_tables(
        format!("{}/rad", ring.name()),
        k,
        add,
        mul,
        label[ring.one()],
        ring.structure().map(<[_]>::to_vec),
        None,
    )?;
    Ok((quotient, label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_gf, build_matrix_ring, build_product, build_zmod, ex5_5, ex5_5_params};

    #[test]
    fn units_and_radical_of_residue_rings() {
        let z4 = build_zmod(4).unwrap();
        assert_eq!(z4.units(), vec![1, 3]);
        assert_eq!(z4.jacobson_radical().members(), &[0, 2]);
        assert_eq!(z4.socle(Side::Left).members(), &[0, 2]);

        let z12 = build_zmod(12).unwrap();
        assert_eq!(z12.jacobson_radical().members(), &[0, 6]);

        let z8 = build_zmod(8).unwrap();
        assert_eq!(z8.socle(Side::Left).members(), &[0, 4]);
        assert_eq!(z8.socle(Side::Right).members(), &[0, 4]);
    }

    #[test]
    fn matrix_ring_is_semisimple() {
        let f2 = build_gf(2).unwrap();
        let m2 = build_matrix_ring(2, &f2).unwrap();
        assert_eq!(m2.units().len(), 6);
        assert!(m2.jacobson_radical().is_zero());
        assert_eq!(m2.socle(Side::Left).len(), 16);
        assert!(m2.is_frobenius());
    }

    #[test]
    fn principal_ideals() {
        let z6 = build_zmod(6).unwrap();
        assert_eq!(z6.principal_ideal(2, Side::Left).members(), &[0, 2, 4]);
        assert_eq!(z6.principal_ideal(0, Side::Right).members(), &[0]);

        let f2 = build_gf(2).unwrap();
        let m2 = build_matrix_ring(2, &f2).unwrap();
        let e11 = m2.from_matrix_entries(&[1, 0, 0, 0]).unwrap();
        let ideal = m2.principal_ideal(e11, Side::Left);
        assert_eq!(ideal.len(), 4);
        assert!(ideal.is_closed_in(&m2));
    }

    #[test]
    fn quotients() {
        let z4 = build_zmod(4).unwrap();
        let (q, pi) = quotient_by_radical(&z4).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(pi, vec![0, 1, 0, 1]);
        assert_eq!(q.mul(1, 1), 1);
        assert_eq!(q.add(1, 1), 0);

        let f2 = build_gf(2).unwrap();
        let m2 = build_matrix_ring(2, &f2).unwrap();
        let (q, pi) = quotient_by_radical(&m2).unwrap();
        assert_eq!(q.size(), 16);
        assert_eq!(pi, (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn ex5_5_radical_socle_quotient() {
        let r = ex5_5().unwrap();
        let rad = r.jacobson_radical();
        // rad = {a = c = 0}, which also equals the socle
        assert_eq!(rad.len(), 4);
        assert!(rad.members().iter().all(|&x| {
            let [a, _, c, _] = ex5_5_params(x);
            a == 0 && c == 0
        }));
        assert!(rad.is_closed_in(&r));
        assert!(r.socle(Side::Left).same_set(&rad));
        assert!(r.socle(Side::Right).same_set(&rad));
        assert!(r.is_frobenius());
        let (q, _) = quotient_by_radical(&r).unwrap();
        assert_eq!(q.size(), 4);
        assert!(q.jacobson_radical().is_zero());
    }

    #[test]
    fn ideal_lattices() {
        let z12 = build_zmod(12).unwrap();
        // ideals of Z_12 correspond to divisors of 12
        assert_eq!(z12.one_sided_ideals(Side::Left).unwrap().len(), 6);
        let f2 = build_gf(2).unwrap();
        let m2 = build_matrix_ring(2, &f2).unwrap();
        // {0}, three lines, whole ring
        assert_eq!(m2.one_sided_ideals(Side::Left).unwrap().len(), 5);
        let big = build_product(&[m2.clone(), m2.clone()]).unwrap();
        assert!(big.one_sided_ideals(Side::Left).is_err());
    }

    #[test]
    fn axioms_hold_on_constructed_rings() {
        let f3 = build_gf(3).unwrap();
        let f4 = build_gf(4).unwrap();
        for r in [
            build_zmod(12).unwrap(),
            f4.clone(),
            build_matrix_ring(2, &f3).unwrap(),
            build_product(&[f4, f3]).unwrap(),
            ex5_5().unwrap(),
        ] {
            r.check_axioms(100, 5000).unwrap();
        }
    }
}
