//! Additive characters stored as exponent maps into `Z_N`.
//!
//! A character `χ` of `(R, +)` takes values in the `N`-th roots of unity,
//! `N` the additive exponent of `R`; we keep only `e(x)` with
//! `χ(x) = ζ_N^{e(x)}`. Sums of character values are formed through
//! [`crate::cyclotomic`].

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::ring::{Element, Family, FiniteRing, Ring, Side};
use crate::{Cyclotomic, Error, Result, Scalar};

#[derive(Clone)]
pub struct Character {
    ring: Ring,
    order: usize,
    exponents: Vec<u32>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Character")
            .field("ring", &self.ring.name())
            .field("order", &self.order)
            .field("exponents", &self.exponents)
            .finish()
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        crate::ring::same_ring(&self.ring, &other.ring)
            && self.order == other.order
            && self.exponents == other.exponents
    }
}

impl Eq for Character {}

#[derive(Serialize)]
struct CharacterJson<'a> {
    order: usize,
    exponents: &'a [u32],
}

impl Serialize for Character {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterJson {
            order: self.order,
            exponents: &self.exponents,
        }
        .serialize(s)
    }
}

impl Character {
    /// Validates that `exponents` is additive modulo the ring's additive exponent.
    pub fn new(ring: &Ring, exponents: Vec<u64>) -> Result<Self> {
        let order = ring.additive_exponent();
        if exponents.len() != ring.size() {
            return Err(Error::invalid(format!(
                "character needs {} exponents, got {}",
                ring.size(),
                exponents.len()
            )));
        }
        let exponents: Vec<u32> = exponents.iter().map(|&e| (e % order as u64) as u32).collect();
        for a in ring.elements() {
            for b in ring.elements() {
                if (exponents[a] as usize + exponents[b] as usize) % order
                    != exponents[ring.add(a, b)] as usize
                {
                    return Err(Error::invalid(format!(
                        "exponent map is not additive at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Self {
            ring: ring.clone(),
            order,
            exponents,
        })
    }

    fn unchecked(ring: &Ring, exponents: Vec<u32>) -> Self {
        Self {
            ring: ring.clone(),
            order: ring.additive_exponent(),
            exponents,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn exponent(&self, x: Element) -> usize {
        self.exponents[x] as usize
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `χ(x)` as an exact cyclotomic integer.
    pub fn value<T: Scalar>(&self, x: Element) -> Cyclotomic<T> {
        Cyclotomic::root_power(self.order, self.exponent(x) as i64)
    }

    /// No nonzero left or right ideal lies in the kernel.
    pub fn is_generating(&self) -> bool {
        let r = &self.ring;
        r.elements().skip(1).all(|x| {
            r.elements().any(|s| self.exponents[r.mul(s, x)] != 0)
                && r.elements().any(|s| self.exponents[r.mul(x, s)] != 0)
        })
    }

    /// `χ(ab) = χ(ba)` for all pairs.
    pub fn is_symmetric(&self) -> bool {
        let r = &self.ring;
        r.elements().all(|a| {
            (a + 1..r.size()).all(|b| self.exponents[r.mul(a, b)] == self.exponents[r.mul(b, a)])
        })
    }

    /// Left translate `(r·χ)(v) = χ(vr)` or right translate `(χ·r)(v) = χ(rv)`.
    pub fn translate(&self, r: Element, side: Side) -> Character {
        let ring = &self.ring;
        let exponents = ring
            .elements()
            .map(|v| match side {
                Side::Left => self.exponents[ring.mul(v, r)],
                Side::Right => self.exponents[ring.mul(r, v)],
            })
            .collect();
        Self::unchecked(ring, exponents)
    }

    /// All left unit translates `u·χ`, without duplicates, ordered by `u`.
    pub fn unit_translates(&self) -> Vec<Character> {
        let mut seen = HashSet::new();
        self.ring
            .unit_slice()
            .iter()
            .map(|&u| self.translate(u, Side::Left))
            .filter(|c| seen.insert(c.exponents.clone()))
            .collect()
    }
}

/// Exponents of the structural generating character, when the family has one.
fn structural_exponents(ring: &FiniteRing) -> Option<Vec<u32>> {
    match ring.family() {
        Family::ZMod { .. } => Some(ring.elements().map(|a| a as u32).collect()),
        Family::Field(f) => {
            let p = f.characteristic();
            // absolute trace x + x^p + ... + x^{p^{k-1}} lands in the prime field
            Some(
                ring.elements()
                    .map(|x| {
                        let mut term = x;
                        let mut acc = x;
                        for _ in 1..f.degree() {
                            term = (1..p).fold(term, |t, _| ring.mul(t, term));
                            acc = ring.add(acc, term);
                        }
                        debug_assert!(acc < p);
                        acc as u32
                    })
                    .collect(),
            )
        }
        Family::Matrix { dim, field } => {
            let field_char = canonical_exponents(field).ok()?;
            Some(
                ring.elements()
                    .map(|x| {
                        let e = ring.matrix_entries(x).unwrap();
                        let tr = (0..*dim).fold(0, |acc, i| field.add(acc, e[i * dim + i]));
                        field_char[tr]
                    })
                    .collect(),
            )
        }
        Family::Product { factors, .. } => {
            let order = ring.additive_exponent();
            let parts: Vec<(Vec<u32>, usize)> = factors
                .iter()
                .map(|f| canonical_exponents(f).map(|e| (e, order / f.additive_exponent())))
                .collect::<Result<_>>()
                .ok()?;
            Some(
                ring.elements()
                    .map(|x| {
                        let coords = ring.factor_coords(x).unwrap();
                        let sum: usize = coords
                            .iter()
                            .zip(&parts)
                            .map(|(&c, (e, scale))| e[c] as usize * scale)
                            .sum();
                        (sum % order) as u32
                    })
                    .collect(),
            )
        }
        Family::Table { char_exponents } => char_exponents.as_ref().map(|e| {
            let order = ring.additive_exponent() as u64;
            e.iter().map(|&v| (v % order) as u32).collect()
        }),
    }
}

fn canonical_exponents(ring: &Ring) -> Result<Vec<u32>> {
    canonical_generating_character(ring).map(|c| c.exponents)
}

/// The standard generating character of a ring.
///
/// Residue rings use `e(a) = a`, fields the absolute trace, matrix rings the
/// field character of the trace, products the lcm-scaled sum of their
/// factors' characters and table rings their declared exponents. Anything
/// else, or a declared character that is not generating, falls back to
/// [`search_generating_character`].
pub fn canonical_generating_character(ring: &Ring) -> Result<Character> {
    if let Some(exponents) = structural_exponents(ring) {
        let chi = Character::unchecked(ring, exponents);
        if chi.is_generating() {
            return Ok(chi);
        }
        if !matches!(ring.family(), Family::Table { .. }) {
            return Err(Error::inconsistent(format!(
                "structural character of {} is not generating",
                ring.name()
            )));
        }
    }
    search_generating_character(ring).ok_or_else(|| {
        Error::NotFrobenius(format!("{} has no generating character", ring.name()))
    })
}

/// Basis `(g_i, n_i)` of `(R, +)` with `R = ⊕ <g_i>` and `ord(g_i) = n_i`.
///
/// Each step picks an element of maximal order modulo the span so far and
/// then an element of that coset whose additive order equals the coset order.
pub fn cyclic_decomposition(ring: &FiniteRing) -> Option<Vec<(Element, usize)>> {
    let n = ring.size();
    let mut in_span = vec![false; n];
    in_span[0] = true;
    let mut span = vec![0];
    let mut basis = Vec::new();
    while span.len() < n {
        let coset_order = |x: Element| {
            let mut y = x;
            let mut k = 1;
            while !in_span[y] {
                y = ring.add(y, x);
                k += 1;
            }
            k
        };
        let (x, k) = ring
            .elements()
            .filter(|&x| !in_span[x])
            .map(|x| (x, coset_order(x)))
            .max_by_key(|&(x, k)| (k, std::cmp::Reverse(x)))?;
        let g = span
            .iter()
            .map(|&s| ring.add(x, s))
            .filter(|&y| ring.scale(k, y) == 0)
            .min()?;
        let mut grown = Vec::with_capacity(span.len() * k);
        for &s in &span {
            let mut y = s;
            for _ in 0..k {
                grown.push(y);
                y = ring.add(y, g);
            }
        }
        for &y in &grown {
            in_span[y] = true;
        }
        span = grown;
        basis.push((g, k));
    }
    Some(basis)
}

/// Exhaustive search for a generating character over all homomorphisms
/// `(R, +) → Z_N`, in a fixed order. `None` means the ring is not Frobenius.
pub fn search_generating_character(ring: &Ring) -> Option<Character> {
    let order = ring.additive_exponent();
    let basis = cyclic_decomposition(ring)?;
    // coordinates of every element in the basis
    let mut coords: Vec<Vec<usize>> = vec![Vec::new(); ring.size()];
    let mut reached = vec![0usize];
    for (i, &(g, k)) in basis.iter().enumerate() {
        let mut next = Vec::with_capacity(reached.len() * k);
        for &s in &reached {
            let mut y = s;
            for t in 0..k {
                let mut c = coords[s][..i].to_vec();
                c.push(t);
                coords[y] = c;
                next.push(y);
                y = ring.add(y, g);
            }
        }
        reached = next;
    }
    let total: usize = basis.iter().map(|&(_, k)| k).product();
    for mut code in 0..total {
        // digit i is the image of g_i, in units of N / n_i
        let mut images = vec![0usize; basis.len()];
        for (i, &(_, k)) in basis.iter().enumerate().rev() {
            images[i] = (code % k) * (order / k);
            code /= k;
        }
        let exponents = ring
            .elements()
            .map(|x| {
                let e: usize = coords[x].iter().zip(&images).map(|(c, v)| c * v).sum();
                (e % order) as u32
            })
            .collect();
        let chi = Character::unchecked(ring, exponents);
        if chi.is_generating() {
            return Some(chi);
        }
    }
    None
}

/// `{u·χ : u ∈ R*}` for the canonical generating character `χ`.
pub fn all_generating_characters(ring: &Ring) -> Result<Vec<Character>> {
    Ok(canonical_generating_character(ring)?.unit_translates())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_gf, build_matrix_ring, build_product, build_zmod, ex5_5, ex5_5_params, Limits, TableRingSpec};
    use crate::CycInt;
    use num_bigint::BigInt;

    /// F_2[x,y]/(x^2, y^2, xy): basis 1, x, y; index = c0 + 2 c1 + 4 c2.
    pub(crate) fn non_frobenius_ring() -> Ring {
        let n = 8;
        let split = |v: usize| (v & 1, (v >> 1) & 1, (v >> 2) & 1);
        let add = (0..n).map(|a| (0..n).map(|b| a ^ b).collect()).collect();
        let mul = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let (a0, a1, a2) = split(a);
                        let (b0, b1, b2) = split(b);
                        let c0 = a0 & b0;
                        let c1 = (a0 & b1) ^ (a1 & b0);
                        let c2 = (a0 & b2) ^ (a2 & b0);
                        c0 | (c1 << 1) | (c2 << 2)
                    })
                    .collect()
            })
            .collect();
        Limits::default()
            .table_ring(&TableRingSpec {
                size: n,
                add,
                mul,
                one: 1,
                char_exponents: None,
                name: Some("F2[x,y]/(x2,y2,xy)".into()),
                structure: None,
            })
            .unwrap()
    }

    #[test]
    fn residue_ring_characters() {
        let z4 = build_zmod(4).unwrap();
        let chi = canonical_generating_character(&z4).unwrap();
        assert_eq!(chi.exponents(), &[0, 1, 2, 3]);
        assert!(chi.is_generating());
        let doubled = Character::new(&z4, vec![0, 2, 0, 2]).unwrap();
        assert!(!doubled.is_generating());
        assert_eq!(all_generating_characters(&z4).unwrap().len(), 2);
    }

    #[test]
    fn non_additive_map_is_rejected() {
        let z4 = build_zmod(4).unwrap();
        assert!(Character::new(&z4, vec![0, 1, 1, 3]).is_err());
    }

    #[test]
    fn translates() {
        let z4 = build_zmod(4).unwrap();
        let chi = canonical_generating_character(&z4).unwrap();
        assert_eq!(chi.translate(1, Side::Left), chi);
        let t = chi.translate(3, Side::Left);
        assert_eq!(t.exponents(), &[0, 3, 2, 1]);
        assert!(t.is_generating());
        let zero = chi.translate(0, Side::Right);
        assert!(zero.exponents().iter().all(|&e| e == 0));
        assert!(!zero.is_generating());
    }

    #[test]
    fn gf_trace_character() {
        let f4 = build_gf(4).unwrap();
        let chi = canonical_generating_character(&f4).unwrap();
        // Tr(1) = 0, Tr(x) = x + x^2 = 1, Tr(x+1) = 1
        assert_eq!(chi.exponents(), &[0, 0, 1, 1]);
        assert_eq!(all_generating_characters(&build_gf(3).unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn matrix_trace_character_is_symmetric() {
        let f2 = build_gf(2).unwrap();
        let m2 = build_matrix_ring(2, &f2).unwrap();
        let chi = canonical_generating_character(&m2).unwrap();
        for x in m2.elements() {
            let e = m2.matrix_entries(x).unwrap();
            assert_eq!(chi.exponent(x), (e[0] + e[3]) % 2);
        }
        assert!(chi.is_symmetric());
        assert_eq!(all_generating_characters(&m2).unwrap().len(), 6);

        let f3 = build_gf(3).unwrap();
        let m23 = build_matrix_ring(2, &f3).unwrap();
        assert!(canonical_generating_character(&m23).unwrap().is_symmetric());
    }

    #[test]
    fn product_character_uses_lcm_order() {
        let z2 = build_zmod(2).unwrap();
        let z3 = build_zmod(3).unwrap();
        let r = build_product(&[z2, z3]).unwrap();
        let chi = canonical_generating_character(&r).unwrap();
        assert_eq!(chi.order(), 6);
        assert!(chi.is_generating());
        // a character with trivial Z_3 part kills the ideal 0 x Z_3
        let exps: Vec<u64> = r
            .elements()
            .map(|x| 3 * r.factor_coords(x).unwrap()[0] as u64)
            .collect();
        assert!(!Character::new(&r, exps).unwrap().is_generating());
    }

    #[test]
    fn search_finds_generating_characters() {
        let z6 = build_zmod(6).unwrap();
        let chi = search_generating_character(&z6).unwrap();
        assert!(chi.is_generating());
        assert!(z6.is_unit(chi.exponent(1)));

        let f2 = build_gf(2).unwrap();
        let f2f2 = build_product(&[f2.clone(), f2]).unwrap();
        let chi = search_generating_character(&f2f2).unwrap();
        for x in f2f2.elements() {
            let c = f2f2.factor_coords(x).unwrap();
            assert_eq!(chi.exponent(x), (c[0] + c[1]) % 2);
        }
    }

    #[test]
    fn non_frobenius_ring_has_no_generating_character() {
        let r = non_frobenius_ring();
        assert!(!r.is_frobenius());
        assert!(search_generating_character(&r).is_none());
        assert!(matches!(
            canonical_generating_character(&r),
            Err(Error::NotFrobenius(_))
        ));
    }

    #[test]
    fn ex5_5_character() {
        let r = ex5_5().unwrap();
        let chi = canonical_generating_character(&r).unwrap();
        for x in r.elements() {
            let s: u8 = ex5_5_params(x).iter().sum();
            assert_eq!(chi.exponent(x), (s % 2) as usize);
        }
        assert!(chi.is_generating());
        // the pair check on this non-commutative ring: B2·B1 vs B1·B2 differ in b
        assert!(!chi.is_symmetric());
    }

    #[test]
    fn orthogonality() {
        let f2 = build_gf(2).unwrap();
        let rings = [
            build_zmod(12).unwrap(),
            build_matrix_ring(2, &f2).unwrap(),
            ex5_5().unwrap(),
            build_product(&[build_gf(4).unwrap(), build_zmod(3).unwrap()]).unwrap(),
        ];
        for r in rings {
            let chi = canonical_generating_character(&r).unwrap();
            for b in r.elements() {
                for side in [Side::Left, Side::Right] {
                    let mut counts = vec![BigInt::from(0); chi.order()];
                    for a in r.elements() {
                        let x = match side {
                            Side::Left => r.mul(a, b),
                            Side::Right => r.mul(b, a),
                        };
                        counts[chi.exponent(x)] += 1;
                    }
                    let s = CycInt::from_exponent_counts(chi.order(), &counts);
                    let expected = if b == 0 { r.size() as i64 } else { 0 };
                    assert_eq!(s.as_rational_integer(), Some(BigInt::from(expected)));
                }
            }
            for c in chi.unit_translates() {
                assert!(c.is_generating());
            }
        }
    }

    #[test]
    fn decomposition_of_mixed_groups() {
        let r = build_product(&[build_zmod(4).unwrap(), build_zmod(2).unwrap(), build_zmod(3).unwrap()]).unwrap();
        let basis = cyclic_decomposition(&r).unwrap();
        let orders: Vec<usize> = basis.iter().map(|&(_, k)| k).collect();
        assert_eq!(orders.iter().product::<usize>(), 24);
        assert_eq!(orders[0], 12);
    }
}
