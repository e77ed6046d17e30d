//! Finite rings with dense element indices.
//!
//! Every ring numbers its elements `0..size` with `0` the additive identity.
//! Small rings keep full addition and multiplication tables; larger
//! structured rings compute products on demand from their description.

mod gf;
mod structure;
mod table;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use gf::{prime_divisors, prime_power, GaloisField};
pub use structure::{quotient_by_radical, IdealSet, IdealSide};
pub use table::{ex5_5, ex5_5_index, ex5_5_matrix, ex5_5_params, ex5_5_spec, TableRingSpec, EX5_5_NAME};

pub type Element = usize;
pub type Ring = Arc<FiniteRing>;

pub const DEFAULT_MAX_SIZE: usize = 10_000;
pub const DEFAULT_TABLE_THRESHOLD: usize = 4096;
/// Tables store indices as `u16`.
const TABLE_CAP: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// One factor `(F_q)^{m×m}` of the semisimple quotient `R/rad(R)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorSpec {
    pub q: u64,
    pub m: u32,
}

impl FactorSpec {
    pub fn new(q: u64, m: u32) -> Self {
        Self { q, m }
    }
}

/// Construction limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring (in elements) any constructor will build.
    pub max_size: usize,
    /// Rings up to this size get precomputed arithmetic tables.
    pub table_threshold: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_size: DEFAULT_MAX_SIZE,
            table_threshold: DEFAULT_TABLE_THRESHOLD,
        }
    }
}

#[derive(Debug)]
pub enum Family {
    ZMod { modulus: usize },
    Field(GaloisField),
    Matrix { dim: usize, field: Ring },
    Product { factors: Vec<Ring>, strides: Vec<usize> },
    Table { char_exponents: Option<Vec<u64>> },
}

enum Arith {
    Tables { add: Vec<u16>, mul: Vec<u16> },
    OnDemand,
}

#[derive(Default)]
pub(crate) struct Cache {
    pub units: OnceLock<structure::UnitData>,
    pub radical: OnceLock<Vec<Element>>,
    pub left_socle: OnceLock<Vec<Element>>,
    pub right_socle: OnceLock<Vec<Element>>,
    pub commutative: OnceLock<bool>,
}

pub struct FiniteRing {
    name: String,
    size: usize,
    one: Element,
    neg: Vec<u32>,
    arith: Arith,
    family: Family,
    structure: Option<Vec<FactorSpec>>,
    characteristic: usize,
    additive_exponent: usize,
    pub(crate) cache: Cache,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("name", &self.name)
            .field("size", &self.size)
            .field("structure", &self.structure)
            .finish_non_exhaustive()
    }
}

impl Limits {
    fn check(&self, what: &str, needed: u128) -> Result<usize> {
        if needed > self.max_size as u128 {
            return Err(Error::ResourceLimit {
                what: what.to_string(),
                needed,
                limit: self.max_size,
            });
        }
        Ok(needed as usize)
    }

    /// `Z_N` for `N ≥ 2`.
    pub fn zmod(&self, n: usize) -> Result<Ring> {
        if n < 2 {
            return Err(Error::invalid(format!("Z_{n}: modulus must be at least 2")));
        }
        let name = format!("Z{n}");
        self.check(&name, n as u128)?;
        let structure = prime_divisors(n as u64)
            .into_iter()
            .map(|p| FactorSpec::new(p, 1))
            .collect();
        self.assemble(name, Family::ZMod { modulus: n }, n, 1, Some(structure))
    }

    /// The field with `q` elements.
    pub fn gf(&self, q: u64) -> Result<Ring> {
        let field = GaloisField::new(q)?;
        let name = format!("GF({q})");
        let size = self.check(&name, q as u128)?;
        self.assemble(name, Family::Field(field), size, 1, Some(vec![FactorSpec::new(q, 1)]))
    }

    /// All `m×m` matrices over `field`, which must come from [`Limits::gf`].
    pub fn matrix_ring(&self, m: usize, field: &Ring) -> Result<Ring> {
        if m == 0 {
            return Err(Error::invalid("matrix dimension must be at least 1"));
        }
        if !matches!(field.family, Family::Field(_)) {
            return Err(Error::invalid(format!(
                "matrix entries must come from a Galois field, got {}",
                field.name
            )));
        }
        let q = field.size as u128;
        let name = format!("M({m},{})", field.name);
        let needed = (m * m) as u32;
        let size = q
            .checked_pow(needed)
            .map_or(Err(Error::ResourceLimit {
                what: name.clone(),
                needed: u128::MAX,
                limit: self.max_size,
            }), |s| self.check(&name, s))?;
        let structure = vec![FactorSpec::new(field.size as u64, m as u32)];
        // identity: digit 1 at each diagonal slot, (0,0) most significant
        let one = (0..m).map(|i| field.size.pow((m * m - 1 - (i * m + i)) as u32)).sum();
        self.assemble(
            name,
            Family::Matrix { dim: m, field: field.clone() },
            size,
            one,
            Some(structure),
        )
    }

    /// Direct product with componentwise arithmetic; the first factor is the
    /// most significant digit of the index.
    pub fn product(&self, factors: &[Ring]) -> Result<Ring> {
        match factors {
            [] => Err(Error::invalid("a product needs at least one factor")),
            [only] => Ok(only.clone()),
            _ => {
                let name = factors
                    .iter()
                    .map(|f| {
                        if matches!(f.family, Family::Product { .. }) {
                            format!("({})", f.name)
                        } else {
                            f.name.clone()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" x ");
                let needed = factors
                    .iter()
                    .try_fold(1u128, |acc, f| acc.checked_mul(f.size as u128))
                    .unwrap_or(u128::MAX);
                let size = self.check(&name, needed)?;
                let mut strides = vec![1usize; factors.len()];
                for i in (0..factors.len() - 1).rev() {
                    strides[i] = strides[i + 1] * factors[i + 1].size;
                }
                let one = factors
                    .iter()
                    .zip(&strides)
                    .map(|(f, s)| f.one * s)
                    .sum();
                let structure = factors
                    .iter()
                    .map(|f| f.structure.clone())
                    .collect::<Option<Vec<_>>>()
                    .map(|parts| parts.concat());
                self.assemble(
                    name,
                    Family::Product { factors: factors.to_vec(), strides },
                    size,
                    one,
                    structure,
                )
            }
        }
    }

    /// A ring given by explicit tables, validated exhaustively.
    pub fn table_ring(&self, spec: &TableRingSpec) -> Result<Ring> {
        table::build(self, spec)
    }

    fn assemble(
        &self,
        name: String,
        family: Family,
        size: usize,
        one: Element,
        structure: Option<Vec<FactorSpec>>,
    ) -> Result<Ring> {
        let mut ring = FiniteRing {
            name,
            size,
            one,
            neg: Vec::new(),
            arith: Arith::OnDemand,
            family,
            structure,
            characteristic: 0,
            additive_exponent: 0,
            cache: Cache::default(),
        };
        ring.neg = (0..size).map(|a| ring.neg_raw(a) as u32).collect();
        if size <= self.table_threshold.min(TABLE_CAP) {
            let mut add = Vec::with_capacity(size * size);
            let mut mul = Vec::with_capacity(size * size);
            for a in 0..size {
                for b in 0..size {
                    add.push(ring.add_raw(a, b) as u16);
                    mul.push(ring.mul_raw(a, b) as u16);
                }
            }
            ring.arith = Arith::Tables { add, mul };
        }
        ring.characteristic = ring.additive_order(ring.one);
        ring.additive_exponent = match &ring.family {
            Family::ZMod { modulus } => *modulus,
            Family::Field(f) => f.characteristic(),
            Family::Matrix { field, .. } => field.additive_exponent,
            Family::Product { factors, .. } => factors
                .iter()
                .fold(1, |acc, f| acc.lcm(&f.additive_exponent)),
            Family::Table { .. } => (0..size).fold(1, |acc, x| acc.lcm(&ring.additive_order(x))),
        };
        Ok(Arc::new(ring))
    }

    /// Ring from already-validated tables (quotients and table specs).
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn build_from_tables(
        &self,
        name: String,
        size: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        one: Element,
        structure: Option<Vec<FactorSpec>>,
        char_exponents: Option<Vec<u64>>,
    ) -> Result<Ring> {
        if size > TABLE_CAP {
            return Err(Error::ResourceLimit {
                what: name,
                needed: size as u128,
                limit: TABLE_CAP,
            });
        }
        let mut ring = FiniteRing {
            name,
            size,
            one,
            neg: Vec::new(),
            arith: Arith::Tables { add, mul },
            family: Family::Table { char_exponents },
            structure,
            characteristic: 0,
            additive_exponent: 0,
            cache: Cache::default(),
        };
        ring.neg = (0..size)
            .map(|a| {
                (0..size)
                    .find(|&b| ring.add(a, b) == 0)
                    .map(|b| b as u32)
                    .ok_or_else(|| Error::InvalidRing(format!("element {a} has no additive inverse")))
            })
            .collect::<Result<_>>()?;
        ring.characteristic = ring.additive_order(ring.one);
        ring.additive_exponent = (0..size).fold(1, |acc, x| acc.lcm(&ring.additive_order(x)));
        Ok(Arc::new(ring))
    }
}

/// `Z_N` with default limits.
pub fn build_zmod(n: usize) -> Result<Ring> {
    Limits::default().zmod(n)
}

/// `GF(q)` with default limits.
pub fn build_gf(q: u64) -> Result<Ring> {
    Limits::default().gf(q)
}

/// `M_m(field)` with default limits.
pub fn build_matrix_ring(m: usize, field: &Ring) -> Result<Ring> {
    Limits::default().matrix_ring(m, field)
}

/// Direct product with default limits.
pub fn build_product(factors: &[Ring]) -> Result<Ring> {
    Limits::default().product(factors)
}

/// Table ring with default limits.
pub fn build_table_ring(spec: &TableRingSpec) -> Result<Ring> {
    Limits::default().table_ring(spec)
}

impl FiniteRing {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Element {
        0
    }

    pub fn one(&self) -> Element {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Wedderburn–Artin factors of `R/rad(R)` when known.
    pub fn structure(&self) -> Option<&[FactorSpec]> {
        self.structure.as_deref()
    }

    pub fn characteristic(&self) -> usize {
        self.characteristic
    }

    pub fn additive_exponent(&self) -> usize {
        self.additive_exponent
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.arith, Arith::Tables { .. })
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        match &self.arith {
            Arith::Tables { add, .. } => add[a * self.size + b] as Element,
            Arith::OnDemand => self.add_raw(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        match &self.arith {
            Arith::Tables { mul, .. } => mul[a * self.size + b] as Element,
            Arith::OnDemand => self.mul_raw(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        self.neg[a] as Element
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    /// `k·a` (repeated addition).
    pub fn scale(&self, k: usize, a: Element) -> Element {
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    pub fn additive_order(&self, a: Element) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    pub fn is_commutative(&self) -> bool {
        *self.cache.commutative.get_or_init(|| {
            self.elements()
                .all(|a| (a + 1..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
        })
    }

    /// Component indices of an element of a product ring.
    pub fn factor_coords(&self, x: Element) -> Option<Vec<Element>> {
        match &self.family {
            Family::Product { factors, strides } => Some(
                factors
                    .iter()
                    .zip(strides)
                    .map(|(f, s)| (x / s) % f.size)
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[Ring]> {
        match &self.family {
            Family::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Inverse of [`FiniteRing::factor_coords`].
    pub fn from_factor_coords(&self, coords: &[Element]) -> Option<Element> {
        match &self.family {
            Family::Product { factors, strides } if coords.len() == factors.len() => Some(
                coords.iter().zip(strides).map(|(c, s)| c * s).sum(),
            ),
            _ => None,
        }
    }

    /// Row-major entries (as field indices) of an element of a matrix ring.
    pub fn matrix_entries(&self, x: Element) -> Option<Vec<Element>> {
        match &self.family {
            Family::Matrix { dim, field } => {
                let q = field.size;
                let n = dim * dim;
                let mut out = vec![0; n];
                let mut rest = x;
                for slot in out.iter_mut().rev() {
                    *slot = rest % q;
                    rest /= q;
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// Inverse of [`FiniteRing::matrix_entries`].
    pub fn from_matrix_entries(&self, entries: &[Element]) -> Option<Element> {
        match &self.family {
            Family::Matrix { dim, field } if entries.len() == dim * dim => {
                Some(entries.iter().fold(0, |acc, &e| acc * field.size + e))
            }
            _ => None,
        }
    }

    /// `(dim, field)` for matrix rings.
    pub fn matrix_shape(&self) -> Option<(usize, &Ring)> {
        match &self.family {
            Family::Matrix { dim, field } => Some((*dim, field)),
            _ => None,
        }
    }

    /// Order of the ring when it is a field built by [`Limits::gf`], or a
    /// prime residue ring.
    pub fn field_order(&self) -> Option<u64> {
        match &self.family {
            Family::Field(f) => Some(f.order() as u64),
            Family::ZMod { modulus } if gf::smallest_prime_factor(*modulus as u64) == *modulus as u64 => {
                Some(*modulus as u64)
            }
            Family::Matrix { dim: 1, field } => field.field_order(),
            _ => None,
        }
    }

    fn neg_raw(&self, a: Element) -> Element {
        match &self.family {
            Family::ZMod { modulus } => (modulus - a) % modulus,
            Family::Field(f) => f.neg(a),
            Family::Matrix { .. } => {
                let (_, field) = self.matrix_shape().unwrap();
                let e: Vec<_> = self
                    .matrix_entries(a)
                    .unwrap()
                    .into_iter()
                    .map(|x| field.neg(x))
                    .collect();
                self.from_matrix_entries(&e).unwrap()
            }
            Family::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, s)| f.neg((a / s) % f.size) * s)
                .sum(),
            Family::Table { .. } => unreachable!("table rings compute negation from their tables"),
        }
    }

    fn add_raw(&self, a: Element, b: Element) -> Element {
        match &self.family {
            Family::ZMod { modulus } => (a + b) % modulus,
            Family::Field(f) => f.add(a, b),
            Family::Matrix { field, .. } => {
                let x = self.matrix_entries(a).unwrap();
                let y = self.matrix_entries(b).unwrap();
                let z: Vec<_> = x.iter().zip(&y).map(|(&u, &v)| field.add(u, v)).collect();
                self.from_matrix_entries(&z).unwrap()
            }
            Family::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, s)| f.add((a / s) % f.size, (b / s) % f.size) * s)
                .sum(),
            Family::Table { .. } => unreachable!("table rings are always tabulated"),
        }
    }

    fn mul_raw(&self, a: Element, b: Element) -> Element {
        match &self.family {
            Family::ZMod { modulus } => (a * b) % modulus,
            Family::Field(f) => f.mul(a, b),
            Family::Matrix { dim, field } => {
                let m = *dim;
                let x = self.matrix_entries(a).unwrap();
                let y = self.matrix_entries(b).unwrap();
                let mut z = vec![0; m * m];
                for i in 0..m {
                    for j in 0..m {
                        let mut acc = 0;
                        for k in 0..m {
                            acc = field.add(acc, field.mul(x[i * m + k], y[k * m + j]));
                        }
                        z[i * m + j] = acc;
                    }
                }
                self.from_matrix_entries(&z).unwrap()
            }
            Family::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, s)| f.mul((a / s) % f.size, (b / s) % f.size) * s)
                .sum(),
            Family::Table { .. } => unreachable!("table rings are always tabulated"),
        }
    }
}

/// Whether two handles denote the same ring.
pub fn same_ring(a: &FiniteRing, b: &FiniteRing) -> bool {
    std::ptr::eq(a, b) || (a.size == b.size && a.name == b.name)
}
