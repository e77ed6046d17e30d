//! Rings given by explicit addition and multiplication tables.

use serde::{Deserialize, Serialize};

use super::{Element, FactorSpec, FiniteRing, Limits, Ring};
use crate::{Error, Result};

pub const EX5_5_NAME: &str = "ex5_5";

/// File format for table rings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRingSpec {
    pub size: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub one: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_exponents: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Optional `(q, m)` factors of the semisimple quotient.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<Vec<FactorSpec>>,
}

impl TableRingSpec {
    /// Tables of an existing ring.
    pub fn from_ring(ring: &FiniteRing) -> Self {
        let n = ring.size();
        Self {
            size: n,
            add: (0..n).map(|a| (0..n).map(|b| ring.add(a, b)).collect()).collect(),
            mul: (0..n).map(|a| (0..n).map(|b| ring.mul(a, b)).collect()).collect(),
            one: ring.one(),
            char_exponents: None,
            name: Some(ring.name().to_string()),
            structure: ring.structure().map(<[_]>::to_vec),
        }
    }
}

pub(super) fn build(limits: &Limits, spec: &TableRingSpec) -> Result<Ring> {
    let n = spec.size;
    let name = spec.name.clone().unwrap_or_else(|| format!("table{n}"));
    if n < 2 {
        return Err(Error::invalid("table rings need at least two elements"));
    }
    if n > limits.max_size {
        return Err(Error::ResourceLimit {
            what: name,
            needed: n as u128,
            limit: limits.max_size,
        });
    }
    let flatten = |t: &[Vec<usize>], what: &str| -> Result<Vec<u16>> {
        if t.len() != n || t.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidRing(format!("{what} table is not {n}×{n}")));
        }
        t.iter()
            .flatten()
            .map(|&v| {
                if v < n {
                    Ok(v as u16)
                } else {
                    Err(Error::InvalidRing(format!("{what} table entry {v} out of range")))
                }
            })
            .collect()
    };
    let add = flatten(&spec.add, "add")?;
    let mul = flatten(&spec.mul, "mul")?;
    if spec.one >= n {
        return Err(Error::InvalidRing(format!("one = {} out of range", spec.one)));
    }
    if let Some(e) = &spec.char_exponents {
        if e.len() != n {
            return Err(Error::InvalidRing("char_exponents must list one exponent per element".into()));
        }
    }
    check_axioms(n, &add, &mul, spec.one)?;
    let ring = limits.build_from_tables(
        name,
        n,
        add,
        mul,
        spec.one,
        spec.structure.clone(),
        spec.char_exponents.clone(),
    )?;
    if let Some(e) = &spec.char_exponents {
        let modulus = ring.additive_exponent() as u64;
        for a in ring.elements() {
            for b in ring.elements() {
                if (e[a] + e[b]) % modulus != e[ring.add(a, b)] % modulus {
                    return Err(Error::InvalidRing(format!(
                        "char_exponents is not additive at ({a}, {b})"
                    )));
                }
            }
        }
    }
    Ok(ring)
}

/// Exhaustive ring-axiom check; reports the first failing triple.
fn check_axioms(n: usize, add: &[u16], mul: &[u16], one: usize) -> Result<()> {
    let a_ = |a: usize, b: usize| add[a * n + b] as usize;
    let m_ = |a: usize, b: usize| mul[a * n + b] as usize;
    let fail = |law: &str, a: usize, b: usize, c: usize| {
        Err(Error::InvalidRing(format!("{law} fails at ({a}, {b}, {c})")))
    };
    for a in 0..n {
        if a_(0, a) != a || a_(a, 0) != a {
            return fail("0 is not an additive identity", a, 0, 0);
        }
        if m_(one, a) != a || m_(a, one) != a {
            return fail("multiplicative identity", a, one, 0);
        }
        if !(0..n).any(|b| a_(a, b) == 0) {
            return fail("additive inverse", a, 0, 0);
        }
        for b in 0..n {
            if a_(a, b) != a_(b, a) {
                return fail("additive commutativity", a, b, 0);
            }
            for c in 0..n {
                if a_(a_(a, b), c) != a_(a, a_(b, c)) {
                    return fail("additive associativity", a, b, c);
                }
                if m_(m_(a, b), c) != m_(a, m_(b, c)) {
                    return fail("multiplicative associativity", a, b, c);
                }
                if m_(a, a_(b, c)) != a_(m_(a, b), m_(a, c)) {
                    return fail("left distributivity", a, b, c);
                }
                if m_(a_(a, b), c) != a_(m_(a, c), m_(b, c)) {
                    return fail("right distributivity", a, b, c);
                }
            }
        }
    }
    Ok(())
}

/// Parameters `(a, b, c, d)` of the builtin 16-element ring, index `8a+4b+2c+d`.
pub fn ex5_5_params(x: Element) -> [u8; 4] {
    [(x >> 3) as u8 & 1, (x >> 2) as u8 & 1, (x >> 1) as u8 & 1, x as u8 & 1]
}

pub fn ex5_5_index([a, b, c, d]: [u8; 4]) -> Element {
    ((a as usize) << 3) | ((b as usize) << 2) | ((c as usize) << 1) | d as usize
}

/// The 4×4 matrix over `F_2` with rows `(a,0,0,0)`, `(0,a,b,0)`,
/// `(0,0,c,0)`, `(d,0,0,c)`.
pub fn ex5_5_matrix(x: Element) -> [[u8; 4]; 4] {
    let [a, b, c, d] = ex5_5_params(x);
    [[a, 0, 0, 0], [0, a, b, 0], [0, 0, c, 0], [d, 0, 0, c]]
}

fn ex5_5_from_matrix(m: &[[u8; 4]; 4]) -> Option<Element> {
    let x = ex5_5_index([m[0][0], m[1][2], m[2][2], m[3][0]]);
    (ex5_5_matrix(x) == *m).then_some(x)
}

fn mat_op(x: &[[u8; 4]; 4], y: &[[u8; 4]; 4], product: bool) -> [[u8; 4]; 4] {
    let mut z = [[0u8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            z[i][j] = if product {
                (0..4).fold(0, |acc, k| acc ^ (x[i][k] & y[k][j]))
            } else {
                x[i][j] ^ y[i][j]
            };
        }
    }
    z
}

/// Table specification of the builtin non-semisimple 16-element Frobenius
/// ring of upper/lower patterned 4×4 matrices over `F_2`. Its generating
/// character sends a matrix to `(-1)^{a+b+c+d}`.
pub fn ex5_5_spec() -> TableRingSpec {
    let table = |product: bool| -> Vec<Vec<usize>> {
        (0..16)
            .map(|x| {
                (0..16)
                    .map(|y| {
                        let z = mat_op(&ex5_5_matrix(x), &ex5_5_matrix(y), product);
                        ex5_5_from_matrix(&z).expect("the matrix set is closed")
                    })
                    .collect()
            })
            .collect()
    };
    TableRingSpec {
        size: 16,
        add: table(false),
        mul: table(true),
        one: ex5_5_index([1, 0, 1, 0]),
        char_exponents: Some(
            (0..16)
                .map(|x| ex5_5_params(x).iter().map(|&v| v as u64).sum::<u64>() % 2)
                .collect(),
        ),
        name: Some(EX5_5_NAME.to_string()),
        structure: Some(vec![FactorSpec::new(2, 1), FactorSpec::new(2, 1)]),
    }
}

/// The builtin ring `ex5_5`.
pub fn ex5_5() -> Result<Ring> {
    Limits::default().table_ring(&ex5_5_spec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_zmod;

    #[test]
    fn z4_tables_round_trip() {
        let z4 = build_zmod(4).unwrap();
        let mut spec = TableRingSpec::from_ring(&z4);
        spec.structure = None;
        let t = Limits::default().table_ring(&spec).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(t.add(a, b), z4.add(a, b));
                assert_eq!(t.mul(a, b), z4.mul(a, b));
            }
        }
        assert_eq!(t.units(), z4.units());
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let z4 = build_zmod(4).unwrap();
        let mut spec = TableRingSpec::from_ring(&z4);
        // 2*3 := 3 breaks associativity and distributivity
        spec.mul[2][3] = 3;
        spec.mul[3][2] = 3;
        let err = Limits::default().table_ring(&spec).unwrap_err();
        assert!(matches!(err, Error::InvalidRing(msg) if msg.contains("fails at")));
    }

    #[test]
    fn ex5_5_is_a_ring_with_four_units() {
        let r = ex5_5().unwrap();
        assert_eq!(r.size(), 16);
        let units = r.units();
        assert_eq!(units.len(), 4);
        assert!(units.iter().all(|&u| {
            let [a, _, c, _] = ex5_5_params(u);
            a == 1 && c == 1
        }));
    }

    #[test]
    fn bad_char_exponents_rejected() {
        let mut spec = ex5_5_spec();
        spec.char_exponents.as_mut().unwrap()[1] = 0;
        assert!(matches!(
            Limits::default().table_ring(&spec),
            Err(Error::InvalidRing(_))
        ));
    }
}
