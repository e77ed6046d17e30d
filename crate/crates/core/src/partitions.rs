//! Set partitions of a ring's elements.
//!
//! Blocks are kept in canonical form: each block sorted, blocks ordered by
//! their least element. Optional labels travel with their blocks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::homogeneous::{matrix_rank, WeightTable};
use crate::ring::{ex5_5_index, same_ring, Element, Family, Ring, EX5_5_NAME};
use crate::{Error, Result, Scalar};

/// Name attached to a block: a weight value or a tuple of small integers
/// (ranks, Hamming weights, sorted multisets of those).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum BlockLabel {
    Value(String),
    Tuple(Vec<u32>),
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockLabel::Value(v) => f.write_str(v),
            BlockLabel::Tuple(t) => {
                let parts: Vec<String> = t.iter().map(u32::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

#[derive(Clone)]
pub struct Partition {
    ring: Ring,
    blocks: Vec<Vec<Element>>,
    block_of: Vec<usize>,
    labels: Option<Vec<BlockLabel>>,
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Partition")
            .field("ring", &self.ring.name())
            .field("blocks", &self.blocks)
            .field("labels", &self.labels)
            .finish()
    }
}

/// Equality of the underlying set partitions; labels are ignored.
impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.blocks == other.blocks
    }
}

impl Eq for Partition {}

#[derive(Serialize)]
struct PartitionJson<'a> {
    ring: &'a str,
    blocks: &'a [Vec<Element>],
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [BlockLabel]>,
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionJson {
            ring: self.ring.name(),
            blocks: &self.blocks,
            labels: self.labels.as_deref(),
        }
        .serialize(s)
    }
}

impl Partition {
    /// Groups elements by a key; with `label` each block is named after its key.
    pub fn from_key<K: Ord + Clone>(
        ring: &Ring,
        key: impl Fn(Element) -> K,
        label: Option<&dyn Fn(&K) -> BlockLabel>,
    ) -> Self {
        let mut groups: BTreeMap<K, Vec<Element>> = BTreeMap::new();
        for x in ring.elements() {
            groups.entry(key(x)).or_default().push(x);
        }
        let (blocks, labels): (Vec<_>, Vec<_>) = groups
            .into_iter()
            .map(|(k, block)| (block, label.map(|f| f(&k))))
            .unzip();
        let labels = label.map(|_| labels.into_iter().map(Option::unwrap).collect());
        Self::canonical(ring, blocks, labels)
    }

    /// Partition whose block of `x` is `assignment[x]` (any integer tags).
    pub fn from_assignment(ring: &Ring, assignment: &[usize]) -> Result<Self> {
        if assignment.len() != ring.size() {
            return Err(Error::invalid(format!(
                "assignment has {} entries for a ring of size {}",
                assignment.len(),
                ring.size()
            )));
        }
        Ok(Self::from_key(ring, |x| assignment[x], None))
    }

    /// Partition from explicit blocks, which must be disjoint, nonempty and
    /// cover the ring. Order within and between blocks is irrelevant.
    pub fn from_blocks(
        ring: &Ring,
        blocks: Vec<Vec<Element>>,
        labels: Option<Vec<BlockLabel>>,
    ) -> Result<Self> {
        if labels.as_ref().is_some_and(|l| l.len() != blocks.len()) {
            return Err(Error::invalid("one label per block is required"));
        }
        let mut seen = vec![false; ring.size()];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::invalid("empty block"));
            }
            for &x in block {
                if x >= ring.size() || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::invalid(format!("element {x} is out of range or repeated")));
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::invalid(format!("element {x} is in no block")));
        }
        Ok(Self::canonical(ring, blocks, labels))
    }

    fn canonical(ring: &Ring, blocks: Vec<Vec<Element>>, labels: Option<Vec<BlockLabel>>) -> Self {
        let mut tagged: Vec<(Vec<Element>, Option<BlockLabel>)> = match labels {
            Some(l) => blocks.into_iter().zip(l.into_iter().map(Some)).collect(),
            None => blocks.into_iter().map(|b| (b, None)).collect(),
        };
        for (b, _) in &mut tagged {
            b.sort_unstable();
        }
        tagged.sort_by_key(|(b, _)| b[0]);
        let mut block_of = vec![0; ring.size()];
        for (i, (b, _)) in tagged.iter().enumerate() {
            for &x in b {
                block_of[x] = i;
            }
        }
        let has_labels = tagged.first().is_some_and(|(_, l)| l.is_some());
        let (blocks, labels): (Vec<_>, Vec<_>) = tagged.into_iter().unzip();
        Self {
            ring: ring.clone(),
            blocks,
            block_of,
            labels: has_labels.then(|| labels.into_iter().map(Option::unwrap).collect()),
        }
    }

    pub fn singletons(ring: &Ring) -> Self {
        Self::from_key(ring, |x| x, None)
    }

    pub fn trivial(ring: &Ring) -> Self {
        Self::from_key(ring, |_| (), None)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<Element>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[Element] {
        &self.blocks[i]
    }

    #[inline]
    pub fn block_of(&self, x: Element) -> usize {
        self.block_of[x]
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn labels(&self) -> Option<&[BlockLabel]> {
        self.labels.as_deref()
    }

    /// Index of the block carrying `label`.
    pub fn block_labelled(&self, label: &BlockLabel) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn with_labels(mut self, labels: Vec<BlockLabel>) -> Result<Self> {
        if labels.len() != self.blocks.len() {
            return Err(Error::invalid("one label per block is required"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Every block is closed under left and right multiplication by units.
    pub fn is_invariant(&self) -> bool {
        let r = &self.ring;
        r.unit_slice().iter().all(|&u| {
            r.elements().all(|x| {
                self.block_of[r.mul(u, x)] == self.block_of[x]
                    && self.block_of[r.mul(x, u)] == self.block_of[x]
            })
        })
    }

    fn check_same_ring(&self, other: &Partition) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "partitions live on different rings ({} and {})",
                self.ring.name(),
                other.ring.name()
            )))
        }
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn is_finer(&self, other: &Partition) -> Result<bool> {
        self.check_same_ring(other)?;
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&x| other.block_of[x] == other.block_of[b[0]])))
    }

    /// Mutual refinement.
    pub fn equals(&self, other: &Partition) -> Result<bool> {
        Ok(self.is_finer(other)? && other.is_finer(self)?)
    }

    /// Merges each group of labelled blocks into one block; other blocks are
    /// kept. The result carries no labels.
    pub fn coarsen(&self, groups: &[Vec<BlockLabel>]) -> Result<Partition> {
        let labels = self
            .labels
            .as_ref()
            .ok_or_else(|| Error::invalid("coarsening needs a labelled partition"))?;
        let mut group_of_block: Vec<usize> = (0..self.len()).map(|b| groups.len() + b).collect();
        for (g, group) in groups.iter().enumerate() {
            for label in group {
                let b = labels
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| Error::invalid(format!("no block labelled {label}")))?;
                group_of_block[b] = g;
            }
        }
        Ok(Self::from_key(&self.ring, |x| group_of_block[self.block_of[x]], None))
    }

    /// Union of the given blocks, sorted.
    pub fn union_of(&self, blocks: &[usize]) -> Vec<Element> {
        let mut out: Vec<Element> = blocks.iter().flat_map(|&i| self.blocks[i].clone()).collect();
        out.sort_unstable();
        out
    }
}

/// `num/den` with the denominator always present.
pub fn format_ratio<T: Scalar>(r: &num_rational::Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Elements grouped by exact weight; blocks are labelled by the weight.
pub fn partition_from_weight<T: Scalar>(table: &WeightTable<T>) -> Partition {
    let w = table.weights();
    let label = |k: &num_rational::Ratio<T>| BlockLabel::Value(format_ratio(k));
    Partition::from_key(table.ring(), |x| w[x].clone(), Some(&label))
}

#[allow(clippy::ptr_arg)] // used as a `Fn(&K)` label callback with `K = Vec<u32>`
fn tuple_label(k: &Vec<u32>) -> BlockLabel {
    BlockLabel::Tuple(k.clone())
}

/// Matrices grouped by rank, labelled `(r)`.
pub fn rank_partition(ring: &Ring) -> Result<Partition> {
    if ring.matrix_shape().is_none() {
        return Err(Error::invalid(format!("{} is not a matrix ring", ring.name())));
    }
    let ranks: Vec<Vec<u32>> = ring
        .elements()
        .map(|x| matrix_rank(ring, x).map(|r| vec![r]))
        .collect::<Result<_>>()?;
    Ok(Partition::from_key(ring, |x| ranks[x].clone(), Some(&tuple_label)))
}

/// Orders of the field components of a field or a product of fields.
fn field_components(ring: &Ring) -> Option<Vec<u64>> {
    match ring.family() {
        Family::Product { factors, .. } => factors.iter().map(field_components).try_fold(
            Vec::new(),
            |mut acc, c| {
                acc.extend(c?);
                Some(acc)
            },
        ),
        _ => ring.field_order().map(|q| vec![q]),
    }
}

fn flat_coords(ring: &Ring, x: Element, out: &mut Vec<Element>) {
    match ring.family() {
        Family::Product { factors, .. } => {
            for (f, c) in factors.iter().zip(ring.factor_coords(x).expect("product ring")) {
                flat_coords(f, c, out);
            }
        }
        _ => out.push(x),
    }
}

/// Hamming partition of a product of fields: for each distinct field order
/// (ascending), the number of nonzero components of that order.
pub fn hamming_partition(ring: &Ring) -> Result<Partition> {
    let orders = field_components(ring)
        .ok_or_else(|| Error::invalid(format!("{} is not a product of fields", ring.name())))?;
    let distinct: Vec<u64> = orders.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let key = |x: Element| {
        let mut coords = Vec::new();
        flat_coords(ring, x, &mut coords);
        let mut wt = vec![0u32; distinct.len()];
        for (c, q) in coords.iter().zip(&orders) {
            if *c != 0 {
                wt[distinct.binary_search(q).unwrap()] += 1;
            }
        }
        wt
    };
    Ok(Partition::from_key(ring, key, Some(&tuple_label)))
}

fn check_factors(ring: &Ring, parts: &[&Partition]) -> Result<()> {
    let factors = ring
        .factors()
        .ok_or_else(|| Error::invalid(format!("{} is not a product ring", ring.name())))?;
    if factors.len() != parts.len() {
        return Err(Error::invalid(format!(
            "{} has {} factors, got {} partitions",
            ring.name(),
            factors.len(),
            parts.len()
        )));
    }
    for (f, p) in factors.iter().zip(parts) {
        if !same_ring(f, &p.ring) {
            return Err(Error::invalid(format!(
                "partition of {} does not fit factor {}",
                p.ring.name(),
                f.name()
            )));
        }
    }
    Ok(())
}

fn concat_labels(labels: &[&BlockLabel]) -> Option<BlockLabel> {
    let mut out = Vec::new();
    for l in labels {
        match l {
            BlockLabel::Tuple(t) => out.extend(t),
            BlockLabel::Value(_) => return None,
        }
    }
    Some(BlockLabel::Tuple(out))
}

/// Blocks are products of one block from each factor partition. Labels
/// are concatenated when every factor carries tuple labels.
pub fn product_partition(ring: &Ring, parts: &[&Partition]) -> Result<Partition> {
    check_factors(ring, parts)?;
    let key = |x: Element| -> Vec<usize> {
        ring.factor_coords(x)
            .unwrap()
            .iter()
            .zip(parts)
            .map(|(&c, p)| p.block_of(c))
            .collect()
    };
    let labelled = parts.iter().all(|p| {
        p.labels()
            .is_some_and(|l| l.iter().all(|b| matches!(b, BlockLabel::Tuple(_))))
    });
    let label = |k: &Vec<usize>| -> BlockLabel {
        let ls: Vec<&BlockLabel> = k.iter().zip(parts).map(|(&i, p)| &p.labels().unwrap()[i]).collect();
        concat_labels(&ls).expect("tuple labels")
    };
    Ok(Partition::from_key(ring, key, labelled.then_some(&label as &dyn Fn(&Vec<usize>) -> BlockLabel)))
}

/// Partition of `R × R` by the unordered pair of `P`-blocks of the two
/// components. Blocks are labelled by the sorted pair of labels, or of
/// block indices when `P` has no tuple labels.
pub fn symmetrized_power_partition(ring: &Ring, p: &Partition) -> Result<Partition> {
    check_factors(ring, &[p, p])?;
    let key = |x: Element| {
        let c = ring.factor_coords(x).unwrap();
        let (i, j) = (p.block_of(c[0]), p.block_of(c[1]));
        (i.min(j), i.max(j))
    };
    let sub = |i: usize| -> Vec<u32> {
        match p.labels().map(|l| &l[i]) {
            Some(BlockLabel::Tuple(t)) => t.clone(),
            _ => vec![i as u32],
        }
    };
    let label = |&(i, j): &(usize, usize)| {
        let (mut a, mut b) = (sub(i), sub(j));
        if b < a {
            std::mem::swap(&mut a, &mut b);
        }
        a.extend(b);
        BlockLabel::Tuple(a)
    };
    Ok(Partition::from_key(ring, key, Some(&label)))
}

/// The invariant four-block partition of the builtin 16-element ring:
/// `{0} | R* | R*A₁R* ∪ {A₂} | R*B₁R* ∪ {B₂, B₃}`.
pub fn ex5_5_partition(ring: &Ring) -> Result<Partition> {
    if ring.name() != EX5_5_NAME || ring.size() != 16 {
        return Err(Error::invalid(format!("{} is not the builtin {EX5_5_NAME}", ring.name())));
    }
    // (a, b, c, d) of the five named matrices
    let a1 = ex5_5_index([0, 0, 1, 0]);
    let a2 = ex5_5_index([0, 0, 0, 1]);
    let b1 = ex5_5_index([1, 0, 0, 0]);
    let b2 = ex5_5_index([0, 1, 0, 0]);
    let b3 = ex5_5_index([0, 1, 0, 1]);
    let units = ring.unit_slice();
    let double_coset = |x: Element| -> BTreeSet<Element> {
        units
            .iter()
            .flat_map(|&u| units.iter().map(move |&v| ring.mul(ring.mul(u, x), v)))
            .collect()
    };
    let mut p2 = double_coset(a1);
    p2.insert(a2);
    let mut p3 = double_coset(b1);
    p3.extend([b2, b3]);
    Partition::from_blocks(
        ring,
        vec![vec![0], units.to_vec(), p2.into_iter().collect(), p3.into_iter().collect()],
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homogeneous::homogeneous_weights;
    use crate::ring::{build_gf, build_matrix_ring, build_product, build_zmod, ex5_5};

    fn label(t: &[u32]) -> BlockLabel {
        BlockLabel::Tuple(t.to_vec())
    }

    #[test]
    fn weight_partition_of_z4() {
        let p = partition_from_weight(&homogeneous_weights(&build_zmod(4).unwrap()).unwrap());
        assert_eq!(p.blocks(), &[vec![0], vec![1, 3], vec![2]]);
        let labels: Vec<String> = p.labels().unwrap().iter().map(|l| l.to_string()).collect();
        assert_eq!(labels, ["0/1", "1/1", "2/1"]);
    }

    #[test]
    fn constant_table_gives_one_block() {
        let ring = build_zmod(5).unwrap();
        let t = WeightTable::<i64>::from_values(&ring, vec![num_rational::Ratio::from_integer(1); 5]).unwrap();
        assert_eq!(partition_from_weight(&t).len(), 1);
    }

    #[test]
    fn rank_partitions() {
        let f2 = build_gf(2).unwrap();
        let f3 = build_gf(3).unwrap();
        let m2 = build_matrix_ring(2, &f2).unwrap();
        let p = rank_partition(&m2).unwrap();
        assert_eq!(p.block_sizes(), vec![1, 9, 6]);
        let hom = partition_from_weight(&homogeneous_weights(&m2).unwrap());
        assert!(p.equals(&hom).unwrap());
        let mut sizes = rank_partition(&build_matrix_ring(2, &f3).unwrap()).unwrap().block_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 32, 48]);
        let m1 = build_matrix_ring(1, &f3).unwrap();
        assert_eq!(rank_partition(&m1).unwrap().blocks(), &[vec![0], vec![1, 2]]);
        assert!(rank_partition(&build_zmod(4).unwrap()).is_err());
    }

    #[test]
    fn hamming_partitions() {
        let f2 = build_gf(2).unwrap();
        let f3 = build_gf(3).unwrap();
        let p = hamming_partition(&build_product(&[f2.clone(), f2.clone()]).unwrap()).unwrap();
        assert_eq!(p.block_sizes(), vec![1, 2, 1]);
        let p = hamming_partition(&build_product(&[f2.clone(), f3.clone()]).unwrap()).unwrap();
        assert_eq!(p.len(), 4);
        let mut sizes: Vec<(BlockLabel, usize)> = p
            .labels()
            .unwrap()
            .iter()
            .cloned()
            .zip(p.block_sizes())
            .collect();
        sizes.sort();
        assert_eq!(
            sizes,
            vec![(label(&[0, 0]), 1), (label(&[0, 1]), 2), (label(&[1, 0]), 1), (label(&[1, 1]), 2)]
        );
        assert_eq!(hamming_partition(&f3).unwrap().blocks(), &[vec![0], vec![1, 2]]);
        assert!(hamming_partition(&build_zmod(4).unwrap()).is_err());
        let m2 = build_matrix_ring(2, &f2).unwrap();
        assert!(hamming_partition(&build_product(&[m2, f2]).unwrap()).is_err());
    }

    #[test]
    fn products() {
        let f2 = build_gf(2).unwrap();
        let m2 = build_matrix_ring(2, &f2).unwrap();
        let ring = build_product(&[m2.clone(), f2.clone()]).unwrap();
        let q = product_partition(&ring, &[&rank_partition(&m2).unwrap(), &hamming_partition(&f2).unwrap()]).unwrap();
        assert_eq!(q.len(), 6);
        let b = q.block_labelled(&label(&[1, 1])).unwrap();
        assert_eq!(q.block(b).len(), 9);

        let p = rank_partition(&m2).unwrap();
        let with_trivial = product_partition(&ring, &[&p, &Partition::trivial(&f2)]).unwrap();
        assert_eq!(with_trivial.block_sizes(), vec![2, 18, 12]);
        let singles = product_partition(&ring, &[&Partition::singletons(&m2), &Partition::singletons(&f2)]).unwrap();
        assert!(singles.equals(&Partition::singletons(&ring)).unwrap());
        assert!(product_partition(&ring, &[&p, &p]).is_err());
    }

    #[test]
    fn symmetrized_square() {
        let f2 = build_gf(2).unwrap();
        let m2 = build_matrix_ring(2, &f2).unwrap();
        let ring = build_product(&[m2.clone(), m2.clone()]).unwrap();
        let q = symmetrized_power_partition(&ring, &rank_partition(&m2).unwrap()).unwrap();
        assert_eq!(q.len(), 6);
        let size = |l: &[u32]| q.block(q.block_labelled(&label(l)).unwrap()).len();
        assert_eq!(size(&[1, 1]), 81);
        assert_eq!(size(&[2, 2]), 36);
        assert_eq!(size(&[1, 2]), 108);
        let one_block = symmetrized_power_partition(&ring, &Partition::trivial(&m2)).unwrap();
        assert_eq!(one_block.len(), 1);
        let other = build_product(&[m2.clone(), f2]).unwrap();
        assert!(symmetrized_power_partition(&other, &rank_partition(&m2).unwrap()).is_err());
    }

    #[test]
    fn invariance() {
        let z4 = build_zmod(4).unwrap();
        let hom = partition_from_weight(&homogeneous_weights(&z4).unwrap());
        assert!(hom.is_invariant());
        let split = Partition::from_blocks(&z4, vec![vec![0], vec![1], vec![2], vec![3]], None).unwrap();
        assert!(!split.is_invariant());
    }

    #[test]
    fn ex5_5_blocks() {
        let ring = ex5_5().unwrap();
        let p = ex5_5_partition(&ring).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.block_sizes().iter().sum::<usize>(), 16);
        assert!(p.is_invariant());
        assert!(ex5_5_partition(&build_zmod(16).unwrap()).is_err());
    }

    #[test]
    fn refinement() {
        let z4 = build_zmod(4).unwrap();
        let hom = partition_from_weight(&homogeneous_weights(&z4).unwrap());
        assert!(Partition::singletons(&z4).is_finer(&hom).unwrap());
        assert!(hom.is_finer(&Partition::trivial(&z4)).unwrap());
        assert!(!Partition::trivial(&z4).is_finer(&hom).unwrap());
        assert!(hom.is_finer(&Partition::singletons(&build_zmod(5).unwrap())).is_err());
    }

    #[test]
    fn canonical_regardless_of_input_order() {
        let z4 = build_zmod(4).unwrap();
        let a = Partition::from_blocks(&z4, vec![vec![3, 1], vec![2], vec![0]], None).unwrap();
        let b = Partition::from_blocks(&z4, vec![vec![0], vec![2], vec![1, 3]], None).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"ring":"Z4","blocks":[[0],[1,3],[2]]}"#
        );
    }

    #[test]
    fn rejects_bad_blocks() {
        let z4 = build_zmod(4).unwrap();
        assert!(Partition::from_blocks(&z4, vec![vec![0, 1], vec![1, 2, 3]], None).is_err());
        assert!(Partition::from_blocks(&z4, vec![vec![0, 1], vec![2]], None).is_err());
        assert!(Partition::from_blocks(&z4, vec![vec![0, 1, 2, 3], vec![]], None).is_err());
    }
}
