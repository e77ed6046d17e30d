use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;

use homweight::characters::{all_generating_characters, canonical_generating_character};
use homweight::duality::{is_reflexive, is_self_dual, KrawtchoukTable};
use homweight::homogeneous::{homogeneous_weights, WeightTable};
use homweight::partitions::{
    ex5_5_partition, format_ratio, hamming_partition, partition_from_weight, product_partition,
    rank_partition, symmetrized_power_partition,
};
use homweight::ring::{same_ring, Family, Limits};
use homweight::{Character, Integer, Partition, Ring, Side};

use crate::expr::RingExpr;
use crate::report::{CliError, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Both,
}

impl SideArg {
    pub fn sides(self) -> Vec<Side> {
        match self {
            SideArg::Left => vec![Side::Left],
            SideArg::Right => vec![Side::Right],
            SideArg::Both => vec![Side::Left, Side::Right],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionKind {
    /// Homogeneous weight partition.
    Hom,
    /// Rank partition of a matrix ring.
    Rank,
    /// Hamming partition of a product of fields.
    Hamming,
    /// Product of the natural partitions of the factors.
    Product,
    /// Symmetrized square of the natural partition of R in R x R.
    Sym2,
    /// The invariant four-block partition of the builtin ex5_5 ring.
    #[value(name = "ex5_5")]
    #[serde(rename = "ex5_5")]
    Ex5_5,
}

/// `canonical` or `index:<k>` (the k-th unit translate of the canonical character).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharChoice {
    Canonical,
    Index(usize),
}

impl std::str::FromStr for CharChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "canonical" {
            return Ok(CharChoice::Canonical);
        }
        s.strip_prefix("index:")
            .and_then(|k| k.parse().ok())
            .map(CharChoice::Index)
            .ok_or_else(|| format!("expected `canonical` or `index:<k>`, got `{s}`"))
    }
}

pub struct Ctx {
    pub limits: Limits,
    pub side: SideArg,
    pub char_choice: CharChoice,
}

pub struct Target {
    pub expr: String,
    pub ring: Ring,
}

impl Ctx {
    pub fn target(&self, expr: Option<&RingExpr>) -> Result<Target, CliError> {
        let expr = expr.ok_or_else(|| CliError::Usage("this command needs --ring <expr>".into()))?;
        Ok(Target {
            expr: expr.to_string(),
            ring: expr.build(&self.limits)?,
        })
    }

    pub fn character(&self, ring: &Ring) -> Result<Character, CliError> {
        match self.char_choice {
            CharChoice::Canonical => Ok(canonical_generating_character(ring)?),
            CharChoice::Index(k) => {
                let all = all_generating_characters(ring)?;
                let count = all.len();
                all.into_iter().nth(k).ok_or_else(|| {
                    CliError::Usage(format!("character index {k} out of range (0..{count})"))
                })
            }
        }
    }

    pub fn weights(&self, ring: &Ring) -> Result<WeightTable, CliError> {
        match self.char_choice {
            CharChoice::Canonical => Ok(homogeneous_weights(ring)?),
            _ => Ok(WeightTable::compute(&self.character(ring)?)?),
        }
    }
}

/// Rank partition for matrix rings, Hamming partition for fields and the
/// weight partition otherwise.
pub fn natural_partition(ring: &Ring) -> Result<Partition, CliError> {
    if ring.matrix_shape().is_some() {
        return Ok(rank_partition(ring)?);
    }
    if ring.field_order().is_some() {
        return Ok(hamming_partition(ring)?);
    }
    Ok(partition_from_weight(&homogeneous_weights(ring)?))
}

pub fn build_partition(ctx: &Ctx, ring: &Ring, kind: PartitionKind) -> Result<Partition, CliError> {
    Ok(match kind {
        PartitionKind::Hom => partition_from_weight(&ctx.weights(ring)?),
        PartitionKind::Rank => rank_partition(ring)?,
        PartitionKind::Hamming => hamming_partition(ring)?,
        PartitionKind::Product => {
            let factors = ring
                .factors()
                .ok_or_else(|| CliError::Usage(format!("{} is not a product ring", ring.name())))?;
            let parts = factors.iter().map(natural_partition).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&Partition> = parts.iter().collect();
            product_partition(ring, &refs)?
        }
        PartitionKind::Sym2 => {
            let factors = ring
                .factors()
                .filter(|f| f.len() == 2 && same_ring(&f[0], &f[1]))
                .ok_or_else(|| CliError::Usage(format!("{} is not of the form R x R", ring.name())))?;
            symmetrized_power_partition(ring, &natural_partition(&factors[0])?)?
        }
        PartitionKind::Ex5_5 => ex5_5_partition(ring)?,
    })
}

fn warn_if_large(ring: &Ring, tables: usize) {
    let ops = (ring.size() as f64).powi(2) * tables as f64;
    if ops > 1e7 {
        eprintln!(
            "warning: about {ops:.1e} element-pair operations on {} (roughly {:.0} s at 1e8/s)",
            ring.name(),
            ops / 1e8
        );
    }
}

fn family_name(ring: &Ring) -> &'static str {
    match ring.family() {
        Family::ZMod { .. } => "residue ring",
        Family::Field(_) => "field",
        Family::Matrix { .. } => "matrix ring",
        Family::Product { .. } => "product",
        Family::Table { .. } => "table",
    }
}

pub fn info(ctx: &Ctx, t: &Target) -> Result<Output, CliError> {
    let r = &t.ring;
    let mut out = Output::new("info", Some(t.expr.clone()));
    let rad = r.jacobson_radical();
    let frobenius = r.is_frobenius();
    let chi = if frobenius { ctx.character(r).ok() } else { None };
    out.set("size", r.size());
    out.set("family", family_name(r));
    out.set("characteristic", r.characteristic());
    out.set("additive_exponent", r.additive_exponent());
    out.set("structure", r.structure());
    out.set("units", r.unit_slice().len());
    out.set("radical_size", rad.len());
    out.set("left_socle_size", r.socle(Side::Left).len());
    out.set("right_socle_size", r.socle(Side::Right).len());
    out.set("frobenius", frobenius);
    out.set("semisimple", r.is_semisimple());
    out.set("commutative", r.is_commutative());
    out.set("tabulated", r.is_tabulated());
    out.set("character_symmetric", chi.as_ref().map(Character::is_symmetric));
    out.line(format!("ring {} ({}), {} elements", t.expr, family_name(r), r.size()));
    out.line(format!(
        "characteristic {}, additive exponent {}",
        r.characteristic(),
        r.additive_exponent()
    ));
    out.line(format!("units {}, radical {}", r.unit_slice().len(), rad.len()));
    out.line(format!(
        "socle left {} right {}",
        r.socle(Side::Left).len(),
        r.socle(Side::Right).len()
    ));
    out.line(format!(
        "frobenius {frobenius}, semisimple {}, commutative {}",
        r.is_semisimple(),
        r.is_commutative()
    ));
    if let Some(s) = r.structure() {
        let parts: Vec<String> = s.iter().map(|f| format!("({},{})", f.q, f.m)).collect();
        out.line(format!("R/rad factors (q,m): {}", parts.join(" ")));
    }
    if let Some(chi) = &chi {
        out.line(format!("generating character symmetric: {}", chi.is_symmetric()));
    }
    Ok(out)
}

pub fn weights(ctx: &Ctx, t: &Target) -> Result<Output, CliError> {
    let table = ctx.weights(&t.ring)?;
    let mut out = Output::new("weights", Some(t.expr.clone()));
    let entries: Vec<_> = table
        .weights()
        .iter()
        .enumerate()
        .map(|(i, w)| json!({"index": i, "weight": format_ratio(w)}))
        .collect();
    let counts: Vec<_> = table
        .value_counts()
        .iter()
        .map(|(w, c)| json!({"weight": format_ratio(w), "count": c}))
        .collect();
    out.set("weights", entries);
    out.set("values", &counts);
    out.line(format!("{} elements, {} distinct weights", t.ring.size(), counts.len()));
    for (w, c) in table.value_counts() {
        out.line(format!("  {:>12}  x{c}", format_ratio(&w)));
    }
    if t.ring.size() <= 64 {
        for (i, w) in table.weights().iter().enumerate() {
            out.line(format!("  w({i}) = {}", format_ratio(w)));
        }
    }
    Ok(out)
}

fn partition_text(out: &mut Output, p: &Partition) {
    for (i, block) in p.blocks().iter().enumerate() {
        let label = p.labels().map(|l| format!(" {}", l[i])).unwrap_or_default();
        let shown: Vec<String> = block.iter().take(12).map(usize::to_string).collect();
        let more = if block.len() > 12 { " ..." } else { "" };
        out.line(format!("  block {i}{label}: {} elements [{}{more}]", block.len(), shown.join(",")));
    }
}

fn set_partition(out: &mut Output, key: &str, p: &Partition) {
    let mut v = serde_json::to_value(p).expect("partition serializes");
    if let Some(obj) = v.as_object_mut() {
        obj.remove("ring");
    }
    out.set(key, v);
}

pub fn partition(ctx: &Ctx, t: &Target, kind: PartitionKind) -> Result<Output, CliError> {
    let p = build_partition(ctx, &t.ring, kind)?;
    let mut out = Output::new("partition", Some(t.expr.clone()));
    out.set("kind", kind);
    out.set("block_sizes", p.block_sizes());
    out.set("invariant", p.is_invariant());
    if let Some(obj) = serde_json::to_value(&p).unwrap().as_object() {
        for key in ["blocks", "labels"] {
            if let Some(v) = obj.get(key) {
                out.set(key, v);
            }
        }
    }
    out.line(format!("{} blocks, invariant {}", p.len(), p.is_invariant()));
    partition_text(&mut out, &p);
    Ok(out)
}

pub fn dual(ctx: &Ctx, t: &Target, kind: PartitionKind) -> Result<Output, CliError> {
    let p = build_partition(ctx, &t.ring, kind)?;
    let chi = ctx.character(&t.ring)?;
    warn_if_large(&t.ring, ctx.side.sides().len() + 1);
    let mut out = Output::new("dual", Some(t.expr.clone()));
    out.set("partition", kind);
    out.set("partition_blocks", p.len());
    let mut duals = Vec::new();
    for side in ctx.side.sides() {
        let table = KrawtchoukTable::<Integer>::compute(&p, &chi, side)?;
        let d = table.dual_partition(&p);
        out.line(format!("{side} dual: {} blocks (partition has {})", d.len(), p.len()));
        partition_text(&mut out, &d);
        set_partition(&mut out, &format!("{side}_dual"), &d);
        duals.push((d, table));
    }
    if let [(l, lt), (r, rt)] = duals.as_slice() {
        let same = l.equals(r)?;
        out.set("duals_equal", same);
        out.set("tables_equal", lt == rt);
        out.line(format!("left dual equals right dual: {same}; tables equal: {}", lt == rt));
    }
    let self_dual = is_self_dual(&p, &chi)?;
    let reflexive = is_reflexive(&p, &chi)?;
    out.set("self_dual", self_dual);
    out.set("reflexive", reflexive);
    out.line(format!("self-dual {self_dual}, reflexive {reflexive}"));
    Ok(out)
}

pub fn krawtchouk(ctx: &Ctx, t: &Target, kind: PartitionKind) -> Result<Output, CliError> {
    let p = build_partition(ctx, &t.ring, kind)?;
    let chi = ctx.character(&t.ring)?;
    warn_if_large(&t.ring, ctx.side.sides().len());
    let mut out = Output::new("krawtchouk", Some(t.expr.clone()));
    out.set("partition", kind);
    out.set("block_sizes", p.block_sizes());
    out.set("character", &chi);
    let mut tables = Vec::new();
    for side in ctx.side.sides() {
        let table = KrawtchoukTable::<Integer>::compute(&p, &chi, side)?;
        out.set(&format!("{side}"), table.columns());
        out.line(format!("{side} coefficients, one row per element b, one column per block:"));
        for (b, col) in table.columns().iter().enumerate().take(64) {
            let cells: Vec<String> = col.iter().map(ToString::to_string).collect();
            out.line(format!("  b={b}: {}", cells.join(" | ")));
        }
        if t.ring.size() > 64 {
            out.line(format!("  ... {} more rows (use --json)", t.ring.size() - 64));
        }
        tables.push(table);
    }
    if let [l, r] = tables.as_slice() {
        out.set("tables_equal", l == r);
        out.line(format!("left and right tables equal: {}", l == r));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Ring {
        s.parse::<RingExpr>().unwrap().build(&Limits::default()).unwrap()
    }

    #[test]
    fn char_choice_parses() {
        assert_eq!("canonical".parse(), Ok(CharChoice::Canonical));
        assert_eq!("index:3".parse(), Ok(CharChoice::Index(3)));
        assert!("index:".parse::<CharChoice>().is_err());
        assert!("other".parse::<CharChoice>().is_err());
    }

    #[test]
    fn natural_partitions() {
        assert_eq!(natural_partition(&ring("M(2,GF(2))")).unwrap().len(), 3);
        assert_eq!(natural_partition(&ring("GF(4)")).unwrap().len(), 2);
        assert_eq!(natural_partition(&ring("Z8")).unwrap().len(), 3);
    }

    #[test]
    fn sym2_needs_equal_factors() {
        let ctx = Ctx {
            limits: Limits::default(),
            side: SideArg::Left,
            char_choice: CharChoice::Canonical,
        };
        assert!(build_partition(&ctx, &ring("Z4 x Z2"), PartitionKind::Sym2).is_err());
        assert_eq!(build_partition(&ctx, &ring("Z4 x Z4"), PartitionKind::Sym2).unwrap().len(), 6);
        assert!(build_partition(&ctx, &ring("Z4"), PartitionKind::Product).is_err());
    }
}
