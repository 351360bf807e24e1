use std::collections::HashSet;
use std::sync::Arc;

use crate::ordertype::OrderType;
use crate::rational::Rational;

use super::families::SetSpec;
use super::listing::{shift, Filtered, Listing, Prepended, RoundRobin};
use super::oracle::{Added, GapOracle, Hull, Removed, Union};
use super::SetError;

/// Without an oracle, `add_finite` checks disjointness against this many
/// listed values only.
pub const DISJOINT_CHECK_PREFIX: usize = 10_000;

fn join(values: &[Rational]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn hull_bounds(spec: &SetSpec) -> Option<(Option<Rational>, Option<Rational>)> {
    match spec.oracle()?.hull()? {
        Hull::Span { inf, sup } => Some((inf, sup)),
        Hull::Empty => None,
    }
}

/// Order type after deleting `removed` (all known members) from `spec`.
fn descriptor_after_removal(spec: &SetSpec, removed: &[Rational]) -> Option<OrderType> {
    let d = spec.descriptor()?;
    if removed.is_empty() || d.is_discrete_infinite() {
        return Some(d.clone());
    }
    match d {
        OrderType::Fin(k) => Some(OrderType::Fin(k.saturating_sub(removed.len() as u64))),
        OrderType::Dense { left, right } => {
            let (inf, sup) = hull_bounds(spec)?;
            let hit = |b: &Option<Rational>| b.as_ref().is_some_and(|v| removed.contains(v));
            Some(OrderType::Dense {
                left: *left && !hit(&inf),
                right: *right && !hit(&sup),
            })
        }
        _ => None,
    }
}

fn removal_of_members(
    spec: &SetSpec,
    label: String,
    removed: Vec<Rational>,
    listing: impl Fn() -> Listing + Send + Sync + 'static,
) -> SetSpec {
    let members: Option<Vec<Rational>> = spec
        .oracle()
        .map(|o| removed.iter().filter(|v| o.contains(v)).cloned().collect());
    let descriptor = members
        .as_ref()
        .and_then(|m| descriptor_after_removal(spec, m));
    let oracle = match (spec.oracle(), members) {
        (Some(base), Some(removed)) => Some(Arc::new(Removed {
            base: base.clone(),
            removed,
        }) as Arc<dyn GapOracle>),
        _ => None,
    };
    SetSpec::new(label, listing)
        .with_descriptor(descriptor)
        .with_oracle(oracle)
}

/// Filters `values` out of the listing.
pub fn remove_finite(spec: &SetSpec, values: &[Rational]) -> SetSpec {
    if values.is_empty() {
        return spec.clone();
    }
    let drop: HashSet<Rational> = values.iter().cloned().collect();
    let base = spec.clone();
    let label = format!("{}+drop={}", spec.label(), join(values));
    removal_of_members(spec, label, values.to_vec(), move || {
        Listing::new(Filtered {
            inner: base.listing(),
            drop: drop.clone(),
            pos: 0,
        })
    })
}

/// Drops the first `m` listed values: the set counterpart of [`shift`].
pub fn shift_spec(spec: &SetSpec, m: usize) -> Result<SetSpec, SetError> {
    if m == 0 {
        return Ok(spec.clone());
    }
    let dropped = spec.listing().take(m)?.to_vec();
    let base = spec.clone();
    let label = format!("{}+shift={m}", spec.label());
    Ok(removal_of_members(spec, label, dropped, move || {
        shift(base.listing(), m)
    }))
}

/// Prepends `values` (sorted ascending) to the listing. The values must not
/// already belong to the set; without an oracle this is only checked against
/// the first [`DISJOINT_CHECK_PREFIX`] listed values.
pub fn add_finite(spec: &SetSpec, values: &[Rational]) -> Result<SetSpec, SetError> {
    if values.is_empty() {
        return Ok(spec.clone());
    }
    let mut head = values.to_vec();
    head.sort();
    if let Some(w) = head.windows(2).find(|w| w[0] == w[1]) {
        return Err(SetError::Duplicate(w[0].clone()));
    }
    match spec.oracle() {
        Some(o) => {
            if let Some(v) = head.iter().find(|v| o.contains(v)) {
                return Err(SetError::NotDisjoint(v.clone()));
            }
        }
        None => {
            let mut l = spec.listing();
            let listed: HashSet<Rational> =
                l.take(DISJOINT_CHECK_PREFIX)?.iter().cloned().collect();
            if let Some(v) = head.iter().find(|v| listed.contains(v)) {
                return Err(SetError::NotDisjoint(v.clone()));
            }
        }
    }

    let descriptor = spec.descriptor().and_then(|d| {
        if let OrderType::Fin(k) = d {
            return Some(OrderType::Fin(k + head.len() as u64));
        }
        let (inf, sup) = hull_bounds(spec)?;
        let below = head
            .iter()
            .filter(|v| inf.as_ref().is_some_and(|i| *v <= i))
            .count();
        let above = head
            .iter()
            .filter(|v| sup.as_ref().is_some_and(|s| *v >= s))
            .count();
        (below + above == head.len()).then(|| {
            OrderType::concat([
                OrderType::Fin(below as u64),
                d.clone(),
                OrderType::Fin(above as u64),
            ])
        })
    });
    let oracle = spec.oracle().map(|base| {
        Arc::new(Added {
            base: base.clone(),
            added: head.clone(),
        }) as Arc<dyn GapOracle>
    });

    let base = spec.clone();
    let label = format!("{}+add={}", spec.label(), join(values));
    let prefix = head.clone();
    Ok(SetSpec::new(label, move || {
        Listing::new(Prepended {
            head: prefix.clone(),
            inner: base.listing(),
            pos: 0,
        })
    })
    .with_descriptor(descriptor)
    .with_oracle(oracle))
}

struct Layout {
    /// Part indices in ascending value order.
    order: Vec<usize>,
    /// Boundary points shared by two consecutive parts.
    glued: Vec<Rational>,
    /// `glued_before[k]`: part `order[k]` shares its least element with the
    /// previous part.
    glued_before: Vec<bool>,
}

/// Arranges the parts by value when their hulls are pairwise separated,
/// touching at most at a shared boundary point.
fn separated_layout(oracles: &[Arc<dyn GapOracle>]) -> Option<Layout> {
    let mut spans = Vec::new();
    for (k, o) in oracles.iter().enumerate() {
        match o.hull()? {
            Hull::Empty => {}
            Hull::Span { inf, sup } => spans.push((k, inf, sup)),
        }
    }
    spans.sort_by(|a, b| a.1.cmp(&b.1));
    let mut glued = Vec::new();
    let mut glued_before = vec![false; spans.len()];
    for w in 1..spans.len() {
        let (prev, _, prev_sup) = &spans[w - 1];
        let (next, next_inf, _) = &spans[w];
        let (Some(s), Some(i)) = (prev_sup, next_inf) else {
            return None;
        };
        if s > i {
            return None;
        }
        if s == i && oracles[*prev].contains(s) && oracles[*next].contains(i) {
            glued.push(s.clone());
            glued_before[w] = true;
        }
    }
    Some(Layout {
        order: spans.iter().map(|s| s.0).collect(),
        glued,
        glued_before,
    })
}

/// Round-robin union of the inputs; repeated values keep their first
/// occurrence. Inputs that are themselves unions are flattened first, so
/// `interleave([A_2, T_3])` lists exactly like `A_3`.
pub fn interleave(specs: &[SetSpec]) -> Result<SetSpec, SetError> {
    let parts: Vec<SetSpec> = specs.iter().flat_map(|s| s.components()).collect();
    match parts.len() {
        0 => return Err(SetError::EmptyUnion),
        1 => return Ok(parts.into_iter().next().unwrap()),
        _ => {}
    }

    let oracles: Option<Vec<Arc<dyn GapOracle>>> =
        parts.iter().map(|p| p.oracle().cloned()).collect();
    let layout = oracles.as_ref().and_then(|o| separated_layout(o));

    let descriptor = layout.as_ref().and_then(|layout| {
        let mut blocks = Vec::new();
        for (pos, &k) in layout.order.iter().enumerate() {
            let d = parts[k].descriptor()?;
            blocks.push(if layout.glued_before[pos] {
                d.without_min()?
            } else {
                d.clone()
            });
        }
        Some(OrderType::concat(blocks))
    });
    let oracle = oracles.map(|parts| {
        Arc::new(Union {
            parts,
            glued: layout.map(|l| l.glued),
        }) as Arc<dyn GapOracle>
    });

    let labels: Vec<&str> = parts.iter().map(|p| p.label()).collect();
    let label = format!("union({})", labels.join(","));
    let sources = parts.clone();
    Ok(SetSpec::new(label, move || {
        Listing::new(RoundRobin::new(
            sources.iter().map(|s| s.listing()).collect(),
        ))
    })
    .with_descriptor(descriptor)
    .with_oracle(oracle)
    .with_parts(parts))
}
