use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::rational::Rational;
use crate::sequences::Listing;

use super::{ranks, CoorderError, ShiftPair, WitnessPair};

fn pair_at(
    hv: &[Rational],
    gv: &[Rational],
    m: usize,
    n: usize,
    i: usize,
    j: usize,
) -> WitnessPair {
    WitnessPair {
        i,
        j,
        h_i: hv[i + m].clone(),
        h_j: hv[j + m].clone(),
        g_i: gv[i + n].clone(),
        g_j: gv[j + n].clone(),
    }
}

/// All `(i, j)`, `i, j < len`, with `h(i+m) < h(j+m)` and `g(i+n) > g(j+n)`,
/// in lexicographic order.
pub fn witness_set_e(
    h: &mut Listing,
    g: &mut Listing,
    m: usize,
    n: usize,
    len: usize,
) -> Result<Vec<WitnessPair>, CoorderError> {
    let hv = h.prefix(len + m)?.to_vec();
    let gv = g.prefix(len + n)?;
    let mut out = Vec::new();
    for i in 0..len {
        for j in 0..len {
            if i != j && hv[i + m] < hv[j + m] && gv[i + n] > gv[j + n] {
                out.push(pair_at(&hv, gv, m, n, i, j));
            }
        }
    }
    Ok(out)
}

pub fn project_m(e: &[WitnessPair]) -> BTreeSet<usize> {
    e.iter().map(|w| w.i).collect()
}

pub fn project_l(e: &[WitnessPair]) -> BTreeSet<usize> {
    e.iter().map(|w| w.j).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellOutcome {
    Witness(WitnessPair),
    /// Inconclusive: no disagreement among the first `N` shifted positions.
    NoWitnessWithin(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftCell {
    pub shift: ShiftPair,
    pub outcome: CellOutcome,
}

impl ShiftCell {
    pub fn witness(&self) -> Option<&WitnessPair> {
        match &self.outcome {
            CellOutcome::Witness(w) => Some(w),
            CellOutcome::NoWitnessWithin(_) => None,
        }
    }
}

/// Per-shift search results, ordered by `(m, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub prefix: usize,
    pub m_max: usize,
    pub n_max: usize,
    pub cells: Vec<ShiftCell>,
}

impl WitnessReport {
    pub fn all_witnessed(&self) -> bool {
        self.cells.iter().all(|c| c.witness().is_some())
    }

    pub fn candidates(&self) -> impl Iterator<Item = ShiftPair> + '_ {
        self.cells
            .iter()
            .filter(|c| c.witness().is_none())
            .map(|c| c.shift)
    }

    pub fn cell(&self, m: usize, n: usize) -> Option<&ShiftCell> {
        self.cells.iter().find(|c| c.shift == ShiftPair { m, n })
    }
}

#[derive(Serialize)]
struct CellJson<'a> {
    m: usize,
    n: usize,
    witness: Option<&'a WitnessPair>,
}

impl WitnessReport {
    pub fn cells_json(&self) -> serde_json::Value {
        let cells: Vec<CellJson<'_>> = self
            .cells
            .iter()
            .map(|c| CellJson {
                m: c.shift.m,
                n: c.shift.n,
                witness: c.witness(),
            })
            .collect();
        serde_json::to_value(cells).expect("cells serialize")
    }
}

/// Smallest `max(i, j)` first, then lexicographic `(i, j)`.
fn minimal_witness(
    hr: &[u32],
    gr: &[u32],
    m: usize,
    n: usize,
    len: usize,
) -> Option<(usize, usize)> {
    let hit = |i: usize, j: usize| hr[i + m] < hr[j + m] && gr[i + n] > gr[j + n];
    for s in 1..len {
        if let Some(i) = (0..s).find(|&i| hit(i, s)) {
            return Some((i, s));
        }
        if let Some(j) = (0..s).find(|&j| hit(s, j)) {
            return Some((s, j));
        }
    }
    None
}

/// Searches every shift pair `(m, n)` with `m ≤ m_max`, `n ≤ n_max` for a
/// minimal element of `E_{m,n}` with both indices below `len`.
pub fn type2_search(
    h: &mut Listing,
    g: &mut Listing,
    m_max: usize,
    n_max: usize,
    len: usize,
) -> Result<WitnessReport, CoorderError> {
    let hv = h.prefix(len + m_max)?.to_vec();
    let gv = g.prefix(len + n_max)?.to_vec();
    let hr = ranks(&hv);
    let gr = ranks(&gv);
    let shifts: Vec<ShiftPair> = (0..=m_max)
        .flat_map(|m| (0..=n_max).map(move |n| ShiftPair { m, n }))
        .collect();
    let cells = shifts
        .into_par_iter()
        .map(|shift| {
            let outcome = match minimal_witness(&hr, &gr, shift.m, shift.n, len) {
                Some((i, j)) => CellOutcome::Witness(pair_at(&hv, &gv, shift.m, shift.n, i, j)),
                None => CellOutcome::NoWitnessWithin(len),
            };
            ShiftCell { shift, outcome }
        })
        .collect();
    Ok(WitnessReport {
        prefix: len,
        m_max,
        n_max,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{build_a, builtin_harmonic, builtin_thirds, shift};

    #[test]
    fn e_examples() {
        let h = builtin_harmonic();
        let e = witness_set_e(&mut h.listing(), &mut h.listing(), 3, 3, 20).unwrap();
        assert!(e.is_empty());

        let e = witness_set_e(&mut h.listing(), &mut builtin_thirds().listing(), 0, 0, 3).unwrap();
        let pairs: Vec<_> = e.iter().map(|w| (w.i, w.j)).collect();
        assert_eq!(pairs, vec![(1, 0), (2, 0), (2, 1)]);
        assert_eq!(project_m(&e), BTreeSet::from([1, 2]));
        assert_eq!(project_l(&e), BTreeSet::from([0, 1]));
        assert!(project_m(&[]).is_empty() && project_l(&[]).is_empty());
    }

    #[test]
    fn equal_listings_have_clean_diagonal() {
        let a = build_a(3).unwrap();
        let report = type2_search(&mut a.listing(), &mut a.listing(), 4, 4, 60).unwrap();
        for m in 0..=4 {
            assert_eq!(
                report.cell(m, m).unwrap().outcome,
                CellOutcome::NoWitnessWithin(60)
            );
        }
        assert_eq!(report.cells.len(), 25);
    }

    #[test]
    fn shifted_self_is_a_candidate() {
        let h = builtin_harmonic();
        let mut g = shift(h.listing(), 5);
        let report = type2_search(&mut h.listing(), &mut g, 5, 0, 100).unwrap();
        assert_eq!(
            report.cell(5, 0).unwrap().outcome,
            CellOutcome::NoWitnessWithin(100)
        );
    }

    #[test]
    fn a1_against_a2_is_witnessed_everywhere() {
        let report = type2_search(
            &mut build_a(1).unwrap().listing(),
            &mut build_a(2).unwrap().listing(),
            10,
            10,
            200,
        )
        .unwrap();
        assert_eq!(report.cells.len(), 121);
        assert!(report.all_witnessed());
        for cell in &report.cells {
            assert!(cell.witness().unwrap().is_disagreement());
        }
    }

    #[test]
    fn minimal_witness_matches_full_set() {
        let (h, g) = (build_a(2).unwrap(), build_a(3).unwrap());
        let report = type2_search(&mut h.listing(), &mut g.listing(), 3, 3, 40).unwrap();
        for cell in &report.cells {
            let e = witness_set_e(
                &mut h.listing(),
                &mut g.listing(),
                cell.shift.m,
                cell.shift.n,
                40,
            )
            .unwrap();
            let best = e.iter().min_by_key(|w| (w.i.max(w.j), w.i, w.j));
            assert_eq!(best, cell.witness());
        }
    }
}
