//! Co-order relations between listings: prefix checks, disagreement witness
//! sets, shift-pair search, greedy matching, and the finite-set decision.

mod finite;
mod matching;
mod witness;

pub use finite::{brute_force_coorder_oracle, finite_coorder, ORACLE_SIZE_CAP};
pub use matching::{match_listing, Fuel, MatchFailure, MatchOutcome, MatchStep, MatchSuccess};
pub use witness::{
    project_l, project_m, type2_search, witness_set_e, CellOutcome, ShiftCell, WitnessReport,
};

use serde::Serialize;
use thiserror::Error;

use crate::rational::Rational;
use crate::sequences::{Listing, ListingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoorderError {
    #[error(transparent)]
    Listing(#[from] ListingError),
    #[error("duplicate value {0}")]
    Duplicate(Rational),
    #[error("brute-force oracle accepts at most {cap} values per side, got {got}")]
    OracleCap { cap: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Four compared values at an index pair where two listings disagree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WitnessPair {
    pub i: usize,
    pub j: usize,
    pub h_i: Rational,
    pub h_j: Rational,
    pub g_i: Rational,
    pub g_j: Rational,
}

impl WitnessPair {
    /// Exactly one of `h_i < h_j` and `g_i < g_j` holds.
    pub fn is_disagreement(&self) -> bool {
        (self.h_i < self.h_j) != (self.g_i < self.g_j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ShiftPair {
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoorderVerdict {
    Agree(usize),
    Disagree(WitnessPair),
}

impl CoorderVerdict {
    pub fn is_agree(&self) -> bool {
        matches!(self, CoorderVerdict::Agree(_))
    }
}

/// Rank of every value within `values` (values must be distinct).
pub(crate) fn ranks(values: &[Rational]) -> Vec<u32> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].cmp(&values[b]));
    let mut out = vec![0u32; values.len()];
    for (rank, &k) in idx.iter().enumerate() {
        out[k] = rank as u32;
    }
    out
}

/// `out[k] = #{t < len : h(t) < h(k)}`; a permutation of `0..len`.
pub fn order_pattern(h: &mut Listing, len: usize) -> Result<Vec<usize>, CoorderError> {
    let prefix = h.prefix(len)?;
    Ok(ranks(prefix).into_iter().map(|r| r as usize).collect())
}

/// Compares the first `len` positions of two listings. On disagreement the
/// reported pair is the first `(j, i)`, `i < j`, in lexicographic order.
pub fn prefix_coorder(
    h: &mut Listing,
    g: &mut Listing,
    len: usize,
) -> Result<CoorderVerdict, CoorderError> {
    let hv = h.prefix(len)?.to_vec();
    let gv = g.prefix(len)?;
    if ranks(&hv) == ranks(gv) {
        return Ok(CoorderVerdict::Agree(len));
    }
    for j in 1..len {
        for i in 0..j {
            if (hv[i] < hv[j]) != (gv[i] < gv[j]) {
                return Ok(CoorderVerdict::Disagree(WitnessPair {
                    i,
                    j,
                    h_i: hv[i].clone(),
                    h_j: hv[j].clone(),
                    g_i: gv[i].clone(),
                    g_j: gv[j].clone(),
                }));
            }
        }
    }
    unreachable!("distinct rank vectors always differ on some pair")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{build_t, builtin_harmonic, builtin_thirds, finite_listing};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn pattern_examples() {
        let mut up = build_t(1).unwrap().listing();
        assert_eq!(order_pattern(&mut up, 4).unwrap(), vec![0, 1, 2, 3]);
        let mut h = builtin_harmonic().listing();
        assert_eq!(order_pattern(&mut h, 4).unwrap(), vec![3, 2, 1, 0]);
        assert!(order_pattern(&mut h, 0).unwrap().is_empty());
        let mut short = finite_listing(vec![r("1"), r("2")]).unwrap().listing();
        assert_eq!(
            order_pattern(&mut short, 3).unwrap_err(),
            CoorderError::Listing(ListingError::TooShort {
                wanted: 3,
                available: 2
            })
        );
    }

    #[test]
    fn prefix_examples() {
        let h = builtin_harmonic();
        let v = prefix_coorder(&mut h.listing(), &mut h.listing(), 50).unwrap();
        assert_eq!(v, CoorderVerdict::Agree(50));

        let v = prefix_coorder(&mut h.listing(), &mut builtin_thirds().listing(), 2).unwrap();
        let CoorderVerdict::Disagree(w) = v else {
            panic!("expected witness")
        };
        assert_eq!((w.i, w.j), (0, 1));
        assert!(w.is_disagreement());
        assert_eq!(
            (w.h_i, w.h_j, w.g_i, w.g_j),
            (r("1"), r("1/2"), r("0"), r("1/3"))
        );
        let v = prefix_coorder(
            &mut build_t(1).unwrap().listing(),
            &mut build_t(3).unwrap().listing(),
            100,
        )
        .unwrap();
        assert_eq!(v, CoorderVerdict::Agree(100));
    }
}
