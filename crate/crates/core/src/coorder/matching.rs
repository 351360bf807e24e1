use crate::rational::Rational;
use crate::sequences::oracle::in_gap;
use crate::sequences::{Cardinality, GapOracle, Listing, SetSpec};

use super::CoorderError;

/// Budget of fresh draws from the target listing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fuel {
    /// Shared across all steps.
    Total(u64),
    /// `c * (k + 1)^2` draws available at step `k`.
    PerStepQuadratic(u64),
}

impl Fuel {
    fn budget(self, step: usize, spent_total: u64) -> u64 {
        match self {
            Fuel::Total(t) => t.saturating_sub(spent_total),
            Fuel::PerStepQuadratic(c) => {
                let k = step as u64 + 1;
                c.saturating_mul(k.saturating_mul(k))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchStep {
    pub step: usize,
    pub value: Rational,
    /// Position of `value` in the target's listing.
    pub target_index: usize,
    pub fresh_draws: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchSuccess {
    pub values: Vec<Rational>,
    pub trace: Vec<MatchStep>,
    pub draws: u64,
}

impl MatchSuccess {
    pub fn listing(&self) -> Listing {
        Listing::from_values(self.values.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchFailure {
    /// The target's gap `(lo, hi)` cannot hold what the step requires: either
    /// certified by its oracle or by an exhausted finite listing.
    GapEmpty {
        step: usize,
        lo: Option<Rational>,
        hi: Option<Rational>,
        required: Cardinality,
        available: Cardinality,
    },
    FuelExhausted {
        step: usize,
        draws: u64,
    },
}

impl MatchFailure {
    pub fn step(&self) -> usize {
        match self {
            MatchFailure::GapEmpty { step, .. } | MatchFailure::FuelExhausted { step, .. } => *step,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    Matched(MatchSuccess),
    Failed(MatchFailure),
}

struct Gap {
    lo: Option<usize>,
    hi: Option<usize>,
}

/// Nearest earlier positions below and above `values[k]`.
fn neighbours(values: &[Rational], k: usize) -> Gap {
    let x = &values[k];
    let mut gap = Gap { lo: None, hi: None };
    for (t, v) in values[..k].iter().enumerate() {
        if v < x {
            if gap.lo.is_none_or(|p| values[p] < *v) {
                gap.lo = Some(t);
            }
        } else if gap.hi.is_none_or(|p| *v < values[p]) {
            gap.hi = Some(t);
        }
    }
    gap
}

fn side_ok(
    oracle: Option<&dyn GapOracle>,
    lo: Option<&Rational>,
    hi: Option<&Rational>,
    need: u64,
) -> bool {
    if need == 0 {
        return true;
    }
    match oracle {
        None => true,
        Some(o) => match o.count_between(lo, hi) {
            Some(c) => c >= Cardinality::Finite(need),
            None => o.meets(lo, hi),
        },
    }
}

fn side_floor(c: Option<Cardinality>) -> u64 {
    match c {
        Some(Cardinality::Finite(k)) => k,
        Some(Cardinality::Infinite) => 1,
        None => 0,
    }
}

/// Builds, step by step, a listing `g` of `target` whose first `steps`
/// positions are in the same relative order as those of `h`.
///
/// At each step the new value must sit in the gap of `g` matching the gap of
/// `h`, and leave room on each side for the later prefix values of `h` that
/// fall there. When `source` (an oracle for the set listed by `h`) and the
/// target's oracle both count exactly, a gap that is too small for everything
/// the source puts on either side is reported as [`MatchFailure::GapEmpty`]:
/// no listing of the target extends the current prefix.
pub fn match_listing(
    h: &mut Listing,
    source: Option<&dyn GapOracle>,
    target: &SetSpec,
    steps: usize,
    fuel: Fuel,
) -> Result<MatchOutcome, CoorderError> {
    let hv = h.take(steps)?.to_vec();
    let steps = hv.len();
    let target_oracle = target.oracle().map(|o| o.as_ref());
    let mut b = target.listing();
    let mut next_draw = 0usize;
    // (value, target index) drawn but not yet placed
    let mut pool: Vec<(Rational, usize)> = Vec::new();
    let mut gv: Vec<Rational> = Vec::with_capacity(steps);
    let mut trace = Vec::with_capacity(steps);
    let mut draws = 0u64;

    for k in 0..steps {
        let gap = neighbours(&hv, k);
        let h_lo = gap.lo.map(|t| &hv[t]);
        let h_hi = gap.hi.map(|t| &hv[t]);
        let g_lo = gap.lo.map(|t| gv[t].clone());
        let g_hi = gap.hi.map(|t| gv[t].clone());
        let x = &hv[k];
        let later = &hv[k + 1..];
        let mut need_left = later.iter().filter(|v| in_gap(v, h_lo, Some(x))).count() as u64;
        let mut need_right = later.iter().filter(|v| in_gap(v, Some(x), h_hi)).count() as u64;
        let source_left = source.and_then(|oa| oa.count_between(h_lo, Some(x)));
        let source_right = source.and_then(|oa| oa.count_between(Some(x), h_hi));

        if let Some(ob) = target_oracle {
            if !ob.meets(g_lo.as_ref(), g_hi.as_ref()) {
                return Ok(MatchOutcome::Failed(MatchFailure::GapEmpty {
                    step: k,
                    lo: g_lo,
                    hi: g_hi,
                    required: Cardinality::Finite(1),
                    available: Cardinality::Finite(0),
                }));
            }
            if let Some(available) = ob.count_between(g_lo.as_ref(), g_hi.as_ref()) {
                let mut required = Cardinality::Finite(1 + need_left + need_right);
                if let (Some(l), Some(r)) = (source_left, source_right) {
                    required = required.max(l.sum(r).plus(1));
                }
                if available < required {
                    return Ok(MatchOutcome::Failed(MatchFailure::GapEmpty {
                        step: k,
                        lo: g_lo,
                        hi: g_hi,
                        required,
                        available,
                    }));
                }
            }
        }

        // an infinite source side asks for at least one target element there
        need_left = need_left.max(side_floor(source_left));
        need_right = need_right.max(side_floor(source_right));
        let admissible = |y: &Rational| {
            in_gap(y, g_lo.as_ref(), g_hi.as_ref())
                && side_ok(target_oracle, g_lo.as_ref(), Some(y), need_left)
                && side_ok(target_oracle, Some(y), g_hi.as_ref(), need_right)
        };

        let mut chosen = pool
            .iter()
            .position(|(y, _)| admissible(y))
            .map(|p| pool.remove(p));
        let budget = fuel.budget(k, draws);
        let mut fresh = 0u64;
        while chosen.is_none() {
            if fresh >= budget {
                return Ok(MatchOutcome::Failed(MatchFailure::FuelExhausted {
                    step: k,
                    draws,
                }));
            }
            let Some(y) = b.get(next_draw)? else {
                let available = pool
                    .iter()
                    .filter(|(y, _)| in_gap(y, g_lo.as_ref(), g_hi.as_ref()))
                    .count() as u64;
                return Ok(MatchOutcome::Failed(MatchFailure::GapEmpty {
                    step: k,
                    lo: g_lo,
                    hi: g_hi,
                    required: Cardinality::Finite(1 + need_left + need_right),
                    available: Cardinality::Finite(available),
                }));
            };
            let index = next_draw;
            next_draw += 1;
            fresh += 1;
            draws += 1;
            if admissible(&y) {
                chosen = Some((y, index));
            } else {
                pool.push((y, index));
            }
        }
        let (value, target_index) = chosen.expect("loop exits with a choice");
        gv.push(value.clone());
        trace.push(MatchStep {
            step: k,
            value,
            target_index,
            fresh_draws: fresh,
        });
    }
    Ok(MatchOutcome::Matched(MatchSuccess {
        values: gv,
        trace,
        draws,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coorder::prefix_coorder;
    use crate::sequences::{
        builtin_harmonic, builtin_thirds, finite_listing, rationals_in_interval,
    };

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn run(h: &SetSpec, target: &SetSpec, steps: usize, fuel: Fuel) -> MatchOutcome {
        let source = h.oracle().cloned();
        match_listing(&mut h.listing(), source.as_deref(), target, steps, fuel).unwrap()
    }

    #[test]
    fn harmonic_into_thirds_fails_at_step_one() {
        let h = builtin_harmonic();
        let t = builtin_thirds();
        let MatchOutcome::Failed(f) = run(&h, &t, 2, Fuel::Total(1000)) else {
            panic!()
        };
        assert_eq!(f.step(), 1);
        let MatchFailure::GapEmpty { hi, .. } = f else {
            panic!("{f:?}")
        };
        assert_eq!(hi, Some(r("1/3")));

        let MatchOutcome::Failed(f) = run(&h, &t, 20, Fuel::Total(1000)) else {
            panic!()
        };
        assert!(matches!(
            f,
            MatchFailure::GapEmpty {
                step: 1,
                available: Cardinality::Finite(19),
                ..
            }
        ));
    }

    #[test]
    fn harmonic_into_unit_interval() {
        let h = builtin_harmonic();
        let target = rationals_in_interval(r("0"), r("1")).unwrap();
        let MatchOutcome::Matched(ok) = run(&h, &target, 50, Fuel::PerStepQuadratic(10)) else {
            panic!()
        };
        assert_eq!(ok.values.len(), 50);
        assert!(ok.values.iter().all(|v| *v > r("0")));
        let v = prefix_coorder(&mut h.listing(), &mut ok.listing(), 50).unwrap();
        assert!(v.is_agree());
    }

    #[test]
    fn finite_sets_match_exactly() {
        let a = finite_listing(vec![r("3"), r("-1"), r("2"), r("0")]).unwrap();
        let b = finite_listing(vec![r("10"), r("20"), r("30"), r("40")]).unwrap();
        let MatchOutcome::Matched(ok) = run(&a, &b, 4, Fuel::Total(4)) else {
            panic!()
        };
        assert_eq!(ok.values, vec![r("40"), r("10"), r("30"), r("20")]);
        assert_eq!(ok.draws, 4);
    }

    #[test]
    fn finite_target_too_small() {
        let a = finite_listing(vec![r("1"), r("2"), r("3")]).unwrap();
        let b = finite_listing(vec![r("1"), r("2")]).unwrap();
        let MatchOutcome::Failed(f) = run(&a, &b, 3, Fuel::Total(100)) else {
            panic!()
        };
        assert!(matches!(f, MatchFailure::GapEmpty { step: 0, .. }));
    }

    #[test]
    fn fuel_runs_out() {
        let a = builtin_harmonic();
        let b = SetSpec::new("bare", || builtin_thirds().listing());
        let MatchOutcome::Failed(f) = run(&a, &b, 5, Fuel::Total(3)) else {
            panic!()
        };
        assert_eq!(f, MatchFailure::FuelExhausted { step: 1, draws: 3 });
    }
}
