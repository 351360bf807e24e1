use proptest::prelude::*;

use enumorder_core::cli::resolve;
use enumorder_core::coorder::{
    match_listing, order_pattern, prefix_coorder, type2_search, witness_set_e, CellOutcome, Fuel,
    MatchOutcome,
};
use enumorder_core::ordertype::refute_type2;
use enumorder_core::rational::Rational;
use enumorder_core::sequences::{add_finite, interleave, remove_finite, shift, SetSpec};

const FAMILIES: &[&str] = &[
    "harmonic",
    "thirds",
    "T:1",
    "T:2",
    "T:5",
    "A:1",
    "A:2",
    "A:3",
    "interval:0,1",
    "interval:-2,1/2",
];

fn family() -> impl Strategy<Value = SetSpec> {
    prop::sample::select(FAMILIES).prop_map(|f| resolve(f).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pattern_is_a_permutation(f in family(), len in 0usize..60) {
        let mut p = order_pattern(&mut f.listing(), len).unwrap();
        p.sort_unstable();
        prop_assert_eq!(p, (0..len).collect::<Vec<_>>());
    }

    #[test]
    fn coorder_is_symmetric(a in family(), b in family(), len in 0usize..40) {
        let ab = prefix_coorder(&mut a.listing(), &mut b.listing(), len).unwrap();
        let ba = prefix_coorder(&mut b.listing(), &mut a.listing(), len).unwrap();
        prop_assert_eq!(ab.is_agree(), ba.is_agree());
    }

    #[test]
    fn witnesses_really_disagree(a in family(), b in family(), m in 0usize..4, n in 0usize..4) {
        let report = type2_search(&mut a.listing(), &mut b.listing(), m, n, 40).unwrap();
        let mut h = a.listing();
        let mut g = b.listing();
        for cell in &report.cells {
            if let CellOutcome::Witness(w) = &cell.outcome {
                prop_assert_eq!(h.get(w.i + cell.shift.m).unwrap().unwrap(), w.h_i.clone());
                prop_assert_eq!(g.get(w.j + cell.shift.n).unwrap().unwrap(), w.g_j.clone());
                prop_assert!(w.h_i < w.h_j && w.g_i > w.g_j);
            }
        }
    }

    #[test]
    fn refutation_agrees_with_search(a in family(), b in family()) {
        if refute_type2(&a, &b).is_refuted() {
            let report = type2_search(&mut a.listing(), &mut b.listing(), 3, 3, 300).unwrap();
            prop_assert!(report.all_witnessed(), "{} vs {}", a.label(), b.label());
        }
    }

    #[test]
    fn finite_edits_keep_the_signature(f in family(), drop in 0usize..3, m in 0usize..5) {
        let head = f.listing().take(drop).unwrap().to_vec();
        let edited = remove_finite(&f, &head);
        let extra = add_finite(&edited, &[Rational::from(-100i64)]).unwrap();
        prop_assert!(!refute_type2(&f, &extra).is_refuted());
        let shifted = enumorder_core::sequences::shift_spec(&f, m).unwrap();
        prop_assert!(!refute_type2(&f, &shifted).is_refuted());
    }

    #[test]
    fn e_at_shift_equals_unshifted_on_shifted_listings(a in family(), b in family(), m in 0usize..6, n in 0usize..6) {
        let direct = witness_set_e(&mut a.listing(), &mut b.listing(), m, n, 25).unwrap();
        let pre = witness_set_e(&mut shift(a.listing(), m), &mut shift(b.listing(), n), 0, 0, 25).unwrap();
        prop_assert_eq!(direct, pre);
    }

    #[test]
    fn successful_matches_preserve_order(f in family(), steps in 1usize..25) {
        let target = resolve("interval:0,1").unwrap();
        let source = f.oracle().cloned();
        let out = match_listing(&mut f.listing(), source.as_deref(), &target, steps, Fuel::PerStepQuadratic(50)).unwrap();
        if let MatchOutcome::Matched(ok) = out {
            prop_assert!(prefix_coorder(&mut f.listing(), &mut ok.listing(), steps).unwrap().is_agree());
            prop_assert!(ok.values.iter().all(|v| target.oracle().unwrap().contains(v)));
        }
    }
}

#[test]
fn interleave_of_blocks_is_the_family() {
    let a2 = resolve("A:2").unwrap();
    let t3 = resolve("T:3").unwrap();
    let joined = interleave(&[a2, t3]).unwrap();
    let mut direct = resolve("A:3").unwrap().listing();
    assert_eq!(
        joined.listing().prefix(300).unwrap(),
        direct.prefix(300).unwrap()
    );
    assert_eq!(joined.descriptor(), resolve("A:3").unwrap().descriptor());
}
