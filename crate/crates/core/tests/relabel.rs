mod common;

use std::collections::BTreeSet;

use acd_core::condition::equivalent_over;
use acd_core::loops::enumerate_reachable_loops;
use acd_core::relabel::{classify_acd, compress_priorities, is_weak_k, parity_relabel, rabin_from_acd, streett_from_acd};
use acd_core::{Acd, AcceptanceCondition, Caps, IdSet, TransitionSystem};
use common::*;
use proptest::prelude::*;
use rand::Rng;

/// Whether loops with status `status` are closed under unions of pairs that
/// share a state.
fn closed(ts: &TransitionSystem, loops: &[IdSet], cond: &AcceptanceCondition, status: bool) -> bool {
    let of: Vec<&IdSet> = loops
        .iter()
        .filter(|l| cond.accepts_edges(ts, l).unwrap() == status)
        .collect();
    of.iter().all(|a| {
        of.iter().all(|b| {
            ts.states_of(a).is_disjoint(&ts.states_of(b)) || {
                let u: IdSet = a.union(b).copied().collect();
                cond.accepts_edges(ts, &u).unwrap() == status
            }
        })
    })
}

fn min_status(priorities: &[u32], l: &IdSet) -> bool {
    l.iter().map(|&e| priorities[e]).min().unwrap() % 2 == 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn shape_matches_loop_closure(seed: u64) {
        let mut r = rng(seed);
        let (n, m) = (r.gen_range(1..=4), r.gen_range(1..=8));
        let ts = random_system(&mut r, n, m, 0);
        let cond = random_muller(&mut r, &ts);
        let loops = enumerate_reachable_loops(&ts, 20).unwrap();
        let acd = Acd::build(&ts, &cond, Caps::default()).unwrap();
        let shape = classify_acd(&acd);
        let rabin = closed(&ts, &loops, &cond, false);
        let streett = closed(&ts, &loops, &cond, true);
        prop_assert_eq!(shape.rabin, rabin);
        prop_assert_eq!(shape.streett, streett);
        prop_assert_eq!(shape.parity, rabin && streett);

        match rabin_from_acd(&acd) {
            Ok(c) => prop_assert!(equivalent_over(&ts, &c, &cond, Caps::default()).unwrap()),
            Err(_) => prop_assert!(!rabin),
        }
        match streett_from_acd(&acd) {
            Ok(c) => prop_assert!(equivalent_over(&ts, &c, &cond, Caps::default()).unwrap()),
            Err(_) => prop_assert!(!streett),
        }
        if let Ok(p) = parity_relabel(&acd) {
            let (lo, hi) = shape.parity_interval.unwrap();
            for l in &loops {
                prop_assert_eq!(min_status(&p, l), cond.accepts_edges(&ts, l).unwrap());
            }
            prop_assert!(p.iter().all(|&x| lo <= x && x <= hi));
            let k = shape.weak_k.unwrap();
            prop_assert!(is_weak_k(&ts, &p, k));
        }
    }

    #[test]
    fn compression_keeps_every_status(prios in prop::collection::vec(0u32..9, 1..=8), seed: u64) {
        let mut r = rng(seed);
        let ts = random_system(&mut r, 3, prios.len(), 0);
        let prios: Vec<u32> = (0..ts.num_edges()).map(|e| prios[e % prios.len()]).collect();
        let c = compress_priorities(&prios);
        for l in enumerate_reachable_loops(&ts, 20).unwrap() {
            prop_assert_eq!(min_status(&c, &l), min_status(&prios, &l));
        }
        let used: BTreeSet<u32> = c.iter().copied().collect();
        let lo = *used.first().unwrap();
        prop_assert!(lo <= 1);
        prop_assert_eq!(used.into_iter().collect::<Vec<_>>(), (lo..lo + c.iter().collect::<BTreeSet<_>>().len() as u32).collect::<Vec<_>>());
    }
}

#[test]
fn compression_examples() {
    assert_eq!(compress_priorities(&[0, 2, 3]), vec![0, 0, 1]);
    assert_eq!(compress_priorities(&[3, 5]), vec![1, 1]);
    assert_eq!(compress_priorities(&[2, 3, 4]), vec![0, 1, 2]);
}

#[test]
fn six_state_is_neither_rabin_nor_parity() {
    let (ts, cond) = six_state();
    let acd = Acd::build(&ts, &cond, Caps::default()).unwrap();
    let shape = classify_acd(&acd);
    let loops = enumerate_reachable_loops(&ts, 20).unwrap();
    assert_eq!(shape.rabin, closed(&ts, &loops, &cond, false));
    assert_eq!(shape.streett, closed(&ts, &loops, &cond, true));
    assert!(!shape.parity);
    assert!(shape.weak_k.is_none());
    assert!(!shape.offenders.is_empty());
}
