mod common;

use std::collections::BTreeSet;

use acd_core::loops::{enumerate_reachable_loops, enumerate_subloops, enumerate_subloops_by_decomposition, sccs};
use acd_core::relabel::is_weak_k;
use acd_core::system::compose;
use acd_core::{Acd, AcceptanceCondition, Caps, IdSet, Morphism, Polarity, SystemBuilder, ZielonkaTree};
use common::*;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn decomposition_partitions_the_system(seed: u64) {
        let mut r = rng(seed);
        let (n, m) = (r.gen_range(1..=5), r.gen_range(1..=9));
        let ts = random_system(&mut r, n, m, 0);
        let cond = random_muller(&mut r, &ts);
        let acd = Acd::build(&ts, &cond, Caps::default()).unwrap();
        let mut edges = IdSet::new();
        let mut states = IdSet::new();
        for t in acd.trees() {
            let root = t.label(0);
            prop_assert!(edges.is_disjoint(&root.edges));
            prop_assert!(states.is_disjoint(&root.states));
            edges.extend(root.edges.iter().copied());
            states.extend(root.states.iter().copied());
            for v in 0..t.tree.len() {
                let accepting = !t.label(v).edges.is_empty() && cond.accepts_edges(&ts, &t.label(v).edges).unwrap();
                for &c in t.tree.children(v) {
                    prop_assert!(t.label(c).edges.is_subset(&t.label(v).edges));
                    prop_assert!(t.label(c).edges != t.label(v).edges);
                    prop_assert_ne!(cond.accepts_edges(&ts, &t.label(c).edges).unwrap(), accepting);
                }
            }
        }
        prop_assert_eq!(edges, ts.all_edges());
        prop_assert_eq!(states.len(), ts.num_vertices());
    }

    #[test]
    fn transform_is_a_correct_relabelled_cover(seed: u64) {
        let mut r = rng(seed);
        let (n, m) = (r.gen_range(1..=5), r.gen_range(1..=8));
        let colours = r.gen_range(0..=3);
        let ts = random_system(&mut r, n, m, colours);
        let cond = random_muller(&mut r, &ts);
        let acd = Acd::build(&ts, &cond, Caps::default()).unwrap();
        let tr = acd.transform().unwrap();
        let stats = acd.stats();
        prop_assert_eq!(stats.size, tr.system.num_vertices());
        let used: BTreeSet<u32> = tr.priorities().iter().copied().collect();
        prop_assert!(*used.first().unwrap() >= stats.interval.0);
        prop_assert!(*used.last().unwrap() <= stats.interval.1);
        let phi = tr.morphism();
        prop_assert!(phi.check_structural(&tr.system, &ts).is_empty());
        prop_assert!(phi.check_local(&tr.system, &ts).bijective);
        if tr.system.num_edges() <= 16 {
            prop_assert!(phi
                .check_acceptance_preserving(&tr.system, &tr.condition, &ts, &cond, Caps::default())
                .unwrap());
        }
        for _ in 0..5 {
            let run = random_run(&mut r, &ts);
            let lifted = phi.lift_run(&tr.system, tr.system.initial()[0], &run).unwrap();
            prop_assert!(lifted.is_valid(&tr.system, true));
            prop_assert_eq!(phi.map_run(&lifted).canonical(), run.canonical());
        }
    }

    #[test]
    fn decomposition_enumerates_the_same_loops(seed: u64) {
        let mut r = rng(seed);
        let (n, m) = (r.gen_range(1..=5), r.gen_range(1..=12));
        let ts = random_system(&mut r, n, m, 0);
        for comp in sccs(&ts).loops {
            let mut brute = enumerate_subloops(&ts, &comp, 20).unwrap();
            let mut dec = enumerate_subloops_by_decomposition(&ts, &comp, 1_000_000).unwrap();
            brute.sort();
            dec.sort();
            prop_assert_eq!(brute, dec);
        }
    }
}

#[test]
fn six_state_global_shape() {
    let (ts, cond) = six_state();
    let acd = Acd::build(&ts, &cond, Caps::default()).unwrap();
    assert_eq!(acd.polarity(), Polarity::Odd);
    let stats = acd.stats();
    assert_eq!(stats.size, 10);
    assert_eq!(stats.interval, (1, 3));
    assert_eq!(stats.heights, vec![1, 2, 3]);
    let q4 = ts.vertex_by_name("q4").unwrap();
    assert_eq!(acd.state_branches(q4).len(), 2);
    assert_eq!(acd.state_nodes(ts.vertex_by_name("q0").unwrap()), vec![0]);

    let tr = acd.transform().unwrap();
    assert!(is_weak_k(&tr.system, tr.priorities(), 3));
    assert!(!is_weak_k(&tr.system, tr.priorities(), 2));
}

#[test]
fn flipping_a_priority_breaks_preservation() {
    let (ts, cond) = six_state();
    let tr = Acd::build(&ts, &cond, Caps::default()).unwrap().transform().unwrap();
    let phi = tr.morphism();
    let p = tr.priorities();
    let self_loop = (0..tr.system.num_edges())
        .find(|&e| tr.system.source(e) == tr.system.target(e) && ts.edge_name(tr.edge_origin[e]) == "l")
        .unwrap();
    let mut flipped = p.to_vec();
    flipped[self_loop] += 1;
    let flipped = AcceptanceCondition::Parity(flipped);
    assert!(!phi
        .check_acceptance_preserving(&tr.system, &flipped, &ts, &cond, Caps::default())
        .unwrap());
}

#[test]
fn automaton_a_transform_and_product() {
    let (a, cond) = automaton_a();
    let acd = Acd::build(&a, &cond, Caps::default()).unwrap();
    let t = acd.tree(1);
    let states: Vec<IdSet> = (0..t.tree.len()).map(|v| t.label(v).states.clone()).collect();
    assert_eq!(states, vec![set(&[0, 1]), set(&[0, 1]), set(&[0])]);
    let stats = acd.stats();
    assert_eq!((stats.size, stats.interval), (3, (1, 2)));
    let tr = acd.transform().unwrap();
    assert!(tr.morphism().check_local(&tr.system, &a).bijective);

    let zt = ZielonkaTree::build(&family(&[&[0], &[1]]), &set(&[0, 1, 2]), 100).unwrap();
    let (z, zc) = zt.automaton().to_system(a.colour_names()).unwrap();
    let (product, pc) = compose(&z, &zc, &a).unwrap();
    assert_eq!(product.num_vertices(), 4);
    let nq = z.num_vertices();
    let proj = Morphism::new(
        (0..product.num_vertices()).map(|v| v / nq).collect(),
        (0..product.num_edges()).map(|e| e / nq).collect(),
    );
    assert!(proj.check_structural(&product, &a).is_empty());
    assert!(proj.check_local(&product, &a).bijective);
    assert!(proj.check_acceptance_preserving(&product, &pc, &a, &cond, Caps::default()).unwrap());

    let run = acd_core::Run::new(vec![0, 1, 3], vec![2, 1]);
    assert!(run.is_valid(&a, true));
    let lifted = proj.lift_run(&product, product.initial()[0], &run).unwrap();
    assert!(lifted.is_valid(&product, true));
    assert_eq!(proj.map_run(&lifted).canonical(), run.canonical());
}

#[test]
fn product_with_trivial_partners() {
    let (a, cond) = automaton_a();
    let mut b = SystemBuilder::new().vertex("s").initial("s");
    for l in ["a", "b", "c"] {
        b = b.edge(l, "s", "s").letter(l, l);
    }
    let one = b.build().unwrap();
    let (product, _) = compose(&one, &AcceptanceCondition::Parity(vec![0, 0, 0]), &a).unwrap();
    assert_eq!((product.num_vertices(), product.num_edges()), (a.num_vertices(), a.num_edges()));
    let _ = cond;

    let f2 = family(&[
        &[0, 1, 2, 3],
        &[0, 1, 3],
        &[0, 2, 3],
        &[1, 2, 3],
        &[0, 1],
        &[0, 3],
        &[1, 2],
        &[1, 3],
        &[0],
        &[1],
        &[3],
    ]);
    let zt = ZielonkaTree::build(&f2, &set(&[0, 1, 2, 3]), 100).unwrap();
    let petals = flower(4);
    let (z, zc) = zt.automaton().to_system(petals.colour_names()).unwrap();
    let (product, _) = compose(&z, &zc, &petals).unwrap();
    assert_eq!((product.num_vertices(), product.num_edges()), (z.num_vertices(), z.num_edges()));
}

#[test]
fn loops_of_small_systems() {
    let (ts, _) = six_state();
    let c = sccs(&ts);
    assert_eq!(c.loops, vec![edges_named(&ts, "cde"), edges_named(&ts, "ghijkl")]);
    assert_eq!(c.transient, edges_named(&ts, "abf"));
    let petals = flower(2);
    let all = enumerate_reachable_loops(&petals, 20).unwrap();
    assert_eq!(all.len(), 3);

    let dag = SystemBuilder::new()
        .vertices(["r", "s", "t"])
        .edge("rs", "r", "s")
        .edge("rt", "r", "t")
        .edge("ss", "s", "s")
        .edge("tt", "t", "t")
        .initial("r")
        .build()
        .unwrap();
    let c = sccs(&dag);
    assert_eq!(c.loops, vec![set(&[2]), set(&[3])]);
}
