#![allow(dead_code)]

use std::collections::BTreeSet;

use acd_core::loops::enumerate_reachable_loops;
use acd_core::{AcceptanceCondition, IdSet, Player, Run, SystemBuilder, TransitionSystem};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn set(s: &[usize]) -> IdSet {
    s.iter().copied().collect()
}

pub fn family(sets: &[&[usize]]) -> BTreeSet<IdSet> {
    sets.iter().map(|s| set(s)).collect()
}

pub fn subsets(n: usize) -> Vec<IdSet> {
    (1u32..1 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

pub fn random_family<R: Rng>(rng: &mut R, n: usize) -> BTreeSet<IdSet> {
    subsets(n).into_iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// All vertices reachable from `v0`, none without successors.
pub fn random_system<R: Rng>(rng: &mut R, n: usize, m: usize, colours: usize) -> TransitionSystem {
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, rng.gen_range(0..n)));
    while edges.len() < m.max(n) {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let mut b = SystemBuilder::new().vertices((0..n).map(|v| format!("v{v}"))).initial("v0");
    for (i, &(s, t)) in edges.iter().enumerate() {
        b = b.edge(format!("e{i}"), format!("v{s}"), format!("v{t}"));
        if colours > 0 {
            b = b.colour(format!("e{i}"), format!("c{}", rng.gen_range(0..colours)));
        }
    }
    b.build().unwrap()
}

pub fn with_random_owners<R: Rng>(rng: &mut R, ts: TransitionSystem) -> TransitionSystem {
    let owners = (0..ts.num_vertices())
        .map(|_| if rng.gen_bool(0.5) { Player::Eve } else { Player::Adam })
        .collect();
    ts.with_owners(owners).unwrap()
}

/// A Muller condition keeping each colour set of a reachable loop with
/// probability one half.
pub fn random_muller<R: Rng>(rng: &mut R, ts: &TransitionSystem) -> AcceptanceCondition {
    let images: BTreeSet<IdSet> = enumerate_reachable_loops(ts, 20)
        .unwrap()
        .iter()
        .map(|l| ts.colour_image(l))
        .collect();
    AcceptanceCondition::Muller(images.into_iter().filter(|_| rng.gen_bool(0.5)).collect())
}

/// A random walk from an initial vertex until a vertex repeats, cut into
/// prefix and cycle.
pub fn random_run<R: Rng>(rng: &mut R, ts: &TransitionSystem) -> Run {
    let mut v = ts.initial()[0];
    let mut seen = vec![v];
    let mut edges = Vec::new();
    loop {
        let out = ts.out(v);
        let e = out[rng.gen_range(0..out.len())];
        edges.push(e);
        v = ts.target(e);
        if let Some(i) = seen.iter().position(|&w| w == v) {
            return Run::new(edges[..i].to_vec(), edges[i..].to_vec());
        }
        seen.push(v);
    }
}

pub fn six_state() -> (TransitionSystem, AcceptanceCondition) {
    let edges = [
        ("a", "q0", "q1"),
        ("b", "q0", "q3"),
        ("c", "q1", "q2"),
        ("d", "q2", "q1"),
        ("e", "q2", "q2"),
        ("f", "q1", "q4"),
        ("g", "q3", "q3"),
        ("h", "q3", "q4"),
        ("i", "q4", "q3"),
        ("j", "q4", "q5"),
        ("k", "q5", "q4"),
        ("l", "q5", "q5"),
    ];
    let mut b = SystemBuilder::new()
        .vertices(["q0", "q1", "q2", "q3", "q4", "q5"])
        .initial("q0");
    for (n, s, t) in edges {
        b = b.edge(n, s, t);
    }
    let ts = b.build().unwrap();
    let cond = AcceptanceCondition::Muller(
        ["cde", "e", "ghi", "l", "hijk", "jk"]
            .iter()
            .map(|s| edges_named(&ts, s))
            .collect(),
    );
    (ts, cond)
}

pub fn edges_named(ts: &TransitionSystem, names: &str) -> IdSet {
    names.chars().map(|c| ts.edge_by_name(&c.to_string()).unwrap()).collect()
}

pub fn automaton_a() -> (TransitionSystem, AcceptanceCondition) {
    let ts = SystemBuilder::new()
        .vertices(["A", "B"])
        .edge("AA", "A", "A")
        .edge("AB", "A", "B")
        .edge("BA", "B", "A")
        .edge("BB", "B", "B")
        .colour("AA", "a")
        .colour("AB", "b")
        .colour("BA", "b")
        .colour("BB", "c")
        .initial("A")
        .build()
        .unwrap();
    (ts, AcceptanceCondition::Muller(family(&[&[0], &[1]])))
}

/// One vertex with a self-loop per colour.
pub fn flower(n: usize) -> TransitionSystem {
    let mut b = SystemBuilder::new().vertex("x").initial("x");
    for c in 0..n {
        b = b.edge(format!("{}", (b'a' + c as u8) as char), "x", "x");
    }
    b.build().unwrap()
}
