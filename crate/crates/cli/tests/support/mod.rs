//! Random instances and independent oracles shared by the acceptance suite.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use acd_core::{AcceptanceCondition, IdSet, Player, SystemBuilder, TransitionSystem};
use rand::Rng;

pub fn random_family<R: Rng>(rng: &mut R, n: usize) -> BTreeSet<IdSet> {
    (1u32..1 << n)
        .filter(|_| rng.gen_bool(0.5))
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// A system whose vertices are all reachable from `v0` and have successors:
/// a path `v0 -> v1 -> ...`, an edge out of the last vertex, then random
/// extra edges. Edges get one of `colours` colours, or are their own colour
/// when `colours` is zero.
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
    b.build().expect("generated systems are well formed")
}

pub fn random_game<R: Rng>(rng: &mut R, n: usize, m: usize, colours: usize) -> TransitionSystem {
    let ts = random_system(rng, n, m, colours);
    let owners = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Player::Eve } else { Player::Adam })
        .collect();
    ts.with_owners(owners).unwrap()
}

/// A Muller condition over the colours of `ts`: each subset of colours when
/// there are few, otherwise each given loop's colour set, kept with
/// probability one half.
pub fn random_condition<R: Rng>(rng: &mut R, ts: &TransitionSystem, loops: &[IdSet]) -> AcceptanceCondition {
    if ts.num_colours() <= 4 {
        return AcceptanceCondition::Muller(random_family(rng, ts.num_colours()));
    }
    AcceptanceCondition::Muller(
        loops
            .iter()
            .map(|l| ts.colour_image(l))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|_| rng.gen_bool(0.5))
            .collect(),
    )
}

/// Strongly connected components of the graph formed by `edges` (iterative
/// Tarjan). Returns the edge set inside each component that has one.
pub fn components(ts: &TransitionSystem, edges: &[usize]) -> Vec<IdSet> {
    let mut local: HashMap<usize, usize> = HashMap::new();
    for &e in edges {
        for v in [ts.source(e), ts.target(e)] {
            let k = local.len();
            local.entry(v).or_insert(k);
        }
    }
    let n = local.len();
    let mut succ = vec![Vec::new(); n];
    for &e in edges {
        succ[local[&ts.source(e)]].push(local[&ts.target(e)]);
    }
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call = vec![(root, 0usize)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*i) {
                *i += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(u, _)) = call.last() {
                low[u] = low[u].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    let mut out: BTreeMap<usize, IdSet> = BTreeMap::new();
    for &e in edges {
        let (s, t) = (comp[local[&ts.source(e)]], comp[local[&ts.target(e)]]);
        if s == t {
            out.entry(s).or_default().insert(e);
        }
    }
    out.into_values().collect()
}

/// Checks that a parity system `p` over `prios` gives every reachable loop
/// the status of its projection. `base` lists the loops of the projected
/// system with their statuses; each of them must lift to a loop of `p`. A
/// loop of `p` with projection `l` and least priority `d` exists
/// exactly when some component of the edges projecting into `l` with
/// priority at least `d` projects onto `l` and contains priority `d`.
pub fn loop_criterion(p: &TransitionSystem, prios: &[u32], proj: &[usize], base: &[(IdSet, bool)]) -> Result<(), String> {
    let reach = p.reachable();
    let levels: BTreeSet<u32> = prios.iter().copied().collect();
    let live: Vec<usize> = (0..p.num_edges()).filter(|&e| reach.contains(&p.source(e))).collect();
    for (l, accepting) in base {
        let mut found = false;
        for &d in &levels {
            let sub: Vec<usize> = live
                .iter()
                .copied()
                .filter(|&e| l.contains(&proj[e]) && prios[e] >= d)
                .collect();
            for c in components(p, &sub) {
                let image: IdSet = c.iter().map(|&e| proj[e]).collect();
                if &image == l && c.iter().any(|&e| prios[e] == d) {
                    found = true;
                    if (d % 2 == 0) != *accepting {
                        return Err(format!("a loop over {l:?} has least priority {d}"));
                    }
                }
            }
        }
        if !found {
            return Err(format!("no loop projects onto {l:?}"));
        }
    }
    for c in components(p, &live) {
        let image: IdSet = c.iter().map(|&e| proj[e]).collect();
        if !base.iter().any(|(l, _)| *l == image) {
            return Err(format!("a component projects to {image:?}, which is not a loop"));
        }
    }
    Ok(())
}

/// Whether some even shift of `[lo, hi]` fits in `[a, b]`.
pub fn fits(lo: u32, hi: u32, a: u32, b: u32) -> bool {
    (0..=b / 2).any(|t| lo + 2 * t >= a && hi + 2 * t <= b)
}
