//! Strongly connected components, loops and alternating subloops.
//!
//! A loop is a nonempty edge set whose induced subgraph is strongly connected.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::system::TransitionSystem;
use crate::{canonical_cmp, Caps, EdgeId, IdSet, VertexId};

/// Maximal loops of a system plus the edges lying in no loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sccs {
    /// Edge sets of the maximal loops, in lexicographic order.
    pub loops: Vec<IdSet>,
    pub transient: IdSet,
    /// Index into `loops` of the component containing each vertex, if any.
    pub vertex_loop: Vec<Option<usize>>,
}

pub fn sccs(ts: &TransitionSystem) -> Sccs {
    let all = ts.all_edges();
    let loops = split_into_loops(ts, &all);
    let mut transient = all;
    let mut vertex_loop = vec![None; ts.num_vertices()];
    for (i, l) in loops.iter().enumerate() {
        for e in l {
            transient.remove(e);
            vertex_loop[ts.source(*e)] = Some(i);
        }
    }
    Sccs {
        loops,
        transient,
        vertex_loop,
    }
}

/// Splits the subgraph formed by `edges` into its strongly connected
/// components and returns the edge sets of those that contain an edge.
pub fn split_into_loops(ts: &TransitionSystem, edges: &IdSet) -> Vec<IdSet> {
    let mut local: HashMap<VertexId, usize> = HashMap::new();
    let mut verts: Vec<VertexId> = Vec::new();
    for &e in edges {
        for v in [ts.source(e), ts.target(e)] {
            local.entry(v).or_insert_with(|| {
                verts.push(v);
                verts.len() - 1
            });
        }
    }
    let n = verts.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &e in edges {
        adj[local[&ts.source(e)]].push(local[&ts.target(e)]);
    }
    let comp = tarjan(&adj);
    let mut groups: HashMap<usize, IdSet> = HashMap::new();
    for &e in edges {
        let (s, t) = (comp[local[&ts.source(e)]], comp[local[&ts.target(e)]]);
        if s == t {
            groups.entry(s).or_default().insert(e);
        }
    }
    let mut out: Vec<IdSet> = groups.into_values().collect();
    out.sort();
    out
}

/// Iterative Tarjan; returns a component id per vertex.
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
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
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
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
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
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
    }
    comp
}

pub fn is_loop(ts: &TransitionSystem, edges: &IdSet) -> bool {
    if edges.is_empty() || edges.iter().any(|&e| e >= ts.num_edges()) {
        return false;
    }
    let parts = split_into_loops(ts, edges);
    parts.len() == 1 && parts[0].len() == edges.len()
}

/// Inclusion-maximal sets reachable from `start` by repeated `step`s whose
/// status differs from the status of `start`.
///
/// Exploration only continues through sets sharing the status of `start`. Every
/// maximal flipped set is found provided that, for any flipped `m` strictly
/// below a same-status set `x`, some step from `x` leads to a set containing
/// `m`. Both uses in this crate (removing one colour; removing one edge and
/// splitting into loops) have this property.
pub fn maximal_flipped<S, N>(
    start: &IdSet,
    mut status: S,
    mut step: N,
    explore_cap: usize,
) -> Result<Vec<IdSet>>
where
    S: FnMut(&IdSet) -> Result<bool>,
    N: FnMut(&IdSet) -> Vec<IdSet>,
{
    let base = status(start)?;
    let mut visited: HashSet<IdSet> = HashSet::new();
    visited.insert(start.clone());
    let mut work = vec![start.clone()];
    let mut flipped: Vec<IdSet> = Vec::new();
    while let Some(x) = work.pop() {
        for y in step(&x) {
            if visited.contains(&y) {
                continue;
            }
            if visited.len() >= explore_cap {
                return Err(Error::CapExceeded {
                    what: "exploration",
                    detail: format!("more than {explore_cap} sets below a set of size {}", start.len()),
                });
            }
            visited.insert(y.clone());
            if status(&y)? != base {
                flipped.push(y);
            } else {
                work.push(y);
            }
        }
    }
    let mut maximal: Vec<IdSet> = flipped
        .iter()
        .filter(|m| !flipped.iter().any(|o| o.len() > m.len() && m.is_subset(o)))
        .cloned()
        .collect();
    maximal.sort_by(canonical_cmp);
    Ok(maximal)
}

/// Loops obtained from `l` by deleting one edge.
pub fn one_edge_smaller(ts: &TransitionSystem, l: &IdSet) -> Vec<IdSet> {
    let mut out = Vec::new();
    for &e in l {
        let mut rest = l.clone();
        rest.remove(&e);
        out.extend(split_into_loops(ts, &rest));
    }
    out
}

/// The inclusion-maximal subloops of `l` whose status differs from that of `l`,
/// in canonical order.
pub fn alternating_children<S>(
    ts: &TransitionSystem,
    status: S,
    l: &IdSet,
    explore_cap: usize,
) -> Result<Vec<IdSet>>
where
    S: FnMut(&IdSet) -> Result<bool>,
{
    maximal_flipped(l, status, |x| one_edge_smaller(ts, x), explore_cap)
}

/// Every loop contained in a reachable strongly connected component, by subset
/// enumeration. Fails if such a component has more than `cap` edges.
pub fn enumerate_reachable_loops(ts: &TransitionSystem, cap: usize) -> Result<Vec<IdSet>> {
    let reach = ts.reachable();
    let mut out = Vec::new();
    for comp in sccs(ts).loops {
        if !reach.contains(&ts.source(*comp.iter().next().expect("nonempty"))) {
            continue;
        }
        out.extend(enumerate_subloops(ts, &comp, cap)?);
    }
    out.sort();
    Ok(out)
}

/// All loops contained in `within`, by enumerating its subsets.
pub fn enumerate_subloops(ts: &TransitionSystem, within: &IdSet, cap: usize) -> Result<Vec<IdSet>> {
    let mut out = Vec::new();
    for comp in split_into_loops(ts, within) {
        let m = comp.len();
        if m > cap || m > 30 {
            let names: Vec<&str> = comp.iter().take(4).map(|&e| ts.edge_name(e)).collect();
            return Err(Error::CapExceeded {
                what: "loop",
                detail: format!(
                    "component with edges {}{} has {m} edges, cap is {cap}",
                    names.join(","),
                    if m > 4 { ",..." } else { "" }
                ),
            });
        }
        let edges: Vec<EdgeId> = comp.iter().copied().collect();
        let mut vid: HashMap<VertexId, usize> = HashMap::new();
        for &e in &edges {
            for v in [ts.source(e), ts.target(e)] {
                let k = vid.len();
                vid.entry(v).or_insert(k);
            }
        }
        let src: Vec<usize> = edges.iter().map(|&e| vid[&ts.source(e)]).collect();
        let tgt: Vec<usize> = edges.iter().map(|&e| vid[&ts.target(e)]).collect();
        for mask in 1u32..(1u32 << m) {
            if mask_is_loop(mask, &src, &tgt) {
                out.push((0..m).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect());
            }
        }
    }
    out.sort();
    Ok(out)
}

fn mask_is_loop(mask: u32, src: &[usize], tgt: &[usize]) -> bool {
    let mut verts = 0u64;
    let mut first = usize::MAX;
    for i in 0..src.len() {
        if mask >> i & 1 == 1 {
            verts |= 1 << src[i] | 1 << tgt[i];
            first = first.min(src[i]);
        }
    }
    let closure = |forward: bool| {
        let mut reach = 1u64 << first;
        loop {
            let before = reach;
            for i in 0..src.len() {
                if mask >> i & 1 == 1 {
                    let (a, b) = if forward { (src[i], tgt[i]) } else { (tgt[i], src[i]) };
                    if reach >> a & 1 == 1 {
                        reach |= 1 << b;
                    }
                }
            }
            if reach == before {
                return reach;
            }
        }
    };
    closure(true) == verts && closure(false) == verts
}

/// Every loop contained in `within`, found by deleting edges and splitting
/// into components. Visits each loop once; fails after `explore_cap` loops.
pub fn enumerate_subloops_by_decomposition(
    ts: &TransitionSystem,
    within: &IdSet,
    explore_cap: usize,
) -> Result<Vec<IdSet>> {
    let mut seen: HashSet<IdSet> = HashSet::new();
    let mut work: Vec<IdSet> = split_into_loops(ts, within);
    for l in &work {
        seen.insert(l.clone());
    }
    while let Some(l) = work.pop() {
        for s in one_edge_smaller(ts, &l) {
            if seen.contains(&s) {
                continue;
            }
            if seen.len() >= explore_cap {
                return Err(Error::CapExceeded {
                    what: "exploration",
                    detail: format!("more than {explore_cap} loops"),
                });
            }
            seen.insert(s.clone());
            work.push(s);
        }
    }
    let mut out: Vec<IdSet> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Every reachable loop. Components with at most `loop_cap` edges are
/// enumerated by subsets, larger ones by decomposition within `explore_cap`.
pub fn reachable_loops(ts: &TransitionSystem, caps: Caps) -> Result<Vec<IdSet>> {
    let reach = ts.reachable();
    let mut out = Vec::new();
    for comp in sccs(ts).loops {
        if !reach.contains(&ts.source(*comp.iter().next().expect("nonempty"))) {
            continue;
        }
        if comp.len() <= caps.loop_cap.min(30) {
            out.extend(enumerate_subloops(ts, &comp, caps.loop_cap)?);
        } else {
            out.extend(enumerate_subloops_by_decomposition(ts, &comp, caps.explore_cap)?);
        }
    }
    out.sort();
    Ok(out)
}

/// A nonempty set of accessible states of a deterministic automaton that is
/// closed under the letters in `x` and strongly connected by words over `x`.
pub fn accessible_x_scc(automaton: &TransitionSystem, x: &BTreeSet<String>) -> IdSet {
    let x_reach = |q: VertexId| -> IdSet {
        let mut seen = IdSet::from([q]);
        let mut stack = vec![q];
        while let Some(v) = stack.pop() {
            for &e in automaton.out(v) {
                let in_x = automaton.letter(e).map(|l| x.contains(l)).unwrap_or(false);
                if in_x && seen.insert(automaton.target(e)) {
                    stack.push(automaton.target(e));
                }
            }
        }
        seen
    };
    let mut current = automaton.reachable();
    'shrink: loop {
        for &q in &current {
            let r = x_reach(q);
            if r != current {
                current = r;
                continue 'shrink;
            }
        }
        return current;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::SystemBuilder;

    fn six_state() -> TransitionSystem {
        SystemBuilder::new()
            .vertices(["q0", "q1", "q2", "q3", "q4", "q5"])
            .edge("a", "q0", "q1")
            .edge("b", "q0", "q3")
            .edge("c", "q1", "q2")
            .edge("d", "q2", "q1")
            .edge("e", "q2", "q2")
            .edge("f", "q1", "q4")
            .edge("g", "q3", "q3")
            .edge("h", "q3", "q4")
            .edge("i", "q4", "q3")
            .edge("j", "q4", "q5")
            .edge("k", "q5", "q4")
            .edge("l", "q5", "q5")
            .initial("q0")
            .build()
            .unwrap()
    }

    fn ids(ts: &TransitionSystem, names: &str) -> IdSet {
        names.chars().map(|c| ts.edge_by_name(&c.to_string()).unwrap()).collect()
    }

    #[test]
    fn six_state_components() {
        let ts = six_state();
        let s = sccs(&ts);
        assert_eq!(s.loops, vec![ids(&ts, "cde"), ids(&ts, "ghijkl")]);
        assert_eq!(s.transient, ids(&ts, "abf"));
        assert_eq!(s.vertex_loop, vec![None, Some(0), Some(0), Some(1), Some(1), Some(1)]);
    }

    #[test]
    fn loop_predicate() {
        let ts = six_state();
        assert!(is_loop(&ts, &ids(&ts, "cd")));
        assert!(!is_loop(&ts, &ids(&ts, "c")));
        assert!(!is_loop(&ts, &IdSet::new()));
        assert!(!is_loop(&ts, &ids(&ts, "ge")));
    }

    #[test]
    fn enumerate_six_state_first_component() {
        let ts = six_state();
        let loops = enumerate_subloops(&ts, &ids(&ts, "cde"), 20).unwrap();
        assert_eq!(loops, vec![ids(&ts, "cd"), ids(&ts, "cde"), ids(&ts, "e")]);
    }

    #[test]
    fn decomposition_matches_subsets_on_six_state() {
        let ts = six_state();
        let all = ts.all_edges();
        assert_eq!(
            enumerate_subloops(&ts, &all, 20).unwrap(),
            enumerate_subloops_by_decomposition(&ts, &all, 10_000).unwrap()
        );
    }

    #[test]
    fn cap_is_enforced() {
        let ts = six_state();
        let err = enumerate_reachable_loops(&ts, 5).unwrap_err();
        assert!(err.is_cap());
    }

    #[test]
    fn maximal_flipped_sets() {
        // Status: accepting iff the set is {0} or {1}.
        let start = IdSet::from([0, 1, 2]);
        let status = |s: &IdSet| Ok(*s == IdSet::from([0]) || *s == IdSet::from([1]));
        let step = |s: &IdSet| {
            s.iter()
                .filter(|_| s.len() > 1)
                .map(|c| {
                    let mut t = s.clone();
                    t.remove(c);
                    t
                })
                .collect()
        };
        let kids = maximal_flipped(&start, status, step, 1000).unwrap();
        assert_eq!(kids, vec![IdSet::from([0]), IdSet::from([1])]);
    }
}
