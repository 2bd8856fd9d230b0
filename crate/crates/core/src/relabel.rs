//! Shape classification of an ACD and the Rabin, Streett, parity and weak
//! relabellings it allows.

use std::collections::BTreeSet;

use crate::acd::Acd;
use crate::condition::{AcceptanceCondition, Pair};
use crate::error::{Error, Result};
use crate::loops::sccs;
use crate::system::TransitionSystem;
use crate::{IdSet, VertexId};

/// A node of the subtree of `state` with more than one child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Offender {
    pub state: VertexId,
    pub tree: usize,
    pub node: usize,
    pub round: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcdShapeReport {
    pub rabin: bool,
    pub streett: bool,
    pub parity: bool,
    /// Priority interval of the parity relabelling, when there is one.
    pub parity_interval: Option<(u32, u32)>,
    /// Least `k` for which a weak relabelling with `k` priorities per
    /// component exists.
    pub weak_k: Option<usize>,
    pub offenders: Vec<Offender>,
}

pub fn classify_acd(acd: &Acd) -> AcdShapeReport {
    let ts = acd.system();
    let mut offenders = Vec::new();
    for q in 0..ts.num_vertices() {
        let i = acd.vertex_index(q);
        for n in acd.state_nodes(q) {
            if acd.state_children(q, n).len() > 1 {
                offenders.push(Offender {
                    state: q,
                    tree: i,
                    node: n,
                    round: acd.tree(i).is_round(n),
                });
            }
        }
    }
    let rabin = offenders.iter().all(|o| !o.round);
    let streett = offenders.iter().all(|o| o.round);
    let parity = offenders.is_empty();
    AcdShapeReport {
        rabin,
        streett,
        parity,
        parity_interval: parity.then(|| acd.stats().interval),
        weak_k: parity.then(|| acd.trees()[1..].iter().map(|t| t.height()).max().unwrap_or(1)),
        offenders,
    }
}

/// One pair per node: `E` holds the edges of the node's label outside its
/// children, `F` the edges outside the label. Pairs with empty `E` are dropped.
fn pairs_for(acd: &Acd, round: bool) -> Vec<Pair> {
    let all = acd.system().all_edges();
    let mut pairs = BTreeSet::new();
    for t in &acd.trees()[1..] {
        for n in 0..t.tree.len() {
            if t.is_round(n) != round {
                continue;
            }
            let label = &t.label(n).edges;
            let covered: IdSet = t
                .tree
                .children(n)
                .iter()
                .flat_map(|&c| t.label(c).edges.iter().copied())
                .collect();
            let e: IdSet = label.difference(&covered).copied().collect();
            if !e.is_empty() {
                pairs.insert(Pair {
                    e,
                    f: all.difference(label).copied().collect(),
                });
            }
        }
    }
    pairs.into_iter().collect()
}

/// An equivalent Rabin condition over the edges of the system.
pub fn rabin_from_acd(acd: &Acd) -> Result<AcceptanceCondition> {
    if !classify_acd(acd).rabin {
        return Err(Error::Shape("Rabin"));
    }
    Ok(AcceptanceCondition::Rabin(pairs_for(acd, true)))
}

/// An equivalent Streett condition over the edges of the system.
pub fn streett_from_acd(acd: &Acd) -> Result<AcceptanceCondition> {
    if !classify_acd(acd).streett {
        return Err(Error::Shape("Streett"));
    }
    Ok(AcceptanceCondition::Streett(pairs_for(acd, false)))
}

/// An equivalent parity condition over the edges of the system, read off the
/// transform, which has one vertex per state when the ACD has parity shape.
pub fn parity_relabel(acd: &Acd) -> Result<Vec<u32>> {
    if !classify_acd(acd).parity {
        return Err(Error::Shape("parity"));
    }
    let t = acd.transform()?;
    let mut out = vec![0; acd.system().num_edges()];
    for (k, &e) in t.edge_origin.iter().enumerate() {
        out[e] = t.priorities()[k];
    }
    Ok(out)
}

/// Removes unused priorities strictly between the least and greatest used ones
/// and shifts the least to 0 or 1. Keeps the parity of every loop's minimum.
pub fn compress_priorities(priorities: &[u32]) -> Vec<u32> {
    let mut p = priorities.to_vec();
    loop {
        let used: BTreeSet<u32> = p.iter().copied().collect();
        let (Some(&lo), Some(&hi)) = (used.first(), used.last()) else {
            return p;
        };
        match (lo + 1..hi).find(|d| !used.contains(d)) {
            Some(d) => {
                for x in &mut p {
                    if *x > d {
                        *x -= 2;
                    }
                }
            }
            None => {
                let shift = lo - lo % 2;
                for x in &mut p {
                    *x -= shift;
                }
                return p;
            }
        }
    }
}

/// Whether every strongly connected component uses at most `k` priorities.
pub fn is_weak_k(ts: &TransitionSystem, priorities: &[u32], k: usize) -> bool {
    sccs(ts).loops.iter().all(|l| {
        l.iter().map(|&e| priorities[e]).collect::<BTreeSet<u32>>().len() <= k
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acd::tests::six_state;
    use crate::condition::equivalent_over;
    use crate::system::SystemBuilder;
    use crate::Caps;

    fn automaton_a() -> (TransitionSystem, AcceptanceCondition) {
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
        (ts, AcceptanceCondition::muller([vec![0], vec![1]]))
    }

    #[test]
    fn six_state_is_not_rabin_or_streett() {
        let (ts, cond) = six_state();
        let acd = Acd::build(&ts, &cond, Caps::default()).unwrap();
        let r = classify_acd(&acd);
        assert!(!r.rabin && !r.streett && !r.parity);
        assert_eq!(r.weak_k, None);
        assert!(rabin_from_acd(&acd).is_err());
    }

    #[test]
    fn automaton_a_is_rabin() {
        let (ts, cond) = automaton_a();
        let acd = Acd::build(&ts, &cond, Caps::default()).unwrap();
        let r = classify_acd(&acd);
        assert!(r.rabin && !r.streett);
        let rabin = rabin_from_acd(&acd).unwrap();
        let AcceptanceCondition::Rabin(pairs) = &rabin else { unreachable!() };
        assert_eq!(pairs.len(), 2);
        let plain = ts.clone().with_identity_colouring();
        let explicit = crate::condition::to_explicit_muller(&ts, &cond, Caps::default()).unwrap();
        assert!(equivalent_over(&plain, &rabin, &explicit, Caps::default()).unwrap());
    }

    #[test]
    fn parity_chain_relabels() {
        // One vertex, priorities 1..=3 on three self-loops.
        let ts = SystemBuilder::new()
            .vertex("p")
            .edge("x", "p", "p")
            .edge("y", "p", "p")
            .edge("z", "p", "p")
            .initial("p")
            .build()
            .unwrap();
        let cond = AcceptanceCondition::Parity(vec![1, 2, 3]);
        let acd = Acd::build(&ts, &cond, Caps::default()).unwrap();
        let r = classify_acd(&acd);
        assert!(r.parity && r.rabin && r.streett);
        assert_eq!(r.parity_interval, Some((1, 3)));
        assert_eq!(r.weak_k, Some(3));
        let p = parity_relabel(&acd).unwrap();
        assert!(equivalent_over(&ts, &cond, &AcceptanceCondition::Parity(p.clone()), Caps::default()).unwrap());
        assert!(is_weak_k(&ts, &p, 3) && !is_weak_k(&ts, &p, 2));
        for target in [rabin_from_acd(&acd).unwrap(), streett_from_acd(&acd).unwrap()] {
            assert!(equivalent_over(&ts, &cond, &target, Caps::default()).unwrap());
        }
    }

    #[test]
    fn compression() {
        assert_eq!(compress_priorities(&[0, 2, 3]), vec![0, 0, 1]);
        assert_eq!(compress_priorities(&[1, 2]), vec![1, 2]);
        assert_eq!(compress_priorities(&[3, 5]), vec![1, 1]);
        assert_eq!(compress_priorities(&[4, 9, 6]), vec![0, 1, 0]);
    }

    #[test]
    fn weak_counts() {
        let ts = SystemBuilder::new()
            .vertices(["p", "q"])
            .edge("pp", "p", "p")
            .edge("pq", "p", "q")
            .edge("qq", "q", "q")
            .initial("p")
            .build()
            .unwrap();
        assert!(is_weak_k(&ts, &[0, 5, 1], 1));
        let single = SystemBuilder::new()
            .vertex("p")
            .edge("x", "p", "p")
            .edge("y", "p", "p")
            .initial("p")
            .build()
            .unwrap();
        assert!(is_weak_k(&single, &[0, 1], 2) && !is_weak_k(&single, &[0, 1], 1));
    }
}
