//! Parity and Muller games on transition systems with owned vertices.
//!
//! Priorities sit on edges. The solver works on an arena with one node per
//! vertex and one per edge, so that edge priorities become node priorities.

use std::collections::BTreeSet;

use crate::acd::{Acd, AcdTransform};
use crate::condition::AcceptanceCondition;
use crate::error::{Error, Result};
use crate::loops::split_into_loops;
use crate::system::{Player, TransitionSystem};
use crate::{Caps, EdgeId, IdSet, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParitySolution {
    pub winner: Vec<Player>,
    /// For each vertex, the edge its owner plays when the owner wins there.
    pub strategy: Vec<Option<EdgeId>>,
}

impl ParitySolution {
    pub fn region(&self, p: Player) -> IdSet {
        (0..self.winner.len()).filter(|&v| self.winner[v] == p).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MullerSolution {
    pub winner: Vec<Player>,
    pub transform: AcdTransform,
    pub parity: ParitySolution,
}

struct Arena {
    owner: Vec<Player>,
    priority: Vec<u32>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Arena {
    fn new(ts: &TransitionSystem, owners: &[Player], priorities: &[u32]) -> Arena {
        let n = ts.num_vertices();
        let neutral = priorities.iter().max().copied().unwrap_or(0) + 2;
        let size = n + ts.num_edges();
        let mut owner = owners.to_vec();
        let mut priority = vec![neutral; n];
        let mut succ = vec![Vec::new(); size];
        for e in 0..ts.num_edges() {
            owner.push(Player::Eve);
            priority.push(priorities[e]);
            succ[ts.source(e)].push(n + e);
            succ[n + e].push(ts.target(e));
        }
        let mut pred = vec![Vec::new(); size];
        for (u, s) in succ.iter().enumerate() {
            for &w in s {
                pred[w].push(u);
            }
        }
        Arena {
            owner,
            priority,
            succ,
            pred,
        }
    }

    /// Attractor of `target` for `p` inside `game`, recording `p`'s choices.
    fn attractor(&self, game: &[bool], target: &[usize], p: Player, strat: &mut [Option<usize>]) -> Vec<bool> {
        let mut inside = vec![false; game.len()];
        let mut count: Vec<usize> = (0..game.len())
            .map(|u| self.succ[u].iter().filter(|&&w| game[w]).count())
            .collect();
        let mut queue: Vec<usize> = Vec::new();
        for &t in target {
            if !inside[t] {
                inside[t] = true;
                queue.push(t);
            }
        }
        while let Some(w) = queue.pop() {
            for &u in &self.pred[w] {
                if !game[u] || inside[u] {
                    continue;
                }
                if self.owner[u] == p {
                    inside[u] = true;
                    strat[u] = Some(w);
                    queue.push(u);
                } else {
                    count[u] -= 1;
                    if count[u] == 0 {
                        inside[u] = true;
                        queue.push(u);
                    }
                }
            }
        }
        inside
    }

    /// Recursive Zielonka algorithm with min-even parity. Returns the winner of
    /// each node of `game` and fills winning choices into `strat`.
    fn solve(&self, game: &[bool], strat: &mut [Option<usize>]) -> Vec<Option<Player>> {
        let nodes: Vec<usize> = (0..game.len()).filter(|&u| game[u]).collect();
        let mut win = vec![None; game.len()];
        let Some(p) = nodes.iter().map(|&u| self.priority[u]).min() else {
            return win;
        };
        let alpha = Player::of_priority(p);
        let top: Vec<usize> = nodes.iter().copied().filter(|&u| self.priority[u] == p).collect();
        let mut attr_strat = vec![None; game.len()];
        let a = self.attractor(game, &top, alpha, &mut attr_strat);
        let rest: Vec<bool> = (0..game.len()).map(|u| game[u] && !a[u]).collect();
        let mut sub_strat = vec![None; game.len()];
        let sub = self.solve(&rest, &mut sub_strat);
        let opp: Vec<usize> = nodes
            .iter()
            .copied()
            .filter(|&u| sub[u] == Some(alpha.opponent()))
            .collect();
        if opp.is_empty() {
            for &u in &nodes {
                win[u] = Some(alpha);
                if self.owner[u] != alpha {
                    continue;
                }
                strat[u] = if rest[u] {
                    sub_strat[u]
                } else if self.priority[u] == p {
                    self.succ[u].iter().copied().find(|&w| game[w])
                } else {
                    attr_strat[u]
                };
            }
            return win;
        }
        let beta = alpha.opponent();
        let mut b_strat = vec![None; game.len()];
        let b = self.attractor(game, &opp, beta, &mut b_strat);
        let rest2: Vec<bool> = (0..game.len()).map(|u| game[u] && !b[u]).collect();
        let mut sub2_strat = vec![None; game.len()];
        let sub2 = self.solve(&rest2, &mut sub2_strat);
        for &u in &nodes {
            if b[u] {
                win[u] = Some(beta);
                if self.owner[u] == beta {
                    strat[u] = if sub[u] == Some(beta) { sub_strat[u] } else { b_strat[u] };
                }
            } else {
                win[u] = sub2[u];
                if sub2[u] == Some(self.owner[u]) {
                    strat[u] = sub2_strat[u];
                }
            }
        }
        win
    }
}

fn owners_of(ts: &TransitionSystem) -> Result<&[Player]> {
    ts.owners().ok_or_else(|| Error::invalid("game vertices carry no owners"))
}

/// Solves the parity game on `ts` with edge priorities `priorities`.
pub fn solve_parity_game(ts: &TransitionSystem, priorities: &[u32]) -> Result<ParitySolution> {
    let owners = owners_of(ts)?;
    if priorities.len() != ts.num_edges() {
        return Err(Error::invalid("priority list does not cover every edge"));
    }
    if let Some(v) = (0..ts.num_vertices()).find(|&v| ts.out(v).is_empty()) {
        return Err(Error::invalid(format!("dead-end vertex `{}`", ts.vertex_name(v))));
    }
    let arena = Arena::new(ts, owners, priorities);
    let n = ts.num_vertices();
    let all = vec![true; arena.owner.len()];
    let mut strat = vec![None; all.len()];
    let win = arena.solve(&all, &mut strat);
    let winner: Vec<Player> = (0..n).map(|v| win[v].expect("every node is won")).collect();
    let strategy = (0..n)
        .map(|v| {
            (winner[v] == owners[v])
                .then(|| strat[v].map(|node| node - n))
                .flatten()
        })
        .collect();
    Ok(ParitySolution { winner, strategy })
}

/// Checks that each player's strategy keeps plays inside its region and wins
/// every play there: no loop of the strategy-restricted region has a minimum
/// priority of the wrong parity.
pub fn verify_strategy(ts: &TransitionSystem, priorities: &[u32], sol: &ParitySolution) -> bool {
    let Some(owners) = ts.owners() else {
        return false;
    };
    for p in [Player::Eve, Player::Adam] {
        let region = sol.region(p);
        let mut edges = IdSet::new();
        for &v in &region {
            if owners[v] == p {
                match sol.strategy[v] {
                    Some(e) if ts.source(e) == v && region.contains(&ts.target(e)) => {
                        edges.insert(e);
                    }
                    _ => return false,
                }
            } else {
                for &e in ts.out(v) {
                    if !region.contains(&ts.target(e)) {
                        return false;
                    }
                    edges.insert(e);
                }
            }
        }
        let wrong: BTreeSet<u32> = edges
            .iter()
            .map(|&e| priorities[e])
            .filter(|&d| Player::of_priority(d) != p)
            .collect();
        for d in wrong {
            let above: IdSet = edges.iter().copied().filter(|&e| priorities[e] >= d).collect();
            if split_into_loops(ts, &above)
                .iter()
                .any(|l| l.iter().any(|&e| priorities[e] == d))
            {
                return false;
            }
        }
    }
    true
}

/// Solves a Muller game through its ACD parity transform. A vertex is won by
/// the winner of its copy on the leftmost branch.
pub fn solve_muller_game(ts: &TransitionSystem, cond: &AcceptanceCondition, caps: Caps) -> Result<MullerSolution> {
    owners_of(ts)?;
    let transform = Acd::build(ts, cond, caps)?.transform()?;
    let parity = solve_parity_game(&transform.system, transform.priorities())?;
    let mut winner = vec![None; ts.num_vertices()];
    for (v, &q) in transform.vertex_origin.iter().enumerate() {
        winner[q].get_or_insert(parity.winner[v]);
    }
    Ok(MullerSolution {
        winner: winner.into_iter().map(|w| w.expect("every vertex has a copy")).collect(),
        transform,
        parity,
    })
}

/// Eve's winning region by enumerating all her positional strategies, as an
/// oracle for small games. Fails if there are more than `cap` strategies.
pub fn brute_force_winners(ts: &TransitionSystem, priorities: &[u32], cap: u64) -> Result<Vec<Player>> {
    let owners = owners_of(ts)?;
    let eve: Vec<VertexId> = (0..ts.num_vertices()).filter(|&v| owners[v] == Player::Eve).collect();
    let total = eve
        .iter()
        .fold(1u64, |acc, &v| acc.saturating_mul(ts.out(v).len() as u64));
    if total > cap {
        return Err(Error::CapExceeded {
            what: "strategy",
            detail: format!("{total} positional strategies, cap is {cap}"),
        });
    }
    let mut won = vec![false; ts.num_vertices()];
    let mut choice = vec![0usize; eve.len()];
    loop {
        let mut edges = IdSet::new();
        for v in 0..ts.num_vertices() {
            match eve.iter().position(|&u| u == v) {
                Some(k) => {
                    edges.insert(ts.out(v)[choice[k]]);
                }
                None => edges.extend(ts.out(v).iter().copied()),
            }
        }
        // Loops Adam can force with a minimum odd priority.
        let mut bad_states = IdSet::new();
        for d in edges.iter().map(|&e| priorities[e]).filter(|d| d % 2 == 1).collect::<BTreeSet<_>>() {
            let above: IdSet = edges.iter().copied().filter(|&e| priorities[e] >= d).collect();
            for l in split_into_loops(ts, &above) {
                if l.iter().any(|&e| priorities[e] == d) {
                    bad_states.extend(l.iter().map(|&e| ts.source(e)));
                }
            }
        }
        for v in 0..ts.num_vertices() {
            if won[v] {
                continue;
            }
            let mut seen = IdSet::from([v]);
            let mut stack = vec![v];
            let mut ok = true;
            while let Some(u) = stack.pop() {
                if bad_states.contains(&u) {
                    ok = false;
                    break;
                }
                for &e in ts.out(u) {
                    if edges.contains(&e) && seen.insert(ts.target(e)) {
                        stack.push(ts.target(e));
                    }
                }
            }
            won[v] = ok;
        }
        let mut k = 0;
        loop {
            if k == eve.len() {
                return Ok(won
                    .into_iter()
                    .map(|w| if w { Player::Eve } else { Player::Adam })
                    .collect());
            }
            choice[k] += 1;
            if choice[k] < ts.out(eve[k]).len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}
