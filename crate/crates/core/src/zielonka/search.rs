//! Exhaustive search over small deterministic parity automata.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::{Colour, IdSet};

/// Upper bound on the number of candidate automata a search may examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_candidates: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_candidates: 200_000_000,
        }
    }
}

/// A transition structure: `targets[q * m + i]` is the successor of `q` on the
/// `i`-th colour, plus its reachable loops with the status they must have.
struct Structure {
    live: Vec<usize>,
    loops: Vec<(u32, bool)>,
}

fn structure(n: usize, colours: &[Colour], targets: &[usize], family: &BTreeSet<IdSet>) -> Structure {
    let m = colours.len();
    let mut reach = 1u32;
    loop {
        let before = reach;
        for q in 0..n {
            if reach >> q & 1 == 1 {
                for i in 0..m {
                    reach |= 1 << targets[q * m + i];
                }
            }
        }
        if reach == before {
            break;
        }
    }
    let live: Vec<usize> = (0..n * m).filter(|t| reach >> (t / m) & 1 == 1).collect();
    let mut loops = Vec::new();
    for sub in 1u32..(1 << live.len()) {
        let mask: u32 = (0..live.len())
            .filter(|j| sub >> j & 1 == 1)
            .map(|j| 1u32 << live[j])
            .sum();
        if is_closed_loop(mask, n, m, targets) {
            let letters: IdSet = (0..n * m)
                .filter(|t| mask >> t & 1 == 1)
                .map(|t| colours[t % m])
                .collect();
            loops.push((mask, family.contains(&letters)));
        }
    }
    Structure { live, loops }
}

fn is_closed_loop(mask: u32, n: usize, m: usize, targets: &[usize]) -> bool {
    let edges: Vec<(usize, usize)> = (0..n * m)
        .filter(|t| mask >> t & 1 == 1)
        .map(|t| (t / m, targets[t]))
        .collect();
    let verts: u32 = edges.iter().fold(0, |acc, &(s, t)| acc | 1 << s | 1 << t);
    let start = edges[0].0;
    let closure = |fwd: bool| {
        let mut r = 1u32 << start;
        loop {
            let before = r;
            for &(s, t) in &edges {
                let (a, b) = if fwd { (s, t) } else { (t, s) };
                if r >> a & 1 == 1 {
                    r |= 1 << b;
                }
            }
            if r == before {
                return r;
            }
        }
    };
    closure(true) == verts && closure(false) == verts
}

fn satisfies(loops: &[(u32, bool)], priorities: &[u32]) -> bool {
    loops.iter().all(|&(mask, accepting)| {
        let mut min = u32::MAX;
        let mut rest = mask;
        while rest != 0 {
            let t = rest.trailing_zeros() as usize;
            min = min.min(priorities[t]);
            rest &= rest - 1;
        }
        (min % 2 == 0) == accepting
    })
}

/// Whether the deterministic complete automaton with initial state `0`,
/// successors `targets` and output priorities `priorities` (both indexed by
/// `q * |colours| + i`) recognises `family`: every reachable loop has an even
/// minimum priority exactly when its set of letters is in the family.
pub fn recognises(
    n: usize,
    colours: &[Colour],
    targets: &[usize],
    priorities: &[u32],
    family: &BTreeSet<IdSet>,
) -> bool {
    satisfies(&structure(n, colours, targets, family).loops, priorities)
}

/// Whether some automaton with `n` states and priorities in `[lo, hi]` recognises `family`.
fn exists(
    n: usize,
    colours: &[Colour],
    family: &BTreeSet<IdSet>,
    lo: u32,
    hi: u32,
    spent: &mut u64,
    budget: SearchBudget,
) -> Result<bool> {
    let m = colours.len();
    let slots = n * m;
    if slots > 31 {
        return Err(over_budget(budget));
    }
    let width = (hi - lo + 1) as u64;
    let mut targets = vec![0usize; slots];
    loop {
        let s = structure(n, colours, &targets, family);
        let combos = width.checked_pow(s.live.len() as u32).ok_or_else(|| over_budget(budget))?;
        *spent += combos;
        if *spent > budget.max_candidates {
            return Err(over_budget(budget));
        }
        let mut prio = vec![lo; slots];
        'assign: loop {
            if satisfies(&s.loops, &prio) {
                return Ok(true);
            }
            for &t in &s.live {
                if prio[t] < hi {
                    prio[t] += 1;
                    continue 'assign;
                }
                prio[t] = lo;
            }
            break;
        }
        // Next transition structure, as a base-n counter.
        let mut i = 0;
        loop {
            if i == slots {
                return Ok(false);
            }
            targets[i] += 1;
            if targets[i] < n {
                break;
            }
            targets[i] = 0;
            i += 1;
        }
    }
}

fn over_budget(budget: SearchBudget) -> Error {
    Error::CapExceeded {
        what: "search",
        detail: format!("more than {} candidate automata", budget.max_candidates),
    }
}

fn check_family(family: &BTreeSet<IdSet>, gamma: &IdSet) -> Result<Vec<Colour>> {
    if gamma.is_empty() {
        return Err(Error::invalid("empty colour set"));
    }
    if family.iter().any(|s| s.is_empty() || !s.is_subset(gamma)) {
        return Err(Error::invalid("family sets must be nonempty subsets of the colours"));
    }
    Ok(gamma.iter().copied().collect())
}

/// The least number of states of a deterministic complete parity automaton with
/// priorities below `k_max` recognising `family`, searching up to `n_max` states.
pub fn min_parity_automaton_size(
    family: &BTreeSet<IdSet>,
    gamma: &IdSet,
    n_max: usize,
    k_max: u32,
    budget: SearchBudget,
) -> Result<Option<usize>> {
    let colours = check_family(family, gamma)?;
    if k_max == 0 {
        return Ok(None);
    }
    let mut spent = 0;
    for n in 1..=n_max {
        if exists(n, &colours, family, 0, k_max - 1, &mut spent, budget)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// The least `c` such that an automaton with at most `n_max` states and
/// priorities in some interval `[μ, μ + c - 1]` recognises `family`, with the
/// values of `μ ∈ {0, 1}` that achieve it. Searches `c ≤ c_max`.
pub fn min_priority_count(
    family: &BTreeSet<IdSet>,
    gamma: &IdSet,
    n_max: usize,
    c_max: u32,
    budget: SearchBudget,
) -> Result<Option<(u32, Vec<u32>)>> {
    let colours = check_family(family, gamma)?;
    let mut spent = 0;
    for c in 1..=c_max {
        let mut mus = Vec::new();
        for mu in 0..2 {
            for n in 1..=n_max {
                if exists(n, &colours, family, mu, mu + c - 1, &mut spent, budget)? {
                    mus.push(mu);
                    break;
                }
            }
        }
        if !mus.is_empty() {
            return Ok(Some((c, mus)));
        }
    }
    Ok(None)
}
