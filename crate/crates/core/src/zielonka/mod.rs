//! Zielonka trees of Muller conditions and the parity automata built from them.

mod automaton;
mod search;

use std::collections::BTreeSet;

pub use automaton::ZtAutomaton;
pub use search::{min_parity_automaton_size, min_priority_count, recognises, SearchBudget};

use crate::error::{Error, Result};
use crate::loops::maximal_flipped;
use crate::tree::Tree;
use crate::{Colour, IdSet};

/// Which of the tree shapes a Zielonka tree (or ACD subtree) has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub rabin: bool,
    pub streett: bool,
    pub parity: bool,
}

/// Closure properties of a family of nonempty colour sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Closure {
    /// `A ∪ B ∈ F` for all `A, B ∈ F`.
    pub union_closed: bool,
    /// `A ∩ B ∈ F` for all `A, B ∈ F` with a nonempty intersection.
    pub intersection_closed: bool,
    /// The union of two rejecting nonempty subsets of the colour set is rejecting.
    pub rejecting_union_closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZielonkaTree {
    gamma: IdSet,
    family: BTreeSet<IdSet>,
    tree: Tree<IdSet>,
    even: bool,
}

impl ZielonkaTree {
    pub fn build(family: &BTreeSet<IdSet>, gamma: &IdSet, explore_cap: usize) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::invalid("empty colour set"));
        }
        if family.contains(&IdSet::new()) {
            return Err(Error::invalid("empty set in family"));
        }
        if let Some(s) = family.iter().find(|s| !s.is_subset(gamma)) {
            let c = s.difference(gamma).next().copied().unwrap_or_default();
            return Err(Error::UnknownColour(c));
        }
        let status = |s: &IdSet| Ok(family.contains(s));
        let tree = Tree::build(gamma.clone(), |label| {
            maximal_flipped(label, status, remove_one, explore_cap)
        })?;
        Ok(ZielonkaTree {
            gamma: gamma.clone(),
            family: family.clone(),
            even: family.contains(gamma),
            tree,
        })
    }

    pub fn gamma(&self) -> &IdSet {
        &self.gamma
    }

    pub fn family(&self) -> &BTreeSet<IdSet> {
        &self.family
    }

    pub fn tree(&self) -> &Tree<IdSet> {
        &self.tree
    }

    /// True when the root is accepting.
    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn label(&self, n: usize) -> &IdSet {
        self.tree.label(n)
    }

    pub fn priority(&self, n: usize) -> u32 {
        (self.tree.node(n).depth + usize::from(!self.even)) as u32
    }

    pub fn height(&self) -> usize {
        self.tree.height()
    }

    /// Leaves in left-to-right order; branch `b` ends at `branches()[b]`.
    pub fn branches(&self) -> Vec<usize> {
        self.tree.leaves()
    }

    /// Deepest node on the branch ending at `leaf` whose label contains `a`.
    pub fn supp(&self, leaf: usize, a: Colour) -> usize {
        *self
            .tree
            .path(leaf)
            .iter()
            .rev()
            .find(|&&n| self.label(n).contains(&a))
            .unwrap_or(&0)
    }

    /// The leaf reached from the branch ending at `leaf` after a step supported
    /// at `tau`: the leftmost leaf below the cyclic right sibling of the child of
    /// `tau` on the branch.
    pub fn nextbranch(&self, leaf: usize, tau: usize) -> usize {
        let kids = self.tree.children(tau);
        if kids.is_empty() {
            return leaf;
        }
        let sigma = self.tree.child_towards(tau, leaf).expect("tau lies on the branch");
        let pos = kids.iter().position(|&k| k == sigma).expect("child of tau");
        self.tree.leftmost_leaf_below(kids[(pos + 1) % kids.len()])
    }

    pub fn shape(&self) -> Shape {
        tree_shape(self.tree.len(), |n| self.tree.children(n).len(), |n| self.priority(n))
    }

    /// The smallest interval `[μ, η]` of priorities of a parity automaton for
    /// this condition.
    pub fn optimal_interval(&self) -> (u32, u32) {
        let h = self.height() as u32;
        if self.even {
            (0, h - 1)
        } else {
            (1, h)
        }
    }

    pub fn automaton(&self) -> ZtAutomaton {
        ZtAutomaton::new(self)
    }
}

pub(crate) fn tree_shape(
    len: usize,
    children: impl Fn(usize) -> usize,
    priority: impl Fn(usize) -> u32,
) -> Shape {
    let mut s = Shape {
        rabin: true,
        streett: true,
        parity: true,
    };
    for n in 0..len {
        if children(n) > 1 {
            s.parity = false;
            if priority(n) % 2 == 0 {
                s.rabin = false;
            } else {
                s.streett = false;
            }
        }
    }
    s
}

fn remove_one(s: &IdSet) -> Vec<IdSet> {
    if s.len() < 2 {
        return Vec::new();
    }
    s.iter()
        .map(|c| {
            let mut t = s.clone();
            t.remove(c);
            t
        })
        .collect()
}

/// Pairwise closure checks over `family` and the nonempty subsets of `gamma`.
pub fn closure_oracle(family: &BTreeSet<IdSet>, gamma: &IdSet) -> Closure {
    let sets: Vec<&IdSet> = family.iter().collect();
    let mut union_closed = true;
    let mut intersection_closed = true;
    for a in &sets {
        for b in &sets {
            if !family.contains(&(*a | *b)) {
                union_closed = false;
            }
            let i = *a & *b;
            if !i.is_empty() && !family.contains(&i) {
                intersection_closed = false;
            }
        }
    }
    let colours: Vec<Colour> = gamma.iter().copied().collect();
    let rejecting: Vec<IdSet> = (1u64..1 << colours.len())
        .map(|m| {
            (0..colours.len())
                .filter(|i| m >> i & 1 == 1)
                .map(|i| colours[i])
                .collect::<IdSet>()
        })
        .filter(|s| !family.contains(s))
        .collect();
    let rejecting_union_closed = rejecting
        .iter()
        .all(|a| rejecting.iter().all(|b| !family.contains(&(a | b))));
    Closure {
        union_closed,
        intersection_closed,
        rejecting_union_closed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(sets: &[&[usize]]) -> BTreeSet<IdSet> {
        sets.iter().map(|s| s.iter().copied().collect()).collect()
    }

    // a=0, b=1, c=2, d=3
    pub(crate) fn f2() -> BTreeSet<IdSet> {
        fam(&[
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
        ])
    }

    #[test]
    fn f1_tree() {
        let t = ZielonkaTree::build(&fam(&[&[0], &[1]]), &IdSet::from([0, 1, 2]), 1000).unwrap();
        assert!(!t.is_even());
        assert_eq!(t.tree().len(), 3);
        let labels: Vec<&IdSet> = (0..3).map(|n| t.label(n)).collect();
        assert_eq!(labels, vec![&IdSet::from([0, 1, 2]), &IdSet::from([0]), &IdSet::from([1])]);
        assert_eq!((t.priority(0), t.priority(1), t.priority(2)), (1, 2, 2));
        assert_eq!(t.optimal_interval(), (1, 2));
        let s = t.shape();
        assert!(s.rabin && !s.streett && !s.parity);
        // Supp(α, b) is the root.
        assert_eq!(t.supp(1, 1), 0);
    }

    #[test]
    fn f2_tree_and_navigation() {
        let t = ZielonkaTree::build(&f2(), &IdSet::from([0, 1, 2, 3]), 1000).unwrap();
        assert!(t.is_even());
        assert_eq!(t.tree().len(), 7);
        let by = |a: &[usize]| t.tree().by_address(a).unwrap();
        assert_eq!(t.label(by(&[0])), &IdSet::from([0, 1, 2]));
        assert_eq!(t.label(by(&[1])), &IdSet::from([2, 3]));
        assert_eq!(t.label(by(&[0, 0])), &IdSet::from([0, 1]));
        assert_eq!(t.label(by(&[0, 1])), &IdSet::from([1, 2]));
        assert_eq!(t.label(by(&[0, 1, 0])), &IdSet::from([2]));
        assert_eq!(t.label(by(&[1, 0])), &IdSet::from([3]));
        assert_eq!(t.priority(by(&[0, 1, 0])), 3);
        assert_eq!(t.optimal_interval(), (0, 3));
        let (alpha, beta, gamma) = (by(&[0, 0]), by(&[0, 1, 0]), by(&[1, 0]));
        assert_eq!(t.branches(), vec![alpha, beta, gamma]);
        assert_eq!(t.supp(alpha, 2), by(&[0]));
        assert_eq!(t.nextbranch(beta, 0), gamma);
        assert_eq!(t.nextbranch(beta, by(&[0])), alpha);
        assert_eq!(t.nextbranch(beta, beta), beta);
    }

    #[test]
    fn single_node_tree() {
        let t = ZielonkaTree::build(&fam(&[&[0]]), &IdSet::from([0]), 10).unwrap();
        assert_eq!(t.tree().len(), 1);
        assert_eq!(t.priority(0), 0);
        assert_eq!(t.optimal_interval(), (0, 0));
    }

    #[test]
    fn parity_chain_tree() {
        // Colours 1..4 with priority equal to the colour, stored as ids 0..3.
        let gamma = IdSet::from([0, 1, 2, 3]);
        let family: BTreeSet<IdSet> = (1u64..16)
            .map(|m| (0..4).filter(|i| m >> i & 1 == 1).collect::<IdSet>())
            .filter(|s| (s.iter().min().unwrap() + 1) % 2 == 0)
            .collect();
        let t = ZielonkaTree::build(&family, &gamma, 1000).unwrap();
        assert!(t.shape().parity);
        let labels: Vec<IdSet> = (0..4).map(|n| t.label(n).clone()).collect();
        assert_eq!(
            labels,
            vec![
                IdSet::from([0, 1, 2, 3]),
                IdSet::from([1, 2, 3]),
                IdSet::from([2, 3]),
                IdSet::from([3])
            ]
        );
        assert_eq!(t.optimal_interval(), (1, 4));
    }

    #[test]
    fn closure_examples() {
        let c = closure_oracle(&fam(&[&[0], &[1]]), &IdSet::from([0, 1, 2]));
        assert!(!c.union_closed && c.intersection_closed && c.rejecting_union_closed);
        let up: BTreeSet<IdSet> = fam(&[&[0], &[0, 1], &[0, 2], &[0, 1, 2]]);
        assert!(closure_oracle(&up, &IdSet::from([0, 1, 2])).union_closed);
        assert!(!closure_oracle(&f2(), &IdSet::from([0, 1, 2, 3])).union_closed);
        // Closed under nonempty intersection, yet not Rabin shaped.
        let odd = fam(&[&[0], &[1, 2]]);
        let c = closure_oracle(&odd, &IdSet::from([0, 1, 2]));
        assert!(c.intersection_closed && !c.rejecting_union_closed);
        let t = ZielonkaTree::build(&odd, &IdSet::from([0, 1, 2]), 100).unwrap();
        assert!(!t.shape().rabin);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ZielonkaTree::build(&fam(&[]), &IdSet::new(), 10).is_err());
        assert!(ZielonkaTree::build(&fam(&[&[]]), &IdSet::from([0]), 10).is_err());
        assert_eq!(
            ZielonkaTree::build(&fam(&[&[4]]), &IdSet::from([0]), 10),
            Err(Error::UnknownColour(4))
        );
    }
}
