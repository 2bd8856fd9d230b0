//! The alternating cycle decomposition of a Muller transition system.
//!
//! Tree `0` holds the transient edges; trees `1..` are built on the maximal
//! loops in lexicographic order of their edge sets. A node's children are the
//! maximal subloops of its label with the opposite status.

mod transform;

use std::fmt;

pub use transform::AcdTransform;

use crate::condition::{validate, AcceptanceCondition};
use crate::error::Result;
use crate::loops::{alternating_children, sccs};
use crate::system::TransitionSystem;
use crate::tree::Tree;
use crate::{Caps, EdgeId, IdSet, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Even,
    Odd,
    Ambiguous,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Even => "even",
            Polarity::Odd => "odd",
            Polarity::Ambiguous => "ambiguous",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcdLabel {
    pub edges: IdSet,
    pub states: IdSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcdTree {
    pub tree: Tree<AcdLabel>,
    /// Whether the root label is accepting. Always false for tree `0`.
    pub accepting: bool,
    /// Priority of the root; a node at depth `d` gets `offset + d`.
    pub offset: u32,
}

impl AcdTree {
    pub fn priority(&self, n: usize) -> u32 {
        self.offset + self.tree.node(n).depth as u32
    }

    pub fn is_round(&self, n: usize) -> bool {
        self.priority(n) % 2 == 0
    }

    pub fn height(&self) -> usize {
        self.tree.height()
    }

    pub fn label(&self, n: usize) -> &AcdLabel {
        self.tree.label(n)
    }
}

/// Size and priority summary of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcdStats {
    /// Number of vertices of the parity transformation.
    pub size: usize,
    pub interval: (u32, u32),
    pub polarity: Polarity,
    /// Heights of the trees, starting with tree `0` when it has edges.
    pub heights: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Acd {
    ts: TransitionSystem,
    trees: Vec<AcdTree>,
    vertex_tree: Vec<usize>,
    edge_tree: Vec<usize>,
    polarity: Polarity,
    max_height: usize,
}

impl Acd {
    pub fn build(ts: &TransitionSystem, cond: &AcceptanceCondition, caps: Caps) -> Result<Acd> {
        validate(ts, cond).into_result()?;
        let s = sccs(ts);
        let status = |l: &IdSet| cond.accepts_edges(ts, l);

        let mut vertex_tree = vec![0; ts.num_vertices()];
        let mut edge_tree = vec![0; ts.num_edges()];
        let t0_states: IdSet = (0..ts.num_vertices())
            .filter(|&v| s.vertex_loop[v].is_none())
            .collect();
        let mut trees = vec![AcdTree {
            tree: Tree::build(
                AcdLabel {
                    edges: s.transient.clone(),
                    states: t0_states,
                },
                |_| Ok(Vec::new()),
            )?,
            accepting: false,
            offset: 0,
        }];
        for (k, l) in s.loops.iter().enumerate() {
            for &e in l {
                edge_tree[e] = k + 1;
                vertex_tree[ts.source(e)] = k + 1;
            }
            let tree = Tree::build(
                AcdLabel {
                    edges: l.clone(),
                    states: ts.states_of(l),
                },
                |label| {
                    Ok(alternating_children(ts, status, &label.edges, caps.explore_cap)?
                        .into_iter()
                        .map(|c| AcdLabel {
                            states: ts.states_of(&c),
                            edges: c,
                        })
                        .collect())
                },
            )?;
            trees.push(AcdTree {
                accepting: status(l)?,
                tree,
                offset: 0,
            });
        }

        let max_height = trees[1..].iter().map(|t| t.height()).max().unwrap_or(0);
        let tall: Vec<bool> = trees[1..]
            .iter()
            .filter(|t| t.height() == max_height)
            .map(|t| t.accepting)
            .collect();
        let polarity = if tall.iter().all(|&a| a) {
            Polarity::Even
        } else if tall.iter().all(|&a| !a) {
            Polarity::Odd
        } else {
            Polarity::Ambiguous
        };
        for (i, t) in trees.iter_mut().enumerate() {
            t.offset = match (i, polarity, t.accepting) {
                (0, Polarity::Odd, _) => 1,
                (0, _, _) => 0,
                (_, Polarity::Odd, true) => 2,
                (_, _, true) => 0,
                (_, _, false) => 1,
            };
        }
        Ok(Acd {
            ts: ts.clone(),
            trees,
            vertex_tree,
            edge_tree,
            polarity,
            max_height,
        })
    }

    pub fn system(&self) -> &TransitionSystem {
        &self.ts
    }

    /// All trees; tree `0` is the transient tree.
    pub fn trees(&self) -> &[AcdTree] {
        &self.trees
    }

    pub fn tree(&self, i: usize) -> &AcdTree {
        &self.trees[i]
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn vertex_index(&self, q: VertexId) -> usize {
        self.vertex_tree[q]
    }

    pub fn edge_index(&self, e: EdgeId) -> usize {
        self.edge_tree[e]
    }

    /// Nodes of the tree of `q` whose states contain `q`, in preorder.
    pub fn state_nodes(&self, q: VertexId) -> Vec<usize> {
        let t = &self.trees[self.vertex_tree[q]];
        (0..t.tree.len())
            .filter(|&n| t.label(n).states.contains(&q))
            .collect()
    }

    pub fn in_state_tree(&self, q: VertexId, n: usize) -> bool {
        self.trees[self.vertex_tree[q]].label(n).states.contains(&q)
    }

    /// Children of `n` in the subtree associated with `q`.
    pub fn state_children(&self, q: VertexId, n: usize) -> Vec<usize> {
        let t = &self.trees[self.vertex_tree[q]];
        t.tree
            .children(n)
            .iter()
            .copied()
            .filter(|&c| t.label(c).states.contains(&q))
            .collect()
    }

    /// Leaves of the subtree associated with `q`, left to right.
    pub fn state_branches(&self, q: VertexId) -> Vec<usize> {
        self.state_nodes(q)
            .into_iter()
            .filter(|&n| self.state_children(q, n).is_empty())
            .collect()
    }

    pub fn leftmost_state_branch_below(&self, q: VertexId, mut n: usize) -> usize {
        while let Some(&c) = self.state_children(q, n).first() {
            n = c;
        }
        n
    }

    /// The support of `e` from the branch ending at `leaf` of tree `i`, as a
    /// tree index and node.
    pub fn supp(&self, i: usize, leaf: usize, e: EdgeId) -> (usize, usize) {
        let j = self.vertex_tree[self.ts.target(e)];
        if i != j {
            return (j, 0);
        }
        let t = &self.trees[i];
        let n = t
            .tree
            .path(leaf)
            .into_iter()
            .rev()
            .find(|&n| t.label(n).edges.contains(&e))
            .unwrap_or(0);
        (i, n)
    }

    /// The branch of the subtree of `q` reached after a step from the branch
    /// ending at `leaf` of tree `i` supported at `tau`.
    pub fn nextbranch(&self, q: VertexId, i: usize, leaf: usize, tau: usize) -> usize {
        if self.vertex_tree[q] != i {
            return self.leftmost_state_branch_below(q, tau);
        }
        let kids = self.state_children(q, tau);
        if kids.is_empty() {
            return tau;
        }
        let tree = &self.trees[i].tree;
        let next = match tree.child_towards(tau, leaf) {
            Some(sigma) => {
                let pos = tree.node(sigma).address.last().copied().unwrap_or(0);
                kids.iter()
                    .copied()
                    .find(|&k| tree.node(k).address.last().copied().unwrap_or(0) > pos)
                    .unwrap_or(kids[0])
            }
            None => kids[0],
        };
        self.leftmost_state_branch_below(q, next)
    }

    pub fn stats(&self) -> AcdStats {
        let size = (0..self.ts.num_vertices())
            .map(|q| self.state_branches(q).len())
            .sum();
        let h = self.max_height as u32;
        let interval = match self.polarity {
            Polarity::Even => (0, h.saturating_sub(1)),
            Polarity::Odd => (1, h),
            Polarity::Ambiguous => (0, h),
        };
        let heights = self
            .trees
            .iter()
            .enumerate()
            .filter(|(i, t)| *i > 0 || !t.label(0).edges.is_empty())
            .map(|(_, t)| t.height())
            .collect();
        AcdStats {
            size,
            interval,
            polarity: self.polarity,
            heights,
        }
    }

    pub fn transform(&self) -> Result<AcdTransform> {
        AcdTransform::new(self)
    }
}
