use std::collections::HashMap;

use super::Acd;
use crate::condition::AcceptanceCondition;
use crate::error::Result;
use crate::morphism::Morphism;
use crate::system::TransitionSystem;
use crate::tree::format_address;
use crate::{EdgeId, VertexId};

/// The parity transition system obtained from an ACD, with maps back to the
/// original system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcdTransform {
    pub system: TransitionSystem,
    /// Parity condition on the edges of `system`.
    pub condition: AcceptanceCondition,
    pub vertex_origin: Vec<VertexId>,
    pub edge_origin: Vec<EdgeId>,
    /// Tree index and branch leaf of each vertex.
    pub vertex_branch: Vec<(usize, usize)>,
}

impl AcdTransform {
    pub(super) fn new(acd: &Acd) -> Result<Self> {
        let ts = acd.system();
        let mut names = Vec::new();
        let mut vertex_origin = Vec::new();
        let mut vertex_branch = Vec::new();
        let mut id_of: HashMap<(VertexId, usize), usize> = HashMap::new();
        let tag = |i: usize, leaf: usize| {
            format!("@t{}{}", i, format_address(&acd.tree(i).tree.node(leaf).address))
        };
        for q in 0..ts.num_vertices() {
            let i = acd.vertex_index(q);
            for leaf in acd.state_branches(q) {
                id_of.insert((q, leaf), names.len());
                names.push(format!("{}{}", ts.vertex_name(q), tag(i, leaf)));
                vertex_origin.push(q);
                vertex_branch.push((i, leaf));
            }
        }
        let mut edges = Vec::new();
        let mut edge_origin = Vec::new();
        let mut priorities = Vec::new();
        for (v, &(i, leaf)) in vertex_branch.iter().enumerate() {
            let q = vertex_origin[v];
            for &e in ts.out(q) {
                let (j, tau) = acd.supp(i, leaf, e);
                let q2 = ts.target(e);
                let leaf2 = acd.nextbranch(q2, i, leaf, tau);
                edges.push((format!("{}{}", ts.edge_name(e), tag(i, leaf)), v, id_of[&(q2, leaf2)]));
                edge_origin.push(e);
                priorities.push(acd.tree(j).priority(tau));
            }
        }
        let initial = ts
            .initial()
            .iter()
            .map(|&q| id_of[&(q, acd.leftmost_state_branch_below(q, 0))])
            .collect();
        let mut system = TransitionSystem::from_indexed(names, edges, initial)?;
        if let Some(o) = ts.owners() {
            system = system.with_owners(vertex_origin.iter().map(|&q| o[q]).collect())?;
        }
        if let Some(l) = ts.letters() {
            system = system.with_letters(edge_origin.iter().map(|&e| l[e].clone()).collect())?;
        }
        Ok(AcdTransform {
            system,
            condition: AcceptanceCondition::Parity(priorities),
            vertex_origin,
            edge_origin,
            vertex_branch,
        })
    }

    /// The projection onto the original system.
    pub fn morphism(&self) -> Morphism {
        Morphism::new(self.vertex_origin.clone(), self.edge_origin.clone())
    }

    pub fn priorities(&self) -> &[u32] {
        match &self.condition {
            AcceptanceCondition::Parity(p) => p,
            _ => unreachable!("transform condition is parity"),
        }
    }
}
