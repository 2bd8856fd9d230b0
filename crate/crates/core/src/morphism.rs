//! Morphisms of transition systems and their verification.

use std::collections::{HashMap, HashSet};

use crate::condition::AcceptanceCondition;
use crate::error::Result;
use crate::loops::reachable_loops;
use crate::system::{Run, TransitionSystem};
use crate::{Caps, EdgeId, IdSet, VertexId};

/// A vertex map and an edge map from a source system to a target system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Locality {
    pub surjective: bool,
    pub injective: bool,
    pub bijective: bool,
}

impl Morphism {
    pub fn new(vertex_map: Vec<VertexId>, edge_map: Vec<EdgeId>) -> Self {
        Morphism {
            vertex_map,
            edge_map,
        }
    }

    pub fn identity(ts: &TransitionSystem) -> Self {
        Morphism::new((0..ts.num_vertices()).collect(), (0..ts.num_edges()).collect())
    }

    /// Violated structural clauses; empty when the maps form a morphism.
    pub fn check_structural(&self, src: &TransitionSystem, tgt: &TransitionSystem) -> Vec<String> {
        let mut problems = Vec::new();
        if self.vertex_map.len() != src.num_vertices() || self.edge_map.len() != src.num_edges() {
            problems.push("maps do not cover the source".to_string());
            return problems;
        }
        if let Some(v) = self.vertex_map.iter().position(|&w| w >= tgt.num_vertices()) {
            problems.push(format!("vertex `{}` maps outside the target", src.vertex_name(v)));
            return problems;
        }
        if let Some(e) = self.edge_map.iter().position(|&f| f >= tgt.num_edges()) {
            problems.push(format!("edge `{}` maps outside the target", src.edge_name(e)));
            return problems;
        }
        for &v in src.initial() {
            if !tgt.initial().contains(&self.vertex_map[v]) {
                problems.push(format!("initial vertex `{}` maps to a non-initial vertex", src.vertex_name(v)));
            }
        }
        for e in 0..src.num_edges() {
            let f = self.edge_map[e];
            if self.vertex_map[src.source(e)] != tgt.source(f) {
                problems.push(format!("source of edge `{}` is not preserved", src.edge_name(e)));
            }
            if self.vertex_map[src.target(e)] != tgt.target(f) {
                problems.push(format!("target of edge `{}` is not preserved", src.edge_name(e)));
            }
            if let (Some(a), Some(b)) = (src.letter(e), tgt.letter(f)) {
                if a != b {
                    problems.push(format!("letter of edge `{}` is not preserved", src.edge_name(e)));
                }
            }
        }
        if let (Some(a), Some(b)) = (src.owners(), tgt.owners()) {
            for v in 0..src.num_vertices() {
                if a[v] != b[self.vertex_map[v]] {
                    problems.push(format!("owner of vertex `{}` is not preserved", src.vertex_name(v)));
                }
            }
        }
        problems
    }

    /// Local surjectivity and injectivity on the reachable part of the source.
    pub fn check_local(&self, src: &TransitionSystem, tgt: &TransitionSystem) -> Locality {
        let init_images: HashSet<VertexId> = src.initial().iter().map(|&v| self.vertex_map[v]).collect();
        let mut surjective = tgt.initial().iter().all(|v| init_images.contains(v));
        let mut injective = init_images.len() == src.initial().len();
        for v in src.reachable() {
            let images: Vec<EdgeId> = src.out(v).iter().map(|&e| self.edge_map[e]).collect();
            let distinct: HashSet<EdgeId> = images.iter().copied().collect();
            if distinct.len() != images.len() {
                injective = false;
            }
            if !tgt.out(self.vertex_map[v]).iter().all(|f| distinct.contains(f)) {
                surjective = false;
            }
        }
        Locality {
            surjective,
            injective,
            bijective: surjective && injective,
        }
    }

    pub fn map_edges(&self, edges: &IdSet) -> IdSet {
        edges.iter().map(|&e| self.edge_map[e]).collect()
    }

    /// Whether every reachable loop of the source has the status of its image.
    pub fn check_acceptance_preserving(
        &self,
        src: &TransitionSystem,
        src_cond: &AcceptanceCondition,
        tgt: &TransitionSystem,
        tgt_cond: &AcceptanceCondition,
        caps: Caps,
    ) -> Result<bool> {
        for l in reachable_loops(src, caps)? {
            if src_cond.accepts_edges(src, &l)? != tgt_cond.accepts_edges(tgt, &self.map_edges(&l))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn map_run(&self, run: &Run) -> Run {
        Run::new(
            run.prefix.iter().map(|&e| self.edge_map[e]).collect(),
            run.cycle.iter().map(|&e| self.edge_map[e]).collect(),
        )
    }

    /// The run of the source starting at `from` whose image is `run`, for a
    /// locally bijective morphism. `None` if some edge has no preimage.
    pub fn lift_run(&self, src: &TransitionSystem, from: VertexId, run: &Run) -> Option<Run> {
        let lift_edge = |v: VertexId, f: EdgeId| src.out(v).iter().copied().find(|&e| self.edge_map[e] == f);
        let mut v = from;
        let mut prefix = Vec::new();
        for &f in &run.prefix {
            let e = lift_edge(v, f)?;
            prefix.push(e);
            v = src.target(e);
        }
        if run.cycle.is_empty() {
            return None;
        }
        let mut first_copy: HashMap<VertexId, usize> = HashMap::new();
        let mut copies: Vec<Vec<EdgeId>> = Vec::new();
        while !first_copy.contains_key(&v) {
            first_copy.insert(v, copies.len());
            let mut copy = Vec::with_capacity(run.cycle.len());
            for &f in &run.cycle {
                let e = lift_edge(v, f)?;
                copy.push(e);
                v = src.target(e);
            }
            copies.push(copy);
        }
        let s = first_copy[&v];
        prefix.extend(copies[..s].iter().flatten());
        Some(Run::new(prefix, copies[s..].concat()))
    }
}
