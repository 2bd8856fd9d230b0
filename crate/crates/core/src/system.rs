//! Transition system graphs, runs and the product with a deterministic automaton.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::condition::AcceptanceCondition;
use crate::error::{Error, Result};
use crate::{Colour, EdgeId, IdSet, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Eve,
    Adam,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eve => Player::Adam,
            Player::Adam => Player::Eve,
        }
    }

    /// The player favoured by a priority under the min-even convention.
    pub fn of_priority(priority: u32) -> Player {
        if priority % 2 == 0 {
            Player::Eve
        } else {
            Player::Adam
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Eve => "eve",
            Player::Adam => "adam",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Colouring {
    names: Vec<String>,
    of_edge: Vec<Colour>,
}

/// A directed multigraph with initial vertices and optional labels.
///
/// Colours default to the edges themselves; an explicit colouring maps every
/// edge to a named colour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    edges: Vec<Edge>,
    initial: Vec<VertexId>,
    owners: Option<Vec<Player>>,
    letters: Option<Vec<String>>,
    colouring: Option<Colouring>,
    out: Vec<Vec<EdgeId>>,
    incoming: Vec<Vec<EdgeId>>,
}

impl TransitionSystem {
    /// Builds a system directly from indexed parts. Names must be unique and
    /// endpoints in range; the builder offers a name-based interface.
    pub fn from_indexed(
        vertex_names: Vec<String>,
        edges: Vec<(String, VertexId, VertexId)>,
        initial: Vec<VertexId>,
    ) -> Result<Self> {
        let n = vertex_names.len();
        check_unique("vertex", &vertex_names)?;
        let mut edge_names = Vec::with_capacity(edges.len());
        let mut es = Vec::with_capacity(edges.len());
        for (name, s, t) in edges {
            if s >= n || t >= n {
                return Err(Error::Undeclared {
                    kind: "vertex",
                    id: format!("#{}", s.max(t)),
                });
            }
            edge_names.push(name);
            es.push(Edge {
                source: s,
                target: t,
            });
        }
        check_unique("edge", &edge_names)?;
        let mut initial: Vec<VertexId> = initial;
        initial.sort_unstable();
        initial.dedup();
        if let Some(&v) = initial.iter().find(|&&v| v >= n) {
            return Err(Error::Undeclared {
                kind: "vertex",
                id: format!("#{v}"),
            });
        }
        let mut out = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (i, e) in es.iter().enumerate() {
            out[e.source].push(i);
            incoming[e.target].push(i);
        }
        Ok(TransitionSystem {
            vertex_names,
            edge_names,
            edges: es,
            initial,
            owners: None,
            letters: None,
            colouring: None,
            out,
            incoming,
        })
    }

    pub fn with_owners(mut self, owners: Vec<Player>) -> Result<Self> {
        if owners.len() != self.num_vertices() {
            return Err(Error::invalid("owner list does not cover every vertex"));
        }
        self.owners = Some(owners);
        Ok(self)
    }

    pub fn with_letters(mut self, letters: Vec<String>) -> Result<Self> {
        if letters.len() != self.num_edges() {
            return Err(Error::invalid("letter list does not cover every edge"));
        }
        self.letters = Some(letters);
        Ok(self)
    }

    pub fn with_colouring(mut self, names: Vec<String>, of_edge: Vec<Colour>) -> Result<Self> {
        if of_edge.len() != self.num_edges() {
            return Err(Error::invalid("colouring does not cover every edge"));
        }
        if let Some(&c) = of_edge.iter().find(|&&c| c >= names.len()) {
            return Err(Error::UnknownColour(c));
        }
        check_unique("colour", &names)?;
        self.colouring = Some(Colouring { names, of_edge });
        Ok(self)
    }

    /// Drops any explicit colouring so that colours are the edges again.
    pub fn with_identity_colouring(mut self) -> Self {
        self.colouring = None;
        self
    }

    pub fn with_initial(mut self, initial: Vec<VertexId>) -> Self {
        self.initial = initial;
        self.initial.sort_unstable();
        self.initial.dedup();
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e].source
    }

    pub fn target(&self, e: EdgeId) -> VertexId {
        self.edges[e].target
    }

    pub fn out(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v]
    }

    pub fn incoming(&self, v: VertexId) -> &[EdgeId] {
        &self.incoming[v]
    }

    pub fn initial(&self) -> &[VertexId] {
        &self.initial
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e]
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_names.iter().position(|n| n == name)
    }

    pub fn owners(&self) -> Option<&[Player]> {
        self.owners.as_deref()
    }

    pub fn owner(&self, v: VertexId) -> Option<Player> {
        self.owners.as_ref().map(|o| o[v])
    }

    pub fn letters(&self) -> Option<&[String]> {
        self.letters.as_deref()
    }

    pub fn letter(&self, e: EdgeId) -> Option<&str> {
        self.letters.as_ref().map(|l| l[e].as_str())
    }

    pub fn has_explicit_colouring(&self) -> bool {
        self.colouring.is_some()
    }

    pub fn num_colours(&self) -> usize {
        match &self.colouring {
            Some(c) => c.names.len(),
            None => self.num_edges(),
        }
    }

    pub fn colour_of(&self, e: EdgeId) -> Colour {
        match &self.colouring {
            Some(c) => c.of_edge[e],
            None => e,
        }
    }

    pub fn colour_name(&self, c: Colour) -> &str {
        match &self.colouring {
            Some(col) => &col.names[c],
            None => &self.edge_names[c],
        }
    }

    pub fn colour_names(&self) -> &[String] {
        match &self.colouring {
            Some(c) => &c.names,
            None => &self.edge_names,
        }
    }

    pub fn colour_by_name(&self, name: &str) -> Option<Colour> {
        self.colour_names().iter().position(|n| n == name)
    }

    pub fn colour_image(&self, edges: &IdSet) -> IdSet {
        edges.iter().map(|&e| self.colour_of(e)).collect()
    }

    pub fn all_edges(&self) -> IdSet {
        (0..self.num_edges()).collect()
    }

    /// Vertices that are the source of some edge of `edges`.
    pub fn states_of(&self, edges: &IdSet) -> IdSet {
        edges.iter().map(|&e| self.source(e)).collect()
    }

    /// Vertices reachable from the initial set.
    pub fn reachable(&self) -> IdSet {
        self.reachable_from(self.initial.iter().copied())
    }

    pub fn reachable_from(&self, start: impl IntoIterator<Item = VertexId>) -> IdSet {
        let mut seen = vec![false; self.num_vertices()];
        let mut stack: Vec<VertexId> = Vec::new();
        for v in start {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
        while let Some(v) = stack.pop() {
            for &e in &self.out[v] {
                let t = self.edges[e].target;
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        (0..self.num_vertices()).filter(|&v| seen[v]).collect()
    }

    /// Checks the deterministic-automaton shape: one initial vertex, and at most
    /// one outgoing edge per letter. With `alphabet`, also completeness over it.
    pub fn check_deterministic(&self, alphabet: Option<&[String]>) -> Result<()> {
        let letters = self
            .letters
            .as_ref()
            .ok_or_else(|| Error::NotDeterministic("edges carry no letters".into()))?;
        if self.initial.len() != 1 {
            return Err(Error::NotDeterministic(format!(
                "{} initial states",
                self.initial.len()
            )));
        }
        for v in 0..self.num_vertices() {
            let mut seen = BTreeSet::new();
            for &e in &self.out[v] {
                if !seen.insert(letters[e].as_str()) {
                    return Err(Error::NotDeterministic(format!(
                        "state `{}` has two `{}` transitions",
                        self.vertex_names[v], letters[e]
                    )));
                }
            }
            if let Some(alpha) = alphabet {
                if let Some(missing) = alpha.iter().find(|a| !seen.contains(a.as_str())) {
                    return Err(Error::NotDeterministic(format!(
                        "state `{}` has no `{}` transition",
                        self.vertex_names[v], missing
                    )));
                }
            }
        }
        Ok(())
    }

    /// The edge leaving `v` with letter `letter`, if any.
    pub fn step(&self, v: VertexId, letter: &str) -> Option<EdgeId> {
        let letters = self.letters.as_ref()?;
        self.out[v].iter().copied().find(|&e| letters[e] == letter)
    }

    /// Restricts the system to `vertices`, keeping the edges between them.
    /// Returns the restricted system together with the old ids of its vertices
    /// and edges.
    pub fn restrict(&self, vertices: &IdSet) -> (TransitionSystem, Vec<VertexId>, Vec<EdgeId>) {
        let old_v: Vec<VertexId> = vertices.iter().copied().collect();
        let mut new_of = vec![usize::MAX; self.num_vertices()];
        for (i, &v) in old_v.iter().enumerate() {
            new_of[v] = i;
        }
        let old_e: Vec<EdgeId> = (0..self.num_edges())
            .filter(|&e| vertices.contains(&self.source(e)) && vertices.contains(&self.target(e)))
            .collect();
        let edges = old_e
            .iter()
            .map(|&e| {
                (
                    self.edge_names[e].clone(),
                    new_of[self.source(e)],
                    new_of[self.target(e)],
                )
            })
            .collect();
        let initial = self
            .initial
            .iter()
            .filter(|v| vertices.contains(v))
            .map(|&v| new_of[v])
            .collect();
        let names = old_v.iter().map(|&v| self.vertex_names[v].clone()).collect();
        let mut ts = TransitionSystem::from_indexed(names, edges, initial)
            .expect("restriction of a valid system");
        if let Some(o) = &self.owners {
            ts.owners = Some(old_v.iter().map(|&v| o[v]).collect());
        }
        if let Some(l) = &self.letters {
            ts.letters = Some(old_e.iter().map(|&e| l[e].clone()).collect());
        }
        ts.colouring = Some(Colouring {
            names: self.colour_names().to_vec(),
            of_edge: old_e.iter().map(|&e| self.colour_of(e)).collect(),
        });
        (ts, old_v, old_e)
    }
}

fn check_unique(kind: &'static str, names: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::Duplicate {
                kind,
                id: n.clone(),
            });
        }
    }
    Ok(())
}

/// Name-based construction of a [`TransitionSystem`]. Vertices and edges keep
/// their insertion order.
#[derive(Debug, Clone, Default)]
pub struct SystemBuilder {
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
    initial: Vec<String>,
    owners: Vec<(String, Player)>,
    letters: Vec<(String, String)>,
    colours: Vec<(String, String)>,
    colour_universe: Vec<String>,
}

impl SystemBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: impl Into<String>) -> Self {
        self.vertices.push(name.into());
        self
    }

    pub fn vertices<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.vertices.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn edge(
        mut self,
        name: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        self.edges.push((name.into(), source.into(), target.into()));
        self
    }

    pub fn initial(mut self, name: impl Into<String>) -> Self {
        self.initial.push(name.into());
        self
    }

    pub fn owner(mut self, vertex: impl Into<String>, player: Player) -> Self {
        self.owners.push((vertex.into(), player));
        self
    }

    pub fn letter(mut self, edge: impl Into<String>, letter: impl Into<String>) -> Self {
        self.letters.push((edge.into(), letter.into()));
        self
    }

    pub fn colour(mut self, edge: impl Into<String>, colour: impl Into<String>) -> Self {
        self.colours.push((edge.into(), colour.into()));
        self
    }

    /// Declares colours that may not label any edge but belong to the colour set.
    pub fn colour_universe<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.colour_universe
            .extend(names.into_iter().map(Into::into));
        self
    }

    pub fn build(self) -> Result<TransitionSystem> {
        let vindex: HashMap<&str, VertexId> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let lookup = |name: &str| {
            vindex.get(name).copied().ok_or_else(|| Error::Undeclared {
                kind: "vertex",
                id: name.to_string(),
            })
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for (name, s, t) in &self.edges {
            edges.push((name.clone(), lookup(s)?, lookup(t)?));
        }
        let initial = self
            .initial
            .iter()
            .map(|v| lookup(v))
            .collect::<Result<Vec<_>>>()?;
        let mut ts = TransitionSystem::from_indexed(self.vertices.clone(), edges, initial)?;

        let eindex: HashMap<&str, EdgeId> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, (e, _, _))| (e.as_str(), i))
            .collect();
        let elookup = |name: &str| {
            eindex.get(name).copied().ok_or_else(|| Error::Undeclared {
                kind: "edge",
                id: name.to_string(),
            })
        };

        if !self.owners.is_empty() {
            let mut owners: Vec<Option<Player>> = vec![None; ts.num_vertices()];
            for (v, p) in &self.owners {
                owners[lookup(v)?] = Some(*p);
            }
            let owners = owners
                .into_iter()
                .enumerate()
                .map(|(v, p)| {
                    p.ok_or_else(|| {
                        Error::invalid(format!("vertex `{}` has no owner", self.vertices[v]))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            ts = ts.with_owners(owners)?;
        }
        if !self.letters.is_empty() {
            let mut letters: Vec<Option<String>> = vec![None; ts.num_edges()];
            for (e, l) in &self.letters {
                letters[elookup(e)?] = Some(l.clone());
            }
            let letters = letters
                .into_iter()
                .enumerate()
                .map(|(e, l)| {
                    l.ok_or_else(|| {
                        Error::invalid(format!("edge `{}` has no letter", self.edges[e].0))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            ts = ts.with_letters(letters)?;
        }
        if !self.colours.is_empty() || !self.colour_universe.is_empty() {
            let mut per_edge: Vec<Option<String>> = vec![None; ts.num_edges()];
            for (e, c) in &self.colours {
                per_edge[elookup(e)?] = Some(c.clone());
            }
            let mut names: BTreeSet<String> = self.colour_universe.iter().cloned().collect();
            names.extend(self.colours.iter().map(|(_, c)| c.clone()));
            let names: Vec<String> = names.into_iter().collect();
            let cindex: BTreeMap<&str, Colour> = names
                .iter()
                .enumerate()
                .map(|(i, c)| (c.as_str(), i))
                .collect();
            let of_edge = per_edge
                .iter()
                .enumerate()
                .map(|(e, c)| match c {
                    Some(c) => Ok(cindex[c.as_str()]),
                    None => Err(Error::invalid(format!(
                        "edge `{}` has no colour",
                        self.edges[e].0
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            ts = ts.with_colouring(names, of_edge)?;
        }
        Ok(ts)
    }
}

/// An ultimately periodic run: `prefix` followed by `cycle` repeated forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Run {
    pub prefix: Vec<EdgeId>,
    pub cycle: Vec<EdgeId>,
}

impl Run {
    pub fn new(prefix: Vec<EdgeId>, cycle: Vec<EdgeId>) -> Self {
        Run { prefix, cycle }
    }

    pub fn start(&self, ts: &TransitionSystem) -> Option<VertexId> {
        self.prefix
            .first()
            .or_else(|| self.cycle.first())
            .map(|&e| ts.source(e))
    }

    /// Checks edge adjacency, and that the run starts in an initial vertex when
    /// `from_initial` is set.
    pub fn is_valid(&self, ts: &TransitionSystem, from_initial: bool) -> bool {
        if self.cycle.is_empty() {
            return false;
        }
        if self
            .prefix
            .iter()
            .chain(&self.cycle)
            .any(|&e| e >= ts.num_edges())
        {
            return false;
        }
        let all: Vec<EdgeId> = self
            .prefix
            .iter()
            .chain(&self.cycle)
            .chain(self.cycle.first())
            .copied()
            .collect();
        let adjacent = all.windows(2).all(|w| ts.target(w[0]) == ts.source(w[1]));
        let start_ok = !from_initial
            || self
                .start(ts)
                .map(|v| ts.initial().contains(&v))
                .unwrap_or(false);
        adjacent && start_ok
    }

    /// Edges seen infinitely often.
    pub fn inf(&self) -> IdSet {
        self.cycle.iter().copied().collect()
    }

    /// Normal form: primitive cycle and shortest prefix. Two runs denote the
    /// same infinite edge sequence iff their canonical forms are equal.
    pub fn canonical(&self) -> Run {
        let mut cycle = self.cycle.clone();
        let n = cycle.len();
        for d in 1..=n {
            if n % d == 0 && (d..n).all(|i| cycle[i] == cycle[i - d]) {
                cycle.truncate(d);
                break;
            }
        }
        let mut prefix = self.prefix.clone();
        while let Some(&last) = prefix.last() {
            if Some(&last) == cycle.last() {
                prefix.pop();
                cycle.rotate_right(1);
            } else {
                break;
            }
        }
        Run { prefix, cycle }
    }
}

/// The product of `ts` with a deterministic automaton reading its colours.
///
/// Vertices are pairs `(v, q)` and edges pairs `(e, q)`; the edge `(e, q)` moves
/// the automaton along its unique transition from `q` labelled by the colour of
/// `e` and takes that transition's colour. The result is coloured with the
/// automaton's colours and carries the automaton's acceptance condition.
pub fn compose(
    automaton: &TransitionSystem,
    automaton_condition: &AcceptanceCondition,
    ts: &TransitionSystem,
) -> Result<(TransitionSystem, AcceptanceCondition)> {
    automaton.check_deterministic(Some(ts.colour_names()))?;
    let letters = automaton.letters().expect("checked above");
    let nq = automaton.num_vertices();
    let q0 = automaton.initial()[0];
    let mut names = Vec::with_capacity(ts.num_vertices() * nq);
    for v in 0..ts.num_vertices() {
        for q in 0..nq {
            names.push(format!("{},{}", ts.vertex_name(v), automaton.vertex_name(q)));
        }
    }
    let mut edges = Vec::with_capacity(ts.num_edges() * nq);
    let mut colours = Vec::with_capacity(ts.num_edges() * nq);
    for e in 0..ts.num_edges() {
        let letter = ts.colour_name(ts.colour_of(e));
        for q in 0..nq {
            let ae = automaton.out(q)
                .iter()
                .copied()
                .find(|&ae| letters[ae] == letter)
                .expect("complete automaton");
            edges.push((
                format!("{},{}", ts.edge_name(e), automaton.vertex_name(q)),
                ts.source(e) * nq + q,
                ts.target(e) * nq + automaton.target(ae),
            ));
            colours.push(automaton.colour_of(ae));
        }
    }
    let initial = ts.initial().iter().map(|&v| v * nq + q0).collect();
    let mut product = TransitionSystem::from_indexed(names, edges, initial)?
        .with_colouring(automaton.colour_names().to_vec(), colours)?;
    if let Some(o) = ts.owners() {
        product = product.with_owners(
            (0..ts.num_vertices())
                .flat_map(|v| std::iter::repeat(o[v]).take(nq))
                .collect(),
        )?;
    }
    if let Some(l) = ts.letters() {
        product = product.with_letters(
            (0..ts.num_edges())
                .flat_map(|e| std::iter::repeat(l[e].clone()).take(nq))
                .collect(),
        )?;
    }
    Ok((product, automaton_condition.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> TransitionSystem {
        SystemBuilder::new()
            .vertices(["p", "q"])
            .edge("x", "p", "q")
            .edge("y", "q", "p")
            .edge("z", "q", "q")
            .initial("p")
            .build()
            .unwrap()
    }

    #[test]
    fn builder_rejects_undeclared_vertex() {
        let err = SystemBuilder::new()
            .vertex("p")
            .edge("x", "p", "r")
            .initial("p")
            .build()
            .unwrap_err();
        assert_eq!(
            err,
            Error::Undeclared {
                kind: "vertex",
                id: "r".into()
            }
        );
    }

    #[test]
    fn builder_rejects_duplicate_edge() {
        let err = SystemBuilder::new()
            .vertex("p")
            .edge("x", "p", "p")
            .edge("x", "p", "p")
            .initial("p")
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::Duplicate { kind: "edge", .. }));
    }

    #[test]
    fn run_validity_and_canonical_form() {
        let ts = two_cycle();
        let r = Run::new(vec![0], vec![2, 1, 0, 2, 1, 0]);
        assert!(r.is_valid(&ts, true));
        let c = r.canonical();
        assert_eq!(c, Run::new(vec![], vec![0, 2, 1]));
        assert!(!Run::new(vec![], vec![2]).is_valid(&ts, true));
        assert!(Run::new(vec![], vec![2]).is_valid(&ts, false));
        assert!(!Run::new(vec![0], vec![1]).is_valid(&ts, true));
    }

    #[test]
    fn reachable_and_restrict() {
        let ts = SystemBuilder::new()
            .vertices(["a", "b", "c"])
            .edge("ab", "a", "b")
            .edge("bb", "b", "b")
            .edge("cc", "c", "c")
            .initial("a")
            .build()
            .unwrap();
        assert_eq!(ts.reachable(), IdSet::from([0, 1]));
        let (sub, vs, es) = ts.restrict(&IdSet::from([0, 1]));
        assert_eq!(sub.num_vertices(), 2);
        assert_eq!(vs, vec![0, 1]);
        assert_eq!(es, vec![0, 1]);
    }

    #[test]
    fn determinism_check() {
        let a = SystemBuilder::new()
            .vertex("s")
            .edge("s0", "s", "s")
            .edge("s1", "s", "s")
            .letter("s0", "0")
            .letter("s1", "1")
            .initial("s")
            .build()
            .unwrap();
        assert!(a.check_deterministic(Some(&["0".into(), "1".into()])).is_ok());
        assert!(a.check_deterministic(Some(&["2".into()])).is_err());
    }
}
