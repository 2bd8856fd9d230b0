//! Graphviz output. Trees draw even-priority nodes as ellipses and
//! odd-priority nodes as boxes; the transient ACD tree is a diamond.

use std::fmt::Write;

use crate::acd::Acd;
use crate::condition::AcceptanceCondition;
use crate::system::TransitionSystem;
use crate::zielonka::ZielonkaTree;
use crate::IdSet;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn names(set: &IdSet, name: impl Fn(usize) -> String) -> String {
    set.iter().map(|&c| name(c)).collect::<Vec<_>>().join(",")
}

fn shape(priority: u32) -> &'static str {
    if priority % 2 == 0 {
        "ellipse"
    } else {
        "box"
    }
}

/// The system; edges are labelled by name, plus letter and condition
/// information when present.
pub fn system_dot(ts: &TransitionSystem, cond: Option<&AcceptanceCondition>) -> String {
    let mut s = String::from("digraph system {\n  rankdir=LR;\n");
    for v in 0..ts.num_vertices() {
        let init = if ts.initial().contains(&v) { ", penwidth=2" } else { "" };
        let owner = match ts.owner(v) {
            Some(crate::Player::Adam) => ", shape=box",
            _ => "",
        };
        let _ = writeln!(s, "  v{v} [label={}{init}{owner}];", quote(ts.vertex_name(v)));
    }
    for e in 0..ts.num_edges() {
        let mut label = ts.edge_name(e).to_string();
        if let Some(l) = ts.letter(e) {
            let _ = write!(label, " / {l}");
        }
        let c = ts.colour_of(e);
        match cond {
            Some(AcceptanceCondition::Parity(p)) => {
                let _ = write!(label, " : {}", p[c]);
            }
            _ if ts.has_explicit_colouring() => {
                let _ = write!(label, " : {}", ts.colour_name(c));
            }
            _ => {}
        }
        let _ = writeln!(s, "  v{} -> v{} [label={}];", ts.source(e), ts.target(e), quote(&label));
    }
    s.push_str("}\n");
    s
}

pub fn zielonka_dot(zt: &ZielonkaTree, colour_names: &[String]) -> String {
    let mut s = String::from("digraph zielonka {\n");
    let t = zt.tree();
    for n in 0..t.len() {
        let p = zt.priority(n);
        let label = names(zt.label(n), |c| colour_names[c].clone());
        let _ = writeln!(s, "  n{n} [label={}, shape={}, xlabel=\"{p}\"];", quote(&label), shape(p));
    }
    for n in 0..t.len() {
        for &c in t.children(n) {
            let _ = writeln!(s, "  n{n} -> n{c};");
        }
    }
    s.push_str("}\n");
    s
}

/// One cluster per tree; the transient tree is left out when it has no edges.
pub fn acd_dot(acd: &Acd) -> String {
    let ts = acd.system();
    let mut s = String::from("digraph acd {\n");
    for (i, t) in acd.trees().iter().enumerate() {
        if i == 0 && t.label(0).edges.is_empty() {
            continue;
        }
        let _ = writeln!(s, "  subgraph cluster_t{i} {{\n    label=\"t{i}\";");
        for n in 0..t.tree.len() {
            let l = t.label(n);
            let label = format!(
                "{}\n{}",
                names(&l.edges, |e| ts.edge_name(e).to_string()),
                names(&l.states, |v| ts.vertex_name(v).to_string())
            );
            let sh = if i == 0 { "diamond" } else { shape(t.priority(n)) };
            let _ = writeln!(
                s,
                "    t{i}n{n} [label={}, shape={sh}, xlabel=\"{}\"];",
                quote(&label),
                t.priority(n)
            );
        }
        for n in 0..t.tree.len() {
            for &c in t.tree.children(n) {
                let _ = writeln!(s, "    t{i}n{n} -> t{i}n{c};");
            }
        }
        s.push_str("  }\n");
    }
    s.push_str("}\n");
    s
}
