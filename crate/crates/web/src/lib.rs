//! Browser bindings: render Zielonka trees and alternating cycle
//! decompositions as SVG and summarise the parity transform.
//!
//! Every entry point takes the TOML document text used by the command line
//! tool.

use std::collections::BTreeSet;
use std::fmt::Write;

use acd_core::format::Document;
use acd_core::relabel::classify_acd;
use acd_core::{Acd, AcceptanceCondition, Caps, IdSet, ZielonkaTree};
use wasm_bindgen::prelude::*;

const MAX_COLOURS: usize = 16;
const X_STEP: f64 = 120.0;
const Y_STEP: f64 = 70.0;
const MARGIN: f64 = 40.0;

/// A node to draw: text lines, whether it is accepting, and its children.
struct Drawn {
    lines: Vec<String>,
    accepting: bool,
    children: Vec<usize>,
}

fn sorted_names(set: &IdSet, name: impl Fn(usize) -> String) -> String {
    let mut v: Vec<String> = set.iter().map(|&i| name(i)).collect();
    v.sort();
    format!("{{{}}}", v.join(","))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Lays out a forest with leaves on consecutive columns and each parent
/// centred over its children. Nodes are in preorder per tree.
fn layout(trees: &[Vec<Drawn>]) -> String {
    let mut placed: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut column = 0.0;
    let mut depth_max = 0usize;
    for t in trees {
        let mut pos = vec![(0.0, 0.0); t.len()];
        fn place(t: &[Drawn], n: usize, depth: usize, column: &mut f64, pos: &mut [(f64, f64)], dmax: &mut usize) {
            *dmax = (*dmax).max(depth);
            if t[n].children.is_empty() {
                pos[n] = (*column, depth as f64);
                *column += 1.0;
                return;
            }
            for &c in &t[n].children {
                place(t, c, depth + 1, column, pos, dmax);
            }
            let xs: Vec<f64> = t[n].children.iter().map(|&c| pos[c].0).collect();
            pos[n] = ((xs[0] + xs[xs.len() - 1]) / 2.0, depth as f64);
        }
        if !t.is_empty() {
            place(t, 0, 0, &mut column, &mut pos, &mut depth_max);
            column += 0.5;
        }
        placed.push(pos);
    }
    let width = 2.0 * MARGIN + column.max(1.0) * X_STEP;
    let height = 2.0 * MARGIN + (depth_max as f64 + 1.0) * Y_STEP;
    let at = |(x, y): (f64, f64)| (MARGIN + x * X_STEP + X_STEP / 2.0, MARGIN + y * Y_STEP);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="11">"#
    );
    for (t, pos) in trees.iter().zip(&placed) {
        for (n, d) in t.iter().enumerate() {
            let (x1, y1) = at(pos[n]);
            for &c in &d.children {
                let (x2, y2) = at(pos[c]);
                let _ = writeln!(svg, r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#888"/>"##);
            }
        }
        for (n, d) in t.iter().enumerate() {
            let (x, y) = at(pos[n]);
            let w = d.lines.iter().map(|l| l.chars().count()).max().unwrap_or(1) as f64 * 6.8 + 12.0;
            let h = d.lines.len() as f64 * 13.0 + 8.0;
            if d.accepting {
                let _ = writeln!(
                    svg,
                    r##"<ellipse cx="{x}" cy="{y}" rx="{}" ry="{}" fill="#e8f4e8" stroke="#264"/>"##,
                    w / 2.0 + 4.0,
                    h / 2.0 + 2.0
                );
            } else {
                let _ = writeln!(
                    svg,
                    r##"<rect x="{}" y="{}" width="{w}" height="{h}" fill="#f8e8e8" stroke="#624"/>"##,
                    x - w / 2.0,
                    y - h / 2.0
                );
            }
            for (i, line) in d.lines.iter().enumerate() {
                let ty = y - h / 2.0 + 15.0 + i as f64 * 13.0;
                let _ = writeln!(svg, r#"<text x="{x}" y="{ty}" text-anchor="middle">{}</text>"#, escape(line));
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}

fn family_of(cond: &AcceptanceCondition, n: usize) -> Result<BTreeSet<IdSet>, String> {
    if let AcceptanceCondition::Muller(f) = cond {
        return Ok(f.clone());
    }
    if n > MAX_COLOURS {
        return Err(format!("{n} colours is too many to enumerate"));
    }
    let mut family = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let s: IdSet = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if cond.accepts(&s).map_err(|e| e.to_string())? {
            family.insert(s);
        }
    }
    Ok(family)
}

fn load_acd(text: &str) -> Result<Acd, String> {
    let doc = Document::parse(text).map_err(|e| e.to_string())?;
    let ts = doc.system().map_err(|e| e.to_string())?;
    let cond = doc.condition(ts.colour_names()).map_err(|e| e.to_string())?;
    Acd::build(&ts, &cond, Caps::default()).map_err(|e| e.to_string())
}

/// The Zielonka tree of a document's condition as SVG.
pub fn zielonka_svg_text(text: &str) -> Result<String, String> {
    let doc = Document::parse(text).map_err(|e| e.to_string())?;
    let colours = doc.colour_names().map_err(|e| e.to_string())?;
    let cond = doc.condition(&colours).map_err(|e| e.to_string())?;
    let gamma: IdSet = (0..colours.len()).collect();
    let zt = ZielonkaTree::build(&family_of(&cond, colours.len())?, &gamma, Caps::default().explore_cap)
        .map_err(|e| e.to_string())?;
    let t = zt.tree();
    let nodes = (0..t.len())
        .map(|n| Drawn {
            lines: vec![
                sorted_names(zt.label(n), |c| colours[c].clone()),
                format!("p = {}", zt.priority(n)),
            ],
            accepting: zt.priority(n) % 2 == 0,
            children: t.children(n).to_vec(),
        })
        .collect();
    Ok(layout(&[nodes]))
}

/// Every tree of the decomposition with an edge in it, as SVG.
pub fn acd_svg_text(text: &str) -> Result<String, String> {
    let acd = load_acd(text)?;
    let ts = acd.system();
    let trees: Vec<Vec<Drawn>> = acd
        .trees()
        .iter()
        .filter(|t| !t.label(0).edges.is_empty())
        .map(|t| {
            (0..t.tree.len())
                .map(|n| Drawn {
                    lines: vec![
                        sorted_names(&t.label(n).edges, |e| ts.edge_name(e).to_string()),
                        sorted_names(&t.label(n).states, |v| ts.vertex_name(v).to_string()),
                        format!("p = {}", t.priority(n)),
                    ],
                    accepting: t.priority(n) % 2 == 0,
                    children: t.tree.children(n).to_vec(),
                })
                .collect()
        })
        .collect();
    Ok(layout(&trees))
}

/// Sizes and shape of the decomposition and of the parity transform.
pub fn summary_text(text: &str) -> Result<String, String> {
    let acd = load_acd(text)?;
    let ts = acd.system();
    let stats = acd.stats();
    let shape = classify_acd(&acd);
    let t = acd.transform().map_err(|e| e.to_string())?;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    let _ = writeln!(out, "input: {} vertices, {} edges", ts.num_vertices(), ts.num_edges());
    let _ = writeln!(out, "polarity: {}", stats.polarity);
    let _ = writeln!(out, "tree heights: {:?}", stats.heights);
    let _ = writeln!(out, "transform: {} vertices, {} edges", t.system.num_vertices(), t.system.num_edges());
    let _ = writeln!(out, "priorities: [{}, {}]", stats.interval.0, stats.interval.1);
    let _ = writeln!(
        out,
        "rabin: {}, streett: {}, parity: {}",
        yes(shape.rabin),
        yes(shape.streett),
        yes(shape.parity)
    );
    if let Some(k) = shape.weak_k {
        let _ = writeln!(out, "weak: {k}");
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn zielonka_svg(text: &str) -> Result<String, JsValue> {
    zielonka_svg_text(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn acd_svg(text: &str) -> Result<String, JsValue> {
    acd_svg_text(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn summary(text: &str) -> Result<String, JsValue> {
    summary_text(text).map_err(|e| JsValue::from_str(&e))
}
