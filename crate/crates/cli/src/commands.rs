use std::collections::BTreeSet;

use acd_core::dot::{acd_dot, system_dot, zielonka_dot};
use acd_core::format::Document;
use acd_core::games::{solve_muller_game, solve_parity_game, verify_strategy};
use acd_core::loops::reachable_loops;
use acd_core::relabel::{classify_acd, compress_priorities, is_weak_k, parity_relabel, rabin_from_acd, streett_from_acd};
use acd_core::system::compose as compose_systems;
use acd_core::tree::format_address;
use acd_core::{Acd, AcceptanceCondition, Error, IdSet, Morphism, Player, TransitionSystem, ZielonkaTree};

use crate::report::*;
use crate::{Class, Failure, Global, Output};

type Res = Result<Output, Failure>;

const MAX_ENUMERATED_COLOURS: usize = 16;

fn load_system(text: &str) -> Result<(Document, TransitionSystem, AcceptanceCondition), Failure> {
    let doc = Document::parse(text)?;
    let ts = doc.system()?;
    let cond = doc.condition(ts.colour_names())?;
    Ok((doc, ts, cond))
}

fn build_acd(g: &Global, text: &str) -> Result<Acd, Failure> {
    let (_, ts, cond) = load_system(text)?;
    Ok(Acd::build(&ts, &cond, g.caps())?)
}

fn names(set: &IdSet, name: impl Fn(usize) -> String) -> Vec<String> {
    let mut v: Vec<String> = set.iter().map(|&i| name(i)).collect();
    v.sort();
    v
}

/// The accepted colour sets, enumerated when the condition is not Muller.
fn family_of(cond: &AcceptanceCondition, n: usize) -> Result<BTreeSet<IdSet>, Failure> {
    if let AcceptanceCondition::Muller(f) = cond {
        return Ok(f.clone());
    }
    if n > MAX_ENUMERATED_COLOURS {
        return Err(Error::CapExceeded {
            what: "colour",
            detail: format!("{n} colours is too many to enumerate the accepted sets"),
        }
        .into());
    }
    let mut family = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let s: IdSet = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if cond.accepts(&s)? {
            family.insert(s);
        }
    }
    Ok(family)
}

pub fn zielonka(g: &Global, text: &str) -> Res {
    let doc = Document::parse(text)?;
    let colours = doc.colour_names()?;
    let cond = doc.condition(&colours)?;
    let gamma: IdSet = (0..colours.len()).collect();
    let zt = ZielonkaTree::build(&family_of(&cond, colours.len())?, &gamma, g.caps().explore_cap)?;
    if g.dot {
        return Ok(Output::ok(zielonka_dot(&zt, &colours)));
    }
    let t = zt.tree();
    let shape = zt.shape();
    let (lo, hi) = zt.optimal_interval();
    Ok(Output::ok(to_text(&ZielonkaReport {
        even: zt.is_even(),
        height: zt.height(),
        interval: [lo, hi],
        shape: ShapeFlags {
            rabin: shape.rabin,
            streett: shape.streett,
            parity: shape.parity,
        },
        nodes: (0..t.len())
            .map(|n| TreeNode {
                address: format_address(&t.node(n).address),
                label: names(zt.label(n), |c| colours[c].clone()),
                priority: zt.priority(n),
            })
            .collect(),
    })))
}

pub fn zt_automaton(g: &Global, text: &str) -> Res {
    let doc = Document::parse(text)?;
    let colours = doc.colour_names()?;
    let cond = doc.condition(&colours)?;
    let gamma: IdSet = (0..colours.len()).collect();
    let zt = ZielonkaTree::build(&family_of(&cond, colours.len())?, &gamma, g.caps().explore_cap)?;
    let (ts, parity) = zt.automaton().to_system(&colours)?;
    if g.dot {
        return Ok(Output::ok(system_dot(&ts, Some(&parity))));
    }
    Ok(Output::ok(
        Document::new()
            .with_system(&ts)
            .with_condition(&parity, ts.colour_names())
            .to_text(),
    ))
}

pub fn acd(g: &Global, text: &str) -> Res {
    let acd = build_acd(g, text)?;
    if g.dot {
        return Ok(Output::ok(acd_dot(&acd)));
    }
    let ts = acd.system();
    let trees = acd
        .trees()
        .iter()
        .enumerate()
        .map(|(i, t)| AcdTreeReport {
            index: i,
            accepting: t.accepting,
            height: t.height(),
            nodes: (0..t.tree.len())
                .map(|n| AcdNode {
                    address: format_address(&t.tree.node(n).address),
                    edges: names(&t.label(n).edges, |e| ts.edge_name(e).to_string()),
                    states: names(&t.label(n).states, |v| ts.vertex_name(v).to_string()),
                    priority: t.priority(n),
                })
                .collect(),
        })
        .collect();
    Ok(Output::ok(to_text(&AcdReport {
        polarity: acd.polarity().to_string(),
        trees,
    })))
}

pub fn transform(g: &Global, text: &str) -> Res {
    let acd = build_acd(g, text)?;
    let t = acd.transform()?;
    if g.dot {
        return Ok(Output::ok(system_dot(&t.system, Some(&t.condition))));
    }
    Ok(Output::ok(
        Document::new()
            .with_system(&t.system)
            .with_condition(&t.condition, t.system.colour_names())
            .with_morphism(&t.morphism(), &t.system, acd.system())
            .to_text(),
    ))
}

pub fn stats(g: &Global, text: &str) -> Res {
    let s = build_acd(g, text)?.stats();
    Ok(Output::ok(to_text(&StatsReport {
        size: s.size,
        interval: [s.interval.0, s.interval.1],
        polarity: s.polarity.to_string(),
        heights: s.heights,
    })))
}

pub fn shape(g: &Global, text: &str) -> Res {
    let acd = build_acd(g, text)?;
    let ts = acd.system();
    let r = classify_acd(&acd);
    Ok(Output::ok(to_text(&ShapeReport {
        rabin: r.rabin,
        streett: r.streett,
        parity: r.parity,
        parity_interval: r.parity_interval.map(|(a, b)| [a, b]),
        weak_k: r.weak_k,
        offenders: r
            .offenders
            .iter()
            .map(|o| OffenderReport {
                state: ts.vertex_name(o.state).to_string(),
                tree: o.tree,
                node: format_address(&acd.tree(o.tree).tree.node(o.node).address),
                round: o.round,
            })
            .collect(),
    })))
}

/// Writes the system with edges as colours and `cond` over them.
fn over_edges(ts: &TransitionSystem, cond: &AcceptanceCondition, comment: Option<String>) -> String {
    let ts = ts.clone().with_identity_colouring();
    let body = Document::new().with_system(&ts).with_condition(cond, ts.colour_names()).to_text();
    match comment {
        Some(c) => format!("# {c}\n{body}"),
        None => body,
    }
}

pub fn relabel(g: &Global, text: &str, target: Class) -> Res {
    let acd = build_acd(g, text)?;
    let ts = acd.system();
    let result = match target {
        Class::Rabin => rabin_from_acd(&acd).map(|c| (c, None)),
        Class::Streett => streett_from_acd(&acd).map(|c| (c, None)),
        Class::Parity => parity_relabel(&acd).map(|p| (AcceptanceCondition::Parity(compress_priorities(&p)), None)),
        Class::Weak => parity_relabel(&acd).map(|p| {
            let p = compress_priorities(&p);
            let k = classify_acd(&acd).weak_k.unwrap_or(0);
            debug_assert!(is_weak_k(ts, &p, k));
            (AcceptanceCondition::Parity(p), Some(format!("weak-k = {k}")))
        }),
    };
    match result {
        Ok((cond, comment)) => Ok(Output::ok(over_edges(ts, &cond, comment))),
        Err(e @ Error::Shape(_)) => Ok(Output::check(format!("# {e}\n"), false)),
        Err(e) => Err(e.into()),
    }
}

pub fn compress(_: &Global, text: &str) -> Res {
    let doc = Document::parse(text)?;
    let colours = doc.colour_names()?;
    let AcceptanceCondition::Parity(p) = doc.condition(&colours)? else {
        return Err(Error::Invalid("compress needs a parity condition".into()).into());
    };
    let out = doc.with_condition(&AcceptanceCondition::Parity(compress_priorities(&p)), &colours);
    Ok(Output::ok(out.canonical().to_text()))
}

pub fn compose(g: &Global, automaton: &str, system: &str) -> Res {
    let (_, aut, aut_cond) = load_system(automaton)?;
    let ts = Document::parse(system)?.system()?;
    let (product, cond) = compose_systems(&aut, &aut_cond, &ts)?;
    if g.dot {
        return Ok(Output::ok(system_dot(&product, Some(&cond))));
    }
    Ok(Output::ok(
        Document::new()
            .with_system(&product)
            .with_condition(&cond, product.colour_names())
            .to_text(),
    ))
}

pub fn check_morphism(g: &Global, source: &str, target: &str, bijective: bool) -> Res {
    let (doc, src, src_cond) = load_system(source)?;
    let (_, tgt, tgt_cond) = load_system(target)?;
    let m = doc.morphism(&src, &tgt)?;
    let structural = m.check_structural(&src, &tgt);
    let local = m.check_local(&src, &tgt);
    let preserving = structural.is_empty() && m.check_acceptance_preserving(&src, &src_cond, &tgt, &tgt_cond, g.caps())?;
    let holds = structural.is_empty() && preserving && (!bijective || local.bijective);
    Ok(Output::check(
        to_text(&MorphismReport {
            structural,
            surjective: local.surjective,
            injective: local.injective,
            bijective: local.bijective,
            acceptance_preserving: preserving,
        }),
        holds,
    ))
}

pub fn solve(g: &Global, text: &str) -> Res {
    let (_, ts, cond) = load_system(text)?;
    let player = |p: Player| match p {
        Player::Eve => "eve".to_string(),
        Player::Adam => "adam".to_string(),
    };
    let (winner, strategy, certified) = match &cond {
        AcceptanceCondition::Parity(p) => {
            let prios: Vec<u32> = (0..ts.num_edges()).map(|e| p[ts.colour_of(e)]).collect();
            let sol = solve_parity_game(&ts, &prios)?;
            let certified = verify_strategy(&ts, &prios, &sol);
            let strategy = strategy_names(&ts, &sol.strategy);
            (sol.winner, strategy, certified)
        }
        _ => {
            let sol = solve_muller_game(&ts, &cond, g.caps())?;
            let t = &sol.transform;
            let certified = verify_strategy(&t.system, t.priorities(), &sol.parity);
            let strategy = strategy_names(&t.system, &sol.parity.strategy);
            (sol.winner, strategy, certified)
        }
    };
    let region = |p: Player| {
        let mut v: Vec<String> = (0..ts.num_vertices())
            .filter(|&v| winner[v] == p)
            .map(|v| ts.vertex_name(v).to_string())
            .collect();
        v.sort();
        v
    };
    Ok(Output::ok(to_text(&SolveReport {
        eve: region(Player::Eve),
        adam: region(Player::Adam),
        certified,
        winner: (0..ts.num_vertices())
            .map(|v| (ts.vertex_name(v).to_string(), player(winner[v])))
            .collect(),
        strategy,
    })))
}

fn strategy_names(ts: &TransitionSystem, strategy: &[Option<usize>]) -> std::collections::BTreeMap<String, String> {
    strategy
        .iter()
        .enumerate()
        .filter_map(|(v, e)| e.map(|e| (ts.vertex_name(v).to_string(), ts.edge_name(e).to_string())))
        .collect()
}

pub fn oracle_equiv(g: &Global, text: &str, other: &str) -> Res {
    let (_, a, a_cond) = load_system(text)?;
    let (_, b, b_cond) = load_system(other)?;
    let by_name = |kind: &'static str, name: &str, found: Option<usize>| {
        found.ok_or_else(|| Error::Undeclared {
            kind,
            id: name.to_string(),
        })
    };
    let vertex_map = (0..a.num_vertices())
        .map(|v| by_name("vertex", a.vertex_name(v), b.vertex_by_name(a.vertex_name(v))))
        .collect::<Result<Vec<_>, _>>()?;
    let edge_map = (0..a.num_edges())
        .map(|e| by_name("edge", a.edge_name(e), b.edge_by_name(a.edge_name(e))))
        .collect::<Result<Vec<_>, _>>()?;
    let m = Morphism::new(vertex_map, edge_map);
    if let Some(problem) = m.check_structural(&a, &b).into_iter().next() {
        return Err(Error::Invalid(format!("the systems differ: {problem}")).into());
    }
    let loops = reachable_loops(&a, g.caps())?;
    let mut witness = None;
    for l in &loops {
        if a_cond.accepts_edges(&a, l)? != b_cond.accepts_edges(&b, &m.map_edges(l))? {
            witness = Some(names(l, |e| a.edge_name(e).to_string()));
            break;
        }
    }
    let equivalent = witness.is_none();
    Ok(Output::check(
        to_text(&EquivReport {
            equivalent,
            loops: loops.len(),
            witness,
        }),
        equivalent,
    ))
}
