//! The canonical text format: a version-tagged TOML document holding a system,
//! an acceptance condition, and optionally a morphism.
//!
//! ```toml
//! format = "acd/1"
//!
//! [system]
//! vertices = ["p", "q"]
//! initial = ["p"]
//!
//! [system.edges.x]
//! source = "p"
//! target = "q"
//!
//! [system.edges.y]
//! source = "q"
//! target = "p"
//!
//! [condition]
//! kind = "parity"
//! priorities = { x = 1, y = 2 }
//! ```
//!
//! Names are the only identifiers. Maps serialize in key order and lists of
//! names are sorted, so serialization is byte-stable. Parsed vertices and
//! edges are numbered in name order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::condition::{AcceptanceCondition, Pair};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::system::{Player, SystemBuilder, TransitionSystem};
use crate::IdSet;

pub const FORMAT: &str = "acd/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub format: String,
    /// The colour set; needed when there is no system or when it declares
    /// colours no edge carries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colours: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<ConditionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub vertices: Vec<String>,
    pub initial: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub owners: Option<BTreeMap<String, Player>>,
    pub edges: BTreeMap<String, EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letter: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colour: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ConditionDoc {
    Muller { sets: Vec<Vec<String>> },
    Parity { priorities: BTreeMap<String, u32> },
    Buchi { set: Vec<String> },
    CoBuchi { set: Vec<String> },
    Rabin { pairs: Vec<PairDoc> },
    Streett { pairs: Vec<PairDoc> },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub e: Vec<String>,
    pub f: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub vertices: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

impl Document {
    pub fn new() -> Self {
        Document {
            format: FORMAT.to_string(),
            colours: None,
            system: None,
            condition: None,
            morphism: None,
        }
    }

    pub fn parse(text: &str) -> Result<Document> {
        let doc: Document = toml::from_str(text).map_err(|e| {
            let (line, column) = match e.span() {
                Some(span) => line_col(text, span.start),
                None => (0, 0),
            };
            Error::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })?;
        if doc.format != FORMAT {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("unsupported format `{}`, expected `{FORMAT}`", doc.format),
            });
        }
        Ok(doc)
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("documents always serialize")
    }

    /// Canonical form: every list of names sorted and deduplicated.
    pub fn canonical(&self) -> Document {
        let mut d = self.clone();
        if let Some(c) = &mut d.colours {
            sort_names(c);
        }
        if let Some(s) = &mut d.system {
            sort_names(&mut s.vertices);
            sort_names(&mut s.initial);
        }
        if let Some(c) = &mut d.condition {
            match c {
                ConditionDoc::Muller { sets } => {
                    for s in sets.iter_mut() {
                        sort_names(s);
                    }
                    sets.sort();
                    sets.dedup();
                }
                ConditionDoc::Buchi { set } | ConditionDoc::CoBuchi { set } => sort_names(set),
                ConditionDoc::Rabin { pairs } | ConditionDoc::Streett { pairs } => {
                    for p in pairs.iter_mut() {
                        sort_names(&mut p.e);
                        sort_names(&mut p.f);
                    }
                }
                ConditionDoc::Parity { .. } => {}
            }
        }
        d
    }

    pub fn system(&self) -> Result<TransitionSystem> {
        let s = self
            .system
            .as_ref()
            .ok_or_else(|| Error::invalid("document has no system"))?;
        let mut vertices = s.vertices.clone();
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Duplicate {
                kind: "vertex",
                id: w[0].clone(),
            });
        }
        let mut b = SystemBuilder::new().vertices(vertices);
        for v in &s.initial {
            b = b.initial(v.clone());
        }
        for (name, e) in &s.edges {
            b = b.edge(name.clone(), e.source.clone(), e.target.clone());
            if let Some(l) = &e.letter {
                b = b.letter(name.clone(), l.clone());
            }
            if let Some(c) = &e.colour {
                b = b.colour(name.clone(), c.clone());
            }
        }
        if let Some(owners) = &s.owners {
            for (v, p) in owners {
                if !s.vertices.contains(v) {
                    return Err(Error::Undeclared {
                        kind: "vertex",
                        id: v.clone(),
                    });
                }
                b = b.owner(v.clone(), *p);
            }
        }
        if let Some(cs) = &self.colours {
            b = b.colour_universe(cs.iter().cloned());
        }
        let ts = b.build()?;
        if ts.initial().is_empty() {
            return Err(Error::invalid("no initial vertex"));
        }
        Ok(ts)
    }

    /// Colour names: the system's colours if there is a system, else the
    /// declared colour list in name order.
    pub fn colour_names(&self) -> Result<Vec<String>> {
        if self.system.is_some() {
            return Ok(self.system()?.colour_names().to_vec());
        }
        let mut cs = self
            .colours
            .clone()
            .ok_or_else(|| Error::invalid("document has neither a system nor colours"))?;
        cs.sort();
        if let Some(w) = cs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Duplicate {
                kind: "colour",
                id: w[0].clone(),
            });
        }
        Ok(cs)
    }

    /// The condition with names resolved against `colours`.
    pub fn condition(&self, colours: &[String]) -> Result<AcceptanceCondition> {
        let c = self
            .condition
            .as_ref()
            .ok_or_else(|| Error::invalid("document has no condition"))?;
        let id = |name: &String| {
            colours.iter().position(|c| c == name).ok_or_else(|| Error::Undeclared {
                kind: "colour",
                id: name.clone(),
            })
        };
        let set = |names: &Vec<String>| names.iter().map(id).collect::<Result<IdSet>>();
        Ok(match c {
            ConditionDoc::Muller { sets } => {
                AcceptanceCondition::Muller(sets.iter().map(set).collect::<Result<BTreeSet<_>>>()?)
            }
            ConditionDoc::Parity { priorities } => {
                let mut p = vec![None; colours.len()];
                for (name, &v) in priorities {
                    p[id(name)?] = Some(v);
                }
                AcceptanceCondition::Parity(
                    p.into_iter()
                        .enumerate()
                        .map(|(i, v)| {
                            v.ok_or_else(|| Error::invalid(format!("colour `{}` has no priority", colours[i])))
                        })
                        .collect::<Result<_>>()?,
                )
            }
            ConditionDoc::Buchi { set: s } => AcceptanceCondition::Buchi(set(s)?),
            ConditionDoc::CoBuchi { set: s } => AcceptanceCondition::CoBuchi(set(s)?),
            ConditionDoc::Rabin { pairs } | ConditionDoc::Streett { pairs } => {
                let ps = pairs
                    .iter()
                    .map(|p| Ok(Pair { e: set(&p.e)?, f: set(&p.f)? }))
                    .collect::<Result<Vec<_>>>()?;
                if matches!(c, ConditionDoc::Rabin { .. }) {
                    AcceptanceCondition::Rabin(ps)
                } else {
                    AcceptanceCondition::Streett(ps)
                }
            }
        })
    }

    /// The morphism with names resolved from `src` to `tgt`.
    pub fn morphism(&self, src: &TransitionSystem, tgt: &TransitionSystem) -> Result<Morphism> {
        let m = self
            .morphism
            .as_ref()
            .ok_or_else(|| Error::invalid("document has no morphism"))?;
        let lookup = |kind: &'static str, name: &str, found: Option<usize>| {
            found.ok_or_else(|| Error::Undeclared {
                kind,
                id: name.to_string(),
            })
        };
        let mut vmap = vec![None; src.num_vertices()];
        for (a, b) in &m.vertices {
            let i = lookup("vertex", a, src.vertex_by_name(a))?;
            vmap[i] = Some(lookup("vertex", b, tgt.vertex_by_name(b))?);
        }
        let mut emap = vec![None; src.num_edges()];
        for (a, b) in &m.edges {
            let i = lookup("edge", a, src.edge_by_name(a))?;
            emap[i] = Some(lookup("edge", b, tgt.edge_by_name(b))?);
        }
        let vertex_map = vmap
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::invalid(format!("vertex `{}` is not mapped", src.vertex_name(i)))))
            .collect::<Result<_>>()?;
        let edge_map = emap
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| Error::invalid(format!("edge `{}` is not mapped", src.edge_name(i)))))
            .collect::<Result<_>>()?;
        Ok(Morphism::new(vertex_map, edge_map))
    }

    pub fn with_system(mut self, ts: &TransitionSystem) -> Self {
        let edges = (0..ts.num_edges())
            .map(|e| {
                (
                    ts.edge_name(e).to_string(),
                    EdgeDoc {
                        source: ts.vertex_name(ts.source(e)).to_string(),
                        target: ts.vertex_name(ts.target(e)).to_string(),
                        letter: ts.letter(e).map(str::to_string),
                        colour: ts
                            .has_explicit_colouring()
                            .then(|| ts.colour_name(ts.colour_of(e)).to_string()),
                    },
                )
            })
            .collect();
        let owners = ts.owners().map(|o| {
            (0..ts.num_vertices())
                .map(|v| (ts.vertex_name(v).to_string(), o[v]))
                .collect()
        });
        let mut vertices = ts.vertex_names().to_vec();
        sort_names(&mut vertices);
        let mut initial: Vec<String> = ts.initial().iter().map(|&v| ts.vertex_name(v).to_string()).collect();
        sort_names(&mut initial);
        self.system = Some(SystemDoc {
            vertices,
            initial,
            owners,
            edges,
        });
        if ts.has_explicit_colouring() {
            let used: BTreeSet<usize> = (0..ts.num_edges()).map(|e| ts.colour_of(e)).collect();
            if used.len() < ts.num_colours() {
                self.colours = Some(ts.colour_names().to_vec());
            }
        }
        self
    }

    pub fn with_condition(mut self, cond: &AcceptanceCondition, colours: &[String]) -> Self {
        let names = |s: &IdSet| {
            let mut v: Vec<String> = s.iter().map(|&c| colours[c].clone()).collect();
            sort_names(&mut v);
            v
        };
        let pairs = |ps: &[Pair]| ps.iter().map(|p| PairDoc { e: names(&p.e), f: names(&p.f) }).collect();
        self.condition = Some(match cond {
            AcceptanceCondition::Muller(f) => {
                let mut sets: Vec<Vec<String>> = f.iter().map(names).collect();
                sets.sort();
                ConditionDoc::Muller { sets }
            }
            AcceptanceCondition::Parity(p) => ConditionDoc::Parity {
                priorities: p.iter().enumerate().map(|(c, &v)| (colours[c].clone(), v)).collect(),
            },
            AcceptanceCondition::Buchi(b) => ConditionDoc::Buchi { set: names(b) },
            AcceptanceCondition::CoBuchi(b) => ConditionDoc::CoBuchi { set: names(b) },
            AcceptanceCondition::Rabin(ps) => ConditionDoc::Rabin { pairs: pairs(ps) },
            AcceptanceCondition::Streett(ps) => ConditionDoc::Streett { pairs: pairs(ps) },
        });
        self
    }

    pub fn with_colours(mut self, colours: &[String]) -> Self {
        let mut c = colours.to_vec();
        sort_names(&mut c);
        self.colours = Some(c);
        self
    }

    pub fn with_morphism(mut self, m: &Morphism, src: &TransitionSystem, tgt: &TransitionSystem) -> Self {
        self.morphism = Some(MorphismDoc {
            vertices: (0..src.num_vertices())
                .map(|v| (src.vertex_name(v).to_string(), tgt.vertex_name(m.vertex_map[v]).to_string()))
                .collect(),
            edges: (0..src.num_edges())
                .map(|e| (src.edge_name(e).to_string(), tgt.edge_name(m.edge_map[e]).to_string()))
                .collect(),
        });
        self
    }
}

impl Default for Document {
    fn default() -> Self {
        Document::new()
    }
}

fn sort_names(v: &mut Vec<String>) {
    v.sort();
    v.dedup();
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, column)
}
