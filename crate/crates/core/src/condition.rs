//! Acceptance conditions and their evaluation on sets of colours.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::loops;
use crate::system::TransitionSystem;
use crate::{Caps, Colour, IdSet};

/// A Rabin or Streett pair `(E, F)` of colour sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub e: IdSet,
    pub f: IdSet,
}

impl Pair {
    pub fn new(e: impl IntoIterator<Item = Colour>, f: impl IntoIterator<Item = Colour>) -> Self {
        Pair {
            e: e.into_iter().collect(),
            f: f.into_iter().collect(),
        }
    }
}

/// Acceptance conditions over colour ids. Parity is min-even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AcceptanceCondition {
    Muller(BTreeSet<IdSet>),
    /// Priority of each colour, indexed by colour id.
    Parity(Vec<u32>),
    Buchi(IdSet),
    CoBuchi(IdSet),
    Rabin(Vec<Pair>),
    Streett(Vec<Pair>),
}

impl AcceptanceCondition {
    pub fn muller<I, S>(sets: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Colour>,
    {
        AcceptanceCondition::Muller(sets.into_iter().map(|s| s.into_iter().collect()).collect())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AcceptanceCondition::Muller(_) => "muller",
            AcceptanceCondition::Parity(_) => "parity",
            AcceptanceCondition::Buchi(_) => "buchi",
            AcceptanceCondition::CoBuchi(_) => "co-buchi",
            AcceptanceCondition::Rabin(_) => "rabin",
            AcceptanceCondition::Streett(_) => "streett",
        }
    }

    /// Every colour the condition mentions.
    pub fn colours(&self) -> IdSet {
        match self {
            AcceptanceCondition::Muller(f) => f.iter().flatten().copied().collect(),
            AcceptanceCondition::Parity(p) => (0..p.len()).collect(),
            AcceptanceCondition::Buchi(b) | AcceptanceCondition::CoBuchi(b) => b.clone(),
            AcceptanceCondition::Rabin(ps) | AcceptanceCondition::Streett(ps) => ps
                .iter()
                .flat_map(|p| p.e.iter().chain(&p.f))
                .copied()
                .collect(),
        }
    }

    /// Whether a run whose colours seen infinitely often are `inf` is accepted.
    pub fn accepts(&self, inf: &IdSet) -> Result<bool> {
        if inf.is_empty() {
            return Err(Error::invalid("loop status of the empty set"));
        }
        Ok(match self {
            AcceptanceCondition::Muller(f) => f.contains(inf),
            AcceptanceCondition::Parity(p) => {
                let mut min = u32::MAX;
                for &c in inf {
                    min = min.min(*p.get(c).ok_or(Error::UnknownColour(c))?);
                }
                min % 2 == 0
            }
            AcceptanceCondition::Buchi(b) => inf.iter().any(|c| b.contains(c)),
            AcceptanceCondition::CoBuchi(b) => inf.iter().all(|c| !b.contains(c)),
            AcceptanceCondition::Rabin(ps) => ps
                .iter()
                .any(|p| !p.e.is_disjoint(inf) && p.f.is_disjoint(inf)),
            AcceptanceCondition::Streett(ps) => ps
                .iter()
                .all(|p| p.e.is_disjoint(inf) || !p.f.is_disjoint(inf)),
        })
    }

    /// Status of an edge set of `ts`, read through its colouring.
    pub fn accepts_edges(&self, ts: &TransitionSystem, edges: &IdSet) -> Result<bool> {
        self.accepts(&ts.colour_image(edges))
    }

    /// The minimum priority of `inf` under a parity condition.
    pub fn min_priority(&self, inf: &IdSet) -> Option<u32> {
        match self {
            AcceptanceCondition::Parity(p) => inf.iter().filter_map(|&c| p.get(c).copied()).min(),
            _ => None,
        }
    }
}

impl fmt::Display for AcceptanceCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &IdSet| {
            let v: Vec<String> = s.iter().map(|c| c.to_string()).collect();
            format!("{{{}}}", v.join(","))
        };
        match self {
            AcceptanceCondition::Muller(fam) => {
                let v: Vec<String> = fam.iter().map(set).collect();
                write!(f, "muller[{}]", v.join(" "))
            }
            AcceptanceCondition::Parity(p) => write!(f, "parity{p:?}"),
            AcceptanceCondition::Buchi(b) => write!(f, "buchi{}", set(b)),
            AcceptanceCondition::CoBuchi(b) => write!(f, "co-buchi{}", set(b)),
            AcceptanceCondition::Rabin(ps) | AcceptanceCondition::Streett(ps) => {
                let v: Vec<String> = ps
                    .iter()
                    .map(|p| format!("({},{})", set(&p.e), set(&p.f)))
                    .collect();
                write!(f, "{}[{}]", self.kind(), v.join(" "))
            }
        }
    }
}

/// Violated invariants of a system and condition.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid(self.violations.join("; ")))
        }
    }
}

pub fn validate(ts: &TransitionSystem, cond: &AcceptanceCondition) -> ValidationReport {
    let mut v = Vec::new();
    if ts.initial().is_empty() {
        v.push("no initial vertex".to_string());
    }
    for q in 0..ts.num_vertices() {
        if ts.out(q).is_empty() {
            v.push(format!("dead-end vertex `{}`", ts.vertex_name(q)));
        }
    }
    let n = ts.num_colours();
    if let Some(c) = cond.colours().into_iter().find(|&c| c >= n) {
        v.push(format!("unknown colour {c}"));
    }
    match cond {
        AcceptanceCondition::Muller(f) if f.contains(&IdSet::new()) => {
            v.push("empty set in family".to_string());
        }
        AcceptanceCondition::Parity(p) if p.len() != n => {
            v.push(format!(
                "parity map covers {} colours, the system has {n}",
                p.len()
            ));
        }
        _ => {}
    }
    ValidationReport { violations: v }
}

/// The equivalent Muller condition over the edges of `ts`: the reachable loops
/// that are accepting.
pub fn to_explicit_muller(
    ts: &TransitionSystem,
    cond: &AcceptanceCondition,
    caps: Caps,
) -> Result<AcceptanceCondition> {
    validate(ts, cond).into_result()?;
    let mut family = BTreeSet::new();
    for l in loops::reachable_loops(ts, caps)? {
        if cond.accepts_edges(ts, &l)? {
            family.insert(l);
        }
    }
    Ok(AcceptanceCondition::Muller(family))
}

/// Whether the two conditions give every reachable loop the same status.
pub fn equivalent_over(
    ts: &TransitionSystem,
    a: &AcceptanceCondition,
    b: &AcceptanceCondition,
    caps: Caps,
) -> Result<bool> {
    for l in loops::reachable_loops(ts, caps)? {
        let image = ts.colour_image(&l);
        if a.accepts(&image)? != b.accepts(&image)? {
            return Ok(false);
        }
    }
    Ok(true)
}
