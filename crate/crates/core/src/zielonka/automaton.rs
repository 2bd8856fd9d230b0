use std::collections::HashMap;

use super::ZielonkaTree;
use crate::condition::AcceptanceCondition;
use crate::error::Result;
use crate::system::TransitionSystem;
use crate::tree::format_address;
use crate::Colour;

/// The parity automaton whose states are the branches of a Zielonka tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZtAutomaton {
    addresses: Vec<Vec<usize>>,
    colours: Vec<Colour>,
    /// `delta[state][i]` is the successor and output on `colours[i]`.
    delta: Vec<Vec<(usize, u32)>>,
    interval: (u32, u32),
}

impl ZtAutomaton {
    pub fn new(zt: &ZielonkaTree) -> Self {
        let leaves = zt.branches();
        let state_of: HashMap<usize, usize> =
            leaves.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let colours: Vec<Colour> = zt.gamma().iter().copied().collect();
        let delta = leaves
            .iter()
            .map(|&leaf| {
                colours
                    .iter()
                    .map(|&a| {
                        let tau = zt.supp(leaf, a);
                        (state_of[&zt.nextbranch(leaf, tau)], zt.priority(tau))
                    })
                    .collect()
            })
            .collect();
        ZtAutomaton {
            addresses: leaves
                .iter()
                .map(|&l| zt.tree().node(l).address.clone())
                .collect(),
            colours,
            delta,
            interval: zt.optimal_interval(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn interval(&self) -> (u32, u32) {
        self.interval
    }

    /// Address of the leaf ending the branch of `state`.
    pub fn address(&self, state: usize) -> &[usize] {
        &self.addresses[state]
    }

    /// `n` for the root, `n0_1` for the leaf at address `<0,1>`.
    pub fn state_name(&self, state: usize) -> String {
        let parts: Vec<String> = self.addresses[state].iter().map(|p| p.to_string()).collect();
        format!("n{}", parts.join("_"))
    }

    pub fn state_label(&self, state: usize) -> String {
        format_address(&self.addresses[state])
    }

    pub fn step(&self, state: usize, colour: Colour) -> Option<(usize, u32)> {
        let i = self.colours.binary_search(&colour).ok()?;
        Some(self.delta[state][i])
    }

    /// Minimum output priority seen infinitely often on `prefix · cycle^ω`.
    pub fn min_inf_priority(&self, prefix: &[Colour], cycle: &[Colour]) -> Option<u32> {
        if cycle.is_empty() {
            return None;
        }
        let mut q = self.initial();
        for &a in prefix {
            q = self.step(q, a)?.0;
        }
        // Iterate whole cycles until the state at a cycle boundary repeats.
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut outputs: Vec<Vec<u32>> = Vec::new();
        while !seen.contains_key(&q) {
            seen.insert(q, outputs.len());
            let mut out = Vec::with_capacity(cycle.len());
            for &a in cycle {
                let (next, p) = self.step(q, a)?;
                out.push(p);
                q = next;
            }
            outputs.push(out);
        }
        outputs[seen[&q]..].iter().flatten().copied().min()
    }

    /// The automaton as a transition system reading colour names, with a
    /// parity condition on its edges.
    pub fn to_system(&self, colour_names: &[String]) -> Result<(TransitionSystem, AcceptanceCondition)> {
        let names: Vec<String> = (0..self.num_states()).map(|s| self.state_name(s)).collect();
        let mut edges = Vec::new();
        let mut letters = Vec::new();
        let mut priorities = Vec::new();
        for (s, row) in self.delta.iter().enumerate() {
            for (i, &(t, p)) in row.iter().enumerate() {
                let letter = colour_names[self.colours[i]].clone();
                edges.push((format!("{}:{}", names[s], letter), s, t));
                letters.push(letter);
                priorities.push(p);
            }
        }
        let ts = TransitionSystem::from_indexed(names, edges, vec![self.initial()])?
            .with_letters(letters)?;
        Ok((ts, AcceptanceCondition::Parity(priorities)))
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::f2;
    use super::*;
    use crate::IdSet;
    use std::collections::BTreeSet;

    #[test]
    fn f1_transitions() {
        let family: BTreeSet<IdSet> = [IdSet::from([0]), IdSet::from([1])].into();
        let zt = ZielonkaTree::build(&family, &IdSet::from([0, 1, 2]), 100).unwrap();
        let a = zt.automaton();
        assert_eq!(a.num_states(), 2);
        let (alpha, beta) = (0, 1);
        assert_eq!(a.step(alpha, 0), Some((alpha, 2)));
        assert_eq!(a.step(alpha, 1), Some((beta, 1)));
        assert_eq!(a.step(alpha, 2), Some((beta, 1)));
        assert_eq!(a.step(beta, 1), Some((beta, 2)));
        assert_eq!(a.step(beta, 0), Some((alpha, 1)));
        assert_eq!(a.step(beta, 2), Some((alpha, 1)));
        assert_eq!(a.state_name(alpha), "n0");
        assert_eq!(a.min_inf_priority(&[], &[0]), Some(2));
        assert_eq!(a.min_inf_priority(&[2], &[0, 1]), Some(1));
    }

    #[test]
    fn f2_transitions() {
        let zt = ZielonkaTree::build(&f2(), &IdSet::from([0, 1, 2, 3]), 100).unwrap();
        let a = zt.automaton();
        assert_eq!(a.num_states(), 3);
        let (alpha, beta, gamma) = (0, 1, 2);
        assert_eq!(a.step(alpha, 3), Some((gamma, 0)));
        assert_eq!(a.step(beta, 2), Some((beta, 3)));
        assert_eq!(a.step(gamma, 0), Some((alpha, 0)));
        assert_eq!(a.state_name(beta), "n0_1_0");
    }

    #[test]
    fn as_system() {
        let family: BTreeSet<IdSet> = [IdSet::from([0])].into();
        let zt = ZielonkaTree::build(&family, &IdSet::from([0]), 100).unwrap();
        let (ts, cond) = zt.automaton().to_system(&["a".to_string()]).unwrap();
        assert_eq!(ts.num_vertices(), 1);
        assert_eq!(ts.edge_name(0), "n:a");
        assert_eq!(cond, AcceptanceCondition::Parity(vec![0]));
        assert!(ts.check_deterministic(Some(&["a".to_string()])).is_ok());
    }
}
