//! Ordered labelled trees stored in preorder.

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node<L> {
    pub label: L,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub depth: usize,
    /// Child positions from the root, e.g. `[0, 1]` for the second child of the first child.
    pub address: Vec<usize>,
}

/// A finite ordered tree. Node `0` is the root and node ids follow preorder,
/// so leaves appear left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree<L> {
    nodes: Vec<Node<L>>,
}

impl<L> Tree<L> {
    /// Expands `root` with `children_of` until every label has no children.
    pub fn build(root: L, mut children_of: impl FnMut(&L) -> Result<Vec<L>>) -> Result<Self> {
        let mut tree = Tree { nodes: Vec::new() };
        tree.expand(root, None, Vec::new(), &mut children_of)?;
        Ok(tree)
    }

    fn expand(
        &mut self,
        label: L,
        parent: Option<usize>,
        address: Vec<usize>,
        children_of: &mut impl FnMut(&L) -> Result<Vec<L>>,
    ) -> Result<usize> {
        let id = self.nodes.len();
        let kids = children_of(&label)?;
        self.nodes.push(Node {
            label,
            parent,
            children: Vec::with_capacity(kids.len()),
            depth: address.len(),
            address: address.clone(),
        });
        for (pos, kid) in kids.into_iter().enumerate() {
            let mut a = address.clone();
            a.push(pos);
            let c = self.expand(kid, Some(id), a, children_of)?;
            self.nodes[id].children.push(c);
        }
        Ok(id)
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, n: usize) -> &Node<L> {
        &self.nodes[n]
    }

    pub fn nodes(&self) -> &[Node<L>] {
        &self.nodes
    }

    pub fn label(&self, n: usize) -> &L {
        &self.nodes[n].label
    }

    pub fn children(&self, n: usize) -> &[usize] {
        &self.nodes[n].children
    }

    pub fn is_leaf(&self, n: usize) -> bool {
        self.nodes[n].children.is_empty()
    }

    /// Number of levels.
    pub fn height(&self) -> usize {
        self.nodes.iter().map(|n| n.depth + 1).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&n| self.is_leaf(n)).collect()
    }

    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.nodes[b].address.starts_with(&self.nodes[a].address)
    }

    /// Nodes from the root down to `n`.
    pub fn path(&self, n: usize) -> Vec<usize> {
        let mut p = vec![n];
        let mut cur = n;
        while let Some(parent) = self.nodes[cur].parent {
            p.push(parent);
            cur = parent;
        }
        p.reverse();
        p
    }

    /// The child of `ancestor` lying on the path to `n`.
    pub fn child_towards(&self, ancestor: usize, n: usize) -> Option<usize> {
        let path = self.path(n);
        let i = path.iter().position(|&x| x == ancestor)?;
        path.get(i + 1).copied()
    }

    pub fn leftmost_leaf_below(&self, mut n: usize) -> usize {
        while let Some(&c) = self.nodes[n].children.first() {
            n = c;
        }
        n
    }

    pub fn by_address(&self, address: &[usize]) -> Option<usize> {
        let mut n = 0;
        for &pos in address {
            n = *self.nodes.get(n)?.children.get(pos)?;
        }
        (!self.nodes.is_empty()).then_some(n)
    }

    pub fn map<M>(&self, mut f: impl FnMut(usize, &L) -> M) -> Tree<M> {
        Tree {
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(i, n)| Node {
                    label: f(i, &n.label),
                    parent: n.parent,
                    children: n.children.clone(),
                    depth: n.depth,
                    address: n.address.clone(),
                })
                .collect(),
        }
    }
}

/// `<0,1>` style rendering of a node address; the root is `<>`.
pub fn format_address(address: &[usize]) -> String {
    let parts: Vec<String> = address.iter().map(|p| p.to_string()).collect();
    format!("<{}>", parts.join(","))
}
