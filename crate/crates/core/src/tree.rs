//! Ordered (plane) trees and their preorder correspondence with Dyck paths.
//!
//! Trees are unlabeled: a vertex is identified by its preorder index and two
//! trees are equal exactly when their Dyck words are equal.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::dyck::{DyckPath, ResidueSet, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree is not planted: its root has {0} children")]
    NotPlanted(usize),
    #[error("size must be at least 1")]
    NonPositiveSize,
}

/// A rooted tree whose children are ordered left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrderedTree {
    children: Vec<OrderedTree>,
}

/// An edge `parent -> child`; vertices are preorder indices, the root is 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeRef {
    pub parent: usize,
    pub child: usize,
    /// Distance from the root to `child`.
    pub level: usize,
    /// Leaves in the planted subtree hanging from this edge.
    pub leaves: usize,
}

impl EdgeRef {
    pub fn is_red(&self) -> bool {
        self.level.is_multiple_of(3)
    }

    pub fn is_exterior(&self) -> bool {
        self.leaves >= 2
    }
}

impl OrderedTree {
    /// The single-vertex tree.
    pub fn leaf() -> Self {
        OrderedTree::default()
    }

    pub fn with_children(children: Vec<OrderedTree>) -> Self {
        OrderedTree { children }
    }

    pub fn children(&self) -> &[OrderedTree] {
        &self.children
    }

    pub(crate) fn children_mut(&mut self) -> &mut Vec<OrderedTree> {
        &mut self.children
    }

    pub fn into_children(self) -> Vec<OrderedTree> {
        self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Preorder traversal: every up step descends a new edge, every down step
    /// climbs back.
    pub fn from_path(path: &DyckPath) -> OrderedTree {
        let mut stack: Vec<Vec<OrderedTree>> = vec![Vec::new()];
        for st in path.steps() {
            match st {
                Step::Up => stack.push(Vec::new()),
                Step::Down => {
                    let children = stack.pop().expect("valid Dyck path");
                    stack
                        .last_mut()
                        .expect("valid Dyck path")
                        .push(OrderedTree { children });
                }
            }
        }
        debug_assert_eq!(stack.len(), 1);
        OrderedTree {
            children: stack.pop().unwrap_or_default(),
        }
    }

    pub fn to_path(&self) -> DyckPath {
        let mut steps = Vec::new();
        // (node, index of the next child to visit)
        let mut stack: Vec<(&OrderedTree, usize)> = vec![(self, 0)];
        while let Some((node, next)) = stack.pop() {
            if next < node.children.len() {
                stack.push((node, next + 1));
                steps.push(Step::Up);
                stack.push((&node.children[next], 0));
            } else if !stack.is_empty() {
                steps.push(Step::Down);
            }
        }
        DyckPath::from_steps_unchecked(steps)
    }

    pub fn edge_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            count += node.children.len();
            stack.extend(node.children.iter());
        }
        count
    }

    pub fn leaf_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            if node.is_leaf() {
                count += 1;
            }
            stack.extend(node.children.iter());
        }
        count
    }

    pub fn height(&self) -> usize {
        self.to_path().height()
    }

    /// True when every vertex has at most one child.
    pub fn is_path(&self) -> bool {
        let mut node = self;
        loop {
            match node.children.as_slice() {
                [] => return true,
                [only] => node = only,
                _ => return false,
            }
        }
    }

    /// All edges in preorder of their child vertex.
    pub fn edges(&self) -> Vec<EdgeRef> {
        let mut edges = Vec::new();
        let mut next_id = 0;
        // (node, parent id, level)
        let mut stack: Vec<(&OrderedTree, Option<usize>, usize)> = vec![(self, None, 0)];
        while let Some((node, parent, level)) = stack.pop() {
            let id = next_id;
            next_id += 1;
            if let Some(parent) = parent {
                edges.push(EdgeRef {
                    parent,
                    child: id,
                    level,
                    leaves: 0,
                });
            }
            for child in node.children.iter().rev() {
                stack.push((child, Some(id), level + 1));
            }
        }
        // leaf counts, children before parents
        let mut leaves = vec![0usize; next_id];
        let mut has_child = vec![false; next_id];
        for e in &edges {
            has_child[e.parent] = true;
        }
        for e in edges.iter().rev() {
            if !has_child[e.child] {
                leaves[e.child] = 1;
            }
            leaves[e.parent] += leaves[e.child];
        }
        for e in &mut edges {
            e.leaves = leaves[e.child];
        }
        edges
    }

    /// Edges whose planted subtree has at least two leaves.
    pub fn exterior_edges(&self) -> Vec<EdgeRef> {
        self.edges()
            .into_iter()
            .filter(EdgeRef::is_exterior)
            .collect()
    }

    pub fn edges_at_residue(&self, residues: &ResidueSet) -> usize {
        self.edges()
            .iter()
            .filter(|e| residues.contains(e.level))
            .count()
    }

    pub fn red_edge_count(&self) -> usize {
        self.edges().iter().filter(|e| e.is_red()).count()
    }

    /// Splits the tree at its root into one planted tree per root edge.
    pub fn decompose_planted(&self) -> Vec<PlantedTree> {
        self.children
            .iter()
            .map(|c| PlantedTree::from_body(c.clone()))
            .collect()
    }

    /// Glues planted trees at their roots, left to right.
    pub fn merge_planted<I: IntoIterator<Item = PlantedTree>>(parts: I) -> OrderedTree {
        OrderedTree {
            children: parts.into_iter().map(PlantedTree::into_body).collect(),
        }
    }

    /// Indented outline, one vertex per line. Each edge line shows its level;
    /// `*` marks red edges and `ext` exterior edges.
    pub fn outline(&self) -> String {
        let edges = self.edges();
        let mut out = String::from("o\n");
        for e in &edges {
            let indent = "  ".repeat(e.level - 1);
            let mut tags = String::new();
            if e.is_red() {
                tags.push_str(" *");
            }
            if e.is_exterior() {
                tags.push_str(" ext");
            }
            writeln!(out, "{indent}`-o [{}]{tags}", e.level).unwrap();
        }
        out
    }
}

impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_path())
    }
}

impl From<&DyckPath> for OrderedTree {
    fn from(p: &DyckPath) -> Self {
        OrderedTree::from_path(p)
    }
}

/// An ordered tree whose root has exactly one child. The edge to that child
/// is the planting stalk; `body` is the subtree hanging below it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlantedTree {
    body: OrderedTree,
}

impl PlantedTree {
    pub fn new(tree: OrderedTree) -> Result<Self, TreeError> {
        match tree.children.len() {
            1 => Ok(PlantedTree {
                body: tree.children.into_iter().next().expect("one child"),
            }),
            d => Err(TreeError::NotPlanted(d)),
        }
    }

    /// Plants `body` under a new root.
    pub fn from_body(body: OrderedTree) -> Self {
        PlantedTree { body }
    }

    pub fn from_path(path: &DyckPath) -> Result<Self, TreeError> {
        PlantedTree::new(OrderedTree::from_path(path))
    }

    pub fn body(&self) -> &OrderedTree {
        &self.body
    }

    pub(crate) fn body_mut(&mut self) -> &mut OrderedTree {
        &mut self.body
    }

    pub fn into_body(self) -> OrderedTree {
        self.body
    }

    pub fn to_tree(&self) -> OrderedTree {
        OrderedTree {
            children: vec![self.body.clone()],
        }
    }

    pub fn to_path(&self) -> DyckPath {
        self.body.to_path().lift()
    }

    pub fn edge_count(&self) -> usize {
        self.body.edge_count() + 1
    }

    pub fn is_path(&self) -> bool {
        self.body.is_path()
    }

    pub fn leaf_count(&self) -> usize {
        self.body.leaf_count()
    }

    /// The stalk is exterior iff the tree has two or more leaves.
    pub fn is_exterior(&self) -> bool {
        self.leaf_count() >= 2
    }

    /// Root, one child, and `k - 1` pendant edges below that child.
    pub fn bouquet(k: usize) -> Result<Self, TreeError> {
        if k == 0 {
            return Err(TreeError::NonPositiveSize);
        }
        Ok(PlantedTree::from_body(OrderedTree {
            children: vec![OrderedTree::leaf(); k - 1],
        }))
    }

    /// A chain of `k` edges.
    pub fn path_tree(k: usize) -> Result<Self, TreeError> {
        if k == 0 {
            return Err(TreeError::NonPositiveSize);
        }
        let mut body = OrderedTree::leaf();
        for _ in 1..k {
            body = OrderedTree {
                children: vec![body],
            };
        }
        Ok(PlantedTree::from_body(body))
    }

    pub fn is_bouquet(&self) -> bool {
        self.body.children.iter().all(OrderedTree::is_leaf)
    }

    pub fn red_edge_count(&self) -> usize {
        self.to_tree().red_edge_count()
    }

    pub fn exterior_edge_count(&self) -> usize {
        self.to_tree().exterior_edges().len()
    }
}

impl fmt::Display for PlantedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_path())
    }
}
