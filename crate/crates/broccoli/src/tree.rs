//! Decision-tree policies: evaluation, shape, JSON serialisation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::predicate::Predicate;
use crate::state::{ActionId, StateVector};

/// An unlabelled binary skeleton: what the search enumerates before filling
/// in predicates and actions. `Branch` nodes become predicate slots, `Leaf`
/// nodes become action slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeShape {
    Leaf,
    Branch(Box<TreeShape>, Box<TreeShape>),
}

impl TreeShape {
    /// Number of predicate (branch) nodes.
    pub fn predicate_count(&self) -> usize {
        match self {
            TreeShape::Leaf => 0,
            TreeShape::Branch(l, r) => 1 + l.predicate_count() + r.predicate_count(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.predicate_count() + 1
    }

    /// Depth in predicate levels: a lone leaf has depth 0, a single test
    /// depth 1, a complete two-level tree depth 2.
    pub fn depth(&self) -> usize {
        match self {
            TreeShape::Leaf => 0,
            TreeShape::Branch(l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

/// A decision-tree policy over state vectors. Predicate nodes branch on
/// `[s_dim >= threshold]`; the `if_true` subtree is taken when the predicate
/// holds. Leaves name the action to play.
#[derive(Clone, Debug, PartialEq)]
pub enum DecisionTree {
    Leaf(ActionId),
    Node {
        predicate: Predicate,
        if_true: Box<DecisionTree>,
        if_false: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn leaf(action: i64) -> Self {
        DecisionTree::Leaf(ActionId(action))
    }

    pub fn node(dim: usize, threshold: f64, if_true: DecisionTree, if_false: DecisionTree) -> Self {
        DecisionTree::Node {
            predicate: Predicate { dim, threshold },
            if_true: Box::new(if_true),
            if_false: Box::new(if_false),
        }
    }

    /// Walk the tree on `state` and return the action at the reached leaf.
    pub fn evaluate(&self, state: &StateVector) -> ActionId {
        let mut node = self;
        loop {
            match node {
                DecisionTree::Leaf(action) => return *action,
                DecisionTree::Node {
                    predicate,
                    if_true,
                    if_false,
                } => {
                    node = if predicate.evaluate(state) {
                        if_true
                    } else {
                        if_false
                    };
                }
            }
        }
    }

    pub fn shape(&self) -> TreeShape {
        match self {
            DecisionTree::Leaf(_) => TreeShape::Leaf,
            DecisionTree::Node {
                if_true, if_false, ..
            } => TreeShape::Branch(Box::new(if_true.shape()), Box::new(if_false.shape())),
        }
    }

    pub fn predicate_count(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node {
                if_true, if_false, ..
            } => 1 + if_true.predicate_count() + if_false.predicate_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node {
                if_true, if_false, ..
            } => 1 + if_true.depth().max(if_false.depth()),
        }
    }

    /// Multi-line rendering with custom dimension names.
    pub fn render(&self, dim_names: &[String]) -> String {
        fn go(tree: &DecisionTree, names: &[String], indent: usize, out: &mut String) {
            let pad = "  ".repeat(indent);
            match tree {
                DecisionTree::Leaf(a) => out.push_str(&format!("{pad}action {a}\n")),
                DecisionTree::Node {
                    predicate,
                    if_true,
                    if_false,
                } => {
                    let name = names
                        .get(predicate.dim)
                        .cloned()
                        .unwrap_or_else(|| format!("s{}", predicate.dim));
                    out.push_str(&format!("{pad}if {name} >= {}:\n", predicate.threshold));
                    go(if_true, names, indent + 1, out);
                    out.push_str(&format!("{pad}else:\n"));
                    go(if_false, names, indent + 1, out);
                }
            }
        }
        let mut out = String::new();
        go(self, dim_names, 0, &mut out);
        out
    }
}

/// A tree is symmetric-redundant when some predicate node has structurally
/// identical subtrees on both sides; the test is then dead weight and a
/// smaller equivalent tree exists.
pub fn is_symmetric_redundant(tree: &DecisionTree) -> bool {
    match tree {
        DecisionTree::Leaf(_) => false,
        DecisionTree::Node {
            if_true, if_false, ..
        } => {
            if_true == if_false
                || is_symmetric_redundant(if_true)
                || is_symmetric_redundant(if_false)
        }
    }
}

impl fmt::Display for DecisionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecisionTree::Leaf(a) => write!(f, "{a}"),
            DecisionTree::Node {
                predicate,
                if_true,
                if_false,
            } => {
                write!(f, "[{predicate} ? {if_true} : {if_false}]")
            }
        }
    }
}

// JSON wire format, round-tripping doubles bit-exactly:
//   leaf  {"action": <int>}
//   node  {"dim": <int>, "threshold": <number>, "true": <node>, "false": <node>}
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TreeRepr {
    Leaf {
        action: i64,
    },
    Node {
        dim: usize,
        threshold: f64,
        #[serde(rename = "true")]
        if_true: Box<TreeRepr>,
        #[serde(rename = "false")]
        if_false: Box<TreeRepr>,
    },
}

impl From<&DecisionTree> for TreeRepr {
    fn from(tree: &DecisionTree) -> Self {
        match tree {
            DecisionTree::Leaf(a) => TreeRepr::Leaf { action: a.0 },
            DecisionTree::Node {
                predicate,
                if_true,
                if_false,
            } => TreeRepr::Node {
                dim: predicate.dim,
                threshold: predicate.threshold,
                if_true: Box::new(TreeRepr::from(&**if_true)),
                if_false: Box::new(TreeRepr::from(&**if_false)),
            },
        }
    }
}

impl From<TreeRepr> for DecisionTree {
    fn from(repr: TreeRepr) -> Self {
        match repr {
            TreeRepr::Leaf { action } => DecisionTree::Leaf(ActionId(action)),
            TreeRepr::Node {
                dim,
                threshold,
                if_true,
                if_false,
            } => DecisionTree::Node {
                predicate: Predicate { dim, threshold },
                if_true: Box::new(DecisionTree::from(*if_true)),
                if_false: Box::new(DecisionTree::from(*if_false)),
            },
        }
    }
}

impl Serialize for DecisionTree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TreeRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DecisionTree {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        TreeRepr::deserialize(deserializer).map(DecisionTree::from)
    }
}
