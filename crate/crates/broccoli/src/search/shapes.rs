//! Enumeration of tree skeletons in search order.

use crate::tree::TreeShape;

/// All skeletons with at most `node_budget` predicate nodes and depth at
/// most `depth_bound`, ordered by predicate count ascending so smaller trees
/// are tried first; within one size class, recursively left-heavy first
/// (larger true-branch subtrees before larger false-branch subtrees).
pub fn enumerate_shapes(depth_bound: usize, node_budget: usize) -> Vec<TreeShape> {
    let mut all = Vec::new();
    for n in 0..=node_budget {
        collect(n, depth_bound, &mut all);
    }
    all
}

fn collect(n: usize, depth: usize, out: &mut Vec<TreeShape>) {
    out.extend(shapes_of(n, depth));
}

fn shapes_of(n: usize, depth: usize) -> Vec<TreeShape> {
    if n == 0 {
        return vec![TreeShape::Leaf];
    }
    if depth == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for left in (0..n).rev() {
        let right = n - 1 - left;
        for ls in shapes_of(left, depth - 1) {
            for rs in shapes_of(right, depth - 1) {
                out.push(TreeShape::Branch(Box::new(ls.clone()), Box::new(rs)));
            }
        }
    }
    out
}
