//! 2d-min and 2d-max heaps and their colored variants.
//!
//! Both heaps are ordinal trees on nodes `0..=n` whose labels coincide with
//! their preorder ranks. In the min heap the parent of `i` is `PSV(i)`, in the
//! max heap it is `PLV(i)`. A node is red when it has an immediate right
//! sibling holding a different value, blue otherwise.

use std::fmt;

use crate::array::{all_nearest, QueryKind, ValueArray};

/// Which of the two heaps a tree represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeapKind {
    Min,
    Max,
}

/// Node color. Red is coded as `0`, blue as `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn bit(self) -> bool {
        self == Color::Blue
    }

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Color::Blue
        } else {
            Color::Red
        }
    }

    fn suffix(self) -> char {
        match self {
            Color::Red => 'r',
            Color::Blue => 'b',
        }
    }
}

/// An ordinal tree on nodes `0..=n` rooted at `0`.
///
/// Parent pointers and child lists are both kept; [`OrdinalTree::is_consistent`]
/// checks that they agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalTree {
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
    // position of each node among its parent's children
    child_pos: Vec<usize>,
}

impl OrdinalTree {
    /// Builds a tree from parent pointers. `parents[0]` is ignored and every
    /// other entry must satisfy `parents[i] < i`.
    pub fn from_parents(parents: &[usize]) -> Option<Self> {
        if parents.is_empty() {
            return None;
        }
        let size = parents.len();
        let mut children = vec![Vec::new(); size];
        let mut child_pos = vec![0; size];
        let mut parent = vec![0; size];
        for i in 1..size {
            let p = parents[i];
            if p >= i {
                return None;
            }
            parent[i] = p;
            child_pos[i] = children[p].len();
            children[p].push(i);
        }
        Some(OrdinalTree {
            parent,
            children,
            child_pos,
        })
    }

    /// Largest node label.
    pub fn n(&self) -> usize {
        self.parent.len() - 1
    }

    /// Parent of `i`, or `None` for the root.
    pub fn parent(&self, i: usize) -> Option<usize> {
        (i != 0).then(|| self.parent[i])
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.children[i].len()
    }

    pub fn is_leaf(&self, i: usize) -> bool {
        self.children[i].is_empty()
    }

    /// Immediate right sibling of `i`, if any.
    pub fn right_sibling(&self, i: usize) -> Option<usize> {
        if i == 0 {
            return None;
        }
        self.children[self.parent[i]].get(self.child_pos[i] + 1).copied()
    }

    pub fn has_right_sibling(&self, i: usize) -> bool {
        self.right_sibling(i).is_some()
    }

    /// Left-to-right DFS from the root visits `0, 1, ..., n` in order.
    pub fn is_preorder_labeled(&self) -> bool {
        let mut stack = vec![0usize];
        let mut expected = 0;
        while let Some(v) = stack.pop() {
            if v != expected {
                return false;
            }
            expected += 1;
            stack.extend(self.children[v].iter().rev());
        }
        expected == self.parent.len()
    }

    /// Parent pointers and child lists describe the same tree, and every
    /// child list is strictly increasing.
    pub fn is_consistent(&self) -> bool {
        let size = self.parent.len();
        let mut seen = vec![false; size];
        for (p, kids) in self.children.iter().enumerate() {
            for (pos, &c) in kids.iter().enumerate() {
                if c == 0 || c >= size || seen[c] || self.parent[c] != p || self.child_pos[c] != pos {
                    return false;
                }
                if pos > 0 && kids[pos - 1] >= c {
                    return false;
                }
                seen[c] = true;
            }
        }
        (1..size).all(|i| seen[i] && self.parent[i] < i)
    }

    /// Parenthesised dump, e.g. `0(1(2 3) 4)`.
    pub fn to_paren_string(&self) -> String {
        write_paren(self, None)
    }
}

impl fmt::Display for OrdinalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_paren_string())
    }
}

fn write_paren(tree: &OrdinalTree, colors: Option<&[Color]>) -> String {
    enum Step {
        Open(usize),
        Close,
    }
    let mut out = String::new();
    let mut stack = vec![Step::Open(0)];
    while let Some(step) = stack.pop() {
        match step {
            Step::Open(v) => {
                if !out.is_empty() && !out.ends_with('(') {
                    out.push(' ');
                }
                out.push_str(&v.to_string());
                if let Some(c) = colors {
                    out.push(c[v].suffix());
                }
                let kids = tree.children(v);
                if !kids.is_empty() {
                    out.push('(');
                    stack.push(Step::Close);
                    stack.extend(kids.iter().rev().map(|&c| Step::Open(c)));
                }
            }
            Step::Close => out.push(')'),
        }
    }
    out
}

/// A heap together with a red/blue color per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTree {
    tree: OrdinalTree,
    colors: Vec<Color>,
}

impl ColoredTree {
    pub fn new(tree: OrdinalTree, colors: Vec<Color>) -> Self {
        assert_eq!(tree.n() + 1, colors.len(), "one color per node");
        ColoredTree { tree, colors }
    }

    pub fn tree(&self) -> &OrdinalTree {
        &self.tree
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn color(&self, i: usize) -> Color {
        self.colors[i]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Red nodes in increasing order.
    pub fn red_nodes(&self) -> Vec<usize> {
        (0..self.colors.len()).filter(|&i| self.colors[i] == Color::Red).collect()
    }

    /// Parenthesised dump with `r`/`b` suffixes, e.g. `0b(1r 2b)`.
    pub fn to_paren_string(&self) -> String {
        write_paren(&self.tree, Some(&self.colors))
    }
}

impl fmt::Display for ColoredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_paren_string())
    }
}

fn build_from(a: &ValueArray, kind: QueryKind) -> OrdinalTree {
    let mut parents = Vec::with_capacity(a.len() + 1);
    parents.push(0);
    parents.extend(all_nearest(a, kind));
    OrdinalTree::from_parents(&parents).expect("nearest previous index is always smaller")
}

/// 2d-min heap: `parent(i) = PSV(i)`.
pub fn build_min_heap(a: &ValueArray) -> OrdinalTree {
    build_from(a, QueryKind::Psv)
}

/// 2d-max heap: `parent(i) = PLV(i)`.
pub fn build_max_heap(a: &ValueArray) -> OrdinalTree {
    build_from(a, QueryKind::Plv)
}

pub fn build_heap(a: &ValueArray, kind: HeapKind) -> OrdinalTree {
    match kind {
        HeapKind::Min => build_min_heap(a),
        HeapKind::Max => build_max_heap(a),
    }
}

/// Colors each node red iff its immediate right sibling holds a different value.
pub fn colorize(tree: &OrdinalTree, a: &ValueArray) -> ColoredTree {
    assert_eq!(tree.n(), a.len(), "tree and array sizes differ");
    let mut colors = vec![Color::Blue; tree.n() + 1];
    for (i, color) in colors.iter_mut().enumerate().skip(1) {
        if let Some(s) = tree.right_sibling(i) {
            if a.get(i) != a.get(s) {
                *color = Color::Red;
            }
        }
    }
    ColoredTree::new(tree.clone(), colors)
}

/// First `0 < i < n` where "leaf in min heap ⇔ internal in max heap" fails.
pub fn claim1_violation(min: &OrdinalTree, max: &OrdinalTree) -> Option<usize> {
    assert_eq!(min.n(), max.n(), "trees of different sizes");
    (1..min.n()).find(|&i| min.is_leaf(i) == max.is_leaf(i))
}

/// Leaf/internal duality between the two heaps for every `0 < i < n`.
pub fn check_claim1(min: &OrdinalTree, max: &OrdinalTree) -> bool {
    claim1_violation(min, max).is_none()
}

/// First leaf that has a right sibling but is not red.
pub fn claim2_violation(ct: &ColoredTree) -> Option<usize> {
    let t = ct.tree();
    (1..=t.n()).find(|&i| t.is_leaf(i) && t.has_right_sibling(i) && ct.color(i) != Color::Red)
}

/// Every leaf with a right sibling is red.
pub fn check_claim2(ct: &ColoredTree) -> bool {
    claim2_violation(ct).is_none()
}

/// Sibling values are non-increasing in a min heap, non-decreasing in a max heap.
pub fn check_sibling_monotonicity(tree: &OrdinalTree, a: &ValueArray, kind: HeapKind) -> bool {
    (0..=tree.n()).all(|p| {
        tree.children(p).windows(2).all(|w| {
            let (x, y) = (a.get(w[0]), a.get(w[1]));
            match kind {
                HeapKind::Min => x >= y,
                HeapKind::Max => x <= y,
            }
        })
    })
}
