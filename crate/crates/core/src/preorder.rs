use crate::error::{corrupt, Result};
use crate::heap::OrdinalTree;

/// Rebuilds a preorder-labeled tree from node degrees learned one node at a
/// time. Each new node becomes the rightmost child of the deepest node on the
/// rightmost path that still lacks children.
#[derive(Debug)]
pub(crate) struct PreorderBuilder {
    parents: Vec<usize>,
    // (node, children still expected), deepest last
    open: Vec<(usize, usize)>,
}

impl PreorderBuilder {
    pub fn new(n: usize, root_degree: usize) -> Self {
        let mut parents = Vec::with_capacity(n + 1);
        parents.push(0);
        PreorderBuilder {
            parents,
            open: vec![(0, root_degree)],
        }
    }

    /// Attaches the next node (labels must arrive as `1, 2, ...`) and reports
    /// whether it will have a right sibling.
    pub fn attach(&mut self, i: usize) -> Result<bool> {
        debug_assert_eq!(i, self.parents.len());
        while matches!(self.open.last(), Some(&(_, 0))) {
            self.open.pop();
        }
        let Some(top) = self.open.last_mut() else {
            return Err(corrupt(format!("node {i} has no parent with a free child slot")));
        };
        top.1 -= 1;
        self.parents.push(top.0);
        Ok(top.1 > 0)
    }

    /// Records the degree of the most recently attached node.
    pub fn set_degree(&mut self, i: usize, degree: usize) {
        debug_assert_eq!(i + 1, self.parents.len());
        if degree > 0 {
            self.open.push((i, degree));
        }
    }

    pub fn finish(self) -> Result<OrdinalTree> {
        if let Some(&(node, missing)) = self.open.iter().find(|&&(_, m)| m > 0) {
            return Err(corrupt(format!("node {node} is missing {missing} children")));
        }
        Ok(OrdinalTree::from_parents(&self.parents).expect("parents precede children"))
    }
}
