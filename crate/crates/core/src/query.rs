//! Answering the four queries from colored heaps, without the array.
//!
//! Previous-queries are parent lookups. Next-queries walk right along a
//! chain of blue (equal-valued) siblings; the first red node's right sibling
//! is the answer. If the chain ends, the answer is the right sibling of the
//! nearest non-root ancestor that has one, or `n + 1`.

use crate::array::{check_index, oracle, QueryKind, ValueArray};
use crate::error::Result;
use crate::heap::{Color, ColoredTree};

/// Anything that can answer nearest smaller/larger value queries on 1-based indices.
pub trait NearestValues {
    /// Length of the underlying array.
    fn len(&self) -> usize;

    fn query(&self, kind: QueryKind, i: usize) -> Result<usize>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl NearestValues for ValueArray {
    fn len(&self) -> usize {
        ValueArray::len(self)
    }

    fn query(&self, kind: QueryKind, i: usize) -> Result<usize> {
        oracle(self, kind, i)
    }
}

fn previous(ct: &ColoredTree, i: usize) -> Result<usize> {
    check_index(i, ct.n())?;
    Ok(ct.tree().parent(i).expect("non-root node"))
}

fn next(ct: &ColoredTree, i: usize) -> Result<usize> {
    check_index(i, ct.n())?;
    let tree = ct.tree();
    let mut j = i;
    while let Some(s) = tree.right_sibling(j) {
        if ct.color(j) == Color::Red {
            return Ok(s);
        }
        j = s;
    }
    let mut up = tree.parent(j).expect("non-root node");
    while up != 0 {
        if let Some(s) = tree.right_sibling(up) {
            return Ok(s);
        }
        up = tree.parent(up).expect("non-root node");
    }
    Ok(ct.n() + 1)
}

/// `PSV(i)` as the parent of `i` in the colored min heap.
pub fn psv_from_tree(cmin: &ColoredTree, i: usize) -> Result<usize> {
    previous(cmin, i)
}

/// `NSV(i)` by the color walk on the colored min heap.
pub fn nsv_from_tree(cmin: &ColoredTree, i: usize) -> Result<usize> {
    next(cmin, i)
}

/// `PLV(i)` as the parent of `i` in the colored max heap.
pub fn plv_from_tree(cmax: &ColoredTree, i: usize) -> Result<usize> {
    previous(cmax, i)
}

/// `NLV(i)` by the color walk on the colored max heap.
pub fn nlv_from_tree(cmax: &ColoredTree, i: usize) -> Result<usize> {
    next(cmax, i)
}

/// Dispatches a query to the right tree of a `(cmin, cmax)` pair.
pub fn query_pair(cmin: &ColoredTree, cmax: &ColoredTree, kind: QueryKind, i: usize) -> Result<usize> {
    match kind {
        QueryKind::Psv => psv_from_tree(cmin, i),
        QueryKind::Nsv => nsv_from_tree(cmin, i),
        QueryKind::Plv => plv_from_tree(cmax, i),
        QueryKind::Nlv => nlv_from_tree(cmax, i),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::heap::{build_max_heap, build_min_heap, colorize};

    fn sample() -> ValueArray {
        ValueArray::new(vec![3, 8, 5, 6, 3, 2, 7, 10, 9]).unwrap()
    }

    fn colored(a: &ValueArray) -> (ColoredTree, ColoredTree) {
        (colorize(&build_min_heap(a), a), colorize(&build_max_heap(a), a))
    }

    #[test]
    fn min_side_examples() {
        let (cmin, _) = colored(&sample());
        assert_eq!(psv_from_tree(&cmin, 9).unwrap(), 7);
        assert_eq!(psv_from_tree(&cmin, 6).unwrap(), 0);
        assert_eq!(nsv_from_tree(&cmin, 1).unwrap(), 6);
        assert_eq!(nsv_from_tree(&cmin, 9).unwrap(), 10);
        assert_eq!(nsv_from_tree(&cmin, 2).unwrap(), 3);

        let chain = ValueArray::new(vec![1, 2, 3]).unwrap();
        let (cmin, _) = colored(&chain);
        assert_eq!(psv_from_tree(&cmin, 3).unwrap(), 2);
    }

    #[test]
    fn max_side_examples() {
        let (_, cmax) = colored(&sample());
        assert_eq!(nlv_from_tree(&cmax, 5).unwrap(), 7);
        assert_eq!(plv_from_tree(&cmax, 9).unwrap(), 8);
        assert_eq!(nlv_from_tree(&cmax, 8).unwrap(), 10);
    }

    #[test]
    fn range_errors() {
        let (cmin, cmax) = colored(&sample());
        assert_eq!(psv_from_tree(&cmin, 0), Err(Error::IndexOutOfRange { index: 0, n: 9 }));
        assert!(nlv_from_tree(&cmax, 10).is_err());
    }

    #[test]
    fn matches_oracle_with_equal_values() {
        // equal siblings exercise the blue hops
        let a = ValueArray::new(vec![2, 5, 2, 5, 2, 1, 5, 5, 3, 3, 1]).unwrap();
        let (cmin, cmax) = colored(&a);
        for kind in QueryKind::ALL {
            for i in 1..=a.len() {
                assert_eq!(
                    query_pair(&cmin, &cmax, kind, i).unwrap(),
                    oracle(&a, kind, i).unwrap(),
                    "{kind}({i})"
                );
            }
        }
    }
}
