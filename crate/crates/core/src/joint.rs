//! The uncolored pair (min heap, max heap) in exactly `3n - 1` bits.
//!
//! For arrays without consecutive equal elements every `0 < i < n` is a leaf
//! in exactly one of the two heaps. `U[i]` records which; node `i`'s degree is
//! then written (as `1^(d-1) 0`) only into the stream of the heap where it is
//! internal. Node 0 is written to both streams and node `n` to neither.

use crate::array::{QueryKind, ValueArray};
use crate::bitio::{read_degree, write_degree, BitStream};
use crate::error::{Error, Result};
use crate::heap::{build_max_heap, build_min_heap, claim1_violation, OrdinalTree};
use crate::preorder::PreorderBuilder;
use crate::query::NearestValues;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointEncoding {
    n: usize,
    u: BitStream,
    t_min: BitStream,
    t_max: BitStream,
}

impl JointEncoding {
    /// Assembles an encoding from its three strings; only lengths are checked.
    pub fn from_parts(n: usize, u: BitStream, t_min: BitStream, t_max: BitStream) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyArray);
        }
        if u.len() != n - 1 {
            return Err(Error::Corrupt(format!("U has {} bits, expected {}", u.len(), n - 1)));
        }
        Ok(JointEncoding { n, u, t_min, t_max })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `U[i]` is bit `i - 1`.
    pub fn u(&self) -> &BitStream {
        &self.u
    }

    pub fn t_min(&self) -> &BitStream {
        &self.t_min
    }

    pub fn t_max(&self) -> &BitStream {
        &self.t_max
    }

    /// Bit lengths of `U`, `T_min`, `T_max` in payload order.
    pub fn segment_lengths(&self) -> [usize; 3] {
        [self.u.len(), self.t_min.len(), self.t_max.len()]
    }

    pub fn payload_bits(&self) -> usize {
        self.segment_lengths().iter().sum()
    }

    /// `U ‖ T_min ‖ T_max`.
    pub fn payload(&self) -> BitStream {
        let mut out = BitStream::with_capacity(self.payload_bits());
        out.extend_from(&self.u);
        out.extend_from(&self.t_min);
        out.extend_from(&self.t_max);
        out
    }
}

/// Writes `U`, `T_min` and `T_max` for a pair of heaps.
pub fn encode_joint(min: &OrdinalTree, max: &OrdinalTree) -> Result<JointEncoding> {
    let n = min.n();
    if n != max.n() {
        return Err(Error::InvalidArgument(format!("tree sizes differ: {n} vs {}", max.n())));
    }
    if n == 0 {
        return Err(Error::EmptyArray);
    }
    if !min.is_preorder_labeled() || !max.is_preorder_labeled() {
        return Err(Error::InvalidArgument("trees must be preorder-labeled".into()));
    }
    if let Some(i) = claim1_violation(min, max) {
        return Err(Error::Precondition {
            index: i,
            reason: format!(
                "node {i} is {} in both heaps",
                if min.is_leaf(i) { "a leaf" } else { "internal" }
            ),
        });
    }
    let mut u = BitStream::with_capacity(n - 1);
    let mut t_min = BitStream::with_capacity(n + 1);
    let mut t_max = BitStream::with_capacity(n + 1);
    write_degree(&mut t_min, min.degree(0));
    write_degree(&mut t_max, max.degree(0));
    for i in 1..n {
        let leaf_in_min = min.is_leaf(i);
        u.push(leaf_in_min);
        if leaf_in_min {
            write_degree(&mut t_max, max.degree(i));
        } else {
            write_degree(&mut t_min, min.degree(i));
        }
    }
    Ok(JointEncoding { n, u, t_min, t_max })
}

/// Rebuilds `(min heap, max heap)` from the three strings.
pub fn decode_joint(e: &JointEncoding) -> Result<(OrdinalTree, OrdinalTree)> {
    let n = e.n;
    let mut rmin = e.t_min.reader();
    let mut rmax = e.t_max.reader();
    let mut bmin = PreorderBuilder::new(n, read_degree(&mut rmin)?);
    let mut bmax = PreorderBuilder::new(n, read_degree(&mut rmax)?);
    for i in 1..=n {
        bmin.attach(i)?;
        bmax.attach(i)?;
        if i < n {
            if e.u.get(i - 1) {
                bmax.set_degree(i, read_degree(&mut rmax)?);
            } else {
                bmin.set_degree(i, read_degree(&mut rmin)?);
            }
        }
    }
    rmin.expect_exhausted("T_min")?;
    rmax.expect_exhausted("T_max")?;
    Ok((bmin.finish()?, bmax.finish()?))
}

/// Decoded (or freshly built) uncolored heap pair; answers PSV and PLV only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointPair {
    pub min: OrdinalTree,
    pub max: OrdinalTree,
}

impl JointPair {
    /// Builds both heaps; the array must not have consecutive equal elements.
    pub fn from_array(a: &ValueArray) -> Result<Self> {
        a.require_no_consecutive_equal()?;
        Ok(JointPair {
            min: build_min_heap(a),
            max: build_max_heap(a),
        })
    }

    pub fn decode(e: &JointEncoding) -> Result<Self> {
        let (min, max) = decode_joint(e)?;
        Ok(JointPair { min, max })
    }

    pub fn encode(&self) -> Result<JointEncoding> {
        encode_joint(&self.min, &self.max)
    }
}

impl NearestValues for JointPair {
    fn len(&self) -> usize {
        self.min.n()
    }

    fn query(&self, kind: QueryKind, i: usize) -> Result<usize> {
        crate::array::check_index(i, self.min.n())?;
        match kind {
            QueryKind::Psv => Ok(self.min.parent(i).expect("non-root")),
            QueryKind::Plv => Ok(self.max.parent(i).expect("non-root")),
            _ => Err(Error::Unsupported(format!(
                "scheme 1 answers psv/plv only, not {kind}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::oracle;

    fn arr(v: &[i64]) -> ValueArray {
        ValueArray::new(v.to_vec()).unwrap()
    }

    fn sample() -> ValueArray {
        arr(&[3, 8, 5, 6, 3, 2, 7, 10, 9])
    }

    #[test]
    fn running_example_strings() {
        let e = JointPair::from_array(&sample()).unwrap().encode().unwrap();
        assert_eq!(e.u().to_string(), "01011001");
        assert_eq!(e.t_min().to_string(), "110100010");
        assert_eq!(e.t_max().to_string(), "110110000");
        assert_eq!(e.payload_bits(), 26);
    }

    #[test]
    fn tiny_examples() {
        let e = JointPair::from_array(&arr(&[5])).unwrap().encode().unwrap();
        assert_eq!(e.segment_lengths(), [0, 1, 1]);
        assert_eq!(e.t_min().to_string(), "0");
        assert_eq!(e.t_max().to_string(), "0");

        let e = JointPair::from_array(&arr(&[1, 2])).unwrap().encode().unwrap();
        assert_eq!(e.u().to_string(), "0");
        assert_eq!(e.t_min().to_string(), "00");
        assert_eq!(e.t_max().to_string(), "10");
        assert_eq!(e.payload_bits(), 5);
    }

    #[test]
    fn decode_running_example() {
        let a = sample();
        let pair = JointPair::from_array(&a).unwrap();
        let e = JointEncoding::from_parts(
            9,
            "01011001".parse().unwrap(),
            "110100010".parse().unwrap(),
            "110110000".parse().unwrap(),
        )
        .unwrap();
        assert_eq!(JointPair::decode(&e).unwrap(), pair);
    }

    #[test]
    fn decode_single_node() {
        let e = JointEncoding::from_parts(1, BitStream::new(), "0".parse().unwrap(), "0".parse().unwrap())
            .unwrap();
        let (min, max) = decode_joint(&e).unwrap();
        assert_eq!(min.to_paren_string(), "0(1)");
        assert_eq!(max.to_paren_string(), "0(1)");
    }

    #[test]
    fn queries_psv_plv_only() {
        let a = sample();
        let pair = JointPair::from_array(&a).unwrap();
        for i in 1..=9 {
            assert_eq!(pair.query(QueryKind::Psv, i).unwrap(), oracle(&a, QueryKind::Psv, i).unwrap());
            assert_eq!(pair.query(QueryKind::Plv, i).unwrap(), oracle(&a, QueryKind::Plv, i).unwrap());
        }
        assert!(matches!(pair.query(QueryKind::Nsv, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rejects_consecutive_equal() {
        let err = JointPair::from_array(&arr(&[7, 7, 7])).unwrap_err();
        assert!(matches!(err, Error::Precondition { index: 1, .. }));
        let a = arr(&[2, 2, 1]);
        let err = encode_joint(&build_min_heap(&a), &build_max_heap(&a)).unwrap_err();
        assert!(matches!(err, Error::Precondition { index: 1, .. }));
    }

    #[test]
    fn corrupt_inputs() {
        // root claims 3 children but only 1 node exists
        let e = JointEncoding::from_parts(1, BitStream::new(), "110".parse().unwrap(), "0".parse().unwrap())
            .unwrap();
        assert!(matches!(decode_joint(&e), Err(Error::Corrupt(_))));
        // trailing bit
        let e = JointEncoding::from_parts(1, BitStream::new(), "00".parse().unwrap(), "0".parse().unwrap())
            .unwrap();
        assert!(matches!(decode_joint(&e), Err(Error::Corrupt(_))));
        // truncated
        let e = JointEncoding::from_parts(2, "0".parse().unwrap(), "0".parse().unwrap(), "10".parse().unwrap())
            .unwrap();
        assert!(matches!(decode_joint(&e), Err(Error::Corrupt(_))));
        assert!(JointEncoding::from_parts(3, BitStream::new(), BitStream::new(), BitStream::new()).is_err());
    }
}
