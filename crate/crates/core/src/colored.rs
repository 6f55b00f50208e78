//! The colored heap pair for arrays without consecutive equal elements.
//!
//! Besides the two degree streams of the joint encoding, each `0 < i < n` is
//! classified by whether it has right siblings in the min heap and in the
//! max heap:
//!
//! - *good*: right siblings in neither heap. One bit of `U` goes to `u_gb`.
//! - *bad*: right siblings in both. One bit of `U` goes to `u_gb`, and its
//!   color in the heap where it is internal goes to `v_bad`.
//! - *neutral*: right siblings in exactly one heap. A single trit goes to
//!   `v_neutral`: `2` when the heap where `i` is internal is the one without
//!   right siblings, otherwise the color there.
//!
//! Every remaining color is implied. A node without right siblings is blue,
//! and a leaf with a right sibling is red. There are as many good indices as
//! bad ones, so the payload is `2n + 3g + (n - 1 - 2g)·log 3` bits up to trit
//! packing slack, which is largest at `g = 0`.

use std::fmt;

use crate::array::{QueryKind, ValueArray};
use crate::bitio::{pack_trits, packed_trit_bits, read_degree, write_degree, BitStream, TritString};
use crate::error::{corrupt, Error, Result};
use crate::heap::{
    build_max_heap, build_min_heap, claim1_violation, claim2_violation, colorize, Color, ColoredTree,
    HeapKind, OrdinalTree,
};
use crate::preorder::PreorderBuilder;
use crate::query::{query_pair, NearestValues};

/// Right-sibling class of an index `0 < i < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexClass {
    Good,
    Bad,
    Neutral,
}

impl IndexClass {
    fn from_siblings(in_min: bool, in_max: bool) -> Self {
        match (in_min, in_max) {
            (false, false) => IndexClass::Good,
            (true, true) => IndexClass::Bad,
            _ => IndexClass::Neutral,
        }
    }
}

impl fmt::Display for IndexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexClass::Good => "good",
            IndexClass::Bad => "bad",
            IndexClass::Neutral => "neutral",
        })
    }
}

/// Classifies `0 < i < n` from the two heaps.
pub fn classify_index(min: &OrdinalTree, max: &OrdinalTree, i: usize) -> Result<IndexClass> {
    if i == 0 || i >= min.n() {
        return Err(Error::IndexOutOfRange { index: i, n: min.n().saturating_sub(1) });
    }
    Ok(IndexClass::from_siblings(min.has_right_sibling(i), max.has_right_sibling(i)))
}

/// Number of good and bad indices among `0 < i < n`.
pub fn count_good_bad(min: &OrdinalTree, max: &OrdinalTree) -> (usize, usize) {
    let mut good = 0;
    let mut bad = 0;
    for i in 1..min.n() {
        match IndexClass::from_siblings(min.has_right_sibling(i), max.has_right_sibling(i)) {
            IndexClass::Good => good += 1,
            IndexClass::Bad => bad += 1,
            IndexClass::Neutral => {}
        }
    }
    (good, bad)
}

/// Payload size `2n + 3g + packed(m)` for `m = n - 1 - 2g` neutral indices.
pub fn colored_size_bits(n: usize, g: usize, m: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::EmptyArray);
    }
    if 2 * g > n - 1 || m != n - 1 - 2 * g {
        return Err(Error::InvalidArgument(format!(
            "inconsistent sizes: n = {n}, g = {g}, m = {m} (expected m = n - 1 - 2g)"
        )));
    }
    Ok(2 * n + 3 * g + packed_trit_bits(m))
}

/// The analytic bound `(2 + log2 3)·n`.
pub fn colored_bound(n: usize) -> f64 {
    (2.0 + 3f64.log2()) * n as f64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredEncoding {
    n: usize,
    u_gb: BitStream,
    v_bad: BitStream,
    v_neutral: TritString,
    t_min: BitStream,
    t_max: BitStream,
}

impl ColoredEncoding {
    pub fn from_parts(
        n: usize,
        u_gb: BitStream,
        v_bad: BitStream,
        v_neutral: TritString,
        t_min: BitStream,
        t_max: BitStream,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyArray);
        }
        Ok(ColoredEncoding {
            n,
            u_gb,
            v_bad,
            v_neutral,
            t_min,
            t_max,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u_gb(&self) -> &BitStream {
        &self.u_gb
    }

    pub fn v_bad(&self) -> &BitStream {
        &self.v_bad
    }

    pub fn v_neutral(&self) -> &TritString {
        &self.v_neutral
    }

    pub fn t_min(&self) -> &BitStream {
        &self.t_min
    }

    pub fn t_max(&self) -> &BitStream {
        &self.t_max
    }

    /// Number of good (equivalently, bad) indices.
    pub fn g(&self) -> usize {
        self.v_bad.len()
    }

    /// Bit lengths in payload order: `u_gb, v_bad, packed v_neutral, t_min, t_max`.
    pub fn segment_lengths(&self) -> [usize; 5] {
        [
            self.u_gb.len(),
            self.v_bad.len(),
            packed_trit_bits(self.v_neutral.len()),
            self.t_min.len(),
            self.t_max.len(),
        ]
    }

    pub fn payload_bits(&self) -> usize {
        self.segment_lengths().iter().sum()
    }

    pub fn payload(&self) -> BitStream {
        let mut out = BitStream::with_capacity(self.payload_bits());
        out.extend_from(&self.u_gb);
        out.extend_from(&self.v_bad);
        out.extend_from(&pack_trits(&self.v_neutral));
        out.extend_from(&self.t_min);
        out.extend_from(&self.t_max);
        out
    }
}

fn require_implied_colors(ct: &ColoredTree, kind: HeapKind) -> Result<()> {
    let t = ct.tree();
    let name = match kind {
        HeapKind::Min => "min",
        HeapKind::Max => "max",
    };
    if ct.color(0) != Color::Blue {
        return Err(Error::Precondition {
            index: 0,
            reason: format!("root of the {name} heap must be blue"),
        });
    }
    if let Some(i) = (1..=t.n()).find(|&i| !t.has_right_sibling(i) && ct.color(i) == Color::Red) {
        return Err(Error::Precondition {
            index: i,
            reason: format!("node {i} has no right sibling in the {name} heap but is red"),
        });
    }
    if let Some(i) = claim2_violation(ct) {
        return Err(Error::Precondition {
            index: i,
            reason: format!("leaf {i} has a right sibling in the {name} heap but is blue"),
        });
    }
    Ok(())
}

/// Encodes a colored heap pair.
pub fn encode_colored(cmin: &ColoredTree, cmax: &ColoredTree) -> Result<ColoredEncoding> {
    let (min, max) = (cmin.tree(), cmax.tree());
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
    require_implied_colors(cmin, HeapKind::Min)?;
    require_implied_colors(cmax, HeapKind::Max)?;

    let mut u_gb = BitStream::new();
    let mut v_bad = BitStream::new();
    let mut v_neutral = TritString::new();
    let mut t_min = BitStream::with_capacity(n + 1);
    let mut t_max = BitStream::with_capacity(n + 1);
    write_degree(&mut t_min, min.degree(0));
    write_degree(&mut t_max, max.degree(0));
    for i in 1..n {
        let leaf_in_min = min.is_leaf(i);
        let (rel_tree, rel_colored) = if leaf_in_min { (max, cmax) } else { (min, cmin) };
        match IndexClass::from_siblings(min.has_right_sibling(i), max.has_right_sibling(i)) {
            IndexClass::Good => u_gb.push(leaf_in_min),
            IndexClass::Bad => {
                u_gb.push(leaf_in_min);
                v_bad.push(rel_colored.color(i).bit());
            }
            IndexClass::Neutral => {
                let c = if rel_tree.has_right_sibling(i) {
                    u8::from(rel_colored.color(i).bit())
                } else {
                    2
                };
                v_neutral.push(c);
            }
        }
        if leaf_in_min {
            write_degree(&mut t_max, max.degree(i));
        } else {
            write_degree(&mut t_min, min.degree(i));
        }
    }
    Ok(ColoredEncoding {
        n,
        u_gb,
        v_bad,
        v_neutral,
        t_min,
        t_max,
    })
}

/// Rebuilds `(cmin, cmax)` from a colored encoding.
pub fn decode_colored(e: &ColoredEncoding) -> Result<(ColoredTree, ColoredTree)> {
    let n = e.n;
    let mut rmin = e.t_min.reader();
    let mut rmax = e.t_max.reader();
    let mut r_gb = e.u_gb.reader();
    let mut r_bad = e.v_bad.reader();
    let mut trits = e.v_neutral.iter();

    let mut bmin = PreorderBuilder::new(n, read_degree(&mut rmin)?);
    let mut bmax = PreorderBuilder::new(n, read_degree(&mut rmax)?);
    let mut col_min = vec![Color::Blue; n + 1];
    let mut col_max = vec![Color::Blue; n + 1];

    for i in 1..=n {
        let sib_min = bmin.attach(i)?;
        let sib_max = bmax.attach(i)?;
        if i == n {
            break;
        }
        let leaf_in_min = match IndexClass::from_siblings(sib_min, sib_max) {
            IndexClass::Good => r_gb.read_bit()?,
            IndexClass::Bad => {
                let leaf_in_min = r_gb.read_bit()?;
                let rel = Color::from_bit(r_bad.read_bit()?);
                if leaf_in_min {
                    col_max[i] = rel;
                    col_min[i] = Color::Red;
                } else {
                    col_min[i] = rel;
                    col_max[i] = Color::Red;
                }
                leaf_in_min
            }
            IndexClass::Neutral => {
                let c = trits
                    .next()
                    .ok_or_else(|| corrupt(format!("v_neutral exhausted at index {i}")))?;
                // `sib_min` tells which heap has the right siblings
                let (other_colors, other_is_min) = if sib_min {
                    (&mut col_min, true)
                } else {
                    (&mut col_max, false)
                };
                if c == 2 {
                    // internal in the sibling-free heap, a red leaf in the other
                    other_colors[i] = Color::Red;
                    other_is_min
                } else {
                    other_colors[i] = Color::from_bit(c == 1);
                    !other_is_min
                }
            }
        };
        if leaf_in_min {
            bmax.set_degree(i, read_degree(&mut rmax)?);
        } else {
            bmin.set_degree(i, read_degree(&mut rmin)?);
        }
    }
    rmin.expect_exhausted("t_min")?;
    rmax.expect_exhausted("t_max")?;
    r_gb.expect_exhausted("u_gb")?;
    r_bad.expect_exhausted("v_bad")?;
    if trits.next().is_some() {
        return Err(corrupt("unconsumed trits in v_neutral"));
    }
    Ok((
        ColoredTree::new(bmin.finish()?, col_min),
        ColoredTree::new(bmax.finish()?, col_max),
    ))
}

/// Colored min and max heaps; answers all four queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPair {
    pub min: ColoredTree,
    pub max: ColoredTree,
}

impl ColoredPair {
    /// Builds and colors both heaps; the array must not have consecutive equal elements.
    pub fn from_array(a: &ValueArray) -> Result<Self> {
        a.require_no_consecutive_equal()?;
        Ok(Self::build_unchecked(a))
    }

    // Also valid for arrays with equal neighbours; only encoding needs the precondition.
    pub(crate) fn build_unchecked(a: &ValueArray) -> Self {
        ColoredPair {
            min: colorize(&build_min_heap(a), a),
            max: colorize(&build_max_heap(a), a),
        }
    }

    pub fn decode(e: &ColoredEncoding) -> Result<Self> {
        let (min, max) = decode_colored(e)?;
        Ok(ColoredPair { min, max })
    }

    pub fn encode(&self) -> Result<ColoredEncoding> {
        encode_colored(&self.min, &self.max)
    }

    pub fn count_good_bad(&self) -> (usize, usize) {
        count_good_bad(self.min.tree(), self.max.tree())
    }
}

impl NearestValues for ColoredPair {
    fn len(&self) -> usize {
        self.min.n()
    }

    fn query(&self, kind: QueryKind, i: usize) -> Result<usize> {
        query_pair(&self.min, &self.max, kind, i)
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
    fn classify_running_example() {
        let a = sample();
        let (min, max) = (build_min_heap(&a), build_max_heap(&a));
        let classes: Vec<IndexClass> = (1..9).map(|i| classify_index(&min, &max, i).unwrap()).collect();
        use IndexClass::*;
        assert_eq!(classes, vec![Bad, Bad, Neutral, Neutral, Neutral, Good, Good, Neutral]);
        assert!(classify_index(&min, &max, 9).is_err());
        assert!(classify_index(&min, &max, 0).is_err());
        assert_eq!(count_good_bad(&min, &max), (2, 2));
    }

    #[test]
    fn running_example_strings() {
        let e = ColoredPair::from_array(&sample()).unwrap().encode().unwrap();
        assert_eq!(e.u_gb().to_string(), "0100");
        assert_eq!(e.v_bad().to_string(), "10");
        assert_eq!(e.v_neutral().to_string(), "2022");
        assert_eq!(e.t_min().to_string(), "110100010");
        assert_eq!(e.t_max().to_string(), "110110000");
        assert_eq!(e.g(), 2);
        assert_eq!(e.segment_lengths(), [4, 2, 7, 9, 9]);
        assert_eq!(e.payload_bits(), 31);
        assert!(31.0 <= (colored_bound(9)).ceil() + 2.0);
    }

    #[test]
    fn decode_running_example_strings() {
        let e = ColoredEncoding::from_parts(
            9,
            "0100".parse().unwrap(),
            "10".parse().unwrap(),
            "2022".parse().unwrap(),
            "110100010".parse().unwrap(),
            "110110000".parse().unwrap(),
        )
        .unwrap();
        let pair = ColoredPair::decode(&e).unwrap();
        assert_eq!(pair.min.red_nodes(), vec![2, 5, 8]);
        assert_eq!(pair.max.red_nodes(), vec![1, 2, 3, 4]);
        assert_eq!(pair, ColoredPair::from_array(&sample()).unwrap());
    }

    #[test]
    fn single_element() {
        let pair = ColoredPair::from_array(&arr(&[5])).unwrap();
        let e = pair.encode().unwrap();
        assert!(e.u_gb().is_empty() && e.v_bad().is_empty() && e.v_neutral().is_empty());
        assert_eq!(e.payload_bits(), 2);
        let back = ColoredPair::decode(&e).unwrap();
        assert_eq!(back.min.to_paren_string(), "0b(1b)");
        assert_eq!(back.max.to_paren_string(), "0b(1b)");
    }

    #[test]
    fn size_formula() {
        assert_eq!(colored_size_bits(9, 2, 4).unwrap(), 31);
        assert_eq!(colored_size_bits(1, 0, 0).unwrap(), 2);
        assert!(colored_size_bits(9, 2, 5).is_err());
        assert!(colored_size_bits(3, 2, 0).is_err());
        assert!(colored_size_bits(0, 0, 0).is_err());
    }

    #[test]
    fn size_formula_sweep_within_bound() {
        for n in 1..=10_000usize {
            for g in 0..=(n - 1) / 2 {
                let bits = colored_size_bits(n, g, n - 1 - 2 * g).unwrap() as f64;
                assert!(bits <= 3.586 * n as f64 + 70.0, "n={n} g={g}");
            }
        }
    }

    #[test]
    fn encode_rejects_consecutive_equal() {
        let a = arr(&[7, 7, 7]);
        assert!(matches!(ColoredPair::from_array(&a), Err(Error::Precondition { index: 1, .. })));
        let raw = ColoredPair::build_unchecked(&arr(&[3, 3, 1]));
        assert!(matches!(raw.encode(), Err(Error::Precondition { .. })));
    }

    #[test]
    fn decode_detects_corruption() {
        let e = ColoredPair::from_array(&sample()).unwrap().encode().unwrap();
        let bad_trit = ColoredEncoding {
            v_neutral: "202".parse().unwrap(),
            ..e.clone()
        };
        assert!(matches!(decode_colored(&bad_trit), Err(Error::Corrupt(_))));
        let extra = ColoredEncoding {
            v_bad: "101".parse().unwrap(),
            ..e.clone()
        };
        assert!(matches!(decode_colored(&extra), Err(Error::Corrupt(_))));
        let short = ColoredEncoding {
            t_max: "11011000".parse().unwrap(),
            ..e
        };
        assert!(decode_colored(&short).is_err());
    }

    #[test]
    fn queries_match_oracle() {
        let a = arr(&[4, 9, 2, 7, 7 + 1, 1, 6, 3, 5, 0, 4]);
        let pair = ColoredPair::decode(&ColoredPair::from_array(&a).unwrap().encode().unwrap()).unwrap();
        for kind in QueryKind::ALL {
            for i in 1..=a.len() {
                assert_eq!(pair.query(kind, i).unwrap(), oracle(&a, kind, i).unwrap(), "{kind}({i})");
            }
        }
    }
}
