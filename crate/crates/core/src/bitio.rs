//! Bit-level primitives shared by the codecs.
//!
//! Bits are stored MSB-first: bit 0 of a stream is the most significant bit
//! of its first byte once serialized.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{corrupt, Error, Result};

/// Append-only bit sequence with an exact bit length.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitStream {
    words: Vec<u64>,
    len: usize,
}

impl BitStream {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitStream {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        let slot = self.len % 64;
        if slot == 0 {
            self.words.push(0);
        }
        if bit {
            *self.words.last_mut().unwrap() |= 1 << (63 - slot);
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u128, width: usize) {
        debug_assert!(width <= 128);
        debug_assert!(width == 128 || value >> width == 0, "value wider than {width} bits");
        for shift in (0..width).rev() {
            self.push((value >> shift) & 1 == 1);
        }
    }

    pub fn extend_from(&mut self, other: &BitStream) {
        for bit in other.iter() {
            self.push(bit);
        }
    }

    /// Bit at position `pos`.
    ///
    /// # Panics
    ///
    /// Panics if `pos >= len`.
    pub fn get(&self, pos: usize) -> bool {
        assert!(pos < self.len, "bit {pos} out of range (len {})", self.len);
        (self.words[pos / 64] >> (63 - pos % 64)) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |p| self.get(p))
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader { stream: self, pos: 0 }
    }

    /// Serializes to bytes, zero-padding the final byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.words.iter().flat_map(|w| w.to_be_bytes()).collect();
        out.truncate(self.len.div_ceil(8));
        out
    }

    /// Reads `len` bits from `bytes`; padding bits past `len` must be zero.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if bytes.len() != len.div_ceil(8) {
            return Err(corrupt(format!(
                "{} bytes cannot hold exactly {len} bits",
                bytes.len()
            )));
        }
        let mut stream = BitStream::with_capacity(len);
        for pos in 0..len {
            stream.push((bytes[pos / 8] >> (7 - pos % 8)) & 1 == 1);
        }
        if !len.is_multiple_of(8) {
            let pad = bytes[len / 8] & (0xff >> (len % 8));
            if pad != 0 {
                return Err(corrupt("nonzero padding bits"));
            }
        }
        Ok(stream)
    }

    /// Bits `[start, start + count)` as a new stream.
    pub fn slice(&self, start: usize, count: usize) -> BitStream {
        assert!(start + count <= self.len, "slice out of range");
        let mut s = BitStream::with_capacity(count);
        for p in start..start + count {
            s.push(self.get(p));
        }
        s
    }
}

impl FromIterator<bool> for BitStream {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut s = BitStream::new();
        for b in iter {
            s.push(b);
        }
        s
    }
}

impl FromStr for BitStream {
    type Err = Error;

    /// Parses a string of `0` and `1`; `·` and spaces are ignored as separators.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !matches!(c, ' ' | '·' | '_'))
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!("not a bit: {other:?}"))),
            })
            .collect()
    }
}

impl fmt::Display for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitStream({self})")
    }
}

/// Read cursor over a [`BitStream`].
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    stream: &'a BitStream,
    pos: usize,
}

impl BitReader<'_> {
    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.stream.len() - self.pos
    }

    pub fn is_exhausted(&self) -> bool {
        self.pos == self.stream.len()
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        if self.pos >= self.stream.len() {
            return Err(corrupt(format!("read past end of {}-bit stream", self.stream.len())));
        }
        let bit = self.stream.get(self.pos);
        self.pos += 1;
        Ok(bit)
    }

    /// Reads `width <= 128` bits as an unsigned integer, MSB first.
    pub fn read_bits(&mut self, width: usize) -> Result<u128> {
        debug_assert!(width <= 128);
        if width > self.remaining() {
            return Err(corrupt(format!(
                "need {width} bits, only {} remain",
                self.remaining()
            )));
        }
        let mut v = 0u128;
        for _ in 0..width {
            v = (v << 1) | u128::from(self.read_bit()?);
        }
        Ok(v)
    }

    /// Errors unless every bit has been consumed.
    pub fn expect_exhausted(&self, what: &str) -> Result<()> {
        if self.is_exhausted() {
            Ok(())
        } else {
            Err(corrupt(format!("{} unconsumed trailing bits in {what}", self.remaining())))
        }
    }
}

/// Writes degree `d >= 1` as `1^(d-1) 0`.
pub fn write_degree(s: &mut BitStream, d: usize) {
    assert!(d >= 1, "degree codes need d >= 1");
    for _ in 1..d {
        s.push(true);
    }
    s.push(false);
}

/// Reads a `1^(d-1) 0` code and returns `d`.
pub fn read_degree(r: &mut BitReader<'_>) -> Result<usize> {
    let mut d = 1;
    while r.read_bit()? {
        d += 1;
    }
    Ok(d)
}

/// A string over `{0, 1, 2}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TritString(Vec<u8>);

impl TritString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_trits(trits: Vec<u8>) -> Result<Self> {
        if let Some(bad) = trits.iter().find(|&&t| t > 2) {
            return Err(Error::InvalidArgument(format!("trit out of range: {bad}")));
        }
        Ok(TritString(trits))
    }

    pub fn push(&mut self, t: u8) {
        assert!(t <= 2, "trit out of range: {t}");
        self.0.push(t);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        self.0.iter().copied()
    }
}

impl FromStr for TritString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trits = s
            .chars()
            .map(|c| match c {
                '0'..='2' => Ok(c as u8 - b'0'),
                other => Err(Error::InvalidArgument(format!("not a trit: {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(TritString(trits))
    }
}

impl fmt::Display for TritString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Trits per full packing block.
pub const TRIT_BLOCK: usize = 41;
/// Bits per full packing block; `3^41 < 2^65`.
pub const TRIT_BLOCK_BITS: usize = 65;

fn pow3(t: usize) -> u128 {
    3u128.pow(t as u32)
}

/// Number of bits needed to write `v`.
pub fn bit_length(v: u128) -> usize {
    (128 - v.leading_zeros()) as usize
}

fn block_bits(t: usize) -> usize {
    bit_length(pow3(t) - 1)
}

/// Packed size of `m` trits.
pub fn packed_trit_bits(m: usize) -> usize {
    TRIT_BLOCK_BITS * (m / TRIT_BLOCK) + block_bits(m % TRIT_BLOCK)
}

/// Inverse of [`packed_trit_bits`], if `bits` is a reachable size.
pub fn trits_for_packed_bits(bits: usize) -> Option<usize> {
    let full = bits / TRIT_BLOCK_BITS;
    let rest = bits % TRIT_BLOCK_BITS;
    // block_bits is strictly increasing on 0..41 and never reaches 65
    (0..TRIT_BLOCK)
        .find(|&t| block_bits(t) == rest)
        .map(|t| full * TRIT_BLOCK + t)
}

/// Packs trits in 41-trit blocks, each block a base-3 number (first trit most
/// significant) written in 65 bits; the final partial block of `t` trits uses
/// `bit_length(3^t - 1)` bits.
pub fn pack_trits(t: &TritString) -> BitStream {
    let mut out = BitStream::with_capacity(packed_trit_bits(t.len()));
    for block in t.as_slice().chunks(TRIT_BLOCK) {
        let value = block.iter().fold(0u128, |acc, &d| acc * 3 + u128::from(d));
        out.push_bits(value, block_bits(block.len()));
    }
    out
}

/// Reads `m` packed trits.
pub fn unpack_trits(r: &mut BitReader<'_>, m: usize) -> Result<TritString> {
    let mut trits = Vec::with_capacity(m);
    let mut left = m;
    while left > 0 {
        let len = left.min(TRIT_BLOCK);
        let mut value = r.read_bits(block_bits(len))?;
        if value >= pow3(len) {
            return Err(corrupt(format!("trit block value {value} exceeds 3^{len} - 1")));
        }
        let start = trits.len();
        trits.resize(start + len, 0);
        for slot in trits[start..].iter_mut().rev() {
            *slot = (value % 3) as u8;
            value /= 3;
        }
        left -= len;
    }
    Ok(TritString(trits))
}

/// Exact `binom(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// Bit-length of `v`.
pub fn big_bit_length(v: &BigUint) -> usize {
    v.bits() as usize
}

/// Bits used to store a rank among `binom(len, k)` subsets: `⌈log2 binom(len, k)⌉`.
pub fn subset_rank_width(len: usize, k: usize) -> usize {
    let total = binomial(len, k);
    if total.is_zero() {
        return 0;
    }
    big_bit_length(&(total - 1u32))
}

/// Combinadic rank of a subset of `{0, .., len - 1}`.
///
/// With positions `p_1 < .. < p_k`, the rank is `Σ binom(p_j, j)`, which lies in
/// `[0, binom(len, k))`. Returns `(k, rank)`.
pub fn subset_rank(positions: &[usize], len: usize) -> Result<(usize, BigUint)> {
    for w in positions.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidArgument("positions must be strictly increasing".into()));
        }
    }
    if let Some(&last) = positions.last() {
        if last >= len {
            return Err(Error::InvalidArgument(format!("position {last} >= length {len}")));
        }
    }
    let k = positions.len();
    let mut rank = BigUint::zero();
    if k == 0 {
        return Ok((0, rank));
    }
    // walk p = 0..=p_k keeping cur = binom(p, j), j = 1 + ones before p
    let mut j = 1usize;
    let mut cur = BigUint::zero();
    let mut next_one = 0;
    for p in 0..=positions[k - 1] {
        if positions[next_one] == p {
            rank += &cur;
            next_one += 1;
            if next_one == k {
                break;
            }
            // binom(p + 1, j + 1) = binom(p, j) * (p + 1) / (j + 1)
            cur = step(cur, p, j, true);
            j += 1;
        } else {
            // binom(p + 1, j) = binom(p, j) * (p + 1) / (p + 1 - j)
            cur = step(cur, p, j, false);
        }
    }
    Ok((k, rank))
}

// Advances binom(p, j) to binom(p + 1, j + [grow]).
fn step(cur: BigUint, p: usize, j: usize, grow: bool) -> BigUint {
    let (np, nj) = (p + 1, j + usize::from(grow));
    if np < nj {
        BigUint::zero()
    } else if np == nj {
        BigUint::one()
    } else if grow {
        cur * np / nj
    } else {
        cur * np / (np - nj)
    }
}

/// Inverse of [`subset_rank`].
pub fn subset_unrank(k: usize, rank: &BigUint, len: usize) -> Result<Vec<usize>> {
    if k > len {
        return Err(corrupt(format!("subset size {k} exceeds length {len}")));
    }
    if k == 0 {
        return if rank.is_zero() {
            Ok(Vec::new())
        } else {
            Err(corrupt("nonzero rank for empty subset"))
        };
    }
    // cur = binom(p, j) starting from p = len - 1, j = k
    let mut cur = binomial(len - 1, k);
    let total = if len == k { BigUint::one() } else { &cur * len / (len - k) };
    if *rank >= total {
        return Err(corrupt(format!("subset rank out of range for binom({len}, {k})")));
    }
    let mut rest = rank.clone();
    let mut positions = vec![0; k];
    let mut j = k;
    let mut p = len - 1;
    loop {
        if p + 1 == j {
            // only positions 0..=p remain and all are selected
            for q in (0..=p).rev() {
                positions[j - 1] = q;
                j -= 1;
            }
            break;
        }
        if cur <= rest {
            rest -= &cur;
            positions[j - 1] = p;
            if j == 1 {
                break;
            }
            // binom(p - 1, j - 1) = binom(p, j) * j / p
            cur = cur * j / p;
            j -= 1;
        } else {
            // binom(p - 1, j) = binom(p, j) * (p - j) / p
            cur = cur * (p - j) / p;
        }
        p -= 1;
    }
    debug_assert!(rest.is_zero());
    Ok(positions)
}

/// Writes `value` in exactly `width` bits, MSB first.
pub fn write_biguint(s: &mut BitStream, value: &BigUint, width: usize) {
    debug_assert!(big_bit_length(value) <= width);
    for b in (0..width as u64).rev() {
        s.push(value.bit(b));
    }
}

pub fn read_biguint(r: &mut BitReader<'_>, width: usize) -> Result<BigUint> {
    if width > r.remaining() {
        return Err(corrupt(format!("need {width} bits, only {} remain", r.remaining())));
    }
    let mut bytes = vec![0u8; width.div_ceil(8)];
    let offset = bytes.len() * 8 - width;
    for i in 0..width {
        if r.read_bit()? {
            let pos = offset + i;
            bytes[pos / 8] |= 1 << (7 - pos % 8);
        }
    }
    Ok(BigUint::from_bytes_be(&bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitStream {
        s.parse().unwrap()
    }

    #[test]
    fn degree_codes() {
        let mut s = BitStream::new();
        write_degree(&mut s, 3);
        assert_eq!(s.to_string(), "110");
        let mut s = BitStream::new();
        write_degree(&mut s, 1);
        assert_eq!(s.to_string(), "0");
        let mut s = BitStream::new();
        write_degree(&mut s, 7);
        assert_eq!(s.to_string(), "1111110");
        assert_eq!(read_degree(&mut s.reader()).unwrap(), 7);
    }

    #[test]
    fn degree_read_truncated() {
        let s = bits("111");
        assert!(matches!(read_degree(&mut s.reader()), Err(Error::Corrupt(_))));
    }

    #[test]
    fn byte_serialization_is_msb_first() {
        let s = bits("0100 1001 1");
        assert_eq!(s.to_bytes(), vec![0x49, 0x80]);
        assert_eq!(BitStream::from_bytes(&[0x49, 0x80], 9).unwrap(), s);
        assert!(BitStream::from_bytes(&[0x49, 0x81], 9).is_err());
        assert!(BitStream::from_bytes(&[0x49], 9).is_err());
    }

    #[test]
    fn pack_examples() {
        let t: TritString = "2022".parse().unwrap();
        assert_eq!(pack_trits(&t).to_string(), "0111110");
        assert!(pack_trits(&TritString::new()).is_empty());
        let zeros = TritString::from_trits(vec![0; 41]).unwrap();
        let packed = pack_trits(&zeros);
        assert_eq!(packed.len(), 65);
        assert!(packed.iter().all(|b| !b));
    }

    #[test]
    fn packed_sizes_invert() {
        for m in 0..500 {
            let bits = packed_trit_bits(m);
            assert_eq!(trits_for_packed_bits(bits), Some(m));
        }
        assert_eq!(trits_for_packed_bits(1), None);
        assert_eq!(packed_trit_bits(41), 65);
        assert_eq!(packed_trit_bits(1), 2);
    }

    #[test]
    fn per_trit_cost() {
        let per_trit = TRIT_BLOCK_BITS as f64 / TRIT_BLOCK as f64;
        assert!(per_trit <= 1.58537);
        assert!(per_trit - 3f64.log2() <= 4.1e-4);
        assert!(pow3(41) < 1u128 << 65);
    }

    #[test]
    fn unpack_rejects_out_of_range_block() {
        // 2 bits hold values 0..=3 but one trit only 0..=2
        let s = bits("11");
        assert!(matches!(unpack_trits(&mut s.reader(), 1), Err(Error::Corrupt(_))));
    }

    #[test]
    fn trit_string_validation() {
        assert!(TritString::from_trits(vec![0, 3]).is_err());
        assert!("0123".parse::<TritString>().is_err());
    }

    #[test]
    fn subset_rank_examples() {
        let (k, r) = subset_rank(&[1], 3).unwrap();
        assert_eq!((k, r.clone()), (1, BigUint::from(1u32)));
        assert_eq!(subset_rank_width(3, 1), 2);
        let mut s = BitStream::new();
        write_biguint(&mut s, &r, 2);
        assert_eq!(s.to_string(), "01");

        assert_eq!(subset_rank(&[], 10).unwrap(), (0, BigUint::zero()));
        assert_eq!(subset_rank_width(10, 0), 0);
        assert_eq!(subset_rank(&[0, 1, 2, 3, 4], 5).unwrap(), (5, BigUint::zero()));
        assert_eq!(subset_rank_width(5, 5), 0);
    }

    #[test]
    fn subset_rank_rejects_bad_input() {
        assert!(subset_rank(&[2, 1], 5).is_err());
        assert!(subset_rank(&[5], 5).is_err());
        assert!(subset_unrank(2, &BigUint::from(10u32), 5).is_err());
        assert!(subset_unrank(6, &BigUint::zero(), 5).is_err());
        assert!(subset_unrank(0, &BigUint::one(), 5).is_err());
    }

    // Pascal's triangle by addition, independent of the multiplicative route.
    fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
        let mut t: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for n in 1..=rows {
            let prev = &t[n - 1];
            let row = (0..=n)
                .map(|k| {
                    let left = if k > 0 { prev[k - 1].clone() } else { BigUint::zero() };
                    let right = prev.get(k).cloned().unwrap_or_default();
                    left + right
                })
                .collect();
            t.push(row);
        }
        t
    }

    #[test]
    fn binomial_matches_pascal() {
        let t = pascal(80);
        for (n, row) in t.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(n, k), v, "binom({n},{k})");
            }
            assert!(binomial(n, n + 1).is_zero());
        }
    }

    // Ranks must equal the position of each subset in colexicographic order.
    #[test]
    fn subset_rank_is_colex_bijection() {
        for len in 0..=12usize {
            let mut by_k: Vec<Vec<Vec<usize>>> = vec![Vec::new(); len + 1];
            for mask in 0u32..(1 << len) {
                let set: Vec<usize> = (0..len).filter(|&b| mask >> b & 1 == 1).collect();
                by_k[set.len()].push(set);
            }
            for (k, mut sets) in by_k.into_iter().enumerate() {
                sets.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
                assert_eq!(BigUint::from(sets.len()), binomial(len, k));
                for (idx, set) in sets.iter().enumerate() {
                    let (kk, r) = subset_rank(set, len).unwrap();
                    assert_eq!(kk, k);
                    assert_eq!(r, BigUint::from(idx), "len {len} set {set:?}");
                    assert_eq!(&subset_unrank(k, &r, len).unwrap(), set);
                }
            }
        }
    }

    #[test]
    fn biguint_bits_round_trip() {
        let v = binomial(200, 77);
        let width = big_bit_length(&v) + 3;
        let mut s = BitStream::new();
        write_biguint(&mut s, &v, width);
        assert_eq!(s.len(), width);
        assert_eq!(read_biguint(&mut s.reader(), width).unwrap(), v);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn bits_round_trip(chunks in proptest::collection::vec((any::<u64>(), 0usize..=64), 0..40)) {
                let mut s = BitStream::new();
                for &(v, w) in &chunks {
                    let masked = if w == 64 { v } else { v & ((1u64 << w) - 1) };
                    s.push_bits(u128::from(masked), w);
                }
                let bytes = s.to_bytes();
                let back = BitStream::from_bytes(&bytes, s.len()).unwrap();
                prop_assert_eq!(&back, &s);
                let mut r = back.reader();
                for &(v, w) in &chunks {
                    let masked = if w == 64 { v } else { v & ((1u64 << w) - 1) };
                    prop_assert_eq!(r.read_bits(w).unwrap(), u128::from(masked));
                }
                prop_assert!(r.is_exhausted());
            }

            #[test]
            fn degrees_round_trip(ds in proptest::collection::vec(1usize..200, 0..50)) {
                let mut s = BitStream::new();
                for &d in &ds {
                    write_degree(&mut s, d);
                }
                prop_assert_eq!(s.len(), ds.iter().sum::<usize>());
                let mut r = s.reader();
                for &d in &ds {
                    prop_assert_eq!(read_degree(&mut r).unwrap(), d);
                }
                prop_assert!(r.is_exhausted());
            }

            #[test]
            fn trits_round_trip(ts in proptest::collection::vec(0u8..3, 0..400)) {
                let t = TritString::from_trits(ts).unwrap();
                let packed = pack_trits(&t);
                prop_assert_eq!(packed.len(), packed_trit_bits(t.len()));
                let mut r = packed.reader();
                prop_assert_eq!(unpack_trits(&mut r, t.len()).unwrap(), t);
                prop_assert!(r.is_exhausted());
            }

            #[test]
            fn subsets_round_trip(mask in proptest::collection::vec(any::<bool>(), 0..300)) {
                let len = mask.len();
                let pos: Vec<usize> = (0..len).filter(|&p| mask[p]).collect();
                let (k, r) = subset_rank(&pos, len).unwrap();
                prop_assert!(r < binomial(len, k));
                prop_assert_eq!(subset_unrank(k, &r, len).unwrap(), pos);
            }
        }
    }
}
