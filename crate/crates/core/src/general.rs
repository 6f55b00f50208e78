//! Arbitrary arrays: store the run string `C` as a combinadic subset rank and
//! the colored encoding of the run-reduced array `A'`.
//!
//! Queries on an original index go to the end of its run in `A'`; answers
//! come back as run ends for previous-queries and run starts for next-queries.

use num_bigint::BigUint;

use crate::array::{compute_runs, QueryKind, RunStructure, ValueArray};
use crate::bitio::{read_biguint, subset_rank, subset_rank_width, subset_unrank, write_biguint, BitStream};
use crate::colored::{ColoredEncoding, ColoredPair};
use crate::error::{corrupt, Error, Result};
use crate::query::{query_pair, NearestValues};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralEncoding {
    n: usize,
    k: usize,
    c_rank_bits: BitStream,
    colored: ColoredEncoding,
}

/// Bits used for the rank of `C` (length `n - 1`, `k` ones).
pub fn c_rank_width(n: usize, k: usize) -> usize {
    subset_rank_width(n.saturating_sub(1), k)
}

impl GeneralEncoding {
    pub fn from_parts(n: usize, k: usize, c_rank_bits: BitStream, colored: ColoredEncoding) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyArray);
        }
        if k >= n {
            return Err(corrupt(format!("k = {k} must be below n = {n}")));
        }
        if colored.n() != n - k {
            return Err(corrupt(format!(
                "colored part covers {} elements, expected n - k = {}",
                colored.n(),
                n - k
            )));
        }
        let width = c_rank_width(n, k);
        if c_rank_bits.len() != width {
            return Err(corrupt(format!("C rank has {} bits, expected {width}", c_rank_bits.len())));
        }
        Ok(GeneralEncoding {
            n,
            k,
            c_rank_bits,
            colored,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn c_rank_bits(&self) -> &BitStream {
        &self.c_rank_bits
    }

    pub fn colored(&self) -> &ColoredEncoding {
        &self.colored
    }

    pub fn payload_bits(&self) -> usize {
        self.c_rank_bits.len() + self.colored.payload_bits()
    }

    /// `C rank ‖ colored payload`.
    pub fn payload(&self) -> BitStream {
        let mut out = BitStream::with_capacity(self.payload_bits());
        out.extend_from(&self.c_rank_bits);
        out.extend_from(&self.colored.payload());
        out
    }
}

/// Run structure plus the colored heaps of the reduced array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralIndex {
    pub runs: RunStructure,
    pub reduced: ColoredPair,
}

impl GeneralIndex {
    pub fn from_array(a: &ValueArray) -> Self {
        let runs = compute_runs(a);
        let reduced = ColoredPair::from_array(&runs.reduced_array(a))
            .expect("reduced array has no consecutive equal elements");
        GeneralIndex { runs, reduced }
    }

    pub fn encode(&self) -> Result<GeneralEncoding> {
        let n = self.runs.n();
        let (k, rank) = subset_rank(&self.runs.one_positions(), n - 1)?;
        let width = c_rank_width(n, k);
        let mut c_rank_bits = BitStream::with_capacity(width);
        write_biguint(&mut c_rank_bits, &rank, width);
        GeneralEncoding::from_parts(n, k, c_rank_bits, self.reduced.encode()?)
    }

    pub fn decode(e: &GeneralEncoding) -> Result<Self> {
        let n = e.n;
        let rank: BigUint = read_biguint(&mut e.c_rank_bits.reader(), e.c_rank_bits.len())?;
        let ones = subset_unrank(e.k, &rank, n - 1)?;
        let mut c_bits = vec![false; n - 1];
        for p in ones {
            c_bits[p] = true;
        }
        let runs = RunStructure::from_c_bits(n, c_bits)?;
        let reduced = ColoredPair::decode(&e.colored)?;
        if reduced.len() != runs.reduced_len() {
            return Err(corrupt("run structure and colored part disagree on length"));
        }
        Ok(GeneralIndex { runs, reduced })
    }
}

impl NearestValues for GeneralIndex {
    fn len(&self) -> usize {
        self.runs.n()
    }

    fn query(&self, kind: QueryKind, i: usize) -> Result<usize> {
        let j = self.runs.map_query_index(i)?;
        let ans = query_pair(&self.reduced.min, &self.reduced.max, kind, j)?;
        self.runs.map_answer_to_original(ans, kind)
    }
}

pub fn encode_general(a: &ValueArray) -> Result<GeneralEncoding> {
    GeneralIndex::from_array(a).encode()
}

pub fn decode_general(e: &GeneralEncoding) -> Result<GeneralIndex> {
    GeneralIndex::decode(e)
}

/// The analytic bound `log2(13)·n`.
pub fn general_bound(n: usize) -> f64 {
    13f64.log2() * n as f64
}

/// `⌈log2 n⌉`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// `log2 binom(n, k)` via log-gamma.
pub fn log2_binomial(n: usize, k: usize) -> f64 {
    statrs::function::factorial::ln_binomial(n as u64, k as u64) / std::f64::consts::LN_2
}

/// Left side `c(n - k) + log2 binom(n, k)`.
pub fn lemma2_lhs(c: f64, n: usize, k: usize) -> f64 {
    c * (n - k) as f64 + log2_binomial(n, k)
}

/// Right side `log2(2^c + 1)·n`.
pub fn lemma2_rhs(c: f64, n: usize) -> f64 {
    (c.exp2() + 1.0).log2() * n as f64
}

/// Evaluates `c(n - k) + log2 binom(n, k) <= log2(2^c + 1)·n` with tolerance `1e-6·n`.
pub fn lemma2_check(c: f64, n: usize, k: usize) -> Result<bool> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidArgument(format!("c must be a positive real, got {c}")));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")));
    }
    Ok(lemma2_lhs(c, n, k) <= lemma2_rhs(c, n) + 1e-6 * n as f64)
}
