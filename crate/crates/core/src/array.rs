//! Input arrays, brute-force query oracles, and the run reduction that
//! removes consecutive equal elements.
//!
//! All indices on this surface are 1-based. Index `0` and index `n + 1` are
//! the virtual sentinels returned when no previous / next element qualifies.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the four nearest-value queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueryKind {
    /// Previous smaller value.
    Psv,
    /// Previous larger value.
    Plv,
    /// Next smaller value.
    Nsv,
    /// Next larger value.
    Nlv,
}

impl QueryKind {
    pub const ALL: [QueryKind; 4] = [QueryKind::Psv, QueryKind::Plv, QueryKind::Nsv, QueryKind::Nlv];

    /// `true` for the two backward-looking queries.
    pub fn is_previous(self) -> bool {
        matches!(self, QueryKind::Psv | QueryKind::Plv)
    }

    /// `true` for the two queries that look for a strictly smaller value.
    pub fn is_smaller(self) -> bool {
        matches!(self, QueryKind::Psv | QueryKind::Nsv)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            QueryKind::Psv => "psv",
            QueryKind::Plv => "plv",
            QueryKind::Nsv => "nsv",
            QueryKind::Nlv => "nlv",
        }
    }
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QueryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psv" => Ok(QueryKind::Psv),
            "plv" => Ok(QueryKind::Plv),
            "nsv" => Ok(QueryKind::Nsv),
            "nlv" => Ok(QueryKind::Nlv),
            other => Err(Error::InvalidArgument(format!("unknown query kind {other:?}"))),
        }
    }
}

/// A non-empty array `A[1..n]` of signed integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValueArray {
    values: Vec<i64>,
}

impl ValueArray {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyArray);
        }
        Ok(ValueArray { values })
    }

    /// Parses whitespace-separated integers (one per line works too).
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            for token in line.split_whitespace() {
                let v = token.parse::<i64>().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    token: token.to_string(),
                })?;
                values.push(v);
            }
        }
        Self::new(values)
    }

    /// Number of elements `n`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always `false`; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// `A[i]` for `1 <= i <= n`.
    ///
    /// # Panics
    ///
    /// Panics if `i` is out of range.
    pub fn get(&self, i: usize) -> i64 {
        assert!(i >= 1 && i <= self.len(), "index {i} out of range 1..={}", self.len());
        self.values[i - 1]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        check_index(i, self.len())
    }

    /// The smallest `i` with `A[i] = A[i + 1]`, if any.
    pub fn first_consecutive_equal(&self) -> Option<usize> {
        self.values.windows(2).position(|w| w[0] == w[1]).map(|p| p + 1)
    }

    pub fn has_consecutive_equal(&self) -> bool {
        self.first_consecutive_equal().is_some()
    }

    /// Errors with the offending index when two neighbours are equal.
    pub fn require_no_consecutive_equal(&self) -> Result<()> {
        match self.first_consecutive_equal() {
            Some(i) => Err(Error::Precondition {
                index: i,
                reason: format!("consecutive equal elements A[{i}] = A[{}] = {}", i + 1, self.get(i)),
            }),
            None => Ok(()),
        }
    }
}

impl FromStr for ValueArray {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ValueArray::parse(s)
    }
}

impl fmt::Display for ValueArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, v) in self.values.iter().enumerate() {
            if pos > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(Error::IndexOutOfRange { index: i, n })
    } else {
        Ok(())
    }
}

/// `max({j < i : A[j] < A[i]} ∪ {0})` by a linear scan.
pub fn oracle_psv(a: &ValueArray, i: usize) -> Result<usize> {
    oracle(a, QueryKind::Psv, i)
}

/// `max({j < i : A[j] > A[i]} ∪ {0})` by a linear scan.
pub fn oracle_plv(a: &ValueArray, i: usize) -> Result<usize> {
    oracle(a, QueryKind::Plv, i)
}

/// `min({j > i : A[j] < A[i]} ∪ {n + 1})` by a linear scan.
pub fn oracle_nsv(a: &ValueArray, i: usize) -> Result<usize> {
    oracle(a, QueryKind::Nsv, i)
}

/// `min({j > i : A[j] > A[i]} ∪ {n + 1})` by a linear scan.
pub fn oracle_nlv(a: &ValueArray, i: usize) -> Result<usize> {
    oracle(a, QueryKind::Nlv, i)
}

/// Brute-force answer to any of the four queries.
pub fn oracle(a: &ValueArray, kind: QueryKind, i: usize) -> Result<usize> {
    a.check_index(i)?;
    let v = a.get(i);
    let hit = |j: usize| {
        if kind.is_smaller() {
            a.get(j) < v
        } else {
            a.get(j) > v
        }
    };
    Ok(if kind.is_previous() {
        (1..i).rev().find(|&j| hit(j)).unwrap_or(0)
    } else {
        (i + 1..=a.len()).find(|&j| hit(j)).unwrap_or(a.len() + 1)
    })
}

/// Answers for every index at once using a monotone stack, `O(n)` total.
///
/// Entry `i - 1` of the result holds the answer for index `i`.
pub fn all_nearest(a: &ValueArray, kind: QueryKind) -> Vec<usize> {
    let n = a.len();
    let vals = a.values();
    // `beats(x, y)`: an element of value x answers a query from value y
    let beats = |x: i64, y: i64| if kind.is_smaller() { x < y } else { x > y };
    let mut out = vec![0; n];
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    if kind.is_previous() {
        for pos in 0..n {
            while let Some(&top) = stack.last() {
                if beats(vals[top], vals[pos]) {
                    break;
                }
                stack.pop();
            }
            out[pos] = stack.last().map_or(0, |&t| t + 1);
            stack.push(pos);
        }
    } else {
        for pos in (0..n).rev() {
            while let Some(&top) = stack.last() {
                if beats(vals[top], vals[pos]) {
                    break;
                }
                stack.pop();
            }
            out[pos] = stack.last().map_or(n + 1, |&t| t + 1);
            stack.push(pos);
        }
    }
    out
}

/// The run decomposition of an array: `C[i] = 1` iff `A[i] = A[i + 1]`.
///
/// The reduced array keeps the last element of every run, so it has no two
/// consecutive equal elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStructure {
    n: usize,
    c_bits: Vec<bool>,
    k: usize,
    kept_positions: Vec<usize>,
    // original index (1-based, slot i - 1) -> reduced index of its run end
    rank_map: Vec<usize>,
    // reduced index (slot j - 1) -> first original index of that run
    run_start: Vec<usize>,
}

/// Builds the run structure of `a`.
pub fn compute_runs(a: &ValueArray) -> RunStructure {
    let c_bits: Vec<bool> = a.values().windows(2).map(|w| w[0] == w[1]).collect();
    RunStructure::from_c_bits(a.len(), c_bits).expect("length is n - 1 by construction")
}

impl RunStructure {
    /// Rebuilds the structure from `C` alone; `c_bits[i - 1]` is `C[i]`.
    pub fn from_c_bits(n: usize, c_bits: Vec<bool>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyArray);
        }
        if c_bits.len() != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "C must have length n - 1 = {}, got {}",
                n - 1,
                c_bits.len()
            )));
        }
        let k = c_bits.iter().filter(|&&b| b).count();
        let mut kept_positions = Vec::with_capacity(n - k);
        let mut run_start = Vec::with_capacity(n - k);
        let mut start = 1;
        for i in 1..=n {
            if i == n || !c_bits[i - 1] {
                kept_positions.push(i);
                run_start.push(start);
                start = i + 1;
            }
        }
        let mut rank_map = vec![0; n];
        let mut next = kept_positions.len();
        for i in (1..=n).rev() {
            if i == n || !c_bits[i - 1] {
                rank_map[i - 1] = next;
                next -= 1;
            } else {
                rank_map[i - 1] = rank_map[i];
            }
        }
        Ok(RunStructure {
            n,
            c_bits,
            k,
            kept_positions,
            rank_map,
            run_start,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of ones in `C`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Length of the reduced array, `n - k`.
    pub fn reduced_len(&self) -> usize {
        self.n - self.k
    }

    pub fn c_bits(&self) -> &[bool] {
        &self.c_bits
    }

    /// `C[i]` for `1 <= i <= n - 1`.
    pub fn c_bit(&self, i: usize) -> bool {
        self.c_bits[i - 1]
    }

    /// `C` rendered as a `0`/`1` string.
    pub fn c_string(&self) -> String {
        self.c_bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// 0-based positions of the ones in `C`.
    pub fn one_positions(&self) -> Vec<usize> {
        self.c_bits
            .iter()
            .enumerate()
            .filter_map(|(p, &b)| b.then_some(p))
            .collect()
    }

    pub fn kept_positions(&self) -> &[usize] {
        &self.kept_positions
    }

    /// Values of `a` at the kept positions.
    pub fn reduced_array(&self, a: &ValueArray) -> ValueArray {
        assert_eq!(a.len(), self.n, "array does not match run structure");
        let values = self.kept_positions.iter().map(|&i| a.get(i)).collect();
        ValueArray { values }
    }

    /// Position in the reduced array of the last element of `i`'s run.
    pub fn map_query_index(&self, i: usize) -> Result<usize> {
        check_index(i, self.n)?;
        Ok(self.rank_map[i - 1])
    }

    /// Translates an answer on the reduced array back to original indices.
    ///
    /// Previous-queries resolve to the run end (the kept element); next-queries
    /// resolve to the run start. Sentinels map to sentinels.
    pub fn map_answer_to_original(&self, j: usize, kind: QueryKind) -> Result<usize> {
        let reduced = self.reduced_len();
        if j == 0 {
            return Ok(0);
        }
        if j == reduced + 1 {
            return Ok(self.n + 1);
        }
        if j > reduced {
            return Err(Error::InvalidArgument(format!(
                "reduced answer {j} outside 0..={}",
                reduced + 1
            )));
        }
        Ok(if kind.is_previous() {
            self.kept_positions[j - 1]
        } else {
            self.run_start[j - 1]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ValueArray {
        ValueArray::new(vec![3, 8, 5, 6, 3, 2, 7, 10, 9]).unwrap()
    }

    fn arr(v: &[i64]) -> ValueArray {
        ValueArray::new(v.to_vec()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let a = sample();
        assert_eq!(oracle_psv(&a, 4).unwrap(), 3);
        assert_eq!(oracle_psv(&arr(&[5]), 1).unwrap(), 0);
        assert_eq!(oracle_psv(&a, 5).unwrap(), 0);
        assert_eq!(oracle_plv(&a, 4).unwrap(), 2);
        assert_eq!(oracle_nsv(&a, 1).unwrap(), 6);
        assert_eq!(oracle_nlv(&a, 8).unwrap(), 10);
    }

    #[test]
    fn oracle_rejects_out_of_range() {
        let a = sample();
        assert_eq!(oracle_psv(&a, 0), Err(Error::IndexOutOfRange { index: 0, n: 9 }));
        assert!(oracle_nlv(&a, 10).is_err());
    }

    #[test]
    fn empty_array_rejected() {
        assert_eq!(ValueArray::new(vec![]), Err(Error::EmptyArray));
        assert_eq!(ValueArray::parse("  \n "), Err(Error::EmptyArray));
    }

    #[test]
    fn parse_is_strict() {
        assert_eq!(ValueArray::parse("3\n8 5\n-6").unwrap().values(), &[3, 8, 5, -6]);
        assert_eq!(
            ValueArray::parse("1 2\n3 x"),
            Err(Error::Parse { line: 2, token: "x".into() })
        );
        assert!(ValueArray::parse("1.5").is_err());
    }

    #[test]
    fn all_nearest_matches_oracle() {
        let a = arr(&[2, 1, 1, 3, 3, 0, 4, 2, 2, 5]);
        for kind in QueryKind::ALL {
            let fast = all_nearest(&a, kind);
            for i in 1..=a.len() {
                assert_eq!(fast[i - 1], oracle(&a, kind, i).unwrap(), "{kind} {i}");
            }
        }
    }

    #[test]
    fn runs_examples() {
        let rs = compute_runs(&arr(&[2, 1, 1, 3]));
        assert_eq!(rs.c_string(), "010");
        assert_eq!(rs.k(), 1);
        assert_eq!(rs.kept_positions(), &[1, 3, 4]);
        assert_eq!(rs.reduced_array(&arr(&[2, 1, 1, 3])).values(), &[2, 1, 3]);

        let rs = compute_runs(&arr(&[5]));
        assert_eq!(rs.c_string(), "");
        assert_eq!(rs.k(), 0);

        let a = arr(&[7, 7, 7]);
        let rs = compute_runs(&a);
        assert_eq!(rs.c_string(), "11");
        assert_eq!(rs.k(), 2);
        assert_eq!(rs.reduced_array(&a).values(), &[7]);
    }

    #[test]
    fn index_mapping_examples() {
        let rs = compute_runs(&arr(&[2, 1, 1, 3]));
        assert_eq!(rs.map_query_index(2).unwrap(), 2);
        assert_eq!(rs.map_query_index(1).unwrap(), 1);
        assert_eq!(compute_runs(&arr(&[7, 7, 7])).map_query_index(1).unwrap(), 1);
        assert!(rs.map_query_index(5).is_err());

        assert_eq!(rs.map_answer_to_original(2, QueryKind::Nsv).unwrap(), 2);
        assert_eq!(rs.map_answer_to_original(0, QueryKind::Psv).unwrap(), 0);
        assert_eq!(rs.map_answer_to_original(2, QueryKind::Psv).unwrap(), 3);
        assert_eq!(rs.map_answer_to_original(4, QueryKind::Nlv).unwrap(), 5);
        assert!(rs.map_answer_to_original(5, QueryKind::Nlv).is_err());
    }

    #[test]
    fn from_c_bits_validates_length() {
        assert!(RunStructure::from_c_bits(3, vec![true]).is_err());
        assert_eq!(RunStructure::from_c_bits(0, vec![]), Err(Error::EmptyArray));
    }

    #[test]
    fn previous_answers_are_run_ends() {
        let a = arr(&[1, 1, 2, 2, 2, 1, 3, 3]);
        let rs = compute_runs(&a);
        for kind in [QueryKind::Psv, QueryKind::Plv] {
            for i in 1..=a.len() {
                let j = oracle(&a, kind, i).unwrap();
                assert!(j == 0 || j == a.len() || !rs.c_bit(j), "{kind}({i}) = {j}");
            }
        }
    }

    // Exhaustive over all arrays of length <= 7 on {1,2,3}.
    #[test]
    fn reduction_round_trip_exhaustive() {
        for len in 1..=7u32 {
            for code in 0..3usize.pow(len) {
                let mut c = code;
                let v: Vec<i64> = (0..len)
                    .map(|_| {
                        let d = (c % 3) as i64 + 1;
                        c /= 3;
                        d
                    })
                    .collect();
                let a = ValueArray::new(v).unwrap();
                let rs = compute_runs(&a);
                let reduced = rs.reduced_array(&a);
                assert!(!reduced.has_consecutive_equal());
                for kind in QueryKind::ALL {
                    for i in 1..=a.len() {
                        let j = rs.map_query_index(i).unwrap();
                        let ans = oracle(&reduced, kind, j).unwrap();
                        let mapped = rs.map_answer_to_original(ans, kind).unwrap();
                        assert_eq!(mapped, oracle(&a, kind, i).unwrap(), "{a} {kind}({i})");
                    }
                }
            }
        }
    }
}
