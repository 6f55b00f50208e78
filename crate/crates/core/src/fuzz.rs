//! Randomized and exhaustive self-checks.
//!
//! [`check_array`] runs every codec on one array and compares all decoded
//! answers with the array itself, along with the structural checks (heap
//! shape, leaf/internal duality, red leaves, good = bad) and the size bounds.
//! [`run`] drives it over generated arrays. Each case has its own RNG seeded
//! from `(seed, case index)`, so results do not depend on thread count.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::array::{all_nearest, compute_runs, oracle, QueryKind, ValueArray};
use crate::colored::{colored_bound, ColoredPair};
use crate::container::Container;
use crate::general::{ceil_log2, general_bound, GeneralIndex};
use crate::heap::{
    build_max_heap, build_min_heap, check_claim1, check_claim2, check_sibling_monotonicity, HeapKind,
};
use crate::joint::JointPair;
use crate::query::NearestValues;

/// Arrays up to this length are also checked against the brute-force oracle.
const BRUTE_FORCE_LIMIT: usize = 256;
/// Arrays longer than this get queries on a sample of indices only.
const FULL_QUERY_LIMIT: usize = 20_000;
const QUERY_SAMPLE: usize = 4_000;

/// Slack allowed on top of `(2 + log 3)n` for colored payloads.
pub fn colored_payload_limit(n: usize) -> f64 {
    3.586 * n as f64 + 70.0
}

/// Slack allowed on top of `log 13·n` for general payloads.
pub fn general_payload_limit(n: usize) -> f64 {
    general_bound(n) + 2.0 * ceil_log2(n) as f64 + 96.0
}

/// Shape of generated arrays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distribution {
    /// A random permutation of `1..=n`.
    Distinct,
    /// Independent uniform values in `1..=alphabet`.
    SmallAlphabet,
    /// Runs of repeated values drawn from `1..=alphabet`.
    LongRuns,
}

impl Distribution {
    pub const ALL: [Distribution; 3] = [Distribution::Distinct, Distribution::SmallAlphabet, Distribution::LongRuns];
}

pub fn generate<R: Rng>(rng: &mut R, dist: Distribution, n: usize, alphabet: usize) -> ValueArray {
    let n = n.max(1);
    let alphabet = alphabet.max(1) as i64;
    let values = match dist {
        Distribution::Distinct => {
            let mut v: Vec<i64> = (1..=n as i64).collect();
            v.shuffle(rng);
            v
        }
        Distribution::SmallAlphabet => (0..n).map(|_| rng.random_range(1..=alphabet)).collect(),
        Distribution::LongRuns => {
            let max_run = (n / 5).max(1);
            let mut v = Vec::with_capacity(n);
            while v.len() < n {
                let value = rng.random_range(1..=alphabet);
                let run = rng.random_range(1..=max_run).min(n - v.len());
                v.extend(std::iter::repeat_n(value, run));
            }
            v
        }
    };
    ValueArray::new(values).expect("n >= 1")
}

/// A failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

struct Checker {
    checks: usize,
}

impl Checker {
    fn ensure(&mut self, ok: bool, check: &'static str, detail: impl FnOnce() -> String) -> Result<(), Finding> {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(Finding { check, detail: detail() })
        }
    }

    fn ok<T>(&mut self, r: crate::Result<T>, check: &'static str) -> Result<T, Finding> {
        self.checks += 1;
        r.map_err(|e| Finding { check, detail: e.to_string() })
    }
}

fn query_indices(n: usize) -> Vec<usize> {
    if n <= FULL_QUERY_LIMIT {
        (1..=n).collect()
    } else {
        let step = n / QUERY_SAMPLE;
        let mut v: Vec<usize> = (1..=n).step_by(step).collect();
        v.push(n);
        v
    }
}

fn compare_queries(
    c: &mut Checker,
    a: &ValueArray,
    decoded: &dyn NearestValues,
    kinds: &[QueryKind],
    check: &'static str,
) -> Result<(), Finding> {
    for &kind in kinds {
        let expected = all_nearest(a, kind);
        for i in query_indices(a.len()) {
            let got = c.ok(decoded.query(kind, i), check)?;
            c.ensure(got == expected[i - 1], check, || {
                format!("{kind}({i}) = {got}, expected {}", expected[i - 1])
            })?;
        }
    }
    Ok(())
}

fn container_round_trip(c: &mut Checker, container: &Container, check: &'static str) -> Result<(), Finding> {
    let bytes = container.to_bytes();
    let parsed = c.ok(Container::from_bytes(&bytes), check)?;
    c.ensure(&parsed == container, check, || "parsed container differs".into())?;
    let decoded = c.ok(parsed.decode(), check)?;
    let again = c.ok(decoded.encode(), check)?;
    c.ensure(again.to_bytes() == bytes, check, || "re-encoded bytes differ".into())
}

/// Runs every check on `a`. Returns the number of checks performed.
pub fn check_array(a: &ValueArray) -> Result<usize, Finding> {
    let mut c = Checker { checks: 0 };
    let n = a.len();

    if n <= BRUTE_FORCE_LIMIT {
        for kind in QueryKind::ALL {
            let fast = all_nearest(a, kind);
            for i in 1..=n {
                let slow = oracle(a, kind, i).expect("in range");
                c.ensure(fast[i - 1] == slow, "oracle", || format!("{kind}({i}) stack {} vs scan {slow}", fast[i - 1]))?;
            }
        }
    }

    // heaps of the full array
    let min = build_min_heap(a);
    let max = build_max_heap(a);
    for (t, kind) in [(&min, HeapKind::Min), (&max, HeapKind::Max)] {
        c.ensure(t.is_consistent(), "tree consistency", || format!("{kind:?} heap"))?;
        c.ensure(t.is_preorder_labeled(), "preorder labels", || format!("{kind:?} heap"))?;
        c.ensure(check_sibling_monotonicity(t, a, kind), "sibling monotonicity", || format!("{kind:?} heap"))?;
    }

    // the run-reduced array has no consecutive equal elements
    let runs = compute_runs(a);
    let reduced = runs.reduced_array(a);
    let nr = reduced.len();
    c.ensure(!reduced.has_consecutive_equal(), "run reduction", || "A' has equal neighbours".into())?;

    let pair = c.ok(ColoredPair::from_array(&reduced), "colored build")?;
    let (rmin, rmax) = (pair.min.tree(), pair.max.tree());
    c.ensure(check_claim1(rmin, rmax), "claim 1", || format!("A' = {reduced}"))?;
    c.ensure(check_claim2(&pair.min), "claim 2", || "min heap".into())?;
    c.ensure(check_claim2(&pair.max), "claim 2", || "max heap".into())?;
    let (g, b) = pair.count_good_bad();
    c.ensure(g == b, "lemma 1", || format!("good = {g}, bad = {b}"))?;

    // scheme 1 on A'
    let joint = c.ok(JointPair::from_array(&reduced), "joint build")?;
    let jenc = c.ok(joint.encode(), "joint encode")?;
    c.ensure(jenc.payload_bits() == 3 * nr - 1, "joint size", || {
        format!("{} bits for n = {nr}", jenc.payload_bits())
    })?;
    let jdec = c.ok(JointPair::decode(&jenc), "joint decode")?;
    c.ensure(jdec == joint, "joint round trip", || "decoded trees differ".into())?;
    compare_queries(&mut c, &reduced, &jdec, &[QueryKind::Psv, QueryKind::Plv], "joint queries")?;
    container_round_trip(&mut c, &Container::Joint(jenc), "joint container")?;

    // scheme 2 on A'
    let cenc = c.ok(pair.encode(), "colored encode")?;
    c.ensure(cenc.g() == g, "colored g", || format!("{} vs {g}", cenc.g()))?;
    c.ensure(cenc.u_gb().len() == 2 * g, "colored lengths", || "u_gb".into())?;
    c.ensure(cenc.v_neutral().len() == nr - 1 - 2 * g, "colored lengths", || "v_neutral".into())?;
    let bits = cenc.payload_bits();
    c.ensure(bits as f64 <= colored_payload_limit(nr), "colored size", || {
        format!("{bits} bits for n = {nr} (bound {:.1})", colored_bound(nr))
    })?;
    let cdec = c.ok(ColoredPair::decode(&cenc), "colored decode")?;
    c.ensure(cdec == pair, "colored round trip", || "decoded trees differ".into())?;
    compare_queries(&mut c, &reduced, &cdec, &QueryKind::ALL, "colored queries")?;
    container_round_trip(&mut c, &Container::Colored(cenc), "colored container")?;

    // scheme 3 on A
    let index = GeneralIndex::from_array(a);
    let genc = c.ok(index.encode(), "general encode")?;
    let bits = genc.payload_bits();
    c.ensure(bits as f64 <= general_payload_limit(n), "general size", || {
        format!("{bits} bits for n = {n} (limit {:.1})", general_payload_limit(n))
    })?;
    let gdec = c.ok(GeneralIndex::decode(&genc), "general decode")?;
    c.ensure(gdec == index, "general round trip", || "decoded index differs".into())?;
    compare_queries(&mut c, a, &gdec, &QueryKind::ALL, "general queries")?;
    container_round_trip(&mut c, &Container::General(genc), "general container")?;

    Ok(c.checks)
}

/// Shrinks a failing array by deleting elements while [`check_array`] still fails.
pub fn minimize(a: &ValueArray) -> ValueArray {
    minimize_with(a, |x| check_array(x).is_err())
}

/// Greedily deletes elements while `fails` keeps returning `true`.
pub fn minimize_with(a: &ValueArray, fails: impl Fn(&ValueArray) -> bool) -> ValueArray {
    let fails = |v: &[i64]| ValueArray::new(v.to_vec()).is_ok_and(|x| fails(&x));
    let mut cur = a.values().to_vec();
    loop {
        let mut shrunk = false;
        let mut pos = cur.len();
        while pos > 0 {
            pos -= 1;
            if cur.len() == 1 {
                break;
            }
            let mut trial = cur.clone();
            trial.remove(pos);
            if fails(&trial) {
                cur = trial;
                shrunk = true;
                pos = pos.min(cur.len());
            }
        }
        if !shrunk {
            break;
        }
    }
    ValueArray::new(cur).expect("never shrinks below one element")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzConfig {
    pub count: usize,
    pub max_n: usize,
    pub alphabet: usize,
    pub seed: u64,
    /// Enumerate every array of length `1..=max_n` over `1..=alphabet` instead of sampling.
    pub exhaustive: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            count: 1000,
            max_n: 200,
            alphabet: 5,
            seed: 42,
            exhaustive: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub case: usize,
    pub array: ValueArray,
    pub reproducer: ValueArray,
    pub finding: Finding,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FuzzReport {
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "cases={} checks={} {} failures",
            self.cases,
            self.checks,
            self.failures.len()
        )?;
        for fail in self.failures.iter().take(10) {
            writeln!(f, "case {}: {}", fail.case, fail.finding)?;
            writeln!(f, "  reproducer: {}", fail.reproducer)?;
        }
        Ok(())
    }
}

fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (case as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Array for case `case` of a sampled run.
pub fn sampled_case(config: &FuzzConfig, case: usize) -> ValueArray {
    let mut rng = case_rng(config.seed, case);
    let n = rng.random_range(1..=config.max_n.max(1));
    let dist = Distribution::ALL[case % Distribution::ALL.len()];
    generate(&mut rng, dist, n, config.alphabet)
}

/// Decodes a mixed-radix counter into an array over `1..=alphabet`.
fn nth_array(mut code: usize, len: usize, alphabet: usize) -> ValueArray {
    let values = (0..len)
        .map(|_| {
            let d = (code % alphabet) as i64 + 1;
            code /= alphabet;
            d
        })
        .collect();
    ValueArray::new(values).expect("len >= 1")
}

/// Every array of length `1..=max_len` over `1..=alphabet`.
pub fn exhaustive_arrays(max_len: usize, alphabet: usize) -> Vec<ValueArray> {
    let alphabet = alphabet.max(1);
    (1..=max_len)
        .flat_map(|len| (0..alphabet.pow(len as u32)).map(move |code| nth_array(code, len, alphabet)))
        .collect()
}

pub fn run(config: &FuzzConfig) -> FuzzReport {
    let arrays: Vec<ValueArray> = if config.exhaustive {
        exhaustive_arrays(config.max_n, config.alphabet)
    } else {
        (0..config.count).map(|case| sampled_case(config, case)).collect()
    };
    let results: Vec<Result<usize, Finding>> = arrays.par_iter().map(check_array).collect();
    let mut report = FuzzReport {
        cases: arrays.len(),
        ..Default::default()
    };
    for (case, (a, res)) in arrays.iter().zip(results).enumerate() {
        match res {
            Ok(checks) => report.checks += checks,
            Err(finding) => {
                let reproducer = if a.len() <= 2000 { minimize(a) } else { a.clone() };
                report.failures.push(Failure {
                    case,
                    array: a.clone(),
                    reproducer,
                    finding,
                });
            }
        }
    }
    report
}
