//! Binary container for the three encodings.
//!
//! ```text
//! magic "NLVE" | version u8 = 1 | scheme u8 | n varint
//!   scheme 3 only: k varint
//!   segment bit lengths, varints (3 for scheme 1, 5 for schemes 2 and 3)
//! payload: segments concatenated MSB-first, final byte zero-padded
//! ```
//!
//! Scheme 1 segments are `U, T_min, T_max`. Schemes 2 and 3 list the colored
//! segments `u_gb, v_bad, packed v_neutral, t_min, t_max`; scheme 3 prefixes
//! the payload with the rank of `C`, whose width follows from `n` and `k`.
//! Varints are unsigned LEB128.

use std::fmt;
use std::str::FromStr;

use crate::array::{QueryKind, ValueArray};
use crate::bitio::{trits_for_packed_bits, unpack_trits, BitStream};
use crate::colored::{ColoredEncoding, ColoredPair};
use crate::error::{corrupt, Error, Result};
use crate::general::{c_rank_width, GeneralEncoding, GeneralIndex};
use crate::joint::{JointEncoding, JointPair};
use crate::query::NearestValues;

pub const MAGIC: [u8; 4] = *b"NLVE";
pub const VERSION: u8 = 1;

// keeps corrupted headers from triggering enormous allocations
const MAX_N: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Uncolored min/max heaps, `3n - 1` bits, PSV and PLV only.
    Joint = 1,
    /// Colored heaps, no consecutive equal elements.
    Colored = 2,
    /// Any array, via the run reduction.
    General = 3,
}

impl Scheme {
    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            1 => Ok(Scheme::Joint),
            2 => Ok(Scheme::Colored),
            3 => Ok(Scheme::General),
            other => Err(corrupt(format!("unknown scheme id {other}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Joint => "joint",
            Scheme::Colored => "colored",
            Scheme::General => "general",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "joint" | "1" => Ok(Scheme::Joint),
            "colored" | "2" => Ok(Scheme::Colored),
            "general" | "3" => Ok(Scheme::General),
            other => Err(Error::InvalidArgument(format!("unknown scheme {other:?}"))),
        }
    }
}

/// One encoded array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Container {
    Joint(JointEncoding),
    Colored(ColoredEncoding),
    General(GeneralEncoding),
}

impl Container {
    /// Encodes `a` with the chosen scheme.
    pub fn encode_array(a: &ValueArray, scheme: Scheme) -> Result<Self> {
        Ok(match scheme {
            Scheme::Joint => Container::Joint(JointPair::from_array(a)?.encode()?),
            Scheme::Colored => Container::Colored(ColoredPair::from_array(a)?.encode()?),
            Scheme::General => Container::General(GeneralIndex::from_array(a).encode()?),
        })
    }

    pub fn scheme(&self) -> Scheme {
        match self {
            Container::Joint(_) => Scheme::Joint,
            Container::Colored(_) => Scheme::Colored,
            Container::General(_) => Scheme::General,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Container::Joint(e) => e.n(),
            Container::Colored(e) => e.n(),
            Container::General(e) => e.n(),
        }
    }

    pub fn payload_bits(&self) -> usize {
        match self {
            Container::Joint(e) => e.payload_bits(),
            Container::Colored(e) => e.payload_bits(),
            Container::General(e) => e.payload_bits(),
        }
    }

    pub fn payload(&self) -> BitStream {
        match self {
            Container::Joint(e) => e.payload(),
            Container::Colored(e) => e.payload(),
            Container::General(e) => e.payload(),
        }
    }

    pub fn decode(&self) -> Result<Decoded> {
        Ok(match self {
            Container::Joint(e) => Decoded::Joint(JointPair::decode(e)?),
            Container::Colored(e) => Decoded::Colored(ColoredPair::decode(e)?),
            Container::General(e) => Decoded::General(GeneralIndex::decode(e)?),
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(self.scheme().id());
        put_varint(&mut out, self.n());
        let lengths: Vec<usize> = match self {
            Container::Joint(e) => e.segment_lengths().to_vec(),
            Container::Colored(e) => e.segment_lengths().to_vec(),
            Container::General(e) => {
                put_varint(&mut out, e.k());
                e.colored().segment_lengths().to_vec()
            }
        };
        for len in lengths {
            put_varint(&mut out, len);
        }
        out.extend_from_slice(&self.payload().to_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut rest = bytes;
        let magic = take(&mut rest, 4)?;
        if magic != MAGIC {
            return Err(corrupt("bad magic"));
        }
        let version = take(&mut rest, 1)?[0];
        if version != VERSION {
            return Err(corrupt(format!("unsupported version {version}")));
        }
        let scheme = Scheme::from_id(take(&mut rest, 1)?[0])?;
        let n = get_varint(&mut rest)?;
        if n == 0 {
            return Err(corrupt("n = 0"));
        }
        match scheme {
            Scheme::Joint => {
                let lens = get_lengths::<3>(&mut rest)?;
                let payload = read_payload(rest, lens.iter().sum())?;
                let mut segs = split(&payload, &lens);
                let t_max = segs.pop().unwrap();
                let t_min = segs.pop().unwrap();
                let u = segs.pop().unwrap();
                Ok(Container::Joint(JointEncoding::from_parts(n, u, t_min, t_max)?))
            }
            Scheme::Colored => {
                let lens = get_lengths::<5>(&mut rest)?;
                let payload = read_payload(rest, lens.iter().sum())?;
                Ok(Container::Colored(colored_from_segments(n, &payload, 0, &lens)?))
            }
            Scheme::General => {
                let k = get_varint(&mut rest)?;
                if k >= n {
                    return Err(corrupt(format!("k = {k} must be below n = {n}")));
                }
                let lens = get_lengths::<5>(&mut rest)?;
                let width = c_rank_width(n, k);
                let payload = read_payload(rest, width + lens.iter().sum::<usize>())?;
                let c_rank_bits = payload.slice(0, width);
                let colored = colored_from_segments(n - k, &payload, width, &lens)?;
                Ok(Container::General(GeneralEncoding::from_parts(n, k, c_rank_bits, colored)?))
            }
        }
    }
}

fn put_varint(out: &mut Vec<u8>, v: usize) {
    leb128::write::unsigned(out, v as u64).expect("writing to a Vec cannot fail");
}

fn get_varint(rest: &mut &[u8]) -> Result<usize> {
    let v = leb128::read::unsigned(rest).map_err(|e| corrupt(format!("bad varint: {e}")))?;
    if v > MAX_N {
        return Err(corrupt(format!("header value {v} too large")));
    }
    Ok(v as usize)
}

fn get_lengths<const N: usize>(rest: &mut &[u8]) -> Result<[usize; N]> {
    let mut lens = [0; N];
    for slot in &mut lens {
        *slot = get_varint(rest)?;
    }
    Ok(lens)
}

fn take<'a>(rest: &mut &'a [u8], count: usize) -> Result<&'a [u8]> {
    if rest.len() < count {
        return Err(corrupt("truncated header"));
    }
    let (head, tail) = rest.split_at(count);
    *rest = tail;
    Ok(head)
}

fn read_payload(bytes: &[u8], bits: usize) -> Result<BitStream> {
    if bytes.len() != bits.div_ceil(8) {
        return Err(corrupt(format!(
            "payload has {} bytes but segments declare {bits} bits",
            bytes.len()
        )));
    }
    BitStream::from_bytes(bytes, bits)
}

fn split(payload: &BitStream, lens: &[usize]) -> Vec<BitStream> {
    let mut start = 0;
    lens.iter()
        .map(|&len| {
            let s = payload.slice(start, len);
            start += len;
            s
        })
        .collect()
}

fn colored_from_segments(n: usize, payload: &BitStream, offset: usize, lens: &[usize; 5]) -> Result<ColoredEncoding> {
    let body = payload.slice(offset, payload.len() - offset);
    let mut segs = split(&body, lens);
    let t_max = segs.pop().unwrap();
    let t_min = segs.pop().unwrap();
    let packed = segs.pop().unwrap();
    let v_bad = segs.pop().unwrap();
    let u_gb = segs.pop().unwrap();
    let m = trits_for_packed_bits(packed.len())
        .ok_or_else(|| corrupt(format!("{} is not a valid packed trit length", packed.len())))?;
    let mut reader = packed.reader();
    let v_neutral = unpack_trits(&mut reader, m)?;
    ColoredEncoding::from_parts(n, u_gb, v_bad, v_neutral, t_min, t_max)
}

/// A decoded container, ready for queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    Joint(JointPair),
    Colored(ColoredPair),
    General(GeneralIndex),
}

impl Decoded {
    pub fn scheme(&self) -> Scheme {
        match self {
            Decoded::Joint(_) => Scheme::Joint,
            Decoded::Colored(_) => Scheme::Colored,
            Decoded::General(_) => Scheme::General,
        }
    }

    /// Encodes the decoded structure again.
    pub fn encode(&self) -> Result<Container> {
        Ok(match self {
            Decoded::Joint(p) => Container::Joint(p.encode()?),
            Decoded::Colored(p) => Container::Colored(p.encode()?),
            Decoded::General(g) => Container::General(g.encode()?),
        })
    }

    /// Human-readable dump of the decoded trees.
    pub fn dump_trees(&self) -> String {
        match self {
            Decoded::Joint(p) => format!("min: {}\nmax: {}\n", p.min, p.max),
            Decoded::Colored(p) => format!("cmin: {}\ncmax: {}\n", p.min, p.max),
            Decoded::General(g) => format!(
                "C: {}\ncmin(A'): {}\ncmax(A'): {}\n",
                g.runs.c_string(),
                g.reduced.min,
                g.reduced.max
            ),
        }
    }

    pub fn supports(&self, kind: QueryKind) -> bool {
        !matches!(self, Decoded::Joint(_)) || kind.is_previous()
    }
}

impl NearestValues for Decoded {
    fn len(&self) -> usize {
        match self {
            Decoded::Joint(p) => p.len(),
            Decoded::Colored(p) => p.len(),
            Decoded::General(g) => g.len(),
        }
    }

    fn query(&self, kind: QueryKind, i: usize) -> Result<usize> {
        match self {
            Decoded::Joint(p) => p.query(kind, i),
            Decoded::Colored(p) => p.query(kind, i),
            Decoded::General(g) => g.query(kind, i),
        }
    }
}
