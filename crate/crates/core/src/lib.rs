//! Succinct encodings of the previous/next smaller/larger value structure of
//! an array.
//!
//! Three encodings are provided, all answering queries without the array:
//!
//! - [`joint`]: the min and max heaps in exactly `3n - 1` bits (PSV and PLV).
//! - [`colored`]: the colored heaps in about `(2 + log 3)n` bits, for arrays
//!   without consecutive equal elements (all four queries).
//! - [`general`]: any array in about `log 13·n` bits, by storing the run
//!   string `C` as a subset rank next to the colored encoding of the reduced
//!   array.
//!
//! ```
//! use nearval::{Container, NearestValues, QueryKind, Scheme, ValueArray};
//!
//! let a = ValueArray::new(vec![3, 8, 5, 6, 3, 2, 7, 10, 9]).unwrap();
//! let bytes = Container::encode_array(&a, Scheme::Colored).unwrap().to_bytes();
//! let decoded = Container::from_bytes(&bytes).unwrap().decode().unwrap();
//! assert_eq!(decoded.query(QueryKind::Nsv, 1).unwrap(), 6);
//! ```

pub mod array;
pub mod bitio;
pub mod colored;
pub mod container;
mod error;
pub mod fuzz;
pub mod general;
pub mod heap;
pub mod joint;
mod preorder;
pub mod query;

pub use array::{compute_runs, oracle, QueryKind, RunStructure, ValueArray};
pub use bitio::{BitStream, TritString};
pub use colored::{decode_colored, encode_colored, ColoredEncoding, ColoredPair, IndexClass};
pub use container::{Container, Decoded, Scheme};
pub use error::{Error, Result};
pub use general::{decode_general, encode_general, GeneralEncoding, GeneralIndex};
pub use heap::{build_max_heap, build_min_heap, colorize, Color, ColoredTree, HeapKind, OrdinalTree};
pub use joint::{decode_joint, encode_joint, JointEncoding, JointPair};
pub use query::NearestValues;
