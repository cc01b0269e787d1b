//! Longest common subsequences in families of words.
//!
//! * [`words`]: words over `{0, .., k-1}`, the word file format, and basic
//!   predicates.
//! * [`lcs`]: exact LCS length, witnesses, and the family maximum.
//! * [`extremal`]: families whose pairwise LCS is provably small.
//! * [`matcher`]: for `r + 2` balanced binary words, finds a pair and an
//!   explicit common subsequence longer than `n/2`, with a full trace.
//! * [`oracle`]: brute-force references for small instances.
//! * [`gamma`]: Monte Carlo estimates of `E[LCS]/n` for random words.
//! * [`cli`]: the `lcsw` command line.

pub mod cli;
pub mod error;
pub mod extremal;
pub mod gamma;
pub mod lcs;
pub mod matcher;
pub mod oracle;
pub mod words;

pub use error::{Error, Result};
pub use words::{SubsequenceWitness, Symbol, Word};

/// Version string embedded in every report.
pub const VERSION: &str = concat!("lcsw ", env!("CARGO_PKG_VERSION"));
