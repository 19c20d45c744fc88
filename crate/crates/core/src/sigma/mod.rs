//! σ-partitions and the σ-classifiers built on them.

mod classify;
mod partition;

pub use classify::*;
pub use partition::{is_prime, prime_divisors, BlockId, SigmaPartition};
