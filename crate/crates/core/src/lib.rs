//! Finite-group engine for σ-partitions: Hall σ-sets, σ-permutability,
//! σ-subnormality, σ-nilpotent residuals and the PσT property.

pub mod campaign;
pub mod catalog;
pub mod elemset;
pub mod error;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod psigmat;
pub mod report;
pub mod residuals;
pub mod sigma;
pub mod subgroup;
pub mod theorems;

pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use group::{FiniteGroup, Quotient, DEFAULT_ORDER_CAP};
pub use lattice::{ChiefFactor, ChiefSeries, Lattice, SubId};
pub use perm::Perm;
pub use sigma::{BlockId, HallSigmaSet, SigmaPartition};
pub use subgroup::Subgroup;
