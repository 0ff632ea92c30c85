//! Flat w x 1 structures: explicit representation, the brute-force
//! reference enumerator, and the transfer-matrix counting engine.

pub mod brute;
pub mod structure;
pub mod transfer;

pub use brute::{count_flat, count_flat_series, enumerate_flat, BruteError, BruteLimits};
pub use structure::{FlatStructure, StructureError, Tile};
pub use transfer::{tm_count, TmOptions, TmOutcome, TmStats, TransferError};
