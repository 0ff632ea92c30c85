//! Exact enumeration and asymptotic analysis for interlocking-tile
//! structures.
//!
//! The library counts flat structures built from `w x 1` tiles (an exact
//! brute-force enumerator plus a boundary-signature transfer-matrix engine
//! that reaches large tile counts), counts 3D buildings of 2x4 bricks up
//! to translation and rotation, classifies flat structures into types and
//! fits the fixed-n count polynomials with all their identities, and runs
//! a series-analysis pipeline (ratio estimators, exact lower bounds,
//! differential-approximant series extension) that turns the exact counts
//! into growth-constant and amplitude estimates.

pub mod exact;
pub mod fixtures;
pub mod flat;
pub mod series;

pub use series::{CountSeries, Term};
