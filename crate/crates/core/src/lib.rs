//! Influence-based and topological centrality rankings under the Linear
//! Threshold model.
//!
//! The crate loads SNAP-style edge lists into an immutable [`Graph`], runs
//! Linear Threshold and Independent Cascade spreads, computes Betweenness,
//! PageRank, ICR, LTR and FLTR rankings, assigns thresholds (uniform, random,
//! or derived from a centrality), and summarizes rankings with the standard
//! deviation, number of distinct values, Gini coefficient and the
//! Top10 / Top10%Actors / Top10%Values spread measures.

pub mod centrality;
pub mod diffusion;
mod error;
pub mod experiment;
pub mod graph;
pub mod metrics;
pub mod seeding;
pub mod thresholds;

pub use centrality::{Measure, RankVector};
pub use diffusion::{lt_spread, Activation, SpreadResult, ThresholdAssignment};
pub use error::{Error, Result};
pub use graph::{Graph, LoadOptions};
