//! Graph-based two-sample statistics and Henze-Penrose divergence estimation.
//!
//! Given a labeled point cloud, this crate builds the dense Euclidean
//! distance matrix, computes an exact minimum-weight perfect matching
//! (Edmonds blossom, O(N^3)) or a minimum spanning tree, counts the
//! bichromatic edges (Rosenbaum's cross-match statistic A, or the
//! Friedman-Rafsky statistic R), and turns the counts into divergence
//! estimates with Bayes error bounds. Exact discrete-model formulas are
//! included for ground truth, along with permutation-null moments and Monte
//! Carlo p-values.
//!
//! The crate is no_std (alloc required); file IO, sampling harnesses, and the
//! CLI live in the companion `crossmatch` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod blossom;

pub mod dataset;
pub mod divergence;
pub mod error;
pub mod matching;
pub mod metric;
pub mod spanning;
pub mod stats;

pub use dataset::{ClassCounts, LabeledDataset};
pub use divergence::{
    bayes_bounds, discrete_affinity, discrete_bayes_error, discrete_hp_divergence,
    histogram_rule, hp_estimate_crossmatch, hp_estimate_fr, DiscretePair, DivergenceReport,
    HistogramRule,
};
pub use error::{Error, Result};
pub use matching::{brute_force_matching, min_weight_perfect_matching, Matching};
pub use metric::{add_ghost_point, augment_if_odd, pairwise_distances, DistanceMatrix};
pub use spanning::{minimum_spanning_tree, SpanningTree};
pub use stats::{
    cross_match_statistic, fr_null_moments, fr_statistic, null_moments, permutation_pvalue,
    CrossCountReport, StatKind,
};
